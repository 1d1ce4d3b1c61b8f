// Copyright 2026 The slg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SLG_ERROR_HPP_
#define SLG_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace slg {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or invariant-violating scene documents.
class SceneError : public Error {
 public:
  using Error::Error;
};

/// Generation configs that cannot produce the requested scene.
class GenerationError : public Error {
 public:
  using Error::Error;
};

/// Geometric queries outside their domain (e.g. a degenerate LR frame).
class DomainError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class GrammarError : public Error {
 public:
  using Error::Error;
};

}  // namespace slg

#endif  // SLG_ERROR_HPP_
