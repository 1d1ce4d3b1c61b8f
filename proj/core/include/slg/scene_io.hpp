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

#ifndef SLG_SCENE_IO_HPP_
#define SLG_SCENE_IO_HPP_

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "slg/generator.hpp"
#include "slg/scene.hpp"

namespace slg {

// Scene documents are JSON objects with the keys
//   observer, peer_pose {x, y, theta}, objects [{id, class, color, width, height}],
//   regions [{id, color, corners: [[x, y] x4]}], frames [{t, poses: {id: {x, y, theta?}}}]
// plus the optional extensions `world_theta` and per-object `ycbcr: [y, cb, cr]`.
// Region corners given clockwise are reversed into counterclockwise order;
// any other non-convex quadrangle is rejected.

Scene scene_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const Scene& scene);

/// Parses one scene document. Throws SceneError.
Scene load_scene(std::string_view text);

// A scene-pair document holds `scene_a`, `scene_b` and `ground_truth`
// ({world, robot_a, robot_b, family}).
ScenePair scene_pair_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const ScenePair& pair);
ScenePair load_scene_pair(std::string_view text);

GenerationConfig generation_config_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const GenerationConfig& config);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace slg

#endif  // SLG_SCENE_IO_HPP_
