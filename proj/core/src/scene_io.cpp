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

#include "slg/scene_io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "slg/error.hpp"

namespace slg {

using nlohmann::json;

namespace {

const json& require(const json& doc, std::string_view key) {
  if (!doc.is_object()) throw SceneError("expected an object holding '" + std::string(key) + "'");
  auto it = doc.find(key);
  if (it == doc.end()) throw SceneError("missing key '" + std::string(key) + "'");
  return *it;
}

double number(const json& doc, std::string_view key) {
  const json& v = require(doc, key);
  if (!v.is_number()) throw SceneError("key '" + std::string(key) + "' must be a number");
  return v.get<double>();
}

std::string text(const json& doc, std::string_view key) {
  const json& v = require(doc, key);
  if (!v.is_string()) throw SceneError("key '" + std::string(key) + "' must be a string");
  return v.get<std::string>();
}

Pose2 pose_from_json(const json& doc) {
  return {{number(doc, "x"), number(doc, "y")}, doc.contains("theta") ? number(doc, "theta") : 0.0};
}

json pose_to_json(const Pose2& p) { return {{"x", p.position.x}, {"y", p.position.y}, {"theta", p.theta}}; }

ColorCategory color_from_json(const json& doc) {
  const std::string label = text(doc, "color");
  auto c = parse_color(label);
  if (!c) throw SceneError("unknown colour '" + label + "'");
  return *c;
}

YCbCr raw_color_from_json(const json& doc, ColorCategory label) {
  auto it = doc.find("ycbcr");
  if (it == doc.end()) return color_prototype(label);
  if (!it->is_array() || it->size() != 3) throw SceneError("ycbcr must hold three numbers");
  YCbCr raw{(*it)[0].get<double>(), (*it)[1].get<double>(), (*it)[2].get<double>()};
  for (double v : {raw.y, raw.cb, raw.cr}) {
    if (v < 0.0 || v > 255.0) throw SceneError("ycbcr channels must lie in [0, 255]");
  }
  return raw;
}

json color_to_json(const SceneObject& o, json& target) {
  target["color"] = std::string(to_string(o.color));
  target["ycbcr"] = json::array({o.raw.y, o.raw.cb, o.raw.cr});
  return target;
}

}  // namespace

Scene scene_from_json(const json& doc) {
  try {
    Scene s;
    s.observer = text(doc, "observer");
    s.peer_pose = pose_from_json(require(doc, "peer_pose"));
    if (doc.contains("world_theta")) s.world_theta = number(doc, "world_theta");
    for (const json& o : require(doc, "objects")) {
      SceneObject obj;
      obj.id = text(o, "id");
      const std::string cls = text(o, "class");
      auto parsed = parse_object_class(cls);
      if (!parsed) throw SceneError("unknown object class '" + cls + "'");
      if (*parsed == ObjectClass::kRegion) {
        throw SceneError("region '" + obj.id + "' belongs in the regions list");
      }
      obj.cls = *parsed;
      obj.color = color_from_json(o);
      obj.raw = raw_color_from_json(o, obj.color);
      obj.width = number(o, "width");
      obj.height = number(o, "height");
      s.objects.push_back(std::move(obj));
    }
    for (const json& r : require(doc, "regions")) {
      Region region;
      region.id = text(r, "id");
      const json& corners = require(r, "corners");
      if (!corners.is_array() || corners.size() != 4) {
        throw SceneError("region '" + region.id + "' must have exactly 4 corners");
      }
      for (std::size_t i = 0; i < 4; ++i) {
        const json& c = corners[i];
        if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number()) {
          throw SceneError("region corner must be [x, y]");
        }
        region.corners[i] = {c[0].get<double>(), c[1].get<double>()};
      }
      if (signed_area2(region.corners) < 0.0) std::reverse(region.corners.begin(), region.corners.end());
      SceneObject obj;
      obj.id = region.id;
      obj.cls = ObjectClass::kRegion;
      obj.color = color_from_json(r);
      obj.raw = raw_color_from_json(r, obj.color);
      obj.width = region.extent().x;
      obj.height = region.extent().y;
      s.objects.push_back(std::move(obj));
      s.regions.push_back(region);
    }
    for (const json& f : require(doc, "frames")) {
      ObservationFrame frame;
      frame.t = number(f, "t");
      const json& poses = require(f, "poses");
      if (!poses.is_object()) throw SceneError("frame poses must be an object keyed by id");
      for (auto it = poses.begin(); it != poses.end(); ++it) {
        ObjectPose p;
        p.position = {number(it.value(), "x"), number(it.value(), "y")};
        if (it.value().contains("theta")) p.theta = number(it.value(), "theta");
        frame.poses.emplace(it.key(), p);
      }
      s.frames.push_back(std::move(frame));
    }
    validate_scene(s);
    return s;
  } catch (const json::exception& e) {
    throw SceneError(std::string("malformed scene document: ") + e.what());
  }
}

json to_json(const Scene& s) {
  json doc;
  doc["observer"] = s.observer;
  doc["peer_pose"] = pose_to_json(s.peer_pose);
  doc["world_theta"] = s.world_theta;
  doc["objects"] = json::array();
  doc["regions"] = json::array();
  for (const auto& o : s.objects) {
    if (o.cls == ObjectClass::kRegion) continue;
    json j{{"id", o.id}, {"class", std::string(to_string(o.cls))}, {"width", o.width}, {"height", o.height}};
    color_to_json(o, j);
    doc["objects"].push_back(std::move(j));
  }
  for (const auto& r : s.regions) {
    json j{{"id", r.id}};
    if (const SceneObject* o = s.find_object(r.id)) color_to_json(*o, j);
    json corners = json::array();
    for (const Vec2& c : r.corners) corners.push_back(json::array({c.x, c.y}));
    j["corners"] = std::move(corners);
    doc["regions"].push_back(std::move(j));
  }
  doc["frames"] = json::array();
  for (const auto& f : s.frames) {
    json poses = json::object();
    for (const auto& [id, p] : f.poses) {
      json pj{{"x", p.position.x}, {"y", p.position.y}};
      if (p.theta) pj["theta"] = *p.theta;
      poses[id] = std::move(pj);
    }
    doc["frames"].push_back({{"t", f.t}, {"poses", std::move(poses)}});
  }
  return doc;
}

Scene load_scene(std::string_view text_doc) {
  json doc = json::parse(text_doc.begin(), text_doc.end(), nullptr, false);
  if (doc.is_discarded()) throw SceneError("scene document is not valid JSON");
  return scene_from_json(doc);
}

ScenePair scene_pair_from_json(const json& doc) {
  ScenePair p;
  p.a = scene_from_json(require(doc, "scene_a"));
  p.b = scene_from_json(require(doc, "scene_b"));
  if (doc.contains("ground_truth")) {
    const json& gt = doc.at("ground_truth");
    p.truth.world = scene_from_json(require(gt, "world"));
    p.truth.robot_a = pose_from_json(require(gt, "robot_a"));
    p.truth.robot_b = pose_from_json(require(gt, "robot_b"));
    auto fam = parse_trajectory_family(text(gt, "family"));
    if (!fam) throw SceneError("unknown trajectory family");
    p.truth.family = *fam;
  }
  return p;
}

json to_json(const ScenePair& p) {
  return {{"scene_a", to_json(p.a)},
          {"scene_b", to_json(p.b)},
          {"ground_truth",
           {{"world", to_json(p.truth.world)},
            {"robot_a", pose_to_json(p.truth.robot_a)},
            {"robot_b", pose_to_json(p.truth.robot_b)},
            {"family", std::string(to_string(p.truth.family))}}}};
}

ScenePair load_scene_pair(std::string_view text_doc) {
  json doc = json::parse(text_doc.begin(), text_doc.end(), nullptr, false);
  if (doc.is_discarded()) throw SceneError("scene pair document is not valid JSON");
  return scene_pair_from_json(doc);
}

GenerationConfig generation_config_from_json(const json& doc) {
  GenerationConfig c;
  if (!doc.is_object()) throw ConfigError("generation config must be an object");
  static const std::set<std::string, std::less<>> known = {
      "regions",          "frames",          "frame_dt",       "noise_std",
      "region_noise_std", "peer_position_std", "peer_theta_std", "box_probability",
      "weight_cross",     "weight_enter",    "weight_stop_near_boundary", "weight_along",
      "family",           "regions_on_path"};
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (!known.contains(it.key())) throw ConfigError("unknown generation key '" + it.key() + "'");
  }
  auto get = [&](const char* key, auto& field) {
    if (auto it = doc.find(key); it != doc.end()) {
      try {
        it->get_to(field);
      } catch (const json::exception&) {
        throw ConfigError(std::string("bad value for generation key '") + key + "'");
      }
    }
  };
  if (auto it = doc.find("regions"); it != doc.end()) {
    if (!it->is_array() || it->size() != 2) throw ConfigError("regions must be [min, max]");
    c.min_regions = (*it)[0].get<int>();
    c.max_regions = (*it)[1].get<int>();
  }
  if (auto it = doc.find("frames"); it != doc.end()) {
    if (!it->is_array() || it->size() != 2) throw ConfigError("frames must be [min, max]");
    c.min_frames = (*it)[0].get<int>();
    c.max_frames = (*it)[1].get<int>();
  }
  get("frame_dt", c.frame_dt);
  get("noise_std", c.noise_std);
  get("region_noise_std", c.region_noise_std);
  get("peer_position_std", c.peer_position_std);
  get("peer_theta_std", c.peer_theta_std);
  get("box_probability", c.box_probability);
  get("weight_cross", c.weight_cross);
  get("weight_enter", c.weight_enter);
  get("weight_stop_near_boundary", c.weight_stop_near_boundary);
  get("weight_along", c.weight_along);
  if (auto it = doc.find("family"); it != doc.end() && !it->is_null()) {
    auto f = parse_trajectory_family(it->get<std::string>());
    if (!f) throw ConfigError("unknown trajectory family '" + it->get<std::string>() + "'");
    c.family = f;
  }
  if (auto it = doc.find("regions_on_path"); it != doc.end() && !it->is_null()) c.regions_on_path = it->get<int>();
  return c;
}

json to_json(const GenerationConfig& c) {
  json j{{"regions", {c.min_regions, c.max_regions}},
         {"frames", {c.min_frames, c.max_frames}},
         {"frame_dt", c.frame_dt},
         {"noise_std", c.noise_std},
         {"region_noise_std", c.region_noise_std},
         {"peer_position_std", c.peer_position_std},
         {"peer_theta_std", c.peer_theta_std},
         {"box_probability", c.box_probability},
         {"weight_cross", c.weight_cross},
         {"weight_enter", c.weight_enter},
         {"weight_stop_near_boundary", c.weight_stop_near_boundary},
         {"weight_along", c.weight_along}};
  if (c.family) j["family"] = std::string(to_string(*c.family));
  if (c.regions_on_path) j["regions_on_path"] = *c.regions_on_path;
  return j;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

}  // namespace slg
