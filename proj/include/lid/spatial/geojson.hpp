// Copyright 2026 The LID Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lid/core/zone.hpp"

namespace lid::spatial {

struct PolygonKeys {
  std::string zone = "zone";
  std::string state = "state";
  std::string land_area = "aland";  // absent or null: computed from geometry
};

/// Reads a FeatureCollection of Polygon / MultiPolygon features. Rings are
/// validated; invalid geometry is rejected, never repaired.
std::vector<ZonePolygon> read_polygons(const nlohmann::json& collection,
                                       const PolygonKeys& keys = {});
std::vector<ZonePolygon> read_polygons(const std::filesystem::path& path,
                                       const PolygonKeys& keys = {});

/// GeoJSON geometry for a polygon, exterior rings counter-clockwise and holes
/// clockwise. Multi-part zones become MultiPolygon.
nlohmann::json polygon_geometry(const ZonePolygon& polygon);

}  // namespace lid::spatial
