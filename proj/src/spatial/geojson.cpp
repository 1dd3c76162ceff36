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

#include "lid/spatial/geojson.hpp"

#include "lid/core/error.hpp"
#include "lid/spatial/geometry.hpp"
#include "lid/util/io.hpp"

namespace lid::spatial {

using nlohmann::json;

namespace {

Ring read_ring(const json& coords, bool hole) {
  if (!coords.is_array()) throw Error(ErrorCode::kInvalidGeometry, "ring is not an array");
  Ring ring{{}, hole};
  for (const auto& pos : coords) {
    if (!pos.is_array() || pos.size() < 2 || !pos[0].is_number() || !pos[1].is_number()) {
      throw Error(ErrorCode::kInvalidGeometry, "position is not [lon, lat]");
    }
    ring.vertices.emplace_back(pos[0].get<double>(), pos[1].get<double>());
  }
  check_ring(ring);
  return ring;
}

void read_polygon_rings(const json& coords, std::vector<Ring>& out) {
  if (!coords.is_array() || coords.empty()) {
    throw Error(ErrorCode::kInvalidGeometry, "polygon has no rings");
  }
  for (std::size_t i = 0; i < coords.size(); ++i) out.push_back(read_ring(coords[i], i > 0));
}

std::string property_string(const json& props, const std::string& key) {
  if (!props.contains(key)) {
    throw Error(ErrorCode::kInvalidGeometry, "feature lacks property '" + key + "'");
  }
  const auto& v = props.at(key);
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) {
    // Numeric zip codes lose their leading zeros; restore to five digits.
    std::string s = std::to_string(v.get<long long>());
    if (s.size() < 5) s.insert(0, 5 - s.size(), '0');
    return s;
  }
  throw Error(ErrorCode::kInvalidGeometry, "property '" + key + "' is not a string");
}

json ring_coordinates(const Ring& ring) {
  // Exterior counter-clockwise, holes clockwise.
  const double signed_area = signed_ring_area<double>(ring.vertices);
  const bool reverse = ring.hole ? signed_area > 0 : signed_area < 0;
  json coords = json::array();
  auto emit = [&](const Point& p) { coords.push_back({p.x(), p.y()}); };
  if (reverse) {
    for (auto it = ring.vertices.rbegin(); it != ring.vertices.rend(); ++it) emit(*it);
  } else {
    for (const auto& p : ring.vertices) emit(p);
  }
  return coords;
}

}  // namespace

std::vector<ZonePolygon> read_polygons(const json& collection, const PolygonKeys& keys) {
  if (!collection.is_object() || collection.value("type", "") != "FeatureCollection" ||
      !collection.contains("features") || !collection["features"].is_array()) {
    throw Error(ErrorCode::kInvalidGeometry, "expected a GeoJSON FeatureCollection");
  }
  std::vector<ZonePolygon> out;
  for (const auto& feature : collection["features"]) {
    if (!feature.is_object() || feature.value("type", "") != "Feature") {
      throw Error(ErrorCode::kInvalidGeometry, "collection member is not a Feature");
    }
    const auto& props = feature.contains("properties") && feature["properties"].is_object()
                            ? feature["properties"]
                            : throw Error(ErrorCode::kInvalidGeometry, "feature lacks properties");
    ZonePolygon poly;
    poly.zone = ZoneId(property_string(props, keys.zone), property_string(props, keys.state));

    const auto& geom = feature.at("geometry");
    const auto type = geom.value("type", "");
    const auto& coords = geom.at("coordinates");
    if (type == "Polygon") {
      read_polygon_rings(coords, poly.rings);
    } else if (type == "MultiPolygon") {
      if (!coords.is_array() || coords.empty()) {
        throw Error(ErrorCode::kInvalidGeometry, "empty MultiPolygon for " + poly.zone.code());
      }
      for (const auto& part : coords) read_polygon_rings(part, poly.rings);
    } else {
      throw Error(ErrorCode::kInvalidGeometry,
                  "unsupported geometry '" + type + "' for zone " + poly.zone.code());
    }

    if (props.contains(keys.land_area) && props[keys.land_area].is_number()) {
      poly.land_area_m2 = props[keys.land_area].get<double>();
      if (!(poly.land_area_m2 >= 0.0)) {
        throw Error(ErrorCode::kInvalidGeometry, "negative land area for " + poly.zone.code());
      }
    } else {
      poly.land_area_m2 = polygon_area_m2(poly);
    }
    out.push_back(std::move(poly));
  }
  return out;
}

std::vector<ZonePolygon> read_polygons(const std::filesystem::path& path, const PolygonKeys& keys) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kInvalidGeometry, path.string() + ": " + e.what());
  }
  return read_polygons(doc, keys);
}

json polygon_geometry(const ZonePolygon& polygon) {
  json parts = json::array();
  for (const auto& ring : polygon.rings) {
    if (!ring.hole || parts.empty()) parts.push_back(json::array());
    parts.back().push_back(ring_coordinates(ring));
  }
  if (parts.size() == 1) return json{{"type", "Polygon"}, {"coordinates", parts[0]}};
  return json{{"type", "MultiPolygon"}, {"coordinates", parts}};
}

}  // namespace lid::spatial
