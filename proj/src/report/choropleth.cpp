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

#include "lid/report/choropleth.hpp"

#include <algorithm>
#include <map>

#include <fmt/format.h>

#include "lid/core/error.hpp"
#include "lid/spatial/geojson.hpp"

namespace lid::report {

using nlohmann::json;

std::vector<std::optional<int>> quantile_bins(const std::vector<std::optional<double>>& values,
                                              int classes) {
  std::vector<double> present;
  for (const auto& v : values) {
    if (v) present.push_back(*v);
  }
  std::sort(present.begin(), present.end());
  const auto n = static_cast<long long>(present.size());
  std::vector<std::optional<int>> bins;
  bins.reserve(values.size());
  for (const auto& v : values) {
    if (!v) {
      bins.emplace_back();
      continue;
    }
    const auto rank = std::lower_bound(present.begin(), present.end(), *v) - present.begin();
    bins.emplace_back(static_cast<int>(rank * classes / n));
  }
  return bins;
}

std::vector<std::optional<double>> matrix_column(const FeatureMatrix& m,
                                                 const FeatureCatalog& catalog,
                                                 const std::string& key) {
  const Eigen::MatrixXd* values = nullptr;
  const MaskMatrix* mask = nullptr;
  Eigen::Index j = 0;
  if (auto idx = catalog.index_of(key)) {
    values = &m.values;
    mask = &m.mask;
    j = static_cast<Eigen::Index>(*idx);
  } else if (key == outcome_key(Outcome::kPatents) || key == outcome_key(Outcome::kSfr)) {
    values = &m.outcomes;
    mask = &m.outcome_mask;
    j = key == outcome_key(Outcome::kPatents) ? 0 : 1;
  } else if (auto it = std::find(m.aux_names.begin(), m.aux_names.end(), key);
             it != m.aux_names.end()) {
    values = &m.aux;
    mask = &m.aux_mask;
    j = it - m.aux_names.begin();
  } else {
    throw Error(ErrorCode::kUnknownColumn, key);
  }
  std::vector<std::optional<double>> out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if ((*mask)(i, j)) {
      out.emplace_back();
    } else {
      out.emplace_back((*values)(i, j));
    }
  }
  return out;
}

json choropleth(const FeatureMatrix& m, const FeatureCatalog& catalog, const std::string& column,
                const std::vector<ZonePolygon>& polygons, const std::string& manifest_digest,
                std::vector<std::string>* warnings) {
  const auto all = matrix_column(m, catalog, column);
  std::map<std::string, const ZonePolygon*> by_code;
  for (const auto& p : polygons) by_code.emplace(p.zone.code(), &p);

  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < m.zones.size(); ++i) {
    if (by_code.count(m.zones[i].code())) {
      rows.push_back(i);
    } else if (warnings) {
      warnings->push_back("zone " + m.zones[i].code() + " has no polygon, omitted");
    }
  }
  std::sort(rows.begin(), rows.end(),
            [&](std::size_t a, std::size_t b) { return m.zones[a] < m.zones[b]; });
  std::vector<std::optional<double>> values;
  for (auto i : rows) values.push_back(all[i]);
  const auto bins = quantile_bins(values);

  json features = json::array();
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& zone = m.zones[rows[k]];
    json props;
    props["zone"] = zone.code();
    props["value"] = values[k] ? json(*values[k]) : json(nullptr);
    props["quantile_bin"] = bins[k] ? json(*bins[k]) : json(nullptr);
    features.push_back({{"type", "Feature"},
                        {"geometry", spatial::polygon_geometry(*by_code.at(zone.code()))},
                        {"properties", props}});
  }
  json doc;
  doc["type"] = "FeatureCollection";
  doc["lid"] = {{"column", column},
                {"classes", kQuantileClasses},
                {"binning", "quantile, ties to lower class"},
                {"manifest", manifest_digest}};
  doc["features"] = std::move(features);
  return doc;
}

namespace {

void check_position(const json& p, const std::string& where, std::vector<std::string>& out) {
  if (!p.is_array() || p.size() < 2 || p.size() > 3) {
    out.push_back(where + ": position must be an array of 2 or 3 numbers");
    return;
  }
  for (const auto& c : p) {
    if (!c.is_number()) {
      out.push_back(where + ": non-numeric coordinate");
      return;
    }
  }
  const double lon = p[0].get<double>();
  const double lat = p[1].get<double>();
  if (lon < -180.0 || lon > 180.0 || lat < -90.0 || lat > 90.0) {
    out.push_back(where + ": coordinate outside WGS84 range");
  }
}

void check_polygon(const json& rings, const std::string& where, std::vector<std::string>& out) {
  if (!rings.is_array() || rings.empty()) {
    out.push_back(where + ": polygon needs at least one linear ring");
    return;
  }
  for (std::size_t r = 0; r < rings.size(); ++r) {
    const auto& ring = rings[r];
    const auto at = fmt::format("{} ring {}", where, r);
    if (!ring.is_array() || ring.size() < 4) {
      out.push_back(at + ": linear ring needs at least 4 positions");
      continue;
    }
    const auto before = out.size();
    for (const auto& p : ring) check_position(p, at, out);
    if (out.size() != before) continue;
    if (ring.front() != ring.back()) out.push_back(at + ": linear ring is not closed");
    double twice = 0.0;
    for (std::size_t i = 0; i + 1 < ring.size(); ++i) {
      twice += ring[i][0].get<double>() * ring[i + 1][1].get<double>() -
               ring[i + 1][0].get<double>() * ring[i][1].get<double>();
    }
    if (r == 0 && twice < 0.0) out.push_back(at + ": exterior ring must be counter-clockwise");
    if (r > 0 && twice > 0.0) out.push_back(at + ": hole must be clockwise");
  }
}

void check_geometry(const json& g, const std::string& where, std::vector<std::string>& out) {
  if (g.is_null()) return;
  if (!g.is_object() || !g.contains("type") || !g["type"].is_string()) {
    out.push_back(where + ": geometry must be an object with a type");
    return;
  }
  const auto type = g["type"].get<std::string>();
  if (type == "GeometryCollection") {
    if (!g.contains("geometries") || !g["geometries"].is_array()) {
      out.push_back(where + ": GeometryCollection needs geometries");
      return;
    }
    for (std::size_t i = 0; i < g["geometries"].size(); ++i) {
      check_geometry(g["geometries"][i], fmt::format("{} member {}", where, i), out);
    }
    return;
  }
  if (!g.contains("coordinates") || !g["coordinates"].is_array()) {
    out.push_back(where + ": geometry needs a coordinates array");
    return;
  }
  const auto& c = g["coordinates"];
  if (type == "Point") {
    check_position(c, where, out);
  } else if (type == "MultiPoint" || type == "LineString") {
    for (const auto& p : c) check_position(p, where, out);
    if (type == "LineString" && c.size() < 2) out.push_back(where + ": LineString needs 2 positions");
  } else if (type == "MultiLineString") {
    for (const auto& line : c) {
      for (const auto& p : line) check_position(p, where, out);
    }
  } else if (type == "Polygon") {
    check_polygon(c, where, out);
  } else if (type == "MultiPolygon") {
    for (std::size_t i = 0; i < c.size(); ++i) check_polygon(c[i], fmt::format("{} part {}", where, i), out);
  } else {
    out.push_back(where + ": unknown geometry type '" + type + "'");
  }
}

}  // namespace

std::vector<std::string> validate_geojson(const json& doc) {
  std::vector<std::string> out;
  if (!doc.is_object() || !doc.contains("type")) {
    out.push_back("document must be an object with a type");
    return out;
  }
  if (doc.contains("crs")) out.push_back("crs member is not allowed");
  const auto type = doc["type"].get<std::string>();
  auto check_feature = [&](const json& f, const std::string& where) {
    if (!f.is_object() || f.value("type", "") != "Feature") {
      out.push_back(where + ": type must be Feature");
      return;
    }
    if (!f.contains("geometry")) out.push_back(where + ": geometry member missing");
    if (!f.contains("properties")) out.push_back(where + ": properties member missing");
    if (f.contains("properties") && !f["properties"].is_object() && !f["properties"].is_null()) {
      out.push_back(where + ": properties must be an object or null");
    }
    if (f.contains("geometry")) check_geometry(f["geometry"], where, out);
  };
  if (type == "FeatureCollection") {
    if (!doc.contains("features") || !doc["features"].is_array()) {
      out.push_back("FeatureCollection needs a features array");
      return out;
    }
    for (std::size_t i = 0; i < doc["features"].size(); ++i) {
      check_feature(doc["features"][i], fmt::format("feature {}", i));
    }
  } else if (type == "Feature") {
    check_feature(doc, "feature");
  } else {
    check_geometry(doc, "geometry", out);
  }
  return out;
}

}  // namespace lid::report
