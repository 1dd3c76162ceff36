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

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lid/core/catalog.hpp"
#include "lid/core/feature_matrix.hpp"
#include "lid/core/zone.hpp"

namespace lid::report {

inline constexpr int kQuantileClasses = 5;

/// Class of each present value: floor(rank * classes / n), where rank counts
/// the present values strictly smaller. Ties therefore share the lowest
/// class, and a constant column lands entirely in class 0.
std::vector<std::optional<int>> quantile_bins(const std::vector<std::optional<double>>& values,
                                              int classes = kQuantileClasses);

/// Column `key` (catalog key, outcome key, or auxiliary name) with masked
/// cells as nullopt. Throws UnknownColumn.
std::vector<std::optional<double>> matrix_column(const FeatureMatrix& m,
                                                 const FeatureCatalog& catalog,
                                                 const std::string& key);

/// FeatureCollection with one Feature per matrix zone that has a polygon,
/// properties {zone, value, quantile_bin}. Bins are computed over the
/// emitted zones. Zones without a polygon are reported in `warnings`.
nlohmann::json choropleth(const FeatureMatrix& m, const FeatureCatalog& catalog,
                          const std::string& column, const std::vector<ZonePolygon>& polygons,
                          const std::string& manifest_digest,
                          std::vector<std::string>* warnings = nullptr);

/// RFC 7946 structural problems in a document; empty when valid.
std::vector<std::string> validate_geojson(const nlohmann::json& doc);

}  // namespace lid::report
