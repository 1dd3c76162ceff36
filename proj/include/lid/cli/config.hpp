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

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lid/core/importance.hpp"
#include "lid/features/build.hpp"
#include "lid/ingest/fetch.hpp"
#include "lid/ingest/parsers.hpp"
#include "lid/spatial/geojson.hpp"

// Run configuration (JSON). Relative paths resolve against the config file.
//
//   states                 ["NY", "MA"]            order sets table columns
//   base_year              2012
//   outcome_year           2016                    must be base_year + 4
//   allow_custom_lag       false                   same as --allow-custom-lag
//   sources.census         path                    required
//   sources.patents        path                    required
//   sources.sfr            path                    required
//   sources.rnd|h1b|bizreg path                    optional
//   sources.poi            {kind: path}            NDJSON, kinds as in PoiKind
//   census_schema          CensusSchema::from_json
//   delimiter              ","                     for every delimited source
//   polygons               path                    GeoJSON FeatureCollection
//   polygon_keys           {zone, state, land_area}
//   forest                 {n_trees, mtry, min_samples_split, max_depth,
//                           bootstrap, n_seeds}
//   master_seed            integer
//   output_dir             path                    overridden by --out
//   density_unit           "table_note" | "per_square_mile"
//   h1b_status             "all" | "certified"
//   education_denominator  "total_population" | "population_25_plus"
//   timestamp              optional ISO string recorded in the manifest
//   poi_fetch              {endpoint?, bbox: [s, w, n, e], kinds: [...],
//                           keywords?}             replayed from the cache

namespace lid::cli {

struct PoiFetchConfig {
  std::optional<std::string> endpoint;
  ingest::BoundingBox bbox;
  std::vector<ingest::PoiKind> kinds;
  std::vector<std::string> keywords;
};

struct RunConfig {
  std::filesystem::path config_dir;
  std::vector<std::string> states;
  int base_year = 2012;
  int outcome_year = 2016;
  bool allow_custom_lag = false;
  std::map<std::string, std::string> sources;        // as written in the file
  std::map<ingest::PoiKind, std::string> poi_sources;
  ingest::CensusSchema census_schema;
  char delimiter = ',';
  std::string polygons;
  spatial::PolygonKeys polygon_keys;
  ForestParams forest;
  std::uint64_t master_seed = 20160101;
  std::filesystem::path output_dir = "lid-out";
  spatial::DensityUnit density_unit = spatial::DensityUnit::kTableNote;
  bool h1b_certified_only = false;
  features::EducationDenominator education = features::EducationDenominator::kTotalPopulation;
  std::optional<std::string> timestamp;
  std::optional<PoiFetchConfig> poi_fetch;

  std::filesystem::path resolve(const std::string& path) const;
  features::BuildConfig build_config() const;

  /// Effective configuration with defaults filled in. Leaves out the
  /// output directory so relocated runs share a manifest.
  nlohmann::json echo() const;
};

/// Parses without touching the filesystem beyond reading `path`.
RunConfig load_config(const std::filesystem::path& path);
RunConfig parse_config(const nlohmann::json& j, const std::filesystem::path& config_dir);

/// Problems that make the config unusable: lag, states, missing files,
/// forest parameters. Empty when the run may start.
std::vector<std::string> validate_config(const RunConfig& config);

}  // namespace lid::cli
