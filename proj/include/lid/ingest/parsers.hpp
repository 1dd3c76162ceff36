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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lid/ingest/records.hpp"

// Column dictionaries (canonical names; every source also has `zone` and
// `state`):
//   census   census_field_name(...) for each field, plus the year-built bins
//   patents  rf_id, zone, state, grant_date (YYYY-MM-DD), lon, lat (optional)
//   rnd      zone, state, year, xrd            (xrd in millions)
//   h1b      zone, state, status               (certified|denied|withdrawn)
//   sfr      zone, state, year, sfr
//   bizreg   zone, state, year
//   poi      newline-delimited JSON objects:
//            {"kind", "name", "lon", "lat", "area_m2"?, "keyword"?}

namespace lid::ingest {

struct CensusSchema {
  std::map<std::string, std::string> columns;  // canonical name -> file column
  std::vector<YearBuiltBin> year_built = default_year_built_bins();
  char delimiter = ',';

  std::string column_for(std::string_view canonical) const;

  /// {"delimiter": ",", "columns": {...}, "year_built": [{"column", "midpoint_year"}]}
  static CensusSchema from_json(const nlohmann::json& j);
};

struct SourceOptions {
  char delimiter = ',';
  std::optional<int> year;  // keep only rows of this year (rnd, sfr, bizreg)
};

ParseResult<CensusRecord> parse_census(const std::filesystem::path& path,
                                       const CensusSchema& schema = {});
ParseResult<PatentRecord> parse_patents(const std::filesystem::path& path,
                                        const DateWindow& window, char delimiter = ',');
ParseResult<PoiRecord> parse_poi(const std::filesystem::path& path, PoiKind kind);
ParseResult<RndRecord> parse_rnd(const std::filesystem::path& path, const SourceOptions& opts = {});
ParseResult<H1bRecord> parse_h1b(const std::filesystem::path& path, const SourceOptions& opts = {});
ParseResult<SfrRecord> parse_sfr(const std::filesystem::path& path, const SourceOptions& opts = {});
ParseResult<BizRegRecord> parse_bizreg(const std::filesystem::path& path,
                                       const SourceOptions& opts = {});

PoiRecord poi_from_json(const nlohmann::json& j);
nlohmann::json poi_to_json(const PoiRecord& poi);

// Staged (canonical, tab-separated) forms read back by the build stage with
// the default schema and '\t'. POIs stage as newline-delimited JSON.
std::string stage_census(const std::vector<CensusRecord>& records,
                         const std::vector<YearBuiltBin>& bins);
std::string stage_patents(const std::vector<PatentRecord>& records);
std::string stage_poi(const std::vector<PoiRecord>& records);
std::string stage_rnd(const std::vector<RndRecord>& records);
std::string stage_h1b(const std::vector<H1bRecord>& records);
std::string stage_sfr(const std::vector<SfrRecord>& records);
std::string stage_bizreg(const std::vector<BizRegRecord>& records);

/// Schema for reading a staged census file written with `bins`.
CensusSchema staged_census_schema(const std::vector<YearBuiltBin>& bins);

}  // namespace lid::ingest
