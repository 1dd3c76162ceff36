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

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lid/core/catalog.hpp"
#include "lid/core/feature_matrix.hpp"
#include "lid/ingest/records.hpp"
#include "lid/spatial/units.hpp"

namespace lid::features {

struct PatentPair {
  std::string rf_id;
  ZoneId zone;

  friend auto operator<=>(const PatentPair&, const PatentPair&) = default;
  friend bool operator==(const PatentPair&, const PatentPair&) = default;
};

/// Distinct (rf_id, zone) pairs. A patent listing several zones counts once
/// in each of them.
std::set<PatentPair> dedup_patents(const std::vector<ingest::PatentRecord>& records);

/// count * 1000 / population; nullopt when population is not positive.
inline std::optional<double> per_1000(double count, double population) {
  if (!(population > 0.0)) return std::nullopt;
  return count * 1000.0 / population;
}

/// Commute counts over total population. Walk and bike are summed first.
struct CommuteShares {
  std::optional<double> car_truck_van;
  std::optional<double> public_transit;
  std::optional<double> walk_bike;
  std::optional<double> worked_from_home;
  std::optional<double> worked_outside_state;
  // Auxiliary, never trained on.
  std::optional<double> worked_in_state;
  std::optional<double> worked_in_county;
  std::optional<double> worked_outside_county;
  std::optional<double> worked_in_place;
};

CommuteShares commute_shares(const ingest::CensusRecord& c);

struct BuildingAge {
  double mean_age = 0.0;
  double sd = 0.0;   // population (unit-weighted) standard deviation
  double mix = 0.0;  // sd / mean, 0 when mean is 0
};

/// Unit-weighted age moments with age = base_year - bin midpoint. nullopt
/// for an empty histogram or any missing bin.
std::optional<BuildingAge> building_age_indicators(
    const std::vector<std::optional<double>>& counts,
    const std::vector<ingest::YearBuiltBin>& bins, int base_year);

enum class EducationDenominator { kTotalPopulation, kPopulation25Plus };

struct BuildConfig {
  std::set<std::string> states;  // empty keeps every census state
  int base_year = 2012;
  int outcome_year = 2016;
  int lag = kDefaultLag;
  spatial::DensityUnit density_unit = spatial::DensityUnit::kTableNote;
  bool h1b_certified_only = false;
  EducationDenominator education = EducationDenominator::kTotalPopulation;
  std::vector<ingest::YearBuiltBin> year_built = ingest::default_year_built_bins();
};

/// Every parsed source, already filtered to the configured states.
struct Staging {
  std::vector<ingest::CensusRecord> census;
  std::vector<ingest::PatentRecord> patents;
  std::vector<ingest::PoiRecord> pois;
  std::vector<ingest::RndRecord> rnd;
  std::vector<ingest::H1bRecord> h1b;
  std::vector<ingest::SfrRecord> sfr;
  std::vector<ingest::BizRegRecord> bizreg;
};

struct SourceJoin {
  std::size_t records = 0;
  std::size_t matched = 0;             // records landing in a universe zone
  std::set<std::string> extra_zones;   // zones outside the universe
  std::size_t skipped = 0;             // wrong year, status filter, unlocated
};

struct JoinReport {
  std::size_t census_zones = 0;
  std::size_t polygon_zones = 0;
  std::vector<std::string> no_polygon;       // census zones without geometry
  std::vector<std::string> other_state;      // census zones outside the states
  std::vector<std::string> missing_outcome;  // dropped: an outcome is absent
  std::vector<std::string> degenerate;       // zero land area
  std::vector<std::string> zero_population;  // per-1000 cells masked
  std::map<std::string, SourceJoin> sources;
  std::size_t patent_pairs = 0;
  std::size_t output_zones = 0;

  std::string to_text() const;
};

/// Auxiliary columns carried alongside the predictors.
const std::vector<std::string>& aux_columns();

/// Inner join of census and polygon zones, every catalog column filled by
/// its formula, rows ordered by ZoneId. Throws NoCensus, LagMismatch.
FeatureMatrix build_matrix(const Staging& staging, const std::vector<ZonePolygon>& polygons,
                           const FeatureCatalog& catalog, const BuildConfig& config,
                           JoinReport* report = nullptr);

}  // namespace lid::features
