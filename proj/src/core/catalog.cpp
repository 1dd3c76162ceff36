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

#include "lid/core/catalog.hpp"

#include <algorithm>

namespace lid {

std::string_view group_label(FeatureGroup group) {
  switch (group) {
    case FeatureGroup::kSocial: return "Social";
    case FeatureGroup::kEconomic: return "Economic";
    case FeatureGroup::kInfrastructure: return "Infrastructure";
    case FeatureGroup::kUrbanMorphology: return "Urban Morphology";
    case FeatureGroup::kUrbanMobility: return "Urban Mobility";
  }
  return "";
}

std::string_view kind_name(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::kPer1000Rate: return "per-1000-rate";
    case FeatureKind::kPercentage: return "percentage";
    case FeatureKind::kLevel: return "level";
    case FeatureKind::kIndex: return "index";
  }
  return "";
}

std::string_view outcome_key(Outcome outcome) {
  return outcome == Outcome::kPatents ? "patents_per_1000" : "sfr";
}

std::string outcome_label(Outcome outcome, int outcome_year) {
  const std::string year = " (" + std::to_string(outcome_year) + ")";
  return outcome == Outcome::kPatents ? "Patents per 1000 residents" + year : "SFR" + year;
}

std::optional<std::size_t> FeatureCatalog::index_of(std::string_view key) const {
  auto it = std::find_if(entries.begin(), entries.end(),
                         [&](const FeatureSpec& f) { return f.key == key; });
  if (it == entries.end()) return std::nullopt;
  return static_cast<std::size_t>(it - entries.begin());
}

std::size_t FeatureCatalog::count(FeatureGroup group) const {
  return static_cast<std::size_t>(std::count_if(
      entries.begin(), entries.end(), [&](const FeatureSpec& f) { return f.group == group; }));
}

namespace {

FeatureCatalog make_default() {
  using G = FeatureGroup;
  using K = FeatureKind;
  FeatureCatalog c;
  c.version = "lid-catalog-v1";
  c.entries = {
      {"h1b_per_1000", "H1B applications per 1000 residents", G::kSocial, K::kPer1000Rate},
      {"sci_tech_pct", "Scientific technical pct", G::kSocial, K::kPercentage},
      {"white_pct", "White pct", G::kSocial, K::kPercentage},
      {"black_pct", "Black pct", G::kSocial, K::kPercentage},
      {"native_pct", "Native pct", G::kSocial, K::kPercentage},
      {"asian_pct", "Asian pct", G::kSocial, K::kPercentage},
      {"age_25_34_pct", "25 to 34 years pct", G::kSocial, K::kPercentage},
      {"college_pct", "College pct", G::kSocial, K::kPercentage},
      {"bachelor_pct", "Bachelor pct", G::kSocial, K::kPercentage},
      {"graduate_pct", "Graduate pct", G::kSocial, K::kPercentage},
      {"population_density", "Population density", G::kSocial, K::kLevel},
      {"median_age", "Median age", G::kEconomic, K::kLevel},
      {"median_income", "Median income", G::kEconomic, K::kLevel},
      {"unemployment_rate", "Unemployment rate", G::kEconomic, K::kPercentage},
      {"poverty_pct", "Poverty pct", G::kEconomic, K::kPercentage},
      {"median_home_value", "Median home value", G::kEconomic, K::kLevel},
      {"rnd_per_1000", "R&D expenditure per 1000 residents", G::kEconomic, K::kPer1000Rate},
      {"occupied_housing_pct", "Occupied housing units pct", G::kInfrastructure, K::kPercentage},
      {"schools_per_1000", "Schools per 1000 residents", G::kInfrastructure, K::kPer1000Rate},
      {"universities_per_1000", "Universities per 1000 residents", G::kInfrastructure,
       K::kPer1000Rate},
      {"business_reg_per_1000", "Business registrations per 1000 residents", G::kInfrastructure,
       K::kPer1000Rate},
      {"mean_building_age", "Mean age of buildings", G::kInfrastructure, K::kLevel},
      {"mix_age_building_index", "Mix age building index", G::kInfrastructure, K::kIndex},
      {"innovation_spaces_per_1000", "Innovation spaces per 1000 residents", G::kInfrastructure,
       K::kPer1000Rate},
      {"cafes_per_1000", "Cafes per 1000 residents", G::kInfrastructure, K::kPer1000Rate},
      {"parks_per_1000", "Parks per 1000 residents", G::kUrbanMorphology, K::kPer1000Rate},
      {"squares_per_1000", "Squares per 1000 residents", G::kUrbanMorphology, K::kPer1000Rate},
      {"park_acres_per_1000", "Park land (acres) per 1000 residents", G::kUrbanMorphology,
       K::kPer1000Rate},
      {"square_acres_per_1000", "Square land (acres) per 1000 residents", G::kUrbanMorphology,
       K::kPer1000Rate},
      {"car_truck_van_pct", "Car truck van to work pct", G::kUrbanMobility, K::kPercentage},
      {"public_transit_pct", "Public transportation to work pct", G::kUrbanMobility,
       K::kPercentage},
      {"walk_bike_pct", "Walk bike to work pct", G::kUrbanMobility, K::kPercentage},
      {"worked_from_home_pct", "Worked from home pct", G::kUrbanMobility, K::kPercentage},
      {"worked_outside_state_pct", "Worked outside state of residence pct", G::kUrbanMobility,
       K::kPercentage},
      {"bus_stops_per_1000", "Bus stops per 1000 residents", G::kUrbanMobility, K::kPer1000Rate},
  };
  return c;
}

}  // namespace

const FeatureCatalog& catalog_default() {
  static const FeatureCatalog catalog = make_default();
  return catalog;
}

std::string serialize_catalog(const FeatureCatalog& catalog) {
  std::string out = "# " + catalog.version + "\n";
  for (const auto& f : catalog.entries) {
    out += f.key;
    out += '\t';
    out += group_label(f.group);
    out += '\t';
    out += kind_name(f.kind);
    out += '\t';
    out += f.label;
    out += '\n';
  }
  return out;
}

}  // namespace lid
