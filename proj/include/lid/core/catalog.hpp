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

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lid {

enum class FeatureGroup { kSocial, kEconomic, kInfrastructure, kUrbanMorphology, kUrbanMobility };

enum class FeatureKind { kPer1000Rate, kPercentage, kLevel, kIndex };

std::string_view group_label(FeatureGroup group);  // "Urban Morphology", ...
std::string_view kind_name(FeatureKind kind);      // "per-1000-rate", ...

struct FeatureSpec {
  std::string key;    // stable machine name, used as column header
  std::string label;  // table row label
  FeatureGroup group;
  FeatureKind kind;
};

enum class Outcome { kPatents = 0, kSfr = 1 };

inline constexpr std::size_t kOutcomeCount = 2;

std::string_view outcome_key(Outcome outcome);  // "patents_per_1000" | "sfr"
std::string outcome_label(Outcome outcome, int outcome_year);

/// The fixed predictor set. Order is canonical and versioned: tables, matrix
/// files, and importance vectors all index features by position here.
struct FeatureCatalog {
  std::string version;
  std::vector<FeatureSpec> entries;

  std::size_t size() const noexcept { return entries.size(); }
  std::optional<std::size_t> index_of(std::string_view key) const;
  std::size_t count(FeatureGroup group) const;
};

/// 35 predictors, Table-A2 row order with cafes appended to Infrastructure.
const FeatureCatalog& catalog_default();

/// One header line then `key\tgroup\tkind\tlabel` per entry.
std::string serialize_catalog(const FeatureCatalog& catalog);

// Column indices into catalog_default(), for the feature builder.
namespace col {
inline constexpr std::size_t kH1b = 0;
inline constexpr std::size_t kSciTech = 1;
inline constexpr std::size_t kWhite = 2;
inline constexpr std::size_t kBlack = 3;
inline constexpr std::size_t kNative = 4;
inline constexpr std::size_t kAsian = 5;
inline constexpr std::size_t kAge25to34 = 6;
inline constexpr std::size_t kCollege = 7;
inline constexpr std::size_t kBachelor = 8;
inline constexpr std::size_t kGraduate = 9;
inline constexpr std::size_t kDensity = 10;
inline constexpr std::size_t kMedianAge = 11;
inline constexpr std::size_t kMedianIncome = 12;
inline constexpr std::size_t kUnemployment = 13;
inline constexpr std::size_t kPoverty = 14;
inline constexpr std::size_t kHomeValue = 15;
inline constexpr std::size_t kRnd = 16;
inline constexpr std::size_t kOccupied = 17;
inline constexpr std::size_t kSchools = 18;
inline constexpr std::size_t kUniversities = 19;
inline constexpr std::size_t kBusinessReg = 20;
inline constexpr std::size_t kMeanBuildingAge = 21;
inline constexpr std::size_t kMixAge = 22;
inline constexpr std::size_t kInnovationSpaces = 23;
inline constexpr std::size_t kCafes = 24;
inline constexpr std::size_t kParks = 25;
inline constexpr std::size_t kSquares = 26;
inline constexpr std::size_t kParkAcres = 27;
inline constexpr std::size_t kSquareAcres = 28;
inline constexpr std::size_t kCarTruckVan = 29;
inline constexpr std::size_t kPublicTransit = 30;
inline constexpr std::size_t kWalkBike = 31;
inline constexpr std::size_t kWorkedFromHome = 32;
inline constexpr std::size_t kWorkedOutsideState = 33;
inline constexpr std::size_t kBusStops = 34;
inline constexpr std::size_t kCount = 35;
}  // namespace col

}  // namespace lid
