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

#include <array>
#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lid/core/zone.hpp"

namespace lid::ingest {

// ---------------------------------------------------------------- census

enum class CensusField {
  kTotalPopulation,
  kWhite,
  kBlack,
  kNative,
  kAsian,
  kAge25to34,
  kCollege,
  kBachelor,
  kGraduate,
  kSciTech,
  kMedianAge,
  kMedianIncome,
  kUnemploymentRate,
  kPovertyRate,
  kMedianHomeValue,
  kOccupiedHousingUnits,
  kHousingTotal,
  kCarTruckVan,
  kPublicTransit,
  kWalk,
  kBike,
  kWorkedFromHome,
  kWorkedOutsideState,
  kWorkedInState,
  kWorkedInCounty,
  kWorkedOutsideCounty,
  kWorkedInPlace,
  kPopulation25Plus,
};

inline constexpr std::size_t kCensusFieldCount = 28;

/// Canonical column name ("total_population", "car_truck_van", ...).
std::string_view census_field_name(CensusField field);

/// Fields whose column may be absent from a census file.
bool census_field_optional(CensusField field);

struct YearBuiltBin {
  std::string column;
  double midpoint_year;
};

/// ACS year-structure-built bins. Open-ended bins use 2011 (2010 to the
/// 2012 base year) and 1929.5 (1920 to 1939).
std::vector<YearBuiltBin> default_year_built_bins();

/// One row of the ACS 5-year extract. Unparseable or out-of-range cells are
/// nullopt rather than dropping the row.
struct CensusRecord {
  ZoneId zone;
  std::array<std::optional<double>, kCensusFieldCount> fields{};
  std::vector<std::optional<double>> year_built;  // aligned to the schema bins

  std::optional<double> get(CensusField f) const { return fields[static_cast<std::size_t>(f)]; }
  void set(CensusField f, std::optional<double> v) { fields[static_cast<std::size_t>(f)] = v; }
};

// ---------------------------------------------------------------- patents

using Date = std::chrono::year_month_day;

struct DateWindow {
  Date first;
  Date last;  // inclusive

  static DateWindow calendar_year(int year);
  bool contains(const Date& d) const { return first <= d && d <= last; }
};

std::optional<Date> parse_date(std::string_view iso);
std::string format_date(const Date& d);

struct PatentRecord {
  std::string rf_id;
  ZoneId zone;
  Date grant_date;
  std::optional<Point> location;  // lon, lat
};

// ---------------------------------------------------------------- POIs

enum class PoiKind { kSchool, kUniversity, kCafe, kPark, kSquare, kBusStop, kInnovationSpace };

std::string_view poi_kind_name(PoiKind kind);
std::optional<PoiKind> parse_poi_kind(std::string_view name);
inline bool has_area(PoiKind kind) { return kind == PoiKind::kPark || kind == PoiKind::kSquare; }

struct PoiRecord {
  PoiKind kind;
  std::string name;
  Point location;                         // lon, lat
  std::optional<double> area_m2;          // present iff park or square
  std::optional<std::string> matched_keyword;  // innovation spaces

  friend bool operator==(const PoiRecord&, const PoiRecord&) = default;
};

/// Search terms for innovation spaces, in the order they are queried.
const std::vector<std::string>& innovation_keywords();

// ---------------------------------------------------------------- zone-keyed sources

struct RndRecord {
  ZoneId zone;
  int year = 0;
  double expenditure_musd = 0.0;  // Compustat xrd, millions
};

enum class H1bStatus { kCertified, kDenied, kWithdrawn };
std::optional<H1bStatus> parse_h1b_status(std::string_view text);
std::string_view h1b_status_name(H1bStatus status);

struct H1bRecord {
  ZoneId zone;
  H1bStatus status = H1bStatus::kCertified;
};

struct SfrRecord {
  ZoneId zone;
  int year = 0;
  double sfr = 0.0;
};

struct BizRegRecord {
  ZoneId zone;
  int year = 0;
};

// ---------------------------------------------------------------- results

struct Diagnostic {
  std::size_t line = 0;
  std::string message;
};

/// `dropped` has one entry per input line that produced no record; `notes`
/// are cell-level issues on lines that did produce one. Every non-blank data
/// line is accounted for by records.size() + dropped.size().
template <typename Record>
struct ParseResult {
  std::vector<Record> records;
  std::vector<Diagnostic> dropped;
  std::vector<Diagnostic> notes;
};

}  // namespace lid::ingest
