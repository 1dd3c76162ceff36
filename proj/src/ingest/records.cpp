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

#include "lid/ingest/records.hpp"

#include <cctype>
#include <charconv>

#include <fmt/format.h>

namespace lid::ingest {

namespace {

constexpr std::array<std::string_view, kCensusFieldCount> kCensusNames = {
    "total_population",
    "white",
    "black",
    "native",
    "asian",
    "age_25_34",
    "college",
    "bachelor",
    "graduate",
    "sci_tech",
    "median_age",
    "median_income",
    "unemployment_rate",
    "poverty_rate",
    "median_home_value",
    "occupied_housing_units",
    "housing_total",
    "car_truck_van",
    "public_transit",
    "walk",
    "bike",
    "worked_from_home",
    "worked_outside_state",
    "worked_in_state",
    "worked_in_county",
    "worked_outside_county",
    "worked_in_place",
    "population_25_plus",
};

}  // namespace

std::string_view census_field_name(CensusField field) {
  return kCensusNames[static_cast<std::size_t>(field)];
}

bool census_field_optional(CensusField field) {
  switch (field) {
    case CensusField::kWorkedInState:
    case CensusField::kWorkedInCounty:
    case CensusField::kWorkedOutsideCounty:
    case CensusField::kWorkedInPlace:
    case CensusField::kPopulation25Plus:
      return true;
    default:
      return false;
  }
}

std::vector<YearBuiltBin> default_year_built_bins() {
  return {
      {"built_2010_later", 2011.0},   {"built_2000_2009", 2004.5}, {"built_1990_1999", 1994.5},
      {"built_1980_1989", 1984.5},    {"built_1970_1979", 1974.5}, {"built_1960_1969", 1964.5},
      {"built_1950_1959", 1954.5},    {"built_1940_1949", 1944.5}, {"built_1939_earlier", 1929.5},
  };
}

DateWindow DateWindow::calendar_year(int year) {
  using namespace std::chrono;
  return {std::chrono::year{year} / January / 1, std::chrono::year{year} / December / 31};
}

std::optional<Date> parse_date(std::string_view iso) {
  if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-') return std::nullopt;
  auto num = [&](std::size_t pos, std::size_t len) -> std::optional<int> {
    int v = 0;
    const auto res = std::from_chars(iso.data() + pos, iso.data() + pos + len, v);
    if (res.ec != std::errc() || res.ptr != iso.data() + pos + len) return std::nullopt;
    return v;
  };
  const auto y = num(0, 4);
  const auto m = num(5, 2);
  const auto d = num(8, 2);
  if (!y || !m || !d) return std::nullopt;
  const Date date{std::chrono::year{*y}, std::chrono::month{static_cast<unsigned>(*m)},
                  std::chrono::day{static_cast<unsigned>(*d)}};
  if (!date.ok()) return std::nullopt;
  return date;
}

std::string format_date(const Date& d) {
  return fmt::format("{:04d}-{:02d}-{:02d}", static_cast<int>(d.year()),
                     static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
}

std::string_view poi_kind_name(PoiKind kind) {
  switch (kind) {
    case PoiKind::kSchool: return "school";
    case PoiKind::kUniversity: return "university";
    case PoiKind::kCafe: return "cafe";
    case PoiKind::kPark: return "park";
    case PoiKind::kSquare: return "square";
    case PoiKind::kBusStop: return "bus_stop";
    case PoiKind::kInnovationSpace: return "innovation_space";
  }
  return "";
}

std::optional<PoiKind> parse_poi_kind(std::string_view name) {
  for (auto k : {PoiKind::kSchool, PoiKind::kUniversity, PoiKind::kCafe, PoiKind::kPark,
                 PoiKind::kSquare, PoiKind::kBusStop, PoiKind::kInnovationSpace}) {
    if (poi_kind_name(k) == name) return k;
  }
  return std::nullopt;
}

const std::vector<std::string>& innovation_keywords() {
  static const std::vector<std::string> keywords = {
      "accelerator",     "co-working space", "incubator", "innovation center", "innovation hub",
      "innovation park", "start-up",         "tech hub",  "technology park",
  };
  return keywords;
}

std::optional<H1bStatus> parse_h1b_status(std::string_view text) {
  std::string lower;
  for (char c : text) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "certified") return H1bStatus::kCertified;
  if (lower == "denied") return H1bStatus::kDenied;
  if (lower == "withdrawn" || lower == "certified-withdrawn") return H1bStatus::kWithdrawn;
  return std::nullopt;
}

std::string_view h1b_status_name(H1bStatus status) {
  switch (status) {
    case H1bStatus::kCertified: return "certified";
    case H1bStatus::kDenied: return "denied";
    case H1bStatus::kWithdrawn: return "withdrawn";
  }
  return "";
}

}  // namespace lid::ingest
