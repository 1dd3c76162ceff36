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

#include "lid/features/build.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "lid/core/error.hpp"
#include "lid/spatial/zone_index.hpp"

namespace lid::features {

using ingest::CensusField;

std::set<PatentPair> dedup_patents(const std::vector<ingest::PatentRecord>& records) {
  std::set<PatentPair> pairs;
  for (const auto& r : records) pairs.insert({r.rf_id, r.zone});
  return pairs;
}

namespace {

std::optional<double> share(std::optional<double> count, std::optional<double> population) {
  if (!count || !population || !(*population > 0.0)) return std::nullopt;
  return *count / *population;
}

}  // namespace

CommuteShares commute_shares(const ingest::CensusRecord& c) {
  const auto pop = c.get(CensusField::kTotalPopulation);
  CommuteShares s;
  s.car_truck_van = share(c.get(CensusField::kCarTruckVan), pop);
  s.public_transit = share(c.get(CensusField::kPublicTransit), pop);
  const auto walk = c.get(CensusField::kWalk);
  const auto bike = c.get(CensusField::kBike);
  if (walk && bike) s.walk_bike = share(*walk + *bike, pop);
  s.worked_from_home = share(c.get(CensusField::kWorkedFromHome), pop);
  s.worked_outside_state = share(c.get(CensusField::kWorkedOutsideState), pop);
  s.worked_in_state = share(c.get(CensusField::kWorkedInState), pop);
  s.worked_in_county = share(c.get(CensusField::kWorkedInCounty), pop);
  s.worked_outside_county = share(c.get(CensusField::kWorkedOutsideCounty), pop);
  s.worked_in_place = share(c.get(CensusField::kWorkedInPlace), pop);
  return s;
}

std::optional<BuildingAge> building_age_indicators(
    const std::vector<std::optional<double>>& counts,
    const std::vector<ingest::YearBuiltBin>& bins, int base_year) {
  if (counts.size() != bins.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                fmt::format("{} year-built counts for {} bins", counts.size(), bins.size()));
  }
  double total = 0.0;
  double weighted = 0.0;
  for (std::size_t b = 0; b < bins.size(); ++b) {
    if (!counts[b]) return std::nullopt;
    total += *counts[b];
    weighted += *counts[b] * (base_year - bins[b].midpoint_year);
  }
  if (!(total > 0.0)) return std::nullopt;
  BuildingAge out;
  out.mean_age = weighted / total;
  double ss = 0.0;
  for (std::size_t b = 0; b < bins.size(); ++b) {
    const double d = (base_year - bins[b].midpoint_year) - out.mean_age;
    ss += *counts[b] * d * d;
  }
  out.sd = std::sqrt(ss / total);
  out.mix = out.mean_age == 0.0 ? 0.0 : out.sd / out.mean_age;
  return out;
}

const std::vector<std::string>& aux_columns() {
  static const std::vector<std::string> names = {
      "total_population",      "land_area_m2",        "patent_count",
      "building_age_sd",       "worked_in_state_pct", "worked_in_county_pct",
      "worked_outside_county_pct", "worked_in_place_pct",
  };
  return names;
}

namespace aux {
constexpr Eigen::Index kPopulation = 0;
constexpr Eigen::Index kLandArea = 1;
constexpr Eigen::Index kPatentCount = 2;
constexpr Eigen::Index kBuildingSd = 3;
constexpr Eigen::Index kInState = 4;
constexpr Eigen::Index kInCounty = 5;
constexpr Eigen::Index kOutsideCounty = 6;
constexpr Eigen::Index kInPlace = 7;
}  // namespace aux

std::string JoinReport::to_text() const {
  auto list = [](const std::vector<std::string>& v) {
    return v.empty() ? std::string("-") : fmt::format("{}", fmt::join(v, ","));
  };
  std::string out;
  out += fmt::format("census_zones\t{}\n", census_zones);
  out += fmt::format("polygon_zones\t{}\n", polygon_zones);
  out += fmt::format("output_zones\t{}\n", output_zones);
  out += fmt::format("patent_pairs\t{}\n", patent_pairs);
  out += fmt::format("dropped_no_polygon\t{}\t{}\n", no_polygon.size(), list(no_polygon));
  out += fmt::format("dropped_other_state\t{}\t{}\n", other_state.size(), list(other_state));
  out += fmt::format("dropped_missing_outcome\t{}\t{}\n", missing_outcome.size(), list(missing_outcome));
  out += fmt::format("degenerate_area\t{}\t{}\n", degenerate.size(), list(degenerate));
  out += fmt::format("zero_population\t{}\t{}\n", zero_population.size(), list(zero_population));
  for (const auto& [name, s] : sources) {
    out += fmt::format("source\t{}\trecords={}\tmatched={}\tskipped={}\textra_zones={}\t{}\n", name,
                       s.records, s.matched, s.skipped, s.extra_zones.size(),
                       list({s.extra_zones.begin(), s.extra_zones.end()}));
  }
  return out;
}

namespace {

struct Tally {
  double h1b = 0.0;
  double rnd = 0.0;
  double bizreg = 0.0;
  double patents = 0.0;
  std::optional<double> sfr;
  std::array<double, 7> poi_count{};
  double park_area = 0.0;
  double square_area = 0.0;
};

}  // namespace

FeatureMatrix build_matrix(const Staging& staging, const std::vector<ZonePolygon>& polygons,
                           const FeatureCatalog& catalog, const BuildConfig& config,
                           JoinReport* report) {
  if (staging.census.empty()) throw Error(ErrorCode::kNoCensus, "no census records staged");
  if (config.outcome_year - config.base_year != config.lag) {
    throw Error(ErrorCode::kLagMismatch,
                fmt::format("outcome year {} - base year {} != lag {}", config.outcome_year,
                            config.base_year, config.lag));
  }
  if (catalog.size() != col::kCount) {
    throw Error(ErrorCode::kDimensionMismatch,
                fmt::format("catalog has {} entries, builder fills {}", catalog.size(), col::kCount));
  }

  JoinReport rep;
  const spatial::ZoneIndex index(polygons);
  rep.polygon_zones = polygons.size();
  rep.census_zones = staging.census.size();

  // Zone universe: census zones in the configured states that have geometry.
  std::vector<const ingest::CensusRecord*> census;
  for (const auto& c : staging.census) {
    if (!config.states.empty() && !config.states.count(c.zone.state())) {
      rep.other_state.push_back(c.zone.code());
    } else if (!index.find(c.zone.code())) {
      rep.no_polygon.push_back(c.zone.code());
    } else {
      census.push_back(&c);
    }
  }
  std::sort(census.begin(), census.end(),
            [](const auto* a, const auto* b) { return a->zone < b->zone; });
  std::map<std::string, Tally> tally;
  for (const auto* c : census) tally[c->zone.code()];

  auto credit = [&](const std::string& source, const std::string& code) -> Tally* {
    auto& s = rep.sources[source];
    auto it = tally.find(code);
    if (it == tally.end()) {
      s.extra_zones.insert(code);
      return nullptr;
    }
    ++s.matched;
    return &it->second;
  };

  {
    auto& s = rep.sources["patents"];
    std::vector<ingest::PatentRecord> located;
    for (const auto& p : staging.patents) {
      ++s.records;
      if (static_cast<int>(p.grant_date.year()) != config.outcome_year) {
        ++s.skipped;
        continue;
      }
      auto q = p;
      if (p.location) {
        if (auto z = spatial::assign_zone(*p.location, index)) q.zone = *z;
      }
      located.push_back(std::move(q));
    }
    const auto pairs = dedup_patents(located);
    rep.patent_pairs = pairs.size();
    for (const auto& pair : pairs) {
      if (auto* t = credit("patents", pair.zone.code())) t->patents += 1.0;
    }
  }
  for (const auto& r : staging.h1b) {
    auto& s = rep.sources["h1b"];
    ++s.records;
    if (config.h1b_certified_only && r.status != ingest::H1bStatus::kCertified) {
      ++s.skipped;
      continue;
    }
    if (auto* t = credit("h1b", r.zone.code())) t->h1b += 1.0;
  }
  for (const auto& r : staging.rnd) {
    auto& s = rep.sources["rnd"];
    ++s.records;
    if (r.year != config.base_year) {
      ++s.skipped;
      continue;
    }
    if (auto* t = credit("rnd", r.zone.code())) t->rnd += r.expenditure_musd;
  }
  for (const auto& r : staging.bizreg) {
    auto& s = rep.sources["bizreg"];
    ++s.records;
    if (r.year != config.base_year) {
      ++s.skipped;
      continue;
    }
    if (auto* t = credit("bizreg", r.zone.code())) t->bizreg += 1.0;
  }
  for (const auto& r : staging.sfr) {
    auto& s = rep.sources["sfr"];
    ++s.records;
    if (r.year != config.outcome_year) {
      ++s.skipped;
      continue;
    }
    if (auto* t = credit("sfr", r.zone.code())) {
      if (t->sfr) throw Error(ErrorCode::kDuplicateZone, "sfr " + r.zone.code());
      t->sfr = r.sfr;
    }
  }
  for (const auto& poi : staging.pois) {
    auto& s = rep.sources["poi"];
    ++s.records;
    const auto zone = spatial::assign_zone(poi.location, index);
    if (!zone) {
      ++s.skipped;
      continue;
    }
    auto* t = credit("poi", zone->code());
    if (!t) continue;
    t->poi_count[static_cast<std::size_t>(poi.kind)] += 1.0;
    if (poi.kind == ingest::PoiKind::kPark && poi.area_m2) t->park_area += *poi.area_m2;
    if (poi.kind == ingest::PoiKind::kSquare && poi.area_m2) t->square_area += *poi.area_m2;
  }

  // Outcomes decide membership.
  std::vector<const ingest::CensusRecord*> kept;
  for (const auto* c : census) {
    const auto& t = tally.at(c->zone.code());
    const auto pop = c->get(CensusField::kTotalPopulation);
    if (!t.sfr || !pop || !per_1000(t.patents, *pop)) {
      rep.missing_outcome.push_back(c->zone.code());
    } else {
      kept.push_back(c);
    }
  }

  std::vector<ZoneId> zones;
  for (const auto* c : kept) zones.push_back(c->zone);
  auto m = FeatureMatrix::zeros(zones, catalog.size(), aux_columns());
  m.base_year = config.base_year;
  m.outcome_year = config.outcome_year;
  m.catalog_version = catalog.version;

  for (std::size_t r = 0; r < kept.size(); ++r) {
    const auto& c = *kept[r];
    const auto& t = tally.at(c.zone.code());
    const auto i = static_cast<Eigen::Index>(r);
    const auto& poly = *index.find(c.zone.code());
    const auto pop = c.get(CensusField::kTotalPopulation);

    auto set = [&](std::size_t j, std::optional<double> v) {
      const auto jj = static_cast<Eigen::Index>(j);
      if (v && std::isfinite(*v)) {
        m.values(i, jj) = *v;
      } else {
        m.mask(i, jj) = true;
      }
    };
    auto set_aux = [&](Eigen::Index j, std::optional<double> v) {
      if (v && std::isfinite(*v)) {
        m.aux(i, j) = *v;
      } else {
        m.aux_mask(i, j) = true;
      }
    };
    auto rate = [&](double count) { return pop ? per_1000(count, *pop) : std::nullopt; };
    auto pct = [&](CensusField f) { return share(c.get(f), pop); };
    auto poi = [&](ingest::PoiKind k) { return rate(t.poi_count[static_cast<std::size_t>(k)]); };

    if (!pop || !(*pop > 0.0)) rep.zero_population.push_back(c.zone.code());

    const auto edu_den = config.education == EducationDenominator::kTotalPopulation
                             ? pop
                             : c.get(CensusField::kPopulation25Plus);

    set(col::kH1b, rate(t.h1b));
    set(col::kSciTech, pct(CensusField::kSciTech));
    set(col::kWhite, pct(CensusField::kWhite));
    set(col::kBlack, pct(CensusField::kBlack));
    set(col::kNative, pct(CensusField::kNative));
    set(col::kAsian, pct(CensusField::kAsian));
    set(col::kAge25to34, pct(CensusField::kAge25to34));
    set(col::kCollege, share(c.get(CensusField::kCollege), edu_den));
    set(col::kBachelor, share(c.get(CensusField::kBachelor), edu_den));
    set(col::kGraduate, share(c.get(CensusField::kGraduate), edu_den));
    std::optional<double> density;
    if (pop) density = spatial::population_density(*pop, poly.land_area_m2, config.density_unit);
    if (poly.degenerate()) rep.degenerate.push_back(c.zone.code());
    set(col::kDensity, density);
    set(col::kMedianAge, c.get(CensusField::kMedianAge));
    set(col::kMedianIncome, c.get(CensusField::kMedianIncome));
    set(col::kUnemployment, c.get(CensusField::kUnemploymentRate));
    set(col::kPoverty, c.get(CensusField::kPovertyRate));
    set(col::kHomeValue, c.get(CensusField::kMedianHomeValue));
    set(col::kRnd, rate(t.rnd));
    set(col::kOccupied,
        share(c.get(CensusField::kOccupiedHousingUnits), c.get(CensusField::kHousingTotal)));
    set(col::kSchools, poi(ingest::PoiKind::kSchool));
    set(col::kUniversities, poi(ingest::PoiKind::kUniversity));
    set(col::kBusinessReg, rate(t.bizreg));
    const auto ages = building_age_indicators(c.year_built, config.year_built, config.base_year);
    set(col::kMeanBuildingAge, ages ? std::optional(ages->mean_age) : std::nullopt);
    set(col::kMixAge, ages ? std::optional(ages->mix) : std::nullopt);
    set(col::kInnovationSpaces, poi(ingest::PoiKind::kInnovationSpace));
    set(col::kCafes, poi(ingest::PoiKind::kCafe));
    set(col::kParks, poi(ingest::PoiKind::kPark));
    set(col::kSquares, poi(ingest::PoiKind::kSquare));
    set(col::kParkAcres, rate(spatial::acres(t.park_area)));
    set(col::kSquareAcres, rate(spatial::acres(t.square_area)));
    const auto commute = commute_shares(c);
    set(col::kCarTruckVan, commute.car_truck_van);
    set(col::kPublicTransit, commute.public_transit);
    set(col::kWalkBike, commute.walk_bike);
    set(col::kWorkedFromHome, commute.worked_from_home);
    set(col::kWorkedOutsideState, commute.worked_outside_state);
    set(col::kBusStops, poi(ingest::PoiKind::kBusStop));

    m.outcomes(i, static_cast<Eigen::Index>(Outcome::kPatents)) = *rate(t.patents);
    m.outcomes(i, static_cast<Eigen::Index>(Outcome::kSfr)) = *t.sfr;

    set_aux(aux::kPopulation, pop);
    set_aux(aux::kLandArea, poly.land_area_m2);
    set_aux(aux::kPatentCount, t.patents);
    set_aux(aux::kBuildingSd, ages ? std::optional(ages->sd) : std::nullopt);
    set_aux(aux::kInState, commute.worked_in_state);
    set_aux(aux::kInCounty, commute.worked_in_county);
    set_aux(aux::kOutsideCounty, commute.worked_outside_county);
    set_aux(aux::kInPlace, commute.worked_in_place);
  }
  rep.output_zones = kept.size();
  if (report) *report = std::move(rep);
  return m;
}

}  // namespace lid::features
