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

#include "lid/cli/config.hpp"

#include <fmt/format.h>

#include "lid/core/error.hpp"
#include "lid/core/zone.hpp"
#include "lid/report/manifest.hpp"
#include "lid/util/io.hpp"

namespace lid::cli {

using nlohmann::json;

namespace {

char parse_delimiter(const std::string& d) {
  if (d == "\\t" || d == "tab" || d == "\t") return '\t';
  if (d.size() != 1) throw Error(ErrorCode::kInvalidConfig, "delimiter must be one character");
  return d[0];
}

std::string delimiter_name(char d) { return d == '\t' ? "tab" : std::string(1, d); }

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key) || j[key].is_null()) return fallback;
  return j[key].get<T>();
}

}  // namespace

std::filesystem::path RunConfig::resolve(const std::string& path) const {
  const std::filesystem::path p(path);
  return p.is_absolute() ? p : config_dir / p;
}

features::BuildConfig RunConfig::build_config() const {
  features::BuildConfig b;
  b.states = {states.begin(), states.end()};
  b.base_year = base_year;
  b.outcome_year = outcome_year;
  b.lag = outcome_year - base_year;
  b.density_unit = density_unit;
  b.h1b_certified_only = h1b_certified_only;
  b.education = education;
  b.year_built = census_schema.year_built;
  return b;
}

RunConfig parse_config(const json& j, const std::filesystem::path& config_dir) {
  if (!j.is_object()) throw Error(ErrorCode::kInvalidConfig, "config must be a JSON object");
  RunConfig c;
  c.config_dir = config_dir;
  try {
    c.states = get_or<std::vector<std::string>>(j, "states", {"NY", "MA"});
    c.base_year = get_or(j, "base_year", c.base_year);
    c.outcome_year = get_or(j, "outcome_year", c.outcome_year);
    c.allow_custom_lag = get_or(j, "allow_custom_lag", false);
    c.delimiter = parse_delimiter(get_or<std::string>(j, "delimiter", ","));
    if (j.contains("sources")) {
      for (const auto& [name, value] : j["sources"].items()) {
        if (name == "poi") {
          for (const auto& [kind, path] : value.items()) {
            const auto k = ingest::parse_poi_kind(kind);
            if (!k) throw Error(ErrorCode::kInvalidConfig, "unknown POI kind '" + kind + "'");
            c.poi_sources[*k] = path.get<std::string>();
          }
        } else {
          c.sources[name] = value.get<std::string>();
        }
      }
    }
    if (j.contains("census_schema")) c.census_schema = ingest::CensusSchema::from_json(j["census_schema"]);
    if (!j.contains("census_schema") || !j["census_schema"].contains("delimiter")) {
      c.census_schema.delimiter = c.delimiter;
    }
    c.polygons = get_or<std::string>(j, "polygons", "");
    if (j.contains("polygon_keys")) {
      const auto& k = j["polygon_keys"];
      c.polygon_keys.zone = get_or(k, "zone", c.polygon_keys.zone);
      c.polygon_keys.state = get_or(k, "state", c.polygon_keys.state);
      c.polygon_keys.land_area = get_or(k, "land_area", c.polygon_keys.land_area);
    }
    if (j.contains("forest")) {
      const auto& f = j["forest"];
      c.forest.n_trees = get_or(f, "n_trees", c.forest.n_trees);
      if (f.contains("mtry") && !f["mtry"].is_null()) c.forest.mtry = f["mtry"].get<int>();
      c.forest.min_samples_split = get_or(f, "min_samples_split", c.forest.min_samples_split);
      if (f.contains("max_depth") && !f["max_depth"].is_null()) c.forest.max_depth = f["max_depth"].get<int>();
      c.forest.bootstrap = get_or(f, "bootstrap", c.forest.bootstrap);
      c.forest.n_seeds = get_or(f, "n_seeds", c.forest.n_seeds);
    }
    c.master_seed = get_or<std::uint64_t>(j, "master_seed", c.master_seed);
    if (j.contains("output_dir")) c.output_dir = c.resolve(j["output_dir"].get<std::string>());
    const auto unit = get_or<std::string>(j, "density_unit", "table_note");
    const auto parsed_unit = spatial::parse_density_unit(unit);
    if (!parsed_unit) throw Error(ErrorCode::kInvalidConfig, "density_unit '" + unit + "'");
    c.density_unit = *parsed_unit;
    const auto status = get_or<std::string>(j, "h1b_status", "all");
    if (status != "all" && status != "certified") {
      throw Error(ErrorCode::kInvalidConfig, "h1b_status must be 'all' or 'certified'");
    }
    c.h1b_certified_only = status == "certified";
    const auto edu = get_or<std::string>(j, "education_denominator", "total_population");
    if (edu == "total_population") {
      c.education = features::EducationDenominator::kTotalPopulation;
    } else if (edu == "population_25_plus") {
      c.education = features::EducationDenominator::kPopulation25Plus;
    } else {
      throw Error(ErrorCode::kInvalidConfig, "education_denominator '" + edu + "'");
    }
    if (j.contains("timestamp") && !j["timestamp"].is_null()) c.timestamp = j["timestamp"].get<std::string>();
    if (j.contains("poi_fetch")) {
      const auto& f = j["poi_fetch"];
      PoiFetchConfig pf;
      if (f.contains("endpoint") && !f["endpoint"].is_null()) pf.endpoint = f["endpoint"].get<std::string>();
      const auto box = f.at("bbox").get<std::vector<double>>();
      if (box.size() != 4) throw Error(ErrorCode::kInvalidConfig, "poi_fetch.bbox needs [s, w, n, e]");
      pf.bbox = {box[0], box[1], box[2], box[3]};
      for (const auto& k : f.at("kinds")) {
        const auto kind = ingest::parse_poi_kind(k.get<std::string>());
        if (!kind) throw Error(ErrorCode::kInvalidConfig, "unknown POI kind " + k.dump());
        pf.kinds.push_back(*kind);
      }
      pf.keywords = get_or<std::vector<std::string>>(f, "keywords", {});
      c.poi_fetch = pf;
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidConfig, e.what());
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidConfig, path.string() + ": " + e.what());
  }
  return parse_config(j, std::filesystem::absolute(path).parent_path());
}

std::vector<std::string> validate_config(const RunConfig& c) {
  std::vector<std::string> out;
  const int lag = c.outcome_year - c.base_year;
  if (lag != kDefaultLag && !c.allow_custom_lag) {
    out.push_back(fmt::format("outcome_year - base_year = {}, expected {} (use --allow-custom-lag)",
                              lag, kDefaultLag));
  }
  if (lag < 0) out.push_back("outcome_year precedes base_year");
  if (c.states.empty()) out.push_back("states is empty");
  for (const auto& s : c.states) {
    if (!is_state_tag(s)) out.push_back("'" + s + "' is not a two letter state tag");
  }
  for (const char* required : {"census", "patents", "sfr"}) {
    if (!c.sources.count(required)) out.push_back(fmt::format("sources.{} is required", required));
  }
  for (const auto& [name, path] : c.sources) {
    if (name != "census" && name != "patents" && name != "sfr" && name != "rnd" && name != "h1b" &&
        name != "bizreg") {
      out.push_back("unknown source '" + name + "'");
    } else if (!std::filesystem::is_regular_file(c.resolve(path))) {
      out.push_back(fmt::format("sources.{}: {} does not exist", name, c.resolve(path).string()));
    }
  }
  for (const auto& [kind, path] : c.poi_sources) {
    if (!std::filesystem::is_regular_file(c.resolve(path))) {
      out.push_back(fmt::format("sources.poi.{}: {} does not exist", ingest::poi_kind_name(kind),
                                c.resolve(path).string()));
    }
  }
  if (c.polygons.empty()) {
    out.push_back("polygons is required");
  } else if (!std::filesystem::is_regular_file(c.resolve(c.polygons))) {
    out.push_back("polygons: " + c.resolve(c.polygons).string() + " does not exist");
  }
  if (c.forest.n_trees < 1) out.push_back("forest.n_trees must be >= 1");
  if (c.forest.n_seeds < 1) out.push_back("forest.n_seeds must be >= 1");
  if (c.forest.min_samples_split < 2) out.push_back("forest.min_samples_split must be >= 2");
  if (c.forest.mtry && (*c.forest.mtry < 1 || *c.forest.mtry > static_cast<int>(col::kCount))) {
    out.push_back(fmt::format("forest.mtry must lie in [1, {}]", col::kCount));
  }
  if (c.forest.max_depth && *c.forest.max_depth < 0) out.push_back("forest.max_depth must be >= 0");
  return out;
}

json RunConfig::echo() const {
  json j;
  j["states"] = states;
  j["base_year"] = base_year;
  j["outcome_year"] = outcome_year;
  j["lag"] = outcome_year - base_year;
  j["allow_custom_lag"] = allow_custom_lag;
  j["sources"] = sources;
  json poi = json::object();
  for (const auto& [kind, path] : poi_sources) poi[std::string(ingest::poi_kind_name(kind))] = path;
  j["sources"]["poi"] = poi;
  json schema;
  schema["delimiter"] = delimiter_name(census_schema.delimiter);
  schema["columns"] = census_schema.columns;
  for (const auto& bin : census_schema.year_built) {
    schema["year_built"].push_back({{"column", bin.column}, {"midpoint_year", bin.midpoint_year}});
  }
  j["census_schema"] = schema;
  j["delimiter"] = delimiter_name(delimiter);
  j["polygons"] = polygons;
  j["polygon_keys"] = {{"zone", polygon_keys.zone},
                       {"state", polygon_keys.state},
                       {"land_area", polygon_keys.land_area}};
  j["forest"] = report::to_json(forest);
  j["forest"]["resolved_mtry"] = forest.resolved_mtry(static_cast<int>(col::kCount));
  j["master_seed"] = std::to_string(master_seed);
  j["density_unit"] = spatial::density_unit_name(density_unit);
  j["h1b_status"] = h1b_certified_only ? "certified" : "all";
  j["education_denominator"] = education == features::EducationDenominator::kTotalPopulation
                                   ? "total_population"
                                   : "population_25_plus";
  if (poi_fetch) {
    json f;
    f["endpoint"] = poi_fetch->endpoint ? json(*poi_fetch->endpoint) : json(nullptr);
    f["bbox"] = {poi_fetch->bbox.south, poi_fetch->bbox.west, poi_fetch->bbox.north, poi_fetch->bbox.east};
    for (auto k : poi_fetch->kinds) f["kinds"].push_back(ingest::poi_kind_name(k));
    f["keywords"] = poi_fetch->keywords;
    j["poi_fetch"] = f;
  }
  return j;
}

}  // namespace lid::cli
