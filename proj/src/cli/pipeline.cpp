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

#include "lid/cli/pipeline.hpp"

#include <map>
#include <set>

#include <fmt/format.h>

#include "lid/features/matrix_io.hpp"
#include "lid/features/summary.hpp"
#include "lid/ingest/filter.hpp"
#include "lid/ml/importance.hpp"
#include "lid/report/choropleth.hpp"
#include "lid/report/tables.hpp"
#include "lid/spatial/zone_index.hpp"
#include "lid/util/io.hpp"

#ifndef LID_VERSION
#define LID_VERSION "0.0.0"
#endif

namespace lid::cli {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view stage_name(Stage stage) {
  switch (stage) {
    case Stage::kIngest: return "ingest";
    case Stage::kBuild: return "build";
    case Stage::kSummarize: return "summarize";
    case Stage::kTrain: return "train";
    case Stage::kMaps: return "maps";
  }
  return "";
}

std::optional<Stage> parse_stage(std::string_view name) {
  for (auto s : {Stage::kIngest, Stage::kBuild, Stage::kSummarize, Stage::kTrain, Stage::kMaps}) {
    if (stage_name(s) == name) return s;
  }
  return std::nullopt;
}

StageError::StageError(Stage stage, const Error& cause)
    : std::runtime_error(fmt::format("[{}] {}", stage_name(stage), cause.what())),
      stage_(stage),
      code_(cause.code()) {}

namespace {

constexpr std::array<ingest::PoiKind, 7> kPoiKinds = {
    ingest::PoiKind::kSchool, ingest::PoiKind::kUniversity, ingest::PoiKind::kCafe,
    ingest::PoiKind::kPark,   ingest::PoiKind::kSquare,     ingest::PoiKind::kBusStop,
    ingest::PoiKind::kInnovationSpace};

std::string outcome_token(Outcome o) { return o == Outcome::kPatents ? "patents" : "sfr"; }

json polygons_to_geojson(const std::vector<ZonePolygon>& polygons) {
  json features = json::array();
  for (const auto& p : polygons) {
    features.push_back({{"type", "Feature"},
                        {"geometry", spatial::polygon_geometry(p)},
                        {"properties",
                         {{"zone", p.zone.code()}, {"state", p.zone.state()}, {"aland", p.land_area_m2}}}});
  }
  return {{"type", "FeatureCollection"}, {"features", features}};
}

struct IngestLine {
  std::string source;
  std::size_t records = 0;
  std::size_t dropped = 0;
  std::size_t notes = 0;
  ingest::FilterReport filter;
};

std::string ingest_report(const std::vector<IngestLine>& lines) {
  std::string out = "source\tparsed\tdropped\tcell_notes\tkept\toutside_states\tunresolved\n";
  for (const auto& l : lines) {
    out += fmt::format("{}\t{}\t{}\t{}\t{}\t{}\t{}\n", l.source, l.records, l.dropped, l.notes,
                       l.filter.kept, l.filter.outside, l.filter.unresolved);
  }
  return out;
}

}  // namespace

Pipeline::Pipeline(RunConfig config, RunOptions options)
    : config_(std::move(config)), options_(std::move(options)) {
  manifest_.tool_version = LID_VERSION;
  for (const auto& [name, path] : config_.sources) {
    manifest_.inputs[name] = file_sha256(config_.resolve(path));
  }
  for (const auto& [kind, path] : config_.poi_sources) {
    manifest_.inputs["poi." + std::string(ingest::poi_kind_name(kind))] = file_sha256(config_.resolve(path));
  }
  manifest_.polygon_digest = file_sha256(config_.resolve(config_.polygons));
  const auto& catalog = catalog_default();
  manifest_.catalog_version = catalog.version;
  manifest_.catalog_digest = sha256_hex(serialize_catalog(catalog));
  manifest_.config = config_.echo();
  manifest_.params = config_.forest;
  manifest_.master_seed = config_.master_seed;
  manifest_.timestamp = config_.timestamp ? config_.timestamp : report::source_date_epoch();
  digest_ = manifest_.digest();
}

void Pipeline::warn(const std::string& message) const {
  if (options_.warn) options_.warn(message);
}

template <typename Fn>
void Pipeline::stage(Stage s, Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    throw StageError(s, e);
  } catch (const json::exception& e) {
    throw StageError(s, Error(ErrorCode::kMalformedRow, e.what()));
  }
}

void Pipeline::ingest() {
  stage(Stage::kIngest, [&] {
    const auto polygons = spatial::read_polygons(config_.resolve(config_.polygons), config_.polygon_keys);
    const std::set<std::string> states(config_.states.begin(), config_.states.end());
    std::vector<ZonePolygon> in_scope;
    for (const auto& p : polygons) {
      if (states.count(p.zone.state())) in_scope.push_back(p);
    }
    const spatial::ZoneIndex index(polygons);
    const auto dir = staging();
    std::vector<IngestLine> lines;

    auto keep = [&](const std::string& name, auto parsed) {
      IngestLine line{name, parsed.records.size(), parsed.dropped.size(), parsed.notes.size(), {}};
      for (const auto& d : parsed.dropped) warn(fmt::format("[ingest] {}: {}", name, d.message));
      for (const auto& d : parsed.notes) warn(fmt::format("[ingest] {}: {}", name, d.message));
      auto kept = ingest::filter_to_states(parsed.records, index, states, &line.filter);
      lines.push_back(line);
      return kept;
    };
    auto path_of = [&](const std::string& name) { return config_.resolve(config_.sources.at(name)); };
    auto has = [&](const std::string& name) { return config_.sources.count(name) > 0; };
    const char delim = config_.delimiter;

    const auto census = keep("census", ingest::parse_census(path_of("census"), config_.census_schema));
    write_file(dir / "census.tsv", ingest::stage_census(census, config_.census_schema.year_built));

    const auto window = ingest::DateWindow::calendar_year(config_.outcome_year);
    const auto patents = keep("patents", ingest::parse_patents(path_of("patents"), window, delim));
    write_file(dir / "patents.tsv", ingest::stage_patents(patents));

    std::vector<ingest::PoiRecord> pois;
    for (auto kind : kPoiKinds) {
      const auto it = config_.poi_sources.find(kind);
      if (it == config_.poi_sources.end()) continue;
      auto kept = keep("poi." + std::string(ingest::poi_kind_name(kind)),
                       ingest::parse_poi(config_.resolve(it->second), kind));
      pois.insert(pois.end(), kept.begin(), kept.end());
    }
    if (config_.poi_fetch) {
      const auto cache = options_.cache_dir.empty() ? out() / "cache" : options_.cache_dir;
      fs::create_directories(cache);
      std::shared_ptr<ingest::HttpTransport> transport;
      if (config_.poi_fetch->endpoint) {
        transport = std::make_shared<ingest::HttplibTransport>(*config_.poi_fetch->endpoint);
      }
      ingest::PoiFetchClient client(cache, transport);
      for (auto kind : config_.poi_fetch->kinds) {
        ingest::ParseResult<ingest::PoiRecord> fetched;
        fetched.records = client.fetch({config_.poi_fetch->bbox, kind, config_.poi_fetch->keywords});
        auto kept = keep("fetch." + std::string(ingest::poi_kind_name(kind)), std::move(fetched));
        pois.insert(pois.end(), kept.begin(), kept.end());
      }
    }
    write_file(dir / "poi.ndjson", ingest::stage_poi(pois));

    const ingest::SourceOptions base{delim, config_.base_year};
    const ingest::SourceOptions outcome{delim, config_.outcome_year};
    const ingest::SourceOptions any{delim, std::nullopt};
    write_file(dir / "rnd.tsv",
               ingest::stage_rnd(has("rnd") ? keep("rnd", ingest::parse_rnd(path_of("rnd"), base))
                                            : std::vector<ingest::RndRecord>{}));
    write_file(dir / "h1b.tsv",
               ingest::stage_h1b(has("h1b") ? keep("h1b", ingest::parse_h1b(path_of("h1b"), any))
                                            : std::vector<ingest::H1bRecord>{}));
    write_file(dir / "sfr.tsv", ingest::stage_sfr(keep("sfr", ingest::parse_sfr(path_of("sfr"), outcome))));
    write_file(dir / "bizreg.tsv",
               ingest::stage_bizreg(has("bizreg") ? keep("bizreg", ingest::parse_bizreg(path_of("bizreg"), base))
                                                  : std::vector<ingest::BizRegRecord>{}));
    write_file(dir / "polygons.geojson", polygons_to_geojson(in_scope).dump() + "\n");
    write_file(dir / "ingest_report.tsv", ingest_report(lines));
  });
}

void Pipeline::build() {
  stage(Stage::kBuild, [&] {
    const auto dir = staging();
    features::Staging s;
    s.census = ingest::parse_census(dir / "census.tsv",
                                    ingest::staged_census_schema(config_.census_schema.year_built))
                   .records;
    s.patents = ingest::parse_patents(dir / "patents.tsv",
                                      ingest::DateWindow::calendar_year(config_.outcome_year), '\t')
                    .records;
    for (auto kind : kPoiKinds) {
      auto part = ingest::parse_poi(dir / "poi.ndjson", kind).records;
      s.pois.insert(s.pois.end(), part.begin(), part.end());
    }
    const ingest::SourceOptions tab{'\t', std::nullopt};
    s.rnd = ingest::parse_rnd(dir / "rnd.tsv", tab).records;
    s.h1b = ingest::parse_h1b(dir / "h1b.tsv", tab).records;
    s.sfr = ingest::parse_sfr(dir / "sfr.tsv", tab).records;
    s.bizreg = ingest::parse_bizreg(dir / "bizreg.tsv", tab).records;
    const auto polygons = spatial::read_polygons(dir / "polygons.geojson");

    const auto& catalog = catalog_default();
    features::JoinReport join;
    const auto m = features::build_matrix(s, polygons, catalog, config_.build_config(), &join);
    for (const auto& v : validate_matrix(m, catalog, config_.outcome_year - config_.base_year)) {
      warn(fmt::format("[build] {} {}: {}", v.zone, v.column, v.rule));
    }
    for (const auto& z : join.zero_population) warn("[build] ZeroPopulation: zone " + z + " per-1000 cells masked");
    for (const auto& z : join.degenerate) warn("[build] DegenerateZone: zone " + z + " has no land area");
    features::write_matrix(m, catalog, dir);
    write_file(dir / "join_report.txt", join.to_text());
  });
}

void Pipeline::summarize() {
  stage(Stage::kSummarize, [&] {
    const auto& catalog = catalog_default();
    const auto m = features::read_matrix(staging(), catalog);
    for (const auto& scope : report::scopes_for(config_.states)) {
      const auto sub = select_states(m, scope.states);
      std::vector<std::string> warnings;
      const auto text = report::summary_table(features::summarize(sub, catalog, scope.label), digest_, &warnings);
      for (const auto& w : warnings) warn("[summarize] " + w);
      write_file(out() / "tables" / ("summary_" + scope.token + ".tsv"), text);
    }
  });
}

void Pipeline::train() {
  stage(Stage::kTrain, [&] {
    const auto& catalog = catalog_default();
    const auto m = features::read_matrix(staging(), catalog);
    for (auto outcome : options_.outcomes) {
      std::vector<report::ScopedReport> reports;
      for (const auto& scope : report::scopes_for(config_.states)) {
        const auto sub = select_states(m, scope.states);
        reports.push_back({scope, ml::seed_averaged_importance(sub, catalog, outcome, config_.forest,
                                                               config_.master_seed, options_.threads)});
      }
      const auto tables = out() / "tables";
      write_file(tables / ("importance_" + outcome_token(outcome) + ".tsv"),
                 report::importance_table(reports, catalog, digest_));
      write_file(tables / ("importance_" + outcome_token(outcome) + "_seeds.tsv"),
                 report::importance_detail(reports, digest_));
    }
  });
}

void Pipeline::maps() {
  stage(Stage::kMaps, [&] {
    const auto& catalog = catalog_default();
    const auto m = features::read_matrix(staging(), catalog);
    const auto polygons = spatial::read_polygons(staging() / "polygons.geojson");
    for (const auto& scope : report::scopes_for(config_.states)) {
      const auto sub = select_states(m, scope.states);
      for (auto outcome : {Outcome::kPatents, Outcome::kSfr}) {
        const std::string column(outcome_key(outcome));
        std::vector<std::string> warnings;
        const auto doc = report::choropleth(sub, catalog, column, polygons, digest_, &warnings);
        for (const auto& w : warnings) warn("[maps] " + w);
        const auto problems = report::validate_geojson(doc);
        if (!problems.empty()) throw Error(ErrorCode::kInvalidGeometry, problems.front());
        write_file(out() / "maps" / (column + "_" + scope.token + ".geojson"), doc.dump() + "\n");
      }
    }
  });
}

void Pipeline::run(std::optional<Stage> only) {
  const std::vector<std::pair<Stage, void (Pipeline::*)()>> stages = {
      {Stage::kIngest, &Pipeline::ingest},       {Stage::kBuild, &Pipeline::build},
      {Stage::kSummarize, &Pipeline::summarize}, {Stage::kTrain, &Pipeline::train},
      {Stage::kMaps, &Pipeline::maps}};
  for (const auto& [s, fn] : stages) {
    if (!only || *only == s) (this->*fn)();
  }
  write_manifest();
}

void Pipeline::write_manifest() const {
  std::map<std::string, std::string> artifacts;
  for (const char* sub : {"staging", "tables", "maps"}) {
    const auto root = out() / sub;
    if (!fs::exists(root)) continue;
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
      if (!entry.is_regular_file()) continue;
      artifacts[fs::relative(entry.path(), out()).generic_string()] = file_sha256(entry.path());
    }
  }
  write_file(out() / "manifest.json", manifest_.serialize(artifacts));
}

std::size_t ingest_one(const std::string& source, const fs::path& path, const fs::path& out_dir,
                       const RunConfig& config, const std::function<void(const std::string&)>& warn) {
  auto report = [&](const auto& parsed) {
    if (warn) {
      for (const auto& d : parsed.dropped) warn(fmt::format("[ingest] {}: {}", source, d.message));
      for (const auto& d : parsed.notes) warn(fmt::format("[ingest] {}: {}", source, d.message));
    }
    return parsed.records;
  };
  const char delim = config.delimiter;
  const ingest::SourceOptions any{delim, std::nullopt};
  try {
    if (source == "census") {
      const auto r = report(ingest::parse_census(path, config.census_schema));
      write_file(out_dir / "census.tsv", ingest::stage_census(r, config.census_schema.year_built));
      return r.size();
    }
    if (source == "patents") {
      const auto r = report(ingest::parse_patents(
          path, ingest::DateWindow::calendar_year(config.outcome_year), delim));
      write_file(out_dir / "patents.tsv", ingest::stage_patents(r));
      return r.size();
    }
    if (source == "poi") {
      std::vector<ingest::PoiRecord> all;
      for (auto kind : kPoiKinds) {
        auto part = ingest::parse_poi(path, kind).records;
        all.insert(all.end(), part.begin(), part.end());
      }
      write_file(out_dir / "poi.ndjson", ingest::stage_poi(all));
      return all.size();
    }
    if (source == "rnd") {
      const auto r = report(ingest::parse_rnd(path, any));
      write_file(out_dir / "rnd.tsv", ingest::stage_rnd(r));
      return r.size();
    }
    if (source == "h1b") {
      const auto r = report(ingest::parse_h1b(path, any));
      write_file(out_dir / "h1b.tsv", ingest::stage_h1b(r));
      return r.size();
    }
    if (source == "sfr") {
      const auto r = report(ingest::parse_sfr(path, any));
      write_file(out_dir / "sfr.tsv", ingest::stage_sfr(r));
      return r.size();
    }
    if (source == "bizreg") {
      const auto r = report(ingest::parse_bizreg(path, any));
      write_file(out_dir / "bizreg.tsv", ingest::stage_bizreg(r));
      return r.size();
    }
    if (source == "polygons") {
      const auto polygons = spatial::read_polygons(path, config.polygon_keys);
      write_file(out_dir / "polygons.geojson", polygons_to_geojson(polygons).dump() + "\n");
      return polygons.size();
    }
  } catch (const Error& e) {
    throw StageError(Stage::kIngest, e);
  }
  throw StageError(Stage::kIngest, Error(ErrorCode::kInvalidConfig, "unknown source '" + source + "'"));
}

}  // namespace lid::cli
