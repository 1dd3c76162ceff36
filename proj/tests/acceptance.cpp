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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <regex>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "cli_runner.hpp"
#include "lid/cli/config.hpp"
#include "lid/core/catalog.hpp"
#include "lid/core/error.hpp"
#include "lid/features/matrix_io.hpp"
#include "lid/features/summary.hpp"
#include "lid/ml/importance.hpp"
#include "lid/report/choropleth.hpp"
#include "lid/report/tables.hpp"
#include "lid/spatial/geojson.hpp"
#include "lid/spatial/zone_index.hpp"
#include "ml_oracles.hpp"

using namespace lid;
using namespace lid::test;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct Dataset {
  Eigen::MatrixXd X;
  Eigen::VectorXd y;
};

Dataset planted() {
  const auto rows = read_tsv(oracle_dir() / "planted.tsv");
  const auto n = static_cast<Eigen::Index>(rows.size() - 1);
  Dataset d{Eigen::MatrixXd(n, 10), Eigen::VectorXd(n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& r = rows[static_cast<std::size_t>(i + 1)];
    for (int j = 0; j < 10; ++j) d.X(i, j) = std::stod(r[static_cast<std::size_t>(j)]);
    d.y(i) = std::stod(r[10]);
  }
  return d;
}

std::vector<std::string> names(Eigen::Index p) {
  std::vector<std::string> out;
  for (Eigen::Index j = 0; j < p; ++j) out.push_back("x" + std::to_string(j + 1));
  return out;
}

FeatureMatrix golden_matrix() {
  const auto dir = pipeline_fixture() / "golden";
  return features::parse_matrix(read_file(dir / "matrix.tsv"), read_file(dir / "mask.tsv"), catalog_default());
}

bool same_split(const std::optional<ml::Split<double>>& got, const std::optional<ExactSplit>& want) {
  if (!got || !want) return !got && !want;
  return got->feature == want->feature && got->threshold == want->threshold &&
         std::abs(got->decrease - want->decrease) <= 1e-12;
}

/// Fixture CLI runs keyed by thread count, made on first use.
class FixtureRuns {
 public:
  FixtureRuns() : dir_("acceptance"), config_(fixture_config(dir_)) {}

  fs::path out(int threads) {
    const auto out = dir_ / ("t" + std::to_string(threads));
    if (!done_.count(threads)) {
      const auto r = run_cli("run --config " + shell_quote(config_.string()) + " --out " +
                                 shell_quote(out.string()) + " --threads " + std::to_string(threads),
                             dir_);
      if (r.exit_code != 0) throw std::runtime_error("fixture run failed: " + r.err);
      done_.insert(threads);
    }
    return out;
  }

  const TempDir& dir() const { return dir_; }

 private:
  TempDir dir_;
  fs::path config_;
  std::set<int> done_;
};

Verdict criterion_split_oracle() {
  Verdict v;
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 gen(20160101);
  int nodes_checked = 0;
  for (int trial = 0; trial < 250 && v.pass; ++trial) {
    const auto n = std::uniform_int_distribution<Eigen::Index>(2, 8)(gen);
    const auto p = std::uniform_int_distribution<Eigen::Index>(1, 3)(gen);
    Eigen::MatrixXd X(n, p);
    Eigen::VectorXd y(n);
    std::uniform_int_distribution<int> xv(0, 4);
    std::uniform_int_distribution<int> yv(0, 9);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < p; ++j) X(i, j) = xv(gen);
      y(i) = yv(gen);
    }
    const auto tag = fmt::format("trial {}", trial);

    std::vector<int> all(static_cast<std::size_t>(p));
    std::iota(all.begin(), all.end(), 0);
    v.require(same_split(ml::best_split<double>(X, y, all), brute_force_split(X, y)), tag + ": root split");

    const auto tree = ml::fit_tree<double>(X, y, ml::TreeParams{static_cast<int>(p), 2, std::nullopt, true},
                                           ml::seed_key(7, static_cast<std::size_t>(trial)));
    std::vector<std::vector<Eigen::Index>> reach(tree.nodes.size());
    reach[0] = tree.inbag;
    for (std::size_t k = 0; k < tree.nodes.size(); ++k) {
      const auto& node = tree.nodes[k];
      const Eigen::MatrixXd Xk = X(reach[k], Eigen::all);
      const Eigen::VectorXd yk = y(reach[k]);
      const auto want = brute_force_split(Xk, yk);
      v.require(node.n == static_cast<Eigen::Index>(reach[k].size()), tag + ": node size");
      ++nodes_checked;
      if (node.is_leaf()) {
        v.require(!want, tag + ": leaf with an available split");
        continue;
      }
      v.require(same_split(ml::Split<double>{node.feature, node.threshold, node.impurity_decrease}, want),
                tag + ": node split differs from exhaustive search");
      for (auto row : reach[k]) {
        reach[static_cast<std::size_t>(X(row, node.feature) <= node.threshold ? node.left : node.right)]
            .push_back(row);
      }
    }

    ForestParams fp;
    fp.n_trees = 10;
    const auto forest = ml::fit_forest<double>(X, y, fp, ml::seed_key(11, static_cast<std::size_t>(trial)));
    const auto mdi = ml::mdi_importance(forest, p).importance;
    v.require((mdi - node_walking_mdi(forest, X, y)).cwiseAbs().maxCoeff() <= 1e-12, tag + ": forest MDI");
  }
  const double secs = seconds_since(start);
  v.require(secs < 30, "too slow");
  if (v.pass) v.detail = fmt::format("250 datasets, {} nodes, {:.1f}s", nodes_checked, secs);
  return v;
}

Verdict criterion_seed_averaging() {
  Verdict v;
  const auto report =
      ml::seed_averaged_importance(golden_matrix(), catalog_default(), Outcome::kPatents, ForestParams{}, 2016);
  v.require(report.params.n_trees == 1000 && report.per_seed.size() == 8, "default 8 x 1000 not used");
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(report.mean.size());
  for (const auto& s : report.per_seed) mean += s;
  mean /= static_cast<double>(report.per_seed.size());
  v.require((mean - report.mean).cwiseAbs().maxCoeff() <= 1e-12, "mean is not the per-seed average");
  for (std::size_t s = 0; s < report.per_seed.size(); ++s) {
    if (report.degenerate[s]) continue;
    v.require(std::abs(report.per_seed[s].sum() - 1.0) <= 1e-9, fmt::format("seed {} does not sum to 1", s));
  }
  v.require(std::set(report.seeds.begin(), report.seeds.end()).size() == report.seeds.size(), "repeated seed");
  v.require(!report.all_degenerate(), "every seed degenerate");
  if (v.pass) v.detail = "8 seeds x 1000 trees";
  return v;
}

Verdict criterion_planted(ImportanceReport& out) {
  Verdict v;
  const auto d = planted();
  const auto start = std::chrono::steady_clock::now();
  out = ml::seed_averaged_importance<double>(d.X, d.y, names(10), ForestParams{}, 2016);
  const double secs = seconds_since(start);
  int first = 0;
  for (const auto& s : out.per_seed) {
    Eigen::Index top = 0;
    s.maxCoeff(&top);
    first += top == 0;
  }
  v.require(first == 8, fmt::format("x1 first in {} of 8 seeds", first));
  v.require(out.mean(0) > 0.5, fmt::format("x1 mean {:.3f}", out.mean(0)));
  v.require(secs < 60, fmt::format("took {:.1f}s", secs));
  if (v.pass) v.detail = fmt::format("x1 mean {:.3f}, {:.1f}s", out.mean(0), secs);
  return v;
}

Verdict criterion_monotone(const ImportanceReport& base) {
  Verdict v;
  auto d = planted();
  v.require((d.X.col(0).array() > 0).all(), "column not positive");
  d.X.col(0) = d.X.col(0).array().cube().matrix();
  const auto cubed = ml::seed_averaged_importance<double>(d.X, d.y, names(10), ForestParams{}, 2016);
  const report::Scope scope{"all", "all", {}};
  v.require(report::importance_detail({{scope, base}}, "-") == report::importance_detail({{scope, cubed}}, "-"),
            "importance detail differs");
  v.require(cubed.mean == base.mean, "mean differs");
  if (v.pass) v.detail = "x1 cubed, detail identical";
  return v;
}

Verdict criterion_threads(FixtureRuns& runs) {
  Verdict v;
  auto outputs = [&](int threads) {
    const auto out = runs.out(threads);
    auto files = tree_bytes(out / "tables");
    for (auto& [k, text] : tree_bytes(out / "maps")) files["maps/" + k] = text;
    files["manifest.json"] = read_file(out / "manifest.json");
    return files;
  };
  const auto one = outputs(1);
  v.require(one.size() > 10, "run produced too few files");
  v.require(outputs(4) == one, "4 threads differ from 1");
  v.require(outputs(8) == one, "8 threads differ from 1");
  if (v.pass) v.detail = fmt::format("{} files identical at 1, 4, 8 threads", one.size());
  return v;
}

Verdict criterion_spatial() {
  Verdict v;
  const auto polys =
      spatial::read_polygons(pipeline_fixture() / "zones.geojson", {"ZCTA5CE10", "STUSPS", "ALAND10"});
  const spatial::ZoneIndex index(polys);
  const auto rows = read_tsv(oracle_dir() / "spatial_points.tsv");
  v.require(rows.size() == 1001, "oracle point count");
  std::size_t agree = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const Point pt(std::stod(rows[i][0]), std::stod(rows[i][1]));
    const auto got = spatial::assign_zone(pt, index);
    const std::string code = got ? got->code() : "NA";
    agree += code == rows[i][2] && got == spatial::assign_zone_linear(pt, polys);
  }
  v.require(agree == 1000, fmt::format("{} of 1000 agree", agree));
  const auto edge = spatial::assign_zone(Point(-74.1, 40.71), index);
  v.require(edge && edge->code() == "07030", "shared edge not assigned to the smallest code");
  if (v.pass) v.detail = "1000 of 1000 points, shared edge to 07030";
  return v;
}

Verdict criterion_matrix(FixtureRuns& runs) {
  Verdict v;
  const auto staged = features::read_matrix(runs.out(1) / "staging", catalog_default());
  const auto golden = golden_matrix();
  v.require(staged.zones == golden.zones, "zones differ");
  v.require(staged.values == golden.values && staged.mask == golden.mask, "predictors differ");
  v.require(staged.outcomes == golden.outcomes && staged.outcome_mask == golden.outcome_mask, "outcomes differ");
  v.require(staged.aux == golden.aux && staged.aux_mask == golden.aux_mask, "auxiliary columns differ");
  const auto col = catalog_default().index_of("population_density");
  const auto row = std::find_if(staged.zones.begin(), staged.zones.end(),
                                [](const ZoneId& z) { return z.code() == "02108"; });
  v.require(col && row != staged.zones.end(), "02108 density missing");
  if (v.pass) {
    const double density = staged.values(row - staged.zones.begin(), static_cast<Eigen::Index>(*col));
    v.require(density == 1000.0, fmt::format("02108 density {}", density));
  }
  if (v.pass) v.detail = fmt::format("{} zones equal the golden", staged.zones.size());
  return v;
}

/// Header and body rows of a table, comment lines dropped.
std::vector<std::vector<std::string>> table_rows(const std::string& text) {
  std::vector<std::vector<std::string>> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line[0] != '#') out.push_back(split(line, '\t'));
  }
  return out;
}

Verdict criterion_tables(FixtureRuns& runs) {
  Verdict v;
  const auto tables = runs.out(1) / "tables";
  const auto golden = pipeline_fixture() / "golden";
  const std::regex three_decimals(R"(-?\d+\.\d{3})");
  std::set<std::string> groups;
  for (auto g : {FeatureGroup::kSocial, FeatureGroup::kEconomic, FeatureGroup::kInfrastructure,
                 FeatureGroup::kUrbanMorphology, FeatureGroup::kUrbanMobility}) {
    groups.emplace(group_label(g));
  }
  groups.emplace(features::kOutcomeGroup);
  int checked = 0;
  for (const auto* scope : {"NY_MA", "NY", "MA"}) {
    const std::string name = fmt::format("summary_{}.tsv", scope);
    const auto text = read_file(tables / name);
    v.require(drop_lines(text, "# manifest") == read_file(golden / name), name + " differs from golden");
    const auto rows = table_rows(text);
    v.require(!rows.empty() && rows[0] == std::vector<std::string>{"Variable", "Median", "Mean", "SD", "Group"},
              name + " header");
    for (std::size_t i = 1; i < rows.size(); ++i) {
      v.require(rows[i].size() == 5 && groups.count(rows[i][4]), name + " group label");
      for (std::size_t c = 1; c < 4 && rows[i].size() == 5; ++c) {
        v.require(std::regex_match(rows[i][c], three_decimals), name + " decimals");
      }
    }
    ++checked;
  }
  for (const auto* outcome : {"patents", "sfr"}) {
    const std::string name = fmt::format("importance_{}.tsv", outcome);
    const auto text = read_file(tables / name);
    v.require(drop_lines(text, "# manifest") == read_file(golden / name), name + " differs from golden");
    const auto rows = table_rows(text);
    v.require(!rows.empty() && rows[0] == std::vector<std::string>{"Feature", "Importance NY & MA", "Importance NY",
                                                                  "Importance MA"},
              name + " header");
    v.require(rows.size() == catalog_default().size() + 1, name + " row count");
    for (std::size_t i = 1; i < rows.size(); ++i) {
      v.require(rows[i].size() == 4, name + " columns");
      for (std::size_t c = 1; c < rows[i].size(); ++c) {
        v.require(std::regex_match(rows[i][c], three_decimals), name + " decimals");
      }
      if (i > 1 && rows[i].size() == 4 && rows[i - 1].size() == 4) {
        v.require(std::stod(rows[i - 1][1]) >= std::stod(rows[i][1]), name + " not descending");
      }
    }
    ++checked;
  }
  if (v.pass) v.detail = fmt::format("{} tables match goldens", checked);
  return v;
}

Verdict criterion_maps(FixtureRuns& runs) {
  Verdict v;
  const auto maps = tree_bytes(runs.out(1) / "maps");
  v.require(maps.size() == 6, "expected 6 maps");
  for (const auto& [name, text] : maps) {
    const auto problems = report::validate_geojson(json::parse(text));
    v.require(problems.empty(), name + ": " + (problems.empty() ? "" : problems.front()));
  }
  const auto pooled = maps.find("patents_per_1000_NY_MA.geojson");
  v.require(pooled != maps.end(), "pooled patents map missing");
  if (pooled != maps.end()) {
    std::vector<int> counts(5, 0);
    const auto doc = json::parse(pooled->second);
    for (const auto& f : doc.at("features")) {
      const auto b = f.at("properties").at("quantile_bin").get<int>();
      if (b >= 0 && b < 5) ++counts[static_cast<std::size_t>(b)];
    }
    v.require(counts == std::vector<int>{4, 4, 4, 4, 4}, fmt::format("pooled bins {}", fmt::join(counts, "/")));
  }
  if (v.pass) v.detail = "6 valid maps, pooled bins 4/4/4/4/4";
  return v;
}

Verdict criterion_lag(FixtureRuns& runs) {
  Verdict v;
  const auto& dir = runs.dir();
  TempDir scratch("acceptance_lag");
  const auto path = fixture_config(scratch, [](json& j) { j["outcome_year"] = 2015; });
  auto config = cli::load_config(path);
  v.require(!cli::validate_config(config).empty(), "lag 3 accepted by validation");
  config.allow_custom_lag = true;
  v.require(cli::validate_config(config).empty(), "override not honoured");
  const auto r = run_cli("run --config " + shell_quote(path.string()) + " --out " +
                             shell_quote((scratch / "out").string()),
                         dir);
  v.require(r.exit_code == 2, fmt::format("CLI exit {}", r.exit_code));
  v.require(!fs::exists(scratch / "out"), "output written despite rejection");
  if (v.pass) v.detail = "rejected with exit 2, override accepted";
  return v;
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int n, const std::string& title, const std::function<Verdict()>& body) {
    Verdict v;
    try {
      v = body();
    } catch (const std::exception& e) {
      v = Verdict{false, e.what()};
    }
    failures += !v.pass;
    std::cout << (v.pass ? "PASS " : "FAIL ") << n << ": " << title << " (" << v.detail << ")" << std::endl;
  };

  FixtureRuns runs;
  ImportanceReport planted_report;
  report(1, "splits and MDI equal exhaustive oracles", criterion_split_oracle);
  report(2, "seed-averaged importance with default forest size", criterion_seed_averaging);
  report(3, "planted signal ranks first", [&] { return criterion_planted(planted_report); });
  report(4, "importance invariant to a monotone transform", [&] { return criterion_monotone(planted_report); });
  report(5, "outputs identical across thread counts", [&] { return criterion_threads(runs); });
  report(6, "zone assignment equals point oracle", criterion_spatial);
  report(7, "staged matrix equals golden", [&] { return criterion_matrix(runs); });
  report(8, "tables equal goldens and are well formed", [&] { return criterion_tables(runs); });
  report(9, "maps are valid GeoJSON with quantile bins", [&] { return criterion_maps(runs); });
  report(10, "non-default lag needs the override", [&] { return criterion_lag(runs); });
  return failures == 0 ? 0 : 1;
}
