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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cli_runner.hpp"
#include "lid/cli/config.hpp"
#include "lid/cli/pipeline.hpp"
#include "lid/core/error.hpp"

using namespace lid;
using namespace lid::test;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::vector<std::string> kExpected = {
    "manifest.json",
    "staging/census.tsv",
    "staging/patents.tsv",
    "staging/poi.ndjson",
    "staging/rnd.tsv",
    "staging/h1b.tsv",
    "staging/sfr.tsv",
    "staging/bizreg.tsv",
    "staging/polygons.geojson",
    "staging/ingest_report.tsv",
    "staging/matrix.tsv",
    "staging/mask.tsv",
    "staging/join_report.txt",
    "tables/summary_NY_MA.tsv",
    "tables/summary_NY.tsv",
    "tables/summary_MA.tsv",
    "tables/importance_patents.tsv",
    "tables/importance_patents_seeds.tsv",
    "tables/importance_sfr.tsv",
    "tables/importance_sfr_seeds.tsv",
    "maps/patents_per_1000_NY_MA.geojson",
    "maps/patents_per_1000_NY.geojson",
    "maps/patents_per_1000_MA.geojson",
    "maps/sfr_NY_MA.geojson",
    "maps/sfr_NY.geojson",
    "maps/sfr_MA.geojson",
};

std::string run_args(const fs::path& config, const fs::path& out, const std::string& extra = "") {
  return "run --config " + shell_quote(config.string()) + " --out " + shell_quote(out.string()) +
         " --threads 2 " + extra;
}

}  // namespace

TEST_SUITE("config") {
  TEST_CASE("lag other than four needs the override") {
    TempDir dir("cfg");
    auto config = cli::load_config(fixture_config(dir, [](json& j) { j["outcome_year"] = 2015; }));
    const auto problems = cli::validate_config(config);
    REQUIRE(problems.size() == 1);
    CHECK(problems[0].find("expected 4") != std::string::npos);
    config.allow_custom_lag = true;
    CHECK(cli::validate_config(config).empty());

    const auto in_file = cli::load_config(fixture_config(dir, [](json& j) {
      j["outcome_year"] = 2017;
      j["allow_custom_lag"] = true;
    }));
    CHECK(cli::validate_config(in_file).empty());
    CHECK(in_file.build_config().lag == 5);
  }

  TEST_CASE("fixture config resolves and echoes") {
    const auto config = cli::load_config(pipeline_fixture() / "config.json");
    CHECK(cli::validate_config(config).empty());
    CHECK(config.states == std::vector<std::string>{"NY", "MA"});
    CHECK(config.forest.n_trees == 1000);
    CHECK(config.forest.n_seeds == 8);
    CHECK(config.master_seed == 2016);
    CHECK(config.poi_sources.size() == 7);
    const auto echo = config.echo();
    CHECK_FALSE(echo.contains("output_dir"));
    CHECK(echo.at("lag") == 4);
  }

  TEST_CASE("missing files are reported") {
    TempDir dir("cfg");
    const auto config = cli::load_config(fixture_config(dir, [](json& j) { j["sources"]["census"] = "/nope.csv"; }));
    const auto problems = cli::validate_config(config);
    REQUIRE(problems.size() == 1);
    CHECK(problems[0].find("sources.census") != std::string::npos);
  }
}

TEST_SUITE("run") {
  TEST_CASE("fixture run produces the full tree") {
    TempDir dir("run");
    const auto out = dir / "out";
    const auto r = run_cli(run_args(fixture_config(dir), out), dir);
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("manifest ") != std::string::npos);
    for (const auto& f : kExpected) CHECK_MESSAGE(fs::exists(out / f), f);

    const auto manifest = json::parse(read_file(out / "manifest.json"));
    const auto digest = manifest.at("digest").get<std::string>();
    CHECK(manifest.at("artifacts").size() == kExpected.size() - 1);
    for (const auto& [path, sha] : manifest.at("artifacts").items()) {
      CHECK_MESSAGE(sha == sha256_hex(read_file(out / path)), path);
    }
    for (const auto& [path, text] : tree_bytes(out / "tables")) {
      CHECK_MESSAGE(text.find("# manifest: " + digest + "\n") != std::string::npos, path);
    }
    for (const auto& [path, text] : tree_bytes(out / "maps")) {
      CHECK(json::parse(text).at("lid").at("manifest") == digest);
    }
    // Golden tables, manifest line aside.
    const auto golden = pipeline_fixture() / "golden";
    for (const auto* name : {"summary_NY_MA.tsv", "summary_NY.tsv", "summary_MA.tsv", "importance_patents.tsv",
                             "importance_sfr.tsv"}) {
      CHECK_MESSAGE(drop_lines(read_file(out / "tables" / name), "# manifest") == read_file(golden / name), name);
    }
  }

  TEST_CASE("missing census fails validation and writes nothing") {
    TempDir dir("run");
    const auto out = dir / "out";
    const auto config = fixture_config(dir, [](json& j) { j["sources"]["census"] = "/nonexistent/census.csv"; });
    const auto r = run_cli(run_args(config, out), dir);
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("census") != std::string::npos);
    CHECK_FALSE(fs::exists(out));
  }

  TEST_CASE("lag 3 is rejected unless allowed") {
    TempDir dir("run");
    const auto config = fixture_config(dir, [](json& j) { j["outcome_year"] = 2015; });
    const auto r = run_cli(run_args(config, dir / "out"), dir);
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("allow-custom-lag") != std::string::npos);
    CHECK_FALSE(fs::exists(dir / "out"));
    const auto ok = run_cli("ingest --config " + shell_quote(config.string()) + " --out " +
                                shell_quote((dir / "out").string()) + " --allow-custom-lag",
                            dir);
    CHECK(ok.exit_code == 0);
  }

  TEST_CASE("a stage failure exits 1 with the stage named") {
    TempDir dir("run");
    const auto census = dir.write("census.csv", "ZCTA,STATE,POP\n02139,MA,5\n");
    const auto config = fixture_config(dir, [&](json& j) { j["sources"]["census"] = census.string(); });
    const auto r = run_cli(run_args(config, dir / "out"), dir);
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("[ingest] MissingColumn") != std::string::npos);
  }

  TEST_CASE("summarize alone reuses the staged matrix") {
    TempDir dir("run");
    const auto out = dir / "out";
    const auto config = fixture_config(dir);
    REQUIRE(run_cli(run_args(config, out), dir).exit_code == 0);
    const auto staging = tree_bytes(out / "staging");
    const auto tables = tree_bytes(out / "tables");

    // A marked staged matrix proves summarize reads it instead of rebuilding.
    auto matrix = read_file(out / "staging" / "matrix.tsv");
    const std::string row_start = "\n02108\tMA\t10\t";
    const auto marked_row = matrix.find(row_start);
    REQUIRE(marked_row != std::string::npos);
    fs::remove_all(out / "tables");
    REQUIRE(run_cli(run_args(config, out, "--only summarize"), dir).exit_code == 0);
    CHECK(tree_bytes(out / "staging") == staging);
    for (const auto* name : {"summary_NY_MA.tsv", "summary_NY.tsv", "summary_MA.tsv"}) {
      CHECK(read_file(out / "tables" / name) == tables.at(name));
    }
    CHECK_FALSE(fs::exists(out / "tables" / "importance_patents.tsv"));

    matrix.replace(marked_row, row_start.size(), "\n02108\tMA\t99\t");
    write_file(out / "staging" / "matrix.tsv", matrix);
    REQUIRE(run_cli(run_args(config, out, "--only summarize"), dir).exit_code == 0);
    CHECK(read_file(out / "tables" / "summary_MA.tsv") != tables.at("summary_MA.tsv"));
  }

  TEST_CASE("deleting downstream outputs and rerunning reproduces them") {
    TempDir dir("run");
    const auto out = dir / "out";
    const auto config = fixture_config(dir);
    REQUIRE(run_cli(run_args(config, out), dir).exit_code == 0);
    const auto before = tree_bytes(out);

    for (const auto* f : {"matrix.tsv", "mask.tsv", "join_report.txt"}) fs::remove(out / "staging" / f);
    REQUIRE(run_cli(run_args(config, out, "--only build"), dir).exit_code == 0);
    fs::remove_all(out / "tables");
    fs::remove_all(out / "maps");
    for (const auto* stage : {"summarize", "train", "maps"}) {
      REQUIRE(run_cli(run_args(config, out, std::string("--only ") + stage), dir).exit_code == 0);
    }
    CHECK(tree_bytes(out) == before);

    fs::remove_all(out / "staging");
    REQUIRE(run_cli(run_args(config, out, "--only ingest"), dir).exit_code == 0);
    REQUIRE(run_cli(run_args(config, out, "--only build"), dir).exit_code == 0);
    CHECK(tree_bytes(out) == before);
  }

  TEST_CASE("single-source ingest") {
    TempDir dir("run");
    const auto r = run_cli("ingest --source h1b --path " + shell_quote((pipeline_fixture() / "h1b.csv").string()) +
                               " --out " + shell_quote((dir / "staged").string()),
                           dir);
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("h1b records") != std::string::npos);
    CHECK(fs::exists(dir / "staged" / "h1b.tsv"));
    CHECK(run_cli("ingest --source h1b", dir).exit_code == 2);
  }

  TEST_CASE("in-process pipeline matches the binary") {
    TempDir dir("run");
    const auto config_path = fixture_config(dir);
    REQUIRE(run_cli(run_args(config_path, dir / "a"), dir).exit_code == 0);
    auto config = cli::load_config(config_path);
    config.output_dir = dir / "b";
    cli::RunOptions options;
    options.threads = 3;
    cli::Pipeline pipeline(config, options);
    pipeline.run();
    CHECK(tree_bytes(dir / "a") == tree_bytes(dir / "b"));
  }
}
