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

#include <cstdlib>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "lid/cli/pipeline.hpp"

namespace {

constexpr int kExitStage = 1;
constexpr int kExitConfig = 2;

struct Common {
  std::string config;
  std::string out;
  int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::optional<std::uint64_t> seed;
  std::string outcome = "both";
  bool allow_custom_lag = false;
};

void add_common(CLI::App* cmd, Common& c, bool config_required = true) {
  auto* opt = cmd->add_option("--config", c.config, "Run configuration (JSON)");
  if (config_required) opt->required();
  cmd->add_option("--out", c.out, "Output directory (overrides output_dir)");
  cmd->add_option("--threads", c.threads, "Worker threads; never changes outputs")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", c.seed, "Master seed (overrides master_seed)");
  cmd->add_option("--outcome", c.outcome, "Outcome to train")
      ->check(CLI::IsMember({"patents", "sfr", "both"}));
  cmd->add_flag("--allow-custom-lag", c.allow_custom_lag,
                "Accept outcome_year - base_year other than 4");
}

void warn(const std::string& message) { std::cerr << "warning: " << message << '\n'; }

lid::cli::RunConfig configure(const Common& c) {
  auto config = c.config.empty() ? lid::cli::RunConfig{} : lid::cli::load_config(c.config);
  if (c.config.empty()) config.config_dir = std::filesystem::current_path();
  if (!c.out.empty()) config.output_dir = std::filesystem::absolute(c.out);
  if (c.seed) config.master_seed = *c.seed;
  if (c.allow_custom_lag) config.allow_custom_lag = true;
  return config;
}

lid::cli::RunOptions options(const Common& c) {
  lid::cli::RunOptions o;
  o.threads = c.threads;
  if (c.outcome == "patents") o.outcomes = {lid::Outcome::kPatents};
  if (c.outcome == "sfr") o.outcomes = {lid::Outcome::kSfr};
  if (const char* cache = std::getenv("LID_CACHE_DIR"); cache && *cache) o.cache_dir = cache;
  o.warn = warn;
  return o;
}

int run_pipeline(const Common& c, std::optional<lid::cli::Stage> only) {
  const auto config = configure(c);
  const auto problems = lid::cli::validate_config(config);
  if (!problems.empty()) {
    for (const auto& p : problems) std::cerr << "config: " << p << '\n';
    return kExitConfig;
  }
  lid::cli::Pipeline pipeline(config, options(c));
  pipeline.run(only);
  std::cout << fmt::format("manifest {} written to {}\n", pipeline.manifest().digest(),
                           (pipeline.out() / "manifest.json").string());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local innovation determinants: zone features, forest importances, maps"};
  app.require_subcommand(1);

  Common common;
  std::string source;
  std::string source_path;
  std::string only;

  auto* ingest = app.add_subcommand("ingest", "Parse and stage source files");
  add_common(ingest, common, false);
  ingest->add_option("--source", source, "Single source to stage")
      ->check(CLI::IsMember({"census", "patents", "poi", "rnd", "h1b", "sfr", "bizreg", "polygons"}));
  ingest->add_option("--path", source_path, "File for --source")->check(CLI::ExistingFile);

  auto* build = app.add_subcommand("build", "Staged records to the feature matrix");
  add_common(build, common);
  auto* summarize = app.add_subcommand("summarize", "Summary-statistics tables per scope");
  add_common(summarize, common);
  auto* train = app.add_subcommand("train", "Seed-averaged forest importances");
  add_common(train, common);
  auto* maps = app.add_subcommand("maps", "Choropleth GeoJSON per outcome and scope");
  add_common(maps, common);
  auto* run = app.add_subcommand("run", "Every stage, or one with --only");
  add_common(run, common);
  run->add_option("--only", only, "Run a single stage against existing staging")
      ->check(CLI::IsMember({"ingest", "build", "summarize", "train", "maps"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (ingest->parsed()) {
      if (!source.empty() || !source_path.empty()) {
        if (source.empty() || source_path.empty() || common.out.empty()) {
          std::cerr << "ingest: --source, --path and --out go together\n";
          return kExitConfig;
        }
        const auto config = configure(common);
        const auto n = lid::cli::ingest_one(source, source_path, common.out, config, warn);
        std::cout << fmt::format("staged {} {} records into {}\n", n, source, common.out);
        return 0;
      }
      if (common.config.empty()) {
        std::cerr << "ingest: --config is required unless --source and --path are given\n";
        return kExitConfig;
      }
      return run_pipeline(common, lid::cli::Stage::kIngest);
    }
    if (build->parsed()) return run_pipeline(common, lid::cli::Stage::kBuild);
    if (summarize->parsed()) return run_pipeline(common, lid::cli::Stage::kSummarize);
    if (train->parsed()) return run_pipeline(common, lid::cli::Stage::kTrain);
    if (maps->parsed()) return run_pipeline(common, lid::cli::Stage::kMaps);
    if (run->parsed()) {
      return run_pipeline(common, only.empty() ? std::nullopt : lid::cli::parse_stage(only));
    }
  } catch (const lid::cli::StageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitStage;
  } catch (const lid::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == lid::ErrorCode::kInvalidConfig ? kExitConfig : kExitStage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitStage;
  }
  return 0;
}
