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

#include <filesystem>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lid/cli/config.hpp"
#include "lid/core/error.hpp"
#include "lid/report/manifest.hpp"

// Output tree
//   staging/   census.tsv patents.tsv poi.ndjson rnd.tsv h1b.tsv sfr.tsv
//              bizreg.tsv polygons.geojson ingest_report.tsv      (ingest)
//              matrix.tsv mask.tsv join_report.txt                (build)
//   tables/    summary_<scope>.tsv                                (summarize)
//              importance_<outcome>.tsv, importance_<outcome>_seeds.tsv (train)
//   maps/      <column>_<scope>.geojson                           (maps)
//   manifest.json

namespace lid::cli {

enum class Stage { kIngest, kBuild, kSummarize, kTrain, kMaps };

std::string_view stage_name(Stage stage);
std::optional<Stage> parse_stage(std::string_view name);

/// A library error annotated with the stage that raised it.
class StageError : public std::runtime_error {
 public:
  StageError(Stage stage, const Error& cause);
  Stage stage() const noexcept { return stage_; }
  ErrorCode code() const noexcept { return code_; }

 private:
  Stage stage_;
  ErrorCode code_;
};

struct RunOptions {
  int threads = 1;
  std::vector<Outcome> outcomes = {Outcome::kPatents, Outcome::kSfr};
  std::filesystem::path cache_dir;  // empty: <out>/cache
  std::function<void(const std::string&)> warn;
};

class Pipeline {
 public:
  Pipeline(RunConfig config, RunOptions options);

  void ingest();
  void build();
  void summarize();
  void train();
  void maps();

  /// Every stage in order, or only `only`. Rewrites manifest.json after.
  void run(std::optional<Stage> only = std::nullopt);

  void write_manifest() const;

  const report::RunManifest& manifest() const noexcept { return manifest_; }
  std::filesystem::path out() const { return config_.output_dir; }
  std::filesystem::path staging() const { return config_.output_dir / "staging"; }

 private:
  template <typename Fn>
  void stage(Stage s, Fn&& fn);
  void warn(const std::string& message) const;

  RunConfig config_;
  RunOptions options_;
  report::RunManifest manifest_;
  std::string digest_;
};

/// `ingest --source <name> --path <file>` without a run config: parse one
/// file, stage it into `out_dir`, return the number of staged records.
std::size_t ingest_one(const std::string& source, const std::filesystem::path& path,
                       const std::filesystem::path& out_dir, const RunConfig& config,
                       const std::function<void(const std::string&)>& warn);

}  // namespace lid::cli
