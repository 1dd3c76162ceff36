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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "lid/core/catalog.hpp"

namespace lid {

struct ForestParams {
  int n_trees = 1000;
  std::optional<int> mtry;  // unset: ceil(p / 3)
  int min_samples_split = 2;
  std::optional<int> max_depth;
  bool bootstrap = true;
  int n_seeds = 8;

  /// mtry with the default resolved for `p` features.
  int resolved_mtry(int p) const { return mtry ? *mtry : (p + 2) / 3; }
};

/// Seed-averaged mean-decrease-in-impurity ranking for one outcome and scope.
struct ImportanceReport {
  std::vector<std::string> features;
  Eigen::VectorXd mean;                  // arithmetic mean of per_seed
  std::vector<Eigen::VectorXd> per_seed;  // each sums to 1, or all zero if degenerate
  std::vector<std::uint64_t> seeds;
  std::vector<bool> degenerate;
  std::vector<std::size_t> ranking;  // feature indices, descending mean, ties by index
  Outcome outcome = Outcome::kPatents;
  std::vector<std::string> scope;  // state tags
  ForestParams params;
  std::uint64_t master_seed = 0;
  std::size_t n_rows = 0;

  bool all_degenerate() const;
};

/// Descending by value, ties by ascending index.
std::vector<std::size_t> rank_descending(const Eigen::VectorXd& values);

}  // namespace lid
