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
#include <string>
#include <vector>

#include "lid/core/feature_matrix.hpp"
#include "lid/core/importance.hpp"
#include "lid/ml/forest.hpp"

namespace lid::ml {

/// Key of the i-th protocol run under `master_seed`.
constexpr std::uint64_t seed_key(std::uint64_t master_seed, std::size_t i) noexcept {
  return derive_stream(master_seed, i);
}

/// Trains params.n_seeds forests (run i keyed by seed_key(master_seed, i)),
/// normalizes each forest's MDI, and averages the normalized vectors.
/// Trees of every run are trained as one flat task list so `threads` only
/// changes wall time.
template <typename Scalar>
ImportanceReport seed_averaged_importance(const MatrixRef<Scalar>& X, const VectorRef<Scalar>& y,
                                          std::vector<std::string> feature_names,
                                          const ForestParams& params, std::uint64_t master_seed,
                                          int threads = 1) {
  if (X.rows() < 2) {
    throw Error(ErrorCode::kTooFewRows,
                "need at least 2 complete rows, have " + std::to_string(X.rows()));
  }
  if (y.size() != X.rows() || static_cast<Eigen::Index>(feature_names.size()) != X.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "X, y, and feature names disagree in shape");
  }
  if (params.n_trees < 1 || params.n_seeds < 1 || params.min_samples_split < 1) {
    throw Error(ErrorCode::kInvalidConfig, "n_trees, n_seeds, min_samples_split must be >= 1");
  }
  const auto p = X.cols();
  const int mtry = params.resolved_mtry(static_cast<int>(p));
  if (mtry < 1 || mtry > p) {
    throw Error(ErrorCode::kInvalidConfig, "mtry must lie in [1, p]");
  }

  const auto n_seeds = static_cast<std::size_t>(params.n_seeds);
  const auto n_trees = static_cast<std::size_t>(params.n_trees);
  const auto tp = tree_params(params, static_cast<int>(p));
  std::vector<VectorX<Scalar>> per_tree(n_seeds * n_trees);
  parallel_for(per_tree.size(), threads, [&](std::size_t task) {
    const std::size_t s = task / n_trees;
    const std::size_t t = task % n_trees;
    const auto tree = fit_tree<Scalar>(X, y, tp, derive_stream(seed_key(master_seed, s), t));
    per_tree[task] = tree_importance(tree, p);
  });

  ImportanceReport report;
  report.features = std::move(feature_names);
  report.params = params;
  report.master_seed = master_seed;
  report.n_rows = static_cast<std::size_t>(X.rows());
  report.mean = Eigen::VectorXd::Zero(p);
  for (std::size_t s = 0; s < n_seeds; ++s) {
    std::vector<VectorX<Scalar>> run(per_tree.begin() + static_cast<std::ptrdiff_t>(s * n_trees),
                                     per_tree.begin() + static_cast<std::ptrdiff_t>((s + 1) * n_trees));
    const auto mdi = normalize_mdi(run, p);
    report.per_seed.push_back(mdi.importance.template cast<double>());
    report.degenerate.push_back(mdi.degenerate);
    report.seeds.push_back(seed_key(master_seed, s));
  }
  for (const auto& v : report.per_seed) report.mean += v;
  report.mean /= static_cast<double>(n_seeds);
  report.ranking = rank_descending(report.mean);
  return report;
}

/// Trains on the complete rows of `m` for `outcome`; scope is the set of
/// states present in `m`.
ImportanceReport seed_averaged_importance(const FeatureMatrix& m, const FeatureCatalog& catalog,
                                          Outcome outcome, const ForestParams& params,
                                          std::uint64_t master_seed, int threads = 1);

}  // namespace lid::ml
