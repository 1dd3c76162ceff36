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
#include <sstream>
#include <string>
#include <vector>

#include "lid/core/importance.hpp"
#include "lid/ml/tree.hpp"
#include "lid/util/parallel.hpp"

namespace lid::ml {

template <typename Scalar>
struct Forest {
  std::vector<Tree<Scalar>> trees;
  ForestParams params;
  std::uint64_t seed = 0;  // key the tree streams were derived from
  Eigen::Index n_features = 0;
};

inline TreeParams tree_params(const ForestParams& params, int p) {
  return TreeParams{params.resolved_mtry(p), params.min_samples_split, params.max_depth,
                    params.bootstrap};
}

/// Trains params.n_trees trees; tree t uses stream derive(seed, t).
template <typename Scalar>
Forest<Scalar> fit_forest(const MatrixRef<Scalar>& X, const VectorRef<Scalar>& y,
                          const ForestParams& params, std::uint64_t seed, int threads = 1) {
  Forest<Scalar> forest;
  forest.params = params;
  forest.seed = seed;
  forest.n_features = X.cols();
  forest.trees.resize(static_cast<std::size_t>(params.n_trees));
  const auto tp = tree_params(params, static_cast<int>(X.cols()));
  parallel_for(forest.trees.size(), threads, [&](std::size_t t) {
    forest.trees[t] = fit_tree<Scalar>(X, y, tp, derive_stream(seed, t));
  });
  return forest;
}

template <typename Scalar>
Scalar predict(const Forest<Scalar>& forest, const VectorRef<Scalar>& x) {
  if (x.size() != forest.n_features) {
    throw Error(ErrorCode::kDimensionMismatch,
                "row has " + std::to_string(x.size()) + " features, forest expects " +
                    std::to_string(forest.n_features));
  }
  Scalar sum{0};
  for (const auto& tree : forest.trees) sum += predict_tree(tree, x);
  return sum / static_cast<Scalar>(forest.trees.size());
}

template <typename Scalar>
struct MdiResult {
  VectorX<Scalar> importance;
  bool degenerate = false;
};

/// Sums per-tree importance vectors in tree order, divides by the tree count,
/// then normalizes to unit sum. All zeros with the degenerate flag when no
/// tree split at all.
template <typename Scalar>
MdiResult<Scalar> normalize_mdi(const std::vector<VectorX<Scalar>>& per_tree, Eigen::Index p) {
  MdiResult<Scalar> out;
  out.importance = VectorX<Scalar>::Zero(p);
  for (const auto& v : per_tree) out.importance += v;
  if (!per_tree.empty()) out.importance /= static_cast<Scalar>(per_tree.size());
  const Scalar total = out.importance.sum();
  if (!(total > Scalar{0})) {
    out.importance.setZero();
    out.degenerate = true;
  } else {
    out.importance /= total;
  }
  return out;
}

template <typename Scalar>
MdiResult<Scalar> mdi_importance(const Forest<Scalar>& forest, Eigen::Index p) {
  std::vector<VectorX<Scalar>> per_tree;
  per_tree.reserve(forest.trees.size());
  for (const auto& tree : forest.trees) per_tree.push_back(tree_importance(tree, p));
  return normalize_mdi(per_tree, p);
}

/// Audit dump: one `tree <t>` header per tree, then one line per node:
/// id feature threshold decrease n left right prediction (tab separated,
/// 17 significant digits; leaves have feature -1).
template <typename Scalar>
std::string dump_forest(const Forest<Scalar>& forest) {
  std::ostringstream out;
  out.precision(17);
  out << "# lid-forest v1 trees=" << forest.trees.size() << " seed=" << forest.seed
      << " features=" << forest.n_features << "\n";
  for (std::size_t t = 0; t < forest.trees.size(); ++t) {
    out << "tree " << t << "\n";
    const auto& nodes = forest.trees[t].nodes;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      const auto& node = nodes[k];
      out << k << '\t' << node.feature << '\t' << node.threshold << '\t'
          << node.impurity_decrease << '\t' << node.n << '\t' << node.left << '\t' << node.right
          << '\t' << node.prediction << "\n";
    }
  }
  return out.str();
}

}  // namespace lid::ml
