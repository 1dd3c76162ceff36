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

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "lid/core/error.hpp"
#include "lid/ml/rng.hpp"

namespace lid::ml {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using MatrixRef = Eigen::Ref<const MatrixX<Scalar>>;
template <typename Scalar>
using VectorRef = Eigen::Ref<const VectorX<Scalar>>;

/// A regression split. `decrease` is the node-level variance decrease
/// I(node) - nL/n I(L) - nR/n I(R), with I the population variance.
template <typename Scalar>
struct Split {
  int feature = -1;
  Scalar threshold{};
  Scalar decrease{};

  friend bool operator==(const Split&, const Split&) = default;
};

/// Samples with x <= threshold go left.
template <typename Scalar>
struct TreeNode {
  int feature = -1;  // -1 for leaves
  Scalar threshold{};
  Scalar impurity_decrease{};  // unweighted; see weighted_decrease()
  Scalar prediction{};
  Eigen::Index n = 0;
  int left = -1;
  int right = -1;
  int depth = 0;

  bool is_leaf() const noexcept { return feature < 0; }
};

template <typename Scalar>
struct Tree {
  std::vector<TreeNode<Scalar>> nodes;  // creation order, nodes[0] is the root
  std::vector<Eigen::Index> inbag;      // training rows in draw order (with repeats)

  const TreeNode<Scalar>& root() const { return nodes.front(); }

  /// ΔI scaled by the fraction of the tree's samples reaching the node.
  Scalar weighted_decrease(const TreeNode<Scalar>& node) const {
    return static_cast<Scalar>(node.n) / static_cast<Scalar>(root().n) * node.impurity_decrease;
  }

  int depth() const {
    int d = 0;
    for (const auto& node : nodes) d = std::max(d, node.depth);
    return d;
  }
};

struct TreeParams {
  int mtry = 1;
  int min_samples_split = 2;
  std::optional<int> max_depth;
  bool bootstrap = true;
};

/// Variance decrease from the left-side sums. Written as
/// (nR*SL - nL*SR)^2 / (n^2 nL nR), which equals the definition above and is
/// a single rounding away from exact when targets are small integers.
template <typename Scalar>
Scalar variance_decrease(Scalar sum_left, Eigen::Index n_left, Scalar sum_total, Eigen::Index n) {
  const Eigen::Index n_right = n - n_left;
  const Scalar sum_right = sum_total - sum_left;
  const Scalar nl = static_cast<Scalar>(n_left);
  const Scalar nr = static_cast<Scalar>(n_right);
  const Scalar nn = static_cast<Scalar>(n);
  const Scalar diff = nr * sum_left - nl * sum_right;
  return (diff * diff) / (nn * nn * nl * nr);
}

/// Threshold strictly between two adjacent distinct values: their midpoint,
/// or `lo` when the midpoint rounds up to `hi`.
template <typename Scalar>
Scalar split_threshold(Scalar lo, Scalar hi) {
  const Scalar mid = std::midpoint(lo, hi);
  return mid < hi ? mid : lo;
}

/// Exhaustive scan over `features` (visited in ascending order) and over the
/// midpoints of consecutive distinct sorted values among `rows`. Returns the
/// split with the largest strictly positive decrease; ties keep the lowest
/// feature index, then the lowest threshold.
template <typename Scalar>
std::optional<Split<Scalar>> best_split(const MatrixRef<Scalar>& X, const VectorRef<Scalar>& y,
                                        std::span<const Eigen::Index> rows,
                                        std::span<const int> features) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  if (n < 2) return std::nullopt;

  Scalar total{0};
  for (auto r : rows) total += y(r);

  std::vector<int> sorted_features(features.begin(), features.end());
  std::sort(sorted_features.begin(), sorted_features.end());

  std::optional<Split<Scalar>> best;
  Scalar best_decrease{0};
  std::vector<Eigen::Index> order(rows.begin(), rows.end());
  for (int f : sorted_features) {
    auto column = X.col(f);
    std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
      return column(a) < column(b) || (column(a) == column(b) && a < b);
    });
    Scalar left_sum{0};
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
      left_sum += y(order[static_cast<std::size_t>(i)]);
      const Scalar lo = column(order[static_cast<std::size_t>(i)]);
      const Scalar hi = column(order[static_cast<std::size_t>(i + 1)]);
      if (!(lo < hi)) continue;
      const Scalar decrease = variance_decrease(left_sum, i + 1, total, n);
      if (decrease > best_decrease) {
        best_decrease = decrease;
        best = Split<Scalar>{f, split_threshold(lo, hi), decrease};
      }
    }
  }
  return best;
}

/// Convenience overload treating every row of X as the node.
template <typename Scalar>
std::optional<Split<Scalar>> best_split(const MatrixRef<Scalar>& X, const VectorRef<Scalar>& y,
                                        std::span<const int> features) {
  std::vector<Eigen::Index> rows(static_cast<std::size_t>(X.rows()));
  std::iota(rows.begin(), rows.end(), Eigen::Index{0});
  return best_split<Scalar>(X, y, rows, features);
}

/// Grows one CART regression tree. `stream_key` is the tree's counter-based
/// key: the bootstrap draw uses derive(key, 0), node k's feature draw uses
/// derive(key, k + 1).
template <typename Scalar>
Tree<Scalar> fit_tree(const MatrixRef<Scalar>& X, const VectorRef<Scalar>& y,
                      const TreeParams& params, std::uint64_t stream_key) {
  const Eigen::Index n = X.rows();
  const int p = static_cast<int>(X.cols());
  if (n < 1 || y.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "fit_tree needs n >= 1 rows matching y");
  }
  const int mtry = std::clamp(params.mtry, 1, std::max(p, 1));

  Tree<Scalar> tree;
  tree.inbag.resize(static_cast<std::size_t>(n));
  if (params.bootstrap) {
    CounterRng rng(derive_stream(stream_key, 0));
    for (auto& r : tree.inbag) {
      r = static_cast<Eigen::Index>(uniform_below(rng, static_cast<std::uint64_t>(n)));
    }
  } else {
    std::iota(tree.inbag.begin(), tree.inbag.end(), Eigen::Index{0});
  }

  struct Pending {
    int node;
    std::vector<Eigen::Index> rows;
  };
  std::vector<Pending> stack;
  tree.nodes.emplace_back();
  stack.push_back({0, tree.inbag});

  while (!stack.empty()) {
    Pending item = std::move(stack.back());
    stack.pop_back();
    const auto& rows = item.rows;
    const auto count = static_cast<Eigen::Index>(rows.size());

    Scalar sum{0};
    bool pure = true;
    for (auto r : rows) {
      sum += y(r);
      pure = pure && y(r) == y(rows.front());
    }
    {
      auto& node = tree.nodes[static_cast<std::size_t>(item.node)];
      node.n = count;
      node.prediction = sum / static_cast<Scalar>(count);
    }
    const int depth = tree.nodes[static_cast<std::size_t>(item.node)].depth;
    if (pure || count < params.min_samples_split ||
        (params.max_depth && depth >= *params.max_depth)) {
      continue;
    }

    CounterRng node_rng(derive_stream(stream_key, static_cast<std::uint64_t>(item.node) + 1));
    const auto features = sample_without_replacement(node_rng, p, mtry);
    const auto split = best_split<Scalar>(X, y, rows, features);
    if (!split) continue;

    std::vector<Eigen::Index> left_rows;
    std::vector<Eigen::Index> right_rows;
    for (auto r : rows) {
      (X(r, split->feature) <= split->threshold ? left_rows : right_rows).push_back(r);
    }

    const int left = static_cast<int>(tree.nodes.size());
    const int right = left + 1;
    tree.nodes.resize(tree.nodes.size() + 2);
    auto& node = tree.nodes[static_cast<std::size_t>(item.node)];
    node.feature = split->feature;
    node.threshold = split->threshold;
    node.impurity_decrease = split->decrease;
    node.left = left;
    node.right = right;
    tree.nodes[static_cast<std::size_t>(left)].depth = depth + 1;
    tree.nodes[static_cast<std::size_t>(right)].depth = depth + 1;
    // Right pushed first so the left subtree is expanded first.
    stack.push_back({right, std::move(right_rows)});
    stack.push_back({left, std::move(left_rows)});
  }
  return tree;
}

template <typename Scalar, typename Row>
Scalar predict_tree(const Tree<Scalar>& tree, const Row& x) {
  const TreeNode<Scalar>* node = &tree.nodes.front();
  while (!node->is_leaf()) {
    const auto next = x(node->feature) <= node->threshold ? node->left : node->right;
    node = &tree.nodes[static_cast<std::size_t>(next)];
  }
  return node->prediction;
}

/// Per-feature sum of weighted decreases over one tree's split nodes.
template <typename Scalar>
VectorX<Scalar> tree_importance(const Tree<Scalar>& tree, Eigen::Index p) {
  VectorX<Scalar> out = VectorX<Scalar>::Zero(p);
  for (const auto& node : tree.nodes) {
    if (!node.is_leaf()) out(node.feature) += tree.weighted_decrease(node);
  }
  return out;
}

}  // namespace lid::ml
