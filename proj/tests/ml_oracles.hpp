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

// Reference implementations for the forest, written from the definitions
// and sharing nothing with the library beyond the tree data structure.

#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "lid/ml/forest.hpp"

namespace lid::test {

struct ExactSplit {
  int feature = -1;
  double threshold = 0.0;
  double decrease = 0.0;
};

/// Exhaustive split search for integer targets. The decrease is kept as an
/// exact fraction num/den over
///   Var(node) - nL/n Var(L) - nR/n Var(R)
/// scaled by n^2 nL nR, and rounded once at the end.
inline std::optional<ExactSplit> brute_force_split(const Eigen::MatrixXd& X,
                                                   const Eigen::VectorXd& y) {
  using i128 = __int128;
  const auto n = X.rows();
  auto moments = [&](const std::vector<Eigen::Index>& rows) {
    std::int64_t s = 0;
    std::int64_t ss = 0;
    for (auto r : rows) {
      const auto v = static_cast<std::int64_t>(y(r));
      s += v;
      ss += v * v;
    }
    return std::pair{s, ss};
  };
  std::vector<Eigen::Index> all(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
  const auto [s, ss] = moments(all);

  std::optional<ExactSplit> best;
  i128 best_num = 0;
  i128 best_den = 1;
  for (Eigen::Index f = 0; f < X.cols(); ++f) {
    std::vector<double> distinct(X.col(f).data(), X.col(f).data() + n);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (std::size_t k = 0; k + 1 < distinct.size(); ++k) {
      const double t = (distinct[k] + distinct[k + 1]) / 2.0;
      std::vector<Eigen::Index> left;
      std::vector<Eigen::Index> right;
      for (Eigen::Index i = 0; i < n; ++i) (X(i, f) <= t ? left : right).push_back(i);
      const auto nl = static_cast<std::int64_t>(left.size());
      const auto nr = static_cast<std::int64_t>(right.size());
      const auto [sl, ssl] = moments(left);
      const auto [sr, ssr] = moments(right);
      const i128 num = i128(nl) * nr * (i128(n) * ss - i128(s) * s) -
                       i128(n) * nr * (i128(nl) * ssl - i128(sl) * sl) -
                       i128(n) * nl * (i128(nr) * ssr - i128(sr) * sr);
      const i128 den = i128(n) * n * nl * nr;
      if (num <= 0) continue;
      if (!best || num * best_den > best_num * den) {
        best_num = num;
        best_den = den;
        best = ExactSplit{static_cast<int>(f), t,
                          static_cast<double>(num) / static_cast<double>(den)};
      }
    }
  }
  return best;
}

/// Population variance by two passes, in long double.
inline long double variance_of(const Eigen::VectorXd& y, const std::vector<Eigen::Index>& rows) {
  long double mean = 0;
  for (auto r : rows) mean += y(r);
  mean /= static_cast<long double>(rows.size());
  long double ss = 0;
  for (auto r : rows) ss += (y(r) - mean) * (y(r) - mean);
  return ss / static_cast<long double>(rows.size());
}

/// MDI by walking every node of every tree: the bootstrap rows are routed
/// from the root through the stored thresholds, and each split's decrease is
/// recomputed from the raw row subsets reaching it.
inline Eigen::VectorXd node_walking_mdi(const ml::Forest<double>& forest, const Eigen::MatrixXd& X,
                                        const Eigen::VectorXd& y) {
  const auto p = X.cols();
  Eigen::Matrix<long double, Eigen::Dynamic, 1> total =
      Eigen::Matrix<long double, Eigen::Dynamic, 1>::Zero(p);
  for (const auto& tree : forest.trees) {
    std::vector<std::vector<Eigen::Index>> reach(tree.nodes.size());
    reach[0] = tree.inbag;
    const auto root_n = static_cast<long double>(tree.inbag.size());
    for (std::size_t k = 0; k < tree.nodes.size(); ++k) {
      const auto& node = tree.nodes[k];
      if (node.is_leaf()) continue;
      auto& l = reach[static_cast<std::size_t>(node.left)];
      auto& r = reach[static_cast<std::size_t>(node.right)];
      for (auto row : reach[k]) (X(row, node.feature) <= node.threshold ? l : r).push_back(row);
      const auto n = static_cast<long double>(reach[k].size());
      const long double dec = variance_of(y, reach[k]) -
                              static_cast<long double>(l.size()) / n * variance_of(y, l) -
                              static_cast<long double>(r.size()) / n * variance_of(y, r);
      total(node.feature) += n / root_n * dec;
    }
  }
  total /= static_cast<long double>(forest.trees.size());
  const long double sum = total.sum();
  if (!(sum > 0)) return Eigen::VectorXd::Zero(p);
  return (total / sum).cast<double>();
}

}  // namespace lid::test
