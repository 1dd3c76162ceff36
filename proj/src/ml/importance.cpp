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

#include <set>

#include "lid/ml/importance.hpp"

namespace lid::ml {

ImportanceReport seed_averaged_importance(const FeatureMatrix& m, const FeatureCatalog& catalog,
                                          Outcome outcome, const ForestParams& params,
                                          std::uint64_t master_seed, int threads) {
  const auto rows = complete_rows(m, outcome);
  const auto n = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd X(n, m.values.cols());
  Eigen::VectorXd y(n);
  for (Eigen::Index r = 0; r < n; ++r) {
    X.row(r) = m.values.row(rows[static_cast<std::size_t>(r)]);
    y(r) = m.outcomes(rows[static_cast<std::size_t>(r)], static_cast<Eigen::Index>(outcome));
  }
  std::vector<std::string> names;
  for (const auto& f : catalog.entries) names.push_back(f.key);

  auto report = seed_averaged_importance<double>(X, y, std::move(names), params, master_seed, threads);
  report.outcome = outcome;
  std::set<std::string> states;
  for (const auto& z : m.zones) states.insert(z.state());
  report.scope.assign(states.begin(), states.end());
  return report;
}

}  // namespace lid::ml
