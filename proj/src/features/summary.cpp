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

#include "lid/features/summary.hpp"

#include <algorithm>
#include <cmath>

namespace lid::features {

Describe describe(std::span<const double> values) {
  Describe d;
  d.n = values.size();
  if (values.empty()) return d;
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t mid = sorted.size() / 2;
  d.median = sorted.size() % 2 ? sorted[mid] : (sorted[mid - 1] + sorted[mid]) / 2.0;
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(values.size());
  d.mean = mean;
  if (values.size() >= 2) {
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    d.sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return d;
}

Describe describe_column(const Eigen::MatrixXd& values, const MaskMatrix& mask, Eigen::Index j) {
  std::vector<double> kept;
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    if (!mask(i, j)) kept.push_back(values(i, j));
  }
  return describe(kept);
}

SummaryTable summarize(const FeatureMatrix& m, const FeatureCatalog& catalog, std::string scope) {
  SummaryTable t;
  t.scope = std::move(scope);
  t.base_year = m.base_year;
  t.outcome_year = m.outcome_year;
  t.zones = m.zones.size();

  const auto pop_col = std::find(m.aux_names.begin(), m.aux_names.end(), "total_population");
  for (std::size_t j = 0; j < catalog.size(); ++j) {
    const auto& spec = catalog.entries[j];
    t.rows.push_back({spec.key, spec.label, std::string(group_label(spec.group)),
                      describe_column(m.values, m.mask, static_cast<Eigen::Index>(j))});
    if (j == col::kSciTech && pop_col != m.aux_names.end()) {
      t.rows.push_back({"total_population", "Total population",
                        std::string(group_label(FeatureGroup::kSocial)),
                        describe_column(m.aux, m.aux_mask, pop_col - m.aux_names.begin())});
    }
  }
  for (auto o : {Outcome::kPatents, Outcome::kSfr}) {
    t.rows.push_back({std::string(outcome_key(o)), outcome_label(o, m.outcome_year), kOutcomeGroup,
                      describe_column(m.outcomes, m.outcome_mask, static_cast<Eigen::Index>(o))});
  }
  return t;
}

}  // namespace lid::features
