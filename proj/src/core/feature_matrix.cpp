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

#include "lid/core/feature_matrix.hpp"

#include <cmath>

namespace lid {

FeatureMatrix FeatureMatrix::zeros(std::vector<ZoneId> zones, std::size_t n_features,
                                   std::vector<std::string> aux_names) {
  FeatureMatrix m;
  const auto n = static_cast<Eigen::Index>(zones.size());
  const auto p = static_cast<Eigen::Index>(n_features);
  const auto a = static_cast<Eigen::Index>(aux_names.size());
  m.zones = std::move(zones);
  m.values = Eigen::MatrixXd::Zero(n, p);
  m.mask = MaskMatrix::Constant(n, p, false);
  m.outcomes = Eigen::MatrixXd::Zero(n, kOutcomeCount);
  m.outcome_mask = MaskMatrix::Constant(n, kOutcomeCount, false);
  m.aux_names = std::move(aux_names);
  m.aux = Eigen::MatrixXd::Zero(n, a);
  m.aux_mask = MaskMatrix::Constant(n, a, false);
  return m;
}

namespace {

void check_block(const FeatureMatrix& m, const Eigen::MatrixXd& values, const MaskMatrix& mask,
                 const std::vector<std::string>& names, std::vector<Violation>& out) {
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
      const double v = values(i, j);
      const auto& zone = m.zones[static_cast<std::size_t>(i)].code();
      const auto& name = names[static_cast<std::size_t>(j)];
      if (!std::isfinite(v)) {
        out.push_back({zone, name, "non-finite value"});
      } else if (mask(i, j) && v != 0.0) {
        out.push_back({zone, name, "masked cell must hold the 0 sentinel"});
      }
    }
  }
}

}  // namespace

std::vector<Violation> validate_matrix(const FeatureMatrix& m, const FeatureCatalog& catalog,
                                       int expected_lag) {
  std::vector<Violation> out;
  const auto n = m.rows();
  const auto p = static_cast<Eigen::Index>(catalog.size());
  if (m.values.rows() != n || m.values.cols() != p || m.mask.rows() != n || m.mask.cols() != p ||
      m.outcomes.rows() != n || m.outcomes.cols() != static_cast<Eigen::Index>(kOutcomeCount) ||
      m.outcome_mask.rows() != n || m.outcome_mask.cols() != m.outcomes.cols() ||
      m.aux.rows() != n || m.aux.cols() != static_cast<Eigen::Index>(m.aux_names.size()) ||
      m.aux_mask.rows() != n || m.aux_mask.cols() != m.aux.cols()) {
    out.push_back({"", "", "shape mismatch between zones, catalog, values, and masks"});
    return out;
  }
  if (m.outcome_year - m.base_year != expected_lag) {
    out.push_back({"", "outcome_year",
                   "lag " + std::to_string(m.outcome_year - m.base_year) + " != configured lag " +
                       std::to_string(expected_lag)});
  }

  std::vector<std::string> names;
  for (const auto& f : catalog.entries) names.push_back(f.key);
  check_block(m, m.values, m.mask, names, out);
  check_block(m, m.outcomes, m.outcome_mask,
              {std::string(outcome_key(Outcome::kPatents)), std::string(outcome_key(Outcome::kSfr))},
              out);
  check_block(m, m.aux, m.aux_mask, m.aux_names, out);

  for (Eigen::Index j = 0; j < p; ++j) {
    const auto& spec = catalog.entries[static_cast<std::size_t>(j)];
    for (Eigen::Index i = 0; i < n; ++i) {
      if (m.mask(i, j)) continue;
      const double v = m.values(i, j);
      const auto& zone = m.zones[static_cast<std::size_t>(i)].code();
      if (spec.kind == FeatureKind::kPercentage && !(v >= 0.0 && v <= 1.0)) {
        out.push_back({zone, spec.key, "percentage outside [0, 1]"});
      } else if (spec.kind == FeatureKind::kPer1000Rate && !(v >= 0.0)) {
        out.push_back({zone, spec.key, "per-1000 rate is negative"});
      }
    }
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = 0; k < m.outcomes.cols(); ++k) {
      if (!m.outcome_mask(i, k) && m.outcomes(i, k) < 0.0) {
        out.push_back({m.zones[static_cast<std::size_t>(i)].code(),
                       std::string(outcome_key(static_cast<Outcome>(k))), "negative outcome"});
      }
    }
  }
  return out;
}

std::vector<Eigen::Index> complete_rows(const FeatureMatrix& m, Outcome outcome) {
  std::vector<Eigen::Index> rows;
  const auto k = static_cast<Eigen::Index>(outcome);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (!m.outcome_mask(i, k) && !m.mask.row(i).any()) rows.push_back(i);
  }
  return rows;
}

FeatureMatrix select_states(const FeatureMatrix& m, const std::set<std::string>& states) {
  std::vector<Eigen::Index> keep;
  std::vector<ZoneId> zones;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const auto& z = m.zones[static_cast<std::size_t>(i)];
    if (states.contains(z.state())) {
      keep.push_back(i);
      zones.push_back(z);
    }
  }
  FeatureMatrix out = FeatureMatrix::zeros(std::move(zones), static_cast<std::size_t>(m.values.cols()),
                                           m.aux_names);
  for (std::size_t r = 0; r < keep.size(); ++r) {
    const auto i = keep[r];
    const auto ri = static_cast<Eigen::Index>(r);
    out.values.row(ri) = m.values.row(i);
    out.mask.row(ri) = m.mask.row(i);
    out.outcomes.row(ri) = m.outcomes.row(i);
    out.outcome_mask.row(ri) = m.outcome_mask.row(i);
    out.aux.row(ri) = m.aux.row(i);
    out.aux_mask.row(ri) = m.aux_mask.row(i);
  }
  out.base_year = m.base_year;
  out.outcome_year = m.outcome_year;
  out.catalog_version = m.catalog_version;
  return out;
}

}  // namespace lid
