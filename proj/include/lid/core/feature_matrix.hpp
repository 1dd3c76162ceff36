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

#include <set>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "lid/core/catalog.hpp"
#include "lid/core/zone.hpp"

namespace lid {

using MaskMatrix = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

inline constexpr int kDefaultLag = 4;

/// Zones x predictors, zones x outcomes, plus auxiliary columns that are
/// emitted but never trained on. A masked cell always holds 0.0 and is
/// excluded from every statistic.
struct FeatureMatrix {
  std::vector<ZoneId> zones;
  Eigen::MatrixXd values;
  MaskMatrix mask;
  Eigen::MatrixXd outcomes;
  MaskMatrix outcome_mask;
  std::vector<std::string> aux_names;
  Eigen::MatrixXd aux;
  MaskMatrix aux_mask;
  int base_year = 0;
  int outcome_year = 0;
  std::string catalog_version;

  Eigen::Index rows() const noexcept { return static_cast<Eigen::Index>(zones.size()); }

  /// Allocates zeroed, unmasked storage for `zones`.
  static FeatureMatrix zeros(std::vector<ZoneId> zones, std::size_t n_features,
                             std::vector<std::string> aux_names = {});
};

struct Violation {
  std::string zone;  // empty for matrix-level rules
  std::string column;
  std::string rule;
};

/// Every broken invariant, empty when the matrix is valid.
std::vector<Violation> validate_matrix(const FeatureMatrix& m, const FeatureCatalog& catalog,
                                       int expected_lag = kDefaultLag);

/// Rows with every predictor present and the outcome present.
std::vector<Eigen::Index> complete_rows(const FeatureMatrix& m, Outcome outcome);

/// Row subset restricted to zones whose state is in `states`; order kept.
FeatureMatrix select_states(const FeatureMatrix& m, const std::set<std::string>& states);

}  // namespace lid
