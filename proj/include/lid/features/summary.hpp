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

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lid/core/catalog.hpp"
#include "lid/core/feature_matrix.hpp"

namespace lid::features {

struct Describe {
  std::size_t n = 0;
  std::optional<double> median;
  std::optional<double> mean;
  std::optional<double> sd;  // n - 1 denominator; nullopt below two values
};

Describe describe(std::span<const double> values);

/// Statistics of column `j` over its unmasked cells.
Describe describe_column(const Eigen::MatrixXd& values, const MaskMatrix& mask, Eigen::Index j);

struct SummaryRow {
  std::string key;
  std::string label;
  std::string group;
  Describe stats;
};

struct SummaryTable {
  std::string scope;  // "NY", "MA", "NY & MA", ...
  int base_year = 0;
  int outcome_year = 0;
  std::size_t zones = 0;
  std::vector<SummaryRow> rows;
};

inline constexpr const char* kOutcomeGroup = "Innovation Outcomes";

/// Catalog rows in order, with total population after the scientific and
/// technical share and the two outcomes last, as the published summary
/// tables lay them out.
SummaryTable summarize(const FeatureMatrix& m, const FeatureCatalog& catalog, std::string scope);

}  // namespace lid::features
