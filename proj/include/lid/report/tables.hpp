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

#include "lid/core/catalog.hpp"
#include "lid/core/importance.hpp"
#include "lid/features/summary.hpp"

namespace lid::report {

inline constexpr int kTableDecimals = 3;

/// A state subset analysed on its own. `label` is the table wording
/// ("NY & MA"), `token` the file-name form ("NY_MA").
struct Scope {
  std::string label;
  std::string token;
  std::set<std::string> states;
};

/// Pooled scope first (when there is more than one state), then each state,
/// in configuration order.
std::vector<Scope> scopes_for(const std::vector<std::string>& states);

/// Variable | Median | Mean | SD | Group, preceded by comment lines naming
/// scope, years, and manifest digest. A scope with no zones yields the
/// header alone and a warning.
std::string summary_table(const features::SummaryTable& table, const std::string& manifest_digest,
                          std::vector<std::string>* warnings = nullptr);

struct ScopedReport {
  Scope scope;
  ImportanceReport report;
};

/// Feature | Importance <scope>... sorted by the first scope's mean
/// importance. Throws DegenerateReport when the first scope never split.
std::string importance_table(const std::vector<ScopedReport>& reports, const FeatureCatalog& catalog,
                             const std::string& manifest_digest);

/// Full-precision audit table: scope, rank, feature, mean, one column per seed.
std::string importance_detail(const std::vector<ScopedReport>& reports,
                              const std::string& manifest_digest);

}  // namespace lid::report
