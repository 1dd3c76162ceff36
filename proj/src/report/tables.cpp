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

#include "lid/report/tables.hpp"

#include <fmt/format.h>

#include "lid/core/error.hpp"
#include "lid/util/io.hpp"

namespace lid::report {

std::vector<Scope> scopes_for(const std::vector<std::string>& states) {
  std::vector<Scope> out;
  if (states.size() > 1) {
    out.push_back({fmt::format("{}", fmt::join(states, " & ")),
                   fmt::format("{}", fmt::join(states, "_")),
                   {states.begin(), states.end()}});
  }
  for (const auto& s : states) out.push_back({s, s, {s}});
  return out;
}

namespace {

std::string fixed_or_na(const std::optional<double>& v) {
  return v ? format_fixed(*v, kTableDecimals) : "NA";
}

std::string outcome_label_plain(Outcome o) {
  return o == Outcome::kPatents ? "granted patents per 1000 residents" : "startup formation rate";
}

}  // namespace

std::string summary_table(const features::SummaryTable& table, const std::string& manifest_digest,
                          std::vector<std::string>* warnings) {
  std::string out;
  out += fmt::format("# Summary statistics of neighborhood elements, {}, base year {}\n", table.scope,
                     table.base_year);
  out += fmt::format("# zones: {}; outcome year: {}\n", table.zones, table.outcome_year);
  out += fmt::format("# manifest: {}\n", manifest_digest);
  out += "Variable\tMedian\tMean\tSD\tGroup\n";
  if (table.zones == 0) {
    if (warnings) warnings->push_back("summary for " + table.scope + " has no zones");
    return out;
  }
  for (const auto& r : table.rows) {
    out += fmt::format("{}\t{}\t{}\t{}\t{}\n", r.label, fixed_or_na(r.stats.median),
                       fixed_or_na(r.stats.mean), fixed_or_na(r.stats.sd), r.group);
  }
  return out;
}

std::string importance_table(const std::vector<ScopedReport>& reports, const FeatureCatalog& catalog,
                             const std::string& manifest_digest) {
  if (reports.empty()) throw Error(ErrorCode::kDegenerateReport, "no importance reports");
  const auto& lead = reports.front().report;
  if (lead.all_degenerate()) {
    throw Error(ErrorCode::kDegenerateReport,
                "no split in any forest for scope " + reports.front().scope.label);
  }
  const auto p = static_cast<std::size_t>(lead.mean.size());
  for (const auto& r : reports) {
    if (static_cast<std::size_t>(r.report.mean.size()) != p || r.report.features != lead.features) {
      throw Error(ErrorCode::kDimensionMismatch, "importance reports cover different features");
    }
  }

  std::string out;
  out += fmt::format("# Feature importance (mean decrease in impurity), outcome: {}\n",
                     outcome_label_plain(lead.outcome));
  out += fmt::format("# seeds: {}; trees per seed: {}; mtry: {}; master seed: {}\n",
                     lead.params.n_seeds, lead.params.n_trees,
                     lead.params.resolved_mtry(static_cast<int>(p)), lead.master_seed);
  out += fmt::format("# manifest: {}\n", manifest_digest);
  out += "Feature";
  for (const auto& r : reports) out += "\tImportance " + r.scope.label;
  out += '\n';
  for (auto j : lead.ranking) {
    const auto idx = catalog.index_of(lead.features[j]);
    out += idx ? catalog.entries[*idx].label : lead.features[j];
    for (const auto& r : reports) {
      const auto je = static_cast<Eigen::Index>(j);
      out += '\t';
      out += r.report.all_degenerate() ? std::string("NA") : format_fixed(r.report.mean(je), kTableDecimals);
    }
    out += '\n';
  }
  return out;
}

std::string importance_detail(const std::vector<ScopedReport>& reports,
                              const std::string& manifest_digest) {
  std::string out = fmt::format("# manifest: {}\n", manifest_digest);
  std::size_t n_seeds = 0;
  for (const auto& r : reports) n_seeds = std::max(n_seeds, r.report.per_seed.size());
  out += "scope\trank\tfeature\tmean";
  for (std::size_t s = 0; s < n_seeds; ++s) out += fmt::format("\tseed_{}", s);
  out += '\n';
  for (const auto& r : reports) {
    std::string flags;
    for (bool d : r.report.degenerate) flags += flags.empty() ? (d ? "1" : "0") : (d ? ",1" : ",0");
    out += fmt::format("# {} rows={} seeds={} degenerate={}\n", r.scope.label, r.report.n_rows,
                       fmt::join(r.report.seeds, ","), flags);
    for (std::size_t k = 0; k < r.report.ranking.size(); ++k) {
      const auto j = static_cast<Eigen::Index>(r.report.ranking[k]);
      out += fmt::format("{}\t{}\t{}\t{}", r.scope.token, k + 1, r.report.features[r.report.ranking[k]],
                         format_exact(r.report.mean(j)));
      for (const auto& v : r.report.per_seed) out += '\t' + format_exact(v(j));
      out += '\n';
    }
  }
  return out;
}

}  // namespace lid::report
