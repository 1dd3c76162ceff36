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

#include "lid/features/matrix_io.hpp"

#include <sstream>

#include <fmt/format.h>

#include "lid/core/error.hpp"
#include "lid/ingest/delimited.hpp"
#include "lid/util/io.hpp"

namespace lid::features {

namespace {

std::string header_comment(const FeatureMatrix& m) {
  return fmt::format("# lid-matrix v1 catalog={} base_year={} outcome_year={}\n", m.catalog_version,
                     m.base_year, m.outcome_year);
}

std::vector<std::string> column_names(const FeatureMatrix& m, const FeatureCatalog& catalog) {
  std::vector<std::string> names = {"zone", "state"};
  for (const auto& f : catalog.entries) names.push_back(f.key);
  names.emplace_back(outcome_key(Outcome::kPatents));
  names.emplace_back(outcome_key(Outcome::kSfr));
  names.insert(names.end(), m.aux_names.begin(), m.aux_names.end());
  return names;
}

template <typename Cell>
std::string serialize(const FeatureMatrix& m, const FeatureCatalog& catalog, Cell cell) {
  std::string out = header_comment(m);
  out += fmt::format("{}\n", fmt::join(column_names(m, catalog), "\t"));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const auto& z = m.zones[static_cast<std::size_t>(i)];
    out += z.code() + '\t' + z.state();
    for (Eigen::Index j = 0; j < m.values.cols(); ++j) out += '\t' + cell(m.values, m.mask, i, j);
    for (Eigen::Index j = 0; j < m.outcomes.cols(); ++j) {
      out += '\t' + cell(m.outcomes, m.outcome_mask, i, j);
    }
    for (Eigen::Index j = 0; j < m.aux.cols(); ++j) out += '\t' + cell(m.aux, m.aux_mask, i, j);
    out += '\n';
  }
  return out;
}

struct Header {
  std::string catalog;
  int base_year = 0;
  int outcome_year = 0;
  std::string body;
};

Header split_header(const std::string& text) {
  const auto eol = text.find('\n');
  const std::string first = text.substr(0, eol);
  if (!first.starts_with("# lid-matrix v1")) {
    throw Error(ErrorCode::kMalformedRow, "line 1: missing '# lid-matrix v1' header");
  }
  Header h;
  std::istringstream in(first.substr(2));
  std::string tok;
  while (in >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) continue;
    const auto key = tok.substr(0, eq);
    const auto val = tok.substr(eq + 1);
    if (key == "catalog") h.catalog = val;
    if (key == "base_year") h.base_year = std::stoi(val);
    if (key == "outcome_year") h.outcome_year = std::stoi(val);
  }
  h.body = eol == std::string::npos ? std::string() : text.substr(eol + 1);
  return h;
}

}  // namespace

std::string serialize_matrix(const FeatureMatrix& m, const FeatureCatalog& catalog) {
  return serialize(m, catalog, [](const Eigen::MatrixXd& v, const MaskMatrix&, Eigen::Index i,
                                  Eigen::Index j) { return format_exact(v(i, j)); });
}

std::string serialize_mask(const FeatureMatrix& m, const FeatureCatalog& catalog) {
  return serialize(m, catalog, [](const Eigen::MatrixXd&, const MaskMatrix& mask, Eigen::Index i,
                                  Eigen::Index j) { return std::string(mask(i, j) ? "1" : "0"); });
}

FeatureMatrix parse_matrix(const std::string& matrix_text, const std::string& mask_text,
                           const FeatureCatalog& catalog) {
  const auto vh = split_header(matrix_text);
  const auto mh = split_header(mask_text);
  const auto values = ingest::parse_delimited(vh.body, '\t');
  const auto masks = ingest::parse_delimited(mh.body, '\t');
  if (values.header != masks.header || values.rows.size() != masks.rows.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "matrix and mask files disagree in shape");
  }
  const std::size_t p = catalog.size();
  const std::size_t fixed = 2 + p + kOutcomeCount;
  if (values.header.size() < fixed) {
    throw Error(ErrorCode::kUnknownColumn, "matrix header is shorter than the catalog");
  }
  for (std::size_t j = 0; j < p; ++j) {
    if (values.header[2 + j] != catalog.entries[j].key) {
      throw Error(ErrorCode::kUnknownColumn,
                  fmt::format("column {} is '{}', catalog expects '{}'", 2 + j, values.header[2 + j],
                              catalog.entries[j].key));
    }
  }
  std::vector<std::string> aux_names(values.header.begin() + static_cast<std::ptrdiff_t>(fixed),
                                     values.header.end());
  std::vector<ZoneId> zones;
  for (const auto& row : values.rows) zones.emplace_back(row.fields[0], row.fields[1]);
  auto m = FeatureMatrix::zeros(std::move(zones), p, std::move(aux_names));
  m.catalog_version = vh.catalog;
  m.base_year = vh.base_year;
  m.outcome_year = vh.outcome_year;

  for (std::size_t r = 0; r < values.rows.size(); ++r) {
    const auto& vrow = values.rows[r];
    const auto& mrow = masks.rows[r];
    const auto i = static_cast<Eigen::Index>(r);
    for (std::size_t c = 2; c < vrow.fields.size(); ++c) {
      const auto v = parse_double(vrow.fields[c]);
      if (!v) {
        throw Error(ErrorCode::kMalformedRow,
                    fmt::format("line {}: '{}' is not a number", vrow.line + 1, vrow.fields[c]));
      }
      const bool missing = mrow.fields[c] == "1";
      std::size_t k = c - 2;
      if (k < p) {
        m.values(i, static_cast<Eigen::Index>(k)) = *v;
        m.mask(i, static_cast<Eigen::Index>(k)) = missing;
      } else if ((k -= p) < kOutcomeCount) {
        m.outcomes(i, static_cast<Eigen::Index>(k)) = *v;
        m.outcome_mask(i, static_cast<Eigen::Index>(k)) = missing;
      } else {
        k -= kOutcomeCount;
        m.aux(i, static_cast<Eigen::Index>(k)) = *v;
        m.aux_mask(i, static_cast<Eigen::Index>(k)) = missing;
      }
    }
  }
  return m;
}

void write_matrix(const FeatureMatrix& m, const FeatureCatalog& catalog,
                  const std::filesystem::path& dir) {
  write_file(dir / "matrix.tsv", serialize_matrix(m, catalog));
  write_file(dir / "mask.tsv", serialize_mask(m, catalog));
}

FeatureMatrix read_matrix(const std::filesystem::path& dir, const FeatureCatalog& catalog) {
  return parse_matrix(read_file(dir / "matrix.tsv"), read_file(dir / "mask.tsv"), catalog);
}

}  // namespace lid::features
