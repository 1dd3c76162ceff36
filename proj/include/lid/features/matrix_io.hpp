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

#include <filesystem>
#include <string>

#include "lid/core/catalog.hpp"
#include "lid/core/feature_matrix.hpp"

// matrix.tsv
//   # lid-matrix v1 catalog=<version> base_year=<y> outcome_year=<y>
//   zone  state  <catalog keys...>  patents_per_1000  sfr  <aux names...>
//   one row per zone, shortest round-trip decimals, masked cells as 0
// mask.tsv
//   same two header lines, then 0/1 per cell (1 = missing)

namespace lid::features {

std::string serialize_matrix(const FeatureMatrix& m, const FeatureCatalog& catalog);
std::string serialize_mask(const FeatureMatrix& m, const FeatureCatalog& catalog);

/// Inverse of the two serializers. Throws UnknownColumn when the header does
/// not match `catalog`, MalformedRow on bad cells.
FeatureMatrix parse_matrix(const std::string& matrix_text, const std::string& mask_text,
                           const FeatureCatalog& catalog);

void write_matrix(const FeatureMatrix& m, const FeatureCatalog& catalog,
                  const std::filesystem::path& dir);
FeatureMatrix read_matrix(const std::filesystem::path& dir, const FeatureCatalog& catalog);

}  // namespace lid::features
