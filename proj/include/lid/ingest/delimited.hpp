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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lid::ingest {

struct DelimitedRow {
  std::size_t line = 0;  // 1-based physical line of the record start
  std::vector<std::string> fields;
};

/// Header plus data rows. Double-quoted fields may contain the delimiter,
/// doubled quotes, and newlines. Blank lines are skipped. A row whose field
/// count differs from the header raises Error(kMalformedRow).
struct DelimitedTable {
  std::vector<std::string> header;
  std::vector<DelimitedRow> rows;

  std::optional<std::size_t> column(std::string_view name) const;
  /// Throws Error(kMissingColumn, name).
  std::size_t require(std::string_view name) const;
};

DelimitedTable parse_delimited(std::string_view text, char delimiter = ',');
DelimitedTable read_delimited(const std::filesystem::path& path, char delimiter = ',');

/// Quotes a field when it contains the delimiter, a quote, or a newline.
std::string escape_field(std::string_view field, char delimiter);

}  // namespace lid::ingest
