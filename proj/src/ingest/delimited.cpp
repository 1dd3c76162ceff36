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

#include "lid/ingest/delimited.hpp"

#include <algorithm>

#include "lid/core/error.hpp"
#include "lid/util/io.hpp"

namespace lid::ingest {

std::optional<std::size_t> DelimitedTable::column(std::string_view name) const {
  auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) return std::nullopt;
  return static_cast<std::size_t>(it - header.begin());
}

std::size_t DelimitedTable::require(std::string_view name) const {
  if (auto c = column(name)) return *c;
  throw Error(ErrorCode::kMissingColumn, std::string(name));
}

namespace {

bool blank(const std::vector<std::string>& fields) {
  return fields.size() == 1 && fields[0].find_first_not_of(" \t\r") == std::string::npos;
}

}  // namespace

DelimitedTable parse_delimited(std::string_view text, char delimiter) {
  DelimitedTable table;
  std::vector<std::vector<std::string>> records;
  std::vector<std::size_t> starts;

  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool at_field_start = true;
  std::size_t line = 1;
  std::size_t record_start = 1;

  auto end_record = [&] {
    fields.push_back(std::move(field));
    field.clear();
    if (!blank(fields)) {
      records.push_back(std::move(fields));
      starts.push_back(record_start);
    }
    fields.clear();
    at_field_start = true;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    if (c == '"' && at_field_start) {
      quoted = true;
      at_field_start = false;
    } else if (c == delimiter) {
      fields.push_back(std::move(field));
      field.clear();
      at_field_start = true;
    } else if (c == '\n') {
      end_record();
      ++line;
      record_start = line;
    } else if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
      // CRLF: the '\n' ends the record.
    } else {
      field += c;
      at_field_start = false;
    }
  }
  if (quoted) throw Error(ErrorCode::kMalformedRow, "line " + std::to_string(record_start) + ": unterminated quote");
  if (!field.empty() || !fields.empty()) end_record();

  if (records.empty()) return table;
  table.header = std::move(records.front());
  for (auto& h : table.header) {
    while (!h.empty() && (h.back() == ' ' || h.back() == '\r')) h.pop_back();
  }
  if (!table.header.empty() && table.header[0].starts_with("\xEF\xBB\xBF")) table.header[0].erase(0, 3);
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != table.header.size()) {
      throw Error(ErrorCode::kMalformedRow,
                  "line " + std::to_string(starts[r]) + ": expected " +
                      std::to_string(table.header.size()) + " fields, found " +
                      std::to_string(records[r].size()));
    }
    table.rows.push_back({starts[r], std::move(records[r])});
  }
  return table;
}

DelimitedTable read_delimited(const std::filesystem::path& path, char delimiter) {
  return parse_delimited(read_file(path), delimiter);
}

std::string escape_field(std::string_view field, char delimiter) {
  if (field.find_first_of(std::string{delimiter, '"', '\n', '\r'}) == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace lid::ingest
