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

#include "lid/ingest/parsers.hpp"

#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include "lid/core/error.hpp"
#include "lid/ingest/delimited.hpp"
#include "lid/util/io.hpp"

namespace lid::ingest {

using nlohmann::json;

namespace {

[[noreturn]] void malformed(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::kMalformedRow, "line " + std::to_string(line) + ": " + what);
}

/// Accepts ZIP+4 ("02139-4307") and spreadsheet-mangled codes that lost
/// their leading zeros ("2139").
std::string normalize_zone_code(std::string code) {
  while (!code.empty() && code.back() == ' ') code.pop_back();
  while (!code.empty() && code.front() == ' ') code.erase(0, 1);
  if (code.size() == 10 && code[5] == '-') code.resize(5);
  if (code.size() >= 3 && code.size() < 5 && is_zone_code(std::string(5 - code.size(), '0') + code)) {
    code.insert(0, 5 - code.size(), '0');
  }
  return code;
}

ZoneId make_zone(const std::string& code, const std::string& state, std::size_t line) {
  try {
    return ZoneId(normalize_zone_code(code), state);
  } catch (const Error& e) {
    malformed(line, e.what());
  }
}

std::optional<int> parse_int(std::string_view text) {
  int v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) return std::nullopt;
  return v;
}

bool is_count_field(CensusField f) {
  switch (f) {
    case CensusField::kTotalPopulation:
    case CensusField::kMedianAge:
    case CensusField::kMedianIncome:
    case CensusField::kUnemploymentRate:
    case CensusField::kPovertyRate:
    case CensusField::kMedianHomeValue:
    case CensusField::kOccupiedHousingUnits:
    case CensusField::kHousingTotal:
      return false;
    default:
      return true;
  }
}

bool is_rate_field(CensusField f) {
  return f == CensusField::kUnemploymentRate || f == CensusField::kPovertyRate;
}

std::string line_note(std::size_t line, const std::string& what) {
  return "line " + std::to_string(line) + ": " + what;
}

/// Shared reader for the small zone-keyed sources.
template <typename Record, typename Build>
ParseResult<Record> parse_zone_source(const std::filesystem::path& path, char delimiter,
                                      const std::vector<std::string>& required, Build build) {
  const auto table = read_delimited(path, delimiter);
  ParseResult<Record> out;
  if (table.header.empty()) return out;
  std::vector<std::size_t> cols;
  for (const auto& name : required) cols.push_back(table.require(name));
  for (const auto& row : table.rows) {
    std::vector<std::string_view> fields;
    for (auto c : cols) fields.emplace_back(row.fields[c]);
    const ZoneId zone = make_zone(row.fields[cols[0]], row.fields[cols[1]], row.line);
    build(zone, fields, row.line, out);
  }
  return out;
}

std::string trimmed(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
  return std::string(s);
}

}  // namespace

// ---------------------------------------------------------------- census

std::string CensusSchema::column_for(std::string_view canonical) const {
  auto it = columns.find(std::string(canonical));
  return it == columns.end() ? std::string(canonical) : it->second;
}

CensusSchema CensusSchema::from_json(const json& j) {
  CensusSchema schema;
  if (j.contains("delimiter")) {
    const auto d = j.at("delimiter").get<std::string>();
    schema.delimiter = d == "\\t" || d == "tab" ? '\t' : (d.empty() ? ',' : d[0]);
  }
  if (j.contains("columns")) {
    for (const auto& [k, v] : j.at("columns").items()) schema.columns[k] = v.get<std::string>();
  }
  if (j.contains("year_built")) {
    schema.year_built.clear();
    for (const auto& bin : j.at("year_built")) {
      schema.year_built.push_back({bin.at("column").get<std::string>(),
                                   bin.at("midpoint_year").get<double>()});
    }
  }
  return schema;
}

ParseResult<CensusRecord> parse_census(const std::filesystem::path& path,
                                       const CensusSchema& schema) {
  const auto table = read_delimited(path, schema.delimiter);
  ParseResult<CensusRecord> out;
  if (table.header.empty()) return out;

  auto require = [&](std::string_view canonical) {
    const auto column = schema.column_for(canonical);
    if (auto c = table.column(column)) return *c;
    std::string detail(canonical);
    if (column != canonical) detail += " (column '" + column + "')";
    throw Error(ErrorCode::kMissingColumn, detail);
  };
  const auto zone_col = require("zone");
  const auto state_col = require("state");
  std::array<std::optional<std::size_t>, kCensusFieldCount> cols{};
  for (std::size_t f = 0; f < kCensusFieldCount; ++f) {
    const auto field = static_cast<CensusField>(f);
    if (census_field_optional(field)) {
      cols[f] = table.column(schema.column_for(census_field_name(field)));
    } else {
      cols[f] = require(census_field_name(field));
    }
  }
  std::vector<std::size_t> bin_cols;
  for (const auto& bin : schema.year_built) bin_cols.push_back(require(bin.column));

  std::set<std::string> seen;
  for (const auto& row : table.rows) {
    CensusRecord rec;
    rec.zone = make_zone(row.fields[zone_col], row.fields[state_col], row.line);
    if (!seen.insert(rec.zone.code()).second) {
      throw Error(ErrorCode::kDuplicateZone,
                  rec.zone.code() + " (line " + std::to_string(row.line) + ")");
    }

    auto cell = [&](std::size_t col, std::string_view name) -> std::optional<double> {
      const auto& text = row.fields[col];
      auto v = parse_double(text);
      if (!v && !trimmed(text).empty() && trimmed(text) != "NA") {
        out.notes.push_back({row.line, line_note(row.line, std::string(name) + " unparseable '" + text + "'")});
      }
      return v;
    };
    for (std::size_t f = 0; f < kCensusFieldCount; ++f) {
      if (cols[f]) rec.fields[f] = cell(*cols[f], census_field_name(static_cast<CensusField>(f)));
    }
    for (std::size_t b = 0; b < bin_cols.size(); ++b) {
      auto v = cell(bin_cols[b], schema.year_built[b].column);
      if (v && *v < 0) {
        out.notes.push_back({row.line, line_note(row.line, schema.year_built[b].column + " negative")});
        v.reset();
      }
      rec.year_built.push_back(v);
    }

    const auto population = rec.get(CensusField::kTotalPopulation);
    if (population && *population < 0) {
      out.notes.push_back({row.line, line_note(row.line, "total_population negative")});
      rec.set(CensusField::kTotalPopulation, std::nullopt);
    }
    for (std::size_t f = 0; f < kCensusFieldCount; ++f) {
      const auto field = static_cast<CensusField>(f);
      const auto v = rec.fields[f];
      if (!v || field == CensusField::kTotalPopulation) continue;
      std::string problem;
      if (*v < 0) {
        problem = "negative";
      } else if (is_rate_field(field) && *v > 1.0) {
        problem = "rate above 1";
      } else if (is_count_field(field) && population && *v > *population) {
        problem = "exceeds total_population";
      }
      if (!problem.empty()) {
        out.notes.push_back({row.line, line_note(row.line, std::string(census_field_name(field)) + " " + problem)});
        rec.fields[f].reset();
      }
    }
    const auto occupied = rec.get(CensusField::kOccupiedHousingUnits);
    const auto housing = rec.get(CensusField::kHousingTotal);
    if (occupied && housing && *occupied > *housing) {
      out.notes.push_back({row.line, line_note(row.line, "occupied_housing_units exceeds housing_total")});
      rec.set(CensusField::kOccupiedHousingUnits, std::nullopt);
    }
    out.records.push_back(std::move(rec));
  }
  return out;
}

// ---------------------------------------------------------------- patents

ParseResult<PatentRecord> parse_patents(const std::filesystem::path& path,
                                        const DateWindow& window, char delimiter) {
  const auto table = read_delimited(path, delimiter);
  ParseResult<PatentRecord> out;
  if (table.header.empty()) return out;
  const auto rf = table.require("rf_id");
  const auto zone = table.require("zone");
  const auto state = table.require("state");
  const auto date = table.require("grant_date");
  const auto lon = table.column("lon");
  const auto lat = table.column("lat");

  for (const auto& row : table.rows) {
    PatentRecord rec;
    rec.rf_id = trimmed(row.fields[rf]);
    if (rec.rf_id.empty()) malformed(row.line, "empty rf_id");
    rec.zone = make_zone(row.fields[zone], row.fields[state], row.line);
    const auto d = parse_date(trimmed(row.fields[date]));
    if (!d) malformed(row.line, "grant_date '" + row.fields[date] + "' is not YYYY-MM-DD");
    rec.grant_date = *d;
    if (lon && lat) {
      const auto x = parse_double(row.fields[*lon]);
      const auto y = parse_double(row.fields[*lat]);
      if (x && y) {
        rec.location = Point(*x, *y);
      } else if (!trimmed(row.fields[*lon]).empty() || !trimmed(row.fields[*lat]).empty()) {
        out.notes.push_back({row.line, line_note(row.line, "unusable coordinates, zone fallback")});
      }
    }
    if (!window.contains(rec.grant_date)) {
      out.dropped.push_back(
          {row.line, line_note(row.line, "grant_date " + format_date(rec.grant_date) + " outside window")});
      continue;
    }
    out.records.push_back(std::move(rec));
  }
  return out;
}

// ---------------------------------------------------------------- POIs

PoiRecord poi_from_json(const json& j) {
  PoiRecord rec;
  const auto kind = parse_poi_kind(j.at("kind").get<std::string>());
  if (!kind) throw Error(ErrorCode::kMalformedRow, "unknown kind " + j.at("kind").dump());
  rec.kind = *kind;
  rec.name = j.value("name", "");
  rec.location = Point(j.at("lon").get<double>(), j.at("lat").get<double>());
  if (!rec.location.allFinite()) throw Error(ErrorCode::kMalformedRow, "non-finite coordinates");
  if (j.contains("area_m2") && !j["area_m2"].is_null()) rec.area_m2 = j["area_m2"].get<double>();
  if (j.contains("keyword") && !j["keyword"].is_null()) {
    rec.matched_keyword = j["keyword"].get<std::string>();
  }
  return rec;
}

json poi_to_json(const PoiRecord& poi) {
  json j;
  j["kind"] = poi_kind_name(poi.kind);
  j["name"] = poi.name;
  j["lon"] = poi.location.x();
  j["lat"] = poi.location.y();
  if (poi.area_m2) j["area_m2"] = *poi.area_m2;
  if (poi.matched_keyword) j["keyword"] = *poi.matched_keyword;
  return j;
}

ParseResult<PoiRecord> parse_poi(const std::filesystem::path& path, PoiKind kind) {
  const auto text = read_file(path);
  ParseResult<PoiRecord> out;
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
    PoiRecord rec;
    try {
      const auto j = json::parse(raw);
      if (!j.is_object()) malformed(line, "not a JSON object");
      const auto tag = j.at("kind").get<std::string>();
      // One file may hold several kinds; other kinds are read by their own pass.
      if (tag != poi_kind_name(kind)) continue;
      rec = poi_from_json(j);
    } catch (const json::exception& e) {
      malformed(line, e.what());
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kMalformedRow) malformed(line, e.what());
      throw;
    }
    if (has_area(kind)) {
      if (!rec.area_m2 || !(*rec.area_m2 >= 0.0)) {
        out.dropped.push_back({line, line_note(line, "park/square without a valid area")});
        continue;
      }
    } else if (rec.area_m2) {
      out.notes.push_back({line, line_note(line, "area ignored for " + std::string(poi_kind_name(kind)))});
      rec.area_m2.reset();
    }
    out.records.push_back(std::move(rec));
  }
  return out;
}

// ---------------------------------------------------------------- zone-keyed

ParseResult<RndRecord> parse_rnd(const std::filesystem::path& path, const SourceOptions& opts) {
  return parse_zone_source<RndRecord>(
      path, opts.delimiter, {"zone", "state", "year", "xrd"},
      [&](const ZoneId& zone, const std::vector<std::string_view>& f, std::size_t line, auto& out) {
        const auto year = parse_int(trimmed(f[2]));
        if (!year) malformed(line, "year is not an integer");
        if (opts.year && *year != *opts.year) {
          out.dropped.push_back({line, line_note(line, "fiscal year " + std::to_string(*year) + " skipped")});
          return;
        }
        const auto xrd = parse_double(f[3]);
        if (!xrd || *xrd < 0) {
          out.dropped.push_back({line, line_note(line, "missing or negative xrd")});
          return;
        }
        out.records.push_back({zone, *year, *xrd});
      });
}

ParseResult<H1bRecord> parse_h1b(const std::filesystem::path& path, const SourceOptions& opts) {
  return parse_zone_source<H1bRecord>(
      path, opts.delimiter, {"zone", "state", "status"},
      [&](const ZoneId& zone, const std::vector<std::string_view>& f, std::size_t line, auto& out) {
        const auto status = parse_h1b_status(trimmed(f[2]));
        if (!status) {
          out.dropped.push_back({line, line_note(line, "unknown decision status '" + std::string(f[2]) + "'")});
          return;
        }
        out.records.push_back({zone, *status});
      });
}

ParseResult<SfrRecord> parse_sfr(const std::filesystem::path& path, const SourceOptions& opts) {
  std::set<std::string> seen;
  return parse_zone_source<SfrRecord>(
      path, opts.delimiter, {"zone", "state", "year", "sfr"},
      [&](const ZoneId& zone, const std::vector<std::string_view>& f, std::size_t line, auto& out) {
        const auto year = parse_int(trimmed(f[2]));
        if (!year) malformed(line, "year is not an integer");
        if (opts.year && *year != *opts.year) {
          out.dropped.push_back({line, line_note(line, "year " + std::to_string(*year) + " skipped")});
          return;
        }
        const auto sfr = parse_double(f[3]);
        if (!sfr || *sfr < 0) {
          out.dropped.push_back({line, line_note(line, "missing or negative sfr")});
          return;
        }
        if (!seen.insert(zone.code() + "/" + std::to_string(*year)).second) {
          throw Error(ErrorCode::kDuplicateZone, zone.code() + " (line " + std::to_string(line) + ")");
        }
        out.records.push_back({zone, *year, *sfr});
      });
}

ParseResult<BizRegRecord> parse_bizreg(const std::filesystem::path& path,
                                       const SourceOptions& opts) {
  return parse_zone_source<BizRegRecord>(
      path, opts.delimiter, {"zone", "state", "year"},
      [&](const ZoneId& zone, const std::vector<std::string_view>& f, std::size_t line, auto& out) {
        const auto year = parse_int(trimmed(f[2]));
        if (!year) malformed(line, "year is not an integer");
        if (opts.year && *year != *opts.year) {
          out.dropped.push_back({line, line_note(line, "registration year " + std::to_string(*year) + " skipped")});
          return;
        }
        out.records.push_back({zone, *year});
      });
}

// ---------------------------------------------------------------- staging

namespace {

std::string cell(const std::optional<double>& v) { return v ? format_exact(*v) : "NA"; }

}  // namespace

CensusSchema staged_census_schema(const std::vector<YearBuiltBin>& bins) {
  CensusSchema schema;
  schema.year_built = bins;
  schema.delimiter = '\t';
  return schema;
}

std::string stage_census(const std::vector<CensusRecord>& records,
                         const std::vector<YearBuiltBin>& bins) {
  std::string out = "zone\tstate";
  for (std::size_t f = 0; f < kCensusFieldCount; ++f) {
    out += '\t';
    out += census_field_name(static_cast<CensusField>(f));
  }
  for (const auto& bin : bins) out += '\t' + bin.column;
  out += '\n';
  for (const auto& r : records) {
    out += r.zone.code() + '\t' + r.zone.state();
    for (const auto& v : r.fields) out += '\t' + cell(v);
    for (std::size_t b = 0; b < bins.size(); ++b) {
      out += '\t' + cell(b < r.year_built.size() ? r.year_built[b] : std::nullopt);
    }
    out += '\n';
  }
  return out;
}

std::string stage_patents(const std::vector<PatentRecord>& records) {
  std::string out = "rf_id\tzone\tstate\tgrant_date\tlon\tlat\n";
  for (const auto& r : records) {
    out += escape_field(r.rf_id, '\t') + '\t' + r.zone.code() + '\t' + r.zone.state() + '\t' +
           format_date(r.grant_date) + '\t';
    out += r.location ? format_exact(r.location->x()) + '\t' + format_exact(r.location->y())
                      : std::string("\t");
    out += '\n';
  }
  return out;
}

std::string stage_poi(const std::vector<PoiRecord>& records) {
  std::string out;
  for (const auto& r : records) out += poi_to_json(r).dump() + '\n';
  return out;
}

std::string stage_rnd(const std::vector<RndRecord>& records) {
  std::string out = "zone\tstate\tyear\txrd\n";
  for (const auto& r : records) {
    out += r.zone.code() + '\t' + r.zone.state() + '\t' + std::to_string(r.year) + '\t' +
           format_exact(r.expenditure_musd) + '\n';
  }
  return out;
}

std::string stage_h1b(const std::vector<H1bRecord>& records) {
  std::string out = "zone\tstate\tstatus\n";
  for (const auto& r : records) {
    out += r.zone.code() + '\t' + r.zone.state() + '\t' + std::string(h1b_status_name(r.status)) + '\n';
  }
  return out;
}

std::string stage_sfr(const std::vector<SfrRecord>& records) {
  std::string out = "zone\tstate\tyear\tsfr\n";
  for (const auto& r : records) {
    out += r.zone.code() + '\t' + r.zone.state() + '\t' + std::to_string(r.year) + '\t' +
           format_exact(r.sfr) + '\n';
  }
  return out;
}

std::string stage_bizreg(const std::vector<BizRegRecord>& records) {
  std::string out = "zone\tstate\tyear\n";
  for (const auto& r : records) {
    out += r.zone.code() + '\t' + r.zone.state() + '\t' + std::to_string(r.year) + '\n';
  }
  return out;
}

}  // namespace lid::ingest
