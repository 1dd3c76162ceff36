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
#include <set>
#include <string>
#include <vector>

#include "lid/ingest/records.hpp"
#include "lid/spatial/geometry.hpp"
#include "lid/spatial/zone_index.hpp"

namespace lid::ingest {

struct FilterReport {
  std::size_t kept = 0;
  std::size_t outside = 0;     // located, but in no configured-state polygon
  std::size_t unresolved = 0;  // no coordinates and zone not in a configured state
};

inline std::optional<Point> record_location(const PatentRecord& r) { return r.location; }
inline std::optional<Point> record_location(const PoiRecord& r) { return r.location; }
template <typename R>
std::optional<Point> record_location(const R&) {
  return std::nullopt;
}

inline const ZoneId* record_zone(const PoiRecord&) { return nullptr; }
template <typename R>
const ZoneId* record_zone(const R& r) {
  return &r.zone;
}

/// True when some polygon of a configured state contains the point (edges
/// inclusive, so shared borders with an outside state keep the point).
inline bool in_states(const Point& lonlat, const spatial::ZoneIndex& index,
                      const std::set<std::string>& states) {
  for (auto i : index.candidates(lonlat)) {
    const auto& poly = index.polygons()[i];
    if (states.count(poly.zone.state()) && spatial::rings_contain<double>(poly.rings, lonlat)) {
      return true;
    }
  }
  return false;
}

/// Keeps records located inside the configured states. Records without
/// coordinates fall back to their zone: the polygon's state when the zone
/// has one, otherwise the state the record was filed under.
template <typename R>
std::vector<R> filter_to_states(const std::vector<R>& records, const spatial::ZoneIndex& index,
                                const std::set<std::string>& states,
                                FilterReport* report = nullptr) {
  FilterReport local;
  std::vector<R> out;
  for (const auto& r : records) {
    if (const auto loc = record_location(r)) {
      if (in_states(*loc, index, states)) {
        out.push_back(r);
        ++local.kept;
      } else {
        ++local.outside;
      }
      continue;
    }
    const ZoneId* zone = record_zone(r);
    bool keep = false;
    if (zone) {
      const auto* poly = index.find(zone->code());
      keep = states.count(poly ? poly->zone.state() : zone->state()) > 0;
    }
    if (keep) {
      out.push_back(r);
      ++local.kept;
    } else {
      ++local.unresolved;
    }
  }
  if (report) *report = local;
  return out;
}

}  // namespace lid::ingest
