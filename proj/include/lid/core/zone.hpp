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

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace lid {

/// A five digit zip / ZCTA code together with the state it belongs to.
/// Ordering is by code first, which is what boundary tie-breaking relies on.
class ZoneId {
 public:
  ZoneId() = default;

  /// Throws Error(kInvalidZone) unless `code` is exactly five ASCII digits and
  /// `state` is a two letter upper-case tag.
  ZoneId(std::string_view code, std::string_view state);

  const std::string& code() const noexcept { return code_; }
  const std::string& state() const noexcept { return state_; }

  friend auto operator<=>(const ZoneId&, const ZoneId&) = default;
  friend bool operator==(const ZoneId&, const ZoneId&) = default;

 private:
  std::string code_;
  std::string state_;
};

bool is_zone_code(std::string_view code) noexcept;
bool is_state_tag(std::string_view state) noexcept;

using Point = Eigen::Vector2d;  // (lon, lat) degrees, or planar metres

struct Ring {
  std::vector<Point> vertices;  // closed: front() == back()
  bool hole = false;
};

/// Zone geometry. Rings of every part of a (multi)polygon are flattened;
/// point containment uses the even-odd rule across all rings.
struct ZonePolygon {
  ZoneId zone;
  std::vector<Ring> rings;
  double land_area_m2 = 0.0;

  bool degenerate() const noexcept { return land_area_m2 <= 0.0; }
};

}  // namespace lid
