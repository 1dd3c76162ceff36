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
#include <map>
#include <string>
#include <memory>
#include <optional>
#include <vector>

#include "lid/core/zone.hpp"

namespace lid::spatial {

/// Bounding-box R-tree over zone polygons. Immutable once built; concurrent
/// queries are safe.
class ZoneIndex {
 public:
  explicit ZoneIndex(std::vector<ZonePolygon> polygons);
  ~ZoneIndex();
  ZoneIndex(ZoneIndex&&) noexcept;
  ZoneIndex& operator=(ZoneIndex&&) noexcept;

  const std::vector<ZonePolygon>& polygons() const noexcept { return polygons_; }

  /// Indices of polygons whose bounding box contains `lonlat`.
  std::vector<std::size_t> candidates(const Point& lonlat) const;

  const ZonePolygon* find(const std::string& code) const;

 private:
  struct Tree;
  std::vector<ZonePolygon> polygons_;
  std::map<std::string, std::size_t> by_code_;
  std::unique_ptr<Tree> tree_;
};

/// Zone whose polygon contains the point (boundary inclusive). When several
/// do, the smallest ZoneId wins. nullopt when none does.
std::optional<ZoneId> assign_zone(const Point& lonlat, const ZoneIndex& index);

/// Same contract by scanning every polygon; reference for the indexed path.
std::optional<ZoneId> assign_zone_linear(const Point& lonlat,
                                         const std::vector<ZonePolygon>& polygons);

}  // namespace lid::spatial
