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

#include "lid/spatial/zone_index.hpp"

#include <boost/geometry.hpp>
#include <boost/geometry/index/rtree.hpp>

#include "lid/spatial/geometry.hpp"
#include "lid/spatial/units.hpp"

namespace bg = boost::geometry;
namespace bgi = boost::geometry::index;

namespace lid::spatial {

std::optional<DensityUnit> parse_density_unit(std::string_view name) {
  if (name == "table_note") return DensityUnit::kTableNote;
  if (name == "per_square_mile") return DensityUnit::kPerSquareMile;
  return std::nullopt;
}

std::string_view density_unit_name(DensityUnit unit) {
  return unit == DensityUnit::kTableNote ? "table_note" : "per_square_mile";
}

using BgPoint = bg::model::point<double, 2, bg::cs::cartesian>;
using BgBox = bg::model::box<BgPoint>;
using Entry = std::pair<BgBox, std::size_t>;

struct ZoneIndex::Tree {
  bgi::rtree<Entry, bgi::quadratic<16>> rtree;
};

ZoneIndex::ZoneIndex(std::vector<ZonePolygon> polygons)
    : polygons_(std::move(polygons)), tree_(std::make_unique<Tree>()) {
  std::vector<Entry> entries;
  entries.reserve(polygons_.size());
  for (std::size_t i = 0; i < polygons_.size(); ++i) {
    const auto [lo, hi] = bounding_box(polygons_[i].rings);
    entries.emplace_back(BgBox(BgPoint(lo.x(), lo.y()), BgPoint(hi.x(), hi.y())), i);
    by_code_.emplace(polygons_[i].zone.code(), i);
  }
  tree_->rtree = decltype(tree_->rtree)(entries.begin(), entries.end());
}

ZoneIndex::~ZoneIndex() = default;
ZoneIndex::ZoneIndex(ZoneIndex&&) noexcept = default;
ZoneIndex& ZoneIndex::operator=(ZoneIndex&&) noexcept = default;

std::vector<std::size_t> ZoneIndex::candidates(const Point& lonlat) const {
  std::vector<Entry> hits;
  const BgPoint q(lonlat.x(), lonlat.y());
  tree_->rtree.query(bgi::covers(q), std::back_inserter(hits));
  std::vector<std::size_t> out;
  out.reserve(hits.size());
  for (const auto& h : hits) out.push_back(h.second);
  std::sort(out.begin(), out.end());
  return out;
}

const ZonePolygon* ZoneIndex::find(const std::string& code) const {
  const auto it = by_code_.find(code);
  return it == by_code_.end() ? nullptr : &polygons_[it->second];
}

std::optional<ZoneId> assign_zone(const Point& lonlat, const ZoneIndex& index) {
  std::optional<ZoneId> best;
  for (auto i : index.candidates(lonlat)) {
    const auto& poly = index.polygons()[i];
    if (rings_contain<double>(poly.rings, lonlat) && (!best || poly.zone < *best)) best = poly.zone;
  }
  return best;
}

std::optional<ZoneId> assign_zone_linear(const Point& lonlat,
                                         const std::vector<ZonePolygon>& polygons) {
  std::optional<ZoneId> best;
  for (const auto& poly : polygons) {
    if (rings_contain<double>(poly.rings, lonlat) && (!best || poly.zone < *best)) best = poly.zone;
  }
  return best;
}

}  // namespace lid::spatial
