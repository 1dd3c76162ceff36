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

#include "lid/spatial/geometry.hpp"

#include <limits>

#include "lid/core/error.hpp"

namespace lid::spatial {

void check_ring(const Ring& ring) {
  const auto& v = ring.vertices;
  if (v.size() < 4) {
    throw Error(ErrorCode::kDegenerateRing,
                "ring has " + std::to_string(v.size()) + " vertices, need >= 4");
  }
  if (v.front() != v.back()) throw Error(ErrorCode::kDegenerateRing, "ring is not closed");
  for (const auto& p : v) {
    if (!p.allFinite()) throw Error(ErrorCode::kDegenerateRing, "non-finite vertex");
  }
}

double planar_area(const std::vector<Ring>& rings) {
  double area = 0.0;
  for (const auto& ring : rings) {
    check_ring(ring);
    const double a = std::abs(signed_ring_area<double>(ring.vertices));
    area += ring.hole ? -a : a;
  }
  return std::max(area, 0.0);
}

std::pair<Point, Point> bounding_box(const std::vector<Ring>& rings) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  Point lo(kInf, kInf);
  Point hi(-kInf, -kInf);
  for (const auto& ring : rings) {
    for (const auto& p : ring.vertices) {
      lo = lo.cwiseMin(p);
      hi = hi.cwiseMax(p);
    }
  }
  return {lo, hi};
}

double polygon_area_m2(const ZonePolygon& polygon) {
  if (polygon.rings.empty()) return 0.0;
  for (const auto& ring : polygon.rings) check_ring(ring);
  const auto [lo, hi] = bounding_box(polygon.rings);
  const Point center = (lo + hi) / 2.0;
  std::vector<Ring> projected;
  projected.reserve(polygon.rings.size());
  for (const auto& ring : polygon.rings) {
    Ring out{{}, ring.hole};
    out.vertices.reserve(ring.vertices.size());
    for (const auto& p : ring.vertices) out.vertices.push_back(project_equal_area<double>(p, center));
    projected.push_back(std::move(out));
  }
  return planar_area(projected);
}

}  // namespace lid::spatial
