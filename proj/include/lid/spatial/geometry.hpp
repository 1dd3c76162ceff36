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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "lid/core/zone.hpp"

namespace lid::spatial {

template <typename Scalar>
using Vec2 = Eigen::Matrix<Scalar, 2, 1>;

/// WGS84 authalic sphere radius (metres).
inline constexpr double kAuthalicRadius = 6371007.1809;

template <typename Scalar>
Scalar cross2(const Vec2<Scalar>& a, const Vec2<Scalar>& b) {
  return a.x() * b.y() - a.y() * b.x();
}

/// True when `p` lies on the closed segment [a, b].
template <typename Scalar>
bool on_segment(const Vec2<Scalar>& a, const Vec2<Scalar>& b, const Vec2<Scalar>& p) {
  if (cross2<Scalar>(b - a, p - a) != Scalar{0}) return false;
  return p.x() >= std::min(a.x(), b.x()) && p.x() <= std::max(a.x(), b.x()) &&
         p.y() >= std::min(a.y(), b.y()) && p.y() <= std::max(a.y(), b.y());
}

/// Signed shoelace area of a closed ring (counter-clockwise positive).
template <typename Scalar>
Scalar signed_ring_area(std::span<const Vec2<Scalar>> ring) {
  Scalar twice{0};
  for (std::size_t i = 0; i + 1 < ring.size(); ++i) twice += cross2<Scalar>(ring[i], ring[i + 1]);
  return twice / Scalar{2};
}

/// Even-odd containment over every ring; a point on any edge is inside.
template <typename Scalar>
bool rings_contain(const std::vector<Ring>& rings, const Vec2<Scalar>& p) {
  bool inside = false;
  for (const auto& ring : rings) {
    const auto& v = ring.vertices;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
      const Vec2<Scalar> a = v[i].template cast<Scalar>();
      const Vec2<Scalar> b = v[i + 1].template cast<Scalar>();
      if (on_segment<Scalar>(a, b, p)) return true;
      if ((a.y() > p.y()) != (b.y() > p.y()) &&
          p.x() < (b.x() - a.x()) * (p.y() - a.y()) / (b.y() - a.y()) + a.x()) {
        inside = !inside;
      }
    }
  }
  return inside;
}

/// Lambert azimuthal equal-area projection on the authalic sphere about
/// `center` (lon, lat degrees). Returns planar metres.
template <typename Scalar>
Vec2<Scalar> project_equal_area(const Vec2<Scalar>& lonlat, const Vec2<Scalar>& center) {
  constexpr Scalar kDeg = std::numbers::pi_v<Scalar> / Scalar{180};
  const Scalar lam = (lonlat.x() - center.x()) * kDeg;
  const Scalar phi = lonlat.y() * kDeg;
  const Scalar phi0 = center.y() * kDeg;
  const Scalar k = std::sqrt(Scalar{2} / (Scalar{1} + std::sin(phi0) * std::sin(phi) +
                                          std::cos(phi0) * std::cos(phi) * std::cos(lam)));
  const Scalar r = static_cast<Scalar>(kAuthalicRadius);
  return {r * k * std::cos(phi) * std::sin(lam),
          r * k * (std::cos(phi0) * std::sin(phi) - std::sin(phi0) * std::cos(phi) * std::cos(lam))};
}

/// Inverse of project_equal_area.
template <typename Scalar>
Vec2<Scalar> unproject_equal_area(const Vec2<Scalar>& xy, const Vec2<Scalar>& center) {
  constexpr Scalar kDeg = std::numbers::pi_v<Scalar> / Scalar{180};
  const Scalar r = static_cast<Scalar>(kAuthalicRadius);
  const Scalar phi0 = center.y() * kDeg;
  const Scalar rho = xy.norm();
  if (rho == Scalar{0}) return center;
  const Scalar c = Scalar{2} * std::asin(rho / (Scalar{2} * r));
  const Scalar phi =
      std::asin(std::cos(c) * std::sin(phi0) + xy.y() * std::sin(c) * std::cos(phi0) / rho);
  const Scalar lam = std::atan2(xy.x() * std::sin(c), rho * std::cos(phi0) * std::cos(c) -
                                                         xy.y() * std::sin(phi0) * std::sin(c));
  return {center.x() + lam / kDeg, phi / kDeg};
}

/// Throws Error(kDegenerateRing) unless the ring is closed with >= 4 vertices.
void check_ring(const Ring& ring);

/// Outer areas minus hole areas for rings already in planar metres.
double planar_area(const std::vector<Ring>& rings);

/// Area of a lon/lat polygon: equal-area projection about the centre of its
/// bounding box, then shoelace. Holes are subtracted.
double polygon_area_m2(const ZonePolygon& polygon);

/// Bounding box as (min, max) corners.
std::pair<Point, Point> bounding_box(const std::vector<Ring>& rings);

}  // namespace lid::spatial
