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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <random>

#include "lid/core/error.hpp"
#include "lid/spatial/geojson.hpp"
#include "lid/spatial/geometry.hpp"
#include "lid/spatial/units.hpp"
#include "lid/spatial/zone_index.hpp"
#include "support.hpp"

using namespace lid;
using spatial::assign_zone;
using spatial::assign_zone_linear;

namespace {

Ring ring_of(std::vector<Point> pts, bool hole = false) {
  pts.push_back(pts.front());
  return Ring{std::move(pts), hole};
}

ZonePolygon square(const std::string& code, const std::string& state, double x, double y, double side) {
  ZonePolygon p;
  p.zone = ZoneId(code, state);
  p.rings = {ring_of({{x, y}, {x + side, y}, {x + side, y + side}, {x, y + side}})};
  p.land_area_m2 = 1.0;
  return p;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kIo;
}

std::vector<ZonePolygon> fixture_polygons() {
  return spatial::read_polygons(test::pipeline_fixture() / "zones.geojson",
                                {"ZCTA5CE10", "STUSPS", "ALAND10"});
}

/// Star-shaped polygon with `k` random radii around a centre.
ZonePolygon random_star(std::mt19937_64& gen, const std::string& code) {
  std::uniform_real_distribution<double> c(0.0, 1.0);
  std::uniform_real_distribution<double> r(0.02, 0.2);
  std::uniform_int_distribution<int> k(3, 9);
  const Point centre(c(gen), c(gen));
  const int n = k(gen);
  std::vector<Point> pts;
  for (int i = 0; i < n; ++i) {
    const double a = 2 * std::numbers::pi * i / n;
    const double rad = r(gen);
    pts.emplace_back(centre.x() + rad * std::cos(a), centre.y() + rad * std::sin(a));
  }
  ZonePolygon p;
  p.zone = ZoneId(code, "MA");
  p.rings = {ring_of(pts)};
  p.land_area_m2 = 1.0;
  return p;
}

}  // namespace

TEST_SUITE("containment") {
  TEST_CASE("centroid inside, far point outside") {
    const spatial::ZoneIndex index({square("02139", "MA", 0, 0, 1)});
    CHECK(assign_zone({0.5, 0.5}, index) == ZoneId("02139", "MA"));
    CHECK_FALSE(assign_zone({2.5, 0.5}, index));
  }

  TEST_CASE("shared edge and shared vertex go to the smaller code") {
    const spatial::ZoneIndex index({square("10003", "NY", 1, 0, 1), square("10001", "NY", 0, 0, 1),
                                    square("10002", "NY", 0, 1, 1)});
    CHECK(assign_zone({1.0, 0.5}, index)->code() == "10001");
    CHECK(assign_zone({1.0, 1.0}, index)->code() == "10001");
    CHECK(assign_zone({1.5, 1.0}, index)->code() == "10003");
    CHECK(assign_zone({2.0, 0.5}, index)->code() == "10003");
    CHECK(assign_zone({0.5, 2.0}, index)->code() == "10002");
  }

  TEST_CASE("holes exclude their interior and keep their boundary") {
    ZonePolygon p = square("02139", "MA", 0, 0, 4);
    p.rings.push_back(ring_of({{1, 1}, {1, 3}, {3, 3}, {3, 1}}, true));
    const spatial::ZoneIndex index({p});
    CHECK_FALSE(assign_zone({2, 2}, index));
    CHECK(assign_zone({1, 2}, index));
    CHECK(assign_zone({0.5, 2}, index));
  }

  TEST_CASE("frozen point oracle over the fixture polygons, 1000 points") {
    const spatial::ZoneIndex index(fixture_polygons());
    const auto rows = test::read_tsv(test::oracle_dir() / "spatial_points.tsv");
    REQUIRE(rows.size() == 1001);
    std::size_t agree = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const Point pt(std::stod(rows[i][0]), std::stod(rows[i][1]));
      const auto got = assign_zone(pt, index);
      const std::string code = got ? got->code() : "NA";
      CAPTURE(rows[i][0]);
      CAPTURE(rows[i][1]);
      CHECK(code == rows[i][2]);
      agree += code == rows[i][2];
    }
    CHECK(agree == 1000);
  }

  TEST_CASE("indexed lookup equals the linear scan on random polygon sets") {
    std::mt19937_64 gen(42);
    std::uniform_real_distribution<double> u(-0.1, 1.1);
    for (int set = 0; set < 10; ++set) {
      std::vector<ZonePolygon> polys;
      for (int i = 0; i < 40; ++i) {
        char code[6];
        std::snprintf(code, sizeof code, "%05d", 1000 + i * 7 + set);
        polys.push_back(random_star(gen, code));
      }
      const spatial::ZoneIndex index(polys);
      for (int k = 0; k < 1000; ++k) {
        const Point pt(u(gen), u(gen));
        CHECK(assign_zone(pt, index) == assign_zone_linear(pt, polys));
        for (auto c : index.candidates(pt)) {
          const auto [lo, hi] = spatial::bounding_box(index.polygons()[c].rings);
          CHECK((pt.x() >= lo.x() && pt.x() <= hi.x() && pt.y() >= lo.y() && pt.y() <= hi.y()));
        }
      }
      // Every polygon is reachable through the tree.
      for (std::size_t i = 0; i < polys.size(); ++i) {
        const Point first = polys[i].rings[0].vertices[0];
        const auto c = index.candidates(first);
        CHECK(std::find(c.begin(), c.end(), i) != c.end());
      }
    }
  }

  TEST_CASE("lookup by code") {
    const spatial::ZoneIndex index(fixture_polygons());
    REQUIRE(index.find("02108"));
    CHECK(index.find("02108")->zone.state() == "MA");
    CHECK(index.find("99999") == nullptr);
  }
}

TEST_SUITE("area") {
  TEST_CASE("unit square in metres is 1") {
    CHECK(spatial::planar_area({ring_of({{0, 0}, {1, 0}, {1, 1}, {0, 1}})}) == doctest::Approx(1.0).epsilon(1e-6));
  }

  TEST_CASE("square with a centred half-size hole is 0.75") {
    const std::vector<Ring> rings{ring_of({{0, 0}, {1, 0}, {1, 1}, {0, 1}}),
                                  ring_of({{0.25, 0.25}, {0.25, 0.75}, {0.75, 0.75}, {0.75, 0.25}}, true)};
    CHECK(std::abs(spatial::planar_area(rings) - 0.75) <= 1e-6);
  }

  TEST_CASE("irregular hexagon matches the frozen shoelace value") {
    const auto rows = test::read_tsv(test::oracle_dir() / "hexagon.tsv");
    std::vector<Point> pts;
    for (std::size_t i = 1; i < rows.size(); ++i) pts.emplace_back(std::stod(rows[i][0]), std::stod(rows[i][1]));
    const auto text = read_file(test::oracle_dir() / "hexagon.tsv");
    const double expect = std::stod(text.substr(text.find("# area\t") + 7));
    CHECK(std::abs(spatial::planar_area({ring_of(pts)}) - expect) <= 1e-6);
    // Orientation does not matter.
    std::reverse(pts.begin(), pts.end());
    CHECK(std::abs(spatial::planar_area({ring_of(pts)}) - expect) <= 1e-6);
  }

  TEST_CASE("degenerate rings are rejected") {
    CHECK(code_of([] { spatial::check_ring(Ring{{{0, 0}, {1, 0}, {0, 0}}}); }) == ErrorCode::kDegenerateRing);
    CHECK(code_of([] { spatial::check_ring(Ring{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}}); }) ==
          ErrorCode::kDegenerateRing);
  }

  TEST_CASE("equal-area projection round-trips") {
    const spatial::Vec2<double> centre(-71.1, 42.36);
    for (const spatial::Vec2<double> p : {spatial::Vec2<double>(-71.2, 42.3), spatial::Vec2<double>(-70.9, 42.5)}) {
      const auto back = spatial::unproject_equal_area<double>(spatial::project_equal_area<double>(p, centre), centre);
      CHECK((back - p).norm() < 1e-10);
    }
  }

  TEST_CASE("a 0.01 degree cell at 42N is about 0.9 km^2") {
    const auto p = square("02139", "MA", -71.1, 42.0, 0.01);
    const double a = spatial::polygon_area_m2(p);
    const double expect = std::pow(6371007.1809 * std::numbers::pi / 180 * 0.01, 2) * std::cos(42.005 * std::numbers::pi / 180);
    CHECK(a == doctest::Approx(expect).epsilon(1e-3));
  }

  TEST_CASE("area is additive over disjoint pieces") {
    const auto a = square("01001", "MA", -71.10, 42.30, 0.02);
    const auto b = square("01002", "MA", -71.08, 42.30, 0.02);
    ZonePolygon both = a;
    both.rings = {ring_of({{-71.10, 42.30}, {-71.06, 42.30}, {-71.06, 42.32}, {-71.10, 42.32}})};
    const double sum = spatial::polygon_area_m2(a) + spatial::polygon_area_m2(b);
    CHECK(std::abs(sum - spatial::polygon_area_m2(both)) <= 1e-6 * sum);
    ZonePolygon parts = a;
    parts.rings.push_back(b.rings[0]);
    CHECK(std::abs(spatial::polygon_area_m2(parts) - sum) <= 1e-6 * sum);
  }
}

TEST_SUITE("units") {
  TEST_CASE("acres") {
    CHECK(spatial::acres(4046.8564224) == 1.0);
    CHECK(spatial::acres(0.0) == 0.0);
    CHECK(std::abs(spatial::acres(10000.0) - 2.47105) <= 1e-5);
    for (double x : {1.0, 123.456, 8093.7, 1e9}) {
      CHECK(std::abs(spatial::acres(x) * spatial::kSquareMetresPerAcre - x) <= 1e-12 * x);
    }
  }

  TEST_CASE("density follows the table-note formula") {
    CHECK(spatial::population_density(1000, 1000000) == 1000.0);
    CHECK(spatial::population_density(0, 12345) == 0.0);
    CHECK(spatial::population_density(0, 0) == 0.0);
    CHECK(spatial::population_density(2500, 5000000) == 500.0);
    CHECK_FALSE(spatial::population_density(10, 0));
    CHECK(*spatial::population_density(1000, 1000000, spatial::DensityUnit::kPerSquareMile) ==
          doctest::Approx(2589.988110336));
    CHECK(spatial::parse_density_unit("per_square_mile") == spatial::DensityUnit::kPerSquareMile);
    CHECK(spatial::density_unit_name(spatial::DensityUnit::kTableNote) == "table_note");
    CHECK_FALSE(spatial::parse_density_unit("furlongs"));
  }
}

TEST_SUITE("geojson") {
  TEST_CASE("fixture polygons read with renamed keys") {
    const auto polys = fixture_polygons();
    CHECK(polys.size() == 21);
    const auto it = std::find_if(polys.begin(), polys.end(), [](const auto& p) { return p.zone.code() == "02108"; });
    REQUIRE(it != polys.end());
    CHECK(it->land_area_m2 == 1000000.0);
    const auto hole = std::find_if(polys.begin(), polys.end(), [](const auto& p) { return p.zone.code() == "02139"; });
    REQUIRE(hole->rings.size() == 2);
    CHECK(hole->rings[1].hole);
  }

  TEST_CASE("land area computed when the property is absent") {
    const auto doc = nlohmann::json::parse(R"({"type":"FeatureCollection","features":[
      {"type":"Feature","properties":{"zone":"02139","state":"MA"},
       "geometry":{"type":"Polygon","coordinates":[[[-71.1,42.0],[-71.09,42.0],[-71.09,42.01],[-71.1,42.01],[-71.1,42.0]]]}}]})");
    const auto polys = spatial::read_polygons(doc);
    REQUIRE(polys.size() == 1);
    CHECK(polys[0].land_area_m2 == doctest::Approx(spatial::polygon_area_m2(polys[0])));
    CHECK(polys[0].land_area_m2 > 800000.0);
  }

  TEST_CASE("numeric zone codes are zero padded") {
    const auto doc = nlohmann::json::parse(R"({"type":"FeatureCollection","features":[
      {"type":"Feature","properties":{"zone":2139,"state":"MA","aland":5},
       "geometry":{"type":"Polygon","coordinates":[[[0,0],[1,0],[1,1],[0,0]]]}}]})");
    CHECK(spatial::read_polygons(doc)[0].zone.code() == "02139");
  }

  TEST_CASE("invalid input is rejected") {
    CHECK(code_of([] { spatial::read_polygons(nlohmann::json::parse(R"({"type":"Feature"})")); }) ==
          ErrorCode::kInvalidGeometry);
    const auto open_ring = nlohmann::json::parse(R"({"type":"FeatureCollection","features":[
      {"type":"Feature","properties":{"zone":"02139","state":"MA"},
       "geometry":{"type":"Polygon","coordinates":[[[0,0],[1,0],[1,1],[0,1]]]}}]})");
    CHECK(code_of([&] { spatial::read_polygons(open_ring); }) == ErrorCode::kDegenerateRing);
    const auto no_state = nlohmann::json::parse(R"({"type":"FeatureCollection","features":[
      {"type":"Feature","properties":{"zone":"02139"},
       "geometry":{"type":"Polygon","coordinates":[[[0,0],[1,0],[1,1],[0,0]]]}}]})");
    CHECK(code_of([&] { spatial::read_polygons(no_state); }) == ErrorCode::kInvalidGeometry);
  }

  TEST_CASE("geometry output orients exteriors CCW and holes CW") {
    const auto polys = fixture_polygons();
    const auto hole = std::find_if(polys.begin(), polys.end(), [](const auto& p) { return p.zone.code() == "02139"; });
    const auto g = spatial::polygon_geometry(*hole);
    CHECK(g["type"] == "Polygon");
    auto signed_area = [](const nlohmann::json& ring) {
      std::vector<spatial::Vec2<double>> v;
      for (const auto& p : ring) v.emplace_back(p[0].get<double>(), p[1].get<double>());
      return spatial::signed_ring_area<double>(v);
    };
    CHECK(signed_area(g["coordinates"][0]) > 0);
    CHECK(signed_area(g["coordinates"][1]) < 0);
  }
}
