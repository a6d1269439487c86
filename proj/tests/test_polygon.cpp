#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "polycover/polygon.hpp"

using namespace polycover;

namespace {

LatticePoint lp(long long x, long long y, long long z) { return {Int(x), Int(y), Int(z)}; }

Polytope3 cube(long long n) {
  std::vector<LatticePoint> pts;
  for (int sx : {-1, 1})
    for (int sy : {-1, 1})
      for (int sz : {-1, 1}) pts.push_back(lp(sx * n, sy * n, sz * n));
  return convex_hull3(pts);
}

Polytope3 cex_simplex() {
  return convex_hull3({lp(0, 0, 0), lp(1, 0, 0), lp(0, 0, 1), lp(1, 2, 1)});
}

bool on_some_edge(const Polytope3& p, const RationalPoint& x) {
  for (const EdgeRec& e : p.edges) {
    RationalPoint a = to_rational(p.vertices[static_cast<size_t>(e.a)]);
    RationalPoint b = to_rational(p.vertices[static_cast<size_t>(e.b)]);
    RationalPoint d = {b.x - a.x, b.y - a.y, b.z - a.z};
    RationalPoint w = {x.x - a.x, x.y - a.y, x.z - a.z};
    if (!cross(d, w).is_zero()) continue;
    Rat t = d.x != 0 ? w.x / d.x : (d.y != 0 ? w.y / d.y : w.z / d.z);
    if (t >= 0 && t <= 1) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("special values on pinned inputs") {
  Polytope3 c = cube(1);
  CHECK(special_values(c, {lp(1, 1, 1)}) == std::vector<Int>{Int(-3), Int(-1), Int(1), Int(3)});
  CHECK(special_values(c, {lp(0, 0, 1)}) == std::vector<Int>{Int(-1), Int(1)});
  CHECK(special_values(cex_simplex(), {lp(0, 1, 0)}) == std::vector<Int>{Int(0), Int(2)});
}

TEST_CASE("hexagon slice of the cube") {
  Polytope3 c = cube(1);
  RationalPolygon h = slice(c, {lp(1, 1, 1)}, 0);
  REQUIRE(h.vertices.size() == 6);
  std::set<std::array<long long, 3>> got;
  for (const RationalPoint& v : h.vertices) {
    CHECK(is_lattice(v));
    CHECK(on_some_edge(c, v));  // every hexagon vertex lies on a cube edge
    CHECK(dot(lp(1, 1, 1), v) == 0);
    LatticePoint w = to_lattice(v);
    got.insert({w.x.convert_to<long long>(), w.y.convert_to<long long>(),
                w.z.convert_to<long long>()});
  }
  std::set<std::array<long long, 3>> expect = {{1, -1, 0}, {1, 0, -1}, {-1, 1, 0},
                                               {0, 1, -1}, {-1, 0, 1}, {0, -1, 1}};
  CHECK(got == expect);
}

TEST_CASE("facet-level and vertex-level slices") {
  Polytope3 c = cube(1);
  RationalPolygon top = slice(c, {lp(0, 0, 1)}, 1);
  REQUIRE(top.vertices.size() == 4);
  for (const RationalPoint& v : top.vertices) CHECK(v.z == 1);

  RationalPolygon corner = slice(c, {lp(1, 1, 1)}, 3);
  REQUIRE(corner.is_point());
  CHECK(corner.vertices[0] == to_rational(lp(1, 1, 1)));

  CHECK_THROWS_MATCHES(slice(c, {lp(1, 1, 1)}, 4), Error,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::StartsWith("EmptySlice")));
}

TEST_CASE("slice vertices satisfy the slice plane and membership") {
  Polytope3 c = cube(2);
  for (const LatticePoint& a : {lp(1, 1, 1), lp(1, 0, 0), lp(2, 1, 0), lp(1, -1, 2)}) {
    auto specials = special_values(c, {a});
    for (Rat cval :
         {Rat(specials.front()), (Rat(specials.front()) + Rat(specials.back())) / 2,
          Rat(specials.front()) + Rat(1, 3)}) {
      RationalPolygon q = slice(c, {a}, cval);
      for (const RationalPoint& v : q.vertices) {
        CHECK(dot(a, v) == cval);
        CHECK(c.contains(v));
      }
    }
  }
}

TEST_CASE("is_lattice_polygon") {
  Polytope3 c = cube(1);
  CHECK(is_lattice_polygon(slice(c, {lp(1, 1, 1)}, 0)));
  CHECK_FALSE(is_lattice_polygon(slice(c, {lp(1, 1, 1)}, Rat(1) / 2)));
  CHECK(is_lattice_polygon(slice(c, {lp(1, 1, 1)}, 3)));  // single lattice point
}

TEST_CASE("facet polygons and chart round-trips") {
  Polytope3 c = cube(1);
  for (int fi = 0; fi < static_cast<int>(c.facets.size()); ++fi) {
    EmbeddedPolygon e = facet_polygon(c, fi);
    REQUIRE(e.vertices2d.size() == 4);
    CHECK(e.area2() == 8);  // 2*(2x2)

    const Facet& f = c.facets[static_cast<size_t>(fi)];
    std::set<std::array<long long, 3>> want, got;
    for (int id : f.vertices) {
      const LatticePoint& v = c.vertices[static_cast<size_t>(id)];
      want.insert({v.x.convert_to<long long>(), v.y.convert_to<long long>(),
                   v.z.convert_to<long long>()});
    }
    for (const GridPoint& q : e.vertices2d) {
      LatticePoint v = e.to_3d(q);
      CHECK(f.normal(v) == f.offset);
      got.insert({v.x.convert_to<long long>(), v.y.convert_to<long long>(),
                  v.z.convert_to<long long>()});
    }
    CHECK(want == got);

    // chart counterclockwise: positive area and strict convexity
    CHECK(e.area2() > 0);
    CHECK(e.lattice_points2d().size() == 9);
  }
}

TEST_CASE("normal fans of pinned polygons") {
  std::vector<GridPoint> square = {{Int(0), Int(0)}, {Int(1), Int(0)}, {Int(1), Int(1)},
                                   {Int(0), Int(1)}};
  NormalFan2 fs = normal_fan2(square);
  std::vector<GridPoint> expect = {{Int(1), Int(0)}, {Int(0), Int(1)}, {Int(-1), Int(0)},
                                   {Int(0), Int(-1)}};
  CHECK(fs.rays == expect);

  std::vector<GridPoint> tri = {{Int(0), Int(0)}, {Int(1), Int(0)}, {Int(0), Int(1)}};
  NormalFan2 ft = normal_fan2(tri);
  std::vector<GridPoint> expect_t = {{Int(1), Int(1)}, {Int(-1), Int(0)}, {Int(0), Int(-1)}};
  CHECK(ft.rays == expect_t);

  CHECK(slice_fan(cube(1), {lp(1, 1, 1)}, 0).rays.size() == 6);

  std::vector<GridPoint> seg = {{Int(0), Int(0)}, {Int(1), Int(0)}};
  CHECK_THROWS_MATCHES(normal_fan2(seg), Error,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::StartsWith("LowDimensional")));
}

TEST_CASE("fan coarsening on cube slices") {
  Polytope3 c = cube(1);
  NormalFan2 hexagon = slice_fan(c, {lp(1, 1, 1)}, 0);
  NormalFan2 triangle = slice_fan(c, {lp(1, 1, 1)}, 1);
  CHECK(triangle.rays.size() == 3);
  CHECK(fan_coarsens(triangle, hexagon));
  CHECK_FALSE(fan_coarsens(hexagon, triangle));
  CHECK(fan_coarsens(hexagon, hexagon));

  std::vector<GridPoint> square = {{Int(0), Int(0)}, {Int(1), Int(0)}, {Int(1), Int(1)},
                                   {Int(0), Int(1)}};
  std::vector<GridPoint> tri = {{Int(0), Int(0)}, {Int(1), Int(0)}, {Int(0), Int(1)}};
  CHECK_FALSE(fan_coarsens(normal_fan2(square), normal_fan2(tri)));
}

TEST_CASE("fans between consecutive special values coincide") {
  Polytope3 c = cube(2);
  for (const LatticePoint& a : {lp(1, 1, 1), lp(1, 2, 0), lp(1, -1, 1)}) {
    auto sv = special_values(c, {a});
    for (size_t i = 0; i + 1 < sv.size(); ++i) {
      Rat lo(sv[i]), hi(sv[i + 1]);
      Rat c1 = lo + (hi - lo) / 3, c2 = lo + (hi - lo) * 2 / 3;
      NormalFan2 f1 = slice_fan(c, {a}, c1);
      NormalFan2 f2 = slice_fan(c, {a}, c2);
      CHECK(f1 == f2);
      // the fan at the higher special value coarsens the fan just below it
      RationalPolygon at = slice(c, {a}, hi);
      if (at.is_polygon()) CHECK(fan_coarsens(slice_fan(c, {a}, hi), f1));
    }
  }
}
