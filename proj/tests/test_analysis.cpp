#include <catch2/catch_amalgamated.hpp>

#include "polycover/analysis.hpp"

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

Polytope3 square_pyramid() {
  return convex_hull3({lp(1, 1, 0), lp(1, -1, 0), lp(-1, 1, 0), lp(-1, -1, 0), lp(0, 0, 1)});
}

struct Rng {
  uint64_t s;
  uint64_t next() {
    s += 0x9e3779b97f4a7c15ULL;
    uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  long long in_range(long long lo, long long hi) {
    return lo + static_cast<long long>(next() % static_cast<uint64_t>(hi - lo + 1));
  }
};

// n-fold sumset oracle, built by repeated explicit Minkowski sums.
std::vector<LatticePoint> sumset_oracle(const std::vector<LatticePoint>& s, int n) {
  std::vector<LatticePoint> acc = s;
  for (int k = 1; k < n; ++k) acc = minkowski_sum_points(acc, s);
  return acc;
}

std::array<LatticePoint, 4> random_unimodular_simplex(Rng& rng) {
  std::array<LatticePoint, 4> s = {lp(0, 0, 0), lp(1, 0, 0), lp(0, 1, 0), lp(0, 0, 1)};
  LatticePoint shift{Int(rng.in_range(-3, 3)), Int(rng.in_range(-3, 3)),
                     Int(rng.in_range(-3, 3))};
  for (int t = 0; t < 6; ++t) {
    int i = 1 + static_cast<int>(rng.next() % 3);
    int j = 1 + static_cast<int>(rng.next() % 3);
    if (i == j) continue;
    Int f(rng.in_range(-2, 2));
    // shear the edge vectors, keeping the simplex unimodular
    s[static_cast<size_t>(i)] = s[static_cast<size_t>(i)] +
                                f * (s[static_cast<size_t>(j)] - s[0]);
  }
  for (auto& v : s) v += shift;
  return s;
}

}  // namespace

TEST_CASE("check_simple") {
  CHECK(check_simple(cube(1)));
  CHECK_FALSE(check_simple(square_pyramid()));  // apex has degree 4
  CHECK(check_simple(cex_simplex()));
}

TEST_CASE("check_smooth") {
  CHECK(check_smooth(cube(1)).is_smooth);

  SmoothnessReport r = check_smooth(cex_simplex());
  CHECK(r.is_simple);
  CHECK_FALSE(r.is_smooth);
  bool origin_offends = false;
  for (const auto& o : r.offenders) {
    if (cex_simplex().vertices[static_cast<size_t>(o.vertex)] == lp(0, 0, 0)) {
      origin_offends = true;
      CHECK(abs(o.det) == 2);
    }
  }
  CHECK(origin_offends);

  SmoothnessReport pyr = check_smooth(square_pyramid());
  CHECK_FALSE(pyr.is_simple);
  CHECK_FALSE(pyr.is_smooth);
}

TEST_CASE("central symmetry") {
  CentralSymmetry c = check_centrally_symmetric(cube(1));
  CHECK(c.symmetric);
  CHECK(c.origin_centered);
  CHECK(*c.center == RationalPoint{Rat(0), Rat(0), Rat(0)});

  CentralSymmetry s = check_centrally_symmetric(cex_simplex());
  CHECK_FALSE(s.symmetric);
  CHECK_FALSE(s.center.has_value());

  std::vector<LatticePoint> shifted;
  for (int sx : {-1, 1})
    for (int sy : {-1, 1})
      for (int sz : {-1, 1}) shifted.push_back(lp(sx + 1, sy, sz));
  CentralSymmetry t = check_centrally_symmetric(convex_hull3(shifted));
  CHECK(t.symmetric);
  CHECK_FALSE(t.origin_centered);
  CHECK(*t.center == RationalPoint{Rat(1), Rat(0), Rat(0)});
}

TEST_CASE("vertex parallelepipeds") {
  Polytope3 c = cube(1);
  for (int i = 0; i < static_cast<int>(c.vertices.size()); ++i)
    CHECK(vertex_parallelepiped_empty(c, i));

  Polytope3 s = cex_simplex();
  int origin = *s.vertex_index(lp(0, 0, 0));
  CHECK_FALSE(vertex_parallelepiped_empty(s, origin));

  // exhibit a non-corner lattice point of that parallelepiped
  Parallelepiped q{lp(0, 0, 0), lp(1, 0, 0), lp(0, 0, 1), lp(1, 2, 1)};
  auto pts = q.lattice_points();
  CHECK(pts.size() > 8);

  Polytope3 pyr = square_pyramid();
  int apex = *pyr.vertex_index(lp(0, 0, 1));
  CHECK_THROWS_MATCHES(vertex_parallelepiped_empty(pyr, apex), Error,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::StartsWith("NotSimpleVertex")));
}

TEST_CASE("idp_check finds the witness of the non-IDP simplex") {
  IdpReport r = idp_check(cex_simplex(), 2);
  CHECK(r.checked_up_to == 2);
  CHECK_FALSE(r.idp_up_to);
  REQUIRE(r.failure.has_value());
  CHECK(r.failure->n == 2);
  CHECK(r.failure->witness == lp(1, 1, 1));

  // independent re-check of the witness
  auto s1 = lattice_points(cex_simplex());
  auto s2 = sumset_oracle(s1, 2);
  auto t2 = lattice_points(dilate(cex_simplex(), 2));
  CHECK(std::binary_search(t2.begin(), t2.end(), lp(1, 1, 1)));
  CHECK_FALSE(std::binary_search(s2.begin(), s2.end(), lp(1, 1, 1)));
}

TEST_CASE("idp_check passes on IDP polytopes") {
  CHECK(idp_check(cube(1), 3).idp_up_to);
  Polytope3 uni = convex_hull3({lp(0, 0, 0), lp(1, 0, 0), lp(0, 1, 0), lp(0, 0, 1)});
  CHECK(idp_check(uni, 4).idp_up_to);
}

TEST_CASE("idp_check agrees with the sumset oracle") {
  for (const Polytope3& p : {cube(1), cex_simplex(),
                             convex_hull3({lp(0, 0, 0), lp(1, 0, 0), lp(0, 1, 0), lp(1, 1, 2)})}) {
    IdpReport r = idp_check(p, 3);
    auto s1 = lattice_points(p);
    bool oracle_ok = true;
    Int oracle_n(0);
    LatticePoint oracle_witness;
    for (int k = 2; k <= 3 && oracle_ok; ++k) {
      auto sk = sumset_oracle(s1, k);
      for (const LatticePoint& q : lattice_points(dilate(p, k))) {
        if (!std::binary_search(sk.begin(), sk.end(), q)) {
          oracle_ok = false;
          oracle_n = k;
          oracle_witness = q;
          break;
        }
      }
    }
    CHECK(r.idp_up_to == oracle_ok);
    if (!oracle_ok) {
      REQUIRE(r.failure.has_value());
      CHECK(r.failure->n == oracle_n);
      CHECK(r.failure->witness == oracle_witness);
    }
  }
}

TEST_CASE("minkowski pair check") {
  auto [ok1, w1] = minkowski_pair_check(cex_simplex(), cex_simplex());
  CHECK_FALSE(ok1);
  REQUIRE(w1.has_value());
  CHECK(*w1 == lp(1, 1, 1));

  auto [ok2, w2] = minkowski_pair_check(cube(1), cube(1));
  CHECK(ok2);
  CHECK_FALSE(w2.has_value());

  // brute-force oracle for the cube pair: both sides enumerated explicitly
  auto cpts = lattice_points(cube(1));
  auto sums = sumset_oracle(cpts, 2);
  CHECK(sums == lattice_points(dilate(cube(1), 2)));

  // summing with a single point is a translation and always decomposes
  std::vector<LatticePoint> pt = {lp(9, -4, 2)};
  Polytope3 cexp = cex_simplex();
  bool all_ok = true;
  for (const LatticePoint& x :
       lattice_points(convex_hull3(minkowski_sum_points(pt, cexp.vertices))))
    if (!cexp.contains(x - pt[0])) all_ok = false;
  CHECK(all_ok);
}

TEST_CASE("decompose_in_simplex") {
  std::array<LatticePoint, 4> s = {lp(0, 0, 0), lp(1, 0, 0), lp(0, 1, 0), lp(0, 0, 1)};
  DecompositionWitness w = decompose_in_simplex(s, lp(1, 1, 0), 2);
  std::vector<LatticePoint> parts = w.parts;
  std::sort(parts.begin(), parts.end());
  CHECK(parts == std::vector<LatticePoint>{lp(0, 1, 0), lp(1, 0, 0)});

  DecompositionWitness z = decompose_in_simplex(s, lp(0, 0, 0), 3);
  CHECK(z.parts == std::vector<LatticePoint>(3, lp(0, 0, 0)));

  CHECK_THROWS_MATCHES(decompose_in_simplex(s, lp(3, 0, 0), 2), Error,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::StartsWith("OutsideDilate")));
  std::array<LatticePoint, 4> bad = {lp(0, 0, 0), lp(1, 0, 0), lp(0, 0, 1), lp(1, 2, 1)};
  CHECK_THROWS_MATCHES(decompose_in_simplex(bad, lp(0, 0, 0), 1), Error,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::StartsWith("NotUnimodular")));
}

TEST_CASE("decompose_in_simplex property") {
  Rng rng{77};
  for (int t = 0; t < 25; ++t) {
    auto s = random_unimodular_simplex(rng);
    Polytope3 sp = convex_hull3({s[0], s[1], s[2], s[3]});
    for (Int n = 1; n <= 3; ++n) {
      for (const LatticePoint& p : lattice_points(dilate(sp, n))) {
        DecompositionWitness w = decompose_in_simplex(s, p, n);
        REQUIRE(w.parts.size() == n);
        LatticePoint sum = lp(0, 0, 0);
        for (const LatticePoint& q : w.parts) {
          sum += q;
          CHECK(sp.contains(q));
        }
        CHECK(sum == p);
      }
    }
  }
}

TEST_CASE("decompose_in_parallelepiped") {
  Parallelepiped unit{lp(0, 0, 0), lp(1, 0, 0), lp(0, 1, 0), lp(0, 0, 1)};
  DecompositionWitness w = decompose_in_parallelepiped(unit, lp(1, 2, 1), 2);
  REQUIRE(w.parts.size() == 2);
  CHECK(w.parts[0] + w.parts[1] == lp(1, 2, 1));
  CHECK(unit.contains_dilated(w.parts[0], 1));
  CHECK(unit.contains_dilated(w.parts[1], 1));

  // conv(D, -D) for D the top unit square of the cube anchored at (0,0,1)
  Parallelepiped cs{lp(-1, -1, -1), lp(1, 0, 0), lp(0, 1, 0), lp(1, 1, 2)};
  CHECK(abs(cs.det()) == 2);
  DecompositionWitness w0 = decompose_in_parallelepiped(cs, lp(0, 0, 0), 1);
  CHECK(w0.parts == std::vector<LatticePoint>{lp(0, 0, 0)});

  CHECK_THROWS_MATCHES(decompose_in_parallelepiped(unit, lp(5, 0, 0), 2), Error,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::StartsWith("OutsideDilate")));
}

TEST_CASE("decompose_in_parallelepiped property") {
  std::vector<Parallelepiped> qs = {
      {lp(0, 0, 0), lp(1, 0, 0), lp(0, 1, 0), lp(0, 0, 1)},
      {lp(-1, -1, -1), lp(1, 0, 0), lp(0, 1, 0), lp(1, 1, 2)},
      {lp(2, -1, 0), lp(1, 1, 0), lp(0, 1, 1), lp(1, 0, 2)},
  };
  for (const Parallelepiped& q : qs) {
    auto q1 = q.lattice_points();
    for (Int n = 1; n <= 3; ++n) {
      // enumerate n*Q exactly
      Parallelepiped nq{n * q.anchor, n * q.e1, n * q.e2, n * q.e3};
      for (const LatticePoint& p : nq.lattice_points()) {
        DecompositionWitness w = decompose_in_parallelepiped(q, p, n);
        REQUIRE(w.parts.size() == n);
        LatticePoint sum = lp(0, 0, 0);
        for (const LatticePoint& part : w.parts) {
          sum += part;
          CHECK(std::binary_search(q1.begin(), q1.end(), part));
        }
        CHECK(sum == p);
      }
    }
  }
}

TEST_CASE("origin-centered polytopes contain 0 with margin") {
  Polytope3 c = cube(2);
  CHECK(check_centrally_symmetric(c).origin_centered);
  CHECK(c.contains(lp(0, 0, 0)));
  for (const Facet& f : c.facets) CHECK(f.offset <= -1);
}
