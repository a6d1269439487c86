#include <catch2/catch_amalgamated.hpp>

#include "polycover/lattice.hpp"

using namespace polycover;

namespace {

// Independent determinant oracle: signed permutation expansion.
Int det3_oracle(const IntMatrix3& m) {
  int perm[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}, {1, 0, 2}, {0, 2, 1}};
  int sgn[6] = {1, 1, 1, -1, -1, -1};
  Int d = 0;
  for (int k = 0; k < 6; ++k)
    d += sgn[k] * m.at(perm[k][0], 0) * m.at(perm[k][1], 1) * m.at(perm[k][2], 2);
  return d;
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
  Int below(uint64_t k) { return Int(next() % k); }
  Int in_range(int64_t lo, int64_t hi) {
    return Int(lo + static_cast<int64_t>(next() % static_cast<uint64_t>(hi - lo + 1)));
  }
};

IntMatrix3 random_unimodular(Rng& rng, int shears) {
  IntMatrix3 m = IntMatrix3::identity();
  for (int k = 0; k < shears; ++k) {
    int i = static_cast<int>(rng.next() % 3);
    int j = static_cast<int>(rng.next() % 3);
    if (i == j) continue;
    Int f = rng.in_range(-3, 3);
    m.col[static_cast<size_t>(j)] += f * m.col[static_cast<size_t>(i)];
  }
  return m;
}

IntMatrix3 random_matrix(Rng& rng, int64_t bound) {
  IntMatrix3 m;
  for (int c = 0; c < 3; ++c)
    for (int r = 0; r < 3; ++r) m.at(r, c) = rng.in_range(-bound, bound);
  return m;
}

bool is_col_hnf(const IntMatrix3& h) {
  for (int r = 0; r < 3; ++r)
    for (int c = r + 1; c < 3; ++c)
      if (h.at(r, c) != 0) return false;
  for (int r = 0; r < 3; ++r) {
    if (h.at(r, r) < 0) return false;
    if (h.at(r, r) > 0)
      for (int c = 0; c < r; ++c)
        if (h.at(r, c) < 0 || h.at(r, c) >= h.at(r, r)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("primitive divides by the coordinate gcd") {
  CHECK(primitive({Int(2), Int(4), Int(6)}) == LatticePoint{Int(1), Int(2), Int(3)});
  CHECK(primitive({Int(1), Int(0), Int(0)}) == LatticePoint{Int(1), Int(0), Int(0)});
  CHECK(primitive({Int(-3), Int(0), Int(6)}) == LatticePoint{Int(-1), Int(0), Int(2)});
  CHECK_THROWS_MATCHES(primitive({Int(0), Int(0), Int(0)}), Error,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::StartsWith("ZeroVector")));
}

TEST_CASE("primitive is scale invariant") {
  Rng rng{7};
  for (int t = 0; t < 200; ++t) {
    LatticePoint v{rng.in_range(-9, 9), rng.in_range(-9, 9), rng.in_range(-9, 9)};
    if (v.is_zero()) continue;
    for (Int k = 1; k <= 4; ++k) CHECK(primitive(k * v) == primitive(v));
  }
}

TEST_CASE("det3 on pinned matrices") {
  CHECK(det3(IntMatrix3::identity()) == 1);

  IntMatrix3 paper{{{{Int(1), Int(0), Int(0)}, {Int(0), Int(1), Int(0)}, {Int(1), Int(1), Int(2)}}}};
  CHECK(det3(paper) == 2);
  CHECK(det3_oracle(paper) == 2);

  // Edge directions at the origin vertex of the non-IDP simplex.
  IntMatrix3 simplex{{{{Int(1), Int(0), Int(0)}, {Int(0), Int(0), Int(1)}, {Int(1), Int(2), Int(1)}}}};
  CHECK(det3_oracle(simplex) == -2);
  CHECK(det3(simplex) == -2);
}

TEST_CASE("det3 agrees with the permutation oracle") {
  Rng rng{11};
  for (int t = 0; t < 300; ++t) {
    IntMatrix3 m = random_matrix(rng, 12);
    CHECK(det3(m) == det3_oracle(m));
  }
}

TEST_CASE("is_unimodular_basis") {
  CHECK(is_unimodular_basis({Int(1), Int(0), Int(0)}, {Int(0), Int(1), Int(0)},
                            {Int(0), Int(0), Int(1)}));
  CHECK_FALSE(is_unimodular_basis({Int(1), Int(0), Int(0)}, {Int(0), Int(0), Int(1)},
                                  {Int(1), Int(2), Int(1)}));
  CHECK(is_unimodular_basis({Int(1), Int(0), Int(0)}, {Int(0), Int(1), Int(0)},
                            {Int(1), Int(1), Int(1)}));

  Rng rng{23};
  for (int t = 0; t < 100; ++t) {
    IntMatrix3 m = random_unimodular(rng, 8);
    CHECK(is_unimodular_basis(m.col[0], m.col[1], m.col[2]));
  }
}

TEST_CASE("hnf of pinned matrices") {
  auto [h, u] = hnf(IntMatrix3::identity());
  CHECK(h == IntMatrix3::identity());
  CHECK(u == IntMatrix3::identity());

  IntMatrix3 d2{{{{Int(2), Int(0), Int(0)}, {Int(0), Int(2), Int(0)}, {Int(0), Int(0), Int(2)}}}};
  auto r2 = hnf(d2);
  CHECK(r2.h == d2);

  IntMatrix3 simplex{{{{Int(1), Int(0), Int(0)}, {Int(0), Int(0), Int(1)}, {Int(1), Int(2), Int(1)}}}};
  auto rs = hnf(simplex);
  Int diag_prod = rs.h.at(0, 0) * rs.h.at(1, 1) * rs.h.at(2, 2);
  CHECK(abs(diag_prod) == 2);
}

TEST_CASE("hnf properties on random matrices") {
  Rng rng{31};
  for (int t = 0; t < 300; ++t) {
    IntMatrix3 m = random_matrix(rng, 10);
    if (t % 5 == 0) m.col[2] = m.col[0] + m.col[1];  // keep singular cases in the mix
    auto [h, u] = hnf(m);
    CHECK(abs(det3(u)) == 1);
    CHECK(m * u == h);
    CHECK(is_col_hnf(h));
    CHECK(abs(det3(h)) == abs(det3(m)));
  }
}

TEST_CASE("plane_lattice_basis on pinned forms") {
  auto b = plane_lattice_basis({LatticePoint{Int(0), Int(0), Int(1)}}, 1);
  CHECK(b.origin == LatticePoint{Int(0), Int(0), Int(1)});
  CHECK(b.u == LatticePoint{Int(1), Int(0), Int(0)});
  CHECK(b.v == LatticePoint{Int(0), Int(1), Int(0)});

  LinearForm diag{LatticePoint{Int(1), Int(1), Int(1)}};
  auto d = plane_lattice_basis(diag, 0);
  CHECK(diag(d.origin) == 0);
  CHECK(diag(d.u) == 0);
  CHECK(diag(d.v) == 0);
  CHECK(cross(d.u, d.v) == diag.a);  // lattice-basis certificate

  CHECK_THROWS_MATCHES(plane_lattice_basis({LatticePoint{Int(2), Int(0), Int(0)}}, 1),
                       Error,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::StartsWith("NotPrimitive")));
}

TEST_CASE("plane_lattice_basis certifies a kernel basis") {
  Rng rng{47};
  for (int t = 0; t < 200; ++t) {
    LatticePoint a{rng.in_range(-8, 8), rng.in_range(-8, 8), rng.in_range(-8, 8)};
    if (a.is_zero()) continue;
    a = primitive(a);
    Int c = rng.in_range(-5, 5);
    auto b = plane_lattice_basis({a}, c);
    CHECK(dot(a, b.origin) == c);
    CHECK(dot(a, b.u) == 0);
    CHECK(dot(a, b.v) == 0);
    CHECK(cross(b.u, b.v) == a);
  }
}
