#pragma once

#include <tuple>

#include "polycover/vec.hpp"

namespace polycover {

inline Int gcd3(const Int& a, const Int& b, const Int& c) {
  using boost::multiprecision::gcd;
  return gcd(gcd(abs(a), abs(b)), abs(c));
}

// gcd of the coordinates; 0 only for the zero vector.
inline Int content(const LatticePoint& v) { return gcd3(v.x, v.y, v.z); }

inline bool is_primitive(const LatticePoint& v) { return content(v) == 1; }

// v divided by the gcd of its coordinates. Direction is preserved.
inline LatticePoint primitive(const LatticePoint& v) {
  require(!v.is_zero(), "ZeroVector", "primitive() of the zero vector");
  Int g = content(v);
  return {v.x / g, v.y / g, v.z / g};
}

inline bool is_unimodular_basis(const LatticePoint& e1, const LatticePoint& e2,
                                const LatticePoint& e3) {
  Int d = det3(e1, e2, e3);
  return d == 1 || d == -1;
}

struct HnfResult {
  IntMatrix3 h;  // column Hermite normal form: h = m * u
  IntMatrix3 u;  // unimodular
};

// Column-style Hermite normal form: H is lower triangular with nonnegative
// diagonal; in each row the entries left of the diagonal are reduced modulo
// the diagonal. Works for singular input (zero diagonal entries are kept).
inline HnfResult hnf(const IntMatrix3& m) {
  IntMatrix3 h = m;
  IntMatrix3 u = IntMatrix3::identity();

  auto combine = [&](int c0, int c1, const Int& p, const Int& q, const Int& r,
                     const Int& s) {
    // (col0, col1) := (p*col0 + q*col1, r*col0 + s*col1); p*s - q*r = +-1.
    LatticePoint hc0 = h.col[c0], hc1 = h.col[c1];
    h.col[c0] = p * hc0 + q * hc1;
    h.col[c1] = r * hc0 + s * hc1;
    LatticePoint uc0 = u.col[c0], uc1 = u.col[c1];
    u.col[c0] = p * uc0 + q * uc1;
    u.col[c1] = r * uc0 + s * uc1;
  };

  for (int r = 0; r < 3; ++r) {
    for (int j = r + 1; j < 3; ++j) {
      if (h.at(r, j) == 0) continue;
      auto [g, s, t] = xgcd(h.at(r, r), h.at(r, j));
      Int ar = h.at(r, r) / g, aj = h.at(r, j) / g;
      combine(r, j, s, t, -aj, ar);
    }
    if (h.at(r, r) < 0) {
      h.col[r] = -h.col[r];
      u.col[r] = -u.col[r];
    }
    if (h.at(r, r) > 0) {
      for (int j = 0; j < r; ++j) {
        Int q = h.at(r, j) / h.at(r, r);
        if (h.at(r, j) % h.at(r, r) < 0) --q;
        if (q != 0) {
          h.col[j] -= q * h.col[r];
          u.col[j] -= q * u.col[r];
        }
      }
    }
  }
  return {h, u};
}

struct PlaneBasis {
  LatticePoint origin;  // a(origin) = c
  LatticePoint u, v;    // basis of {x : a(x) = 0}; cross(u, v) == a
};

// Lattice chart of the plane {a(x) = c} for a primitive form a. Every lattice
// point of the plane is origin + s*u + t*v with integer s, t. The basis is
// canonicalized (column HNF of the kernel, then oriented so cross(u,v) = a),
// making all downstream charts deterministic.
inline PlaneBasis plane_lattice_basis(const LinearForm& a, const Int& c) {
  require(!a.a.is_zero(), "ZeroVector", "plane_lattice_basis: zero form");
  require(is_primitive(a.a), "NotPrimitive",
          "plane_lattice_basis: form has content > 1");

  // Column ops bringing the row (a.x a.y a.z) to (1, 0, 0).
  IntMatrix3 u = IntMatrix3::identity();
  LatticePoint row = a.a;
  auto row_at = [&](int j) -> Int& { return j == 0 ? row.x : (j == 1 ? row.y : row.z); };
  for (int j = 1; j < 3; ++j) {
    if (row_at(j) == 0) continue;
    auto [g, s, t] = xgcd(row_at(0), row_at(j));
    Int a0 = row_at(0) / g, aj = row_at(j) / g;
    LatticePoint c0 = u.col[0], cj = u.col[static_cast<size_t>(j)];
    u.col[0] = s * c0 + t * cj;
    u.col[static_cast<size_t>(j)] = (-aj) * c0 + a0 * cj;
    Int r0 = row_at(0), rj = row_at(j);
    row_at(0) = s * r0 + t * rj;
    row_at(j) = -aj * r0 + a0 * rj;
  }
  if (row_at(0) < 0) {
    u.col[0] = -u.col[0];
    row_at(0) = -row_at(0);
  }
  require(row_at(0) == 1 && row_at(1) == 0 && row_at(2) == 0, "InternalError",
          "plane basis reduction failed");

  LatticePoint x0 = u.col[0];  // a(x0) = 1
  LatticePoint k1 = u.col[1], k2 = u.col[2];

  // Canonicalize the kernel basis: column HNF of the 3x2 matrix (k1 k2).
  int pivot_col = 0;
  auto kat = [&](int r, int j) -> Int& {
    LatticePoint& k = (j == 0) ? k1 : k2;
    return r == 0 ? k.x : (r == 1 ? k.y : k.z);
  };
  for (int r = 0; r < 3 && pivot_col < 2; ++r) {
    for (int j = pivot_col + 1; j < 2; ++j) {
      if (kat(r, j) == 0) continue;
      auto [g, s, t] = xgcd(kat(r, pivot_col), kat(r, j));
      Int a0 = kat(r, pivot_col) / g, aj = kat(r, j) / g;
      LatticePoint c0 = (pivot_col == 0) ? k1 : k2;
      LatticePoint cj = (j == 0) ? k1 : k2;
      ((pivot_col == 0) ? k1 : k2) = s * c0 + t * cj;
      ((j == 0) ? k1 : k2) = (-aj) * c0 + a0 * cj;
    }
    if (kat(r, pivot_col) == 0) continue;
    if (kat(r, pivot_col) < 0) ((pivot_col == 0) ? k1 : k2) = -((pivot_col == 0) ? k1 : k2);
    for (int j = 0; j < pivot_col; ++j) {
      Int q = kat(r, j) / kat(r, pivot_col);
      if (kat(r, j) % kat(r, pivot_col) < 0) --q;
      if (q != 0) ((j == 0) ? k1 : k2) -= q * ((pivot_col == 0) ? k1 : k2);
    }
    ++pivot_col;
  }
  require(pivot_col == 2, "InternalError", "kernel basis is rank deficient");

  // Orient the chart: cross(u, v) must equal a exactly.
  LatticePoint w = cross(k1, k2);
  if (w == -a.a) {
    std::swap(k1, k2);
    w = -w;
  }
  require(w == a.a, "InternalError", "kernel basis does not certify the form");

  return {c * x0, k1, k2};
}

}  // namespace polycover
