#pragma once

#include <array>

#include "polycover/polygon.hpp"

namespace polycover {

// Lattice unit square: corners anchor, anchor+d1, anchor+d2, anchor+d1+d2,
// all on the host plane; the 2D images of d1, d2 in any lattice chart of that
// plane span a cell of determinant +-1.
struct UnitSquare {
  LatticePoint anchor, d1, d2;
  LinearForm plane_normal;  // primitive
  Int plane_offset;

  std::array<LatticePoint, 4> corners() const {
    return {anchor, anchor + d1, anchor + d2, anchor + d1 + d2};
  }
};

// Lattice parallelepiped spanned from anchor by three independent edges.
struct Parallelepiped {
  LatticePoint anchor, e1, e2, e3;

  Int det() const { return det3(e1, e2, e3); }

  std::array<LatticePoint, 8> corners() const {
    return {anchor,           anchor + e1,           anchor + e2,      anchor + e3,
            anchor + e1 + e2, anchor + e1 + e3,      anchor + e2 + e3, anchor + e1 + e2 + e3};
  }

  // x in n*Q, exactly: the edge coordinates of x - n*anchor lie in [0, n].
  bool contains_dilated(const LatticePoint& x, const Int& n) const {
    LatticePoint d = x - n * anchor;
    Int dd = det();
    Int sgn = dd < 0 ? -1 : 1;
    Int dabs = abs(dd);
    Int c1 = sgn * det3(d, e2, e3);
    Int c2 = sgn * det3(e1, d, e3);
    Int c3 = sgn * det3(e1, e2, d);
    Int hi = n * dabs;
    return c1 >= 0 && c1 <= hi && c2 >= 0 && c2 <= hi && c3 >= 0 && c3 <= hi;
  }

  bool contains(const RationalPoint& x) const {
    RationalPoint d = {x.x - Rat(anchor.x), x.y - Rat(anchor.y), x.z - Rat(anchor.z)};
    RationalPoint r1 = to_rational(e1), r2 = to_rational(e2), r3 = to_rational(e3);
    Rat dd(det());
    Rat c1 = det3(d, r2, r3) / dd;
    Rat c2 = det3(r1, d, r3) / dd;
    Rat c3 = det3(r1, r2, d) / dd;
    return c1 >= 0 && c1 <= 1 && c2 >= 0 && c2 <= 1 && c3 >= 0 && c3 <= 1;
  }

  // Lattice points in lexicographic order (bounding-box scan).
  std::vector<LatticePoint> lattice_points() const {
    auto cs = corners();
    LatticePoint lo = cs[0], hi = cs[0];
    for (const LatticePoint& c : cs) {
      lo.x = std::min(lo.x, c.x); lo.y = std::min(lo.y, c.y); lo.z = std::min(lo.z, c.z);
      hi.x = std::max(hi.x, c.x); hi.y = std::max(hi.y, c.y); hi.z = std::max(hi.z, c.z);
    }
    std::vector<LatticePoint> out;
    for (Int x = lo.x; x <= hi.x; ++x)
      for (Int y = lo.y; y <= hi.y; ++y)
        for (Int z = lo.z; z <= hi.z; ++z)
          if (contains_dilated({x, y, z}, 1)) out.push_back({x, y, z});
    return out;
  }
};

enum class Provenance { SquareExtension, CayleyPrism, PushedFacetLozenge };

// One piece of a covering: a unimodular lattice simplex or a lattice
// parallelepiped, tagged with where the construction produced it.
struct CoverPiece {
  enum class Kind { Simplex, Box };

  Kind kind{Kind::Simplex};
  std::array<LatticePoint, 4> simplex{};  // when kind == Simplex
  Parallelepiped box{};                   // when kind == Box
  Provenance provenance{Provenance::SquareExtension};
  int source_facet = -1;

  static CoverPiece make_simplex(const std::array<LatticePoint, 4>& s, Provenance prov,
                                 int facet) {
    CoverPiece p;
    p.kind = Kind::Simplex;
    p.simplex = s;
    p.provenance = prov;
    p.source_facet = facet;
    return p;
  }
  static CoverPiece make_box(const Parallelepiped& b, Provenance prov, int facet) {
    CoverPiece p;
    p.kind = Kind::Box;
    p.box = b;
    p.provenance = prov;
    p.source_facet = facet;
    return p;
  }

  std::vector<LatticePoint> vertex_list() const {
    if (kind == Kind::Simplex) return {simplex.begin(), simplex.end()};
    auto cs = box.corners();
    return {cs.begin(), cs.end()};
  }

  // Sorted vertex list; identical pieces share the key.
  std::vector<LatticePoint> canonical_key() const {
    auto v = vertex_list();
    std::sort(v.begin(), v.end());
    return v;
  }

  bool unimodular() const {
    if (kind != Kind::Simplex) return false;
    return is_unimodular_basis(simplex[1] - simplex[0], simplex[2] - simplex[0],
                               simplex[3] - simplex[0]);
  }

  bool contains_dilated(const LatticePoint& p, const Int& n) const {
    if (kind == Kind::Box) return box.contains_dilated(p, n);
    LatticePoint d = p - n * simplex[0];
    LatticePoint f1 = simplex[1] - simplex[0], f2 = simplex[2] - simplex[0],
                 f3 = simplex[3] - simplex[0];
    Int dd = det3(f1, f2, f3);
    Int sgn = dd < 0 ? -1 : 1;
    Int dabs = abs(dd);
    Int l1 = sgn * det3(d, f2, f3);
    Int l2 = sgn * det3(f1, d, f3);
    Int l3 = sgn * det3(f1, f2, d);
    return l1 >= 0 && l2 >= 0 && l3 >= 0 && l1 + l2 + l3 <= n * dabs;
  }

  bool contains(const RationalPoint& x) const {
    if (kind == Kind::Box) return box.contains(x);
    RationalPoint s0 = to_rational(simplex[0]);
    RationalPoint d = {x.x - s0.x, x.y - s0.y, x.z - s0.z};
    RationalPoint f1 = to_rational(simplex[1] - simplex[0]);
    RationalPoint f2 = to_rational(simplex[2] - simplex[0]);
    RationalPoint f3 = to_rational(simplex[3] - simplex[0]);
    Rat dd = det3(f1, f2, f3);
    Rat l1 = det3(d, f2, f3) / dd;
    Rat l2 = det3(f1, d, f3) / dd;
    Rat l3 = det3(f1, f2, d) / dd;
    return l1 >= 0 && l2 >= 0 && l3 >= 0 && l1 + l2 + l3 <= 1;
  }

  std::pair<LatticePoint, LatticePoint> bounding_box() const {
    auto vs = vertex_list();
    LatticePoint lo = vs[0], hi = vs[0];
    for (const LatticePoint& v : vs) {
      lo.x = std::min(lo.x, v.x); lo.y = std::min(lo.y, v.y); lo.z = std::min(lo.z, v.z);
      hi.x = std::max(hi.x, v.x); hi.y = std::max(hi.y, v.y); hi.z = std::max(hi.z, v.z);
    }
    return {lo, hi};
  }
};

struct CoveringCertificate {
  Polytope3 host;
  std::vector<CoverPiece> pieces;
};

}  // namespace polycover
