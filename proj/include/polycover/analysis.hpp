#pragma once

#include <functional>
#include <optional>

#include "polycover/pieces.hpp"

namespace polycover {

// True iff every vertex lies on exactly 3 edges.
inline bool check_simple(const Polytope3& p) {
  std::vector<int> deg(p.vertices.size(), 0);
  for (const EdgeRec& e : p.edges) {
    ++deg[static_cast<size_t>(e.a)];
    ++deg[static_cast<size_t>(e.b)];
  }
  return std::all_of(deg.begin(), deg.end(), [](int d) { return d == 3; });
}

struct SmoothnessReport {
  bool is_simple = false;
  bool is_smooth = false;
  struct Offender {
    int vertex;
    std::vector<LatticePoint> directions;  // primitive edge directions
    Int det;                               // 0 when the vertex is not simple
  };
  std::vector<Offender> offenders;  // empty iff smooth
};

// Primitive edge directions at every vertex must form a lattice basis.
inline SmoothnessReport check_smooth(const Polytope3& p) {
  SmoothnessReport rep;
  rep.is_simple = true;
  auto adj = p.vertex_adjacency();
  for (size_t i = 0; i < p.vertices.size(); ++i) {
    std::vector<LatticePoint> dirs;
    for (int j : adj[i]) dirs.push_back(primitive(p.vertices[static_cast<size_t>(j)] - p.vertices[i]));
    if (dirs.size() != 3) {
      rep.is_simple = false;
      rep.offenders.push_back({static_cast<int>(i), dirs, Int(0)});
      continue;
    }
    Int d = det3(dirs[0], dirs[1], dirs[2]);
    if (d != 1 && d != -1) rep.offenders.push_back({static_cast<int>(i), dirs, d});
  }
  rep.is_smooth = rep.is_simple && rep.offenders.empty();
  return rep;
}

struct CentralSymmetry {
  bool symmetric = false;            // symmetric about some point with 2c integral
  bool origin_centered = false;      // P = -P exactly
  std::optional<RationalPoint> center;
};

inline CentralSymmetry check_centrally_symmetric(const Polytope3& p) {
  CentralSymmetry r;
  bool neg = true;
  for (const LatticePoint& v : p.vertices)
    if (!p.vertex_index(-v)) {
      neg = false;
      break;
    }
  if (neg) {
    r.symmetric = true;
    r.origin_centered = true;
    r.center = RationalPoint{Rat(0), Rat(0), Rat(0)};
    return r;
  }
  // Candidate center = vertex centroid; admissible only if 2c is integral.
  LatticePoint s{Int(0), Int(0), Int(0)};
  for (const LatticePoint& v : p.vertices) s += v;
  Int m(static_cast<long long>(p.vertices.size()));
  LatticePoint twice{2 * s.x, 2 * s.y, 2 * s.z};
  if (twice.x % m != 0 || twice.y % m != 0 || twice.z % m != 0) return r;
  LatticePoint c2{twice.x / m, twice.y / m, twice.z / m};  // = 2*center
  for (const LatticePoint& v : p.vertices)
    if (!p.vertex_index(c2 - v)) return r;
  r.symmetric = true;
  r.center = RationalPoint{Rat(c2.x) / 2, Rat(c2.y) / 2, Rat(c2.z) / 2};
  return r;
}

// The parallelepiped spanned by the primitive edge directions at a vertex
// contains no lattice points besides its 8 corners (true at smooth vertices).
inline bool vertex_parallelepiped_empty(const Polytope3& p, int vertex_index) {
  auto adj = p.vertex_adjacency();
  require(vertex_index >= 0 && vertex_index < static_cast<int>(p.vertices.size()),
          "InvalidArgument", "vertex index out of range");
  const auto& nb = adj[static_cast<size_t>(vertex_index)];
  require(nb.size() == 3, "NotSimpleVertex", "vertex does not have exactly 3 edges");
  const LatticePoint& v = p.vertices[static_cast<size_t>(vertex_index)];
  Parallelepiped q{v, primitive(p.vertices[static_cast<size_t>(nb[0])] - v),
                   primitive(p.vertices[static_cast<size_t>(nb[1])] - v),
                   primitive(p.vertices[static_cast<size_t>(nb[2])] - v)};
  auto pts = q.lattice_points();
  auto cs = q.corners();
  std::vector<LatticePoint> corners(cs.begin(), cs.end());
  std::sort(corners.begin(), corners.end());
  return pts == corners;
}

struct IdpReport {
  Int checked_up_to;
  bool idp_up_to = false;
  struct Failure {
    Int n;
    LatticePoint witness;  // in n*P but not a sum of n lattice points of P
  };
  std::optional<Failure> failure;
};

// Verifies the decomposition property level by level up to n_max: every
// lattice point of k*P must split as s + q with s in P and q in (k-1)*P.
// Sound because level k-1 was verified before level k is attempted.
inline IdpReport idp_check(const Polytope3& p, const Int& n_max) {
  require(n_max >= 2, "InvalidArgument", "idp_check needs n_max >= 2");
  IdpReport rep;
  rep.checked_up_to = n_max;
  std::vector<LatticePoint> s1 = lattice_points(p);
  for (Int k = 2; k <= n_max; ++k) {
    Polytope3 kp = dilate(p, k);
    for (const LatticePoint& q : lattice_points(kp)) {
      bool ok = false;
      for (const LatticePoint& s : s1) {
        if (p.contains_dilated(q - s, k - 1)) {
          ok = true;
          break;
        }
      }
      if (!ok) {
        rep.failure = IdpReport::Failure{k, q};
        return rep;
      }
    }
  }
  rep.idp_up_to = true;
  return rep;
}

// Is every lattice point of P + Q a sum of lattice points of P and Q?
// Returns the first witness (lexicographic) when not.
inline std::pair<bool, std::optional<LatticePoint>> minkowski_pair_check(const Polytope3& p,
                                                                         const Polytope3& q) {
  std::vector<LatticePoint> sums;
  for (const LatticePoint& a : p.vertices)
    for (const LatticePoint& b : q.vertices) sums.push_back(a + b);
  Polytope3 pq = convex_hull3(sums);
  std::vector<LatticePoint> lp = lattice_points(p);
  for (const LatticePoint& x : lattice_points(pq)) {
    bool ok = false;
    for (const LatticePoint& a : lp)
      if (q.contains(x - a)) {
        ok = true;
        break;
      }
    if (!ok) return {false, x};
  }
  return {true, std::nullopt};
}

struct DecompositionWitness {
  Int n;
  std::vector<LatticePoint> parts;  // n lattice points of the piece, summing to the target
};

// Barycentric decomposition in a unimodular simplex: the scaled coordinates of
// p with respect to n*S are nonnegative integers summing to n.
inline DecompositionWitness decompose_in_simplex(const std::array<LatticePoint, 4>& s,
                                                 const LatticePoint& p, const Int& n) {
  require(n >= 1, "InvalidArgument", "dilation must be >= 1");
  LatticePoint f1 = s[1] - s[0], f2 = s[2] - s[0], f3 = s[3] - s[0];
  Int d = det3(f1, f2, f3);
  require(d == 1 || d == -1, "NotUnimodular", "simplex is not unimodular");
  LatticePoint w = p - n * s[0];
  // d is +-1, so Cramer divisions are multiplications by d.
  Int l1 = d * det3(w, f2, f3);
  Int l2 = d * det3(f1, w, f3);
  Int l3 = d * det3(f1, f2, w);
  Int l0 = n - l1 - l2 - l3;
  if (l0 < 0 || l1 < 0 || l2 < 0 || l3 < 0)
    fail("OutsideDilate", "point is not in the n-th dilate of the simplex");
  DecompositionWitness wit{n, {}};
  const Int ls[4] = {l0, l1, l2, l3};
  for (int i = 0; i < 4; ++i)
    for (Int k = 0; k < ls[i]; ++k) wit.parts.push_back(s[static_cast<size_t>(i)]);
  LatticePoint sum{Int(0), Int(0), Int(0)};
  for (const LatticePoint& q : wit.parts) sum += q;
  require(sum == p, "InternalError", "barycentric decomposition does not sum back");
  return wit;
}

// Greedy-with-backtracking decomposition in a lattice parallelepiped; always
// terminates with a witness because parallelepipeds have the decomposition
// property. Candidates are tried in lexicographic order.
inline DecompositionWitness decompose_in_parallelepiped(const Parallelepiped& q,
                                                        const LatticePoint& p, const Int& n) {
  require(n >= 1, "InvalidArgument", "dilation must be >= 1");
  if (!q.contains_dilated(p, n))
    fail("OutsideDilate", "point is not in the n-th dilate of the parallelepiped");
  std::vector<LatticePoint> cands = q.lattice_points();
  std::vector<LatticePoint> parts;
  std::function<bool(const LatticePoint&, Int)> go = [&](const LatticePoint& rest, Int k) {
    if (k == 1) {
      if (!q.contains_dilated(rest, 1)) return false;
      parts.push_back(rest);
      return true;
    }
    for (const LatticePoint& c : cands) {
      if (!q.contains_dilated(rest - c, k - 1)) continue;
      parts.push_back(c);
      if (go(rest - c, k - 1)) return true;
      parts.pop_back();
    }
    return false;
  };
  require(go(p, n), "InternalError", "parallelepiped decomposition search failed");
  LatticePoint sum{Int(0), Int(0), Int(0)};
  for (const LatticePoint& c : parts) sum += c;
  require(sum == p, "InternalError", "decomposition does not sum back");
  return {n, parts};
}

}  // namespace polycover
