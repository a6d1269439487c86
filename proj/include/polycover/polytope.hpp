#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "polycover/lattice.hpp"

namespace polycover {

// 2D convex hull (monotone chain), exact coordinates. Returns the extreme
// points in counterclockwise order starting at the lexicographic minimum;
// collinear interior points are dropped. Degenerate inputs yield the single
// point or the two segment endpoints.
template <typename T>
std::vector<Vec2<T>> hull2(std::vector<Vec2<T>> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const size_t n = pts.size();
  if (n <= 2) return pts;

  auto turn = [](const Vec2<T>& o, const Vec2<T>& a, const Vec2<T>& b) {
    return cross(a - o, b - o);
  };
  std::vector<Vec2<T>> h(2 * n);
  size_t k = 0;
  for (size_t i = 0; i < n; ++i) {
    while (k >= 2 && turn(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (size_t i = n - 1, t = k + 1; i-- > 0;) {
    while (k >= t && turn(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

struct Facet {
  LinearForm normal;          // primitive, inward: normal(x) >= offset on P
  Int offset;                 // equality exactly on the facet
  std::vector<int> vertices;  // cycle, counterclockwise seen from outside P
};

struct EdgeRec {
  int a, b;    // vertex indices, a < b
  int f0, f1;  // the two incident facets, f0 < f1
};

struct Polytope3 {
  std::vector<LatticePoint> vertices;  // lexicographically sorted extreme points
  std::vector<Facet> facets;
  std::vector<EdgeRec> edges;

  bool contains(const LatticePoint& x) const {
    for (const Facet& f : facets)
      if (f.normal(x) < f.offset) return false;
    return true;
  }

  bool contains(const RationalPoint& x) const {
    for (const Facet& f : facets)
      if (f.normal(x) < Rat(f.offset)) return false;
    return true;
  }

  // x in k*P, tested on the scaled inequalities.
  bool contains_dilated(const LatticePoint& x, const Int& k) const {
    for (const Facet& f : facets)
      if (f.normal(x) < k * f.offset) return false;
    return true;
  }

  std::pair<LatticePoint, LatticePoint> bounding_box() const {
    LatticePoint lo = vertices.front(), hi = vertices.front();
    for (const LatticePoint& v : vertices) {
      lo.x = std::min(lo.x, v.x); lo.y = std::min(lo.y, v.y); lo.z = std::min(lo.z, v.z);
      hi.x = std::max(hi.x, v.x); hi.y = std::max(hi.y, v.y); hi.z = std::max(hi.z, v.z);
    }
    return {lo, hi};
  }

  std::optional<int> vertex_index(const LatticePoint& p) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), p);
    if (it != vertices.end() && *it == p) return static_cast<int>(it - vertices.begin());
    return std::nullopt;
  }

  // Adjacency lists derived from the edge set; neighbor lists sorted.
  std::vector<std::vector<int>> vertex_adjacency() const {
    std::vector<std::vector<int>> adj(vertices.size());
    for (const EdgeRec& e : edges) {
      adj[static_cast<size_t>(e.a)].push_back(e.b);
      adj[static_cast<size_t>(e.b)].push_back(e.a);
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());
    return adj;
  }

  void validate() const;
};

namespace detail {

struct HullTri {
  int a, b, c;
};

inline void rotate_to_min(std::vector<int>& cycle) {
  auto it = std::min_element(cycle.begin(), cycle.end());
  std::rotate(cycle.begin(), it, cycle.end());
}

}  // namespace detail

// Exact incremental convex hull of a full-dimensional lattice point set.
// Facets are merged maximal coplanar faces with primitive inward normals;
// facet cycles run counterclockwise as seen from outside and start at their
// lexicographically smallest vertex. Validates the result before returning.
inline Polytope3 convex_hull3(std::vector<LatticePoint> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const int n = static_cast<int>(pts.size());

  // Affine dimension probe; picks the initial simplex.
  int i1 = -1, i2 = -1, i3 = -1;
  for (int i = 1; i < n && i1 < 0; ++i)
    if (!(pts[i] == pts[0])) i1 = i;
  if (i1 < 0) fail("DegenerateInput", "affine dimension 0 (need 3)");
  for (int i = i1 + 1; i < n && i2 < 0; ++i)
    if (!cross(pts[i1] - pts[0], pts[i] - pts[0]).is_zero()) i2 = i;
  if (i2 < 0) fail("DegenerateInput", "affine dimension 1 (need 3)");
  for (int i = 1; i < n && i3 < 0; ++i)
    if (det3(pts[i1] - pts[0], pts[i2] - pts[0], pts[i] - pts[0]) != 0) i3 = i;
  if (i3 < 0) fail("DegenerateInput", "affine dimension 2 (need 3)");

  using detail::HullTri;
  auto orient = [&](const HullTri& t, const LatticePoint& p) {
    return det3(pts[t.b] - pts[t.a], pts[t.c] - pts[t.a], p - pts[t.a]);
  };

  std::vector<HullTri> faces;
  auto add_init_face = [&](int a, int b, int c, int opp) {
    HullTri t{a, b, c};
    if (orient(t, pts[opp]) > 0) std::swap(t.b, t.c);
    faces.push_back(t);
  };
  add_init_face(0, i1, i2, i3);
  add_init_face(0, i1, i3, i2);
  add_init_face(0, i2, i3, i1);
  add_init_face(i1, i2, i3, 0);

  std::vector<bool> seeded(static_cast<size_t>(n), false);
  seeded[0] = seeded[static_cast<size_t>(i1)] = seeded[static_cast<size_t>(i2)] =
      seeded[static_cast<size_t>(i3)] = true;

  for (int i = 0; i < n; ++i) {
    if (seeded[static_cast<size_t>(i)]) continue;
    const LatticePoint& p = pts[static_cast<size_t>(i)];
    std::vector<char> vis(faces.size(), 0);
    bool any = false;
    for (size_t f = 0; f < faces.size(); ++f) {
      vis[f] = orient(faces[f], p) > 0 ? 1 : 0;
      any = any || vis[f];
    }
    if (!any) continue;  // inside or on the current boundary

    std::map<std::pair<int, int>, size_t> by_edge;
    for (size_t f = 0; f < faces.size(); ++f) {
      const HullTri& t = faces[f];
      by_edge[{t.a, t.b}] = f;
      by_edge[{t.b, t.c}] = f;
      by_edge[{t.c, t.a}] = f;
    }
    std::vector<HullTri> next;
    for (size_t f = 0; f < faces.size(); ++f)
      if (!vis[f]) next.push_back(faces[f]);
    for (size_t f = 0; f < faces.size(); ++f) {
      if (!vis[f]) continue;
      const HullTri& t = faces[f];
      const std::pair<int, int> dir[3] = {{t.a, t.b}, {t.b, t.c}, {t.c, t.a}};
      for (const auto& [x, y] : dir) {
        auto it = by_edge.find({y, x});
        require(it != by_edge.end(), "InternalError", "open hull surface");
        if (!vis[it->second]) next.push_back({x, y, i});
      }
    }
    faces = std::move(next);
  }

  // Merge coplanar triangles into facets keyed by (outward normal, offset).
  struct Group {
    std::vector<int> ids;
    HullTri rep;
  };
  std::map<std::pair<LatticePoint, Int>, Group> groups;
  for (const HullTri& t : faces) {
    LatticePoint m = primitive(cross(pts[t.b] - pts[t.a], pts[t.c] - pts[t.a]));
    Int o = dot(m, pts[t.a]);
    auto [it, fresh] = groups.try_emplace({m, o});
    if (fresh) it->second.rep = t;
    it->second.ids.insert(it->second.ids.end(), {t.a, t.b, t.c});
  }

  Polytope3 poly;
  std::vector<char> used(static_cast<size_t>(n), 0);
  struct RawFacet {
    LatticePoint inward;
    Int offset;
    std::vector<int> cycle;  // old ids
  };
  std::vector<RawFacet> raw;
  for (auto& [key, g] : groups) {
    const auto& [m, o] = key;
    std::sort(g.ids.begin(), g.ids.end());
    g.ids.erase(std::unique(g.ids.begin(), g.ids.end()), g.ids.end());

    // Shear chart: dot products with two in-plane edges of an outward-oriented
    // triangle preserve convex position and outside-view orientation.
    const LatticePoint base = pts[static_cast<size_t>(g.rep.a)];
    const LatticePoint u0 = pts[static_cast<size_t>(g.rep.b)] - base;
    const LatticePoint v0 = pts[static_cast<size_t>(g.rep.c)] - base;
    std::map<GridPoint, int> back;
    std::vector<GridPoint> flat;
    flat.reserve(g.ids.size());
    for (int id : g.ids) {
      LatticePoint d = pts[static_cast<size_t>(id)] - base;
      GridPoint q{dot(d, u0), dot(d, v0)};
      back[q] = id;
      flat.push_back(q);
    }
    std::vector<GridPoint> cyc2 = hull2(flat);
    require(cyc2.size() >= 3, "InternalError", "degenerate merged facet");
    RawFacet rf;
    rf.inward = -m;
    rf.offset = -o;
    for (const GridPoint& q : cyc2) {
      rf.cycle.push_back(back.at(q));
      used[static_cast<size_t>(back.at(q))] = 1;
    }
    raw.push_back(std::move(rf));
  }

  std::vector<LatticePoint> verts;
  for (int i = 0; i < n; ++i)
    if (used[static_cast<size_t>(i)]) verts.push_back(pts[static_cast<size_t>(i)]);
  std::sort(verts.begin(), verts.end());
  poly.vertices = verts;
  std::vector<int> old_to_new(static_cast<size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    if (!used[static_cast<size_t>(i)]) continue;
    auto it = std::lower_bound(verts.begin(), verts.end(), pts[static_cast<size_t>(i)]);
    old_to_new[static_cast<size_t>(i)] = static_cast<int>(it - verts.begin());
  }

  for (RawFacet& rf : raw) {
    Facet f;
    f.normal = LinearForm{rf.inward};
    f.offset = rf.offset;
    for (int id : rf.cycle) f.vertices.push_back(old_to_new[static_cast<size_t>(id)]);
    detail::rotate_to_min(f.vertices);
    poly.facets.push_back(std::move(f));
  }
  std::sort(poly.facets.begin(), poly.facets.end(), [](const Facet& a, const Facet& b) {
    if (!(a.normal.a == b.normal.a)) return a.normal.a < b.normal.a;
    return a.offset < b.offset;
  });

  std::map<std::pair<int, int>, std::vector<int>> edge_facets;
  for (size_t fi = 0; fi < poly.facets.size(); ++fi) {
    const auto& cyc = poly.facets[fi].vertices;
    for (size_t k = 0; k < cyc.size(); ++k) {
      int a = cyc[k], b = cyc[(k + 1) % cyc.size()];
      edge_facets[{std::min(a, b), std::max(a, b)}].push_back(static_cast<int>(fi));
    }
  }
  for (const auto& [e, fs] : edge_facets) {
    require(fs.size() == 2, "InternalError", "edge not on exactly 2 facets");
    poly.edges.push_back({e.first, e.second, std::min(fs[0], fs[1]), std::max(fs[0], fs[1])});
  }

  poly.validate();
  return poly;
}

inline void Polytope3::validate() const {
  require(!vertices.empty() && facets.size() >= 4, "InternalError", "too few faces");
  require(std::is_sorted(vertices.begin(), vertices.end()), "InternalError",
          "vertices not sorted");
  long long v = static_cast<long long>(vertices.size());
  long long e = static_cast<long long>(edges.size());
  long long f = static_cast<long long>(facets.size());
  require(v - e + f == 2, "InternalError", "Euler characteristic violated");

  for (const Facet& fc : facets) {
    require(is_primitive(fc.normal.a), "InternalError", "facet normal not primitive");
    std::vector<bool> on(vertices.size(), false);
    for (int id : fc.vertices) on[static_cast<size_t>(id)] = true;
    for (size_t i = 0; i < vertices.size(); ++i) {
      Int val = fc.normal(vertices[i]);
      if (on[i])
        require(val == fc.offset, "InternalError", "incident vertex off its facet plane");
      else
        require(val > fc.offset, "InternalError", "vertex violates facet inequality");
    }
    // Convex cycle, counterclockwise seen from outside (outward is -normal).
    const auto& cyc = fc.vertices;
    require(cyc.size() >= 3, "InternalError", "facet cycle too short");
    for (size_t k = 0; k < cyc.size(); ++k) {
      const LatticePoint& p0 = vertices[static_cast<size_t>(cyc[k])];
      const LatticePoint& p1 = vertices[static_cast<size_t>(cyc[(k + 1) % cyc.size()])];
      const LatticePoint& p2 = vertices[static_cast<size_t>(cyc[(k + 2) % cyc.size()])];
      Int s = dot(cross(p1 - p0, p2 - p1), fc.normal.a);
      require(s < 0, "InternalError", "facet cycle not strictly convex CCW");
    }
  }
}

// The dilate k*P, combinatorics preserved.
inline Polytope3 dilate(const Polytope3& p, const Int& k) {
  require(k >= 1, "InvalidArgument", "dilation factor must be >= 1");
  Polytope3 q = p;
  for (LatticePoint& v : q.vertices) v = k * v;
  for (Facet& f : q.facets) f.offset *= k;
  return q;
}

// All lattice points of P in lexicographic order (bounding-box scan).
inline std::vector<LatticePoint> lattice_points(const Polytope3& p) {
  auto [lo, hi] = p.bounding_box();
  std::vector<LatticePoint> out;
  for (Int x = lo.x; x <= hi.x; ++x)
    for (Int y = lo.y; y <= hi.y; ++y)
      for (Int z = lo.z; z <= hi.z; ++z) {
        LatticePoint q{x, y, z};
        if (p.contains(q)) out.push_back(q);
      }
  return out;
}

// Deduplicated sorted pairwise sums {a + b}.
inline std::vector<LatticePoint> minkowski_sum_points(const std::vector<LatticePoint>& a,
                                                      const std::vector<LatticePoint>& b) {
  std::vector<LatticePoint> out;
  out.reserve(a.size() * b.size());
  for (const LatticePoint& x : a)
    for (const LatticePoint& y : b) out.push_back(x + y);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct RayExit {
  Rat t;                    // smallest t > 0 with t*v on the boundary
  RationalPoint exit;       // t * v
  std::vector<int> facets;  // all facets attaining the minimum, ascending
};

// Exit of the ray {t*v : t >= 0} from a polytope with 0 strictly interior.
inline RayExit ray_exit(const Polytope3& p, const RationalPoint& v) {
  require(!(v.x == 0 && v.y == 0 && v.z == 0), "ZeroDirection", "ray direction is zero");
  for (const Facet& f : p.facets)
    require(f.offset < 0, "OriginNotInterior", "origin is not strictly interior");

  std::optional<Rat> best;
  std::vector<int> hits;
  for (size_t i = 0; i < p.facets.size(); ++i) {
    const Facet& f = p.facets[i];
    Rat slope = f.normal(v);
    if (slope >= 0) continue;  // moving away from this facet plane
    Rat t = Rat(f.offset) / slope;
    if (!best || t < *best) {
      best = t;
      hits.assign(1, static_cast<int>(i));
    } else if (t == *best) {
      hits.push_back(static_cast<int>(i));
    }
  }
  require(best.has_value(), "InternalError", "ray does not exit a bounded polytope");
  return {*best, {v.x * *best, v.y * *best, v.z * *best}, hits};
}

}  // namespace polycover
