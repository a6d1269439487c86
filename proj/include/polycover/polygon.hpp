#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "polycover/polytope.hpp"

namespace polycover {

// Convex polygon in a lattice plane of 3-space, cyclically ordered. May
// degenerate to a segment or a single point (extreme slice levels).
struct RationalPolygon {
  std::vector<RationalPoint> vertices;

  bool is_point() const { return vertices.size() == 1; }
  bool is_segment() const { return vertices.size() == 2; }
  bool is_polygon() const { return vertices.size() >= 3; }
};

inline bool is_lattice_polygon(const RationalPolygon& q) {
  for (const RationalPoint& v : q.vertices)
    if (!is_lattice(v)) return false;
  return true;
}

// 2D lattice polygon living in a plane of 3-space. vertices2d are the chart
// coordinates: x = chart.origin + s*chart.u + t*chart.v. Counterclockwise as
// seen from outside the host polytope; starts at the 2D lexicographic minimum.
struct EmbeddedPolygon {
  std::vector<GridPoint> vertices2d;
  PlaneBasis chart;
  LinearForm plane_normal;  // host facet convention: inward, primitive
  Int plane_offset;

  LatticePoint to_3d(const GridPoint& q) const {
    return chart.origin + q.x * chart.u + q.y * chart.v;
  }
  RationalPoint to_3d(const RatGridPoint& q) const {
    RationalPoint o = to_rational(chart.origin);
    RationalPoint u = to_rational(chart.u), v = to_rational(chart.v);
    return {o.x + q.x * u.x + q.y * v.x, o.y + q.x * u.y + q.y * v.y,
            o.z + q.x * u.z + q.y * v.z};
  }

  // Exact chart coordinates of a plane point.
  GridPoint to_2d(const LatticePoint& x) const {
    LatticePoint d = x - chart.origin;
    LatticePoint w = cross(chart.u, chart.v);
    Int ww = dot(w, w);
    Int s = dot(cross(d, chart.v), w);
    Int t = dot(cross(chart.u, d), w);
    require(s % ww == 0 && t % ww == 0, "InternalError", "point off the chart lattice");
    return {s / ww, t / ww};
  }
  RatGridPoint to_2d(const RationalPoint& x) const {
    RationalPoint d = {x.x - Rat(chart.origin.x), x.y - Rat(chart.origin.y),
                       x.z - Rat(chart.origin.z)};
    RationalPoint v = to_rational(chart.v), u = to_rational(chart.u);
    RationalPoint w = to_rational(cross(chart.u, chart.v));
    Rat ww = dot(w, w);
    Rat s = dot(cross(d, v), w) / ww;
    Rat t = dot(cross(u, d), w) / ww;
    return {s, t};
  }

  bool contains2d(const RatGridPoint& q) const {
    const size_t n = vertices2d.size();
    for (size_t i = 0; i < n; ++i) {
      RatGridPoint a = to_rational(vertices2d[i]);
      RatGridPoint b = to_rational(vertices2d[(i + 1) % n]);
      if (cross(b - a, q - a) < 0) return false;
    }
    return true;
  }
  bool contains2d(const GridPoint& q) const { return contains2d(to_rational(q)); }

  // Twice the Euclidean area in chart coordinates (shoelace).
  Int area2() const {
    Int s = 0;
    const size_t n = vertices2d.size();
    for (size_t i = 0; i < n; ++i) s += cross(vertices2d[i], vertices2d[(i + 1) % n]);
    return s;
  }

  // All lattice points of the polygon in chart coordinates, lexicographic.
  std::vector<GridPoint> lattice_points2d() const {
    GridPoint lo = vertices2d.front(), hi = vertices2d.front();
    for (const GridPoint& q : vertices2d) {
      lo.x = std::min(lo.x, q.x); lo.y = std::min(lo.y, q.y);
      hi.x = std::max(hi.x, q.x); hi.y = std::max(hi.y, q.y);
    }
    std::vector<GridPoint> out;
    for (Int x = lo.x; x <= hi.x; ++x)
      for (Int y = lo.y; y <= hi.y; ++y)
        if (contains2d(GridPoint{x, y})) out.push_back({x, y});
    return out;
  }
};

// The values c for which the slice P_c contains a vertex, ascending.
inline std::vector<Int> special_values(const Polytope3& p, const LinearForm& a) {
  std::vector<Int> vals;
  vals.reserve(p.vertices.size());
  for (const LatticePoint& v : p.vertices) vals.push_back(a(v));
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  return vals;
}

// The hyperplane cut P ∩ {a(x) = c}: vertices of P on the plane plus exact
// edge crossings, in cyclic order (counterclockwise seen from the +a side,
// starting at the lexicographic minimum).
inline RationalPolygon slice(const Polytope3& p, const LinearForm& a_in, const Rat& c_in) {
  require(!a_in.a.is_zero(), "ZeroVector", "slice: zero form");
  Int g = content(a_in.a);
  LinearForm a{LatticePoint{a_in.a.x / g, a_in.a.y / g, a_in.a.z / g}};
  Rat c = c_in / Rat(g);

  Rat lo, hi;
  bool first = true;
  for (const LatticePoint& v : p.vertices) {
    Rat val(a(v));
    if (first || val < lo) lo = val;
    if (first || val > hi) hi = val;
    first = false;
  }
  if (c < lo || c > hi) fail("EmptySlice", "level outside the range of the form on P");

  std::vector<RationalPoint> cand;
  for (const LatticePoint& v : p.vertices)
    if (Rat(a(v)) == c) cand.push_back(to_rational(v));
  for (const EdgeRec& e : p.edges) {
    Rat va(a(p.vertices[static_cast<size_t>(e.a)]));
    Rat vb(a(p.vertices[static_cast<size_t>(e.b)]));
    if ((va < c && c < vb) || (vb < c && c < va)) {
      Rat t = (c - va) / (vb - va);
      RationalPoint pa = to_rational(p.vertices[static_cast<size_t>(e.a)]);
      RationalPoint pb = to_rational(p.vertices[static_cast<size_t>(e.b)]);
      cand.push_back({pa.x + t * (pb.x - pa.x), pa.y + t * (pb.y - pa.y),
                      pa.z + t * (pb.z - pa.z)});
    }
  }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  require(!cand.empty(), "InternalError", "slice in range but empty");
  if (cand.size() <= 2) return {cand};

  // Order via the kernel chart of a; cross(u,v) = a makes 2D counterclockwise
  // equal counterclockwise seen from the +a side.
  PlaneBasis pb = plane_lattice_basis(a, 0);
  std::map<RatGridPoint, RationalPoint> back;
  std::vector<RatGridPoint> flat;
  for (const RationalPoint& x : cand) {
    RationalPoint d = {x.x - cand[0].x, x.y - cand[0].y, x.z - cand[0].z};
    RatGridPoint q{dot(to_rational(pb.u), d), dot(to_rational(pb.v), d)};
    back[q] = x;
    flat.push_back(q);
  }
  std::vector<RatGridPoint> cyc = hull2(flat);
  require(cyc.size() == cand.size(), "InternalError", "slice candidates not in convex position");
  RationalPolygon out;
  for (const RatGridPoint& q : cyc) out.vertices.push_back(back.at(q));
  auto it = std::min_element(out.vertices.begin(), out.vertices.end());
  std::rotate(out.vertices.begin(), it, out.vertices.end());
  return out;
}

// A facet as a 2D lattice polygon with a lattice chart of its plane. The chart
// is oriented outward (cross(u,v) = outward normal), so chart counterclockwise
// is counterclockwise seen from outside P.
inline EmbeddedPolygon facet_polygon(const Polytope3& p, int facet_index) {
  require(facet_index >= 0 && facet_index < static_cast<int>(p.facets.size()),
          "InvalidArgument", "facet index out of range");
  const Facet& f = p.facets[static_cast<size_t>(facet_index)];
  LinearForm outward{-f.normal.a};
  EmbeddedPolygon e;
  e.chart = plane_lattice_basis(outward, -f.offset);
  e.plane_normal = f.normal;
  e.plane_offset = f.offset;
  for (int id : f.vertices) e.vertices2d.push_back(e.to_2d(p.vertices[static_cast<size_t>(id)]));
  auto it = std::min_element(e.vertices2d.begin(), e.vertices2d.end());
  std::rotate(e.vertices2d.begin(), it, e.vertices2d.end());
  return e;
}

// Circularly ordered primitive outer edge normals of a convex polygon.
struct NormalFan2 {
  std::vector<GridPoint> rays;  // canonical angular order from (1,0) counterclockwise

  friend bool operator==(const NormalFan2&, const NormalFan2&) = default;
};

namespace detail {

inline int angular_half(const GridPoint& v) {
  return (v.y > 0 || (v.y == 0 && v.x > 0)) ? 0 : 1;
}

inline bool angular_less(const GridPoint& a, const GridPoint& b) {
  int ha = angular_half(a), hb = angular_half(b);
  if (ha != hb) return ha < hb;
  return cross(a, b) > 0;
}

inline GridPoint primitive2(const GridPoint& v) {
  using boost::multiprecision::gcd;
  Int g = gcd(abs(v.x), abs(v.y));
  require(g != 0, "InternalError", "zero edge direction");
  return {v.x / g, v.y / g};
}

// Primitive integer direction of a rational 2D vector.
inline GridPoint primitive2(const RatGridPoint& v) {
  Int x = rat_num(v.x) * rat_den(v.y);
  Int y = rat_num(v.y) * rat_den(v.x);
  return primitive2(GridPoint{x, y});
}

}  // namespace detail

// Outer normals of a counterclockwise convex cycle given by 2D points.
template <typename T>
NormalFan2 normal_fan2(const std::vector<Vec2<T>>& ccw) {
  require(ccw.size() >= 3, "LowDimensional", "normal fan needs a 2-dimensional polygon");
  NormalFan2 fan;
  const size_t n = ccw.size();
  for (size_t i = 0; i < n; ++i) {
    Vec2<T> d = ccw[(i + 1) % n] - ccw[i];
    GridPoint dir = detail::primitive2(d);
    fan.rays.push_back({dir.y, -dir.x});  // outward for a CCW cycle
  }
  std::sort(fan.rays.begin(), fan.rays.end(), detail::angular_less);
  return fan;
}

inline NormalFan2 normal_fan2(const EmbeddedPolygon& e) { return normal_fan2(e.vertices2d); }

// Fan of a slice, computed in the fixed kernel chart of a so that fans of
// parallel slices are directly comparable.
inline NormalFan2 slice_fan(const Polytope3& p, const LinearForm& a_in, const Rat& c) {
  RationalPolygon q = slice(p, a_in, c);
  require(q.is_polygon(), "LowDimensional", "slice is a point or segment");
  Int g = content(a_in.a);
  LinearForm a{LatticePoint{a_in.a.x / g, a_in.a.y / g, a_in.a.z / g}};
  PlaneBasis pb = plane_lattice_basis(a, 0);
  std::vector<RatGridPoint> flat;
  for (const RationalPoint& x : q.vertices) {
    RationalPoint d = {x.x - q.vertices[0].x, x.y - q.vertices[0].y, x.z - q.vertices[0].z};
    flat.push_back({dot(to_rational(pb.u), d), dot(to_rational(pb.v), d)});
  }
  return normal_fan2(flat);
}

// True iff every ray of `coarse` is a ray of `fine` (for polygon fans this is
// exactly "every maximal cone of fine lies in a maximal cone of coarse").
inline bool fan_coarsens(const NormalFan2& coarse, const NormalFan2& fine) {
  for (const GridPoint& r : coarse.rays)
    if (std::find(fine.rays.begin(), fine.rays.end(), r) == fine.rays.end()) return false;
  return true;
}

}  // namespace polycover
