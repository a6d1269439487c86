#pragma once

#include <cstdlib>
#include <functional>
#include <string>
#include <thread>

#include "polycover/analysis.hpp"

namespace polycover {

using Triangle2 = std::array<GridPoint, 3>;

namespace detail {

inline Triangle2 canonical_triangle(GridPoint a, GridPoint b, GridPoint c) {
  if (cross(b - a, c - a) < 0) std::swap(b, c);
  Triangle2 t{a, b, c};
  int mi = 0;
  for (int i = 1; i < 3; ++i)
    if (t[static_cast<size_t>(i)] < t[static_cast<size_t>(mi)]) mi = i;
  std::rotate(t.begin(), t.begin() + mi, t.end());
  return t;
}

inline bool triangle_contains(const Triangle2& t, const RatGridPoint& q) {
  for (int i = 0; i < 3; ++i) {
    RatGridPoint a = to_rational(t[static_cast<size_t>(i)]);
    RatGridPoint b = to_rational(t[static_cast<size_t>((i + 1) % 3)]);
    if (cross(b - a, q - a) < 0) return false;
  }
  return true;
}

inline unsigned thread_budget() {
  if (const char* s = std::getenv("POLYCOVER_THREADS")) {
    int v = std::atoi(s);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  unsigned h = std::thread::hardware_concurrency();
  return h ? h : 1;
}

}  // namespace detail

// Full triangulation of a lattice polygon: uses every lattice point as a
// vertex, so each triangle has lattice area 1/2 (unimodular). Deterministic
// greedy construction: candidate edges are accepted shortest first (ties by
// endpoint order) when they contain no lattice point and cross no accepted
// edge; on grid-like polygons this yields the per-cell diagonal pattern.
inline std::vector<Triangle2> full_triangulation2(const EmbeddedPolygon& f) {
  require(f.vertices2d.size() >= 3, "LowDimensional", "triangulation needs a 2D polygon");
  std::vector<GridPoint> pts = f.lattice_points2d();  // lexicographic
  const size_t n = pts.size();
  require(n >= 3, "InternalError", "polygon with fewer than 3 lattice points");

  auto orient = [&](const GridPoint& a, const GridPoint& b, const GridPoint& c) {
    return cross(b - a, c - a);
  };
  auto strictly_between = [&](const GridPoint& a, const GridPoint& b, const GridPoint& q) {
    if (orient(a, b, q) != 0) return false;
    Int lo_x = std::min(a.x, b.x), hi_x = std::max(a.x, b.x);
    Int lo_y = std::min(a.y, b.y), hi_y = std::max(a.y, b.y);
    if (q.x < lo_x || q.x > hi_x || q.y < lo_y || q.y > hi_y) return false;
    return !(q == a) && !(q == b);
  };

  struct Cand {
    Int len2;
    size_t a, b;
  };
  std::vector<Cand> cands;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      GridPoint d = pts[j] - pts[i];
      cands.push_back({d.x * d.x + d.y * d.y, i, j});
    }
  std::sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) {
    if (x.len2 != y.len2) return x.len2 < y.len2;
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  });

  auto proper_cross = [&](const GridPoint& p1, const GridPoint& p2, const GridPoint& q1,
                          const GridPoint& q2) {
    Int d1 = orient(q1, q2, p1), d2 = orient(q1, q2, p2);
    Int d3 = orient(p1, p2, q1), d4 = orient(p1, p2, q2);
    return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
           ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
  };

  std::vector<std::pair<size_t, size_t>> edges;
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (const Cand& c : cands) {
    bool blocked = false;
    for (size_t k = 0; k < n && !blocked; ++k)
      if (strictly_between(pts[c.a], pts[c.b], pts[k])) blocked = true;
    for (const auto& [ea, eb] : edges) {
      if (blocked) break;
      if (proper_cross(pts[c.a], pts[c.b], pts[ea], pts[eb])) blocked = true;
    }
    if (blocked) continue;
    edges.push_back({c.a, c.b});
    adj[c.a][c.b] = adj[c.b][c.a] = 1;
  }

  std::vector<Triangle2> tris;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      if (!adj[i][j]) continue;
      for (size_t k = j + 1; k < n; ++k) {
        if (!adj[i][k] || !adj[j][k]) continue;
        if (orient(pts[i], pts[j], pts[k]) == 0) continue;
        bool empty = true;
        for (size_t q = 0; q < n && empty; ++q) {
          if (q == i || q == j || q == k) continue;
          Int o1 = orient(pts[i], pts[j], pts[q]);
          Int o2 = orient(pts[j], pts[k], pts[q]);
          Int o3 = orient(pts[k], pts[i], pts[q]);
          if ((o1 >= 0 && o2 >= 0 && o3 >= 0) || (o1 <= 0 && o2 <= 0 && o3 <= 0))
            empty = false;
        }
        if (empty) tris.push_back(detail::canonical_triangle(pts[i], pts[j], pts[k]));
      }
    }
  std::sort(tris.begin(), tris.end(), [](const Triangle2& x, const Triangle2& y) {
    for (int i = 0; i < 3; ++i) {
      if (x[static_cast<size_t>(i)] == y[static_cast<size_t>(i)]) continue;
      return x[static_cast<size_t>(i)] < y[static_cast<size_t>(i)];
    }
    return false;
  });

  Int area = 0;
  for (const Triangle2& t : tris) {
    Int c = cross(t[1] - t[0], t[2] - t[0]);
    require(c == 1, "InternalError", "triangulation cell is not unimodular CCW");
    area += c;
  }
  require(area == f.area2(), "InternalError", "triangulation does not fill the polygon");
  return tris;
}

// Extends a unimodular triangle strictly inside a smooth polygon to a lattice
// unit square in the polygon. The three parallelogram completions (reflect a
// vertex through the midpoint of the opposite edge) are tried longest opposite
// edge first, ties broken by the completion point. Failure certifies the
// polygon was not smooth (or the triangle not inside) and is surfaced.
inline UnitSquare extend_triangle_to_square(const EmbeddedPolygon& f, const Triangle2& t) {
  for (const GridPoint& q : t)
    require(f.contains2d(q), "InvalidArgument", "triangle is not inside the polygon");
  {
    std::vector<GridPoint> tv(t.begin(), t.end()), fv = f.vertices2d;
    std::sort(tv.begin(), tv.end());
    std::sort(fv.begin(), fv.end());
    require(tv != fv, "InvalidArgument", "triangle equals the whole polygon");
  }

  struct Trial {
    Int len2;      // squared length of the edge kept as the square's diagonal
    GridPoint q;   // fourth corner
    int k;         // reflected vertex
  };
  std::vector<Trial> trials;
  for (int k = 0; k < 3; ++k) {
    const GridPoint& a = t[static_cast<size_t>((k + 1) % 3)];
    const GridPoint& b = t[static_cast<size_t>((k + 2) % 3)];
    GridPoint d = b - a;
    trials.push_back({d.x * d.x + d.y * d.y, a + b - t[static_cast<size_t>(k)], k});
  }
  std::sort(trials.begin(), trials.end(), [](const Trial& x, const Trial& y) {
    if (x.len2 != y.len2) return x.len2 > y.len2;
    return x.q < y.q;
  });

  for (const Trial& tr : trials) {
    if (!f.contains2d(tr.q)) continue;
    const GridPoint& anchor2 = t[static_cast<size_t>(tr.k)];
    GridPoint d1 = t[static_cast<size_t>((tr.k + 1) % 3)] - anchor2;
    GridPoint d2 = t[static_cast<size_t>((tr.k + 2) % 3)] - anchor2;
    UnitSquare sq;
    sq.anchor = f.to_3d(anchor2);
    sq.d1 = d1.x * f.chart.u + d1.y * f.chart.v;
    sq.d2 = d2.x * f.chart.u + d2.y * f.chart.v;
    sq.plane_normal = f.plane_normal;
    sq.plane_offset = f.plane_offset;
    return sq;
  }
  fail("SquareExtensionFailed",
       "no parallelogram completion lies in the polygon (not a smooth polygon?)");
}

// conv(D, -D) for a unit square D whose affine hull misses the origin: the
// parallelepiped spanned by d1, d2 and (sum of D's corners)/2 from -corner.
inline Parallelepiped square_to_cs_parallelepiped(const UnitSquare& d) {
  require(det3(d.d1, d.d2, d.anchor) != 0, "DegeneratePiece",
          "square plane passes through the origin");
  Parallelepiped q{-(d.anchor + d.d1 + d.d2), d.d1, d.d2,
                   2 * d.anchor + d.d1 + d.d2};
  std::vector<LatticePoint> want;
  for (const LatticePoint& c : d.corners()) {
    want.push_back(c);
    want.push_back(-c);
  }
  std::sort(want.begin(), want.end());
  auto cs = q.corners();
  std::vector<LatticePoint> got(cs.begin(), cs.end());
  std::sort(got.begin(), got.end());
  require(got == want, "InternalError", "conv(D,-D) parallelepiped has wrong corners");
  return q;
}

struct PushedFacet {
  RationalPolygon polygon;  // the slice one lattice level inside the facet
  bool slice_empty = false;
  bool is_lattice = false;
  std::optional<bool> coarsens;  // fan(pushed) coarsens fan(facet); set when both are 2D
};

// The facet pushed one lattice step into the polytope: slice(P, a, c+1).
// For smooth P the slice is a lattice polygon whose fan coarsens the facet's;
// both properties are reported, not assumed.
inline PushedFacet push_facet(const Polytope3& p, int facet_index) {
  require(facet_index >= 0 && facet_index < static_cast<int>(p.facets.size()),
          "InvalidArgument", "facet index out of range");
  const Facet& f = p.facets[static_cast<size_t>(facet_index)];
  PushedFacet out;
  try {
    out.polygon = slice(p, f.normal, Rat(f.offset + 1));
  } catch (const Error& e) {
    if (e.code() != "EmptySlice") throw;
    out.slice_empty = true;
    return out;
  }
  out.is_lattice = is_lattice_polygon(out.polygon);
  if (out.polygon.is_polygon() && out.is_lattice) {
    NormalFan2 facet_fan = slice_fan(p, f.normal, Rat(f.offset));
    NormalFan2 pushed_fan = slice_fan(p, f.normal, Rat(f.offset + 1));
    out.coarsens = fan_coarsens(pushed_fan, facet_fan);
  }
  return out;
}

struct FacetDilation {
  Int r;
  LatticePoint translation;            // pushed = r * facet + translation
  std::array<LatticePoint, 3> facet;   // triangle facet, slice cyclic order
  std::array<LatticePoint, 3> pushed;  // matched: pushed[i] = r*facet[i] + translation
};

// For a unimodular triangle facet of a smooth polytope, the pushed slice is an
// integer dilate of the facet. Returns the ratio and the aligning translation.
inline FacetDilation facet_dilation_ratio(const Polytope3& p, int facet_index) {
  const Facet& f = p.facets[static_cast<size_t>(facet_index)];
  require(f.vertices.size() == 3, "InvalidArgument", "facet is not a triangle");

  RationalPolygon fpoly = slice(p, f.normal, Rat(f.offset));
  require(fpoly.vertices.size() == 3, "InternalError", "triangle facet slice broken");
  std::array<LatticePoint, 3> ft;
  for (int i = 0; i < 3; ++i) ft[static_cast<size_t>(i)] = to_lattice(fpoly.vertices[static_cast<size_t>(i)]);
  require(content(cross(ft[1] - ft[0], ft[2] - ft[0])) == 1, "InvalidArgument",
          "facet triangle is not unimodular");

  PushedFacet pushed = push_facet(p, facet_index);
  if (pushed.slice_empty || !pushed.is_lattice)
    fail("NotHomothetic", "pushed slice is not a lattice polygon");
  const auto& pv = pushed.polygon.vertices;

  FacetDilation out;
  out.facet = ft;
  if (pv.size() == 1) {  // r = 0: the slice is a single lattice point
    LatticePoint q = to_lattice(pv[0]);
    out.r = 0;
    out.translation = q;
    out.pushed = {q, q, q};
  } else if (pv.size() == 3) {
    std::array<LatticePoint, 3> gt;
    for (int i = 0; i < 3; ++i) gt[static_cast<size_t>(i)] = to_lattice(pv[static_cast<size_t>(i)]);
    bool matched = false;
    for (int m = 0; m < 3 && !matched; ++m) {
      // candidate ratio from the first edge pair
      LatticePoint e0 = ft[1] - ft[0];
      LatticePoint g0 = gt[static_cast<size_t>((m + 1) % 3)] - gt[static_cast<size_t>(m)];
      Int r;
      if (e0.x != 0) {
        if (g0.x % e0.x != 0) continue;
        r = g0.x / e0.x;
      } else if (e0.y != 0) {
        if (g0.y % e0.y != 0) continue;
        r = g0.y / e0.y;
      } else {
        if (g0.z % e0.z != 0) continue;
        r = g0.z / e0.z;
      }
      if (r < 1) continue;
      LatticePoint tr = gt[static_cast<size_t>(m)] - r * ft[0];
      bool all = true;
      for (int i = 0; i < 3; ++i)
        if (!(gt[static_cast<size_t>((m + i) % 3)] == r * ft[static_cast<size_t>(i)] + tr)) all = false;
      if (!all) continue;
      out.r = r;
      out.translation = tr;
      for (int i = 0; i < 3; ++i)
        out.pushed[static_cast<size_t>(i)] = gt[static_cast<size_t>((m + i) % 3)];
      matched = true;
    }
    if (!matched) fail("NotHomothetic", "pushed slice is not an integer dilate of the facet");
  } else {
    fail("NotHomothetic", "pushed slice is not a triangle or point");
  }

  if (check_centrally_symmetric(p).origin_centered)
    require(out.r >= 2, "InternalError",
            "dilation ratio below 2 on a centrally symmetric host");
  return out;
}

// Covering of the Cayley polytope conv(F, Fp) by 3*r^2 unimodular simplices:
// Fp = r*F + t at lattice distance 1 is triangulated into r^2 translates of
// +-F; each resulting prism contributes its 3 staircase simplices. For the
// reversed (twisted) cells the staircase is a strict subset of the cell prism,
// but the gap lies inside the neighboring translate prisms, so the union still
// covers conv(F, Fp).
inline std::vector<CoverPiece> cayley_cover(const std::array<LatticePoint, 3>& f,
                                            const std::array<LatticePoint, 3>& fp,
                                            const Int& r, int source_facet = -1) {
  require(r >= 1, "BadCayleyInput", "dilation ratio must be >= 1");
  LatticePoint u = f[1] - f[0], v = f[2] - f[0];
  LatticePoint w = cross(u, v);
  require(!w.is_zero() && content(w) == 1, "BadCayleyInput", "F is not a unimodular triangle");
  LinearForm a{primitive(w)};

  int match = -1;
  LatticePoint tr;
  for (int m = 0; m < 3 && match < 0; ++m) {
    LatticePoint cand = fp[static_cast<size_t>(m)] - r * f[0];
    bool all = true;
    for (int i = 0; i < 3; ++i)
      if (!(fp[static_cast<size_t>((m + i) % 3)] == r * f[static_cast<size_t>(i)] + cand)) all = false;
    if (all) {
      match = m;
      tr = cand;
    }
  }
  require(match >= 0, "BadCayleyInput", "Fp is not r*F up to translation");
  Int dist = a(fp[static_cast<size_t>(match)]) - a(f[0]);
  require(dist == 1 || dist == -1, "BadCayleyInput", "triangles are not at lattice distance 1");

  const LatticePoint p0 = r * f[0] + tr;
  auto grid = [&](const Int& i, const Int& j) { return p0 + i * u + j * v; };

  std::vector<CoverPiece> out;
  auto staircase = [&](const std::array<LatticePoint, 3>& g) {
    const std::array<std::array<LatticePoint, 4>, 3> simps = {{
        {f[0], f[1], f[2], g[2]},
        {f[0], f[1], g[1], g[2]},
        {f[0], g[0], g[1], g[2]},
    }};
    for (const auto& s : simps) {
      CoverPiece piece = CoverPiece::make_simplex(s, Provenance::CayleyPrism, source_facet);
      require(piece.unimodular(), "InternalError", "Cayley simplex is not unimodular");
      out.push_back(piece);
    }
  };

  for (Int i = 0; i <= r - 1; ++i)
    for (Int j = 0; i + j <= r - 1; ++j) {
      staircase({grid(i, j), grid(i + 1, j), grid(i, j + 1)});  // translate of F
      if (i + j <= r - 2)
        staircase({grid(i + 1, j + 1), grid(i, j + 1), grid(i + 1, j)});  // translate of -F
    }
  require(out.size() == static_cast<size_t>(3 * r * r), "InternalError",
          "unexpected Cayley simplex count");
  return out;
}

namespace detail {

// 2D lozenge spans in triangle grid coordinates, in fixed priority order.
inline const std::array<std::array<GridPoint, 2>, 3>& lozenge_orientations() {
  static const std::array<std::array<GridPoint, 2>, 3> dirs = {{
      {GridPoint{Int(1), Int(0)}, GridPoint{Int(0), Int(1)}},    // {u, v}
      {GridPoint{Int(1), Int(0)}, GridPoint{Int(-1), Int(1)}},   // {u, v-u}
      {GridPoint{Int(0), Int(1)}, GridPoint{Int(1), Int(-1)}},   // {v, u-v}
  }};
  return dirs;
}

inline bool in_triangle_grid(const GridPoint& q, const Int& r) {
  return q.x >= 0 && q.y >= 0 && q.x + q.y <= r;
}

}  // namespace detail

// A lattice unit parallelogram (lozenge) containing x and contained in the
// dilated triangle Fp = r * (unimodular triangle), r >= 2. Orientation
// priority {u,v}, {u,v-u}, {v,u-v}; anchors scanned in lexicographic order.
inline UnitSquare lozenge_containing(const std::array<LatticePoint, 3>& fp_in, const Int& r,
                                     const RationalPoint& x) {
  require(r >= 2, "RatioTooSmall", "lozenges in r*F need r >= 2");
  std::array<LatticePoint, 3> fp = fp_in;
  std::sort(fp.begin(), fp.end());
  LatticePoint ru = fp[1] - fp[0], rv = fp[2] - fp[0];
  require(ru.x % r == 0 && ru.y % r == 0 && ru.z % r == 0 && rv.x % r == 0 &&
              rv.y % r == 0 && rv.z % r == 0,
          "InvalidArgument", "triangle is not an r-th dilate");
  LatticePoint u{ru.x / r, ru.y / r, ru.z / r}, v{rv.x / r, rv.y / r, rv.z / r};
  LatticePoint w = cross(u, v);
  require(!w.is_zero() && content(w) == 1, "InvalidArgument", "not a unimodular base triangle");

  // plane membership and grid coordinates of x
  RationalPoint d = {x.x - Rat(fp[0].x), x.y - Rat(fp[0].y), x.z - Rat(fp[0].z)};
  RationalPoint wr = to_rational(w);
  if (dot(wr, d) != 0) fail("OutsidePolygon", "point is off the triangle plane");
  Rat ww(dot(w, w));
  Rat s = dot(cross(d, to_rational(v)), wr) / ww;
  Rat t = dot(cross(to_rational(u), d), wr) / ww;
  if (s < 0 || t < 0 || s + t > Rat(r)) fail("OutsidePolygon", "point outside the triangle");

  for (const auto& dir : detail::lozenge_orientations()) {
    for (Int i = -1; i <= r; ++i)
      for (Int j = -1; j <= r; ++j) {
        GridPoint anchor{i, j};
        GridPoint c1 = anchor + dir[0], c2 = anchor + dir[1], c3 = anchor + dir[0] + dir[1];
        if (!detail::in_triangle_grid(anchor, r) || !detail::in_triangle_grid(c1, r) ||
            !detail::in_triangle_grid(c2, r) || !detail::in_triangle_grid(c3, r))
          continue;
        // x inside anchor + [0,1] d1 + [0,1] d2?
        Rat ds = s - Rat(anchor.x), dt = t - Rat(anchor.y);
        Rat den(cross(dir[0], dir[1]));
        Rat alpha = (ds * Rat(dir[1].y) - dt * Rat(dir[1].x)) / den;
        Rat beta = (Rat(dir[0].x) * dt - Rat(dir[0].y) * ds) / den;
        if (alpha < 0 || alpha > 1 || beta < 0 || beta > 1) continue;
        UnitSquare sq;
        sq.anchor = fp[0] + anchor.x * u + anchor.y * v;
        sq.d1 = dir[0].x * u + dir[0].y * v;
        sq.d2 = dir[1].x * u + dir[1].y * v;
        LatticePoint n = w < -w ? -w : w;  // lex-positive primitive normal
        sq.plane_normal = LinearForm{n};
        sq.plane_offset = dot(n, fp[0]);
        return sq;
      }
  }
  fail("InternalError", "no lozenge found although r >= 2");
}

namespace detail {

// Antipodal facet pairs of an origin-centered polytope: representative facet
// index -> partner index (representative has the smaller index).
inline std::vector<std::pair<int, int>> antipodal_facet_pairs(const Polytope3& p) {
  std::vector<std::pair<int, int>> pairs;
  std::vector<char> seen(p.facets.size(), 0);
  for (size_t i = 0; i < p.facets.size(); ++i) {
    if (seen[i]) continue;
    const Facet& f = p.facets[i];
    int partner = -1;
    for (size_t j = 0; j < p.facets.size(); ++j) {
      if (j == i) continue;
      if (p.facets[j].normal.a == -f.normal.a && p.facets[j].offset == f.offset) {
        partner = static_cast<int>(j);
        break;
      }
    }
    require(partner >= 0, "InternalError", "facet without antipodal partner");
    seen[i] = seen[static_cast<size_t>(partner)] = 1;
    pairs.push_back({static_cast<int>(i), partner});
  }
  return pairs;
}

inline UnitSquare grid_lozenge(const std::array<LatticePoint, 3>& fp_matched,
                               const LatticePoint& u, const LatticePoint& v,
                               const LinearForm& normal, const Int& offset,
                               const GridPoint& anchor, const GridPoint& d1,
                               const GridPoint& d2) {
  UnitSquare sq;
  sq.anchor = fp_matched[0] + anchor.x * u + anchor.y * v;
  sq.d1 = d1.x * u + d1.y * v;
  sq.d2 = d2.x * u + d2.y * v;
  sq.plane_normal = normal;
  sq.plane_offset = offset;
  return sq;
}

}  // namespace detail

// Constructive covering of a point of an origin-centered smooth polytope by a
// single parallelepiped or unimodular simplex, following the ray through x.
inline CoverPiece cover_point(const Polytope3& p, const RationalPoint& x) {
  require(check_smooth(p).is_smooth, "NotSmooth", "host is not smooth");
  require(check_centrally_symmetric(p).origin_centered, "NotCentrallySymmetric",
          "host is not origin-centered");
  require(p.contains(x), "OutsidePolytope", "query point is outside the host");

  auto finish = [&](CoverPiece piece) {
    require(piece.contains(x), "InternalError", "cover piece misses its query point");
    for (const LatticePoint& c : piece.vertex_list())
      require(p.contains(c), "InternalError", "cover piece leaves the host");
    return piece;
  };

  auto square_box_for_facet = [&](int fi, const RatGridPoint& target2) {
    EmbeddedPolygon f = facet_polygon(p, fi);
    std::vector<Triangle2> tris = full_triangulation2(f);
    for (const Triangle2& t : tris) {
      if (!detail::triangle_contains(t, target2)) continue;
      UnitSquare d = extend_triangle_to_square(f, t);
      return CoverPiece::make_box(square_to_cs_parallelepiped(d),
                                  Provenance::SquareExtension, fi);
    }
    fail("InternalError", "exit point not in the facet triangulation");
  };

  if (x.x == 0 && x.y == 0 && x.z == 0) {
    // any centrally symmetric box contains the origin
    for (size_t fi = 0; fi < p.facets.size(); ++fi) {
      if (p.facets[fi].vertices.size() == 3) continue;
      EmbeddedPolygon f = facet_polygon(p, static_cast<int>(fi));
      UnitSquare d = extend_triangle_to_square(f, full_triangulation2(f)[0]);
      return finish(CoverPiece::make_box(square_to_cs_parallelepiped(d),
                                         Provenance::SquareExtension, static_cast<int>(fi)));
    }
    fail("InternalError", "no non-triangle facet on a centrally symmetric smooth host");
  }

  RayExit exit = ray_exit(p, x);
  const int fi = exit.facets[0];  // deterministic tie-break: lowest facet index
  const Facet& f = p.facets[static_cast<size_t>(fi)];

  if (f.vertices.size() != 3) {
    EmbeddedPolygon fpoly = facet_polygon(p, fi);
    return finish(square_box_for_facet(fi, fpoly.to_2d(exit.exit)));
  }

  FacetDilation fd = facet_dilation_ratio(p, fi);
  if (f.normal(x) <= Rat(f.offset + 1)) {
    // inside the slab conv(F, F'): pick a Cayley simplex. Fast path locates
    // the grid cell by projecting from the center of similarity; the full
    // scan backstops points in a twisted cell's staircase gap.
    LatticePoint u = fd.facet[1] - fd.facet[0], v = fd.facet[2] - fd.facet[0];
    RationalPoint sctr = {Rat(-fd.translation.x) / Rat(fd.r - 1),
                          Rat(-fd.translation.y) / Rat(fd.r - 1),
                          Rat(-fd.translation.z) / Rat(fd.r - 1)};
    Rat ax = f.normal(x), as = f.normal(sctr);
    Rat mu = (Rat(f.offset + 1) - as) / (ax - as);
    RationalPoint vb = {sctr.x + mu * (x.x - sctr.x), sctr.y + mu * (x.y - sctr.y),
                        sctr.z + mu * (x.z - sctr.z)};
    LatticePoint w = cross(u, v);
    Rat ww(dot(w, w));
    RationalPoint dvb = {vb.x - Rat(fd.pushed[0].x), vb.y - Rat(fd.pushed[0].y),
                         vb.z - Rat(fd.pushed[0].z)};
    Rat s = dot(cross(dvb, to_rational(v)), to_rational(w)) / ww;
    Rat t = dot(cross(to_rational(u), dvb), to_rational(w)) / ww;
    auto grid = [&](const Int& i, const Int& j) { return fd.pushed[0] + i * u + j * v; };
    auto try_cell = [&](const Int& i, const Int& j, bool down) -> std::optional<CoverPiece> {
      if (i < 0 || j < 0 || i + j > fd.r - (down ? 2 : 1)) return std::nullopt;
      std::array<LatticePoint, 3> g =
          down ? std::array<LatticePoint, 3>{grid(i + 1, j + 1), grid(i, j + 1), grid(i + 1, j)}
               : std::array<LatticePoint, 3>{grid(i, j), grid(i + 1, j), grid(i, j + 1)};
      const std::array<std::array<LatticePoint, 4>, 3> simps = {{
          {fd.facet[0], fd.facet[1], fd.facet[2], g[2]},
          {fd.facet[0], fd.facet[1], g[1], g[2]},
          {fd.facet[0], g[0], g[1], g[2]},
      }};
      for (const auto& sv : simps) {
        CoverPiece piece = CoverPiece::make_simplex(sv, Provenance::CayleyPrism, fi);
        if (piece.contains(x)) return piece;
      }
      return std::nullopt;
    };
    Int i0 = rat_floor(s), j0 = rat_floor(t);
    for (Int di = -1; di <= 0; ++di)
      for (Int dj = -1; dj <= 0; ++dj) {
        if (auto hit = try_cell(i0 + di, j0 + dj, false)) return finish(*hit);
        if (auto hit = try_cell(i0 + di, j0 + dj, true)) return finish(*hit);
      }
    for (const CoverPiece& piece : cayley_cover(fd.facet, fd.pushed, fd.r, fi))
      if (piece.contains(x)) return finish(piece);
    fail("InternalError", "slab point missed by the Cayley cover");
  }

  // beyond the slab: project the ray onto the pushed triangle's plane
  Rat ax = f.normal(x);
  Rat scale = Rat(f.offset + 1) / ax;
  RationalPoint vt = {scale * x.x, scale * x.y, scale * x.z};
  UnitSquare loz = lozenge_containing(fd.pushed, fd.r, vt);
  return finish(CoverPiece::make_box(square_to_cs_parallelepiped(loz),
                                     Provenance::PushedFacetLozenge, fi));
}

// Finite covering certificate for an origin-centered smooth polytope. Facet
// pairs with non-triangle facets contribute one conv(D,-D) box per triangle
// of the facet triangulation; unimodular-triangle pairs contribute the Cayley
// simplices of both facets plus conv(L,-L) boxes for a lozenge covering of
// the pushed triangle. Duplicates are removed by canonical vertex key.
inline CoveringCertificate cover_polytope(const Polytope3& p) {
  require(check_smooth(p).is_smooth, "NotSmooth", "host is not smooth");
  require(check_centrally_symmetric(p).origin_centered, "NotCentrallySymmetric",
          "host is not origin-centered");

  std::vector<CoverPiece> pieces;
  for (const auto& [fi, fj] : detail::antipodal_facet_pairs(p)) {
    const Facet& f = p.facets[static_cast<size_t>(fi)];
    if (f.vertices.size() != 3) {
      EmbeddedPolygon fpoly = facet_polygon(p, fi);
      for (const Triangle2& t : full_triangulation2(fpoly)) {
        UnitSquare d = extend_triangle_to_square(fpoly, t);
        pieces.push_back(CoverPiece::make_box(square_to_cs_parallelepiped(d),
                                              Provenance::SquareExtension, fi));
      }
      continue;
    }

    FacetDilation fd = facet_dilation_ratio(p, fi);
    std::vector<CoverPiece> cay = cayley_cover(fd.facet, fd.pushed, fd.r, fi);
    for (const CoverPiece& piece : cay) {
      pieces.push_back(piece);
      std::array<LatticePoint, 4> neg;
      for (int k = 0; k < 4; ++k) neg[static_cast<size_t>(k)] = -piece.simplex[static_cast<size_t>(k)];
      pieces.push_back(CoverPiece::make_simplex(neg, Provenance::CayleyPrism, fj));
    }

    // lozenge covering of the pushed triangle r*F: full cells as squares,
    // hypotenuse cells as slanted lozenges
    LatticePoint u = fd.facet[1] - fd.facet[0], v = fd.facet[2] - fd.facet[0];
    const auto& dirs = detail::lozenge_orientations();
    auto add_lozenge = [&](const GridPoint& anchor, int orientation) {
      UnitSquare sq = detail::grid_lozenge(fd.pushed, u, v, f.normal, f.offset + 1, anchor,
                                           dirs[static_cast<size_t>(orientation)][0],
                                           dirs[static_cast<size_t>(orientation)][1]);
      pieces.push_back(CoverPiece::make_box(square_to_cs_parallelepiped(sq),
                                            Provenance::PushedFacetLozenge, fi));
    };
    for (Int i = 0; i + 2 <= fd.r; ++i)
      for (Int j = 0; i + j + 2 <= fd.r; ++j) add_lozenge({i, j}, 0);
    for (Int i = 0; i <= fd.r - 1; ++i) {
      Int j = fd.r - 1 - i;
      if (i >= 1)
        add_lozenge({i, j}, 1);  // corners (i,j),(i+1,j),(i-1,j+1),(i,j+1)
      else
        add_lozenge({Int(0), j}, 2);  // corners (0,j),(0,j+1),(1,j-1),(1,j)
    }
  }

  std::vector<std::vector<LatticePoint>> keys;
  std::vector<CoverPiece> dedup;
  for (const CoverPiece& piece : pieces) {
    auto key = piece.canonical_key();
    if (std::find(keys.begin(), keys.end(), key) != keys.end()) continue;
    keys.push_back(std::move(key));
    dedup.push_back(piece);
  }

  for (const CoverPiece& piece : dedup)
    for (const LatticePoint& c : piece.vertex_list())
      require(p.contains(c), "InternalError", "certificate piece leaves the host");
  return {p, dedup};
}

struct VerifyReport {
  bool ok = false;
  std::vector<std::pair<int, LatticePoint>> containment_failures;  // piece, vertex
  std::vector<int> bad_pieces;               // non-unimodular simplex / flat box
  std::vector<LatticePoint> uncovered_lattice;
  std::vector<RationalPoint> uncovered_grid;  // grid points in host missed by all pieces
};

// Certificate checks: (a) pieces inside the host, (b) every lattice point of
// the host covered, (c) every point of (1/N)Z^3 in the host covered, (d) all
// simplices unimodular and boxes nondegenerate. Failures are collected, not
// thrown. The grid sweep is data-parallel (POLYCOVER_THREADS bounds it).
inline VerifyReport verify_cover(const CoveringCertificate& cert, const Int& n_grid) {
  require(n_grid >= 1, "InvalidArgument", "grid denominator must be >= 1");
  VerifyReport rep;

  for (size_t i = 0; i < cert.pieces.size(); ++i) {
    const CoverPiece& piece = cert.pieces[i];
    for (const LatticePoint& c : piece.vertex_list())
      if (!cert.host.contains(c))
        rep.containment_failures.push_back({static_cast<int>(i), c});
    bool shape_ok = piece.kind == CoverPiece::Kind::Simplex ? piece.unimodular()
                                                            : piece.box.det() != 0;
    if (!shape_ok) rep.bad_pieces.push_back(static_cast<int>(i));
  }

  // scaled sweep: q runs over N * host ∩ Z^3, i.e. q/N over host ∩ (1/N)Z^3
  auto sweep = [&](const Int& scale) {
    auto [lo, hi] = cert.host.bounding_box();
    Int xlo = scale * lo.x, xhi = scale * hi.x;
    std::vector<Int> starts;
    unsigned threads = detail::thread_budget();
    Int span = xhi - xlo + 1;
    Int chunk = span / Int(threads) + 1;
    std::vector<std::vector<LatticePoint>> missed(threads);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      Int begin = xlo + Int(w) * chunk;
      Int end = begin + chunk - 1;
      if (end > xhi) end = xhi;
      if (begin > xhi) break;
      pool.emplace_back([&, w, begin, end]() {
        size_t hint = 0;
        for (Int x = begin; x <= end; ++x)
          for (Int y = scale * lo.y; y <= scale * hi.y; ++y)
            for (Int z = scale * lo.z; z <= scale * hi.z; ++z) {
              LatticePoint q{x, y, z};
              bool inside = true;
              for (const Facet& fc : cert.host.facets)
                if (fc.normal(q) < scale * fc.offset) {
                  inside = false;
                  break;
                }
              if (!inside) continue;
              bool covered = false;
              for (size_t k = 0; k < cert.pieces.size() && !covered; ++k) {
                size_t idx = (hint + k) % cert.pieces.size();
                if (cert.pieces[idx].contains_dilated(q, scale)) {
                  covered = true;
                  hint = idx;
                }
              }
              if (!covered) missed[w].push_back(q);
            }
      });
    }
    for (auto& th : pool) th.join();
    std::vector<LatticePoint> all;
    for (auto& m : missed) all.insert(all.end(), m.begin(), m.end());
    std::sort(all.begin(), all.end());
    return all;
  };

  rep.uncovered_lattice = sweep(1);
  for (const LatticePoint& q : sweep(n_grid))
    rep.uncovered_grid.push_back(
        {Rat(q.x) / Rat(n_grid), Rat(q.y) / Rat(n_grid), Rat(q.z) / Rat(n_grid)});

  rep.ok = rep.containment_failures.empty() && rep.bad_pieces.empty() &&
           rep.uncovered_lattice.empty() && rep.uncovered_grid.empty();
  return rep;
}

// Decomposes p in n*P through the certificate: find a piece whose n-th dilate
// contains p, then decompose inside that piece. The witness is re-verified.
inline DecompositionWitness decompose_via_cover(const Polytope3& p,
                                                const CoveringCertificate& cert,
                                                const LatticePoint& target, const Int& n) {
  require(n >= 1, "InvalidArgument", "dilation must be >= 1");
  if (!p.contains_dilated(target, n))
    fail("OutsideDilate", "point is not in the n-th dilate of the host");
  for (const CoverPiece& piece : cert.pieces) {
    if (!piece.contains_dilated(target, n)) continue;
    DecompositionWitness w = piece.kind == CoverPiece::Kind::Simplex
                                 ? decompose_in_simplex(piece.simplex, target, n)
                                 : decompose_in_parallelepiped(piece.box, target, n);
    LatticePoint sum{Int(0), Int(0), Int(0)};
    for (const LatticePoint& part : w.parts) {
      require(p.contains(part), "InternalError", "witness part outside the host");
      sum += part;
    }
    require(sum == target, "InternalError", "witness does not sum to the target");
    return w;
  }
  fail("InternalError", "certificate does not cover the target point");
}

}  // namespace polycover
