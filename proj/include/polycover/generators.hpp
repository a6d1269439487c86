#pragma once

#include "polycover/covering.hpp"

namespace polycover {

// The dilated standard cube [-n, n]^3; smooth and origin-centered.
inline Polytope3 cube(const Int& n) {
  require(n >= 1, "InvalidArgument", "cube dilation must be >= 1");
  std::vector<LatticePoint> pts;
  for (int sx : {-1, 1})
    for (int sy : {-1, 1})
      for (int sz : {-1, 1}) pts.push_back({Int(sx) * n, Int(sy) * n, Int(sz) * n});
  Polytope3 p = convex_hull3(pts);
  require(check_smooth(p).is_smooth, "InternalError", "cube not smooth");
  require(check_centrally_symmetric(p).origin_centered, "InternalError", "cube not symmetric");
  return p;
}

struct ChiselSpec {
  LatticePoint vertex;  // must be a vertex of the polytope
  Int depth = 1;
  bool antipodal = false;  // also cut -vertex (requires it to be a vertex)
};

// The convex hull of (0,0,0), (1,0,0), (0,0,1), (1,2,1): simple but not
// smooth, and not IDP: (1,1,1) lies in 2P but is not a sum of two lattice
// points of P.
inline Polytope3 counterexample_simplex() {
  return convex_hull3({{Int(0), Int(0), Int(0)},
                       {Int(1), Int(0), Int(0)},
                       {Int(0), Int(0), Int(1)},
                       {Int(1), Int(2), Int(1)}});
}

// Cuts off a smooth vertex with the plane through the points at lattice
// distance `depth` along its three edges. For depth 1 the new facet is a
// unimodular triangle and smoothness is preserved (asserted); deeper cuts are
// returned as-is for the caller to inspect.
inline Polytope3 chisel(const Polytope3& p, const ChiselSpec& spec) {
  require(spec.depth >= 1, "InvalidArgument", "chisel depth must be >= 1");
  auto vi = p.vertex_index(spec.vertex);
  require(vi.has_value(), "NotAVertex", "chisel point is not a vertex");

  auto cut_data = [&](const LatticePoint& v) {
    auto adj = p.vertex_adjacency();
    int idx = *p.vertex_index(v);
    const auto& nb = adj[static_cast<size_t>(idx)];
    require(nb.size() == 3, "NotSmoothVertex", "vertex is not simple");
    std::array<LatticePoint, 3> dirs;
    for (int k = 0; k < 3; ++k) {
      LatticePoint e = p.vertices[static_cast<size_t>(nb[static_cast<size_t>(k)])] - v;
      dirs[static_cast<size_t>(k)] = primitive(e);
      // lattice length of the edge
      Int len = e.x != 0 ? e.x / dirs[static_cast<size_t>(k)].x
                         : (e.y != 0 ? e.y / dirs[static_cast<size_t>(k)].y
                                     : e.z / dirs[static_cast<size_t>(k)].z);
      require(len >= spec.depth + 1, "ChiselTooDeep",
              "edge at the vertex is shorter than depth + 1");
    }
    require(is_unimodular_basis(dirs[0], dirs[1], dirs[2]), "NotSmoothVertex",
            "edge directions are not a lattice basis");
    // inward normal of the cut: n(dirs[i]) = 1 for all i
    LatticePoint n = cross(dirs[1] - dirs[0], dirs[2] - dirs[0]);
    n = primitive(n);
    if (dot(n, dirs[0]) < 0) n = -n;
    require(dot(n, dirs[0]) == 1 && dot(n, dirs[1]) == 1 && dot(n, dirs[2]) == 1,
            "InternalError", "cut normal is not dual to the edge basis");
    return std::pair<LatticePoint, std::array<LatticePoint, 3>>{n, dirs};
  };

  std::vector<LatticePoint> cut_vertices = {spec.vertex};
  if (spec.antipodal) {
    require(p.vertex_index(-spec.vertex).has_value(), "NotAVertex",
            "antipodal point is not a vertex");
    cut_vertices.push_back(-spec.vertex);
  }

  std::vector<LatticePoint> keep = p.vertices;
  std::vector<LatticePoint> fresh;
  for (const LatticePoint& v : cut_vertices) {
    auto [n, dirs] = cut_data(v);
    Int level = dot(n, v) + spec.depth;
    for (const LatticePoint& w : p.vertices)
      if (!(w == v))
        require(dot(n, w) > level, "ChiselTooDeep", "cut plane reaches another vertex");
    keep.erase(std::remove(keep.begin(), keep.end(), v), keep.end());
    for (const LatticePoint& d : dirs) fresh.push_back(v + spec.depth * d);
  }
  // antipodal cuts must not interfere with each other
  for (const LatticePoint& v : cut_vertices) {
    auto [n, dirs] = cut_data(v);
    (void)dirs;
    Int level = dot(n, v) + spec.depth;
    for (const LatticePoint& q : fresh) {
      bool own = false;
      for (const LatticePoint& d : cut_data(v).second)
        if (q == v + spec.depth * d) own = true;
      if (!own) require(dot(n, q) > level, "ChiselTooDeep", "antipodal cuts collide");
    }
  }

  keep.insert(keep.end(), fresh.begin(), fresh.end());
  Polytope3 result = convex_hull3(keep);

  for (const LatticePoint& v : cut_vertices)
    require(!result.vertex_index(v).has_value(), "InternalError", "cut vertex survived");
  for (const LatticePoint& q : fresh)
    require(result.vertex_index(q).has_value(), "ChiselTooDeep", "cut corner is not a vertex");

  if (spec.depth == 1) {
    // the new facets are unimodular triangles and smoothness is preserved
    for (const LatticePoint& v : cut_vertices) {
      auto [n, dirs] = cut_data(v);
      (void)dirs;
      bool found = false;
      for (const Facet& fc : result.facets) {
        if (!(fc.normal.a == n && fc.offset == dot(n, v) + 1)) continue;
        require(fc.vertices.size() == 3, "InternalError", "depth-1 cut facet not a triangle");
        found = true;
      }
      require(found, "InternalError", "cut facet missing");
    }
    require(check_smooth(result).is_smooth, "InternalError",
            "depth-1 chisel broke smoothness");
  }
  return result;
}

// Deterministic pseudo-random generator (splitmix64), no platform entropy.
struct SplitMix64 {
  uint64_t state;
  explicit SplitMix64(uint64_t seed) : state(seed) {}
  uint64_t next() {
    state += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  size_t below(size_t k) { return static_cast<size_t>(next() % static_cast<uint64_t>(k)); }
};

// Starts from cube(n) and applies up to `chisels` antipodal depth-1 cuts at
// pseudo-randomly chosen eligible vertex pairs. Fully determined by the seed;
// the output is always smooth and origin-centered.
inline Polytope3 random_cs_smooth(uint64_t seed, const Int& n, int chisels) {
  require(n >= 1 && chisels >= 0, "InvalidArgument", "parameters must be positive");
  SplitMix64 rng(seed);
  Polytope3 p = cube(n);
  for (int step = 0; step < chisels; ++step) {
    std::vector<LatticePoint> eligible;
    for (const LatticePoint& v : p.vertices) {
      if (v < -v) continue;  // one representative per antipodal pair
      try {
        chisel(p, {v, Int(1), true});
        eligible.push_back(v);
      } catch (const Error&) {
        // ineligible pair; skip
      }
    }
    if (eligible.empty()) break;
    const LatticePoint& pick = eligible[rng.below(eligible.size())];
    p = chisel(p, {pick, Int(1), true});
  }
  require(check_smooth(p).is_smooth, "InternalError", "generator output not smooth");
  require(check_centrally_symmetric(p).origin_centered, "InternalError",
          "generator output not centrally symmetric");
  return p;
}

}  // namespace polycover
