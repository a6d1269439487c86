#pragma once

#include <istream>
#include <ostream>
#include <sstream>

#include "polycover/generators.hpp"

namespace polycover {

// Textual interchange formats. Integers in decimal, one record per line,
// vertex order canonicalized on write so equal objects produce identical
// bytes.
//
//   polytope
//   name <token>          (optional)
//   dim 3
//   vertices <count>
//   <x> <y> <z>           (count lines, lexicographically sorted on write)
//
//   certificate
//   host <count>
//   <x> <y> <z>           (count lines)
//   pieces <count>
//   simplex <provenance> <facet> <4 x vertex>
//   box <provenance> <facet> <anchor> <e1> <e2> <e3>

struct PolytopeFile {
  std::string name;  // empty when absent
  Polytope3 polytope;
};

namespace detail {

inline std::string next_token(std::istream& in, const char* what) {
  std::string tok;
  if (!(in >> tok)) fail("ParseError", std::string("expected ") + what);
  return tok;
}

inline Int next_int(std::istream& in, const char* what) {
  std::string tok = next_token(in, what);
  try {
    return Int(tok);
  } catch (const std::exception&) {
    fail("ParseError", std::string("expected integer for ") + what + ", got '" + tok + "'");
  }
}

inline LatticePoint next_point(std::istream& in, const char* what) {
  Int x = next_int(in, what), y = next_int(in, what), z = next_int(in, what);
  return {x, y, z};
}

inline void expect_keyword(std::istream& in, const char* kw) {
  std::string tok = next_token(in, kw);
  if (tok != kw) fail("ParseError", std::string("expected '") + kw + "', got '" + tok + "'");
}

inline const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::SquareExtension: return "square-extension";
    case Provenance::CayleyPrism: return "cayley-prism";
    case Provenance::PushedFacetLozenge: return "pushed-facet-lozenge";
  }
  return "square-extension";
}

inline Provenance parse_provenance(const std::string& s) {
  if (s == "square-extension") return Provenance::SquareExtension;
  if (s == "cayley-prism") return Provenance::CayleyPrism;
  if (s == "pushed-facet-lozenge") return Provenance::PushedFacetLozenge;
  fail("ParseError", "unknown provenance '" + s + "'");
}

inline void write_point(std::ostream& out, const LatticePoint& p) {
  out << p.x << " " << p.y << " " << p.z;
}

}  // namespace detail

inline void write_polytope(std::ostream& out, const Polytope3& p,
                           const std::string& name = "") {
  out << "polytope\n";
  if (!name.empty()) out << "name " << name << "\n";
  out << "dim 3\n";
  out << "vertices " << p.vertices.size() << "\n";
  for (const LatticePoint& v : p.vertices) {  // already lexicographically sorted
    detail::write_point(out, v);
    out << "\n";
  }
}

inline PolytopeFile read_polytope(std::istream& in) {
  detail::expect_keyword(in, "polytope");
  PolytopeFile file;
  std::string tok = detail::next_token(in, "'name' or 'dim'");
  if (tok == "name") {
    file.name = detail::next_token(in, "name value");
    tok = detail::next_token(in, "'dim'");
  }
  if (tok != "dim") fail("ParseError", "expected 'dim', got '" + tok + "'");
  Int d = detail::next_int(in, "dimension");
  if (d != 3) fail("ParseError", "only dim 3 is supported");
  detail::expect_keyword(in, "vertices");
  Int count = detail::next_int(in, "vertex count");
  if (count < 4) fail("ParseError", "a 3-polytope needs at least 4 vertices");
  std::vector<LatticePoint> pts;
  for (Int i = 0; i < count; ++i) pts.push_back(detail::next_point(in, "vertex"));
  try {
    file.polytope = convex_hull3(pts);
  } catch (const Error& e) {
    if (e.code() == "DegenerateInput") fail("ParseError", e.what());
    throw;
  }
  return file;
}

inline void write_certificate(std::ostream& out, const CoveringCertificate& cert) {
  out << "certificate\n";
  out << "host " << cert.host.vertices.size() << "\n";
  for (const LatticePoint& v : cert.host.vertices) {
    detail::write_point(out, v);
    out << "\n";
  }
  out << "pieces " << cert.pieces.size() << "\n";
  for (const CoverPiece& piece : cert.pieces) {
    if (piece.kind == CoverPiece::Kind::Simplex) {
      out << "simplex " << detail::provenance_name(piece.provenance) << " "
          << piece.source_facet;
      for (const LatticePoint& v : piece.simplex) {
        out << " ";
        detail::write_point(out, v);
      }
    } else {
      out << "box " << detail::provenance_name(piece.provenance) << " " << piece.source_facet;
      for (const LatticePoint& v :
           {piece.box.anchor, piece.box.e1, piece.box.e2, piece.box.e3}) {
        out << " ";
        detail::write_point(out, v);
      }
    }
    out << "\n";
  }
}

inline CoveringCertificate read_certificate(std::istream& in) {
  detail::expect_keyword(in, "certificate");
  detail::expect_keyword(in, "host");
  Int count = detail::next_int(in, "host vertex count");
  std::vector<LatticePoint> pts;
  for (Int i = 0; i < count; ++i) pts.push_back(detail::next_point(in, "host vertex"));
  CoveringCertificate cert;
  try {
    cert.host = convex_hull3(pts);
  } catch (const Error& e) {
    if (e.code() == "DegenerateInput") fail("ParseError", e.what());
    throw;
  }
  detail::expect_keyword(in, "pieces");
  Int npieces = detail::next_int(in, "piece count");
  for (Int i = 0; i < npieces; ++i) {
    std::string kind = detail::next_token(in, "piece kind");
    Provenance prov = detail::parse_provenance(detail::next_token(in, "provenance"));
    Int facet = detail::next_int(in, "source facet");
    int fi = facet.convert_to<int>();
    if (kind == "simplex") {
      std::array<LatticePoint, 4> s;
      for (auto& v : s) v = detail::next_point(in, "simplex vertex");
      cert.pieces.push_back(CoverPiece::make_simplex(s, prov, fi));
    } else if (kind == "box") {
      Parallelepiped b;
      b.anchor = detail::next_point(in, "box anchor");
      b.e1 = detail::next_point(in, "box edge");
      b.e2 = detail::next_point(in, "box edge");
      b.e3 = detail::next_point(in, "box edge");
      cert.pieces.push_back(CoverPiece::make_box(b, prov, fi));
    } else {
      fail("ParseError", "unknown piece kind '" + kind + "'");
    }
  }
  return cert;
}

// Boundary mesh in OFF format; vertices are exact integers. Faces are the
// facet cycles, counterclockwise from outside.
inline void write_off(std::ostream& out, const Polytope3& p) {
  out << "OFF\n";
  out << p.vertices.size() << " " << p.facets.size() << " " << p.edges.size() << "\n";
  for (const LatticePoint& v : p.vertices) {
    detail::write_point(out, v);
    out << "\n";
  }
  for (const Facet& f : p.facets) {
    out << f.vertices.size();
    for (int id : f.vertices) out << " " << id;
    out << "\n";
  }
}

// Certificate export: the host mesh followed by one mesh per piece, each
// preceded by a comment carrying its index, kind and provenance.
inline void write_certificate_off(std::ostream& out, const CoveringCertificate& cert) {
  out << "# host\n";
  write_off(out, cert.host);
  for (size_t i = 0; i < cert.pieces.size(); ++i) {
    const CoverPiece& piece = cert.pieces[i];
    out << "# piece " << i << " "
        << (piece.kind == CoverPiece::Kind::Simplex ? "simplex" : "box") << " "
        << detail::provenance_name(piece.provenance) << " facet " << piece.source_facet
        << "\n";
    write_off(out, convex_hull3(piece.vertex_list()));
  }
}

inline std::string to_string(const LatticePoint& p) {
  std::ostringstream os;
  os << "(" << p.x << ", " << p.y << ", " << p.z << ")";
  return os.str();
}

inline std::string to_string(const RationalPoint& p) {
  std::ostringstream os;
  os << "(" << p.x << ", " << p.y << ", " << p.z << ")";
  return os.str();
}

}  // namespace polycover
