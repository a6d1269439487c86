// Build a centrally symmetric smooth polytope, cover it by parallelepipeds
// and unimodular simplices, and use the certificate to decompose every
// lattice point of 2P as a sum of two lattice points of P.

#include <iostream>

#include "polycover/polycover.hpp"

using namespace polycover;

int main() {
  Polytope3 p = chisel(cube(2), {{Int(2), Int(2), Int(2)}, Int(1), true});
  std::cout << "host: " << p.vertices.size() << " vertices, " << p.facets.size()
            << " facets, " << lattice_points(p).size() << " lattice points\n";

  CoveringCertificate cert = cover_polytope(p);
  size_t simplices = 0;
  for (const CoverPiece& piece : cert.pieces)
    if (piece.kind == CoverPiece::Kind::Simplex) ++simplices;
  std::cout << "certificate: " << cert.pieces.size() << " pieces (" << simplices
            << " unimodular simplices, " << cert.pieces.size() - simplices
            << " parallelepipeds)\n";

  VerifyReport rep = verify_cover(cert, 4);
  std::cout << "verification at quarter-grid resolution: " << (rep.ok ? "pass" : "FAIL")
            << "\n";

  size_t decomposed = 0;
  for (const LatticePoint& q : lattice_points(dilate(p, 2))) {
    DecompositionWitness w = decompose_via_cover(p, cert, q, 2);
    ++decomposed;
    if (decomposed <= 3)
      std::cout << "  " << to_string(w.parts[0]) << " + " << to_string(w.parts[1]) << " = "
                << to_string(q) << "\n";
  }
  std::cout << "decomposed all " << decomposed << " lattice points of 2P\n";
  return rep.ok ? 0 : 1;
}
