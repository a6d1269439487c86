// polycover: exact checks and constructive coverings for 3-dimensional
// lattice polytopes.
//
// Exit codes: 0 success, 1 mathematical failure (a requested check failed or
// the input was refused), 2 usage or parse error.

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "polycover/polycover.hpp"

using namespace polycover;

namespace {

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("ParseError", "cannot open input file '" + path + "'");
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) fail("ParseError", "cannot open output file '" + path + "'");
  return out;
}

LatticePoint parse_triple(const std::string& s) {
  std::string t = s;
  std::replace(t.begin(), t.end(), ',', ' ');
  std::istringstream in(t);
  LatticePoint p = detail::next_point(in, "coordinate triple");
  std::string extra;
  if (in >> extra) fail("ParseError", "trailing tokens in coordinate triple '" + s + "'");
  return p;
}

std::vector<LatticePoint> parse_triples(const std::string& s) {
  std::vector<LatticePoint> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ';'))
    if (!part.empty()) out.push_back(parse_triple(part));
  if (out.empty()) fail("ParseError", "no coordinate triples in '" + s + "'");
  return out;
}

// Bounded exhaustive search for p = p_1 + ... + p_n with parts in P; used for
// inputs the covering pipeline refuses (e.g. the non-IDP simplex).
std::optional<std::vector<LatticePoint>> exhaustive_decomposition(const Polytope3& p,
                                                                  const LatticePoint& target,
                                                                  const Int& n) {
  auto pts = lattice_points(p);
  auto [lo, hi] = p.bounding_box();
  std::vector<LatticePoint> acc;
  std::function<bool(const LatticePoint&, Int, size_t)> go =
      [&](const LatticePoint& rest, Int k, size_t from) -> bool {
    if (k == 0) return rest.is_zero();
    if (rest.x < k * lo.x || rest.x > k * hi.x || rest.y < k * lo.y ||
        rest.y > k * hi.y || rest.z < k * lo.z || rest.z > k * hi.z)
      return false;
    for (size_t i = from; i < pts.size(); ++i) {
      acc.push_back(pts[i]);
      if (go(rest - pts[i], k - 1, i)) return true;
      acc.pop_back();
    }
    return false;
  };
  if (go(target, n, 0)) return acc;
  return std::nullopt;
}

int run_check(const std::string& file, bool smooth, bool cs, bool idp, long long nmax) {
  PolytopeFile pf = [&] {
    auto in = open_input(file);
    return read_polytope(in);
  }();
  const Polytope3& p = pf.polytope;
  const bool all = !smooth && !cs && !idp;
  int failures = 0;

  if (smooth || all) {
    SmoothnessReport rep = check_smooth(p);
    if (rep.is_smooth) {
      std::cout << "smooth: PASS\n";
    } else {
      ++failures;
      std::cout << "smooth: FAIL (" << (rep.is_simple ? "simple" : "not simple") << ")\n";
      for (const auto& off : rep.offenders)
        std::cout << "  vertex " << to_string(p.vertices[static_cast<size_t>(off.vertex)])
                  << " edge-direction determinant " << off.det << "\n";
    }
  }
  if (cs || all) {
    CentralSymmetry sym = check_centrally_symmetric(p);
    if (sym.origin_centered) {
      std::cout << "centrally-symmetric: PASS\n";
    } else {
      ++failures;
      if (sym.symmetric)
        std::cout << "centrally-symmetric: FAIL (symmetric about " << to_string(*sym.center)
                  << ", not origin-centered)\n";
      else
        std::cout << "centrally-symmetric: FAIL\n";
    }
  }
  if (idp || all) {
    IdpReport rep = idp_check(p, Int(nmax));
    if (rep.idp_up_to) {
      std::cout << "idp: PASS (up to n = " << nmax << ")\n";
    } else {
      ++failures;
      std::cout << "idp: FAIL at n = " << rep.failure->n << ", witness "
                << to_string(rep.failure->witness) << " has no decomposition\n";
    }
  }
  return failures == 0 ? 0 : 1;
}

int report_verification(const VerifyReport& rep, const Int& grid) {
  if (rep.ok) {
    std::cout << "verification: PASS (lattice and 1/" << grid << " grid covered)\n";
    return 0;
  }
  std::cout << "verification: FAIL\n";
  for (const auto& [piece, vertex] : rep.containment_failures)
    std::cout << "  piece " << piece << " vertex " << to_string(vertex)
              << " outside the host\n";
  for (int piece : rep.bad_pieces) std::cout << "  piece " << piece << " degenerate\n";
  for (const LatticePoint& q : rep.uncovered_lattice)
    std::cout << "  lattice point " << to_string(q) << " uncovered\n";
  for (const RationalPoint& q : rep.uncovered_grid)
    std::cout << "  grid point " << to_string(q) << " uncovered\n";
  return 1;
}

int run_cover(const std::string& file, const std::string& out_path, long long grid) {
  PolytopeFile pf = [&] {
    auto in = open_input(file);
    return read_polytope(in);
  }();
  const Polytope3& p = pf.polytope;
  if (!check_smooth(p).is_smooth) {
    std::cout << "refused: input is not smooth\n";
    return 1;
  }
  if (!check_centrally_symmetric(p).origin_centered) {
    std::cout << "refused: input is not centrally symmetric about the origin\n";
    return 1;
  }
  CoveringCertificate cert = cover_polytope(p);
  {
    auto out = open_output(out_path);
    write_certificate(out, cert);
  }
  size_t simplices = 0;
  for (const CoverPiece& piece : cert.pieces)
    if (piece.kind == CoverPiece::Kind::Simplex) ++simplices;
  std::cout << "certificate: " << cert.pieces.size() << " pieces (" << simplices
            << " simplices, " << cert.pieces.size() - simplices << " boxes) -> " << out_path
            << "\n";
  return report_verification(verify_cover(cert, Int(grid)), Int(grid));
}

int run_decompose(const std::string& file, const std::string& point, long long n,
                  const std::string& cert_path) {
  PolytopeFile pf = [&] {
    auto in = open_input(file);
    return read_polytope(in);
  }();
  const Polytope3& p = pf.polytope;
  LatticePoint target = parse_triple(point);
  Int nn(n);
  if (nn < 1) fail("ParseError", "--n must be >= 1");
  if (!p.contains_dilated(target, nn)) {
    std::cout << "point " << to_string(target) << " is not in " << n << "P\n";
    return 1;
  }

  std::optional<std::vector<LatticePoint>> parts;
  if (!cert_path.empty()) {
    auto in = open_input(cert_path);
    CoveringCertificate cert = read_certificate(in);
    if (!(cert.host.vertices == p.vertices))
      fail("ParseError", "certificate host does not match the input polytope");
    parts = decompose_via_cover(p, cert, target, nn).parts;
  } else if (check_smooth(p).is_smooth &&
             check_centrally_symmetric(p).origin_centered) {
    CoveringCertificate cert = cover_polytope(p);
    parts = decompose_via_cover(p, cert, target, nn).parts;
  } else {
    parts = exhaustive_decomposition(p, target, nn);
    if (!parts) {
      std::cout << "no decomposition: " << to_string(target) << " is not a sum of " << n
                << " lattice points of P\n";
      return 1;
    }
  }

  for (size_t i = 0; i < parts->size(); ++i)
    std::cout << (i ? " + " : "") << to_string((*parts)[i]);
  std::cout << " = " << to_string(target) << "\n";
  return 0;
}

int run_gen(const std::string& kind, long long n, const std::string& pairs, uint64_t seed,
            long long chisels, const std::string& out_path) {
  Polytope3 p = [&] {
    if (kind == "cube") return cube(Int(n));
    if (kind == "counterexample") return counterexample_simplex();
    if (kind == "random")
      return random_cs_smooth(seed, Int(n), static_cast<int>(chisels));
    // chiseled
    Polytope3 q = cube(Int(n));
    if (pairs.empty()) fail("ParseError", "gen chiseled requires --pairs");
    for (const LatticePoint& v : parse_triples(pairs))
      q = chisel(q, {v, Int(1), true});
    return q;
  }();

  std::ostringstream name;
  if (kind == "cube" || kind == "chiseled")
    name << kind << "-" << n;
  else if (kind == "random")
    name << "random-s" << seed << "-n" << n << "-c" << chisels;
  else
    name << kind;

  auto out = open_output(out_path);
  write_polytope(out, p, name.str());
  std::cout << "wrote " << name.str() << " (" << p.vertices.size() << " vertices) -> "
            << out_path << "\n";
  return 0;
}

int run_export(const std::string& file, const std::string& out_path) {
  auto in = open_input(file);
  std::string head;
  if (!(in >> head)) fail("ParseError", "empty input file");
  in.seekg(0);
  auto out = open_output(out_path);
  if (head == "polytope") {
    PolytopeFile pf = read_polytope(in);
    write_off(out, pf.polytope);
  } else if (head == "certificate") {
    CoveringCertificate cert = read_certificate(in);
    if (cert.pieces.empty())
      std::cerr << "warning: certificate has no pieces; exporting the host only\n";
    write_certificate_off(out, cert);
  } else {
    fail("ParseError", "unrecognized input '" + head + "' (expected polytope/certificate)");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "polycover: exact smoothness / central-symmetry / integer-decomposition checks and\n"
      "constructive coverings of 3-dimensional lattice polytopes by parallelepipeds and\n"
      "unimodular simplices. POLYCOVER_THREADS bounds verification parallelism."};
  app.require_subcommand(1);

  std::string file, out_path, cert_path, point, pairs, kind;
  bool flag_smooth = false, flag_cs = false, flag_idp = false;
  long long nmax = 4, grid = 4, gen_n = 1, nparts = 1, chisels = 0;
  uint64_t seed = 0;

  CLI::App* c_check = app.add_subcommand("check", "verify properties of a polytope file");
  c_check->add_option("file", file, "polytope file")->required();
  c_check->add_flag("--smooth", flag_smooth, "check smoothness");
  c_check->add_flag("--centrally-symmetric", flag_cs, "check central symmetry about 0");
  c_check->add_flag("--idp", flag_idp, "check the decomposition property up to --nmax");
  c_check->add_option("--nmax", nmax, "dilation bound for --idp")->default_val(4);

  CLI::App* c_cover = app.add_subcommand(
      "cover", "cover a centrally symmetric smooth polytope and verify the certificate");
  c_cover->add_option("file", file, "polytope file")->required();
  c_cover->add_option("--out", out_path, "certificate output file")->required();
  c_cover->add_option("--verify-grid", grid, "grid denominator for verification")
      ->default_val(4);

  CLI::App* c_dec = app.add_subcommand("decompose", "write a lattice point of nP as a sum "
                                                    "of n lattice points of P");
  c_dec->add_option("file", file, "polytope file")->required();
  c_dec->add_option("--point", point, "target point x,y,z")->required();
  c_dec->add_option("--n", nparts, "number of parts")->required();
  c_dec->add_option("--cert", cert_path, "reuse a certificate file");

  CLI::App* c_gen = app.add_subcommand("gen", "generate a polytope file");
  c_gen->add_option("kind", kind, "cube | chiseled | counterexample | random")
      ->required()
      ->check(CLI::IsMember({"cube", "chiseled", "counterexample", "random"}));
  c_gen->add_option("--n", gen_n, "cube dilation")->default_val(1);
  c_gen->add_option("--pairs", pairs, "semicolon-separated antipodal vertices to chisel");
  c_gen->add_option("--seed", seed, "random seed")->default_val(0);
  c_gen->add_option("--chisels", chisels, "number of random antipodal chisels")
      ->default_val(0);
  c_gen->add_option("--out", out_path, "output file")->required();

  CLI::App* c_exp = app.add_subcommand("export", "export a polytope or certificate as OFF");
  c_exp->add_option("file", file, "polytope or certificate file")->required();
  c_exp->add_option("--format", kind, "mesh format")
      ->default_val("off")
      ->check(CLI::IsMember({"off"}));
  c_exp->add_option("--out", out_path, "output file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (c_check->parsed()) return run_check(file, flag_smooth, flag_cs, flag_idp, nmax);
    if (c_cover->parsed()) return run_cover(file, out_path, grid);
    if (c_dec->parsed()) return run_decompose(file, point, nparts, cert_path);
    if (c_gen->parsed()) return run_gen(kind, gen_n, pairs, seed, chisels, out_path);
    if (c_exp->parsed()) return run_export(file, out_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == "ParseError" ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
