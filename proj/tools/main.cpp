#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>

#include "tac/cech_cohomology.hpp"
#include "tac/pairing_intersection.hpp"
#include "tac/punctured.hpp"
#include "tac/tac_format.hpp"

using namespace tac;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SheafSpec {
  std::size_t p = 1;
  bool dual = false;
  std::string text;
};

SheafSpec parse_sheaf(const std::string& s, std::size_t n) {
  SheafSpec out;
  out.text = s;
  std::string num;
  if (s == "constant") {
    out.p = 0;
    return out;
  }
  if (s.rfind("wedge:", 0) == 0) {
    num = s.substr(6);
  } else if (s.rfind("dual-wedge:", 0) == 0) {
    num = s.substr(11);
    out.dual = true;
  } else {
    throw UsageError("sheaf must be wedge:<p>, dual-wedge:<p> or constant, got '" + s + "'");
  }
  if (num.empty() || num.find_first_not_of("0123456789") != std::string::npos)
    throw UsageError("bad wedge degree in '" + s + "'");
  out.p = std::stoul(num);
  if (out.p > n) throw UsageError("wedge degree exceeds the rank in '" + s + "'");
  return out;
}

Relative parse_relative(const std::string& s) {
  if (s == "none") return Relative::None;
  if (s == "delta") return Relative::Delta;
  if (s == "boundary") return Relative::Boundary;
  throw UsageError("relative must be none, delta or boundary, got '" + s + "'");
}

Field parse_field(const std::string& s) {
  if (s == "Z") return Field::Z;
  if (s == "Q") return Field::Q;
  throw UsageError("field must be Z or Q, got '" + s + "'");
}

SheafFunctor make_sheaf(const LocalSystem& L, const SheafSpec& spec, SheafKind kind) {
  if (spec.dual) return pushforward_sheaf(dual_system(L), spec.p, kind, true);
  return pushforward_sheaf(L, spec.p, kind);
}

std::string join(const IntVec& v, const char* sep = ",") {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? sep : "") << v[i];
  return os.str();
}

std::string join_sizes(const std::vector<std::size_t>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

void print_groups(std::ostream& os, const std::string& kind, const std::vector<HomologyGroup>& groups, bool machine) {
  for (const auto& H : groups) {
    if (machine) {
      os << kind << " degree=" << H.degree << " betti=" << H.betti << " torsion=" << join(H.torsion) << '\n';
    } else {
      os << "degree " << H.degree << ": betti " << H.betti;
      if (!H.torsion.empty()) os << ", torsion " << join(H.torsion, " ");
      os << '\n';
    }
  }
}

void print_matrix(std::ostream& os, const std::string& key, const Matrix& M, bool machine) {
  if (machine) {
    os << key << " rows=" << M.rows() << " cols=" << M.cols() << " entries=";
    for (std::size_t i = 0; i < M.rows(); ++i)
      for (std::size_t j = 0; j < M.cols(); ++j) os << (i || j ? "," : "") << M(i, j);
    os << '\n';
  } else {
    const std::string body = M.to_string();
    os << key << " " << M.rows() << "x" << M.cols() << '\n' << body;
    if (!body.empty() && body.back() != '\n') os << '\n';
  }
}

AffineModel load_model(const std::string& path) { return read_tac(read_file(path)); }

// ---------------------------------------------------------------- commands

struct Common {
  bool machine = false;
};

int cmd_homology(const Common& c, const std::string& input, const std::string& sheaf, const std::string& rel,
                 const std::string& field) {
  AffineModel m = load_model(input);
  SheafSpec spec = parse_sheaf(sheaf, m.system.rank());
  Relative r = parse_relative(rel);
  Field f = parse_field(field);
  auto groups = homology(chain_complex(make_sheaf(m.system, spec, SheafKind::Closed), r), f);
  if (!c.machine)
    std::cout << "homology of " << m.name << ", sheaf " << spec.text << ", relative " << rel << ", field " << field
              << '\n';
  print_groups(std::cout, "homology", groups, c.machine);
  return 0;
}

int cmd_cohomology(const Common& c, const std::string& input, const std::string& sheaf, const std::string& rel,
                   const std::string& field) {
  AffineModel m = load_model(input);
  SheafSpec spec = parse_sheaf(sheaf, m.system.rank());
  Relative r = parse_relative(rel);
  if (r == Relative::Delta) throw UsageError("cohomology supports relative none or boundary");
  Field f = parse_field(field);
  auto groups = homology(vertex_star_cech(make_sheaf(m.system, spec, SheafKind::Open), r), f);
  if (!c.machine)
    std::cout << "cohomology of " << m.name << ", sheaf " << spec.text << ", relative " << rel << ", field " << field
              << '\n';
  print_groups(std::cout, "cohomology", groups, c.machine);
  return 0;
}

int cmd_pairing(const Common& c, const std::string& input, std::size_t p, std::size_t q) {
  AffineModel m = load_model(input);
  if (!m.symple_provenance)
    std::cerr << "warning: " << input << " is not marked as locally symple; perfectness is not expected\n";
  if (p > m.system.rank() || q > m.complex->dimension()) throw UsageError("pairing degrees out of range");
  PairingReport r = pairing_matrix(m.system, p, q);
  if (c.machine) {
    std::cout << "pairing p=" << p << " q=" << q << '\n';
    print_matrix(std::cout, "gram", r.gram, true);
    std::cout << "divisors=" << join(r.divisors) << '\n';
    std::cout << "perfect_over_Q=" << (r.perfect_over_Q ? 1 : 0) << '\n';
    std::cout << "perfect_over_Z=" << (r.perfect_over_Z ? 1 : 0) << '\n';
  } else {
    std::cout << r.to_string();
  }
  return 0;
}

struct PointsDoc {
  std::size_t p = 0;
  std::vector<IntersectionPoint> points;
};

// TAC-POINTS 1 / n <n> / p <p> / q <q> / points <k>, then per point
// "v <q*n ints> w <(n-q)*n ints> xv <C(n,p) ints> xw <C(n,n-p) ints>".
PointsDoc read_points(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t number = 0;
  auto next = [&]() {
    while (std::getline(in, line)) {
      ++number;
      if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  auto keyed = [&](const std::string& key) -> long {
    if (!next()) throw TacError(number, "unexpected end of input, expected '" + key + "'");
    std::istringstream ls(line);
    std::string k;
    long v = 0;
    if (!(ls >> k >> v) || k != key) throw TacError(number, "expected '" + key + " <integer>'");
    return v;
  };
  if (!next() || line.find("TAC-POINTS 1") != 0) throw TacError(number, "expected header 'TAC-POINTS 1'");
  PointsDoc doc;
  const long n = keyed("n"), p = keyed("p"), q = keyed("q"), k = keyed("points");
  if (n < 1 || p < 0 || p > n || q < 0 || q > n || k < 0) throw TacError(number, "sizes out of range");
  doc.p = static_cast<std::size_t>(p);
  const auto N = static_cast<std::size_t>(n), Q = static_cast<std::size_t>(q);
  for (long i = 0; i < k; ++i) {
    if (!next()) throw TacError(number, "unexpected end of input, expected a point");
    std::istringstream ls(line);
    std::string tok;
    std::map<std::string, IntVec> fields;
    std::string key;
    while (ls >> tok) {
      if (tok == "v" || tok == "w" || tok == "xv" || tok == "xw") {
        key = tok;
        fields[key];
        continue;
      }
      if (key.empty()) throw TacError(number, "value before a field name");
      Int x;
      if (x.set_str(tok, 10) != 0) throw TacError(number, "expected an integer, found '" + tok + "'");
      fields[key].push_back(x);
    }
    auto need = [&](const std::string& f, std::size_t size) {
      if (fields[f].size() != size)
        throw TacError(number, "field " + f + " needs " + std::to_string(size) + " integers");
      return fields[f];
    };
    IntersectionPoint pt;
    IntVec v = need("v", Q * N), w = need("w", (N - Q) * N);
    for (std::size_t j = 0; j < Q; ++j) pt.tangent_v.emplace_back(v.begin() + j * N, v.begin() + (j + 1) * N);
    for (std::size_t j = 0; j < N - Q; ++j) pt.tangent_w.emplace_back(w.begin() + j * N, w.begin() + (j + 1) * N);
    pt.xi_v = need("xv", binomial(N, doc.p));
    pt.xi_w = need("xw", binomial(N, N - doc.p));
    doc.points.push_back(std::move(pt));
  }
  return doc;
}

int cmd_intersect(const Common& c, const std::string& input, const std::vector<std::string>& cycles,
                  const std::string& points, long omega) {
  if (!points.empty()) {
    if (!input.empty() || !cycles.empty()) throw UsageError("--points takes no model or cycle arguments");
    PointsDoc doc = read_points(read_file(points));
    Int value = intersection_number(doc.points, doc.p, Int(omega));
    if (c.machine)
      std::cout << "intersection=" << value << '\n';
    else
      std::cout << "local intersection number: " << value << '\n';
    return 0;
  }
  if (input.empty() || cycles.size() < 2) throw UsageError("intersect needs a model and at least two cycle files");
  AffineModel m = load_model(input);
  if (!m.symple_provenance)
    std::cerr << "warning: " << input << " is not marked as locally symple; the dual may not exist\n";
  std::vector<TropicalCycle> zs;
  for (const auto& path : cycles) {
    CycleDocument d = read_cycle(read_file(path), m.system);
    if (d.relative == Relative::Delta) throw UsageError(path + ": cycles relative to the discriminant cannot be intersected");
    zs.push_back(std::move(d.cycle));
  }
  const std::size_t n = m.complex->dimension();
  const std::size_t p = zs[0].p, q = zs[0].q;
  IntersectionPairing I(m.system, p, q, m.orientation);
  if (zs.size() == 2) {
    if (zs[1].p != n - p || zs[1].q != n - q)
      throw UsageError("second cycle must have p = " + std::to_string(n - p) + " and q = " + std::to_string(n - q));
    Int value = I(zs[0], zs[1]);
    if (c.machine)
      std::cout << "intersection=" << value << '\n';
    else
      std::cout << zs[0].name << " . " << zs[1].name << " = " << value << '\n';
    return 0;
  }
  if (2 * p != n || 2 * q != n) throw UsageError("a gram of several cycles needs middle degrees");
  for (const auto& z : zs)
    if (z.p != p || z.q != q) throw UsageError("cycle " + z.name + " has different degrees");
  Matrix G = I.gram(zs, zs);
  print_matrix(std::cout, "gram", G, c.machine);
  if (G == G.transpose()) {
    LatticeReport r = gram_lattice_classify(G);
    if (c.machine)
      std::cout << "rank=" << r.rank << " det=" << r.determinant << " even=" << (r.even ? 1 : 0)
                << " positive=" << r.positive << " negative=" << r.negative << " zero=" << r.zero << '\n';
    else
      std::cout << "lattice: " << r.to_string() << '\n';
  }
  return 0;
}

int cmd_duality(const Common& c, const std::string& input, int p_opt, const std::string& field) {
  AffineModel m = load_model(input);
  Field f = parse_field(field);
  const std::size_t n = m.system.rank();
  bool ok = true;
  for (std::size_t p = 0; p <= n; ++p) {
    if (p_opt >= 0 && static_cast<std::size_t>(p_opt) != p) continue;
    DualityReport r = verify_pl_duality(m.system, p, f);
    ok = ok && r.passed;
    if (c.machine) {
      std::cout << "duality p=" << p << " passed=" << (r.passed ? 1 : 0) << '\n';
      print_groups(std::cout, "homology_rel", r.homology_rel, true);
      print_groups(std::cout, "cohomology_abs", r.cohomology_abs, true);
      print_groups(std::cout, "homology_abs", r.homology_abs, true);
      print_groups(std::cout, "cohomology_rel", r.cohomology_rel, true);
    } else {
      std::cout << "p=" << p << ": " << (r.passed ? "passed" : "FAILED") << '\n';
      if (!r.message.empty()) std::cout << r.message << (r.message.back() == '\n' ? "" : "\n");
    }
  }
  return ok ? 0 : 3;
}

int cmd_punctured(const Common& c, std::size_t a, std::size_t b) {
  if (a < 1 || b < 1 || a > 6 || b > 6) throw UsageError("punctured needs dimensions between 1 and 6");
  PuncturedReport r = punctured_cech_S(LatticePolytope::standard_simplex(a), LatticePolytope::standard_simplex(b));
  if (c.machine) {
    std::cout << "punctured a=" << a << " b=" << b << " ranks=" << join_sizes(r.ranks)
              << " expected=" << join_sizes(r.expected) << " tensor=" << join_sizes(r.tensor)
              << " matches=" << (r.matches ? 1 : 0) << '\n';
  } else {
    std::cout << "H^k of S on the punctured product, k = 0.." << r.ranks.size() - 1 << '\n';
    std::cout << "computed: " << join_sizes(r.ranks) << '\n';
    std::cout << "expected: " << join_sizes(r.expected) << '\n';
    std::cout << "tensor complex: " << join_sizes(r.tensor) << '\n';
    std::cout << (r.matches ? "match" : "MISMATCH") << '\n';
  }
  return r.matches ? 0 : 3;
}

int cmd_example(const Common& c, const std::string& name, const std::string& out) {
  AffineModel m;
  try {
    m = build_named_model(name);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  write_file(out, write_tac(m));
  std::filesystem::path base(out);
  std::vector<std::string> written{out};
  for (const auto& z : m.cycles) {
    std::filesystem::path cyc = base;
    cyc.replace_extension();
    cyc += "." + z.name + ".cyc";
    write_file(cyc.string(), write_cycle({z, Relative::None}, *m.complex));
    written.push_back(cyc.string());
  }
  for (const auto& w : written) std::cout << (c.machine ? "wrote=" : "wrote ") << w << '\n';
  return 0;
}

int cmd_validate(const Common& c, const std::string& input, const std::vector<std::string>& cycles) {
  AffineModel m = load_model(input);
  const DeltaComplex& K = *m.complex;
  std::size_t nd = 0;
  for (std::uint32_t k = 0; k <= K.top_dimension(); ++k)
    for (std::uint32_t i = 0; i < K.count(k); ++i) nd += K.in_delta(Cell{k, i});
  if (c.machine)
    std::cout << "model=" << m.name << " dimension=" << K.dimension() << " rank=" << m.system.rank()
              << " tops=" << K.count(K.dimension()) << " delta_simplices=" << nd << " ok=1\n";
  else
    std::cout << m.name << ": dimension " << K.dimension() << ", rank " << m.system.rank() << ", "
              << K.count(K.dimension()) << " top simplices, " << nd << " discriminant simplices: ok\n";
  for (const auto& path : cycles) {
    CycleDocument d = read_cycle(read_file(path), m.system);
    if (c.machine)
      std::cout << "cycle=" << d.cycle.name << " p=" << d.cycle.p << " q=" << d.cycle.q << " ok=1\n";
    else
      std::cout << "cycle " << d.cycle.name << " (p=" << d.cycle.p << ", q=" << d.cycle.q << "): ok\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Integral affine manifolds with singularities: homology, cohomology and pairings"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_flag("--machine", common.machine, "Print key=value lines instead of tables");

  std::string input, sheaf = "wedge:1", rel = "none", field = "Z", points, name, out;
  std::vector<std::string> cycles;
  std::size_t p = 1, q = 1, a = 1, b = 1;
  int p_opt = -1;
  long omega = 1;

  auto* hom = app.add_subcommand("homology", "Homology with coefficients in a pushforward sheaf");
  hom->add_option("input", input, "TAC file")->required();
  hom->add_option("--sheaf", sheaf, "wedge:<p>, dual-wedge:<p> or constant");
  hom->add_option("--rel", rel, "none, delta or boundary");
  hom->add_option("--field", field, "Z or Q");

  auto* coh = app.add_subcommand("cohomology", "Cech cohomology for the open vertex-star cover");
  coh->add_option("input", input, "TAC file")->required();
  coh->add_option("--sheaf", sheaf, "wedge:<p>, dual-wedge:<p> or constant");
  coh->add_option("--rel", rel, "none or boundary");
  coh->add_option("--field", field, "Z or Q");

  auto* pair = app.add_subcommand("pairing", "Pairing of H_q(wedge^p) with H^q(dual wedge^p)");
  pair->add_option("input", input, "TAC file")->required();
  pair->add_option("-p", p, "wedge degree");
  pair->add_option("-q", q, "homological degree");

  auto* inter = app.add_subcommand("intersect", "Intersection numbers of cycles, or the local formula");
  inter->add_option("input", input, "TAC file");
  inter->add_option("cycles", cycles, "cycle files");
  inter->add_option("--points", points, "TAC-POINTS file for the local formula");
  inter->add_option("--omega", omega, "multiple of e_1 ^ ... ^ e_n used as volume form");

  auto* dual = app.add_subcommand("duality", "Poincare-Lefschetz comparison for every wedge degree");
  dual->add_option("input", input, "TAC file")->required();
  dual->add_option("-p", p_opt, "only this wedge degree");
  dual->add_option("--field", field, "Z or Q");

  auto* punc = app.add_subcommand("punctured", "Cohomology of S on the punctured product of two fans");
  punc->add_option("a", a, "dimension of the triangle")->required();
  punc->add_option("b", b, "dimension of the cotriangle")->required();

  auto* ex = app.add_subcommand("example", "Write a model from the catalog (and its cycles)");
  ex->add_option("name", name, "model name")->required();
  ex->add_option("out", out, "output TAC path")->required();

  auto* val = app.add_subcommand("validate", "Load and check a model and optional cycle files");
  val->add_option("input", input, "TAC file")->required();
  val->add_option("cycles", cycles, "cycle files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*hom) return cmd_homology(common, input, sheaf, rel, field);
    if (*coh) return cmd_cohomology(common, input, sheaf, rel, field);
    if (*pair) return cmd_pairing(common, input, p, q);
    if (*inter) return cmd_intersect(common, input, cycles, points, omega);
    if (*dual) return cmd_duality(common, input, p_opt, field);
    if (*punc) return cmd_punctured(common, a, b);
    if (*ex) return cmd_example(common, name, out);
    if (*val) return cmd_validate(common, input, cycles);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const TacError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::logic_error& e) {
    // invalid_argument derives from logic_error but signals bad input.
    if (dynamic_cast<const std::invalid_argument*>(&e)) {
      std::cerr << "error: " << e.what() << '\n';
      return 2;
    }
    std::cerr << "internal verification failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
