#include <sstream>
#include <stdexcept>

#include "tac/model_library.hpp"

namespace tac {

namespace {

struct PolytopeToken {
  const char* name;
  LatticePolytope (*make)();
};

const PolytopeToken kPolytopes[] = {
    {"simplex1", [] { return LatticePolytope::standard_simplex(1); }},
    {"simplex2", [] { return LatticePolytope::standard_simplex(2); }},
    {"simplex3", [] { return LatticePolytope::standard_simplex(3); }},
    {"square", [] { return LatticePolytope::unit_square(); }},
    {"interval2", [] { return LatticePolytope::simplex({{0}, {2}}); }},
};

/// Matches a polytope token at the start of `s` and removes it.
LatticePolytope take_polytope(std::string& s, const std::string& full) {
  for (const auto& t : kPolytopes) {
    const std::string n = t.name;
    if (s.compare(0, n.size(), n) == 0) {
      s.erase(0, n.size());
      return t.make();
    }
  }
  throw std::invalid_argument("unknown polytope in model name '" + full + "'");
}

long parse_long(const std::string& s, const std::string& full) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw std::invalid_argument("bad number '" + s + "' in model name '" + full + "'");
  return v;
}

IntVec parse_direction(const std::string& s, const std::string& full) {
  auto comma = s.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("direction needs two entries in '" + full + "'");
  return IntVec{parse_long(s.substr(0, comma), full), parse_long(s.substr(comma + 1), full)};
}

AffineModel build_symple_named(const std::string& full) {
  std::string s = full.substr(std::string("symple:").size());
  SympleModelSpec spec;
  spec.triangle = take_polytope(s, full);
  if (s.empty() || s[0] != 'x') throw std::invalid_argument("expected 'x' between the polytopes in '" + full + "'");
  s.erase(0, 1);
  spec.cotriangle = take_polytope(s, full);
  if (!s.empty()) {
    if (s.compare(0, 3, "+R^") != 0)
      throw std::invalid_argument("trailing text in model name '" + full + "'");
    long c = parse_long(s.substr(3), full);
    if (c < 0 || c > 4) throw std::invalid_argument("trivial factor count out of range in '" + full + "'");
    spec.trivial = static_cast<std::size_t>(c);
  }
  AffineModel m = build_symple_model(spec);
  m.name = full;
  return m;
}

}  // namespace

AffineModel build_named_model(const std::string& name) {
  AffineModel m;
  if (name == "focus-focus") {
    m = build_focus_focus();
  } else if (name == "goggles-shared") {
    m = build_goggles(GogglesVariant::SharedLine);
  } else if (name == "goggles-parallel") {
    m = build_goggles(GogglesVariant::ParallelLines);
  } else if (name == "torsion") {
    m = build_torsion_pair({1, 1}, {1, -1});
  } else if (name.rfind("torsion:", 0) == 0) {
    std::string rest = name.substr(8);
    auto colon = rest.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("torsion model needs two directions: '" + name + "'");
    m = build_torsion_pair(parse_direction(rest.substr(0, colon), name), parse_direction(rest.substr(colon + 1), name));
  } else if (name == "cube-k3") {
    m = build_cube_k3();
  } else if (name == "conifold") {
    m = build_conifold();
  } else if (name.rfind("symple:", 0) == 0) {
    return build_symple_named(name);
  } else {
    std::ostringstream os;
    os << "unknown model '" << name << "'; known models:";
    for (const auto& n : model_catalog()) os << ' ' << n;
    os << " (symple:<A>x<B>[+R^c] with A among simplex1 simplex2 simplex3 square interval2, B among simplex1 simplex2 "
          "simplex3 interval2; torsion:x,y:u,v)";
    throw std::invalid_argument(os.str());
  }
  m.name = name;
  return m;
}

std::vector<std::string> model_catalog() {
  return {"focus-focus",
          "goggles-shared",
          "goggles-parallel",
          "torsion",
          "cube-k3",
          "conifold",
          "symple:simplex1xsimplex1",
          "symple:interval2xsimplex1",
          "symple:simplex2xsimplex1",
          "symple:simplex1xsimplex2",
          "symple:simplex1xsimplex1+R^1",
          "symple:simplex2xsimplex2",
          "symple:simplex3xsimplex1",
          "symple:simplex1xsimplex3",
          "symple:simplex2xsimplex1+R^1",
          "symple:simplex1xsimplex2+R^1",
          "symple:simplex1xsimplex1+R^2"};
}

}  // namespace tac
