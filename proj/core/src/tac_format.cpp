#include "tac/tac_format.hpp"

#include <fstream>
#include <sstream>

namespace tac {

TacError::TacError(std::size_t line, const std::string& message)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

class Reader {
 public:
  explicit Reader(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    std::size_t number = 0;
    while (std::getline(in, raw)) {
      ++number;
      if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
      std::istringstream ls(raw);
      Line l{number, {}};
      for (std::string tok; ls >> tok;) l.tokens.push_back(tok);
      if (!l.tokens.empty()) lines_.push_back(std::move(l));
    }
  }

  const Line& next(const std::string& what) {
    if (pos_ >= lines_.size()) throw TacError(last_line(), "unexpected end of input, expected " + what);
    return lines_[pos_++];
  }
  bool peek_key(const std::string& key) const { return pos_ < lines_.size() && lines_[pos_].tokens[0] == key; }

  /// A "key value..." line; returns the values.
  std::vector<std::string> keyed(const std::string& key, std::size_t values) {
    const Line& l = next("'" + key + "'");
    current_ = l.number;
    if (l.tokens[0] != key) throw TacError(l.number, "expected '" + key + "', found '" + l.tokens[0] + "'");
    if (l.tokens.size() != values + 1)
      throw TacError(l.number, "'" + key + "' takes " + std::to_string(values) + " value(s)");
    return {l.tokens.begin() + 1, l.tokens.end()};
  }

  std::size_t current() const { return current_; }
  void set_current(std::size_t line) { current_ = line; }
  bool done() const { return pos_ >= lines_.size(); }

 private:
  std::size_t last_line() const { return lines_.empty() ? 0 : lines_.back().number; }
  std::vector<Line> lines_;
  std::size_t pos_ = 0;
  std::size_t current_ = 0;
};

long to_long(const std::string& s, std::size_t line) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size()) throw TacError(line, "expected an integer, found '" + s + "'");
  return v;
}

std::size_t to_count(const std::string& s, std::size_t line) {
  long v = to_long(s, line);
  if (v < 0) throw TacError(line, "expected a non-negative integer, found '" + s + "'");
  return static_cast<std::size_t>(v);
}

Int to_int(const std::string& s, std::size_t line) {
  Int v;
  if (s.empty() || v.set_str(s, 10) != 0) throw TacError(line, "expected an integer, found '" + s + "'");
  return v;
}

Simplex to_simplex(const std::vector<std::string>& toks, std::size_t begin, std::size_t end, std::size_t vertices,
                   std::size_t line) {
  Simplex s;
  for (std::size_t i = begin; i < end; ++i) {
    std::size_t v = to_count(toks[i], line);
    if (v >= vertices) throw TacError(line, "vertex " + toks[i] + " out of range");
    if (!s.empty() && v <= s.back()) throw TacError(line, "vertex tuple must be strictly ascending");
    s.push_back(static_cast<std::uint32_t>(v));
  }
  if (s.empty()) throw TacError(line, "empty vertex tuple");
  return s;
}

void write_simplex(std::ostream& os, const Simplex& s) {
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? " " : "") << s[i];
}

/// Flagged simplices without a flagged coface.
std::vector<Simplex> flag_generators(const DeltaComplex& K, bool delta) {
  std::vector<Simplex> out;
  for (std::uint32_t k = 0; k <= K.top_dimension(); ++k)
    for (std::uint32_t i = 0; i < K.count(k); ++i) {
      Cell c{k, i};
      if (!(delta ? K.in_delta(c) : K.in_boundary(c))) continue;
      bool maximal = true;
      for (const auto& co : K.cofaces(c))
        if (delta ? K.in_delta(Cell{k + 1, co.index}) : K.in_boundary(Cell{k + 1, co.index})) maximal = false;
      if (maximal) out.push_back(K.simplex(c));
    }
  return out;
}

std::size_t keyed_count(Reader& r, const std::string& key) {
  const std::string v = r.keyed(key, 1)[0];
  return to_count(v, r.current());
}

long keyed_long(Reader& r, const std::string& key) {
  const std::string v = r.keyed(key, 1)[0];
  return to_long(v, r.current());
}

std::vector<Simplex> read_tuples(Reader& r, const std::string& key, std::size_t vertices, const DeltaComplex& K) {
  const std::size_t count = keyed_count(r, key);
  std::vector<Simplex> out;
  for (std::size_t i = 0; i < count; ++i) {
    const Line& l = r.next("a vertex tuple");
    Simplex s = to_simplex(l.tokens, 0, l.tokens.size(), vertices, l.number);
    if (s.size() > K.top_dimension() + 1 || !K.find(s)) throw TacError(l.number, "simplex is not in the complex");
    out.push_back(std::move(s));
  }
  return out;
}

const char* relative_name(Relative r) {
  switch (r) {
    case Relative::Delta:
      return "delta";
    case Relative::Boundary:
      return "boundary";
    default:
      return "none";
  }
}

}  // namespace

std::string write_tac(const AffineModel& m) {
  const DeltaComplex& K = *m.complex;
  const std::size_t n = K.dimension();
  std::ostringstream os;
  os << "TAC 1\n";
  os << "name " << (m.name.empty() ? "unnamed" : m.name) << '\n';
  os << "dimension " << n << '\n';
  os << "rank " << m.system.rank() << '\n';
  os << "provenance " << (m.symple_provenance ? "symple" : "none") << '\n';
  os << "orientation " << m.orientation << '\n';
  os << "vertices " << K.num_vertices() << '\n';
  os << "simplices " << K.count(n) << '\n';
  for (const Simplex& s : K.simplices(n)) {
    write_simplex(os, s);
    os << '\n';
  }
  for (bool delta : {true, false}) {
    auto gens = flag_generators(K, delta);
    os << (delta ? "delta " : "boundary ") << gens.size() << '\n';
    for (const Simplex& s : gens) {
      write_simplex(os, s);
      os << '\n';
    }
  }
  auto trans = m.system.transitions();
  os << "transitions " << trans.size() << '\n';
  for (const auto& [edge, M] : trans) {
    os << edge.first << ' ' << edge.second << " :";
    for (std::size_t i = 0; i < M.rows(); ++i)
      for (std::size_t j = 0; j < M.cols(); ++j) os << ' ' << M(i, j).get_str();
    os << '\n';
  }
  if (!m.coordinates.empty()) {
    os << "coordinates " << m.coordinates.size() << '\n';
    for (const IntVec& p : m.coordinates) {
      for (std::size_t i = 0; i < p.size(); ++i) os << (i ? " " : "") << p[i].get_str();
      os << '\n';
    }
  }
  os << "end\n";
  return os.str();
}

AffineModel read_tac(const std::string& text) {
  Reader r(text);
  {
    const Line& h = r.next("header");
    if (h.tokens.size() != 2 || h.tokens[0] != "TAC") throw TacError(h.number, "expected header 'TAC 1'");
    if (h.tokens[1] != "1") throw TacError(h.number, "unsupported TAC version " + h.tokens[1]);
  }
  AffineModel m;
  m.name = r.keyed("name", 1)[0];
  const std::size_t n = keyed_count(r, "dimension");
  if (n < 1) throw TacError(r.current(), "dimension must be positive");
  const std::size_t rank = keyed_count(r, "rank");
  const std::string prov = r.keyed("provenance", 1)[0];
  if (prov != "symple" && prov != "none") throw TacError(r.current(), "provenance must be 'symple' or 'none'");
  m.symple_provenance = prov == "symple";
  const long orient = keyed_long(r, "orientation");
  if (orient != 1 && orient != -1) throw TacError(r.current(), "orientation must be 1 or -1");
  m.orientation = static_cast<int>(orient);
  const std::size_t V = keyed_count(r, "vertices");

  const std::size_t S = keyed_count(r, "simplices");
  const std::size_t simplices_line = r.current();
  std::vector<Simplex> tops;
  for (std::size_t i = 0; i < S; ++i) {
    const Line& l = r.next("a top simplex");
    if (l.tokens.size() != n + 1) throw TacError(l.number, "top simplex needs " + std::to_string(n + 1) + " vertices");
    tops.push_back(to_simplex(l.tokens, 0, l.tokens.size(), V, l.number));
  }
  auto K = std::make_shared<DeltaComplex>(n, V, tops);
  if (K->count(n) != S) throw TacError(simplices_line, "repeated top simplex");
  std::vector<std::uint32_t> id(S);
  for (std::size_t i = 0; i < S; ++i) id[i] = *K->find(tops[i]);

  auto delta = read_tuples(r, "delta", V, *K);
  const std::size_t delta_line = r.current();
  auto boundary = read_tuples(r, "boundary", V, *K);
  const std::size_t boundary_line = r.current();
  K->set_delta(delta);
  K->set_boundary(boundary);
  try {
    K->validate_flags();
  } catch (const std::invalid_argument& e) {
    throw TacError(delta.empty() ? boundary_line : delta_line, e.what());
  }

  LocalSystem L(K, rank);
  const std::size_t T = keyed_count(r, "transitions");
  for (std::size_t t = 0; t < T; ++t) {
    const Line& l = r.next("a transition");
    if (l.tokens.size() != 3 + rank * rank || l.tokens[2] != ":")
      throw TacError(l.number, "transition line is '<from> <to> : <" + std::to_string(rank * rank) + " entries>'");
    const std::size_t a = to_count(l.tokens[0], l.number), b = to_count(l.tokens[1], l.number);
    if (a >= S || b >= S) throw TacError(l.number, "simplex id out of range");
    Matrix M(rank, rank);
    for (std::size_t i = 0; i < rank; ++i)
      for (std::size_t j = 0; j < rank; ++j) M(i, j) = to_int(l.tokens[3 + i * rank + j], l.number);
    try {
      L.set_transition(id[a], id[b], M);
    } catch (const std::invalid_argument& e) {
      throw TacError(l.number, e.what());
    }
  }
  if (r.peek_key("coordinates")) {
    const std::size_t C = keyed_count(r, "coordinates");
    if (C != V) throw TacError(r.current(), "coordinates must list every vertex");
    for (std::size_t i = 0; i < C; ++i) {
      const Line& l = r.next("a coordinate row");
      IntVec p;
      for (const auto& tok : l.tokens) p.push_back(to_int(tok, l.number));
      m.coordinates.push_back(std::move(p));
    }
  }
  r.keyed("end", 0);
  if (!r.done()) throw TacError(r.next("").number, "text after 'end'");

  m.complex = K;
  m.system = L;
  try {
    verify_model(m);
  } catch (const std::exception& e) {
    throw TacError(0, std::string("model check failed: ") + e.what());
  }
  return m;
}

std::string write_cycle(const CycleDocument& doc, const DeltaComplex& K) {
  std::ostringstream os;
  os << "TAC-CYCLE 1\n";
  os << "name " << (doc.cycle.name.empty() ? "unnamed" : doc.cycle.name) << '\n';
  os << "p " << doc.cycle.p << '\n';
  os << "q " << doc.cycle.q << '\n';
  os << "relative " << relative_name(doc.relative) << '\n';
  os << "cells " << doc.cycle.cells.size() << '\n';
  for (const auto& [c, v] : doc.cycle.cells) {
    write_simplex(os, K.simplex(c));
    os << " :";
    for (const Int& x : v) os << ' ' << x.get_str();
    os << '\n';
  }
  os << "end\n";
  return os.str();
}

CycleDocument read_cycle(const std::string& text, const LocalSystem& L) {
  const DeltaComplex& K = L.complex();
  Reader r(text);
  {
    const Line& h = r.next("header");
    if (h.tokens.size() != 2 || h.tokens[0] != "TAC-CYCLE") throw TacError(h.number, "expected header 'TAC-CYCLE 1'");
    if (h.tokens[1] != "1") throw TacError(h.number, "unsupported cycle version " + h.tokens[1]);
  }
  CycleDocument doc;
  doc.cycle.name = r.keyed("name", 1)[0];
  doc.cycle.p = keyed_count(r, "p");
  if (doc.cycle.p > L.rank()) throw TacError(r.current(), "p exceeds the rank of the local system");
  doc.cycle.q = keyed_count(r, "q");
  if (doc.cycle.q > K.top_dimension()) throw TacError(r.current(), "q exceeds the dimension");
  const std::string rel = r.keyed("relative", 1)[0];
  if (rel == "none")
    doc.relative = Relative::None;
  else if (rel == "delta")
    doc.relative = Relative::Delta;
  else if (rel == "boundary")
    doc.relative = Relative::Boundary;
  else
    throw TacError(r.current(), "relative must be none, delta or boundary");
  const std::size_t count = keyed_count(r, "cells");
  const std::size_t width = binomial(L.rank(), doc.cycle.p);
  for (std::size_t i = 0; i < count; ++i) {
    const Line& l = r.next("a cycle cell");
    std::size_t colon = 0;
    while (colon < l.tokens.size() && l.tokens[colon] != ":") ++colon;
    if (colon != doc.cycle.q + 1 || l.tokens.size() != colon + 1 + width)
      throw TacError(l.number, "cell line is '<" + std::to_string(doc.cycle.q + 1) + " vertices> : <" +
                                   std::to_string(width) + " coefficients>'");
    Simplex s = to_simplex(l.tokens, 0, colon, K.num_vertices(), l.number);
    auto idx = K.find(s);
    if (!idx) throw TacError(l.number, "simplex is not in the complex");
    IntVec v;
    for (std::size_t j = colon + 1; j < l.tokens.size(); ++j) v.push_back(to_int(l.tokens[j], l.number));
    doc.cycle.cells.emplace_back(Cell{static_cast<std::uint32_t>(doc.cycle.q), *idx}, std::move(v));
  }
  r.keyed("end", 0);
  if (!r.done()) throw TacError(r.next("").number, "text after 'end'");

  SheafFunctor F = pushforward_sheaf(L, doc.cycle.p, SheafKind::Closed);
  GradedComplex C = chain_complex(F, doc.relative);
  try {
    if (!is_cycle(C, F, doc.cycle)) throw TacError(0, "chain '" + doc.cycle.name + "' has nonzero boundary");
  } catch (const std::invalid_argument& e) {
    throw TacError(0, e.what());
  }
  return doc;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("error writing " + path);
}

}  // namespace tac
