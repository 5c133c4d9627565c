#include "tac/pairing_intersection.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace tac {

namespace {

int permutation_sign(const std::vector<std::uint32_t>& seq) {
  int s = 1;
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j)
      if (seq[i] > seq[j]) s = -s;
  return s;
}

std::map<Cell, IntVec> as_map(const std::vector<std::pair<Cell, IntVec>>& cells) {
  std::map<Cell, IntVec> out;
  for (const auto& [c, v] : cells) out[c] = v;
  return out;
}

}  // namespace

std::string PairingReport::to_string() const {
  std::ostringstream os;
  os << "pairing p=" << p << " q=" << q << ": homology " << homology.to_string() << ", cohomology "
     << cohomology.to_string() << "\n";
  const std::string body = gram.to_string();
  os << "gram " << gram.rows() << "x" << gram.cols() << "\n" << body;
  if (!body.empty() && body.back() != '\n') os << "\n";
  os << "divisors " << tac::to_string(divisors) << "\n";
  os << "perfect over Q: " << (perfect_over_Q ? "yes" : "no") << "\n";
  os << "perfect over Z: " << (perfect_over_Z ? "yes" : "no") << "\n";
  return os.str();
}

Int pair_chain_cochain(const GradedComplex& chains, const SheafFunctor& closed, const GradedComplex& cochains,
                       const SheafFunctor& open_dual, std::size_t q, const IntVec& chain, const IntVec& cochain) {
  auto b = as_map(stalk_coefficients(cochains, open_dual, q, cochain));
  Int total = 0;
  for (const auto& [cell, a] : stalk_coefficients(chains, closed, q, chain)) {
    auto it = b.find(cell);
    if (it != b.end()) total += stalk_pairing_tr(a, it->second);
  }
  return total;
}

PairingReport pairing_matrix(const LocalSystem& L, std::size_t p, std::size_t q) {
  if (p > L.rank()) throw std::invalid_argument("pairing_matrix: degree out of range");
  SheafFunctor closed = pushforward_sheaf(L, p, SheafKind::Closed);
  SheafFunctor open = pushforward_sheaf(dual_system(L), p, SheafKind::Open, true);
  GradedComplex C = chain_complex(closed);
  GradedComplex D = vertex_star_cech(open);
  if (q >= C.dims.size()) throw std::invalid_argument("pairing_matrix: degree out of range");
  HomologyCalculator hc(C), cc(D);
  PairingReport rep;
  rep.p = p;
  rep.q = q;
  rep.homology = hc.group(q);
  rep.cohomology = cc.group(q);
  const std::size_t r = rep.homology.betti, c = rep.cohomology.betti;
  rep.gram = Matrix(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      rep.gram(i, j) = pair_chain_cochain(C, closed, D, open, q, rep.homology.cycle_basis[i], rep.cohomology.cycle_basis[j]);
  rep.divisors = elementary_divisors(rep.gram);
  const bool square = r == c;
  rep.perfect_over_Q = square && rep.divisors.size() == r;
  rep.perfect_over_Z = rep.perfect_over_Q && rep.homology.torsion.empty() && rep.cohomology.torsion.empty() &&
                       std::all_of(rep.divisors.begin(), rep.divisors.end(), [](const Int& d) { return d == 1; });
  return rep;
}

Matrix omega_matrix(std::size_t n, std::size_t p, const Int& omega) {
  const auto& src = wedge_basis(n, p);
  const auto& dst = wedge_basis(n, n - p);
  Matrix M(dst.size(), src.size());
  for (std::size_t I = 0; I < src.size(); ++I) {
    IntVec xi(src.size());
    xi[I] = 1;
    for (std::size_t J = 0; J < dst.size(); ++J) {
      IntVec eta(dst.size());
      eta[J] = 1;
      IntVec top = wedge(xi, p, eta, n - p, n);
      if (top[0] == 0) continue;
      if (top[0] % omega != 0) throw std::invalid_argument("omega_matrix: Omega is not primitive");
      M(J, I) = top[0] / omega;
    }
  }
  return M;
}

std::vector<Int> orientation_section(const LocalSystem& L) {
  const DeltaComplex& K = L.complex();
  const auto n = static_cast<std::uint32_t>(K.dimension());
  std::vector<Int> out(K.count(n));
  for (std::uint32_t t = 0; t < K.count(n); ++t) out[t] = determinant(L.to_base(t));
  for (const auto& [key, T] : L.transitions()) {
    if (out[key.first] != out[key.second] * determinant(T))
      throw std::invalid_argument("orientation_section: the local system reverses orientation along a loop");
  }
  return out;
}

std::vector<int> top_orientation(const LocalSystem& L, int base_sign) {
  const DeltaComplex& K = L.complex();
  const auto n = static_cast<std::uint32_t>(K.dimension());
  std::vector<std::uint32_t> all(K.count(n));
  std::iota(all.begin(), all.end(), 0u);
  DualGraph G = dual_graph(K, all);
  auto incidence = [&](std::uint32_t top, std::uint32_t facet) {
    for (const auto& inc : K.facets(Cell{n, top}))
      if (inc.index == facet) return inc.sign;
    throw std::logic_error("top_orientation: facet not found");
  };
  std::vector<int> o(K.count(n), 0);
  for (std::uint32_t root : L.base_cells()) {
    o[root] = base_sign;
    std::deque<std::uint32_t> queue{root};
    while (!queue.empty()) {
      const std::uint32_t a = queue.front();
      queue.pop_front();
      for (auto e : G.adjacency[a]) {
        const auto& E = G.edges[e];
        const std::uint32_t b = E.a == a ? E.b : E.a;
        const int want = -o[a] * incidence(a, E.facet) * incidence(b, E.facet);
        if (o[b] == 0) {
          o[b] = want;
          queue.push_back(b);
        } else if (o[b] != want) {
          throw std::invalid_argument("top_orientation: complex is not orientable");
        }
      }
    }
  }
  return o;
}

OmegaContractionReport omega_contraction(const LocalSystem& L, std::size_t p) {
  const std::size_t n = L.rank();
  if (p > n) throw std::invalid_argument("omega_contraction: degree out of range");
  auto omega = orientation_section(L);
  SheafFunctor F = pushforward_sheaf(L, p, SheafKind::Closed);
  SheafFunctor G = pushforward_sheaf(dual_system(L), n - p, SheafKind::Closed, true);
  const DeltaComplex& K = L.complex();
  OmegaContractionReport rep;
  std::ostringstream os;
  for (std::size_t d = 0; d <= K.top_dimension(); ++d)
    for (std::uint32_t i = 0; i < K.count(d); ++i) {
      Cell c{static_cast<std::uint32_t>(d), i};
      const Int& w = omega[F.frame(c)];
      Matrix M = omega_matrix(n, p, w);
      Matrix back = omega_matrix(n, n - p, w);
      ++rep.simplices;
      Matrix comp = back * M;
      const bool pm_identity = comp.is_identity() || (-comp).is_identity();
      if (!(Lattice::span(M * F.value(c).basis()) == G.value(c)) || !pm_identity) {
        rep.isomorphism = false;
        os << "simplex (" << d << "," << i << ") ";
      }
    }
  rep.message = os.str();
  return rep;
}

int eps_sign(const std::vector<IntVec>& basis_v, const std::vector<IntVec>& basis_w, int ambient) {
  std::vector<IntVec> cols(basis_v);
  cols.insert(cols.end(), basis_w.begin(), basis_w.end());
  if (cols.empty()) return ambient;
  const std::size_t n = cols[0].size();
  if (cols.size() != n) throw std::invalid_argument("eps_sign: tangent bases must have n vectors in total");
  Int d = determinant(Matrix::from_columns(cols, n));
  return sgn(d) * ambient;
}

Int intersection_number(const std::vector<IntersectionPoint>& points, std::size_t p, const Int& omega) {
  Int total = 0;
  for (const auto& x : points) {
    std::size_t n = 0;
    if (!x.tangent_v.empty()) n = x.tangent_v[0].size();
    else if (!x.tangent_w.empty()) n = x.tangent_w[0].size();
    if (x.tangent_v.size() + x.tangent_w.size() != n) throw std::invalid_argument("intersection_number: tangent bases do not span");
    const int e = eps_sign(x.tangent_v, x.tangent_w);
    if (e == 0) continue;
    total += e * wedge_ratio(x.xi_v, p, x.xi_w, n, omega);
  }
  return total;
}

struct IntersectionPairing::Impl {
  LocalSystem L;
  std::size_t n = 0, p = 0, q = 0;
  std::vector<int> orient;
  std::vector<Int> omega;
  SheafFunctor open;  // (n-p)-th power, open kind, on K
  GradedComplex cech;
  std::vector<std::map<Cell, IntVec>> cocycles;  // free cohomology basis, stalk form
  SubdividedSystem sub;
  SheafFunctor closed_sub;  // (n-p)-th power, closed kind, on the subdivision
  GradedComplex rel_sub;
  std::unique_ptr<HomologyCalculator> calc_sub;
  std::size_t betti_sub = 0;
  Matrix dual_classes;  // columns: free class coordinates of the dual blocks of the basis
  std::vector<std::uint32_t> vertex_of[8];
  mutable std::map<Cell, StarFrames> stars;

  std::uint32_t barycenter(Cell c) const { return vertex_of[c.dim].at(c.index); }

  const StarFrames& star(Cell c) const {
    auto it = stars.find(c);
    if (it == stars.end()) it = stars.emplace(c, star_frames(L, c)).first;
    return it->second;
  }

  // Coefficient in the home frame of K-cell c, moved to the frame of the
  // home top of a subdivision simplex lying in the open star of c.
  IntVec move(Cell c, Cell sub_cell, const IntVec& x) const {
    const std::uint32_t top_sub = sub.system.home(sub_cell);
    const std::uint32_t carrier = sub.subdivision.carrier[n][top_sub].index;
    Matrix T = inverse_unimodular(star(c).transport_to_home(carrier));
    return exterior_power_matrix(T, n - p) * x;
  }

  Cell sub_cell(std::vector<std::uint32_t> verts) const {
    std::sort(verts.begin(), verts.end());
    const DeltaComplex& Kp = sub.subdivision.complex;
    auto idx = Kp.find(verts);
    if (!idx) throw std::logic_error("IntersectionPairing: flag simplex missing from the subdivision");
    return Cell{static_cast<std::uint32_t>(verts.size() - 1), *idx};
  }

  // Relative chain on the subdivision from per-simplex stalk vectors.
  IntVec to_chain(const std::map<Cell, IntVec>& acc) const {
    const DeltaComplex& Kp = sub.subdivision.complex;
    std::vector<std::pair<Cell, IntVec>> cells;
    for (const auto& [c, v] : acc) {
      if (Kp.in_boundary(c)) continue;
      if (std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; })) continue;
      cells.emplace_back(c, v);
    }
    if (cells.empty()) return IntVec(rel_sub.dims.at(n - q));
    return chain_from_stalk_coefficients(rel_sub, closed_sub, cells);
  }

  static void accumulate(std::map<Cell, IntVec>& acc, Cell c, const IntVec& v, int sign) {
    auto& slot = acc[c];
    if (slot.empty()) slot.assign(v.size(), 0);
    for (std::size_t i = 0; i < v.size(); ++i) slot[i] += sign * v[i];
  }

  // Dual blocks: tau goes to the signed sum over flags tau < s_1 < ... < top
  // of the subdivision simplices spanned by their barycenters, oriented so
  // that tau followed by its block gives the orientation of B.
  IntVec dual_chain(const std::map<Cell, IntVec>& cochain) const {
    const DeltaComplex& K = L.complex();
    std::map<Cell, IntVec> acc;
    for (const auto& [tau, x] : cochain) {
      const Simplex& ts = K.simplex(tau);
      std::vector<Cell> chain{tau};
      std::vector<std::uint32_t> order(ts.begin(), ts.end());
      std::function<void()> extend = [&]() {
        const Cell last = chain.back();
        if (last.dim == n) {
          const Simplex& top = K.simplex(last);
          std::vector<std::uint32_t> pos;
          for (auto v : order) pos.push_back(static_cast<std::uint32_t>(std::lower_bound(top.begin(), top.end(), v) - top.begin()));
          const int sign = permutation_sign(pos) * orient[last.index];
          std::vector<std::uint32_t> verts;
          for (Cell c : chain) verts.push_back(barycenter(c));
          Cell sc = sub_cell(verts);
          accumulate(acc, sc, move(tau, sc, x), sign);
          return;
        }
        for (const auto& inc : K.cofaces(last)) {
          Cell up{last.dim + 1, inc.index};
          const Simplex& us = K.simplex(up);
          const Simplex& ls = K.simplex(last);
          std::uint32_t added = 0;
          for (auto v : us)
            if (!std::binary_search(ls.begin(), ls.end(), v)) added = v;
          chain.push_back(up);
          order.push_back(added);
          extend();
          order.pop_back();
          chain.pop_back();
        }
      };
      extend();
    }
    return to_chain(acc);
  }

  // Barycentric subdivision of a chain of K.
  IntVec subdivided_chain(const TropicalCycle& W) const {
    const DeltaComplex& K = L.complex();
    std::map<Cell, IntVec> acc;
    for (const auto& [sigma, a] : W.cells) {
      const Simplex& s = K.simplex(sigma);
      std::vector<std::uint32_t> perm(s.size());
      std::iota(perm.begin(), perm.end(), 0u);
      do {
        std::vector<std::uint32_t> verts;
        Simplex face;
        for (auto i : perm) {
          face.push_back(s[i]);
          Simplex sorted = face;
          std::sort(sorted.begin(), sorted.end());
          Cell fc{static_cast<std::uint32_t>(sorted.size() - 1), *K.find(sorted)};
          verts.push_back(barycenter(fc));
        }
        Cell sc = sub_cell(verts);
        accumulate(acc, sc, move(sigma, sc, a), permutation_sign(perm));
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return to_chain(acc);
  }

  IntVec free_class(const IntVec& chain) const {
    IntVec cls = calc_sub->class_of(n - q, chain);
    return IntVec(cls.begin(), cls.begin() + static_cast<std::ptrdiff_t>(betti_sub));
  }
};

IntersectionPairing::IntersectionPairing(const LocalSystem& L, std::size_t p, std::size_t q, int base_orientation)
    : impl_(std::make_unique<Impl>()) {
  Impl& I = *impl_;
  I.L = L;
  I.n = L.rank();
  I.p = p;
  I.q = q;
  const DeltaComplex& K = L.complex();
  if (K.dimension() != I.n) throw std::invalid_argument("IntersectionPairing: rank must equal the dimension");
  if (p > I.n || q > I.n) throw std::invalid_argument("IntersectionPairing: degree out of range");
  if (I.n >= 8) throw std::invalid_argument("IntersectionPairing: dimension too large");
  I.orient = top_orientation(L, base_orientation);
  I.omega = orientation_section(L);

  I.open = pushforward_sheaf(L, I.n - p, SheafKind::Open);
  I.cech = vertex_star_cech(I.open);
  HomologyCalculator cc(I.cech);
  const HomologyGroup& H = cc.group(q);
  for (std::size_t j = 0; j < H.betti; ++j) I.cocycles.push_back(as_map(stalk_coefficients(I.cech, I.open, q, H.cycle_basis[j])));

  I.sub = subdivide(L);
  for (std::uint32_t v = 0; v < I.sub.subdivision.vertex_parent.size(); ++v) {
    Cell c = I.sub.subdivision.vertex_parent[v];
    auto& slot = I.vertex_of[c.dim];
    if (slot.size() <= c.index) slot.resize(K.count(c.dim));
    slot[c.index] = v;
  }
  I.closed_sub = pushforward_sheaf(I.sub.system, I.n - p, SheafKind::Closed);
  I.rel_sub = chain_complex(I.closed_sub, Relative::Boundary);
  I.calc_sub = std::make_unique<HomologyCalculator>(I.rel_sub);
  I.betti_sub = I.calc_sub->group(I.n - q).betti;
  I.dual_classes = Matrix(I.betti_sub, I.cocycles.size());
  for (std::size_t j = 0; j < I.cocycles.size(); ++j) {
    IntVec cls = I.free_class(I.dual_chain(I.cocycles[j]));
    for (std::size_t r = 0; r < I.betti_sub; ++r) I.dual_classes(r, j) = cls[r];
  }
}

IntersectionPairing::~IntersectionPairing() = default;
IntersectionPairing::IntersectionPairing(IntersectionPairing&&) noexcept = default;
IntersectionPairing& IntersectionPairing::operator=(IntersectionPairing&&) noexcept = default;

void IntersectionPairing::check_chain_map() const {
  for (const auto& c : impl_->cocycles) {
    IntVec chain = impl_->dual_chain(c);
    if (impl_->q < impl_->n) {
      for (const Int& x : apply_differential(impl_->rel_sub, impl_->n - impl_->q, chain))
        if (x != 0) throw std::logic_error("IntersectionPairing: dual block chain of a cocycle is not a cycle");
    }
  }
}

IntVec IntersectionPairing::dual_class(const TropicalCycle& W) const {
  const Impl& I = *impl_;
  if (W.p != I.n - I.p || W.q != I.n - I.q) throw std::invalid_argument("IntersectionPairing: W has the wrong degrees");
  IntVec b = I.free_class(I.subdivided_chain(W));
  auto t = solve_integer(I.dual_classes, b);
  if (!t) throw std::logic_error("IntersectionPairing: dual class not found over Z");
  return *t;
}

Int IntersectionPairing::operator()(const TropicalCycle& V, const TropicalCycle& W) const {
  const Impl& I = *impl_;
  if (V.p != I.p || V.q != I.q) throw std::invalid_argument("IntersectionPairing: V has the wrong degrees");
  IntVec t = dual_class(W);
  Int total = 0;
  for (std::size_t j = 0; j < t.size(); ++j) {
    if (t[j] == 0) continue;
    Int s = 0;
    for (const auto& [tau, a] : V.cells) {
      auto it = I.cocycles[j].find(tau);
      if (it == I.cocycles[j].end()) continue;
      const std::uint32_t home = I.L.home(tau);
      s += wedge_ratio(a, I.p, it->second, I.n, I.omega[home]);
    }
    total += t[j] * s;
  }
  return total;
}

Matrix IntersectionPairing::gram(const std::vector<TropicalCycle>& Vs, const std::vector<TropicalCycle>& Ws) const {
  Matrix G(Vs.size(), Ws.size());
  for (std::size_t i = 0; i < Vs.size(); ++i)
    for (std::size_t j = 0; j < Ws.size(); ++j) G(i, j) = (*this)(Vs[i], Ws[j]);
  return G;
}

Int intersection_via_pairing(const LocalSystem& L, const TropicalCycle& V, const TropicalCycle& W, int base_orientation) {
  return IntersectionPairing(L, V.p, V.q, base_orientation)(V, W);
}

std::string LatticeReport::to_string() const {
  std::ostringstream os;
  os << "rank " << rank << ", det " << determinant << ", " << (even ? "even" : "odd") << ", signature (" << positive
     << "," << negative << ")";
  if (zero) os << ", nullity " << zero;
  return os.str();
}

LatticeReport gram_lattice_classify(const Matrix& gram) {
  if (gram.rows() != gram.cols()) throw std::invalid_argument("gram_lattice_classify: matrix not square");
  if (gram != gram.transpose()) throw std::invalid_argument("gram_lattice_classify: matrix not symmetric");
  const std::size_t n = gram.rows();
  LatticeReport rep;
  rep.rank = n;
  rep.determinant = determinant(gram);
  for (std::size_t i = 0; i < n; ++i)
    if (gram(i, i) % 2 != 0) rep.even = false;
  // Congruence diagonalization over Q.
  std::vector<std::vector<Rat>> A(n, std::vector<Rat>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) A[i][j] = Rat(gram(i, j));
  std::vector<bool> done(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t piv = n;
    for (std::size_t i = 0; i < n && piv == n; ++i)
      if (!done[i] && A[i][i] != 0) piv = i;
    if (piv == n) {
      // No usable diagonal entry: combine two indices with a nonzero
      // off-diagonal entry, which creates one.
      std::size_t a = n, b = n;
      for (std::size_t i = 0; i < n && a == n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (!done[i] && !done[j] && i != j && A[i][j] != 0) {
            a = i;
            b = j;
            break;
          }
      if (a == n) break;
      for (std::size_t k = 0; k < n; ++k) A[a][k] += A[b][k];
      for (std::size_t k = 0; k < n; ++k) A[k][a] += A[k][b];
      piv = a;
    }
    const Rat d = A[piv][piv];
    if (d > 0) ++rep.positive;
    else ++rep.negative;
    done[piv] = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || A[i][piv] == 0) continue;
      const Rat f = A[i][piv] / d;
      for (std::size_t k = 0; k < n; ++k) A[i][k] -= f * A[piv][k];
      for (std::size_t k = 0; k < n; ++k) A[k][i] -= f * A[k][piv];
    }
  }
  rep.zero = n - rep.positive - rep.negative;
  return rep;
}

int fibration_sign(std::size_t n, std::size_t p, std::size_t q) {
  const std::size_t e = (n - p) * (q == 0 ? 1 : q - 1);
  return (q == 0 ? ((n - p) % 2 ? -1 : 1) : (e % 2 ? -1 : 1));
}

}  // namespace tac
