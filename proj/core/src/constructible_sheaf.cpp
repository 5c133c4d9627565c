#include "tac/constructible_sheaf.hpp"

#include <stdexcept>
#include <string>

namespace tac {

void AbstractFunctor::check_composition() const {
  const DeltaComplex& K = *complex;
  for (std::size_t k = 2; k <= K.top_dimension(); ++k)
    for (std::uint32_t i = 0; i < K.count(k); ++i) {
      Cell s{static_cast<std::uint32_t>(k), i};
      const auto& fs = K.facets(s);
      // Each codimension-two face is reached through exactly two facets.
      for (std::size_t a = 0; a < fs.size(); ++a)
        for (std::size_t b = a + 1; b < fs.size(); ++b) {
          Cell fa{s.dim - 1, fs[a].index}, fb{s.dim - 1, fs[b].index};
          const Simplex& sa = K.simplex(fa);
          const Simplex& sb = K.simplex(fb);
          Simplex common;
          std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(common));
          std::uint32_t ci = *K.find(common);
          auto slot = [&](Cell x) {
            const auto& xf = K.facets(x);
            for (std::size_t j = 0; j < xf.size(); ++j)
              if (xf[j].index == ci) return j;
            throw std::logic_error("check_composition: face not found");
          };
          Matrix via_a, via_b;
          if (direction == Direction::ToFaces) {
            via_a = map(fa, slot(fa)) * map(s, a);
            via_b = map(fb, slot(fb)) * map(s, b);
          } else {
            via_a = map(s, a) * map(fa, slot(fa));
            via_b = map(s, b) * map(fb, slot(fb));
          }
          if (via_a != via_b)
            throw std::logic_error("functor composition mismatch at simplex dim " + std::to_string(k) + " index " +
                                   std::to_string(i));
        }
    }
}

Matrix SheafFunctor::frame_change(Cell sigma, Cell tau) const {
  const StarFrames& F = stars_.at(tau.dim).at(tau.index);
  return exterior_power_matrix(F.transport_to_home(frame(sigma)), p_);
}

SheafFunctor pushforward_sheaf(const LocalSystem& L, std::size_t p, SheafKind kind, bool dual) {
  const DeltaComplex& K = L.complex();
  K.validate_flags();
  if (p > L.rank()) throw std::invalid_argument("pushforward_sheaf: degree exceeds rank");
  SheafFunctor F;
  F.complex_ = L.complex_ptr();
  F.n_ = L.rank();
  F.p_ = p;
  F.kind_ = kind;
  F.dual_ = dual;
  const std::size_t D = K.top_dimension() + 1;
  const std::size_t N = binomial(F.n_, p);
  F.values_.resize(D);
  F.frames_.resize(D);
  F.stars_.resize(D);
  // Invariance conditions of each star, written in its home frame.
  std::vector<std::vector<Matrix>> conditions(D);
  for (std::size_t k = 0; k < D; ++k) {
    conditions[k].resize(K.count(k));
    for (std::uint32_t i = 0; i < K.count(k); ++i) {
      Cell c{static_cast<std::uint32_t>(k), i};
      F.stars_[k].push_back(star_frames(L, c));
      const StarFrames& S = F.stars_[k].back();
      F.frames_[k].push_back(S.home);
      Matrix cond(0, N);
      for (const Matrix& m : S.loops) {
        Matrix w = exterior_power_matrix(m, p) - Matrix::identity(N);
        if (!w.is_zero()) cond = cond.vstack(w);
      }
      conditions[k][i] = std::move(cond);
    }
  }
  for (std::size_t k = 0; k < D; ++k)
    for (std::uint32_t i = 0; i < K.count(k); ++i) {
      Cell c{static_cast<std::uint32_t>(k), i};
      if (kind == SheafKind::Open) {
        F.values_[k].push_back(kernel_lattice(conditions[k][i]));
        continue;
      }
      Matrix cond(0, N);
      auto faces = K.faces_all(c);
      for (std::size_t d = 0; d < faces.size(); ++d)
        for (std::uint32_t j : faces[d]) {
          const Matrix& cj = conditions[d][j];
          if (cj.rows() == 0) continue;
          // Move home(c) coordinates into the frame of home(face) first.
          Matrix R = exterior_power_matrix(F.stars_[d][j].transport_to_home(F.frames_[k][i]), p);
          cond = cond.vstack(cj * R);
        }
      F.values_[k].push_back(kernel_lattice(cond));
    }

  AbstractFunctor& A = F.functor_;
  A.complex = F.complex_;
  A.direction = kind == SheafKind::Closed ? AbstractFunctor::Direction::ToFaces : AbstractFunctor::Direction::ToCofaces;
  A.rank.resize(D);
  A.maps.resize(D);
  for (std::size_t k = 0; k < D; ++k) {
    A.maps[k].resize(K.count(k));
    for (std::uint32_t i = 0; i < K.count(k); ++i) A.rank[k].push_back(F.values_[k][i].rank());
  }
  for (std::size_t k = 1; k < D; ++k)
    for (std::uint32_t i = 0; i < K.count(k); ++i) {
      Cell s{static_cast<std::uint32_t>(k), i};
      for (const auto& inc : K.facets(s)) {
        Cell t{s.dim - 1, inc.index};
        Matrix P = F.frame_change(s, t);
        const Lattice& As = F.value(s);
        const Lattice& At = F.value(t);
        Matrix M;
        try {
          if (kind == SheafKind::Closed)
            M = At.coordinates(P * As.basis());
          else
            M = As.coordinates(inverse_unimodular(P) * At.basis());
        } catch (const std::runtime_error&) {
          throw std::logic_error("pushforward_sheaf: restriction leaves the target lattice at simplex dim " +
                                 std::to_string(k) + " index " + std::to_string(i));
        }
        A.maps[k][i].push_back(std::move(M));
      }
    }
  return F;
}

SheafFunctor rationalize(const SheafFunctor& F) {
  SheafFunctor R(F);
  R.rational_ = true;
  return R;
}

Int stalk_pairing_tr(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("stalk_pairing_tr: length mismatch");
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace tac
