#include "tac/sparse_elimination.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>
#include <unordered_set>

namespace tac {

SparseMatrix SparseMatrix::from_dense(const Matrix& M) {
  SparseMatrix S(M.rows(), M.cols());
  for (std::size_t j = 0; j < M.cols(); ++j)
    for (std::size_t i = 0; i < M.rows(); ++i)
      if (M(i, j) != 0) S.columns[j].emplace_back(static_cast<std::uint32_t>(i), M(i, j));
  return S;
}

Matrix SparseMatrix::to_dense() const {
  Matrix M(rows, cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (const auto& [i, v] : columns[j]) M(i, j) = v;
  return M;
}

void SparseMatrix::add(std::size_t row, std::size_t col, const Int& value) {
  if (value == 0) return;
  auto& c = columns[col];
  auto it = std::lower_bound(c.begin(), c.end(), static_cast<std::uint32_t>(row),
                             [](const auto& e, std::uint32_t r) { return e.first < r; });
  if (it != c.end() && it->first == row) {
    it->second += value;
    if (it->second == 0) c.erase(it);
  } else {
    c.insert(it, {static_cast<std::uint32_t>(row), value});
  }
}

namespace {

const Int* find_entry(const SparseColumn& c, std::uint32_t row) {
  auto it = std::lower_bound(c.begin(), c.end(), row, [](const auto& e, std::uint32_t r) { return e.first < r; });
  return (it != c.end() && it->first == row) ? &it->second : nullptr;
}

// a := a + f * b, reporting rows that appeared and disappeared.
void axpy(SparseColumn& a, const Int& f, const SparseColumn& b, std::vector<std::uint32_t>* added,
          std::vector<std::uint32_t>* removed) {
  SparseColumn out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(std::move(a[i++]));
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, f * b[j].second);
      if (added) added->push_back(b[j].first);
      ++j;
    } else {
      Int v = a[i].second + f * b[j].second;
      if (v != 0) {
        out.emplace_back(a[i].first, std::move(v));
      } else if (removed) {
        removed->push_back(a[i].first);
      }
      ++i;
      ++j;
    }
  }
  a = std::move(out);
}

void erase_row(SparseColumn& c, std::uint32_t row) {
  auto it = std::lower_bound(c.begin(), c.end(), row, [](const auto& e, std::uint32_t r) { return e.first < r; });
  if (it != c.end() && it->first == row) c.erase(it);
}

struct Level {
  SparseMatrix d;                                         // C_k -> C_{k-1}
  std::vector<std::unordered_set<std::uint32_t>> row_cols;  // row -> columns holding it
};

}  // namespace

ReducedComplex reduce_chain_complex(std::vector<SparseMatrix> boundaries, const std::vector<std::size_t>& dims,
                                    bool track_lifts) {
  const std::size_t N = dims.size();
  if (boundaries.size() < N) boundaries.resize(N);
  std::vector<Level> lv(N);
  for (std::size_t k = 1; k < N; ++k) {
    lv[k].d = std::move(boundaries[k]);
    if (lv[k].d.cols != dims[k] || lv[k].d.rows != dims[k - 1])
      throw std::invalid_argument("reduce_chain_complex: differential shape mismatch");
    lv[k].row_cols.resize(dims[k - 1]);
    for (std::size_t j = 0; j < dims[k]; ++j)
      for (const auto& e : lv[k].d.columns[j]) lv[k].row_cols[e.first].insert(static_cast<std::uint32_t>(j));
  }
  std::vector<std::vector<char>> alive(N);
  for (std::size_t k = 0; k < N; ++k) alive[k].assign(dims[k], 1);
  std::vector<std::vector<SparseColumn>> lift(N);
  if (track_lifts)
    for (std::size_t k = 0; k < N; ++k) {
      lift[k].resize(dims[k]);
      for (std::size_t j = 0; j < dims[k]; ++j) lift[k][j].emplace_back(static_cast<std::uint32_t>(j), Int(1));
    }

  ReducedComplex out;
  out.eliminated.assign(N, 0);

  auto eliminate = [&](std::size_t k, std::uint32_t b, std::uint32_t a) {
    Level& L = lv[k];
    const Int u = *find_entry(L.d.columns[b], a);  // +1 or -1
    std::vector<std::uint32_t> others(L.row_cols[a].begin(), L.row_cols[a].end());
    std::sort(others.begin(), others.end());
    const SparseColumn pivot = L.d.columns[b];
    std::vector<std::uint32_t> added, removed;
    for (std::uint32_t x : others) {
      if (x == b) continue;
      Int f = -(*find_entry(L.d.columns[x], a)) * u;
      added.clear();
      removed.clear();
      axpy(L.d.columns[x], f, pivot, &added, &removed);
      for (auto r : added) L.row_cols[r].insert(x);
      for (auto r : removed) L.row_cols[r].erase(x);
      if (track_lifts) axpy(lift[k][x], f, lift[k][b], nullptr, nullptr);
    }
    for (const auto& e : pivot) L.row_cols[e.first].erase(b);
    L.d.columns[b].clear();
    alive[k][b] = 0;
    alive[k - 1][a] = 0;
    // Row b of the next differential disappears.
    if (k + 1 < N) {
      Level& H = lv[k + 1];
      for (std::uint32_t y : H.row_cols[b]) erase_row(H.d.columns[y], b);
      H.row_cols[b].clear();
    }
    // Column a of the previous differential disappears.
    if (k >= 2) {
      Level& P = lv[k - 1];
      for (const auto& e : P.d.columns[a]) P.row_cols[e.first].erase(a);
      P.d.columns[a].clear();
    }
    if (track_lifts) {
      lift[k][b].clear();
      out.steps.push_back({k, b, a, u, pivot});
    }
    ++out.eliminated[k];
  };

  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t k = 1; k < N; ++k) {
      Level& L = lv[k];
      // Candidate unit pivots ranked by a Markowitz-style fill estimate.
      std::vector<std::tuple<std::size_t, std::uint32_t, std::uint32_t>> cand;
      for (std::size_t j = 0; j < dims[k]; ++j) {
        if (!alive[k][j]) continue;
        const auto& col = L.d.columns[j];
        std::size_t best_cost = SIZE_MAX;
        std::uint32_t best_row = 0;
        for (const auto& [r, v] : col) {
          if (v != 1 && v != -1) continue;
          std::size_t cost = (col.size() - 1) * (L.row_cols[r].size() - 1);
          if (cost < best_cost) best_cost = cost, best_row = r;
        }
        if (best_cost != SIZE_MAX) cand.emplace_back(best_cost, static_cast<std::uint32_t>(j), best_row);
      }
      std::sort(cand.begin(), cand.end());
      for (const auto& [cost, b, a] : cand) {
        (void)cost;
        if (!alive[k][b] || !alive[k - 1][a]) continue;
        const Int* e = find_entry(L.d.columns[b], a);
        if (!e || (*e != 1 && *e != -1)) continue;
        eliminate(k, b, a);
        progress = true;
      }
    }
  }

  out.survivors.resize(N);
  for (std::size_t k = 0; k < N; ++k)
    for (std::size_t j = 0; j < dims[k]; ++j)
      if (alive[k][j]) out.survivors[k].push_back(j);
  out.differentials.resize(N);
  for (std::size_t k = 1; k < N; ++k) {
    const auto& rows = out.survivors[k - 1];
    const auto& cols = out.survivors[k];
    std::vector<std::size_t> pos(dims[k - 1], SIZE_MAX);
    for (std::size_t i = 0; i < rows.size(); ++i) pos[rows[i]] = i;
    Matrix D(rows.size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (const auto& [r, v] : lv[k].d.columns[cols[j]]) {
        if (pos[r] == SIZE_MAX) throw std::logic_error("reduce_chain_complex: entry on eliminated row");
        D(pos[r], j) = v;
      }
    out.differentials[k] = std::move(D);
  }
  if (track_lifts) {
    out.lifts.resize(N);
    for (std::size_t k = 0; k < N; ++k)
      for (std::size_t j : out.survivors[k]) out.lifts[k].push_back(std::move(lift[k][j]));
  }
  return out;
}

IntVec ReducedComplex::project(std::size_t k, const IntVec& x) const {
  if (lifts.empty()) throw std::logic_error("ReducedComplex::project: lifts were not tracked");
  IntVec y = x;
  for (const Step& s : steps) {
    // A pair removed from d_{k+1} shifts degree k by a multiple of its pivot
    // column; a pair removed from d_k only drops a coordinate.
    if (s.degree != k + 1) continue;
    const Int f = y[s.a] * s.unit;
    if (f == 0) continue;
    for (const auto& [r, v] : s.pivot) y[r] -= f * v;
  }
  IntVec out;
  out.reserve(survivors[k].size());
  for (std::size_t j : survivors[k]) out.push_back(y[j]);
  return out;
}

}  // namespace tac
