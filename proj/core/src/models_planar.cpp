#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "tac/model_library.hpp"

namespace tac {

namespace {

Int det2(const IntVec& a, const IntVec& b) { return a[0] * b[1] - a[1] * b[0]; }

bool primitive(const IntVec& d) {
  Int g = gcd(Int(abs(d[0])), Int(abs(d[1])));
  return g == 1;
}

// Transvection fixing the direction d: v -> v + det(d, v) d.
Matrix transvection_along(const IntVec& d) {
  Matrix T = Matrix::identity(2);
  const IntVec perp{-d[1], d[0]};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) T(i, j) += d[i] * perp[j];
  return T;
}

// Counterclockwise loop monodromy of a focus-focus point with invariant
// direction e_1: the inverse of the clockwise [[1,1],[0,1]].
Matrix ccw_standard() { return Matrix{{1, -1}, {0, 1}}; }

}  // namespace

std::uint32_t grid_vertex(int width, int x, int y) { return static_cast<std::uint32_t>(y * (width + 1) + x); }

AffineModel build_planar_model(int W, int H, const std::vector<PlanarSingularity>& sing, std::string name) {
  if (W < 2 || H < 2) throw std::invalid_argument("build_planar_model: grid too small");
  std::vector<Simplex> tris;
  auto id = [&](int x, int y) { return grid_vertex(W, x, y); };
  for (int j = 0; j < H; ++j)
    for (int i = 0; i < W; ++i) {
      // Diagonals point away from the center so that each corner triangle
      // meets the boundary in a single face.
      const bool main = (2 * i + 1 < W) == (2 * j + 1 < H);
      std::vector<Simplex> sq;
      if (main)
        sq = {{id(i, j), id(i + 1, j), id(i + 1, j + 1)}, {id(i, j), id(i, j + 1), id(i + 1, j + 1)}};
      else
        sq = {{id(i, j), id(i + 1, j), id(i, j + 1)}, {id(i + 1, j), id(i, j + 1), id(i + 1, j + 1)}};
      for (auto& t : sq) {
        std::sort(t.begin(), t.end());
        tris.push_back(t);
      }
    }
  auto K = std::make_shared<DeltaComplex>(2, static_cast<std::size_t>((W + 1) * (H + 1)), tris);
  std::vector<Simplex> delta;
  for (const auto& s : sing) {
    if (s.x <= 0 || s.x >= W || s.y <= 0 || s.y >= H) throw std::invalid_argument("build_planar_model: singularity not interior");
    delta.push_back({id(s.x, s.y)});
  }
  K->set_delta(delta);
  K->set_boundary_from_topology();
  LocalSystem L(K, 2);

  auto coords = [&](std::uint32_t v) { return std::pair<int, int>(static_cast<int>(v) % (W + 1), static_cast<int>(v) / (W + 1)); };
  // Three times the centroid, to stay in integers.
  auto centroid3 = [&](std::uint32_t top) {
    int sx = 0, sy = 0;
    for (auto v : K->simplex(Cell{2, top})) {
      auto [x, y] = coords(v);
      sx += x;
      sy += y;
    }
    return std::pair<int, int>(sx, sy);
  };
  for (const auto& s : sing) {
    int dx = 0, dy = 0, len = 0;
    switch (s.cut) {
      case PlanarSingularity::Cut::Left: dx = -1; len = s.x; break;
      case PlanarSingularity::Cut::Right: dx = 1; len = W - s.x; break;
      case PlanarSingularity::Cut::Down: dy = -1; len = s.y; break;
      case PlanarSingularity::Cut::Up: dy = 1; len = H - s.y; break;
    }
    for (int k = 0; k < len; ++k) {
      Simplex e{id(s.x + k * dx, s.y + k * dy), id(s.x + (k + 1) * dx, s.y + (k + 1) * dy)};
      std::sort(e.begin(), e.end());
      auto ei = K->find(e);
      if (!ei) throw std::logic_error("build_planar_model: cut edge missing");
      const auto& co = K->cofaces(Cell{1, *ei});
      if (co.size() != 2) throw std::invalid_argument("build_planar_model: cut runs along the boundary");
      std::uint32_t t0 = co[0].index, t1 = co[1].index;
      auto c0 = centroid3(t0);
      // Order the pair as (side the ccw loop leaves, side it enters).
      std::uint32_t from = t0, to = t1;
      if (dx != 0) {
        const bool t0_above = c0.second > 3 * s.y;
        // Cut to the left: ccw loop crosses from above to below.
        if ((dx < 0) != t0_above) std::swap(from, to);
      } else {
        const bool t0_right = c0.first > 3 * s.x;
        // Cut downward: ccw loop crosses from left to right.
        if ((dy < 0) == t0_right) std::swap(from, to);
      }
      L.set_transition(from, to, s.ccw * L.transition(from, to));
    }
  }
  AffineModel m;
  m.name = std::move(name);
  m.complex = K;
  m.system = L;
  for (std::uint32_t v = 0; v < K->count(0); ++v) {
    auto [x, y] = coords(v);
    m.coordinates.push_back(IntVec{x, y});
  }
  {
    const Simplex& t = K->simplex(Cell{2, 0});
    auto [x0, y0] = coords(t[0]);
    auto [x1, y1] = coords(t[1]);
    auto [x2, y2] = coords(t[2]);
    const int d = (x1 - x0) * (y2 - y0) - (y1 - y0) * (x2 - x0);
    m.orientation = d > 0 ? 1 : -1;
  }
  verify_model(m);
  return m;
}

AffineModel build_goggles(GogglesVariant variant) {
  const int W = 8, H = 4;
  std::vector<PlanarSingularity> sing;
  if (variant == GogglesVariant::SharedLine) {
    sing = {{2, 2, PlanarSingularity::Cut::Left, ccw_standard()}, {6, 2, PlanarSingularity::Cut::Right, ccw_standard()}};
  } else {
    sing = {{2, 1, PlanarSingularity::Cut::Left, ccw_standard()}, {6, 3, PlanarSingularity::Cut::Right, ccw_standard()}};
  }
  AffineModel m = build_planar_model(W, H, sing, variant == GogglesVariant::SharedLine ? "goggles-shared" : "goggles-parallel");
  const DeltaComplex& K = *m.complex;
  auto id = [&](int x, int y) { return grid_vertex(W, x, y); };

  // Support: the square of grid edges around each singular point plus a
  // bridge between the two squares.
  std::vector<Cell> support;
  auto add_ring = [&](int x, int y) {
    std::vector<std::uint32_t> ring{id(x + 1, y), id(x + 1, y + 1), id(x, y + 1), id(x - 1, y + 1), id(x - 1, y),
                                    id(x - 1, y - 1), id(x, y - 1), id(x + 1, y - 1), id(x + 1, y)};
    for (Cell c : path_edges(K, ring)) support.push_back(c);
  };
  std::vector<std::uint32_t> bridge;
  if (variant == GogglesVariant::SharedLine) {
    add_ring(2, 2);
    add_ring(6, 2);
    bridge = {id(3, 2), id(4, 2), id(5, 2)};
  } else {
    add_ring(2, 1);
    add_ring(6, 3);
    bridge = {id(3, 1), id(4, 1), id(4, 2), id(4, 3), id(5, 3)};
  }
  for (Cell c : path_edges(K, bridge)) support.push_back(c);
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());

  SheafFunctor F = pushforward_sheaf(m.system, 1, SheafKind::Closed);
  Cell fixed = path_edges(K, {bridge[0], bridge[1]})[0];
  // The bridge avoids the cuts, so every frame along it is the standard one.
  auto z = cycle_on_support(F, 1, support, fixed, IntVec{1, 0});
  if (!z) throw std::logic_error("build_goggles: no cycle on the goggle support");
  z->name = "goggle";
  m.cycles.push_back(*z);
  return m;
}

AffineModel build_torsion_pair(const IntVec& d1, const IntVec& d2) {
  if (d1.size() != 2 || d2.size() != 2) throw std::invalid_argument("build_torsion_pair: directions must lie in Z^2");
  if (!primitive(d1) || !primitive(d2)) throw std::invalid_argument("build_torsion_pair: directions must be primitive");
  const Int det = det2(d1, d2);
  if (det == 0) throw std::invalid_argument("build_torsion_pair: directions are parallel");
  if (abs(det) == 1) throw std::invalid_argument("build_torsion_pair: directions span Z^2");
  std::vector<PlanarSingularity> sing = {{2, 2, PlanarSingularity::Cut::Left, inverse_unimodular(transvection_along(d1))},
                                         {6, 2, PlanarSingularity::Cut::Right, inverse_unimodular(transvection_along(d2))}};
  return build_planar_model(8, 4, sing, "torsion");
}

}  // namespace tac
