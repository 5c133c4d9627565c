#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <numeric>
#include <stdexcept>

#include "tac/model_library.hpp"
#include "tac/pairing_intersection.hpp"

namespace tac {

namespace {

constexpr int kSide = 4;
constexpr int kCenter = kSide / 2;

using Point = std::array<int, 3>;

// The face containing all points of a triangle: (axis, side).
std::pair<int, int> face_of(const std::vector<Point>& pts) {
  for (int axis = 0; axis < 3; ++axis)
    for (int side : {0, kSide})
      if (std::all_of(pts.begin(), pts.end(), [&](const Point& p) { return p[axis] == side; })) return {axis, side};
  throw std::logic_error("build_cube_k3: triangle not on a face");
}

std::array<int, 2> face_axes(int axis) {
  std::array<int, 2> out{};
  int k = 0;
  for (int a = 0; a < 3; ++a)
    if (a != axis) out[k++] = a;
  return out;
}

// Tangent map between two adjacent faces given by projecting along d, in the
// face bases of increasing coordinate axes.
Matrix projection_along(const Point& d, int from_axis, int to_axis) {
  const auto src = face_axes(from_axis), dst = face_axes(to_axis);
  Matrix M(2, 2);
  for (int c = 0; c < 2; ++c) {
    Point u{0, 0, 0};
    u[src[c]] = 1;
    const int t = u[to_axis] / d[to_axis];
    for (int k = 0; k < 3; ++k) u[k] -= t * d[k];
    for (int r = 0; r < 2; ++r) M(r, c) = u[dst[r]];
  }
  return M;
}

// Chart direction used across the cube edge segment [lo, lo + 1] along
// `axis`: the corner charts on the outer segments, the edge midpoint chart
// on the two inner ones.
Point chart_direction(const Point& on_edge, int axis, int lo) {
  Point p = on_edge;
  p[axis] = lo == 0 ? 0 : (lo == kSide - 1 ? kSide : kCenter);
  Point d;
  for (int k = 0; k < 3; ++k) d[k] = p[k] - kCenter;
  int g = 0;
  for (int k = 0; k < 3; ++k) g = std::gcd(g, std::abs(d[k]));
  for (int k = 0; k < 3; ++k) d[k] /= g;
  return d;
}

}  // namespace

AffineModel build_cube_k3() {
  std::map<Point, std::uint32_t> index;
  std::vector<Point> points;
  for (int x = 0; x <= kSide; ++x)
    for (int y = 0; y <= kSide; ++y)
      for (int z = 0; z <= kSide; ++z) {
        Point p{x, y, z};
        if (std::none_of(p.begin(), p.end(), [](int c) { return c == 0 || c == kSide; })) continue;
        index[p] = static_cast<std::uint32_t>(points.size());
        points.push_back(p);
      }
  std::vector<Simplex> tris;
  for (int axis = 0; axis < 3; ++axis)
    for (int side : {0, kSide}) {
      const auto ax = face_axes(axis);
      auto id = [&](int i, int j) {
        Point p{};
        p[axis] = side;
        p[ax[0]] = i;
        p[ax[1]] = j;
        return index.at(p);
      };
      for (int i = 0; i < kSide; ++i)
        for (int j = 0; j < kSide; ++j) {
          // Diagonals run through the face corners, which keeps the two
          // discriminant points next to a cube corner apart.
          const bool main = (2 * i + 1 < kSide) == (2 * j + 1 < kSide);
          Simplex a{id(i, j), id(i + 1, j), id(i + 1, j + 1)}, b{id(i, j), id(i, j + 1), id(i + 1, j + 1)};
          if (!main) {
            a = {id(i, j), id(i + 1, j), id(i, j + 1)};
            b = {id(i + 1, j), id(i, j + 1), id(i + 1, j + 1)};
          }
          std::sort(a.begin(), a.end());
          std::sort(b.begin(), b.end());
          tris.push_back(a);
          tris.push_back(b);
        }
    }
  auto K = std::make_shared<DeltaComplex>(2, points.size(), tris);

  // Discriminant: two points on each cube edge, one step in from the corners
  // along the edge.
  auto on_edge = [](const Point& p) {
    int extreme = 0;
    for (int c : p) extreme += (c == 0 || c == kSide);
    return extreme >= 2;
  };
  std::vector<Simplex> delta;
  for (std::uint32_t v = 0; v < points.size(); ++v) {
    const Point& p = points[v];
    if (!on_edge(p)) continue;
    for (int k = 0; k < 3; ++k)
      if (p[k] == 1 || p[k] == kSide - 1) delta.push_back({v});
  }
  K->set_delta(delta);
  K->set_boundary_from_topology();

  LocalSystem L(K, 2);
  auto tri_points = [&](std::uint32_t t) {
    std::vector<Point> pts;
    for (auto v : K->simplex(Cell{2, t})) pts.push_back(points[v]);
    return pts;
  };
  std::vector<std::pair<int, int>> face(K->count(2));
  for (std::uint32_t t = 0; t < K->count(2); ++t) face[t] = face_of(tri_points(t));
  for (std::uint32_t e = 0; e < K->count(1); ++e) {
    const auto& co = K->cofaces(Cell{1, e});
    if (co.size() != 2) throw std::logic_error("build_cube_k3: surface is not closed");
    const std::uint32_t t0 = co[0].index, t1 = co[1].index;
    if (face[t0].first == face[t1].first && face[t0].second == face[t1].second) continue;
    const Simplex& s = K->simplex(Cell{1, e});
    const Point &a = points[s[0]], &b = points[s[1]];
    int axis = 0;
    while (a[axis] == b[axis]) ++axis;
    const Point d = chart_direction(a, axis, std::min(a[axis], b[axis]));
    L.set_transition(t0, t1, projection_along(d, face[t0].first, face[t1].first));
  }

  AffineModel m;
  m.name = "cube-k3";
  m.complex = K;
  m.system = L;
  for (const Point& p : points) m.coordinates.push_back(IntVec{p[0], p[1], p[2]});
  {
    auto pts = tri_points(0);
    const auto ax = face_axes(face[0].first);
    const int det = (pts[1][ax[0]] - pts[0][ax[0]]) * (pts[2][ax[1]] - pts[0][ax[1]]) -
                    (pts[1][ax[1]] - pts[0][ax[1]]) * (pts[2][ax[0]] - pts[0][ax[0]]);
    m.orientation = det > 0 ? 1 : -1;
  }
  verify_model(m);

  SheafFunctor F = pushforward_sheaf(L, 1, SheafKind::Closed);
  GradedComplex C = chain_complex(F);
  HomologyCalculator H(C);

  // Equators: the belt z = 2 traversed counterclockwise around the z axis,
  // once with the vertical coefficient and once with its own tangent.
  for (bool tangent : {false, true}) {
    TropicalCycle z;
    z.name = tangent ? "equator-tangent" : "equator-vertical";
    for (std::uint32_t e = 0; e < K->count(1); ++e) {
      const Simplex& s = K->simplex(Cell{1, e});
      const Point &a = points[s[0]], &b = points[s[1]];
      if (a[2] != kCenter || b[2] != kCenter) continue;
      const int turn = (a[0] - kCenter) * (b[1] - a[1]) - (a[1] - kCenter) * (b[0] - a[0]);
      const int sign = turn > 0 ? 1 : -1;
      Point v{0, 0, sign};
      if (tangent)
        for (int k = 0; k < 3; ++k) v[k] = b[k] - a[k];
      const auto ax = face_axes(face[L.home(Cell{1, e})].first);
      z.cells.emplace_back(Cell{1, e}, IntVec{v[ax[0]], v[ax[1]]});
    }
    if (!is_cycle(C, F, z)) throw std::logic_error("build_cube_k3: equator is not a cycle");
    m.cycles.push_back(std::move(z));
  }

  // Goggles between two discriminant points: the links of both points plus a
  // shortest bridge that avoids the discriminant, optionally routed through
  // a waypoint.
  std::vector<std::vector<std::uint32_t>> adjacent(K->count(0));
  for (std::uint32_t e = 0; e < K->count(1); ++e) {
    const Simplex& s = K->simplex(Cell{1, e});
    adjacent[s[0]].push_back(s[1]);
    adjacent[s[1]].push_back(s[0]);
  }
  auto shortest_path = [&](std::uint32_t from, std::uint32_t to) {
    std::vector<std::int64_t> parent(K->count(0), -1);
    std::deque<std::uint32_t> queue{from};
    parent[from] = from;
    while (!queue.empty()) {
      const std::uint32_t u = queue.front();
      queue.pop_front();
      if (u == to) break;
      for (auto w : adjacent[u]) {
        if (parent[w] != -1 || (w != to && K->in_delta(Cell{0, w}))) continue;
        parent[w] = u;
        queue.push_back(w);
      }
    }
    if (parent[to] == -1) throw std::logic_error("build_cube_k3: bridge not found");
    std::vector<std::uint32_t> path;
    for (std::uint32_t u = to;; u = static_cast<std::uint32_t>(parent[u])) {
      path.push_back(u);
      if (u == from) break;
    }
    std::reverse(path.begin(), path.end());
    return path;
  };
  auto link = [&](std::uint32_t v) {
    std::vector<Cell> out;
    for (const auto& inc : K->cofaces(Cell{0, v}))
      for (const auto& opp : K->cofaces(Cell{1, inc.index})) {
        const Simplex& t = K->simplex(Cell{2, opp.index});
        for (std::size_t i = 0; i < 3; ++i)
          for (std::size_t j = i + 1; j < 3; ++j) {
            if (t[i] == v || t[j] == v) continue;
            out.push_back(Cell{1, *K->find(Simplex{t[i], t[j]})});
          }
      }
    return out;
  };
  struct GoggleSpec {
    const char* name;
    Point a, b;
    std::optional<Point> via;
  };
  // Two goggles completing the equators to two hyperbolic planes, and two
  // orthogonal E8 diagrams listed along the chain 1-2-3-4-5-6-7 with node 8
  // attached to node 3.
  const std::vector<GoggleSpec> specs = {
      {"goggle-h1", {0, 0, 1}, {0, 3, 0}, Point{2, 4, 4}},
      {"goggle-h2", {0, 0, 1}, {0, 4, 3}, Point{4, 4, 2}},
      {"e8a-1", {0, 0, 1}, {0, 3, 0}, Point{2, 0, 0}},
      {"e8a-2", {0, 1, 0}, {1, 0, 0}, Point{4, 2, 2}},
      {"e8a-3", {3, 0, 0}, {4, 0, 1}, Point{4, 2, 0}},
      {"e8a-4", {0, 4, 1}, {4, 0, 1}, Point{0, 0, 2}},
      {"e8a-5", {0, 4, 1}, {4, 4, 1}, Point{2, 0, 2}},
      {"e8a-6", {0, 1, 0}, {4, 4, 1}, Point{2, 4, 0}},
      {"e8a-7", {0, 4, 1}, {1, 4, 0}, Point{4, 2, 2}},
      {"e8a-8", {4, 0, 1}, {4, 1, 0}, Point{2, 4, 2}},
      {"e8b-1", {0, 0, 3}, {3, 0, 4}, Point{0, 2, 4}},
      {"e8b-2", {0, 0, 3}, {3, 4, 4}, Point{0, 2, 4}},
      {"e8b-3", {0, 0, 3}, {4, 1, 4}, Point{2, 0, 4}},
      {"e8b-4", {0, 0, 3}, {0, 3, 4}, Point{2, 0, 4}},
      {"e8b-5", {0, 3, 4}, {4, 4, 3}, Point{2, 4, 4}},
      {"e8b-6", {4, 0, 3}, {4, 4, 3}, std::nullopt},
      {"e8b-7", {0, 1, 4}, {4, 0, 3}, Point{2, 0, 4}},
      {"e8b-8", {4, 1, 4}, {4, 3, 4}, std::nullopt},
  };
  for (const auto& g : specs) {
    const std::uint32_t a = index.at(g.a), b = index.at(g.b);
    std::vector<std::uint32_t> path;
    if (g.via) {
      path = shortest_path(a, index.at(*g.via));
      auto rest = shortest_path(index.at(*g.via), b);
      path.insert(path.end(), rest.begin() + 1, rest.end());
    } else {
      path = shortest_path(a, b);
    }
    std::vector<Cell> support = link(a);
    for (Cell c : link(b)) support.push_back(c);
    if (path.size() > 3) {
      std::vector<std::uint32_t> inner(path.begin() + 1, path.end() - 1);
      for (Cell c : path_edges(*K, inner)) support.push_back(c);
    }
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    auto z = primitive_cycle_on_support(F, C, H, 1, support);
    if (!z) throw std::logic_error(std::string("build_cube_k3: no goggle for ") + g.name);
    z->name = g.name;
    m.cycles.push_back(std::move(*z));
  }

  // Orient the cycles: each goggle of a hyperbolic plane meets its equator
  // positively, and neighbouring nodes of each E8 diagram meet in +1.
  IntersectionPairing I(L, 1, 1, m.orientation);
  auto cycle = [&](const std::string& name) -> TropicalCycle& {
    for (auto& z : m.cycles)
      if (z.name == name) return z;
    throw std::logic_error("build_cube_k3: missing cycle " + name);
  };
  auto flip = [](TropicalCycle& z) {
    for (auto& [c, v] : z.cells)
      for (auto& x : v) x = -x;
  };
  auto orient_against = [&](TropicalCycle& z, const TropicalCycle& ref) {
    const Int x = I(z, ref);
    if (abs(x) != 1) throw std::logic_error("build_cube_k3: " + z.name + " does not meet " + ref.name + " once");
    if (x < 0) flip(z);
  };
  orient_against(cycle("goggle-h1"), cycle("equator-vertical"));
  orient_against(cycle("goggle-h2"), cycle("equator-tangent"));
  const std::vector<std::pair<int, int>> tree = {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {3, 8}};
  for (const char* diagram : {"e8a-", "e8b-"})
    for (auto [u, v] : tree)
      orient_against(cycle(diagram + std::to_string(v)), cycle(diagram + std::to_string(u)));
  return m;
}

}  // namespace tac
