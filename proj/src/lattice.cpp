#include "kising/lattice.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <utility>

namespace kising {

namespace {

int wrap(int a, int m) {
  int r = a % m;
  return r < 0 ? r + m : r;
}

void collect_stars(Lattice& l, int n_vertices) {
  l.stars.assign(n_vertices, {});
  for (int e = 0; e < l.n_edges(); ++e) {
    l.stars[l.edges[e].u].push_back(e);
    l.stars[l.edges[e].v].push_back(e);
  }
}

void collect_ising_pairs(Lattice& l) {
  std::set<std::pair<int, int>> seen;
  for (int p = 0; p < l.n_plaquettes(); ++p) {
    const auto& b = l.plaquettes[p];
    for (int i = 0; i < 4; ++i) {
      int e1 = b[i], e2 = b[(i + 1) % 4];
      if (e1 > e2) std::swap(e1, e2);
      if (!seen.insert({e1, e2}).second)
        throw std::logic_error("duplicate corner pair in lattice construction");
      l.ising_pairs.push_back({e1, e2, p});
    }
  }
}

}  // namespace

int Lattice::vertex_id(int x, int y) const {
  return wrap(y, ly) * lx + wrap(x, lx);
}

int Lattice::h_edge(int x, int y) const {
  return wrap(y, ly) * lx + wrap(x, lx);
}

int Lattice::v_edge(int x, int y) const {
  return lx * ly + wrap(y, ly) * lx + wrap(x, lx);
}

Lattice build_torus(int lx, int ly) {
  if (lx < 2 || ly < 2 || lx % 2 != 0 || ly % 2 != 0)
    throw std::invalid_argument(
        "torus dimensions must be even and >= 2 (bipartite two-coloring)");
  Lattice l;
  l.kind = LatticeKind::torus;
  l.lx = lx;
  l.ly = ly;
  const int n = lx * ly;
  l.edges.reserve(2 * n);
  for (int y = 0; y < ly; ++y)
    for (int x = 0; x < lx; ++x)
      l.edges.push_back({l.vertex_id(x, y), l.vertex_id(x + 1, y)});
  for (int y = 0; y < ly; ++y)
    for (int x = 0; x < lx; ++x)
      l.edges.push_back({l.vertex_id(x, y), l.vertex_id(x, y + 1)});
  collect_stars(l, n);
  l.plaquettes.reserve(n);
  for (int y = 0; y < ly; ++y)
    for (int x = 0; x < lx; ++x)
      l.plaquettes.push_back({l.h_edge(x, y), l.v_edge(x + 1, y),
                              l.h_edge(x, y + 1), l.v_edge(x, y)});
  collect_ising_pairs(l);
  l.sublattice.resize(n);
  for (int y = 0; y < ly; ++y)
    for (int x = 0; x < lx; ++x) l.sublattice[l.vertex_id(x, y)] = (x + y) % 2;
  return l;
}

Lattice build_ladder(int n) {
  if (n < 2 || n % 2 != 0)
    throw std::invalid_argument("ladder column count must be even and >= 2");
  Lattice l;
  l.kind = LatticeKind::ladder;
  l.lx = n;
  l.ly = 0;
  // vertices: lower leg 0..n-1, upper leg n..2n-1
  const auto lower = [n](int i) { return wrap(i, n); };
  const auto upper = [n](int i) { return n + wrap(i, n); };
  const auto leg_lo = [n](int i) { return wrap(i, n); };
  const auto leg_up = [n](int i) { return n + wrap(i, n); };
  const auto rung = [n](int i) { return 2 * n + wrap(i, n); };
  for (int i = 0; i < n; ++i) l.edges.push_back({lower(i), lower(i + 1)});
  for (int i = 0; i < n; ++i) l.edges.push_back({upper(i), upper(i + 1)});
  for (int i = 0; i < n; ++i) l.edges.push_back({lower(i), upper(i)});
  collect_stars(l, 2 * n);
  for (int i = 0; i < n; ++i)
    l.plaquettes.push_back({leg_lo(i), rung(i + 1), leg_up(i), rung(i)});
  collect_ising_pairs(l);
  return l;
}

std::string cycle_label_name(CycleLabel label) {
  switch (label) {
    case CycleLabel::tz1: return "Tz1";
    case CycleLabel::tz2: return "Tz2";
    case CycleLabel::tx1: return "Tx1";
    case CycleLabel::tx2: return "Tx2";
    case CycleLabel::c1prime: return "C1prime";
  }
  throw std::logic_error("unknown cycle label");
}

std::vector<CycleSpec> cycles(const Lattice& l) {
  std::vector<CycleSpec> out;
  if (l.kind == LatticeKind::torus) {
    CycleSpec tz1{CycleLabel::tz1, {}, false};
    for (int x = 0; x < l.lx; ++x) tz1.edges.push_back(l.h_edge(x, 0));
    CycleSpec tz2{CycleLabel::tz2, {}, false};
    for (int y = 0; y < l.ly; ++y) tz2.edges.push_back(l.v_edge(0, y));
    // dual cycles: Tx1 winds the y direction crossing one horizontal edge
    // per row, Tx2 winds the x direction crossing one vertical edge per column
    CycleSpec tx1{CycleLabel::tx1, {}, true};
    for (int y = 0; y < l.ly; ++y) tx1.edges.push_back(l.h_edge(0, y));
    CycleSpec tx2{CycleLabel::tx2, {}, true};
    for (int x = 0; x < l.lx; ++x) tx2.edges.push_back(l.v_edge(x, 0));
    out = {std::move(tz1), std::move(tz2), std::move(tx1), std::move(tx2)};
  } else {
    const int n = l.lx;
    CycleSpec tz1{CycleLabel::tz1, {}, false};
    for (int i = 0; i < n; ++i) tz1.edges.push_back(i);
    // transversal dual cycle: one leg edge per leg in column 0
    CycleSpec tx1{CycleLabel::tx1, {0, n}, true};
    // zigzag walk covering every vertex once: leg edge of column i on
    // alternating legs, then the rung of column i+1
    CycleSpec c1{CycleLabel::c1prime, {}, false};
    for (int i = 0; i < n; ++i) {
      c1.edges.push_back(i % 2 == 0 ? i : n + i);
      c1.edges.push_back(2 * n + (i + 1) % n);
    }
    out = {std::move(tz1), std::move(tx1), std::move(c1)};
  }
  return out;
}

CycleSpec cycle_named(const Lattice& l, CycleLabel label) {
  for (auto& c : cycles(l))
    if (c.label == label) return c;
  throw std::invalid_argument(cycle_label_name(label) +
                              " is not defined on this lattice");
}

WilsonRegion region_from_vertices(const Lattice& l, std::vector<int> vertices) {
  std::set<int> set(vertices.begin(), vertices.end());
  if (set.size() != vertices.size())
    throw std::invalid_argument("region vertex list has duplicates");
  for (int v : vertices)
    if (v < 0 || v >= l.n_vertices())
      throw std::invalid_argument("region vertex outside lattice");
  WilsonRegion r;
  r.vertices.assign(set.begin(), set.end());
  for (const auto& e : l.edges)
    r.perimeter += (set.count(e.u) + set.count(e.v)) == 1;
  return r;
}

WilsonRegion make_rect_region(const Lattice& l, int x0, int y0, int w, int h) {
  if (l.kind != LatticeKind::torus)
    throw std::invalid_argument("rectangular regions require a torus lattice");
  if (x0 < 0 || x0 >= l.lx || y0 < 0 || y0 >= l.ly || w < 1 || h < 1 ||
      w > l.lx || h > l.ly)
    throw std::invalid_argument("region outside lattice");
  std::vector<int> verts;
  for (int dy = 0; dy < h; ++dy)
    for (int dx = 0; dx < w; ++dx) verts.push_back(l.vertex_id(x0 + dx, y0 + dy));
  return region_from_vertices(l, std::move(verts));
}

nlohmann::json lattice_to_json(const Lattice& l) {
  nlohmann::json j;
  j["kind"] = l.kind == LatticeKind::torus ? "torus" : "ladder";
  if (l.kind == LatticeKind::torus) {
    j["lx"] = l.lx;
    j["ly"] = l.ly;
  } else {
    j["columns"] = l.lx;
  }
  j["n_vertices"] = l.n_vertices();
  auto edges = nlohmann::json::array();
  for (const auto& e : l.edges) edges.push_back({e.u, e.v});
  j["edges"] = std::move(edges);
  j["plaquettes"] = l.plaquettes;
  auto pairs = nlohmann::json::array();
  for (const auto& p : l.ising_pairs)
    pairs.push_back({{"edges", {p.e1, p.e2}}, {"plaquette", p.plaquette}});
  j["ising_pairs"] = std::move(pairs);
  if (!l.sublattice.empty()) j["sublattice"] = l.sublattice;
  return j;
}

}  // namespace kising
