#pragma once
// Square-lattice geometry on the torus and on the periodic two-leg ladder.
// Spins live on edges.
//
// Edge indexing (fixed so that serialized states are reproducible):
//   torus(lx, ly):  horizontal edges first, row-major: h(x,y) = y*lx + x
//                   runs from (x,y) to (x+1,y); then vertical edges
//                   v(x,y) = lx*ly + y*lx + x from (x,y) to (x,y+1).
//   ladder(n):      lower-leg edges 0..n-1, upper-leg edges n..2n-1,
//                   rungs 2n..3n-1; legs are periodic, rung i joins the
//                   two leg vertices of column i.

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

namespace kising {

enum class LatticeKind { torus, ladder };

struct Edge {
  int u = 0;
  int v = 0;
};

// Unordered pair of perpendicular edges meeting at one corner of a plaquette.
struct IsingPair {
  int e1 = 0;
  int e2 = 0;
  int plaquette = 0;
};

struct Lattice {
  LatticeKind kind = LatticeKind::torus;
  int lx = 0;  // torus width; for the ladder this is the column count n
  int ly = 0;  // torus height; 0 for the ladder

  std::vector<Edge> edges;
  std::vector<std::vector<int>> stars;        // vertex -> incident edge ids
  std::vector<std::array<int, 4>> plaquettes; // ordered boundary edge ids
  std::vector<IsingPair> ising_pairs;
  std::vector<int> sublattice;                // torus: 0 = A, 1 = B; empty for ladder

  int n_vertices() const { return static_cast<int>(stars.size()); }
  int n_edges() const { return static_cast<int>(edges.size()); }
  int n_plaquettes() const { return static_cast<int>(plaquettes.size()); }

  // torus coordinate helpers (wrap negative and overflowing values)
  int vertex_id(int x, int y) const;
  int h_edge(int x, int y) const;
  int v_edge(int x, int y) const;
};

Lattice build_torus(int lx, int ly);  // both dimensions even, >= 2
Lattice build_ladder(int n);          // n even, >= 2

enum class CycleLabel { tz1, tz2, tx1, tx2, c1prime };

struct CycleSpec {
  CycleLabel label;
  std::vector<int> edges;  // c1prime keeps walk order; others are unordered
  bool dual = false;       // true for cycles meant to carry sigma_x
};

std::vector<CycleSpec> cycles(const Lattice& l);
CycleSpec cycle_named(const Lattice& l, CycleLabel label);
std::string cycle_label_name(CycleLabel label);

// Region of vertices whose star operators make up a Wilson loop; the
// perimeter counts lattice edges with exactly one endpoint inside.
struct WilsonRegion {
  std::vector<int> vertices;
  int perimeter = 0;
  int area() const { return static_cast<int>(vertices.size()); }
};

WilsonRegion region_from_vertices(const Lattice& l, std::vector<int> vertices);
WilsonRegion make_rect_region(const Lattice& l, int x0, int y0, int w, int h);

nlohmann::json lattice_to_json(const Lattice& l);

}  // namespace kising
