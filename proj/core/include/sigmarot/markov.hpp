#pragma once

// Symbolic transition model: refinement of the blocks into vertices with no
// interior breakpoints, the exactness test for the model, the weighted
// transition graph, exact cycle-mean ranges with witness cycles, and a
// closed-walk mean enumeration.

#include "sigmarot/dynamics.hpp"
#include "sigmarot/pa_map.hpp"

#include <string>
#include <vector>

namespace sigmarot {

struct MarkovVertex {
  BranchSegment seg;  // copy 0
  int block = 0;      // 1-based index of the block containing the vertex
};

struct MarkovEdge {
  int from = 0;
  int to = 0;
  Int w = 0;  // F(vertex from) covers (vertex to) + w
  bool operator==(const MarkovEdge& o) const {
    return from == o.from && to == o.to && w == o.w;
  }
};

struct MarkovGraph {
  std::vector<MarkovVertex> vertices;
  std::vector<MarkovEdge> edges;  // sorted by (from, to, w)
};

struct MarkovResult {
  bool markov = false;
  std::vector<MarkovVertex> vertices;
  std::vector<std::string> violations;  // endpoint images breaking exactness
};

// Refines the blocks at interior branch breakpoints and checks that every
// vertex endpoint maps to a vertex endpoint modulo integer translation or
// into the invariant low region; only then do vertex images decompose
// exactly over vertices.
MarkovResult markov_partition(const PAMap& m, const Partition& part);

// Edges (A, B, i) whenever F(A) contains B + i.  Deterministic order.
MarkovGraph build_markov_graph(const PAMap& m, const std::vector<MarkovVertex>& vertices);

// GraphViz rendering with translation labels on the edges.
std::string graph_dot(const MarkovGraph& g);

// Plain weighted digraph used by the mean-cycle machinery.
struct WDigraph {
  int n = 0;
  struct E {
    int u, v;
    Rat w;
  };
  std::vector<E> edges;
};
WDigraph to_wdigraph(const MarkovGraph& g);

std::vector<int> strongly_connected_components(const WDigraph& g);  // comp id per vertex

struct MeanRange {
  Rat lo, hi;
  std::vector<int> lo_cycle;  // witness vertex cycle attaining lo (closed walk)
  std::vector<int> hi_cycle;
  std::vector<int> lo_edges;  // same witnesses as edge indices into WDigraph::edges
  std::vector<int> hi_edges;  // (needed when parallel edges make vertices ambiguous)
};

struct CycleMeanResult {
  bool has_cycle = false;
  std::vector<MeanRange> per_component;        // one per component containing a cycle
  std::vector<std::pair<Rat, Rat>> intervals;  // merged [lo,hi] ranges, ascending
};

// Exact minimum and maximum cycle mean per strongly connected component
// (Karp's recurrence over rationals), with witness cycles recovered from the
// tight subgraph of the shifted weights.
CycleMeanResult cycle_mean_range(const WDigraph& g);
CycleMeanResult cycle_mean_range(const MarkovGraph& g);

// All means of closed walks of length <= max_len, by dynamic programming
// over (start, end, length, weight) reachability.  Sorted, deduplicated.
std::vector<Rat> oracle_cycle_enumeration(const MarkovGraph& g, unsigned max_len);

}  // namespace sigmarot
