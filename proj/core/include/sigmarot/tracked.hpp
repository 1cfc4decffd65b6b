#pragma once

// Exact symbolic iteration engine.  The image of an interval under F^n is
// maintained as an ordered list of domain subintervals on each of which the
// n-th image moves affinely along a single edge of the tree.  All breakpoint
// refinement, preimage solving and scanning is exact rational arithmetic.

#include "sigmarot/pa_map.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace sigmarot {

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EdgeRef {
  PointKind kind = PointKind::Line;
  Int copy = 0;  // meaningful for Branch edges only
  bool operator==(const EdgeRef& o) const {
    return kind == o.kind && (kind == PointKind::Line || copy == o.copy);
  }
  bool operator!=(const EdgeRef& o) const { return !(*this == o); }
};

// Point at a coordinate on an edge (line coordinate, or branch height; a
// branch height of 0 canonicalizes to the attachment point).
Point point_on_edge(const SigmaSpace& sp, const EdgeRef& e, const Rat& coord);
EdgeRef edge_of_point(const Point& p);
Rat coord_of_point(const Point& p);

struct RawArc {
  EdgeRef edge;
  Rat c0, c1;  // directed coordinates along the edge
};
std::vector<RawArc> raw_arcs(const SigmaSpace& sp, const Point& p, const Point& q);

struct TrackedSeg {
  Rat d0, d1;   // domain coordinates, d0 <= d1, on the domain edge
  EdgeRef edge; // edge holding the image
  Rat v0, v1;   // image coordinates at d0 and d1; affine in between
  bool constant() const { return v0 == v1; }
};

struct TrackedGraph {
  EdgeRef dom_edge;
  Rat dom_lo, dom_hi;
  std::vector<TrackedSeg> segs;  // ordered, contiguous, covering [dom_lo, dom_hi]
};

inline constexpr std::size_t kDefaultSegBudget = 20000;

TrackedGraph tracked_identity(const EdgeRef& dom, const Rat& lo, const Rat& hi);
TrackedGraph tracked_apply(const PAMap& m, const TrackedGraph& g,
                           std::size_t budget = kDefaultSegBudget);
TrackedGraph tracked_iterate(const PAMap& m, TrackedGraph g, unsigned n,
                             std::size_t budget = kDefaultSegBudget);
TrackedGraph tracked_on_segment(const PAMap& m, const BranchSegment& seg, unsigned n,
                                std::size_t budget = kDefaultSegBudget);

// Image point of a tracked seg at a domain coordinate inside [d0, d1].
Point tracked_point(const SigmaSpace& sp, const TrackedSeg& s, const Rat& d);

// Union of the image of a tracked graph, edge by edge.  Images of connected
// sets are connected, so the trace on every edge is a single interval.
struct TreeSet {
  std::optional<std::pair<Rat, Rat>> line;     // line coordinate interval
  std::map<Int, std::pair<Rat, Rat>> branches; // copy -> height interval
  void add(const EdgeRef& e, const Rat& a, const Rat& b);
  bool contains(const SigmaSpace& sp, const Point& p) const;
  // Whole branch segment (heights [lo,hi] on s.copy) contained in the set.
  bool covers(const BranchSegment& s) const;
  // Line interval [a,b] contained in the set.
  bool covers_line(const Rat& a, const Rat& b) const;
};
TreeSet tracked_union(const TrackedGraph& g);

// Piecewise-affine scan of "the image seen through the retraction onto a
// branch segment": over the domain of a tracked graph, the value is
//   - the image height, where the image lies on branch copy `copy` at height
//     >= floor_h (the carried segment is [floor_h, 1] on that copy);
//   - floor_h, where the image lies in the invariant low region (the line,
//     any branch point at height <= floor_h);
//   - undefined (invalid) where the image sits strictly above floor_h on a
//     different branch copy: there the retraction does not exist.
struct PLPiece {
  Rat x0, x1;
  Rat v0, v1;
  bool valid;
};
struct PLFunc {
  std::vector<PLPiece> pieces;  // ordered, contiguous
  Rat lo() const { return pieces.front().x0; }
  Rat hi() const { return pieces.back().x1; }
};
PLFunc retraction_scan(const SigmaSpace& sp, const TrackedGraph& g, Int copy,
                       const Rat& floor_h);

// Exact scanning primitives over a PLFunc; all restricted to valid pieces.
std::optional<Rat> pl_first_le(const PLFunc& f, const Rat& c, const Rat& from);
std::optional<Rat> pl_first_ge(const PLFunc& f, const Rat& c, const Rat& from);
std::optional<Rat> pl_first_eq(const PLFunc& f, const Rat& c, const Rat& from);
std::optional<Rat> pl_last_eq_before(const PLFunc& f, const Rat& c, const Rat& upto);

}  // namespace sigmarot
