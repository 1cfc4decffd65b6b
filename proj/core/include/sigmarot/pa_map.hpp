#pragma once

// Continuous piecewise-affine self-maps of the covering tree that commute
// with the unit translation: F(x + 1) = F(x) + 1.  A map is described by its
// values at finitely many breakpoints on one fundamental line interval
// [c, c+1] and on one branch interval [0, 1]; between breakpoints the map
// traverses the geodesic between the two images at constant speed.

#include "sigmarot/rational.hpp"
#include "sigmarot/space.hpp"

#include <string>
#include <vector>

namespace sigmarot {

struct BreakPair {
  Rat x;      // line coordinate in [c, c+1], or branch height in [0, 1]
  Point img;  // image of that breakpoint
};

struct PAMap {
  SigmaSpace space;
  std::vector<BreakPair> line;    // first x == c, last x == c+1
  std::vector<BreakPair> branch;  // first x == 0, last x == 1
};

// Returns an empty list when the map is well formed; otherwise a list of
// human-readable diagnostics.  Checked: breakpoint ordering is strict and
// spans the full fundamental intervals, the two ends of the line interval
// have images differing by the unit translation, and the branch bottom image
// agrees with the line image at the attachment (continuity at the gluing).
std::vector<std::string> validate(const PAMap& m);

// Throws std::invalid_argument with the first diagnostic if invalid.
void require_valid(const PAMap& m);

Point evaluate(const PAMap& m, const Point& p);
Point iterate(const PAMap& m, Point p, unsigned n);

// Exact image of a branch segment, as a minimal list of arcs covering
// exactly F(segment): at most one line arc followed by one arc per branch
// copy met, in increasing copy order.
std::vector<Arc> image_of_segment(const PAMap& m, const BranchSegment& seg);

struct Preimage {
  Point x;
  bool flat;  // endpoint of an interval on which F^n is constant at the target
};

// All solutions of F^n(x) == target with x in dom.  When F^n is constant at
// the target value on a subinterval, the two endpoints of each such interval
// are returned, flagged.
std::vector<Preimage> preimages_in_segment(const PAMap& m, const Point& target,
                                           const BranchSegment& dom, unsigned n);

// The same map composed with the unit translation k times: x -> F(x) + k.
PAMap shift_map(const PAMap& m, Int k);

}  // namespace sigmarot
