#pragma once

// Orbit displacement statistics, the invariant low region swept out by the
// line, the branch remainder above it, and its decomposition into maximal
// blocks on which the map shifts by a constant integer.

#include "sigmarot/pa_map.hpp"
#include "sigmarot/tracked.hpp"

#include <optional>
#include <vector>

namespace sigmarot {

// Net movement along the line after n steps, measured through the retraction:
// retract(F^n(p)) - retract(p).
Rat displacement(const PAMap& m, const Point& p, unsigned n);

struct RhoBounds {
  Rat lower = Rat(0);
  Rat upper = Rat(0);
  unsigned iterations = 0;
  bool exact = false;  // true when the orbit was detected exactly periodic mod 1
};

// Bounds on the asymptotic mean displacement of the orbit of p.  If the
// orbit is detected to be eventually periodic modulo integer translation the
// value is exact (lower == upper); otherwise the bounds are the extreme
// displacement means over the tail window [N/2, N].
RhoBounds rho_bounds(const PAMap& m, const Point& p, unsigned N);

// Same statistics for the orbit of p under x -> F^q(x) - p_shift.
RhoBounds rho_bounds_power(const PAMap& m, const Point& p, unsigned q, Int p_shift,
                           unsigned N);

// Least upper bound h of branch heights swept by the forward images of the
// line, computed by the monotone round iteration
//   h_0 = 0,  h_{k+1} = max(h_k, sup heights of F(line and stubs up to h_k)).
// Returns (h, true) when the iteration stabilizes before `cap` rounds, and
// the best lower bound with false otherwise.
std::pair<Rat, bool> compute_TR_reach(const PAMap& m, unsigned cap = 64);

// The branch remainder above the reach: heights [h, 1] on copy 0, or nullopt
// when h == 1 (the whole branch is swept by the line region).
std::optional<BranchSegment> compute_XF(const PAMap& m, unsigned cap = 64);

// Structural sanity of the covering-tree model for a validated map: the line
// region together with the branch remainders covers the tree and the
// remainder components are the integer translates of one interval.  True for
// every validated map of this representation; computed checks are asserted.
bool sigma_like_check(const PAMap& m);

struct Partition {
  Rat reach = Rat(0);
  bool reach_exact = true;
  std::optional<BranchSegment> XF;      // nullopt when the remainder is empty
  std::vector<BranchSegment> segments;  // maximal blocks, ascending, disjoint
  std::vector<Int> displacements;       // integer shift of each block
  std::size_t size() const { return segments.size(); }
};

// Maximal-block decomposition of the remainder X = X_F:
// scanning upward, a block starts at the first point whose image lies in
// X + Z, carries the integer translate p of that image, and extends to the
// last point x (before the image first climbs strictly above the reach on a
// DIFFERENT integer copy) with F(x) in X + p.  Inside a block the image may
// dip through the invariant low region; between blocks it never meets X + Z.
Partition partition_XF(const PAMap& m, unsigned reach_cap = 64);

struct Itinerary {
  std::vector<int> symbols;    // 1-based block index per step
  std::vector<Int> accum;      // accumulated block shifts
  bool escaped = false;        // orbit left the blocks
  unsigned escape_step = 0;    // first step index outside every block
  bool periodic = false;       // exact repetition modulo translation detected
  unsigned period = 0;
  Int period_disp = 0;
};

// Symbol sequence of the orbit of p through the blocks, up to n steps.
Itinerary itinerary(const PAMap& m, const Point& p, const Partition& part, unsigned n);

// Mean-displacement bounds recovered from the accumulated block shifts.
RhoBounds rho_from_itinerary(const Itinerary& it);

}  // namespace sigmarot
