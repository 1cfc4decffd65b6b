#pragma once

// Positive coverings between remainder segments, chains of coverings, their
// exact fixed points, horseshoe chain synthesis for intermediate means, the
// leftmost self-anchored point of a self-covering segment, and the search
// for periodic-mod-translation points with a prescribed exact mean.

#include "sigmarot/dynamics.hpp"
#include "sigmarot/pa_map.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sigmarot {

struct CoverStep {
  BranchSegment source;  // I
  BranchSegment target;  // J: the relation is F^n(I) covers J + p positively
  Int p = 0;
  unsigned n = 1;
  Point witness_lo;  // x with retraction(F^n(x) - p) <= min J
  Point witness_hi;  // y >= x with retraction(F^n(y) - p) >= max J
};

// Decides whether F^n(I) positively covers J + p: there are x <= y in I whose
// n-th images, pulled back by the translation p and retracted onto the
// remainder segment, lie below min J and above max J respectively.  Returns
// the witnesses, or nullopt.
std::optional<CoverStep> positively_covers(const PAMap& m, const BranchSegment& I,
                                           const BranchSegment& J, Int p, unsigned n);
// Variant reusing a precomputed partition (same result, avoids recomputation).
std::optional<CoverStep> positively_covers(const PAMap& m, const Partition& part,
                                           const BranchSegment& I, const BranchSegment& J,
                                           Int p, unsigned n);

struct Chain {
  std::vector<CoverStep> steps;
  unsigned length = 0;  // total number of map applications (sum of step powers)
  Int weight = 0;       // total integer translation (sum of step translates)
  bool closed = false;  // last target equals first source
};

// Validates interfaces: each step's source must equal the previous target.
Chain make_chain(std::vector<CoverStep> steps);
Chain chain_concat(const Chain& a, const Chain& b);
Chain chain_power(const Chain& c, unsigned k);  // requires closed
Chain chain_translate(const Chain& c, Int i);

// Exact point x with F^length(x) == x + weight whose intermediate images
// follow the chain: F^{N_j}(x) lies in the j-th target translated by the
// accumulated weight.  Computed by exact backward interval pullback followed
// by an exact affine root solve; the returned certificate has zero residual.
Point chain_fixed_point(const PAMap& m, const Chain& c);

// Builds a closed chain with mean weight exactly p/q per application of
// G = F^n from the four coverings
//   I => I + m1,  I => J + m1,  J => I + m2,  J => J + m2   (all under G),
// for any rational p/q with m1 <= p/q <= m2.  The coverings are re-verified;
// a missing one raises std::invalid_argument.
Chain horseshoe_chain(const PAMap& m, const BranchSegment& I, const BranchSegment& J,
                      Int m1, Int m2, unsigned n, Int p, unsigned q);

// For a segment Y that positively covers Y + q1 under F, returns the least
// point a of Y with F(a) == a + q1 exactly, obtained by pulling the bottom
// endpoint back through minimal preimages; below a, no orbit can stay in the
// translates of Y.  If the minimal-preimage sequence has not stabilized
// after `cap` steps, the exact fixed point of the affine piece containing
// its tail is returned instead.
Point leftmost_anchor(const PAMap& m, const BranchSegment& Y1, Int q1,
                      unsigned cap = 1000);

struct PeriodicResult {
  bool found = false;
  Point x;
  unsigned period = 0;  // F^period(x) == x + disp exactly
  Int disp = 0;
  std::string note;
};

// Searches for a point with exact mean p/q inside `region` (a subsegment of
// the remainder): finds a closed walk of mean exactly p/q in the symbolic
// transition graph restricted to the region, pulls the walk interval back,
// wraps it as a one-step self-covering synthesized through horseshoe_chain,
// and extracts the exact fixed point.  Honest not-found with a note when the
// symbolic model is unavailable or no walk exists within budget.
PeriodicResult find_periodic_mod1(const PAMap& m, Int p, unsigned q,
                                  const BranchSegment& region, const Partition& part,
                                  unsigned walk_cap = 1000);

}  // namespace sigmarot
