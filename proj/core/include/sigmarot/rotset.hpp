#pragma once

// The full rotation set: the line contribution (classical rotation interval
// of the line restriction, or of the low-region model when the line maps
// into the branches), plus one interval per block stage obtained from cycle
// means of the symbolic graph restricted to the part of the remainder that
// survives absorption into the growing invariant low region.

#include "sigmarot/dynamics.hpp"
#include "sigmarot/markov.hpp"
#include "sigmarot/pa_map.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sigmarot {

struct RotResult {
  Rat lo = Rat(0);
  Rat hi = Rat(0);
  bool exact = false;
  std::string mode;  // "line-envelope", "low-region-graph", "sampled"
};

// Rotation interval of the dynamics on the closure of the line region.
// If F maps the line into itself this is the classical rotation interval of
// the line restriction, certified exactly through its monotone envelopes
// whenever the endpoints are rationals of moderate denominator.  Otherwise
// an exact symbolic model of the invariant low region is attempted; failing
// that, certified sampling bounds are returned flagged approximate.
RotResult rot_R(const PAMap& m, unsigned iters = 2048);

struct StageInterval {
  int stage = 0;  // 0 = line contribution, k >= 1 = block stage k
  bool nonempty = false;
  Rat lo = Rat(0), hi = Rat(0);
  bool exact = false;
};

struct RotationSet {
  std::vector<StageInterval> stages;            // stage 0 first, then 1..N
  std::vector<std::pair<Rat, Rat>> components;  // merged disjoint closed intervals
  bool exact = false;
  std::vector<std::string> notes;
};

struct RotationOptions {
  unsigned reach_cap = 64;
  unsigned rot_r_iters = 2048;
};

RotationSet rotation_set(const PAMap& m, const RotationOptions& opts = {});
RotationSet rotation_set(const PAMap& m, const Partition& part,
                         const RotationOptions& opts = {});

struct RationalTag {
  Rat r;
  int component = 0;  // index into RotationSet::components
  bool boundary = false;
};

// Every rational with denominator <= max_den (lowest terms) lying in the
// rotation set, ascending.
std::vector<RationalTag> rationals_in(const RotationSet& rs, unsigned max_den);

// Stage bookkeeping needed to steer the periodic-point search: the height
// threshold below which stage k has been absorbed into the invariant low
// region.  thresholds[k] is M_{k+1} in the induction (threshold before
// processing stage k+1); thresholds[0] is the reach.
std::vector<Rat> stage_thresholds(const PAMap& m, const Partition& part,
                                  const MarkovGraph& g);

}  // namespace sigmarot
