#pragma once

// Hand-built maps with fully worked-out expected behavior, shared across the
// test binaries.  Each returns a fresh value so tests can mutate copies.

#include "sigmarot/pa_map.hpp"

namespace fixtures {

using namespace sigmarot;

// The primary example: identity on the line; the branch folds [0,1/2] onto
// the whole branch and back, and stretches [3/4,1] up the next branch copy.
//   line:   0 -> L 0, 1 -> L 1
//   branch: 0 -> L 0, 1/4 -> B 0 1, 1/2 -> L 0, 3/4 -> L 1, 1 -> B 1 1
inline PAMap make_primary() {
  SigmaSpace sp{Rat(0)};
  PAMap m;
  m.space = sp;
  m.line = {{rat(0), sp.line(rat(0))}, {rat(1), sp.line(rat(1))}};
  m.branch = {{rat(0), sp.line(rat(0))},
              {rat(1, 4), sp.branch(0, rat(1))},
              {rat(1, 2), sp.line(rat(0))},
              {rat(3, 4), sp.line(rat(1))},
              {rat(1), sp.branch(1, rat(1))}};
  return m;
}

// Rigid shift by p/q on the line; the branch collapses to the shifted
// attachment point.  Every orbit has mean p/q.
inline PAMap make_rigid(long p, long q) {
  SigmaSpace sp{Rat(0)};
  Rat r = rat(p, q);
  PAMap m;
  m.space = sp;
  m.line = {{rat(0), sp.line(r)}, {rat(1), sp.line(r + 1)}};
  m.branch = {{rat(0), sp.line(r)}, {rat(1), sp.line(r)}};
  return m;
}

// Two disconnected ranges of motion: low branch heights fold locally (mean 0)
// while high ones jump two or three copies ahead (means in [2, 5/2]).
//   line:   identity
//   branch: 0 -> L 0, 1/4 -> B 0 1/4, 3/8 -> L 1/2, 1/2 -> L 2,
//           3/4 -> B 2 1, 1 -> B 3 3/4
inline PAMap make_two_component() {
  SigmaSpace sp{Rat(0)};
  PAMap m;
  m.space = sp;
  m.line = {{rat(0), sp.line(rat(0))}, {rat(1), sp.line(rat(1))}};
  m.branch = {{rat(0), sp.line(rat(0))},
              {rat(1, 4), sp.branch(0, rat(1, 4))},
              {rat(3, 8), sp.line(rat(1, 2))},
              {rat(1, 2), sp.line(rat(2))},
              {rat(3, 4), sp.branch(2, rat(1))},
              {rat(1), sp.branch(3, rat(3, 4))}};
  return m;
}

// Every vertex of the symbolic graph is transient: the attachment region
// funnels into a plateau whose image is a fixed point.  No graph edges.
//   line:   0 -> B 0 1/3, 1/2 -> L 1/2, 1 -> B 1 1/3
//   branch: 0 -> B 0 1/3, 1/3 -> B 0 1/2, 2/3 -> B 0 1/2, 1 -> B 1 1/2
inline PAMap make_no_edges() {
  SigmaSpace sp{Rat(0)};
  PAMap m;
  m.space = sp;
  m.line = {{rat(0), sp.branch(0, rat(1, 3))},
            {rat(1, 2), sp.line(rat(1, 2))},
            {rat(1), sp.branch(1, rat(1, 3))}};
  m.branch = {{rat(0), sp.branch(0, rat(1, 3))},
              {rat(1, 3), sp.branch(0, rat(1, 2))},
              {rat(2, 3), sp.branch(0, rat(1, 2))},
              {rat(1), sp.branch(1, rat(1, 2))}};
  return m;
}

// The minimal height whose preimage chain never reaches the attachment: the
// walk a <- (1+a)/4 converges to 1/3 without terminating, exercising the
// affine-tail solver in anchor searches.
//   line:   0 -> L 1/4, 1 -> L 5/4
//   branch: 0 -> L 1/4, 1/4 -> L 0, 1/2 -> B 0 1, 3/4 -> L 1, 1 -> B 1 1
inline PAMap make_anchor() {
  SigmaSpace sp{Rat(0)};
  PAMap m;
  m.space = sp;
  m.line = {{rat(0), sp.line(rat(1, 4))}, {rat(1), sp.line(rat(5, 4))}};
  m.branch = {{rat(0), sp.line(rat(1, 4))},
              {rat(1, 4), sp.line(rat(0))},
              {rat(1, 2), sp.branch(0, rat(1))},
              {rat(3, 4), sp.line(rat(1))},
              {rat(1), sp.branch(1, rat(1))}};
  return m;
}

// Invariant-region computation needs two rounds to stabilize at height 1/2.
//   line:   0 -> B 0 1/3, 1/2 -> L 1/2, 1 -> B 1 1/3
//   branch: 0 -> B 0 1/3, 1/3 -> B 0 1/2, 2/3 -> B 0 1/2, 1 -> L 1
inline PAMap make_reach_half() {
  SigmaSpace sp{Rat(0)};
  PAMap m;
  m.space = sp;
  m.line = {{rat(0), sp.branch(0, rat(1, 3))},
            {rat(1, 2), sp.line(rat(1, 2))},
            {rat(1), sp.branch(1, rat(1, 3))}};
  m.branch = {{rat(0), sp.branch(0, rat(1, 3))},
              {rat(1, 3), sp.branch(0, rat(1, 2))},
              {rat(2, 3), sp.branch(0, rat(1, 2))},
              {rat(1), sp.line(rat(1))}};
  return m;
}

// Everything is absorbed into branch tips: the invariant region above the
// line is empty and the whole space converges to a fixed tip.
//   line:   0 -> B 0 1, 1 -> B 1 1
//   branch: 0 -> B 0 1, 1 -> B 0 1
inline PAMap make_absorbed() {
  SigmaSpace sp{Rat(0)};
  PAMap m;
  m.space = sp;
  m.line = {{rat(0), sp.branch(0, rat(1))}, {rat(1), sp.branch(1, rat(1))}};
  m.branch = {{rat(0), sp.branch(0, rat(1))}, {rat(1), sp.branch(0, rat(1))}};
  return m;
}

// Branches flatten onto the line immediately and the line rotates by 1/3:
// the invariant region is empty and the rotation set is the single point 1/3.
//   line:   0 -> L 1/3, 1 -> L 4/3
//   branch: 0 -> L 1/3, 1 -> L 2/3
inline PAMap make_no_blocks() {
  SigmaSpace sp{Rat(0)};
  PAMap m;
  m.space = sp;
  m.line = {{rat(0), sp.line(rat(1, 3))}, {rat(1), sp.line(rat(4, 3))}};
  m.branch = {{rat(0), sp.line(rat(1, 3))}, {rat(1), sp.line(rat(2, 3))}};
  return m;
}

// Same blocks as make_primary, but the peak at height 1/4 stops at 7/8, so a
// vertex endpoint lands strictly inside a vertex: the symbolic model is not
// exact for this map.
inline PAMap make_not_markov() {
  PAMap m = make_primary();
  m.branch[1].img = m.space.branch(0, rat(7, 8));
  return m;
}

}  // namespace fixtures
