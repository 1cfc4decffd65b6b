#pragma once

// One-call orchestration used by the command line tool and the acceptance
// harness: validation, reach, remainder, blocks, symbolic model, rotation
// set, realized rationals, and deterministic rendering.

#include "sigmarot/covering.hpp"
#include "sigmarot/dynamics.hpp"
#include "sigmarot/markov.hpp"
#include "sigmarot/pa_map.hpp"
#include "sigmarot/rotset.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sigmarot {

struct AnalysisOptions {
  unsigned reach_cap = 64;
  unsigned rot_r_iters = 2048;
  unsigned max_den = 0;  // when > 0, realize every rational of denominator <= max_den
  unsigned walk_cap = 1000;
};

struct RealizedRational {
  Rat r;
  bool found = false;
  Point x;
  unsigned period = 0;
  Int disp = 0;
  std::string note;
};

struct Analysis {
  PAMap map;
  Partition part;
  MarkovResult mk;
  std::optional<MarkovGraph> graph;
  RotationSet rot;
  std::vector<RealizedRational> realized;
};

Analysis analyze(const PAMap& m, const AnalysisOptions& opts = {});

// Periodic-point search steered by the analysis: picks the stage whose
// interval contains p/q and searches the surviving region; integer-mean and
// line-side rationals fall back to direct certification on the line.
PeriodicResult periodic_for(const Analysis& a, Int p, unsigned q, unsigned walk_cap = 1000);

// Deterministic machine-readable block: identical input produces identical
// bytes.  Lines use the exact rational form "num/den".
std::string machine_report(const Analysis& a);
// Human-readable summary.
std::string human_report(const Analysis& a);
// JSON rendering with stable key order.
std::string json_report(const Analysis& a);

struct SweepRow {
  Point start;
  RhoBounds rho;
};

// Deterministic grid of sample orbits: `samples` points spread over the
// remainder (or the branch when the remainder is empty) and one line period,
// each iterated up to `iters` steps.  Rows are computed concurrently but
// reported in grid order.
std::vector<SweepRow> sweep(const PAMap& m, unsigned samples, unsigned iters);

}  // namespace sigmarot
