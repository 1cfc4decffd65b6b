#pragma once

// Geometry of the universal covering tree T of the one-branch wedge graph:
// the real line with, at every integer translate of the attachment offset
// c + n (n in Z), a closed branch interval of length 1 glued by one endpoint.
//
// Points are represented canonically: a point at branch height 0 is the
// attachment point itself and is stored as a Line point with coordinate
// c + n.  Branch points therefore always have height in (0, 1].

#include "sigmarot/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sigmarot {

enum class PointKind { Line, Branch };

struct Point {
  PointKind kind = PointKind::Line;
  // Line: x is the line coordinate, copy is unused (0).
  // Branch: copy is the integer index n of the branch, x is the height in (0,1].
  Rat x = Rat(0);
  Int copy = 0;

  bool operator==(const Point& o) const {
    if (kind != o.kind) return false;
    if (kind == PointKind::Line) return x == o.x;
    return copy == o.copy && x == o.x;
  }
  bool operator!=(const Point& o) const { return !(*this == o); }
};

// A closed interval of heights [lo, hi] (0 <= lo <= hi <= 1) on branch copy
// `copy`.  When lo == 0 the segment includes the attachment point.
struct BranchSegment {
  Int copy = 0;
  Rat lo = Rat(0);
  Rat hi = Rat(0);

  bool operator==(const BranchSegment& o) const {
    return copy == o.copy && lo == o.lo && hi == o.hi;
  }
  bool operator!=(const BranchSegment& o) const { return !(*this == o); }
  bool degenerate() const { return lo == hi; }
};

// A directed arc lying inside the closure of a single edge of the tree
// (one stretch of line, or one branch interval).  The geodesic between its
// endpoints is the arc itself.
struct Arc {
  Point a, b;
  bool operator==(const Arc& o) const { return a == o.a && b == o.b; }
};

class SigmaSpace {
 public:
  explicit SigmaSpace(Rat attach = Rat(0));

  const Rat& attach_offset() const { return c_; }

  Point line(const Rat& x) const;
  // Canonicalizes height 0 to the attachment point Line(n + c).
  Point branch(Int n, const Rat& h) const;
  Point attachment(Int n) const;

  Point translate(const Point& p, Int k) const;
  BranchSegment translate(const BranchSegment& s, Int k) const;

  // Retraction of the tree onto the line: line points map to themselves,
  // branch points map to their attachment coordinate.
  Rat retract(const Point& p) const;

  // Height above the line: 0 for line points, h for branch points.
  Rat height(const Point& p) const;

  // Exact length of the geodesic between p and q.
  Rat path_length(const Point& p, const Point& q) const;

  // Point at arc-length fraction t in [0,1] along the geodesic from p to q:
  // t = 0 gives p, t = 1 gives q.
  Point geodesic_eval(const Point& p, const Point& q, const Rat& t) const;

  // Decomposition of the geodesic from p to q into at most 3 arcs, each
  // inside a single edge, ordered from p to q.  A degenerate geodesic
  // (p == q) yields one degenerate arc.
  std::vector<Arc> geodesic_arcs(const Point& p, const Point& q) const;

  Point min_point(const BranchSegment& s) const;  // lowest point (height lo)
  Point max_point(const BranchSegment& s) const;  // highest point (height hi)

  bool segment_contains(const BranchSegment& s, const Point& p) const;

  // Nearest-point retraction onto the segment X.  Defined for p in X and for
  // p in the component of the complement containing the line (such points
  // retract to the lowest point of X).  A point strictly above X on the same
  // branch is outside the domain: throws std::domain_error.
  Point retract_to_segment(const Point& p, const BranchSegment& X) const;

  // "L <num>/<den>" or "B <n> <num>/<den>".
  std::string point_str(const Point& p) const;
  std::optional<Point> parse_point(const std::string& s) const;

 private:
  Rat c_;
};

// Total order along the tree restricted to one branch closure: attachment
// first, then increasing height.  Used for deterministic output ordering.
bool point_less_on_branch(const SigmaSpace& sp, const Point& a, const Point& b);

}  // namespace sigmarot
