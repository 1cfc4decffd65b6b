#include "sigmarot/space.hpp"

#include <sstream>
#include <stdexcept>

namespace sigmarot {

SigmaSpace::SigmaSpace(Rat attach) : c_(std::move(attach)) {
  if (c_ < 0 || c_ >= 1) throw std::invalid_argument("attachment offset must lie in [0,1)");
}

Point SigmaSpace::line(const Rat& x) const { return Point{PointKind::Line, x, 0}; }

Point SigmaSpace::branch(Int n, const Rat& h) const {
  if (h < 0 || h > 1) throw std::invalid_argument("branch height outside [0,1]");
  if (h == 0) return attachment(n);
  return Point{PointKind::Branch, h, n};
}

Point SigmaSpace::attachment(Int n) const { return Point{PointKind::Line, c_ + Rat(n), 0}; }

Point SigmaSpace::translate(const Point& p, Int k) const {
  if (p.kind == PointKind::Line) return line(p.x + Rat(k));
  return Point{PointKind::Branch, p.x, p.copy + k};
}

BranchSegment SigmaSpace::translate(const BranchSegment& s, Int k) const {
  return BranchSegment{s.copy + k, s.lo, s.hi};
}

Rat SigmaSpace::retract(const Point& p) const {
  if (p.kind == PointKind::Line) return p.x;
  return c_ + Rat(p.copy);
}

Rat SigmaSpace::height(const Point& p) const {
  if (p.kind == PointKind::Line) return Rat(0);
  return p.x;
}

Rat SigmaSpace::path_length(const Point& p, const Point& q) const {
  if (p.kind == PointKind::Branch && q.kind == PointKind::Branch && p.copy == q.copy)
    return rat_abs(p.x - q.x);
  // Route through the line between the two retractions.
  return height(p) + rat_abs(retract(p) - retract(q)) + height(q);
}

std::vector<Arc> SigmaSpace::geodesic_arcs(const Point& p, const Point& q) const {
  std::vector<Arc> arcs;
  if (p == q) {
    arcs.push_back(Arc{p, q});
    return arcs;
  }
  if (p.kind == PointKind::Branch && q.kind == PointKind::Branch && p.copy == q.copy) {
    arcs.push_back(Arc{p, q});
    return arcs;
  }
  Point pa = p, qa = q;
  if (p.kind == PointKind::Branch) {
    pa = attachment(p.copy);
    arcs.push_back(Arc{p, pa});
  }
  if (q.kind == PointKind::Branch) qa = attachment(q.copy);
  if (pa != qa) arcs.push_back(Arc{pa, qa});
  if (q.kind == PointKind::Branch) arcs.push_back(Arc{qa, q});
  return arcs;
}

Point SigmaSpace::geodesic_eval(const Point& p, const Point& q, const Rat& t) const {
  if (t < 0 || t > 1) throw std::invalid_argument("geodesic parameter outside [0,1]");
  Rat total = path_length(p, q);
  if (total == 0) return p;
  Rat s = t * total;  // arc length from p
  for (const Arc& arc : geodesic_arcs(p, q)) {
    bool on_branch = arc.a.kind == PointKind::Branch || arc.b.kind == PointKind::Branch;
    if (on_branch) {
      Int n = arc.a.kind == PointKind::Branch ? arc.a.copy : arc.b.copy;
      Rat h0 = height(arc.a), h1 = height(arc.b);
      Rat len = rat_abs(h1 - h0);
      if (s <= len) {
        Rat h = h0 + (h1 >= h0 ? s : -s);
        return branch(n, h);
      }
      s -= len;
    } else {
      Rat x0 = arc.a.x, x1 = arc.b.x;
      Rat len = rat_abs(x1 - x0);
      if (s <= len) {
        Rat x = x0 + (x1 >= x0 ? s : -s);
        return line(x);
      }
      s -= len;
    }
  }
  return q;  // t == 1 up to exact arithmetic; only reached for t == 1
}

Point SigmaSpace::min_point(const BranchSegment& s) const { return branch(s.copy, s.lo); }
Point SigmaSpace::max_point(const BranchSegment& s) const { return branch(s.copy, s.hi); }

bool SigmaSpace::segment_contains(const BranchSegment& s, const Point& p) const {
  if (p.kind == PointKind::Branch)
    return p.copy == s.copy && s.lo <= p.x && p.x <= s.hi;
  // Line point: contained only if it is the attachment of s's branch and the
  // segment starts at height 0.
  return s.lo == 0 && p.x == c_ + Rat(s.copy);
}

Point SigmaSpace::retract_to_segment(const Point& p, const BranchSegment& X) const {
  if (segment_contains(X, p)) return p;
  if (p.kind == PointKind::Branch && p.copy == X.copy) {
    if (p.x > X.hi)
      throw std::domain_error("point strictly above the segment on the same branch");
    return min_point(X);  // below the segment: nearest point is its bottom
  }
  // Everything else lies in the component of the complement containing the
  // line; the nearest point of X is its bottom.
  return min_point(X);
}

std::string SigmaSpace::point_str(const Point& p) const {
  if (p.kind == PointKind::Line) return "L " + rat_str(p.x);
  return "B " + std::to_string(p.copy) + " " + rat_str(p.x);
}

std::optional<Point> SigmaSpace::parse_point(const std::string& s) const {
  std::istringstream in(s);
  std::string tag;
  if (!(in >> tag)) return std::nullopt;
  if (tag == "L") {
    std::string xs;
    if (!(in >> xs)) return std::nullopt;
    auto x = parse_rat(xs);
    if (!x) return std::nullopt;
    std::string rest;
    if (in >> rest) return std::nullopt;
    return line(*x);
  }
  if (tag == "B") {
    long long n;
    std::string hs;
    if (!(in >> n >> hs)) return std::nullopt;
    auto h = parse_rat(hs);
    if (!h || *h < 0 || *h > 1) return std::nullopt;
    std::string rest;
    if (in >> rest) return std::nullopt;
    return branch(n, *h);
  }
  return std::nullopt;
}

bool point_less_on_branch(const SigmaSpace& sp, const Point& a, const Point& b) {
  return sp.height(a) < sp.height(b);
}

}  // namespace sigmarot
