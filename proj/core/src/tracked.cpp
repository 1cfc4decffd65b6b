#include "sigmarot/tracked.hpp"

#include <algorithm>

namespace sigmarot {

Point point_on_edge(const SigmaSpace& sp, const EdgeRef& e, const Rat& coord) {
  if (e.kind == PointKind::Line) return sp.line(coord);
  return sp.branch(e.copy, coord);
}

EdgeRef edge_of_point(const Point& p) {
  if (p.kind == PointKind::Line) return EdgeRef{PointKind::Line, 0};
  return EdgeRef{PointKind::Branch, p.copy};
}

Rat coord_of_point(const Point& p) { return p.x; }

std::vector<RawArc> raw_arcs(const SigmaSpace& sp, const Point& p, const Point& q) {
  std::vector<RawArc> out;
  for (const Arc& a : sp.geodesic_arcs(p, q)) {
    EdgeRef e{PointKind::Line, 0};
    if (a.a.kind == PointKind::Branch)
      e = EdgeRef{PointKind::Branch, a.a.copy};
    else if (a.b.kind == PointKind::Branch)
      e = EdgeRef{PointKind::Branch, a.b.copy};
    Rat c0 = (e.kind == PointKind::Line) ? a.a.x : sp.height(a.a);
    Rat c1 = (e.kind == PointKind::Line) ? a.b.x : sp.height(a.b);
    out.push_back(RawArc{e, c0, c1});
  }
  return out;
}

TrackedGraph tracked_identity(const EdgeRef& dom, const Rat& lo, const Rat& hi) {
  TrackedGraph g;
  g.dom_edge = dom;
  g.dom_lo = lo;
  g.dom_hi = hi;
  g.segs.push_back(TrackedSeg{lo, hi, dom, lo, hi});
  return g;
}

namespace {

// Map breakpoint coordinates lying strictly inside (lo, hi) on the edge, in
// ascending order.  On the line the breakpoints repeat on the unit lattice;
// the two fundamental endpoints describe the same lattice, so one is skipped.
std::vector<Rat> interior_breaks(const PAMap& m, const EdgeRef& e, const Rat& lo,
                                 const Rat& hi) {
  std::vector<Rat> out;
  if (lo >= hi) return out;
  if (e.kind == PointKind::Branch) {
    for (const auto& bp : m.branch)
      if (bp.x > lo && bp.x < hi) out.push_back(bp.x);
    return out;
  }
  const Rat cp1 = m.space.attach_offset() + 1;
  for (const auto& bp : m.line) {
    if (bp.x == cp1) continue;
    Int k = floor_int(lo - bp.x);
    for (;; ++k) {
      Rat v = bp.x + k;
      if (v <= lo) continue;
      if (v >= hi) break;
      out.push_back(v);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TrackedGraph tracked_apply(const PAMap& m, const TrackedGraph& g, std::size_t budget) {
  const SigmaSpace& sp = m.space;
  TrackedGraph out;
  out.dom_edge = g.dom_edge;
  out.dom_lo = g.dom_lo;
  out.dom_hi = g.dom_hi;
  for (const TrackedSeg& s : g.segs) {
    if (s.constant() || s.d0 == s.d1) {
      Point img = evaluate(m, point_on_edge(sp, s.edge, s.v0));
      Rat w = coord_of_point(img);
      out.segs.push_back(TrackedSeg{s.d0, s.d1, edge_of_point(img), w, w});
      if (out.segs.size() > budget)
        throw BudgetExceeded("tracked image exceeded the segment budget");
      continue;
    }
    Rat vlo = rat_min(s.v0, s.v1), vhi = rat_max(s.v0, s.v1);
    std::vector<Rat> cuts = interior_breaks(m, s.edge, vlo, vhi);
    if (s.v1 < s.v0) std::reverse(cuts.begin(), cuts.end());
    std::vector<Rat> nodes;
    nodes.reserve(cuts.size() + 2);
    nodes.push_back(s.v0);
    for (auto& w : cuts) nodes.push_back(w);
    nodes.push_back(s.v1);
    Rat span = s.v1 - s.v0;
    auto dom_of = [&](const Rat& w) -> Rat {
      return s.d0 + (w - s.v0) * (s.d1 - s.d0) / span;
    };
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
      const Rat& w0 = nodes[i];
      const Rat& w1 = nodes[i + 1];
      Rat dA = dom_of(w0), dB = dom_of(w1);
      Point A = evaluate(m, point_on_edge(sp, s.edge, w0));
      Point B = evaluate(m, point_on_edge(sp, s.edge, w1));
      Rat total = sp.path_length(A, B);
      if (total == 0) {
        Rat w = coord_of_point(A);
        out.segs.push_back(TrackedSeg{dA, dB, edge_of_point(A), w, w});
      } else {
        Rat acc(0), dcur = dA;
        auto arcs = raw_arcs(sp, A, B);
        for (std::size_t j = 0; j < arcs.size(); ++j) {
          const RawArc& arc = arcs[j];
          Rat len = rat_abs(arc.c1 - arc.c0);
          if (len == 0) continue;
          acc += len;
          Rat dnext = (j + 1 == arcs.size()) ? dB : dA + (dB - dA) * acc / total;
          out.segs.push_back(TrackedSeg{dcur, dnext, arc.edge, arc.c0, arc.c1});
          dcur = dnext;
        }
      }
      if (out.segs.size() > budget)
        throw BudgetExceeded("tracked image exceeded the segment budget");
    }
  }
  return out;
}

TrackedGraph tracked_iterate(const PAMap& m, TrackedGraph g, unsigned n,
                             std::size_t budget) {
  for (unsigned i = 0; i < n; ++i) g = tracked_apply(m, g, budget);
  return g;
}

TrackedGraph tracked_on_segment(const PAMap& m, const BranchSegment& seg, unsigned n,
                                std::size_t budget) {
  EdgeRef e{PointKind::Branch, seg.copy};
  return tracked_iterate(m, tracked_identity(e, seg.lo, seg.hi), n, budget);
}

Point tracked_point(const SigmaSpace& sp, const TrackedSeg& s, const Rat& d) {
  if (s.d0 == s.d1 || s.constant()) return point_on_edge(sp, s.edge, s.v0);
  Rat w = s.v0 + (d - s.d0) * (s.v1 - s.v0) / (s.d1 - s.d0);
  return point_on_edge(sp, s.edge, w);
}

void TreeSet::add(const EdgeRef& e, const Rat& a, const Rat& b) {
  Rat lo = rat_min(a, b), hi = rat_max(a, b);
  if (e.kind == PointKind::Line) {
    if (!line)
      line = std::make_pair(lo, hi);
    else {
      line->first = rat_min(line->first, lo);
      line->second = rat_max(line->second, hi);
    }
    return;
  }
  auto it = branches.find(e.copy);
  if (it == branches.end())
    branches.emplace(e.copy, std::make_pair(lo, hi));
  else {
    it->second.first = rat_min(it->second.first, lo);
    it->second.second = rat_max(it->second.second, hi);
  }
}

bool TreeSet::contains(const SigmaSpace& sp, const Point& p) const {
  if (p.kind == PointKind::Line) {
    if (line && line->first <= p.x && p.x <= line->second) return true;
    Rat t = p.x - sp.attach_offset();
    if (frac(t) == 0) {
      auto it = branches.find(floor_int(t));
      if (it != branches.end() && it->second.first == 0) return true;
    }
    return false;
  }
  auto it = branches.find(p.copy);
  return it != branches.end() && it->second.first <= p.x && p.x <= it->second.second;
}

bool TreeSet::covers(const BranchSegment& s) const {
  auto it = branches.find(s.copy);
  return it != branches.end() && it->second.first <= s.lo && s.hi <= it->second.second;
}

bool TreeSet::covers_line(const Rat& a, const Rat& b) const {
  return line && line->first <= a && b <= line->second;
}

TreeSet tracked_union(const TrackedGraph& g) {
  TreeSet ts;
  for (const TrackedSeg& s : g.segs) ts.add(s.edge, s.v0, s.v1);
  return ts;
}

PLFunc retraction_scan(const SigmaSpace& sp, const TrackedGraph& g, Int copy,
                       const Rat& floor_h) {
  (void)sp;
  PLFunc f;
  auto emit = [&](const Rat& x0, const Rat& x1, const Rat& v0, const Rat& v1,
                  bool valid) { f.pieces.push_back(PLPiece{x0, x1, v0, v1, valid}); };
  for (const TrackedSeg& s : g.segs) {
    if (s.edge.kind == PointKind::Line) {
      emit(s.d0, s.d1, floor_h, floor_h, true);
      continue;
    }
    bool own = (s.edge.copy == copy);
    if (s.constant() || s.d0 == s.d1) {
      const Rat& w = s.v0;
      if (w <= floor_h)
        emit(s.d0, s.d1, floor_h, floor_h, true);
      else
        emit(s.d0, s.d1, w, w, own);
      continue;
    }
    Rat wlo = rat_min(s.v0, s.v1), whi = rat_max(s.v0, s.v1);
    if (whi <= floor_h) {
      emit(s.d0, s.d1, floor_h, floor_h, true);
    } else if (wlo >= floor_h) {
      if (own) {
        emit(s.d0, s.d1, s.v0, s.v1, true);
      } else {
        // The retraction exists only at an endpoint that touches the floor.
        if (s.v0 == floor_h) emit(s.d0, s.d0, floor_h, floor_h, true);
        emit(s.d0, s.d1, s.v0, s.v1, false);
        if (s.v1 == floor_h) emit(s.d1, s.d1, floor_h, floor_h, true);
      }
    } else {
      Rat dstar = s.d0 + (floor_h - s.v0) * (s.d1 - s.d0) / (s.v1 - s.v0);
      if (s.v0 < floor_h) {
        emit(s.d0, dstar, floor_h, floor_h, true);
        if (own) {
          emit(dstar, s.d1, floor_h, s.v1, true);
        } else {
          emit(dstar, dstar, floor_h, floor_h, true);
          emit(dstar, s.d1, floor_h, s.v1, false);
        }
      } else {
        if (own) {
          emit(s.d0, dstar, s.v0, floor_h, true);
        } else {
          emit(s.d0, dstar, s.v0, floor_h, false);
          emit(dstar, dstar, floor_h, floor_h, true);
        }
        emit(dstar, s.d1, floor_h, floor_h, true);
      }
    }
  }
  return f;
}

namespace {

Rat piece_value_at(const PLPiece& p, const Rat& x) {
  if (p.x0 == p.x1) return p.v0;
  return p.v0 + (x - p.x0) * (p.v1 - p.v0) / (p.x1 - p.x0);
}

// Unique solution of value == c on a non-constant piece.
Rat piece_solve(const PLPiece& p, const Rat& c) {
  return p.x0 + (c - p.v0) * (p.x1 - p.x0) / (p.v1 - p.v0);
}

}  // namespace

std::optional<Rat> pl_first_le(const PLFunc& f, const Rat& c, const Rat& from) {
  for (const PLPiece& p : f.pieces) {
    if (p.x1 < from || !p.valid) continue;
    Rat a = rat_max(p.x0, from);
    Rat wa = piece_value_at(p, a);
    if (wa <= c) return a;
    if (p.x0 == p.x1 || p.v0 == p.v1) continue;
    if (p.v1 <= c) return piece_solve(p, c);
  }
  return std::nullopt;
}

std::optional<Rat> pl_first_ge(const PLFunc& f, const Rat& c, const Rat& from) {
  for (const PLPiece& p : f.pieces) {
    if (p.x1 < from || !p.valid) continue;
    Rat a = rat_max(p.x0, from);
    Rat wa = piece_value_at(p, a);
    if (wa >= c) return a;
    if (p.x0 == p.x1 || p.v0 == p.v1) continue;
    if (p.v1 >= c) return piece_solve(p, c);
  }
  return std::nullopt;
}

std::optional<Rat> pl_first_eq(const PLFunc& f, const Rat& c, const Rat& from) {
  for (const PLPiece& p : f.pieces) {
    if (p.x1 < from || !p.valid) continue;
    Rat a = rat_max(p.x0, from);
    Rat wa = piece_value_at(p, a);
    if (wa == c) return a;
    if (p.x0 == p.x1 || p.v0 == p.v1) continue;
    const Rat& wb = p.v1;
    if ((wa < c && wb >= c) || (wa > c && wb <= c)) return piece_solve(p, c);
  }
  return std::nullopt;
}

std::optional<Rat> pl_last_eq_before(const PLFunc& f, const Rat& c, const Rat& upto) {
  for (auto it = f.pieces.rbegin(); it != f.pieces.rend(); ++it) {
    const PLPiece& p = *it;
    if (p.x0 > upto || !p.valid) continue;
    Rat b = rat_min(p.x1, upto);
    Rat wb = piece_value_at(p, b);
    if (wb == c) return b;
    if (p.x0 == p.x1 || p.v0 == p.v1) continue;
    const Rat& wa = p.v0;
    if ((wa < c && wb > c) || (wa > c && wb < c)) return piece_solve(p, c);
    if (wa == c) return p.x0;
  }
  return std::nullopt;
}

}  // namespace sigmarot
