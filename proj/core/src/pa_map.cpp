#include "sigmarot/pa_map.hpp"

#include "sigmarot/tracked.hpp"

#include <algorithm>
#include <stdexcept>

namespace sigmarot {

std::vector<std::string> validate(const PAMap& m) {
  std::vector<std::string> out;
  const SigmaSpace& sp = m.space;
  const Rat& c = sp.attach_offset();

  auto check_img = [&](const BreakPair& bp, const char* where) {
    if (bp.img.kind == PointKind::Branch && (bp.img.x <= 0 || bp.img.x > 1))
      out.push_back(std::string(where) + " breakpoint at " + rat_str(bp.x) +
                    " has a branch image with height outside (0, 1]");
  };

  if (m.line.size() < 2) {
    out.push_back("line table needs at least two breakpoints");
  } else {
    if (m.line.front().x != c)
      out.push_back("first line breakpoint must sit at the attachment offset");
    if (m.line.back().x != c + 1)
      out.push_back("last line breakpoint must sit at attachment offset + 1");
    for (std::size_t i = 0; i + 1 < m.line.size(); ++i)
      if (!(m.line[i].x < m.line[i + 1].x)) {
        out.push_back("line breakpoints must be strictly increasing");
        break;
      }
    for (const auto& bp : m.line) check_img(bp, "line");
    if (out.empty() && m.line.back().img != sp.translate(m.line.front().img, 1))
      out.push_back(
          "images of the two ends of the line interval must differ by the unit "
          "translation");
  }

  if (m.branch.size() < 2) {
    out.push_back("branch table needs at least two breakpoints");
  } else {
    if (m.branch.front().x != 0)
      out.push_back("first branch breakpoint must sit at height 0");
    if (m.branch.back().x != 1)
      out.push_back("last branch breakpoint must sit at height 1");
    for (std::size_t i = 0; i + 1 < m.branch.size(); ++i)
      if (!(m.branch[i].x < m.branch[i + 1].x)) {
        out.push_back("branch breakpoints must be strictly increasing");
        break;
      }
    for (const auto& bp : m.branch) check_img(bp, "branch");
  }

  if (m.line.size() >= 2 && m.branch.size() >= 2 &&
      m.branch.front().img != m.line.front().img)
    out.push_back(
        "branch bottom image must agree with the line image at the attachment");

  return out;
}

void require_valid(const PAMap& m) {
  auto diags = validate(m);
  if (!diags.empty()) throw std::invalid_argument(diags.front());
}

namespace {

// Piece lookup: index i with table[i].x <= x <= table[i+1].x, preferring the
// piece that starts at x except at the very end.
std::size_t piece_index(const std::vector<BreakPair>& table, const Rat& x) {
  std::size_t lo = 0, hi = table.size() - 1;
  while (lo + 1 < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (table[mid].x <= x)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

}  // namespace

Point evaluate(const PAMap& m, const Point& p) {
  const SigmaSpace& sp = m.space;
  if (p.kind == PointKind::Branch) {
    std::size_t i = piece_index(m.branch, p.x);
    const BreakPair& a = m.branch[i];
    const BreakPair& b = m.branch[i + 1];
    Point A = sp.translate(a.img, p.copy);
    Point B = sp.translate(b.img, p.copy);
    if (A == B) return A;
    Rat t = (p.x - a.x) / (b.x - a.x);
    return sp.geodesic_eval(A, B, t);
  }
  Int k = floor_int(p.x - sp.attach_offset());
  Rat x0 = p.x - k;
  std::size_t i = piece_index(m.line, x0);
  const BreakPair& a = m.line[i];
  const BreakPair& b = m.line[i + 1];
  Point A = sp.translate(a.img, k);
  Point B = sp.translate(b.img, k);
  if (A == B) return A;
  Rat t = (x0 - a.x) / (b.x - a.x);
  return sp.geodesic_eval(A, B, t);
}

Point iterate(const PAMap& m, Point p, unsigned n) {
  for (unsigned i = 0; i < n; ++i) p = evaluate(m, p);
  return p;
}

std::vector<Arc> image_of_segment(const PAMap& m, const BranchSegment& seg) {
  const SigmaSpace& sp = m.space;
  TreeSet ts = tracked_union(tracked_on_segment(m, seg, 1));
  std::vector<Arc> out;
  if (ts.line) out.push_back(Arc{sp.line(ts.line->first), sp.line(ts.line->second)});
  for (const auto& [copy, iv] : ts.branches) {
    if (iv.second == 0) continue;  // the attachment alone belongs to the line
    out.push_back(Arc{sp.branch(copy, iv.first), sp.branch(copy, iv.second)});
  }
  return out;
}

std::vector<Preimage> preimages_in_segment(const PAMap& m, const Point& target,
                                           const BranchSegment& dom, unsigned n) {
  const SigmaSpace& sp = m.space;
  TrackedGraph g = tracked_on_segment(m, dom, n);

  // The target viewed as a coordinate on each edge it belongs to.
  EdgeRef tline{PointKind::Line, 0};
  bool on_line = (target.kind == PointKind::Line);
  bool at_attachment = false;
  Int attach_copy = 0;
  if (on_line) {
    Rat t = target.x - sp.attach_offset();
    if (frac(t) == 0) {
      at_attachment = true;
      attach_copy = floor_int(t);
    }
  }

  struct Hit {
    Rat d;
    bool flat;
  };
  std::vector<Hit> hits;
  auto push = [&](const Rat& d, bool flat) { hits.push_back(Hit{d, flat}); };

  for (const TrackedSeg& s : g.segs) {
    Rat want;
    bool matches = false;
    if (s.edge.kind == PointKind::Line) {
      if (on_line) {
        want = target.x;
        matches = true;
      }
    } else {
      if (target.kind == PointKind::Branch && s.edge.copy == target.copy) {
        want = target.x;
        matches = true;
      } else if (at_attachment && s.edge.copy == attach_copy) {
        want = 0;
        matches = true;
      }
    }
    if (!matches) continue;
    if (s.constant() || s.d0 == s.d1) {
      if (s.v0 == want) {
        if (s.d0 == s.d1) {
          push(s.d0, false);
        } else {
          push(s.d0, true);
          push(s.d1, true);
        }
      }
      continue;
    }
    Rat wlo = rat_min(s.v0, s.v1), whi = rat_max(s.v0, s.v1);
    if (want < wlo || want > whi) continue;
    Rat d = s.d0 + (want - s.v0) * (s.d1 - s.d0) / (s.v1 - s.v0);
    push(d, false);
  }

  std::sort(hits.begin(), hits.end(),
            [](const Hit& a, const Hit& b) { return a.d < b.d; });
  std::vector<Preimage> out;
  for (const Hit& h : hits) {
    Point p = sp.branch(dom.copy, h.d);
    if (!out.empty() && out.back().x == p) {
      out.back().flat = out.back().flat || h.flat;
      continue;
    }
    out.push_back(Preimage{p, h.flat});
  }
  return out;
}

PAMap shift_map(const PAMap& m, Int k) {
  PAMap out = m;
  for (auto& bp : out.line) bp.img = m.space.translate(bp.img, k);
  for (auto& bp : out.branch) bp.img = m.space.translate(bp.img, k);
  return out;
}

}  // namespace sigmarot
