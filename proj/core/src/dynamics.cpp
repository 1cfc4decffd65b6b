#include "sigmarot/dynamics.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <utility>

namespace sigmarot {

Rat displacement(const PAMap& m, const Point& p, unsigned n) {
  return m.space.retract(iterate(m, p, n)) - m.space.retract(p);
}

namespace {

// Orbit statistics under an arbitrary step function.  Detects an exact
// repetition of the orbit modulo integer translation by keying each point on
// its canonical representative (line points reduced to [c, c+1), branch
// points reduced to copy 0); on repetition the mean displacement per step is
// exactly (shift_j - shift_i) / (j - i).
RhoBounds rho_orbit(const SigmaSpace& sp,
                    const std::function<Point(const Point&)>& step,
                    const Point& start, unsigned N) {
  RhoBounds rb;
  auto canon = [&](const Point& q) -> std::pair<std::pair<int, Rat>, Int> {
    if (q.kind == PointKind::Branch) return {{1, q.x}, q.copy};
    Int k = floor_int(q.x - sp.attach_offset());
    return {{0, q.x - k}, k};
  };
  std::map<std::pair<int, Rat>, std::pair<unsigned, Int>> seen;
  std::vector<Rat> r;
  r.reserve(N + 1);
  Point q = start;
  for (unsigned j = 0; j <= N; ++j) {
    auto [key, s] = canon(q);
    auto f = seen.find(key);
    if (f != seen.end()) {
      unsigned i = f->second.first;
      Int si = f->second.second;
      rb.exact = true;
      rb.lower = rb.upper = rat(long(s - si)) / rat(long(j - i));
      rb.iterations = j;
      return rb;
    }
    seen.emplace(key, std::make_pair(j, s));
    r.push_back(sp.retract(q));
    if (j == N) break;
    q = step(q);
  }
  rb.iterations = N;
  rb.exact = false;
  if (N == 0) return rb;
  unsigned from = std::max(1u, N / 2);
  bool first = true;
  for (unsigned j = from; j <= N; ++j) {
    Rat mean = (r[j] - r[0]) / rat(long(j));
    if (first || mean < rb.lower) rb.lower = mean;
    if (first || mean > rb.upper) rb.upper = mean;
    first = false;
  }
  return rb;
}

Rat max_branch_height(const TrackedGraph& g) {
  Rat h(0);
  for (const TrackedSeg& s : g.segs) {
    if (s.edge.kind != PointKind::Branch) continue;
    h = rat_max(h, rat_max(s.v0, s.v1));
  }
  return h;
}

}  // namespace

RhoBounds rho_bounds(const PAMap& m, const Point& p, unsigned N) {
  return rho_orbit(
      m.space, [&](const Point& q) { return evaluate(m, q); }, p, N);
}

RhoBounds rho_bounds_power(const PAMap& m, const Point& p, unsigned q, Int p_shift,
                           unsigned N) {
  return rho_orbit(
      m.space,
      [&](const Point& x) { return m.space.translate(iterate(m, x, q), -p_shift); },
      p, N);
}

std::pair<Rat, bool> compute_TR_reach(const PAMap& m, unsigned cap) {
  const SigmaSpace& sp = m.space;
  const Rat& c = sp.attach_offset();
  TrackedGraph lg =
      tracked_apply(m, tracked_identity(EdgeRef{PointKind::Line, 0}, c, c + 1));
  Rat line_h = max_branch_height(lg);
  Rat h = line_h;
  for (unsigned round = 0; round < cap; ++round) {
    if (h == 0) return {h, true};
    if (h >= 1) return {Rat(1), true};
    TrackedGraph stub =
        tracked_apply(m, tracked_identity(EdgeRef{PointKind::Branch, 0}, Rat(0), h));
    Rat hn = rat_max(h, rat_max(line_h, max_branch_height(stub)));
    if (hn == h) return {h, true};
    h = hn;
  }
  return {h, false};
}

std::optional<BranchSegment> compute_XF(const PAMap& m, unsigned cap) {
  auto [h, exact] = compute_TR_reach(m, cap);
  (void)exact;
  if (h >= 1) return std::nullopt;
  return BranchSegment{0, h, Rat(1)};
}

bool sigma_like_check(const PAMap& m) {
  require_valid(m);
  const SigmaSpace& sp = m.space;
  const Rat& c = sp.attach_offset();
  const Point probes[] = {sp.line(c), sp.line(c + rat(1, 3)), sp.line(c + rat(7, 8)),
                          sp.branch(0, rat(1, 2)), sp.branch(0, Rat(1))};
  for (const Point& p : probes) {
    for (Int k : {Int(-2), Int(1), Int(3)}) {
      if (evaluate(m, sp.translate(p, k)) != sp.translate(evaluate(m, p), k))
        return false;
    }
  }
  return true;
}

Partition partition_XF(const PAMap& m, unsigned reach_cap) {
  Partition part;
  auto [h, exact] = compute_TR_reach(m, reach_cap);
  part.reach = h;
  part.reach_exact = exact;
  if (h >= 1) {
    part.XF = std::nullopt;
    return part;
  }
  const SigmaSpace& sp = m.space;
  const Rat& c = sp.attach_offset();
  BranchSegment X{0, h, Rat(1)};
  part.XF = X;

  TrackedGraph g = tracked_on_segment(m, X, 1);

  // Hit intervals: maximal domain subintervals of one tracked seg on which
  // the image lies in X + q.  Break events: the infimum of the domain region
  // where the image sits strictly above the reach on copy q.
  struct Hit {
    Rat x0, x1;
    Int q;
  };
  struct Event {
    Rat x;
    Int q;
  };
  std::vector<Hit> hits;
  std::vector<Event> events;

  for (const TrackedSeg& s : g.segs) {
    if (s.edge.kind == PointKind::Branch) {
      Int q = s.edge.copy;
      Rat wlo = rat_min(s.v0, s.v1), whi = rat_max(s.v0, s.v1);
      if (whi >= h) {
        if (s.constant() || wlo >= h) {
          hits.push_back({s.d0, s.d1, q});
        } else {
          Rat dstar = s.d0 + (h - s.v0) * (s.d1 - s.d0) / (s.v1 - s.v0);
          if (s.v0 < s.v1)
            hits.push_back({dstar, s.d1, q});
          else
            hits.push_back({s.d0, dstar, q});
        }
      }
      if (whi > h) {
        Rat dinf;
        if (s.constant() || wlo > h) {
          dinf = s.d0;
        } else {
          Rat dstar = s.d0 + (h - s.v0) * (s.d1 - s.d0) / (s.v1 - s.v0);
          dinf = (s.v0 < s.v1) ? dstar : s.d0;
        }
        events.push_back({dinf, q});
      }
    } else if (h == 0) {
      // With zero reach the attachment points themselves are the minima of
      // the translates of X, so line values c + j count as hits.
      if (s.constant()) {
        Rat t = s.v0 - c;
        if (frac(t) == 0) hits.push_back({s.d0, s.d1, floor_int(t)});
      } else {
        Rat wlo = rat_min(s.v0, s.v1), whi = rat_max(s.v0, s.v1);
        Int j = floor_int(wlo - c);
        if (c + j < wlo) ++j;
        for (; c + j <= whi; ++j) {
          Rat w = c + j;
          Rat d = s.d0 + (w - s.v0) * (s.d1 - s.d0) / (s.v1 - s.v0);
          hits.push_back({d, d, j});
        }
      }
    }
  }

  std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
    if (a.x0 != b.x0) return a.x0 < b.x0;
    if (a.x1 != b.x1) return a.x1 < b.x1;
    return a.q < b.q;
  });
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.q < b.q;
  });

  Rat cursor = X.lo;
  bool first = true;
  for (;;) {
    const Hit* at = nullptr;
    for (const Hit& hit : hits) {
      if (first ? hit.x0 >= cursor : hit.x0 > cursor) {
        at = &hit;
        break;
      }
    }
    if (!at) break;
    Rat a = at->x0;
    Int p = at->q;
    Rat break_x = X.hi;
    for (const Event& e : events) {
      if (e.x >= a && e.q != p) {
        break_x = e.x;
        break;
      }
    }
    Rat b = a;
    for (const Hit& hit : hits) {
      if (hit.q != p || hit.x0 < a) continue;
      if (hit.x0 > break_x) break;
      b = rat_max(b, rat_min(hit.x1, break_x));
    }
    part.segments.push_back(BranchSegment{0, a, b});
    part.displacements.push_back(p);
    cursor = b;
    first = false;
  }
  return part;
}

Itinerary itinerary(const PAMap& m, const Point& p, const Partition& part,
                    unsigned n) {
  Itinerary it;
  const SigmaSpace& sp = m.space;
  auto canon = [&](const Point& q) -> std::pair<Point, Int> {
    if (q.kind == PointKind::Branch) return {sp.branch(0, q.x), q.copy};
    Int k = floor_int(q.x - sp.attach_offset());
    return {sp.line(q.x - k), k};
  };
  auto symbol_of = [&](const Point& rep) -> int {
    for (std::size_t i = 0; i < part.segments.size(); ++i) {
      const BranchSegment& B = part.segments[i];
      if (rep.kind == PointKind::Branch) {
        if (B.lo <= rep.x && rep.x <= B.hi) return int(i) + 1;
      } else {
        if (rep.x == sp.attach_offset() && B.lo == 0) return int(i) + 1;
      }
    }
    return 0;
  };
  std::map<std::pair<int, Rat>, std::pair<unsigned, Int>> seen;
  Point q = p;
  Int acc = 0;
  for (unsigned t = 0; t <= n; ++t) {
    auto [rep, k] = canon(q);
    int sym = symbol_of(rep);
    if (sym == 0) {
      it.escaped = true;
      it.escape_step = t;
      return it;
    }
    std::pair<int, Rat> key{rep.kind == PointKind::Branch ? 1 : 0, rep.x};
    auto f = seen.find(key);
    if (f != seen.end()) {
      it.periodic = true;
      it.period = t - f->second.first;
      it.period_disp = k - f->second.second;
      return it;
    }
    seen.emplace(key, std::make_pair(t, k));
    if (t == n) break;
    it.symbols.push_back(sym);
    acc += part.displacements[std::size_t(sym) - 1];
    it.accum.push_back(acc);
    q = evaluate(m, q);
  }
  return it;
}

RhoBounds rho_from_itinerary(const Itinerary& it) {
  RhoBounds rb;
  if (it.periodic && it.period > 0) {
    rb.exact = true;
    rb.lower = rb.upper = rat(long(it.period_disp)) / rat(long(it.period));
    rb.iterations = unsigned(it.symbols.size());
    return rb;
  }
  unsigned N = unsigned(it.symbols.size());
  rb.iterations = N;
  if (N == 0) return rb;
  unsigned from = std::max(1u, N / 2);
  bool first = true;
  for (unsigned j = from; j <= N; ++j) {
    Rat mean = rat(long(it.accum[j - 1])) / rat(long(j));
    if (first || mean < rb.lower) rb.lower = mean;
    if (first || mean > rb.upper) rb.upper = mean;
    first = false;
  }
  return rb;
}

}  // namespace sigmarot
