#include "sigmarot/rotset.hpp"

#include "sigmarot/tracked.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <utility>

namespace sigmarot {

namespace {

// ---------- monotone piecewise-linear circle lifts ----------

// Nondecreasing piecewise-linear map with G(x + 1) = G(x) + 1, stored by its
// nodes on the fundamental interval [c, c+1].
struct MonoPL {
  Rat c;
  std::vector<Rat> xs, vs;
};

Rat mono_eval(const MonoPL& G, const Rat& t) {
  Int k = floor_int(t - G.c);
  Rat t0 = t - k;
  std::size_t lo = 0, hi = G.xs.size() - 1;
  while (lo + 1 < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (G.xs[mid] <= t0)
      lo = mid;
    else
      hi = mid;
  }
  const Rat &x0 = G.xs[lo], &x1 = G.xs[lo + 1];
  const Rat &v0 = G.vs[lo], &v1 = G.vs[lo + 1];
  Rat val = (x1 == x0) ? v0 : v0 + (t0 - x0) * (v1 - v0) / (x1 - x0);
  return val + k;
}

void mono_push(MonoPL& G, const Rat& x, const Rat& v) {
  if (!G.xs.empty() && G.xs.back() == x) return;
  G.xs.push_back(x);
  G.vs.push_back(v);
}

// Upper envelope: the smallest nondecreasing degree-one map above f,
// max(prefix maximum of f from c, (max f) - 1).
MonoPL upper_envelope(const Rat& c, const std::vector<Rat>& fx,
                      const std::vector<Rat>& fv) {
  Rat M1 = fv[0];
  for (const Rat& v : fv) M1 = rat_max(M1, v);
  Rat floor_v = M1 - 1;

  MonoPL pm;
  pm.c = c;
  Rat cur = fv[0];
  mono_push(pm, fx[0], cur);
  for (std::size_t i = 0; i + 1 < fx.size(); ++i) {
    const Rat &a = fx[i], &fa = fv[i], &b = fx[i + 1], &fb = fv[i + 1];
    if (fb <= cur) {
      mono_push(pm, b, cur);
    } else {
      if (fa < cur) {
        Rat t = a + (cur - fa) * (b - a) / (fb - fa);
        mono_push(pm, t, cur);
      }
      mono_push(pm, b, fb);
      cur = fb;
    }
  }
  // clip from below at floor_v
  MonoPL out;
  out.c = c;
  mono_push(out, pm.xs[0], rat_max(pm.vs[0], floor_v));
  for (std::size_t i = 0; i + 1 < pm.xs.size(); ++i) {
    const Rat &x0 = pm.xs[i], &v0 = pm.vs[i], &x1 = pm.xs[i + 1], &v1 = pm.vs[i + 1];
    if (v1 <= floor_v) {
      mono_push(out, x1, floor_v);
    } else if (v0 < floor_v) {
      Rat t = x0 + (floor_v - v0) * (x1 - x0) / (v1 - v0);
      mono_push(out, t, floor_v);
      mono_push(out, x1, v1);
    } else {
      mono_push(out, x1, v1);
    }
  }
  return out;
}

// Lower envelope: the largest nondecreasing degree-one map below f,
// min(suffix minimum of f to c+1, (min f) + 1).
MonoPL lower_envelope(const Rat& c, const std::vector<Rat>& fx,
                      const std::vector<Rat>& fv) {
  Rat m1 = fv[0];
  for (const Rat& v : fv) m1 = rat_min(m1, v);
  Rat ceil_v = m1 + 1;

  std::vector<Rat> rx, rv;  // suffix-min nodes collected right to left
  Rat cur = fv.back();
  rx.push_back(fx.back());
  rv.push_back(cur);
  for (std::size_t i = fx.size() - 1; i-- > 0;) {
    const Rat &b = fx[i + 1], &fb = fv[i + 1], &a = fx[i], &fa = fv[i];
    if (fa >= cur) {
      rx.push_back(a);
      rv.push_back(cur);
    } else {
      if (fb > cur) {
        Rat t = a + (cur - fa) * (b - a) / (fb - fa);
        rx.push_back(t);
        rv.push_back(cur);
      }
      rx.push_back(a);
      rv.push_back(fa);
      cur = fa;
    }
  }
  MonoPL sm;
  sm.c = c;
  for (std::size_t i = rx.size(); i-- > 0;) mono_push(sm, rx[i], rv[i]);
  // clip from above at ceil_v
  MonoPL out;
  out.c = c;
  mono_push(out, sm.xs[0], rat_min(sm.vs[0], ceil_v));
  for (std::size_t i = 0; i + 1 < sm.xs.size(); ++i) {
    const Rat &x0 = sm.xs[i], &v0 = sm.vs[i], &x1 = sm.xs[i + 1], &v1 = sm.vs[i + 1];
    if (v0 >= ceil_v || v1 <= ceil_v) {
      mono_push(out, x1, rat_min(v1, ceil_v));
    } else {
      Rat t = x0 + (ceil_v - v0) * (x1 - x0) / (v1 - v0);
      mono_push(out, t, ceil_v);
      mono_push(out, x1, ceil_v);
    }
  }
  return out;
}

std::optional<MonoPL> mono_compose(const MonoPL& G, const MonoPL& H,
                                   std::size_t budget) {
  // R = G o H on [c, c+1]: cuts at H's nodes and at preimages under H of the
  // integer translates of G's nodes.
  std::set<Rat> cuts(H.xs.begin(), H.xs.end());
  for (std::size_t i = 0; i + 1 < H.xs.size(); ++i) {
    const Rat &x0 = H.xs[i], &v0 = H.vs[i], &x1 = H.xs[i + 1], &v1 = H.vs[i + 1];
    if (v0 == v1) continue;
    for (std::size_t j = 0; j + 1 < G.xs.size(); ++j) {  // skip duplicate c+1 node
      const Rat& b = G.xs[j];
      Int k = floor_int(v0 - b);
      if (b + k < v0) ++k;
      for (; b + k <= v1; ++k) {
        Rat t = x0 + (b + k - v0) * (x1 - x0) / (v1 - v0);
        cuts.insert(t);
        if (cuts.size() > budget) return std::nullopt;
      }
    }
  }
  MonoPL R;
  R.c = H.c;
  for (const Rat& t : cuts) mono_push(R, t, mono_eval(G, mono_eval(H, t)));
  return R;
}

struct EnvRho {
  Rat lo, hi;
  bool exact = false;
};

EnvRho mono_rho(const MonoPL& G, unsigned iters) {
  EnvRho out;
  // exact detection: repetition of the orbit of c modulo 1
  std::map<Rat, std::pair<unsigned, Rat>> seen;
  std::vector<Rat> orbit;
  Rat x = G.c;
  for (unsigned j = 0;; ++j) {
    Rat r = x - floor_int(x - G.c);
    auto f = seen.find(r);
    if (f != seen.end()) {
      out.exact = true;
      out.lo = out.hi = (x - f->second.second) / rat(long(j - f->second.first));
      return out;
    }
    seen.emplace(r, std::make_pair(j, x));
    orbit.push_back(x);
    if (j == iters) break;
    x = mono_eval(G, x);
  }
  // window: a monotone degree-one lift satisfies |x_N - x_0 - N rho| < 1
  unsigned N0 = std::min<unsigned>(iters, 256);
  Rat d0 = orbit[N0] - orbit[0];
  Rat blo = (d0 - 1) / rat(long(N0)), bhi = (d0 + 1) / rat(long(N0));
  // certify a rational candidate by solving G^q(x) == x + p
  MonoPL H = G;
  bool budget_ok = true;
  for (unsigned q = 1; q <= 64 && budget_ok; ++q) {
    if (q > 1) {
      auto next = mono_compose(G, H, 4096);
      if (!next) {
        budget_ok = false;
        break;
      }
      H = *next;
    }
    Int plo = floor_int(blo * rat(long(q)));
    if (rat(long(plo)) < blo * rat(long(q))) ++plo;
    Int phi = floor_int(bhi * rat(long(q)));
    for (Int p = plo; p <= phi; ++p) {
      if (std::gcd(p < 0 ? -p : p, Int(q)) != 1) continue;
      Rat dlo = H.vs[0] - H.xs[0], dhi = dlo;
      for (std::size_t i = 0; i < H.xs.size(); ++i) {
        Rat d = H.vs[i] - H.xs[i];
        dlo = rat_min(dlo, d);
        dhi = rat_max(dhi, d);
      }
      if (dlo <= rat(long(p)) && rat(long(p)) <= dhi) {
        out.exact = true;
        out.lo = out.hi = rat(long(p)) / rat(long(q));
        return out;
      }
    }
  }
  unsigned N = iters;
  Rat d1 = orbit[N] - orbit[0];
  out.lo = (d1 - 1) / rat(long(N));
  out.hi = (d1 + 1) / rat(long(N));
  out.exact = false;
  return out;
}

// ---------- invariant low region cell model ----------

struct LowCell {
  bool stub;  // false: line coordinates, true: branch heights on copy 0
  Rat a, b;
};

std::optional<RotResult> low_region_graph(const PAMap& m, const Rat& h,
                                          unsigned iters) {
  const SigmaSpace& sp = m.space;
  const Rat& c = sp.attach_offset();

  std::vector<LowCell> cells;
  for (std::size_t i = 0; i + 1 < m.line.size(); ++i)
    cells.push_back(LowCell{false, m.line[i].x, m.line[i + 1].x});
  std::vector<Rat> scuts;
  if (h > 0) {
    scuts.push_back(Rat(0));
    for (const BreakPair& bp : m.branch)
      if (0 < bp.x && bp.x < h) scuts.push_back(bp.x);
    scuts.push_back(h);
    for (std::size_t i = 0; i + 1 < scuts.size(); ++i)
      cells.push_back(LowCell{true, scuts[i], scuts[i + 1]});
  }

  auto is_line_node = [&](const Rat& x) {
    Int k = floor_int(x - c);
    Rat x0 = x - k;
    for (const BreakPair& bp : m.line)
      if (bp.x == x0) return true;
    return false;
  };
  auto is_stub_node = [&](const Rat& hh) {
    for (const Rat& s : scuts)
      if (s == hh) return true;
    return false;
  };
  auto aligned_point = [&](const Point& pt) {
    Point y = evaluate(m, pt);
    if (y.kind == PointKind::Line) return is_line_node(y.x);
    return y.x <= h && is_stub_node(y.x);
  };
  for (const BreakPair& bp : m.line)
    if (!aligned_point(sp.line(bp.x))) return std::nullopt;
  for (const Rat& s : scuts)
    if (s > 0 && !aligned_point(sp.branch(0, s))) return std::nullopt;

  // transition graph on cells
  const int n = int(cells.size());
  WDigraph wg;
  wg.n = n;
  std::vector<std::optional<Point>> const_img(n);
  std::vector<int> outdeg(n, 0);
  for (int ia = 0; ia < n; ++ia) {
    const LowCell& A = cells[ia];
    EdgeRef dom = A.stub ? EdgeRef{PointKind::Branch, 0} : EdgeRef{PointKind::Line, 0};
    TrackedGraph tg = tracked_apply(m, tracked_identity(dom, A.a, A.b));
    TreeSet ts = tracked_union(tg);
    Point ya = evaluate(m, A.stub ? sp.branch(0, A.a) : sp.line(A.a));
    Point yb = evaluate(m, A.stub ? sp.branch(0, A.b) : sp.line(A.b));
    if (ya == yb) const_img[ia] = ya;
    for (int ib = 0; ib < n; ++ib) {
      const LowCell& B = cells[ib];
      if (B.stub) {
        for (const auto& [copy, iv] : ts.branches) {
          if (iv.first <= B.a && B.b <= iv.second) {
            wg.edges.push_back(WDigraph::E{ia, ib, rat(long(copy))});
            ++outdeg[ia];
          }
        }
      } else if (ts.line) {
        Int k = floor_int(ts.line->first - B.a);
        if (B.a + k < ts.line->first) ++k;
        for (; B.b + k <= ts.line->second; ++k) {
          wg.edges.push_back(WDigraph::E{ia, ib, rat(long(k))});
          ++outdeg[ia];
        }
      }
    }
  }

  std::optional<Rat> lo, hi;
  CycleMeanResult cm = cycle_mean_range(wg);
  for (const MeanRange& mr : cm.per_component) {
    if (!lo || mr.lo < *lo) lo = mr.lo;
    if (!hi || mr.hi > *hi) hi = mr.hi;
  }
  for (int ia = 0; ia < n; ++ia) {
    if (outdeg[ia] > 0) continue;
    if (!const_img[ia]) return std::nullopt;  // image not constant: model incomplete
    unsigned need = unsigned(m.line.size() + scuts.size()) + 2;
    RhoBounds rb = rho_bounds(m, *const_img[ia], std::max(iters, 4 * need));
    if (!rb.exact) return std::nullopt;
    if (!lo || rb.lower < *lo) lo = rb.lower;
    if (!hi || rb.upper > *hi) hi = rb.upper;
  }
  if (!lo || !hi) return std::nullopt;
  RotResult r;
  r.lo = *lo;
  r.hi = *hi;
  r.exact = true;
  r.mode = "low-region-graph";
  return r;
}

}  // namespace

RotResult rot_R(const PAMap& m, unsigned iters) {
  const SigmaSpace& sp = m.space;
  const Rat& c = sp.attach_offset();
  if (iters < 8) iters = 8;

  bool line_into_line = true;
  for (const BreakPair& bp : m.line)
    if (bp.img.kind != PointKind::Line) line_into_line = false;

  if (line_into_line) {
    std::vector<Rat> fx, fv;
    for (const BreakPair& bp : m.line) {
      fx.push_back(bp.x);
      fv.push_back(bp.img.x);
    }
    MonoPL up = upper_envelope(c, fx, fv);
    MonoPL lowe = lower_envelope(c, fx, fv);
    EnvRho ru = mono_rho(up, iters);
    EnvRho rl = mono_rho(lowe, iters);
    RotResult r;
    r.lo = rl.lo;
    r.hi = ru.hi;
    r.exact = ru.exact && rl.exact;
    r.mode = "line-envelope";
    return r;
  }

  auto [h, reach_exact] = compute_TR_reach(m);
  if (reach_exact) {
    if (auto r = low_region_graph(m, h, iters)) return *r;
  }

  // Fallback: certified orbit bounds at a few probes in the low region.
  std::vector<Point> probes{sp.line(c), sp.line(c + rat(1, 4)), sp.line(c + rat(1, 2)),
                            sp.line(c + rat(3, 4))};
  if (h > 0) probes.push_back(sp.branch(0, h / 2));
  RotResult r;
  bool first = true;
  for (const Point& p : probes) {
    RhoBounds rb = rho_bounds(m, p, iters);
    if (first || rb.lower < r.lo) r.lo = rb.lower;
    if (first || rb.upper > r.hi) r.hi = rb.upper;
    first = false;
  }
  r.exact = false;
  r.mode = "sampled";
  return r;
}

namespace {

std::vector<Rat> thresholds_impl(const Partition& part, const MarkovGraph& g) {
  const std::size_t N = part.size();
  const int nv = int(g.vertices.size());
  std::vector<std::vector<int>> adj(nv);
  for (const MarkovEdge& e : g.edges) adj[e.from].push_back(e.to);

  std::vector<Rat> th;
  th.reserve(N + 1);
  Rat M = part.reach;
  th.push_back(M);
  for (std::size_t i = 1; i <= N; ++i) {
    Rat Mn = rat_max(M, part.segments[i - 1].hi);
    std::vector<char> vis(nv, 0);
    std::deque<int> q;
    for (int v = 0; v < nv; ++v) {
      if (g.vertices[v].block != int(i)) continue;
      for (int t : adj[v])
        if (!vis[t]) {
          vis[t] = 1;
          q.push_back(t);
        }
    }
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      Mn = rat_max(Mn, g.vertices[u].seg.hi);
      for (int t : adj[u])
        if (!vis[t]) {
          vis[t] = 1;
          q.push_back(t);
        }
    }
    M = Mn;
    th.push_back(M);
  }
  return th;
}

}  // namespace

std::vector<Rat> stage_thresholds(const PAMap& m, const Partition& part,
                                  const MarkovGraph& g) {
  (void)m;
  return thresholds_impl(part, g);
}

RotationSet rotation_set(const PAMap& m, const RotationOptions& opts) {
  return rotation_set(m, partition_XF(m, opts.reach_cap), opts);
}

RotationSet rotation_set(const PAMap& m, const Partition& part,
                         const RotationOptions& opts) {
  RotationSet rs;
  RotResult I0 = rot_R(m, opts.rot_r_iters);
  StageInterval s0;
  s0.stage = 0;
  s0.nonempty = true;
  s0.lo = I0.lo;
  s0.hi = I0.hi;
  s0.exact = I0.exact;
  rs.stages.push_back(s0);
  if (!I0.exact)
    rs.notes.push_back("line-region contribution is approximate (mode " + I0.mode + ")");
  if (!part.reach_exact)
    rs.notes.push_back("reach iteration did not stabilize; the reach is a lower bound");

  MarkovResult mk = markov_partition(m, part);
  MarkovGraph g = build_markov_graph(m, mk.vertices);
  if (!mk.markov)
    rs.notes.push_back(
        "symbolic transition model is not exact; stage intervals are witnessed lower "
        "bounds");

  const std::size_t N = part.size();
  const int nv = int(g.vertices.size());
  std::vector<std::vector<int>> adj(nv);
  for (const MarkovEdge& e : g.edges) adj[e.from].push_back(e.to);
  std::vector<Rat> th = thresholds_impl(part, g);

  bool stages_clean = true;
  for (std::size_t i = 1; i <= N; ++i) {
    const Rat& Mi = th[i - 1];
    StageInterval si;
    si.stage = int(i);
    std::vector<char> surv(nv, 0);
    for (int v = 0; v < nv; ++v) surv[v] = g.vertices[v].seg.lo >= Mi;
    std::vector<char> reach(nv, 0);
    std::deque<int> q;
    for (int v = 0; v < nv; ++v)
      if (surv[v] && g.vertices[v].block == int(i)) {
        reach[v] = 1;
        q.push_back(v);
      }
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      for (int t : adj[u])
        if (surv[t] && !reach[t]) {
          reach[t] = 1;
          q.push_back(t);
        }
    }
    WDigraph sub;
    sub.n = nv;
    for (const MarkovEdge& e : g.edges)
      if (reach[e.from] && reach[e.to])
        sub.edges.push_back(WDigraph::E{e.from, e.to, rat(long(e.w))});
    CycleMeanResult cm = cycle_mean_range(sub);
    if (cm.per_component.empty()) {
      si.nonempty = false;
      si.exact = mk.markov && part.reach_exact;
      rs.stages.push_back(si);
      continue;
    }
    si.nonempty = true;
    si.lo = cm.intervals.front().first;
    si.hi = cm.intervals.back().second;
    bool stage_ok = true;
    if (cm.intervals.size() > 1) {
      std::ostringstream os;
      os << "stage " << i << " cycle means form " << cm.intervals.size()
         << " disjoint intervals; reporting their hull";
      rs.notes.push_back(os.str());
      stage_ok = false;
    }
    Rat pi = rat(long(part.displacements[i - 1]));
    if (!(si.lo <= pi && pi <= si.hi)) {
      std::ostringstream os;
      os << "stage " << i << " interval does not contain its block displacement";
      rs.notes.push_back(os.str());
      stage_ok = false;
    }
    Int ceil_lo = -floor_int(-si.lo);
    if (!(rat(long(ceil_lo)) <= si.hi)) {
      std::ostringstream os;
      os << "stage " << i << " interval contains no integer";
      rs.notes.push_back(os.str());
      stage_ok = false;
    }
    si.exact = mk.markov && part.reach_exact && stage_ok;
    stages_clean = stages_clean && stage_ok;
    rs.stages.push_back(si);
  }

  std::vector<std::pair<Rat, Rat>> ivs;
  for (const StageInterval& si : rs.stages)
    if (si.nonempty) ivs.push_back({si.lo, si.hi});
  std::sort(ivs.begin(), ivs.end());
  for (const auto& iv : ivs) {
    if (!rs.components.empty() && iv.first <= rs.components.back().second)
      rs.components.back().second = rat_max(rs.components.back().second, iv.second);
    else
      rs.components.push_back(iv);
  }

  rs.exact = I0.exact && part.reach_exact && mk.markov && stages_clean;
  return rs;
}

std::vector<RationalTag> rationals_in(const RotationSet& rs, unsigned max_den) {
  std::vector<RationalTag> out;
  for (int ci = 0; ci < int(rs.components.size()); ++ci) {
    const Rat& lo = rs.components[ci].first;
    const Rat& hi = rs.components[ci].second;
    for (unsigned q = 1; q <= max_den; ++q) {
      Rat qr = rat(long(q));
      Int plo = -floor_int(-(lo * qr));
      Int phi = floor_int(hi * qr);
      for (Int p = plo; p <= phi; ++p) {
        if (std::gcd(p < 0 ? -p : p, Int(q)) != 1) continue;
        RationalTag t;
        t.r = rat(long(p)) / qr;
        t.component = ci;
        t.boundary = (t.r == lo || t.r == hi);
        out.push_back(t);
      }
    }
  }
  std::sort(out.begin(), out.end(),
            [](const RationalTag& a, const RationalTag& b) { return a.r < b.r; });
  return out;
}

}  // namespace sigmarot
