#include "sigmarot/covering.hpp"

#include "sigmarot/markov.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <tuple>
#include <utility>

namespace sigmarot {

namespace {

Partition reach_only_partition(const PAMap& m) {
  Partition part;
  auto [h, exact] = compute_TR_reach(m);
  part.reach = h;
  part.reach_exact = exact;
  if (h < 1) part.XF = BranchSegment{0, h, Rat(1)};
  return part;
}

}  // namespace

std::optional<CoverStep> positively_covers(const PAMap& m, const BranchSegment& I,
                                           const BranchSegment& J, Int p, unsigned n) {
  return positively_covers(m, reach_only_partition(m), I, J, p, n);
}

std::optional<CoverStep> positively_covers(const PAMap& m, const Partition& part,
                                           const BranchSegment& I,
                                           const BranchSegment& J, Int p, unsigned n) {
  const SigmaSpace& sp = m.space;
  Int s = I.copy;
  BranchSegment I0{0, I.lo, I.hi};
  Int pn = J.copy + p - s;
  TrackedGraph g = tracked_on_segment(m, I0, n);
  PLFunc scan = retraction_scan(sp, g, pn, part.reach);
  auto u = pl_first_le(scan, J.lo, scan.lo());
  if (!u) return std::nullopt;
  auto y = pl_first_ge(scan, J.hi, *u);
  if (!y) return std::nullopt;
  CoverStep cs;
  cs.source = I;
  cs.target = J;
  cs.p = p;
  cs.n = n;
  cs.witness_lo = sp.branch(s, *u);
  cs.witness_hi = sp.branch(s, *y);
  return cs;
}

Chain make_chain(std::vector<CoverStep> steps) {
  for (std::size_t j = 0; j + 1 < steps.size(); ++j)
    if (steps[j + 1].source != steps[j].target)
      throw std::invalid_argument(
          "chain steps do not interface: each source must equal the previous target");
  Chain c;
  for (const CoverStep& s : steps) {
    c.length += s.n;
    c.weight += s.p;
  }
  c.closed = !steps.empty() && steps.back().target == steps.front().source;
  c.steps = std::move(steps);
  return c;
}

Chain chain_concat(const Chain& a, const Chain& b) {
  if (a.steps.empty()) return b;
  if (b.steps.empty()) return a;
  std::vector<CoverStep> all = a.steps;
  all.insert(all.end(), b.steps.begin(), b.steps.end());
  return make_chain(std::move(all));
}

Chain chain_power(const Chain& c, unsigned k) {
  if (k == 0) return Chain{};
  if (!c.closed) throw std::invalid_argument("chain power requires a closed chain");
  Chain out = c;
  for (unsigned i = 1; i < k; ++i) out = chain_concat(out, c);
  return out;
}

Chain chain_translate(const Chain& c, Int i) {
  auto tp = [&](Point p) {
    if (p.kind == PointKind::Line)
      p.x += i;
    else
      p.copy += i;
    return p;
  };
  Chain out = c;
  for (CoverStep& s : out.steps) {
    s.source.copy += i;
    s.target.copy += i;
    s.witness_lo = tp(s.witness_lo);
    s.witness_hi = tp(s.witness_hi);
  }
  return out;
}

Point chain_fixed_point(const PAMap& m, const Chain& c) {
  if (c.steps.empty())
    throw std::invalid_argument("chain fixed point needs a nonempty chain");
  if (!c.closed) throw std::invalid_argument("chain fixed point needs a closed chain");
  const SigmaSpace& sp = m.space;
  Rat h = compute_TR_reach(m).first;

  // Backward pass: pull the final target interval back through every step.
  // The pulled interval [u, v] inside each source is chosen so that the step
  // power maps it onto the current target exactly: first descent below the
  // bottom, first arrival at the top, and the last bottom contact before it.
  std::size_t K = c.steps.size();
  Rat t_lo = c.steps[K - 1].target.lo, t_hi = c.steps[K - 1].target.hi;
  for (std::size_t jj = K; jj-- > 0;) {
    const CoverStep& st = c.steps[jj];
    TrackedGraph g = tracked_on_segment(m, st.source, st.n);
    PLFunc scan = retraction_scan(sp, g, st.target.copy + st.p, h);
    if (t_lo == t_hi) {
      auto d = pl_first_eq(scan, t_lo, scan.lo());
      if (!d)
        throw std::runtime_error("chain pullback failed: target value not attained");
      t_lo = t_hi = *d;
    } else {
      auto u0 = pl_first_le(scan, t_lo, scan.lo());
      if (!u0)
        throw std::runtime_error(
            "chain pullback failed: no point at or below the target bottom");
      auto v = pl_first_eq(scan, t_hi, *u0);
      if (!v)
        throw std::runtime_error("chain pullback failed: target top not attained");
      auto u = pl_last_eq_before(scan, t_lo, *v);
      if (!u)
        throw std::runtime_error("chain pullback failed: target bottom not attained");
      t_lo = *u;
      t_hi = *v;
    }
  }

  // Forward pass: exact root of (image height) == (domain height) for the
  // full composition restricted to the pulled interval, compared on the copy
  // shifted by the chain weight.
  const BranchSegment& S0 = c.steps[0].source;
  BranchSegment T0{S0.copy, t_lo, t_hi};
  TrackedGraph g = tracked_on_segment(m, T0, c.length);
  PLFunc scan = retraction_scan(sp, g, S0.copy + c.weight, h);
  std::vector<Rat> roots;
  for (const PLPiece& pc : scan.pieces) {
    if (!pc.valid) continue;
    if (pc.x0 == pc.x1) {
      if (pc.v0 == pc.x0) roots.push_back(pc.x0);
      continue;
    }
    Rat dv = pc.v1 - pc.v0, dx = pc.x1 - pc.x0;
    if (dv == dx) {
      if (pc.v0 == pc.x0) roots.push_back(pc.x0);
      continue;
    }
    Rat d = (pc.v0 * dx - pc.x0 * dv) / (dx - dv);
    if (pc.x0 <= d && d <= pc.x1) roots.push_back(d);
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());

  auto verify = [&](const Rat& d) -> std::optional<Point> {
    Point x = sp.branch(S0.copy, d);
    Point z = x;
    Int P = 0;
    for (const CoverStep& st : c.steps) {
      z = iterate(m, z, st.n);
      P += st.p;
      if (!sp.segment_contains(sp.translate(st.target, P), z)) return std::nullopt;
    }
    if (z != sp.translate(x, c.weight)) return std::nullopt;
    return x;
  };
  for (const Rat& d : roots)
    if (auto x = verify(d)) return *x;
  throw std::runtime_error("chain fixed point: no root satisfies the chain certificates");
}

Chain horseshoe_chain(const PAMap& m, const BranchSegment& I, const BranchSegment& J,
                      Int m1, Int m2, unsigned n, Int p, unsigned q) {
  if (q == 0) throw std::invalid_argument("horseshoe chain: q must be positive");
  Int qi = Int(q);
  if (!(m1 * qi <= p && p <= m2 * qi))
    throw std::invalid_argument(
        "horseshoe chain: p/q must lie between the two integer shifts");
  Partition part = reach_only_partition(m);
  auto need = [&](const BranchSegment& A, const BranchSegment& B, Int t) -> CoverStep {
    auto cs = positively_covers(m, part, A, B, t, n);
    if (!cs)
      throw std::invalid_argument("horseshoe chain: a required covering is missing");
    return *cs;
  };
  if (p == m1 * qi) return make_chain({need(I, I, m1)});
  if (p == m2 * qi) return make_chain({need(J, J, m2)});
  CoverStep cII = need(I, I, m1);
  CoverStep cIJ = need(I, J, m1);
  CoverStep cJI = need(J, I, m2);
  CoverStep cJJ = need(J, J, m2);
  Int M = m2 - m1;
  Int pp = p - m1 * qi;
  std::vector<CoverStep> steps;
  for (Int i = 0; i < M * qi - 1 - pp; ++i) steps.push_back(cII);
  steps.push_back(cIJ);
  for (Int i = 0; i < pp - 1; ++i) steps.push_back(cJJ);
  steps.push_back(cJI);
  Chain ch = make_chain(std::move(steps));
  assert(Int(ch.steps.size()) == M * qi && ch.weight == M * p);
  return ch;
}

Point leftmost_anchor(const PAMap& m, const BranchSegment& Y1, Int q1, unsigned cap) {
  const SigmaSpace& sp = m.space;
  if (!positively_covers(m, Y1, Y1, q1, 1))
    throw std::invalid_argument(
        "leftmost anchor requires the segment to cover its own translate");
  Point a = sp.min_point(Y1);
  for (unsigned k = 0; k < cap; ++k) {
    if (evaluate(m, a) == sp.translate(a, q1)) return a;
    auto pre = preimages_in_segment(m, sp.translate(a, q1), Y1, 1);
    if (pre.empty()) break;
    if (pre.front().x == a) return a;
    a = pre.front().x;
  }
  // The minimal-preimage sequence stalled; its tail stays inside one affine
  // piece, whose exact shifted fixed point is the anchor.
  Rat ha = sp.height(a);
  TrackedGraph g = tracked_on_segment(m, Y1, 1);
  std::optional<Rat> best;
  for (const TrackedSeg& s : g.segs) {
    if (s.edge.kind != PointKind::Branch || s.edge.copy != Y1.copy + q1) continue;
    std::optional<Rat> root;
    if (s.d0 == s.d1 || s.constant()) {
      if (s.constant() && s.d0 <= s.v0 && s.v0 <= s.d1)
        root = s.v0;
      else if (s.d0 == s.d1 && s.v0 == s.d0)
        root = s.d0;
    } else {
      Rat dv = s.v1 - s.v0, dx = s.d1 - s.d0;
      if (dv == dx) {
        if (s.v0 == s.d0) root = s.d0;
      } else {
        Rat d = (s.v0 * dx - s.d0 * dv) / (dx - dv);
        if (s.d0 <= d && d <= s.d1) root = d;
      }
    }
    if (root && *root >= ha && (!best || *root < *best)) best = *root;
  }
  if (!best)
    throw std::runtime_error(
        "leftmost anchor: no exact fixed point beyond the stalled sequence");
  Point res = sp.branch(Y1.copy, *best);
  if (evaluate(m, res) != sp.translate(res, q1))
    throw std::runtime_error("leftmost anchor: candidate failed exact verification");
  return res;
}

namespace {

struct EGcd {
  Int g, x, y;  // g == a*x + b*y
};
EGcd egcd(Int a, Int b) {
  if (b == 0) return {a, 1, 0};
  EGcd r = egcd(b, a % b);
  return {r.g, r.y, r.x - (a / b) * r.y};
}

Int ceil_div(Int a, Int b) {  // b > 0
  return a >= 0 ? (a + b - 1) / b : -((-a) / b);
}

}  // namespace

PeriodicResult find_periodic_mod1(const PAMap& m, Int p, unsigned q,
                                  const BranchSegment& region, const Partition& part,
                                  unsigned walk_cap) {
  PeriodicResult res;
  const SigmaSpace& sp = m.space;
  if (q == 0) {
    res.note = "denominator must be positive";
    return res;
  }
  {
    Int g0 = std::gcd(p < 0 ? -p : p, Int(q));
    if (g0 > 1) {
      p /= g0;
      q = unsigned(Int(q) / g0);
    }
  }
  Int qi = Int(q);

  MarkovResult mk = markov_partition(m, part);
  if (!mk.markov) {
    res.note = "the symbolic transition model is not exact for this map";
    return res;
  }
  MarkovGraph full = build_markov_graph(m, mk.vertices);

  std::vector<int> kept;
  std::vector<int> rindex(full.vertices.size(), -1);
  for (int i = 0; i < int(full.vertices.size()); ++i) {
    if (full.vertices[i].seg.lo >= region.lo) {
      rindex[i] = int(kept.size());
      kept.push_back(i);
    }
  }
  if (kept.empty()) {
    res.note = "no symbolic vertices inside the requested region";
    return res;
  }
  struct REdge {
    int u, v;
    Int w;
  };
  std::vector<REdge> redges;
  for (const MarkovEdge& e : full.edges)
    if (rindex[e.from] >= 0 && rindex[e.to] >= 0)
      redges.push_back({rindex[e.from], rindex[e.to], e.w});
  if (redges.empty()) {
    res.note = "no symbolic transitions inside the requested region";
    return res;
  }
  const int V = int(kept.size());
  std::vector<std::vector<int>> adj(V);
  for (int ei = 0; ei < int(redges.size()); ++ei) adj[redges[ei].u].push_back(ei);

  // ---- walk search, tier 1: balance-limited breadth-first search ----
  Int wmin = redges[0].w, wmax = redges[0].w;
  for (const REdge& e : redges) {
    wmin = std::min(wmin, e.w);
    wmax = std::max(wmax, e.w);
  }
  Int balcap = std::max<Int>(64, qi * (wmax - wmin + 1) * (V + 2));

  std::vector<int> walk;
  for (int s = 0; s < V && walk.empty(); ++s) {
    std::map<std::pair<int, Int>, std::pair<std::pair<int, Int>, int>> pred;
    std::set<std::pair<int, Int>> seen;
    std::deque<std::tuple<int, Int, unsigned>> bfs;
    seen.insert({s, Int(0)});
    bfs.push_back({s, Int(0), 0u});
    while (!bfs.empty() && walk.empty()) {
      auto [u, bal, d] = bfs.front();
      bfs.pop_front();
      if (d >= walk_cap) continue;
      for (int ei : adj[u]) {
        const REdge& e = redges[ei];
        Int nb = bal + qi * e.w - p;
        if (e.v == s && nb == 0) {
          std::vector<int> rev{ei};
          std::pair<int, Int> cur{u, bal};
          while (!(cur.first == s && cur.second == 0)) {
            const auto& pr = pred.at(cur);
            rev.push_back(pr.second);
            cur = pr.first;
          }
          std::reverse(rev.begin(), rev.end());
          walk = std::move(rev);
          break;
        }
        if (nb < -balcap || nb > balcap) continue;
        std::pair<int, Int> key{e.v, nb};
        if (!seen.insert(key).second) continue;
        pred[key] = {{u, bal}, ei};
        bfs.push_back({e.v, nb, d + 1});
      }
    }
  }

  // ---- walk search, tier 2: combine the extremal cycles of a component ----
  if (walk.empty()) {
    WDigraph wd;
    wd.n = V;
    for (const REdge& e : redges) wd.edges.push_back({e.u, e.v, rat(long(e.w))});
    std::vector<int> comp = strongly_connected_components(wd);
    CycleMeanResult cm = cycle_mean_range(wd);
    Rat target = rat(long(p)) / rat(long(qi));
    auto epath = [&](int from, int to, int cid) -> std::optional<std::vector<int>> {
      if (from == to) return std::vector<int>{};
      std::vector<int> prede(V, -1);
      std::vector<char> vis(V, 0);
      std::deque<int> bq{from};
      vis[from] = 1;
      while (!bq.empty()) {
        int u = bq.front();
        bq.pop_front();
        for (int ei : adj[u]) {
          const REdge& e = redges[ei];
          if (comp[e.v] != cid || vis[e.v]) continue;
          vis[e.v] = 1;
          prede[e.v] = ei;
          if (e.v == to) {
            std::vector<int> out;
            int cur = to;
            while (cur != from) {
              out.push_back(prede[cur]);
              cur = redges[prede[cur]].u;
            }
            std::reverse(out.begin(), out.end());
            return out;
          }
          bq.push_back(e.v);
        }
      }
      return std::nullopt;
    };
    for (const MeanRange& mr : cm.per_component) {
      if (!(mr.lo <= target && target <= mr.hi)) continue;
      const std::vector<int>& C1 = mr.lo_edges;
      const std::vector<int>& C2 = mr.hi_edges;
      if (C1.empty() || C2.empty()) continue;
      Int n1 = Int(C1.size()), n2 = Int(C2.size());
      Int w1 = 0, w2 = 0;
      for (int ei : C1) w1 += redges[ei].w;
      for (int ei : C2) w2 += redges[ei].w;
      Int A = qi * w1 - p * n1;  // <= 0 since w1/n1 <= p/q
      Int B = qi * w2 - p * n2;  // >= 0
      if (A == 0) {
        walk = C1;
        break;
      }
      if (B == 0) {
        walk = C2;
        break;
      }
      int base1 = redges[C1.front()].u;
      int base2 = redges[C2.front()].u;
      if (comp[base1] != comp[base2]) continue;
      auto P12 = epath(base1, base2, comp[base1]);
      auto P21 = epath(base2, base1, comp[base1]);
      if (!P12 || !P21) continue;
      Int a = Int(P12->size()), b = Int(P21->size());
      Int alpha = 0, beta = 0;
      for (int ei : *P12) alpha += redges[ei].w;
      for (int ei : *P21) beta += redges[ei].w;
      Int gamma = p * (a + b) - qi * (alpha + beta);
      EGcd eg = egcd(-A, B);  // g == (-A)*x + B*y, g > 0
      Int g = eg.g;
      Int t = g;
      Int k = (t * gamma) / g;
      Int X = -eg.x * k;  // X*A + Y*B == t*gamma
      Int Y = eg.y * k;
      Int dX = B / g, dY = (-A) / g;
      Int shift = 0;
      if (X < 1) shift = std::max(shift, ceil_div(1 - X, dX));
      if (Y < 0) shift = std::max(shift, ceil_div(-Y, dY));
      X += shift * dX;
      Y += shift * dY;
      if (X * A + Y * B != t * gamma) continue;
      Int total = X * n1 + t * (a + b) + Y * n2;
      if (total > 5000) continue;
      std::vector<int> w2alk;
      for (Int i = 0; i < X; ++i) w2alk.insert(w2alk.end(), C1.begin(), C1.end());
      for (Int r = 0; r < t; ++r) {
        w2alk.insert(w2alk.end(), P12->begin(), P12->end());
        if (r == 0)
          for (Int i = 0; i < Y; ++i) w2alk.insert(w2alk.end(), C2.begin(), C2.end());
        w2alk.insert(w2alk.end(), P21->begin(), P21->end());
      }
      Int balchk = 0;
      for (int ei : w2alk) balchk += qi * redges[ei].w - p;
      if (balchk != 0 || w2alk.empty()) continue;
      walk = std::move(w2alk);
      break;
    }
  }

  if (walk.empty()) {
    res.note = "no closed walk with mean " + rat_pretty(rat(long(p)) / rat(long(qi))) +
               " found in the region within the search budget";
    return res;
  }

  // ---- exact interval pullback along the walk ----
  std::map<int, TrackedGraph> tcache;
  auto tracked_of = [&](int orig) -> const TrackedGraph& {
    auto it = tcache.find(orig);
    if (it == tcache.end())
      it = tcache.emplace(orig, tracked_on_segment(m, full.vertices[orig].seg, 1)).first;
    return it->second;
  };
  const Rat& c = sp.attach_offset();

  auto pull_step = [&](int ei, Rat& t_lo, Rat& t_hi, int& orient) -> bool {
    const REdge& e = redges[ei];
    const TrackedGraph& g = tracked_of(kept[e.u]);
    for (const TrackedSeg& s : g.segs) {
      if (s.edge.kind != PointKind::Branch || s.edge.copy != e.w) continue;
      if (s.constant()) {
        if (t_lo == t_hi && s.v0 == t_lo) {
          t_lo = s.d0;
          t_hi = s.d1;
          return true;
        }
        continue;
      }
      Rat vlo = rat_min(s.v0, s.v1), vhi = rat_max(s.v0, s.v1);
      if (!(vlo <= t_lo && t_hi <= vhi)) continue;
      auto solve = [&](const Rat& w) -> Rat {
        return s.d0 + (w - s.v0) * (s.d1 - s.d0) / (s.v1 - s.v0);
      };
      Rat da = solve(t_lo), db = solve(t_hi);
      if (da > db) std::swap(da, db);
      t_lo = da;
      t_hi = db;
      orient *= (s.v0 < s.v1) ? 1 : -1;
      return true;
    }
    if (t_lo == t_hi && t_lo == 0) {
      // The target is the attachment of copy w, reachable along the line.
      Rat w = c + e.w;
      for (const TrackedSeg& s : g.segs) {
        if (s.edge.kind != PointKind::Line) continue;
        if (s.constant()) {
          if (s.v0 == w) {
            t_lo = s.d0;
            t_hi = s.d1;
            return true;
          }
          continue;
        }
        Rat vlo = rat_min(s.v0, s.v1), vhi = rat_max(s.v0, s.v1);
        if (w < vlo || w > vhi) continue;
        Rat d = s.d0 + (w - s.v0) * (s.d1 - s.d0) / (s.v1 - s.v0);
        t_lo = t_hi = d;
        return true;
      }
    }
    return false;
  };

  auto run_pullback =
      [&](const std::vector<int>& wk) -> std::optional<std::tuple<Rat, Rat, int>> {
    int start = redges[wk.front()].u;
    Rat t_lo = full.vertices[kept[start]].seg.lo;
    Rat t_hi = full.vertices[kept[start]].seg.hi;
    int orient = 1;
    for (std::size_t j = wk.size(); j-- > 0;)
      if (!pull_step(wk[j], t_lo, t_hi, orient)) return std::nullopt;
    return std::make_tuple(t_lo, t_hi, orient);
  };

  Int W = 0;
  for (int ei : walk) W += redges[ei].w;
  unsigned L = unsigned(walk.size());

  auto finish_degenerate = [&](const Rat& d, unsigned LL, Int WW) -> bool {
    Point x = sp.branch(0, d);
    Point z = iterate(m, x, LL);
    if (z != sp.translate(x, WW)) return false;
    res.found = true;
    res.x = x;
    res.period = LL;
    res.disp = WW;
    return true;
  };

  auto pb = run_pullback(walk);
  if (!pb) {
    res.note = "pullback along the symbolic walk failed";
    return res;
  }
  auto [k_lo, k_hi, orient] = *pb;
  if (k_lo == k_hi) {
    if (finish_degenerate(k_lo, L, W)) return res;
    res.note = "degenerate pullback point failed exact verification";
    return res;
  }
  if (orient < 0) {
    std::vector<int> dbl = walk;
    dbl.insert(dbl.end(), walk.begin(), walk.end());
    pb = run_pullback(dbl);
    if (!pb) {
      res.note = "pullback along the doubled symbolic walk failed";
      return res;
    }
    std::tie(k_lo, k_hi, orient) = *pb;
    W *= 2;
    L *= 2;
    if (k_lo == k_hi) {
      if (finish_degenerate(k_lo, L, W)) return res;
      res.note = "degenerate pullback point failed exact verification";
      return res;
    }
  }
  BranchSegment K{0, k_lo, k_hi};
  try {
    Chain wrap = horseshoe_chain(m, K, K, W, W, L, W, 1);
    Point x = chain_fixed_point(m, wrap);
    res.found = true;
    res.x = x;
    res.period = L;
    res.disp = W;
    return res;
  } catch (const std::exception& ex) {
    res.note = std::string("exact extraction failed: ") + ex.what();
    return res;
  }
}

}  // namespace sigmarot
