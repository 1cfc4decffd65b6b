#include "sigmarot/markov.hpp"

#include "sigmarot/tracked.hpp"

#include <algorithm>
#include <cassert>
#include <optional>
#include <set>
#include <sstream>
#include <utility>

namespace sigmarot {

MarkovResult markov_partition(const PAMap& m, const Partition& part) {
  MarkovResult res;
  const SigmaSpace& sp = m.space;

  for (std::size_t i = 0; i < part.segments.size(); ++i) {
    const BranchSegment& blk = part.segments[i];
    std::vector<Rat> cuts{blk.lo};
    for (const BreakPair& bp : m.branch)
      if (blk.lo < bp.x && bp.x < blk.hi) cuts.push_back(bp.x);
    cuts.push_back(blk.hi);
    if (blk.degenerate()) {
      res.vertices.push_back(MarkovVertex{blk, int(i) + 1});
    } else {
      for (std::size_t j = 0; j + 1 < cuts.size(); ++j)
        res.vertices.push_back(
            MarkovVertex{BranchSegment{0, cuts[j], cuts[j + 1]}, int(i) + 1});
    }
  }

  // Exactness: every vertex endpoint must map to a vertex endpoint modulo
  // translation or into the invariant low region.  An endpoint image landing
  // strictly inside some vertex breaks the decomposition of vertex images.
  std::set<Rat> endpoints;
  for (const MarkovVertex& v : res.vertices) {
    endpoints.insert(v.seg.lo);
    endpoints.insert(v.seg.hi);
  }
  auto strictly_inside = [&](const Rat& h) {
    for (const MarkovVertex& v : res.vertices)
      if (v.seg.lo < h && h < v.seg.hi) return true;
    return false;
  };
  for (const Rat& d : endpoints) {
    Point x = sp.branch(0, d);
    Point y = evaluate(m, x);
    if (y.kind == PointKind::Line) continue;
    if (y.x <= part.reach) continue;
    if (strictly_inside(y.x)) {
      std::ostringstream os;
      os << sp.point_str(x) << " -> " << sp.point_str(y)
         << " lands strictly inside a vertex";
      res.violations.push_back(os.str());
    }
  }
  res.markov = res.violations.empty();
  return res;
}

MarkovGraph build_markov_graph(const PAMap& m,
                               const std::vector<MarkovVertex>& vertices) {
  MarkovGraph g;
  g.vertices = vertices;
  const SigmaSpace& sp = m.space;
  const Rat& c = sp.attach_offset();

  bool any_attach_vertex = false;
  for (const MarkovVertex& v : vertices)
    if (v.seg.degenerate() && v.seg.lo == 0) any_attach_vertex = true;

  for (int ia = 0; ia < int(vertices.size()); ++ia) {
    TreeSet ts = tracked_union(tracked_on_segment(m, vertices[ia].seg, 1));
    std::set<Int> cands;
    for (const auto& [copy, iv] : ts.branches) cands.insert(copy);
    if (any_attach_vertex && ts.line) {
      Int k = floor_int(ts.line->first - c);
      if (c + k < ts.line->first) ++k;
      for (; c + k <= ts.line->second; ++k) cands.insert(k);
    }
    for (Int w : cands) {
      for (int ib = 0; ib < int(vertices.size()); ++ib) {
        const BranchSegment& B = vertices[ib].seg;
        bool covered;
        if (B.degenerate() && B.lo == 0)
          covered = ts.covers(BranchSegment{w, B.lo, B.hi}) ||
                    ts.covers_line(c + w, c + w);
        else
          covered = ts.covers(BranchSegment{w, B.lo, B.hi});
        if (covered) g.edges.push_back(MarkovEdge{ia, ib, w});
      }
    }
  }
  std::sort(g.edges.begin(), g.edges.end(), [](const MarkovEdge& a, const MarkovEdge& b) {
    if (a.from != b.from) return a.from < b.from;
    if (a.to != b.to) return a.to < b.to;
    return a.w < b.w;
  });
  return g;
}

std::string graph_dot(const MarkovGraph& g) {
  std::ostringstream os;
  os << "digraph G {\n";
  for (std::size_t i = 0; i < g.vertices.size(); ++i)
    os << "  v" << i << " [label=\"[" << rat_str(g.vertices[i].seg.lo) << ", "
       << rat_str(g.vertices[i].seg.hi) << "]\"];\n";
  for (const MarkovEdge& e : g.edges)
    os << "  v" << e.from << " -> v" << e.to << " [label=\"" << e.w << "\"];\n";
  os << "}\n";
  return os.str();
}

WDigraph to_wdigraph(const MarkovGraph& g) {
  WDigraph w;
  w.n = int(g.vertices.size());
  for (const MarkovEdge& e : g.edges)
    w.edges.push_back(WDigraph::E{e.from, e.to, rat(long(e.w))});
  return w;
}

std::vector<int> strongly_connected_components(const WDigraph& g) {
  const int n = g.n;
  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i < int(g.edges.size()); ++i) adj[g.edges[i].u].push_back(g.edges[i].v);

  std::vector<int> comp(n, -1), low(n, 0), num(n, -1), stk;
  std::vector<char> onstk(n, 0);
  int counter = 0, ncomp = 0;

  // Iterative Tarjan.
  struct Frame {
    int v;
    std::size_t it;
  };
  for (int s = 0; s < n; ++s) {
    if (num[s] != -1) continue;
    std::vector<Frame> st{{s, 0}};
    num[s] = low[s] = counter++;
    stk.push_back(s);
    onstk[s] = 1;
    while (!st.empty()) {
      Frame& f = st.back();
      if (f.it < adj[f.v].size()) {
        int w = adj[f.v][f.it++];
        if (num[w] == -1) {
          num[w] = low[w] = counter++;
          stk.push_back(w);
          onstk[w] = 1;
          st.push_back({w, 0});
        } else if (onstk[w]) {
          low[f.v] = std::min(low[f.v], num[w]);
        }
      } else {
        int v = f.v;
        st.pop_back();
        if (!st.empty()) low[st.back().v] = std::min(low[st.back().v], low[v]);
        if (low[v] == num[v]) {
          for (;;) {
            int w = stk.back();
            stk.pop_back();
            onstk[w] = 0;
            comp[w] = ncomp;
            if (w == v) break;
          }
          ++ncomp;
        }
      }
    }
  }
  return comp;
}

namespace {

// Minimum cycle mean of one strongly connected subgraph (given by global
// vertex ids and edge indices), with a witness cycle of exactly that mean,
// returned as global edge indices in cycle order.
struct MinMean {
  Rat mu;
  std::vector<int> cycle_edges;
};

std::optional<MinMean> min_cycle_mean(const WDigraph& g, const std::vector<int>& verts,
                                      const std::vector<int>& eidx, bool negate) {
  if (eidx.empty()) return std::nullopt;
  const int nl = int(verts.size());
  std::vector<int> lidx(g.n, -1);
  for (int i = 0; i < nl; ++i) lidx[verts[i]] = i;
  auto wt = [&](int ei) { return negate ? -g.edges[ei].w : g.edges[ei].w; };

  // Karp's recurrence from a single source.
  std::vector<std::vector<std::optional<Rat>>> D(
      std::size_t(nl) + 1, std::vector<std::optional<Rat>>(nl));
  D[0][0] = Rat(0);
  for (int k = 1; k <= nl; ++k) {
    for (int ei : eidx) {
      int lu = lidx[g.edges[ei].u], lv = lidx[g.edges[ei].v];
      if (!D[k - 1][lu]) continue;
      Rat cand = *D[k - 1][lu] + wt(ei);
      if (!D[k][lv] || cand < *D[k][lv]) D[k][lv] = cand;
    }
  }
  std::optional<Rat> mu;
  for (int v = 0; v < nl; ++v) {
    if (!D[nl][v]) continue;
    std::optional<Rat> worst;
    for (int k = 0; k < nl; ++k) {
      if (!D[k][v]) continue;
      Rat r = (*D[nl][v] - *D[k][v]) / rat(long(nl - k));
      if (!worst || r > *worst) worst = r;
    }
    if (worst && (!mu || *worst < *mu)) mu = *worst;
  }
  if (!mu) return std::nullopt;

  // Witness: with weights shifted down by mu no cycle is negative and some
  // cycle has weight zero; after Bellman-Ford potentials that cycle is tight.
  std::vector<Rat> dist(nl, Rat(0));
  for (int round = 0; round < nl; ++round) {
    bool changed = false;
    for (int ei : eidx) {
      int lu = lidx[g.edges[ei].u], lv = lidx[g.edges[ei].v];
      Rat cand = dist[lu] + wt(ei) - *mu;
      if (cand < dist[lv]) {
        dist[lv] = cand;
        changed = true;
      }
    }
    if (!changed) break;
  }
  std::vector<std::vector<int>> tadj(nl);
  for (int ei : eidx) {
    int lu = lidx[g.edges[ei].u], lv = lidx[g.edges[ei].v];
    if (dist[lu] + wt(ei) - *mu == dist[lv]) tadj[lu].push_back(ei);
  }
  // Any cycle of tight edges sums to zero in shifted weights, hence has mean
  // exactly mu.  Depth-first search for a gray-to-gray edge.
  std::vector<int> color(nl, 0), parent(nl, -1), via(nl, -1);
  for (int s0 = 0; s0 < nl; ++s0) {
    if (color[s0] != 0) continue;
    std::vector<std::pair<int, std::size_t>> st{{s0, 0}};
    color[s0] = 1;
    while (!st.empty()) {
      auto& [u, it] = st.back();
      if (it < tadj[u].size()) {
        int ei = tadj[u][it++];
        int v = lidx[g.edges[ei].v];
        if (color[v] == 0) {
          color[v] = 1;
          parent[v] = u;
          via[v] = ei;
          st.push_back({v, 0});
        } else if (color[v] == 1) {
          std::vector<int> cyc{ei};
          int cur = u;
          while (cur != v) {
            cyc.push_back(via[cur]);
            cur = parent[cur];
          }
          std::reverse(cyc.begin(), cyc.end());
          return MinMean{negate ? -*mu : *mu, std::move(cyc)};
        }
      } else {
        color[u] = 2;
        st.pop_back();
      }
    }
  }
  return MinMean{negate ? -*mu : *mu, {}};
}

}  // namespace

CycleMeanResult cycle_mean_range(const WDigraph& g) {
  CycleMeanResult res;
  std::vector<int> comp = strongly_connected_components(g);
  int ncomp = 0;
  for (int c : comp) ncomp = std::max(ncomp, c + 1);
  std::vector<std::vector<int>> cverts(ncomp), cedges(ncomp);
  for (int v = 0; v < g.n; ++v) cverts[comp[v]].push_back(v);
  for (int ei = 0; ei < int(g.edges.size()); ++ei)
    if (comp[g.edges[ei].u] == comp[g.edges[ei].v])
      cedges[comp[g.edges[ei].u]].push_back(ei);

  for (int c = 0; c < ncomp; ++c) {
    bool has_cycle = !cedges[c].empty() &&
                     (cverts[c].size() >= 2 || [&] {
                       for (int ei : cedges[c])
                         if (g.edges[ei].u == g.edges[ei].v) return true;
                       return false;
                     }());
    if (!has_cycle) continue;
    auto lo = min_cycle_mean(g, cverts[c], cedges[c], false);
    auto hi = min_cycle_mean(g, cverts[c], cedges[c], true);
    if (!lo || !hi) continue;
    MeanRange mr;
    mr.lo = lo->mu;
    mr.hi = hi->mu;
    mr.lo_edges = lo->cycle_edges;
    mr.hi_edges = hi->cycle_edges;
    for (int ei : mr.lo_edges) mr.lo_cycle.push_back(g.edges[ei].u);
    for (int ei : mr.hi_edges) mr.hi_cycle.push_back(g.edges[ei].u);
    res.per_component.push_back(std::move(mr));
    res.has_cycle = true;
  }

  std::vector<std::pair<Rat, Rat>> ivs;
  for (const MeanRange& mr : res.per_component) ivs.push_back({mr.lo, mr.hi});
  std::sort(ivs.begin(), ivs.end());
  for (const auto& iv : ivs) {
    if (!res.intervals.empty() && iv.first <= res.intervals.back().second) {
      res.intervals.back().second = rat_max(res.intervals.back().second, iv.second);
    } else {
      res.intervals.push_back(iv);
    }
  }
  return res;
}

CycleMeanResult cycle_mean_range(const MarkovGraph& g) {
  return cycle_mean_range(to_wdigraph(g));
}

std::vector<Rat> oracle_cycle_enumeration(const MarkovGraph& g, unsigned max_len) {
  const int n = int(g.vertices.size());
  std::set<Rat> means;
  for (int s = 0; s < n; ++s) {
    // weight sets reachable from s at each (length, vertex)
    std::vector<std::set<Int>> cur(n), nxt(n);
    cur[s].insert(0);
    for (unsigned len = 1; len <= max_len; ++len) {
      for (auto& x : nxt) x.clear();
      for (const MarkovEdge& e : g.edges)
        for (Int w : cur[e.from]) nxt[e.to].insert(w + e.w);
      for (Int w : nxt[s]) means.insert(rat(long(w)) / rat(long(len)));
      std::swap(cur, nxt);
    }
  }
  return std::vector<Rat>(means.begin(), means.end());
}

}  // namespace sigmarot
