#pragma once

// Reference enumeration of all simple directed cycles of a small weighted
// digraph, used as an independent oracle against the Karp-style extremal
// cycle-mean computation.  A DFS rooted at each vertex s visits only
// vertices >= s so each cycle is produced exactly once (at its smallest
// vertex); iterating over edges rather than successor sets keeps parallel
// edges distinct.

#include "sigmarot/markov.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <vector>

namespace testgen {

using namespace sigmarot;

// Means of all simple cycles, sorted ascending with duplicates removed.
// Returns nullopt if more than `cap` cycles exist (graph too dense to
// enumerate exhaustively).
inline std::optional<std::vector<Rat>> simple_cycle_means(
    const WDigraph& g, std::size_t cap = 200000) {
  std::vector<std::vector<const WDigraph::E*>> adj(std::size_t(g.n));
  for (const auto& e : g.edges) adj[std::size_t(e.u)].push_back(&e);

  std::vector<Rat> means;
  std::size_t count = 0;
  std::vector<char> onpath(std::size_t(g.n), 0);
  bool overflow = false;

  std::function<void(int, int, const Rat&, unsigned)> dfs =
      [&](int s, int v, const Rat& w, unsigned len) {
        if (overflow) return;
        onpath[std::size_t(v)] = 1;
        for (const WDigraph::E* e : adj[std::size_t(v)]) {
          if (e->v < s) continue;
          if (e->v == s) {
            if (++count > cap) {
              overflow = true;
              break;
            }
            means.push_back((w + e->w) / rat(long(len) + 1));
          } else if (!onpath[std::size_t(e->v)]) {
            dfs(s, e->v, w + e->w, len + 1);
            if (overflow) break;
          }
        }
        onpath[std::size_t(v)] = 0;
      };

  for (int s = 0; s < g.n && !overflow; ++s) dfs(s, s, Rat(0), 0);
  if (overflow) return std::nullopt;

  std::sort(means.begin(), means.end());
  means.erase(std::unique(means.begin(), means.end()), means.end());
  return means;
}

}  // namespace testgen
