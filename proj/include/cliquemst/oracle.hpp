#pragma once

// Sequential ground-truth implementations used as test oracles and
// baselines. Deliberately simulator-free: they share no code path with the
// distributed pipelines they are used to check, except DisjointSets.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "cliquemst/dsu.hpp"
#include "cliquemst/graph.hpp"

namespace cliquemst {

/// Edge ids sorted by WeightKey; the scan order of Kruskal's algorithm.
inline std::vector<EdgeId> edges_by_weight(const Graph& g) {
  std::vector<EdgeId> order(g.edges.size());
  for (EdgeId i = 0; i < g.edges.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](EdgeId a, EdgeId b) { return g.edges[a].key < g.edges[b].key; });
  return order;
}

/// Kruskal's algorithm. The WeightKey order is strict, so the returned
/// MSF is unique; edge ids come back sorted.
inline std::vector<EdgeId> kruskal(const Graph& g) {
  DisjointSets ds(g.n);
  std::vector<EdgeId> out;
  for (EdgeId id : edges_by_weight(g)) {
    const Edge& e = g.edges[id];
    if (ds.unite(e.u, e.v)) out.push_back(id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Connected components by iterative DFS; labels are dense in first-seen order.
inline ComponentAssignment connected_components_bfs(const Graph& g) {
  ComponentAssignment c;
  c.comp.assign(g.n, ~0u);
  AdjacencyIndex adj(g);
  std::vector<VertexId> stack;
  for (VertexId root = 0; root < g.n; ++root) {
    if (c.comp[root] != ~0u) continue;
    const std::uint32_t label = static_cast<std::uint32_t>(c.sizes.size());
    c.sizes.push_back(0);
    c.comp[root] = label;
    stack.push_back(root);
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      ++c.sizes[label];
      adj.for_incident(v, [&](EdgeId id) {
        const VertexId w = other_endpoint(g.edges[id], v);
        if (c.comp[w] == ~0u) {
          c.comp[w] = label;
          stack.push_back(w);
        }
      });
    }
  }
  return c;
}

struct BoruvkaResult {
  std::vector<EdgeId> forest;
  std::uint32_t rounds = 0;
};

/// Classic Boruvka phases under the strict WeightKey order. Returns the
/// (unique) MSF and the number of phases taken.
inline BoruvkaResult boruvka_rounds(const Graph& g) {
  BoruvkaResult r;
  DisjointSets ds(g.n);
  std::size_t remaining = g.edges.size();
  while (remaining > 0) {
    // cheapest outgoing edge per current component
    std::vector<EdgeId> best(g.n, ~0u);
    bool any = false;
    for (EdgeId id = 0; id < g.edges.size(); ++id) {
      const Edge& e = g.edges[id];
      const std::uint32_t cu = ds.find(e.u), cv = ds.find(e.v);
      if (cu == cv) continue;
      any = true;
      for (std::uint32_t c : {cu, cv}) {
        if (best[c] == ~0u || e.key < g.edges[best[c]].key) best[c] = id;
      }
    }
    if (!any) break;
    ++r.rounds;
    for (VertexId c = 0; c < g.n; ++c) {
      if (best[c] == ~0u) continue;
      const Edge& e = g.edges[best[c]];
      if (ds.unite(e.u, e.v)) r.forest.push_back(best[c]);
    }
    remaining = 0;
    for (const Edge& e : g.edges)
      if (!ds.same(e.u, e.v)) ++remaining;
  }
  std::sort(r.forest.begin(), r.forest.end());
  return r;
}

}  // namespace cliquemst
