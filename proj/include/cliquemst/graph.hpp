#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace cliquemst {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

/// Thrown by parse_graph on malformed input; message names the offending line.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Strict total order on edges: (cls, w, eid) compared lexicographically.
/// cls 0 is reserved for synthetic path edges, which sort below every
/// original edge (cls 1). Ties on weight are broken by edge id, so no two
/// edges ever compare equal and the minimum spanning forest is unique.
struct WeightKey {
  std::uint8_t cls = 1;
  double w = 0.0;
  std::uint64_t eid = 0;

  friend bool operator<(const WeightKey& a, const WeightKey& b) {
    if (a.cls != b.cls) return a.cls < b.cls;
    if (a.w != b.w) return a.w < b.w;
    return a.eid < b.eid;
  }
  friend bool operator==(const WeightKey& a, const WeightKey& b) {
    return a.cls == b.cls && a.w == b.w && a.eid == b.eid;
  }
};

/// Undirected edge, canonicalized so that u < v.
struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  WeightKey key;

  Edge() = default;
  Edge(VertexId a, VertexId b, WeightKey k) : u(std::min(a, b)), v(std::max(a, b)), key(k) {}
};

struct Graph {
  VertexId n = 0;
  std::vector<Edge> edges;

  std::size_t m() const { return edges.size(); }
  /// Average degree 2m/n; 0 for an empty vertex set.
  double avg_degree() const { return n == 0 ? 0.0 : 2.0 * static_cast<double>(edges.size()) / n; }
};

/// Per-vertex incidence lists built once from the edge list.
class AdjacencyIndex {
 public:
  explicit AdjacencyIndex(const Graph& g) : offsets_(g.n + 1, 0) {
    for (const Edge& e : g.edges) {
      ++offsets_[e.u + 1];
      ++offsets_[e.v + 1];
    }
    for (VertexId v = 0; v < g.n; ++v) offsets_[v + 1] += offsets_[v];
    incident_.resize(offsets_[g.n]);
    std::vector<std::uint32_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (EdgeId id = 0; id < g.edges.size(); ++id) {
      const Edge& e = g.edges[id];
      incident_[cursor[e.u]++] = id;
      incident_[cursor[e.v]++] = id;
    }
  }

  std::size_t degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }

  /// Edge ids incident to v, in increasing edge-id order.
  std::vector<EdgeId> incident(VertexId v) const {
    return {incident_.begin() + offsets_[v], incident_.begin() + offsets_[v + 1]};
  }

  template <typename Fn>
  void for_incident(VertexId v, Fn&& fn) const {
    for (std::uint32_t i = offsets_[v]; i < offsets_[v + 1]; ++i) fn(incident_[i]);
  }

 private:
  std::vector<std::uint32_t> offsets_;
  std::vector<EdgeId> incident_;
};

inline VertexId other_endpoint(const Edge& e, VertexId v) { return e.u == v ? e.v : e.u; }

/// Records how a graph was rewritten by vertex splitting: each original
/// vertex owns a consecutive range of new ids, consecutive ids of one range
/// are linked by path edges, and every non-path edge maps back to exactly
/// one original edge.
struct SplitMap {
  struct Range {
    VertexId first = 0;
    std::uint32_t count = 1;
  };
  static constexpr std::uint64_t kPathEdge = ~std::uint64_t{0};

  std::vector<Range> vertex_range;        // indexed by original vertex id
  std::vector<std::uint64_t> edge_origin; // indexed by split-graph edge id; kPathEdge for path edges

  bool is_path_edge(EdgeId split_eid) const { return edge_origin[split_eid] == kPathEdge; }

  /// Original vertex owning a split id (ranges are consecutive, so a simple
  /// upper_bound over range starts suffices).
  VertexId origin_vertex(VertexId split_id) const {
    auto it = std::upper_bound(starts_.begin(), starts_.end(), split_id);
    return static_cast<VertexId>(it - starts_.begin()) - 1;
  }

  void build_lookup() {
    starts_.clear();
    starts_.reserve(vertex_range.size());
    for (const Range& r : vertex_range) starts_.push_back(r.first);
  }

 private:
  std::vector<VertexId> starts_;
};

/// Vertex -> component labeling plus the marked edges that produced it.
struct ComponentAssignment {
  std::vector<std::uint32_t> comp;    // vertex -> dense component id
  std::vector<EdgeId> witness;        // marked edges, <= 2 per vertex
  std::vector<std::uint32_t> sizes;   // component id -> member count

  std::uint32_t count() const { return static_cast<std::uint32_t>(sizes.size()); }
};

/// Graph over component ids: one vertex per component (weighted by its
/// size), one edge per original inter-component edge. Parallel edges are
/// kept and distinguished by their origin edge id.
struct ComponentGraph {
  Graph base;
  std::vector<std::uint32_t> vertex_weight;  // |C_i| per component vertex
  std::vector<EdgeId> origin;                // component edge -> original edge id
};

namespace detail {

inline std::uint64_t pair_code(VertexId u, VertexId v) {
  return (static_cast<std::uint64_t>(std::min(u, v)) << 32) | std::max(u, v);
}

}  // namespace detail

/// Parses the "n m" / "u v w" edge-list format. Rejects self-loops,
/// duplicate vertex pairs, malformed lines and out-of-range endpoints.
inline Graph parse_graph(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) throw ParseError("line 1: missing header 'n m'");

  auto fail = [](std::size_t line_no, const std::string& what) -> ParseError {
    return ParseError("line " + std::to_string(line_no) + ": " + what);
  };

  unsigned long long n = 0, m = 0;
  {
    const std::string header(lines[0]);
    char extra;
    if (std::sscanf(header.c_str(), "%llu %llu %c", &n, &m, &extra) != 2)
      throw fail(1, "expected header 'n m'");
  }
  if (lines.size() != m + 1) throw fail(lines.size(), "expected " + std::to_string(m) + " edge lines");

  Graph g;
  g.n = static_cast<VertexId>(n);
  g.edges.reserve(m);
  std::unordered_set<std::uint64_t> seen;
  for (std::size_t i = 1; i <= m; ++i) {
    const std::string line(lines[i]);
    unsigned long long u = 0, v = 0;
    double w = 0.0;
    char extra;
    if (std::sscanf(line.c_str(), "%llu %llu %lf %c", &u, &v, &w, &extra) != 3)
      throw fail(i + 1, "expected 'u v w'");
    if (u >= n || v >= n) throw fail(i + 1, "endpoint out of range");
    if (u == v) throw fail(i + 1, "self-loop");
    if (!std::isfinite(w)) throw fail(i + 1, "non-finite weight");
    if (!seen.insert(detail::pair_code(static_cast<VertexId>(u), static_cast<VertexId>(v))).second)
      throw fail(i + 1, "duplicate edge");
    g.edges.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(v),
                         WeightKey{1, w, static_cast<std::uint64_t>(i - 1)});
  }
  return g;
}

/// Builds the component graph: intra-component edges dropped, inter-component
/// edges kept (including parallel ones), vertex weights = component sizes.
inline ComponentGraph component_graph(const Graph& g, const ComponentAssignment& c) {
  ComponentGraph gc;
  gc.base.n = c.count();
  gc.vertex_weight = c.sizes;
  for (EdgeId id = 0; id < g.edges.size(); ++id) {
    const Edge& e = g.edges[id];
    const std::uint32_t cu = c.comp[e.u], cv = c.comp[e.v];
    if (cu == cv) continue;
    Edge ce(cu, cv, e.key);
    ce.key.eid = gc.base.edges.size();  // edge ids are local to the component graph
    ce.key.w = e.key.w;
    gc.base.edges.push_back(ce);
    gc.origin.push_back(id);
  }
  return gc;
}

/// Serializes in the parse_graph format. Weights are printed with enough
/// digits to round-trip exactly.
inline std::string format_graph(const Graph& g) {
  std::string out = std::to_string(g.n) + " " + std::to_string(g.edges.size()) + "\n";
  char buf[64];
  for (const Edge& e : g.edges) {
    std::snprintf(buf, sizeof buf, "%u %u %.17g\n", e.u, e.v, e.key.w);
    out += buf;
  }
  return out;
}

}  // namespace cliquemst
