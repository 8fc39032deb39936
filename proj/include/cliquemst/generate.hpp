#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "cliquemst/graph.hpp"

namespace cliquemst {

/// Deterministic 64-bit generator (splitmix64). Hand-rolled so that
/// generated corpora are identical across standard libraries.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t below(std::uint64_t bound) { return bound == 0 ? 0 : next() % bound; }
};

enum class GraphKind { gnm, regularish, path, star, grid, two_scale };

struct GenSpec {
  GraphKind kind = GraphKind::gnm;
  std::uint64_t a = 0;     // n (or rows for grid)
  std::uint64_t b = 0;     // m, degree, or cols depending on kind
  std::uint64_t seed = 1;
};

class GenError : public std::runtime_error {
 public:
  explicit GenError(const std::string& msg) : std::runtime_error(msg) {}
};

namespace detail {

// Weights are drawn from a deliberately small range so that equal weights
// occur and the eid tie-break is exercised.
inline double draw_weight(SplitMix64& rng, std::uint64_t edge_count) {
  const std::uint64_t range = std::max<std::uint64_t>(4, edge_count);
  return static_cast<double>(rng.below(range));
}

inline void push_edge(Graph& g, std::unordered_set<std::uint64_t>& seen, VertexId u, VertexId v,
                      double w) {
  if (u == v) return;
  if (!seen.insert(pair_code(u, v)).second) return;
  g.edges.emplace_back(u, v, WeightKey{1, w, g.edges.size()});
}

}  // namespace detail

/// Deterministic function of (kind, params, seed).
inline Graph generate_graph(const GenSpec& spec) {
  SplitMix64 rng(spec.seed * 0x9e3779b97f4a7c15ULL + 0x243f6a8885a308d3ULL);
  Graph g;
  std::unordered_set<std::uint64_t> seen;

  switch (spec.kind) {
    case GraphKind::path: {
      if (spec.a < 1) throw GenError("path: n must be >= 1");
      g.n = static_cast<VertexId>(spec.a);
      for (VertexId i = 0; i + 1 < g.n; ++i)
        detail::push_edge(g, seen, i, i + 1, detail::draw_weight(rng, g.n));
      break;
    }
    case GraphKind::star: {
      if (spec.a < 1) throw GenError("star: n must be >= 1");
      g.n = static_cast<VertexId>(spec.a);
      for (VertexId i = 1; i < g.n; ++i)
        detail::push_edge(g, seen, 0, i, detail::draw_weight(rng, g.n));
      break;
    }
    case GraphKind::grid: {
      if (spec.a < 1 || spec.b < 1) throw GenError("grid: rows and cols must be >= 1");
      const std::uint64_t rows = spec.a, cols = spec.b;
      if (rows * cols > (1ull << 31)) throw GenError("grid: too large");
      g.n = static_cast<VertexId>(rows * cols);
      const std::uint64_t m_hint = 2 * rows * cols;
      for (std::uint64_t r = 0; r < rows; ++r)
        for (std::uint64_t c = 0; c < cols; ++c) {
          const VertexId v = static_cast<VertexId>(r * cols + c);
          if (c + 1 < cols) detail::push_edge(g, seen, v, v + 1, detail::draw_weight(rng, m_hint));
          if (r + 1 < rows)
            detail::push_edge(g, seen, v, static_cast<VertexId>(v + cols),
                              detail::draw_weight(rng, m_hint));
        }
      break;
    }
    case GraphKind::gnm: {
      const std::uint64_t n = spec.a, m = spec.b;
      if (n < 1) throw GenError("gnm: n must be >= 1");
      const std::uint64_t max_m = n * (n - 1) / 2;
      if (m > max_m) throw GenError("gnm: m exceeds simple-graph capacity");
      g.n = static_cast<VertexId>(n);
      while (g.edges.size() < m) {
        const VertexId u = static_cast<VertexId>(rng.below(n));
        const VertexId v = static_cast<VertexId>(rng.below(n));
        detail::push_edge(g, seen, u, v, detail::draw_weight(rng, m));
      }
      break;
    }
    case GraphKind::regularish: {
      // union of d/2 shifted cycles: every vertex ends up with degree close
      // to d, which is what the component-count implication tests need
      const std::uint64_t n = spec.a, d = spec.b;
      if (n < 2) throw GenError("regularish: n must be >= 2");
      if (d >= n) throw GenError("regularish: degree must be < n");
      g.n = static_cast<VertexId>(n);
      const std::uint64_t shifts = std::max<std::uint64_t>(1, d / 2);
      std::unordered_set<std::uint64_t> used_shifts;
      for (std::uint64_t k = 0; k < shifts; ++k) {
        std::uint64_t s;
        do {
          s = 1 + rng.below(n - 1);
        } while (!used_shifts.insert(std::min(s, n - s)).second &&
                 used_shifts.size() < (n - 1) / 2 + 1);
        for (std::uint64_t i = 0; i < n; ++i)
          detail::push_edge(g, seen, static_cast<VertexId>(i),
                            static_cast<VertexId>((i + s) % n), detail::draw_weight(rng, n * shifts));
      }
      break;
    }
    case GraphKind::two_scale: {
      // dense core + sparse periphery: mixes high and low degrees so the
      // downstream size-class decomposition sees several nonempty classes
      const std::uint64_t n = spec.a, m = spec.b;
      if (n < 4) throw GenError("two_scale: n must be >= 4");
      g.n = static_cast<VertexId>(n);
      const std::uint64_t core = std::max<std::uint64_t>(2, n / 8);
      const std::uint64_t core_cap = core * (core - 1) / 2;
      const std::uint64_t want_core = std::min(core_cap, m / 2);
      while (g.edges.size() < want_core) {
        const VertexId u = static_cast<VertexId>(rng.below(core));
        const VertexId v = static_cast<VertexId>(rng.below(core));
        detail::push_edge(g, seen, u, v, detail::draw_weight(rng, m));
      }
      // periphery: random sparse edges over the whole range, some touching
      // the core. Capped attempts keep this terminating when m is close to
      // the simple-graph capacity.
      const std::uint64_t max_m = n * (n - 1) / 2;
      const std::uint64_t target = std::min(m, max_m);
      std::uint64_t attempts = 0;
      while (g.edges.size() < target && attempts < 64 * target + 256) {
        const VertexId u = static_cast<VertexId>(rng.below(n));
        const VertexId v = static_cast<VertexId>(rng.below(n));
        detail::push_edge(g, seen, u, v, detail::draw_weight(rng, m));
        ++attempts;
      }
      break;
    }
  }
  return g;
}

/// Parses "kind:a[,b][,seed=S]" generator specs, e.g. "gnm:256,4096,seed=5".
inline GenSpec parse_gen_spec(const std::string& text) {
  GenSpec spec;
  const std::size_t colon = text.find(':');
  if (colon == std::string::npos) throw GenError("generator spec needs 'kind:params'");
  const std::string kind = text.substr(0, colon);
  if (kind == "gnm") spec.kind = GraphKind::gnm;
  else if (kind == "regularish") spec.kind = GraphKind::regularish;
  else if (kind == "path") spec.kind = GraphKind::path;
  else if (kind == "star") spec.kind = GraphKind::star;
  else if (kind == "grid") spec.kind = GraphKind::grid;
  else if (kind == "twoscale") spec.kind = GraphKind::two_scale;
  else throw GenError("unknown generator kind '" + kind + "'");

  std::vector<std::string> parts;
  std::string rest = text.substr(colon + 1);
  std::size_t pos = 0;
  while (pos <= rest.size()) {
    std::size_t comma = rest.find(',', pos);
    if (comma == std::string::npos) comma = rest.size();
    parts.push_back(rest.substr(pos, comma - pos));
    pos = comma + 1;
  }

  std::vector<std::uint64_t> nums;
  for (const std::string& p : parts) {
    if (p.rfind("seed=", 0) == 0) {
      spec.seed = std::stoull(p.substr(5));
    } else if (!p.empty()) {
      nums.push_back(std::stoull(p));
    }
  }
  if (nums.empty()) throw GenError("generator spec needs at least one numeric parameter");
  spec.a = nums[0];
  if (nums.size() > 1) spec.b = nums[1];
  if (nums.size() > 2) throw GenError("too many numeric parameters");
  return spec;
}

}  // namespace cliquemst
