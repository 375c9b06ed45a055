#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <queue>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "sombor/errors.hpp"

namespace sombor {

using Vertex = std::uint32_t;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline std::string to_string(const Edge& e) {
  return "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ")";
}

struct DegreeSequence {
  std::vector<std::uint32_t> degrees;

  std::size_t size() const noexcept { return degrees.size(); }
  std::uint32_t operator[](std::size_t v) const { return degrees[v]; }
  std::uint32_t max() const noexcept {
    return degrees.empty() ? 0 : *std::max_element(degrees.begin(), degrees.end());
  }
};

// Hop distance marking a vertex unreachable from the BFS source.
inline constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

/**
 * Immutable simple undirected graph on vertices 0..n-1.
 *
 * Adjacency is stored in compressed rows with every row sorted ascending, so
 * neighbors(v) is a sorted span and edges() enumerates each edge once as
 * (u, v) with u < v in lexicographic order. All "mutators" return new graphs.
 */
class Graph {
 public:
  Graph() : offsets_(1, 0) {}

  // Validates and builds. Throws GraphError naming the offending pair on an
  // out-of-range endpoint, a self-loop, or a duplicate edge.
  static Graph build(std::size_t n, std::span<const Edge> edges) {
    if (n >= static_cast<std::size_t>(kUnreachable)) throw GraphError("vertex count too large");
    std::vector<std::uint32_t> degree(n, 0);
    for (const Edge& e : edges) {
      if (e.u >= n || e.v >= n)
        throw GraphError("edge " + to_string(e) + " has an endpoint outside [0, " +
                         std::to_string(n) + ")");
      if (e.u == e.v) throw GraphError("edge " + to_string(e) + " is a self-loop");
      ++degree[e.u];
      ++degree[e.v];
    }
    Graph g;
    g.offsets_.assign(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + degree[v];
    g.neighbors_.resize(g.offsets_[n]);
    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const Edge& e : edges) {
      g.neighbors_[cursor[e.u]++] = e.v;
      g.neighbors_[cursor[e.v]++] = e.u;
    }
    for (std::size_t v = 0; v < n; ++v) {
      auto first = g.neighbors_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]);
      auto last = g.neighbors_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]);
      std::sort(first, last);
      auto dup = std::adjacent_find(first, last);
      if (dup != last) {
        Edge e{static_cast<Vertex>(std::min<std::size_t>(v, *dup)),
               static_cast<Vertex>(std::max<std::size_t>(v, *dup))};
        throw GraphError("edge " + to_string(e) + " is listed more than once");
      }
    }
    g.edge_count_ = g.neighbors_.size() / 2;
    return g;
  }

  static Graph build(std::size_t n, std::initializer_list<Edge> edges) {
    return build(n, std::span<const Edge>(edges.begin(), edges.size()));
  }

  std::size_t vertex_count() const noexcept { return offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return edge_count_; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {neighbors_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }

  std::uint32_t degree(Vertex v) const {
    return static_cast<std::uint32_t>(offsets_[v + 1] - offsets_[v]);
  }

  bool has_edge(Vertex u, Vertex v) const {
    if (u >= vertex_count() || v >= vertex_count()) return false;
    auto row = neighbors(u);
    return std::binary_search(row.begin(), row.end(), v);
  }

  // Every edge once, ascending (u, v) with u < v.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (Vertex u = 0; u < vertex_count(); ++u)
      for (Vertex v : neighbors(u))
        if (u < v) out.push_back({u, v});
    return out;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.offsets_ == b.offsets_ && a.neighbors_ == b.neighbors_;
  }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> neighbors_;
  std::size_t edge_count_ = 0;
};

inline DegreeSequence degree_sequence(const Graph& g) {
  DegreeSequence d;
  d.degrees.resize(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) d.degrees[v] = g.degree(v);
  return d;
}

namespace detail {

// BFS into a caller-owned buffer; returns the sum of finite distances and the
// number of vertices reached (including the source).
inline std::pair<std::uint64_t, std::size_t> bfs_into(const Graph& g, Vertex source,
                                                      std::vector<std::uint32_t>& dist,
                                                      std::vector<Vertex>& queue) {
  dist.assign(g.vertex_count(), kUnreachable);
  queue.clear();
  dist[source] = 0;
  queue.push_back(source);
  std::uint64_t total = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Vertex u = queue[head];
    total += dist[u];
    for (Vertex w : g.neighbors(u)) {
      if (dist[w] == kUnreachable) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return {total, queue.size()};
}

inline void check_vertex(const Graph& g, Vertex v) {
  if (v >= g.vertex_count())
    throw GraphError("vertex " + std::to_string(v) + " outside [0, " +
                     std::to_string(g.vertex_count()) + ")");
}

}  // namespace detail

// Hop distances from source; unreachable vertices hold kUnreachable.
inline std::vector<std::uint32_t> bfs_distances(const Graph& g, Vertex source) {
  detail::check_vertex(g, source);
  std::vector<std::uint32_t> dist;
  std::vector<Vertex> queue;
  detail::bfs_into(g, source, dist, queue);
  return dist;
}

inline bool is_connected(const Graph& g) {
  if (g.vertex_count() <= 1) return true;
  std::vector<std::uint32_t> dist;
  std::vector<Vertex> queue;
  return detail::bfs_into(g, 0, dist, queue).second == g.vertex_count();
}

// Relabels vertex v as perm[v].
inline Graph permute(const Graph& g, std::span<const Vertex> perm) {
  const std::size_t n = g.vertex_count();
  if (perm.size() != n)
    throw GraphError("permutation has " + std::to_string(perm.size()) + " entries, expected " +
                     std::to_string(n));
  std::vector<bool> seen(n, false);
  for (Vertex p : perm) {
    if (p >= n || seen[p]) throw GraphError("permutation is not a bijection on [0, n)");
    seen[p] = true;
  }
  std::vector<Edge> mapped;
  mapped.reserve(g.edge_count());
  for (const Edge& e : g.edges()) {
    Vertex a = perm[e.u], b = perm[e.v];
    mapped.push_back({std::min(a, b), std::max(a, b)});
  }
  return Graph::build(n, mapped);
}

inline Graph remove_edge(const Graph& g, Vertex u, Vertex v) {
  if (!g.has_edge(u, v))
    throw GraphError("edge " + to_string({u, v}) + " is not in the graph");
  const Edge target{std::min(u, v), std::max(u, v)};
  std::vector<Edge> kept;
  kept.reserve(g.edge_count() - 1);
  for (const Edge& e : g.edges())
    if (e != target) kept.push_back(e);
  return Graph::build(g.vertex_count(), kept);
}

inline Graph add_edge(const Graph& g, Vertex u, Vertex v) {
  auto edges = g.edges();
  edges.push_back({std::min(u, v), std::max(u, v)});
  return Graph::build(g.vertex_count(), edges);
}

// ---------------------------------------------------------------------------
// Text format: "n m" then m lines "u v" (u < v, ascending), newline-terminated.

inline void write_text(std::ostream& os, const Graph& g) {
  os << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) os << e.u << ' ' << e.v << '\n';
}

inline std::string to_text(const Graph& g) {
  std::ostringstream os;
  write_text(os, g);
  return os.str();
}

inline Graph read_text(std::istream& is) {
  long long n = -1, m = -1;
  if (!(is >> n >> m) || n < 0 || m < 0) throw GraphError("malformed graph header, expected \"n m\"");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    long long u = -1, v = -1;
    if (!(is >> u >> v)) throw GraphError("expected " + std::to_string(m) + " edge lines, got " +
                                          std::to_string(i));
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw GraphError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                       ") has an endpoint outside [0, " + std::to_string(n) + ")");
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
  }
  return Graph::build(static_cast<std::size_t>(n), edges);
}

inline Graph from_text(const std::string& text) {
  std::istringstream is(text);
  return read_text(is);
}

// JSON format: {"n": int, "edges": [[u, v], ...]}.

inline nlohmann::json to_json_value(const Graph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
  return {{"n", g.vertex_count()}, {"edges", std::move(edges)}};
}

inline Graph from_json_value(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("edges") || !j["edges"].is_array())
    throw GraphError("graph JSON must be an object with \"n\" and \"edges\"");
  const auto n = j["n"].get<long long>();
  if (n < 0) throw GraphError("graph JSON has negative \"n\"");
  std::vector<Edge> edges;
  for (const auto& pair : j["edges"]) {
    if (!pair.is_array() || pair.size() != 2) throw GraphError("each edge must be a two-element array");
    const auto u = pair[0].get<long long>(), v = pair[1].get<long long>();
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw GraphError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                       ") has an endpoint outside [0, " + std::to_string(n) + ")");
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
  }
  return Graph::build(static_cast<std::size_t>(n), edges);
}

}  // namespace sombor
