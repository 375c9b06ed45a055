#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "sombor/graph.hpp"

namespace sombor {

// Overflow-safe Euclidean norm of an endpoint-degree pair.
inline double sombor_weight(double a, double b) { return std::hypot(a, b); }

/**
 * Sum over edges of weight(d(u), d(v)), accumulated in ascending (u, v) order
 * so results are bit-identical across runs. The weight must be symmetric.
 */
template <typename Weight>
double degree_pair_index(const Graph& g, Weight&& weight) {
  double total = 0.0;
  for (Vertex u = 0; u < g.vertex_count(); ++u) {
    const double du = g.degree(u);
    for (Vertex v : g.neighbors(u))
      if (u < v) total += weight(du, static_cast<double>(g.degree(v)));
  }
  return total;
}

inline double sombor(const Graph& g) {
  return degree_pair_index(g, [](double a, double b) { return sombor_weight(a, b); });
}

inline std::uint64_t zagreb_m1(const Graph& g) {
  std::uint64_t total = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    const std::uint64_t d = g.degree(v);
    total += d * d;
  }
  return total;
}

inline std::uint64_t zagreb_m2(const Graph& g) {
  std::uint64_t total = 0;
  for (const Edge& e : g.edges())
    total += static_cast<std::uint64_t>(g.degree(e.u)) * g.degree(e.v);
  return total;
}

// Sombor contribution of exactly the listed edges, with degrees taken from g.
inline double edge_subset_sombor(const Graph& g, std::span<const Edge> edges) {
  double total = 0.0;
  for (const Edge& e : edges) {
    if (!g.has_edge(e.u, e.v)) throw GraphError("edge " + to_string(e) + " is not in the graph");
    total += sombor_weight(g.degree(e.u), g.degree(e.v));
  }
  return total;
}

/**
 * Wiener index by one BFS per source, O(n·m). Sources are split into
 * contiguous blocks across `threads` workers; the per-block integer totals
 * are summed in block order. Disconnected graphs are rejected.
 */
inline std::uint64_t wiener(const Graph& g, unsigned threads = 0) {
  const std::size_t n = g.vertex_count();
  if (!is_connected(g)) throw GraphError("Wiener index requires a connected graph");
  if (n < 2) return 0;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n / 64 + 1));

  std::vector<std::uint64_t> partial(threads, 0);
  auto work = [&](unsigned block) {
    const std::size_t lo = n * block / threads, hi = n * (block + 1) / threads;
    std::vector<std::uint32_t> dist;
    std::vector<Vertex> queue;
    queue.reserve(n);
    std::uint64_t sum = 0;
    for (std::size_t s = lo; s < hi; ++s)
      sum += detail::bfs_into(g, static_cast<Vertex>(s), dist, queue).first;
    partial[block] = sum;
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned b = 0; b < threads; ++b) pool.emplace_back(work, b);
  }
  std::uint64_t total = 0;
  for (auto p : partial) total += p;
  return total / 2;
}

struct IndexReport {
  std::size_t n = 0;
  std::size_t m = 0;
  double sombor = 0.0;
  std::uint64_t zagreb_m1 = 0;
  std::uint64_t zagreb_m2 = 0;
  std::optional<std::uint64_t> wiener;  // empty for disconnected graphs
};

inline IndexReport compute_report(const Graph& g) {
  IndexReport r;
  r.n = g.vertex_count();
  r.m = g.edge_count();
  r.sombor = sombor(g);
  r.zagreb_m1 = zagreb_m1(g);
  r.zagreb_m2 = zagreb_m2(g);
  if (is_connected(g)) r.wiener = wiener(g);
  return r;
}

inline std::string format_fixed(double x, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
  return buf;
}

inline std::string csv_header(const IndexReport&) { return "n,m,sombor,wiener,m1,m2"; }

inline std::string csv_row(const IndexReport& r) {
  return std::to_string(r.n) + "," + std::to_string(r.m) + "," + format_fixed(r.sombor, 6) + "," +
         (r.wiener ? std::to_string(*r.wiener) : std::string()) + "," +
         std::to_string(r.zagreb_m1) + "," + std::to_string(r.zagreb_m2);
}

inline void to_json(nlohmann::json& j, const IndexReport& r) {
  j = {{"n", r.n},
       {"m", r.m},
       {"sombor", r.sombor},
       {"wiener", r.wiener ? nlohmann::json(*r.wiener) : nlohmann::json(nullptr)},
       {"m1", r.zagreb_m1},
       {"m2", r.zagreb_m2}};
}

}  // namespace sombor
