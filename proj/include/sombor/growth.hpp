#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "sombor/closed_forms.hpp"
#include "sombor/errors.hpp"
#include "sombor/graph.hpp"
#include "sombor/indices.hpp"

namespace sombor {

/**
 * Attaches k new leaves to every vertex. Original vertices keep their
 * indices; the leaves of vertex v occupy n + v*k .. n + v*k + k - 1.
 */
inline Graph pendant_extend(const Graph& g, std::int64_t k) {
  detail::require(k >= 1, "k >= 1");
  const std::size_t n = g.vertex_count();
  const auto kk = static_cast<std::size_t>(k);
  std::vector<Edge> edges = g.edges();
  edges.reserve(edges.size() + n * kk);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t j = 0; j < kk; ++j)
      edges.push_back({static_cast<Vertex>(v), static_cast<Vertex>(n + v * kk + j)});
  return Graph::build(n * (1 + kk), edges);
}

inline Graph pendant_extend(const Graph& g, std::int64_t k, std::int64_t times) {
  detail::require(times >= 0, "t >= 0");
  Graph out = g;
  for (std::int64_t i = 0; i < times; ++i) out = pendant_extend(out, k);
  return out;
}

struct GrowthRow {
  std::int64_t t = 0;
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  double so = 0.0;
  std::uint64_t wiener = 0;
  std::uint64_t m1 = 0;
  std::uint64_t m2 = 0;
  double so_recursion = 0.0;  // SO predicted from the previous snapshot
};

struct GrowthSeries {
  std::string seed;  // e.g. "path:4"
  std::int64_t k = 0;
  std::vector<GrowthRow> rows;
  std::string note;
};

inline constexpr std::size_t kDefaultSeriesVertexCap = 100'000;

// Cap from SOMBOR_MAX_VERTICES when set and valid, else the default.
inline std::size_t series_vertex_cap_from_env() {
  if (const char* env = std::getenv("SOMBOR_MAX_VERTICES")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultSeriesVertexCap;
}

// Relative agreement required between the recursion and direct recomputation.
inline constexpr double kRecursionTolerance = 1e-6;

/**
 * Rows t = 1..T of iterated pendant extension from `seed`, each with all four
 * indices computed on the graph. SO is also predicted from the previous
 * snapshot by recursion_step; a disagreement beyond kRecursionTolerance
 * throws std::logic_error.
 */
inline GrowthSeries run_series(const Graph& seed, std::int64_t k, std::int64_t max_t,
                               std::string seed_label = "graph",
                               std::size_t vertex_cap = kDefaultSeriesVertexCap) {
  detail::require(k >= 1, "k >= 1");
  detail::require(max_t >= 1, "T >= 1");
  if (!is_connected(seed)) throw DomainError("domain violation: series seed must be connected");
  double projected = static_cast<double>(seed.vertex_count());
  for (std::int64_t t = 0; t < max_t; ++t) projected *= static_cast<double>(1 + k);
  if (projected > static_cast<double>(vertex_cap))
    throw DomainError("domain violation: n_T = " + format_fixed(projected, 0) +
                      " exceeds the vertex cap " + std::to_string(vertex_cap));

  GrowthSeries series{std::move(seed_label), k, {}, {}};
  Graph current = seed;
  for (std::int64_t t = 1; t <= max_t; ++t) {
    GrowthRow row;
    row.t = t;
    row.so_recursion = recursion_step(current, k);
    current = pendant_extend(current, k);
    row.n = current.vertex_count();
    row.m = current.edge_count();
    row.so = sombor(current);
    row.wiener = wiener(current);
    row.m1 = zagreb_m1(current);
    row.m2 = zagreb_m2(current);
    if (std::abs(row.so - row.so_recursion) > kRecursionTolerance * row.so)
      throw std::logic_error("recursion and direct Sombor disagree at t = " + std::to_string(t));
    series.rows.push_back(row);
  }
  return series;
}

// The published growth table does not name its seed. P_4 with k = 3 is the
// seed consistent with n_1 = n_0 (1 + k) = 16, and it reproduces every
// published row.
inline GrowthSeries table1_series(std::int64_t max_t = 6) {
  std::vector<Edge> path{{0, 1}, {1, 2}, {2, 3}};
  auto s = run_series(Graph::build(4, path), 3, max_t, "path:4");
  s.note = "seed P_4, k = 3 inferred from n_1 = n_0(1+k) = 16";
  return s;
}

enum class SeriesColumn { N, M, SO, W, M1, M2 };

inline SeriesColumn column_from_string(std::string_view s) {
  if (s == "n") return SeriesColumn::N;
  if (s == "m") return SeriesColumn::M;
  if (s == "SO") return SeriesColumn::SO;
  if (s == "W") return SeriesColumn::W;
  if (s == "M1") return SeriesColumn::M1;
  if (s == "M2") return SeriesColumn::M2;
  throw DomainError("unknown series column \"" + std::string(s) + "\"");
}

inline double column_value(const GrowthRow& r, SeriesColumn c) {
  switch (c) {
    case SeriesColumn::N: return static_cast<double>(r.n);
    case SeriesColumn::M: return static_cast<double>(r.m);
    case SeriesColumn::SO: return r.so;
    case SeriesColumn::W: return static_cast<double>(r.wiener);
    case SeriesColumn::M1: return static_cast<double>(r.m1);
    case SeriesColumn::M2: return static_cast<double>(r.m2);
  }
  return 0.0;
}

inline std::vector<double> column_values(const GrowthSeries& s, SeriesColumn c) {
  std::vector<double> out;
  out.reserve(s.rows.size());
  for (const auto& r : s.rows) out.push_back(column_value(r, c));
  return out;
}

// value[i+1] / value[i] for each consecutive pair.
inline std::vector<double> successive_ratios(std::span<const double> values) {
  detail::require(values.size() >= 2, "at least two values");
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    if (values[i] == 0.0) throw DomainError("domain violation: zero denominator in ratio");
    out.push_back(values[i + 1] / values[i]);
  }
  return out;
}

inline std::vector<double> successive_ratios(const GrowthSeries& s, SeriesColumn c) {
  const auto values = column_values(s, c);
  return successive_ratios(values);
}

enum class SeriesPrecision { Table1, Precise };

inline std::string to_csv(const GrowthSeries& s, SeriesPrecision precision) {
  const int decimals = precision == SeriesPrecision::Table1 ? 1 : 6;
  std::string out = "t,n,m,SO,W,M1,M2\n";
  for (const auto& r : s.rows) {
    out += std::to_string(r.t) + "," + std::to_string(r.n) + "," + std::to_string(r.m) + "," +
           format_fixed(r.so, decimals) + "," + std::to_string(r.wiener) + "," +
           std::to_string(r.m1) + "," + std::to_string(r.m2) + "\n";
  }
  return out;
}

inline void to_json(nlohmann::json& j, const GrowthSeries& s) {
  j = {{"seed", s.seed}, {"k", s.k}, {"rows", nlohmann::json::array()}};
  if (!s.note.empty()) j["note"] = s.note;
  for (const auto& r : s.rows)
    j["rows"].push_back({{"t", r.t},
                         {"n", r.n},
                         {"m", r.m},
                         {"SO", r.so},
                         {"W", r.wiener},
                         {"M1", r.m1},
                         {"M2", r.m2}});
}

}  // namespace sombor
