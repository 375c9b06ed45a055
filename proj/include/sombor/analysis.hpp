#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "sombor/closed_forms.hpp"
#include "sombor/errors.hpp"
#include "sombor/graph.hpp"
#include "sombor/indices.hpp"

namespace sombor {

// ---------------------------------------------------------------------------
// Least-squares models

enum class FitModel { Poly2, Poly3, ExpGeo };

inline std::string_view to_string(FitModel m) {
  switch (m) {
    case FitModel::Poly2: return "poly2";
    case FitModel::Poly3: return "poly3";
    case FitModel::ExpGeo: return "expgeo";
  }
  return "unknown";
}

inline FitModel fit_model_from_string(std::string_view s) {
  if (s == "poly2") return FitModel::Poly2;
  if (s == "poly3") return FitModel::Poly3;
  if (s == "expgeo") return FitModel::ExpGeo;
  throw DomainError("unknown model \"" + std::string(s) + "\"");
}

struct FitPoint {
  double t = 0.0;
  double y = 0.0;
};

/**
 * Polynomial coefficients are stored highest power first: (a, b, c) means
 * a t^2 + b t + c. ExpGeo has one coefficient a in a * base^t * t^2.
 * residual_norm is the RMS residual; relative_residual divides it by the RMS
 * of the observations.
 */
struct FitResult {
  FitModel model = FitModel::Poly2;
  std::vector<double> coefficients;
  double base = 0.0;
  double residual_norm = 0.0;
  double relative_residual = 0.0;
};

inline double evaluate(const FitResult& f, double t) {
  if (f.model == FitModel::ExpGeo) return f.coefficients.at(0) * std::pow(f.base, t) * t * t;
  double y = 0.0;
  for (double c : f.coefficients) y = y * t + c;
  return y;
}

namespace detail {

inline void fill_residuals(FitResult& f, std::span<const FitPoint> points) {
  double ss_res = 0.0, ss_y = 0.0;
  for (const auto& pt : points) {
    const double r = pt.y - evaluate(f, pt.t);
    ss_res += r * r;
    ss_y += pt.y * pt.y;
  }
  const double count = static_cast<double>(points.size());
  f.residual_norm = std::sqrt(ss_res / count);
  f.relative_residual = ss_y > 0.0 ? std::sqrt(ss_res / ss_y) : 0.0;
}

// Solves a small dense system in place by Gaussian elimination with partial
// pivoting. Throws DomainError if the matrix is numerically singular.
inline std::vector<double> solve_dense(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  double scale = 0.0;
  for (const auto& row : a)
    for (double x : row) scale = std::max(scale, std::abs(x));
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    if (std::abs(a[pivot][col]) <= 1e-14 * scale)
      throw DomainError("domain violation: underdetermined least-squares system");
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
    x[i] = s / a[i][i];
  }
  return x;
}

}  // namespace detail

// Least-squares polynomial of degree 2 or 3 via the normal equations.
inline FitResult polyfit(std::span<const FitPoint> points, int degree) {
  detail::require(degree == 2 || degree == 3, "degree is 2 or 3");
  std::set<double> distinct;
  for (const auto& pt : points) distinct.insert(pt.t);
  if (distinct.size() < static_cast<std::size_t>(degree + 1))
    throw DomainError("domain violation: underdetermined fit, need " + std::to_string(degree + 1) +
                      " distinct t values");

  const auto terms = static_cast<std::size_t>(degree + 1);
  // Column j holds t^(degree - j) so the solution comes out highest power first.
  std::vector<std::vector<double>> normal(terms, std::vector<double>(terms, 0.0));
  std::vector<double> rhs(terms, 0.0);
  for (const auto& pt : points) {
    std::vector<double> row(terms);
    for (std::size_t j = 0; j < terms; ++j) row[j] = std::pow(pt.t, static_cast<double>(degree) - static_cast<double>(j));
    for (std::size_t i = 0; i < terms; ++i) {
      rhs[i] += row[i] * pt.y;
      for (std::size_t j = 0; j < terms; ++j) normal[i][j] += row[i] * row[j];
    }
  }
  FitResult f;
  f.model = degree == 2 ? FitModel::Poly2 : FitModel::Poly3;
  f.coefficients = detail::solve_dense(std::move(normal), std::move(rhs));
  detail::fill_residuals(f, points);
  return f;
}

// Best a in y ~ a * base^t * t^2: a = sum(w y) / sum(w^2), w = base^t t^2.
inline FitResult expfit_geo(std::span<const FitPoint> points, double base) {
  detail::require(!points.empty(), "at least one point");
  detail::require(base > 1.0, "base > 1");
  double wy = 0.0, ww = 0.0;
  for (const auto& pt : points) {
    const double w = std::pow(base, pt.t) * pt.t * pt.t;
    wy += w * pt.y;
    ww += w * w;
  }
  if (ww == 0.0) throw DomainError("domain violation: all model weights are zero");
  FitResult f;
  f.model = FitModel::ExpGeo;
  f.base = base;
  f.coefficients = {wy / ww};
  detail::fill_residuals(f, points);
  return f;
}

inline void to_json(nlohmann::json& j, const FitResult& f) {
  j = {{"model", std::string(to_string(f.model))},
       {"coefficients", f.coefficients},
       {"residual_norm", f.residual_norm},
       {"relative_residual", f.relative_residual}};
  if (f.model == FitModel::ExpGeo) j["base"] = f.base;
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration

// Unordered pairs of [0, n) in lexicographic order.
inline std::vector<Edge> all_pairs(std::size_t n) {
  std::vector<Edge> out;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) out.push_back({u, v});
  return out;
}

inline constexpr std::size_t kMaxAllGraphsOrder = 7;

/**
 * Calls fn(graph) for every labeled simple graph on n vertices, in order of
 * the edge-subset bitmask over all_pairs(n).
 */
template <typename Fn>
void for_each_graph(std::size_t n, Fn&& fn) {
  detail::require(n <= kMaxAllGraphsOrder, "n <= 7 for exhaustive enumeration");
  const auto pairs = all_pairs(n);
  const std::uint64_t total = std::uint64_t{1} << pairs.size();
  std::vector<Edge> edges;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    edges.clear();
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (mask >> i & 1U) edges.push_back(pairs[i]);
    fn(Graph::build(n, edges));
  }
}

inline constexpr std::size_t kMaxUnicyclicOrder = 8;

namespace detail {

struct DisjointSets {
  std::vector<std::uint32_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) {
    for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<std::uint32_t>(i);
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

}  // namespace detail

/**
 * All labeled connected graphs with n vertices and n edges (exactly one
 * cycle), from the n-subsets of all_pairs(n) in lexicographic order.
 */
inline std::vector<Graph> enumerate_unicyclic(std::size_t n, std::size_t cap = kMaxUnicyclicOrder) {
  detail::require(n >= 3 && n <= cap, "3 <= n <= " + std::to_string(cap));
  const auto pairs = all_pairs(n);
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  std::vector<Graph> out;
  std::vector<Edge> edges(n);
  while (true) {
    detail::DisjointSets sets(n);
    std::size_t merges = 0;
    for (std::size_t i = 0; i < n; ++i) {
      edges[i] = pairs[idx[i]];
      merges += sets.unite(edges[i].u, edges[i].v);
    }
    if (merges == n - 1) out.push_back(Graph::build(n, edges));
    // next n-combination of pairs.size() indices
    std::size_t i = n;
    while (i > 0 && idx[i - 1] == pairs.size() - n + (i - 1)) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < n; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

inline bool is_cycle_graph(const Graph& g) {
  if (g.vertex_count() < 3 || g.edge_count() != g.vertex_count()) return false;
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) != 2) return false;
  return is_connected(g);
}

// ---------------------------------------------------------------------------
// Bound checking

inline constexpr double kEqualityTolerance = 1e-9;

struct BoundRecord {
  std::size_t id = 0;
  std::size_t n = 0;
  std::uint32_t max_degree = 0;
  double so = 0.0;
  std::uint64_t m1 = 0;
  bool unicyclic = false;
  bool is_cycle = false;
  BoundValues bounds;
  // Unicyclic bounds apply only to unicyclic graphs.
  std::optional<bool> unicyclic_lower_ok;
  std::optional<bool> unicyclic_upper_ok;
  std::optional<bool> unicyclic_lower_equal;
  bool cycle_lower_ok = false;
  bool zagreb_upper_ok = false;
  bool cycle_lower_equal = false;
};

struct BoundReport {
  std::vector<BoundRecord> records;
  std::size_t unicyclic_lower_violations = 0;
  std::size_t unicyclic_upper_violations = 0;
  std::size_t cycle_lower_violations = 0;
  std::size_t zagreb_upper_violations = 0;
  std::vector<std::size_t> cycle_lower_witnesses;
  std::vector<std::size_t> unicyclic_lower_witnesses;
  std::vector<std::string> findings;
};

namespace detail {

inline bool approx_equal(double a, double b) {
  return std::abs(a - b) <= kEqualityTolerance * std::max(1.0, std::abs(b));
}

}  // namespace detail

inline BoundRecord evaluate_bounds(const Graph& g, std::size_t id) {
  if (!is_connected(g)) throw DomainError("domain violation: bound checks need connected graphs");
  detail::require(g.vertex_count() >= 3, "n >= 3");
  BoundRecord r;
  r.id = id;
  r.n = g.vertex_count();
  r.max_degree = degree_sequence(g).max();
  r.so = sombor(g);
  r.m1 = zagreb_m1(g);
  r.unicyclic = g.edge_count() == g.vertex_count();
  r.is_cycle = is_cycle_graph(g);
  r.bounds = bound_values(static_cast<std::int64_t>(r.n), std::max<std::int64_t>(r.max_degree, 2), r.m1);
  const double slack = kEqualityTolerance * std::max(1.0, r.so);
  if (r.unicyclic) {
    r.unicyclic_lower_ok = r.so >= r.bounds.unicyclic_lower - slack;
    r.unicyclic_upper_ok = r.so <= r.bounds.unicyclic_upper + slack;
    r.unicyclic_lower_equal = detail::approx_equal(r.so, r.bounds.unicyclic_lower);
  }
  r.cycle_lower_ok = r.so >= r.bounds.cycle_lower - slack;
  r.zagreb_upper_ok = r.so <= r.bounds.zagreb_upper + slack;
  r.cycle_lower_equal = detail::approx_equal(r.so, r.bounds.cycle_lower);
  return r;
}

/**
 * Evaluates all four unicyclic bounds on each graph. Violations and
 * equality witnesses are report content. Findings note where the stated
 * equality conditions disagree with what the data shows.
 */
inline BoundReport check_bounds(std::span<const Graph> graphs) {
  BoundReport rep;
  rep.records.reserve(graphs.size());
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    auto r = evaluate_bounds(graphs[i], i);
    if (r.unicyclic_lower_ok == false) ++rep.unicyclic_lower_violations;
    if (r.unicyclic_upper_ok == false) ++rep.unicyclic_upper_violations;
    if (!r.cycle_lower_ok) ++rep.cycle_lower_violations;
    if (!r.zagreb_upper_ok) ++rep.zagreb_upper_violations;
    if (r.cycle_lower_equal) rep.cycle_lower_witnesses.push_back(i);
    if (r.unicyclic_lower_equal == true) rep.unicyclic_lower_witnesses.push_back(i);
    rep.records.push_back(r);
  }
  std::size_t cycles = 0;
  for (const auto& r : rep.records) cycles += r.is_cycle;
  if (cycles > 0 && rep.unicyclic_lower_witnesses.empty())
    rep.findings.push_back("(3/2)sqrt2 n is never attained: " + std::to_string(cycles) +
                           " cycle(s) have SO = 2 sqrt2 n, strictly above it");
  for (auto id : rep.cycle_lower_witnesses)
    if (!rep.records[id].is_cycle)
      rep.findings.push_back("graph " + std::to_string(id) + " attains 2 sqrt2 n but is not a cycle");
  if (rep.unicyclic_upper_violations > 0)
    rep.findings.push_back(std::to_string(rep.unicyclic_upper_violations) +
                           " violation(s) of (5/2)sqrt2 n (D-1)");
  if (rep.zagreb_upper_violations > 0 || rep.cycle_lower_violations > 0)
    rep.findings.push_back("2 sqrt2 n <= SO <= sqrt2 M1 violated on " +
                           std::to_string(rep.zagreb_upper_violations + rep.cycle_lower_violations) +
                           " graph(s)");
  return rep;
}

// Recomputes every flag and tally from the stored values.
inline bool is_consistent(const BoundReport& rep) {
  std::size_t ul = 0, uu = 0, cl = 0, zu = 0;
  std::vector<std::size_t> witnesses;
  for (const auto& r : rep.records) {
    const double slack = kEqualityTolerance * std::max(1.0, r.so);
    if (r.unicyclic) {
      if (!r.unicyclic_lower_ok || !r.unicyclic_upper_ok) return false;
      if (*r.unicyclic_lower_ok != (r.so >= r.bounds.unicyclic_lower - slack)) return false;
      if (*r.unicyclic_upper_ok != (r.so <= r.bounds.unicyclic_upper + slack)) return false;
      ul += !*r.unicyclic_lower_ok;
      uu += !*r.unicyclic_upper_ok;
    }
    if (r.cycle_lower_ok != (r.so >= r.bounds.cycle_lower - slack)) return false;
    if (r.zagreb_upper_ok != (r.so <= r.bounds.zagreb_upper + slack)) return false;
    cl += !r.cycle_lower_ok;
    zu += !r.zagreb_upper_ok;
    if (r.cycle_lower_equal) witnesses.push_back(r.id);
  }
  return ul == rep.unicyclic_lower_violations && uu == rep.unicyclic_upper_violations &&
         cl == rep.cycle_lower_violations && zu == rep.zagreb_upper_violations &&
         witnesses == rep.cycle_lower_witnesses;
}

inline void to_json(nlohmann::json& j, const BoundRecord& r) {
  auto opt = [](const std::optional<bool>& b) { return b ? nlohmann::json(*b) : nlohmann::json(nullptr); };
  j = {{"id", r.id},
       {"n", r.n},
       {"max_degree", r.max_degree},
       {"so", r.so},
       {"m1", r.m1},
       {"unicyclic", r.unicyclic},
       {"is_cycle", r.is_cycle},
       {"bounds", r.bounds},
       {"unicyclic_lower_ok", opt(r.unicyclic_lower_ok)},
       {"unicyclic_upper_ok", opt(r.unicyclic_upper_ok)},
       {"cycle_lower_ok", r.cycle_lower_ok},
       {"zagreb_upper_ok", r.zagreb_upper_ok},
       {"cycle_lower_equal", r.cycle_lower_equal}};
}

inline void to_json(nlohmann::json& j, const BoundReport& rep) {
  j = {{"records", rep.records},
       {"summary",
        {{"graphs", rep.records.size()},
         {"unicyclic_lower_violations", rep.unicyclic_lower_violations},
         {"unicyclic_upper_violations", rep.unicyclic_upper_violations},
         {"cycle_lower_violations", rep.cycle_lower_violations},
         {"zagreb_upper_violations", rep.zagreb_upper_violations},
         {"cycle_lower_witnesses", rep.cycle_lower_witnesses},
         {"unicyclic_lower_witnesses", rep.unicyclic_lower_witnesses}}},
       {"findings", rep.findings}};
}

inline std::string to_csv(const BoundReport& rep) {
  auto flag = [](const std::optional<bool>& b) { return b ? std::string(*b ? "1" : "0") : std::string(); };
  std::string out =
      "id,n,max_degree,so,m1,unicyclic_lower,unicyclic_upper,cycle_lower,zagreb_upper,"
      "unicyclic_lower_ok,unicyclic_upper_ok,cycle_lower_ok,zagreb_upper_ok,cycle_lower_equal,is_cycle\n";
  for (const auto& r : rep.records) {
    out += std::to_string(r.id) + "," + std::to_string(r.n) + "," + std::to_string(r.max_degree) + "," +
           format_fixed(r.so, 6) + "," + std::to_string(r.m1) + "," +
           format_fixed(r.bounds.unicyclic_lower, 6) + "," + format_fixed(r.bounds.unicyclic_upper, 6) +
           "," + format_fixed(r.bounds.cycle_lower, 6) + "," + format_fixed(r.bounds.zagreb_upper, 6) +
           "," + flag(r.unicyclic_lower_ok) + "," + flag(r.unicyclic_upper_ok) + "," +
           (r.cycle_lower_ok ? "1" : "0") + "," + (r.zagreb_upper_ok ? "1" : "0") + "," +
           (r.cycle_lower_equal ? "1" : "0") + "," + (r.is_cycle ? "1" : "0") + "\n";
  }
  return out;
}

}  // namespace sombor
