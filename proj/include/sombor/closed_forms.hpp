#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "sombor/errors.hpp"
#include "sombor/graph.hpp"
#include "sombor/indices.hpp"

namespace sombor {

enum class FormulaId {
  SoPath,
  SoCycle,
  SoComplete,
  MultilevelCaterpillar,
  AlternatingPath,
  AlternatingPathGeneral,
  ParityAugmented,
  ParityAugmentedOffset,
  MultilevelParity,
  UnicyclicPendant,
  RecursionStep,
  AsymptoticLeading,
  BoundCycleLower,
  BoundUnicyclicLower,
  BoundUnicyclicUpper,
  BoundZagrebUpper,
};

inline constexpr std::array<std::pair<FormulaId, std::string_view>, 16> kFormulaNames{{
    {FormulaId::SoPath, "so-path"},
    {FormulaId::SoCycle, "so-cycle"},
    {FormulaId::SoComplete, "so-complete"},
    {FormulaId::MultilevelCaterpillar, "multilevel-caterpillar"},
    {FormulaId::AlternatingPath, "alternating-path"},
    {FormulaId::AlternatingPathGeneral, "alternating-path-general"},
    {FormulaId::ParityAugmented, "parity-augmented"},
    {FormulaId::ParityAugmentedOffset, "parity-augmented-offset"},
    {FormulaId::MultilevelParity, "multilevel-parity"},
    {FormulaId::UnicyclicPendant, "unicyclic-pendant"},
    {FormulaId::RecursionStep, "recursion-step"},
    {FormulaId::AsymptoticLeading, "asymptotic-leading"},
    {FormulaId::BoundCycleLower, "bound-cycle-lower"},
    {FormulaId::BoundUnicyclicLower, "bound-unicyclic-lower"},
    {FormulaId::BoundUnicyclicUpper, "bound-unicyclic-upper"},
    {FormulaId::BoundZagrebUpper, "bound-zagreb-upper"},
}};

inline std::string_view to_string(FormulaId f) {
  for (auto [id, name] : kFormulaNames)
    if (id == f) return name;
  return "unknown";
}

inline FormulaId formula_from_string(std::string_view name) {
  for (auto [id, s] : kFormulaNames)
    if (s == name) return id;
  throw DomainError("unknown formula \"" + std::string(name) + "\"");
}

namespace detail {

inline constexpr std::int64_t kExactIntegerLimit = std::int64_t{1} << 53;

// Multiplies edge-count factors, refusing products that leave the range where
// doubles represent every integer.
inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out) || out > kExactIntegerLimit || out < -kExactIntegerLimit)
    throw DomainError("domain violation: edge-count product exceeds 2^53");
  return out;
}

inline double hyp(double a, double b) { return sombor_weight(a, b); }

inline std::int64_t floor_half(std::int64_t n) { return n / 2; }
inline std::int64_t ceil_half(std::int64_t n) { return (n + 1) / 2; }

}  // namespace detail

inline double so_path(std::int64_t n) {
  detail::require(n >= 2, "n >= 2");
  if (n == 2) return std::numbers::sqrt2;
  return 2.0 * std::sqrt(5.0) + 2.0 * static_cast<double>(n - 3) * std::numbers::sqrt2;
}

inline double so_cycle(std::int64_t n) {
  detail::require(n >= 3, "n >= 3");
  return 2.0 * std::numbers::sqrt2 * static_cast<double>(n);
}

inline double so_complete(std::int64_t n) {
  detail::require(n >= 1, "n >= 1");
  const double nn = static_cast<double>(n);
  return nn * (nn - 1.0) / 2.0 * (nn - 1.0) * std::numbers::sqrt2;
}

/**
 * Multi-level caterpillar: spine path on n vertices of degree p+2, p
 * level-1 vertices per spine vertex (degree k+1), k level-2 children each
 * (degree l_1+1), then l_i children per level-(i+1) vertex, ending in leaves.
 * With m = 0 the level-2 vertices are the leaves.
 */
inline double so_multilevel_caterpillar(std::int64_t n, std::int64_t p, std::int64_t k,
                                        std::span<const std::int64_t> levels) {
  detail::require(n >= 2, "n >= 2");
  detail::require(p >= 0, "p >= 0");
  detail::require(k >= 1, "k >= 1");
  for (auto l : levels) detail::require(l >= 1, "l_i >= 1");

  // degree[j] is the degree of a level-j vertex; the final entry is the leaf.
  std::vector<double> degree{static_cast<double>(p + 2), static_cast<double>(k + 1)};
  for (auto l : levels) degree.push_back(static_cast<double>(l + 1));
  degree.push_back(1.0);

  double total = static_cast<double>(n - 1) * std::numbers::sqrt2 * static_cast<double>(p + 2);
  std::int64_t count = detail::checked_mul(n, p);  // edges between level j and j+1
  for (std::size_t j = 0; j + 1 < degree.size(); ++j) {
    total += static_cast<double>(count) * detail::hyp(degree[j], degree[j + 1]);
    if (j + 2 < degree.size()) count = detail::checked_mul(count, j == 0 ? k : levels[j - 1]);
  }
  return total;
}

inline double so_alternating_path(std::int64_t n, std::int64_t p) {
  detail::require(n >= 2, "n >= 2");
  detail::require(p >= 1, "p >= 1");
  const double pp = static_cast<double>(p);
  return static_cast<double>(n - 1) * std::sqrt(8.0 * pp * pp + 4.0 * pp + 1.0);
}

inline double so_alternating_path_general(std::int64_t n, std::int64_t p, std::int64_t k) {
  detail::require(n >= 2, "n >= 2");
  detail::require(p >= 1, "p >= 1");
  detail::require(k >= 1, "k >= 1");
  const double pp = static_cast<double>(p), kk = static_cast<double>(k);
  return static_cast<double>(n - 1) * std::sqrt(8.0 * pp * pp + 4.0 * pp * kk + kk * kk);
}

// The three one-level parity terms: spine edges, pendants under odd-indexed
// spine vertices, pendants under even-indexed spine vertices.
struct ParityTerms {
  double spine = 0.0;
  double odd = 0.0;
  double even = 0.0;

  double total() const { return spine + odd + even; }
};

inline ParityTerms parity_terms(std::int64_t n, std::int64_t k, std::int64_t offset) {
  detail::require(n >= 2, "n >= 2");
  detail::require(k > 1, "k > 1");
  detail::require(offset >= 1, "l >= 1");
  const double s = static_cast<double>(2 + k), kk = static_cast<double>(k);
  return {static_cast<double>(n - 1) * std::numbers::sqrt2 * s,
          static_cast<double>(detail::floor_half(n)) * kk * detail::hyp(s, kk),
          static_cast<double>(detail::ceil_half(n - 1)) * kk *
              detail::hyp(s, static_cast<double>(k + offset))};
}

inline double so_parity_augmented(std::int64_t n, std::int64_t k) {
  return parity_terms(n, k, 1).total();
}

// Offset l replaces the even-side pendant degree k+1 with k+l; at l = 1 it
// coincides with so_parity_augmented.
inline double so_parity_augmented_offset(std::int64_t n, std::int64_t k, std::int64_t ell) {
  return parity_terms(n, k, ell).total();
}

/**
 * Multi-level parity formula: the one-level parity terms with offset l_1,
 * plus for each level i = 2..m the odd-branch term k^i floor(n/2)
 * sqrt(l_{i-1}^2 + l_i^2) and the even-branch term k^i ceil((n-1)/2)
 * sqrt((l_{i-1}+l_1)^2 + l_i^2).
 */
inline double so_multilevel_parity(std::int64_t n, std::int64_t k,
                                   std::span<const std::int64_t> levels) {
  detail::require(!levels.empty(), "m >= 1");
  detail::require(levels[0] > 2, "l1 > 2");
  for (auto l : levels) detail::require(l >= 1, "l_i >= 1");
  double total = parity_terms(n, k, levels[0]).total();
  const double odd_count = static_cast<double>(detail::floor_half(n));
  const double even_count = static_cast<double>(detail::ceil_half(n - 1));
  const double l1 = static_cast<double>(levels[0]);
  std::int64_t k_pow = k;
  for (std::size_t i = 1; i < levels.size(); ++i) {
    k_pow = detail::checked_mul(k_pow, k);
    const double prev = static_cast<double>(levels[i - 1]), cur = static_cast<double>(levels[i]);
    total += static_cast<double>(k_pow) *
             (odd_count * detail::hyp(prev, cur) + even_count * detail::hyp(prev + l1, cur));
  }
  return total;
}

inline double so_unicyclic_pendant(std::int64_t n, std::int64_t k) {
  detail::require(n >= 3, "n >= 3");
  detail::require(k >= 1, "k >= 1");
  const double s = static_cast<double>(2 + k), nn = static_cast<double>(n);
  return nn * std::sqrt(2.0 * s * s) + nn * static_cast<double>(k) * std::sqrt(s * s + 1.0);
}

/**
 * Exact Sombor index of the graph obtained by attaching k leaves to every
 * vertex: every old edge (a, b) becomes (a+k, b+k) and each vertex of degree d
 * gains k edges of weight sqrt(1 + (d+k)^2). Edge pairs are summed in the
 * order given, then vertices in index order.
 */
inline double recursion_step(std::span<const std::pair<std::uint32_t, std::uint32_t>> edge_degree_pairs,
                             const DegreeSequence& degrees, std::int64_t k) {
  detail::require(k >= 1, "k >= 1");
  const double kk = static_cast<double>(k);
  double edges = 0.0;
  for (auto [a, b] : edge_degree_pairs) edges += detail::hyp(a + kk, b + kk);
  double pendants = 0.0;
  for (auto d : degrees.degrees) pendants += detail::hyp(1.0, d + kk);
  return edges + kk * pendants;
}

inline double recursion_step(const Graph& g, std::int64_t k) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  pairs.reserve(g.edge_count());
  for (const Edge& e : g.edges()) pairs.emplace_back(g.degree(e.u), g.degree(e.v));
  return recursion_step(pairs, degree_sequence(g), k);
}

// Model value sqrt(2) m0 k^2 t^2 + k n0 t^2 for the contribution of the seed.
inline double asymptotic_leading(std::int64_t n0, std::int64_t m0, std::int64_t k, std::int64_t t) {
  detail::require(t >= 0, "t >= 0");
  const double tt = static_cast<double>(t) * static_cast<double>(t);
  const double kk = static_cast<double>(k);
  return std::numbers::sqrt2 * static_cast<double>(m0) * kk * kk * tt +
         kk * static_cast<double>(n0) * tt;
}

// Unicyclic bounds: (3/2)sqrt2 n <= SO <= (5/2)sqrt2 n (D-1) and
// 2 sqrt2 n <= SO <= sqrt2 M1.
struct BoundValues {
  double unicyclic_lower = 0.0;
  double unicyclic_upper = 0.0;
  double cycle_lower = 0.0;
  double zagreb_upper = 0.0;
};

inline BoundValues bound_values(std::int64_t n, std::int64_t max_degree, std::uint64_t m1) {
  detail::require(n >= 3, "n >= 3");
  detail::require(max_degree >= 2, "max degree >= 2");
  const double nn = static_cast<double>(n), r2 = std::numbers::sqrt2;
  return {1.5 * r2 * nn, 2.5 * r2 * nn * static_cast<double>(max_degree - 1), 2.0 * r2 * nn,
          r2 * static_cast<double>(m1)};
}

inline void to_json(nlohmann::json& j, const BoundValues& b) {
  j = {{"unicyclic_lower", b.unicyclic_lower},
       {"unicyclic_upper", b.unicyclic_upper},
       {"cycle_lower", b.cycle_lower},
       {"zagreb_upper", b.zagreb_upper}};
}

}  // namespace sombor
