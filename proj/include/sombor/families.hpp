#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "sombor/errors.hpp"
#include "sombor/graph.hpp"

namespace sombor {

enum class Family {
  Path,
  Cycle,
  Complete,
  Empty,
  Star,
  MultilevelCaterpillar,
  AlternatingCaterpillar,
  ParityAugmentedPath,
  ParityAugmentedPathOffset,
  MultilevelParityTree,
  UnicyclicPendant,
};

inline constexpr std::array<std::pair<Family, std::string_view>, 11> kFamilyNames{{
    {Family::Path, "path"},
    {Family::Cycle, "cycle"},
    {Family::Complete, "complete"},
    {Family::Empty, "empty"},
    {Family::Star, "star"},
    {Family::MultilevelCaterpillar, "multilevel-caterpillar"},
    {Family::AlternatingCaterpillar, "alternating-caterpillar"},
    {Family::ParityAugmentedPath, "parity-augmented-path"},
    {Family::ParityAugmentedPathOffset, "parity-augmented-path-offset"},
    {Family::MultilevelParityTree, "multilevel-parity-tree"},
    {Family::UnicyclicPendant, "unicyclic-pendant"},
}};

inline std::string_view to_string(Family f) {
  for (auto [id, name] : kFamilyNames)
    if (id == f) return name;
  return "unknown";
}

inline Family family_from_string(std::string_view name) {
  for (auto [id, s] : kFamilyNames)
    if (s == name) return id;
  throw DomainError("unknown family \"" + std::string(name) + "\"");
}

// How path endpoints are treated. The idealized formulas give every spine
// vertex the interior degree; AsDescribed keeps the endpoint deficit of one,
// DegreeExact gives each endpoint one compensating leaf.
enum class RealizationMode { AsDescribed, DegreeExact };

inline std::string_view to_string(RealizationMode m) {
  return m == RealizationMode::AsDescribed ? "as-described" : "degree-exact";
}

inline RealizationMode mode_from_string(std::string_view s) {
  if (s == "as-described") return RealizationMode::AsDescribed;
  if (s == "degree-exact") return RealizationMode::DegreeExact;
  throw DomainError("unknown realization mode \"" + std::string(s) + "\"");
}

inline RealizationMode default_mode(Family f) {
  return f == Family::MultilevelCaterpillar ? RealizationMode::AsDescribed
                                            : RealizationMode::DegreeExact;
}

// Parity of the ancestor spine vertex, using 1-based spine labels v_1..v_n:
// 0-based spine index i is odd-indexed when i is even.
enum class SpineParity : std::uint8_t { NotApplicable, Odd, Even };

inline std::string_view to_string(SpineParity p) {
  switch (p) {
    case SpineParity::Odd: return "odd";
    case SpineParity::Even: return "even";
    default: return "na";
  }
}

// Structural vertices follow the family's level rule; padding vertices are
// leaves added only to reach a prescribed degree (compensating endpoint
// leaves, leaf children realizing "pendant of degree d").
enum class VertexRole : std::uint8_t { Structural, Padding };

struct LevelTag {
  std::uint32_t level = 0;
  SpineParity parity = SpineParity::NotApplicable;
  VertexRole role = VertexRole::Structural;

  friend bool operator==(const LevelTag&, const LevelTag&) = default;
};

struct Realization {
  Graph graph;
  std::vector<LevelTag> tags;
};

struct FamilyParams {
  std::int64_t n = 0;
  std::int64_t p = 0;
  std::int64_t k = 0;
  std::int64_t ell = 0;  // offset for the parity families
  std::int64_t t = 0;    // iteration depth, growth-based formulas only
  std::vector<std::int64_t> levels;

  friend bool operator==(const FamilyParams&, const FamilyParams&) = default;
};

struct FamilySpec {
  Family family = Family::Path;
  FamilyParams params;
  std::optional<RealizationMode> mode;

  RealizationMode effective_mode() const { return mode.value_or(default_mode(family)); }
};

// Default cap on realization size; families grow multiplicatively.
inline constexpr std::size_t kDefaultFamilyVertexCap = 5'000'000;

namespace detail {

struct ChildPlan {
  std::int64_t structural = 0;
  std::int64_t padding = 0;
};

/**
 * Level-order builder. The spine (path or cycle) is vertices 0..n-1; each
 * later level lists, for every parent in index order, its structural children
 * followed by its padding leaves. plan(spine_index_of_ancestor, tag, is_endpoint)
 * decides the child counts of every structural vertex.
 */
template <typename Plan>
Realization grow_levels(std::size_t spine_n, bool cyclic, bool with_parity, Plan&& plan,
                        std::size_t cap = kDefaultFamilyVertexCap) {
  std::vector<Edge> edges;
  std::vector<LevelTag> tags(spine_n);
  std::vector<std::size_t> ancestor(spine_n);
  for (std::size_t i = 0; i < spine_n; ++i) {
    tags[i].parity = with_parity ? (i % 2 == 0 ? SpineParity::Odd : SpineParity::Even)
                                 : SpineParity::NotApplicable;
    ancestor[i] = i;
    if (i + 1 < spine_n) edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(i + 1)});
  }
  if (cyclic && spine_n >= 3) edges.push_back({0, static_cast<Vertex>(spine_n - 1)});

  std::size_t level_begin = 0, level_end = spine_n;
  while (level_begin < level_end) {
    for (std::size_t parent = level_begin; parent < level_end; ++parent) {
      if (tags[parent].role == VertexRole::Padding) continue;
      const bool endpoint = tags[parent].level == 0 && !cyclic &&
                            (parent == 0 || parent + 1 == spine_n);
      const ChildPlan c = plan(ancestor[parent], tags[parent], endpoint);
      require(c.structural >= 0 && c.padding >= 0, "negative child count");
      if (tags.size() + static_cast<std::size_t>(c.structural + c.padding) > cap)
        throw DomainError("domain violation: realization exceeds " + std::to_string(cap) +
                          " vertices");
      for (std::int64_t j = 0; j < c.structural + c.padding; ++j) {
        const auto child = static_cast<Vertex>(tags.size());
        tags.push_back({tags[parent].level + 1, tags[parent].parity,
                        j < c.structural ? VertexRole::Structural : VertexRole::Padding});
        ancestor.push_back(ancestor[parent]);
        edges.push_back({static_cast<Vertex>(parent), child});
      }
    }
    level_begin = level_end;
    level_end = tags.size();
  }
  return {Graph::build(tags.size(), edges), std::move(tags)};
}

inline void require_levels_positive(const std::vector<std::int64_t>& levels) {
  for (std::size_t i = 0; i < levels.size(); ++i)
    require(levels[i] >= 1, "l" + std::to_string(i + 1) + " >= 1");
}

}  // namespace detail

inline Realization make_path(std::int64_t n) {
  detail::require(n >= 2, "n >= 2 for path families");
  return detail::grow_levels(static_cast<std::size_t>(n), false, false,
                             [](auto, const LevelTag&, bool) { return detail::ChildPlan{}; });
}

inline Realization make_cycle(std::int64_t n) {
  detail::require(n >= 3, "n >= 3 for cycle families");
  return detail::grow_levels(static_cast<std::size_t>(n), true, false,
                             [](auto, const LevelTag&, bool) { return detail::ChildPlan{}; });
}

inline Realization make_complete(std::int64_t n) {
  detail::require(n >= 1, "n >= 1 for the complete graph");
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) edges.push_back({u, v});
  return {Graph::build(static_cast<std::size_t>(n), edges),
          std::vector<LevelTag>(static_cast<std::size_t>(n))};
}

inline Realization make_empty(std::int64_t n) {
  detail::require(n >= 0, "n >= 0 for the empty graph");
  return {Graph::build(static_cast<std::size_t>(n), std::span<const Edge>{}),
          std::vector<LevelTag>(static_cast<std::size_t>(n))};
}

// Center 0 with n-1 leaves.
inline Realization make_star(std::int64_t n) {
  detail::require(n >= 1, "n >= 1 for the star");
  std::vector<Edge> edges;
  std::vector<LevelTag> tags(static_cast<std::size_t>(n));
  for (Vertex v = 1; v < n; ++v) {
    edges.push_back({0, v});
    tags[v].level = 1;
  }
  return {Graph::build(static_cast<std::size_t>(n), edges), std::move(tags)};
}

/**
 * Spine path P_n, p children per spine vertex, k children per level-1
 * vertex, and l_i children per vertex of level i+1 for i = 1..m. The last
 * generated level consists of leaves. DegreeExact adds one leaf to each
 * spine endpoint.
 */
inline Realization make_multilevel_caterpillar(std::int64_t n, std::int64_t p, std::int64_t k,
                                               const std::vector<std::int64_t>& levels,
                                               RealizationMode mode = RealizationMode::AsDescribed) {
  detail::require(n >= 2, "n >= 2 for path families");
  detail::require(p >= 0, "p >= 0");
  detail::require(k >= 1, "k >= 1");
  detail::require_levels_positive(levels);
  const std::size_t m = levels.size();
  return detail::grow_levels(
      static_cast<std::size_t>(n), false, false,
      [&](std::size_t, const LevelTag& t, bool endpoint) -> detail::ChildPlan {
        if (t.level == 0)
          return {p, endpoint && mode == RealizationMode::DegreeExact ? 1 : 0};
        if (t.level == 1) return {k, 0};
        if (t.level <= m + 1) return {levels[t.level - 2], 0};
        return {};
      });
}

// Odd-indexed spine vertices reach degree 2p, even-indexed 2p+k; leaves make
// up whatever the spine neighbors do not provide.
inline Realization make_alternating_caterpillar(std::int64_t n, std::int64_t p, std::int64_t k) {
  detail::require(n >= 2, "n >= 2 for path families");
  detail::require(p >= 1, "p >= 1");
  detail::require(k >= 1, "k >= 1");
  return detail::grow_levels(
      static_cast<std::size_t>(n), false, true,
      [&](std::size_t, const LevelTag& t, bool endpoint) -> detail::ChildPlan {
        if (t.level != 0) return {};
        const std::int64_t target = t.parity == SpineParity::Odd ? 2 * p : 2 * p + k;
        const std::int64_t spine_degree = endpoint ? 1 : 2;
        if (target < spine_degree)
          throw DomainError("domain violation: prescribed degree " + std::to_string(target) +
                            " below spine degree " + std::to_string(spine_degree));
        return {0, target - spine_degree};
      });
}

/**
 * Spine degree 2+k, k level-1 pendants per spine vertex. Pendants under
 * odd-indexed spine vertices get k-1 leaf children (degree k), those under
 * even-indexed ones get k+offset-1 (degree k+offset). offset = 1 is the
 * basic parity construction; offset > 2 is the heterogeneous one.
 */
inline Realization make_parity_augmented_path(std::int64_t n, std::int64_t k, std::int64_t offset,
                                              RealizationMode mode = RealizationMode::DegreeExact) {
  detail::require(n >= 2, "n >= 2 for path families");
  detail::require(k > 1, "k > 1");
  detail::require(offset == 1 || offset > 2, "offset == 1 or offset (l) > 2");
  return detail::grow_levels(
      static_cast<std::size_t>(n), false, true,
      [&](std::size_t, const LevelTag& t, bool endpoint) -> detail::ChildPlan {
        if (t.level == 0) return {k, endpoint && mode == RealizationMode::DegreeExact ? 1 : 0};
        if (t.level == 1) {
          const std::int64_t target = t.parity == SpineParity::Odd ? k : k + offset;
          return {0, target - 1};
        }
        return {};
      });
}

/**
 * Iterated parity construction: every structural vertex at level i-1 has
 * exactly k children at level i (i = 1..m). Level-i descendants of
 * odd-indexed spine vertices target degree l_i, descendants of even-indexed
 * ones target l_i + l_1; leaves pad each vertex up to its target.
 */
inline Realization make_multilevel_parity_tree(std::int64_t n, std::int64_t k,
                                               const std::vector<std::int64_t>& levels,
                                               RealizationMode mode = RealizationMode::DegreeExact) {
  detail::require(n >= 2, "n >= 2 for path families");
  detail::require(k > 1, "k > 1");
  detail::require(!levels.empty(), "m >= 1");
  detail::require(levels[0] > 2, "l1 > 2");
  detail::require_levels_positive(levels);
  const std::size_t m = levels.size();
  auto target = [&](std::size_t level, SpineParity parity) {
    const std::int64_t base = levels[level - 1];
    return parity == SpineParity::Odd ? base : base + levels[0];
  };
  for (std::size_t i = 1; i <= m; ++i) {
    const std::int64_t minimum = 1 + (i < m ? k : 0);
    for (auto parity : {SpineParity::Odd, SpineParity::Even})
      if (target(i, parity) < minimum)
        throw DomainError("domain violation: level-" + std::to_string(i) + " " +
                          std::string(to_string(parity)) + " target degree " +
                          std::to_string(target(i, parity)) +
                          " below structural minimum " + std::to_string(minimum) +
                          " (parent edge + k children)");
  }
  return detail::grow_levels(
      static_cast<std::size_t>(n), false, true,
      [&](std::size_t, const LevelTag& t, bool endpoint) -> detail::ChildPlan {
        if (t.level == 0) return {k, endpoint && mode == RealizationMode::DegreeExact ? 1 : 0};
        if (t.level > m) return {};
        const std::int64_t structural = t.level < m ? k : 0;
        return {structural, target(t.level, t.parity) - 1 - structural};
      });
}

// Cycle C_n with k pendant leaves per cycle vertex.
inline Realization make_unicyclic_pendant(std::int64_t n, std::int64_t k) {
  detail::require(n >= 3, "n >= 3 for cycle families");
  detail::require(k >= 1, "k >= 1");
  return detail::grow_levels(static_cast<std::size_t>(n), true, false,
                             [&](std::size_t, const LevelTag& t, bool) -> detail::ChildPlan {
                               return {t.level == 0 ? k : 0, 0};
                             });
}

inline Realization make(const FamilySpec& spec) {
  const auto& q = spec.params;
  const auto mode = spec.effective_mode();
  switch (spec.family) {
    case Family::Path: return make_path(q.n);
    case Family::Cycle: return make_cycle(q.n);
    case Family::Complete: return make_complete(q.n);
    case Family::Empty: return make_empty(q.n);
    case Family::Star: return make_star(q.n);
    case Family::MultilevelCaterpillar:
      return make_multilevel_caterpillar(q.n, q.p, q.k, q.levels, mode);
    case Family::AlternatingCaterpillar: return make_alternating_caterpillar(q.n, q.p, q.k);
    case Family::ParityAugmentedPath: return make_parity_augmented_path(q.n, q.k, 1, mode);
    case Family::ParityAugmentedPathOffset:
      detail::require(q.ell > 2, "l > 2");
      return make_parity_augmented_path(q.n, q.k, q.ell, mode);
    case Family::MultilevelParityTree: return make_multilevel_parity_tree(q.n, q.k, q.levels, mode);
    case Family::UnicyclicPendant: return make_unicyclic_pendant(q.n, q.k);
  }
  throw DomainError("unknown family");
}

// Parameter names each family reads; "levels" stands for l1..lm.
inline std::vector<std::string_view> family_param_names(Family f) {
  switch (f) {
    case Family::MultilevelCaterpillar: return {"n", "p", "k", "levels"};
    case Family::AlternatingCaterpillar: return {"n", "p", "k"};
    case Family::ParityAugmentedPath: return {"n", "k"};
    case Family::ParityAugmentedPathOffset: return {"n", "k", "ell"};
    case Family::MultilevelParityTree: return {"n", "k", "levels"};
    case Family::UnicyclicPendant: return {"n", "k"};
    default: return {"n"};
  }
}

// Ordered name -> value map of the parameters a family reads; levels expand
// to l1..lm.
inline std::map<std::string, std::int64_t> param_map(const FamilyParams& q,
                                                     const std::vector<std::string_view>& names) {
  std::map<std::string, std::int64_t> out;
  for (auto name : names) {
    if (name == "n") out["n"] = q.n;
    else if (name == "p") out["p"] = q.p;
    else if (name == "k") out["k"] = q.k;
    else if (name == "ell") out["ell"] = q.ell;
    else if (name == "t") out["t"] = q.t;
    else if (name == "levels")
      for (std::size_t i = 0; i < q.levels.size(); ++i) out["l" + std::to_string(i + 1)] = q.levels[i];
  }
  return out;
}

namespace detail {
inline bool is_level_key(const std::string& name) {
  return name.size() > 1 && name[0] == 'l' &&
         name.find_first_not_of("0123456789", 1) == std::string::npos;
}
}  // namespace detail

inline FamilyParams params_from_map(const std::map<std::string, std::int64_t>& in) {
  FamilyParams q;
  std::size_t level_keys = 0;
  for (const auto& [name, value] : in) {
    if (name == "n") q.n = value;
    else if (name == "p") q.p = value;
    else if (name == "k") q.k = value;
    else if (name == "ell") q.ell = value;
    else if (name == "t") q.t = value;
    else if (detail::is_level_key(name)) ++level_keys;
    else throw DomainError("unknown parameter \"" + name + "\"");
  }
  for (std::size_t i = 1; i <= level_keys; ++i) {
    auto it = in.find("l" + std::to_string(i));
    if (it == in.end()) throw DomainError("level keys must be contiguous l1..lm");
    q.levels.push_back(it->second);
  }
  return q;
}

inline void to_json(nlohmann::json& j, const FamilySpec& s) {
  j = {{"family", std::string(to_string(s.family))},
       {"params", param_map(s.params, family_param_names(s.family))}};
  if (s.mode) j["mode"] = std::string(to_string(*s.mode));
}

inline void from_json(const nlohmann::json& j, FamilySpec& s) {
  s.family = family_from_string(j.at("family").get<std::string>());
  s.params = params_from_map(j.at("params").get<std::map<std::string, std::int64_t>>());
  if (j.contains("mode")) s.mode = mode_from_string(j["mode"].get<std::string>());
  else s.mode.reset();
}

}  // namespace sombor
