#include <gtest/gtest.h>

#include <numeric>

#include "sombor/closed_forms.hpp"
#include "sombor/families.hpp"
#include "sombor/indices.hpp"
#include "support/oracles.hpp"

using namespace sombor;

namespace {

std::vector<std::uint32_t> spine_degrees(const Realization& r, std::size_t n) {
  std::vector<std::uint32_t> d;
  for (Vertex v = 0; v < n; ++v) d.push_back(r.graph.degree(v));
  return d;
}

std::size_t count_level(const Realization& r, std::uint32_t level, bool structural_only = false) {
  return static_cast<std::size_t>(std::count_if(r.tags.begin(), r.tags.end(), [&](const LevelTag& t) {
    return t.level == level && (!structural_only || t.role == VertexRole::Structural);
  }));
}

void expect_valid(const Realization& r) {
  ASSERT_EQ(r.tags.size(), r.graph.vertex_count());
  ASSERT_TRUE(is_connected(r.graph));
  for (auto e : r.graph.edges()) ASSERT_TRUE(r.graph.has_edge(e.v, e.u));
}

}  // namespace

TEST(Make, Dispatch) {
  EXPECT_EQ(make({Family::Path, {.n = 4}}).graph, make_path(4).graph);
  auto tri = make({Family::UnicyclicPendant, {.n = 3, .k = 1}});
  EXPECT_EQ(tri.graph.vertex_count(), 6u);
  EXPECT_EQ(tri.graph.edge_count(), 6u);
  auto smallest = make({Family::MultilevelCaterpillar, {.n = 2, .p = 1, .k = 1}});
  EXPECT_EQ(spine_degrees(smallest, 2), (std::vector<std::uint32_t>{2, 2}));
  EXPECT_EQ(count_level(smallest, 1), 2u);
  EXPECT_EQ(count_level(smallest, 2), 2u);
  EXPECT_EQ(smallest.graph.edge_count(), 5u);
}

TEST(Make, SpineFirstThenLevelOrder) {
  auto r = make_multilevel_caterpillar(3, 2, 2, {});
  for (Vertex v = 0; v < 3; ++v) EXPECT_EQ(r.tags[v].level, 0u);
  for (std::size_t v = 1; v < r.tags.size(); ++v) EXPECT_LE(r.tags[v - 1].level, r.tags[v].level);
  // children of spine vertex 0 come first at level 1
  EXPECT_TRUE(r.graph.has_edge(0, 3));
  EXPECT_TRUE(r.graph.has_edge(0, 4));
  EXPECT_TRUE(r.graph.has_edge(1, 5));
}

TEST(Make, RejectsDomainViolationsNamingTheConstraint) {
  try {
    make({Family::Cycle, {.n = 2}});
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("n >= 3"), std::string::npos);
  }
  EXPECT_THROW(make_multilevel_caterpillar(2, -1, 1, {}), DomainError);
  EXPECT_THROW(make_multilevel_caterpillar(2, 1, 0, {}), DomainError);
  EXPECT_THROW(make_multilevel_caterpillar(2, 1, 1, {2, 0}), DomainError);
  EXPECT_THROW(make_parity_augmented_path(2, 1, 1), DomainError);
  EXPECT_THROW(make_parity_augmented_path(2, 2, 2), DomainError);
  EXPECT_THROW(make({Family::ParityAugmentedPathOffset, {.n = 2, .k = 2, .ell = 1}}), DomainError);
  EXPECT_THROW(make_multilevel_parity_tree(2, 2, {2}), DomainError);
  EXPECT_THROW(make_multilevel_parity_tree(2, 2, {}), DomainError);
  EXPECT_THROW(make_unicyclic_pendant(3, 0), DomainError);
  EXPECT_THROW(make_alternating_caterpillar(2, 0, 1), DomainError);
}

TEST(MultilevelCaterpillar, Examples) {
  auto a = make_multilevel_caterpillar(3, 1, 1, {});
  EXPECT_EQ(a.graph.vertex_count(), 9u);
  EXPECT_EQ(a.graph.edge_count(), 8u);
  EXPECT_EQ(make_multilevel_caterpillar(2, 2, 1, {2}).graph.edge_count(), 17u);
  EXPECT_EQ(make_multilevel_caterpillar(2, 0, 1, {}).graph, make_path(2).graph);
}

TEST(MultilevelCaterpillar, CountsMatchLevelRuleOverGrid) {
  for (std::int64_t n = 2; n <= 6; ++n)
    for (std::int64_t p = 0; p <= 3; ++p)
      for (std::int64_t k = 1; k <= 3; ++k)
        for (std::size_t m = 0; m <= 2; ++m) {
          std::vector<std::int64_t> levels(m, 1);
          do {
            for (auto mode : {RealizationMode::AsDescribed, RealizationMode::DegreeExact}) {
              auto r = make_multilevel_caterpillar(n, p, k, levels, mode);
              expect_valid(r);
              std::int64_t expected = (n - 1) + n * p + (p > 0 ? n * p * k : 0), layer = n * p * k;
              for (auto l : levels) expected += (layer *= l);
              if (p == 0) expected = n - 1;
              if (mode == RealizationMode::DegreeExact) expected += 2;
              ASSERT_EQ(static_cast<std::int64_t>(r.graph.edge_count()), expected);
              ASSERT_EQ(r.graph.vertex_count(), r.graph.edge_count() + 1);
            }
            std::size_t i = levels.size();
            while (i > 0 && levels[i - 1] == 4) levels[--i] = 1;
            if (i == 0) break;
            ++levels[i - 1];
          } while (true);
        }
}

TEST(AlternatingCaterpillar, SpineDegrees) {
  EXPECT_EQ(spine_degrees(make_alternating_caterpillar(5, 2, 1), 5), (std::vector<std::uint32_t>{4, 5, 4, 5, 4}));
  EXPECT_EQ(spine_degrees(make_alternating_caterpillar(2, 1, 1), 2), (std::vector<std::uint32_t>{2, 3}));
  EXPECT_EQ(spine_degrees(make_alternating_caterpillar(4, 1, 2), 4), (std::vector<std::uint32_t>{2, 4, 2, 4}));
}

TEST(AlternatingCaterpillar, SpinePartialSumMatchesFormula) {
  for (std::int64_t n = 2; n <= 6; ++n)
    for (std::int64_t p = 1; p <= 3; ++p)
      for (std::int64_t k = 1; k <= 3; ++k) {
        auto r = make_alternating_caterpillar(n, p, k);
        expect_valid(r);
        std::vector<Edge> spine;
        for (Vertex v = 0; v + 1 < n; ++v) spine.push_back({v, v + 1});
        const double f = so_alternating_path_general(n, p, k);
        ASSERT_NEAR(edge_subset_sombor(r.graph, spine), f, 1e-9 * f);
      }
}

TEST(ParityAugmented, Examples) {
  auto a = make_parity_augmented_path(2, 2, 1);
  EXPECT_EQ(spine_degrees(a, 2), (std::vector<std::uint32_t>{4, 4}));
  // Level 1 holds four pendants plus one padding leaf per spine endpoint.
  EXPECT_EQ(count_level(a, 1), 6u);
  EXPECT_EQ(count_level(a, 1, true), 4u);
  for (Vertex v = 2; v < a.graph.vertex_count(); ++v) {
    if (a.tags[v].level != 1) continue;
    if (a.tags[v].role != VertexRole::Structural) EXPECT_EQ(a.graph.degree(v), 1u);
    else EXPECT_EQ(a.graph.degree(v), a.tags[v].parity == SpineParity::Odd ? 2u : 3u);
  }
  EXPECT_NEAR(edge_subset_sombor(a.graph, std::vector<Edge>{{0, 1}}), std::numbers::sqrt2 * 4, 1e-12);

  auto b = make_parity_augmented_path(3, 2, 3);
  for (Vertex v = 3; v < 9; ++v)
    if (b.tags[v].level == 1 && b.tags[v].role == VertexRole::Structural && b.tags[v].parity == SpineParity::Even)
      EXPECT_EQ(b.graph.degree(v), 5u);
}

TEST(ParityAugmented, AsDescribedKeepsEndpointDeficit) {
  auto r = make_parity_augmented_path(4, 3, 1, RealizationMode::AsDescribed);
  EXPECT_EQ(spine_degrees(r, 4), (std::vector<std::uint32_t>{4, 5, 5, 4}));
  auto e = make_parity_augmented_path(4, 3, 1, RealizationMode::DegreeExact);
  EXPECT_EQ(spine_degrees(e, 4), (std::vector<std::uint32_t>(4, 5)));
}

TEST(MultilevelParityTree, Examples) {
  auto a = make_multilevel_parity_tree(2, 2, {3});
  EXPECT_EQ(count_level(a, 1, true), 4u);
  // n*k structural vertices; degree-exact mode adds an endpoint padding leaf to each spine end.
  EXPECT_EQ(count_level(a, 1), 6u);
  EXPECT_EQ(count_level(make_multilevel_parity_tree(2, 2, {3}, RealizationMode::AsDescribed), 1), 4u);
  auto b = make_multilevel_parity_tree(2, 2, {3, 3});
  EXPECT_EQ(count_level(b, 2, true), 8u);
  expect_valid(b);
}

TEST(MultilevelParityTree, StructuralVerticesReachTargets) {
  const std::vector<std::int64_t> levels{4, 3, 2};
  auto r = make_multilevel_parity_tree(5, 2, levels);
  expect_valid(r);
  for (Vertex v = 0; v < r.graph.vertex_count(); ++v) {
    const auto& t = r.tags[v];
    if (t.role != VertexRole::Structural) continue;
    if (t.level == 0) {
      EXPECT_EQ(r.graph.degree(v), 4u);
      continue;
    }
    const auto base = static_cast<std::uint32_t>(levels[t.level - 1]);
    EXPECT_EQ(r.graph.degree(v), t.parity == SpineParity::Odd ? base : base + 4);
  }
  EXPECT_EQ(count_level(r, 3, true), 5u * 8u);
}

TEST(UnicyclicPendant, Examples) {
  auto a = make_unicyclic_pendant(3, 1);
  auto d = degree_sequence(a.graph).degrees;
  EXPECT_EQ(d, (std::vector<std::uint32_t>{3, 3, 3, 1, 1, 1}));
  auto b = make_unicyclic_pendant(4, 2);
  EXPECT_EQ(b.graph.vertex_count(), 12u);
  auto bd = degree_sequence(b.graph).degrees;
  EXPECT_EQ(std::count(bd.begin(), bd.end(), 4u), 4);
  EXPECT_EQ(std::count(bd.begin(), bd.end(), 1u), 8);
  auto c = make_unicyclic_pendant(7, 3);
  EXPECT_EQ(c.graph.vertex_count(), 28u);
  EXPECT_EQ(c.graph.edge_count(), 28u);
}

TEST(UnicyclicPendant, OracleMatchesFormula) {
  for (std::int64_t n = 3; n <= 10; ++n)
    for (std::int64_t k = 1; k <= 4; ++k) {
      auto r = make_unicyclic_pendant(n, k);
      expect_valid(r);
      const double so = oracle::sombor(oracle::adjacency(r.graph));
      ASSERT_NEAR(so, so_unicyclic_pendant(n, k), 1e-9 * so);
    }
}

TEST(Make, VertexCapIsEnforced) {
  EXPECT_THROW(make_multilevel_caterpillar(1000, 100, 100, {100}), DomainError);
}

TEST(FamilySpecJson, RoundTrip) {
  FamilySpec s{Family::MultilevelParityTree, {.n = 5, .k = 2, .levels = {3, 4, 2}}, RealizationMode::AsDescribed};
  nlohmann::json j = s;
  EXPECT_EQ(j["family"], "multilevel-parity-tree");
  EXPECT_EQ(j["params"]["l2"], 4);
  EXPECT_EQ(j["mode"], "as-described");
  FamilySpec back = j.get<FamilySpec>();
  EXPECT_EQ(back.family, s.family);
  EXPECT_EQ(back.params, s.params);
  EXPECT_EQ(back.mode, s.mode);

  auto bad = j;
  bad["params"]["q"] = 1;
  EXPECT_THROW(bad.get<FamilySpec>(), DomainError);
  auto gap = j;
  gap["params"].erase("l2");
  EXPECT_THROW(gap.get<FamilySpec>(), DomainError);
  EXPECT_THROW(family_from_string("tree"), DomainError);
}

TEST(FamilyNames, RoundTrip) {
  for (auto [f, name] : kFamilyNames) EXPECT_EQ(family_from_string(name), f);
  EXPECT_EQ(default_mode(Family::MultilevelCaterpillar), RealizationMode::AsDescribed);
  EXPECT_EQ(default_mode(Family::ParityAugmentedPath), RealizationMode::DegreeExact);
}
