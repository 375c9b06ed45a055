#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "sombor/closed_forms.hpp"
#include "sombor/errors.hpp"
#include "sombor/families.hpp"
#include "sombor/graph.hpp"
#include "sombor/growth.hpp"
#include "sombor/indices.hpp"

namespace sombor {

enum class ScopeKind { FullGraph, SpineEdges, SpinePlusLevel1, Levels };

// Which edges the oracle sums. Levels(lo, hi) keeps edges between structural
// vertices whose deeper endpoint lies at a level in [lo, hi]; level 0 means
// spine edges.
struct OracleScope {
  ScopeKind kind = ScopeKind::FullGraph;
  std::uint32_t lo = 0;
  std::uint32_t hi = 0;

  friend bool operator==(const OracleScope&, const OracleScope&) = default;
};

inline std::string to_string(const OracleScope& s) {
  switch (s.kind) {
    case ScopeKind::FullGraph: return "full-graph";
    case ScopeKind::SpineEdges: return "spine-edges";
    case ScopeKind::SpinePlusLevel1: return "spine-plus-level1";
    case ScopeKind::Levels: return "levels(" + std::to_string(s.lo) + ".." + std::to_string(s.hi) + ")";
  }
  return "unknown";
}

enum class Classification { Exact, KnownResidual, Discrepant };

inline std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::Exact: return "exact";
    case Classification::KnownResidual: return "known-residual";
    case Classification::Discrepant: return "discrepant";
  }
  return "unknown";
}

// Closed vocabulary of residual explanations.
enum class ResidualCause {
  EndpointDeficit,
  OddNParityUndercount,
  UncountedDeeperEdges,
  PreambleFormulaMismatch,
};

inline std::string_view to_string(ResidualCause c) {
  switch (c) {
    case ResidualCause::EndpointDeficit: return "endpoint-deficit";
    case ResidualCause::OddNParityUndercount: return "odd-n-parity-undercount";
    case ResidualCause::UncountedDeeperEdges: return "uncounted-deeper-edges";
    case ResidualCause::PreambleFormulaMismatch: return "preamble-formula-mismatch";
  }
  return "unknown";
}

struct ExplainedResidual {
  ResidualCause cause = ResidualCause::EndpointDeficit;
  double value = 0.0;
};

struct EdgeClass {
  std::string label;
  std::size_t count = 0;
  double contribution = 0.0;
};

struct VerificationRecord {
  FormulaId formula = FormulaId::SoPath;
  FamilyParams params;
  RealizationMode mode = RealizationMode::DegreeExact;
  double formula_value = 0.0;
  double oracle_value = 0.0;
  OracleScope scope;
  double residual = 0.0;  // oracle_value - formula_value
  Classification classification = Classification::Discrepant;
  // Analytic terms predicted for the residual; their sum is predicted_residual.
  std::vector<ExplainedResidual> explanation;
  double predicted_residual = 0.0;
  std::vector<EdgeClass> breakdown;  // edge classes inside the scope
  std::vector<EdgeClass> uncounted;  // edge classes outside the scope
};

// |residual| tolerance for classification: 1e-9 relative, 1e-9 absolute below 1.
inline double classification_tolerance(double oracle_value) {
  return 1e-9 * std::max(1.0, std::abs(oracle_value));
}

inline std::vector<std::string_view> formula_param_names(FormulaId f) {
  switch (f) {
    case FormulaId::SoPath:
    case FormulaId::SoCycle:
    case FormulaId::SoComplete:
    case FormulaId::BoundCycleLower:
    case FormulaId::BoundUnicyclicLower:
    case FormulaId::BoundUnicyclicUpper:
    case FormulaId::BoundZagrebUpper: return {"n"};
    case FormulaId::MultilevelCaterpillar: return {"n", "p", "k", "levels"};
    case FormulaId::AlternatingPath: return {"n", "p"};
    case FormulaId::AlternatingPathGeneral: return {"n", "p", "k"};
    case FormulaId::ParityAugmented: return {"n", "k"};
    case FormulaId::ParityAugmentedOffset: return {"n", "k", "ell"};
    case FormulaId::MultilevelParity: return {"n", "k", "levels"};
    case FormulaId::UnicyclicPendant: return {"n", "k"};
    case FormulaId::RecursionStep:
    case FormulaId::AsymptoticLeading: return {"n", "k", "t"};
  }
  return {};
}

// Formulas the harness can compare against a realization. The two upper
// bounds are inequalities without an equality case on a concrete family and
// are covered by check_bounds instead.
inline bool is_verifiable(FormulaId f) {
  return f != FormulaId::BoundUnicyclicUpper && f != FormulaId::BoundZagrebUpper;
}

// The scope each formula is compared on. It is fixed per formula: a formula
// that describes only spine edges is compared on spine edges, one that
// enumerates spine plus pendant levels on exactly those structural levels.
inline OracleScope canonical_scope(FormulaId f, const FamilyParams& q) {
  switch (f) {
    case FormulaId::AlternatingPath:
    case FormulaId::AlternatingPathGeneral: return {ScopeKind::SpineEdges};
    case FormulaId::ParityAugmented:
    case FormulaId::ParityAugmentedOffset: return {ScopeKind::SpinePlusLevel1, 0, 1};
    case FormulaId::MultilevelParity:
      return {ScopeKind::Levels, 0, static_cast<std::uint32_t>(q.levels.size())};
    default: return {ScopeKind::FullGraph};
  }
}

namespace detail {

inline bool in_scope(const OracleScope& s, const LevelTag& a, const LevelTag& b) {
  switch (s.kind) {
    case ScopeKind::FullGraph: return true;
    case ScopeKind::SpineEdges: return a.level == 0 && b.level == 0;
    case ScopeKind::SpinePlusLevel1:
    case ScopeKind::Levels: {
      if (a.role == VertexRole::Padding || b.role == VertexRole::Padding) return false;
      const auto deeper = std::max(a.level, b.level);
      return deeper >= s.lo && deeper <= s.hi;
    }
  }
  return false;
}

inline std::string edge_class_label(const LevelTag& a, const LevelTag& b) {
  if (a.level == 0 && b.level == 0) return "spine";
  const LevelTag& parent = a.level <= b.level ? a : b;
  const LevelTag& child = a.level <= b.level ? b : a;
  std::string label = "L" + std::to_string(parent.level) + "-L" + std::to_string(child.level);
  if (child.parity != SpineParity::NotApplicable) label += ":" + std::string(to_string(child.parity));
  if (child.role == VertexRole::Padding) label += ":padding";
  return label;
}

// Seed path P_n extended t times; tags record the generation of each vertex.
inline Realization growth_realization(std::int64_t n, std::int64_t k, std::int64_t t) {
  Realization r = make_path(n);
  for (std::int64_t step = 1; step <= t; ++step) {
    r.graph = pendant_extend(r.graph, k);
    r.tags.resize(r.graph.vertex_count(),
                  LevelTag{static_cast<std::uint32_t>(step), SpineParity::NotApplicable,
                           VertexRole::Structural});
  }
  return r;
}

// Change in the spine and endpoint-pendant contributions when both path
// endpoints have degree D-1 instead of D. Each spine vertex carries `per`
// children of degree d_odd (odd-indexed) or d_even (even-indexed).
inline double endpoint_deficit(double D, std::int64_t n, std::int64_t per, double d_odd,
                               double d_even) {
  double delta = n == 2 ? hyp(D - 1, D - 1) - hyp(D, D) : 2.0 * (hyp(D - 1, D) - hyp(D, D));
  const double last = n % 2 == 1 ? d_odd : d_even;
  delta += static_cast<double>(per) * (hyp(D - 1, d_odd) - hyp(D, d_odd));
  delta += static_cast<double>(per) * (hyp(D - 1, last) - hyp(D, last));
  return delta;
}

struct Setup {
  Realization realization;
  OracleScope scope;
  double formula_value = 0.0;
  std::vector<ExplainedResidual> causes;
};

inline Setup setup_for(FormulaId f, const FamilyParams& q, RealizationMode mode) {
  Setup s;
  s.scope = canonical_scope(f, q);
  const bool as_described = mode == RealizationMode::AsDescribed;
  switch (f) {
    case FormulaId::SoPath:
      s.realization = make_path(q.n);
      s.formula_value = so_path(q.n);
      break;
    case FormulaId::SoCycle:
      s.realization = make_cycle(q.n);
      s.formula_value = so_cycle(q.n);
      break;
    case FormulaId::SoComplete:
      s.realization = make_complete(q.n);
      s.formula_value = so_complete(q.n);
      break;
    case FormulaId::UnicyclicPendant:
      s.realization = make_unicyclic_pendant(q.n, q.k);
      s.formula_value = so_unicyclic_pendant(q.n, q.k);
      break;
    case FormulaId::AlternatingPath:
      s.realization = make_alternating_caterpillar(q.n, q.p, 1);
      s.formula_value = so_alternating_path(q.n, q.p);
      break;
    case FormulaId::AlternatingPathGeneral:
      s.realization = make_alternating_caterpillar(q.n, q.p, q.k);
      s.formula_value = so_alternating_path_general(q.n, q.p, q.k);
      break;
    case FormulaId::MultilevelCaterpillar: {
      s.realization = make_multilevel_caterpillar(q.n, q.p, q.k, q.levels, mode);
      s.formula_value = so_multilevel_caterpillar(q.n, q.p, q.k, q.levels);
      const double D = static_cast<double>(q.p + 2), child = static_cast<double>(q.k + 1);
      const double delta = as_described ? endpoint_deficit(D, q.n, q.p, child, child)
                                        : 2.0 * hyp(D, 1.0);
      s.causes.push_back({ResidualCause::EndpointDeficit, delta});
      break;
    }
    case FormulaId::ParityAugmented:
    case FormulaId::ParityAugmentedOffset: {
      const std::int64_t offset = f == FormulaId::ParityAugmented ? 1 : q.ell;
      if (f == FormulaId::ParityAugmentedOffset) require(q.ell > 2, "l > 2");
      s.realization = make_parity_augmented_path(q.n, q.k, offset, mode);
      s.formula_value = so_parity_augmented_offset(q.n, q.k, offset);
      const double D = static_cast<double>(2 + q.k), kk = static_cast<double>(q.k);
      s.causes.push_back({ResidualCause::OddNParityUndercount,
                          static_cast<double>(ceil_half(q.n) - floor_half(q.n)) * kk * hyp(D, kk)});
      if (as_described)
        s.causes.push_back({ResidualCause::EndpointDeficit,
                            endpoint_deficit(D, q.n, q.k, kk, static_cast<double>(q.k + offset))});
      break;
    }
    case FormulaId::MultilevelParity: {
      s.realization = make_multilevel_parity_tree(q.n, q.k, q.levels, mode);
      s.formula_value = so_multilevel_parity(q.n, q.k, q.levels);
      const double D = static_cast<double>(2 + q.k), kk = static_cast<double>(q.k);
      const double l1 = static_cast<double>(q.levels[0]);
      const double odd_formula = static_cast<double>(floor_half(q.n));
      const double even_formula = static_cast<double>(ceil_half(q.n - 1));
      const double odd_extra = static_cast<double>(ceil_half(q.n) - floor_half(q.n));
      // Level-1 vertices are realized with degree l_1 (odd) and 2 l_1 (even);
      // the one-level terms assume k and k + l_1.
      double mismatch = odd_formula * kk * (hyp(D, l1) - hyp(D, kk)) +
                        even_formula * kk * (hyp(D, 2 * l1) - hyp(D, kk + l1));
      double undercount = odd_extra * kk * hyp(D, l1);
      double k_pow = kk;
      for (std::size_t i = 1; i < q.levels.size(); ++i) {
        k_pow *= kk;
        const double prev = static_cast<double>(q.levels[i - 1]);
        const double cur = static_cast<double>(q.levels[i]);
        mismatch += even_formula * k_pow * (hyp(prev + l1, cur + l1) - hyp(prev + l1, cur));
        undercount += odd_extra * k_pow * hyp(prev, cur);
      }
      s.causes.push_back({ResidualCause::PreambleFormulaMismatch, mismatch});
      s.causes.push_back({ResidualCause::OddNParityUndercount, undercount});
      if (as_described)
        s.causes.push_back({ResidualCause::EndpointDeficit, endpoint_deficit(D, q.n, q.k, l1, 2 * l1)});
      break;
    }
    case FormulaId::RecursionStep: {
      require(q.t >= 0, "t >= 0");
      Realization before = growth_realization(q.n, q.k, q.t);
      s.formula_value = recursion_step(before.graph, q.k);
      s.realization = growth_realization(q.n, q.k, q.t + 1);
      break;
    }
    case FormulaId::AsymptoticLeading:
      s.realization = growth_realization(q.n, q.k, q.t);
      s.formula_value = asymptotic_leading(q.n, q.n - 1, q.k, q.t);
      break;
    case FormulaId::BoundCycleLower:
      s.realization = make_cycle(q.n);
      s.formula_value = bound_values(q.n, 2, static_cast<std::uint64_t>(4 * q.n)).cycle_lower;
      break;
    case FormulaId::BoundUnicyclicLower:
      s.realization = make_cycle(q.n);
      s.formula_value = bound_values(q.n, 2, static_cast<std::uint64_t>(4 * q.n)).unicyclic_lower;
      break;
    case FormulaId::BoundUnicyclicUpper:
    case FormulaId::BoundZagrebUpper:
      throw DomainError("domain violation: " + std::string(to_string(f)) +
                        " is an inequality; use the bounds suite");
  }
  return s;
}

}  // namespace detail

/**
 * Builds the realization for a formula, sums the oracle over the formula's
 * scope, and classifies the residual:
 *   Exact          |residual| <= tolerance
 *   KnownResidual  residual matches the sum of the analytic explanation terms
 *   Discrepant     anything else (the breakdown is always attached)
 */
inline VerificationRecord verify_formula(FormulaId formula, const FamilyParams& params,
                                         std::optional<RealizationMode> mode = std::nullopt) {
  VerificationRecord rec;
  rec.formula = formula;
  rec.params = params;
  rec.mode = mode.value_or(formula == FormulaId::MultilevelCaterpillar ? RealizationMode::AsDescribed
                                                                        : RealizationMode::DegreeExact);
  detail::Setup setup = detail::setup_for(formula, params, rec.mode);
  rec.scope = setup.scope;
  rec.formula_value = setup.formula_value;

  const Graph& g = setup.realization.graph;
  const auto& tags = setup.realization.tags;
  std::map<std::string, EdgeClass> inside, outside;
  double oracle = 0.0;
  for (const Edge& e : g.edges()) {
    const double w = sombor_weight(g.degree(e.u), g.degree(e.v));
    const bool counted = detail::in_scope(rec.scope, tags[e.u], tags[e.v]);
    auto label = detail::edge_class_label(tags[e.u], tags[e.v]);
    auto& cls = (counted ? inside : outside)[label];
    cls.label = label;
    ++cls.count;
    cls.contribution += w;
    if (counted) oracle += w;
  }
  for (auto& [_, c] : inside) rec.breakdown.push_back(std::move(c));
  for (auto& [_, c] : outside) rec.uncounted.push_back(std::move(c));
  rec.oracle_value = oracle;
  rec.residual = oracle - rec.formula_value;

  const double tol = classification_tolerance(oracle);
  for (const auto& c : setup.causes)
    if (std::abs(c.value) > tol) {
      rec.explanation.push_back(c);
      rec.predicted_residual += c.value;
    }
  if (std::abs(rec.residual) <= tol) {
    rec.classification = Classification::Exact;
    rec.explanation.clear();
    rec.predicted_residual = 0.0;
  } else if (!rec.explanation.empty() && std::abs(rec.residual - rec.predicted_residual) <= tol) {
    rec.classification = Classification::KnownResidual;
  } else {
    rec.classification = Classification::Discrepant;
  }
  return rec;
}

inline std::size_t scoped_edge_count(const VerificationRecord& r) {
  std::size_t total = 0;
  for (const auto& c : r.breakdown) total += c.count;
  return total;
}

// ---------------------------------------------------------------------------
// Grids

struct ParamGrid {
  std::vector<std::int64_t> n{0};
  std::vector<std::int64_t> p{0};
  std::vector<std::int64_t> k{0};
  std::vector<std::int64_t> ell{0};
  std::vector<std::int64_t> t{0};
  std::vector<std::vector<std::int64_t>> levels{{}};
  std::optional<RealizationMode> mode;
};

// Every sequence l_1..l_m with m in [m_lo, m_hi] and each l_i in [l_lo, l_hi],
// shorter sequences first, then lexicographic.
inline std::vector<std::vector<std::int64_t>> level_sequences(std::int64_t m_lo, std::int64_t m_hi,
                                                              std::int64_t l_lo, std::int64_t l_hi) {
  std::vector<std::vector<std::int64_t>> out;
  for (std::int64_t m = m_lo; m <= m_hi; ++m) {
    std::vector<std::int64_t> seq(static_cast<std::size_t>(m), l_lo);
    while (true) {
      out.push_back(seq);
      std::size_t i = seq.size();
      while (i > 0 && seq[i - 1] == l_hi) seq[--i] = l_lo;
      if (i == 0) break;
      ++seq[i - 1];
    }
  }
  return out;
}

struct SkippedPoint {
  FamilyParams params;
  std::string reason;
};

struct GridResult {
  FormulaId formula = FormulaId::SoPath;
  std::vector<VerificationRecord> records;
  std::vector<SkippedPoint> skipped;  // points with no constructible realization

  std::size_t count(Classification c) const {
    return static_cast<std::size_t>(std::count_if(records.begin(), records.end(),
                                                  [c](const auto& r) { return r.classification == c; }));
  }
};

inline constexpr std::size_t kMaxGridPoints = 100'000;

/**
 * One record per grid point in lexicographic (n, p, k, ell, t, levels)
 * order. Points are verified on worker threads; the output order does not
 * depend on completion order. Points whose realization cannot be built are
 * listed in `skipped` with the reason.
 */
inline GridResult verify_grid(FormulaId formula, const ParamGrid& grid, unsigned threads = 0) {
  std::vector<FamilyParams> points;
  for (auto n : grid.n)
    for (auto p : grid.p)
      for (auto k : grid.k)
        for (auto ell : grid.ell)
          for (auto t : grid.t)
            for (const auto& lv : grid.levels) {
              points.push_back({n, p, k, ell, t, lv});
              if (points.size() > kMaxGridPoints)
                throw DomainError("domain violation: grid exceeds " + std::to_string(kMaxGridPoints) +
                                  " points");
            }

  std::vector<std::optional<VerificationRecord>> slots(points.size());
  std::vector<std::string> errors(points.size());
  auto work = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      try {
        slots[i] = verify_formula(formula, points[i], grid.mode);
      } catch (const DomainError& e) {
        errors[i] = e.what();
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, points.size())));
  {
    std::vector<std::jthread> pool;
    for (unsigned b = 0; b < threads; ++b)
      pool.emplace_back(work, points.size() * b / threads, points.size() * (b + 1) / threads);
  }

  GridResult out;
  out.formula = formula;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (slots[i]) out.records.push_back(std::move(*slots[i]));
    else out.skipped.push_back({points[i], errors[i]});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Residual stability

struct StabilityReport {
  FormulaId formula = FormulaId::SoPath;
  std::vector<std::int64_t> ns;
  std::vector<double> residuals;
  bool stable = false;
  double constant = 0.0;
};

/**
 * Verifies the formula at each n in `ns` (other parameters from `base`) and
 * checks the residual does not depend on n. All n must share parity.
 */
inline StabilityReport residual_stability(FormulaId formula, FamilyParams base,
                                          const std::vector<std::int64_t>& ns,
                                          std::optional<RealizationMode> mode = std::nullopt) {
  detail::require(!ns.empty(), "at least one n");
  for (auto n : ns) detail::require(n % 2 == ns.front() % 2, "all n share parity");
  StabilityReport rep;
  rep.formula = formula;
  rep.ns = ns;
  double scale = 1.0;
  for (auto n : ns) {
    base.n = n;
    const auto rec = verify_formula(formula, base, mode);
    rep.residuals.push_back(rec.residual);
    scale = std::max(scale, std::abs(rec.oracle_value));
  }
  rep.constant = rep.residuals.front();
  rep.stable = std::all_of(rep.residuals.begin(), rep.residuals.end(), [&](double r) {
    return std::abs(r - rep.constant) <= 1e-9 * scale;
  });
  return rep;
}

// ---------------------------------------------------------------------------
// Serialization

// "n=5;k=2;l1=3" in parameter-name order, for CSV cells.
inline std::string params_string(FormulaId f, const FamilyParams& q) {
  std::string out;
  for (auto name : formula_param_names(f)) {
    auto append = [&](const std::string& key, std::int64_t v) {
      if (!out.empty()) out += ';';
      out += key + "=" + std::to_string(v);
    };
    if (name == "levels") {
      for (std::size_t i = 0; i < q.levels.size(); ++i) append("l" + std::to_string(i + 1), q.levels[i]);
    } else {
      append(std::string(name), name == "n" ? q.n : name == "p" ? q.p : name == "k" ? q.k
                                                 : name == "ell" ? q.ell : q.t);
    }
  }
  return out;
}

inline void to_json(nlohmann::json& j, const EdgeClass& c) {
  j = {{"label", c.label}, {"count", c.count}, {"contribution", c.contribution}};
}

inline void to_json(nlohmann::json& j, const VerificationRecord& r) {
  const auto params = param_map(r.params, formula_param_names(r.formula));
  nlohmann::json explanation = nlohmann::json::array();
  for (const auto& e : r.explanation)
    explanation.push_back({{"cause", std::string(to_string(e.cause))}, {"value", e.value}});
  j = {{"formula", std::string(to_string(r.formula))},
       {"params", params},
       {"mode", std::string(to_string(r.mode))},
       {"formula_value", r.formula_value},
       {"oracle_value", r.oracle_value},
       {"oracle_scope", to_string(r.scope)},
       {"residual", r.residual},
       {"classification", std::string(to_string(r.classification))},
       {"explanation", explanation},
       {"predicted_residual", r.predicted_residual},
       {"edge_class_breakdown", r.breakdown},
       {"uncounted", {{"cause", std::string(to_string(ResidualCause::UncountedDeeperEdges))},
                      {"classes", r.uncounted}}}};
}

inline std::string to_json_lines(const std::vector<VerificationRecord>& records) {
  std::string out;
  for (const auto& r : records) out += nlohmann::json(r).dump() + "\n";
  return out;
}

inline std::string to_csv_summary(const std::vector<VerificationRecord>& records) {
  std::string out = "formula,params,classification,residual\n";
  for (const auto& r : records)
    out += std::string(to_string(r.formula)) + "," + params_string(r.formula, r.params) + "," +
           std::string(to_string(r.classification)) + "," + format_fixed(r.residual, 12) + "\n";
  return out;
}

inline void to_json(nlohmann::json& j, const StabilityReport& s) {
  j = {{"formula", std::string(to_string(s.formula))},
       {"n", s.ns},
       {"residuals", s.residuals},
       {"stable", s.stable},
       {"constant", s.constant}};
}

}  // namespace sombor
