#pragma once

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sombor/sombor.hpp"

namespace sombor::cli {

namespace detail {

using sombor::detail::require;

inline std::int64_t parse_int(const std::string& s, const std::string& flag) {
  std::int64_t v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end)
    throw DomainError("invalid integer \"" + s + "\" for --" + flag);
  return v;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

// "5", "2,4,6" or "3..10".
inline std::vector<std::int64_t> parse_values(const std::string& s, const std::string& flag) {
  if (auto dots = s.find(".."); dots != std::string::npos) {
    const auto lo = parse_int(s.substr(0, dots), flag), hi = parse_int(s.substr(dots + 2), flag);
    if (lo > hi) throw DomainError("empty range \"" + s + "\" for --" + flag);
    if (hi - lo >= 100'000) throw DomainError("range \"" + s + "\" for --" + flag + " is too large");
    std::vector<std::int64_t> out;
    for (auto v = lo; v <= hi; ++v) out.push_back(v);
    return out;
  }
  std::vector<std::int64_t> out;
  for (const auto& part : split(s, ',')) out.push_back(parse_int(part, flag));
  return out;
}

inline std::vector<std::int64_t> parse_levels(const std::string& s) {
  std::vector<std::int64_t> out;
  if (s.empty()) return out;
  for (const auto& part : split(s, ',')) out.push_back(parse_int(part, "levels"));
  return out;
}

inline std::int64_t single(const std::optional<std::string>& s, const std::string& flag,
                           std::int64_t fallback = 0) {
  if (!s) return fallback;
  auto v = parse_values(*s, flag);
  if (v.size() != 1) throw DomainError("--" + flag + " takes a single value here");
  return v.front();
}

inline std::vector<std::int64_t> values_or_zero(const std::optional<std::string>& s, const std::string& flag) {
  return s ? parse_values(*s, flag) : std::vector<std::int64_t>{0};
}

// path:N, cycle:N, star:N, complete:N
inline std::pair<Graph, std::string> parse_seed(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos) throw DomainError("seed must look like path:4");
  const auto kind = s.substr(0, colon);
  const auto n = parse_int(s.substr(colon + 1), "seed");
  if (kind == "path") return {make_path(n).graph, s};
  if (kind == "cycle") return {make_cycle(n).graph, s};
  if (kind == "star") return {make_star(n).graph, s};
  if (kind == "complete") return {make_complete(n).graph, s};
  throw DomainError("unknown seed kind \"" + kind + "\"");
}

// Reads the t column and one named column from a CSV with a header row.
inline std::vector<FitPoint> read_fit_points(const std::string& path, const std::string& column) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read input file \"" + path + "\"");
  std::string line;
  if (!std::getline(in, line)) throw DomainError("input file is empty");
  const auto header = split(line, ',');
  auto find = [&](const std::string& name) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw DomainError("column \"" + name + "\" not found in input");
    return static_cast<std::size_t>(it - header.begin());
  };
  const auto tc = find("t"), yc = find(column);
  std::vector<FitPoint> points;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != header.size()) throw DomainError("ragged CSV row: " + line);
    try {
      points.push_back({std::stod(cells[tc]), std::stod(cells[yc])});
    } catch (const std::exception&) {
      throw DomainError("non-numeric CSV cell in row: " + line);
    }
  }
  return points;
}

inline void check_format(const std::string& format, std::initializer_list<const char*> allowed) {
  for (auto a : allowed)
    if (format == a) return;
  throw DomainError("unsupported --format \"" + format + "\" for this subcommand");
}

}  // namespace detail

struct CommandConfig {
  std::string family;
  std::string formula;
  std::optional<std::string> n, p, k, ell, t;
  std::vector<std::string> levels;
  std::optional<std::string> mode;
  std::optional<std::string> format;
  std::string output;
  std::string precision = "precise";
  std::string seed = "path:4";
  bool ratios = false;
  bool stability = false;
  bool strict = false;
  std::string input;
  std::string column = "SO";
  std::string model = "poly2";
  double base = 4.0;
  std::int64_t n_max = 7;
};

namespace detail {

inline FamilyParams single_params(const CommandConfig& c) {
  FamilyParams q;
  q.n = single(c.n, "n");
  q.p = single(c.p, "p");
  q.k = single(c.k, "k");
  q.ell = single(c.ell, "ell");
  q.t = single(c.t, "t");
  if (c.levels.size() > 1) throw DomainError("--levels takes a single list here");
  if (!c.levels.empty()) q.levels = parse_levels(c.levels.front());
  return q;
}

inline std::string cmd_gen(const CommandConfig& c) {
  const auto format = c.format.value_or("text");
  check_format(format, {"text", "json"});
  FamilySpec spec{family_from_string(c.family), single_params(c), std::nullopt};
  if (c.mode) spec.mode = mode_from_string(*c.mode);
  const auto r = make(spec);
  if (format == "text") return to_text(r.graph);
  return nlohmann::json{{"spec", spec}, {"graph", to_json_value(r.graph)}}.dump(2) + "\n";
}

inline std::string cmd_index(const CommandConfig& c) {
  const auto format = c.format.value_or("json");
  check_format(format, {"json", "csv"});
  Graph g;
  if (!c.input.empty()) {
    std::ifstream in(c.input);
    if (!in) throw DomainError("cannot read input file \"" + c.input + "\"");
    g = read_text(in);
  } else {
    FamilySpec spec{family_from_string(c.family), single_params(c), std::nullopt};
    if (c.mode) spec.mode = mode_from_string(*c.mode);
    g = make(spec).graph;
  }
  const auto report = compute_report(g);
  if (format == "csv") return csv_header(report) + "\n" + csv_row(report) + "\n";
  return nlohmann::json(report).dump(2) + "\n";
}

struct VerifyOutcome {
  std::string text;
  bool discrepant = false;
};

inline VerifyOutcome cmd_verify(const CommandConfig& c) {
  const auto format = c.format.value_or("json");
  check_format(format, {"json", "csv"});
  const auto formula = formula_from_string(c.formula);
  std::optional<RealizationMode> mode;
  if (c.mode) mode = mode_from_string(*c.mode);

  if (c.stability) {
    if (!c.n) throw DomainError("--stability needs --n");
    CommandConfig fixed = c;
    fixed.n.reset();
    const auto rep = residual_stability(formula, single_params(fixed), parse_values(*c.n, "n"), mode);
    return {nlohmann::json(rep).dump(2) + "\n", false};
  }

  ParamGrid grid;
  grid.n = values_or_zero(c.n, "n");
  grid.p = values_or_zero(c.p, "p");
  grid.k = values_or_zero(c.k, "k");
  grid.ell = values_or_zero(c.ell, "ell");
  grid.t = values_or_zero(c.t, "t");
  if (!c.levels.empty()) {
    grid.levels.clear();
    for (const auto& l : c.levels) grid.levels.push_back(parse_levels(l));
  }
  grid.mode = mode;
  auto result = verify_grid(formula, grid);
  // A single point that cannot be built is a domain error, not a skip.
  if (result.records.empty() && result.skipped.size() == 1) throw DomainError(result.skipped.front().reason);

  VerifyOutcome out;
  out.discrepant = result.count(Classification::Discrepant) > 0;
  out.text = format == "csv" ? to_csv_summary(result.records) : to_json_lines(result.records);
  if (format == "json")
    for (const auto& s : result.skipped)
      out.text += nlohmann::json{{"formula", c.formula},
                                 {"params", param_map(s.params, formula_param_names(formula))},
                                 {"skipped", s.reason}}
                      .dump() +
                  "\n";
  return out;
}

inline std::string cmd_series(const CommandConfig& c) {
  const auto format = c.format.value_or("csv");
  check_format(format, {"csv", "json"});
  SeriesPrecision precision;
  if (c.precision == "table1") precision = SeriesPrecision::Table1;
  else if (c.precision == "precise") precision = SeriesPrecision::Precise;
  else throw DomainError("--precision must be table1 or precise");
  auto [seed, label] = parse_seed(c.seed);
  const auto series = run_series(seed, single(c.k, "k", 3), single(c.t, "t", 6), label,
                                 series_vertex_cap_from_env());
  if (c.ratios) {
    const auto ratios = successive_ratios(series, column_from_string(c.column));
    if (format == "json") return nlohmann::json{{"column", c.column}, {"ratios", ratios}}.dump(2) + "\n";
    std::string text = "t," + c.column + "_ratio\n";
    for (std::size_t i = 0; i < ratios.size(); ++i)
      text += std::to_string(series.rows[i].t) + "->" + std::to_string(series.rows[i + 1].t) + "," +
              format_fixed(ratios[i], precision == SeriesPrecision::Table1 ? 2 : 6) + "\n";
    return text;
  }
  if (format == "json") return nlohmann::json(series).dump(2) + "\n";
  return to_csv(series, precision);
}

inline std::string cmd_fit(const CommandConfig& c) {
  const auto format = c.format.value_or("json");
  check_format(format, {"json", "text"});
  if (c.input.empty()) throw DomainError("fit needs --input");
  const auto points = read_fit_points(c.input, c.column);
  const auto model = fit_model_from_string(c.model);
  const auto fit = model == FitModel::ExpGeo ? expfit_geo(points, c.base)
                                             : polyfit(points, model == FitModel::Poly2 ? 2 : 3);
  if (format == "json") return nlohmann::json(fit).dump(2) + "\n";
  std::string text = "model " + std::string(to_string(model)) + "\ncoefficients";
  for (double v : fit.coefficients) text += " " + format_fixed(v, 6);
  if (model == FitModel::ExpGeo) text += "\nbase " + format_fixed(fit.base, 6);
  text += "\nrelative_residual " + format_fixed(fit.relative_residual, 6) + "\n";
  return text;
}

inline std::string cmd_bounds(const CommandConfig& c) {
  const auto format = c.format.value_or("json");
  check_format(format, {"json", "csv"});
  require(c.n_max >= 3 && c.n_max <= static_cast<std::int64_t>(kMaxUnicyclicOrder),
          "3 <= n-max <= " + std::to_string(kMaxUnicyclicOrder));
  std::vector<Graph> graphs;
  for (std::int64_t n = 3; n <= c.n_max; ++n) {
    auto part = enumerate_unicyclic(static_cast<std::size_t>(n));
    graphs.insert(graphs.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  const auto report = check_bounds(graphs);
  if (format == "csv") return to_csv(report);
  nlohmann::json j = report;
  j["consistent"] = is_consistent(report);
  return j.dump(2) + "\n";
}

}  // namespace detail

/**
 * Runs one subcommand. Exit codes: 0 success, 1 usage or domain error
 * (including unwritable output), 2 when --strict finds Discrepant records.
 */
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sombor index toolkit"};
  app.require_subcommand(1, 1);
  CommandConfig c;

  auto add_params = [&](CLI::App* sub) {
    sub->add_option("--n", c.n, "spine length or vertex count (value, list a,b or range a..b)");
    sub->add_option("--p", c.p);
    sub->add_option("--k", c.k);
    sub->add_option("--ell", c.ell, "parity offset");
    sub->add_option("--t", c.t, "iteration depth");
    sub->add_option("--levels", c.levels, "comma-separated level sequence");
    sub->add_option("--mode", c.mode, "as-described or degree-exact");
  };
  auto add_io = [&](CLI::App* sub) {
    sub->add_option("--format", c.format);
    sub->add_option("--output", c.output, "write here instead of stdout");
  };

  auto* gen = app.add_subcommand("gen", "build a family realization");
  gen->add_option("--family", c.family)->required();
  add_params(gen);
  add_io(gen);

  auto* index = app.add_subcommand("index", "compute SO, W, M1, M2");
  index->add_option("--family", c.family);
  index->add_option("--input", c.input, "graph file in text format");
  add_params(index);
  add_io(index);

  auto* verify = app.add_subcommand("verify", "compare a closed form against the oracle");
  verify->add_option("--formula", c.formula)->required();
  verify->add_flag("--strict", c.strict, "exit 2 on discrepant records");
  verify->add_flag("--stability", c.stability, "report residual stability over --n");
  add_params(verify);
  add_io(verify);

  auto* series = app.add_subcommand("series", "iterated pendant extension");
  series->add_option("--seed", c.seed);
  series->add_option("--k", c.k);
  series->add_option("--t", c.t);
  series->add_option("--precision", c.precision);
  series->add_flag("--ratios", c.ratios);
  series->add_option("--column", c.column);
  add_io(series);

  auto* fit = app.add_subcommand("fit", "least-squares fit of a series column");
  fit->add_option("--input", c.input)->required();
  fit->add_option("--column", c.column);
  fit->add_option("--model", c.model);
  fit->add_option("--base", c.base);
  add_io(fit);

  auto* bounds = app.add_subcommand("bounds", "bound checks over labeled unicyclic graphs");
  bounds->add_option("--n-max", c.n_max);
  add_io(bounds);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  std::string text;
  int status = 0;
  try {
    if (*gen) text = detail::cmd_gen(c);
    else if (*index) {
      if (c.family.empty() == c.input.empty()) throw DomainError("index needs exactly one of --family, --input");
      text = detail::cmd_index(c);
    } else if (*verify) {
      auto v = detail::cmd_verify(c);
      text = std::move(v.text);
      if (c.strict && v.discrepant) status = 2;
    } else if (*series) text = detail::cmd_series(c);
    else if (*fit) text = detail::cmd_fit(c);
    else text = detail::cmd_bounds(c);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  if (c.output.empty()) {
    out << text;
  } else {
    std::ofstream file(c.output, std::ios::binary);
    if (!(file << text) || !file.flush()) {
      err << "error: cannot write output file \"" << c.output << "\"\n";
      return 1;
    }
  }
  return status;
}

}  // namespace sombor::cli
