#include "stein_hn/cli.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string_view>

#include <CLI11.hpp>
#include <json.hpp>

#include "stein_hn/discrete_stein.hpp"
#include "stein_hn/distances.hpp"
#include "stein_hn/mc_oracle.hpp"
#include "stein_hn/parallel.hpp"
#include "stein_hn/rational.hpp"
#include "stein_hn/srw_laws.hpp"
#include "stein_hn/stein_core.hpp"

namespace stein_hn::cli {

namespace {

using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Format { kCsv, kJson, kPretty };

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::array<char, 32> buffer{};
  auto [end, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), x);
  return std::string(buffer.data(), end);
}

std::string num(long x) { return std::to_string(x); }
std::string num(std::uint64_t x) { return std::to_string(x); }

// A report: the table drives csv and pretty output, `doc` the json output,
// and `notes` are trailing lines for pretty output only.
struct Report {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  json doc;
  std::vector<std::string> notes;
  bool passed = true;
};

void write_csv(std::ostream& os, const Report& r) {
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << '\n';
  };
  line(r.columns);
  for (const auto& row : r.rows) line(row);
}

void write_pretty(std::ostream& os, const Report& r) {
  if (!r.columns.empty()) {
    std::vector<std::size_t> width(r.columns.size());
    for (std::size_t i = 0; i < r.columns.size(); ++i) width[i] = r.columns[i].size();
    for (const auto& row : r.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
    }
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) os << "  ";
        os << std::string(width[i] - cells[i].size(), ' ') << cells[i];
      }
      os << '\n';
    };
    line(r.columns);
    for (const auto& row : r.rows) line(row);
  }
  for (const auto& note : r.notes) os << note << '\n';
}

void emit(std::ostream& os, const Report& r, Format format) {
  switch (format) {
    case Format::kCsv: write_csv(os, r); break;
    case Format::kJson: os << r.doc.dump(2) << '\n'; break;
    case Format::kPretty: write_pretty(os, r); break;
  }
}

Statistic statistic_or_throw(const std::string& name) {
  if (auto s = parse_statistic(name)) return *s;
  throw UsageError("unknown statistic '" + name + "' (expected returns, max, halfmax or signchanges)");
}

template <typename T>
T parse_number(std::string_view text) {
  T value{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) throw UsageError("malformed number '" + std::string(text) + "'");
  return value;
}

template <typename T>
std::vector<T> parse_range(const std::string& text) {
  std::vector<T> out;
  std::stringstream items(text);
  std::string item;
  while (std::getline(items, item, ',')) {
    if (item.empty()) throw UsageError("empty item in list '" + text + "'");
    std::vector<std::string> parts;
    std::stringstream pieces(item);
    std::string piece;
    while (std::getline(pieces, piece, ':')) parts.push_back(piece);
    if (parts.size() == 1) {
      out.push_back(parse_number<T>(parts[0]));
    } else if (parts.size() == 3) {
      const T start = parse_number<T>(parts[0]);
      const T end = parse_number<T>(parts[1]);
      const T step = parse_number<T>(parts[2]);
      if (!(step > 0)) throw UsageError("range step must be positive in '" + item + "'");
      if (end < start) throw UsageError("range end precedes start in '" + item + "'");
      if constexpr (std::is_integral_v<T>) {
        for (T v = start; v <= end; v += step) out.push_back(v);
      } else {
        const long count = static_cast<long>(std::floor((end - start) / step * (1 + 1e-12))) + 1;
        for (long i = 0; i < count; ++i) out.push_back(start + step * static_cast<T>(i));
      }
    } else {
      throw UsageError("expected start:end:step, got '" + item + "'");
    }
  }
  if (out.empty()) throw UsageError("empty list");
  return out;
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

// --- subcommands -----------------------------------------------------------

struct Options {
  std::string format = "pretty";
  std::string out;
  std::string stat;
  std::string n;
  std::string m;
  std::string x = "0:8:0.5";
  std::string h = "identity";
  std::string aux;
  std::string kind = "all";
  int nodes = 64;
  std::size_t points = 400;
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 1;
  double alpha = 1e-3;
  double slack = 2.0;
  double step = 1e-5;
};

long single(const std::vector<long>& values, const char* flag) {
  if (values.size() != 1) throw UsageError(std::string(flag) + " takes a single value here");
  return values.front();
}

Report cmd_pmf(const Options& o) {
  const Statistic stat = statistic_or_throw(o.stat);
  long m = 0;
  if (!o.m.empty() && !o.n.empty()) throw UsageError("give --m or --n, not both");
  if (!o.m.empty()) {
    m = single(parse_range<long>(o.m), "--m");
  } else if (!o.n.empty()) {
    m = parameter_for_length(stat, single(parse_range<long>(o.n), "--n"));
  } else {
    throw UsageError("pmf needs --m or --n");
  }
  if (m < 1) throw UsageError("--m must be >= 1");
  const ExactPMF pmf = pmf_for_parameter(stat, m);
  Report r;
  r.columns = {"k", "mass", "mass_float"};
  json support = json::array(), mass = json::array(), mass_float = json::array();
  for (long k = pmf.lower(); k <= pmf.upper(); ++k) {
    const Rational q = pmf.mass(k);
    const double d = to_double(q);
    r.rows.push_back({num(k), to_string(q), num(d)});
    support.push_back(k);
    mass.push_back(to_string(q));
    mass_float.push_back(d);
  }
  r.doc = {{"statistic", std::string(to_string(stat))},
           {"m", m},
           {"n", length_for_parameter(stat, m)},
           {"support", support},
           {"mass", mass},
           {"mass_float", mass_float}};
  return r;
}

Report cmd_distance(const Options& o) {
  const Statistic stat = statistic_or_throw(o.stat);
  if (o.n.empty()) throw UsageError("distance needs --n");
  const auto ns = parse_range<long>(o.n);
  for (long n : ns) parameter_for_length(stat, n);
  if (o.nodes < 64) throw UsageError("--nodes must be >= 64");
  struct Row {
    double k, w, wq;
  };
  std::vector<Row> rows(ns.size());
  parallel_for(ns.size(), [&](std::size_t i) {
    const ScaledLaw law = scaled_law(stat, ns[i]);
    rows[i] = {kolmogorov_exact(law), wasserstein_exact(law), wasserstein_quantile(law, o.nodes)};
  });
  Report r;
  r.columns = {"n", "d_K", "d_W", "d_W_quantile"};
  r.doc = {{"statistic", std::string(to_string(stat))}, {"rows", json::array()}};
  for (std::size_t i = 0; i < ns.size(); ++i) {
    r.rows.push_back({num(ns[i]), num(rows[i].k), num(rows[i].w), num(rows[i].wq)});
    r.doc["rows"].push_back(
        {{"n", ns[i]}, {"d_K", rows[i].k}, {"d_W", rows[i].w}, {"d_W_quantile", rows[i].wq}});
  }
  return r;
}

Report cmd_check_bounds(const Options& o) {
  const Statistic stat = statistic_or_throw(o.stat);
  if (o.n.empty()) throw UsageError("check-bounds needs --n");
  const auto ns = parse_range<long>(o.n);
  const auto reports = bound_sweep(stat, ns);
  Report r;
  r.columns = {"n", "d_K", "d_W", "bound_K", "bound_W", "margin_K", "margin_W"};
  r.doc = {{"statistic", std::string(to_string(stat))}, {"rows", json::array()}};
  std::size_t failures = 0;
  double min_k = INFINITY, min_w = INFINITY;
  for (const auto& d : reports) {
    r.rows.push_back({num(d.n), num(d.kolmogorov), num(d.wasserstein), num(d.bound_K), num(d.bound_W),
                      num(d.margin_K), num(d.margin_W)});
    r.doc["rows"].push_back({{"n", d.n},
                             {"d_K", d.kolmogorov},
                             {"d_W", d.wasserstein},
                             {"bound_K", d.bound_K},
                             {"bound_W", d.bound_W},
                             {"margin_K", d.margin_K},
                             {"margin_W", d.margin_W},
                             {"passed", d.passed()}});
    if (!d.passed()) ++failures;
    min_k = std::min(min_k, d.margin_K);
    min_w = std::min(min_w, d.margin_W);
  }
  r.passed = failures == 0;
  r.doc["all_passed"] = r.passed;
  r.notes.push_back(r.passed ? "all " + std::to_string(reports.size()) + " bound checks passed"
                             : std::to_string(failures) + " of " + std::to_string(reports.size()) +
                                   " bound checks failed");
  r.notes.push_back("smallest margins: K " + num(min_k) + ", W " + num(min_w));
  return r;
}

Report cmd_rate_table(const Options& o) {
  const Statistic stat = statistic_or_throw(o.stat);
  if (o.n.empty()) throw UsageError("rate-table needs --n");
  const auto ns = parse_range<long>(o.n);
  const auto rows = rate_table(stat, ns);
  Report r;
  r.columns = {"n", "sqrtn_d_K", "sqrtn_d_W", "sqrtn_p0", "sqrtn_mean_gap"};
  r.doc = {{"statistic", std::string(to_string(stat))}, {"rows", json::array()}};
  for (const auto& row : rows) {
    r.rows.push_back({num(row.n), num(row.sqrtn_K), num(row.sqrtn_W), num(row.sqrtn_mass_at_zero),
                      num(row.sqrtn_mean_gap)});
    r.doc["rows"].push_back({{"n", row.n},
                             {"sqrtn_d_K", row.sqrtn_K},
                             {"sqrtn_d_W", row.sqrtn_W},
                             {"sqrtn_p0", row.sqrtn_mass_at_zero},
                             {"sqrtn_mean_gap", row.sqrtn_mean_gap}});
  }
  return r;
}

std::string verification_line(const SteinVerification& v) {
  std::string line = v.nonzero_residuals == 0
                         ? "residual 0 for " + std::to_string(v.basis_size) + " basis functions"
                         : "residual nonzero for " + std::to_string(v.nonzero_residuals) + " of " +
                               std::to_string(v.basis_size) + " basis functions";
  if (!v.gamma_matches_derivation) line += "; gamma differs from c psi + Dc";
  return line + "; " + v.recovery_message;
}

Report cmd_stein_verify(const Options& o) {
  const Statistic stat = statistic_or_throw(o.stat);
  if (o.m.empty()) throw UsageError("stein-verify needs --m");
  const auto ms = parse_range<long>(o.m);
  for (long m : ms) {
    if (m < 1) throw UsageError("--m must be >= 1");
  }
  std::vector<SteinVerification> results(ms.size());
  parallel_for(ms.size(), [&](std::size_t i) { results[i] = verify_characterization(stat, ms[i]); });
  Report r;
  r.columns = {"m", "basis_size", "nonzero_residuals", "gamma_matches", "recovered"};
  r.doc = {{"statistic", std::string(to_string(stat))}, {"rows", json::array()}};
  for (const auto& v : results) {
    r.rows.push_back({num(v.m), num(static_cast<long>(v.basis_size)),
                      num(static_cast<long>(v.nonzero_residuals)), yes_no(v.gamma_matches_derivation),
                      yes_no(v.recovered)});
    r.doc["rows"].push_back({{"m", v.m},
                             {"basis_size", v.basis_size},
                             {"nonzero_residuals", v.nonzero_residuals},
                             {"gamma_matches", v.gamma_matches_derivation},
                             {"recovered", v.recovered},
                             {"message", verification_line(v)}});
    if (!v.passed()) r.passed = false;
  }
  r.doc["all_passed"] = r.passed;
  if (results.size() == 1) {
    r.notes.push_back(verification_line(results.front()));
  } else {
    for (const auto& v : results) r.notes.push_back("m=" + std::to_string(v.m) + ": " + verification_line(v));
  }
  return r;
}

TestFunction parse_test_function(const std::string& spec) {
  if (spec == "identity") return identity_test_function();
  const auto colon = spec.find(':');
  if (colon != std::string::npos) {
    const std::string kind = spec.substr(0, colon);
    const double value = parse_number<double>(std::string_view(spec).substr(colon + 1));
    if (kind == "min") {
      if (!(value > 0)) throw UsageError("min:<cap> needs cap > 0");
      return capped_identity(value);
    }
    if (kind == "indicator") {
      if (!(value >= 0)) throw UsageError("indicator:<z> needs z >= 0");
      return HalfLineIndicator{value};
    }
  }
  throw UsageError("unknown test function '" + spec + "' (identity, min:<cap>, indicator:<z>)");
}

Report cmd_stein_solution(const Options& o) {
  const auto xs = parse_range<double>(o.x);
  for (double x : xs) {
    if (x < 0) throw UsageError("--x values must be >= 0");
  }
  Report r;
  if (!o.aux.empty()) {
    const auto name = parse_aux_name(o.aux);
    if (!name) throw UsageError("unknown auxiliary function '" + o.aux + "' (M N H G U V S D1 D2)");
    r.columns = {"x", std::string(to_string(*name))};
    r.doc = {{"function", std::string(to_string(*name))}, {"rows", json::array()}};
    for (double x : xs) {
      const double v = aux_eval(*name, x);
      r.rows.push_back({num(x), num(v)});
      r.doc["rows"].push_back({{"x", x}, {"value", v}});
    }
    return r;
  }
  const SteinSolution solution(parse_test_function(o.h));
  const auto* indicator = std::get_if<HalfLineIndicator>(&solution.test_function());
  r.columns = {"x", "h", "f", "f_prime", "residual"};
  r.doc = {{"test_function", o.h}, {"mu", solution.mu()}, {"rows", json::array()}};
  for (double x : xs) {
    const double h = evaluate(solution.test_function(), x);
    const double f = solution.value(x);
    // At the jump of an indicator report the right derivative.
    const bool at_jump = indicator && x == indicator->z;
    const double fp = at_jump ? fz_prime(indicator->z, x, Side::kRight) : solution.derivative(x, o.step);
    const double res = at_jump ? fp - x * f - (0.0 - solution.mu()) : solution.residual(x, o.step);
    r.rows.push_back({num(x), num(h), num(f), num(fp), num(res)});
    r.doc["rows"].push_back({{"x", x}, {"h", h}, {"f", f}, {"f_prime", fp}, {"residual", res}});
  }
  r.notes.push_back("mu(h) = " + num(solution.mu()));
  return r;
}

void append_checks(Report& r, const BoundReport& b) {
  for (const auto& c : b.checks) {
    r.rows.push_back({c.name, num(c.observed), num(c.bound), num(c.tolerance), num(c.location),
                      yes_no(c.passed())});
    r.doc["checks"].push_back({{"name", c.name},
                               {"observed", c.observed},
                               {"bound", c.bound},
                               {"tolerance", c.tolerance},
                               {"location", c.location},
                               {"passed", c.passed()}});
    if (!c.passed()) r.passed = false;
  }
  for (const auto& [name, value] : b.observations) {
    r.notes.push_back(name + ": " + num(value));
    r.doc["observations"][name] = value;
  }
}

BoundReport walk_lemma_checks(const std::vector<long>& ms) {
  std::vector<AuxiliaryReport> aux(ms.size());
  std::vector<MomentReport> moments(ms.size());
  parallel_for(ms.size(), [&](std::size_t i) {
    aux[i] = auxiliary_bounds(ms[i]);
    moments[i] = moment_bounds_check(ms[i]);
  });
  BoundCheck vw_k{"d_K(V,W) / (sqrt(2/pi)/sqrt(n))", 0, 1, 0, 0};
  BoundCheck vw_w{"d_W(V,W) / (1/sqrt(n))", 0, 1, 0, 0};
  BoundCheck vy_k{"d_K(V,Y) / bound", 0, 1, 0, 0};
  BoundCheck vy_w{"d_W(V,Y) / bound", 0, 1, 0, 0};
  BoundCheck exact{"failed exact comparisons (lemmas, triangle, even points)", 0, 0, 0, 0};
  BoundCheck mean{"failed mean bounds and identities", 0, 0, 0, 0};
  auto track = [](BoundCheck& c, double value, long m) {
    if (value > c.observed) {
      c.observed = value;
      c.location = static_cast<double>(m);
    }
  };
  for (std::size_t i = 0; i < ms.size(); ++i) {
    const auto& a = aux[i];
    track(vw_k, a.d_K_VW / a.bound_K_VW, a.m);
    track(vw_w, a.d_W_VW / a.bound_W_VW, a.m);
    track(vy_k, a.d_K_VY / a.bound_K_VY, a.m);
    track(vy_w, a.d_W_VY / a.bound_W_VY, a.m);
    if (!a.all_passed()) {
      exact.observed += 1;
      exact.location = static_cast<double>(a.m);
    }
    if (!moments[i].all_passed()) {
      mean.observed += 1;
      mean.location = static_cast<double>(a.m);
    }
  }
  BoundReport out;
  out.checks = {vw_k, vw_w, vy_k, vy_w, exact, mean};
  return out;
}

Report cmd_verify_lemmas(const Options& o) {
  if (o.points < 16) throw UsageError("--points must be >= 16");
  const bool all = o.kind == "all";
  if (!all && o.kind != "indicator" && o.kind != "lipschitz" && o.kind != "walk") {
    throw UsageError("unknown --kind '" + o.kind + "' (indicator, lipschitz, walk, all)");
  }
  GridSpec grid;
  grid.points = o.points;
  Report r;
  r.columns = {"check", "observed", "bound", "tolerance", "location", "passed"};
  r.doc = {{"checks", json::array()}, {"observations", json::object()}};
  if (all || o.kind == "indicator") append_checks(r, verify_lemma_bounds(LemmaKind::kIndicator, grid));
  if (all || o.kind == "lipschitz") append_checks(r, verify_lemma_bounds(LemmaKind::kLipschitz, grid));
  if (all || o.kind == "walk") {
    const auto ms = parse_range<long>(o.m.empty() ? "1:512:1" : o.m);
    for (long m : ms) {
      if (m < 1) throw UsageError("--m must be >= 1");
    }
    append_checks(r, walk_lemma_checks(ms));
  }
  r.doc["all_passed"] = r.passed;
  r.notes.push_back(r.passed ? "all checks passed" : "some checks failed");
  return r;
}

Report cmd_simulate(const Options& o) {
  const Statistic stat = statistic_or_throw(o.stat);
  if (o.n.empty()) throw UsageError("simulate needs --n");
  const long n = single(parse_range<long>(o.n), "--n");
  parameter_for_length(stat, n);
  if (o.trials < kMinTrials) throw UsageError("--trials must be >= 10000");
  if (!(o.alpha > 0 && o.alpha < 1)) throw UsageError("--alpha must lie in (0, 1)");
  const EmpiricalReport e = empirical_check(stat, n, o.trials, o.seed, o.alpha, o.slack);
  const ExactPMF pmf = pmf_for_parameter(stat, parameter_for_length(stat, n));
  const auto cdf = pmf.cumulative();
  Report r;
  r.columns = {"k", "count", "empirical_cdf", "exact_cdf"};
  json rows = json::array();
  std::uint64_t running = 0;
  for (std::size_t i = 0; i < e.counts.size(); ++i) {
    running += e.counts[i];
    const long k = pmf.lower() + static_cast<long>(i);
    const double emp = static_cast<double>(running) / static_cast<double>(e.trials);
    const double exact = to_double(cdf[i]);
    r.rows.push_back({num(k), num(e.counts[i]), num(emp), num(exact)});
    rows.push_back({{"k", k}, {"count", e.counts[i]}, {"empirical_cdf", emp}, {"exact_cdf", exact}});
  }
  r.passed = e.passed();
  r.doc = {{"statistic", std::string(to_string(stat))},
           {"n", n},
           {"trials", e.trials},
           {"seed", e.seed},
           {"alpha", e.alpha},
           {"slack", e.slack},
           {"max_deviation", e.max_deviation},
           {"argmax", e.argmax},
           {"dkw_threshold", e.dkw_threshold},
           {"threshold", e.threshold()},
           {"passed", e.passed()},
           {"rows", rows}};
  r.notes.push_back("max CDF deviation " + num(e.max_deviation) + " at k=" + num(e.argmax) +
                    "; threshold " + num(e.threshold()) + " (DKW " + num(e.dkw_threshold) + " x " +
                    num(e.slack) + "): " + (e.passed() ? "pass" : "FAIL"));
  return r;
}

}  // namespace

std::vector<long> parse_integer_range(const std::string& text) { return parse_range<long>(text); }
std::vector<double> parse_real_range(const std::string& text) { return parse_range<double>(text); }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stein's method for the half-normal: exact random-walk laws, distances and bounds",
               args.empty() ? "stein_hn" : args.front()};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "csv, json or pretty")
        ->check(CLI::IsMember({"csv", "json", "pretty"}))
        ->capture_default_str();
    sub->add_option("--out", o.out, "write the report to this file instead of stdout");
  };
  auto stat_opt = [&](CLI::App* sub) {
    sub->add_option("--stat", o.stat, "returns, max, halfmax or signchanges")->required();
  };

  auto* pmf = app.add_subcommand("pmf", "exact law of a statistic");
  stat_opt(pmf);
  pmf->add_option("--m", o.m, "walk parameter m");
  pmf->add_option("--n", o.n, "walk length n");
  common(pmf);

  auto* distance = app.add_subcommand("distance", "Kolmogorov and Wasserstein distances to the half-normal");
  stat_opt(distance);
  distance->add_option("--n", o.n, "walk lengths (a:b:step or comma list)")->required();
  distance->add_option("--nodes", o.nodes, "Gauss-Legendre points for the quantile method")
      ->capture_default_str();
  common(distance);

  auto* check = app.add_subcommand("check-bounds", "distances against the bounds; exit 1 on a violation");
  stat_opt(check);
  check->add_option("--n", o.n, "walk lengths (a:b:step or comma list)")->required();
  common(check);

  auto* rate = app.add_subcommand("rate-table", "sqrt(n)-scaled distances, P(stat = 0) and mean gap");
  stat_opt(rate);
  rate->add_option("--n", o.n, "walk lengths (a:b:step or comma list)")->required();
  common(rate);

  auto* verify = app.add_subcommand("stein-verify", "discrete Stein characterization and pmf recovery");
  stat_opt(verify);
  verify->add_option("--m", o.m, "walk parameter(s) m")->required();
  common(verify);

  auto* solution = app.add_subcommand("stein-solution", "solution of the Stein equation on an x-grid");
  solution->add_option("--function", o.h, "identity, min:<cap> or indicator:<z>")->capture_default_str();
  solution->add_option("--x", o.x, "x grid (a:b:step or comma list)")->capture_default_str();
  solution->add_option("--step", o.step, "finite-difference step")->capture_default_str();
  solution->add_option("--aux", o.aux, "evaluate an auxiliary function instead (M N H G U V S D1 D2)");
  common(solution);

  auto* lemmas = app.add_subcommand("verify-lemmas", "certify the sup-norm and random-walk lemma bounds");
  lemmas->add_option("--kind", o.kind, "indicator, lipschitz, walk or all")->capture_default_str();
  lemmas->add_option("--points", o.points, "grid points per axis")->capture_default_str();
  lemmas->add_option("--m", o.m, "walk parameters for --kind walk (default 1:512:1)");
  common(lemmas);

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo check of the exact law");
  stat_opt(simulate);
  simulate->add_option("--n", o.n, "walk length")->required();
  simulate->add_option("--trials", o.trials, "number of simulated walks")->capture_default_str();
  simulate->add_option("--seed", o.seed, "64-bit seed")->capture_default_str();
  simulate->add_option("--alpha", o.alpha, "DKW confidence level")->capture_default_str();
  simulate->add_option("--slack", o.slack, "multiplier on the DKW threshold")->capture_default_str();
  common(simulate);

  std::vector<char*> argv;
  std::vector<std::string> storage = args.empty() ? std::vector<std::string>{"stein_hn"} : args;
  for (auto& a : storage) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    const CLI::App* target = &app;
    for (const auto* sub : app.get_subcommands()) target = sub;
    out << target->help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const CLI::App* target = &app;
    for (const auto* sub : app.get_subcommands()) target = sub;
    err << target->help();
    return kExitUsage;
  }

  const Format format = o.format == "csv" ? Format::kCsv : o.format == "json" ? Format::kJson : Format::kPretty;
  Report report;
  try {
    if (pmf->parsed()) report = cmd_pmf(o);
    else if (distance->parsed()) report = cmd_distance(o);
    else if (check->parsed()) report = cmd_check_bounds(o);
    else if (rate->parsed()) report = cmd_rate_table(o);
    else if (verify->parsed()) report = cmd_stein_verify(o);
    else if (solution->parsed()) report = cmd_stein_solution(o);
    else if (lemmas->parsed()) report = cmd_verify_lemmas(o);
    else report = cmd_simulate(o);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  }

  if (o.out.empty()) {
    emit(out, report, format);
  } else {
    std::ofstream file(o.out, std::ios::binary);
    if (!file) {
      err << "error: cannot open '" << o.out << "' for writing\n";
      return kExitUsage;
    }
    emit(file, report, format);
  }
  return report.passed ? kExitOk : kExitCheckFailed;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace stein_hn::cli
