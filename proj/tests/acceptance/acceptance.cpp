// Acceptance suite: one PASS/FAIL line per criterion. `--only N` runs a
// single criterion; the exit status is nonzero if any criterion run fails.

#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "stein_hn/discrete_stein.hpp"
#include "stein_hn/distances.hpp"
#include "stein_hn/distributions.hpp"
#include "stein_hn/mc_oracle.hpp"
#include "stein_hn/parallel.hpp"
#include "stein_hn/srw_laws.hpp"
#include "stein_hn/stein_core.hpp"

using namespace stein_hn;

namespace {

struct Verdict {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      detail += (detail.empty() ? "" : "; ") + std::string("FAILED ") + what;
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string fmt(double x, int digits = 7) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

// 1. Formula pmfs equal the 2^n-path enumeration.
Verdict exact_pmf_oracle() {
  Verdict v;
  std::size_t compared = 0;
  for (int n = 2; n <= 14; n += 2) {
    v.require(pmf_returns(n / 2) == brute_force_pmf(Statistic::kReturns, n), "returns n=" + std::to_string(n));
    v.require(pmf_max(n) == brute_force_pmf(Statistic::kMax, n), "max n=" + std::to_string(n));
    compared += 2;
  }
  for (int n = 3; n <= 15; n += 2) {
    v.require(pmf_signchanges((n - 1) / 2) == brute_force_pmf(Statistic::kSignChanges, n),
              "signchanges n=" + std::to_string(n));
    ++compared;
  }
  v.note(std::to_string(compared) + " laws equal as rationals");
  return v;
}

// 2. Full theorem sweep through the command-line tool.
Verdict theorem_sweep() {
  Verdict v;
  struct Sweep {
    const char* stat;
    const char* range;
  };
  const Sweep sweeps[] = {{"max", "2:4096:2"}, {"returns", "2:4096:2"}, {"signchanges", "3:4097:2"}};
  constexpr double kHeadroom = 1e-10;
  for (const auto& s : sweeps) {
    const std::string command = std::string(STEIN_HN_TOOL_PATH) + " check-bounds --stat " + s.stat +
                                " --n " + s.range + " --format csv";
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) {
      v.require(false, std::string("launching the tool for ") + s.stat);
      continue;
    }
    std::string output;
    std::array<char, 4096> buffer{};
    std::size_t got = 0;
    while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) output.append(buffer.data(), got);
    const int status = pclose(pipe);
    v.require(status == 0, std::string(s.stat) + " exit status");

    std::istringstream lines(output);
    std::string line;
    std::getline(lines, line);
    v.require(line == "n,d_K,d_W,bound_K,bound_W,margin_K,margin_W", std::string(s.stat) + " csv header");
    std::size_t rows = 0;
    double min_k = INFINITY, min_w = INFINITY;
    while (std::getline(lines, line)) {
      std::vector<double> cells;
      std::istringstream fields(line);
      std::string cell;
      while (std::getline(fields, cell, ',')) cells.push_back(std::stod(cell));
      if (cells.size() != 7) {
        v.require(false, std::string(s.stat) + " malformed row");
        break;
      }
      min_k = std::min(min_k, cells[5]);
      min_w = std::min(min_w, cells[6]);
      ++rows;
    }
    v.require(rows == 2048, std::string(s.stat) + " row count " + std::to_string(rows));
    v.require(min_k >= kHeadroom && min_w >= kHeadroom, std::string(s.stat) + " margins");
    v.note(std::string(s.stat) + ": min margins K " + fmt(min_k, 4) + ", W " + fmt(min_w, 4));
  }
  return v;
}

// 3. Rate optimality for returns at n = 4096.
Verdict rate_optimality() {
  Verdict v;
  const std::vector<long> ns{4096};
  const RateRow row = rate_table(Statistic::kReturns, ns).front();
  v.require(row.sqrtn_mass_at_zero >= 0.79 && row.sqrtn_mass_at_zero <= 0.81, "sqrt(n) P(K=0) window");
  v.require(row.sqrtn_mean_gap >= 0.9 && row.sqrtn_mean_gap <= 1.1, "sqrt(n) |E W - E Y| window");
  v.note("sqrt(n) P(K=0) = " + fmt(row.sqrtn_mass_at_zero) + ", sqrt(n) |E W - E Y| = " +
         fmt(row.sqrtn_mean_gap));
  return v;
}

// 4. Discrete Stein characterization.
Verdict stein_characterization() {
  Verdict v;
  const Statistic stats[] = {Statistic::kReturns, Statistic::kMax, Statistic::kSignChanges};
  constexpr long kResidualMax = 200;
  constexpr long kRecoveryMax = 64;
  std::vector<std::array<bool, 2>> ok(3 * kResidualMax);
  parallel_for(ok.size(), [&](std::size_t i) {
    const Statistic s = stats[i / kResidualMax];
    const long m = static_cast<long>(i % kResidualMax) + 1;
    const auto spec = make_spec(s, m);
    bool zero = true;
    for (const auto& r : basis_residuals(spec.op, spec.pmf)) zero = zero && r == 0;
    bool recovered = true;
    if (m <= kRecoveryMax) {
      const auto result = recover_pmf(spec.op, spec.pmf.statistic());
      recovered = std::holds_alternative<ExactPMF>(result) && std::get<ExactPMF>(result) == spec.pmf;
    }
    ok[i] = {zero, recovered};
  });
  for (std::size_t i = 0; i < ok.size(); ++i) {
    const std::string where = std::string(to_string(stats[i / kResidualMax])) + " m=" +
                              std::to_string(i % kResidualMax + 1);
    v.require(ok[i][0], "residual " + where);
    v.require(ok[i][1], "recovery " + where);
  }
  v.note("residual 0 on every indicator basis for m <= 200; pmf recovered for m <= 64");
  return v;
}

// 5. Sup-norm lemma certification.
Verdict lemma_certification() {
  Verdict v;
  const GridSpec grid;
  const auto sup_fz = sup_search_2d([](double z, double x) { return std::abs(fz(z, x)); }, grid.z_range,
                                    grid.x_range, grid.refine_width, grid.points);
  v.require(std::abs(sup_fz.max - 0.4563) <= 5e-4, "sup |f_z| = 0.4563 +- 5e-4");
  v.note("sup |f_z| = " + fmt(sup_fz.max) + " at z = x = " + fmt(sup_fz.z, 6));

  const auto indicator = verify_lemma_bounds(LemmaKind::kIndicator, grid);
  v.require(indicator.checks.at(1).passed(), "sup |f_z'| <= 1");
  double at_eight = 0.0;
  for (const auto& [name, value] : indicator.observations) {
    if (name.rfind("sup_x |f_z'(x)| at z = ", 0) == 0) at_eight = value;
  }
  v.require(at_eight >= 0.99, "sup_x |f_z'(x)| >= 0.99 at z = 8 (observed " + fmt(at_eight) + ")");

  const auto s_sup = sup_search([](double x) { return aux::S(x); }, {0.0, 8.0}, 1e-9);
  v.require(std::abs(s_sup.max - half_normal::kMean) <= 1e-10 && s_sup.argmax <= 1e-6,
            "sup S = sqrt(2/pi) at 0");
  v.note("sup S = " + fmt(s_sup.max, 16) + " at x = " + fmt(s_sup.argmax, 3));

  const auto d2 = sup_search([](double x) { return aux::D2(x); }, {0.0, 8.0}, 1e-9);
  v.require(std::abs(d2.argmax - 1.523) <= 1e-3 && std::abs(d2.max + 0.0170) <= 5e-4, "argmax D2");
  v.note("D2 max " + fmt(d2.max, 6) + " at " + fmt(d2.argmax, 6));

  const auto lipschitz = verify_lemma_bounds(LemmaKind::kLipschitz, grid);
  for (const auto& c : lipschitz.checks) v.require(c.passed(), c.name);
  v.note("Lipschitz f_h, f_h', f_h'' bounds " + std::string(lipschitz.all_passed() ? "hold" : "fail"));
  return v;
}

// 6. Stein-equation residuals on grids.
Verdict stein_equation_residual() {
  Verdict v;
  double worst = 0.0;
  std::size_t points = 0;
  for (double z : {0.25, 0.8, 1.5, 3.0, 6.0}) {
    const SteinSolution s(HalfLineIndicator{z});
    for (double x = 0.01; x <= 8.0; x += 0.01) {
      if (x == z) continue;
      worst = std::max(worst, std::abs(s.residual(x)));
      ++points;
    }
  }
  const double kink = 1.0;
  for (const TestFunction& h : {identity_test_function(), capped_identity(kink)}) {
    const SteinSolution s(h);
    for (double x = 0.01; x <= 8.0; x += 0.01) {
      // Central differences need f to be C^2 around x: stay 1e-4 away from the kink of min(x, 1).
      if (std::holds_alternative<Lipschitz>(h) && !std::get<Lipschitz>(h).kinks.empty() &&
          std::abs(x - kink) < 1e-4)
        continue;
      worst = std::max(worst, std::abs(s.residual(x)));
      ++points;
    }
  }
  v.require(worst <= 1e-7, "max residual <= 1e-7");
  v.note("max |f' - x f - h + mu| = " + fmt(worst, 3) + " over " + std::to_string(points) + " points");
  return v;
}

// 7. Two Wasserstein algorithms agree.
Verdict wasserstein_agreement() {
  Verdict v;
  double worst = 0.0;
  for (auto s : {Statistic::kReturns, Statistic::kMax, Statistic::kSignChanges}) {
    for (long n : {2L, 16L, 128L, 512L}) {
      const long len = s == Statistic::kSignChanges ? n + 1 : n;
      const ScaledLaw law = scaled_law(s, len);
      const double gap = std::abs(wasserstein_exact(law) - wasserstein_quantile(law, 64));
      v.require(gap <= 1e-8, std::string(to_string(s)) + " n=" + std::to_string(len));
      worst = std::max(worst, gap);
    }
  }
  v.note("largest disagreement " + fmt(worst, 3));
  return v;
}

// 8. Monte Carlo consistency.
Verdict monte_carlo() {
  Verdict v;
  const std::pair<Statistic, long> cases[] = {
      {Statistic::kReturns, 64}, {Statistic::kMax, 64}, {Statistic::kSignChanges, 65}};
  for (const auto& [s, n] : cases) {
    const auto r = empirical_check(s, n, 1'000'000, 20240611);
    v.require(r.max_deviation < 0.004, std::string(to_string(s)) + " deviation");
    v.note(std::string(to_string(s)) + " " + fmt(r.max_deviation, 3));
  }
  return v;
}

// 9. Auxiliary-variable lemma and even-point agreement.
Verdict auxiliary_lemma() {
  Verdict v;
  constexpr long kMaxM = 512;
  std::vector<AuxiliaryReport> reports(kMaxM);
  parallel_for(reports.size(), [&](std::size_t i) { reports[i] = auxiliary_bounds(static_cast<long>(i) + 1); });
  double ratio_k = 0.0, ratio_w = 0.0;
  for (const auto& r : reports) {
    v.require(r.vw_K_ok, "d_K(V,W) bound n=" + std::to_string(r.n));
    v.require(r.vw_W_ok, "d_W(V,W) bound n=" + std::to_string(r.n));
    v.require(r.even_points_agree, "P(2N <= 2k) = P(M <= 2k) n=" + std::to_string(r.n));
    ratio_k = std::max(ratio_k, r.d_K_VW / r.bound_K_VW);
    ratio_w = std::max(ratio_w, r.d_W_VW / r.bound_W_VW);
  }
  v.note("even n <= 1024; largest distance/bound ratios K " + fmt(ratio_k, 5) + ", W " + fmt(ratio_w, 5));
  return v;
}

struct Criterion {
  const char* title;
  double budget_seconds;
  std::function<Verdict()> run;
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
  }
  const std::vector<Criterion> criteria = {
      {"exact-pmf oracle equivalence", 30, exact_pmf_oracle},
      {"theorem bound sweep", 300, theorem_sweep},
      {"rate optimality", 0, rate_optimality},
      {"Stein characterization", 120, stein_characterization},
      {"lemma-bound certification", 0, lemma_certification},
      {"Stein-equation residual", 0, stein_equation_residual},
      {"Wasserstein dual agreement", 0, wasserstein_agreement},
      {"Monte Carlo consistency", 60, monte_carlo},
      {"auxiliary-variable lemma", 0, auxiliary_lemma},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only != 0 && static_cast<std::size_t>(only) != i + 1) continue;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].run();
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (criteria[i].budget_seconds > 0 && seconds > criteria[i].budget_seconds) {
      v.require(false, "runtime " + fmt(seconds, 3) + " s over budget " + fmt(criteria[i].budget_seconds, 3) + " s");
    }
    all = all && v.passed;
    std::printf("[%s] %zu. %s (%.1f s): %s\n", v.passed ? "PASS" : "FAIL", i + 1, criteria[i].title, seconds,
                v.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
