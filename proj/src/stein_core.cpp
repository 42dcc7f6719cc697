#include "stein_hn/stein_core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stein_hn/distributions.hpp"
#include "stein_hn/quadrature.hpp"

namespace stein_hn {

namespace {

constexpr double kUpperCutoff = 12.0;
constexpr double kInvGolden = 0.618033988749894848204586834365638;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void require_nonnegative(double x, const char* what) {
  if (!(x >= 0.0)) throw std::domain_error(std::string(what) + ": argument must be >= 0");
}

// f_h(x) = int_0^x (h(t) - mu) exp((x^2 - t^2)/2) dt, the left representation.
double fh_left(const Lipschitz& h, double mu, double x) {
  auto integrand = [&](double t) { return (h.evaluator(t) - mu) * std::exp(0.5 * (x - t) * (x + t)); };
  return quadrature::integrate(integrand, 0.0, x, h.kinks).value;
}

// f_h(x) = -int_x^inf (h(t) - mu) exp((x^2 - t^2)/2) dt, truncated at x + 12
// where the weight is below exp(-72).
double fh_right(const Lipschitz& h, double mu, double x) {
  auto integrand = [&](double t) { return (h.evaluator(t) - mu) * std::exp(0.5 * (x - t) * (x + t)); };
  return -quadrature::integrate(integrand, x, x + kUpperCutoff, h.kinks).value;
}

double fh_lipschitz(const Lipschitz& h, double mu, double x) {
  if (x <= 0.0) return 0.0;
  return x <= half_normal::kMedian ? fh_left(h, mu, x) : fh_right(h, mu, x);
}

double golden_max(const std::function<double(double)>& f, double a, double b, double width,
                  double& best_x) {
  double c = b - kInvGolden * (b - a);
  double d = a + kInvGolden * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > width) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvGolden * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvGolden * (b - a);
      fd = f(d);
    }
  }
  best_x = fc >= fd ? c : d;
  return std::max(fc, fd);
}

std::vector<double> linspace(Interval range, std::size_t points) {
  std::vector<double> grid(points);
  if (points == 1) {
    grid[0] = range.lo;
    return grid;
  }
  const double step = (range.hi - range.lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) grid[i] = range.lo + step * static_cast<double>(i);
  grid.back() = range.hi;
  return grid;
}

}  // namespace

double evaluate(const TestFunction& h, double x) {
  return std::visit(overloaded{[x](const Lipschitz& l) { return l.evaluator(x); },
                               [x](const HalfLineIndicator& i) { return x <= i.z ? 1.0 : 0.0; }},
                    h);
}

TestFunction identity_test_function() { return Lipschitz{[](double x) { return x; }, 1.0, {}}; }

TestFunction capped_identity(double cap) {
  return Lipschitz{[cap](double x) { return std::min(x, cap); }, 1.0, {cap}};
}

double mu_h(const TestFunction& h) {
  return std::visit(
      overloaded{[](const HalfLineIndicator& i) { return half_normal::cdf(i.z); },
                 [](const Lipschitz& l) {
                   auto integrand = [&](double t) { return l.evaluator(t) * half_normal::pdf(t); };
                   return quadrature::integrate(integrand, 0.0, kUpperCutoff, l.kinks).value;
                 }},
      h);
}

double fz(double z, double x) {
  require_nonnegative(z, "fz");
  require_nonnegative(x, "fz");
  if (x == 0.0 || z == 0.0) return 0.0;
  if (x <= z) {
    // (1 - F(z)) F(x) / p(x), written so that neither factor overflows.
    return half_normal::cdf(x) * normal::mills_ratio(z) * std::exp(0.5 * (x - z) * (x + z));
  }
  return half_normal::cdf(z) * normal::mills_ratio(x);
}

double fz_prime(double z, double x) {
  if (x == z) throw std::domain_error("fz_prime: f_z' jumps at x = z; pass a Side");
  return fz_prime(z, x, x < z ? Side::kLeft : Side::kRight);
}

double fz_prime(double z, double x, Side side) {
  require_nonnegative(z, "fz_prime");
  require_nonnegative(x, "fz_prime");
  const bool below = x < z || (x == z && side == Side::kLeft);
  if (below) return x * fz(z, x) + half_normal::survival(z);
  return x * fz(z, x) - half_normal::cdf(z);
}

double solve_fh(const TestFunction& h, double x) {
  if (x <= 0.0) return 0.0;
  return std::visit(overloaded{[x](const HalfLineIndicator& i) { return fz(i.z, x); },
                               [x, &h](const Lipschitz& l) { return fh_lipschitz(l, mu_h(h), x); }},
                    h);
}

SteinSolution::SteinSolution(TestFunction h) : h_(std::move(h)), mu_(mu_h(h_)) {}

double SteinSolution::value(double x) const {
  if (x <= 0.0) return 0.0;
  return std::visit(overloaded{[x](const HalfLineIndicator& i) { return fz(i.z, x); },
                               [x, this](const Lipschitz& l) { return fh_lipschitz(l, mu_, x); }},
                    h_);
}

double SteinSolution::derivative(double x, double step) const {
  if (const auto* indicator = std::get_if<HalfLineIndicator>(&h_)) {
    return fz_prime(indicator->z, x);
  }
  if (x - step < 0.0) {
    return (-3.0 * value(x) + 4.0 * value(x + step) - value(x + 2.0 * step)) / (2.0 * step);
  }
  return (value(x + step) - value(x - step)) / (2.0 * step);
}

double SteinSolution::second_derivative(double x, double step) const {
  if (x - step < 0.0) {
    return (value(x) - 2.0 * value(x + step) + value(x + 2.0 * step)) / (step * step);
  }
  return (value(x + step) - 2.0 * value(x) + value(x - step)) / (step * step);
}

double SteinSolution::residual(double x, double step) const {
  return derivative(x, step) - x * value(x) - (evaluate(h_, x) - mu_);
}

std::optional<AuxName> parse_aux_name(std::string_view name) {
  if (name == "M") return AuxName::kM;
  if (name == "N") return AuxName::kN;
  if (name == "H") return AuxName::kH;
  if (name == "G") return AuxName::kG;
  if (name == "U") return AuxName::kU;
  if (name == "V") return AuxName::kV;
  if (name == "S") return AuxName::kS;
  if (name == "D1") return AuxName::kD1;
  if (name == "D2") return AuxName::kD2;
  return std::nullopt;
}

std::string_view to_string(AuxName name) {
  switch (name) {
    case AuxName::kM: return "M";
    case AuxName::kN: return "N";
    case AuxName::kH: return "H";
    case AuxName::kG: return "G";
    case AuxName::kU: return "U";
    case AuxName::kV: return "V";
    case AuxName::kS: return "S";
    case AuxName::kD1: return "D1";
    case AuxName::kD2: return "D2";
  }
  return "?";
}

namespace aux {

double M(double x) {
  if (x <= 0.0) return 0.0;
  return half_normal::cdf(x) / half_normal::pdf(x);
}

double N(double x) { return normal::mills_ratio(std::max(x, 0.0)); }

double H(double x) { return 2.0 * normal::phi(x) + x * half_normal::cdf(x); }

double G(double x) { return 2.0 * normal::phi(x) - 2.0 * x * normal::cap_phi_upper(x); }

double U(double x) {
  return 2.0 * x * normal::phi(x) - 2.0 * normal::cap_phi_upper(x) * (1.0 + x * x);
}

double aux_V(double x) { return -half_normal::cdf(x) * (1.0 + x * x) - 2.0 * x * normal::phi(x); }

double S(double x) {
  // (phi - x(1 - Phi))/phi = 1 - x R(x) keeps the tail free of 0/0.
  const double first = 1.0 - x * normal::mills_ratio(x);
  const double second = normal::phi(x) + x * (normal::cap_phi(x) - 0.5) - 0.5 * normal::kInvSqrt2Pi;
  return 4.0 * first * second;
}

double D1(double x) {
  return 0.5 * normal::phi(x) - normal::cap_phi_upper(x) * half_normal::cdf(x);
}

double D2(double x) { return -0.5 * x + 4.0 * normal::cap_phi(x) - 3.0; }

}  // namespace aux

double aux_eval(AuxName name, double x) {
  require_nonnegative(x, "aux_eval");
  switch (name) {
    case AuxName::kM: return aux::M(x);
    case AuxName::kN: return aux::N(x);
    case AuxName::kH: return aux::H(x);
    case AuxName::kG: return aux::G(x);
    case AuxName::kU: return aux::U(x);
    case AuxName::kV: return aux::aux_V(x);
    case AuxName::kS: return aux::S(x);
    case AuxName::kD1: return aux::D1(x);
    case AuxName::kD2: return aux::D2(x);
  }
  throw std::invalid_argument("aux_eval: unknown function");
}

SupResult sup_search(const std::function<double(double)>& f, Interval domain, double resolution,
                     std::size_t grid_points) {
  if (!(domain.lo <= domain.hi) || !std::isfinite(domain.lo) || !std::isfinite(domain.hi)) {
    throw std::domain_error("sup_search: empty or unbounded interval");
  }
  if (!(resolution > 0.0)) throw std::domain_error("sup_search: resolution must be positive");
  if (domain.lo == domain.hi) return {domain.lo, f(domain.lo)};

  const auto grid = linspace(domain, std::max<std::size_t>(grid_points, 3));
  std::size_t best = 0;
  double best_value = f(grid[0]);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double v = f(grid[i]);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  const double a = grid[best == 0 ? 0 : best - 1];
  const double b = grid[std::min(best + 1, grid.size() - 1)];
  double refined_x = grid[best];
  const double refined = golden_max(f, a, b, resolution, refined_x);
  if (refined > best_value) return {refined_x, refined};
  return {grid[best], best_value};
}

SupResult2d sup_search_2d(const std::function<double(double, double)>& f, Interval z_domain,
                          Interval x_domain, double resolution, std::size_t grid_points) {
  if (!(z_domain.lo <= z_domain.hi) || !(x_domain.lo <= x_domain.hi)) {
    throw std::domain_error("sup_search_2d: empty interval");
  }
  SupResult2d best{z_domain.lo, x_domain.lo, f(z_domain.lo, x_domain.lo)};
  Interval zr = z_domain;
  Interval xr = x_domain;
  std::size_t points = std::max<std::size_t>(grid_points, 3);
  while (true) {
    const auto zs = linspace(zr, points);
    const auto xs = linspace(xr, points);
    for (double z : zs) {
      for (double x : xs) {
        const double v = f(z, x);
        if (v > best.max) best = {z, x, v};
      }
    }
    const double zstep = (zr.hi - zr.lo) / static_cast<double>(points - 1);
    const double xstep = (xr.hi - xr.lo) / static_cast<double>(points - 1);
    if (std::max(zstep, xstep) < resolution) break;
    zr = {std::max(z_domain.lo, best.z - zstep), std::min(z_domain.hi, best.z + zstep)};
    xr = {std::max(x_domain.lo, best.x - xstep), std::min(x_domain.hi, best.x + xstep)};
    points = 21;
  }
  return best;
}

bool BoundReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const BoundCheck& c) { return c.passed(); });
}

namespace {

BoundReport indicator_bounds(const GridSpec& grid) {
  BoundReport report;

  const auto sup_fz = sup_search_2d([](double z, double x) { return std::abs(fz(z, x)); },
                                    grid.z_range, grid.x_range, grid.refine_width, grid.points);
  report.checks.push_back({"sup |f_z(x)| <= 1/2", sup_fz.max, 0.5, 0.0, sup_fz.z});

  const auto zs = linspace(grid.z_range, grid.points);
  const auto xs = linspace(grid.x_range, grid.points);
  const double median_bound = 1.0 / (4.0 * normal::phi(half_normal::kMedian));

  double sup_prime = 0.0;
  double sup_prime_at = 0.0;
  double worst_ratio_f = 0.0;
  double worst_ratio_f_at = 0.0;
  double worst_ratio_fp = 0.0;
  double worst_ratio_fp_at = 0.0;
  double last_z_sup_prime = 0.0;
  std::size_t monotone_failures = 0;

  for (double z : zs) {
    double sup_f = std::abs(fz(z, z));
    double sup_fp = std::max(std::abs(fz_prime(z, z, Side::kLeft)),
                             std::abs(fz_prime(z, z, Side::kRight)));
    for (double x : xs) {
      sup_f = std::max(sup_f, std::abs(fz(z, x)));
      if (x != z) sup_fp = std::max(sup_fp, std::abs(fz_prime(z, x)));
    }
    if (sup_fp > sup_prime) {
      sup_prime = sup_fp;
      sup_prime_at = z;
    }
    last_z_sup_prime = sup_fp;
    // Bounded-h bounds with ||h_z - mu(h_z)|| = max(F(z), 1 - F(z)).
    const double h_norm = std::max(half_normal::cdf(z), half_normal::survival(z));
    const double ratio_f = sup_f / (median_bound * h_norm);
    const double ratio_fp = sup_fp / (2.0 * h_norm);
    if (ratio_f > worst_ratio_f) {
      worst_ratio_f = ratio_f;
      worst_ratio_f_at = z;
    }
    if (ratio_fp > worst_ratio_fp) {
      worst_ratio_fp = ratio_fp;
      worst_ratio_fp_at = z;
    }
    if (!verify_monotone_xfz(z, xs)) ++monotone_failures;
  }

  report.checks.push_back({"sup |f_z'(x)| <= 1", sup_prime, 1.0, 0.0, sup_prime_at});
  report.checks.push_back({"||f_z|| / (||h_z - mu|| / (4 phi(z_0.75))) <= 1", worst_ratio_f, 1.0,
                           0.0, worst_ratio_f_at});
  report.checks.push_back({"||f_z'|| / (2 ||h_z - mu||) <= 1", worst_ratio_fp, 1.0, 0.0,
                           worst_ratio_fp_at});
  report.checks.push_back({"z with x f_z(x) not nondecreasing", static_cast<double>(monotone_failures),
                           0.0, 0.0, 0.0});
  report.observations.emplace_back("argmax_z f_z(z)", sup_fz.z);
  report.observations.emplace_back("sup_x |f_z'(x)| at z = " + std::to_string(grid.z_range.hi),
                                   last_z_sup_prime);
  return report;
}

}  // namespace

BoundReport verify_lipschitz_bounds(const TestFunction& h, std::string_view label,
                                    const GridSpec& grid) {
  const auto* lipschitz = std::get_if<Lipschitz>(&h);
  if (lipschitz == nullptr) {
    throw std::invalid_argument("verify_lipschitz_bounds: test function must be Lipschitz");
  }
  const double L = lipschitz->lipschitz_constant;
  const SteinSolution solution(h);
  const std::string prefix = std::string(label) + ": ";

  BoundReport report;
  const auto sup_f = sup_search([&](double x) { return std::abs(solution.value(x)); },
                                grid.x_range, grid.refine_width, grid.points);
  report.checks.push_back({prefix + "sup |f_h| <= ||h'||", sup_f.max, L, 0.0, sup_f.argmax});

  // Derivatives by finite differences; the tolerances cover their error.
  const Interval interior{std::max(grid.x_range.lo, 1e-3), grid.x_range.hi};
  const auto sup_fp = sup_search([&](double x) { return std::abs(solution.derivative(x)); },
                                 interior, grid.refine_width, grid.points);
  // f_h'(0) = h(0) - mu(h) by the Stein equation at the origin.
  const double fp_origin = std::abs(evaluate(h, 0.0) - solution.mu());
  const double fp_observed = std::max(sup_fp.max, fp_origin);
  report.checks.push_back({prefix + "sup |f_h'| <= sqrt(2/pi) ||h'||", fp_observed,
                           half_normal::kMean * L, 1e-6,
                           fp_observed == fp_origin ? 0.0 : sup_fp.argmax});

  const auto sup_fpp = sup_search([&](double x) { return std::abs(solution.second_derivative(x)); },
                                  interior, grid.refine_width, grid.points);
  report.checks.push_back({prefix + "sup |f_h''| <= 2 ||h'||", sup_fpp.max, 2.0 * L, 1e-4,
                           sup_fpp.argmax});
  return report;
}

BoundReport verify_lemma_bounds(LemmaKind kind, const GridSpec& grid) {
  if (kind == LemmaKind::kIndicator) return indicator_bounds(grid);
  BoundReport report = verify_lipschitz_bounds(identity_test_function(), "h(x) = x", grid);
  const BoundReport capped = verify_lipschitz_bounds(capped_identity(1.0), "h(x) = min(x, 1)", grid);
  report.checks.insert(report.checks.end(), capped.checks.begin(), capped.checks.end());
  return report;
}

bool verify_monotone_xfz(double z, std::span<const double> grid) {
  double previous = -1.0;
  for (double x : grid) {
    const double v = x * fz(z, x);
    if (v < previous) return false;
    previous = v;
  }
  return true;
}

}  // namespace stein_hn
