#pragma once

// Solutions of the half-normal Stein equation
//
//     f'(x) - x f(x) = h(x) - E[h(Y)],   x >= 0,
//
// the auxiliary functions used to bound them, and grid-based certification
// of the sup-norm bounds on f_h, f_h', f_h''.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace stein_hn {

/// A test function h that is Lipschitz with a known constant. `kinks` lists
/// points where h' jumps; quadrature panels are split there.
struct Lipschitz {
  std::function<double(double)> evaluator;
  double lipschitz_constant = 1.0;
  std::vector<double> kinks;
};

/// h_z = 1 on [0, z], 0 on (z, inf).
struct HalfLineIndicator {
  double z = 0.0;
};

using TestFunction = std::variant<Lipschitz, HalfLineIndicator>;

double evaluate(const TestFunction& h, double x);

TestFunction identity_test_function();
/// h(x) = min(x, cap), Lipschitz constant 1, kink at cap.
TestFunction capped_identity(double cap);

/// E[h(Y)] for Y half-normal. Closed form for indicators; adaptive
/// quadrature on [0, 12] for Lipschitz h (the remainder is below 1e-30).
double mu_h(const TestFunction& h);

/// f_z(x) for the indicator h_z, closed form. Zero at x = 0 and for z = 0.
double fz(double z, double x);

enum class Side { kLeft, kRight };

/// f_z'(x) = x f_z(x) + 1{x <= z} - F(z). Throws std::domain_error at the
/// jump x == z; use the overload with a Side there.
double fz_prime(double z, double x);
double fz_prime(double z, double x, Side side);

/// Standard solution f_h, extended by zero to x < 0.
double solve_fh(const TestFunction& h, double x);

class SteinSolution {
 public:
  explicit SteinSolution(TestFunction h);

  const TestFunction& test_function() const { return h_; }
  double mu() const { return mu_; }

  double value(double x) const;
  /// Closed form for indicators (throws at the jump); central difference
  /// with step `step` for Lipschitz h.
  double derivative(double x, double step = 1e-5) const;
  /// Second central difference of f.
  double second_derivative(double x, double step = 1e-3) const;
  /// f'(x) - x f(x) - (h(x) - mu).
  double residual(double x, double step = 1e-5) const;

 private:
  TestFunction h_;
  double mu_;
};

enum class AuxName { kM, kN, kH, kG, kU, kV, kS, kD1, kD2 };

std::optional<AuxName> parse_aux_name(std::string_view name);
std::string_view to_string(AuxName name);

namespace aux {
/// F(x)/p(x); M(0) = 0.
double M(double x);
/// (1 - F(x))/p(x); N(0) = sqrt(pi/2).
double N(double x);
double H(double x);
double G(double x);
double U(double x);
/// The function V of the f'' bound (not the auxiliary random variable).
double aux_V(double x);
double S(double x);
double D1(double x);
double D2(double x);
}  // namespace aux

/// Dispatches to the aux:: evaluators. Throws std::domain_error for x < 0.
double aux_eval(AuxName name, double x);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct SupResult {
  double argmax = 0.0;
  double max = 0.0;
};

/// Grid scan over `grid_points` equispaced points, then golden-section
/// refinement on the bracket around the best grid point until its width is
/// below `resolution`. Exact for unimodal f up to `resolution`.
SupResult sup_search(const std::function<double(double)>& f, Interval domain, double resolution,
                     std::size_t grid_points = 400);

struct SupResult2d {
  double z = 0.0;
  double x = 0.0;
  double max = 0.0;
};

/// Two-dimensional variant: grid scan followed by repeated zoomed grids
/// around the incumbent. Works along ridges where coordinate search stalls.
SupResult2d sup_search_2d(const std::function<double(double, double)>& f, Interval z_domain,
                          Interval x_domain, double resolution, std::size_t grid_points = 400);

struct BoundCheck {
  std::string name;
  double observed = 0.0;
  double bound = 0.0;
  double tolerance = 0.0;
  double location = 0.0;

  double margin() const { return bound + tolerance - observed; }
  bool passed() const { return observed <= bound + tolerance; }
};

struct BoundReport {
  std::vector<BoundCheck> checks;
  /// Informational values that are not bounds (e.g. the observed sup at a
  /// particular z).
  std::vector<std::pair<std::string, double>> observations;

  bool all_passed() const;
};

struct GridSpec {
  Interval z_range{0.0, 8.0};
  Interval x_range{0.0, 8.0};
  std::size_t points = 400;
  double refine_width = 1e-6;
};

enum class LemmaKind { kLipschitz, kIndicator };

/// Observed suprema against the sup-norm bounds for the requested class.
/// The Lipschitz suite uses h(x) = x and h(x) = min(x, 1).
BoundReport verify_lemma_bounds(LemmaKind kind, const GridSpec& grid = {});

/// Bounds ||f_h|| <= L, ||f_h'|| <= sqrt(2/pi) L, ||f_h''|| <= 2 L for one h.
BoundReport verify_lipschitz_bounds(const TestFunction& h, std::string_view label,
                                    const GridSpec& grid = {});

/// True iff x f_z(x) is nondecreasing along the (sorted) grid.
bool verify_monotone_xfz(double z, std::span<const double> grid);

}  // namespace stein_hn
