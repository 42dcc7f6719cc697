#pragma once

// Kolmogorov and Wasserstein-1 distances from lattice laws to the
// half-normal, the closed-form bounds they are checked against, and rate
// tables for the normalized distances.

#include <span>
#include <string_view>
#include <optional>
#include <vector>

#include "stein_hn/rational.hpp"
#include "stein_hn/srw_laws.hpp"

namespace stein_hn {

/// sup_z |F_law(z) - F_Y(z)|. The sup of a step function against a
/// continuous increasing one sits at an atom, from the left or the right.
double kolmogorov_exact(const ScaledLaw& law);

/// Integral over [0, inf) of |F_law - F_Y|, evaluated interval by interval
/// between atoms with the crossing point found in closed form.
double wasserstein_exact(const ScaledLaw& law);

/// Integral over (0, 1) of |Q_law(u) - Q_Y(u)| with Gauss-Legendre panels of
/// `nodes` points split at the jumps and the kink of the integrand. An
/// independent check on wasserstein_exact. Throws std::invalid_argument if
/// nodes < 64.
double wasserstein_quantile(const ScaledLaw& law, int nodes = 64);

enum class Metric { kKolmogorov, kWasserstein };

std::string_view to_string(Metric metric);
std::optional<Metric> parse_metric(std::string_view name);

/// Right-hand side of the bound for the statistic at length n: max and
/// returns need even n, signchanges odd n. For halfmax the bound is the one
/// for d(V, Y), V = 2 N_n / sqrt(n). Throws std::domain_error on a parity
/// mismatch.
double theorem_bound(Statistic statistic, long n, Metric metric);

/// d(V, W) bounds, W = M_n / sqrt(n): 1/sqrt(n) for Wasserstein,
/// sqrt(2/pi)/sqrt(n) for Kolmogorov.
double lemma_vw_bound(long n, Metric metric);
/// d(V, Y) bounds.
double lemma_vy_bound(long n, Metric metric);

struct DistanceReport {
  Statistic statistic = Statistic::kReturns;
  long n = 0;
  double kolmogorov = 0.0;
  double wasserstein = 0.0;
  double bound_K = 0.0;
  double bound_W = 0.0;
  double margin_K = 0.0;
  double margin_W = 0.0;
  double sqrtn_K = 0.0;
  double sqrtn_W = 0.0;

  bool passed() const { return margin_K >= 0.0 && margin_W >= 0.0; }
};

DistanceReport bound_check(Statistic statistic, long n);

/// bound_check over every n, in parallel; results in input order.
std::vector<DistanceReport> bound_sweep(Statistic statistic, std::span<const long> ns);

struct RateRow {
  long n = 0;
  double sqrtn_K = 0.0;
  double sqrtn_W = 0.0;
  /// sqrt(n) P(statistic = 0).
  double sqrtn_mass_at_zero = 0.0;
  /// sqrt(n) |E[W] - E[Y]| for the normalized statistic W.
  double sqrtn_mean_gap = 0.0;
};

/// Throws std::invalid_argument on an empty list.
std::vector<RateRow> rate_table(Statistic statistic, std::span<const long> ns);

/// Distances between two laws on the same lattice s Z: sup |F_a - F_b| and
/// sum |F_a - F_b| (the Wasserstein distance divided by s). Exact.
struct LatticeDistances {
  Rational kolmogorov;
  Rational l1;
};
LatticeDistances lattice_distances(const ExactPMF& a, const ExactPMF& b);

/// The law of 2 N_n placed on the lattice of M_n (mass at even points only).
ExactPMF doubled_halfmax(long m);

struct AuxiliaryReport {
  long m = 0;
  long n = 0;
  Rational kolmogorov_VW;
  Rational l1_VW;
  double d_K_VW = 0.0;
  double d_W_VW = 0.0;
  double d_K_VY = 0.0;
  double d_W_VY = 0.0;
  double d_K_WY = 0.0;
  double d_W_WY = 0.0;
  double bound_K_VW = 0.0;
  double bound_W_VW = 0.0;
  double bound_K_VY = 0.0;
  double bound_W_VY = 0.0;
  // d(V, W) bounds decided exactly: rational against a rounded-down real.
  bool vw_K_ok = false;
  bool vw_W_ok = false;
  bool vy_K_ok = false;
  bool vy_W_ok = false;
  bool triangle_K_ok = false;
  bool triangle_W_ok = false;
  /// P(2 N_n <= 2k) == P(M_n <= 2k) for every k.
  bool even_points_agree = false;

  bool all_passed() const {
    return vw_K_ok && vw_W_ok && vy_K_ok && vy_W_ok && triangle_K_ok && triangle_W_ok &&
           even_points_agree;
  }
};

AuxiliaryReport auxiliary_bounds(long m);

}  // namespace stein_hn
