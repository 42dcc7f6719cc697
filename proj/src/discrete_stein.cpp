#include "stein_hn/discrete_stein.hpp"

#include <stdexcept>
#include <string>

namespace stein_hn {

TestSequence indicator_from(long j) {
  return TestSequence{[j](long k) { return k >= j ? Rational(1) : Rational(0); }};
}

Rational forward_diff(const TestSequence& g, long k) { return g(k + 1) - g(k); }

std::vector<Rational> derived_gamma(const ExactPMF& pmf, const std::vector<Rational>& c) {
  if (c.size() != pmf.size() + 1) {
    throw std::invalid_argument("derived_gamma: c must cover [lower - 1, upper]");
  }
  std::vector<Rational> gamma;
  gamma.reserve(pmf.size());
  for (long k = pmf.lower(); k <= pmf.upper(); ++k) {
    const std::size_t i = static_cast<std::size_t>(k - pmf.lower());
    const Rational& p = pmf.masses()[i];
    const Rational psi = (pmf.mass(k + 1) - p) / p;
    gamma.push_back(c[i + 1] * psi + (c[i + 1] - c[i]));
  }
  return gamma;
}

CharacterizationSpec make_spec(Statistic statistic, long m) {
  if (m < 1) throw std::domain_error("make_spec: m must be >= 1");
  ExactPMF pmf = statistic == Statistic::kMax ? pmf_halfmax(m) : pmf_for_parameter(statistic, m);

  SteinOperator op;
  op.lower = 0;
  op.upper = m;
  for (long k = -1; k <= m; ++k) {
    switch (statistic) {
      case Statistic::kReturns: op.c.emplace_back(2 * m - k); break;
      case Statistic::kMax:
      case Statistic::kHalfMax: op.c.emplace_back(m + k + 1); break;
      case Statistic::kSignChanges: op.c.emplace_back(m + k + 2); break;
    }
  }
  for (long k = 0; k <= m; ++k) {
    switch (statistic) {
      case Statistic::kReturns: op.gamma.emplace_back(-(k + 1)); break;
      case Statistic::kMax:
      case Statistic::kHalfMax:
        // q(0) = p_{n,0} is half of what 2 p_{n,2s} would give at s = 0,
        // which moves gamma(0) from 0 to m.
        op.gamma.emplace_back(k == 0 ? m : -2 * k);
        break;
      case Statistic::kSignChanges: op.gamma.emplace_back(-(2 * k + 1)); break;
    }
  }

  std::vector<Rational> psi;
  psi.reserve(pmf.size());
  for (long k = pmf.lower(); k <= pmf.upper(); ++k) {
    const Rational p = pmf.mass(k);
    psi.push_back((pmf.mass(k + 1) - p) / p);
  }
  return CharacterizationSpec{std::move(pmf), std::move(op), std::move(psi)};
}

Rational stein_residual(const SteinOperator& op, const ExactPMF& law, const TestSequence& g) {
  if (g(op.lower - 1) != 0) {
    throw std::invalid_argument("stein_residual: test sequence must vanish at lower - 1");
  }
  Rational expectation = 0;
  for (long k = law.lower(); k <= law.upper(); ++k) {
    if (k < op.lower || k > op.upper) {
      throw std::invalid_argument("stein_residual: law support exceeds the operator's interval");
    }
    const Rational& p = law.masses()[static_cast<std::size_t>(k - law.lower())];
    if (p == 0) continue;
    const Rational gk = g(k);
    expectation += p * (op.c_at(k - 1) * (gk - g(k - 1)) + op.gamma_at(k) * gk);
  }
  return expectation;
}

Rational stein_residual(const CharacterizationSpec& spec, const TestSequence& g) {
  return stein_residual(spec.op, spec.pmf, g);
}

std::vector<Rational> basis_residuals(const SteinOperator& op, const ExactPMF& law) {
  if (law.lower() < op.lower || law.upper() > op.upper) {
    throw std::invalid_argument("basis_residuals: law support exceeds the operator's interval");
  }
  std::vector<Rational> residuals(static_cast<std::size_t>(op.upper - op.lower + 1));
  Rational tail = 0;
  for (long j = op.upper; j >= op.lower; --j) {
    const Rational p = law.mass(j);
    tail += op.gamma_at(j) * p;
    residuals[static_cast<std::size_t>(j - op.lower)] = op.c_at(j - 1) * p + tail;
  }
  return residuals;
}

std::variant<ExactPMF, RecoveryError> recover_pmf(const SteinOperator& op, Statistic statistic) {
  const long a = op.lower;
  const long b = op.upper;
  if (b < a || op.c.size() != static_cast<std::size_t>(b - a + 2) ||
      op.gamma.size() != static_cast<std::size_t>(b - a + 1)) {
    return RecoveryError{"operator tables do not match the interval"};
  }
  for (long k = a; k <= b; ++k) {
    if (op.c_at(k) == 0) return RecoveryError{"c vanishes at k = " + std::to_string(k)};
  }
  // Equation j: (c(j-1) + gamma(j)) p(j) + sum_{k > j} gamma(k) p(k) = 0.
  if (op.c_at(b - 1) + op.gamma_at(b) != 0) {
    return RecoveryError{"top equation forces p(b) = 0; no law with full support"};
  }
  std::vector<Rational> p(static_cast<std::size_t>(b - a + 1));
  p.back() = 1;
  Rational tail = op.gamma_at(b);
  for (long j = b - 1; j >= a; --j) {
    const Rational pivot = op.c_at(j - 1) + op.gamma_at(j);
    if (pivot == 0) return RecoveryError{"singular system at j = " + std::to_string(j)};
    Rational pj = -tail / pivot;
    if (sgn(pj) <= 0) return RecoveryError{"nonpositive mass at k = " + std::to_string(j)};
    tail += op.gamma_at(j) * pj;
    p[static_cast<std::size_t>(j - a)] = std::move(pj);
  }
  Rational total = 0;
  for (const auto& q : p) total += q;
  for (auto& q : p) q /= total;
  return ExactPMF(statistic, a, std::move(p));
}

SteinVerification verify_characterization(Statistic statistic, long m) {
  const CharacterizationSpec spec = make_spec(statistic, m);
  SteinVerification result;
  result.statistic = statistic;
  result.m = m;

  const auto residuals = basis_residuals(spec.op, spec.pmf);
  result.basis_size = residuals.size();
  for (const auto& r : residuals) {
    if (r != 0) ++result.nonzero_residuals;
  }
  result.gamma_matches_derivation = derived_gamma(spec.pmf, spec.op.c) == spec.op.gamma;

  auto recovered = recover_pmf(spec.op, spec.pmf.statistic());
  if (const auto* pmf = std::get_if<ExactPMF>(&recovered)) {
    result.recovered = *pmf == spec.pmf;
    result.recovery_message = result.recovered ? "pmf recovered exactly" : "recovered pmf differs";
  } else {
    result.recovery_message = std::get<RecoveryError>(recovered).reason;
  }
  return result;
}

}  // namespace stein_hn
