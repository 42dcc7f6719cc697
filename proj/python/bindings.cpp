#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "stein_hn/discrete_stein.hpp"
#include "stein_hn/distances.hpp"
#include "stein_hn/distributions.hpp"
#include "stein_hn/mc_oracle.hpp"
#include "stein_hn/rational.hpp"
#include "stein_hn/srw_laws.hpp"
#include "stein_hn/stein_core.hpp"

namespace py = pybind11;
using namespace stein_hn;

namespace {

Statistic statistic_arg(const std::string& name) {
  if (auto s = parse_statistic(name)) return *s;
  throw py::value_error("unknown statistic '" + name + "'");
}

Metric metric_arg(const std::string& name) {
  if (auto m = parse_metric(name)) return *m;
  throw py::value_error("unknown metric '" + name + "' (K or W)");
}

// Rationals cross the boundary as "p/q" strings; fractions.Fraction parses them.
std::vector<std::string> rational_strings(const ExactPMF& pmf) {
  std::vector<std::string> out;
  out.reserve(pmf.size());
  for (const auto& q : pmf.masses()) out.push_back(to_string(q));
  return out;
}

py::dict pmf_dict(const ExactPMF& pmf) {
  py::dict d;
  d["statistic"] = std::string(to_string(pmf.statistic()));
  std::vector<long> support;
  std::vector<double> floats;
  for (long k = pmf.lower(); k <= pmf.upper(); ++k) {
    support.push_back(k);
    floats.push_back(to_double(pmf.mass(k)));
  }
  d["support"] = support;
  d["mass"] = rational_strings(pmf);
  d["mass_float"] = floats;
  return d;
}

TestFunction test_function_arg(const std::string& spec) {
  if (spec == "identity") return identity_test_function();
  const auto colon = spec.find(':');
  if (colon != std::string::npos) {
    const std::string kind = spec.substr(0, colon);
    const double value = std::stod(spec.substr(colon + 1));
    if (kind == "min") return capped_identity(value);
    if (kind == "indicator") return HalfLineIndicator{value};
  }
  throw py::value_error("unknown test function '" + spec + "' (identity, min:<cap>, indicator:<z>)");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Stein's method for the half-normal: exact random-walk laws, distances and bounds";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const std::domain_error& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def("phi", &normal::phi);
  m.def("cap_phi", &normal::cap_phi);
  m.def("inv_cap_phi", &normal::inv_cap_phi);
  m.def("mills_ratio", &normal::mills_ratio);
  m.def("half_normal_pdf", &half_normal::pdf);
  m.def("half_normal_cdf", &half_normal::cdf);

  m.def(
      "pmf", [](const std::string& stat, long mm) { return pmf_dict(pmf_for_parameter(statistic_arg(stat), mm)); },
      py::arg("statistic"), py::arg("m"), "Exact law for walk parameter m; masses as 'p/q' strings.");
  m.def(
      "brute_force_pmf",
      [](const std::string& stat, int n) { return pmf_dict(brute_force_pmf(statistic_arg(stat), n)); },
      py::arg("statistic"), py::arg("n"));
  m.def(
      "parameter_for_length",
      [](const std::string& stat, long n) { return parameter_for_length(statistic_arg(stat), n); },
      py::arg("statistic"), py::arg("n"));

  m.def(
      "kolmogorov",
      [](const std::string& stat, long n) { return kolmogorov_exact(scaled_law(statistic_arg(stat), n)); },
      py::arg("statistic"), py::arg("n"));
  m.def(
      "wasserstein",
      [](const std::string& stat, long n) { return wasserstein_exact(scaled_law(statistic_arg(stat), n)); },
      py::arg("statistic"), py::arg("n"));
  m.def(
      "wasserstein_quantile",
      [](const std::string& stat, long n, int nodes) {
        return wasserstein_quantile(scaled_law(statistic_arg(stat), n), nodes);
      },
      py::arg("statistic"), py::arg("n"), py::arg("nodes") = 64);
  m.def(
      "theorem_bound",
      [](const std::string& stat, long n, const std::string& metric) {
        return theorem_bound(statistic_arg(stat), n, metric_arg(metric));
      },
      py::arg("statistic"), py::arg("n"), py::arg("metric"));

  py::class_<DistanceReport>(m, "DistanceReport")
      .def_readonly("n", &DistanceReport::n)
      .def_readonly("d_K", &DistanceReport::kolmogorov)
      .def_readonly("d_W", &DistanceReport::wasserstein)
      .def_readonly("bound_K", &DistanceReport::bound_K)
      .def_readonly("bound_W", &DistanceReport::bound_W)
      .def_readonly("margin_K", &DistanceReport::margin_K)
      .def_readonly("margin_W", &DistanceReport::margin_W)
      .def_property_readonly("passed", &DistanceReport::passed);
  m.def(
      "check_bounds",
      [](const std::string& stat, std::vector<long> ns) {
        const Statistic statistic = statistic_arg(stat);
        py::gil_scoped_release release;
        return bound_sweep(statistic, ns);
      },
      py::arg("statistic"), py::arg("ns"));

  py::class_<RateRow>(m, "RateRow")
      .def_readonly("n", &RateRow::n)
      .def_readonly("sqrtn_d_K", &RateRow::sqrtn_K)
      .def_readonly("sqrtn_d_W", &RateRow::sqrtn_W)
      .def_readonly("sqrtn_p0", &RateRow::sqrtn_mass_at_zero)
      .def_readonly("sqrtn_mean_gap", &RateRow::sqrtn_mean_gap);
  m.def(
      "rate_table",
      [](const std::string& stat, std::vector<long> ns) {
        const Statistic statistic = statistic_arg(stat);
        py::gil_scoped_release release;
        return rate_table(statistic, ns);
      },
      py::arg("statistic"), py::arg("ns"));

  m.def(
      "stein_verify",
      [](const std::string& stat, long mm) {
        const SteinVerification v = verify_characterization(statistic_arg(stat), mm);
        py::dict d;
        d["basis_size"] = v.basis_size;
        d["nonzero_residuals"] = v.nonzero_residuals;
        d["gamma_matches"] = v.gamma_matches_derivation;
        d["recovered"] = v.recovered;
        d["message"] = v.recovery_message;
        d["passed"] = v.passed();
        return d;
      },
      py::arg("statistic"), py::arg("m"));

  m.def("fz", &fz, py::arg("z"), py::arg("x"));
  m.def(
      "stein_solution",
      [](const std::string& spec, const std::vector<double>& xs) {
        const SteinSolution s(test_function_arg(spec));
        std::vector<double> out;
        out.reserve(xs.size());
        for (double x : xs) out.push_back(s.value(x));
        return out;
      },
      py::arg("test_function"), py::arg("xs"));
  m.def(
      "aux",
      [](const std::string& name, double x) {
        const auto a = parse_aux_name(name);
        if (!a) throw py::value_error("unknown auxiliary function '" + name + "'");
        return aux_eval(*a, x);
      },
      py::arg("name"), py::arg("x"));

  m.def(
      "simulate",
      [](const std::string& stat, long n, std::uint64_t trials, std::uint64_t seed) {
        const Statistic statistic = statistic_arg(stat);
        EmpiricalReport e;
        {
          py::gil_scoped_release release;
          e = empirical_check(statistic, n, trials, seed);
        }
        py::dict d;
        d["counts"] = e.counts;
        d["max_deviation"] = e.max_deviation;
        d["threshold"] = e.threshold();
        d["passed"] = e.passed();
        return d;
      },
      py::arg("statistic"), py::arg("n"), py::arg("trials") = 100000, py::arg("seed") = 1);
}
