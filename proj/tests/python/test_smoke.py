from fractions import Fraction
import math

import pytest

import stein_hn


def test_pmf_rationals_sum_to_one():
    law = stein_hn.pmf("signchanges", 1)
    assert law["support"] == [0, 1]
    assert [Fraction(q) for q in law["mass"]] == [Fraction(3, 4), Fraction(1, 4)]
    big = stein_hn.pmf("returns", 50)
    assert sum(Fraction(q) for q in big["mass"]) == 1


def test_formula_matches_enumeration():
    for stat in ("returns", "max", "halfmax"):
        m = 5
        n = 2 * m
        assert stein_hn.pmf(stat, m)["mass"] == stein_hn.brute_force_pmf(stat, n)["mass"]


def test_distances_and_bounds():
    assert stein_hn.kolmogorov("returns", 2) == pytest.approx(0.5, abs=1e-15)
    w = stein_hn.wasserstein("max", 128)
    assert w == pytest.approx(stein_hn.wasserstein_quantile("max", 128), abs=1e-10)
    assert stein_hn.theorem_bound("returns", 100, "K") == pytest.approx(0.3225206, abs=1e-7)
    with pytest.raises(ValueError):
        stein_hn.theorem_bound("signchanges", 100, "K")
    reports = stein_hn.check_bounds("signchanges", [3, 5, 101])
    assert all(r.passed for r in reports)


def test_rate_table():
    (row,) = stein_hn.rate_table("returns", [4096])
    assert 0.79 <= row.sqrtn_p0 <= 0.81
    assert 0.9 <= row.sqrtn_mean_gap <= 1.1


def test_stein_verify_and_solution():
    result = stein_hn.stein_verify("max", 64)
    assert result["passed"] and result["basis_size"] == 65
    xs = [0.5, 1.0, 2.0]
    mu = math.sqrt(2 / math.pi)
    phi = lambda x: math.exp(-x * x / 2) / math.sqrt(2 * math.pi)
    cap_phi = lambda x: 0.5 * math.erfc(-x / math.sqrt(2))
    expected = [(phi(0) - phi(x) - mu * (cap_phi(x) - 0.5)) / phi(x) for x in xs]
    assert stein_hn.stein_solution("identity", xs) == pytest.approx(expected, abs=1e-12)
    assert stein_hn.aux("S", 0.0) == pytest.approx(mu, abs=1e-15)


def test_simulation_is_reproducible():
    a = stein_hn.simulate("returns", 32, 20000, 3)
    b = stein_hn.simulate("returns", 32, 20000, 3)
    assert a["counts"] == b["counts"]
    assert a["passed"]
