import math
from fractions import Fraction

import pytest

from thickfourier.errors import UnknownCase
from thickfourier.oracle import SUITES, gaussian_moment, run_suite, verify_case


def test_moments_against_gamma():
    for p in (0, 1, 2, 3, 0.5):
        assert abs(gaussian_moment(p).real - 2 ** ((p - 1) / 2) * math.gamma((p + 1) / 2)) < 1e-12


def test_divergent_moment_is_continued():
    # F.p. equals the analytic continuation away from the poles p = -1, -3, ...
    p = -2.5
    assert abs(gaussian_moment(p).real - 2 ** ((p - 1) / 2) * math.gamma((p + 1) / 2)) < 1e-10


@pytest.mark.parametrize(
    "case, params",
    [
        ("eq2", {"lambda": -1.3, "n": 3, "k": 0}),
        ("gaussian_harmonic", {"lambda": -1.2, "n": 3, "k": 1}),
        ("lemma25", {"m": 0, "n": 3}),
    ],
)
def test_spec_cases(case, params):
    r = verify_case(case, params, 1e-8)
    assert r.passed, r
    assert r.rel_error < 1e-8


@pytest.mark.parametrize("suite", sorted(SUITES))
def test_suites_pass(suite):
    reports = run_suite(suite, 1e-8)
    assert reports
    assert all(r.passed for r in reports), [r for r in reports if not r.passed]


def test_report_json():
    r = verify_case("hadamard", {}, 1e-9)
    d = r.to_json()
    assert d["case_id"] == "hadamard" and d["passed"] is True
    assert isinstance(d["lhs"], float)


def test_unreachable_tolerance_fails():
    # a tolerance below double precision must fail rather than pass silently
    r = verify_case("example1", {"A": "3/2", "B": "-2/7", "beta": "1/3", "x0": "5/2"}, 1e-300)
    assert not r.passed


def test_perturbed_closed_form_is_caught(monkeypatch):
    import dataclasses

    from thickfourier import oracle

    real = oracle.ft_closed_form

    def skewed(lam, k, n):
        cf = real(lam, k, n)
        return dataclasses.replace(cf, coefficient=cf.coefficient * (1 + Fraction(1, 10 ** 6)))

    monkeypatch.setattr(oracle, "ft_closed_form", skewed)
    r = verify_case("eq2", {"lambda": "-13/10", "n": 3, "k": 0}, 1e-8)
    assert not r.passed
    assert 5e-7 < r.rel_error < 2e-6


def test_unknown_case():
    with pytest.raises(UnknownCase):
        verify_case("nope")
    with pytest.raises(UnknownCase):
        run_suite("nope")


def test_resonant_exponent_refused():
    with pytest.raises(UnknownCase):
        verify_case("eq2", {"lambda": -3, "n": 3, "k": 0})
