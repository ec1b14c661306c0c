import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from thickfourier.errors import NotInDomain, OutOfRange, PoleInGamma
from thickfourier.kernelops import apply_K, frak_apply, kappa_coeff, lambda_coeff
from thickfourier.scalars import EULER_GAMMA, I, LN2, PI, ExactScalar, digamma_value, gamma_value
from thickfourier.sphere import AngularFunction, Poly, in_Dq, in_Pq, sample_harmonic


def two_pi_n(n):
    return ExactScalar.pi_power(n) * 2 ** n


@pytest.mark.parametrize(
    "beta, m, n, expected",
    [
        (-2, 0, 3, 4 * PI),
        (0, 0, 3, 4 * PI * (1 - EULER_GAMMA)),
        ("-3/2", 1, 3, I * ExactScalar.power(2, Fraction(3, 2)) * ExactScalar.pi_power(Fraction(3, 2))),
    ],
)
def test_kappa_examples(beta, m, n, expected):
    c = kappa_coeff(beta, m, n)
    assert c.exact
    assert c.value == expected


@pytest.mark.parametrize("q, m, n, expected", [(0, 0, 3, -4 * PI), (1, 0, 2, -I * PI)])
def test_lambda_examples(q, m, n, expected):
    assert lambda_coeff(q, m, n).value == expected
    assert lambda_coeff(q, m, n).log_flag


def test_lambda_out_of_range():
    with pytest.raises(OutOfRange):
        lambda_coeff(1, 1, 3)


def test_kappa_pole():
    with pytest.raises(PoleInGamma):
        kappa_coeff(-5, 0, 3)


@pytest.mark.parametrize("beta", [0.3, -1.7, 2.25])
@pytest.mark.parametrize("m", [0, 1, 2])
def test_float_path_matches_exact(beta, m):
    f = kappa_coeff(beta, m, 3)
    assert not f.exact
    e = kappa_coeff(Fraction(repr(beta)), m, 3)
    assert abs(complex(f.value) - complex(e.value)) < 1e-12 * abs(complex(e.value))


def test_apply_K_examples():
    one = AngularFunction.constant(3)
    main, log = apply_K("-3/2", one)
    assert main == one.scale(kappa_coeff("-3/2", 0, 3).value)
    assert log.is_zero
    main, log = apply_K(0, one)
    assert main == one.scale(4 * PI * (1 - EULER_GAMMA))
    assert log == one.scale(-4 * PI)
    main, log = apply_K(1, AngularFunction(3))
    assert main.is_zero and log.is_zero


@pytest.mark.parametrize("k", range(4))
@pytest.mark.parametrize("m", range(4))
@pytest.mark.parametrize("n", [2, 3])
def test_resonant_kappa_matches_log_split_formula(k, m, n):
    q = k + 2 * m
    half_n = Fraction(n, 2)
    expected = (
        (-1) ** m
        * ExactScalar.i_power(k)
        * ExactScalar.pi_power(half_n)
        / (math.factorial(m) * gamma_value(half_n + k + m))
        * Fraction(1, 2 ** (2 * m + k))
        * (digamma_value(1 + m) + digamma_value(half_n + k + m) + 2 * LN2)
    )
    assert kappa_coeff(q, k, n).value == expected


def test_resonant_kappa_numeric_limit():
    # the non-log part is the finite part of the meromorphic kappa at beta = q
    n, m, q = 3, 0, 2
    with mpmath.workdps(40):
        eps = mpmath.mpf("1e-18")
        def k(b):
            return mpmath.pi ** 1.5 * mpmath.power(2, -b) * mpmath.gamma((m - b) / 2) / mpmath.gamma((m + n + b) / 2)
        # symmetric average drops the 1/eps term
        fp = (k(q + eps) + k(q - eps)) / 2
    assert abs(complex(fp) - complex(kappa_coeff(q, m, n).value)) < 1e-10


def test_frak_domain_errors():
    with pytest.raises(NotInDomain):
        frak_apply(2, AngularFunction.constant(3), 3)
    with pytest.raises(NotInDomain):
        frak_apply(2, AngularFunction.harmonic(sample_harmonic(3, 3)), 3, mode="L")


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("q", range(-5, 6))
def test_kappa_inversion_identity(n, q):
    for m in range(9):
        try:
            a = kappa_coeff(q, m, n).value
            b = kappa_coeff(-n - q, m, n).value
        except PoleInGamma:
            continue
        if (q >= m and (q - m) % 2 == 0) or (-n - q >= m and (-n - q - m) % 2 == 0):
            continue
        assert a * b * (-1) ** m == two_pi_n(n)


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("q", range(-5, 6))
def test_frak_round_trip(n, q):
    for m in range(9):
        a = AngularFunction.harmonic(sample_harmonic(n, m))
        if not in_Dq(a, q, n):
            continue
        back = frak_apply(q, frak_apply(q, a, n), n, inverse=True)
        assert back == a
        if q >= 0 and in_Pq(a, q):
            assert frak_apply(q, frak_apply(q, a, n, mode="L"), n, inverse=True, mode="L") == a


@given(
    st.fractions(min_value=-4, max_value=4, max_denominator=4),
    st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=5), min_size=3, max_size=3),
    st.integers(0, 3),
)
def test_apply_K_linear_and_diagonal(beta, cs, d):
    if beta.denominator == 1:
        return  # integral orders are covered by the resonant tests
    n = 3
    parts = [AngularFunction.harmonic(sample_harmonic(n, m)).scale(c) for m, c in enumerate(cs)]
    total = parts[0] + parts[1] + parts[2]
    try:
        main, _ = apply_K(beta, total)
    except PoleInGamma:
        return
    assert main == sum((apply_K(beta, p)[0] for p in parts[1:]), apply_K(beta, parts[0])[0])
    # commutes with projection onto degree d
    keep = lambda m: m == d
    assert main.restrict(keep) == apply_K(beta, total.restrict(keep))[0]
