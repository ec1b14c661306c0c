import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from thickfourier.distributions import (
    SlThickDistribution,
    ThickDistribution,
    ThickJet,
    delta_inf,
    delta_ln_inf,
    deriv_delta,
    pf_power,
    pfw_power,
    tau_scale,
    thick_delta,
)
from thickfourier.errors import ChiUndefined, PoleInGamma, TruncationMismatch
from thickfourier.finitepart import simple_pole_set_at_infinity
from thickfourier.fourier import (
    ClassicalDistribution,
    chi_value,
    classical_fourier,
    ft_closed_form,
    ft_jet,
    ft_star,
    ft_upper_star,
    g_value,
    ift_jet,
    inverse_transform,
    project_classical,
    transform,
    two_pi_power,
)
from thickfourier.kernelops import kappa_coeff, lambda_coeff
from thickfourier.scalars import EULER_GAMMA, PI, ExactScalar
from thickfourier.sphere import AngularFunction, Poly, sample_harmonic

ONE3 = AngularFunction.constant(3)


def thick(n, *atoms):
    return ThickDistribution(n, atoms)


def sl(n, *atoms):
    return SlThickDistribution(n, atoms)


def round_trip(d):
    return ft_upper_star(ft_star(d).output).output


# --- scalar functions


@pytest.mark.parametrize("n", [2, 3, 4])
def test_g_identity(n):
    for m in range(-8, 9):
        if not simple_pole_set_at_infinity(m, n) or not simple_pole_set_at_infinity(-n - m, n):
            continue
        try:
            assert g_value(m, n) * g_value(-n - m, n) == two_pi_power(n)
        except PoleInGamma:
            pytest.fail(f"unexpected Gamma pole at m={m}, n={n}")


def test_g_values():
    assert g_value(-4, 3) == -PI ** 2
    assert g_value(-2, 3) == 2 * PI ** 2
    assert g_value(2, 3) == 0


def test_chi():
    # symmetric under m -> -n-m
    assert chi_value(-1, 3) == chi_value(-2, 3)
    with pytest.raises(ChiUndefined):
        chi_value(-3, 3)


# --- closed forms


def test_closed_forms():
    cf = ft_closed_form(-2, 0, 3)
    assert cf.kind == "power" and cf.coefficient == 2 * PI ** 2 and cf.exponent == -1
    cf = ft_closed_form(-3, 0, 3)
    assert cf.kind == "power_log"
    assert cf.coefficient == 4 * PI * (1 - EULER_GAMMA)
    assert cf.log_coefficient == -4 * PI
    for n in (2, 3, 4):
        cf = ft_closed_form(2, 0, n)
        assert cf.kind == "delta" and cf.coefficient == -two_pi_power(n)


def test_closed_form_radial_profile():
    cf = ft_closed_form(-2, 0, 3)
    assert abs(cf.radial(2.0) - complex(2 * PI ** 2) / 2) < 1e-12


@pytest.mark.parametrize("k, q", [(0, 0), (1, 0), (2, 1), (3, 2)])
def test_polynomial_transform_has_no_factorial_ratio(k, q):
    cf = ft_closed_form(k + 2 * q, k, 3)
    assert cf.coefficient == two_pi_power(3) * ExactScalar.i_power(-k) * (-1) ** q


# --- jets


def test_jet_constant_at_minus_n():
    out = ft_jet(ThickJet(3, {-3: ONE3}, -3))
    assert out.A[0] == ONE3.scale(kappa_coeff(0, 0, 3).value)
    assert out.A[0] == ONE3.scale(4 * PI * (1 - EULER_GAMMA))
    assert out.P[0] == ONE3.scale(lambda_coeff(0, 0, 3).value)
    assert out.P[0] == ONE3.scale(-4 * PI)


def test_jet_zero():
    out = ft_jet(ThickJet(3, {}, 2))
    assert not out.A and not out.P


def test_jet_resonant_degree_one():
    Y1 = AngularFunction.coordinate(3, 0)
    out = ft_jet(ThickJet(3, {-4: Y1}, -4))
    assert out.A[1] == Y1.scale(kappa_coeff(1, 1, 3).value)
    assert out.P[1] == Y1.scale(lambda_coeff(1, 0, 3).value)


def test_jet_truncation_mismatch():
    with pytest.raises(TruncationMismatch):
        ft_jet(ThickJet(3, {2: ONE3}, 1))


def test_jet_keeps_resonant_parts_until_projected():
    # the constant component of A_0 lies outside D_0; it is kept, and projected() strips it
    out = ft_jet(ThickJet(3, {-3: ONE3}, -3))
    assert not out.is_polynomial_free()
    assert out.projected().is_polynomial_free()
    assert 0 not in out.projected().A


@pytest.mark.parametrize("n", [2, 3])
def test_jet_inversion(n):
    coeffs = {j: AngularFunction.harmonic(sample_harmonic(n, m)) for j, m in [(-n - 1, 0), (-n + 1, 1), (-1, 2), (1, 3)]}
    phi = ThickJet(n, coeffs, 2)
    back = ift_jet(ft_jet(phi).projected())
    for j, a in coeffs.items():
        if j >= 0:
            continue
        # components at resonant orders with excluded degrees are the polynomial part
        assert back.coeffs.get(j, AngularFunction(n)) == a


# --- transform catalogue


def test_star_examples():
    assert ft_star(thick(3, thick_delta(0, n=3))).output == sl(3, pfw_power(0, n=3))
    assert ft_star(thick(3, thick_delta(1, n=3))).output == sl(3, delta_inf(-4, n=3, weight=-PI ** 2))
    assert ft_star(thick(3, thick_delta(-3, n=3))).output == sl(3, delta_ln_inf(0, n=3, weight=-2 * PI ** 2))
    assert ft_star(thick(3, pf_power(0, n=3))).output == sl(3, deriv_delta(Poly.constant(3), "slthick", two_pi_power(3)))


def test_upper_examples():
    assert ft_upper_star(sl(3, delta_inf(-1, n=3))).output == thick(3, thick_delta(-2, n=3, weight=2 * PI ** 2))
    assert ft_upper_star(sl(3, pfw_power(0, n=3))).output == thick(3, thick_delta(0, n=3, weight=two_pi_power(3)))
    Y = AngularFunction.coordinate(3, 0)
    got = ft_upper_star(sl(3, delta_inf(-1, Y))).output
    assert got == thick(3, thick_delta(-2, Y.scale(kappa_coeff(-1, 1, 3).value)))


def test_provenance_is_recorded():
    res = ft_star(thick(3, thick_delta(1, n=3), pf_power(-2, n=3)))
    assert len(res.provenance) == len(res.output.atoms)
    assert all(p["rule"] for p in res.provenance)
    js = res.to_json()
    assert all("provenance" in a for a in js["atoms"])
    json.dumps(js)


def _densities(n):
    return [AngularFunction.constant(n), AngularFunction.harmonic(sample_harmonic(n, 1)), AngularFunction.harmonic(sample_harmonic(n, 2))]


@pytest.mark.parametrize("n", [2, 3])
def test_inversion_on_thick_deltas(n):
    for m in range(-6, 5):
        for a in _densities(n):
            d = thick(n, thick_delta(m, a))
            assert round_trip(d) == d.reflect().scale(two_pi_power(n)), (m, a)


@pytest.mark.parametrize("lam", ["-1/2", "3/2"])
@pytest.mark.parametrize("n", [2, 3])
def test_inversion_on_powers(lam, n):
    for a in _densities(n):
        d = thick(n, pf_power(lam, a))
        assert round_trip(d) == d.reflect().scale(two_pi_power(n))


@pytest.mark.parametrize("n", [2, 3])
def test_inversion_on_log_deltas(n):
    for q in (0, 1, 2):
        for m in range(q % 2, q + 1, 2):
            a = AngularFunction.harmonic(sample_harmonic(n, m))
            F = sl(n, delta_ln_inf(q, a))
            assert ft_star(ft_upper_star(F).output).output == F.reflect().scale(two_pi_power(n))


def test_inverse_transform_helper():
    d = thick(3, thick_delta(-2, n=3), pf_power("1/3", AngularFunction.coordinate(3, 1)))
    assert inverse_transform(transform(d).output).output == d


@pytest.mark.parametrize("m", [-2, -1, 1, 3])
def test_integral_power_rule_inverts(m):
    d = thick(3, pf_power(m, n=3))
    assert round_trip(d) == d.reflect().scale(two_pi_power(3))


thick_atoms = st.one_of(
    st.builds(lambda m, deg: thick_delta(m, AngularFunction.harmonic(sample_harmonic(3, deg))), st.integers(-6, 4), st.integers(0, 2)),
    st.builds(lambda num, deg: pf_power(Fraction(num, 2), AngularFunction.harmonic(sample_harmonic(3, deg))), st.integers(-9, 5).filter(lambda k: k % 2), st.integers(0, 2)),
)


@given(st.lists(thick_atoms, min_size=1, max_size=3), st.fractions(min_value=-3, max_value=3, max_denominator=5))
def test_transform_is_linear_and_invertible(atoms, c):
    d = ThickDistribution(3, atoms)
    out = ft_star(d).output
    assert ft_star(d.scale(c)).output == out.scale(c)
    assert ft_upper_star(out).output == d.reflect().scale(two_pi_power(3))


@given(st.integers(-9, 5).filter(lambda k: k % 2).map(lambda k: Fraction(k, 2)), st.sampled_from([4, 9, Fraction(1, 4)]))
def test_homogeneity_transport(lam, t):
    # F{Pf(r^lam)} is homogeneous of degree -n-lam
    out = ft_star(thick(3, pf_power(lam, n=3))).output
    assert tau_scale(out, t) == out.scale(ExactScalar.power(t, -3 - lam))


@pytest.mark.parametrize("m", [1, 3, -4, -6])
def test_homogeneity_transport_for_deltas(m):
    # delta_*^[m] is homogeneous of degree -n-m; its transform has degree m
    out = ft_star(thick(3, thick_delta(m, n=3))).output
    assert tau_scale(out, 2) == out.scale(Fraction(2) ** m)


# --- projection to ordinary distributions


def test_projection_examples():
    assert project_classical(thick(3, thick_delta(0, n=3))) == ClassicalDistribution(3, Poly.constant(3), {})
    assert project_classical(thick(3, thick_delta(2, n=3))) == ClassicalDistribution(3, Poly.r_squared(3).scale(Fraction(1, 6)), {})
    assert project_classical(sl(3, delta_inf(-1, n=3))) == ClassicalDistribution(3, Poly(3), {})


def test_projection_commutes_with_transform():
    d = thick(3, thick_delta(2, n=3))
    lhs = project_classical(ft_star(d).output)
    rhs = classical_fourier(project_classical(d))
    expected = ClassicalDistribution(3, Poly(3), {2: AngularFunction.constant(3, Fraction(-1, 6))})
    assert lhs == rhs == expected


@pytest.mark.parametrize("m", [0, 1, 2, 3, 4])
def test_projection_commutes_for_plain_deltas(m):
    for a in _densities(3):
        d = thick(3, thick_delta(m, a))
        assert project_classical(ft_star(d).output) == classical_fourier(project_classical(d))


@pytest.mark.parametrize("lam", ["-1/2", "3/2", "-5/2"])
def test_projection_commutes_for_powers(lam):
    d = thick(3, pf_power(lam, AngularFunction.coordinate(3, 2)))
    assert project_classical(ft_star(d).output) == classical_fourier(project_classical(d))
