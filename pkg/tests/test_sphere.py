from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from thickfourier.scalars import PI, surface_area
from thickfourier.sphere import (
    AngularFunction,
    Poly,
    dim_harmonic,
    eval_univariate,
    funk_hecke_eigenvalue,
    harmonic_decompose,
    in_Dq,
    in_Pq,
    monomial_mean,
    monomial_sphere_integral,
    polynomial_part,
    sample_harmonic,
    sphere_mean,
    zonal_kernel,
    zonal_project,
)

x = [Poly.variable(3, j) for j in range(3)]
r2 = Poly.r_squared(3)


def test_poly_arithmetic():
    p = x[0] * x[0] + x[1].scale(3)
    assert p.degree() == 2
    assert not p.is_homogeneous()
    assert set(p.homogeneous_parts()) == {1, 2}
    assert (x[0] * x[0]).laplacian() == Poly.constant(3, 2)
    assert r2.laplacian() == Poly.constant(3, 6)
    assert (x[0] * x[1]).diff(0) == x[1]
    assert (x[0] * x[0] * x[0]).reflect() == (x[0] * x[0] * x[0]).scale(-1)
    assert p.evaluate([1, 2, 0]) == 7


def test_poly_json_round_trip():
    p = x[0] * x[0] * x[2] + x[1].scale(Fraction(2, 3))
    assert Poly.from_json(p.to_json()) == p


@pytest.mark.parametrize("alpha, expected", [((2, 0, 0), Fraction(1, 3)), ((1, 0, 0), 0), ((2, 2, 0), Fraction(1, 15)), ((4, 0, 0), Fraction(1, 5))])
def test_monomial_mean(alpha, expected):
    assert monomial_mean(alpha) == expected


def test_monomial_integral():
    assert monomial_sphere_integral((2, 0, 0)) == PI * Fraction(4, 3)
    assert monomial_sphere_integral((0, 0)) == 2 * PI


def test_harmonic_decompose_examples():
    assert harmonic_decompose(x[0] * x[1]) == [x[0] * x[1]]
    assert harmonic_decompose(x[0] * x[0]) == [x[0] * x[0] - r2.scale(Fraction(1, 3)), Poly.constant(3, Fraction(1, 3))]
    cube = x[0] * x[0] * x[0]
    assert harmonic_decompose(cube) == [cube - (x[0] * r2).scale(Fraction(3, 5)), x[0].scale(Fraction(3, 5))]


@pytest.mark.parametrize("m, n, d", [(0, 3, 1), (1, 3, 3), (2, 3, 5), (3, 2, 2), (2, 4, 9)])
def test_dim_harmonic(m, n, d):
    assert dim_harmonic(m, n) == d


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_zonal_kernel_small_degrees(n):
    assert zonal_kernel(0, n) == (1,)
    assert eval_univariate(zonal_kernel(1, n), Fraction(1, 3)) == Fraction(n, 3)
    t = Fraction(2, 7)
    assert eval_univariate(zonal_kernel(2, n), t) == Fraction((n + 2) * (n * t * t - 1), 2)
    # Z_m(1) = dim H_m
    for m in range(6):
        assert eval_univariate(zonal_kernel(m, n), 1) == dim_harmonic(m, n)


def test_zonal_projection_reproduces():
    y = sample_harmonic(3, 2)
    assert zonal_project(y, 2) == y
    assert zonal_project(y, 0).is_zero


def test_funk_hecke():
    # t^2 acts on degree-2 harmonics by 2/15 (mean over S^2)
    assert funk_hecke_eigenvalue([0, 0, 1], 2, 3) == Fraction(2, 15)
    assert funk_hecke_eigenvalue([0, 0, 1], 0, 3) == Fraction(1, 3)


def test_polynomial_part_examples():
    a = AngularFunction.from_poly(x[0] * x[0])
    e, rest = polynomial_part(a, 2)
    assert e.poly == x[0] * x[0]
    assert rest.is_zero
    b = AngularFunction.from_poly(x[0] * x[0] * x[0])
    e, rest = polynomial_part(b, 2)
    assert e.poly.is_zero
    assert rest == b
    e, rest = polynomial_part(AngularFunction(3), 2)
    assert e.poly.is_zero and rest.is_zero


def test_domain_predicates():
    a = AngularFunction.from_poly(x[0] * x[0])
    assert in_Dq(a, -1, 3)
    assert not in_Dq(a, 2, 3)
    assert in_Dq(AngularFunction.harmonic(sample_harmonic(3, 3)), 2, 3)
    assert in_Pq(a, 2)


def test_angular_inner_uses_mean():
    one = AngularFunction.constant(3)
    assert one.inner(one) == 1
    x1 = AngularFunction.coordinate(3, 0)
    assert x1.inner(x1) == Fraction(1, 3)


def test_angular_json_round_trip():
    a = AngularFunction.from_poly(x[0] * x[0] * x[1] + x[2])
    assert AngularFunction.from_json(a.to_json()) == a


def test_coordinate_multiplication():
    x1 = AngularFunction.coordinate(3, 0)
    assert x1.multiply_coordinate(0) == AngularFunction.from_poly(x[0] * x[0])


def test_homogeneous_extension():
    a = AngularFunction.from_poly(x[0] * x[0])
    assert a.homogeneous_extension(2) == x[0] * x[0]
    assert AngularFunction.constant(3).homogeneous_extension(2) == r2


# --- properties

coeff = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def polys(draw, n=3, max_degree=4):
    terms = {}
    for _ in range(draw(st.integers(1, 4))):
        alpha = tuple(draw(st.integers(0, 2)) for _ in range(n))
        if sum(alpha) <= max_degree:
            terms[alpha] = draw(coeff)
    return Poly(n, terms)


@given(polys())
def test_decomposition_is_harmonic_and_reassembles(p):
    for part in p.homogeneous_parts().values():
        comps = harmonic_decompose(part)
        total = Poly(3)
        for j, h in enumerate(comps):
            assert h.laplacian().is_zero
            total = total + h * Poly.r_squared(3, j)
        assert total == part


@given(polys(), polys())
def test_inner_matches_sphere_mean(p, q):
    a, b = AngularFunction.from_poly(p), AngularFunction.from_poly(q)
    assert a.inner(b) == sphere_mean(p * q)


@given(polys())
def test_reflection_is_involution(p):
    a = AngularFunction.from_poly(p)
    assert a.reflect().reflect() == a


@given(st.integers(2, 5), st.integers(0, 5))
def test_zonal_projection_idempotent(n, m):
    y = sample_harmonic(n, m)
    assert zonal_project(y, m) == y
    assert y.laplacian().is_zero
    assert surface_area(n) != 0
