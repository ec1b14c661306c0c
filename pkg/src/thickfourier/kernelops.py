"""Coefficient tables for the rotation-invariant kernel operators.

On a harmonic ``Y_m`` of degree m the operator ``K_beta`` (Fourier transform of
``r^beta Y_m`` read off on the sphere) acts by the scalar

    kappa(beta, m) = i^m pi^(n/2) 2^(-beta) Gamma((m - beta)/2) / Gamma((m + n + beta)/2).

When ``beta = q`` is a non-negative integer and ``q - m = 2j`` is even and
non-negative the Gamma in the numerator has a pole; the transform then has a
``ln s`` part with coefficient ``lam(q, j)`` and a finite part given by a
digamma combination.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Tuple, Union

import mpmath

from .errors import NotInDomain, OutOfRange, PoleInGamma
from .scalars import (
    LN2,
    ExactScalar,
    FloatApprox,
    digamma_value,
    gamma_value,
    rational,
)
from .sphere import AngularFunction, in_Dq, in_Pq

Param = Union[int, Fraction, str, float]


@dataclass(frozen=True)
class KernelCoefficient:
    value: Union[ExactScalar, FloatApprox]
    log_flag: bool = False

    @property
    def exact(self) -> bool:
        return isinstance(self.value, ExactScalar)


def _is_float(x: Any) -> bool:
    return isinstance(x, (float, complex))


def _as_param(beta: Param) -> Fraction:
    return rational(beta)


def is_resonant(beta: Fraction, m: int) -> bool:
    """True when Gamma((m - beta)/2) sits on a pole."""
    return beta.denominator == 1 and beta >= m and (beta - m) % 2 == 0


def _resonant_kappa(q: int, j: int, n: int) -> ExactScalar:
    half_n = Fraction(n, 2)
    pref = ExactScalar.i_power(q) * ExactScalar.pi_power(half_n) * Fraction(1, 2 ** q)
    pref = pref / (math.factorial(j) * gamma_value(half_n + q - j))
    return pref * (digamma_value(1 + j) + digamma_value(half_n + q - j) + 2 * LN2)


def _generic_kappa(beta: Fraction, m: int, n: int) -> ExactScalar:
    top = Fraction(m, 1) - beta
    bottom = Fraction(m + n, 1) + beta
    if bottom.denominator == 1 and bottom <= 0 and bottom % 2 == 0:
        raise PoleInGamma(f"kappa({beta}, {m}) with n={n}: Gamma((m+n+beta)/2) has a pole")
    value = ExactScalar.i_power(m) * ExactScalar.pi_power(Fraction(n, 2)) * ExactScalar.power(2, -beta)
    return value * gamma_value(top / 2) / gamma_value(bottom / 2)


def _float_kappa(beta: complex, m: int, n: int, precision: int = 30) -> FloatApprox:
    with mpmath.workdps(precision + 10):
        b = mpmath.mpmathify(beta)
        den_arg = (m + n + b) / 2
        if mpmath.im(den_arg) == 0 and mpmath.re(den_arg) <= 0 and mpmath.re(den_arg) == int(mpmath.re(den_arg)):
            raise PoleInGamma(f"kappa({beta}, {m}) with n={n}: Gamma((m+n+beta)/2) has a pole")
        v = (mpmath.mpc(0, 1) ** m) * mpmath.pi ** (mpmath.mpf(n) / 2) * mpmath.power(2, -b)
        v = v * mpmath.gamma((m - b) / 2) * mpmath.rgamma(den_arg)
        bound = float(abs(v)) * 10.0 ** (-precision)
    with mpmath.workdps(precision):
        v = +v
    return FloatApprox(v, bound)


def kappa_coeff(beta: Param, m: int, n: int) -> KernelCoefficient:
    """Coefficient of ``Y_m`` under ``K_beta`` (the non-log part at resonances).

    Rational ``beta`` (ints, Fractions, rational strings) give an exact value.
    Floats take a numerical path unless they are integers.
    """
    if m < 0:
        raise ValueError("harmonic degree must be non-negative")
    if _is_float(beta) and not (isinstance(beta, float) and beta.is_integer()):
        return KernelCoefficient(_float_kappa(beta, m, n))
    b = _as_param(beta)
    if is_resonant(b, m):
        q = int(b)
        return KernelCoefficient(_resonant_kappa(q, (q - m) // 2, n))
    return KernelCoefficient(_generic_kappa(b, m, n))


def lambda_coeff(q: int, m: int, n: int) -> KernelCoefficient:
    """Coefficient of ``ln s`` on the degree ``q - 2m`` component under ``K_q``."""
    if q < 0 or m < 0 or 2 * m > q:
        raise OutOfRange(f"lambda_coeff needs 0 <= 2m <= q, got q={q}, m={m}")
    half_n = Fraction(n, 2)
    v = -ExactScalar.i_power(q) * ExactScalar.power(2, 1 - q) * ExactScalar.pi_power(half_n)
    v = v / (math.factorial(m) * gamma_value(half_n + q - m))
    return KernelCoefficient(v, log_flag=True)


def _exact_value(c: KernelCoefficient) -> ExactScalar:
    if not c.exact:
        raise TypeError("operator action needs exact coefficients")
    return c.value  # type: ignore[return-value]


def apply_K(beta: Param, a: AngularFunction) -> Tuple[AngularFunction, AngularFunction]:
    """Diagonal action of ``K_beta``: returns (main part, coefficient of ln s)."""
    b = _as_param(beta)
    n = a.n
    main = a.map_degrees(lambda m: _exact_value(kappa_coeff(b, m, n)))
    if b.denominator == 1 and b >= 0:
        q = int(b)
        log_part = a.restrict(lambda m: m <= q and (q - m) % 2 == 0).map_degrees(
            lambda m: _exact_value(lambda_coeff(q, (q - m) // 2, n))
        )
    else:
        log_part = AngularFunction(n)
    return main, log_part


def frak_apply(
    q: int,
    a: AngularFunction,
    n: int = None,
    inverse: bool = False,
    mode: str = "K",
) -> AngularFunction:
    """The isomorphisms on ``D_q`` (mode "K") and on ``P_q`` (mode "L").

    Mode "K" maps ``D_q`` onto ``D_(-n-q)``, which is the same space; its
    inverse is ``(2 pi)^-n`` times the "K" operator of order ``-n-q`` composed
    with the reflection ``w -> -w``.  Mode "L" multiplies the degree ``q-2j``
    component by ``lam(q, j)``.
    """
    n = a.n if n is None else n
    if n != a.n:
        raise ValueError("dimension mismatch")
    if mode == "K":
        if not in_Dq(a, q, n):
            raise NotInDomain(f"density has harmonic degrees excluded from D_{q}")
        if not inverse:
            return a.map_degrees(lambda m: _exact_value(kappa_coeff(q, m, n)))
        scale = ExactScalar.pi_power(-n) * Fraction(1, 2 ** n)
        return a.map_degrees(lambda m: scale * (-1) ** m * _exact_value(kappa_coeff(-n - q, m, n)))
    if mode == "L":
        if not in_Pq(a, q):
            raise NotInDomain(f"density is not in P_{q}")
        if not inverse:
            return a.map_degrees(lambda m: _exact_value(lambda_coeff(q, (q - m) // 2, n)))
        return a.map_degrees(lambda m: 1 / _exact_value(lambda_coeff(q, (q - m) // 2, n)))
    raise ValueError(f"unknown mode {mode!r}")
