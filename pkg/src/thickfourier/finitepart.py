"""Meromorphic families, Laurent data at poles, and Hadamard finite-part integrals."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

import mpmath
from scipy.integrate import IntegrationWarning, quad

from .errors import InsufficientJet, QuadratureFailure, UnknownPoleStructure
from .scalars import (
    ExactScalar,
    FloatApprox,
    c_const,
    gamma_laurent,
    gamma_value,
    rational,
    surface_area,
    to_float,
)

# ---------------------------------------------------------------------------
# quadrature


def _to_complex(c: Any) -> complex:
    if isinstance(c, (ExactScalar, FloatApprox)):
        return complex(c)
    if isinstance(c, Fraction):
        return complex(float(c))
    return complex(c)


def quad_adaptive(
    f: Callable[[float], Any],
    interval: Tuple[float, float],
    tol: float = 1e-10,
    limit: int = 800,
) -> FloatApprox:
    """Integrate ``f`` over ``interval`` (ends may be infinite) to absolute-or-relative ``tol``.

    Uses QUADPACK through scipy: the extrapolating bisection rule on finite
    intervals and the ``x -> 1/t`` style map on infinite ones.  Complex-valued
    integrands are split into real and imaginary parts.
    """
    a, b = interval
    if tol <= 0:
        raise ValueError("tol must be positive")
    probe = f(_probe_point(a, b))
    parts = [lambda x: float(complex(f(x)).real)]
    if isinstance(probe, complex) or isinstance(probe, mpmath.mpc):
        parts.append(lambda x: float(complex(f(x)).imag))
    values, errors = [], []
    for part in parts:
        with warnings.catch_warnings():
            warnings.simplefilter("error", IntegrationWarning)
            try:
                v, e = quad(part, a, b, epsabs=tol, epsrel=tol, limit=limit)
            except IntegrationWarning as w:
                raise QuadratureFailure(f"quadrature on [{a}, {b}] did not converge: {w}") from None
        if not math.isfinite(v) or e > max(tol, tol * abs(v)) * 10:
            raise QuadratureFailure(f"quadrature on [{a}, {b}]: error estimate {e:g} exceeds tolerance {tol:g}")
        values.append(v)
        errors.append(e)
    value = complex(values[0], values[1]) if len(values) == 2 else values[0]
    return FloatApprox(mpmath.mpmathify(value), float(sum(errors)))


def _probe_point(a: float, b: float) -> float:
    if math.isinf(a) and math.isinf(b):
        return 0.37
    if math.isinf(b):
        return a + 1.37
    if math.isinf(a):
        return b - 1.37
    return a + 0.37 * (b - a)


# ---------------------------------------------------------------------------
# Hadamard finite-part integrals


JetValue = Union[Any, Tuple[Any, Any]]


def _split_jet_value(v: JetValue) -> Tuple[complex, complex]:
    if isinstance(v, tuple):
        return _to_complex(v[0]), _to_complex(v[1])
    return _to_complex(v), 0j


@dataclass(frozen=True)
class RadialIntegrand:
    """Radial profile ``f`` of an integrand on R^n with its singular expansions.

    ``zero_jet`` maps an exponent j to ``c`` or ``(c, d)``, meaning the term
    ``c r^j + d r^j ln r`` of the expansion of ``f`` at 0.  ``zero_order`` is
    the order J with ``f - jet = O(r^(J+1))``; it defaults to the largest key.
    ``inf_jet`` and ``inf_order`` describe the expansion at infinity the same
    way, with ``f - jet = O(r^(K-1))`` for ``K = inf_order``.

    ``measure`` is "sphere" (the integral is over R^n, so the radial integral
    is multiplied by the sphere area) or "radial" (plain integral over
    (0, inf) against ``r^(n-1) dr``).  ``remainder0`` optionally supplies a
    cancellation-free evaluation of ``f - zero jet`` on (0, 1].
    """

    n: int
    core: Callable[[float], Any]
    zero_jet: Mapping[Any, JetValue] = field(default_factory=dict)
    zero_order: Optional[Any] = None
    inf_jet: Mapping[Any, JetValue] = field(default_factory=dict)
    inf_order: Optional[Any] = None
    measure: str = "sphere"
    remainder0: Optional[Callable[[float], Any]] = None


def _fp_power_at_zero(a: float) -> float:
    # F.p. of the integral of r^(a-1) over (0, 1)
    return 0.0 if a == 0 else 1.0 / a


def _fp_log_at_zero(a: float) -> float:
    # F.p. of the integral of r^(a-1) ln r over (0, 1)
    return 0.0 if a == 0 else -1.0 / (a * a)


def _fp_power_at_inf(a: float) -> float:
    # F.p. of the integral of s^(a-1) over (1, inf)
    return 0.0 if a == 0 else -1.0 / a


def _fp_log_at_inf(a: float) -> float:
    # F.p. of the integral of s^(a-1) ln s over (1, inf)
    return 0.0 if a == 0 else 1.0 / (a * a)


def _jet_eval(jet: Sequence[Tuple[float, complex, complex]], r: float) -> complex:
    total = 0j
    lr = math.log(r)
    for j, c, d in jet:
        p = r ** j
        total += c * p
        if d:
            total += d * p * lr
    return total


def fp_radial_integral(f: RadialIntegrand, tol: float = 1e-10) -> FloatApprox:
    """Finite-part value of ``integral f(|x|) dx`` over R^n (or the radial integral)."""
    n = f.n
    zjet = [(float(rational(j)), *_split_jet_value(v)) for j, v in f.zero_jet.items()]
    ijet = [(float(rational(q)), *_split_jet_value(v)) for q, v in f.inf_jet.items()]
    if zjet:
        J = float(rational(f.zero_order)) if f.zero_order is not None else max(j for j, _, _ in zjet)
        if J < -n:
            raise InsufficientJet(f"jet at 0 of order {J} leaves a non-integrable remainder in dimension {n}")
    if ijet:
        K = float(rational(f.inf_order)) if f.inf_order is not None else min(q for q, _, _ in ijet)
        if K + n - 1 >= 0:
            raise InsufficientJet(f"jet at infinity of order {K} leaves a non-integrable remainder in dimension {n}")

    def inner(r: float) -> complex:
        if f.remainder0 is not None:
            v = complex(f.remainder0(r))
        else:
            v = complex(f.core(r)) - _jet_eval(zjet, r)
        return v * r ** (n - 1)

    def outer(r: float) -> complex:
        v = complex(f.core(r)) - _jet_eval(ijet, r) if ijet else complex(f.core(r))
        return v * r ** (n - 1)

    q_in = quad_adaptive(inner, (0.0, 1.0), tol / 4)
    q_out = quad_adaptive(outer, (1.0, math.inf), tol / 4)
    corr = 0j
    for j, c, d in zjet:
        corr += c * _fp_power_at_zero(j + n) + d * _fp_log_at_zero(j + n)
    for q, c, d in ijet:
        corr += c * _fp_power_at_inf(q + n) + d * _fp_log_at_inf(q + n)
    total = complex(q_in.value) + complex(q_out.value) + corr
    err = q_in.abs_error_bound + q_out.abs_error_bound + 1e-15 * abs(corr)
    if f.measure == "sphere":
        area = float(to_float(surface_area(n)).value)
        total *= area
        err *= area
    elif f.measure != "radial":
        raise ValueError(f"unknown measure {f.measure!r}")
    value = total.real if abs(total.imag) <= 1e-300 else total
    return FloatApprox(mpmath.mpmathify(value), err)


# ---------------------------------------------------------------------------
# meromorphic families


@dataclass(frozen=True)
class PoleData:
    """Principal part ``[c_1, c_2, ...]`` (coefficient of ``1/(x - x0)^k``) and the regular value."""

    coeffs: Tuple[Any, ...]
    regular: Any

    @property
    def order(self) -> int:
        return len(self.coeffs)


@dataclass(frozen=True)
class MeromorphicFamily:
    """A family ``x -> value`` together with an explicit description of its poles.

    ``pole_rule`` returns :class:`PoleData` for a pole and ``None`` for a
    regular point.  ``analytic_eval`` is never called at a listed pole.
    """

    name: str
    value_space: str
    analytic_eval: Callable[[Any], Any]
    pole_rule: Callable[[Any], Optional[PoleData]]
    n: Optional[int] = None

    def pole(self, x0: Any) -> Optional[PoleData]:
        return self.pole_rule(x0)


def fp_query(fam: MeromorphicFamily, x0: Any, kind: str = "finite_part") -> Any:
    """Finite part, residue or full principal part of ``fam`` at ``x0``."""
    if kind not in ("finite_part", "residue", "principal_part"):
        raise ValueError(f"unknown query kind {kind!r}")
    pd = fam.pole(x0)
    if pd is None:
        if kind == "finite_part":
            try:
                return fam.analytic_eval(x0)
            except (ZeroDivisionError, ValueError) as exc:
                raise UnknownPoleStructure(f"{fam.name} is singular at {x0} but no pole is recorded") from exc
        if kind == "residue":
            return _zero_like(fam)
        return []
    if kind == "finite_part":
        return pd.regular
    if kind == "residue":
        return pd.coeffs[0]
    return list(pd.coeffs)


def _zero_like(fam: MeromorphicFamily) -> Any:
    if fam.value_space == "scalar":
        return ExactScalar(0)
    from .distributions import SlThickDistribution, ThickDistribution

    if fam.value_space == "thick":
        return ThickDistribution(fam.n)
    return SlThickDistribution(fam.n)


def gamma_family() -> MeromorphicFamily:
    """Gamma with its simple poles at 0, -1, -2, ..."""

    def rule(x0: Any) -> Optional[PoleData]:
        x = rational(x0)
        if x.denominator == 1 and x <= 0:
            res, fin = gamma_laurent(int(-x))
            return PoleData((res,), fin)
        return None

    def evaluate(x0: Any) -> Any:
        if isinstance(x0, (float, complex)):
            return FloatApprox(mpmath.gamma(x0), 0.0)
        return gamma_value(x0)

    return MeromorphicFamily("Gamma", "scalar", evaluate, rule)


def simple_pole_set_at_infinity(m: int, n: int) -> bool:
    """Integers where ``Pf_W(s^lam)`` has a simple pole."""
    if m >= 0:
        return m % 2 == 1
    if m <= -n:
        return (m + n) % 2 == 1
    return True


def double_pole_at_infinity(m: int, n: int) -> bool:
    return m <= -n and (m + n) % 2 == 0


def pf_power_family(side: str, n: int, space: str = "thick") -> MeromorphicFamily:
    """The families ``Pf(r^lam)`` (side "at_zero") and ``Pf_W(s^lam)`` (side "at_infinity").

    At zero, ``space="thick"`` gives the thick family, with a simple pole at
    every integer k and residue ``C delta_*^[-k-n]``; ``space="classical"``
    gives the classical family, with poles only at ``-n-2m`` and residue
    ``c_{m,n} Lap^m delta/(2m)!``.
    """
    from . import distributions as D

    if n < 2:
        raise ValueError("n must be at least 2")
    C = surface_area(n)

    if side == "at_zero":
        if space not in ("thick", "classical"):
            raise ValueError(f"unknown space {space!r}")

        def evaluate(lam: Any) -> Any:
            return D.ThickDistribution(n, [D.pf_power(lam, n=n)])

        def rule(lam: Any) -> Optional[PoleData]:
            x = rational(lam)
            if x.denominator != 1:
                return None
            k = int(x)
            regular = evaluate(k)
            if space == "thick":
                return PoleData((D.ThickDistribution(n, [D.thick_delta(-k - n, n=n, weight=C)]),), regular)
            if k <= -n and (k + n) % 2 == 0:
                m = (-n - k) // 2
                res = D.ThickDistribution(n, [D.laplacian_power_delta(m, n, c_const(m, n) / math.factorial(2 * m))])
                return PoleData((res,), regular)
            return None

        return MeromorphicFamily("Pf", space if space == "classical" else "thick", evaluate, rule, n)

    if side == "at_infinity":

        def evaluate(lam: Any) -> Any:
            return D.SlThickDistribution(n, [D.pfw_power(lam, n=n)])

        def rule(lam: Any) -> Optional[PoleData]:
            x = rational(lam)
            if x.denominator != 1:
                return None
            m = int(x)
            regular = evaluate(m)
            if simple_pole_set_at_infinity(m, n):
                res = D.SlThickDistribution(n, [D.delta_inf(-n - m, n=n, weight=-C)])
                return PoleData((res,), regular)
            if double_pole_at_infinity(m, n):
                q = (-n - m) // 2
                first = D.SlThickDistribution(n, [D.laplacian_power_delta(q, n, c_const(q, n) / math.factorial(2 * q), space="slthick")])
                second = D.SlThickDistribution(n, [D.delta_ln_inf(2 * q, n=n, weight=C)])
                return PoleData((first, second), regular)
            return None

        return MeromorphicFamily("PfW", "slthick", evaluate, rule, n)

    raise ValueError(f"unknown side {side!r}")


def pole_table(fam: MeromorphicFamily, lam_range: Sequence[int]) -> Dict[str, Any]:
    """Serialisable table of the poles of a distribution-valued family over a range of integers."""
    poles = []
    for lam in lam_range:
        pd = fam.pole(lam)
        if pd is None:
            continue
        poles.append({"lambda": str(lam), "order": pd.order, "coeffs": [c.to_json() for c in pd.coeffs]})
    return {"family": fam.name, "n": fam.n, "poles": poles}


# ---------------------------------------------------------------------------
# the exact tail family  F(lam) = integral_{x0}^inf (A + B ln x) x^(lam+beta) dx


class _LogSeries:
    """Truncated power series in mu whose coefficients are polynomials in L = ln x0."""

    def __init__(self, coeffs: Dict[int, Dict[int, Fraction]]):
        self.coeffs = {k: {p: c for p, c in v.items() if c} for k, v in coeffs.items()}

    @staticmethod
    def exp_l(order: int) -> "_LogSeries":
        # x0^mu = sum_k (mu L)^k / k!
        return _LogSeries({k: {k: Fraction(1, math.factorial(k))} for k in range(order + 1)})

    def shift(self, by: int) -> "_LogSeries":
        return _LogSeries({k + by: v for k, v in self.coeffs.items()})

    def scale(self, c: Fraction, lpow: int = 0) -> "_LogSeries":
        return _LogSeries({k: {p + lpow: x * c for p, x in v.items()} for k, v in self.coeffs.items()})

    def __add__(self, other: "_LogSeries") -> "_LogSeries":
        out: Dict[int, Dict[int, Fraction]] = {k: dict(v) for k, v in self.coeffs.items()}
        for k, v in other.coeffs.items():
            slot = out.setdefault(k, {})
            for p, c in v.items():
                slot[p] = slot.get(p, Fraction(0)) + c
        return _LogSeries(out)

    def coefficient(self, k: int) -> Dict[int, Fraction]:
        return {p: c for p, c in self.coeffs.get(k, {}).items() if c}


def _log_poly_to_value(poly: Dict[int, Fraction], x0: Fraction) -> Any:
    """Turn ``sum c_p L^p`` into an exact scalar when possible, else a float."""
    if not poly:
        return ExactScalar(0)
    if set(poly) <= {0, 1}:
        return ExactScalar(poly.get(0, 0)) + poly.get(1, Fraction(0)) * ExactScalar.log(x0)
    L = mpmath.log(mpmath.mpf(x0.numerator) / x0.denominator)
    return FloatApprox(sum(mpmath.mpf(c.numerator) / c.denominator * L ** p for p, c in poly.items()), 1e-25)


def tail_family(A: Any, B: Any, beta: Any, x0: Any) -> MeromorphicFamily:
    """``lam -> integral_{x0}^inf (A + B ln x) x^(lam+beta) dx`` continued from Re(lam) < -beta-1.

    The closed form in ``mu = lam + beta + 1`` is
    ``x0^mu (-A/mu + B/mu^2 - B ln(x0)/mu)``; its Laurent data at ``mu = 0``
    are obtained by multiplying out the exponential series of ``x0^mu``.
    """
    A, B, beta, x0 = rational(A), rational(B), rational(beta), rational(x0)
    if x0 <= 0:
        raise ValueError("x0 must be positive")
    pole_at = -beta - 1
    # series of the bracket times x0^mu, with mu-power offset -2
    e = _LogSeries.exp_l(4)
    series = e.scale(-A).shift(-1) + e.scale(B).shift(-2) + e.scale(-B, lpow=1).shift(-1)

    def rule(lam: Any) -> Optional[PoleData]:
        if rational(lam) != pole_at:
            return None
        c1 = _log_poly_to_value(series.coefficient(-1), x0)
        c2 = _log_poly_to_value(series.coefficient(-2), x0)
        coeffs = (c1, c2) if not _is_zero(c2) else (c1,)
        return PoleData(coeffs, _log_poly_to_value(series.coefficient(0), x0))

    def evaluate(lam: Any) -> Any:
        with mpmath.workdps(30):
            mu = mpmath.mpmathify(lam if isinstance(lam, (float, complex)) else float(rational(lam))) + float(beta) + 1
            if mu == 0:
                raise ZeroDivisionError("pole")
            xv = mpmath.mpf(x0.numerator) / x0.denominator
            L = mpmath.log(xv)
            v = xv ** mu * (-float(A) / mu + float(B) / mu ** 2 - float(B) * L / mu)
        return FloatApprox(v, 1e-20 * (1 + abs(v)))

    return MeromorphicFamily("tail", "scalar", evaluate, rule)


def _is_zero(v: Any) -> bool:
    if isinstance(v, FloatApprox):
        return v.value == 0
    return v == 0
