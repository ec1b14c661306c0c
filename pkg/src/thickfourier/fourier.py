"""Fourier transforms of homogeneous functions, jets, and catalog distributions.

Convention: ``F{f}(u) = integral f(x) exp(i x.u) dx``, so that
``F{Y_k(x) exp(-|x|^2/2)} = (2 pi)^(n/2) i^k Y_k(u) exp(-|u|^2/2)`` and
``F F = (2 pi)^n R`` with ``R`` the reflection.  ``ft_star`` sends thick
distributions at the origin to sl-thick distributions; ``ft_upper_star`` goes
the other way.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from .distributions import (
    AtomSum,
    Atom,
    SlThickDistribution,
    ThickDistribution,
    ThickJet,
    WFunctionJet,
    delta_inf,
    delta_ln_inf,
    deriv_delta,
    pf_power,
    pfw_power,
    thick_delta,
)
from .errors import ChiUndefined, PoleInGamma, TruncationMismatch, UnsupportedAtomTransform
from .finitepart import simple_pole_set_at_infinity
from .kernelops import apply_K, frak_apply, kappa_coeff, lambda_coeff
from .scalars import LN2, ExactScalar, digamma_value, gamma_value, rational, surface_area
from .sphere import (
    AngularFunction,
    Poly,
    funk_hecke_eigenvalue,
    monomial_mean,
    project_Dq,
    project_Pq,
    compositions,
)


def two_pi_power(n: int) -> ExactScalar:
    return ExactScalar.pi_power(n) * 2 ** n


# ---------------------------------------------------------------------------
# scalar constants


def g_value(lam: Any, n: int) -> ExactScalar:
    """``F{r^lam} = g(lam) s^(-lam-n)`` with ``g(lam) = pi^(n/2) 2^(lam+n) Gamma((lam+n)/2) / Gamma(-lam/2)``."""
    lam = rational(lam)
    top = (lam + n) / 2
    bottom = -lam / 2
    if top.denominator == 1 and top <= 0:
        raise PoleInGamma(f"g({lam}) has a pole in dimension {n}")
    if bottom.denominator == 1 and bottom <= 0:
        return ExactScalar(0)
    return ExactScalar.pi_power(Fraction(n, 2)) * ExactScalar.power(2, lam + n) * gamma_value(top) / gamma_value(bottom)


@dataclass(frozen=True)
class GFunction:
    n: int

    def __call__(self, lam: Any) -> ExactScalar:
        return g_value(lam, self.n)


def chi_value(m: int, n: int) -> ExactScalar:
    """``(C/2)(2 ln 2 + psi((m+n)/2) + psi(-m/2))``, symmetric under ``m -> -n-m``."""
    a = Fraction(m + n, 2)
    b = Fraction(-m, 2)
    for x in (a, b):
        if x.denominator == 1 and x <= 0:
            raise ChiUndefined(f"chi_{m} is undefined in dimension {n}: digamma pole at {x}")
    return surface_area(n) / 2 * (2 * LN2 + digamma_value(a) + digamma_value(b))


# ---------------------------------------------------------------------------
# closed forms for r^lam Y_k


@dataclass(frozen=True)
class ClosedForm:
    """Transform of ``r^lam Y_k``.

    kind "power":     ``coefficient * s^exponent * Y_k(v)``
    kind "power_log": ``(coefficient + log_coefficient * ln s) * s^exponent * Y_k(v)``
    kind "delta":     ``coefficient * Y_k(grad) Lap^q delta`` with ``q = (lam - k)/2``
    """

    kind: str
    lam: Fraction
    k: int
    n: int
    coefficient: ExactScalar
    exponent: Optional[Fraction] = None
    log_coefficient: ExactScalar = ExactScalar(0)

    def radial(self, s: float) -> complex:
        """Radial factor at ``s`` (for the non-delta kinds)."""
        import math as _m

        if self.kind == "delta":
            raise ValueError("a derivative of delta has no radial profile")
        v = complex(self.coefficient) * s ** float(self.exponent)
        if self.kind == "power_log":
            v += complex(self.log_coefficient) * s ** float(self.exponent) * _m.log(s)
        return v

    def __str__(self) -> str:
        if self.kind == "power":
            return f"{self.coefficient} s^({self.exponent}) Y_{self.k}"
        if self.kind == "power_log":
            return f"({self.coefficient} + {self.log_coefficient} ln s) s^({self.exponent}) Y_{self.k}"
        q = (self.lam - self.k) / 2
        return f"{self.coefficient} Y_{self.k}(grad) Lap^{q} delta"


def ft_closed_form(lam: Any, k: int, n: int) -> ClosedForm:
    """Fourier transform of ``r^lam Y_k`` for a harmonic ``Y_k`` of degree k."""
    lam = rational(lam)
    if lam.denominator == 1 and lam >= k and (lam - k) % 2 == 0:
        q = int(lam - k) // 2
        coeff = two_pi_power(n) * ExactScalar.i_power(-k) * (-1) ** q
        return ClosedForm("delta", lam, k, n, coeff)
    beta = -n - lam
    if beta.denominator == 1 and beta >= k and (beta - k) % 2 == 0:
        q = int(beta)
        main = kappa_coeff(q, k, n).value
        log = lambda_coeff(q, (q - k) // 2, n).value
        return ClosedForm("power_log", lam, k, n, main, beta, log)
    return ClosedForm("power", lam, k, n, kappa_coeff(beta, k, n).value, beta)


# ---------------------------------------------------------------------------
# jets


def ft_jet(phi: ThickJet) -> WFunctionJet:
    """Expansion at infinity of the transform of a test function with expansion ``phi`` at 0.

    The order-j coefficient feeds order ``q = -n-j``.  The result keeps the
    resonant components of ``A_q`` (call ``.projected()`` for the
    polynomial-free form).  Components of ``a_j`` (j >= 0) in ``P_j`` only
    contribute derivatives of delta at the origin and are dropped.
    """
    n = phi.n
    if any(j > phi.truncation for j in phi.coeffs):
        raise TruncationMismatch("jet coefficients beyond the declared truncation")
    A: Dict[int, AngularFunction] = {}
    P: Dict[int, AngularFunction] = {}
    for j, a in phi.coeffs.items():
        q = -n - j
        if j >= 0:
            a = a - project_Pq(a, j)
        main, log = apply_K(q, a)
        A[q] = main
        if not log.is_zero:
            P[q] = log
    return WFunctionJet(n, A, P, lowest=-n - phi.truncation)


def ift_jet(Phi: WFunctionJet) -> ThickJet:
    """Inverse of :func:`ft_jet` on polynomial-free data."""
    n = Phi.n
    if any(q < Phi.lowest for q in list(Phi.A) + list(Phi.P)):
        raise TruncationMismatch("jet coefficients below the declared truncation")
    coeffs: Dict[int, AngularFunction] = {}
    for q in set(Phi.A) | set(Phi.P):
        j = -n - q
        a = frak_apply(q, project_Dq(Phi.A.get(q, AngularFunction(n)), q), n, inverse=True)
        if q >= 0 and q in Phi.P:
            a = a + frak_apply(q, Phi.P[q], n, inverse=True, mode="L")
        coeffs[j] = a
    return ThickJet(n, coeffs, truncation=-n - Phi.lowest)


# ---------------------------------------------------------------------------
# catalog transforms


@dataclass
class TransformResult:
    output: Any
    provenance: List[Dict[str, str]] = field(default_factory=list)

    def to_json(self) -> Dict[str, Any]:
        return self.output.to_json(self.provenance)


class _Collector:
    def __init__(self, cls: type, n: int):
        self.cls, self.n = cls, n
        self.atoms: List[Atom] = []
        self.rules: Dict[Tuple[str, Fraction], List[str]] = {}

    def add(self, atom: Atom, rule: str) -> None:
        if atom.full_density().is_zero:
            return
        self.atoms.append(atom)
        rules = self.rules.setdefault((atom.kind, atom.param), [])
        if rule not in rules:
            rules.append(rule)

    def result(self) -> TransformResult:
        out = self.cls(self.n, self.atoms)
        prov = [{"rule": " + ".join(self.rules[(a.kind, a.param)])} for a in out.atoms]
        return TransformResult(out, prov)


def _polynomial_symbol(f: AngularFunction, m: int) -> AngularFunction:
    """``i^m/m! (1/C) integral (v.w)^m f(w) dsigma(w)`` as a function of v."""
    coeff = ExactScalar.i_power(m) / math.factorial(m)
    t_m = [Fraction(0)] * m + [Fraction(1)]
    return f.map_degrees(lambda d: coeff * funk_hecke_eigenvalue(t_m, d, f.n))


def _polynomial_symbol_inverse(A: AngularFunction, m: int) -> AngularFunction:
    coeff = ExactScalar.i_power(m) / math.factorial(m)
    return A.map_degrees(lambda d: 1 / (coeff * funk_hecke_eigenvalue([Fraction(0)] * m + [Fraction(1)], d, A.n)))


def _ft_star_atom(atom: Atom, out: _Collector) -> None:
    n = atom.n
    dens = atom.full_density()
    tp = two_pi_power(n)
    if atom.kind == "ThickDelta":
        m = atom.q
        if 1 - n <= m <= -1:
            out.add(delta_inf(-n - m, frak_apply(m, dens, n)), "thick-delta-intermediate-order")
        elif m >= 0:
            poly = project_Pq(dens, m)
            rest = dens - poly
            out.add(pfw_power(m, _polynomial_symbol(poly, m)), "thick-delta-polynomial-part")
            out.add(delta_inf(-n - m, frak_apply(m, rest, n)), "thick-delta-nonpolynomial-part")
        else:
            q = -n - m
            poly = project_Pq(dens, q)
            rest = dens - poly
            out.add(delta_ln_inf(q, frak_apply(q, poly, n, inverse=True, mode="L").reflect().scale(tp)), "thick-delta-log-part")
            out.add(delta_inf(q, frak_apply(m, rest, n)), "thick-delta-nonpolynomial-part")
        return
    if atom.kind == "Pf":
        lam = atom.param
        if lam.denominator != 1:
            main, _ = apply_K(-n - lam, dens)
            out.add(pfw_power(-lam - n, main), "pf-nonintegral-power")
            return
        k = int(lam)
        rest = dens
        if k >= 0:
            poly = project_Pq(dens, k)
            rest = dens - poly
            if not poly.is_zero:
                P = poly.homogeneous_extension(k).scale(tp * ExactScalar.i_power(-k))
                out.add(deriv_delta(P, "slthick"), "pf-polynomial")
        if rest.is_zero:
            return
        m = -n - k
        if rest.is_constant and simple_pole_set_at_infinity(m, n):
            c = ExactScalar(rest.constant_value())
            g = g_value(k, n) * c
            out.add(pfw_power(m, n=n, weight=g), "pf-integral-power")
            out.add(delta_inf(k, n=n, weight=g * chi_value(m, n)), "pf-integral-power")
            return
        raise UnsupportedAtomTransform(f"no transform rule for Pf(r^{k} a) with this density")
    raise UnsupportedAtomTransform(f"no transform rule for {atom.kind} atoms")


def _ft_upper_atom(atom: Atom, out: _Collector) -> None:
    n = atom.n
    dens = atom.full_density()
    tp = two_pi_power(n)
    if atom.kind == "DeltaInf":
        q = atom.q
        out.add(thick_delta(-n - q, frak_apply(q, dens, n)), "delta-at-infinity")
        return
    if atom.kind == "DeltaLnInf":
        q = atom.q
        out.add(thick_delta(-n - q, frak_apply(q, dens, n, mode="L")), "log-delta-at-infinity")
        return
    if atom.kind == "DerivDeltaOrigin":
        d = atom.q
        out.add(pf_power(d, AngularFunction.from_poly(dens.scale(ExactScalar.i_power(-d)))), "derivative-of-delta")
        return
    if atom.kind == "PfW":
        lam = atom.param
        if lam.denominator != 1:
            main, _ = apply_K(-n - lam, dens)
            out.add(pf_power(-lam - n, main), "pfw-nonintegral-power")
            return
        m = int(lam)
        rest = dens
        if m >= 0:
            poly = project_Pq(dens, m)
            rest = dens - poly
            if not poly.is_zero:
                g = _polynomial_symbol_inverse(poly, m).reflect().scale(tp)
                out.add(thick_delta(m, g), "pfw-polynomial")
        if rest.is_zero:
            return
        if rest.is_constant and simple_pole_set_at_infinity(m, n):
            c = ExactScalar(rest.constant_value())
            g = g_value(m, n) * c
            out.add(pf_power(-m - n, n=n, weight=g), "pfw-integral-power")
            out.add(thick_delta(m, n=n, weight=-(g * chi_value(m, n))), "pfw-integral-power")
            return
        raise UnsupportedAtomTransform(f"no transform rule for Pf_W(s^{m} A) with this density")
    raise UnsupportedAtomTransform(f"no transform rule for {atom.kind} atoms")


def ft_star(f: ThickDistribution) -> TransformResult:
    """Transform of a thick distribution at the origin; an sl-thick distribution."""
    if not isinstance(f, ThickDistribution):
        raise TypeError("ft_star takes a ThickDistribution")
    out = _Collector(SlThickDistribution, f.n)
    for atom in f.atoms:
        _ft_star_atom(atom, out)
    return out.result()


def ft_upper_star(F: SlThickDistribution) -> TransformResult:
    """Transform of an sl-thick distribution; a thick distribution at the origin."""
    if not isinstance(F, SlThickDistribution):
        raise TypeError("ft_upper_star takes an SlThickDistribution")
    out = _Collector(ThickDistribution, F.n)
    for atom in F.atoms:
        _ft_upper_atom(atom, out)
    return out.result()


def transform(d: AtomSum) -> TransformResult:
    return ft_star(d) if isinstance(d, ThickDistribution) else ft_upper_star(d)


def inverse_transform(d: AtomSum) -> TransformResult:
    """``(2 pi)^-n R`` composed with the transform, i.e. the inverse of the opposite direction."""
    res = transform(d)
    scale = 1 / two_pi_power(d.n)
    return TransformResult(res.output.reflect().scale(scale), res.provenance)


# ---------------------------------------------------------------------------
# classical projection


@dataclass
class ClassicalDistribution:
    """``P(grad) delta`` plus a finite sum of homogeneous functions ``r^lam a(w)``."""

    n: int
    derivative_symbol: Poly
    functions: Dict[Fraction, AngularFunction]

    def __post_init__(self) -> None:
        self.functions = {rational(k): v for k, v in self.functions.items() if not v.is_zero}

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, ClassicalDistribution):
            return NotImplemented
        return (self.n, self.derivative_symbol, self.functions) == (other.n, other.derivative_symbol, other.functions)

    def __repr__(self) -> str:
        parts = []
        if not self.derivative_symbol.is_zero:
            parts.append(f"[{self.derivative_symbol!r}](grad) delta")
        for lam, a in sorted(self.functions.items()):
            parts.append(f"r^{lam} {a!r}")
        return "ClassicalDistribution(" + (" + ".join(parts) or "0") + ")"


def _classical_from_delta(f: AngularFunction, m: int) -> Poly:
    n = f.n
    fp = f.to_poly()
    terms = {}
    for alpha in compositions(m, n):
        c = sum_mean(fp, alpha)
        if c != 0:
            terms[alpha] = c * Fraction((-1) ** m, math.prod(math.factorial(a) for a in alpha))
    return Poly(n, terms)


def sum_mean(p: Poly, alpha: Tuple[int, ...]) -> Any:
    total: Any = Fraction(0)
    for beta, c in p.terms.items():
        mm = monomial_mean(tuple(x + y for x, y in zip(alpha, beta)))
        if mm:
            total = total + c * mm
    return total


def project_classical(d: AtomSum) -> ClassicalDistribution:
    """The ordinary distribution underlying a thick or sl-thick one."""
    n = d.n
    symbol = Poly(n)
    funcs: Dict[Fraction, AngularFunction] = {}
    for a in d.atoms:
        dens = a.full_density()
        if a.kind == "ThickDelta":
            symbol = symbol + _classical_from_delta(dens, a.q)
        elif a.kind in ("DerivDelta", "DerivDeltaOrigin"):
            symbol = symbol + dens
        elif a.kind in ("Pf", "PfW"):
            funcs[a.param] = funcs[a.param] + dens if a.param in funcs else dens
    return ClassicalDistribution(n, symbol, funcs)


def classical_fourier(c: ClassicalDistribution) -> ClassicalDistribution:
    """Ordinary Fourier transform of a classical descriptor (polynomial and non-integral powers)."""
    n = c.n
    symbol = Poly(n)
    funcs: Dict[Fraction, AngularFunction] = {}

    def add(lam: Fraction, a: AngularFunction) -> None:
        funcs[lam] = funcs[lam] + a if lam in funcs else a

    for d, part in c.derivative_symbol.homogeneous_parts().items():
        add(Fraction(d), AngularFunction.from_poly(part.scale(ExactScalar.i_power(-d))))
    for lam, a in c.functions.items():
        if lam.denominator != 1:
            add(-lam - n, apply_K(-n - lam, a)[0])
            continue
        k = int(lam)
        if k >= 0 and project_Pq(a, k) == a:
            symbol = symbol + a.homogeneous_extension(k).scale(two_pi_power(n) * ExactScalar.i_power(-k))
            continue
        raise UnsupportedAtomTransform(f"no classical transform for r^{k} with this density")
    return ClassicalDistribution(n, symbol, funcs)
