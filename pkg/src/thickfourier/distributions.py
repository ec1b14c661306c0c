"""Thick distributions at the origin and sl-thick distributions on the compactified space.

Both are finite sums of atoms.  Thick atoms:

* ``Pf``          ``Pf(r^lam a(w))``
* ``ThickDelta``  ``g(w) delta_*^[q]``, reading ``(1/C) <g, a_q>`` from the expansion at 0
* ``DerivDelta``  ``P(grad) delta`` for a homogeneous polynomial ``P``

sl-thick atoms:

* ``PfW``               ``Pf_W(s^lam A(v))``
* ``DeltaInf``          ``G(v) delta_inf^[q]`` with ``G`` in ``D_q``
* ``DeltaLnInf``        ``H(v) delta_ln,inf^[q]`` with ``H`` in ``P_q``
* ``DerivDeltaOrigin``  ``P(grad) delta(u)``

An atom's scalar weight is folded into its density, so equal distributions
have equal atom lists.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import mpmath

from .errors import (
    MissingBulk,
    NotInDomain,
    TruncationTooShort,
    UnsupportedAtomMultiplication,
    UnsupportedAtomScaling,
)
from .finitepart import RadialIntegrand, double_pole_at_infinity, fp_radial_integral
from .scalars import ONE, ExactScalar, FloatApprox, c_const, frac_str, rational, surface_area, to_float
from .sphere import (
    AngularFunction,
    Poly,
    in_Dq,
    in_Pq,
    monomial_mean,
    project_Dq,
    project_Pq,
)

THICK_KINDS = ("Pf", "ThickDelta", "DerivDelta")
SLTHICK_KINDS = ("PfW", "DeltaInf", "DeltaLnInf", "DerivDeltaOrigin")
_KIND_ORDER = {k: i for i, k in enumerate(THICK_KINDS + SLTHICK_KINDS)}
_POLY_KINDS = ("DerivDelta", "DerivDeltaOrigin")
_PARAM_NAME = {
    "Pf": "lambda",
    "PfW": "lambda",
    "ThickDelta": "q",
    "DeltaInf": "q",
    "DeltaLnInf": "q",
    "DerivDelta": "order",
    "DerivDeltaOrigin": "order",
}

Density = Union[AngularFunction, Poly]


def _density_is_zero(d: Density) -> bool:
    return d.is_zero


@dataclass(frozen=True)
class Atom:
    """One catalog term.  ``param`` is lam, q, or the derivative order."""

    kind: str
    param: Fraction
    density: Density
    weight: Any = ONE

    def __post_init__(self) -> None:
        if self.kind not in _KIND_ORDER:
            raise ValueError(f"unknown atom kind {self.kind!r}")
        object.__setattr__(self, "param", rational(self.param))
        if self.kind in _POLY_KINDS:
            if not isinstance(self.density, Poly):
                raise TypeError(f"{self.kind} needs a polynomial density")
            if not self.density.is_zero and not self.density.is_homogeneous(int(self.param)):
                raise ValueError(f"{self.kind} density must be homogeneous of degree {self.param}")
        elif not isinstance(self.density, AngularFunction):
            raise TypeError(f"{self.kind} needs an AngularFunction density")
        if self.kind in ("ThickDelta", "DeltaInf", "DeltaLnInf") and self.param.denominator != 1:
            raise ValueError("delta orders must be integers")
        if self.kind == "DeltaInf" and not in_Dq(self.density, int(self.param)):
            raise NotInDomain(f"density of a thick delta at infinity of order {self.param} must lie in D_{self.param}")
        if self.kind == "DeltaLnInf" and not in_Pq(self.density, int(self.param)) and not self.density.is_zero:
            raise NotInDomain(f"density of a log delta at infinity of order {self.param} must lie in P_{self.param}")

    @property
    def n(self) -> int:
        return self.density.n

    @property
    def q(self) -> int:
        return int(self.param)

    def full_density(self) -> Density:
        if self.weight == 1:
            return self.density
        return self.density.scale(self.weight)

    def with_density(self, density: Density) -> "Atom":
        return Atom(self.kind, self.param, density)

    def canonical(self) -> "Atom":
        d = self.full_density()
        if isinstance(d, AngularFunction) and d.is_constant and not d.is_zero:
            return Atom(self.kind, self.param, AngularFunction.constant(d.n), ExactScalar(d.constant_value()))
        return Atom(self.kind, self.param, d)

    def sort_key(self) -> Tuple[int, Fraction]:
        return (_KIND_ORDER[self.kind], self.param)

    def to_json(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            _PARAM_NAME[self.kind]: frac_str(self.param),
            "weight": ExactScalar(self.weight).to_json(),
            "density": self.density.to_json(),
        }

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "Atom":
        kind = data["kind"]
        param = data[_PARAM_NAME[kind]]
        weight = ExactScalar.from_json(data["weight"]) if "weight" in data else ONE
        dens = data["density"]
        density = Poly.from_json(dens) if kind in _POLY_KINDS else AngularFunction.from_json(dens)
        return cls(kind, rational(param), density, weight)

    def __repr__(self) -> str:
        w = "" if self.weight == 1 else f"{self.weight} * "
        return f"{w}{self.kind}[{self.param}]({self.density!r})"


class AtomSum:
    """Finite formal sum of atoms, kept in canonical form."""

    space = ""
    kinds: Tuple[str, ...] = ()

    def __init__(self, n: int, atoms: Iterable[Atom] = ()):
        self.n = n
        merged: Dict[Tuple[str, Fraction], Density] = {}
        for a in atoms:
            if a.kind not in self.kinds:
                raise ValueError(f"{a.kind} atoms do not belong to the {self.space} space")
            if a.n != n:
                raise ValueError("dimension mismatch")
            key = (a.kind, a.param)
            d = a.full_density()
            merged[key] = merged[key] + d if key in merged else d
        out = []
        for (kind, param), d in merged.items():
            if not _density_is_zero(d):
                out.append(Atom(kind, param, d).canonical())
        self.atoms: Tuple[Atom, ...] = tuple(sorted(out, key=Atom.sort_key))

    def __iter__(self) -> Iterator[Atom]:
        return iter(self.atoms)

    def __len__(self) -> int:
        return len(self.atoms)

    @property
    def is_zero(self) -> bool:
        return not self.atoms

    def _new(self, atoms: Iterable[Atom]) -> "AtomSum":
        return type(self)(self.n, atoms)

    def __add__(self, other: "AtomSum") -> "AtomSum":
        if type(other) is not type(self):
            return NotImplemented
        return self._new(self.atoms + other.atoms)

    def __neg__(self) -> "AtomSum":
        return self.scale(-1)

    def __sub__(self, other: "AtomSum") -> "AtomSum":
        return self + (-other)

    def scale(self, s: Any) -> "AtomSum":
        return self._new(Atom(a.kind, a.param, a.full_density().scale(s)) for a in self.atoms)

    def reflect(self) -> "AtomSum":
        """Composition with ``x -> -x``."""
        return self._new(Atom(a.kind, a.param, a.full_density().reflect()) for a in self.atoms)

    def __eq__(self, other: Any) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self.n == other.n and self.atoms == other.atoms

    def __hash__(self) -> int:
        return hash((self.space, self.n, self.atoms))

    def to_json(self, provenance: Optional[Sequence[Dict[str, Any]]] = None) -> Dict[str, Any]:
        atoms = []
        for i, a in enumerate(self.atoms):
            d = a.to_json()
            if provenance is not None:
                d["provenance"] = provenance[i]
            atoms.append(d)
        return {"space": self.space, "n": self.n, "atoms": atoms}

    @staticmethod
    def from_json(data: Dict[str, Any]) -> "AtomSum":
        cls = {"thick": ThickDistribution, "slthick": SlThickDistribution}[data["space"]]
        return cls(int(data["n"]), [Atom.from_json(a) for a in data["atoms"]])

    def __repr__(self) -> str:
        if not self.atoms:
            return f"{type(self).__name__}(n={self.n}, 0)"
        return f"{type(self).__name__}(n={self.n}, " + " + ".join(map(repr, self.atoms)) + ")"


class ThickDistribution(AtomSum):
    space = "thick"
    kinds = THICK_KINDS


class SlThickDistribution(AtomSum):
    space = "slthick"
    kinds = SLTHICK_KINDS


# ---------------------------------------------------------------------------
# atom constructors


def _density(density: Optional[AngularFunction], n: Optional[int]) -> AngularFunction:
    if density is None:
        if n is None:
            raise ValueError("give a density or a dimension")
        return AngularFunction.constant(n)
    if isinstance(density, Poly):
        return AngularFunction.from_poly(density)
    return density


def pf_power(lam: Any, density: Optional[AngularFunction] = None, n: Optional[int] = None, weight: Any = ONE) -> Atom:
    return Atom("Pf", rational(lam), _density(density, n), weight)


def thick_delta(q: int, density: Optional[AngularFunction] = None, n: Optional[int] = None, weight: Any = ONE) -> Atom:
    return Atom("ThickDelta", Fraction(q), _density(density, n), weight)


def pfw_power(lam: Any, density: Optional[AngularFunction] = None, n: Optional[int] = None, weight: Any = ONE) -> Atom:
    return Atom("PfW", rational(lam), _density(density, n), weight)


def delta_inf(q: int, density: Optional[AngularFunction] = None, n: Optional[int] = None, weight: Any = ONE) -> Atom:
    return Atom("DeltaInf", Fraction(q), _density(density, n), weight)


def delta_ln_inf(q: int, density: Optional[AngularFunction] = None, n: Optional[int] = None, weight: Any = ONE) -> Atom:
    return Atom("DeltaLnInf", Fraction(q), _density(density, n), weight)


def deriv_delta(poly: Poly, space: str = "thick", weight: Any = ONE) -> Atom:
    """``P(grad) delta`` for a homogeneous polynomial ``P``."""
    kind = "DerivDelta" if space == "thick" else "DerivDeltaOrigin"
    return Atom(kind, Fraction(poly.degree()), poly, weight)


def laplacian_power_delta(m: int, n: int, coeff: Any = ONE, space: str = "thick") -> Atom:
    """``coeff * Lap^m delta``."""
    return deriv_delta(Poly.r_squared(n, m), space, coeff)


def plain_delta(n: int, space: str = "slthick") -> Atom:
    return laplacian_power_delta(0, n, ONE, space)


# ---------------------------------------------------------------------------
# jets


@dataclass(frozen=True)
class BulkTerm:
    """Separable piece ``profile(r) * angular(w)`` of a test function."""

    profile: Callable[[float], Any]
    angular: AngularFunction


@dataclass
class ThickJet:
    """Expansion ``phi(r w) ~ sum_j a_j(w) r^j`` at the origin, known for j <= truncation."""

    n: int
    coeffs: Dict[int, AngularFunction] = field(default_factory=dict)
    truncation: Optional[int] = None
    bulk: Optional[List[BulkTerm]] = None

    def __post_init__(self) -> None:
        self.coeffs = {int(j): a for j, a in self.coeffs.items() if not a.is_zero}
        if self.truncation is None:
            self.truncation = max(self.coeffs, default=0)

    @property
    def leading(self) -> Optional[int]:
        return min(self.coeffs, default=None)

    def coefficient(self, j: int) -> AngularFunction:
        if j > self.truncation:
            raise TruncationTooShort(f"jet known up to order {self.truncation}, order {j} requested")
        return self.coeffs.get(j, AngularFunction(self.n))

    def to_json(self) -> Dict[str, Any]:
        return {
            "kind": "thick_jet",
            "n": self.n,
            "truncation": self.truncation,
            "coeffs": {str(j): a.to_json() for j, a in sorted(self.coeffs.items())},
        }

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "ThickJet":
        n = int(data["n"])
        coeffs = {int(j): AngularFunction.from_json(a) for j, a in data.get("coeffs", {}).items()}
        return cls(n, coeffs, data.get("truncation"))


@dataclass
class WFunctionJet:
    """Expansion ``Phi(s v) ~ sum_q (A_q(v) + P_q(v) ln s) s^q`` at infinity, known for q >= lowest.

    ``origin`` is an optional Taylor polynomial of Phi at 0; ``bulk`` an
    optional separable description of Phi used by finite-part pairings.
    """

    n: int
    A: Dict[int, AngularFunction] = field(default_factory=dict)
    P: Dict[int, AngularFunction] = field(default_factory=dict)
    lowest: Optional[int] = None
    bulk: Optional[List[BulkTerm]] = None
    origin: Optional[Poly] = None
    origin_order: Optional[int] = None

    def __post_init__(self) -> None:
        self.A = {int(q): a for q, a in self.A.items() if not a.is_zero}
        self.P = {int(q): p for q, p in self.P.items() if not p.is_zero}
        for q, p in self.P.items():
            if not in_Pq(p, q):
                raise NotInDomain(f"log coefficient of order {q} must lie in P_{q}")
        if self.lowest is None:
            self.lowest = min(list(self.A) + list(self.P), default=0)

    @property
    def top(self) -> Optional[int]:
        return max(list(self.A) + list(self.P), default=None)

    def coefficient(self, q: int) -> AngularFunction:
        if q < self.lowest:
            raise TruncationTooShort(f"jet known down to order {self.lowest}, order {q} requested")
        return self.A.get(q, AngularFunction(self.n))

    def log_coefficient(self, q: int) -> AngularFunction:
        if q < self.lowest:
            raise TruncationTooShort(f"jet known down to order {self.lowest}, order {q} requested")
        return self.P.get(q, AngularFunction(self.n))

    def is_polynomial_free(self) -> bool:
        return all(in_Dq(a, q) for q, a in self.A.items())

    def projected(self) -> "WFunctionJet":
        """Drop the components of each ``A_q`` that lie in the excluded degrees of ``D_q``."""
        return WFunctionJet(
            self.n,
            {q: project_Dq(a, q) for q, a in self.A.items()},
            dict(self.P),
            self.lowest,
            self.bulk,
            self.origin,
            self.origin_order,
        )

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, WFunctionJet):
            return NotImplemented
        return (self.n, self.A, self.P, self.lowest) == (other.n, other.A, other.P, other.lowest)

    def to_json(self) -> Dict[str, Any]:
        return {
            "kind": "w_jet",
            "n": self.n,
            "lowest": self.lowest,
            "A": {str(q): a.to_json() for q, a in sorted(self.A.items())},
            "P": {str(q): p.to_json() for q, p in sorted(self.P.items())},
        }

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "WFunctionJet":
        n = int(data["n"])
        A = {int(q): AngularFunction.from_json(a) for q, a in data.get("A", {}).items()}
        P = {int(q): AngularFunction.from_json(a) for q, a in data.get("P", {}).items()}
        return cls(n, A, P, data.get("lowest"))


# ---------------------------------------------------------------------------
# pairing


def _taylor_pairing(poly: Poly, taylor: Poly) -> Any:
    """``<P(grad) delta, phi>`` for ``phi`` with degree-d Taylor part ``taylor``."""
    d = poly.degree()
    total: Any = Fraction(0)
    for alpha, p in poly.terms.items():
        t = taylor.terms.get(alpha)
        if t is not None:
            total = total + p * t * ((-1) ** d * math.prod(math.factorial(a) for a in alpha))
    return total


def _homogeneous_part(p: Poly, d: int) -> Poly:
    return p.homogeneous_parts().get(d, Poly(p.n))


def _to_mp(x: Any) -> Any:
    if isinstance(x, FloatApprox):
        return x.value
    return to_float(ExactScalar(x)).value if not isinstance(x, (float, complex)) else mpmath.mpmathify(x)


def _bulk_profile(bulk: List[BulkTerm], density: AngularFunction) -> Callable[[float], complex]:
    weights = [(t.profile, complex(_to_mp(density.inner(t.angular)))) for t in bulk]
    weights = [(f, w) for f, w in weights if w != 0]

    def profile(r: float) -> complex:
        return sum((w * complex(f(r)) for f, w in weights), 0j)

    return profile


def _pair_atom(atom: Atom, t: Any, tol: float) -> Any:
    n = atom.n
    dens = atom.full_density()
    kind = atom.kind
    if kind in THICK_KINDS and not isinstance(t, ThickJet):
        raise TypeError("thick distributions pair with ThickJet test data")
    if kind in SLTHICK_KINDS and not isinstance(t, WFunctionJet):
        raise TypeError("sl-thick distributions pair with WFunctionJet test data")

    if kind == "ThickDelta":
        return dens.inner(t.coefficient(atom.q))
    if kind == "DeltaInf":
        return dens.inner(t.coefficient(atom.q))
    if kind == "DeltaLnInf":
        return dens.inner(t.log_coefficient(atom.q))
    if kind == "DerivDelta":
        d = atom.q
        a_d = project_Pq(t.coefficient(d), d)
        return _taylor_pairing(dens, a_d.homogeneous_extension(d) if not a_d.is_zero else Poly(n))
    if kind == "DerivDeltaOrigin":
        if t.origin is None or (t.origin_order is not None and t.origin_order < atom.q):
            raise MissingBulk("pairing a derivative of delta needs the Taylor polynomial at the origin")
        return _taylor_pairing(dens, _homogeneous_part(t.origin, atom.q))

    if t.bulk is None:
        raise MissingBulk(f"{kind} atoms pair only against test data with an explicit bulk description")
    lam = float(atom.param)
    profile = _bulk_profile(t.bulk, dens)

    def core(r: float) -> complex:
        return r ** lam * profile(r)

    if kind == "Pf":
        jet = {atom.param + j: complex(_to_mp(dens.inner(a))) for j, a in t.coeffs.items()}
        jet = {k: v for k, v in jet.items() if v != 0}
        f = RadialIntegrand(n, core, jet, zero_order=atom.param + t.truncation if jet else None)
        return fp_radial_integral(f, tol)
    # PfW
    inf_jet: Dict[Any, Any] = {}
    for q in set(t.A) | set(t.P):
        c = complex(_to_mp(dens.inner(t.A.get(q, AngularFunction(n)))))
        dl = complex(_to_mp(dens.inner(t.P.get(q, AngularFunction(n)))))
        if c or dl:
            inf_jet[atom.param + q] = (c, dl)
    zero_jet: Dict[Any, Any] = {}
    zero_order = None
    if lam + n <= 0:
        if t.origin is None:
            raise MissingBulk("a finite part at the origin needs the Taylor polynomial of the test function")
        for d, part in t.origin.homogeneous_parts().items():
            c = complex(_to_mp(dens.inner(AngularFunction.from_poly(part))))
            if c:
                zero_jet[atom.param + d] = c
        zero_order = atom.param + (t.origin_order if t.origin_order is not None else t.origin.degree())
    f = RadialIntegrand(
        n,
        core,
        zero_jet,
        zero_order=zero_order,
        inf_jet=inf_jet,
        inf_order=atom.param + t.lowest if inf_jet else None,
    )
    return fp_radial_integral(f, tol)


def pair(d: AtomSum, t: Any, tol: float = 1e-10) -> Any:
    """``<d, t>``: exact for delta atoms, a :class:`FloatApprox` once a finite-part integral is involved."""
    exact = ExactScalar(0)
    numeric = None
    for atom in d.atoms:
        v = _pair_atom(atom, t, tol)
        if isinstance(v, FloatApprox):
            numeric = v if numeric is None else FloatApprox(numeric.value + v.value, numeric.abs_error_bound + v.abs_error_bound)
        else:
            exact = exact + ExactScalar(v)
    if numeric is None:
        return exact
    ex = to_float(exact)
    return FloatApprox(numeric.value + ex.value, numeric.abs_error_bound + ex.abs_error_bound)


# ---------------------------------------------------------------------------
# dilations


def _scalar_power(t: Fraction, lam: Fraction) -> ExactScalar:
    return ExactScalar.power(t, lam)


def tau_scale(F: SlThickDistribution, t: Any) -> SlThickDistribution:
    """The sl-thick version of ``F(t u)`` for a positive scalar ``t``."""
    t = rational(t)
    if t <= 0:
        raise ValueError("t must be positive")
    n = F.n
    ln_t = ExactScalar.log(t)
    out: List[Atom] = []
    for a in F.atoms:
        dens = a.full_density()
        if a.kind in ("DeltaInf", "DeltaLnInf"):
            out.append(Atom(a.kind, a.param, dens.scale(_scalar_power(t, Fraction(-n) - a.param))))
        elif a.kind == "DerivDeltaOrigin":
            if a.q != 0:
                raise UnsupportedAtomScaling("dilation of higher derivatives of delta is not in the catalog")
            c = ExactScalar(dens.terms[(0,) * n])
            tn = Fraction(1) / t ** n
            out.append(Atom(a.kind, a.param, dens.scale(tn)))
            out.append(delta_ln_inf(0, AngularFunction.constant(n, 1), weight=-(c * tn) * ln_t))
        elif a.kind == "PfW":
            lam = a.param
            tl = _scalar_power(t, lam)
            out.append(Atom(a.kind, lam, dens.scale(tl)))
            if lam.denominator != 1:
                continue
            m = int(lam)
            q = -n - m
            if q >= 0 and not project_Pq(dens, q).is_zero:
                raise UnsupportedAtomScaling("dilation of Pf_W at a double pole is not in the catalog")
            resonant = project_Dq(dens, q)
            if not resonant.is_zero:
                # the finite part picks up ln t times the residue -C delta_inf^[q]
                C = surface_area(n)
                out.append(delta_inf(q, resonant.scale(-(tl * ln_t) * C)))
        else:
            raise UnsupportedAtomScaling(f"no dilation rule for {a.kind}")
    return SlThickDistribution(n, out)


def rotate(F: AtomSum, matrix: Sequence[Sequence[Any]]) -> AtomSum:
    """Composition with an orthogonal matrix: densities are rotated, nothing else changes."""
    n = F.n
    Q = [[rational(x) for x in row] for row in matrix]
    for i in range(n):
        for j in range(n):
            dot = sum(Q[k][i] * Q[k][j] for k in range(n))
            if dot != (1 if i == j else 0):
                raise UnsupportedAtomScaling("only orthogonal matrices with rational entries are supported")
    images = []
    for i in range(n):
        images.append(Poly(n, {tuple(1 if k == j else 0 for k in range(n)): Q[i][j] for j in range(n)}))

    def compose(p: Poly) -> Poly:
        out = Poly(n)
        for alpha, c in p.terms.items():
            term = Poly.constant(n, c)
            for i, e in enumerate(alpha):
                for _ in range(e):
                    term = term * images[i]
            out = out + term
        return out

    atoms = []
    for a in F.atoms:
        d = a.full_density()
        if isinstance(d, Poly):
            # P(grad) delta(Qx) = (P o Q)(grad) delta for orthogonal Q
            atoms.append(Atom(a.kind, a.param, compose(d)))
        else:
            atoms.append(Atom(a.kind, a.param, AngularFunction.from_poly(compose(d.to_poly()))))
    return type(F)(n, atoms)


# ---------------------------------------------------------------------------
# radial homogeneous distributions


def radial_homogeneous_generator(lam: Any, n: int) -> SlThickDistribution:
    """Generator of the radial sl-thick distributions homogeneous of degree ``lam``."""
    lam = rational(lam)
    if lam.denominator != 1:
        return SlThickDistribution(n, [pfw_power(lam, n=n)])
    m = int(lam)
    if m >= 0 and m % 2 == 0:
        return SlThickDistribution(n, [pfw_power(m, n=n)])
    if double_pole_at_infinity(m, n):
        return SlThickDistribution(n, [delta_ln_inf(-n - m, n=n)])
    return SlThickDistribution(n, [delta_inf(-n - m, n=n)])


# ---------------------------------------------------------------------------
# multiplication by a coordinate


def multiply_coordinate(F: SlThickDistribution, j: int) -> SlThickDistribution:
    """``u_j F``."""
    n = F.n
    out: List[Atom] = []
    for a in F.atoms:
        dens = a.full_density()
        if a.kind == "PfW":
            out.append(pfw_power(a.param + 1, dens.multiply_coordinate(j)))
        elif a.kind == "DeltaInf":
            q = a.q - 1
            out.append(delta_inf(q, project_Dq(dens.multiply_coordinate(j), q)))
        elif a.kind == "DeltaLnInf":
            if a.q == 0:
                continue
            q = a.q - 1
            out.append(delta_ln_inf(q, project_Pq(dens.multiply_coordinate(j), q)))
        elif a.kind == "DerivDeltaOrigin" and a.q == 0:
            c = dens.terms[(0,) * n]
            out.append(delta_inf(-1, AngularFunction.coordinate(n, j).scale(-c)))
        else:
            raise UnsupportedAtomMultiplication(f"no coordinate multiplication rule for {a.kind} of order {a.param}")
    return SlThickDistribution(n, out)


# ---------------------------------------------------------------------------
# derivatives and delta parts


def derivative_ops(k: int, i: int, n: int, mode: str = "thick") -> ThickDistribution:
    """Derivative along ``x_i`` of ``Pf(r^-k)``.

    The ordinary part is ``Pf(-k x_i r^(-k-2))``.  In distributional mode a
    ``grad_i Lap^m delta`` term appears when ``k - n = 2m >= 0``; in thick mode
    the delta part is ``C w_i delta_*^[k-n+1]`` for every integer k.
    """
    if not 0 <= i < n:
        raise ValueError("axis out of range")
    atoms = [pf_power(-k - 1, AngularFunction.coordinate(n, i).scale(-k))] if k != 0 else []
    if mode == "distributional":
        if k - n >= 0 and (k - n) % 2 == 0:
            m = (k - n) // 2
            poly = Poly.variable(n, i) * Poly.r_squared(n, m)
            coeff = -c_const(m, n) / (math.factorial(2 * m) * k)
            atoms.append(deriv_delta(poly, "thick", coeff))
    elif mode == "thick":
        atoms.append(thick_delta(k - n + 1, AngularFunction.coordinate(n, i), weight=surface_area(n)))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return ThickDistribution(n, atoms)


@dataclass(frozen=True)
class Regularization:
    """How a homogeneous function was turned into a distribution.

    ``kind`` is "pf" (plain finite part), "scaled_pf" (``t^(n+2m) Pf(|t x|^(-n-2m))``)
    or "derivative" (derivative of ``Pf(r^-k)`` along axis i).
    """

    kind: str
    n: int
    m: int = 0
    scale: Any = 1
    k: int = 0
    axis: int = 0
    space: str = "thick"


def delta_part(f: Regularization) -> ThickDistribution:
    """The part of a regularization supported at the origin."""
    n = f.n
    if f.kind == "pf":
        return ThickDistribution(n)
    if f.kind == "scaled_pf":
        ln = ExactScalar.log(rational(f.scale))
        if f.space == "thick":
            return ThickDistribution(n, [thick_delta(2 * f.m, n=n, weight=ln * surface_area(n))])
        coeff = ln * c_const(f.m, n) / math.factorial(2 * f.m)
        return ThickDistribution(n, [laplacian_power_delta(f.m, n, coeff)])
    if f.kind == "derivative":
        full = derivative_ops(f.k, f.axis, n, "thick" if f.space == "thick" else "distributional")
        return ThickDistribution(n, [a for a in full.atoms if a.kind != "Pf"])
    raise ValueError(f"unknown regularization {f.kind!r}")
