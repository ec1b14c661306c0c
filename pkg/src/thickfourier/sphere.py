"""Polynomials in n variables, spherical harmonics and functions on the sphere.

Coefficients are Fractions whenever possible and :class:`ExactScalar`
otherwise.  Sphere averages are exact: the mean of ``w**alpha`` over the unit
sphere is ``prod (alpha_i - 1)!! / (n (n+2) ... (n + |alpha| - 2))`` when every
exponent is even and zero otherwise.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import NotHomogeneous
from .scalars import ExactScalar, as_exact, frac_str, gamma_value, surface_area

Exponent = Tuple[int, ...]


def _norm(c: Any) -> Any:
    if isinstance(c, ExactScalar):
        return c.to_fraction() if c.is_rational else c
    if isinstance(c, bool):
        raise TypeError("bool coefficient")
    if isinstance(c, (int, Fraction)):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"unsupported coefficient {c!r}")


def _is_zero(c: Any) -> bool:
    return c == 0


def coef_to_json(c: Any) -> Any:
    c = _norm(c)
    return frac_str(c) if isinstance(c, Fraction) else c.to_json()


def coef_from_json(v: Any) -> Any:
    return Fraction(v) if isinstance(v, str) else _norm(ExactScalar.from_json(v))


class Poly:
    """Polynomial in ``n`` variables with exact coefficients."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Optional[Dict[Exponent, Any]] = None):
        self.n = n
        clean: Dict[Exponent, Any] = {}
        for alpha, c in (terms or {}).items():
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != n or min(alpha, default=0) < 0:
                raise ValueError(f"bad exponent {alpha} for n={n}")
            c = _norm(c)
            if not _is_zero(c):
                clean[alpha] = c
        self.terms = clean

    # ---- constructors ---------------------------------------------------
    @classmethod
    def _fast(cls, n: int, terms: Dict[Exponent, Any]) -> "Poly":
        obj = cls.__new__(cls)
        obj.n = n
        obj.terms = {a: _norm(c) for a, c in terms.items() if not _is_zero(c)}
        return obj

    @classmethod
    def constant(cls, n: int, c: Any = 1) -> "Poly":
        return cls(n, {(0,) * n: c})

    @classmethod
    def monomial(cls, n: int, alpha: Sequence[int], c: Any = 1) -> "Poly":
        return cls(n, {tuple(alpha): c})

    @classmethod
    def variable(cls, n: int, j: int) -> "Poly":
        alpha = [0] * n
        alpha[j] = 1
        return cls(n, {tuple(alpha): 1})

    @classmethod
    def r_squared(cls, n: int, power: int = 1) -> "Poly":
        out = cls.constant(n)
        r2 = cls(n, {tuple(2 if i == j else 0 for i in range(n)): 1 for j in range(n)})
        for _ in range(power):
            out = out * r2
        return out

    # ---- structure --------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(a) for a in self.terms), default=0)

    def is_homogeneous(self, degree: Optional[int] = None) -> bool:
        degs = {sum(a) for a in self.terms}
        if not degs:
            return True
        return len(degs) == 1 and (degree is None or degs == {degree})

    def homogeneous_parts(self) -> Dict[int, "Poly"]:
        parts: Dict[int, Dict[Exponent, Any]] = {}
        for a, c in self.terms.items():
            parts.setdefault(sum(a), {})[a] = c
        return {d: Poly._fast(self.n, t) for d, t in sorted(parts.items())}

    # ---- arithmetic -------------------------------------------------------
    def __add__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        _check_n(self, other)
        out = dict(self.terms)
        for a, c in other.terms.items():
            out[a] = out[a] + c if a in out else c
        return Poly._fast(self.n, out)

    def __neg__(self) -> "Poly":
        return Poly._fast(self.n, {a: -c for a, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def scale(self, s: Any) -> "Poly":
        s = _norm(s)
        if _is_zero(s):
            return Poly(self.n)
        return Poly._fast(self.n, {a: c * s for a, c in self.terms.items()})

    def __mul__(self, other: Any) -> "Poly":
        if not isinstance(other, Poly):
            return self.scale(other)
        _check_n(self, other)
        out: Dict[Exponent, Any] = {}
        for a, c in self.terms.items():
            for b, d in other.terms.items():
                e = tuple(x + y for x, y in zip(a, b))
                v = c * d
                out[e] = out[e] + v if e in out else v
        return Poly._fast(self.n, out)

    def __rmul__(self, other: Any) -> "Poly":
        return self.scale(other)

    def __truediv__(self, s: Any) -> "Poly":
        s = _norm(s)
        if isinstance(s, Fraction):
            return self.scale(1 / s)
        return Poly._fast(self.n, {a: c / s for a, c in self.terms.items()})

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self.terms.items())))

    # ---- calculus ---------------------------------------------------------
    def diff(self, j: int) -> "Poly":
        out: Dict[Exponent, Any] = {}
        for a, c in self.terms.items():
            if a[j]:
                b = list(a)
                b[j] -= 1
                out[tuple(b)] = c * a[j]
        return Poly._fast(self.n, out)

    def laplacian(self) -> "Poly":
        out: Dict[Exponent, Any] = {}
        for a, c in self.terms.items():
            for j in range(self.n):
                if a[j] >= 2:
                    b = list(a)
                    b[j] -= 2
                    b = tuple(b)
                    v = c * (a[j] * (a[j] - 1))
                    out[b] = out[b] + v if b in out else v
        return Poly._fast(self.n, out)

    def reflect(self) -> "Poly":
        """p(-x)."""
        return Poly._fast(self.n, {a: (c if sum(a) % 2 == 0 else -c) for a, c in self.terms.items()})

    def evaluate(self, x: Sequence[complex]) -> complex:
        total = 0j
        for a, c in self.terms.items():
            m = complex(c)
            for xi, ai in zip(x, a):
                m *= xi ** ai
            total += m
        return total

    # ---- io ---------------------------------------------------------------
    def to_json(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "degree": self.degree(),
            "coeffs": {",".join(map(str, a)): coef_to_json(c) for a, c in sorted(self.terms.items())},
        }

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "Poly":
        n = int(data["n"])
        terms = {tuple(int(t) for t in k.split(",")): coef_from_json(v) for k, v in data["coeffs"].items()}
        return cls(n, terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for a, c in sorted(self.terms.items(), reverse=True):
            mon = "".join(f"x{j + 1}" + (f"^{e}" if e > 1 else "") for j, e in enumerate(a) if e)
            parts.append(f"({c})" + (f"*{mon}" if mon else ""))
        return " + ".join(parts)


def _check_n(p: Poly, q: Poly) -> None:
    if p.n != q.n:
        raise ValueError(f"dimension mismatch {p.n} vs {q.n}")


# ---------------------------------------------------------------------------
# sphere averages


@lru_cache(maxsize=None)
def _rising_even(n: int, k: int) -> int:
    # n (n+2) ... (n + 2k - 2)
    out = 1
    for i in range(k):
        out *= n + 2 * i
    return out


@lru_cache(maxsize=None)
def monomial_mean(alpha: Exponent) -> Fraction:
    """Mean of ``w**alpha`` over the unit sphere in R^len(alpha)."""
    if any(a % 2 for a in alpha):
        return Fraction(0)
    num = 1
    for a in alpha:
        num *= math.prod(range(a - 1, 0, -2)) if a else 1
    return Fraction(num, _rising_even(len(alpha), sum(alpha) // 2))


def monomial_sphere_integral(alpha: Sequence[int]) -> ExactScalar:
    """Integral of ``w**alpha`` over the unit sphere (unnormalised measure), via Gamma values."""
    alpha = tuple(alpha)
    if any(a % 2 for a in alpha):
        return ExactScalar(0)
    num = ExactScalar(2)
    for a in alpha:
        num = num * gamma_value(Fraction(a + 1, 2))
    return num / gamma_value(Fraction(sum(alpha) + len(alpha), 2))


def sphere_mean(p: Poly) -> Any:
    """(1/C) times the integral of ``p`` over the unit sphere."""
    total: Any = Fraction(0)
    for a, c in p.terms.items():
        m = monomial_mean(a)
        if m:
            total = total + c * m
    return _norm(total)


def sphere_integral(p: Poly) -> ExactScalar:
    return as_exact(sphere_mean(p)) * surface_area(p.n)


# ---------------------------------------------------------------------------
# harmonic decomposition


def dim_harmonic(m: int, n: int) -> int:
    if m < 0:
        return 0
    return math.comb(n + m - 1, m) - (math.comb(n + m - 3, m - 2) if m >= 2 else 0)


def harmonic_decompose(p: Poly, n: Optional[int] = None) -> List[Poly]:
    """Split a homogeneous ``p`` of degree q as ``sum_k |x|^(2k) h_(q-2k)``.

    Returns ``[h_q, h_(q-2), ...]`` with trailing zero components dropped
    (the zero polynomial gives ``[]``).
    """
    n = p.n if n is None else n
    if n != p.n:
        raise ValueError("dimension mismatch")
    if p.is_zero:
        return []
    if not p.is_homogeneous():
        raise NotHomogeneous("harmonic_decompose needs a homogeneous polynomial")
    q = p.degree()
    kmax = q // 2
    comps: List[Poly] = [Poly(n)] * (kmax + 1)
    rem = p
    for k in range(kmax, -1, -1):
        if rem.is_zero:
            break
        d = q - 2 * k
        lap = rem
        for _ in range(k):
            lap = lap.laplacian()
        if lap.is_zero:
            continue
        c = 1
        for i in range(k):
            kk = k - i
            c *= 2 * kk * (2 * kk + 2 * d + n - 2)
        h = lap / Fraction(c)
        comps[k] = h
        rem = rem - Poly.r_squared(n, k) * h
    if not rem.is_zero:  # pragma: no cover - algebraic identity
        raise ArithmeticError("harmonic decomposition failed to terminate")
    while comps and comps[-1].is_zero:
        comps.pop()
    return comps


# ---------------------------------------------------------------------------
# zonal kernels


@lru_cache(maxsize=None)
def zonal_kernel(m: int, n: int) -> Tuple[Fraction, ...]:
    """Coefficients ``(z_0, z_1, ..., z_m)`` of the zonal polynomial ``Z_m(t)``.

    Normalised so that ``(1/C) * integral Z_m(v.w) Y(w) dsigma(w) = Y(v)`` for
    every harmonic ``Y`` of degree m.  ``Z_0`` is the constant 1.
    """
    if m < 0 or n < 2:
        raise ValueError("need m >= 0 and n >= 2")
    coeffs = [Fraction(0)] * (m + 1)
    if m == 0:
        coeffs[0] = Fraction(1)
        return tuple(coeffs)
    for q in range(m // 2 + 1):
        prod = 1
        for i in range(m - q - 1):
            prod *= n + 2 * i
        coeffs[m - 2 * q] = Fraction((-1) ** q * prod * (n + 2 * m - 2), 2 ** q * math.factorial(q) * math.factorial(m - 2 * q))
    return tuple(coeffs)


def eval_univariate(coeffs: Sequence[Any], t: Any) -> Any:
    out: Any = 0
    for c in reversed(coeffs):
        out = out * t + c
    return out


def zonal_project(p: Poly, m: int) -> Poly:
    """Apply ``Y(v) = (1/C) integral Z_m(v.w) p(w) dsigma(w)`` exactly."""
    n = p.n
    z = zonal_kernel(m, n)
    out: Dict[Exponent, Any] = {}
    for j, zj in enumerate(z):
        if not zj:
            continue
        for beta in compositions(j, n):
            multi = Fraction(math.factorial(j), math.prod(math.factorial(b) for b in beta))
            acc: Any = Fraction(0)
            for a, c in p.terms.items():
                mm = monomial_mean(tuple(x + y for x, y in zip(a, beta)))
                if mm:
                    acc = acc + c * mm
            if not _is_zero(acc):
                v = acc * (zj * multi)
                out[beta] = out[beta] + v if beta in out else v
    return Poly._fast(n, out)


def funk_hecke_eigenvalue(f: Sequence[Any], d: int, n: int) -> Any:
    """Eigenvalue of ``Y -> (1/C) integral f(v.w) Y(w) dsigma(w)`` on degree-d harmonics."""
    z = zonal_kernel(d, n)
    prod = [Fraction(0)] * (len(f) + len(z))
    for i, a in enumerate(f):
        for j, b in enumerate(z):
            prod[i + j] = prod[i + j] + a * b
    total: Any = Fraction(0)
    for j, c in enumerate(prod):
        if j % 2 == 0 and not _is_zero(c):
            total = total + c * monomial_mean((j,) + (0,) * (n - 1))
    return _norm(total / eval_univariate(z, Fraction(1)))


@lru_cache(maxsize=None)
def compositions(total: int, parts: int) -> Tuple[Exponent, ...]:
    if parts == 1:
        return ((total,),)
    out = []
    for first in range(total, -1, -1):
        for rest in compositions(total - first, parts - 1):
            out.append((first,) + rest)
    return tuple(out)


# ---------------------------------------------------------------------------
# functions on the sphere


class AngularFunction:
    """Finite sum of spherical harmonics, stored degree by degree."""

    __slots__ = ("n", "components")

    def __init__(self, n: int, components: Optional[Dict[int, Poly]] = None, check: bool = False):
        self.n = n
        comps: Dict[int, Poly] = {}
        for m, y in (components or {}).items():
            if y.n != n:
                raise ValueError("dimension mismatch")
            if y.is_zero:
                continue
            if check and not (y.is_homogeneous(m) and y.laplacian().is_zero):
                raise ValueError(f"component of degree {m} is not a harmonic of that degree")
            comps[int(m)] = y
        self.components = dict(sorted(comps.items()))

    @classmethod
    def constant(cls, n: int, c: Any = 1) -> "AngularFunction":
        return cls(n, {0: Poly.constant(n, c)})

    @classmethod
    def zero(cls, n: int) -> "AngularFunction":
        return cls(n)

    @classmethod
    def coordinate(cls, n: int, j: int) -> "AngularFunction":
        return cls(n, {1: Poly.variable(n, j)})

    @classmethod
    def from_poly(cls, p: Poly) -> "AngularFunction":
        """Restriction of an arbitrary polynomial to the sphere."""
        comps: Dict[int, Poly] = {}
        for q, part in p.homogeneous_parts().items():
            for k, h in enumerate(harmonic_decompose(part)):
                d = q - 2 * k
                comps[d] = comps[d] + h if d in comps else h
        return cls(p.n, comps)

    @classmethod
    def harmonic(cls, y: Poly) -> "AngularFunction":
        return cls(y.n, {y.degree(): y}, check=True)

    # ---- structure ----------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.components

    def degrees(self) -> List[int]:
        return list(self.components)

    def component(self, m: int) -> Poly:
        return self.components.get(m, Poly(self.n))

    def constant_value(self) -> Any:
        """Value of a constant function (raises if not constant)."""
        if not self.components:
            return Fraction(0)
        if list(self.components) != [0]:
            raise ValueError("not a constant function")
        return self.components[0].terms[(0,) * self.n]

    @property
    def is_constant(self) -> bool:
        return set(self.components) <= {0}

    # ---- arithmetic -------------------------------------------------------
    def __add__(self, other: "AngularFunction") -> "AngularFunction":
        if not isinstance(other, AngularFunction):
            return NotImplemented
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        comps = dict(self.components)
        for m, y in other.components.items():
            comps[m] = comps[m] + y if m in comps else y
        return AngularFunction(self.n, comps)

    def __neg__(self) -> "AngularFunction":
        return AngularFunction(self.n, {m: -y for m, y in self.components.items()})

    def __sub__(self, other: "AngularFunction") -> "AngularFunction":
        return self + (-other)

    def scale(self, s: Any) -> "AngularFunction":
        return AngularFunction(self.n, {m: y.scale(s) for m, y in self.components.items()})

    __mul__ = scale
    __rmul__ = scale

    def map_degrees(self, fn: Callable[[int], Any]) -> "AngularFunction":
        """Diagonal action: multiply the degree-m component by ``fn(m)``."""
        return AngularFunction(self.n, {m: y.scale(fn(m)) for m, y in self.components.items()})

    def restrict(self, keep: Callable[[int], bool]) -> "AngularFunction":
        return AngularFunction(self.n, {m: y for m, y in self.components.items() if keep(m)})

    def reflect(self) -> "AngularFunction":
        """a(-w): the degree-m component picks up (-1)^m."""
        return self.map_degrees(lambda m: (-1) ** m)

    def multiply_coordinate(self, j: int) -> "AngularFunction":
        """v_j * a(v), re-expanded in harmonics."""
        x = Poly.variable(self.n, j)
        out = AngularFunction(self.n)
        for m, y in self.components.items():
            out = out + AngularFunction.from_poly(x * y)
        return out

    def to_poly(self) -> Poly:
        """Sum of the components as a (non-homogeneous) polynomial."""
        out = Poly(self.n)
        for y in self.components.values():
            out = out + y
        return out

    def homogeneous_extension(self, q: int) -> Poly:
        """The degree-q polynomial ``sum_m |x|^(q-m) Y_m`` (needs q - m even, >= 0)."""
        out = Poly(self.n)
        for m, y in self.components.items():
            if m > q or (q - m) % 2:
                raise ValueError(f"degree {m} cannot be extended homogeneously to degree {q}")
            out = out + Poly.r_squared(self.n, (q - m) // 2) * y
        return out

    def inner(self, other: "AngularFunction") -> Any:
        """(1/C) * integral of a * b over the sphere (bilinear, no conjugation)."""
        total: Any = Fraction(0)
        for m, y in self.components.items():
            z = other.components.get(m)
            if z is not None:
                total = total + sphere_mean(y * z)
        return _norm(total)

    def evaluate(self, v: Sequence[float]) -> complex:
        return sum((y.evaluate(v) for y in self.components.values()), 0j)

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, AngularFunction):
            return NotImplemented
        return self.n == other.n and self.components == other.components

    def __hash__(self) -> int:
        return hash((self.n, tuple(sorted(self.components.items()))))

    def to_json(self) -> Dict[str, Any]:
        return {"n": self.n, "components": [y.to_json() for _, y in sorted(self.components.items())]}

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "AngularFunction":
        n = int(data["n"])
        out = cls(n)
        for c in data.get("components", []):
            out = out + cls.from_poly(Poly.from_json(c))
        return out

    def __repr__(self) -> str:
        return "AngularFunction(" + ", ".join(f"{m}: {y!r}" for m, y in self.components.items()) + ")"


class SpherePoly:
    """Homogeneous polynomial of degree q; its restriction lies in H_q + H_(q-2) + ..."""

    __slots__ = ("n", "q", "poly")

    def __init__(self, n: int, q: int, poly: Poly):
        if not poly.is_homogeneous(q) and not poly.is_zero:
            raise NotHomogeneous(f"expected a homogeneous polynomial of degree {q}")
        self.n, self.q, self.poly = n, q, poly

    def angular(self) -> AngularFunction:
        return AngularFunction.from_poly(self.poly)

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, SpherePoly):
            return NotImplemented
        return (self.n, self.q, self.poly) == (other.n, other.q, other.poly)

    def __repr__(self) -> str:
        return f"SpherePoly(q={self.q}, {self.poly!r})"


# ---------------------------------------------------------------------------
# the spaces D_q and P_q


def polynomial_degrees(q: int) -> range:
    """Harmonic degrees q, q-2, ... >= 0 (empty for q < 0)."""
    return range(q, -1, -2) if q >= 0 else range(0)


def is_excluded_degree(m: int, q: int, n: int) -> bool:
    """True when harmonic degree m is removed from D_q."""
    if 1 - n <= q <= -1:
        return False
    if q >= 0:
        return m <= q and (q - m) % 2 == 0
    return is_excluded_degree(m, -n - q, n)


def in_Dq(a: AngularFunction, q: int, n: Optional[int] = None) -> bool:
    n = a.n if n is None else n
    return not any(is_excluded_degree(m, q, n) for m in a.degrees())


def in_Pq(a: AngularFunction, q: int) -> bool:
    return q >= 0 and all(m <= q and (q - m) % 2 == 0 for m in a.degrees())


def project_Dq(a: AngularFunction, q: int) -> AngularFunction:
    return a.restrict(lambda m: not is_excluded_degree(m, q, a.n))


def project_Pq(a: AngularFunction, q: int) -> AngularFunction:
    return a.restrict(lambda m: q >= 0 and m <= q and (q - m) % 2 == 0)


def polynomial_part(a: AngularFunction, q: int) -> Tuple[SpherePoly, AngularFunction]:
    """Split ``a(v) s^q`` into its polynomial part ``E_q(u)`` and the polynomial-free rest."""
    if q < 0:
        raise ValueError("q must be non-negative")
    kept = project_Pq(a, q)
    return SpherePoly(a.n, q, kept.homogeneous_extension(q)), a - kept


def random_harmonic(n: int, m: int, seed_poly: Poly) -> Poly:  # pragma: no cover - helper for demos
    comps = harmonic_decompose(seed_poly)
    return comps[0] if comps else Poly(n)


def sample_harmonic(n: int, m: int) -> Poly:
    """A fixed nonzero harmonic of degree m (the top component of x1^m)."""
    if m == 0:
        return Poly.constant(n)
    return harmonic_decompose(Poly.monomial(n, (m,) + (0,) * (n - 1)))[0]
