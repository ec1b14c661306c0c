"""Exact scalars over rationals, i, half-integer powers of pi, Euler's gamma and logs.

An :class:`ExactScalar` is a finite sum of terms::

    i^k * pi^p * (prime radicals) * (Gamma monomial) * (a + b*gamma + c*ln2 + ...)

with ``k`` in {0, 1} after canonicalisation (``i^2 = -1`` is absorbed into the
rational coefficients), ``p`` a half-integer, the radical part a product of
primes raised to exponents in (0, 1), and the Gamma monomial a product of
``Gamma(x)^e`` for rational ``x`` in (0, 1) other than 1/2.  The last two
factors are empty for every value built from integer or half-integer Gamma
arguments; they exist so that quarter-integer Gamma ratios and ``2**lam``
factors cancel exactly instead of degrading to floats.

The linear part is a vector over the basis ``1, gamma, ln 2, ln 3, ln 5, ...``.
Products are only defined when one factor is free of gamma and logs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, Iterable, Tuple, Union

import mpmath

from .errors import (
    NonPositiveOrNonHalfInteger,
    NotInvertible,
    PoleInGamma,
    TranscendentalProductError,
)

RationalLike = Union[int, Fraction, str, float]

_ONE = 0  # basis code of the rational unit
_EULER = 1  # basis code of Euler's constant; codes >= 2 are ln(prime)

Key = Tuple[int, Fraction, Tuple[Tuple[int, Fraction], ...], Tuple[Tuple[Fraction, int], ...]]
_UNIT_KEY: Key = (0, Fraction(0), (), ())


def rational(x: RationalLike) -> Fraction:
    """Coerce ``x`` to a Fraction.

    Floats are read through their shortest decimal representation, so
    ``rational(-1.3) == Fraction(-13, 10)``.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError(f"non-finite value {x!r}")
        return Fraction(repr(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, ExactScalar) and x.is_rational:
        return x.to_fraction()
    raise TypeError(f"cannot interpret {x!r} as a rational")


def frac_str(q: Fraction) -> str:
    """Serialise a rational as ``"num/den"``."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


@lru_cache(maxsize=4096)
def _factor(n: int) -> Tuple[Tuple[int, int], ...]:
    out = []
    d = 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e:
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def _prime_exponents(q: Fraction) -> Dict[int, int]:
    if q <= 0:
        raise ValueError(f"expected a positive rational, got {q}")
    exps: Dict[int, int] = {}
    for p, e in _factor(q.numerator):
        exps[p] = exps.get(p, 0) + e
    for p, e in _factor(q.denominator):
        exps[p] = exps.get(p, 0) - e
    return exps


def _key_mul(k1: Key, k2: Key) -> Tuple[Key, Fraction]:
    factor = Fraction(1)
    phase = k1[0] + k2[0]
    if phase >= 2:
        phase -= 2
        factor = -factor
    pi_pow = k1[1] + k2[1]
    rad = dict(k1[2])
    for p, e in k2[2]:
        e2 = rad.get(p, Fraction(0)) + e
        if e2 >= 1:
            e2 -= 1
            factor *= p
        if e2:
            rad[p] = e2
        else:
            rad.pop(p, None)
    gam = dict(k1[3])
    for x, e in k2[3]:
        e2 = gam.get(x, 0) + e
        if e2:
            gam[x] = e2
        else:
            gam.pop(x, None)
    return (phase, pi_pow, tuple(sorted(rad.items())), tuple(sorted(gam.items()))), factor


def _key_inverse(k: Key) -> Tuple[Key, Fraction]:
    factor = Fraction(1)
    phase = k[0]
    if phase == 1:
        factor = -factor  # 1/i = -i
    rad = []
    for p, e in k[2]:
        rad.append((p, 1 - e))
        factor /= p
    gam = tuple((x, -e) for x, e in k[3])
    return (phase, -k[1], tuple(rad), gam), factor


class ExactScalar:
    """Element of the exact coefficient field; immutable, hashable."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, value: Any = 0):
        if isinstance(value, ExactScalar):
            self._terms = value._terms
        elif isinstance(value, dict):
            self._terms = _freeze(value)
        else:
            q = rational(value)
            self._terms = {_UNIT_KEY: ((_ONE, q),)} if q else {}
        self._hash = None

    # ---- constructors -------------------------------------------------
    @classmethod
    def _raw(cls, terms: Dict[Key, Tuple[Tuple[int, Fraction], ...]]) -> "ExactScalar":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def imag_unit(cls) -> "ExactScalar":
        return cls._raw({(1, Fraction(0), (), ()): ((_ONE, Fraction(1)),)})

    @classmethod
    def i_power(cls, k: int) -> "ExactScalar":
        k %= 4
        sign = Fraction(-1) if k >= 2 else Fraction(1)
        return cls._raw({(k % 2, Fraction(0), (), ()): ((_ONE, sign),)})

    @classmethod
    def pi_power(cls, p: RationalLike) -> "ExactScalar":
        p = rational(p)
        if (2 * p).denominator != 1:
            raise ValueError("pi powers must be half-integers")
        return cls._raw({(0, p, (), ()): ((_ONE, Fraction(1)),)})

    @classmethod
    def euler_gamma(cls) -> "ExactScalar":
        return cls._raw({_UNIT_KEY: ((_EULER, Fraction(1)),)})

    @classmethod
    def log(cls, r: RationalLike) -> "ExactScalar":
        """``ln r`` for a positive rational ``r``, expanded over ln(prime)."""
        lin = {p: Fraction(e) for p, e in _prime_exponents(rational(r)).items() if e}
        return cls({_UNIT_KEY: lin})

    @classmethod
    def power(cls, base: RationalLike, exponent: RationalLike) -> "ExactScalar":
        """``base ** exponent`` for positive rational base and rational exponent."""
        base, exponent = rational(base), rational(exponent)
        if base <= 0:
            raise ValueError("power() needs a positive base")
        if exponent.denominator == 1:
            return cls(base ** int(exponent))
        coeff = Fraction(1)
        rad = []
        for p, a in sorted(_prime_exponents(base).items()):
            total = a * exponent
            whole = math.floor(total)
            coeff *= Fraction(p) ** whole
            if total - whole:
                rad.append((p, total - whole))
        return cls._raw({(0, Fraction(0), tuple(rad), ()): ((_ONE, coeff),)})

    @classmethod
    def _gamma_symbol(cls, x0: Fraction) -> "ExactScalar":
        return cls._raw({(0, Fraction(0), (), ((x0, 1),)): ((_ONE, Fraction(1)),)})

    # ---- structure ------------------------------------------------------
    @property
    def terms(self) -> Dict[Key, Tuple[Tuple[int, Fraction], ...]]:
        return dict(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_rational(self) -> bool:
        if not self._terms:
            return True
        if len(self._terms) != 1 or _UNIT_KEY not in self._terms:
            return False
        lin = self._terms[_UNIT_KEY]
        return len(lin) == 1 and lin[0][0] == _ONE

    @property
    def has_transcendental(self) -> bool:
        """True when some term carries a gamma or logarithm component."""
        return any(code != _ONE for lin in self._terms.values() for code, _ in lin)

    @property
    def is_monomial(self) -> bool:
        if len(self._terms) != 1:
            return False
        (lin,) = self._terms.values()
        return len(lin) == 1 and lin[0][0] == _ONE

    def to_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is not rational")
        if not self._terms:
            return Fraction(0)
        return self._terms[_UNIT_KEY][0][1]

    def simplify(self) -> Union[Fraction, "ExactScalar"]:
        """Return a Fraction when the value is rational, else ``self``."""
        return self.to_fraction() if self.is_rational else self

    # ---- arithmetic -----------------------------------------------------
    def __add__(self, other: Any) -> "ExactScalar":
        other = as_exact(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        acc = _thaw(self._terms)
        for key, lin in other._terms.items():
            _acc_add(acc, key, lin, Fraction(1))
        return ExactScalar._raw(_freeze(acc))

    __radd__ = __add__

    def __neg__(self) -> "ExactScalar":
        return ExactScalar._raw({k: tuple((c, -v) for c, v in lin) for k, lin in self._terms.items()})

    def __sub__(self, other: Any) -> "ExactScalar":
        other = as_exact(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Any) -> "ExactScalar":
        return as_exact(other) - self

    def __mul__(self, other: Any) -> "ExactScalar":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            q = Fraction(other)
            if not q:
                return ZERO
            return ExactScalar._raw({k: tuple((c, v * q) for c, v in lin) for k, lin in self._terms.items()})
        other = as_exact(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        if self.has_transcendental and other.has_transcendental:
            raise TranscendentalProductError(
                f"product of two values with gamma/log parts: ({self}) * ({other})"
            )
        acc: Dict[Key, Dict[int, Fraction]] = {}
        for k1, lin1 in self._terms.items():
            for k2, lin2 in other._terms.items():
                key, f = _key_mul(k1, k2)
                if len(lin2) == 1 and lin2[0][0] == _ONE:
                    _acc_add(acc, key, lin1, f * lin2[0][1])
                else:
                    _acc_add(acc, key, lin2, f * lin1[0][1])
        return ExactScalar._raw(_freeze(acc))

    __rmul__ = __mul__

    def inverse(self) -> "ExactScalar":
        """Multiplicative inverse; defined for monomials (one term, no gamma/log part)."""
        if not self.is_monomial:
            raise NotInvertible(f"cannot invert non-monomial value {self}")
        (key, lin), = self._terms.items()
        ikey, f = _key_inverse(key)
        return ExactScalar._raw({ikey: ((_ONE, f / lin[0][1]),)})

    def __truediv__(self, other: Any) -> "ExactScalar":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if not other:
                raise NotInvertible("division by zero")
            return self * (1 / Fraction(other))
        other = as_exact(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: Any) -> "ExactScalar":
        return as_exact(other) * self.inverse()

    def __pow__(self, e: int) -> "ExactScalar":
        if not isinstance(e, int):
            return NotImplemented
        base = self if e >= 0 else self.inverse()
        out = ONE
        for _ in range(abs(e)):
            out = out * base
        return out

    # ---- comparison -----------------------------------------------------
    def __eq__(self, other: Any) -> bool:
        if isinstance(other, ExactScalar):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.is_rational and self.to_fraction() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_rational:
                self._hash = hash(self.to_fraction())
            else:
                self._hash = hash(tuple(sorted(self._terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    # ---- numerics -------------------------------------------------------
    def to_float(self, precision: int = 30) -> "FloatApprox":
        return to_float(self, precision)

    def __complex__(self) -> complex:
        return complex(self.to_float(20).value)

    def __float__(self) -> float:
        v = self.to_float(20).value
        if isinstance(v, mpmath.mpc):
            if abs(v.imag) > 1e-15 * max(1.0, abs(v)):
                raise TypeError(f"{self} is not real")
            v = v.real
        return float(v)

    # ---- serialisation --------------------------------------------------
    def to_json(self) -> Dict[str, Any]:
        out = []
        for key in sorted(self._terms):
            phase, p, rad, gam = key
            lin = dict(self._terms[key])
            entry: Dict[str, Any] = {
                "i": phase,
                "pi": f"{int(2 * p)}/2",
                "a": frac_str(lin.get(_ONE, Fraction(0))),
                "b": frac_str(lin.get(_EULER, Fraction(0))),
                "c": frac_str(lin.get(2, Fraction(0))),
            }
            other_logs = {str(c): frac_str(v) for c, v in sorted(lin.items()) if c > 2}
            if other_logs:
                entry["ln"] = other_logs
            if rad:
                entry["rad"] = {str(pr): frac_str(e) for pr, e in rad}
            if gam:
                entry["gamma"] = {frac_str(x): e for x, e in gam}
            out.append(entry)
        return {"terms": out}

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "ExactScalar":
        total = ZERO
        for t in data.get("terms", []):
            lin = {_ONE: Fraction(t.get("a", "0")), _EULER: Fraction(t.get("b", "0")), 2: Fraction(t.get("c", "0"))}
            for code, v in t.get("ln", {}).items():
                lin[int(code)] = lin.get(int(code), Fraction(0)) + Fraction(v)
            linear = cls({_UNIT_KEY: lin})
            factor = cls.i_power(int(t.get("i", 0))) * cls.pi_power(Fraction(t.get("pi", "0/2")))
            for pr, e in t.get("rad", {}).items():
                factor = factor * cls.power(int(pr), Fraction(e))
            for x, e in t.get("gamma", {}).items():
                factor = factor * gamma_value(Fraction(x)) ** int(e)
            total = total + factor * linear
        return total

    def __repr__(self) -> str:
        return f"ExactScalar({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = [_term_str(k, self._terms[k]) for k in sorted(self._terms)]
        s = " + ".join(parts)
        return s.replace("+ -", "- ")


def _thaw(terms) -> Dict[Key, Dict[int, Fraction]]:
    return {k: dict(lin) for k, lin in terms.items()}


def _acc_add(acc, key, lin, factor: Fraction) -> None:
    slot = acc.setdefault(key, {})
    for code, v in (lin.items() if isinstance(lin, dict) else lin):
        slot[code] = slot.get(code, Fraction(0)) + v * factor


def _freeze(acc) -> Dict[Key, Tuple[Tuple[int, Fraction], ...]]:
    out = {}
    for key, lin in acc.items():
        items = lin.items() if isinstance(lin, dict) else lin
        frozen = tuple(sorted((c, Fraction(v)) for c, v in items if v))
        if not frozen:
            continue
        phase = key[0] % 4
        if phase >= 2:
            frozen = tuple((c, -v) for c, v in frozen)
            key = (phase - 2,) + tuple(key[1:])
        else:
            key = (phase,) + tuple(key[1:])
        if key in out:
            merged = dict(out[key])
            for c, v in frozen:
                merged[c] = merged.get(c, Fraction(0)) + v
            frozen = tuple(sorted((c, v) for c, v in merged.items() if v))
            if not frozen:
                del out[key]
                continue
        out[key] = frozen
    return out


def _rat_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _term_str(key: Key, lin) -> str:
    phase, p, rad, gam = key
    factors = []
    if phase == 1:
        factors.append("i")
    if p:
        factors.append("π" if p == 1 else f"π^({_rat_str(p)})")
    for pr, e in rad:
        factors.append(f"{pr}^({_rat_str(e)})")
    for x, e in gam:
        factors.append(f"Γ({_rat_str(x)})" + ("" if e == 1 else f"^({e})"))
    fac = "".join(factors)
    if len(lin) == 1 and lin[0][0] == _ONE:
        q = lin[0][1]
        if not fac:
            return _rat_str(q)
        if q == 1:
            return fac
        if q == -1:
            return "-" + fac
        if q.denominator == 1:
            sep = "·" if fac[0].isdigit() else ""
            return f"{q.numerator}{sep}{fac}"
        return f"({_rat_str(q)}){fac}"
    pieces = []
    for code, v in lin:
        sym = "" if code == _ONE else ("γ" if code == _EULER else f"ln{code}")
        sign = "-" if v < 0 else "+"
        a = abs(v)
        if not sym:
            body = _rat_str(a)
        elif a == 1:
            body = sym
        elif a.denominator == 1:
            body = f"{a.numerator}{sym}"
        else:
            body = f"({_rat_str(a)}){sym}"
        pieces.append((sign, body))
    inner = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        inner += f" {sign} {body}"
    return f"{fac}({inner})" if fac else f"({inner})"


def as_exact(x: Any, strict: bool = True) -> ExactScalar:
    """Coerce ints, Fractions and rational strings to :class:`ExactScalar`."""
    if isinstance(x, ExactScalar):
        return x
    if isinstance(x, (int, Fraction, str)) and not isinstance(x, bool):
        return ExactScalar(x)
    if strict:
        raise TypeError(f"cannot coerce {x!r} to ExactScalar")
    return NotImplemented


ZERO = ExactScalar(0)
ONE = ExactScalar(1)
I = ExactScalar.imag_unit()
PI = ExactScalar.pi_power(1)
EULER_GAMMA = ExactScalar.euler_gamma()
LN2 = ExactScalar.log(2)


# ---------------------------------------------------------------------------
# floats


@dataclass(frozen=True)
class FloatApprox:
    """Numeric value with an absolute error bound."""

    value: Any
    abs_error_bound: float

    def __complex__(self) -> complex:
        return complex(self.value)

    def __float__(self) -> float:
        v = self.value
        if isinstance(v, mpmath.mpc):
            if abs(v.imag) > max(self.abs_error_bound, 1e-15 * abs(v)):
                raise TypeError("value is not real")
            v = v.real
        return float(v)

    @property
    def real(self) -> float:
        return float(mpmath.re(self.value))

    @property
    def imag(self) -> float:
        return float(mpmath.im(self.value))


def to_float(x: ExactScalar, precision: int = 30) -> FloatApprox:
    """Evaluate ``x`` numerically with ``precision`` significant decimal digits."""
    if precision < 1:
        raise ValueError("precision must be >= 1")
    x = as_exact(x)
    with mpmath.workdps(precision + 10):
        total = mpmath.mpc(0)
        mag = mpmath.mpf(0)
        for (phase, p, rad, gam), lin in x._terms.items():
            f = mpmath.power(mpmath.pi, mpmath.mpf(p.numerator) / p.denominator)
            for pr, e in rad:
                f *= mpmath.power(pr, mpmath.mpf(e.numerator) / e.denominator)
            for x0, e in gam:
                f *= mpmath.gamma(mpmath.mpf(x0.numerator) / x0.denominator) ** e
            s = mpmath.mpf(0)
            for code, v in lin:
                c = mpmath.mpf(v.numerator) / v.denominator
                if code == _ONE:
                    s += c
                elif code == _EULER:
                    s += c * mpmath.euler
                else:
                    s += c * mpmath.log(code)
            term = f * s * (mpmath.mpc(0, 1) if phase else 1)
            total += term
            mag += abs(term)
        bound = float(mag * mpmath.mpf(10) ** (-(precision + 5))) + 0.0
        value = total.real if total.imag == 0 else total
        with mpmath.workdps(precision):
            value = +value
    return FloatApprox(value, bound)


# ---------------------------------------------------------------------------
# Gamma and digamma


def _half_int_gamma(x: Fraction) -> ExactScalar:
    # x = m + 1/2
    m = int(x - Fraction(1, 2))
    if m >= 0:
        q = Fraction(math.factorial(2 * m), 4 ** m * math.factorial(m))
    else:
        k = -m
        q = Fraction((-4) ** k * math.factorial(k), math.factorial(2 * k))
    return q * ExactScalar.pi_power(Fraction(1, 2))


@lru_cache(maxsize=4096)
def gamma_value(x: RationalLike) -> ExactScalar:
    """Gamma at any rational point that is not a pole.

    Integers and half-integers give values in the base field; other rationals
    are reduced by the recurrence to ``Gamma(x0)`` with ``x0`` in (0, 1), kept
    as a symbolic factor.
    """
    x = rational(x)
    if x.denominator == 1:
        if x <= 0:
            raise PoleInGamma(f"Gamma has a pole at {x}")
        return ExactScalar(math.factorial(int(x) - 1))
    if x.denominator == 2:
        return _half_int_gamma(x)
    fl = math.floor(x)
    x0 = x - fl
    coeff = Fraction(1)
    if fl >= 0:
        for j in range(fl):
            coeff *= x0 + j
    else:
        for j in range(1, -fl + 1):
            coeff /= x0 - j
    return coeff * ExactScalar._gamma_symbol(x0)


def gamma_exact(x: RationalLike) -> ExactScalar:
    """Gamma at a positive integer or positive half-integer."""
    q = rational(x)
    if q <= 0 or (2 * q).denominator != 1:
        raise NonPositiveOrNonHalfInteger(f"gamma_exact needs a positive half-integer, got {x}")
    return gamma_value(q)


def _harmonic(k: int) -> Fraction:
    return sum((Fraction(1, j) for j in range(1, k + 1)), Fraction(0))


@lru_cache(maxsize=4096)
def digamma_value(x: RationalLike) -> ExactScalar:
    """Digamma on the half-integer lattice, including negative non-integers."""
    x = rational(x)
    if x.denominator == 1:
        if x <= 0:
            raise PoleInGamma(f"digamma has a pole at {x}")
        return _harmonic(int(x) - 1) - EULER_GAMMA
    if x.denominator != 2:
        raise NonPositiveOrNonHalfInteger(f"digamma is only exact on half-integers, got {x}")
    if x < 0:
        return digamma_value(x + 1) - 1 / x
    m = int(x - Fraction(1, 2))
    odd_sum = sum((Fraction(1, 2 * j - 1) for j in range(1, m + 1)), Fraction(0))
    return 2 * odd_sum - EULER_GAMMA - 2 * LN2


def digamma_exact(x: RationalLike) -> ExactScalar:
    """Digamma at a positive integer or positive half-integer."""
    q = rational(x)
    if q <= 0 or (2 * q).denominator != 1:
        raise NonPositiveOrNonHalfInteger(f"digamma_exact needs a positive half-integer, got {x}")
    return digamma_value(q)


def gamma_laurent(k: int) -> Tuple[ExactScalar, ExactScalar]:
    """Residue and constant term of Gamma(lam) at lam = -k."""
    if k < 0:
        raise ValueError("k must be non-negative")
    sign = Fraction((-1) ** k, math.factorial(k))
    return ExactScalar(sign), sign * (_harmonic(k) - EULER_GAMMA)


@lru_cache(maxsize=1024)
def c_const(m: int, n: int) -> ExactScalar:
    """Integral of w_j^(2m) over the unit sphere of R^n (unnormalised measure)."""
    if m < 0 or n < 1:
        raise ValueError("need m >= 0 and n >= 1")
    return (
        2
        * gamma_value(Fraction(2 * m + 1, 2))
        * ExactScalar.pi_power(Fraction(n - 1, 2))
        / gamma_value(Fraction(2 * m + n, 2))
    )


def surface_area(n: int) -> ExactScalar:
    return c_const(0, n)


def exact_sum(values: Iterable[Any]) -> ExactScalar:
    total = ZERO
    for v in values:
        total = total + v
    return total
