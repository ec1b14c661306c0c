"""Command-line entry point: ``thickfourier <subcommand> ...``.

Exit codes: 0 success, 1 usage error, 2 domain error (class name echoed on
stderr), 3 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence

import mpmath

from .distributions import AtomSum, ThickJet, WFunctionJet, radial_homogeneous_generator
from .errors import ThickFourierError
from .finitepart import pf_power_family, pole_table
from .fourier import ft_jet, ft_star, ft_upper_star, ift_jet, two_pi_power
from .kernelops import kappa_coeff, lambda_coeff
from .oracle import SUITES, run_suite
from .scalars import ExactScalar, FloatApprox, rational

DEFAULT_PRECISION = 15


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit 2, which is reserved
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


@dataclass(frozen=True)
class Config:
    n: int = 3
    precision: int = DEFAULT_PRECISION
    tol: float = 1e-8
    truncation: Optional[int] = None
    format: str = "json"

    def __post_init__(self) -> None:
        if self.n < 2:
            raise UsageError("--n must be at least 2")
        if not self.tol > 0:
            raise UsageError("--tol must be positive")
        if self.precision < 1:
            raise UsageError("--precision must be positive")


def canonical_json(data: Any) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def parse_range(text: str) -> List[int]:
    """``"3"`` or ``"-2..4"`` (inclusive)."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return list(range(int(lo), int(hi) + 1))
        return [int(text)]
    except ValueError:
        raise UsageError(f"bad integer range {text!r}") from None


def _float_repr(x: Any, precision: int) -> str:
    v = x.value if isinstance(x, FloatApprox) else ExactScalar(x).to_float(precision).value
    v = mpmath.mpmathify(v)
    if isinstance(v, mpmath.mpc):
        if v.imag == 0:
            v = v.real
        elif v.real == 0:
            return mpmath.nstr(v.imag, precision) + "j"
        else:
            return f"{mpmath.nstr(v.real, precision)}{'+' if v.imag >= 0 else '-'}{mpmath.nstr(abs(v.imag), precision)}j"
    return mpmath.nstr(v, precision)


# ---------------------------------------------------------------------------
# subcommands


def _table(rows: List[List[Any]], header: Sequence[str], cfg: Config) -> str:
    if cfg.format == "json":
        return canonical_json([dict(zip(header, r)) for r in rows]) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def cmd_kappa_table(args: argparse.Namespace, cfg: Config) -> str:
    rows = []
    for beta in args.beta:
        for m in parse_range(args.m):
            c = kappa_coeff(rational(beta), m, cfg.n)
            rows.append([cfg.n, str(rational(beta)), m, "exact" if c.exact else "float", str(c.value), _float_repr(c.value, cfg.precision)])
    return _table(rows, ("n", "beta", "m", "exact", "value_repr", "float_value"), cfg)


def cmd_lambda_table(args: argparse.Namespace, cfg: Config) -> str:
    rows = []
    for q in parse_range(args.q):
        for m in parse_range(args.m):
            if 2 * m > q:
                continue
            c = lambda_coeff(q, m, cfg.n)
            rows.append([cfg.n, q, m, "exact", str(c.value), _float_repr(c.value, cfg.precision)])
    return _table(rows, ("n", "q", "m", "exact", "value_repr", "float_value"), cfg)


def _read_json(path: Optional[str]) -> Any:
    if path is None or path == "-":
        return json.load(sys.stdin)
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def cmd_ft(args: argparse.Namespace, cfg: Config) -> str:
    src = AtomSum.from_json(_read_json(args.input))
    if src.space != ("thick" if args.dir == "star" else "slthick"):
        raise UsageError(f"--dir {args.dir} needs a {'thick' if args.dir == 'star' else 'slthick'} atom file, got {src.space}")
    res = ft_star(src) if args.dir == "star" else ft_upper_star(src)
    out, prov = res.output, res.provenance
    if args.inverse:
        out = out.reflect().scale(1 / two_pi_power(src.n))
    return canonical_json(out.to_json(None if args.strip_provenance else prov)) + "\n"


def cmd_jet_ft(args: argparse.Namespace, cfg: Config) -> str:
    data = _read_json(args.input)
    if data.get("kind") == "thick_jet":
        jet = ThickJet.from_json(data)
        if cfg.truncation is not None:
            jet = ThickJet(jet.n, jet.coeffs, cfg.truncation)
        out = ft_jet(jet)
        if args.project:
            out = out.projected()
        return canonical_json(out.to_json()) + "\n"
    return canonical_json(ift_jet(WFunctionJet.from_json(data)).to_json()) + "\n"


def cmd_pole_table(args: argparse.Namespace, cfg: Config) -> str:
    fam = pf_power_family(args.side, cfg.n, space=args.space)
    return canonical_json(pole_table(fam, parse_range(args.range))) + "\n"


def cmd_generator(args: argparse.Namespace, cfg: Config) -> str:
    gen = radial_homogeneous_generator(rational(args.lam), cfg.n)
    (atom,) = gen.atoms
    d = atom.to_json()
    key = next(k for k in d if k not in ("kind", "weight", "density"))
    value = atom.param
    return canonical_json({"atom": atom.kind, key: int(value) if value.denominator == 1 else d[key]}) + "\n"


def cmd_verify(args: argparse.Namespace, cfg: Config) -> str:
    reports = run_suite(args.suite, cfg.tol)
    args._failed = not all(r.passed for r in reports)
    if cfg.format == "json":
        return canonical_json([r.to_json() for r in reports]) + "\n"
    lines = [f"{'PASS' if r.passed else 'FAIL'} {r.case_id} rel_error={r.rel_error:.3e} tol={r.tol:g} {r.runtime_ms:.1f}ms" for r in reports]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--n", type=int, default=3)
    common.add_argument("--precision", type=int, default=None)
    common.add_argument("--tol", type=float, default=1e-8)
    common.add_argument("--truncation", type=int, default=None)

    p = _Parser(prog="thickfourier", description="Fourier transforms of thick distributions.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("kappa-table", parents=[common], help="coefficients of K_beta on harmonics")
    s.add_argument("--beta", action="append", required=True)
    s.add_argument("--m", default="0..4")
    s.add_argument("--format", choices=("csv", "json"), default="csv")
    s.set_defaults(func=cmd_kappa_table)

    s = sub.add_parser("lambda-table", parents=[common], help="log coefficients at resonant orders")
    s.add_argument("--q", default="0..4")
    s.add_argument("--m", default="0..2")
    s.add_argument("--format", choices=("csv", "json"), default="csv")
    s.set_defaults(func=cmd_lambda_table)

    s = sub.add_parser("ft", parents=[common], help="transform an atom file")
    s.add_argument("--dir", choices=("star", "upper"), required=True)
    s.add_argument("--in", dest="input", default=None)
    s.add_argument("--out", dest="output", default=None)
    s.add_argument("--inverse", action="store_true", help="apply (2 pi)^-n and reflection after the transform")
    s.add_argument("--strip-provenance", action="store_true")
    s.add_argument("--format", choices=("json",), default="json")
    s.set_defaults(func=cmd_ft)

    s = sub.add_parser("jet-ft", parents=[common], help="transform a jet (thick_jet in, w_jet out, or back)")
    s.add_argument("--in", dest="input", default=None)
    s.add_argument("--out", dest="output", default=None)
    s.add_argument("--project", action="store_true", help="drop resonant components of the result")
    s.add_argument("--format", choices=("json",), default="json")
    s.set_defaults(func=cmd_jet_ft)

    s = sub.add_parser("pole-table", parents=[common], help="poles of the power family")
    s.add_argument("--side", choices=("at_zero", "at_infinity"), default="at_infinity")
    s.add_argument("--space", choices=("thick", "classical"), default="thick")
    s.add_argument("--range", default="-8..2")
    s.add_argument("--out", dest="output", default=None)
    s.add_argument("--format", choices=("json",), default="json")
    s.set_defaults(func=cmd_pole_table)

    s = sub.add_parser("generator", parents=[common], help="radial homogeneous generator of a degree")
    s.add_argument("--lambda", dest="lam", required=True)
    s.add_argument("--format", choices=("json",), default="json")
    s.set_defaults(func=cmd_generator)

    s = sub.add_parser("verify", parents=[common], help="run numeric cross-checks")
    s.add_argument("--suite", choices=sorted(SUITES), default="all")
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.set_defaults(func=cmd_verify)
    return p


_VALUE_FLAGS = ("--range", "--m", "--q", "--beta", "--lambda", "--n")


def _attach_negative_values(argv: Sequence[str]) -> List[str]:
    # "--range -5..-2" would otherwise read "-5..-2" as an option
    out: List[str] = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUE_FLAGS:
            nxt = next(it, None)
            if nxt is None:
                out.append(tok)
            else:
                out.append(f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def _precision(args: argparse.Namespace) -> int:
    if args.precision is not None:
        return args.precision
    env = os.environ.get("THICKFOURIER_PRECISION")
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"THICKFOURIER_PRECISION must be an integer, got {env!r}") from None
    return DEFAULT_PRECISION


def run_command(argv: Optional[Sequence[str]] = None, stdout: Any = None, stderr: Any = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        argv = sys.argv[1:] if argv is None else argv
        args = build_parser().parse_args(_attach_negative_values(argv))
        cfg = Config(args.n, _precision(args), args.tol, args.truncation, args.format)
        text = args.func(args, cfg)
    except UsageError as e:
        print(e, file=stderr)
        return 1
    except ThickFourierError as e:
        print(f"{type(e).__name__}: {e}", file=stderr)
        return 2
    except (OSError, json.JSONDecodeError, KeyError) as e:
        print(f"input error: {e}", file=stderr)
        return 1
    target = getattr(args, "output", None)
    if target:
        with open(target, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return 3 if getattr(args, "_failed", False) else 0


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
