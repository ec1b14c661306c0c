"""Run every numeric cross-check and print a table of errors and timings."""

import sys

from thickfourier.oracle import run_suite

tol = float(sys.argv[1]) if len(sys.argv) > 1 else 1e-8
reports = run_suite("all", tol)
print(f"{'case':14} {'lhs':>26} {'rel.err':>10} {'ms':>7}  ok")
for r in reports:
    lhs = f"{r.lhs.real:.12g}" if r.lhs.imag == 0 else f"{r.lhs.imag:.12g}j"
    print(f"{r.case_id:14} {lhs:>26} {r.rel_error:10.2e} {r.runtime_ms:7.1f}  {'yes' if r.passed else 'NO'}")
print(f"{sum(r.passed for r in reports)}/{len(reports)} passed at tol={tol:g}")
