"""Command-line front end.

Subcommands: coeffs, asymptotic, kernel-table, multiplier, exact-pn, verify.
Outputs are reproducible: floats print with 17 significant digits, scans emit
one JSON record per line (or CSV with a fixed header), and every computation
is deterministic for a fixed RunConfig regardless of FALSETHETA_THREADS.

Exit codes: 0 success, 2 validation error, 3 assertion/identity failure,
4 numeric non-convergence.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from .errors import IdentityError, ToleranceError, ValidationError

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_ASSERTION = 3
EXIT_NUMERIC = 4


@dataclass
class RunConfig:
    """Validated command-line arguments for one invocation."""

    subcommand: str
    j: int | None = None
    n: int | None = None
    scan: tuple | None = None
    k_max: int | None = None
    tolerance: float = 1e-9
    output_format: str = "json"
    output_path: str | None = None
    threads: int = 1
    kind: str = "alpha"
    with_exact: bool = False
    only: str | None = None
    r_max: int = 4


def _fmt(x) -> str:
    if isinstance(x, float):
        return f"{x:.17g}"
    return str(x)


def _emit(lines, config: RunConfig):
    text = "\n".join(lines) + "\n"
    if config.output_path:
        with open(config.output_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _threads() -> int:
    raw = os.environ.get("FALSETHETA_THREADS", "1")
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValidationError(f"FALSETHETA_THREADS must be an integer, got {raw!r}") from exc
    if value < 1:
        raise ValidationError("FALSETHETA_THREADS must be >= 1")
    return value


def cmd_coeffs(config: RunConfig) -> int:
    from . import maass, qseries

    n = config.n if config.n is not None else 12
    lines = []
    if config.kind == "podeu":
        values = qseries.podeu(n - 1)
        rows = [{"kind": "podeu", "n": i, "value": str(v)} for i, v in enumerate(values)]
    elif config.kind == "alpha":
        j = config.j if config.j is not None else 0
        values = qseries.alpha(j, n - 1)
        p = qseries.partition_numbers(2 * n + 1)
        ro = qseries.r_odd_distinct(2 * n + 1)
        f = qseries.podeu(2 * n + 1)
        rows = []
        for i, v in enumerate(values):
            row = {"kind": "alpha", "j": j, "n": i, "value": str(v)}
            # the exact decomposition columns tie alpha back to the counts
            if j == 0:
                row["decomposition_ok"] = (2 * f[2 * i] == 2 * p[i] + ro[2 * i] + v)
            elif j == 1:
                row["decomposition_ok"] = (2 * f[2 * i + 1] == ro[2 * i + 1] + v)
            rows.append(row)
    elif config.kind == "u":
        j = config.j if config.j is not None else 0
        series = qseries.u_series(j, n)
        rows = [{"kind": "u", "j": j, "exponent": str(series.offset + i), "value": str(c)}
                for i, c in enumerate(series.coeffs)]
    elif config.kind == "d":
        j = config.j if config.j is not None else 0
        lines.append("j,n_numerator,n_denominator,value")
        from .quadform import BETA, coefficient_table
        idx_min, quarters = coefficient_table(j, n)
        for i, q in enumerate(quarters):
            grid = (idx_min + i) + BETA[j]
            if abs(grid) > n or q == 0:
                continue
            lines.append(f"{j},{grid.numerator},{grid.denominator},{Fraction(int(q), 4)}")
        _emit(lines, config)
        return EXIT_OK
    else:
        raise ValidationError(f"unknown coefficient kind {config.kind!r}")
    if config.output_format == "csv":
        keys = list(rows[0].keys())
        lines.append(",".join(keys))
        lines.extend(",".join(_fmt(row.get(k, "")) for k in keys) for row in rows)
    else:
        lines.extend(json.dumps(row) for row in rows)
    _emit(lines, config)
    return EXIT_OK


def cmd_asymptotic(config: RunConfig) -> int:
    from . import asymptotics, qseries

    if config.scan is not None:
        lo, hi, count = config.scan
        ns = sorted({int(round(lo * (hi / lo) ** (i / max(count - 1, 1))))
                     for i in range(count)})
    elif config.n is not None:
        ns = [config.n]
    else:
        raise ValidationError("asymptotic needs --n or --scan")
    j = config.j if config.j is not None else 1
    alpha_table = qseries.alpha(j, max(ns)) if config.with_exact else None
    rows = []
    for n in ns:
        exact = alpha_table[n] if alpha_table is not None else None
        report = asymptotics.theorem_main_sum(j, n, tol=config.tolerance, exact=exact,
                                              k_cap=config.k_max)
        rows.append(report.to_dict())
    lines = []
    if config.output_format == "csv":
        lines.append("j,n,exact,main_sum,residual,n34_ratio")
        for row in rows:
            lines.append(",".join(
                _fmt(row[k]) if row[k] is not None else ""
                for k in ("j", "n", "exact", "main_sum", "residual", "n34_ratio")))
    else:
        lines.extend(json.dumps(row) for row in rows)
    _emit(lines, config)
    return EXIT_OK


def cmd_kernel_table(config: RunConfig) -> int:
    import mpmath as mp

    from .kernel import REFERENCE_AGGREGATES, KernelTaylorTable

    table = KernelTaylorTable.build(config.r_max)
    lines = ["j,r,value,closed_form_string,rel_error_vs_table"]
    for r in range(config.r_max + 1):
        for j in range(3):
            exact = table.aggregated_exact[(j, r)]
            closed = f"{exact}*pi^{2 * r + 2}"
            ref = REFERENCE_AGGREGATES.get((j, r))
            if ref is None:
                rel = ""
            elif ref == 0:
                rel = _fmt(float(abs(exact)))
            else:
                rel = _fmt(float(abs((exact - ref) / ref)))
            lines.append(f"{j},{r},{_fmt(table.aggregated[(j, r)])},{closed},{rel}")
    _emit(lines, config)
    return EXIT_OK


def cmd_multiplier(config: RunConfig, matrix) -> int:
    from .modular import ModularMatrix, psi_vector

    m = ModularMatrix(*matrix)
    psi = psi_vector(m)
    out = {
        "matrix": list(matrix),
        "entries": [[[_fmt(z.real), _fmt(z.imag)] for z in row] for row in psi.entries],
        "unitarity_defect": _fmt(psi.unitarity_defect()),
    }
    _emit([json.dumps(out)], config)
    return EXIT_OK


def cmd_exact_pn(config: RunConfig) -> int:
    from . import asymptotics, qseries

    n = config.n if config.n is not None else 200
    p = qseries.partition_numbers(n)
    lines = []
    for i in range(1, n + 1):
        k_max = config.k_max if config.k_max is not None else math.isqrt(i) + 5
        approx = asymptotics.rademacher_p(i, k_max)
        lines.append(json.dumps({
            "n": i, "p": str(p[i]), "series": _fmt(approx),
            "rounds_exactly": abs(approx - p[i]) < 0.5,
        }))
    _emit(lines, config)
    return EXIT_OK


def cmd_verify(config: RunConfig) -> int:
    from . import verification

    groups = None if config.only is None else [config.only]
    results = verification.run(groups=groups, threads=config.threads)
    lines = [r.line() for r in results]
    failed = [r for r in results if not r.passed]
    lines.append(f"{sum(r.passed for r in results)}/{len(results)} checks passed")
    _emit(lines, config)
    return EXIT_OK if not failed else EXIT_ASSERTION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="falsetheta",
        description="Exact and asymptotic coefficients of the parity-partition "
                    "false-indefinite theta functions")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("coeffs", help="exact coefficient tables")
    p.add_argument("--j", type=int, choices=(0, 1, 2))
    p.add_argument("--n", type=int, help="number of coefficients")
    p.add_argument("--podeu", action="store_true", help="shortcut for --kind podeu")
    p.add_argument("--kind", choices=("alpha", "podeu", "u", "d"), default="alpha")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output")

    p = sub.add_parser("asymptotic", help="main-sum evaluation and scans")
    p.add_argument("--j", type=int, choices=(0, 1, 2), default=1)
    p.add_argument("--n", type=int)
    p.add_argument("--scan", help="lo:hi:count geometric scan")
    p.add_argument("--exact", action="store_true", help="include exact coefficients")
    p.add_argument("--k-max", type=int, dest="k_max", help="truncate the arc sum")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output")

    p = sub.add_parser("kernel-table", help="aggregated kernel Taylor values as CSV")
    p.add_argument("--r-max", type=int, default=4)
    p.add_argument("--output")

    p = sub.add_parser("multiplier", help="3x3 multiplier matrix of (a b; c d)")
    for name in ("a", "b", "c", "d"):
        p.add_argument(name, type=int)
    p.add_argument("--output")

    p = sub.add_parser("exact-pn", help="partition numbers: recurrence vs series")
    p.add_argument("--n", type=int, default=200)
    p.add_argument("--k-max", type=int)
    p.add_argument("--output")

    p = sub.add_parser("verify", help="run the acceptance checks")
    p.add_argument("--only", help="restrict to one check group")
    p.add_argument("--output")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        threads = _threads()
        config = RunConfig(
            subcommand=args.subcommand,
            j=getattr(args, "j", None),
            n=getattr(args, "n", None),
            k_max=getattr(args, "k_max", None),
            tolerance=getattr(args, "tol", 1e-9),
            output_format=getattr(args, "format", "json"),
            output_path=getattr(args, "output", None),
            threads=threads,
            kind="podeu" if getattr(args, "podeu", False) else getattr(args, "kind", "alpha"),
            with_exact=getattr(args, "exact", False),
            only=getattr(args, "only", None),
            r_max=getattr(args, "r_max", 4),
        )
        if getattr(args, "scan", None):
            parts = args.scan.split(":")
            if len(parts) != 3:
                raise ValidationError("--scan expects lo:hi:count")
            config.scan = (int(parts[0]), int(parts[1]), int(parts[2]))
        if args.subcommand == "coeffs":
            return cmd_coeffs(config)
        if args.subcommand == "asymptotic":
            return cmd_asymptotic(config)
        if args.subcommand == "kernel-table":
            return cmd_kernel_table(config)
        if args.subcommand == "multiplier":
            return cmd_multiplier(config, (args.a, args.b, args.c, args.d))
        if args.subcommand == "exact-pn":
            return cmd_exact_pn(config)
        if args.subcommand == "verify":
            return cmd_verify(config)
        raise ValidationError(f"unknown subcommand {args.subcommand!r}")
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (IdentityError, AssertionError) as exc:
        print(f"assertion failure: {exc}", file=sys.stderr)
        return EXIT_ASSERTION
    except ToleranceError as exc:
        print(f"numeric non-convergence: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
