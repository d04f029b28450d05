"""Command-line front end.

    diraclt table1 --n 1..5
    diraclt table2 --n-range 4..8 --format csv
    diraclt constants --n 1 --format json
    diraclt infimum-scan --n 2 --weight unit
    diraclt critical-points --n 1..6
    diraclt shells --n 2 --k-max 20
    diraclt bracket --n 2 --k-max 200

Exit status: 0 on success, 1 when a verification (scan, shell inequality)
fails, 2 on bad usage, 3 when ``n`` or another argument is out of domain.
"""
from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from ._precision import DEFAULT_PREC, MIN_PREC, fixed, rational_str, sig
from .constants import MEASURES, TABLE_PLACES, bound_set, build_table
from .families import KINDS, bracket_scan, shell_report
from .infimum import WEIGHTS, critical_points, i1_ratio, ratio_scan
from .report import FORMATS, render

COMMANDS = ("constants", "table1", "table2", "infimum-scan", "critical-points", "shells", "bracket")

DEFAULT_N = {
    "constants": (1, 8),
    "table1": (1, 5),
    "table2": (4, 8),
    "infimum-scan": (1, 6),
    "critical-points": (1, 6),
    "shells": (2, 2),
    "bracket": (2, 2),
}


class DomainError(Exception):
    pass


def parse_n(text: str) -> tuple[int, int]:
    """Parse ``"5"`` or ``"4..8"`` into an inclusive range."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            a, b = int(lo), int(hi)
        else:
            a = b = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or A..B, got {text!r}") from None
    if a > b:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return a, b


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diraclt",
        description="Reproduce and verify Lieb-Thirring-type constants for the Dirac operator on S^n.",
    )
    parser.add_argument("command", choices=COMMANDS)
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--n", type=parse_n, help="dimension N or range A..B")
    group.add_argument("--n-range", type=parse_n, help="dimension range A..B")
    parser.add_argument("--precision-bits", type=int, default=DEFAULT_PREC)
    parser.add_argument("--measure", choices=MEASURES, default=None,
                        help="default: normalized, except surface for table2")
    parser.add_argument("--format", choices=FORMATS, default="md")
    parser.add_argument("--weight", choices=WEIGHTS, default="unit")
    parser.add_argument("--variant", choices=("auto", "exact_count", "envelope"), default="auto",
                        help="integral variant for infimum-scan; auto uses the exact count on S^2 "
                             "with unit weight and the envelope otherwise")
    parser.add_argument("--kind", choices=KINDS + ("all",), default="all")
    parser.add_argument("--k-max", type=int, default=200)
    parser.add_argument("--points", type=int, default=1000, help="infimum-scan grid points")
    parser.add_argument("--out", default=None, help="write to this file instead of stdout")
    return parser


def _opt(value, formatter=sig):
    return None if value is None else formatter(value)


def _constants_rows(ns, prec, measure):
    rows = []
    for n in ns:
        b = bound_set(n, prec, measure or "normalized")
        rows.append({
            "n": n,
            "measure": b.measure,
            "c_n": sig(b.c_n),
            "c_n_prime": rational_str(b.c_n_prime),
            "c_n_prime_decimal": sig(b.c_n_prime),
            "K_n": rational_str(b.K_n),
            "K_n_prime": rational_str(b.K_n_prime),
            "dirac_lower": sig(b.dirac_lower),
            "dirac_lower_source": b.dirac_lower_source,
            "dirac_lower_general": sig(b.dirac_lower_general),
            "dirac_sq_lower": sig(b.dirac_sq_lower),
            "kowalski_lower": _opt(b.kowalski_lower),
            "k_upper_improved": _opt(b.k_upper_improved),
            "k_upper_kowalski": _opt(b.k_upper_kowalski),
        })
    return rows


def _table_rows(which, ns, prec, measure):
    if which == "table2" and ns[0] < 2:
        raise DomainError("table2 requires n >= 2")
    places = TABLE_PLACES[which]
    rows = []
    for row in build_table(which, ns, prec, measure):
        out = {}
        for key, value in row.items():
            out[key] = _opt(value, lambda v, p=places[key]: fixed(v, p)) if key in places else value
        rows.append(out)
    return rows


def _scan_rows(ns, weight, variant, points, prec):
    from .infimum import GridSpec

    rows, ok = [], True
    scan_prec = min(prec, 128)
    for n in ns:
        v = variant
        if v == "auto":
            v = "exact_count" if (n == 2 and weight == "unit") else "envelope"
        r = ratio_scan(n, weight, v, GridSpec(points=points), scan_prec)
        ok &= r.passed
        rows.append({
            "n": n,
            "weight": weight,
            "variant": v,
            "grid_points": int(r.grid.size),
            "minimum": sig(r.minimum),
            "floor": sig(r.floor),
            "floor_label": r.floor_label,
            "margin": sig(r.margin, 6),
            "minimizer": sig(r.minimizer),
            "x_plus": sig(r.x_plus),
            "minimizer_offset": sig(r.minimizer_offset, 3),
            "status": "PASS" if r.passed else "FAIL",
        })
    return rows, ok


def _critical_rows(ns, prec):
    rows = []
    for n in ns:
        c = critical_points(n, prec)
        rows.append({
            "n": n,
            "x_minus": sig(c.x_minus),
            "x_plus": sig(c.x_plus),
            "ratio_at_x_plus": sig(i1_ratio(n, c.x_plus, "unit", prec)),
            "residual": sig(c.residual, 3),
        })
    return rows


def _kinds(kind):
    return KINDS if kind == "all" else (kind,)


def _shell_rows(ns, kind, k_max, prec):
    rows, ok = [], True
    for n in ns:
        for k in _kinds(kind):
            start = 1 if k == "scalar_laplace" else 0
            for d in range(start, k_max + 1):
                r = shell_report(n, k, d, prec)
                ok &= r.satisfied and r.kowalski_satisfied is not False
                rows.append({
                    "n": n,
                    "kind": k,
                    "degree": d,
                    "lhs": rational_str(r.lhs),
                    "rho": r.rho,
                    "power": rational_str(r.power),
                    "ratio": sig(r.ratio),
                    "rhs_constant": sig(r.rhs_constant),
                    "satisfied": r.satisfied,
                    "kowalski_satisfied": r.kowalski_satisfied,
                })
    return rows, ok


def _bracket_rows(ns, kind, k_max, prec):
    rows, ok = [], True
    for n in ns:
        for k in _kinds(kind):
            b = bracket_scan(n, k, k_max, prec)
            ok &= b.all_satisfied
            rows.append({
                "n": n,
                "kind": k,
                "lower": sig(b.lower),
                "upper_empirical": sig(b.upper),
                "argmin_degree": b.argmin,
                "turning_point": b.turning_point,
                "monotone_tail": b.monotone_tail,
                "all_satisfied": b.all_satisfied,
            })
    return rows, ok


def run(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    lo, hi = args.n or args.n_range or DEFAULT_N[args.command]
    ns = list(range(lo, hi + 1))
    prec = args.precision_bits
    ok = True
    try:
        if lo < 1:
            raise DomainError(f"n must be >= 1, got {lo}")
        if prec < MIN_PREC:
            raise DomainError(f"--precision-bits must be >= {MIN_PREC}, got {prec}")
        if args.command == "constants":
            rows = _constants_rows(ns, prec, args.measure)
        elif args.command in ("table1", "table2"):
            rows = _table_rows(args.command, ns, prec, args.measure)
        elif args.command == "infimum-scan":
            if args.points < 1000:
                raise DomainError("--points must be >= 1000")
            rows, ok = _scan_rows(ns, args.weight, args.variant, args.points, prec)
        elif args.command == "critical-points":
            rows = _critical_rows(ns, prec)
        elif args.command == "shells":
            if args.k_max < 1:
                raise DomainError("--k-max must be >= 1")
            rows, ok = _shell_rows(ns, args.kind, args.k_max, prec)
        else:
            if args.k_max < 1:
                raise DomainError("--k-max must be >= 1")
            rows, ok = _bracket_rows(ns, args.kind, args.k_max, prec)
    except DomainError as exc:
        print(f"diraclt {args.command}: {exc}", file=sys.stderr)
        return 3

    text = render(rows, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if not ok:
        print(f"diraclt {args.command}: verification FAILED", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
