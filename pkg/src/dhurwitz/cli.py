"""Command-line front end: exact tables, cross-check reports, scans, plots.

Nine subcommands expose the library as deterministic static artifacts:
``hurwitz`` / ``dessins`` print one enumeration polynomial, ``weingarten``
prints a full order-``k`` table, ``oracle`` replays a value against the
brute-force enumerator, ``roots scan`` / ``roots table`` drive the exact
root machinery, ``tr`` prints recursion correlators, ``report-appendix``
recomputes every cell of the bundled reference tables by at least two
independent routes, and ``plot`` renders a root table as a standalone SVG.

All artifacts are deterministic: aggregation is sorted by canonical key
before emission and exact values are serialized as strings (never
floats), so identical configurations produce byte-identical output
regardless of the configured thread count.  The thread count (``--threads``
or ``DHURWITZ_THREADS``) caps the workers used for independent keys; it
never changes results.

Exit codes: 0 on success, 1 when a verification fails or an internal
cross-check trips, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from math import prod
from pathlib import Path
from typing import Callable, NamedTuple

from . import hurwitz, reference_data, specrec, weingarten
from .factorizations import (
    dessin_connected_count,
    dessin_disconnected_count,
    weighted_counts,
)
from .permutations import Permutation, parse_cycles, partitions_of
from .plots import render_roots_svg
from .polys import poly_parse, poly_str, poly_to_strings
from .roots import conjecture_scan, largeg_root_table

__all__ = ["RunConfig", "UsageError", "main"]

_ENV_THREADS = "DHURWITZ_THREADS"

# Desk-scale bounds: requests beyond these are refused up front (exit 2)
# rather than left to run for hours.
_MAX_GENUS = 64
_MAX_POINTS = 10
_MAX_WEIGHT = 64
_MAX_TABLE_K = 6
_MAX_LEADING_K = 8
_MAX_DIGITS = 64
_MAX_ORDERS = 16
_MAX_ORACLE_MONOTONE_R = 12
_MAX_ORACLE_DESSIN_WEIGHT = 8
_MAX_EULER = 4  # 2g - 2 + n cap for correlators


class UsageError(Exception):
    """Configuration rejected before any computation ran (exit code 2)."""


class RunConfig(NamedTuple):
    """Validated run configuration shared by every subcommand."""

    subcommand: str
    family: str | None
    genus: tuple[int, ...]
    n_max: int | None
    weight_max: int | None
    out: str | None
    fmt: str
    threads: int
    extra: dict


# -- small shared helpers ----------------------------------------------------


def _json_text(payload) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _csv_text(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _cycle_string(lam: tuple[int, ...]) -> str:
    """Canonical cycle notation for the representative of a cycle type,
    e.g. ``(1 2)(3)`` for type ``(2, 1)`` and ``()`` for the empty type."""
    if not lam:
        return "()"
    pieces, start = [], 1
    for p in lam:
        pieces.append("(" + " ".join(str(i) for i in range(start, start + p)) + ")")
        start += p
    return "".join(pieces)


def _perm_of(lam: tuple[int, ...]) -> Permutation:
    if not lam:
        return Permutation(())
    return parse_cycles(_cycle_string(lam))


def _parse_parts(text: str) -> tuple[int, ...]:
    try:
        parts = tuple(int(p) for p in text.split(","))
    except ValueError:
        raise UsageError(f"cannot parse parts {text!r}; expected e.g. 4,2,1") from None
    if not parts or any(p < 1 for p in parts):
        raise UsageError("parts must be positive integers")
    if sum(parts) > _MAX_WEIGHT:
        raise UsageError(f"total weight {sum(parts)} exceeds the bound {_MAX_WEIGHT}")
    return tuple(sorted(parts, reverse=True))


def _parse_genus(text: str) -> tuple[int, ...]:
    """Accepts ``3``, ``0,1,2`` or an inclusive range ``10..20``."""
    try:
        if ".." in text:
            lo_s, hi_s = text.split("..")
            gs = tuple(range(int(lo_s), int(hi_s) + 1))
        else:
            gs = tuple(int(p) for p in text.split(","))
    except ValueError:
        raise UsageError(f"cannot parse genus {text!r}; expected e.g. 1, 0,1 or 10..20") from None
    if any(g < 0 or g > _MAX_GENUS for g in gs):
        raise UsageError(f"genus values must lie in 0..{_MAX_GENUS}")
    return gs


def _single_genus(gs: tuple[int, ...]) -> int:
    if len(gs) != 1:
        raise UsageError("this subcommand takes a single genus value")
    return gs[0]


# -- configuration -----------------------------------------------------------


def _apply_config(argv: list[str]) -> list[str]:
    """Splice ``--config`` file entries in as defaults.

    The file holds a JSON object whose keys are the long flag names;
    its tokens are inserted directly after the subcommand, so flags given
    on the command line still win.
    """
    if "--config" not in argv:
        return argv
    i = argv.index("--config")
    if i + 1 >= len(argv):
        raise UsageError("--config needs a file path")
    path = argv[i + 1]
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from None
    if not isinstance(data, dict):
        raise UsageError("config file must hold a JSON object of flag values")
    rest = argv[:i] + argv[i + 2 :]
    if not rest or rest[0].startswith("-"):
        raise UsageError("--config requires a subcommand")
    pos = 2 if rest[0] == "roots" and len(rest) > 1 and not rest[1].startswith("-") else 1
    spliced: list[str] = []
    for key in sorted(data):
        flag = "--" + str(key).replace("_", "-")
        value = data[key]
        if isinstance(value, bool):
            if value:
                spliced.append(flag)
        elif isinstance(value, list):
            spliced.extend([flag, ",".join(str(v) for v in value)])
        else:
            spliced.extend([flag, str(value)])
    return rest[:pos] + spliced + rest[pos:]


def _thread_count(args: argparse.Namespace) -> int:
    threads = getattr(args, "threads", None)
    if threads is None:
        env = os.environ.get(_ENV_THREADS)
        if env is not None:
            try:
                threads = int(env)
            except ValueError:
                raise UsageError(f"{_ENV_THREADS} must be an integer, got {env!r}") from None
    if threads is None:
        threads = 1
    if threads < 1:
        raise UsageError("thread count must be a positive integer")
    return threads


def _build_config(args: argparse.Namespace) -> RunConfig:
    sub = args.subcommand
    if sub == "roots":
        sub = f"roots-{args.roots_cmd}"
    family = getattr(args, "family", None) or getattr(args, "curve", None)
    threads = _thread_count(args)
    fmt = args.format
    out = args.out
    extra: dict = {}
    genus: tuple[int, ...] = ()
    n_max = weight_max = None

    if sub in ("hurwitz", "dessins", "oracle"):
        genus = _parse_genus(args.genus)
        g = _single_genus(genus)
        mu = _parse_parts(args.parts)
        extra["parts"] = mu
        if sub != "oracle":
            extra["times_mu"] = args.times_mu
        else:
            n, d = len(mu), sum(mu)
            if family == "monotone" and 2 * g - 2 + n + d > _MAX_ORACLE_MONOTONE_R:
                raise UsageError(
                    "brute-force request too large: need "
                    f"2g-2+n+weight <= {_MAX_ORACLE_MONOTONE_R}"
                )
            if family == "dessin" and d > _MAX_ORACLE_DESSIN_WEIGHT:
                raise UsageError(
                    f"brute-force request too large: need weight <= {_MAX_ORACLE_DESSIN_WEIGHT}"
                )
    elif sub == "weingarten":
        k = args.k
        cap = _MAX_LEADING_K if args.leading else _MAX_TABLE_K
        if k < 0 or k > cap:
            raise UsageError(f"k must lie in 0..{cap}")
        extra["k"] = k
        extra["method"] = args.method
        extra["leading"] = args.leading
    elif sub == "roots-scan":
        genus = _parse_genus(args.genus) if args.genus else ()
        n_max = args.n_max
        weight_max = args.weight_max
        if n_max < 0 or n_max > _MAX_POINTS:
            raise UsageError(f"n-max must lie in 0..{_MAX_POINTS}")
        if weight_max < 0 or weight_max > _MAX_WEIGHT:
            raise UsageError(f"weight-max must lie in 0..{_MAX_WEIGHT}")
        checks = tuple(c for c in args.checks.split(",") if c)
        bad = [c for c in checks if c not in ("real_rooted", "interlacing")]
        if bad:
            raise UsageError(f"unknown checks: {', '.join(bad)}")
        extra["checks"] = checks
    elif sub in ("roots-table", "plot"):
        genus = _parse_genus(args.genus)
        if not genus:
            raise UsageError("genus range is empty")
        extra["parts"] = _parse_parts(args.parts)
        if args.digits < 0 or args.digits > _MAX_DIGITS:
            raise UsageError(f"digits must lie in 0..{_MAX_DIGITS}")
        extra["digits"] = args.digits
    elif sub == "tr":
        try:
            g_s, n_s = args.gn.split(",")
            g, n = int(g_s), int(n_s)
        except ValueError:
            raise UsageError(f"cannot parse --gn {args.gn!r}; expected e.g. 1,2") from None
        if g < 0 or n < 1:
            raise UsageError("need genus >= 0 and at least one point")
        if 2 * g - 2 + n > _MAX_EULER:
            raise UsageError(f"correlator request needs 2g-2+n <= {_MAX_EULER}")
        genus = (g,)
        extra["gn"] = (g, n)
        extra["raw"] = args.raw
        if not args.raw:
            orders = args.orders
            if orders is None:
                raise UsageError("--orders is required unless --raw is given")
            if orders < 1 or orders > _MAX_ORDERS:
                raise UsageError(f"orders must lie in 1..{_MAX_ORDERS}")
            extra["orders"] = orders
    return RunConfig(sub, family, genus, n_max, weight_max, out, fmt, threads, extra)


# -- subcommand runners ------------------------------------------------------


def _run_hurwitz(cfg: RunConfig) -> tuple[str, bool]:
    g = cfg.genus[0]
    mu = cfg.extra["parts"]
    compute = hurwitz.monotone_H if cfg.family == "monotone" else hurwitz.dessin_D
    poly = compute(g, mu)
    if cfg.extra["times_mu"]:
        poly = poly.scale(prod(mu))
    if cfg.fmt == "csv":
        rows = [("degree", "coefficient")]
        rows += [(str(k), str(c)) for k, c in enumerate(poly.coeffs)]
        return _csv_text(rows), True
    payload = {
        "family": cfg.family,
        "genus": g,
        "parts": list(mu),
        "times_mu": cfg.extra["times_mu"],
        "variable": "t",
        "value": poly_str(poly),
        "coefficients": poly_to_strings(poly),
    }
    return _json_text(payload), True


def _run_weingarten(cfg: RunConfig) -> tuple[str, bool]:
    k = cfg.extra["k"]
    method = cfg.extra["method"]
    lams = sorted(partitions_of(k), reverse=True)
    if cfg.extra["leading"]:
        values = {_cycle_string(lam): str(weingarten.uw_leading(_perm_of(lam))) for lam in lams}
        payload = {"k": k, "normalization": "leading", "values": values}
        ok = True
    else:
        # The linear-system route needs at least one equation; at k = 0
        # the table is the single trivial entry, so only the character
        # route applies.
        if k == 0:
            method = "character"
        char_vals = orth_vals = None
        if method in ("character", "both"):
            char_vals = {lam: weingarten.sw_character(_perm_of(lam)) for lam in lams}
        if method in ("orthogonality", "both"):
            table = weingarten.sw_orthogonality_table(k)
            orth_vals = {lam: table.values[lam] for lam in lams}
        chosen = char_vals if char_vals is not None else orth_vals
        mismatches = []
        if method == "both":
            mismatches = [lam for lam in lams if char_vals[lam] != orth_vals[lam]]
        values = {_cycle_string(lam): str(chosen[lam]) for lam in lams}
        payload = {"k": k, "normalization": "finite", "method": method, "values": values}
        if mismatches:
            payload["mismatches"] = [_cycle_string(lam) for lam in mismatches]
        ok = not mismatches
    if cfg.fmt == "csv":
        rows = [("cycle_type", "value")] + [(key, values[key]) for key in values]
        return _csv_text(rows), ok
    return _json_text(payload), ok


def _run_oracle(cfg: RunConfig) -> tuple[str, bool]:
    g = cfg.genus[0]
    mu = cfg.extra["parts"]
    n, d = len(mu), sum(mu)
    cells = []
    if cfg.family == "monotone":
        r = 2 * g - 2 + n + d
        engine = hurwitz.monotone_H(g, mu).scale(prod(mu))
        oracle = weighted_counts(_perm_of(mu), r, transitive_only=True)[r]
        cells.append(("connected", engine, oracle))
        normalization = "times_mu"
    else:
        cells.append(("connected", hurwitz.dessin_D(g, mu), dessin_connected_count(mu, g)))
        cells.append(
            (
                "disconnected",
                hurwitz.disconnected_table("dessin", g, mu),
                dessin_disconnected_count(mu, g),
            )
        )
        normalization = "plain"
    reported = [
        {
            "kind": kind,
            "engine": poly_str(engine),
            "oracle": poly_str(oracle),
            "match": engine == oracle,
        }
        for kind, engine, oracle in cells
    ]
    all_match = all(cell["match"] for cell in reported)
    payload = {
        "family": cfg.family,
        "genus": g,
        "parts": list(mu),
        "normalization": normalization,
        "cells": reported,
        "all_match": all_match,
    }
    return _json_text(payload), all_match


def _run_roots_scan(cfg: RunConfig) -> tuple[str, bool]:
    report = conjecture_scan(
        cfg.family, list(cfg.genus), cfg.n_max, cfg.weight_max, cfg.extra["checks"]
    )
    return _json_text(report), bool(report["all_pass"])


def _run_roots_table(cfg: RunConfig) -> tuple[str, bool]:
    table = largeg_root_table(list(cfg.genus), cfg.extra["parts"], cfg.extra["digits"])
    if cfg.fmt == "csv":
        width = len(table.limits)
        rows = [("g",) + tuple(f"root_{i}" for i in range(1, width + 1))]
        rows += [(str(g),) + tuple(table.rows[g]) for g in sorted(table.rows)]
        rows.append(("limit",) + tuple(table.limits))
        return _csv_text(rows), True
    payload = {
        "parts": list(table.mu),
        "digits": table.digits,
        "limits": list(table.limits),
        "rows": {str(g): list(table.rows[g]) for g in sorted(table.rows)},
    }
    return _json_text(payload), True


def _run_tr(cfg: RunConfig) -> tuple[str, bool]:
    g, n = cfg.extra["gn"]
    if cfg.extra["raw"]:
        curve = specrec.build_curve(cfg.family)
        corr = specrec.tr_correlator(curve, g, n)
        names = [f"z{i}" for i in range(1, n + 1)]
        payload = {
            "curve": cfg.family,
            "genus": g,
            "points": n,
            "raw": specrec.mrat_str(corr.w, names),
        }
    else:
        orders = cfg.extra["orders"]
        table = specrec.correlator_table(cfg.family, g, n, orders)
        values = {",".join(map(str, key)): poly_str(table[key]) for key in sorted(table)}
        payload = {
            "curve": cfg.family,
            "genus": g,
            "points": n,
            "orders": orders,
            "variable": "t",
            "values": values,
        }
    return _json_text(payload), True


def _run_report(cfg: RunConfig) -> tuple[str, bool]:
    cells = []

    def polynomial_cells(label, reference, recursion, second):
        for g in sorted(reference):
            for mu in sorted(reference[g], key=lambda m: (sum(m), m)):
                ref = poly_parse(reference[g][mu])
                values = {
                    "recursion": recursion(g, mu),
                    "character-sum": second(g, mu),
                }
                cells.append(
                    {
                        "table": label,
                        "cell": f"g={g} parts={','.join(map(str, mu))}",
                        "methods": sorted(values),
                        "value": poly_str(ref),
                        "match": all(v == ref for v in values.values()),
                    }
                )

    polynomial_cells(
        "monotone",
        reference_data.MONOTONE_WEIGHTED,
        lambda g, mu: hurwitz.monotone_H(g, mu).scale(prod(mu)),
        lambda g, mu: hurwitz.connected_from_disconnected("monotone", g, mu).scale(prod(mu)),
    )
    polynomial_cells(
        "dessin",
        reference_data.DESSIN_WEIGHTED,
        lambda g, mu: hurwitz.dessin_D(g, mu),
        lambda g, mu: hurwitz.connected_from_disconnected("dessin", g, mu),
    )

    sw_ref = reference_data.weingarten_sw_reference()
    for lam in sorted(sw_ref, key=lambda l: (sum(l), l)):
        k = sum(lam)
        ref = sw_ref[lam]
        values = {"character": weingarten.sw_character(_perm_of(lam))}
        if k > 0:
            values["orthogonality"] = weingarten.sw_orthogonality_table(k).values[lam]
        cells.append(
            {
                "table": "weingarten",
                "cell": f"k={k} type={_cycle_string(lam)}",
                "methods": sorted(values),
                "value": str(ref),
                "match": all(v == ref for v in values.values()),
            }
        )

    matched = sum(cell["match"] for cell in cells)
    all_match = matched == len(cells)
    if cfg.fmt == "json":
        payload = {"checked": len(cells), "matched": matched, "all_match": all_match, "cells": cells}
        return _json_text(payload), all_match
    lines = [
        f"{cell['table']} {cell['cell']}: "
        + ("ok" if cell["match"] else f"MISMATCH (reference {cell['value']})")
        for cell in cells
    ]
    lines.append(f"{matched}/{len(cells)} cells match")
    return "\n".join(lines) + "\n", all_match


def _run_plot(cfg: RunConfig) -> tuple[str, bool]:
    table = largeg_root_table(list(cfg.genus), cfg.extra["parts"], cfg.extra["digits"])
    return render_roots_svg(table), True


_DISPATCH: dict[str, Callable[[RunConfig], tuple[str, bool]]] = {
    "hurwitz": _run_hurwitz,
    "dessins": _run_hurwitz,
    "weingarten": _run_weingarten,
    "oracle": _run_oracle,
    "roots-scan": _run_roots_scan,
    "roots-table": _run_roots_table,
    "tr": _run_tr,
    "report-appendix": _run_report,
    "plot": _run_plot,
}


# -- argument parsing --------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dhurwitz",
        description="Exact enumeration tables, cross-check reports, scans and plots.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True, metavar="COMMAND")

    def common(p: argparse.ArgumentParser, formats: tuple[str, ...], default: str) -> None:
        p.add_argument("--out", metavar="PATH", help="write the artifact here instead of stdout")
        p.add_argument("--format", choices=formats, default=default, help="artifact format")
        p.add_argument(
            "--threads", type=int, default=None, help=f"worker cap (default ${_ENV_THREADS} or 1)"
        )
        p.add_argument(
            "--config", metavar="PATH", help="JSON file of defaults keyed by long flag names"
        )

    for name, default_family in (("hurwitz", "monotone"), ("dessins", "dessin")):
        p = sub.add_parser(name, help=f"one enumeration polynomial ({default_family} default)")
        p.add_argument("--family", choices=("monotone", "dessin"), default=default_family)
        p.add_argument("--genus", required=True, help="genus, e.g. 1")
        p.add_argument("--parts", required=True, help="comma-separated parts, e.g. 4,2,1")
        p.add_argument(
            "--times-mu",
            dest="times_mu",
            action="store_true",
            help="multiply by the product of the parts (display normalization)",
        )
        common(p, ("json", "csv"), "json")

    p = sub.add_parser("weingarten", help="order-k unitary integration table")
    p.add_argument("--k", type=int, required=True, help="table order (number of matrix entries)")
    p.add_argument(
        "--method",
        choices=("character", "orthogonality", "both"),
        default="both",
        help="construction route; 'both' cross-checks the two",
    )
    p.add_argument(
        "--leading", action="store_true", help="print leading large-dimension behaviour instead"
    )
    common(p, ("json", "csv"), "json")

    p = sub.add_parser("oracle", help="replay one value against the brute-force enumerator")
    p.add_argument("--family", choices=("monotone", "dessin"), default="monotone")
    p.add_argument("--genus", required=True)
    p.add_argument("--parts", required=True)
    common(p, ("json",), "json")

    p = sub.add_parser("roots", help="root scans and large-genus root tables")
    rsub = p.add_subparsers(dest="roots_cmd", required=True, metavar="ACTION")
    ps = rsub.add_parser("scan", help="scan for real-rootedness / interlacing counterexamples")
    ps.add_argument("--family", choices=("monotone", "dessin"), default="monotone")
    ps.add_argument("--genus", default="0,1", help="genus list or range, e.g. 0,1 or 0..2")
    ps.add_argument("--n-max", dest="n_max", type=int, default=3)
    ps.add_argument("--weight-max", dest="weight_max", type=int, default=8)
    ps.add_argument(
        "--checks",
        default="real_rooted,interlacing",
        help="comma-separated subset of real_rooted,interlacing",
    )
    common(ps, ("json",), "json")
    pt = rsub.add_parser("table", help="decimal root locations for a genus range")
    pt.add_argument("--genus", required=True, help="genus list or range, e.g. 10..20")
    pt.add_argument("--parts", required=True)
    pt.add_argument("--digits", type=int, default=12)
    common(pt, ("json", "csv"), "json")

    p = sub.add_parser("tr", help="recursion correlators on a spectral curve")
    p.add_argument("--curve", choices=("monotone", "dessin"), required=True)
    p.add_argument("--gn", required=True, help="genus and point count, e.g. 1,2")
    p.add_argument("--orders", type=int, default=None, help="largest expansion order per point")
    p.add_argument(
        "--raw", action="store_true", help="print the closed-form correlator instead of a table"
    )
    common(p, ("json",), "json")

    p = sub.add_parser(
        "report-appendix",
        help="recompute every bundled reference cell by independent methods",
    )
    common(p, ("text", "json"), "text")

    p = sub.add_parser("plot", help="SVG scatter of a large-genus root table")
    p.add_argument("--genus", required=True, help="genus list or range, e.g. 10..20")
    p.add_argument("--parts", required=True)
    p.add_argument("--digits", type=int, default=12)
    common(p, ("svg",), "svg")

    return parser


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.out:
        Path(cfg.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        argv = _apply_config(argv)
        args = _build_parser().parse_args(argv)
        cfg = _build_config(args)
        text, ok = _DISPATCH[cfg.subcommand](cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:
        return int(exc.code or 0)
    except (ArithmeticError, ValueError, AssertionError) as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return 1
    _emit(cfg, text)
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
