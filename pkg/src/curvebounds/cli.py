"""Command-line surface: render the bound tables, classify (q, g, pi)
triples, enumerate maximal-curve genus spectra, and run the brute-force
verification harness over the curve fixtures.

Exit codes: 0 success, 1 invariant violation (a verify check failed),
2 usage or data error (bad arguments, catalog miss, non-square q,
precision exhaustion).
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources

from . import bounds as bnd
from . import spectrum as spec
from .curves import CountProfile, count_points, deg2_closed_points, load_fixtures, x_coordinates
from .errors import (
    BelowValidityThreshold,
    CatalogMiss,
    CatalogParseError,
    CurveBoundsError,
    NotSquare,
    PrecisionExhausted,
)
from .exactnum import DEFAULT_MAX_BITS
from .feasibility import deg2_from_x, in_region
from .gf import prime_power

TABLE_IDS = ("first-order", "second-order", "third-order", "best", "lower", "weil-orders")


class UsageError(CurveBoundsError):
    """Bad command-line input; reported on stderr with exit code 2."""


def parse_q_values(text: str) -> list[int]:
    """Comma list of prime powers, each a plain integer or 'p^e'."""
    out = []
    for piece in text.split(","):
        piece = piece.strip()
        if not piece:
            continue
        if "^" in piece:
            base, _, exp = piece.partition("^")
            try:
                q = int(base) ** int(exp)
            except ValueError:
                raise UsageError(f"bad prime power syntax {piece!r}") from None
        else:
            try:
                q = int(piece)
            except ValueError:
                raise UsageError(f"bad q value {piece!r}") from None
        if prime_power(q) is None:
            raise UsageError(f"q = {q} is not a prime power")
        out.append(q)
    if not out:
        raise UsageError("empty q list")
    return out


def parse_g_values(text: str) -> list[int]:
    """Comma list of genus values and/or ranges 'a..b'."""
    out = []
    for piece in text.split(","):
        piece = piece.strip()
        if not piece:
            continue
        if ".." in piece:
            a, _, b = piece.partition("..")
            try:
                lo, hi = int(a), int(b)
            except ValueError:
                raise UsageError(f"bad genus range {piece!r}") from None
            if hi < lo:
                raise UsageError(f"empty genus range {piece!r}")
            out.extend(range(lo, hi + 1))
        else:
            try:
                out.append(int(piece))
            except ValueError:
                raise UsageError(f"bad genus value {piece!r}") from None
    if not out:
        raise UsageError("empty genus list")
    return out


def _load_catalog(path):
    if path is None:
        return spec.default_catalog()
    return spec.catalog_load(path)


def _table_cell(table_id, q, g, catalog, max_bits):
    """Integer cell value, or None for an empty cell (bound not valid there)."""
    if table_id == "first-order":
        return bnd.deg2_upper_first(q, g).truncated.value
    if table_id == "second-order":
        return bnd.deg2_upper_second_optimal(q, g, catalog).truncated.value
    if table_id == "third-order":
        try:
            return bnd.deg2_upper_third_optimal(q, g, catalog, max_bits=max_bits).truncated.value
        except BelowValidityThreshold:
            return None
    if table_id == "best":
        return bnd.deg2_upper_best(q, g, catalog, max_bits=max_bits).truncated.value
    if table_id == "lower":
        result = bnd.deg2_lower(q, g)
        return result.truncated.value if result.positive else None
    raise AssertionError(table_id)


def _weil_cell(order, q, g, max_bits):
    if order == "weil":
        return bnd.weil_upper(q, g).truncated.value
    if order == "ihara":
        result = bnd.ihara_upper(q, g, max_bits=max_bits)
        return result.truncated.value if result.valid else None
    result = bnd.weil_third_upper(q, g, max_bits=max_bits)
    return result.truncated.value if result.valid else None


def _build_table(table_id, q_values, g_values, catalog, max_bits):
    """Rows of (label fields, cells); cells are ints or None."""
    rows = []
    if table_id == "weil-orders":
        for q in q_values:
            for order in ("weil", "ihara", "weil3"):
                rows.append(((str(q), order), [_weil_cell(order, q, g, max_bits) for g in g_values]))
    else:
        for q in q_values:
            rows.append(((str(q),), [_table_cell(table_id, q, g, catalog, max_bits) for g in g_values]))
    return rows


def _render_tsv(header, rows, out):
    out.write("\t".join(header) + "\n")
    for labels, cells in rows:
        text = list(labels) + ["" if c is None else str(c) for c in cells]
        out.write("\t".join(text) + "\n")


def _render_text(header, rows, out):
    table = [list(header)] + [
        list(labels) + ["" if c is None else str(c) for c in cells] for labels, cells in rows
    ]
    widths = [max(len(r[i]) for r in table) for i in range(len(header))]
    for r in table:
        out.write("  ".join(cell.rjust(w) for cell, w in zip(r, widths)).rstrip() + "\n")


def cmd_table(args) -> int:
    catalog = _load_catalog(args.catalog)
    q_values = parse_q_values(args.q)
    g_values = parse_g_values(args.g)
    rows = _build_table(args.table_id, q_values, g_values, catalog, args.precision_bits)
    label_header = ["q", "order"] if args.table_id == "weil-orders" else ["q"]
    header = label_header + [str(g) for g in g_values]
    if args.format == "json":
        payload = {
            "table": args.table_id,
            "g": g_values,
            "rows": [
                dict(zip(label_header, labels)) | {"cells": list(cells)}
                for labels, cells in rows
            ],
        }
        print(json.dumps(payload, sort_keys=True, indent=2))
    elif args.format == "tsv":
        _render_tsv(header, rows, sys.stdout)
    else:
        _render_text(header, rows, sys.stdout)
    return 0


def _classify_payload(q, g, pi, catalog):
    delta = spec.delta_optimal_exists(q, g, pi, catalog)
    points = spec.max_rational_points(q, g, pi, catalog)
    payload = {
        "q": q,
        "g": g,
        "pi": pi,
        "delta_optimal": {"answer": delta.answer, "reason": delta.reason},
        "max_points": None if points is None else {"lo": points.lo, "hi": points.hi},
        "maximal": None,
    }
    not_square = False
    try:
        verdict = spec.classify_maximal(q, g, pi, catalog)
        payload["maximal"] = {
            "status": verdict.status,
            "reason": verdict.reason,
            "pi_max": verdict.pi_max,
        }
    except NotSquare:
        not_square = True
    return payload, not_square


def cmd_classify(args) -> int:
    catalog = _load_catalog(args.catalog)
    if args.pi < args.g:
        raise UsageError(f"need g <= pi, got g={args.g}, pi={args.pi}")
    payload, not_square = _classify_payload(args.q, args.g, args.pi, catalog)
    if args.json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(f"q={args.q} g={args.g} pi={args.pi}")
        m = payload["maximal"]
        if m is None:
            print("maximal: not applicable (q is not a perfect square)")
        else:
            print(f"maximal: {m['status']} ({m['reason']}), pi_max={m['pi_max']}")
        d = payload["delta_optimal"]
        print(f"delta-optimal: {d['answer']} ({d['reason']})")
        p = payload["max_points"]
        if p is None:
            print("max-points: unknown (no catalog data)")
        elif p["lo"] == p["hi"]:
            print(f"max-points: exact {p['lo']}")
        else:
            print(f"max-points: range [{p['lo']}, {p['hi']}]")
    return 2 if not_square else 0


def _verify_one(fixture, catalog, report) -> str | None:
    """Run every applicable invariant for one fixture; returns the name of
    the first failing invariant, or None."""
    q, g, curve, label = fixture["q"], fixture["genus"], fixture["curve"], fixture["label"]
    counts = tuple(count_points(curve, i) for i in (1, 2, 3))
    if g == 0:
        ok = all(n == q**i + 1 for i, n in enumerate(counts, start=1))
        report(f"[{label}] q={q} g=0 counts={counts} rational-counts={'ok' if ok else 'FAIL'}")
        return None if ok else "genus-0 counts equal q^i + 1"
    try:
        profile = CountProfile(q, g, counts)
    except (ValueError, CurveBoundsError) as exc:
        report(f"[{label}] q={q} g={g} counts={counts} profile FAIL: {exc}")
        return "count profile inside the Weil window"
    b2 = deg2_closed_points(counts[0], counts[1])
    xs = x_coordinates(profile)
    verdict = in_region(q, g, xs)
    if not verdict.member:
        report(f"[{label}] region FAIL: {verdict.failing_constraints}")
        return "x-coordinates inside the feasibility region"
    if deg2_from_x(q, g, xs[0], xs[1]) != b2:
        return "deg2_from_x equals the counted value"
    n1 = counts[0]
    checks = [
        ("first-order upper bound", b2 <= bnd.deg2_upper_first(q, g).truncated.value),
        ("second-order upper bound", b2 <= bnd.deg2_upper_second(q, g, n1).truncated.value),
        ("degree-2 lower bound", b2 >= bnd.deg2_lower(q, g).truncated.value),
        ("first-order count bound", n1 <= bnd.weil_upper(q, g).truncated.value),
    ]
    if bnd.third_order_genus(q) <= g:
        checks.append(
            ("third-order upper bound", b2 <= bnd.deg2_upper_third(q, g, n1).truncated.value)
        )
        checks.append(
            ("third-order count bound", n1 <= bnd.weil_third_upper(q, g).truncated.value)
        )
    if bnd.ihara_genus(q) <= g:
        checks.append(("second-order count bound", n1 <= bnd.ihara_upper(q, g).truncated.value))
    entry = catalog.lookup(q, g)
    if entry is not None and entry.exact and entry.lo == n1:
        checks.append(
            ("optimal-curve upper bound", b2 <= bnd.deg2_upper_best(q, g, catalog).truncated.value)
        )
    for name, ok in checks:
        if not ok:
            report(f"[{label}] bound FAIL: {name}")
            return name
    report(
        f"[{label}] q={q} g={g} counts={counts} B2={b2} region=ok bounds=ok"
    )
    return None


def cmd_verify(args) -> int:
    catalog = _load_catalog(args.catalog)
    if args.fixtures is None:
        ref = resources.files("curvebounds").joinpath("data/fixtures.tsv")
        with resources.as_file(ref) as path:
            fixtures = load_fixtures(path)
    else:
        fixtures = load_fixtures(args.fixtures)
    for fixture in fixtures:
        failed = _verify_one(fixture, catalog, print)
        if failed is not None:
            print(f"FAIL [{fixture['label']}]: {failed}", file=sys.stderr)
            return 1
    print(f"ok: {len(fixtures)} fixture curves verified")
    return 0


def cmd_spectrum(args) -> int:
    catalog = _load_catalog(args.catalog)
    rows = spec.enumerate_spectrum(args.q, catalog)
    counts = spec.spectrum_counts(rows)
    lines = ["g\tpi\tstatus\treason\tpi_max"]
    for g, pi, verdict in rows:
        lines.append(f"{g}\t{pi}\t{verdict.status}\t{verdict.reason}\t{verdict.pi_max}")
    lines.append(
        "# counts\tInSpectrum={InSpectrum}\tExcluded={Excluded}\tUnknown={Unknown}".format(**counts)
    )
    text = "\n".join(lines) + "\n"
    if args.out is None:
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    if args.plot is not None:
        g1 = spec.hermitian_genus(args.q)
        with open(args.plot, "w", encoding="utf-8") as fh:
            fh.write(f"0 0 Vertex-O\n0 {args.q * (args.q - 1) // 2} Vertex-A\n{g1} {g1} Vertex-B\n")
            for g, pi, verdict in rows:
                fh.write(f"{g} {pi} {verdict.status}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="curvebounds",
        description="Exact bounds, feasibility checks and genus spectra for curves over finite fields.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_table = sub.add_parser("table", help="render a bound table")
    p_table.add_argument("table_id", choices=TABLE_IDS)
    p_table.add_argument("--q", required=True, help="comma list of prime powers, e.g. 2,3,2^2")
    p_table.add_argument("--g", required=True, help="genus list/range, e.g. 2..6 or 1,3..5")
    p_table.add_argument("--catalog", default=None, help="N_q(g) TSV (default: packaged data)")
    p_table.add_argument("--format", choices=("text", "tsv", "json"), default="text")
    p_table.add_argument("--precision-bits", type=int, default=DEFAULT_MAX_BITS)
    p_table.set_defaults(func=cmd_table)

    p_cls = sub.add_parser("classify", help="classify a (q, g, pi) triple")
    p_cls.add_argument("--q", type=int, required=True)
    p_cls.add_argument("--g", type=int, required=True)
    p_cls.add_argument("--pi", type=int, required=True)
    p_cls.add_argument("--catalog", default=None)
    p_cls.add_argument("--json", action="store_true")
    p_cls.set_defaults(func=cmd_classify)

    p_ver = sub.add_parser("verify", help="brute-force verification over the curve fixtures")
    p_ver.add_argument("--fixtures", default=None, help="fixture TSV (default: packaged data)")
    p_ver.add_argument("--catalog", default=None)
    p_ver.set_defaults(func=cmd_verify)

    p_spec = sub.add_parser("spectrum", help="enumerate the maximal-curve genus spectrum")
    p_spec.add_argument("--q", type=int, required=True, help="square prime power")
    p_spec.add_argument("--catalog", default=None)
    p_spec.add_argument("--out", default=None, help="write the TSV here instead of stdout")
    p_spec.add_argument("--plot", default=None, help="also write a gnuplot-compatible points file")
    p_spec.set_defaults(func=cmd_spectrum)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (
        UsageError,
        CatalogMiss,
        CatalogParseError,
        NotSquare,
        PrecisionExhausted,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CurveBoundsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
