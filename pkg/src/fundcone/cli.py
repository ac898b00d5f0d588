"""Command-line frontend: analyze, redundancy, enumerate, cyclic-scan, bounds.

Matrix files are plain text: a header line "m n" followed by m lines of n
characters from {0,1}; lines starting with '#' are comments.  Reports are
JSON (rationals as "p/q" strings, floats printed to 9 significant digits)
or CSV for scans.  Exit codes: 0 success, 1 input error, 2 resource
overflow, 3 undetermined result.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from fractions import Fraction

from . import bounds as bounds_mod
from . import codes as codes_mod
from . import cyclic as cyclic_mod
from . import redundancy as red_mod
from .algebra import BitMatrix
from .cone import RayOverflowError, build, extreme_rays
from .pseudoweight import Channel, min_pseudoweights, spectrum_gap

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_OVERFLOW = 2
EXIT_UNDETERMINED = 3


class MatrixFileError(ValueError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def parse_matrix(text: str) -> BitMatrix:
    """Parse the matrix file format; errors carry 1-based line numbers."""
    rows: list[str] = []
    header: tuple[int, int] | None = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if header is None:
            parts = line.split()
            if len(parts) != 2:
                raise MatrixFileError(line_no, f"expected header 'm n', got {line!r}")
            try:
                m, n = int(parts[0]), int(parts[1])
            except ValueError:
                raise MatrixFileError(line_no, f"non-integer header {line!r}") from None
            if m < 1 or n < 1:
                raise MatrixFileError(line_no, "matrix dimensions must be positive")
            header = (m, n)
            continue
        if set(line) - {"0", "1"}:
            raise MatrixFileError(line_no, f"row has characters outside 0/1: {line!r}")
        if len(line) != header[1]:
            raise MatrixFileError(
                line_no, f"row length {len(line)} != declared {header[1]}"
            )
        rows.append(line)
        if len(rows) > header[0]:
            raise MatrixFileError(line_no, "more rows than declared")
    if header is None:
        raise MatrixFileError(1, "empty matrix file")
    if len(rows) != header[0]:
        raise MatrixFileError(0, f"expected {header[0]} rows, got {len(rows)}")
    return BitMatrix.from_strings(rows)


def emit_matrix(M: BitMatrix) -> str:
    m, n = M.shape
    return "\n".join([f"{m} {n}"] + M.to_strings()) + "\n"


def _frac(x) -> str:
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _float9(x: float) -> float:
    return float(f"{x:.9g}")


def _load_matrix(path: str) -> BitMatrix:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_matrix(fh.read())


def _write_out(payload: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def _error_json(kind: str, message: str, **extra) -> str:
    return json.dumps(
        {"format": "error/1", "error": kind, "message": message, **extra},
        sort_keys=True,
    ) + "\n"


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_analyze(args) -> int:
    try:
        H = _load_matrix(args.matrix)
    except (OSError, MatrixFileError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    K = build(H)
    try:
        rays = extreme_rays(K, max_rays=args.max_rays)
    except RayOverflowError as exc:
        _write_out(
            _error_json("ray-overflow", str(exc), count=exc.count, cap=exc.cap),
            args.out,
        )
        return EXIT_OVERFLOW
    report = min_pseudoweights(H, rays=rays)
    payload = {
        "format": "analysis/1",
        "rows": H.shape[0],
        "cols": H.shape[1],
        "inequalities": len(K.ineqs),
        "ray_count": len(rays),
        "minima": {ch.value: _frac(v) for ch, v in report.minima.items()},
        "witnesses": {
            ch.value: list(r.coords) for ch, r in report.witnesses.items()
        },
    }
    if args.gap:
        g = spectrum_gap(H, Channel(args.gap), rays=rays)
        payload["spectrum_gap"] = {args.gap: "inf" if g == float("inf") else _frac(g)}
    if args.bounds:
        entry: dict = {}
        try:
            entry["eigenvalue"] = _float9(bounds_mod.eigenvalue_bound(H))
        except bounds_mod.BoundInapplicable as exc:
            entry["eigenvalue"] = f"n/a: {exc}"
        design = bounds_mod.detect_design(H)
        if design is None:
            entry["design"] = "n/a: not a partial design"
        else:
            entry["design"] = _frac(bounds_mod.design_lower_bound(design))
        payload["bounds"] = entry
    if args.rays:
        payload["rays"] = [[str(c) for c in r.coords] for r in rays]
    _write_out(json.dumps(payload, sort_keys=True) + "\n", args.out)
    return EXIT_OK


def cmd_redundancy(args) -> int:
    if args.batch:
        return _cmd_redundancy_batch(args)
    if args.code is None:
        sys.stderr.write("error: need a matrix file or --batch N K\n")
        return EXIT_INPUT
    try:
        M = _load_matrix(args.code)
    except (OSError, MatrixFileError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    if args.generator:
        C = codes_mod.LinearCode(M.cols, M.rows)
    else:
        C = codes_mod.from_parity_check(M)
    budget = red_mod.SearchBudget(
        level_cap=args.budget, sample_tries=args.samples, seed=args.seed
    )
    channel = Channel(args.channel)
    res = red_mod.pseudoredundancy(C, channel, budget)
    if args.classify:
        res = red_mod.classify(C, channel, budget, result=res)
    if args.max_rho is not None and res.rho is not None and res.rho > args.max_rho:
        res.unknown = True  # caller-imposed ceiling
    payload = {
        "format": "redundancy/1",
        "n": C.n,
        "k": C.k,
        "d": C.distance(),
        "channel": channel.value,
        "rho": res.value_str(),
        "examined": {str(k): v for k, v in sorted(res.examined.items())},
    }
    if res.class_label is not None:
        payload["class"] = res.class_label
    if res.class_note:
        payload["class_note"] = res.class_note
    if res.witness is not None:
        payload["witness"] = res.witness.to_strings()
    _write_out(json.dumps(payload, sort_keys=True) + "\n", args.out)
    return EXIT_UNDETERMINED if res.unknown else EXIT_OK


def _cmd_redundancy_batch(args) -> int:
    n, k = args.batch
    if n > 9:
        sys.stderr.write("error: batch reports supported for n <= 9\n")
        return EXIT_INPUT
    budget = red_mod.SearchBudget(
        level_cap=args.budget, sample_tries=args.samples, seed=args.seed
    )
    reports = red_mod.batch_report(
        n, k, [Channel(args.channel)], budget, with_classes=args.classify
    )
    lines = [
        json.dumps(red_mod.report_json_object(rep), sort_keys=True)
        for rep in reports
    ]
    _write_out("\n".join(lines) + ("\n" if lines else ""), args.out)
    undetermined = any(
        res.unknown for rep in reports for res in rep.results.values()
    )
    return EXIT_UNDETERMINED if undetermined else EXIT_OK


def cmd_enumerate(args) -> int:
    if args.n > 9:
        sys.stderr.write("error: enumeration supported for n <= 9\n")
        return EXIT_INPUT
    ks = [args.k] if args.k is not None else list(range(1, args.n + 1))
    lines = []
    counts = {}
    for k in ks:
        found = codes_mod.enumerate_codes(args.n, k)
        counts[k] = len(found)
        for C in found:
            lines.append(
                json.dumps(
                    {
                        "format": "code/1",
                        "n": C.n,
                        "k": C.k,
                        "d": C.distance(),
                        "generator": C.generator_matrix().to_strings(),
                    },
                    sort_keys=True,
                )
            )
    summary = json.dumps(
        {"format": "enumeration-summary/1", "n": args.n, "counts": counts},
        sort_keys=True,
    )
    _write_out("\n".join(lines + [summary]) + "\n", args.out)
    return EXIT_OK


def cmd_cyclic_scan(args) -> int:
    if args.n_max > 250:
        sys.stderr.write("error: scan limited to n <= 250\n")
        return EXIT_INPUT
    known = {} if args.no_known_d else dict(cyclic_mod.KNOWN_DISTANCES)
    records = cyclic_mod.scan(
        args.n_max,
        known_d=known,
        compute_d="all" if args.full_d else "auto",
        workers=args.workers,
    )
    if args.only_sharp:
        records = [r for r in records if r.sharp]
    writer_rows = [["n", "h", "k", "w", "connected", "mu2", "bound", "d", "sharp"]]
    for r in records:
        writer_rows.append(
            [
                r.n,
                format(r.h, "x"),
                r.k,
                r.w,
                int(r.connected),
                "" if r.mu2 is None else f"{r.mu2:.9g}",
                "" if r.bound is None else f"{r.bound:.9g}",
                "" if r.d is None else r.d,
                int(r.sharp),
            ]
        )
    import io

    sio = io.StringIO()
    csv.writer(sio).writerows(writer_rows)
    _write_out(sio.getvalue(), args.out)
    return EXIT_OK


def cmd_bounds(args) -> int:
    payload: dict = {"format": "bounds/1"}
    if args.n is not None and args.dual_d is not None:
        payload["awgnc_dual"] = _frac(bounds_mod.awgnc_dual_bound(args.n, args.dual_d))
        payload["bsc_dual"] = bounds_mod.bsc_dual_bound(args.n, args.dual_d)
        payload["provenance"] = "dual-distance upper bounds"
    if args.bibd:
        n, wr, lam = args.bibd
        try:
            payload["bibd"] = _frac(bounds_mod.bibd_closed_form(n, wr, lam))
        except ValueError as exc:
            sys.stderr.write(f"error: {exc}\n")
            return EXIT_INPUT
    if args.matrix:
        try:
            H = _load_matrix(args.matrix)
        except (OSError, MatrixFileError) as exc:
            sys.stderr.write(f"error: {exc}\n")
            return EXIT_INPUT
        if args.eigen:
            try:
                payload["eigenvalue"] = _float9(bounds_mod.eigenvalue_bound(H))
            except bounds_mod.BoundInapplicable as exc:
                payload["eigenvalue"] = f"n/a: {exc}"
        design = bounds_mod.detect_design(H)
        if design is None:
            payload["design"] = "n/a: not a partial design"
        else:
            payload["design"] = _frac(bounds_mod.design_lower_bound(design))
            payload["design_params"] = {
                "n": design.n,
                "m": design.m,
                "w_c": design.w_c,
                "lambda": design.lam,
                "w_r": design.w_r,
                "kind": design.kind,
            }
    if len(payload) == 1:
        sys.stderr.write("error: nothing to compute (see --help)\n")
        return EXIT_INPUT
    _write_out(json.dumps(payload, sort_keys=True) + "\n", args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------


def _default_workers() -> int:
    env = os.environ.get("FUNDCONE_WORKERS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="fundcone",
        description="Exact fundamental-cone and pseudoweight toolkit",
    )
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="cone and pseudoweight report for a matrix")
    a.add_argument("matrix", help="matrix file (header 'm n', then 0/1 rows)")
    a.add_argument("--gap", choices=[c.value for c in Channel], help="also report the spectrum gap")
    a.add_argument("--bounds", action="store_true", help="attach eigenvalue/design bounds")
    a.add_argument("--rays", action="store_true", help="include the full ray list")
    a.add_argument("--max-rays", type=int, default=200_000)
    a.add_argument("--out")
    a.set_defaults(func=cmd_analyze)

    r = sub.add_parser("redundancy", help="pseudocodeword redundancy of a code")
    r.add_argument("code", nargs="?", default=None, help="matrix file defining the code")
    r.add_argument("--batch", type=int, nargs=2, metavar=("N", "K"),
                   help="JSON-lines reports for every [N,K] code instead of one file")
    r.add_argument("--generator", action="store_true", help="treat the file as a generator matrix")
    r.add_argument("--channel", required=True, choices=[c.value for c in Channel])
    r.add_argument("--max-rho", type=int, default=None)
    r.add_argument("--budget", type=int, default=red_mod.SearchBudget.level_cap)
    r.add_argument("--samples", type=int, default=red_mod.SearchBudget.sample_tries)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--classify", action="store_true")
    r.add_argument("--out")
    r.set_defaults(func=cmd_redundancy)

    e = sub.add_parser("enumerate", help="codes with d>=3 and no zero coordinates, up to equivalence")
    e.add_argument("n", type=int)
    e.add_argument("k", type=int, nargs="?", default=None)
    e.add_argument("--out")
    e.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("cyclic-scan", help="eigenvalue-bound scan over cyclic codes")
    s.add_argument("--n-max", type=int, required=True)
    s.add_argument("--only-sharp", action="store_true")
    s.add_argument("--workers", type=int, default=_default_workers())
    s.add_argument("--no-known-d", action="store_true", help="drop table-sourced distances")
    s.add_argument("--full-d", action="store_true", help="enumerate d wherever the threshold allows")
    s.add_argument("--out")
    s.set_defaults(func=cmd_cyclic_scan)

    b = sub.add_parser("bounds", help="closed-form bound calculators")
    b.add_argument("--n", type=int)
    b.add_argument("--dual-d", type=int)
    b.add_argument("--bibd", type=int, nargs=3, metavar=("N", "WR", "LAMBDA"))
    b.add_argument("--matrix")
    b.add_argument("--eigen", action="store_true")
    b.add_argument("--out")
    b.set_defaults(func=cmd_bounds)

    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
