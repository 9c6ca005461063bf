"""Command-line interface: ``povmrange <command> [options]``.

JSON goes to stdout (12 significant digits), CSV for ``sample`` and
``plot-data``. Exit codes: 0 success, 1 domain error (or an incompatible
result under ``--strict``), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

import numpy as np

from . import catalog, io, oracle, witness
from .errors import PovmRangeError
from .povm import Povm, completeness_residual, depolarize, positivity_margins
from .range_model import (
    DEFAULT_TOL,
    RangeModel,
    Verdict,
    boundary_points,
    build_range_model,
    geometry,
    membership,
)


class _Usage(Exception):
    pass


def _floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _ints(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _grid(text: str) -> tuple[int, int]:
    try:
        a, b = text.lower().split("x")
        return int(a), int(b)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a grid like 64x32, got {text!r}")


def _load(args) -> Povm:
    p = io.load_povm(args.povm, tol=args.validation_tol)
    lam = getattr(args, "lam", None)
    return depolarize(p, lam) if lam is not None else p


def _verdict_doc(v: Verdict) -> dict:
    doc = {
        "status": v.status.value,
        "compatible": v.compatible,
        "equality_residual": v.equality_residual,
        "quad_form": v.quad_form,
    }
    if v.witness is not None:
        doc["witness"] = v.witness
        doc["witness_gap"] = v.witness_gap
    return doc


def _geometry_doc(m: RangeModel) -> dict:
    g = geometry(m)
    return {
        "degeneracy": g.degeneracy.value,
        "center": g.center,
        "semi_axes": [{"length": a.length, "direction": a.direction} for a in g.semi_axes],
        "coordinate_half_widths": g.coordinate_half_widths,
        "affine_constraints": [{"normal": c.normal, "offset": c.offset} for c in g.affine_constraints],
    }


def cmd_validate(args) -> tuple[dict, int]:
    try:
        p = io.load_povm(args.povm, tol=args.validation_tol)
    except PovmRangeError as exc:
        return {"valid": False, "error": str(exc), "error_type": type(exc).__name__}, 1
    return {
        "valid": True,
        "label": p.label or "",
        "outcomes": p.n,
        "completeness_residual": completeness_residual(p.effects),
        "positivity_margins": positivity_margins(p.effects),
    }, 0


def cmd_analyze(args) -> tuple[dict, int]:
    p = _load(args)
    m = build_range_model(p)
    return {
        "label": p.label or "",
        "outcomes": p.n,
        "t": m.t,
        "Q": m.Q,
        "rank": m.rank_Q,
        "eigenvalues": m.eig.eigenvalues,
        "geometry": _geometry_doc(m),
    }, 0


def cmd_test(args) -> tuple[dict, int]:
    p = _load(args)
    m = build_range_model(p)
    if args.q is not None:
        verdicts = [membership(m, args.q, args.tol)]
    else:
        verdicts = witness.test_correlation(m, io.load_rows(args.table), args.tol)
    compatible = witness.is_compatible(verdicts)
    doc = {"compatible": compatible, "verdicts": [_verdict_doc(v) for v in verdicts]}
    return doc, 1 if args.strict and not compatible else 0


def cmd_witness(args) -> tuple[dict, int]:
    p = _load(args)
    w = io.load_rows(args.w, keys=("w", "rows"))
    doc = {
        "threshold": witness.witness_threshold(p, w),
        "row_thresholds": witness.row_thresholds(p, w),
    }
    if args.table is not None:
        table = witness.CorrelationTable(io.load_rows(args.table))
        gap = witness.compatibility_gap(p, table, w)
        doc["gap"] = gap
        doc["violated"] = gap > 0.0
    return doc, 0


def cmd_catalog(args) -> tuple[dict, int]:
    lam = 1.0 if args.lam is None else args.lam
    noisy = catalog.make_noisy(args.kind, lam)
    document = io.povm_to_document(noisy.povm)
    if args.emit is not None:
        Path(args.emit).write_text(json.dumps(document, indent=2) + "\n", encoding="utf-8")
    if args.q is None:
        if args.emit is not None:
            return {"kind": noisy.kind.value, "lambda": lam, "emitted": str(args.emit)}, 0
        return document, 0
    closed = catalog.closed_form_membership(noisy.kind, lam, args.q, args.tol)
    verdict = membership(build_range_model(noisy.povm), args.q, args.tol)
    doc = {
        "kind": noisy.kind.value,
        "lambda": lam,
        "closed_form": closed.value,
        "theorem": _verdict_doc(verdict),
        "agree": closed is verdict.status.region,
    }
    return doc, 1 if args.strict and not verdict.compatible else 0


def cmd_sample(args) -> tuple[str, int]:
    p = _load(args)
    qs = oracle.sample_distributions(p, args.count, args.mode, args.seed)
    header = [f"q{y}" for y in range(p.n)]
    return io.csv_text(header, qs.tolist()), 0


def _ternary(qs: np.ndarray) -> np.ndarray:
    x = qs[:, 1] + 0.5 * qs[:, 2]
    y = (np.sqrt(3.0) / 2.0) * qs[:, 2]
    return np.stack([x, y], axis=1)


def cmd_plot_data(args) -> tuple[str, int]:
    p = _load(args)
    m = build_range_model(p)
    pts = boundary_points(m, ellipse_points=args.ellipse_points, sphere_grid=args.sphere_grid)
    kinds = ["boundary"] * len(pts) + ["center"]
    pts = np.vstack([pts, m.t[None, :]])
    header = ["kind"] + [f"q{y}" for y in range(p.n)]
    if args.projection == "simplex":
        if p.n != 3:
            raise PovmRangeError("simplex projection needs a 3-outcome POVM; use --projection axes")
        extra = _ternary(pts)
        header += ["x", "y"]
    else:
        axes = args.axes if args.axes is not None else list(range(min(3, p.n)))
        if any(not 0 <= a < p.n for a in axes):
            raise _Usage(f"--axes entries must lie in 0..{p.n - 1}")
        extra = pts[:, axes]
        header += ["x", "y", "z"][: len(axes)]
    rows = [[k, *q, *e] for k, q, e in zip(kinds, pts.tolist(), extra.tolist())]
    return io.csv_text(header, rows), 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="indented, human-readable JSON")
    common.add_argument(
        "--validation-tol", type=float, default=1e-9, help="POVM completeness/positivity tolerance"
    )

    parser = argparse.ArgumentParser(
        prog="povmrange", description="Ranges, membership tests and witnesses for qubit POVMs."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def povm_cmd(name: str, help: str, with_lambda: bool = True):
        sp = sub.add_parser(name, parents=[common], help=help)
        sp.add_argument("--povm", required=True, help="POVM JSON file")
        if with_lambda:
            sp.add_argument("--lambda", dest="lam", type=float, help="apply depolarizing noise first")
        return sp

    sp = povm_cmd("validate", "check a POVM document", with_lambda=False)
    sp.set_defaults(func=cmd_validate)

    sp = povm_cmd("analyze", "t, Q, rank and range geometry")
    sp.set_defaults(func=cmd_analyze)

    sp = povm_cmd("test", "membership of a distribution or correlation table")
    group = sp.add_mutually_exclusive_group(required=True)
    group.add_argument("--q", type=_floats, help="comma-separated distribution")
    group.add_argument("--table", help='table JSON {"rows": [[...], ...]}')
    sp.add_argument("--tol", type=float, default=DEFAULT_TOL)
    sp.add_argument("--strict", action="store_true", help="exit 1 when incompatible")
    sp.set_defaults(func=cmd_test)

    sp = povm_cmd("witness", "witness threshold and gap")
    sp.add_argument("--w", required=True, help='witness JSON {"w": [[...], ...]}')
    sp.add_argument("--table", help="table JSON for the gap")
    sp.set_defaults(func=cmd_witness)

    sp = sub.add_parser("catalog", parents=[common], help="named SIC and MUB measurements")
    sp.add_argument("--kind", required=True, choices=[k.value for k in catalog.CatalogKind])
    sp.add_argument("--lambda", dest="lam", type=float)
    sp.add_argument("--emit", help="write the POVM JSON to this file")
    sp.add_argument("--q", type=_floats, help="also test this distribution both ways")
    sp.add_argument("--tol", type=float, default=DEFAULT_TOL)
    sp.add_argument("--strict", action="store_true")
    sp.set_defaults(func=cmd_catalog)

    sp = povm_cmd("sample", "CSV of distributions produced by sampled states")
    sp.add_argument("--count", type=int, required=True)
    sp.add_argument("--mode", choices=[m.value for m in oracle.SamplingMode], default="pure")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_sample)

    sp = povm_cmd("plot-data", "CSV point cloud of the range boundary")
    sp.add_argument("--projection", choices=["simplex", "axes"], default="axes")
    sp.add_argument("--axes", type=_ints, help="outcome indices for --projection axes, e.g. 0,1,2")
    sp.add_argument("--ellipse-points", type=int, default=360)
    sp.add_argument("--sphere-grid", type=_grid, default=(64, 32), help="UV grid, e.g. 64x32")
    sp.set_defaults(func=cmd_plot_data)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "sample" and args.count < 1:
        parser.print_usage(sys.stderr)
        print("povmrange: error: --count must be positive", file=sys.stderr)
        return 2
    try:
        result, code = args.func(args)
    except _Usage as exc:
        parser.print_usage(sys.stderr)
        print(f"povmrange: error: {exc}", file=sys.stderr)
        return 2
    except PovmRangeError as exc:
        result, code = {"error": str(exc), "error_type": type(exc).__name__}, 1
    if isinstance(result, str):
        sys.stdout.write(result)
    else:
        sys.stdout.write(io.dumps(result, pretty=args.pretty) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
