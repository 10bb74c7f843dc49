"""Command-line surface: homology, persistence, extended persistence,
Rips, distances, Betti curves, bundled fixtures.

Exit codes: 0 success, 1 usage error, 2 input parse/validation failure.
Diagnostics go to stderr, data to stdout.
"""
from __future__ import annotations

import argparse
import math
import sys
from importlib import resources
from pathlib import Path
from typing import Optional, Sequence

from . import complexes, distances, extended, homology, persistence, rips, svg
from .complexes import ComplexError, FilteredComplex, format_value


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 1 on usage errors, not argparse's 2
        raise UsageError(message)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise ComplexError(f"cannot read {path}: {e}") from None


def _load_complex(path: str, fmt: str,
                  vertex_values: Optional[str] = None) -> FilteredComplex:
    text = _read(path)
    if fmt == "spx":
        vv = complexes.parse_vertex_values(_read(vertex_values)) if vertex_values else None
        return complexes.parse_spx(text, vv)
    if vertex_values is not None:
        raise UsageError("--vertex-values requires --format spx")
    return complexes.parse_fcx(text)


def _emit_barcode(b: persistence.Barcode, svg_path: Optional[str]) -> None:
    sys.stdout.write(b.to_bcx())
    if svg_path:
        Path(svg_path).write_text(svg.barcode_svg(b))


def _parse_grid(spec: str) -> list[float]:
    try:
        start, stop, step = (float(x) for x in spec.split(":"))
    except ValueError:
        raise UsageError("grid must be <start>:<stop>:<step>") from None
    if step <= 0 or stop < start:
        raise UsageError("grid needs stop >= start and step > 0")
    out = []
    t = start
    i = 0
    while t <= stop + 1e-12:
        out.append(round(start + i * step, 12))
        i += 1
        t = start + i * step
    return out


EXAMPLES = {
    "klein_delta.fcx": lambda: complexes.write_fcx(complexes.klein_delta()),
    "torus_delta.fcx": lambda: complexes.write_fcx(complexes.torus_delta()),
    "ng3.fcx": lambda: complexes.write_fcx(complexes.ng_cw(3)),
    "klein_height.fcx": lambda: complexes.write_fcx(complexes.klein_height(2.0, 1.0)),
    "circle20.csv": lambda: rips.PointCloud(
        tuple(
            (math.cos(2 * math.pi * i / 20), math.sin(2 * math.pi * i / 20))
            for i in range(20)
        )
    ).to_csv(),
    "sample_points.csv": lambda: resources.files("z2persist").joinpath(
        "data/sample_points.csv"
    ).read_text(),
}


def build_parser() -> _Parser:
    p = _Parser(prog="z2persist", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("homology", help="Betti table and generators (FCX or SPX input)")
    sp.add_argument("file")
    sp.add_argument("--format", choices=("fcx", "spx"), default="fcx")

    sp = sub.add_parser("persist", help="barcode of a filtered complex (BCX output)")
    sp.add_argument("file")
    sp.add_argument("--format", choices=("fcx", "spx"), default="fcx")
    sp.add_argument("--svg")

    sp = sub.add_parser("extended", help="extended-persistence barcode (BCX output)")
    sp.add_argument("file", help="SPX simplex list (bare vertex lists)")
    sp.add_argument("--vertex-values", required=True,
                    help="file of `<vertex-id> <value>` lines")
    sp.add_argument("--spacing", type=float, default=1.0)
    sp.add_argument("--bound", type=float, default=None,
                    help="bound M (default max|f| + 1)")
    sp.add_argument("--svg")

    sp = sub.add_parser("rips", help="Rips barcode of a point-cloud CSV")
    sp.add_argument("points")
    sp.add_argument("--max-dim", type=int, required=True)
    sp.add_argument("--steps", type=int)
    sp.add_argument("--step-size", type=float)
    sp.add_argument("--threshold", type=float)
    sp.add_argument("--radius-axis", action="store_true",
                    help="print scales halved (ball-radius convention)")
    sp.add_argument("--svg")

    sp = sub.add_parser("distance", help="bottleneck distance between two BCX files")
    sp.add_argument("left")
    sp.add_argument("right")
    sp.add_argument("--dim", type=int, default=None)

    sp = sub.add_parser("betti-curve", help="Betti curves of a BCX file as CSV")
    sp.add_argument("file")
    sp.add_argument("--grid", required=True, help="<start>:<stop>:<step>")

    sp = sub.add_parser("example", help="write a bundled fixture file")
    sp.add_argument("name", choices=sorted(EXAMPLES))
    sp.add_argument("--out", default=None, help="output path (default: the name)")
    return p


def run(argv: Sequence[str]) -> int:
    args = build_parser().parse_args(argv)

    if args.command == "homology":
        fc = _load_complex(args.file, args.format)
        fc.validate()
        summary = homology.summarize(fc)
        for k in sorted(summary.betti):
            print(f"betti {k} {summary.betti[k]}")
        for k in sorted(summary.generators):
            for cyc in summary.generators[k]:
                names = "+".join(sorted(fc.cells[c].label() for c in cyc))
                print(f"generator {k} {names}")
        return 0

    if args.command == "persist":
        fc = _load_complex(args.file, args.format)
        fc.validate()
        _emit_barcode(persistence.barcode(fc), args.svg)
        return 0

    if args.command == "extended":
        vv = complexes.parse_vertex_values(_read(args.vertex_values))
        skeleton = complexes.parse_spx(_read(args.file), vv)
        f = complexes.VertexFunction(
            {c.id: c.value for c in skeleton.cells if c.dim == 0},
            bound_M=(args.bound if args.bound is not None
                     else max(abs(x) for x in vv.values()) + 1.0),
        )
        spec = extended.BifiltrationSpec(skeleton, f, M=args.bound, lam=args.spacing)
        _emit_barcode(extended.extended_barcode(spec), args.svg)
        return 0

    if args.command == "rips":
        pc = rips.PointCloud.from_csv(_read(args.points))
        params = rips.RipsParams(
            max_dim=args.max_dim, steps=args.steps,
            step_size=args.step_size, threshold=args.threshold,
        )
        if params.scale_limit == math.inf:
            raise UsageError("give --threshold or --steps/--step-size")
        b = persistence.barcode(rips_filtration_checked(pc, params))
        if args.radius_axis:
            b = persistence.Barcode(
                (d, persistence.Interval(iv.birth / 2, iv.death / 2))
                for d, iv in b
            )
        _emit_barcode(b, args.svg)
        return 0

    if args.command == "distance":
        b1 = persistence.parse_bcx(_read(args.left))
        b2 = persistence.parse_bcx(_read(args.right))
        print(format_value(distances.bottleneck(b1, b2, args.dim)))
        return 0

    if args.command == "betti-curve":
        grid = _parse_grid(args.grid)
        b = persistence.parse_bcx(_read(args.file))
        sys.stdout.write(rips.betti_curve_csv(b, grid))
        return 0

    if args.command == "example":
        out = Path(args.out if args.out else args.name)
        out.write_text(EXAMPLES[args.name]())
        print(f"wrote {out}", file=sys.stderr)
        return 0

    raise UsageError(f"unknown command {args.command}")


def rips_filtration_checked(pc, params):
    fc = rips.rips_filtration(pc, params)
    fc.validate()
    return fc


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        return run(sys.argv[1:] if argv is None else list(argv))
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 1
    except (ComplexError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
