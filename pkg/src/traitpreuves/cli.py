"""Command line: ``trait check|render|fuzz|witness``.

Exit codes are 0 when everything passed, 1 when a check or property
failed, and 2 for unreadable input, parse errors and evaluation errors.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import kernel, moulton, properties
from .kernel import Tolerance
from .scene import nodes as N
from .scene.evaluate import EvaluationError, MoultonReport, evaluate
from .scene.parser import ParseError, parse_scene
from .scene.render import NoRenderDirective, render_svg

EXIT_OK, EXIT_FAILED, EXIT_ERROR = 0, 1, 2


def _common(p: argparse.ArgumentParser):
    p.add_argument("--backend", choices=(kernel.EXACT, kernel.APPROX), default=kernel.EXACT)
    p.add_argument("--eps-abs", type=float, default=kernel.DEFAULT_TOL.eps_abs)
    p.add_argument("--eps-rel", type=float, default=kernel.DEFAULT_TOL.eps_rel)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="trait", description="Check and draw projective-geometry scenes.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="evaluate every check in a scene")
    p.add_argument("file")
    _common(p)

    p = sub.add_parser("render", help="evaluate a scene and write its SVG figure")
    p.add_argument("file")
    p.add_argument("-o", "--output", help="output path (default: the path in the render directive)")
    _common(p)

    p = sub.add_parser("fuzz", help="run a randomized property suite")
    p.add_argument("property", choices=sorted(properties.SUITES))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=None)
    _common(p)

    p = sub.add_parser("witness", help="search for a non-Desarguesian witness")
    p.add_argument("plane", choices=("moulton",))
    p.add_argument("--budget", type=int, default=100_000)
    p.add_argument("--box", type=Fraction, nargs=4, default=None, metavar=("XMIN", "YMIN", "XMAX", "YMAX"))
    p.add_argument("-o", "--output", help="also render the witness to this SVG file")
    _common(p)
    return parser


def _load(path: str, args):
    """Parse and evaluate; returns (scene, evaluation) or raises for exit code 2."""
    text = Path(path).read_text(encoding="utf-8")
    scene = parse_scene(text)
    tol = Tolerance(args.eps_abs, args.eps_rel)
    return scene, evaluate(scene, args.backend, tol)


def _report(outcomes, out) -> bool:
    for o in outcomes:
        print(f"{'PASS' if o.passed else 'FAIL'} {o.name}", file=out)
    return all(o.passed for o in outcomes)


def _diagnose(path: str, exc: Exception) -> int:
    if isinstance(exc, (ParseError, EvaluationError)) and exc.span is not None:
        kind = "syntax error" if isinstance(exc, ParseError) else "error"
        print(f"{path}:{exc.span.line}:{exc.span.column}: {kind}: {exc.message}", file=sys.stderr)
    else:
        print(f"{path}: error: {exc}", file=sys.stderr)
    return EXIT_ERROR


def cmd_check(args) -> int:
    try:
        _, ev = _load(args.file, args)
    except (OSError, ParseError, EvaluationError, ValueError) as exc:
        return _diagnose(args.file, exc)
    return EXIT_OK if _report(ev.outcomes, sys.stdout) else EXIT_FAILED


def cmd_render(args) -> int:
    try:
        scene, ev = _load(args.file, args)
        if not scene.renders:
            raise NoRenderDirective("the scene has no render directive")
    except (OSError, ParseError, EvaluationError, ValueError, NoRenderDirective) as exc:
        return _diagnose(args.file, exc)
    ok = _report(ev.outcomes, sys.stdout)
    base = Path(args.file).parent
    targets = [(scene.renders[0], Path(args.output))] if args.output else [(r, base / r.path) for r in scene.renders]
    for directive, target in targets:
        svg = render_svg(scene, ev.outcomes, directive, ev)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_bytes(svg.encode("utf-8"))
        print(f"wrote {target}")
    return EXIT_OK if ok else EXIT_FAILED


def cmd_fuzz(args) -> int:
    run = properties.run_suite(args.property, args.seed, args.count)
    print(run.summary())
    for index, reason in run.failures[:10]:
        print(f"  case {index}: {reason or 'property violated'}", file=sys.stderr)
    return EXIT_OK if run.passed else EXIT_FAILED


def cmd_witness(args) -> int:
    box = tuple(args.box) if args.box else (Fraction(-4), Fraction(-4), Fraction(4), Fraction(4))
    statements = [N.MoultonCheck(box, args.budget)]
    if args.output:
        margin = 1
        viewport = (box[0] - margin, box[1] - margin, box[2] + margin, box[3] + margin)
        statements.append(N.Render(Path(args.output).name, viewport))
    scene = N.Scene(tuple(statements))
    ev = evaluate(scene)
    outcome = ev.outcomes[0]
    if not isinstance(outcome.detail, MoultonReport):
        print(f"no witness: {outcome.detail}", file=sys.stderr)
        return EXIT_FAILED
    w = outcome.detail.witness
    print(f"center {_mp(w.center)}")
    print("triangle1 " + " ".join(_mp(p) for p in w.triangle1))
    print("triangle2 " + " ".join(_mp(p) for p in w.triangle2))
    print("side meets " + " ".join(_mp(p) for p in w.side_meets))
    print(f"collinearity defect {w.collinearity_defect}")
    print(f"verified {outcome.detail.verified}; euclidean desargues holds {outcome.detail.euclidean.conclusion_holds}")
    if args.output:
        Path(args.output).write_bytes(render_svg(scene, ev.outcomes, scene.renders[0], ev).encode("utf-8"))
        print(f"wrote {args.output}")
    return EXIT_OK if outcome.passed else EXIT_FAILED


def _mp(p: moulton.MoultonPoint) -> str:
    return f"({p.x}, {p.y})"


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        Tolerance(args.eps_abs, args.eps_rel)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    handler = {"check": cmd_check, "render": cmd_render, "fuzz": cmd_fuzz, "witness": cmd_witness}[args.command]
    return handler(args)


if __name__ == "__main__":
    sys.exit(main())
