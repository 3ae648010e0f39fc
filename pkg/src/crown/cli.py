"""The crown command line.

Exit codes: 0 success / sequences equivalent, 1 semantic failure, 2 usage,
3 file format error.  Set CROWN_LOG=debug|info|... for verbosity.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from . import io as cio
from .coronation import (
    CoronationBlocked,
    InvalidPath,
    PathNotFound,
    UnsupportedGenus,
    coronate,
    pseudocoronate,
)
from .diagrams import (
    ComparisonPolicy,
    CrownDiagram,
    InvalidDiagram,
    LefschetzFibration,
    validate_crown,
)
from .equivalence import SearchBounds, search_certificate, verify_certificate
from .geometry import InvalidArc, NotInGeneralPosition, PushoffCollision
from .moves import InvalidK, NotApplicable, ShiftBlocked, shift, transpose_adjacent
from .render import RenderSpec, render_svg

SEMANTIC_ERRORS = (InvalidDiagram, InvalidArc, NotInGeneralPosition,
                   PushoffCollision, NotApplicable, ShiftBlocked, InvalidK,
                   CoronationBlocked, PathNotFound, InvalidPath,
                   UnsupportedGenus, ValueError, KeyError)


def _setup_logging():
    level = os.environ.get("CROWN_LOG", "warning").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        format="%(name)s: %(message)s")


def _load(path: str, want=None):
    try:
        obj = cio.load(path)
    except FileNotFoundError:
        print(f"error: no such file: {path}", file=sys.stderr)
        raise SystemExit(3)
    except cio.FormatError as exc:
        print(f"format error in {path}: {exc}", file=sys.stderr)
        raise SystemExit(3)
    except InvalidDiagram as exc:
        print(f"invalid diagram in {path}: {exc}", file=sys.stderr)
        raise SystemExit(1)
    if want is not None and not isinstance(obj, want):
        print(f"error: {path} is not a {want.__name__} file", file=sys.stderr)
        raise SystemExit(3)
    return obj


def _policy(args) -> ComparisonPolicy:
    return ComparisonPolicy(allow_rotation=args.rotate,
                            allow_sequence_reversal=args.reverse,
                            allow_curve_inversion=args.invert)


def cmd_validate(args) -> int:
    d = _load(args.file, CrownDiagram)
    report = validate_crown(d)
    for name, ok in report.embedded:
        print(f"embedded {name}: {'ok' if ok else 'FAIL'}")
    for p in report.consecutive:
        print(f"crossings ({p.first},{p.second}): {p.crossings} {'ok' if p.ok else 'FAIL'}")
    for issue in report.issues:
        print(f"issue: {issue}")
    print("note: only the consecutive-intersection condition is checked; "
          "representatives are not certified minimal")
    print("PASS" if report.passed else "FAIL")
    return 0 if report.passed else 1


def _json_arg(text: str):
    import json

    path = Path(text)
    raw = path.read_text(encoding="utf-8") if path.exists() else text
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise cio.FormatError(f"bad JSON argument: {exc}") from exc


def cmd_slide(args) -> int:
    d = _load(args.file, CrownDiagram)
    arc = cio.arc_from_json(_json_arg(args.arc))
    from .equivalence import replay_step
    from .diagrams import SlideStep

    step = SlideStep(args.mover, args.over, args.sign, arc)
    curves = replay_step(d.chart, list(d.curves), step)
    out = CrownDiagram(d.chart, tuple(curves))
    cio.save(out, args.output)
    if args.cert:
        from .diagrams import SlideCertificate
        cio.save(SlideCertificate((step,)), args.cert)
    print(f"slid curve {args.mover} over {args.over}; wrote {args.output}")
    return 0


def cmd_shift(args) -> int:
    d = _load(args.file, CrownDiagram)
    res = shift(d, args.k)
    cio.save(res.output, args.output)
    if args.cert:
        cio.save(res.certificate, args.cert)
    print(f"shift k={args.k}: output {args.output}"
          + (f", certificate {args.cert}" if args.cert else ""))
    for line in res.log:
        print(f"  {line}")
    return 0


def cmd_transpose(args) -> int:
    d = _load(args.file, CrownDiagram)
    out, cert = transpose_adjacent(d, args.i)
    cio.save(out, args.output)
    if args.cert:
        cio.save(cert, args.cert)
    print(f"transposed positions {args.i},{args.i + 1}; wrote {args.output}")
    return 0


def _parse_phi(text: str):
    """Path file: a JSON list of {"side": int, "t": "p/q"} teleports."""
    from .geometry import SideCrossing

    obj = _json_arg(text)
    if not isinstance(obj, list):
        raise cio.FormatError("path file must be a JSON list of side crossings")
    return [SideCrossing(cio._expect(w, "side", int), cio.parse_frac(cio._expect(w, "t", str)))
            for w in obj]


def cmd_coronate(args) -> int:
    fib = _load(args.file, LefschetzFibration)
    phi = _parse_phi(args.path) if args.path else None
    res = coronate(fib, phi)
    cio.save(res.coronation, args.output)
    if args.cert:
        cio.save(res.certificate, args.cert)
    print(f"coronation with {len(res.coronation.curves)} cycles -> {args.output}")
    for lines in res.merge_logs:
        for line in lines:
            print(f"  {line}")
    return 0


def cmd_pseudo(args) -> int:
    fib = _load(args.file, LefschetzFibration)
    phi = _parse_phi(args.path) if args.path else None
    stab, seq, used = pseudocoronate(fib, phi)
    out = CrownDiagram(stab.chart, seq)
    cio.save(out, args.output)
    print(f"pseudocoronation with {len(seq)} cycles -> {args.output}")
    return 0


def cmd_check(args) -> int:
    a = _load(args.a, CrownDiagram)
    b = _load(args.b, CrownDiagram)
    cert = _load(args.cert)
    if a.chart.genus != b.chart.genus:
        print("FAIL: genus mismatch")
        return 1
    report = verify_certificate(a.chart, a.curves, cert, b.curves, _policy(args))
    for i, st in enumerate(report.steps):
        status = "ok" if st.ok else f"FAIL ({st.detail})"
        print(f"step {i} [{st.op}]: {status}")
    for entry in report.ledger:
        print(f"  homology step {entry.step}: delta {entry.delta} expected {entry.expected}")
    print("PASS" if report.passed else f"FAIL: {report.reason}")
    return 0 if report.passed else 1


def cmd_search(args) -> int:
    a = _load(args.a, CrownDiagram)
    b = _load(args.b, CrownDiagram)
    bounds = SearchBounds(max_slides=args.max_slides)
    cert = search_certificate(a.chart, a.curves, b.curves, bounds, _policy(args))
    if cert is None:
        print(f"no certificate within {args.max_slides} slides")
        return 1
    if args.cert:
        cio.save(cert, args.cert)
    print(f"found certificate with {len(cert)} steps"
          + (f" -> {args.cert}" if args.cert else ""))
    return 0


def cmd_render(args) -> int:
    d = _load(args.file)
    svg = render_svg(d, RenderSpec())
    Path(args.output).write_text(svg, encoding="utf-8")
    print(f"wrote {args.output}")
    return 0


def cmd_serve(args) -> int:
    from .server import serve

    static = args.static
    if static is None:
        bundled = Path(__file__).resolve().parents[2] / "frontend" / "dist"
        static = bundled if bundled.is_dir() else None
    httpd = serve(args.port, static, host=args.host)
    print(f"serving on http://{args.host}:{args.port}/ "
          + (f"(ui from {static})" if static else "(api only)"))
    try:
        httpd.serve_forever()
    except KeyboardInterrupt:
        pass
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="crown",
                                 description="Certificate-checked slide calculus for curves on surfaces")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the crown conditions")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("slide", help="slide one curve over another")
    p.add_argument("file")
    p.add_argument("--mover", type=int, required=True)
    p.add_argument("--over", type=int, required=True)
    p.add_argument("--sign", type=int, choices=(1, -1), default=1)
    p.add_argument("--arc", required=True, help="arc JSON (file or literal)")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--cert")
    p.set_defaults(func=cmd_slide)

    p = sub.add_parser("shift", help="generalized shift move")
    p.add_argument("file")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--cert")
    p.set_defaults(func=cmd_shift)

    p = sub.add_parser("transpose", help="transpose adjacent cycles by slides")
    p.add_argument("file")
    p.add_argument("--i", type=int, required=True)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--cert")
    p.set_defaults(func=cmd_transpose)

    p = sub.add_parser("coronate", help="coronation of a Lefschetz fibration")
    p.add_argument("file")
    p.add_argument("--path", help="JSON file with the dual-curve teleports")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--cert")
    p.set_defaults(func=cmd_coronate)

    p = sub.add_parser("pseudo", help="pseudocoronation of a Lefschetz fibration")
    p.add_argument("file")
    p.add_argument("--path")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_pseudo)

    p = sub.add_parser("check", help="verify a slide certificate")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--cert", required=True)
    p.add_argument("--rotate", action="store_true")
    p.add_argument("--reverse", action="store_true")
    p.add_argument("--invert", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("search", help="bounded search for a certificate")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--max-slides", type=int, default=4)
    p.add_argument("--cert")
    p.add_argument("--rotate", action="store_true", default=True)
    p.add_argument("--reverse", action="store_true")
    p.add_argument("--invert", action="store_true", default=True)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("render", help="render a diagram to SVG")
    p.add_argument("file")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("serve", help="run the session API / explorer UI")
    p.add_argument("--port", type=int, default=8765)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--static", help="directory with the built explorer UI")
    p.set_defaults(func=cmd_serve)
    return ap


def main(argv=None) -> int:
    _setup_logging()
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    except cio.FormatError as exc:
        print(f"format error: {exc}", file=sys.stderr)
        return 3
    except SEMANTIC_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
