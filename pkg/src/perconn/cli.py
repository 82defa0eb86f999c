"""Command-line frontend.

Commands: diagram, components, distance, pseudodistance, verify,
quiver-diagram, plot.  Exit codes: 0 success, 1 input parse error,
2 invalid configuration, 3 verification failure.  Outputs are
byte-deterministic for fixed inputs and flags.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys

from .connectivity import PropertySpec, property_components, subobject_poset
from .graphs import (
    CapExceeded,
    FormatError,
    GraphError,
    build_filtration,
    parse_weighted_graph,
)
from .metrics import bottleneck_distance, natural_pseudodistance
from .persistence import (
    Diagram,
    PersistenceFunction,
    check_axioms,
    diagram,
    evaluate_diagram,
    extract_diagram,
    parse_diagram,
    persistence_function,
    serialize_diagram,
)
from .posets import is_weakly_directed
from .quivers import EquivariantClass, gq_persistence, parse_gquiver

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_CONFIG = 2
EXIT_VERIFY = 3


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from exc


def _write_output(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _property_spec(args) -> PropertySpec:
    kind = args.property.replace("-", "_")
    return PropertySpec(kind, args.k)


def _diagram_json(d: Diagram, descriptor: str, digest: str) -> str:
    doc = {
        "births": [p.birth for p in d.points],
        "deaths": ["inf" if p.is_infinite else p.death for p in d.points],
        "multiplicities": [p.multiplicity for p in d.points],
        "property": descriptor,
        "input_digest": digest,
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _digest(text: str) -> str:
    return "sha256:" + hashlib.sha256(text.encode("utf-8")).hexdigest()


def render_diagram_svg(d: Diagram, size: int = 420) -> str:
    """Standalone SVG: diagonal, one circle per proper cornerpoint, a vertical
    half-line glyph per infinite point, multiplicity labels when > 1."""
    margin = 40.0
    span_lo = 0.0
    span_hi = 1.0
    values = [p.birth for p in d.points] + [p.death for p in d.points if not p.is_infinite]
    if values:
        span_lo = min(values)
        span_hi = max(values)
        if span_hi == span_lo:
            span_hi = span_lo + 1.0
    pad = 0.08 * (span_hi - span_lo)
    lo, hi = span_lo - pad, span_hi + pad
    scale = (size - 2 * margin) / (hi - lo)

    def px(x: float) -> float:
        return margin + (x - lo) * scale

    def py(y: float) -> float:
        return size - margin - (y - lo) * scale

    def fmt(x: float) -> str:
        return f"{x:.2f}"

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect x="0" y="0" width="{size}" height="{size}" fill="white"/>',
        f'<line class="axis" x1="{fmt(px(lo))}" y1="{fmt(py(lo))}" x2="{fmt(px(hi))}" '
        f'y2="{fmt(py(lo))}" stroke="black"/>',
        f'<line class="axis" x1="{fmt(px(lo))}" y1="{fmt(py(lo))}" x2="{fmt(px(lo))}" '
        f'y2="{fmt(py(hi))}" stroke="black"/>',
        f'<line class="diagonal" x1="{fmt(px(lo))}" y1="{fmt(py(lo))}" x2="{fmt(px(hi))}" '
        f'y2="{fmt(py(hi))}" stroke="gray" stroke-dasharray="4 3"/>',
    ]
    for p in d.points:
        if p.is_infinite:
            x = fmt(px(p.birth))
            parts.append(
                f'<line class="halfline" x1="{x}" y1="{fmt(py(p.birth))}" x2="{x}" '
                f'y2="{fmt(margin / 2)}" stroke="crimson" stroke-width="2"/>'
            )
            parts.append(
                f'<path class="halfline-tip" d="M {fmt(px(p.birth) - 4)} {fmt(margin / 2 + 6)} '
                f'L {x} {fmt(margin / 2)} L {fmt(px(p.birth) + 4)} {fmt(margin / 2 + 6)} Z" '
                f'fill="crimson"/>'
            )
            if p.multiplicity > 1:
                parts.append(
                    f'<text x="{fmt(px(p.birth) + 6)}" y="{fmt(margin / 2 + 10)}" '
                    f'font-size="11">{p.multiplicity}</text>'
                )
        else:
            parts.append(
                f'<circle class="cornerpoint" cx="{fmt(px(p.birth))}" cy="{fmt(py(p.death))}" '
                f'r="4" fill="steelblue"/>'
            )
            if p.multiplicity > 1:
                parts.append(
                    f'<text x="{fmt(px(p.birth) + 6)}" y="{fmt(py(p.death) - 6)}" '
                    f'font-size="11">{p.multiplicity}</text>'
                )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _cmd_diagram(args) -> int:
    spec = _property_spec(args)
    text = _read(args.input)
    wg = parse_weighted_graph(text)
    filt = build_filtration(wg)
    if not filt.criticals:
        d = diagram([])
    else:
        d = extract_diagram(persistence_function(filt, spec))
    if args.format == "json":
        out = _diagram_json(d, spec.label(), _digest(text))
    else:
        out = serialize_diagram(d)
    _write_output(out, args.output)
    return EXIT_OK


def _cmd_components(args) -> int:
    spec = _property_spec(args)
    wg = parse_weighted_graph(_read(args.input))
    comps = property_components(wg.graph, spec)
    lines = [" ".join(sorted(c.vertices)) for c in comps]
    _write_output("".join(line + "\n" for line in lines), args.output)
    return EXIT_OK


def _cmd_distance(args) -> int:
    d1 = parse_diagram(_read(args.first))
    d2 = parse_diagram(_read(args.second))
    dist = bottleneck_distance(d1, d2)
    print("inf" if math.isinf(dist) else f"{dist:.12g}")
    return EXIT_OK


def _cmd_pseudodistance(args) -> int:
    w1 = parse_weighted_graph(_read(args.first))
    w2 = parse_weighted_graph(_read(args.second))
    dist = natural_pseudodistance(w1, w2, vertex_cap=args.cap)
    print("inf" if math.isinf(dist) else f"{dist:.12g}")
    return EXIT_OK


def _corrupted(pf: PersistenceFunction, spec_text: str) -> PersistenceFunction:
    try:
        i_s, j_s, delta_s = spec_text.split(",")
        i, j, delta = int(i_s), int(j_s), int(delta_s)
    except ValueError:
        raise GraphError(f"--corrupt wants 'i,j,delta', got {spec_text!r}") from None
    rows = [list(r) for r in pf.rows]
    rows[i][j - i] += delta
    inf_column = list(pf.inf_column)
    if j == pf.grid_size - 1:
        inf_column[i] += delta
    return PersistenceFunction(pf.criticals, tuple(tuple(r) for r in rows), tuple(inf_column))


def _cmd_verify(args) -> int:
    spec = _property_spec(args)
    wg = parse_weighted_graph(_read(args.input))
    filt = build_filtration(wg)
    if not filt.criticals:
        print("PASS empty filtration: nothing to verify")
        return EXIT_OK
    pf = persistence_function(filt, spec)
    if args.corrupt:
        pf = _corrupted(pf, args.corrupt)
    failures = []
    message = check_axioms(pf)
    if message is None:
        print("PASS axioms: monotonicity and jump superadditivity hold")
    else:
        print(f"FAIL axioms: {message}")
        failures.append(message)
    try:
        d = extract_diagram(pf)
        mids = _grid_midpoints(pf.criticals)
        bad = None
        for bi, beta in enumerate(mids):
            for gamma in mids[bi:]:
                if evaluate_diagram(d, beta, gamma) != pf.at(beta, gamma):
                    bad = (beta, gamma)
                    break
            if bad:
                break
        if bad is None:
            print("PASS reconstruction: diagram reproduces the function off-grid")
        else:
            msg = f"reconstruction mismatch at ({bad[0]!r}, {bad[1]!r})"
            print(f"FAIL reconstruction: {msg}")
            failures.append(msg)
    except ValueError as exc:
        print(f"FAIL reconstruction: {exc}")
        failures.append(str(exc))
    if len(wg.graph.vertices) <= args.poset_cap:
        poset = subobject_poset(filt.limit(), spec, size_cap=args.poset_cap)
        if is_weakly_directed(poset):
            print("PASS weak directedness: subobject poset of the final graph")
        else:
            msg = "subobject poset of the final graph is not weakly directed"
            print(f"FAIL weak directedness: {msg}")
            failures.append(msg)
    else:
        print(
            f"SKIP weak directedness: graph exceeds the poset cap "
            f"({len(wg.graph.vertices)} > {args.poset_cap})"
        )
    return EXIT_VERIFY if failures else EXIT_OK


def _grid_midpoints(criticals: tuple[float, ...]) -> list[float]:
    mids = [criticals[0] - 1.0]
    for a, b in zip(criticals, criticals[1:]):
        mids.append((a + b) / 2.0)
    mids.append(criticals[-1] + 1.0)
    return mids


def _cmd_quiver_diagram(args) -> int:
    cls = EquivariantClass(args.cls.replace("-", "_"), args.k)
    text = _read(args.input)
    gq = parse_gquiver(text)
    d = gq_persistence(gq, cls)
    if args.format == "json":
        out = _diagram_json(d, cls.label(), _digest(text))
    else:
        out = serialize_diagram(d)
    _write_output(out, args.output)
    return EXIT_OK


def _cmd_plot(args) -> int:
    d = parse_diagram(_read(args.input))
    _write_output(render_diagram_svg(d), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="perconn",
        description="Persistence diagrams of weighted graphs and G-quivers "
        "under pluggable connectivity notions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_property(p):
        p.add_argument(
            "--property",
            required=True,
            choices=["components", "clique", "vertex-block", "edge-block"],
            help="connectivity notion",
        )
        p.add_argument("--k", type=int, default=1, help="parameter k (>= 2 for clique)")

    p = sub.add_parser("diagram", help="persistence diagram of a weighted graph")
    add_property(p)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--output", default=None, help="output path (default: stdout)")
    p.add_argument("input")
    p.set_defaults(func=_cmd_diagram)

    p = sub.add_parser("components", help="maximal components of the final graph")
    add_property(p)
    p.add_argument("--output", default=None)
    p.add_argument("input")
    p.set_defaults(func=_cmd_components)

    p = sub.add_parser("distance", help="bottleneck distance between two diagram files")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=_cmd_distance)

    p = sub.add_parser("pseudodistance", help="natural pseudodistance between two weighted graphs")
    p.add_argument("--cap", type=int, default=12, help="vertex cap for isomorphism search")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=_cmd_pseudodistance)

    p = sub.add_parser("verify", help="axiom, reconstruction and weak-directedness checks")
    add_property(p)
    p.add_argument("--poset-cap", type=int, default=7)
    p.add_argument("--corrupt", default=None, help="testing hook: 'i,j,delta' grid corruption")
    p.add_argument("input")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("quiver-diagram", help="orbit-filtration diagram of a G-quiver")
    p.add_argument(
        "--class",
        dest="cls",
        required=True,
        choices=["isomorphisms", "orbit-deletion", "fixed-vertex-deletion"],
    )
    p.add_argument("--k", type=int, default=2, help="deletion budget (fewer than k units)")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--output", default=None)
    p.add_argument("input")
    p.set_defaults(func=_cmd_quiver_diagram)

    p = sub.add_parser("plot", help="render a diagram file as SVG")
    p.add_argument("--output", default=None)
    p.add_argument("input")
    p.set_defaults(func=_cmd_plot)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except GraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
