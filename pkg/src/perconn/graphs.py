"""Weighted simple graphs and their sublevel filtrations.

Vertices are arbitrary strings.  Edges are unordered pairs of distinct
vertices, stored sorted.  A weighted graph assigns a finite real weight to
every edge; each vertex weight defaults to the minimum weight over its
incident edges and may be lowered (never raised) by an explicit value.
Isolated vertices must carry an explicit weight.

The text format is line oriented::

    # comment (blank lines are ignored too)
    e <u> <v> <weight>
    v <u> <weight>

Serialization is canonical: explicit vertex lines sorted by vertex id,
then edge lines sorted by endpoint pair.  Weights are rendered with the
shortest representation that round-trips exactly.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from typing import Iterable, Mapping


class GraphError(ValueError):
    """Invalid graph construction or query."""


class FormatError(GraphError):
    """Malformed text input; carries the offending line number when known."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


class CapExceeded(GraphError):
    """A brute-force size guard was exceeded."""


def edge_key(u: str, v: str) -> tuple[str, str]:
    """Normalize an unordered edge to a sorted pair; rejects self-loops."""
    if u == v:
        raise GraphError(f"self-loop at {u!r}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class SimpleGraph:
    """Finite simple graph: no loops, no parallel edges."""

    vertices: frozenset[str]
    edges: frozenset[tuple[str, str]]

    def __post_init__(self):
        for u, v in self.edges:
            if u == v:
                raise GraphError(f"self-loop at {u!r}")
            if v < u:
                raise GraphError(f"edge ({u!r}, {v!r}) is not normalized")
            if u not in self.vertices or v not in self.vertices:
                raise GraphError(f"edge ({u!r}, {v!r}) has a missing endpoint")

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    def sorted_vertices(self) -> list[str]:
        return sorted(self.vertices)

    def sorted_edges(self) -> list[tuple[str, str]]:
        return sorted(self.edges)

    def adjacency(self) -> dict[str, set[str]]:
        adj: dict[str, set[str]] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def induced(self, vs: Iterable[str]) -> "SimpleGraph":
        keep = frozenset(vs)
        if not keep <= self.vertices:
            raise GraphError("induced subgraph on vertices outside the graph")
        return SimpleGraph(keep, frozenset(e for e in self.edges if e[0] in keep and e[1] in keep))

    def intersection(self, other: "SimpleGraph") -> "SimpleGraph":
        return SimpleGraph(self.vertices & other.vertices, self.edges & other.edges)

    def union(self, other: "SimpleGraph") -> "SimpleGraph":
        return SimpleGraph(self.vertices | other.vertices, self.edges | other.edges)

    def includes(self, other: "SimpleGraph") -> bool:
        return other.vertices <= self.vertices and other.edges <= self.edges


def simple_graph(vertices: Iterable[str] = (), edges: Iterable[tuple[str, str]] = ()) -> SimpleGraph:
    """Build a SimpleGraph from loose vertex/edge iterables, normalizing edges."""
    vs = set(vertices)
    es = set()
    for u, v in edges:
        e = edge_key(u, v)
        es.add(e)
        vs.add(u)
        vs.add(v)
    return SimpleGraph(frozenset(vs), frozenset(es))


@dataclass(frozen=True)
class WeightedGraph:
    """Simple graph with edge weights, derived/explicit vertex weights.

    ``vertex_weights`` is the full map (explicit value where present,
    otherwise the minimum incident edge weight).  ``explicit`` records
    which vertices carry an explicit value; it drives serialization and
    perturbation.  Instances are immutable by convention.
    """

    graph: SimpleGraph
    edge_weights: dict[tuple[str, str], float]
    vertex_weights: dict[str, float]
    explicit: frozenset[str]


def weighted_graph(
    edge_weights: Mapping[tuple[str, str], float] | Iterable[tuple[tuple[str, str], float]] = (),
    vertex_weights: Mapping[str, float] | Iterable[tuple[str, float]] = (),
    vertices: Iterable[str] = (),
) -> WeightedGraph:
    """Assemble a WeightedGraph, deriving vertex weights and validating invariants.

    ``vertices`` may add extra vertex names; any of them without an incident
    edge must appear in ``vertex_weights``.
    """
    ew: dict[tuple[str, str], float] = {}
    items = edge_weights.items() if isinstance(edge_weights, Mapping) else edge_weights
    for (u, v), w in items:
        e = edge_key(u, v)
        w = float(w)
        if not math.isfinite(w):
            raise GraphError(f"edge {e} has non-finite weight {w!r}")
        if e in ew:
            raise GraphError(f"duplicate edge {e}")
        ew[e] = w
    explicit_items = vertex_weights.items() if isinstance(vertex_weights, Mapping) else vertex_weights
    explicit: dict[str, float] = {}
    for v, w in explicit_items:
        w = float(w)
        if not math.isfinite(w):
            raise GraphError(f"vertex {v!r} has non-finite weight {w!r}")
        if v in explicit:
            raise GraphError(f"duplicate vertex weight for {v!r}")
        explicit[v] = w

    vs = set(explicit) | set(vertices)
    for u, v in ew:
        vs.add(u)
        vs.add(v)
    incident_min: dict[str, float] = {}
    for (u, v), w in ew.items():
        for x in (u, v):
            if x not in incident_min or w < incident_min[x]:
                incident_min[x] = w
    vw: dict[str, float] = {}
    for v in vs:
        if v in incident_min:
            derived = incident_min[v]
            if v in explicit:
                if explicit[v] > derived:
                    raise GraphError(
                        f"explicit weight {explicit[v]!r} of vertex {v!r} exceeds "
                        f"the incident minimum {derived!r}"
                    )
                vw[v] = explicit[v]
            else:
                vw[v] = derived
        else:
            if v not in explicit:
                raise GraphError(f"isolated vertex {v!r} needs an explicit weight")
            vw[v] = explicit[v]
    g = SimpleGraph(frozenset(vs), frozenset(ew))
    return WeightedGraph(g, ew, vw, frozenset(explicit))


def critical_values(wg: WeightedGraph) -> list[float]:
    """Distinct weight values, sorted ascending; sublevels only change here."""
    return sorted(set(wg.edge_weights.values()) | set(wg.vertex_weights.values()))


@dataclass(frozen=True)
class Filtration:
    """Sublevel filtration of a weighted graph, tabulated on critical values."""

    source: WeightedGraph
    criticals: tuple[float, ...]

    def sublevel(self, x: float) -> SimpleGraph:
        vw = self.source.vertex_weights
        ew = self.source.edge_weights
        vs = frozenset(v for v, w in vw.items() if w <= x)
        es = frozenset(e for e, w in ew.items() if w <= x)
        return SimpleGraph(vs, es)

    def sublevel_at(self, i: int) -> SimpleGraph:
        return self.sublevel(self.criticals[i])

    def limit(self) -> SimpleGraph:
        """The stable final graph: every vertex and edge present."""
        return self.source.graph

    def index_of(self, x: float) -> int:
        """Index of the rightmost critical value <= x, or -1 below the first."""
        return bisect_right(self.criticals, x) - 1


def build_filtration(wg: WeightedGraph) -> Filtration:
    return Filtration(wg, tuple(critical_values(wg)))


def format_weight(x: float) -> str:
    """Shortest decimal string that parses back to exactly ``x``."""
    s = repr(float(x))
    return s[:-2] if s.endswith(".0") else s


def parse_weighted_graph(text: str) -> WeightedGraph:
    """Parse the edge-list format; raises FormatError with line numbers."""
    edges: dict[tuple[str, str], float] = {}
    explicit: dict[str, float] = {}
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        record = parts[0]
        if record == "e":
            if len(parts) != 4:
                raise FormatError("edge record must be 'e <u> <v> <weight>'", ln)
            u, v, ws = parts[1], parts[2], parts[3]
            try:
                w = float(ws)
            except ValueError:
                raise FormatError(f"bad weight {ws!r}", ln) from None
            if not math.isfinite(w):
                raise FormatError(f"non-finite weight {ws!r}", ln)
            try:
                e = edge_key(u, v)
            except GraphError as exc:
                raise FormatError(str(exc), ln) from None
            if e in edges:
                raise FormatError(f"duplicate edge {e[0]} {e[1]}", ln)
            edges[e] = w
        elif record == "v":
            if len(parts) != 3:
                raise FormatError("vertex record must be 'v <u> <weight>'", ln)
            u, ws = parts[1], parts[2]
            try:
                w = float(ws)
            except ValueError:
                raise FormatError(f"bad weight {ws!r}", ln) from None
            if not math.isfinite(w):
                raise FormatError(f"non-finite weight {ws!r}", ln)
            if u in explicit:
                raise FormatError(f"duplicate vertex weight for {u!r}", ln)
            explicit[u] = w
        else:
            raise FormatError(f"unknown record type {record!r}", ln)
    try:
        return weighted_graph(edges, explicit)
    except GraphError as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(str(exc)) from exc


def serialize_weighted_graph(wg: WeightedGraph) -> str:
    """Canonical text form; parse(serialize(wg)) == wg."""
    lines = [f"v {v} {format_weight(wg.vertex_weights[v])}" for v in sorted(wg.explicit)]
    lines += [f"e {u} {v} {format_weight(w)}" for (u, v), w in sorted(wg.edge_weights.items())]
    return "".join(line + "\n" for line in lines)
