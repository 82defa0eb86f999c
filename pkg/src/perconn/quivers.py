"""Finite quivers with group actions and their orbit-filtration persistence.

A quiver is a directed multigraph with loops; arrows carry names so
parallel arrows stay distinct.  A group acts through a list of generator
automorphisms (a vertex permutation plus a compatible arrow permutation).
Everything downstream only needs orbits, which are computed by closure
under the generators.

A G-quiver is connected when the group acts transitively on the weakly
connected components of the underlying quiver (equivalently: it has no
splitting into two disjoint nonempty invariant subquivers).  Three
equivariant deletion classes refine this: ``isomorphisms`` (no deletions),
``orbit_deletion`` (drop fewer than k whole vertex orbits with their
incident arrows), and ``fixed_vertex_deletion`` (drop fewer than k
vertices fixed by every generator).  k defaults to 2; k = 1 degenerates to
the isomorphisms class.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .cuts import UnionFind
from .graphs import CapExceeded, FormatError, GraphError, SimpleGraph, simple_graph, weighted_graph
from .persistence import Diagram, PersistenceFunction, diagram, tabulate_persistence

EQUIVARIANT_KINDS = ("isomorphisms", "orbit_deletion", "fixed_vertex_deletion")


class QuiverError(GraphError):
    """Invalid quiver, action, or query."""


@dataclass(frozen=True)
class Quiver:
    """Directed multigraph with loops; arrows are (name, source, target)."""

    vertices: frozenset[str]
    arrows: tuple[tuple[str, str, str], ...]

    def __post_init__(self):
        names = [a[0] for a in self.arrows]
        if len(set(names)) != len(names):
            raise QuiverError("duplicate arrow names")
        for name, src, tgt in self.arrows:
            if src not in self.vertices or tgt not in self.vertices:
                raise QuiverError(f"arrow {name!r} has a missing endpoint")
        if list(self.arrows) != sorted(self.arrows):
            raise QuiverError("arrows must be sorted by name")

    def arrow_map(self) -> dict[str, tuple[str, str]]:
        return {name: (src, tgt) for name, src, tgt in self.arrows}

    def arrow_names(self) -> frozenset[str]:
        return frozenset(a[0] for a in self.arrows)


def quiver(vertices=(), arrows=()) -> Quiver:
    """Build a quiver from vertex names and (name, src, tgt) triples."""
    vs = set(vertices)
    ars = []
    for name, src, tgt in arrows:
        vs.add(src)
        vs.add(tgt)
        ars.append((name, src, tgt))
    return Quiver(frozenset(vs), tuple(sorted(ars)))


@dataclass(frozen=True)
class GroupAction:
    """Finite list of generator automorphisms, each a pair of permutation maps."""

    generators: tuple[tuple[tuple[tuple[str, str], ...], tuple[tuple[str, str], ...]], ...]

    @staticmethod
    def from_maps(generators) -> "GroupAction":
        packed = []
        for vmap, amap in generators:
            packed.append((tuple(sorted(vmap.items())), tuple(sorted(amap.items()))))
        return GroupAction(tuple(packed))

    def maps(self) -> list[tuple[dict[str, str], dict[str, str]]]:
        return [(dict(v), dict(a)) for v, a in self.generators]


@dataclass(frozen=True)
class GQuiver:
    """Quiver equipped with a validated group action."""

    quiver: Quiver
    action: GroupAction = field(default_factory=lambda: GroupAction(()))

    def __post_init__(self):
        am = self.quiver.arrow_map()
        for vmap, amap in self.action.maps():
            _check_permutation(vmap, self.quiver.vertices, "vertex")
            _check_permutation(amap, set(am), "arrow")
            for name, (src, tgt) in am.items():
                image = amap.get(name, name)
                isrc, itgt = am[image]
                if isrc != vmap.get(src, src) or itgt != vmap.get(tgt, tgt):
                    raise QuiverError(
                        f"generator is not an automorphism: arrow {name!r} maps to "
                        f"{image!r} but endpoints disagree"
                    )

    def generator_maps(self) -> list[tuple[dict[str, str], dict[str, str]]]:
        return self.action.maps()


def _check_permutation(mapping: dict[str, str], domain: set[str] | frozenset[str], what: str) -> None:
    for a, b in mapping.items():
        if a not in domain or b not in domain:
            raise QuiverError(f"{what} map uses unknown name {a!r} -> {b!r}")
    image = {mapping.get(x, x) for x in domain}
    if image != set(domain):
        raise QuiverError(f"{what} map is not a permutation")


def gquiver(vertices=(), arrows=(), generators=()) -> GQuiver:
    return GQuiver(quiver(vertices, arrows), GroupAction.from_maps(generators))


def _orbit_partition(items: list[str], images) -> list[frozenset[str]]:
    idx = {x: i for i, x in enumerate(items)}
    uf = UnionFind(len(items))
    for mapping in images:
        for x in items:
            uf.union(idx[x], idx[mapping.get(x, x)])
    classes: dict[int, set[str]] = {}
    for x in items:
        classes.setdefault(uf.find(idx[x]), set()).add(x)
    return sorted((frozenset(c) for c in classes.values()), key=lambda c: min(c))


def orbits(gq: GQuiver) -> tuple[list[frozenset[str]], list[frozenset[str]]]:
    """Vertex and arrow orbit partitions under the generated group."""
    gens = gq.generator_maps()
    vorbs = _orbit_partition(sorted(gq.quiver.vertices), [v for v, _ in gens])
    aorbs = _orbit_partition(sorted(gq.quiver.arrow_names()), [a for _, a in gens])
    return vorbs, aorbs


def quotient(gq: GQuiver) -> Quiver:
    """Quiver of orbits; endpoints are the orbits of any representative."""
    vorbs, aorbs = orbits(gq)
    vname = {}
    for orb in vorbs:
        label = "|".join(sorted(orb))
        for v in orb:
            vname[v] = label
    am = gq.quiver.arrow_map()
    arrows = []
    for orb in aorbs:
        rep = min(orb)
        src, tgt = am[rep]
        arrows.append(("|".join(sorted(orb)), vname[src], vname[tgt]))
    return quiver({vname[v] for v in gq.quiver.vertices}, arrows)


def restrict_gquiver(gq: GQuiver, vertex_set, arrow_names=None) -> GQuiver:
    """Invariant subquiver on the given vertex set (and optional arrow subset)."""
    keep_v = frozenset(vertex_set)
    am = gq.quiver.arrow_map()
    if arrow_names is None:
        keep_a = {n for n, (s, t) in am.items() if s in keep_v and t in keep_v}
    else:
        keep_a = set(arrow_names)
        for n in keep_a:
            s, t = am[n]
            if s not in keep_v or t not in keep_v:
                raise QuiverError(f"arrow {n!r} dangles outside the vertex set")
    gens = []
    for vmap, amap in gq.generator_maps():
        for v in keep_v:
            if vmap.get(v, v) not in keep_v:
                raise QuiverError("vertex set is not invariant under the action")
        for a in keep_a:
            if amap.get(a, a) not in keep_a:
                raise QuiverError("arrow set is not invariant under the action")
        gens.append(
            (
                {v: vmap[v] for v in keep_v if v in vmap},
                {a: amap[a] for a in keep_a if a in amap},
            )
        )
    sub = Quiver(keep_v, tuple(sorted((n, am[n][0], am[n][1]) for n in keep_a)))
    return GQuiver(sub, GroupAction.from_maps(gens))


@dataclass(frozen=True)
class QuiverFiltration:
    """Nested invariant subquivers over integer orbit-cardinality criticals."""

    criticals: tuple[float, ...]
    levels: tuple[GQuiver, ...]


def orbit_filtration(gq: GQuiver) -> QuiverFiltration:
    """Filtration by orbit cardinality: a vertex enters at the size of its
    orbit, an arrow once its own orbit and both endpoint orbits have entered."""
    vorbs, aorbs = orbits(gq)
    ventry: dict[str, int] = {}
    for orb in vorbs:
        for v in orb:
            ventry[v] = len(orb)
    am = gq.quiver.arrow_map()
    aentry: dict[str, int] = {}
    for orb in aorbs:
        for a in orb:
            src, tgt = am[a]
            aentry[a] = max(len(orb), ventry[src], ventry[tgt])
    values = sorted(set(ventry.values()) | set(aentry.values()))
    levels = []
    for c in values:
        keep_v = {v for v, e in ventry.items() if e <= c}
        keep_a = {a for a, e in aentry.items() if e <= c}
        levels.append(restrict_gquiver(gq, keep_v, keep_a))
    return QuiverFiltration(tuple(float(c) for c in values), tuple(levels))


def _weak_components(q: Quiver) -> list[frozenset[str]]:
    adj: dict[str, set[str]] = {v: set() for v in q.vertices}
    for _, src, tgt in q.arrows:
        adj[src].add(tgt)
        adj[tgt].add(src)
    seen: set[str] = set()
    comps = []
    for v in sorted(q.vertices):
        if v in seen:
            continue
        comp = {v}
        queue = [v]
        while queue:
            u = queue.pop()
            for w in adj[u]:
                if w not in comp:
                    comp.add(w)
                    queue.append(w)
        seen |= comp
        comps.append(frozenset(comp))
    return comps


def is_gq_connected(gq: GQuiver) -> bool:
    """Nonempty, and the group permutes the weak components transitively."""
    comps = _weak_components(gq.quiver)
    if not comps:
        return False
    comp_of = {}
    for i, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = i
    uf = UnionFind(len(comps))
    for vmap, _ in gq.generator_maps():
        for v in gq.quiver.vertices:
            uf.union(comp_of[v], comp_of[vmap.get(v, v)])
    return uf.count == 1


@dataclass(frozen=True)
class EquivariantClass:
    """Deletion class for equivariant connectivity; fewer than k units may go."""

    kind: str
    k: int = 2

    def __post_init__(self):
        if self.kind not in EQUIVARIANT_KINDS:
            raise QuiverError(f"unknown equivariant class {self.kind!r}")
        if self.k < 1 or int(self.k) != self.k:
            raise QuiverError(f"k must be a positive integer, got {self.k!r}")

    def label(self) -> str:
        if self.kind == "isomorphisms":
            return "isomorphisms"
        return f"{self.kind}:{self.k}"


def _deletion_units(gq: GQuiver, cls: EquivariantClass) -> list[frozenset[str]]:
    vorbs, _ = orbits(gq)
    if cls.kind == "orbit_deletion":
        return vorbs
    return [orb for orb in vorbs if len(orb) == 1]


def is_equivariantly_connected(gq: GQuiver, cls: EquivariantClass) -> bool:
    """Every deletion of fewer than k units leaves a connected G-quiver."""
    if not is_gq_connected(gq):
        return False
    if cls.kind == "isomorphisms" or cls.k == 1:
        return True
    units = _deletion_units(gq, cls)
    for r in range(1, cls.k):
        for combo in combinations(units, r):
            dropped = set().union(*combo)
            rest = restrict_gquiver(gq, gq.quiver.vertices - dropped)
            if not is_gq_connected(rest):
                return False
    return True


def gq_components(gq: GQuiver, cls: EquivariantClass, orbit_cap: int = 16) -> list[GQuiver]:
    """Maximal invariant subquivers that are connected for the deletion class.

    Maximal components are induced on invariant vertex sets, so candidates
    are unions of vertex orbits; for the isomorphisms class the orbits of
    the weak components are computed directly.
    """
    if gq.quiver.vertices == frozenset():
        return []
    if cls.kind == "isomorphisms" or cls.k == 1:
        comps = _weak_components(gq.quiver)
        comp_of = {}
        for i, comp in enumerate(comps):
            for v in comp:
                comp_of[v] = i
        uf = UnionFind(len(comps))
        for vmap, _ in gq.generator_maps():
            for v in gq.quiver.vertices:
                uf.union(comp_of[v], comp_of[vmap.get(v, v)])
        classes: dict[int, set[str]] = {}
        for i, comp in enumerate(comps):
            classes.setdefault(uf.find(i), set()).update(comp)
        keep = sorted(classes.values(), key=lambda s: min(s))
        return [restrict_gquiver(gq, s) for s in keep]
    vorbs, _ = orbits(gq)
    if len(vorbs) > orbit_cap:
        raise CapExceeded(f"component search limited to {orbit_cap} vertex orbits")
    candidates: list[frozenset[str]] = []
    for r in range(1, len(vorbs) + 1):
        for combo in combinations(vorbs, r):
            vs = frozenset().union(*combo)
            sub = restrict_gquiver(gq, vs)
            if is_equivariantly_connected(sub, cls):
                candidates.append(vs)
    ordered = sorted(candidates, key=lambda s: (-len(s), tuple(sorted(s))))
    keep: list[frozenset[str]] = []
    for s in ordered:
        if not any(s <= t for t in keep):
            keep.append(s)
    return [restrict_gquiver(gq, s) for s in sorted(keep, key=lambda s: tuple(sorted(s)))]


def gq_persistence_function(gq: GQuiver, cls: EquivariantClass) -> PersistenceFunction | None:
    """Persistence of the orbit filtration; None for the empty quiver."""
    if not gq.quiver.vertices:
        return None
    filt = orbit_filtration(gq)
    comps = [gq_components(level, cls) for level in filt.levels]

    def contains(d: GQuiver, c: GQuiver) -> bool:
        return (
            d.quiver.vertices <= c.quiver.vertices
            and d.quiver.arrow_names() <= c.quiver.arrow_names()
        )

    return tabulate_persistence(filt.criticals, comps, contains)


def gq_persistence(gq: GQuiver, cls: EquivariantClass) -> Diagram:
    from .persistence import extract_diagram

    pf = gq_persistence_function(gq, cls)
    if pf is None:
        return diagram([])
    return extract_diagram(pf)


def underlying_weighted_graph(q: Quiver, weight: float = 1.0):
    """Simple graph shadow of a quiver (drop loops, directions, parallels),
    every vertex and edge at the given weight."""
    edges = {}
    explicit = {}
    for _, src, tgt in q.arrows:
        if src == tgt:
            continue
        key = (src, tgt) if src < tgt else (tgt, src)
        edges[key] = weight
    for v in q.vertices:
        if not any(v in e for e in edges):
            explicit[v] = weight
    return weighted_graph(edges, explicit)


def parse_gquiver(text: str) -> GQuiver:
    """Text format: 'v', 'a' records, then one 'g' block per generator with
    'map v <x> <y>' and 'map a <x> <y>' lines.  Unmapped items are fixed."""
    vertices: list[str] = []
    arrows: list[tuple[str, str, str]] = []
    generators: list[tuple[dict[str, str], dict[str, str]]] = []
    current: tuple[dict[str, str], dict[str, str]] | None = None
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "v" and len(parts) == 2:
            vertices.append(parts[1])
        elif parts[0] == "a" and len(parts) == 4:
            arrows.append((parts[1], parts[2], parts[3]))
        elif parts[0] == "g" and len(parts) == 1:
            current = ({}, {})
            generators.append(current)
        elif parts[0] == "map" and len(parts) == 4:
            if current is None:
                raise FormatError("map record before any 'g' generator header", ln)
            kind, x, y = parts[1], parts[2], parts[3]
            if kind == "v":
                current[0][x] = y
            elif kind == "a":
                current[1][x] = y
            else:
                raise FormatError(f"map kind must be 'v' or 'a', got {kind!r}", ln)
        else:
            raise FormatError(f"bad quiver record {line!r}", ln)
    try:
        return gquiver(vertices, arrows, generators)
    except QuiverError as exc:
        raise FormatError(str(exc)) from exc


def serialize_gquiver(gq: GQuiver) -> str:
    lines = [f"v {v}" for v in sorted(gq.quiver.vertices)]
    lines += [f"a {n} {s} {t}" for n, s, t in gq.quiver.arrows]
    for vmap, amap in gq.generator_maps():
        lines.append("g")
        lines += [f"map v {x} {y}" for x, y in sorted(vmap.items())]
        lines += [f"map a {x} {y}" for x, y in sorted(amap.items())]
    return "".join(line + "\n" for line in lines)
