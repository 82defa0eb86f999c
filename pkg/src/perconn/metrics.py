"""Bottleneck distance, natural pseudodistance, and perturbation.

The bottleneck distance is exact: candidate values are the finitely many
pairwise L-infinity costs and diagonal costs, and a binary search over them
uses a bipartite-matching feasibility test.  Cornerpoints at infinity may
only match each other (at the difference of births, optimally in sorted
order); the distance is infinite when the counts of infinite points differ.

The natural pseudodistance between two weighted graphs is the minimum over
isomorphisms of their underlying final graphs of the largest weight
difference across matched vertices and edges.  It is computed by binary
search over candidate thresholds with a backtracking isomorphism search
constrained to that threshold, so the result is the exact minimum.
"""

from __future__ import annotations

import math
import random
from typing import Optional

from .graphs import CapExceeded, WeightedGraph, weighted_graph
from .persistence import Diagram

Point = tuple[float, float]
MatchPair = tuple[Optional[Point], Optional[Point]]


def _expand(d: Diagram) -> tuple[list[Point], list[float]]:
    finite: list[Point] = []
    inf_births: list[float] = []
    for p in d.points:
        for _ in range(p.multiplicity):
            if p.is_infinite:
                inf_births.append(p.birth)
            else:
                finite.append((p.birth, p.death))
    return finite, inf_births


def _pair_cost(p: Point, q: Point) -> float:
    return max(abs(p[0] - q[0]), abs(p[1] - q[1]))


def _diag_cost(p: Point) -> float:
    return (p[1] - p[0]) / 2.0


def _feasible_matching(f1: list[Point], f2: list[Point], h: float) -> list[MatchPair] | None:
    """Perfect matching where points pair up at L-inf cost <= h or retire to
    the diagonal at half persistence <= h; None when infeasible."""
    n1, n2 = len(f1), len(f2)
    size = n1 + n2
    # left nodes: f1 points then diagonal slots for f2; right nodes symmetric

    def allowed(a: int, b: int) -> bool:
        if a < n1 and b < n2:
            return _pair_cost(f1[a], f2[b]) <= h
        if a < n1:
            return b - n2 == a and _diag_cost(f1[a]) <= h
        if b < n2:
            return a - n1 == b and _diag_cost(f2[b]) <= h
        return True

    match_right: list[int | None] = [None] * size

    def augment(a: int, seen: list[bool]) -> bool:
        for b in range(size):
            if seen[b] or not allowed(a, b):
                continue
            seen[b] = True
            if match_right[b] is None or augment(match_right[b], seen):
                match_right[b] = a
                return True
        return False

    for a in range(size):
        if not augment(a, [False] * size):
            return None
    pairs: list[MatchPair] = []
    for b, a in enumerate(match_right):
        assert a is not None
        left = f1[a] if a < n1 else None
        right = f2[b] if b < n2 else None
        if left is None and right is None:
            continue
        pairs.append((left, right))
    return pairs


def _finite_bottleneck(f1: list[Point], f2: list[Point]) -> tuple[float, list[MatchPair]]:
    if not f1 and not f2:
        return 0.0, []
    cands = {0.0}
    cands.update(_diag_cost(p) for p in f1)
    cands.update(_diag_cost(q) for q in f2)
    cands.update(_pair_cost(p, q) for p in f1 for q in f2)
    ordered = sorted(cands)
    lo, hi = 0, len(ordered) - 1
    best = _feasible_matching(f1, f2, ordered[hi])
    assert best is not None  # the largest candidate always admits a matching
    while lo < hi:
        mid = (lo + hi) // 2
        trial = _feasible_matching(f1, f2, ordered[mid])
        if trial is None:
            lo = mid + 1
        else:
            best = trial
            hi = mid
    return ordered[lo], best


def bottleneck_distance(d1: Diagram, d2: Diagram) -> float:
    """Min over admissible matchings of the max L-infinity cost; inf when the
    numbers of cornerpoints at infinity differ."""
    dist, _ = _bottleneck(d1, d2)
    return dist


def optimal_matching(d1: Diagram, d2: Diagram) -> tuple[float, list[MatchPair]]:
    """Distance together with a witnessing matching.

    Pairs are ((birth, death) or None, (birth, death) or None); None marks
    the diagonal.  Infinite points appear with death == inf.  Raises
    GraphError-compatible ValueError when no admissible matching exists.
    """
    dist, pairs = _bottleneck(d1, d2)
    if pairs is None:
        raise ValueError("no admissible matching: different numbers of infinite cornerpoints")
    return dist, pairs


def _bottleneck(d1: Diagram, d2: Diagram) -> tuple[float, list[MatchPair] | None]:
    f1, i1 = _expand(d1)
    f2, i2 = _expand(d2)
    if len(i1) != len(i2):
        return math.inf, None
    inf_pairs: list[MatchPair] = []
    inf_cost = 0.0
    for b1, b2 in zip(sorted(i1), sorted(i2)):
        inf_cost = max(inf_cost, abs(b1 - b2))
        inf_pairs.append(((b1, math.inf), (b2, math.inf)))
    fin_cost, fin_pairs = _finite_bottleneck(f1, f2)
    return max(inf_cost, fin_cost), inf_pairs + fin_pairs


def _iso_candidates(wg1: WeightedGraph, wg2: WeightedGraph) -> list[float] | None:
    g1, g2 = wg1.graph, wg2.graph
    if len(g1.vertices) != len(g2.vertices) or len(g1.edges) != len(g2.edges):
        return None
    deg1 = sorted(len(n) for n in g1.adjacency().values())
    deg2 = sorted(len(n) for n in g2.adjacency().values())
    if deg1 != deg2:
        return None
    cands = {0.0}
    cands.update(
        abs(w1 - w2) for w1 in wg1.vertex_weights.values() for w2 in wg2.vertex_weights.values()
    )
    cands.update(
        abs(w1 - w2) for w1 in wg1.edge_weights.values() for w2 in wg2.edge_weights.values()
    )
    return sorted(cands)


def _iso_feasible(wg1: WeightedGraph, wg2: WeightedGraph, h: float) -> bool:
    """Is there an isomorphism with every matched weight difference <= h?"""
    g1, g2 = wg1.graph, wg2.graph
    adj1, adj2 = g1.adjacency(), g2.adjacency()
    vw1, vw2 = wg1.vertex_weights, wg2.vertex_weights
    ew1, ew2 = wg1.edge_weights, wg2.edge_weights
    if not g1.vertices:
        return True

    # visit order: BFS from high-degree seeds so adjacency constraints bind early
    order: list[str] = []
    seen: set[str] = set()
    for seed in sorted(g1.vertices, key=lambda v: (-len(adj1[v]), v)):
        if seed in seen:
            continue
        queue = [seed]
        seen.add(seed)
        while queue:
            u = queue.pop(0)
            order.append(u)
            for w in sorted(adj1[u], key=lambda v: (-len(adj1[v]), v)):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)

    candidates = {
        u: [
            v
            for v in sorted(g2.vertices)
            if len(adj2[v]) == len(adj1[u]) and abs(vw1[u] - vw2[v]) <= h
        ]
        for u in order
    }
    if any(not c for c in candidates.values()):
        return False
    mapping: dict[str, str] = {}
    used: set[str] = set()

    def edge_w(ew, a, b):
        return ew[(a, b) if a < b else (b, a)]

    def extend(pos: int) -> bool:
        if pos == len(order):
            return True
        u = order[pos]
        for v in candidates[u]:
            if v in used:
                continue
            ok = True
            for u2, v2 in mapping.items():
                e1 = u2 in adj1[u]
                if e1 != (v2 in adj2[v]):
                    ok = False
                    break
                if e1 and abs(edge_w(ew1, u, u2) - edge_w(ew2, v, v2)) > h:
                    ok = False
                    break
            if not ok:
                continue
            mapping[u] = v
            used.add(v)
            if extend(pos + 1):
                return True
            del mapping[u]
            used.remove(v)
        return False

    return extend(0)


def natural_pseudodistance(wg1: WeightedGraph, wg2: WeightedGraph, vertex_cap: int = 12) -> float:
    """Exact min over final-graph isomorphisms of the max weight difference.

    Returns inf when the underlying graphs are not isomorphic.  Raises
    CapExceeded when either graph has more than ``vertex_cap`` vertices.
    """
    n1, n2 = len(wg1.graph.vertices), len(wg2.graph.vertices)
    if n1 > vertex_cap or n2 > vertex_cap:
        raise CapExceeded(
            f"pseudodistance limited to {vertex_cap} vertices, got {max(n1, n2)}"
        )
    cands = _iso_candidates(wg1, wg2)
    if cands is None:
        return math.inf
    if not _iso_feasible(wg1, wg2, cands[-1]):
        return math.inf
    lo, hi = 0, len(cands) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if _iso_feasible(wg1, wg2, cands[mid]):
            hi = mid
        else:
            lo = mid + 1
    return cands[lo]


def perturb(wg: WeightedGraph, epsilon: float, seed: int) -> WeightedGraph:
    """Same graph with every weight moved by an independent uniform offset in
    [-epsilon, epsilon]; derived vertex weights are recomputed, explicit ones
    are clamped so they stay below the new incident minimum."""
    if epsilon < 0:
        raise ValueError("epsilon must be nonnegative")
    rng = random.Random(seed)
    new_edges = {e: wg.edge_weights[e] + rng.uniform(-epsilon, epsilon) for e in sorted(wg.edge_weights)}
    new_explicit: dict[str, float] = {}
    adj_min: dict[str, float] = {}
    for (u, v), w in new_edges.items():
        for x in (u, v):
            if x not in adj_min or w < adj_min[x]:
                adj_min[x] = w
    for v in sorted(wg.explicit):
        w = wg.vertex_weights[v] + rng.uniform(-epsilon, epsilon)
        if v in adj_min:
            w = min(w, adj_min[v])
        new_explicit[v] = w
    return weighted_graph(new_edges, new_explicit)
