import math
import random

import pytest

import perconn as pc
import oracles
from corpus import random_diagram, random_weighted_graph, relabeled_copy


def test_identity_matching_is_zero():
    d = pc.diagram([pc.Cornerpoint(1.0, 2.0), pc.Cornerpoint(0.0, math.inf)])
    assert pc.bottleneck_distance(d, d) == 0.0


def test_diagonal_matching():
    d1 = pc.diagram([pc.Cornerpoint(1.0, 2.0)])
    assert pc.bottleneck_distance(d1, pc.diagram([])) == 0.5


def test_direct_match_beats_diagonal():
    d1 = pc.diagram([pc.Cornerpoint(1.0, 2.0)])
    d2 = pc.diagram([pc.Cornerpoint(1.0, 2.5)])
    assert pc.bottleneck_distance(d1, d2) == 0.5


def test_mismatched_infinite_points_is_infinite():
    d1 = pc.diagram([pc.Cornerpoint(1.0, math.inf)])
    d2 = pc.diagram([pc.Cornerpoint(1.0, math.inf, 2)])
    assert math.isinf(pc.bottleneck_distance(d1, d2))
    with pytest.raises(ValueError):
        pc.optimal_matching(d1, d2)


def test_infinite_points_match_on_births():
    d1 = pc.diagram([pc.Cornerpoint(0.0, math.inf), pc.Cornerpoint(5.0, math.inf)])
    d2 = pc.diagram([pc.Cornerpoint(0.25, math.inf), pc.Cornerpoint(5.5, math.inf)])
    assert pc.bottleneck_distance(d1, d2) == 0.5


def test_bottleneck_oracle_equivalence(seed=61):
    rng = random.Random(seed)
    for _ in range(40):
        d1 = random_diagram(rng, max_proper=3, one_infinite=rng.random() < 0.7)
        d2 = random_diagram(rng, max_proper=3, one_infinite=rng.random() < 0.7)
        assert pc.bottleneck_distance(d1, d2) == oracles.oracle_bottleneck(d1, d2)


def test_bottleneck_metric_axioms(seed=67):
    rng = random.Random(seed)
    for _ in range(20):
        ds = [random_diagram(rng, max_proper=3) for _ in range(3)]
        d01 = pc.bottleneck_distance(ds[0], ds[1])
        d10 = pc.bottleneck_distance(ds[1], ds[0])
        assert d01 == d10
        d12 = pc.bottleneck_distance(ds[1], ds[2])
        d02 = pc.bottleneck_distance(ds[0], ds[2])
        assert d02 <= d01 + d12 + 1e-12
        assert pc.bottleneck_distance(ds[0], ds[0]) == 0.0


def test_optimal_matching_structure():
    d1 = pc.diagram([pc.Cornerpoint(0.0, math.inf), pc.Cornerpoint(1.0, 2.0)])
    d2 = pc.diagram([pc.Cornerpoint(0.0, math.inf)])
    dist, pairs = pc.optimal_matching(d1, d2)
    assert dist == 0.5
    diagonal = [p for p, q in pairs if q is None]
    assert diagonal == [(1.0, 2.0)]


def test_pseudodistance_identity_and_non_isomorphic():
    w = pc.parse_weighted_graph("e a b 1\ne b c 2\n")
    assert pc.natural_pseudodistance(w, w) == 0.0
    tri = pc.parse_weighted_graph("e a b 1\ne b c 1\ne a c 1\n")
    path = pc.parse_weighted_graph("e a b 1\ne b c 1\n")
    assert math.isinf(pc.natural_pseudodistance(tri, path))


def test_pseudodistance_shifted_weight():
    w1 = pc.parse_weighted_graph("e a b 1\ne b c 2\n")
    w2 = pc.parse_weighted_graph("e a b 1.3\ne b c 2\n")
    assert abs(pc.natural_pseudodistance(w1, w2) - 0.3) < 1e-12


def test_pseudodistance_cap():
    edges = {(f"v{i:02d}", f"v{i+1:02d}"): 1.0 for i in range(13)}
    big = pc.weighted_graph(edges)
    with pytest.raises(pc.CapExceeded):
        pc.natural_pseudodistance(big, big)


def test_pseudodistance_oracle_equivalence(seed=71):
    rng = random.Random(seed)
    for _ in range(10):
        w1 = random_weighted_graph(rng, max_vertices=6, min_vertices=2)
        if rng.random() < 0.5:
            w2 = pc.perturb(relabeled_copy(rng, w1), 0.4, rng.randint(0, 10**6))
        else:
            w2 = random_weighted_graph(rng, max_vertices=6, min_vertices=2)
        assert pc.natural_pseudodistance(w1, w2) == oracles.oracle_pseudodistance(w1, w2)


def test_pseudodistance_is_a_pseudometric(seed=73):
    rng = random.Random(seed)
    for _ in range(6):
        base = random_weighted_graph(rng, max_vertices=6, min_vertices=3)
        triple = [
            pc.perturb(relabeled_copy(rng, base), 0.3, rng.randint(0, 10**6))
            for _ in range(3)
        ]
        d01 = pc.natural_pseudodistance(triple[0], triple[1])
        d10 = pc.natural_pseudodistance(triple[1], triple[0])
        assert abs(d01 - d10) < 1e-12
        d12 = pc.natural_pseudodistance(triple[1], triple[2])
        d02 = pc.natural_pseudodistance(triple[0], triple[2])
        assert d02 <= d01 + d12 + 1e-12


def test_perturb_zero_is_identity():
    w = pc.parse_weighted_graph("v z 0.5\ne a b 1\ne b c 2\n")
    assert pc.perturb(w, 0.0, 99) == w


def test_perturb_moves_weights_at_most_epsilon(seed=79):
    rng = random.Random(seed)
    for _ in range(10):
        w = random_weighted_graph(rng, max_vertices=8)
        eps = rng.choice([0.01, 0.1, 0.5])
        moved = pc.perturb(w, eps, rng.randint(0, 10**6))
        assert moved.graph == w.graph
        for e, wt in w.edge_weights.items():
            assert abs(moved.edge_weights[e] - wt) <= eps
        for v, wt in w.vertex_weights.items():
            assert abs(moved.vertex_weights[v] - wt) <= eps + 1e-15


def test_perturb_is_reproducible():
    w = pc.parse_weighted_graph("e a b 1\ne b c 2\n")
    assert pc.perturb(w, 0.2, 1234) == pc.perturb(w, 0.2, 1234)
    assert pc.perturb(w, 0.2, 1234) != pc.perturb(w, 0.2, 4321)
