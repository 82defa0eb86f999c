import random

import pytest

import perconn as pc
import oracles
from corpus import random_gquiver

ISO = pc.EquivariantClass("isomorphisms")


def swap_cycle():
    return pc.gquiver(
        ["a", "b"],
        [("e1", "a", "b"), ("e2", "b", "a")],
        [({"a": "b", "b": "a"}, {"e1": "e2", "e2": "e1"})],
    )


def test_orbits_trivial_group():
    gq = pc.gquiver(["a", "b"], [("e1", "a", "b")], [])
    vorbs, aorbs = pc.orbits(gq)
    assert [sorted(o) for o in vorbs] == [["a"], ["b"]]
    assert [sorted(o) for o in aorbs] == [["e1"]]


def test_orbits_of_swapped_cycle():
    vorbs, aorbs = pc.orbits(swap_cycle())
    assert [sorted(o) for o in vorbs] == [["a", "b"]]
    assert [sorted(o) for o in aorbs] == [["e1", "e2"]]


def test_fixed_point_orbit():
    gq = pc.gquiver(["a", "b", "z"], [], [({"a": "b", "b": "a"}, {})])
    vorbs, _ = pc.orbits(gq)
    assert [sorted(o) for o in vorbs] == [["a", "b"], ["z"]]


def test_quotient_examples():
    gq = pc.gquiver(["a", "b"], [("e1", "a", "b")], [])
    q = pc.quotient(gq)
    assert len(q.vertices) == 2 and len(q.arrows) == 1
    q2 = pc.quotient(swap_cycle())
    assert len(q2.vertices) == 1 and len(q2.arrows) == 1
    (name, src, tgt) = q2.arrows[0]
    assert src == tgt  # a loop
    # two disjoint arrows swapped by the action collapse to one
    gq3 = pc.gquiver(
        ["a", "b", "c", "d"],
        [("e1", "a", "b"), ("e2", "c", "d")],
        [({"a": "c", "c": "a", "b": "d", "d": "b"}, {"e1": "e2", "e2": "e1"})],
    )
    q3 = pc.quotient(gq3)
    assert len(q3.vertices) == 2 and len(q3.arrows) == 1


def test_generator_must_be_automorphism():
    with pytest.raises(pc.QuiverError):
        pc.gquiver(
            ["a", "b", "c"],
            [("e1", "a", "b")],
            [({"a": "c", "c": "a"}, {})],  # e1 would dangle
        )
    with pytest.raises(pc.QuiverError):
        pc.gquiver(["a", "b"], [], [({"a": "b"}, {})])  # not a permutation


def test_orbit_filtration_examples():
    trivial = pc.gquiver(["a", "b"], [("e1", "a", "b")], [])
    filt = pc.orbit_filtration(trivial)
    assert filt.criticals == (1.0,)
    fixed_plus_pair = pc.gquiver(["x", "p", "q"], [], [({"p": "q", "q": "p"}, {})])
    filt = pc.orbit_filtration(fixed_plus_pair)
    assert filt.criticals == (1.0, 2.0)
    assert sorted(filt.levels[0].quiver.vertices) == ["x"]
    # arrow with endpoint orbits of sizes 1 and 2 and arrow orbit of size 2
    gq = pc.gquiver(
        ["x", "p", "q"],
        [("e1", "x", "p"), ("e2", "x", "q")],
        [({"p": "q", "q": "p"}, {"e1": "e2", "e2": "e1"})],
    )
    filt = pc.orbit_filtration(gq)
    assert filt.criticals == (1.0, 2.0)
    assert not filt.levels[0].quiver.arrows
    assert len(filt.levels[1].quiver.arrows) == 2


def test_components_reduce_to_weak_components_for_trivial_group():
    gq = pc.gquiver(["a", "b", "c"], [("e1", "a", "b")], [])
    comps = pc.gq_components(gq, ISO)
    assert [sorted(c.quiver.vertices) for c in comps] == [["a", "b"], ["c"]]


def test_transitive_action_joins_weak_components():
    gq = pc.gquiver(
        ["a", "b", "c", "d"],
        [("e1", "a", "b"), ("e2", "b", "a"), ("f1", "c", "d"), ("f2", "d", "c")],
        [
            (
                {"a": "c", "c": "a", "b": "d", "d": "b"},
                {"e1": "f1", "f1": "e1", "e2": "f2", "f2": "e2"},
            )
        ],
    )
    comps = pc.gq_components(gq, ISO)
    assert [sorted(c.quiver.vertices) for c in comps] == [["a", "b", "c", "d"]]
    assert pc.is_gq_connected(gq)


def test_fixed_vertex_deletion_splits_at_middle():
    gq = pc.gquiver(["a", "b", "c"], [("e1", "a", "b"), ("e2", "b", "c")], [])
    cls = pc.EquivariantClass("fixed_vertex_deletion", 2)
    comps = pc.gq_components(gq, cls)
    assert [sorted(c.quiver.vertices) for c in comps] == [["a", "b"], ["b", "c"]]


def test_k1_degenerates_to_isomorphisms(seed=107):
    rng = random.Random(seed)
    for _ in range(10):
        gq = random_gquiver(rng, max_vertices=5, max_arrows=5)
        for kind in ("orbit_deletion", "fixed_vertex_deletion"):
            k1 = pc.EquivariantClass(kind, 1)
            assert pc.gq_components(gq, k1) == pc.gq_components(gq, ISO)


def test_empty_quiver_empty_diagram():
    gq = pc.gquiver([], [], [])
    assert pc.gq_persistence(gq, ISO) == pc.diagram([])


def test_trivial_group_matches_graph_components_diagram(seed=109):
    rng = random.Random(seed)
    for _ in range(10):
        gq = random_gquiver(rng, max_vertices=5, max_arrows=5, group="trivial")
        if not gq.quiver.vertices:
            continue
        dq = pc.gq_persistence(gq, ISO)
        wu = pc.underlying_weighted_graph(gq.quiver)
        filt = pc.build_filtration(wu)
        dg = pc.extract_diagram(pc.persistence_function(filt, pc.PropertySpec("components")))
        assert dq == dg


def test_gq_connectedness_matches_splitting_oracle(seed=113):
    rng = random.Random(seed)
    for _ in range(25):
        gq = random_gquiver(rng, max_vertices=5, max_arrows=5)
        assert pc.is_gq_connected(gq) == oracles.oracle_gq_is_connected(gq)


def test_equivariant_union_property(seed=127):
    # F-connected invariant subquivers sharing an F-connected invariant
    # subquiver must have an F-connected union
    rng = random.Random(seed)
    classes = [
        ISO,
        pc.EquivariantClass("orbit_deletion", 2),
        pc.EquivariantClass("fixed_vertex_deletion", 2),
    ]
    for _ in range(10):
        gq = random_gquiver(rng, max_vertices=5, max_arrows=4)
        subs = oracles.invariant_subquivers(gq)
        for cls in classes:
            good = []
            for vs, ar in subs:
                if not vs:
                    continue
                sub = pc.restrict_gquiver(gq, vs, ar)
                if pc.is_equivariantly_connected(sub, cls):
                    good.append((vs, ar))
            for v1, a1 in good:
                for v2, a2 in good:
                    share = any(
                        yv <= v1 and yv <= v2 and ya <= a1 and ya <= a2
                        for yv, ya in good
                    )
                    if not share:
                        continue
                    union = pc.restrict_gquiver(gq, v1 | v2, a1 | a2)
                    assert pc.is_equivariantly_connected(union, cls)


def test_quiver_text_round_trip():
    text = pc.serialize_gquiver(swap_cycle())
    again = pc.parse_gquiver(text)
    assert pc.serialize_gquiver(again) == text


def test_quiver_parse_errors():
    with pytest.raises(pc.FormatError, match="line 1"):
        pc.parse_gquiver("zzz\n")
    with pytest.raises(pc.FormatError):
        pc.parse_gquiver("v a\nmap v a a\n")  # map before generator header
    with pytest.raises(pc.FormatError):
        pc.parse_gquiver("v a\nv b\na e1 a b\ng\nmap v a b\nmap v b a\n")  # e1 dangles
