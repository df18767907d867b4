import random

import pytest

from ogrw.boundary import boundary
from ogrw.core import GraphBuilder, GraphMorphism, OpenGraph, Point, check_morphism, is_mono
from ogrw.demo import (
    SIG_BOOL,
    SIG_BOOL_BOX,
    and_rule,
    bare_wire,
    box_loop,
    box_wire,
    circle,
    drop_rule,
    not_rule,
    or_gate,
    value,
)
from ogrw.errors import RuleError
from ogrw.homeo import homeo_rules
from ogrw.rewrite import (
    Matching,
    RewriteSystem,
    apply_rewrite,
    compose_rules_seq,
    extend_rule,
    find_matchings,
    make_rule,
    overlap_from_pairs,
    reverse_rule,
    rewrite,
    rewrites_to,
)

from support import brute_force_embeddings, iso, random_matching


def chain(n, sig=SIG_BOOL, prefix="p"):
    b = GraphBuilder(sig)
    ids = [b.point(f"{prefix}{k}", "B") for k in range(n)]
    for x, y in zip(ids, ids[1:]):
        b.edge(x, y)
    return b.build()


def test_drop_rule_is_valid():
    r = drop_rule()
    assert sorted(r.boundary.points) == ["i", "o"]
    assert r.input_pairs() == [("i", "i")] and r.output_pairs() == [("o", "o")]


def test_identity_rule():
    w = bare_wire()
    r = make_rule(w, w)
    assert r.lhs == r.rhs
    g = or_gate()
    for m in find_matchings(r, g):
        assert iso(apply_rewrite(m), g)


def test_true_and_x_rule_boundary():
    r = and_rule("T", 0)
    assert len(r.boundary.points) == 2
    assert r.input_pairs() == [("x", "x")]
    assert r.output_pairs() == [("o", "o")]


def test_boundary_mismatch():
    with pytest.raises(RuleError) as exc:
        make_rule(bare_wire(), value("T"))
    assert exc.value.code == "BOUNDARY_MISMATCH"


def test_isolated_point_in_rule():
    g = OpenGraph(SIG_BOOL, [Point("z", type="B")])
    with pytest.raises(RuleError) as exc:
        make_rule(g, g)
    assert exc.value.code == "ISOLATED_POINT_IN_RULE"


def test_drop_matches_loop_once():
    ms = find_matchings(drop_rule(), box_loop())
    assert len(ms) == 1
    assert ms[0].morphism.pmap == {"v": "v", "i": "t", "o": "s"}


def test_nothing_matches_empty_graph():
    assert find_matchings(drop_rule(), OpenGraph(SIG_BOOL_BOX)) == []


def test_wire_rule_against_chain():
    w = bare_wire()
    r = make_rule(w, w)
    c = chain(4)
    assert len(find_matchings(r, c)) == len(brute_force_embeddings(w, c)) == 3


def test_matchings_are_monos():
    rng = random.Random(1)
    for _ in range(30):
        m = random_matching(rng)
        if m is None:
            continue
        for found in find_matchings(m.rule, m.host):
            assert is_mono(found.morphism)
            check_morphism(found.morphism)


def test_drop_on_loop_gives_two_point_circle():
    (m,) = find_matchings(drop_rule(), box_loop())
    out = apply_rewrite(m)
    assert iso(out, circle(2, SIG_BOOL_BOX))


def test_first_step_of_f_fed_or_gate():
    g = or_gate("F", None)
    (m,) = find_matchings(not_rule("F"), g)
    out = apply_rewrite(m)
    # the F-value and its negation became a T-value feeding the conjunction
    gens = sorted(out.points[v].gen for v in out.vertices())
    assert gens == ["and", "not", "not", "val_T"]
    (t,) = out.points_with_label(("V", "val_T"))
    e = out.edges[out.out_edges(t)[0]]
    assert out.edges[out.out_edges(e.tgt)[0]].tgt == "g"


def test_rewrites_to():
    drop = RewriteSystem({"drop": drop_rule()})
    assert rewrites_to(box_loop(), circle(2, SIG_BOOL_BOX), drop)
    assert not rewrites_to(or_gate(), or_gate(), RewriteSystem({}))
    assert rewrites_to(circle(4), circle(3), homeo_rules(SIG_BOOL))


def test_reverse_twice_is_identity():
    r = drop_rule()
    rr = reverse_rule(reverse_rule(r))
    assert rr == r and rr.name == r.name
    assert reverse_rule(r).name == "~drop"


def test_reverse_drop_inserts_box():
    rev = reverse_rule(drop_rule())
    w = bare_wire(SIG_BOOL_BOX)
    (m,) = find_matchings(rev, w)
    out = apply_rewrite(m)
    assert iso(out, box_wire(SIG_BOOL_BOX))


def test_reverse_line_rule_expands_chain():
    h = homeo_rules(SIG_BOOL).rules["H_L(B)"]
    rev = reverse_rule(h)
    c = chain(3)
    ms = find_matchings(rev, c)
    assert ms
    for m in ms:
        assert iso(apply_rewrite(m), chain(4))


def test_rewriting_back_with_reverse_rule():
    rng = random.Random(7)
    done = 0
    while done < 30:
        m = random_matching(rng)
        if m is None:
            continue
        done += 1
        res = rewrite(m)
        back = Matching(reverse_rule(m.rule), res.graph, res.rhs_embedding.with_target(res.graph))
        check_morphism(back.morphism)
        assert iso(apply_rewrite(back), m.host)


def test_extend_drop_at_circles_matching():
    (m,) = find_matchings(drop_rule(), box_loop())
    ext = extend_rule(drop_rule(), m)
    assert not ext.boundary.points
    assert iso(ext.lhs, box_loop())
    assert iso(ext.rhs, circle(2, SIG_BOOL_BOX))


def test_extend_at_identity_matching():
    r = drop_rule()
    m = Matching(r, r.lhs, GraphMorphism.identity(r.lhs))
    ext = extend_rule(r, m)
    assert iso(ext.lhs, r.lhs) and iso(ext.rhs, r.rhs)
    assert len(ext.boundary.points) == len(r.boundary.points)


def test_extension_keeps_host_boundary():
    rng = random.Random(3)
    done = 0
    while done < 30:
        m = random_matching(rng)
        if m is None:
            continue
        done += 1
        ext = extend_rule(m.rule, m)
        bd = boundary(m.host)
        assert sorted(ext.lhs.input_points()) == sorted(m.host.input_points())
        assert sorted(ext.rhs.output_points()) == sorted(m.host.output_points())
        assert len(ext.boundary.points) == len(bd.boundary.points)


def test_compose_not_rules():
    r1, r2 = not_rule("F"), not_rule("T")
    # r1's rhs is a T-value (v -> o); it overlaps r2's lhs value vertex and wire
    comp = compose_rules_seq(r1, r2, overlap_from_pairs(r1, r2, [("v", "v"), ("o", "p")]))
    gens = sorted(comp.lhs.points[v].gen for v in comp.lhs.vertices())
    assert gens == ["not", "not", "val_F"]
    assert [comp.rhs.points[v].gen for v in comp.rhs.vertices()] == ["val_F"]
    # against two separate steps on the doubly negated F
    c = GraphBuilder(SIG_BOOL)
    c.vertex("f", "val_F")
    c.vertex("n1", "not")
    c.vertex("n2", "not")
    for p in ("a", "b", "o"):
        c.point(p, "B")
    c.edge("f", "a", src_port=0)
    c.edge("a", "n1", tgt_port=0)
    c.edge("n1", "b", src_port=0)
    c.edge("b", "n2", tgt_port=0)
    c.edge("n2", "o", src_port=0)
    host = c.build()
    (m1,) = find_matchings(r1, host)
    (m2,) = find_matchings(r2, apply_rewrite(m1))
    two = apply_rewrite(m2)
    (m,) = find_matchings(comp, host)
    assert iso(apply_rewrite(m), two)


def test_compose_with_identity_rule():
    r1 = drop_rule()
    ident = make_rule(r1.rhs, r1.rhs)
    comp = compose_rules_seq(r1, ident, overlap_from_pairs(r1, ident, [(p, p) for p in r1.rhs.points]))
    assert iso(comp.lhs, r1.lhs) and iso(comp.rhs, r1.rhs)


def test_system_from_names():
    lib = {"drop": drop_rule()}
    s = RewriteSystem.from_names(["drop", "~drop"], lib)
    assert s.names() == ["drop", "~drop"]
    with pytest.raises(RuleError) as exc:
        RewriteSystem.from_names(["nope"], lib)
    assert exc.value.code == "UNKNOWN_RULE"
    with pytest.raises(RuleError) as exc:
        RewriteSystem.from_names(["drop", "drop"], lib)
    assert exc.value.code == "DUPLICATE_RULE"
