import random

from ogrw.core import GraphBuilder, OpenGraph, Signature, check_morphism, is_valid
from ogrw.demo import SIG_BOOL, SIG_BOOL_BOX, bare_wire, box_loop, circle, drop_rule, lambda_f, not_not, or_gate
from ogrw.homeo import (
    contract_point,
    expand,
    homeo_rules,
    is_normal,
    match_modulo_homeo,
    normalize,
    normalize_with_steps,
    removable_points,
    subdivide,
    wires,
)
from ogrw.randgen import SIG_TWO, random_graph
from ogrw.rewrite import apply_rewrite, find_matchings, make_rule

from support import brute_wire_count, expected_normal_size, iso

BOOL_ARITIES = {"and": (2, 1), "not": (1, 1), "copy": (1, 2), "ignore": (1, 0), "val_T": (0, 1), "val_F": (0, 1)}


def chain(n, prefix="p"):
    b = GraphBuilder(SIG_BOOL)
    ids = [b.point(f"{prefix}{k}", "B") for k in range(n)]
    for x, y in zip(ids, ids[1:]):
        b.edge(x, y)
    return b.build()


def not_wire():
    b = GraphBuilder(SIG_BOOL)
    b.point("i", "B")
    b.point("o", "B")
    b.vertex("v", "not")
    b.edge("i", "v", tgt_port=0)
    b.edge("v", "o", src_port=0)
    return b.build()


def test_homeo_rule_count_bool():
    rules = homeo_rules(SIG_BOOL)
    # one line rule and one circle rule per object, one rule per port
    assert len(rules) == 2 + sum(n + m for n, m in BOOL_ARITIES.values()) == 13


def test_homeo_rules_without_generators():
    assert sorted(homeo_rules(Signature(("X",))).names()) == ["H_C(X)", "H_L(X)"]


def test_line_rule_never_matches_two_point_wire():
    h = homeo_rules(SIG_BOOL).rules["H_L(B)"]
    assert len(h.lhs.points) == 3
    assert find_matchings(h, bare_wire()) == []


def test_homeo_rules_are_valid_contractions():
    for name, r in homeo_rules(SIG_BOOL):
        assert len(r.lhs.edge_points()) == len(r.rhs.edge_points()) + 1, name
        assert iso(normalize(r.lhs), normalize(r.rhs)), name


def test_normalize_two_circle():
    assert iso(normalize(circle(2)), circle(1))


def test_normalize_fixes_normal_graphs():
    for g in (or_gate(), not_wire(), circle(1), bare_wire()):
        assert is_normal(g)
        assert normalize(g) == g


def test_long_chain_between_vertices():
    sig = Signature.untyped({"s": (0, 1), "t": (1, 0)})
    b = GraphBuilder(sig)
    b.vertex("a", "s")
    b.vertex("z", "t")
    pts = [b.point(f"m{k}", "*") for k in range(7)]
    b.edge("a", pts[0], src_port=0)
    for x, y in zip(pts, pts[1:]):
        b.edge(x, y)
    b.edge(pts[-1], "z", tgt_port=0)
    g = b.build()
    forms = []
    for seed in range(10):
        nf, steps = normalize_with_steps(g, random.Random(seed))
        assert len(nf.edge_points()) == 1
        assert steps == 6
        forms.append(nf)
    assert all(iso(forms[0], f) for f in forms)


def test_bare_chain_keeps_two_points():
    nf = normalize(chain(5))
    assert len(nf.edge_points()) == 2
    assert sorted(nf.points) == ["p0", "p4"]


def test_contraction_keeps_boundary_order():
    g = subdivide(not_wire().with_order(["i"], ["o"]), "e0")
    nf = normalize(g)
    assert nf.inputs == ("i",) and nf.outputs == ("o",)


def test_wires():
    assert len(wires(not_wire())) == 2
    (w,) = wires(circle(3))
    assert w.circle and w.start is None and w.end is None
    loop = box_loop()
    assert len(wires(loop)) == brute_wire_count(loop) == 1
    w = wires(or_gate())
    assert len(w) == brute_wire_count(or_gate())


def test_normal_size_matches_wire_shapes():
    rng = random.Random(5)
    for _ in range(60):
        g = random_graph(rng, SIG_TWO, rng.randint(0, 4), rng.randint(0, 2), rng.randint(0, 2), rng.randint(0, 10), isolated=rng.randint(0, 1))
        nf, steps = normalize_with_steps(g)
        assert len(nf.edge_points()) == expected_normal_size(g)
        assert steps == len(g.edge_points()) - len(nf.edge_points())
        assert is_valid(nf) and is_normal(nf)


def test_subdivide_and_expand():
    g = not_wire()
    s = subdivide(g, "e0", "mid")
    assert "mid" in s.points and len(s.edges) == 3
    assert s.edges["e0"].tgt == "mid"
    assert iso(normalize(s), g)
    big = expand(g, "e1", 4)
    assert len(big.edge_points()) == 6
    assert iso(normalize(big), g)


def test_contract_point():
    g = chain(3)
    assert removable_points(g) == ["p1"]
    c = contract_point(g, "p1")
    assert iso(c, chain(2))


def test_drop_modulo_on_one_point_loop():
    loop1 = box_loop(1)
    assert find_matchings(drop_rule(), loop1) == []
    found = match_modulo_homeo(drop_rule(), loop1)
    assert len(found) == 1
    expanded, m = found[0]
    check_morphism(m.morphism)
    assert len(expanded.edge_points()) == 2
    assert iso(normalize(apply_rewrite(m)), circle(1, SIG_BOOL_BOX))


def test_wire_rule_modulo_matches_once_per_wire():
    w = bare_wire()
    r = make_rule(w, w)
    for g in (or_gate(), or_gate("T", "F"), not_not(), lambda_f(), circle(1), not_wire()):
        nf = normalize(g)
        assert len(match_modulo_homeo(r, nf)) == brute_wire_count(nf)


def test_modulo_on_empty_host():
    assert match_modulo_homeo(drop_rule(), OpenGraph(SIG_BOOL_BOX)) == []


def test_modulo_matchings_are_valid():
    rng = random.Random(9)
    for _ in range(30):
        g = normalize(random_graph(rng, SIG_TWO, rng.randint(1, 3), rng.randint(0, 1), rng.randint(0, 1)))
        for name, rule in homeo_rules(SIG_TWO):
            for expanded, m in match_modulo_homeo(rule, g):
                check_morphism(m.morphism)
                assert iso(normalize(expanded), g), name
