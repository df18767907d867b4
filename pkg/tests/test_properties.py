"""Invariants checked over seeded random instances."""
import random

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from ogrw.boundary import boundary, subtract
from ogrw.core import GraphMorphism, check_morphism, find_embeddings, is_mono, validate_graph
from ogrw.cospan import Cospan, Verdict, compose, equivalent, identity, rewrite_cospan, tensor, trace
from ogrw.homeo import homeo_rules, is_normal, normalize, normalize_with_steps, subdivide
from ogrw.randgen import SIG_ONE, SIG_TWO, embedded_subgraph, random_cospan, random_graph, random_rule_for, random_valuation, relabel
from ogrw.rewrite import Matching, apply_rewrite, find_matchings
from ogrw.semantics import check_rule_sound, evaluate

from support import brute_force_embeddings, disjoint_union, expected_normal_size, iso, random_matching, random_plug_pairs, plug_along

seeds = st.integers(min_value=0, max_value=2**32 - 1)
sigs = st.sampled_from([SIG_ONE, SIG_TWO])
fast = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])


def graph_from(seed, sig, **kw):
    rng = random.Random(seed)
    defaults = dict(n_vertices=rng.randint(0, 4), n_bare=rng.randint(0, 1), n_circles=rng.randint(0, 1), n_subdiv=rng.randint(0, 3))
    defaults.update(kw)
    return rng, random_graph(rng, sig, **defaults)


@fast
@given(seeds, sigs)
def test_generated_graphs_are_valid(seed, sig):
    _, g = graph_from(seed, sig)
    validate_graph(g)
    for p in g.edge_points():
        assert len(g.in_edges(p)) <= 1 and len(g.out_edges(p)) <= 1
    for v in g.vertices():
        gen = g.points[v].gen
        # every port of every vertex is used exactly once
        assert sorted(g.edges[e].tgt_port for e in g.in_edges(v)) == list(range(len(sig.dom(gen))))
        assert sorted(g.edges[e].src_port for e in g.out_edges(v)) == list(range(len(sig.cod(gen))))
        for e in g.in_edges(v) + g.out_edges(v):
            other = g.edges[e].src if g.edges[e].tgt == v else g.edges[e].tgt
            assert not g.is_vertex(other)


@fast
@given(seeds, sigs)
def test_isomorphism_is_an_equivalence(seed, sig):
    rng, g = graph_from(seed, sig)
    h, _, _ = relabel(rng, g, "h")
    k, _, _ = relabel(rng, h, "k")
    assert iso(g, g)
    assert iso(g, h) and iso(h, g)
    assert iso(h, k) and iso(g, k)


@fast
@given(seeds)
def test_isomorphism_detects_a_change(seed):
    rng, g = graph_from(seed, SIG_ONE, n_vertices=3)
    if not g.edges:
        return
    h = subdivide(g, rng.choice(sorted(g.edges)))
    assert not iso(g, h)


@fast
@given(seeds, sigs)
def test_morphisms_compose(seed, sig):
    rng, g = graph_from(seed, sig, n_vertices=3)
    m = embedded_subgraph(rng, g, steps=2)
    if m is None:
        return
    h, pmap, emap = relabel(rng, g, "h")
    to_h = GraphMorphism(g, h, pmap, emap)
    check_morphism(m)
    check_morphism(to_h)
    both = m.then(to_h)
    check_morphism(both)
    assert is_mono(both)
    assert both.source is m.source and both.target is h


@fast
@given(seeds)
def test_is_mono_matches_injectivity(seed):
    rng, g = graph_from(seed, SIG_ONE, n_vertices=2, n_bare=1)
    m = embedded_subgraph(rng, g, steps=1)
    if m is None:
        return
    assert is_mono(m)
    pts = sorted(m.pmap)
    if len(pts) < 2:
        return
    # collapse two points with the same label: no longer injective
    a = pts[0]
    same = [b for b in pts[1:] if m.source.points[b].label == m.source.points[a].label]
    if not same:
        return
    pm = dict(m.pmap)
    pm[same[0]] = pm[a]
    folded = GraphMorphism(m.source, m.target, pm, m.emap)
    exhaustive = len(set(pm.values())) == len(pm) and len(set(m.emap.values())) == len(m.emap)
    assert is_mono(folded) == exhaustive


@fast
@given(seeds, seeds)
def test_disjoint_union_is_symmetric(s1, s2):
    _, g = graph_from(s1, SIG_TWO)
    _, h = graph_from(s2, SIG_TWO)
    h, _, _ = relabel(random.Random(s2), h, "h")
    gh, _, _ = disjoint_union(g, h)
    hg, _, _ = disjoint_union(h, g)
    assert iso(gh, hg)
    assert len(gh.points) == len(g.points) + len(h.points)


@fast
@given(seeds, seeds)
def test_plug_is_symmetric_and_valid(s1, s2):
    rng, g = graph_from(s1, SIG_ONE, n_circles=0)
    _, h = graph_from(s2, SIG_ONE, n_circles=0)
    h, _, _ = relabel(rng, h, "h")
    pairs = random_plug_pairs(rng, g, h)
    gh, _, _ = plug_along(g, h, pairs)
    hg, _, _ = plug_along(h, g, [(b, a) for a, b in pairs])
    validate_graph(gh)
    assert iso(gh, hg)
    assert len(gh.points) == len(g.points) + len(h.points) - len(pairs)


@fast
@given(seeds, sigs)
def test_subtraction_round_trip(seed, sig):
    rng, g = graph_from(seed, sig, n_vertices=1 + seed % 4)
    m = embedded_subgraph(rng, g, steps=rng.randint(0, 3))
    if m is None:
        return
    sub = subtract(m)
    validate_graph(sub.graph)
    assert iso(sub.plug_back(), g)
    assert set(boundary(m.source).boundary.points) <= set(sub.coboundary.pmap)


@fast
@given(seeds, sigs, seeds)
def test_homeo_normalization_confluent_and_terminating(seed, sig, order_seed):
    _, g = graph_from(seed, sig)
    n1, steps1 = normalize_with_steps(g, random.Random(order_seed))
    n2, steps2 = normalize_with_steps(g, random.Random(order_seed + 1))
    assert iso(n1, n2)
    assert steps1 == steps2 <= len(g.edge_points())
    assert is_normal(n1)
    assert len(n1.edge_points()) == expected_normal_size(g)
    assert normalize(n1) is n1 or iso(normalize(n1), n1)


@fast
@given(seeds)
def test_subdivision_does_not_change_the_diagram(seed):
    rng = random.Random(seed)
    c = random_cospan(rng, SIG_ONE, n_vertices=rng.randint(0, 3), n_subdiv=rng.randint(0, 2))
    g = c.middle
    if not g.edges:
        return
    for _ in range(rng.randint(1, 3)):
        g = subdivide(g, rng.choice(sorted(g.edges)))
    assert equivalent(c, Cospan(g)) is Verdict.EQUIVALENT


@fast
@given(seeds)
def test_composition_respects_words(seed):
    rng = random.Random(seed)
    f = random_cospan(rng, SIG_ONE, prefix="f")
    g = random_cospan(rng, SIG_ONE, n_in=len(f.cod), prefix="g")
    fg = compose(f, g)
    assert fg.dom == f.dom and fg.cod == g.cod
    validate_graph(fg.middle)
    t = tensor(f, g)
    assert t.dom == f.dom + g.dom and t.cod == f.cod + g.cod
    assert equivalent(compose(identity(SIG_ONE, f.dom), f), f) is Verdict.EQUIVALENT


@fast
@given(seeds)
def test_evaluation_invariant_under_relabel_and_normalization(seed):
    rng = random.Random(seed)
    c = random_cospan(rng, SIG_ONE, n_vertices=rng.randint(0, 3), n_subdiv=rng.randint(0, 3))
    v = random_valuation(rng, SIG_ONE, max_dim=2)
    base = evaluate(c, v)
    h, _, _ = relabel(rng, c.middle, "r")
    assert evaluate(Cospan(h), v) == base
    assert evaluate(c.normalized(), v) == base


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_matcher_agrees_with_brute_force(seed):
    rng, g = graph_from(seed, SIG_ONE, n_vertices=1 + seed % 2, n_circles=0, n_subdiv=1)
    if len(g.points) > 8:
        return
    m = embedded_subgraph(rng, g, steps=1)
    if m is None:
        return
    pattern = m.source
    found = {(tuple(sorted(e.pmap.items())), tuple(sorted(e.emap.items()))) for e in find_embeddings(pattern, g)}
    assert found == brute_force_embeddings(pattern, g)


@fast
@given(seeds)
def test_rewriting_keeps_boundary_and_validity(seed):
    rng = random.Random(seed)
    m = random_matching(rng)
    if m is None:
        return
    out = apply_rewrite(m)
    validate_graph(out)
    assert len(out.input_points()) == len(m.host.input_points())
    assert len(out.output_points()) == len(m.host.output_points())


@fast
@given(seeds)
def test_subtraction_commutes_with_plugging(seed):
    rng = random.Random(seed)
    m = random_matching(rng, n_vertices=rng.randint(1, 4))
    if m is None:
        return
    g = m.host
    h = random_graph(rng, SIG_ONE, rng.randint(1, 3), n_bare=rng.randint(0, 1), prefix="h")
    pairs = random_plug_pairs(rng, g, h)
    # plug then subtract the induced copy of K
    plugged, inj1, _ = plug_along(g, h, pairs)
    first = subtract(m.morphism.then(inj1)).graph
    # subtract then plug along the same ids, which survive in the complement
    second, _, _ = plug_along(subtract(m.morphism).graph, h, pairs)
    assert iso(first, second)


@fast
@given(seeds, seeds)
def test_plugging_only_fuses_apex_points(s1, s2):
    rng, g = graph_from(s1, SIG_ONE, n_circles=0, isolated=0)
    _, h = graph_from(s2, SIG_ONE, n_circles=0)
    h, _, _ = relabel(rng, h, "h")
    pairs = random_plug_pairs(rng, g, h)
    gh, inj1, inj2 = plug_along(g, h, pairs)
    fused_out = {inj1.pmap[a] for a, _ in pairs}
    ins = {inj1.pmap[p] for p in g.input_points()} | {inj2.pmap[p] for p in h.input_points() if p not in {b for _, b in pairs}}
    outs = {inj1.pmap[p] for p in g.output_points() if p not in {a for a, _ in pairs}} | {inj2.pmap[p] for p in h.output_points()}
    assert set(gh.input_points()) == ins
    assert set(gh.output_points()) == outs
    assert not fused_out & (set(gh.input_points()) | set(gh.output_points()))


@fast
@given(seeds)
def test_equivalence_without_rules_is_an_equivalence(seed):
    rng = random.Random(seed)
    pool = [random_cospan(rng, SIG_ONE, 1, 1, n_vertices=rng.randint(0, 2), n_subdiv=rng.randint(0, 2), prefix=f"c{k}") for k in range(4)]
    pool.append(Cospan(subdivide(pool[0].middle, sorted(pool[0].middle.edges)[0])))
    eq = {(i, j): equivalent(a, b) is Verdict.EQUIVALENT for i, a in enumerate(pool) for j, b in enumerate(pool)}
    n = len(pool)
    for i in range(n):
        assert eq[i, i]
        for j in range(n):
            assert eq[i, j] == eq[j, i]
            for k in range(n):
                assert not (eq[i, j] and eq[j, k]) or eq[i, k]


@fast
@given(seeds)
def test_trace_and_rewrite_keep_words(seed):
    rng = random.Random(seed)
    c = random_cospan(rng, SIG_ONE, rng.randint(1, 3), rng.randint(1, 3), n_vertices=rng.randint(0, 3))
    k = rng.randint(0, min(len(c.dom), len(c.cod)))
    t = trace(c, k)
    assert t.dom == c.dom[: len(c.dom) - k] and t.cod == c.cod[: len(c.cod) - k]
    emb = embedded_subgraph(rng, c.middle, rng.randint(0, 2))
    if emb is None:
        return
    rule = random_rule_for(rng, emb.source, rng.randint(0, 2))
    out = rewrite_cospan(rule, c, Matching(rule, c.middle, emb))
    assert out.dom == c.dom and out.cod == c.cod
    validate_graph(out.middle)


@fast
@given(seeds)
def test_sound_rules_preserve_value(seed):
    rng = random.Random(seed)
    c = random_cospan(rng, SIG_ONE, n_vertices=rng.randint(0, 3), n_subdiv=rng.randint(1, 4))
    v = random_valuation(rng, SIG_ONE, max_dim=2)
    base = evaluate(c, v)
    for r in homeo_rules(SIG_ONE).rules.values():
        assert check_rule_sound(r, v)
        for m in find_matchings(r, c.middle)[:2]:
            assert evaluate(rewrite_cospan(r, c, m), v) == base
