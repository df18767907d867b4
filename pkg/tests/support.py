"""Shared helpers and independent oracles for the test-suite."""
from __future__ import annotations

import itertools
import random
import string

import numpy as np

from ogrw.boundary import CoherentSpan, merge, plug
from ogrw.core import GraphMorphism, OpenGraph, Point, find_isomorphism
from ogrw.cospan import Cospan
from ogrw.randgen import SIG_ONE, embedded_subgraph, random_graph, random_rule_for
from ogrw.rewrite import Matching, apply_rewrite, find_matchings
from ogrw.semantics import Valuation


def iso(g: OpenGraph, h: OpenGraph, ordered: bool = False) -> bool:
    return find_isomorphism(g, h, respect_boundary_order=ordered) is not None


def disjoint_union(g: OpenGraph, h: OpenGraph) -> tuple[OpenGraph, GraphMorphism, GraphMorphism]:
    empty = OpenGraph(g.sig)
    return merge(CoherentSpan(empty, GraphMorphism(empty, g, {}, {}), GraphMorphism(empty, h, {}, {})))


def plug_along(g: OpenGraph, h: OpenGraph, pairs: list[tuple[str, str]]) -> tuple[OpenGraph, GraphMorphism, GraphMorphism]:
    """Wire each output ``a`` of g to the input ``b`` of h for ``(a, b)`` in pairs."""
    apex = OpenGraph(g.sig, [Point(f"a{k}", type=g.point_type(a)) for k, (a, _) in enumerate(pairs)])
    left = GraphMorphism(apex, g, {f"a{k}": a for k, (a, _) in enumerate(pairs)}, {})
    right = GraphMorphism(apex, h, {f"a{k}": b for k, (_, b) in enumerate(pairs)}, {})
    return merge(CoherentSpan(apex, left, right))


def random_plug_pairs(rng: random.Random, g: OpenGraph, h: OpenGraph, most: int = 2) -> list[tuple[str, str]]:
    outs = [p for p in g.output_points() if p not in g.isolated_points()]
    ins = [p for p in h.input_points() if p not in h.isolated_points()]
    rng.shuffle(outs)
    rng.shuffle(ins)
    pairs = []
    for a in outs:
        b = next((q for q in ins if h.point_type(q) == g.point_type(a)), None)
        if b is None or len(pairs) >= most:
            continue
        ins.remove(b)
        pairs.append((a, b))
    return pairs


def random_matching(rng: random.Random, sig=SIG_ONE, n_vertices: int = 4, steps: int = 2, rhs_vertices: int = 2, prefix: str = ""):
    """A random host with a random rule matched into it, or None."""
    g = random_graph(rng, sig, n_vertices, n_bare=rng.randint(0, 1), n_subdiv=rng.randint(0, 3), prefix=prefix)
    emb = embedded_subgraph(rng, g, steps, tag=f"{prefix}k")
    if emb is None:
        return None
    rule = random_rule_for(rng, emb.source, rng.randint(0, rhs_vertices), prefix=f"{prefix}r", name="r")
    return Matching(rule, g, emb)


def two_step_results(r1, r2, g: OpenGraph) -> list[OpenGraph]:
    """Every graph reachable by one r1 step followed by one r2 step."""
    out = []
    for m1 in find_matchings(r1, g):
        mid = apply_rewrite(m1)
        for m2 in find_matchings(r2, mid):
            out.append(apply_rewrite(m2))
    return out


# semantics oracle --------------------------------------------------------------

_LETTERS = string.ascii_letters


def einsum_evaluate(c: Cospan, v: Valuation) -> list[int]:
    """Evaluate at the level of edges with numpy.

    Every edge carries its own index; an edge-point with an incoming and an
    outgoing edge contributes a Kronecker delta between them, a circle of
    edge-points is a product of deltas around the loop.  This is a different
    formulation from the wire-level evaluator in the library.
    """
    g = c.middle
    letter = {eid: _LETTERS[k] for k, eid in enumerate(sorted(g.edges))}
    dim = {eid: v.dims[e.type] for eid, e in g.edges.items()}
    operands, subs = [], []
    for vid in sorted(g.vertices()):
        gen = g.points[vid].gen
        t = v.interp[gen]
        arr = np.array(t.entries, dtype=np.int64).reshape(t.dims) if t.shape else np.array(t.entries[0], dtype=np.int64)
        n_in, n_out = len(g.sig.dom(gen)), len(g.sig.cod(gen))
        idx = [letter[g.port_edge(vid, "in", k)] for k in range(n_in)]
        idx += [letter[g.port_edge(vid, "out", k)] for k in range(n_out)]
        operands.append(arr)
        subs.append("".join(idx))
    for p in sorted(g.edge_points()):
        ins, outs = g.in_edges(p), g.out_edges(p)
        if ins and outs:
            operands.append(np.eye(dim[ins[0]], dtype=np.int64))
            subs.append(letter[ins[0]] + letter[outs[0]])

    def boundary_letter(p: str) -> str:
        outs, ins = g.out_edges(p), g.in_edges(p)
        return letter[outs[0]] if outs else letter[ins[0]]

    out = ""
    spare = iter(_LETTERS[len(letter) :])
    for p in c.leg_in + c.leg_out:
        x = boundary_letter(p)
        if x in out:
            # a one-edge wire from input to output: split its index with a delta
            y = next(spare)
            operands.append(np.eye(v.dims[g.point_type(p)], dtype=np.int64))
            subs.append(x + y)
            x = y
        out += x
    if not operands:
        return [1]
    res = np.einsum(",".join(subs) + "->" + out, *operands)
    return [int(x) for x in np.asarray(res).reshape(-1)]


def _wire_components(g: OpenGraph) -> list[list[str]]:
    """Group edge-points by union-find over edge-point/edge-point edges."""
    parent = {p: p for p in g.edge_points()}

    def find(p):
        while parent[p] != p:
            parent[p] = parent[parent[p]]
            p = parent[p]
        return p

    for e in g.edges.values():
        if e.src in parent and e.tgt in parent:
            parent[find(e.src)] = find(e.tgt)
    groups: dict[str, list[str]] = {}
    for p in parent:
        groups.setdefault(find(p), []).append(p)
    return list(groups.values())


def brute_wire_count(g: OpenGraph) -> int:
    return len(_wire_components(g))


def expected_normal_size(g: OpenGraph) -> int:
    """Edge-points left after contraction, read off each component's shape:
    one per circle or vertex-attached wire, two for a bare wire of length >= 2."""
    total = 0
    for comp in _wire_components(g):
        members = set(comp)
        fed = [p for p in comp if any(g.edges[e].src in members for e in g.in_edges(p))]
        if len(fed) == len(comp):
            total += 1
            continue
        first = next(p for p in comp if p not in fed)
        last = next(p for p in comp if not any(g.edges[e].tgt in members for e in g.out_edges(p)))
        open_start, open_end = not g.in_edges(first), not g.out_edges(last)
        total += 2 if open_start and open_end and len(comp) >= 2 else 1
    return total


def all_injections(n: int, m: int):
    return itertools.permutations(range(m), n)


def brute_force_embeddings(src: OpenGraph, tgt: OpenGraph) -> set[tuple]:
    """Every injective, label/port-preserving, vertex-full map ``src -> tgt``,
    found by trying all injections of points.  Exponential; tiny graphs only."""
    sp, tp = sorted(src.points), sorted(tgt.points)
    found = set()
    for perm in itertools.permutations(tp, len(sp)):
        pmap = dict(zip(sp, perm))
        if any(src.points[p].label != tgt.points[pmap[p]].label for p in sp):
            continue
        emap = {}
        for eid, e in src.edges.items():
            cands = [
                f.id
                for f in tgt.edges.values()
                if f.src == pmap[e.src] and f.tgt == pmap[e.tgt] and (f.type, f.src_port, f.tgt_port) == (e.type, e.src_port, e.tgt_port)
            ]
            if not cands:
                break
            emap[eid] = cands[0]
        else:
            if len(set(emap.values())) != len(emap):
                continue
            image = set(emap.values())
            if all(f in image for v in src.vertices() for f in tgt.in_edges(pmap[v]) + tgt.out_edges(pmap[v])):
                found.add((tuple(sorted(pmap.items())), tuple(sorted(emap.items()))))
    return found
