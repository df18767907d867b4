"""Seeded random graphs, cospans, rules and valuations for property testing."""
from __future__ import annotations

import random
from typing import Sequence

from .core import Edge, GraphBuilder, GraphMorphism, OpenGraph, Point, Signature, fresh_id
from .cospan import Cospan
from .homeo import subdivide
from .rewrite import RewriteRule, make_rule
from .semantics import Tensor, Valuation

SIG_TWO = Signature(
    ("A", "B"),
    {
        "f": (("A", "B"), ("B",)),
        "g": (("B",), ("A", "A")),
        "h": (("A",), ()),
        "k": ((), ("B",)),
        "s": (("B",), ("B",)),
    },
)

# one object, with a source and a sink so boundaries can be balanced
SIG_ONE = Signature(
    ("X",),
    {
        "src": ((), ("X",)),
        "snk": (("X",), ()),
        "f": (("X",), ("X",)),
        "m": (("X", "X"), ("X",)),
        "d": (("X",), ("X", "X")),
    },
)


def random_graph(
    rng: random.Random,
    sig: Signature,
    n_vertices: int = 3,
    n_bare: int = 0,
    n_circles: int = 0,
    n_subdiv: int = 0,
    p_link: float = 0.6,
    acyclic: bool = False,
    isolated: int = 0,
    prefix: str = "",
) -> OpenGraph:
    """Vertices with one stub point per port, some output stubs linked to
    input stubs of the same type, plus bare chains, circles and subdivisions."""
    b = GraphBuilder(sig)
    gens = sorted(sig.generators)
    outs: list[tuple[int, str]] = []
    ins: list[tuple[int, str]] = []
    for i in range(n_vertices):
        gen = rng.choice(gens)
        i_stubs, o_stubs = b.gen_stubs(f"{prefix}v{i}", gen, prefix=f"{prefix}v{i}")
        ins += [(i, p) for p in i_stubs]
        outs += [(i, p) for p in o_stubs]
    rng.shuffle(ins)
    free_in = list(ins)
    for vi, p in outs:
        if rng.random() > p_link:
            continue
        t = b._points[p].type
        cands = [(vj, q) for vj, q in free_in if b._points[q].type == t and (not acyclic or vj > vi)]
        if not cands:
            continue
        vj, q = cands[0]
        free_in.remove((vj, q))
        b.edge(p, q)
    objs = list(sig.objects)
    for k in range(n_bare):
        o = rng.choice(objs)
        n = rng.randint(2, 3)
        pts = [b.point(f"{prefix}w{k}.{j}", o) for j in range(n)]
        for x, y in zip(pts, pts[1:]):
            b.edge(x, y)
    for k in range(n_circles):
        o = rng.choice(objs)
        n = rng.randint(1, 3)
        pts = [b.point(f"{prefix}c{k}.{j}", o) for j in range(n)]
        for j in range(n):
            b.edge(pts[j], pts[(j + 1) % n])
    for k in range(isolated):
        b.point(f"{prefix}z{k}", rng.choice(objs))
    g = b.build()
    for _ in range(n_subdiv):
        if not g.edges:
            break
        g = subdivide(g, rng.choice(sorted(g.edges)))
    return g


def random_graph_with_boundary(
    rng: random.Random,
    sig: Signature,
    n_in: int,
    n_out: int,
    n_vertices: int = 2,
    n_subdiv: int = 0,
    acyclic: bool = True,
    prefix: str = "",
) -> OpenGraph:
    """A graph without isolated points with exactly ``n_in`` inputs and
    ``n_out`` outputs.  Needs a one-object signature with a nullary-input and
    a nullary-output generator to fix the counts."""
    (obj,) = sig.objects
    source = next(a for a in sorted(sig.generators) if not sig.dom(a) and len(sig.cod(a)) == 1)
    sink = next(a for a in sorted(sig.generators) if len(sig.dom(a)) == 1 and not sig.cod(a))
    g = random_graph(rng, sig, n_vertices, n_bare=rng.randint(0, 1), acyclic=acyclic, prefix=prefix)
    points, edges = dict(g.points), dict(g.edges)
    tmp = OpenGraph(sig, points, edges)
    extra = 0

    def add(p: Point) -> None:
        points[p.id] = p

    def new_edge(s: str, t: str, sp=None, tp=None) -> None:
        eid = fresh_id(f"{prefix}x{len(edges)}", edges)
        edges[eid] = Edge(eid, s, t, obj, sp, tp)

    while True:
        tmp = OpenGraph(sig, points, edges)
        ins, outs = tmp.input_points(), tmp.output_points()
        if len(ins) == n_in and len(outs) == n_out:
            break
        extra += 1
        if len(ins) > n_in:
            # close an input with a fresh source
            p = rng.choice(ins)
            v = fresh_id(f"{prefix}src{extra}", points)
            add(Point(v, gen=source))
            new_edge(v, p, sp=0)
        elif len(outs) > n_out:
            p = rng.choice(outs)
            v = fresh_id(f"{prefix}snk{extra}", points)
            add(Point(v, gen=sink))
            new_edge(p, v, tp=0)
        elif len(ins) < n_in and len(outs) < n_out:
            a = fresh_id(f"{prefix}bi{extra}", points)
            add(Point(a, type=obj))
            z = fresh_id(f"{prefix}bo{extra}", points)
            add(Point(z, type=obj))
            new_edge(a, z)
        elif len(ins) < n_in:
            # a sink with an open input
            v = fresh_id(f"{prefix}snk{extra}", points)
            add(Point(v, gen=sink))
            p = fresh_id(f"{prefix}si{extra}", points)
            add(Point(p, type=obj))
            new_edge(p, v, tp=0)
        else:
            v = fresh_id(f"{prefix}src{extra}", points)
            add(Point(v, gen=source))
            p = fresh_id(f"{prefix}so{extra}", points)
            add(Point(p, type=obj))
            new_edge(v, p, sp=0)
    for _ in range(n_subdiv):
        if not tmp.edges:
            break
        tmp = subdivide(tmp, rng.choice(sorted(tmp.edges)))
    return tmp


def random_cospan(
    rng: random.Random,
    sig: Signature,
    n_in: int | None = None,
    n_out: int | None = None,
    n_vertices: int = 2,
    n_subdiv: int = 0,
    prefix: str = "",
) -> Cospan:
    n_in = rng.randint(0, 2) if n_in is None else n_in
    n_out = rng.randint(0, 2) if n_out is None else n_out
    g = random_graph_with_boundary(rng, sig, n_in, n_out, n_vertices, n_subdiv, prefix=prefix)
    ins, outs = g.input_points(), g.output_points()
    rng.shuffle(ins)
    rng.shuffle(outs)
    return Cospan(g.with_order(ins, outs))


def random_subgraph(rng: random.Random, g: OpenGraph, steps: int = 3) -> OpenGraph | None:
    """A connected subgraph, full on vertices, without isolated points."""
    if not g.edges:
        return None
    pts: set[str] = set()
    eds: set[str] = set()
    frontier: list[str] = []

    def take_edge(eid: str) -> None:
        if eid in eds:
            return
        eds.add(eid)
        e = g.edges[eid]
        for p in (e.src, e.tgt):
            if p not in pts:
                pts.add(p)
                if g.is_vertex(p):
                    for f in g.in_edges(p) + g.out_edges(p):
                        take_edge(f)
                else:
                    frontier.append(p)

    take_edge(rng.choice(sorted(g.edges)))
    for _ in range(steps):
        options = sorted(
            f for p in pts if not g.is_vertex(p) for f in g.in_edges(p) + g.out_edges(p) if f not in eds
        )
        if not options:
            break
        take_edge(rng.choice(options))
    return g.subgraph(pts, eds)


def relabel(rng: random.Random, g: OpenGraph, tag: str = "r") -> tuple[OpenGraph, dict[str, str], dict[str, str]]:
    """Rename every id to a fresh shuffled one; returns graph and the maps."""
    pids, eids = sorted(g.points), sorted(g.edges)
    pn, en = list(range(len(pids))), list(range(len(eids)))
    rng.shuffle(pn)
    rng.shuffle(en)
    pmap = {p: f"{tag}p{n}" for p, n in zip(pids, pn)}
    emap = {e: f"{tag}e{n}" for e, n in zip(eids, en)}
    return g.renamed(pmap, emap), pmap, emap


def embedded_subgraph(rng: random.Random, g: OpenGraph, steps: int = 3, tag: str = "k") -> GraphMorphism | None:
    """A random subgraph under fresh ids together with its embedding into ``g``."""
    sub = random_subgraph(rng, g, steps)
    if sub is None:
        return None
    k, pmap, emap = relabel(rng, sub, tag)
    return GraphMorphism(k, g, {q: p for p, q in pmap.items()}, {f: e for e, f in emap.items()})


def random_rule_for(
    rng: random.Random,
    lhs: OpenGraph,
    n_vertices: int = 2,
    prefix: str = "r",
    name: str = "",
) -> RewriteRule:
    """A rule with the given lhs and a random rhs with matching boundary."""
    sig = lhs.sig
    ins, outs = lhs.input_points(), lhs.output_points()
    rhs = random_graph_with_boundary(rng, sig, len(ins), len(outs), n_vertices, prefix=prefix)
    r_ins, r_outs = rhs.input_points(), rhs.output_points()
    rng.shuffle(r_ins)
    rng.shuffle(r_outs)
    return make_rule(lhs, rhs, list(zip(ins, r_ins)), list(zip(outs, r_outs)), name=name)


def random_valuation(rng: random.Random, sig: Signature, max_dim: int = 3, lo: int = -2, hi: int = 3) -> Valuation:
    dims = {o: rng.randint(1, max_dim) for o in sig.objects}
    v = Valuation(dims, {})
    for a in sorted(sig.generators):
        shape = v.shape_for(sig, a)
        n = 1
        for _, d in shape:
            n *= d
        v.interp[a] = Tensor(shape, tuple(rng.randint(lo, hi) for _ in range(n)))  # type: ignore[index]
    return v


def shuffled(rng: random.Random, xs: Sequence) -> list:
    out = list(xs)
    rng.shuffle(out)
    return out
