"""Boundaries, merging along coherent spans, and subtraction.

Merging is the pushout of a span of monos, computed as a quotient of the
disjoint union.  Subtraction is its partial inverse: it removes a matched
subgraph and keeps the matched boundary points as dangling wire ends.
"""
from __future__ import annotations

from dataclasses import dataclass

from .core import (
    Edge,
    GraphMorphism,
    OpenGraph,
    Point,
    check_morphism,
    fresh_id,
    is_mono,
    is_valid,
)
from .errors import BoundaryError, MorphismError


@dataclass(frozen=True, eq=False)
class BoundaryMap:
    """The boundary point-graph ``B = In(G) + Out(G)`` with its map into G.

    Non-isolated boundary points keep their own id in ``B``; an isolated
    point ``p`` contributes two copies ``p@in`` and ``p@out``.
    """

    graph: OpenGraph
    boundary: OpenGraph
    b: GraphMorphism
    in_copies: tuple[str, ...]
    out_copies: tuple[str, ...]

    @property
    def b_in(self) -> dict[str, str]:
        return {x: self.b.pmap[x] for x in self.in_copies}

    @property
    def b_out(self) -> dict[str, str]:
        return {x: self.b.pmap[x] for x in self.out_copies}


def boundary(g: OpenGraph) -> BoundaryMap:
    isolated = set(g.isolated_points())
    points, pmap, ins, outs = [], {}, [], []
    for p in g.input_points():
        x = f"{p}@in" if p in isolated else p
        points.append(Point(x, type=g.point_type(p)))
        pmap[x] = p
        ins.append(x)
    for p in g.output_points():
        x = f"{p}@out" if p in isolated else p
        points.append(Point(x, type=g.point_type(p)))
        pmap[x] = p
        outs.append(x)
    b_graph = OpenGraph(g.sig, points)
    return BoundaryMap(g, b_graph, GraphMorphism(b_graph, g, pmap, {}), tuple(ins), tuple(outs))


@dataclass(frozen=True, eq=False)
class CoherentSpan:
    apex: OpenGraph
    left: GraphMorphism
    right: GraphMorphism


def is_boundary_coherent(s: CoherentSpan) -> bool:
    """True iff merging along ``s`` yields an open-graph.

    An input of the apex must stay an input on at least one side (otherwise
    the merged point gets two in-edges); dually for outputs.
    """
    for leg in (s.left, s.right):
        if set(leg.pmap) != set(s.apex.points):
            return False
        try:
            check_morphism(leg)
        except MorphismError:
            return False
        if not is_mono(leg):
            return False
    g1, g2 = s.left.target, s.right.target
    in1, in2 = set(g1.input_points()), set(g2.input_points())
    out1, out2 = set(g1.output_points()), set(g2.output_points())
    for p in s.apex.input_points():
        if s.left.pmap[p] not in in1 and s.right.pmap[p] not in in2:
            return False
    for p in s.apex.output_points():
        if s.left.pmap[p] not in out1 and s.right.pmap[p] not in out2:
            return False
    return True


def merge(s: CoherentSpan) -> tuple[OpenGraph, GraphMorphism, GraphMorphism]:
    """Pushout of a coherent span; ids of the left codomain are kept."""
    if not is_boundary_coherent(s):
        raise BoundaryError("NOT_COHERENT", "span is not boundary-coherent")
    g1, g2 = s.left.target, s.right.target
    points = dict(g1.points)
    edges = dict(g1.edges)
    # elements of g2 identified with g1 through the apex
    p_ident = {s.right.pmap[k]: s.left.pmap[k] for k in s.apex.points}
    e_ident = {s.right.emap[k]: s.left.emap[k] for k in s.apex.edges}
    pmap2: dict[str, str] = {}
    for p in sorted(g2.points):
        if p in p_ident:
            pmap2[p] = p_ident[p]
        else:
            q = fresh_id(p, points)
            pt = g2.points[p]
            points[q] = Point(q, pt.gen, pt.type)
            pmap2[p] = q
    emap2: dict[str, str] = {}
    for eid in sorted(g2.edges):
        if eid in e_ident:
            emap2[eid] = e_ident[eid]
            continue
        e = g2.edges[eid]
        f = fresh_id(eid, edges)
        edges[f] = Edge(f, pmap2[e.src], pmap2[e.tgt], e.type, e.src_port, e.tgt_port)
        emap2[eid] = f
    merged = OpenGraph(g1.sig, points, edges)
    if not is_valid(merged):
        raise BoundaryError("NOT_COHERENT", "quotient is not an open-graph")
    inj1 = GraphMorphism(g1, merged, {p: p for p in g1.points}, {e: e for e in g1.edges})
    inj2 = GraphMorphism(g2, merged, pmap2, emap2)
    return merged, inj1, inj2


def plug(s: CoherentSpan) -> OpenGraph:
    """Merge over a point-graph apex: wires outputs of one side to inputs of the other."""
    if not s.apex.is_point_graph():
        raise BoundaryError("APEX_NOT_POINT_GRAPH", "plugging needs an apex without edges or vertices")
    return merge(s)[0]


def point_graph(g: OpenGraph, ids) -> OpenGraph:
    """The discrete point-graph on the given edge-points of ``g``."""
    return OpenGraph(g.sig, [Point(p, type=g.point_type(p)) for p in ids])


@dataclass(frozen=True, eq=False)
class Subtraction:
    """Result of ``M -_m K``.

    ``coboundary`` maps the boundary of K (ids as in ``boundary(K)``) into the
    complement; ``inclusion`` embeds the complement back into M.
    """

    graph: OpenGraph
    coboundary: GraphMorphism
    boundary: BoundaryMap
    inclusion: GraphMorphism

    def __iter__(self):
        return iter((self.graph, self.coboundary))

    def plug_back(self) -> OpenGraph:
        """Re-plug K into the complement; isomorphic to M."""
        return plug(CoherentSpan(self.boundary.boundary, self.boundary.b, self.coboundary))


def subtract(m: GraphMorphism) -> Subtraction:
    """Pushout complement of a matching ``m : K -> M``.

    The complement is the subgraph of M without the image of K, except that
    images of K's boundary points stay behind as dangling wire ends.
    """
    k, big = m.source, m.target
    if k.isolated_points():
        raise BoundaryError("HAS_ISOLATED_POINTS", "subtracted graph has isolated points")
    try:
        check_morphism(m)
    except MorphismError as exc:
        raise BoundaryError("NOT_MATCHING", str(exc)) from exc
    if not is_mono(m):
        raise BoundaryError("NOT_MATCHING", "map is not injective")
    bmap = boundary(k)
    kept_boundary = {m.pmap[p] for p in bmap.b.pmap.values()}
    removed = {m.pmap[p] for p in k.points} - kept_boundary
    gone_edges = set(m.emap.values())
    h = big.subgraph(
        [p for p in big.points if p not in removed],
        [e for e in big.edges if e not in gone_edges],
    )
    cob = GraphMorphism(bmap.boundary, h, {x: m.pmap[p] for x, p in bmap.b.pmap.items()}, {})
    return Subtraction(h, cob, bmap, GraphMorphism.inclusion(h, big))
