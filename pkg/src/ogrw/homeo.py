"""Edge-homeomorphism: wires, contraction to normal form, matching modulo subdivision.

Two graphs that differ only in how many edge-points subdivide their wires
draw the same diagram.  Contraction removes an interior edge-point whenever
the result is still an open-graph; the normal form keeps one edge-point per
wire, two on a bare boundary-to-boundary wire.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator

from .core import Edge, GraphBuilder, OpenGraph, Point, Signature, find_embeddings, fresh_id
from .rewrite import Matching, RewriteRule, RewriteSystem, make_rule


@dataclass(frozen=True)
class Wire:
    """A maximal chain or circle of edge-points, listed in edge direction.

    ``start``/``end`` are ``(vertex, port)`` when the wire is attached to a
    vertex at that end and ``None`` at a boundary end or on a circle.
    """

    points: tuple[str, ...]
    start: tuple[str, int] | None
    end: tuple[str, int] | None
    circle: bool = False


def _next(g: OpenGraph, p: str) -> str | None:
    outs = g.out_edges(p)
    return g.edges[outs[0]].tgt if outs else None


def _prev(g: OpenGraph, p: str) -> str | None:
    ins = g.in_edges(p)
    return g.edges[ins[0]].src if ins else None


def wires(g: OpenGraph) -> list[Wire]:
    """Partition the edge-points of ``g`` into wires, sorted by first point."""
    seen: set[str] = set()
    out = []
    for p in g.edge_points():
        if p in seen:
            continue
        # walk back to the chain start, or around to p on a circle
        first, circle = p, False
        while True:
            q = _prev(g, first)
            if q is None or g.is_vertex(q):
                break
            if q == p:
                circle = True
                break
            first = q
        if circle:
            pts, x = [p], _next(g, p)
            while x != p:
                pts.append(x)  # type: ignore[arg-type]
                x = _next(g, x)  # type: ignore[arg-type]
            seen.update(pts)
            out.append(Wire(tuple(pts), None, None, True))
            continue
        pts, x = [first], first
        while True:
            y = _next(g, x)
            if y is None or g.is_vertex(y):
                break
            pts.append(y)
            x = y
        seen.update(pts)
        ins, outs = g.in_edges(pts[0]), g.out_edges(pts[-1])
        start = (g.edges[ins[0]].src, g.edges[ins[0]].src_port) if ins else None
        end = (g.edges[outs[0]].tgt, g.edges[outs[0]].tgt_port) if outs else None
        out.append(Wire(tuple(pts), start, end))  # type: ignore[arg-type]
    return sorted(out, key=lambda w: w.points[0] if not w.circle else min(w.points))


# contraction -------------------------------------------------------------------


class _Work:
    """Mutable scratch copy of a graph used for in-place contraction."""

    def __init__(self, g: OpenGraph):
        self.g = g
        self.points = dict(g.points)
        self.edges = dict(g.edges)
        self.inn = {p: (g.in_edges(p)[0] if g.in_edges(p) else None) for p in g.edge_points()}
        self.outn = {p: (g.out_edges(p)[0] if g.out_edges(p) else None) for p in g.edge_points()}

    def removable(self, p: str) -> bool:
        if p not in self.points or self.points[p].is_vertex:
            return False
        e1, e2 = self.inn[p], self.outn[p]
        if e1 is None or e2 is None:
            return False
        u, w = self.edges[e1].src, self.edges[e2].tgt
        if u == p:
            return False
        return not (self.points[u].is_vertex and self.points[w].is_vertex)

    def contract(self, p: str) -> None:
        e1, e2 = self.edges[self.inn[p]], self.edges[self.outn[p]]  # type: ignore[index]
        merged = Edge(e1.id, e1.src, e2.tgt, e1.type, e1.src_port, e2.tgt_port)
        del self.edges[e2.id]
        del self.points[p]
        del self.inn[p], self.outn[p]
        self.edges[e1.id] = merged
        if e2.tgt in self.inn:
            self.inn[e2.tgt] = e1.id

    def graph(self) -> OpenGraph:
        return OpenGraph(self.g.sig, self.points, self.edges, self.g.inputs, self.g.outputs)


def removable_points(g: OpenGraph) -> list[str]:
    w = _Work(g)
    return [p for p in g.edge_points() if w.removable(p)]


def contract_point(g: OpenGraph, p: str) -> OpenGraph:
    """One elementary contraction at interior edge-point ``p``."""
    w = _Work(g)
    if not w.removable(p):
        raise ValueError(f"{p} is not contractible")
    w.contract(p)
    return w.graph()


def normalize_with_steps(g: OpenGraph, rng: random.Random | None = None) -> tuple[OpenGraph, int]:
    """Contract to normal form; return it with the number of contractions.

    A point that is not contractible never becomes contractible later, so one
    pass in lowest-id order equals repeatedly contracting the lowest redex.
    ``rng`` shuffles the pass order instead.
    """
    w = _Work(g)
    order = g.edge_points()
    if rng is not None:
        rng.shuffle(order)
    steps = 0
    for p in order:
        if w.removable(p):
            w.contract(p)
            steps += 1
    return w.graph(), steps


def normalize(g: OpenGraph, rng: random.Random | None = None) -> OpenGraph:
    return normalize_with_steps(g, rng)[0]


def is_normal(g: OpenGraph) -> bool:
    return not removable_points(g)


def subdivide(g: OpenGraph, eid: str, new_point: str | None = None) -> OpenGraph:
    """Insert a fresh edge-point into edge ``eid`` (inverse of a contraction).

    The edge keeps its id and source side; a new edge carries the target side.
    """
    e = g.edges[eid]
    p = new_point or fresh_id(e.tgt if g.is_vertex(e.src) else e.src, g.points)
    if p in g.points:
        raise ValueError(f"point id {p} already used")
    f = fresh_id(eid, g.edges)
    points = dict(g.points)
    points[p] = Point(p, type=e.type)
    edges = dict(g.edges)
    edges[eid] = Edge(eid, e.src, p, e.type, e.src_port, None)
    edges[f] = Edge(f, p, e.tgt, e.type, None, e.tgt_port)
    return OpenGraph(g.sig, points, edges, g.inputs, g.outputs)


def _grow_wire(g: OpenGraph, wire: Wire, extra: int) -> OpenGraph:
    """Subdivide ``wire`` ``extra`` times, keeping boundary points at its ends."""
    anchor = wire.points[0]
    for _ in range(extra):
        last = wire.points[-1]
        if not wire.circle and not g.out_edges(last) and g.in_edges(last):
            eid = g.in_edges(last)[0]
        else:
            eid = g.out_edges(anchor)[0]
        g = subdivide(g, eid, fresh_id(anchor, g.points))
    return g


def expand(g: OpenGraph, eid: str, times: int = 1) -> OpenGraph:
    for _ in range(times):
        g = subdivide(g, eid)
    return g


# the rewrite system ------------------------------------------------------------


def homeo_rules(sig: Signature) -> RewriteSystem:
    """The finite contraction system for ``sig``, one rule per object and port."""
    rules: dict[str, RewriteRule] = {}
    for o in sig.objects:
        b = GraphBuilder(sig)
        for p in "xyz":
            b.point(p, o)
        b.edge("x", "y", eid="e0")
        b.edge("y", "z", eid="e1")
        lhs = b.build()
        b = GraphBuilder(sig)
        b.point("x", o)
        b.point("z", o)
        b.edge("x", "z", eid="e0")
        rules[f"H_L({o})"] = make_rule(lhs, b.build(), name=f"H_L({o})")

        b = GraphBuilder(sig)
        b.point("c0", o)
        b.point("c1", o)
        b.edge("c0", "c1", eid="e0")
        b.edge("c1", "c0", eid="e1")
        lhs = b.build()
        b = GraphBuilder(sig)
        b.point("c0", o)
        b.edge("c0", "c0", eid="e0")
        rules[f"H_C({o})"] = make_rule(lhs, b.build(), [], [], name=f"H_C({o})")

    for a in sorted(sig.generators):
        dom, cod = sig.dom(a), sig.cod(a)
        for k in range(len(dom)):
            rules[f"H_T{k}({a})"] = _port_rule(sig, a, "in", k)
        for k in range(len(cod)):
            rules[f"H_S{k}({a})"] = _port_rule(sig, a, "out", k)
    return RewriteSystem(rules)


def _port_rule(sig: Signature, a: str, side: str, k: int) -> RewriteRule:
    def build(long: bool):
        b = GraphBuilder(sig)
        b.vertex("v", a)
        for j, o in enumerate(sig.dom(a)):
            b.point(f"i{j}", o)
            if side == "in" and j == k and long:
                b.point("m", o)
                b.edge(f"i{j}", "m", eid=f"ei{j}m")
                b.edge("m", "v", tgt_port=j, eid=f"ei{j}")
            else:
                b.edge(f"i{j}", "v", tgt_port=j, eid=f"ei{j}")
        for j, o in enumerate(sig.cod(a)):
            b.point(f"o{j}", o)
            if side == "out" and j == k and long:
                b.point("m", o)
                b.edge("v", "m", src_port=j, eid=f"eo{j}")
                b.edge("m", f"o{j}", eid=f"eo{j}m")
            else:
                b.edge("v", f"o{j}", src_port=j, eid=f"eo{j}")
        return b.build()

    name = f"H_{'T' if side == 'in' else 'S'}{k}({a})"
    return make_rule(build(True), build(False), name=name)


# matching modulo subdivision -----------------------------------------------------


def _wire_type(g: OpenGraph, w: Wire) -> str:
    return g.points[w.points[0]].type  # type: ignore[return-value]


def match_modulo_homeo(rule: RewriteRule, g: OpenGraph) -> list[tuple[OpenGraph, Matching]]:
    """Matchings of ``rule`` into subdivisions of the normal form of ``g``.

    Each lhs wire is placed on a host wire: wires attached to lhs vertices
    are forced by the vertex map, wires between two lhs vertices take a whole
    host wire, bare lhs chains go in any order into any gap, and lhs circles
    take whole host circles.  Host wires are then subdivided just enough to
    hold their pieces and the concrete embedding is built.  Placements that
    only differ in the number of unmatched edge-points between pieces give
    the same result modulo subdivision, so gaps are kept minimal.
    """
    host = normalize(g)
    lhs = rule.lhs
    lw, hw = wires(lhs), wires(host)
    out_port = {w.start: i for i, w in enumerate(hw) if w.start is not None}
    in_port = {w.end: i for i, w in enumerate(hw) if w.end is not None}

    attached = [w for w in lw if w.start is not None or w.end is not None]
    bare = [w for w in lw if w.start is None and w.end is None and not w.circle]
    circles = [w for w in lw if w.circle]
    by_vertex: dict[str, list[Wire]] = {}
    for w in attached:
        for end in (w.start, w.end):
            if end is not None:
                by_vertex.setdefault(end[0], []).append(w)

    results: list[tuple[OpenGraph, Matching]] = []
    for vmap in _vertex_maps(lhs, host, by_vertex, out_port, in_port, hw):
        # claims[i] = (start piece, end piece, whole piece) on host wire i
        claims: dict[int, dict[str, Wire]] = {}
        ok = True
        for w in attached:
            if w.start is not None:
                i = out_port[(vmap[w.start[0]], w.start[1])]
                role = "whole" if w.end is not None else "start"
            else:
                i = in_port[(vmap[w.end[0]], w.end[1])]  # type: ignore[index]
                role = "end"
            if _wire_type(host, hw[i]) != _wire_type(lhs, w):
                ok = False
                break
            slot = claims.setdefault(i, {})
            if role in slot and slot[role] is not w:
                ok = False
                break
            slot[role] = w
        if not ok:
            continue
        free_host = [i for i in range(len(hw)) if "whole" not in claims.get(i, {})]
        host_circles = [i for i in range(len(hw)) if hw[i].circle]
        for cmap in _injections(circles, host_circles, lambda w, i: _wire_type(lhs, w) == _wire_type(host, hw[i])):
            taken = set(cmap.values())
            slots = [
                [i for i in free_host if i not in taken and _wire_type(host, hw[i]) == _wire_type(lhs, w)]
                for w in bare
            ]
            for choice in itertools.product(*slots):
                per_wire: dict[int, list[Wire]] = {}
                for w, i in zip(bare, choice):
                    per_wire.setdefault(i, []).append(w)
                keys = sorted(per_wire)
                orders = [_orders(per_wire[i], hw[i].circle) for i in keys]
                for combo in itertools.product(*orders):
                    layout = dict(zip(keys, combo))
                    found = _realize(rule, lhs, host, hw, vmap, claims, cmap, layout)
                    if found is not None:
                        results.append(found)
    return results


def _orders(pieces: list[Wire], circle: bool) -> list[tuple[Wire, ...]]:
    if circle:
        first, rest = pieces[0], pieces[1:]
        return [(first,) + p for p in itertools.permutations(rest)]
    return list(itertools.permutations(pieces))


def _injections(items: list, targets: list, ok) -> Iterator[dict]:
    def rec(i: int, used: set, acc: dict):
        if i == len(items):
            yield dict(acc)
            return
        for t in targets:
            if t not in used and ok(items[i], t):
                acc[id(items[i])] = t
                used.add(t)
                yield from rec(i + 1, used, acc)
                used.discard(t)
                del acc[id(items[i])]

    for m in rec(0, set(), {}):
        yield {w: m[id(w)] for w in items}


def _vertex_maps(lhs, host, by_vertex, out_port, in_port, hw) -> Iterator[dict[str, str]]:
    """Injective generator-preserving vertex maps consistent with lhs wires
    that run between two vertices (such a wire fixes the far vertex)."""
    lv = lhs.vertices()
    vmap: dict[str, str] = {}
    used: set[str] = set()

    def propagate(v: str, log: list[str]) -> bool:
        stack = [v]
        while stack:
            x = stack.pop()
            for w in by_vertex.get(x, []):
                if w.start is None or w.end is None:
                    continue
                if w.start[0] == x:
                    i = out_port.get((vmap[x], w.start[1]))
                    if i is None or hw[i].end is None or hw[i].end[1] != w.end[1]:
                        return False
                    far, image = w.end[0], hw[i].end[0]
                if w.end[0] == x:
                    j = in_port.get((vmap[x], w.end[1]))
                    if j is None or hw[j].start is None or hw[j].start[1] != w.start[1]:
                        return False
                    if w.start[0] == x:
                        if hw[j].start[0] != vmap[x] or j != i:
                            return False
                        continue
                    far, image = w.start[0], hw[j].start[0]
                if far in vmap:
                    if vmap[far] != image:
                        return False
                    continue
                if image in used or lhs.points[far].gen != host.points[image].gen:
                    return False
                vmap[far] = image
                used.add(image)
                log.append(far)
                stack.append(far)
        return True

    def undo(log: list[str]) -> None:
        for x in log:
            used.discard(vmap.pop(x))

    def rec() -> Iterator[dict[str, str]]:
        rest = [v for v in lv if v not in vmap]
        if not rest:
            yield dict(vmap)
            return
        v = rest[0]
        for cand in host.points_with_label(lhs.points[v].label):
            if cand in used:
                continue
            vmap[v] = cand
            used.add(cand)
            log = [v]
            if propagate(v, log):
                yield from rec()
            undo(log)

    yield from rec()


def _realize(rule, lhs, host, hw, vmap, claims, cmap, layout) -> tuple[OpenGraph, Matching] | None:
    """Subdivide host wires to fit their pieces and build the embedding."""
    plan: dict[int, list[tuple[int, Wire]]] = {}
    lengths: dict[int, int] = {}
    for i in set(claims) | set(layout) | set(cmap.values()):
        slot = claims.get(i, {})
        pieces: list[tuple[int, Wire]] = []
        if "whole" in slot:
            n = len(slot["whole"].points)
            pieces.append((0, slot["whole"]))
        elif i in cmap.values():
            w = next(c for c, j in cmap.items() if j == i)
            n = len(w.points)
            pieces.append((0, w))
        else:
            pos = 0
            if "start" in slot:
                pieces.append((0, slot["start"]))
                pos = len(slot["start"].points)
            for w in layout.get(i, ()):
                pieces.append((pos, w))
                pos += len(w.points)
            tail = len(slot["end"].points) if "end" in slot else 0
            n = max(pos + tail, len(hw[i].points))
            if "end" in slot:
                pieces.append((n - tail, slot["end"]))
        plan[i] = pieces
        lengths[i] = n

    expanded = host
    for i in sorted(plan):
        extra = lengths[i] - len(hw[i].points)
        if extra < 0:
            return None
        expanded = _grow_wire(expanded, hw[i], extra)

    index = {p: w for w in wires(expanded) for p in w.points}
    pmap = dict(vmap)
    for i, pieces in plan.items():
        w_host = index[hw[i].points[0]]
        pts = list(w_host.points)
        if w_host.circle:
            k = pts.index(hw[i].points[0])
            pts = pts[k:] + pts[:k]
        for pos, piece in pieces:
            for off, p in enumerate(piece.points):
                pmap[p] = pts[pos + off]
    for m in find_embeddings(lhs, expanded, pmap):
        return expanded, Matching(rule, expanded, m)
    return None
