"""Directed cospans of open-graphs: composition, tensor, symmetry and trace.

A cospan is represented by its middle graph carrying ordered ``inputs`` and
``outputs``; the domain and codomain words are the types along those orders.
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .boundary import CoherentSpan, merge
from .core import (
    Edge,
    GraphBuilder,
    GraphMorphism,
    OpenGraph,
    Point,
    Signature,
    Word,
    find_isomorphism,
    validate_graph,
)
from .errors import CospanError
from .homeo import normalize
from .rewrite import Matching, RewriteRule, RewriteSystem, apply_rewrite
from .search import SearchStatus, joinable


@dataclass(frozen=True, eq=False)
class Cospan:
    middle: OpenGraph

    def __post_init__(self) -> None:
        g = self.middle
        if g.inputs is None or g.outputs is None:
            raise CospanError("BAD_BOUNDARY_ORDER", "cospan middles need input and output orders")
        if g.isolated_points():
            raise CospanError("ISOLATED_POINT", "cospan middle has isolated points", g.isolated_points()[0])
        validate_graph(g)

    @property
    def sig(self) -> Signature:
        return self.middle.sig

    @property
    def leg_in(self) -> tuple[str, ...]:
        return self.middle.inputs  # type: ignore[return-value]

    @property
    def leg_out(self) -> tuple[str, ...]:
        return self.middle.outputs  # type: ignore[return-value]

    @property
    def dom(self) -> Word:
        return tuple(self.middle.point_type(p) for p in self.leg_in)

    @property
    def cod(self) -> Word:
        return tuple(self.middle.point_type(p) for p in self.leg_out)

    def normalized(self) -> Cospan:
        return Cospan(normalize(self.middle))

    def __repr__(self) -> str:
        return f"Cospan({' '.join(self.dom) or 'I'} -> {' '.join(self.cod) or 'I'}, {self.middle!r})"


def _check_word(sig: Signature, w: Sequence[str]) -> Word:
    for o in w:
        if o not in sig.objects:
            raise CospanError("TYPE_MISMATCH", f"unknown object {o!r}")
    return tuple(w)


def identity(sig: Signature, w: Sequence[str]) -> Cospan:
    """``|w|`` bare two-point wires, one per letter."""
    w = _check_word(sig, w)
    b = GraphBuilder(sig)
    for k, o in enumerate(w):
        b.point(f"in{k}", o)
        b.point(f"out{k}", o)
        b.edge(f"in{k}", f"out{k}", eid=f"id{k}")
    return Cospan(b.build([f"in{k}" for k in range(len(w))], [f"out{k}" for k in range(len(w))]))


def _points(sig: Signature, ids: Sequence[str], types: Sequence[str]) -> OpenGraph:
    return OpenGraph(sig, [Point(p, type=t) for p, t in zip(ids, types)])


def compose(g: Cospan, h: Cospan) -> Cospan:
    """``h ∘ g``: plug the outputs of g into the inputs of h, position-wise."""
    if g.cod != h.dom:
        raise CospanError("TYPE_MISMATCH", f"codomain {list(g.cod)} != domain {list(h.dom)}")
    apex = _points(g.sig, [f"y{k}" for k in range(len(g.cod))], g.cod)
    left = GraphMorphism(apex, g.middle, {f"y{k}": p for k, p in enumerate(g.leg_out)}, {})
    right = GraphMorphism(apex, h.middle, {f"y{k}": p for k, p in enumerate(h.leg_in)}, {})
    m, i1, i2 = merge(CoherentSpan(apex, left, right))
    return Cospan(m.with_order([i1(p) for p in g.leg_in], [i2(p) for p in h.leg_out]))


def tensor(g: Cospan, h: Cospan) -> Cospan:
    """Disjoint union, g's wires first."""
    empty = OpenGraph(g.sig)
    m, i1, i2 = merge(CoherentSpan(empty, GraphMorphism(empty, g.middle, {}, {}), GraphMorphism(empty, h.middle, {}, {})))
    return Cospan(
        m.with_order(
            [i1(p) for p in g.leg_in] + [i2(p) for p in h.leg_in],
            [i1(p) for p in g.leg_out] + [i2(p) for p in h.leg_out],
        )
    )


def tensor_all(sig: Signature, cs: Sequence[Cospan]) -> Cospan:
    out = identity(sig, ())
    for c in cs:
        out = tensor(out, c)
    return out


def symmetry(sig: Signature, v: Sequence[str], w: Sequence[str]) -> Cospan:
    """Crossing wires ``v·w -> w·v``."""
    v, w = _check_word(sig, v), _check_word(sig, w)
    word = v + w
    b = GraphBuilder(sig)
    outs: list[str] = [""] * len(word)
    for k, o in enumerate(word):
        target = len(w) + k if k < len(v) else k - len(v)
        b.point(f"in{k}", o)
        b.point(f"out{target}", o)
        b.edge(f"in{k}", f"out{target}", eid=f"sw{k}")
        outs[target] = f"out{target}"
    return Cospan(b.build([f"in{k}" for k in range(len(word))], outs))


def trace(g: Cospan, b_len: int) -> Cospan:
    """Feed the last ``b_len`` outputs back into the last ``b_len`` inputs."""
    if b_len < 0 or b_len > min(len(g.dom), len(g.cod)):
        raise CospanError("TYPE_MISMATCH", "trace length exceeds the boundary")
    if b_len == 0:
        return g
    n_a, n_c = len(g.dom) - b_len, len(g.cod) - b_len
    fb_in, fb_out = g.leg_in[n_a:], g.leg_out[n_c:]
    if g.dom[n_a:] != g.cod[n_c:]:
        raise CospanError("TYPE_MISMATCH", f"traced words differ: {list(g.dom[n_a:])} vs {list(g.cod[n_c:])}")
    sig = g.sig
    # the link graph: one edge from each fed-back output to its input
    link_pts = [Point(f"lo{k}", type=t) for k, t in enumerate(g.dom[n_a:])]
    link_pts += [Point(f"li{k}", type=t) for k, t in enumerate(g.dom[n_a:])]
    link_edges = [Edge(f"tr{k}", f"lo{k}", f"li{k}", t) for k, t in enumerate(g.dom[n_a:])]
    link = OpenGraph(sig, link_pts, link_edges)
    apex = OpenGraph(sig, [Point(p.id, type=p.type) for p in link_pts])
    to_g = {f"lo{k}": fb_out[k] for k in range(b_len)} | {f"li{k}": fb_in[k] for k in range(b_len)}
    to_link = {p.id: p.id for p in link_pts}
    m, i1, _ = merge(CoherentSpan(apex, GraphMorphism(apex, g.middle, to_g, {}), GraphMorphism(apex, link, to_link, {})))
    return Cospan(m.with_order([i1(p) for p in g.leg_in[:n_a]], [i1(p) for p in g.leg_out[:n_c]]))


def rewrite_cospan(rule: RewriteRule, g: Cospan, m: Matching) -> Cospan:
    """Rewrite the middle graph; boundary points and their order survive."""
    if m.host is not g.middle and m.host != g.middle:
        raise CospanError("NOT_MATCHING", "matching is not on this cospan's middle graph")
    return Cospan(apply_rewrite(Matching(rule, g.middle, m.morphism)))


def generator_cospan(sig: Signature, a: str) -> Cospan:
    b = GraphBuilder(sig)
    ins, outs = b.gen_stubs(a, a)
    return Cospan(b.build(ins, outs))


def is_progressive(g: Cospan | OpenGraph) -> bool:
    """True iff the middle graph has no directed cycle."""
    graph = g.middle if isinstance(g, Cospan) else g
    indeg = {p: len(graph.in_edges(p)) for p in graph.points}
    queue = deque(p for p in sorted(graph.points) if indeg[p] == 0)
    seen = 0
    while queue:
        p = queue.popleft()
        seen += 1
        for eid in graph.out_edges(p):
            t = graph.edges[eid].tgt
            indeg[t] -= 1
            if indeg[t] == 0:
                queue.append(t)
    return seen == len(graph.points)


class Verdict(enum.Enum):
    EQUIVALENT = "EQUIVALENT"
    NOT_EQUIVALENT = "NOT_EQUIVALENT"
    NOT_FOUND_WITHIN_DEPTH = "NOT_FOUND_WITHIN_DEPTH"

    def __bool__(self) -> bool:
        return self is Verdict.EQUIVALENT


def same_diagram(g: Cospan, h: Cospan) -> bool:
    """Equality as diagrams: normal forms isomorphic, boundary order respected."""
    return find_isomorphism(normalize(g.middle), normalize(h.middle), respect_boundary_order=True) is not None


def equivalent(g: Cospan, h: Cospan, s: RewriteSystem | None = None, max_depth: int = 6) -> Verdict:
    """Decide diagram equality, or search for an equation under ``s``.

    With a rule system the search is only a semi-decision, so a failed search
    is reported as ``NOT_FOUND_WITHIN_DEPTH`` rather than as a negative.
    """
    if g.dom != h.dom or g.cod != h.cod:
        raise CospanError("WORD_MISMATCH", f"{list(g.dom)}->{list(g.cod)} vs {list(h.dom)}->{list(h.cod)}")
    if same_diagram(g, h):
        return Verdict.EQUIVALENT
    if s is None:
        return Verdict.NOT_EQUIVALENT
    res = joinable(g.middle, h.middle, s, max_depth)
    if res.status is SearchStatus.FOUND:
        return Verdict.EQUIVALENT
    return Verdict.NOT_FOUND_WITHIN_DEPTH
