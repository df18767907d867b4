"""Typed open-graphs over a graphical signature.

An open-graph has two kinds of points: *vertices*, labelled by a generator of
the signature, and *edge-points*, labelled by an object type.  Edge-points
subdivide wires and have at most one in-edge and one out-edge, so a wire may
dangle at either end or close into a circle.  Edges incident to a vertex carry
the port index of the generator's input/output word they occupy.

All values here are treated as immutable; constructions build new graphs.
"""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping

from .errors import GraphError, MorphismError, SignatureError

Word = tuple[str, ...]

_SUFFIX = re.compile(r"~\d+$")


def fresh_id(base: str, taken: Iterable[str] | set[str]) -> str:
    """Return ``base`` if unused, else ``base~n`` for the smallest free n."""
    taken = taken if isinstance(taken, (set, frozenset, dict)) else set(taken)
    if base not in taken:
        return base
    stem = _SUFFIX.sub("", base)
    n = 1
    while f"{stem}~{n}" in taken:
        n += 1
    return f"{stem}~{n}"


@dataclass(frozen=True)
class Signature:
    """A graphical signature: object types plus generators with typed words."""

    objects: tuple[str, ...]
    generators: Mapping[str, tuple[Word, Word]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        objs = tuple(self.objects)
        if len(set(objs)) != len(objs):
            raise SignatureError("BAD_SIGNATURE", "duplicate object names")
        gens = {}
        for name in sorted(self.generators):
            dom, cod = self.generators[name]
            dom, cod = tuple(dom), tuple(cod)
            if name in objs:
                raise SignatureError("BAD_SIGNATURE", f"{name!r} is both object and generator")
            for o in dom + cod:
                if o not in objs:
                    raise SignatureError("BAD_SIGNATURE", f"generator {name!r} uses unknown object {o!r}")
            gens[name] = (dom, cod)
        object.__setattr__(self, "objects", tuple(sorted(objs)))
        object.__setattr__(self, "generators", gens)

    def dom(self, gen: str) -> Word:
        return self.generators[gen][0]

    def cod(self, gen: str) -> Word:
        return self.generators[gen][1]

    @classmethod
    def untyped(cls, arities: Mapping[str, tuple[int, int]], obj: str = "*") -> Signature:
        """One-object signature; plain open-graphs are graphs over this."""
        return cls((obj,), {g: ((obj,) * n, (obj,) * m) for g, (n, m) in arities.items()})


@dataclass(frozen=True)
class TypeGraph:
    """The typegraph of a signature: points O + A, port-indexed edges."""

    points: tuple[str, ...]
    objects: frozenset[str]
    # (id, src, tgt, port); port is None on the per-object self-loops
    edges: tuple[tuple[str, str, str, int | None], ...]

    def self_loops(self) -> list[str]:
        return [e for e, s, t, _ in self.edges if s == t]


def build_typegraph(sig: Signature) -> TypeGraph:
    edges: list[tuple[str, str, str, int | None]] = []
    for o in sig.objects:
        edges.append((f"{o}:loop", o, o, None))
    for a, (dom, cod) in sig.generators.items():
        for k, d in enumerate(dom):
            edges.append((f"{d}>{a}:{k}", d, a, k))
        for k, c in enumerate(cod):
            edges.append((f"{a}>{c}:{k}", a, c, k))
    return TypeGraph(tuple(sig.objects) + tuple(sig.generators), frozenset(sig.objects), tuple(edges))


@dataclass(frozen=True)
class Point:
    id: str
    gen: str | None = None
    type: str | None = None

    def __post_init__(self) -> None:
        if (self.gen is None) == (self.type is None):
            raise GraphError("TYPE_MISMATCH", "a point needs exactly one of gen/type", self.id)

    @property
    def is_vertex(self) -> bool:
        return self.gen is not None

    @property
    def label(self) -> tuple[str, str]:
        return ("V", self.gen) if self.gen is not None else ("E", self.type)  # type: ignore[return-value]


@dataclass(frozen=True)
class Edge:
    id: str
    src: str
    tgt: str
    type: str
    src_port: int | None = None
    tgt_port: int | None = None


def _as_map(items, key=lambda x: x.id) -> dict:
    if isinstance(items, Mapping):
        return dict(items)
    return {key(x): x for x in items}


class OpenGraph:
    """An open-graph typed over ``sig``, with optional boundary orders.

    ``inputs``/``outputs`` are either ``None`` or a tuple enumerating exactly
    the input (resp. output) edge-points; cospans require them.
    """

    __slots__ = ("sig", "points", "edges", "inputs", "outputs", "__dict__")

    def __init__(
        self,
        sig: Signature,
        points: Mapping[str, Point] | Iterable[Point] = (),
        edges: Mapping[str, Edge] | Iterable[Edge] = (),
        inputs: Iterable[str] | None = None,
        outputs: Iterable[str] | None = None,
    ):
        self.sig = sig
        self.points: dict[str, Point] = _as_map(points)
        self.edges: dict[str, Edge] = _as_map(edges)
        self.inputs = tuple(inputs) if inputs is not None else None
        self.outputs = tuple(outputs) if outputs is not None else None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OpenGraph):
            return NotImplemented
        return (
            self.sig == other.sig
            and self.points == other.points
            and self.edges == other.edges
            and self.inputs == other.inputs
            and self.outputs == other.outputs
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        nv = sum(p.is_vertex for p in self.points.values())
        return f"OpenGraph({nv} vertices, {len(self.points) - nv} edge-points, {len(self.edges)} edges)"

    # adjacency -----------------------------------------------------------

    @cached_property
    def _adj(self) -> tuple[dict[str, list[str]], dict[str, list[str]]]:
        ins: dict[str, list[str]] = {p: [] for p in self.points}
        outs: dict[str, list[str]] = {p: [] for p in self.points}
        for eid in sorted(self.edges):
            e = self.edges[eid]
            outs.setdefault(e.src, []).append(eid)
            ins.setdefault(e.tgt, []).append(eid)
        return ins, outs

    def in_edges(self, p: str) -> list[str]:
        return self._adj[0].get(p, [])

    def out_edges(self, p: str) -> list[str]:
        return self._adj[1].get(p, [])

    @cached_property
    def _ports(self) -> dict[tuple[str, str, int], str]:
        ports = {}
        for eid, e in self.edges.items():
            if e.src_port is not None:
                ports[(e.src, "out", e.src_port)] = eid
            if e.tgt_port is not None:
                ports[(e.tgt, "in", e.tgt_port)] = eid
        return ports

    def port_edge(self, v: str, direction: str, port: int) -> str | None:
        """Edge attached to vertex ``v`` at ``direction`` ('in'/'out') ``port``."""
        return self._ports.get((v, direction, port))

    def is_vertex(self, p: str) -> bool:
        return self.points[p].is_vertex

    def vertices(self) -> list[str]:
        return sorted(p for p, pt in self.points.items() if pt.is_vertex)

    def edge_points(self) -> list[str]:
        return sorted(p for p, pt in self.points.items() if not pt.is_vertex)

    def input_points(self) -> list[str]:
        """In(G): edge-points without in-edges, sorted by id."""
        return [p for p in self.edge_points() if not self.in_edges(p)]

    def output_points(self) -> list[str]:
        return [p for p in self.edge_points() if not self.out_edges(p)]

    def isolated_points(self) -> list[str]:
        return [p for p in self.edge_points() if not self.in_edges(p) and not self.out_edges(p)]

    def is_point_graph(self) -> bool:
        return not self.edges and all(not pt.is_vertex for pt in self.points.values())

    def point_type(self, p: str) -> str:
        pt = self.points[p]
        if pt.type is None:
            raise GraphError("TYPE_MISMATCH", "vertex has no object type", p)
        return pt.type

    def degree(self, p: str) -> tuple[int, int]:
        return len(self.in_edges(p)), len(self.out_edges(p))

    @cached_property
    def _by_label(self) -> dict[tuple[str, str], list[str]]:
        idx: dict[tuple[str, str], list[str]] = {}
        for p in sorted(self.points):
            idx.setdefault(self.points[p].label, []).append(p)
        return idx

    def points_with_label(self, label: tuple[str, str]) -> list[str]:
        return self._by_label.get(label, [])

    # derived graphs ------------------------------------------------------

    def with_order(self, inputs: Iterable[str] | None, outputs: Iterable[str] | None) -> OpenGraph:
        return OpenGraph(self.sig, self.points, self.edges, inputs, outputs)

    def unordered(self) -> OpenGraph:
        return OpenGraph(self.sig, self.points, self.edges)

    def subgraph(self, points: Iterable[str], edges: Iterable[str]) -> OpenGraph:
        """Unordered subgraph on the given ids (endpoints must be included)."""
        return OpenGraph(
            self.sig,
            {p: self.points[p] for p in sorted(set(points))},
            {e: self.edges[e] for e in sorted(set(edges))},
        )

    def renamed(self, pmap: Mapping[str, str], emap: Mapping[str, str] | None = None) -> OpenGraph:
        """Rename point (and edge) ids; unmapped ids are kept."""
        emap = emap or {}

        def rp(p: str) -> str:
            return pmap.get(p, p)

        points = [Point(rp(p.id), p.gen, p.type) for p in self.points.values()]
        edges = [
            Edge(emap.get(e.id, e.id), rp(e.src), rp(e.tgt), e.type, e.src_port, e.tgt_port)
            for e in self.edges.values()
        ]
        ins = None if self.inputs is None else [rp(p) for p in self.inputs]
        outs = None if self.outputs is None else [rp(p) for p in self.outputs]
        return OpenGraph(self.sig, points, edges, ins, outs)


class GraphBuilder:
    """Incremental construction helper; edge types are inferred where possible."""

    def __init__(self, sig: Signature):
        self.sig = sig
        self._points: dict[str, Point] = {}
        self._edges: dict[str, Edge] = {}

    def vertex(self, pid: str, gen: str) -> str:
        self._points[pid] = Point(pid, gen=gen)
        return pid

    def point(self, pid: str, type: str) -> str:
        self._points[pid] = Point(pid, type=type)
        return pid

    def edge(
        self,
        src: str,
        tgt: str,
        src_port: int | None = None,
        tgt_port: int | None = None,
        eid: str | None = None,
        type: str | None = None,
    ) -> str:
        if type is None:
            s, t = self._points[src], self._points[tgt]
            if s.type is not None:
                type = s.type
            elif t.type is not None:
                type = t.type
            else:
                type = self.sig.cod(s.gen)[src_port or 0]  # type: ignore[arg-type]
        if eid is None:
            eid = fresh_id(f"e{len(self._edges)}", self._edges)
        self._edges[eid] = Edge(eid, src, tgt, type, src_port, tgt_port)
        return eid

    def gen_stubs(self, vid: str, gen: str, prefix: str | None = None) -> tuple[list[str], list[str]]:
        """Add vertex ``vid`` with one fresh edge-point per port."""
        prefix = prefix if prefix is not None else vid
        self.vertex(vid, gen)
        ins, outs = [], []
        for k, o in enumerate(self.sig.dom(gen)):
            p = self.point(fresh_id(f"{prefix}.i{k}", self._points), o)
            self.edge(p, vid, tgt_port=k)
            ins.append(p)
        for k, o in enumerate(self.sig.cod(gen)):
            p = self.point(fresh_id(f"{prefix}.o{k}", self._points), o)
            self.edge(vid, p, src_port=k)
            outs.append(p)
        return ins, outs

    def build(self, inputs: Iterable[str] | None = None, outputs: Iterable[str] | None = None) -> OpenGraph:
        return OpenGraph(self.sig, dict(self._points), dict(self._edges), inputs, outputs)


# validation ----------------------------------------------------------------


def validate_graph(g: OpenGraph) -> None:
    """Raise :class:`GraphError` for the first violated open-graph invariant."""
    sig = g.sig
    for pid in sorted(g.points):
        pt = g.points[pid]
        if pt.id != pid:
            raise GraphError("TYPE_MISMATCH", "point id does not match its key", pid)
        if pt.is_vertex and pt.gen not in sig.generators:
            raise GraphError("TYPE_MISMATCH", f"unknown generator {pt.gen!r}", pid)
        if not pt.is_vertex and pt.type not in sig.objects:
            raise GraphError("TYPE_MISMATCH", f"unknown object type {pt.type!r}", pid)

    for eid in sorted(g.edges):
        e = g.edges[eid]
        if e.src not in g.points or e.tgt not in g.points:
            raise GraphError("DANGLING_EDGE", "edge endpoint is not a point", eid)
        if e.type not in sig.objects:
            raise GraphError("TYPE_MISMATCH", f"unknown object type {e.type!r}", eid)
        s, t = g.points[e.src], g.points[e.tgt]
        if s.is_vertex and t.is_vertex:
            raise GraphError("VERTEX_VERTEX_EDGE", "edge joins two vertices", eid)
        for end, port, direction in ((s, e.src_port, "out"), (t, e.tgt_port, "in")):
            if end.is_vertex:
                if port is None:
                    raise GraphError("PORT_CLASH", f"missing {direction}-port index", eid)
                word = sig.cod(end.gen) if direction == "out" else sig.dom(end.gen)  # type: ignore[arg-type]
                if not 0 <= port < len(word):
                    raise GraphError("ARITY_MISMATCH", f"port {port} out of range for {end.gen}", eid)
                if word[port] != e.type:
                    raise GraphError("TYPE_MISMATCH", f"port {port} of {end.gen} has type {word[port]}", eid)
            else:
                if port is not None:
                    raise GraphError("PORT_CLASH", "port index on an edge-point endpoint", eid)
                if end.type != e.type:
                    raise GraphError("TYPE_MISMATCH", f"edge type {e.type} at point of type {end.type}", eid)

    for pid in g.edge_points():
        if len(g.in_edges(pid)) > 1:
            raise GraphError("DOUBLE_IN", "edge-point has two in-edges", pid)
        if len(g.out_edges(pid)) > 1:
            raise GraphError("DOUBLE_OUT", "edge-point has two out-edges", pid)

    for vid in g.vertices():
        gen = g.points[vid].gen
        for direction, edges, word, attr in (
            ("in", g.in_edges(vid), sig.dom(gen), "tgt_port"),  # type: ignore[arg-type]
            ("out", g.out_edges(vid), sig.cod(gen), "src_port"),  # type: ignore[arg-type]
        ):
            ports = [getattr(g.edges[e], attr) for e in edges]
            if len(set(ports)) != len(ports):
                raise GraphError("PORT_CLASH", f"two {direction}-edges share a port", vid)
            if len(ports) != len(word):
                raise GraphError(
                    "ARITY_MISMATCH", f"{gen} needs {len(word)} {direction}-edges, has {len(ports)}", vid
                )

    for name, order, expected in (("inputs", g.inputs, g.input_points()), ("outputs", g.outputs, g.output_points())):
        if order is not None and (len(order) != len(set(order)) or sorted(order) != expected):
            raise GraphError("BAD_BOUNDARY_ORDER", f"{name} must enumerate the {name} exactly once", name)


def is_valid(g: OpenGraph) -> bool:
    try:
        validate_graph(g)
    except GraphError:
        return False
    return True


# morphisms -----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class GraphMorphism:
    source: OpenGraph
    target: OpenGraph
    pmap: Mapping[str, str]
    emap: Mapping[str, str]

    def __call__(self, p: str) -> str:
        return self.pmap[p]

    def then(self, other: GraphMorphism) -> GraphMorphism:
        """Composite ``other ∘ self``."""
        return GraphMorphism(
            self.source,
            other.target,
            {p: other.pmap[q] for p, q in self.pmap.items()},
            {e: other.emap[f] for e, f in self.emap.items()},
        )

    def inverse(self) -> GraphMorphism:
        return GraphMorphism(
            self.target,
            self.source,
            {q: p for p, q in self.pmap.items()},
            {f: e for e, f in self.emap.items()},
        )

    def with_target(self, target: OpenGraph) -> GraphMorphism:
        return GraphMorphism(self.source, target, self.pmap, self.emap)

    @classmethod
    def identity(cls, g: OpenGraph) -> GraphMorphism:
        return cls(g, g, {p: p for p in g.points}, {e: e for e in g.edges})

    @classmethod
    def inclusion(cls, sub: OpenGraph, g: OpenGraph) -> GraphMorphism:
        return cls(sub, g, {p: p for p in sub.points}, {e: e for e in sub.edges})

    def key(self) -> tuple:
        return tuple(sorted(self.pmap.items())), tuple(sorted(self.emap.items()))


def check_morphism(f: GraphMorphism) -> None:
    """Raise :class:`MorphismError` unless ``f`` is an arrow of open-graphs."""
    src, tgt = f.source, f.target
    if set(f.pmap) != set(src.points) or not all(q in tgt.points for q in f.pmap.values()):
        raise MorphismError("NOT_STRUCTURE_PRESERVING", "point map is not a total map into the target")
    if set(f.emap) != set(src.edges) or not all(e in tgt.edges for e in f.emap.values()):
        raise MorphismError("NOT_STRUCTURE_PRESERVING", "edge map is not a total map into the target")
    for p in sorted(src.points):
        if src.points[p].label != tgt.points[f.pmap[p]].label:
            raise MorphismError("LABEL_MISMATCH", "point label not preserved", p)
    for eid in sorted(src.edges):
        e, e2 = src.edges[eid], tgt.edges[f.emap[eid]]
        if (e.type, e.src_port, e.tgt_port) != (e2.type, e2.src_port, e2.tgt_port):
            raise MorphismError("LABEL_MISMATCH", "edge type or port not preserved", eid)
        if f.pmap[e.src] != e2.src or f.pmap[e.tgt] != e2.tgt:
            raise MorphismError("NOT_STRUCTURE_PRESERVING", "source/target not preserved", eid)
    image = set(f.emap.values())
    for v in src.vertices():
        w = f.pmap[v]
        for e in tgt.in_edges(w) + tgt.out_edges(w):
            if e not in image:
                raise MorphismError("NOT_FULL_ON_VERTICES", f"edge {e} at image vertex {w} not covered", v)


def is_mono(f: GraphMorphism) -> bool:
    return len(set(f.pmap.values())) == len(f.pmap) and len(set(f.emap.values())) == len(f.emap)


# embedding / isomorphism search --------------------------------------------


def _components(g: OpenGraph) -> list[list[str]]:
    """Connected components (ignoring direction); each sorted, list sorted by root."""
    seen: set[str] = set()
    comps = []
    for p in sorted(g.points):
        if p in seen:
            continue
        comp, stack = [], [p]
        seen.add(p)
        while stack:
            x = stack.pop()
            comp.append(x)
            for eid in g.in_edges(x) + g.out_edges(x):
                e = g.edges[eid]
                for y in (e.src, e.tgt):
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
        comps.append(sorted(comp))
    return comps


def _root(g: OpenGraph, comp: list[str]) -> str:
    vs = [p for p in comp if g.points[p].is_vertex]
    return vs[0] if vs else comp[0]


class _Search:
    """Backtracking over connected components with deterministic propagation.

    In an open-graph an edge is fixed by its endpoints, and the neighbours of
    a mapped point (through ports at vertices, the unique in/out-edge at
    edge-points) are forced, so choosing the image of one point per component
    determines the whole component.
    """

    def __init__(self, src: OpenGraph, tgt: OpenGraph, iso: bool):
        self.src, self.tgt, self.iso = src, tgt, iso
        self.pmap: dict[str, str] = {}
        self.emap: dict[str, str] = {}
        self.used: set[str] = set()

    def _compatible(self, p: str, q: str) -> bool:
        if q in self.used or self.src.points[p].label != self.tgt.points[q].label:
            return False
        return not self.iso or self.src.degree(p) == self.tgt.degree(q)

    def _partner(self, eid: str, at: str, image: str) -> str | None:
        src, tgt = self.src, self.tgt
        e = src.edges[eid]
        outgoing = e.src == at
        if src.points[at].is_vertex:
            return tgt.port_edge(image, "out" if outgoing else "in", e.src_port if outgoing else e.tgt_port)  # type: ignore[arg-type]
        cands = tgt.out_edges(image) if outgoing else tgt.in_edges(image)
        return cands[0] if cands else None

    def assign(self, p: str, q: str) -> list[tuple[str, str | None]] | None:
        """Map p -> q and propagate; return the undo log, or None on conflict."""
        if not self._compatible(p, q):
            return None
        log: list[tuple[str, str | None]] = []
        self.pmap[p] = q
        self.used.add(q)
        log.append(("p", p))
        stack = [p]
        while stack:
            x = stack.pop()
            y = self.pmap[x]
            for eid in self.src.in_edges(x) + self.src.out_edges(x):
                e = self.src.edges[eid]
                fid = self._partner(eid, x, y)
                if fid is None:
                    self.undo(log)
                    return None
                f = self.tgt.edges[fid]
                if (e.type, e.src_port, e.tgt_port) != (f.type, f.src_port, f.tgt_port):
                    self.undo(log)
                    return None
                if eid in self.emap:
                    if self.emap[eid] != fid:
                        self.undo(log)
                        return None
                else:
                    self.emap[eid] = fid
                    log.append(("e", eid))
                for a, b in ((e.src, f.src), (e.tgt, f.tgt)):
                    if a in self.pmap:
                        if self.pmap[a] != b:
                            self.undo(log)
                            return None
                    else:
                        if not self._compatible(a, b):
                            self.undo(log)
                            return None
                        self.pmap[a] = b
                        self.used.add(b)
                        log.append(("p", a))
                        stack.append(a)
        return log

    def undo(self, log: list) -> None:
        for kind, k in reversed(log):
            if kind == "p":
                self.used.discard(self.pmap.pop(k))
            else:
                del self.emap[k]
        log.clear()

    def run(self, fixed: Mapping[str, str] | None = None) -> Iterator[tuple[dict[str, str], dict[str, str]]]:
        logs = []
        for p, q in (fixed or {}).items():
            if p in self.pmap:
                if self.pmap[p] != q:
                    for lg in reversed(logs):
                        self.undo(lg)
                    return
                continue
            lg = self.assign(p, q) if q in self.tgt.points and p in self.src.points else None
            if lg is None:
                for lg2 in reversed(logs):
                    self.undo(lg2)
                return
            logs.append(lg)
        comps = [c for c in _components(self.src) if c[0] not in self.pmap and not any(x in self.pmap for x in c)]
        yield from self._rec(comps, 0)
        for lg in reversed(logs):
            self.undo(lg)

    def _rec(self, comps: list[list[str]], i: int) -> Iterator[tuple[dict[str, str], dict[str, str]]]:
        if i == len(comps):
            yield dict(self.pmap), dict(self.emap)
            return
        root = _root(self.src, comps[i])
        for q in self.tgt.points_with_label(self.src.points[root].label):
            log = self.assign(root, q)
            if log is None:
                continue
            yield from self._rec(comps, i + 1)
            self.undo(log)


def find_embeddings(src: OpenGraph, tgt: OpenGraph, fixed: Mapping[str, str] | None = None) -> Iterator[GraphMorphism]:
    """All injective structure/label/port-preserving maps ``src -> tgt``.

    For valid typed graphs these are exactly the monos of open-graphs (fullness
    on vertices follows from port preservation). Order is deterministic.
    """
    for pmap, emap in _Search(src, tgt, iso=False).run(fixed):
        yield GraphMorphism(src, tgt, pmap, emap)


def graph_invariant(g: OpenGraph) -> tuple:
    """Cheap isomorphism invariant used for bucketing, not a canonical form."""
    profile = Counter((g.points[p].label, g.degree(p)) for p in g.points)
    return (len(g.points), len(g.edges), tuple(sorted(profile.items())))


def find_isomorphism(
    g: OpenGraph,
    h: OpenGraph,
    respect_boundary_order: bool = False,
    fixed: Mapping[str, str] | None = None,
) -> GraphMorphism | None:
    """A label/port-preserving bijection ``g -> h`` extending ``fixed``, if any."""
    if len(g.points) != len(h.points) or len(g.edges) != len(h.edges):
        return None
    if graph_invariant(g) != graph_invariant(h):
        return None
    fixed = dict(fixed or {})
    if respect_boundary_order:
        for a, b in ((g.inputs, h.inputs), (g.outputs, h.outputs)):
            if (a is None) != (b is None):
                return None
            if a is not None:
                if len(a) != len(b):  # type: ignore[arg-type]
                    return None
                for p, q in zip(a, b):  # type: ignore[arg-type]
                    if fixed.get(p, q) != q:
                        return None
                    fixed[p] = q
    for pmap, emap in _Search(g, h, iso=True).run(fixed):
        return GraphMorphism(g, h, pmap, emap)
    return None


def is_isomorphic(g: OpenGraph, h: OpenGraph, respect_boundary_order: bool = False) -> bool:
    return find_isomorphism(g, h, respect_boundary_order) is not None


def format_graph(g: OpenGraph) -> str:
    """Deterministic textual adjacency dump."""
    lines = []
    for p in sorted(g.points):
        pt = g.points[p]
        lines.append(f"  {p}: {'gen ' + pt.gen if pt.is_vertex else 'point ' + str(pt.type)}")
    for eid in sorted(g.edges):
        e = g.edges[eid]
        s = e.src if e.src_port is None else f"{e.src}[{e.src_port}]"
        t = e.tgt if e.tgt_port is None else f"{e.tgt}[{e.tgt_port}]"
        lines.append(f"  {eid}: {s} -> {t} : {e.type}")
    ins = g.inputs if g.inputs is not None else tuple(g.input_points())
    outs = g.outputs if g.outputs is not None else tuple(g.output_points())
    lines.append(f"  inputs: {' '.join(ins) or '-'}")
    lines.append(f"  outputs: {' '.join(outs) or '-'}")
    return "\n".join(lines)
