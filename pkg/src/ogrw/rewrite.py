"""Rewrite rules, matchings, double-pushout rewriting and the rule algebra."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from .boundary import CoherentSpan, Subtraction, merge, point_graph, subtract
from .core import (
    GraphMorphism,
    OpenGraph,
    Point,
    check_morphism,
    find_embeddings,
    find_isomorphism,
    validate_graph,
)
from .errors import BoundaryError, MorphismError, RuleError


@dataclass(frozen=True, eq=False)
class RewriteRule:
    """A span ``L <- B -> R`` of monos out of a boundary point-graph ``B``."""

    lhs: OpenGraph
    rhs: OpenGraph
    boundary: OpenGraph
    b1: GraphMorphism
    b2: GraphMorphism
    name: str = ""

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RewriteRule):
            return NotImplemented
        return (
            self.lhs == other.lhs
            and self.rhs == other.rhs
            and self.boundary == other.boundary
            and dict(self.b1.pmap) == dict(other.b1.pmap)
            and dict(self.b2.pmap) == dict(other.b2.pmap)
        )

    __hash__ = None  # type: ignore[assignment]

    def input_pairs(self) -> list[tuple[str, str]]:
        """(lhs point, rhs point) for each boundary point that is an input."""
        ins = set(self.lhs.input_points())
        order = self.boundary_inputs()
        return [(self.b1.pmap[x], self.b2.pmap[x]) for x in order if self.b1.pmap[x] in ins]

    def output_pairs(self) -> list[tuple[str, str]]:
        outs = set(self.lhs.output_points())
        order = self.boundary_outputs()
        return [(self.b1.pmap[x], self.b2.pmap[x]) for x in order if self.b1.pmap[x] in outs]

    def boundary_inputs(self) -> list[str]:
        """Boundary points that are inputs, ordered by the lhs input order if any."""
        inv = {p: x for x, p in self.b1.pmap.items()}
        ins = self.lhs.inputs if self.lhs.inputs is not None else self.lhs.input_points()
        return [inv[p] for p in ins]

    def boundary_outputs(self) -> list[str]:
        inv = {p: x for x, p in self.b1.pmap.items()}
        outs = self.lhs.outputs if self.lhs.outputs is not None else self.lhs.output_points()
        return [inv[p] for p in outs]


def make_rule(
    lhs: OpenGraph,
    rhs: OpenGraph,
    input_map: Iterable[tuple[str, str]] | None = None,
    output_map: Iterable[tuple[str, str]] | None = None,
    name: str = "",
) -> RewriteRule:
    """Build a rule from a pairing of lhs and rhs boundary points.

    Without explicit maps, boundaries are paired by position when both sides
    carry boundary orders and by identical ids otherwise.
    """
    validate_graph(lhs)
    validate_graph(rhs)
    for g, side in ((lhs, "lhs"), (rhs, "rhs")):
        if g.isolated_points():
            raise RuleError("ISOLATED_POINT_IN_RULE", f"{side} has isolated points", g.isolated_points()[0])

    def default(l_order, r_order, l_set, r_set):
        if l_order is not None and r_order is not None:
            if len(l_order) != len(r_order):
                raise RuleError("BOUNDARY_MISMATCH", "boundary orders have different lengths")
            return list(zip(l_order, r_order))
        return [(p, p) for p in l_set]

    if input_map is None:
        input_map = default(lhs.inputs, rhs.inputs, lhs.input_points(), rhs.input_points())
    if output_map is None:
        output_map = default(lhs.outputs, rhs.outputs, lhs.output_points(), rhs.output_points())
    input_map, output_map = list(input_map), list(output_map)

    for pairs, l_set, r_set, what in (
        (input_map, lhs.input_points(), rhs.input_points(), "inputs"),
        (output_map, lhs.output_points(), rhs.output_points(), "outputs"),
    ):
        ls, rs = [a for a, _ in pairs], [b for _, b in pairs]
        if sorted(ls) != l_set or sorted(rs) != r_set:
            raise RuleError("BOUNDARY_MISMATCH", f"pairing is not a bijection between the {what}")
        for a, b in pairs:
            if lhs.points[a].type != rhs.points[b].type:
                raise RuleError("BOUNDARY_MISMATCH", f"type of {a} differs from {b}", a)

    pairs = input_map + output_map
    bgraph = point_graph(lhs, [a for a, _ in pairs])
    b1 = GraphMorphism(bgraph, lhs, {a: a for a, _ in pairs}, {})
    b2 = GraphMorphism(bgraph, rhs, {a: b for a, b in pairs}, {})
    return RewriteRule(lhs, rhs, bgraph, b1, b2, name)


def reverse_rule(r: RewriteRule) -> RewriteRule:
    name = r.name[1:] if r.name.startswith("~") else "~" + r.name if r.name else ""
    return RewriteRule(r.rhs, r.lhs, r.boundary, r.b2, r.b1, name)


@dataclass(frozen=True, eq=False)
class Matching:
    rule: RewriteRule
    host: OpenGraph
    morphism: GraphMorphism

    def key(self) -> tuple:
        return self.morphism.key()


def find_matchings(rule: RewriteRule, g: OpenGraph) -> list[Matching]:
    """All injective, vertex-full embeddings of the lhs, sorted by their maps."""
    found = [Matching(rule, g, m) for m in find_embeddings(rule.lhs, g)]
    return sorted(found, key=Matching.key)


def check_matching(m: Matching) -> None:
    try:
        check_morphism(m.morphism)
    except MorphismError as exc:
        raise BoundaryError("NOT_MATCHING", str(exc)) from exc


@dataclass(frozen=True, eq=False)
class RewriteResult:
    """``G[L -> R]_m`` with the maps needed to track elements through it.

    ``context`` embeds the complement and ``rhs_embedding`` embeds R; every
    element of the host that is not deleted keeps its id.
    """

    graph: OpenGraph
    subtraction: Subtraction
    context: GraphMorphism
    rhs_embedding: GraphMorphism
    matching: Matching


def rewrite(m: Matching) -> RewriteResult:
    rule, host = m.rule, m.host
    sub = subtract(m.morphism)
    h = sub.graph
    # coboundary re-indexed over the rule's own boundary graph
    cob = GraphMorphism(rule.boundary, h, {x: m.morphism.pmap[p] for x, p in rule.b1.pmap.items()}, {})
    merged, inj_h, inj_r = merge(CoherentSpan(rule.boundary, cob, rule.b2))
    if host.inputs is not None or host.outputs is not None:
        merged = merged.with_order(host.inputs, host.outputs)
        inj_h = inj_h.with_target(merged)
        inj_r = inj_r.with_target(merged)
    validate_graph(merged)
    return RewriteResult(merged, sub, inj_h, inj_r, m)


def apply_rewrite(m: Matching) -> OpenGraph:
    return rewrite(m).graph


@dataclass
class RewriteSystem:
    """Named rules; a ``~`` prefix on a name denotes the reversed rule."""

    rules: dict[str, RewriteRule] = field(default_factory=dict)

    @classmethod
    def from_names(cls, names: Sequence[str], library: Mapping[str, RewriteRule]) -> RewriteSystem:
        rules: dict[str, RewriteRule] = {}
        for n in names:
            if n in rules:
                raise RuleError("DUPLICATE_RULE", f"rule {n!r} listed twice", n)
            base = n[1:] if n.startswith("~") else n
            if base not in library:
                raise RuleError("UNKNOWN_RULE", f"no rule named {base!r}", n)
            r = library[base]
            rules[n] = reverse_rule(r) if n.startswith("~") else r
        return cls(rules)

    def __len__(self) -> int:
        return len(self.rules)

    def __iter__(self) -> Iterator[tuple[str, RewriteRule]]:
        return iter(self.rules.items())

    def names(self) -> list[str]:
        return list(self.rules)

    def with_reversed(self) -> RewriteSystem:
        out = dict(self.rules)
        for n, r in self.rules.items():
            rn = n[1:] if n.startswith("~") else "~" + n
            out.setdefault(rn, reverse_rule(r))
        return RewriteSystem(out)


def one_step_results(g: OpenGraph, s: RewriteSystem) -> Iterator[tuple[str, Matching, OpenGraph]]:
    for name, rule in s:
        for m in find_matchings(rule, g):
            yield name, m, apply_rewrite(m)


def rewrites_to(g: OpenGraph, h: OpenGraph, s: RewriteSystem) -> bool:
    """True iff one rule application (plain matching) turns g into h."""
    respect = g.inputs is not None and h.inputs is not None
    return any(find_isomorphism(res, h, respect) is not None for _, _, res in one_step_results(g, s))


# rule algebra ----------------------------------------------------------------


def extend_rule(r: RewriteRule, m: Matching, name: str = "") -> RewriteRule:
    """The rule ``G -> G[L -> R]_m`` whose boundary is the boundary of G.

    Boundary points of G survive rewriting with unchanged ids, so the shared
    boundary pairs each of them with itself.
    """
    result = apply_rewrite(Matching(r, m.host, m.morphism))
    g = m.host.unordered()
    res = result.unordered()
    return make_rule(
        g,
        res,
        [(p, p) for p in g.input_points()],
        [(p, p) for p in g.output_points()],
        name or (f"{r.name}@ext" if r.name else ""),
    )


def overlap_from_pairs(r1: RewriteRule, r2: RewriteRule, pairs: Iterable[tuple[str, str]]) -> CoherentSpan:
    """Overlap of ``R1`` and ``L2`` identifying the given point pairs.

    The apex holds the listed points (ids from R1) together with every R1
    edge whose endpoints are both listed and which has a matching L2 edge.
    """
    pairs = list(pairs)
    p12 = dict(pairs)
    r1g, l2 = r1.rhs, r2.lhs
    pts = [r1g.points[a] for a, _ in pairs]
    edges, emap2 = {}, {}
    for eid in sorted(r1g.edges):
        e = r1g.edges[eid]
        if e.src in p12 and e.tgt in p12:
            for fid in l2.out_edges(p12[e.src]):
                f = l2.edges[fid]
                if f.tgt == p12[e.tgt] and (f.type, f.src_port, f.tgt_port) == (e.type, e.src_port, e.tgt_port):
                    edges[eid] = e
                    emap2[eid] = fid
    apex = OpenGraph(r1g.sig, [Point(p.id, p.gen, p.type) for p in pts], edges)
    left = GraphMorphism(apex, r1g, {a: a for a, _ in pairs}, {e: e for e in edges})
    right = GraphMorphism(apex, l2, p12, emap2)
    return CoherentSpan(apex, left, right)


def compose_rules_seq(r1: RewriteRule, r2: RewriteRule, overlap: CoherentSpan, name: str = "") -> RewriteRule:
    """Sequential composite ``M[R1 -> L1] -> M[L2 -> R2]`` with ``M = R1 +_K L2``."""
    big, i1, i2 = merge(overlap)
    before = apply_rewrite(Matching(reverse_rule(r1), big, i1))
    after = apply_rewrite(Matching(r2, big, i2))
    return make_rule(
        before,
        after,
        [(p, p) for p in big.input_points()],
        [(p, p) for p in big.output_points()],
        name or (f"{r1.name};{r2.name}" if r1.name or r2.name else ""),
    )
