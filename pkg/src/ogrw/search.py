"""Breadth-first derivation search modulo edge-homeomorphism."""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field

from .core import OpenGraph, find_isomorphism, graph_invariant
from .homeo import match_modulo_homeo, normalize
from .rewrite import Matching, RewriteSystem, apply_rewrite


class SearchStatus(enum.Enum):
    FOUND = "FOUND"
    NOT_FOUND = "NOT_FOUND"
    DEPTH_EXCEEDED = "DEPTH_EXCEEDED"


@dataclass(frozen=True, eq=False)
class DerivationStep:
    rule: str
    reverse: bool
    matching: Matching
    result: OpenGraph


@dataclass(frozen=True, eq=False)
class Derivation:
    start: OpenGraph
    steps: tuple[DerivationStep, ...] = ()

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def end(self) -> OpenGraph:
        return self.steps[-1].result if self.steps else self.start

    def rule_names(self) -> list[str]:
        return [s.rule for s in self.steps]

    def check(self) -> bool:
        """Replay every step and compare with the recorded results."""
        cur = self.start
        for s in self.steps:
            if find_isomorphism(normalize(s.matching.host), normalize(cur)) is None:
                return False
            nxt = normalize(apply_rewrite(s.matching))
            if find_isomorphism(nxt, s.result) is None:
                return False
            cur = s.result
        return True


@dataclass
class SearchResult:
    status: SearchStatus
    derivation: Derivation | None = None
    explored: int = 0


class StatePool:
    """Graphs seen so far, bucketed by a cheap invariant and compared by iso."""

    def __init__(self, respect_order: bool):
        self.respect = respect_order
        self.buckets: dict[tuple, list[tuple[OpenGraph, object]]] = {}

    def find(self, g: OpenGraph):
        for h, tag in self.buckets.get(graph_invariant(g), []):
            if find_isomorphism(g, h, self.respect) is not None:
                return tag
        return None

    def add(self, g: OpenGraph, tag) -> None:
        self.buckets.setdefault(graph_invariant(g), []).append((g, tag))

    def __len__(self) -> int:
        return sum(len(b) for b in self.buckets.values())


def successors(g: OpenGraph, s: RewriteSystem):
    """All one-step rewrites of ``g`` modulo subdivision, as normal forms."""
    for name, rule in s:
        for _, m in match_modulo_homeo(rule, g):
            yield name, m, normalize(apply_rewrite(m))


def search(
    g: OpenGraph,
    h: OpenGraph,
    s: RewriteSystem,
    max_depth: int,
    allow_reverse: bool = False,
    max_states: int = 20000,
) -> SearchResult:
    """Shortest derivation ``g ~>* h`` up to iso of normal forms.

    Boundary orders are respected when both graphs carry them.
    """
    system = s.with_reversed() if allow_reverse else s
    respect = g.inputs is not None and h.inputs is not None
    start, goal = normalize(g), normalize(h)
    if find_isomorphism(start, goal, respect) is not None:
        return SearchResult(SearchStatus.FOUND, Derivation(start), 1)
    pool = StatePool(respect)
    pool.add(start, ())
    frontier = deque([(start, ())])
    truncated = False
    depth = 0
    while frontier and depth < max_depth:
        depth += 1
        nxt = deque()
        for state, path in frontier:
            for name, m, res in successors(state, system):
                step = DerivationStep(name, name.startswith("~"), m, res)
                if find_isomorphism(res, goal, respect) is not None:
                    return SearchResult(SearchStatus.FOUND, Derivation(start, path + (step,)), len(pool))
                if pool.find(res) is not None:
                    continue
                if len(pool) >= max_states:
                    truncated = True
                    continue
                pool.add(res, ())
                nxt.append((res, path + (step,)))
        frontier = nxt
    if frontier or truncated:
        return SearchResult(SearchStatus.DEPTH_EXCEEDED, None, len(pool))
    return SearchResult(SearchStatus.NOT_FOUND, None, len(pool))


def derive(
    g: OpenGraph,
    h: OpenGraph,
    s: RewriteSystem,
    max_depth: int,
    allow_reverse: bool = False,
) -> Derivation | None:
    return search(g, h, s, max_depth, allow_reverse).derivation


def joinable(
    g: OpenGraph,
    h: OpenGraph,
    s: RewriteSystem,
    max_depth: int,
    max_states: int = 20000,
) -> SearchResult:
    """Bidirectional search: grow rewrite sets from both ends until they meet.

    Both sides rewrite with ``s``; the total number of steps is bounded by
    ``max_depth``.  A meeting state witnesses ``g`` and ``h`` being equal in
    the equational theory of ``s``.
    """
    respect = g.inputs is not None and h.inputs is not None
    a, b = normalize(g), normalize(h)
    if find_isomorphism(a, b, respect) is not None:
        return SearchResult(SearchStatus.FOUND, None, 2)
    pools = [StatePool(respect), StatePool(respect)]
    pools[0].add(a, 0)
    pools[1].add(b, 0)
    frontiers = [[a], [b]]
    spent = 0
    truncated = False
    while spent < max_depth and (frontiers[0] or frontiers[1]):
        side = 0 if (len(frontiers[0]) <= len(frontiers[1]) and frontiers[0]) or not frontiers[1] else 1
        other = pools[1 - side]
        nxt = []
        for state in frontiers[side]:
            for _, _, res in successors(state, s):
                if other.find(res) is not None:
                    return SearchResult(SearchStatus.FOUND, None, len(pools[0]) + len(pools[1]))
                if pools[side].find(res) is not None:
                    continue
                if len(pools[side]) >= max_states:
                    truncated = True
                    continue
                pools[side].add(res, spent + 1)
                nxt.append(res)
        frontiers[side] = nxt
        spent += 1
    total = len(pools[0]) + len(pools[1])
    if frontiers[0] or frontiers[1] or truncated:
        return SearchResult(SearchStatus.DEPTH_EXCEEDED, None, total)
    return SearchResult(SearchStatus.NOT_FOUND, None, total)
