"""The bundled boolean-circuit theory.

Generators ``and``, ``not``, ``copy``, ``ignore``, ``val_T`` and ``val_F``
over one object ``B``, the evaluation axioms, double negation and the
``not x and x = F`` law.  The bundled theory file adds a ``box: B -> B``
generator for the loop-dropping example; it is read as the identity.
"""
from __future__ import annotations

from .core import GraphBuilder, OpenGraph, Signature
from .rewrite import RewriteRule, make_rule
from .semantics import bool_valuation
from .theory import TheoryBundle

B = "B"

SIG_BOOL = Signature(
    (B,),
    {
        "and": ((B, B), (B,)),
        "not": ((B,), (B,)),
        "copy": ((B,), (B, B)),
        "ignore": ((B,), ()),
        "val_T": ((), (B,)),
        "val_F": ((), (B,)),
    },
)

SIG_BOOL_BOX = Signature((B,), {**SIG_BOOL.generators, "box": ((B,), (B,))})

EVAL_RULES = [
    "copy_T", "copy_F", "ign_T", "ign_F", "not_T", "not_F",
    "and_T0", "and_T1", "and_F0", "and_F1",
]


class _C:
    """Tiny circuit builder: vertices are wired through one edge-point each."""

    def __init__(self, sig: Signature = SIG_BOOL):
        self.b = GraphBuilder(sig)
        self.n = 0

    def gate(self, vid: str, gen: str) -> str:
        return self.b.vertex(vid, gen)

    def point(self, pid: str) -> str:
        return self.b.point(pid, B)

    def wire(self, src: tuple[str, int] | str, tgt: tuple[str, int] | str, pid: str | None = None) -> str:
        """Connect a vertex output (or boundary point) to a vertex input (or point)."""
        if isinstance(src, tuple) and isinstance(tgt, tuple):
            pid = pid or f"w{self.n}"
            self.n += 1
            self.point(pid)
            self.b.edge(src[0], pid, src_port=src[1])
            self.b.edge(pid, tgt[0], tgt_port=tgt[1])
            return pid
        if isinstance(src, tuple):
            self.b.edge(src[0], tgt, src_port=src[1])  # type: ignore[arg-type]
            return tgt  # type: ignore[return-value]
        if isinstance(tgt, tuple):
            self.b.edge(src, tgt[0], tgt_port=tgt[1])
            return src
        self.b.edge(src, tgt)
        return src

    def build(self, inputs=None, outputs=None) -> OpenGraph:
        return self.b.build(inputs, outputs)


def value(b: str, out: str = "o") -> OpenGraph:
    c = _C()
    c.gate("v", f"val_{b}")
    c.point(out)
    c.wire(("v", 0), out)
    return c.build([], [out])


def bare_wire(sig: Signature = SIG_BOOL) -> OpenGraph:
    c = _C(sig)
    c.point("i")
    c.point("o")
    c.wire("i", "o")
    return c.build(["i"], ["o"])


def or_gate(a: str | None = None, b: str | None = None) -> OpenGraph:
    """``not(not a and not b)``; ``a``/``b`` are ``"T"``/``"F"`` or None for an open input."""
    c = _C()
    ins = []
    for name, val in (("a", a), ("b", b)):
        c.gate(f"n{name}", "not")
        if val is None:
            c.point(name)
            c.wire(name, (f"n{name}", 0))
            ins.append(name)
        else:
            c.gate(name, f"val_{val}")
            c.wire((name, 0), (f"n{name}", 0), f"p{name}")
    c.gate("g", "and")
    c.wire(("na", 0), ("g", 0), "qa")
    c.wire(("nb", 0), ("g", 1), "qb")
    c.gate("n", "not")
    c.wire(("g", 0), ("n", 0), "r")
    c.point("o")
    c.wire(("n", 0), "o")
    return c.build(ins, ["o"])


def _val_into(c: _C, b: str, tgt: tuple[str, int], vid: str = "v", pid: str = "p") -> None:
    c.gate(vid, f"val_{b}")
    c.wire((vid, 0), tgt, pid)


def _rule(name: str, lhs: OpenGraph, rhs: OpenGraph) -> RewriteRule:
    return make_rule(lhs, rhs, name=name)


def copy_rule(b: str) -> RewriteRule:
    c = _C()
    c.gate("c", "copy")
    _val_into(c, b, ("c", 0))
    c.point("o0")
    c.point("o1")
    c.wire(("c", 0), "o0")
    c.wire(("c", 1), "o1")
    lhs = c.build([], ["o0", "o1"])
    c = _C()
    for k in (0, 1):
        c.gate(f"v{k}", f"val_{b}")
        c.point(f"o{k}")
        c.wire((f"v{k}", 0), f"o{k}")
    return _rule(f"copy_{b}", lhs, c.build([], ["o0", "o1"]))


def ignore_rule(b: str) -> RewriteRule:
    c = _C()
    c.gate("x", "ignore")
    _val_into(c, b, ("x", 0))
    return _rule(f"ign_{b}", c.build([], []), OpenGraph(SIG_BOOL, inputs=[], outputs=[]))


def not_rule(b: str) -> RewriteRule:
    c = _C()
    c.gate("n", "not")
    _val_into(c, b, ("n", 0))
    c.point("o")
    c.wire(("n", 0), "o")
    flipped = "F" if b == "T" else "T"
    return _rule(f"not_{b}", c.build([], ["o"]), value(flipped))


def and_rule(b: str, port: int) -> RewriteRule:
    """``b`` fed into port ``port`` of a conjunction whose other input is open."""
    c = _C()
    c.gate("g", "and")
    _val_into(c, b, ("g", port))
    c.point("x")
    c.wire("x", ("g", 1 - port))
    c.point("o")
    c.wire(("g", 0), "o")
    lhs = c.build(["x"], ["o"])
    if b == "T":
        rhs = bare_wire().renamed({"i": "x"})
    else:
        c = _C()
        c.gate("k", "ignore")
        c.point("x")
        c.wire("x", ("k", 0))
        c.gate("v", "val_F")
        c.point("o")
        c.wire(("v", 0), "o")
        rhs = c.build(["x"], ["o"])
    return _rule(f"and_{b}{port}", lhs, rhs)


def not_not() -> OpenGraph:
    c = _C()
    c.point("i")
    c.gate("n1", "not")
    c.gate("n2", "not")
    c.wire("i", ("n1", 0))
    c.wire(("n1", 0), ("n2", 0), "m")
    c.point("o")
    c.wire(("n2", 0), "o")
    return c.build(["i"], ["o"])


def dneg_rule() -> RewriteRule:
    return _rule("dneg", not_not(), bare_wire())


def not_x_and_x() -> OpenGraph:
    """``x`` copied; one copy negated; both conjoined."""
    c = _C()
    c.point("i")
    c.gate("c", "copy")
    c.wire("i", ("c", 0))
    c.gate("n", "not")
    c.wire(("c", 0), ("n", 0), "a")
    c.gate("g", "and")
    c.wire(("n", 0), ("g", 0), "b")
    c.wire(("c", 1), ("g", 1), "d")
    c.point("o")
    c.wire(("g", 0), "o")
    return c.build(["i"], ["o"])


def false_and_ignore() -> OpenGraph:
    c = _C()
    c.point("i")
    c.gate("k", "ignore")
    c.wire("i", ("k", 0))
    c.gate("v", "val_F")
    c.point("o")
    c.wire(("v", 0), "o")
    return c.build(["i"], ["o"])


def nxx_rule() -> RewriteRule:
    return _rule("nxx", not_x_and_x(), false_and_ignore())


def lambda_f() -> OpenGraph:
    """``not x and x`` applied to F."""
    c = _C()
    c.gate("f", "val_F")
    c.gate("c", "copy")
    c.wire(("f", 0), ("c", 0), "i")
    c.gate("n", "not")
    c.wire(("c", 0), ("n", 0), "a")
    c.gate("g", "and")
    c.wire(("n", 0), ("g", 0), "b")
    c.wire(("c", 1), ("g", 1), "d")
    c.point("o")
    c.wire(("g", 0), "o")
    return c.build([], ["o"])


def lambda_f_beta() -> OpenGraph:
    """The result of copying F: ``not F and F``."""
    c = _C()
    c.gate("f0", "val_F")
    c.gate("n", "not")
    c.wire(("f0", 0), ("n", 0), "a")
    c.gate("g", "and")
    c.wire(("n", 0), ("g", 0), "b")
    c.gate("f1", "val_F")
    c.wire(("f1", 0), ("g", 1), "d")
    c.point("o")
    c.wire(("g", 0), "o")
    return c.build([], ["o"])


# box examples ------------------------------------------------------------------


def box_wire(sig: Signature = SIG_BOOL_BOX) -> OpenGraph:
    c = _C(sig)
    c.point("i")
    c.gate("v", "box")
    c.wire("i", ("v", 0))
    c.point("o")
    c.wire(("v", 0), "o")
    return c.build(["i"], ["o"])


def drop_rule(sig: Signature = SIG_BOOL_BOX) -> RewriteRule:
    """A box rewritten to a plain line."""
    return _rule("drop", box_wire(sig), bare_wire(sig))


def box_loop(points: int = 2, sig: Signature = SIG_BOOL_BOX) -> OpenGraph:
    """A box whose output is fed back to its input through ``points`` edge-points."""
    b = GraphBuilder(sig)
    b.vertex("v", "box")
    ids = ["s", "t"] if points == 2 else [f"s{k}" for k in range(points)]
    for p in ids:
        b.point(p, B)
    b.edge("v", ids[0], src_port=0, eid="e0")
    for k in range(len(ids) - 1):
        b.edge(ids[k], ids[k + 1], eid=f"e{k + 1}")
    b.edge(ids[-1], "v", tgt_port=0, eid=f"e{len(ids)}")
    return b.build()


def circle(points: int, sig: Signature = SIG_BOOL) -> OpenGraph:
    b = GraphBuilder(sig)
    ids = [f"c{k}" for k in range(points)]
    for p in ids:
        b.point(p, B)
    for k in range(points):
        b.edge(ids[k], ids[(k + 1) % points], eid=f"e{k}")
    return b.build()


# the bundle ----------------------------------------------------------------------


def bool_rules() -> dict[str, RewriteRule]:
    rules = {}
    for b in ("T", "F"):
        rules[f"copy_{b}"] = copy_rule(b)
        rules[f"ign_{b}"] = ignore_rule(b)
        rules[f"not_{b}"] = not_rule(b)
        for port in (0, 1):
            rules[f"and_{b}{port}"] = and_rule(b, port)
    rules["dneg"] = dneg_rule()
    rules["nxx"] = nxx_rule()
    return {n: rules[n] for n in sorted(rules)}


def bool_theory() -> TheoryBundle:
    """The boolean theory as shipped in ``data/bool.theory``."""
    sig = SIG_BOOL_BOX

    def lift(g: OpenGraph) -> OpenGraph:
        return OpenGraph(sig, g.points, g.edges, g.inputs, g.outputs)

    def lift_rule(r: RewriteRule) -> RewriteRule:
        return make_rule(lift(r.lhs), lift(r.rhs), r.input_pairs(), r.output_pairs(), name=r.name)

    graphs = {
        "wire": bare_wire(),
        "val_T": value("T"),
        "val_F": value("F"),
        "or_gate": or_gate(),
        "or_F": or_gate("F", None),
        "not_not": not_not(),
        "nxx_lhs": not_x_and_x(),
        "nxx_rhs": false_and_ignore(),
        "lambda_F": lambda_f(),
        "lambda_F_beta": lambda_f_beta(),
        "circle1": circle(1),
        "circle2": circle(2),
    }
    for a in "TF":
        for b in "TF":
            graphs[f"or_{a}{b}"] = or_gate(a, b)
    graphs = {n: lift(g) for n, g in graphs.items()}
    graphs["box"] = box_wire(sig)
    graphs["loop"] = box_loop(2, sig)
    graphs["loop1"] = box_loop(1, sig)

    rules = {n: lift_rule(r) for n, r in bool_rules().items()}
    rules["drop"] = drop_rule(sig)
    systems = {
        "eval": list(EVAL_RULES),
        "eval_dneg": EVAL_RULES + ["dneg"],
        "axioms": EVAL_RULES + ["dneg", "nxx"],
        "circles": ["drop"],
    }
    return TheoryBundle(
        sig,
        {n: graphs[n] for n in sorted(graphs)},
        {n: rules[n] for n in sorted(rules)},
        systems,
        {"bool": bool_valuation(sig)},
    )
