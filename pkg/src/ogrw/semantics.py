"""Exact-integer tensor models of diagrams.

A valuation gives each object a dimension and each generator a tensor whose
indices run over its input ports then its output ports.  A diagram evaluates
to the sum, over all assignments of indices to its wires, of the product of
the generator entries; every closed circle multiplies by its dimension.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from .core import Signature
from .cospan import Cospan
from .errors import SemanticsError
from .homeo import wires
from .rewrite import RewriteRule

INT64_MAX = 2**63 - 1


@dataclass(frozen=True)
class Tensor:
    """``shape`` is a tuple of (object, dimension); ``entries`` are row-major."""

    shape: tuple[tuple[str, int], ...]
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "shape", tuple((o, int(d)) for o, d in self.shape))
        object.__setattr__(self, "entries", tuple(int(x) for x in self.entries))
        if any(d < 1 for _, d in self.shape):
            raise SemanticsError("SHAPE_MISMATCH", "dimensions must be at least 1")
        if len(self.entries) != math.prod(self.dims):
            raise SemanticsError(
                "SHAPE_MISMATCH", f"{len(self.entries)} entries for shape {list(self.dims)}"
            )

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(d for _, d in self.shape)

    def offset(self, idx: Sequence[int]) -> int:
        off = 0
        for i, d in zip(idx, self.dims):
            off = off * d + i
        return off

    def __getitem__(self, idx: Sequence[int]) -> int:
        return self.entries[self.offset(idx)]

    @classmethod
    def from_function(cls, shape: Sequence[tuple[str, int]], f: Callable[..., int]) -> Tensor:
        dims = [d for _, d in shape]
        return cls(tuple(shape), tuple(f(*idx) for idx in itertools.product(*map(range, dims))))

    def nested(self):
        """Entries as nested lists (a bare int for a scalar)."""
        if not self.shape:
            return self.entries[0]
        flat = list(self.entries)
        for d in reversed(self.dims[1:]):
            flat = [flat[i : i + d] for i in range(0, len(flat), d)]
        return flat


@dataclass
class Valuation:
    dims: Mapping[str, int]
    interp: Mapping[str, Tensor] = field(default_factory=dict)

    def shape_for(self, sig: Signature, gen: str) -> tuple[tuple[str, int], ...]:
        word = sig.dom(gen) + sig.cod(gen)
        try:
            return tuple((o, self.dims[o]) for o in word)
        except KeyError as exc:
            raise SemanticsError("SHAPE_MISMATCH", f"no dimension for object {exc.args[0]!r}") from exc

    def check(self, sig: Signature) -> None:
        for o in sig.objects:
            if o not in self.dims or self.dims[o] < 1:
                raise SemanticsError("SHAPE_MISMATCH", f"no valid dimension for object {o!r}", o)
        for gen in sig.generators:
            if gen not in self.interp:
                raise SemanticsError("SHAPE_MISMATCH", f"no tensor for generator {gen!r}", gen)
            if self.interp[gen].shape != self.shape_for(sig, gen):
                raise SemanticsError("SHAPE_MISMATCH", "tensor shape does not match the signature", gen)


def _guard(x: int) -> int:
    if abs(x) > INT64_MAX:
        raise SemanticsError("OVERFLOW", "entry exceeds the 64-bit range")
    return x


def evaluate(c: Cospan, v: Valuation) -> Tensor:
    """Brute-force contraction over wire indices, wires taken in id order."""
    g = c.middle
    sig = g.sig
    for o in sig.objects:
        if o not in v.dims:
            raise SemanticsError("SHAPE_MISMATCH", f"no dimension for object {o!r}", o)
    factor = 1
    var_of: dict[str, int] = {}
    var_dims: list[int] = []
    for w in wires(g):
        d = v.dims[g.point_type(w.points[0])]
        if w.circle:
            factor *= d
            continue
        for p in w.points:
            var_of[p] = len(var_dims)
        var_dims.append(d)

    factors = []
    for vid in g.vertices():
        gen = g.points[vid].gen
        t = v.interp.get(gen)  # type: ignore[arg-type]
        if t is None or t.shape != v.shape_for(sig, gen):  # type: ignore[arg-type]
            raise SemanticsError("SHAPE_MISMATCH", f"bad or missing tensor for {gen}", vid)
        slots = [var_of[g.edges[g.port_edge(vid, "in", k)].src] for k in range(len(sig.dom(gen)))]  # type: ignore[arg-type, index]
        slots += [var_of[g.edges[g.port_edge(vid, "out", k)].tgt] for k in range(len(sig.cod(gen)))]  # type: ignore[arg-type, index]
        factors.append((t, slots))

    out_vars = [var_of[p] for p in c.leg_in] + [var_of[p] for p in c.leg_out]
    shape = tuple((g.point_type(p), v.dims[g.point_type(p)]) for p in c.leg_in + c.leg_out)
    result = [0] * math.prod(d for _, d in shape)
    out_dims = [d for _, d in shape]

    for assign in itertools.product(*map(range, var_dims)):
        prod = factor
        for t, slots in factors:
            x = t[[assign[s] for s in slots]]
            if x == 0:
                prod = 0
                break
            prod = _guard(prod * x)
        if prod == 0:
            continue
        off = 0
        for var, d in zip(out_vars, out_dims):
            off = off * d + assign[var]
        result[off] = _guard(result[off] + prod)
    return Tensor(shape, tuple(result))


def rule_cospans(r: RewriteRule) -> tuple[Cospan, Cospan]:
    """Both sides of a rule as cospans ordered along the shared boundary."""
    ins, outs = r.boundary_inputs(), r.boundary_outputs()
    left = Cospan(r.lhs.with_order([r.b1.pmap[x] for x in ins], [r.b1.pmap[x] for x in outs]))
    right = Cospan(r.rhs.with_order([r.b2.pmap[x] for x in ins], [r.b2.pmap[x] for x in outs]))
    return left, right


def check_rule_sound(r: RewriteRule, v: Valuation) -> bool:
    left, right = rule_cospans(r)
    return evaluate(left, v).entries == evaluate(right, v).entries


def bool_valuation(sig: Signature | None = None) -> Valuation:
    """Booleans as basis vectors of a 2-dimensional space: index 0 is F, 1 is T.

    Gates are their truth tables, copying is the diagonal and ignoring sums
    over the discarded index.  A generator named ``box`` of type B -> B, if
    present, is read as the identity.
    """
    B = "B"
    b2 = (B, 2)
    interp = {
        "and": Tensor.from_function((b2, b2, b2), lambda a, b, c: int(c == (a & b))),
        "not": Tensor.from_function((b2, b2), lambda a, b: int(b == 1 - a)),
        "copy": Tensor.from_function((b2, b2, b2), lambda a, b, c: int(a == b == c)),
        "ignore": Tensor((b2,), (1, 1)),
        "val_T": Tensor((b2,), (0, 1)),
        "val_F": Tensor((b2,), (1, 0)),
    }
    if sig is not None and "box" in sig.generators:
        interp["box"] = Tensor.from_function((b2, b2), lambda a, b: int(a == b))
    return Valuation({B: 2}, interp)
