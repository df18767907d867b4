"""Reading and writing theory files (UTF-8 JSON, one theory per file).

Top-level keys: ``objects``, ``generators``, ``graphs``, ``rules``,
``systems`` and ``valuations``.  Unknown keys are rejected so that typos do
not silently drop data.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .core import Edge, OpenGraph, Point, Signature, validate_graph
from .errors import OgrwError, TheoryError
from .rewrite import RewriteRule, RewriteSystem, make_rule
from .semantics import Tensor, Valuation


@dataclass
class TheoryBundle:
    signature: Signature
    graphs: dict[str, OpenGraph] = field(default_factory=dict)
    rules: dict[str, RewriteRule] = field(default_factory=dict)
    systems: dict[str, list[str]] = field(default_factory=dict)
    valuations: dict[str, Valuation] = field(default_factory=dict)

    def graph(self, name: str) -> OpenGraph:
        return self._get(self.graphs, name, "graph")

    def rule(self, name: str) -> RewriteRule:
        return self._get(self.rules, name, "rule")

    def valuation(self, name: str) -> Valuation:
        return self._get(self.valuations, name, "valuation")

    def system(self, name: str) -> RewriteSystem:
        names = self._get(self.systems, name, "system")
        try:
            return RewriteSystem.from_names(names, self.rules)
        except OgrwError as exc:
            raise TheoryError("VALIDATION_ERROR", str(exc), f"systems.{name}") from exc

    @staticmethod
    def _get(table: dict, name: str, kind: str):
        if name not in table:
            raise TheoryError("VALIDATION_ERROR", f"no {kind} named {name!r}", name)
        return table[name]


# parsing ---------------------------------------------------------------------


def _fail(where: str, msg: str) -> TheoryError:
    return TheoryError("PARSE_ERROR", msg, where)


def _expect(obj: Any, kind: type, where: str):
    if not isinstance(obj, kind) or (kind is int and isinstance(obj, bool)):
        raise _fail(where, f"expected {kind.__name__}")
    return obj


def _keys(obj: dict, required: set[str], optional: set[str], where: str) -> None:
    missing = required - set(obj)
    if missing:
        raise _fail(where, f"missing field {sorted(missing)[0]!r}")
    extra = set(obj) - required - optional
    if extra:
        raise _fail(where, f"unknown field {sorted(extra)[0]!r}")


def _str_list(obj: Any, where: str) -> list[str]:
    _expect(obj, list, where)
    for i, x in enumerate(obj):
        _expect(x, str, f"{where}[{i}]")
    return list(obj)


def _validation(where: str, exc: OgrwError) -> TheoryError:
    err = TheoryError("VALIDATION_ERROR", str(exc), where)
    err.cause_code = exc.code  # type: ignore[attr-defined]
    return err


def _parse_graph(sig: Signature, obj: Any, where: str) -> OpenGraph:
    _expect(obj, dict, where)
    _keys(obj, {"points"}, {"edges", "inputs", "outputs"}, where)
    points = []
    for pid, entry in _expect(obj["points"], dict, f"{where}.points").items():
        w = f"{where}.points.{pid}"
        _expect(entry, dict, w)
        if set(entry) == {"gen"}:
            points.append(Point(pid, gen=_expect(entry["gen"], str, w + ".gen")))
        elif set(entry) == {"type"}:
            points.append(Point(pid, type=_expect(entry["type"], str, w + ".type")))
        else:
            raise _fail(w, "a point is {\"gen\": name} or {\"type\": name}")
    edges = []
    for eid, entry in _expect(obj.get("edges", {}), dict, f"{where}.edges").items():
        w = f"{where}.edges.{eid}"
        _expect(entry, dict, w)
        _keys(entry, {"src", "tgt", "type"}, {"src_port", "tgt_port"}, w)
        ports = {}
        for k in ("src_port", "tgt_port"):
            ports[k] = _expect(entry[k], int, f"{w}.{k}") if k in entry else None
        edges.append(
            Edge(
                eid,
                _expect(entry["src"], str, w + ".src"),
                _expect(entry["tgt"], str, w + ".tgt"),
                _expect(entry["type"], str, w + ".type"),
                ports["src_port"],
                ports["tgt_port"],
            )
        )
    ins = _str_list(obj["inputs"], f"{where}.inputs") if "inputs" in obj else None
    outs = _str_list(obj["outputs"], f"{where}.outputs") if "outputs" in obj else None
    g = OpenGraph(sig, points, edges, ins, outs)
    try:
        validate_graph(g)
    except OgrwError as exc:
        raise _validation(where, exc) from exc
    return g


def _pairs(obj: Any, where: str) -> list[tuple[str, str]]:
    _expect(obj, list, where)
    out = []
    for i, pair in enumerate(obj):
        if not (isinstance(pair, list) and len(pair) == 2 and all(isinstance(x, str) for x in pair)):
            raise _fail(f"{where}[{i}]", "expected a [lhs-point, rhs-point] pair")
        out.append((pair[0], pair[1]))
    return out


def theory_from_json(data: Any) -> TheoryBundle:
    _expect(data, dict, "$")
    _keys(data, {"objects"}, {"generators", "graphs", "rules", "systems", "valuations"}, "$")
    objects = _str_list(data["objects"], "objects")
    gens = {}
    for name, entry in _expect(data.get("generators", {}), dict, "generators").items():
        w = f"generators.{name}"
        _expect(entry, dict, w)
        _keys(entry, {"dom", "cod"}, set(), w)
        gens[name] = (_str_list(entry["dom"], w + ".dom"), _str_list(entry["cod"], w + ".cod"))
    try:
        sig = Signature(tuple(objects), gens)
    except OgrwError as exc:
        raise _validation("generators", exc) from exc

    bundle = TheoryBundle(sig)
    for name, entry in _expect(data.get("graphs", {}), dict, "graphs").items():
        bundle.graphs[name] = _parse_graph(sig, entry, f"graphs.{name}")

    for name, entry in _expect(data.get("rules", {}), dict, "rules").items():
        w = f"rules.{name}"
        _expect(entry, dict, w)
        _keys(entry, {"lhs", "rhs"}, {"input_map", "output_map"}, w)
        sides = []
        for side in ("lhs", "rhs"):
            ref = entry[side]
            if isinstance(ref, str):
                if ref not in bundle.graphs:
                    raise TheoryError("VALIDATION_ERROR", f"no graph named {ref!r}", f"{w}.{side}")
                sides.append(bundle.graphs[ref])
            else:
                sides.append(_parse_graph(sig, ref, f"{w}.{side}"))
        imap = _pairs(entry["input_map"], w + ".input_map") if "input_map" in entry else None
        omap = _pairs(entry["output_map"], w + ".output_map") if "output_map" in entry else None
        try:
            bundle.rules[name] = make_rule(sides[0], sides[1], imap, omap, name=name)
        except OgrwError as exc:
            raise _validation(w, exc) from exc

    for name, entry in _expect(data.get("systems", {}), dict, "systems").items():
        bundle.systems[name] = _str_list(entry, f"systems.{name}")
        bundle.system(name)

    for name, entry in _expect(data.get("valuations", {}), dict, "valuations").items():
        w = f"valuations.{name}"
        _expect(entry, dict, w)
        _keys(entry, {"dims", "tensors"}, set(), w)
        dims = {}
        for o, d in _expect(entry["dims"], dict, w + ".dims").items():
            dims[o] = _expect(d, int, f"{w}.dims.{o}")
        val = Valuation(dims, {})
        try:
            for gen, entries in _expect(entry["tensors"], dict, w + ".tensors").items():
                _expect(entries, list, f"{w}.tensors.{gen}")
                for i, x in enumerate(entries):
                    _expect(x, int, f"{w}.tensors.{gen}[{i}]")
                if gen not in sig.generators:
                    raise TheoryError("VALIDATION_ERROR", f"unknown generator {gen!r}", f"{w}.tensors")
                val.interp[gen] = Tensor(val.shape_for(sig, gen), tuple(entries))  # type: ignore[index]
            val.check(sig)
        except TheoryError:
            raise
        except OgrwError as exc:
            raise _validation(w, exc) from exc
        bundle.valuations[name] = val
    return bundle


def parse_theory_text(text: str) -> TheoryBundle:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TheoryError("PARSE_ERROR", exc.msg, f"line {exc.lineno} column {exc.colno}") from exc
    return theory_from_json(data)


def parse_theory(path: str | Path) -> TheoryBundle:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise TheoryError("PARSE_ERROR", f"cannot read file: {exc.strerror}", str(path)) from exc
    return parse_theory_text(text)


# serialization ---------------------------------------------------------------


def graph_to_json(g: OpenGraph) -> dict:
    pts = {}
    for pid in sorted(g.points):
        p = g.points[pid]
        pts[pid] = {"gen": p.gen} if p.is_vertex else {"type": p.type}
    edges = {}
    for eid in sorted(g.edges):
        e = g.edges[eid]
        entry: dict[str, Any] = {"src": e.src, "tgt": e.tgt, "type": e.type}
        if e.src_port is not None:
            entry["src_port"] = e.src_port
        if e.tgt_port is not None:
            entry["tgt_port"] = e.tgt_port
        edges[eid] = entry
    out: dict[str, Any] = {"points": pts, "edges": edges}
    if g.inputs is not None:
        out["inputs"] = list(g.inputs)
    if g.outputs is not None:
        out["outputs"] = list(g.outputs)
    return out


def theory_to_json(b: TheoryBundle) -> dict:
    sig = b.signature

    def ref(g: OpenGraph):
        for name in sorted(b.graphs):
            if b.graphs[name] == g:
                return name
        return graph_to_json(g)

    return {
        "objects": list(sig.objects),
        "generators": {a: {"dom": list(d), "cod": list(c)} for a, (d, c) in sorted(sig.generators.items())},
        "graphs": {n: graph_to_json(b.graphs[n]) for n in sorted(b.graphs)},
        "rules": {
            n: {
                "lhs": ref(r.lhs),
                "rhs": ref(r.rhs),
                "input_map": [list(p) for p in r.input_pairs()],
                "output_map": [list(p) for p in r.output_pairs()],
            }
            for n, r in sorted(b.rules.items())
        },
        "systems": {n: list(s) for n, s in sorted(b.systems.items())},
        "valuations": {
            n: {
                "dims": dict(sorted(v.dims.items())),
                "tensors": {g: list(t.entries) for g, t in sorted(v.interp.items())},
            }
            for n, v in sorted(b.valuations.items())
        },
    }


def serialize_theory(b: TheoryBundle) -> str:
    return json.dumps(theory_to_json(b), indent=2) + "\n"


def bundles_equal(a: TheoryBundle, b: TheoryBundle) -> bool:
    """Structural equality of two bundles (rule names included)."""
    return (
        a.signature == b.signature
        and a.graphs == b.graphs
        and a.rules.keys() == b.rules.keys()
        and all(a.rules[n] == b.rules[n] and a.rules[n].name == b.rules[n].name for n in a.rules)
        and a.systems == b.systems
        and {n: (dict(v.dims), dict(v.interp)) for n, v in a.valuations.items()}
        == {n: (dict(v.dims), dict(v.interp)) for n, v in b.valuations.items()}
    )
