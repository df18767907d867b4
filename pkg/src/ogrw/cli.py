"""Command-line interface: ``ogrw <command> [options] THEORY``."""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from importlib import resources
from pathlib import Path
from typing import Any, Sequence

from .core import OpenGraph, format_graph
from .cospan import Cospan, compose, equivalent, tensor, trace
from .errors import OgrwError, TheoryError
from .homeo import match_modulo_homeo, normalize, normalize_with_steps
from .rewrite import RewriteRule, apply_rewrite, compose_rules_seq, find_matchings, overlap_from_pairs
from .search import search
from .semantics import check_rule_sound, evaluate
from .theory import TheoryBundle, graph_to_json, parse_theory

BUNDLED = ("bool.theory",)


def bundled_path(name: str) -> Path:
    return Path(str(resources.files("ogrw") / "data" / name))


def load_theory(path: str | None) -> TheoryBundle:
    """Load a theory file; a bare bundled file name falls back to the packaged copy."""
    if path is None:
        return parse_theory(bundled_path("bool.theory"))
    p = Path(path)
    if not p.exists() and p.name == path and path in BUNDLED:
        p = bundled_path(path)
    return parse_theory(p)


class Report:
    def __init__(self, fmt: str, color: bool):
        self.fmt = fmt
        self.color = color
        self.lines: list[str] = []
        self.data: dict[str, Any] = {}

    def line(self, text: str = "") -> None:
        self.lines.append(text)

    def head(self, text: str) -> None:
        self.lines.append(f"\x1b[1m{text}\x1b[0m" if self.color else text)

    def emit(self) -> str:
        if self.fmt == "json":
            return json.dumps(self.data, indent=2, sort_keys=True) + "\n"
        return "\n".join(self.lines) + "\n"


def _graph_block(rep: Report, title: str, g: OpenGraph) -> None:
    rep.head(title)
    rep.line(format_graph(g))


def _cospan(g: OpenGraph, name: str) -> Cospan:
    if g.inputs is None or g.outputs is None:
        raise TheoryError("VALIDATION_ERROR", "graph has no input/output order", name)
    return Cospan(g)


def _pairs(text: str) -> list[tuple[str, str]]:
    out = []
    for item in filter(None, text.split(",")):
        if "=" not in item:
            raise TheoryError("PARSE_ERROR", f"bad overlap pair {item!r}, expected a=b", "--overlap")
        a, b = item.split("=", 1)
        out.append((a.strip(), b.strip()))
    return out


def _matching_text(m) -> str:
    return ", ".join(f"{p}->{q}" for p, q in sorted(m.morphism.pmap.items()))


def cmd_validate(args, th: TheoryBundle, rep: Report) -> None:
    rep.head("ok")
    rep.line(f"objects: {' '.join(th.signature.objects)}")
    rep.line(f"generators: {len(th.signature.generators)}")
    rep.line(f"graphs: {len(th.graphs)}  rules: {len(th.rules)}  systems: {len(th.systems)}  valuations: {len(th.valuations)}")
    rep.data = {
        "status": "ok",
        "generators": len(th.signature.generators),
        "graphs": len(th.graphs),
        "rules": len(th.rules),
        "systems": len(th.systems),
        "valuations": len(th.valuations),
    }


def _matchings(args, th: TheoryBundle):
    rule, g = th.rule(args.rule), th.graph(args.graph)
    if args.modulo:
        return rule, [m for _, m in match_modulo_homeo(rule, g)]
    return rule, find_matchings(rule, g)


def cmd_match(args, th: TheoryBundle, rep: Report) -> None:
    _, ms = _matchings(args, th)
    rep.head(f"{len(ms)} matching(s) of {args.rule} in {args.graph}")
    for k, m in enumerate(ms):
        rep.line(f"  [{k}] {_matching_text(m)}")
    rep.data = {"count": len(ms), "matchings": [dict(sorted(m.morphism.pmap.items())) for m in ms]}


def cmd_rewrite(args, th: TheoryBundle, rep: Report) -> None:
    _, ms = _matchings(args, th)
    if not ms:
        raise OgrwError("NO_MATCH", f"rule {args.rule} does not match {args.graph}")
    if not 0 <= args.index < len(ms):
        raise OgrwError("NO_MATCH", f"matching index {args.index} out of range (0..{len(ms) - 1})")
    res = apply_rewrite(ms[args.index])
    if args.normalize:
        res = normalize(res)
    _graph_block(rep, f"{args.graph} rewritten by {args.rule} at [{args.index}]", res)
    rep.data = {"graph": graph_to_json(res)}


def cmd_normalize(args, th: TheoryBundle, rep: Report) -> None:
    g, steps = normalize_with_steps(th.graph(args.graph))
    _graph_block(rep, f"normal form of {args.graph} ({steps} contraction(s))", g)
    rep.data = {"steps": steps, "graph": graph_to_json(g)}


def cmd_derive(args, th: TheoryBundle, rep: Report) -> None:
    res = search(th.graph(args.source), th.graph(args.target), th.system(args.system), args.depth, args.allow_reverse)
    rep.head(f"{res.status.value}: {args.source} ~>* {args.target} under {args.system}")
    steps = []
    if res.derivation is not None:
        for k, st in enumerate(res.derivation.steps, 1):
            rep.line(f"  {k}. {st.rule}  [{_matching_text(st.matching)}]")
            steps.append({"rule": st.rule, "result": graph_to_json(st.result)})
        if args.verbose:
            for k, st in enumerate(res.derivation.steps, 1):
                _graph_block(rep, f"after step {k}", st.result)
    rep.line(f"  states explored: {res.explored}")
    rep.data = {"status": res.status.value, "steps": steps, "explored": res.explored}


def cmd_compose_rules(args, th: TheoryBundle, rep: Report) -> None:
    r1, r2 = th.rule(args.first), th.rule(args.second)
    r = compose_rules_seq(r1, r2, overlap_from_pairs(r1, r2, _pairs(args.overlap)))
    _rule_report(rep, r)


def _rule_report(rep: Report, r: RewriteRule) -> None:
    _graph_block(rep, f"rule {r.name} lhs", r.lhs)
    _graph_block(rep, "rhs", r.rhs)
    rep.line(f"  inputs: {' '.join(f'{a}={b}' for a, b in r.input_pairs()) or '-'}")
    rep.line(f"  outputs: {' '.join(f'{a}={b}' for a, b in r.output_pairs()) or '-'}")
    rep.data = {
        "name": r.name,
        "lhs": graph_to_json(r.lhs),
        "rhs": graph_to_json(r.rhs),
        "input_map": [list(p) for p in r.input_pairs()],
        "output_map": [list(p) for p in r.output_pairs()],
    }


def _cospan_report(rep: Report, title: str, c: Cospan) -> None:
    rep.head(f"{title}: {' '.join(c.dom) or 'I'} -> {' '.join(c.cod) or 'I'}")
    rep.line(format_graph(c.middle))
    rep.data = {"dom": list(c.dom), "cod": list(c.cod), "graph": graph_to_json(c.middle)}


def cmd_compose(args, th: TheoryBundle, rep: Report) -> None:
    g, h = _cospan(th.graph(args.first), args.first), _cospan(th.graph(args.second), args.second)
    _cospan_report(rep, f"{args.second} after {args.first}", compose(g, h))


def cmd_tensor(args, th: TheoryBundle, rep: Report) -> None:
    g, h = _cospan(th.graph(args.first), args.first), _cospan(th.graph(args.second), args.second)
    _cospan_report(rep, f"{args.first} (x) {args.second}", tensor(g, h))


def cmd_trace(args, th: TheoryBundle, rep: Report) -> None:
    c = trace(_cospan(th.graph(args.graph), args.graph), args.length)
    if args.normalize:
        c = c.normalized()
    _cospan_report(rep, f"trace of {args.graph} over {args.length} wire(s)", c)


def cmd_eq(args, th: TheoryBundle, rep: Report) -> None:
    g, h = _cospan(th.graph(args.first), args.first), _cospan(th.graph(args.second), args.second)
    s = th.system(args.system) if args.system else None
    verdict = equivalent(g, h, s, args.depth)
    rep.head(verdict.value)
    rep.data = {"verdict": verdict.value}


def cmd_eval(args, th: TheoryBundle, rep: Report) -> None:
    c = _cospan(th.graph(args.graph), args.graph)
    t = evaluate(c, th.valuation(args.valuation))
    rep.head(f"{args.graph} under {args.valuation}: shape {[d for d in t.dims]}")
    rep.line(f"  {json.dumps(t.nested())}")
    rep.data = {"shape": [[o, d] for o, d in t.shape], "entries": list(t.entries)}


def cmd_demo(args, th: TheoryBundle, rep: Report) -> None:
    """A short tour: loop dropping, or-gate evaluation, soundness, confluence."""
    from .randgen import random_graph
    from .core import find_isomorphism

    data: dict[str, Any] = {}
    drop, loop = th.rule("drop"), th.graph("loop")
    ms = find_matchings(drop, loop)
    after = apply_rewrite(ms[0])
    rep.head("loop dropping")
    rep.line(f"  matchings: {len(ms)}")
    rep.line(f"  result edge-points: {len(after.edge_points())}, normal form: {len(normalize(after).edge_points())}")
    data["loop"] = {"matchings": len(ms), "result_points": len(after.edge_points())}

    rep.head("or-gate truth table under eval")
    table = {}
    for a in "TF":
        for b in "TF":
            res = None
            for v in "TF":
                r = search(th.graph(f"or_{a}{b}"), th.graph(f"val_{v}"), th.system("eval"), 8)
                if r.derivation is not None:
                    res = v
            table[f"{a}{b}"] = res
            rep.line(f"  {a} or {b} = {res}")
    data["or"] = table

    r = search(th.graph("or_F"), th.graph("wire"), th.system("eval_dneg"), 5)
    names = r.derivation.rule_names() if r.derivation else []
    rep.head("F fed to the or-gate")
    rep.line(f"  {' ; '.join(names)}")
    data["or_F"] = names

    val = th.valuation("bool")
    sound = {n: check_rule_sound(rule, val) for n, rule in th.rules.items()}
    rep.head("rule soundness under bool")
    rep.line(f"  {sum(sound.values())}/{len(sound)} sound")
    data["sound"] = sound

    rng = random.Random(args.seed)
    agree = 0
    for _ in range(5):
        g = random_graph(rng, th.signature, rng.randint(1, 4), rng.randint(0, 2), rng.randint(0, 1), rng.randint(0, 6))
        forms = [normalize(g, random.Random(rng.random())) for _ in range(4)]
        agree += all(find_isomorphism(forms[0], f) is not None for f in forms)
    rep.head(f"contraction confluence (seed {args.seed})")
    rep.line(f"  {agree}/5 random graphs agree across orders")
    data["confluence"] = agree
    rep.data = data


COMMANDS = {
    "validate": cmd_validate,
    "match": cmd_match,
    "rewrite": cmd_rewrite,
    "normalize": cmd_normalize,
    "derive": cmd_derive,
    "compose-rules": cmd_compose_rules,
    "compose": cmd_compose,
    "tensor": cmd_tensor,
    "trace": cmd_trace,
    "eq": cmd_eq,
    "eval": cmd_eval,
    "demo": cmd_demo,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized commands")

    parser = argparse.ArgumentParser(prog="ogrw", description="Open-graph rewriting for string diagrams.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help, parents=[common])
        p.add_argument("theory", nargs="?", help="theory file (JSON); defaults to the bundled bool.theory")
        return p

    add("validate", "parse and validate a theory file")
    for name, help in (("match", "list matchings of a rule"), ("rewrite", "apply a rule")):
        p = add(name, help)
        p.add_argument("--rule", required=True)
        p.add_argument("--graph", required=True)
        p.add_argument("--modulo", action="store_true", help="match modulo edge-homeomorphism")
        if name == "rewrite":
            p.add_argument("--index", type=int, default=0)
            p.add_argument("--normalize", action="store_true")
    p = add("normalize", "contract a graph to its normal form")
    p.add_argument("--graph", required=True)
    p = add("derive", "search for a derivation between two graphs")
    p.add_argument("--system", required=True)
    p.add_argument("--from", dest="source", required=True)
    p.add_argument("--to", dest="target", required=True)
    p.add_argument("--depth", type=int, default=8)
    p.add_argument("--allow-reverse", action="store_true")
    p.add_argument("--verbose", action="store_true", help="print every intermediate graph")
    p = add("compose-rules", "sequentially compose two rules")
    p.add_argument("--first", required=True)
    p.add_argument("--second", required=True)
    p.add_argument("--overlap", default="", help="comma-separated rhs1=lhs2 point pairs")
    for name, help in (("compose", "compose two cospans"), ("tensor", "tensor two cospans"), ("eq", "compare two cospans")):
        p = add(name, help)
        p.add_argument("--first", required=True)
        p.add_argument("--second", required=True)
        if name == "eq":
            p.add_argument("--system")
            p.add_argument("--depth", type=int, default=6)
    p = add("trace", "feed outputs back into inputs")
    p.add_argument("--graph", required=True)
    p.add_argument("--length", type=int, default=1)
    p.add_argument("--normalize", action="store_true")
    p = add("eval", "evaluate a cospan under a valuation")
    p.add_argument("--graph", required=True)
    p.add_argument("--valuation", required=True)
    add("demo", "run the bundled boolean demo")
    return parser


def run_command(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    color = os.environ.get("OGRW_COLOR", "1") != "0" and hasattr(out, "isatty") and out.isatty()
    rep = Report(args.format, color and args.format == "text")
    try:
        th = load_theory(args.theory)
        COMMANDS[args.command](args, th, rep)
    except OgrwError as exc:
        if args.format == "json":
            out.write(json.dumps({"error": exc.code, "where": exc.where, "message": str(exc)}, sort_keys=True) + "\n")
        err.write(f"error: {exc}\n")
        return 1
    out.write(rep.emit())
    return 0


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
