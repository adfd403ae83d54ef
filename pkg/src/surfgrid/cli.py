"""Command-line entry point.

Exit codes: 0 success, 1 domain rejection (error JSON on stderr), 2 budget
exhausted, 64 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import connectivity as cn
from . import generators as gen
from . import surfaces as sf
from . import transforms as tr
from . import width as wd
from .errors import BudgetExceeded, DomainError
from .graph import Graph, from_dimacs, from_json_obj, to_dimacs, to_dot, to_json_obj
from .minors import SearchBudget, bg_annotated, hadwiger, model_from_obj, validate_model

EX_USAGE = 64


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(f"{self.format_usage()}{self.prog}: error: {message}\n")

    def exit(self, status=0, message=None):
        if status:
            raise _Usage(message or "")
        if message:
            sys.stdout.write(message)
        raise _Done()


class _Done(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def _ints(text: str | None) -> list:
    if text is None or not text.strip():
        return []
    return [int(t) for t in text.replace(",", " ").split()]


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _load_graph(path: str) -> Graph:
    text = _read(path)
    if text.lstrip().startswith(("{", "[")):
        obj = json.loads(text)
        if isinstance(obj, dict) and "graph" in obj and "n" not in obj:
            obj = obj["graph"]
        return from_json_obj(obj)
    return from_dimacs(text)


def _budget(args) -> SearchBudget:
    return SearchBudget(max_pattern_vertices=64, max_host_vertices=10 ** 6,
                        node_limit=args.budget_nodes, time_limit=args.budget_seconds)


def _kinds(text: str) -> list:
    names = {"h": gen.HANDLE, "handle": gen.HANDLE, "c": gen.CROSSCAP,
             "x": gen.CROSSCAP, "crosscap": gen.CROSSCAP}
    out = []
    for t in text.replace(",", " ").split():
        if t.lower() not in names:
            raise DomainError(f"unknown transaction kind {t!r}")
        out.append(names[t.lower()])
    return out


# --------------------------------------------------------------- generate

def _generate(args) -> str:
    fam = args.family
    labeled = None
    extra = {}
    if fam == "dyck":
        labeled = gen.dyck_grid(args.handles, args.crosscaps, args.order)
    elif fam == "mixed":
        labeled = gen.mixed_surface_grid(args.order, _kinds(args.kinds), args.subdivisions)
    elif fam == "cylindrical":
        labeled = gen.cylindrical_grid(args.order, args.length)
    elif fam in ("annulus", "handle", "crosscap"):
        labeled = {"annulus": gen.annulus_grid, "handle": gen.handle_grid,
                   "crosscap": gen.crosscap_grid}[fam](args.order)
    elif fam in ("dtilde", "dhat"):
        labeled = gen.special_variants(fam, h=args.handles, c=args.crosscaps, k=args.order)
    if labeled is not None:
        g = labeled.graph
        payload = labeled.to_json_obj()
        labels = {v: f"{i},{j}" for v, (i, j) in labeled.coord.items()}
    else:
        labels = None
        if fam == "wall":
            g, coord = gen.elementary_wall_labeled(args.order)
            labels = {v: f"{r},{c}" for v, (r, c) in coord.items()}
        elif fam == "dyck-wall":
            g = gen.dyck_wall(args.handles, args.crosscaps, args.order)
        elif fam == "crossed":
            g = gen.crossed_grid(args.order)
        else:  # hairy-wall
            g, x, s = gen.hairy_wall(args.order)
            extra = {"X": sorted(x), "S": sorted(s)}
        payload = dict(to_json_obj(g), **extra)
    if args.format == "dimacs":
        return to_dimacs(g)
    if args.format == "dot":
        return to_dot(g, labels)
    return _dump(payload)


# --------------------------------------------------------------- surfaces

def _surfaces(args) -> str:
    names = lambda ss: ", ".join(s.name() for s in ss)
    if args.action == "sobs":
        return names(sf.sobs(sf.parse_surface_set(args.set))) + "\n"
    if args.action == "prevalent":
        return sf.prevalent(sf.parse_surface_set(args.set)).name() + "\n"
    if args.action == "contains":
        a, b = sf.parse_surface(args.surfaces[0]), sf.parse_surface(args.surfaces[1])
        return ("yes" if sf.contained_in(a, b) else "no") + "\n"
    return sf.hasse_dot(args.max_genus)


# ------------------------------------------------------------------ check

def _check(args):
    if args.what == "model":
        m = model_from_obj(json.loads(_read(args.file)))
        bad = validate_model(m)
        if bad:
            raise DomainError("invalid minor model", violations=bad)
        return _dump({"valid": True})
    g = _load_graph(args.graph)
    s = _ints(args.set) if args.set is not None else list(range(g.n))
    if args.what == "well-linked":
        cert = cn.is_well_linked(g, s, args.q, args.alpha)
        return _dump(cert.to_json_obj())
    if args.what == "strongly-linked":
        ok, bad = cn.is_strongly_linked(g, s)
        out = {"S": sorted(s), "strongly_linked": ok}
        if bad is not None:
            out["violation"] = {"S1": sorted(bad.S1), "S2": sorted(bad.S2),
                                "separation": bad.separation.to_json_obj()}
        return _dump(out)
    if args.what == "tangle":
        t = cn.Tangle.from_json_obj(json.loads(_read(args.file)))
        bad = cn.tangle_validate(g, t)
        if bad:
            raise DomainError("invalid tangle", violations=[str(b) for b in bad])
        return _dump({"valid": True, "order": t.order, "size": len(t.oriented)})
    # free-set
    f = cn.free_set(g, s, args.alpha, args.k)
    return _dump({"S": sorted(s), "k": args.k, "free_set": sorted(f),
                  "free": cn.is_free(g, s, f, args.alpha)})


# -------------------------------------------------------------- transform

def _transform(args) -> str:
    op = args.op
    if op == "plan":
        b = tr.plan_to_dyck(args.handles, args.crosscaps, args.order)
        return _dump({"g": b.g, "k": b.k, "required_order": b.required_order,
                      "step_plan": [list(s) for s in b.step_plan]})
    if op == "packing":
        p = tr.half_integral_packing(args.handles, args.crosscaps, args.x, args.y)
        return _dump({"copies": [c.to_json_obj() for c in p.copies],
                      "max_multiplicity": p.max_multiplicity()})
    if op == "annulus":
        a, b = tr.annulus_embed(args.handles, args.crosscaps, args.order, args.factor)
        return _dump({"contract": a.to_json_obj(), "regrow": b.to_json_obj()})
    fn = {"swap": tr.swap_adjacent, "crosscaps-to-handle": tr.crosscaps_to_handle,
          "handle-to-crosscaps": tr.handle_to_crosscaps}[op]
    return _dump(fn(args.order, _kinds(args.kinds), args.position).to_json_obj())


# ----------------------------------------------------------------- params

def _params(args) -> str:
    g = _load_graph(args.graph)
    x = _ints(args.set) if args.set is not None else None
    p = args.param
    if p == "tw":
        val = wd.treewidth_exact(g, args.cap)
        if args.format == "td":
            return wd.to_td_format(val.witness, g.n)
        return _dump({"tw": max(val.value, 0) if g.n else 0})
    if p == "tw-annotated":
        return _dump({"tw_annotated": wd.tw_annotated(g, x or []).value})
    if p == "tw-torso":
        return _dump({"tw_torso": wd.tw_torso(g, x or [], args.cap)})
    if p == "bg":
        return _dump({"bg": bg_annotated(g, x, _budget(args))[0]})
    if p == "hadwiger":
        return _dump({"hadwiger": hadwiger(g, _budget(args))[0]})
    if p == "g-bg":
        return _dump({"g_bg": wd.param_eval(g, "g_bg", args.genus, _budget(args))})
    if p == "sobs-bg":
        ss = sf.parse_surface_set(args.surfaces)
        return _dump({"sobs_bg": wd.param_eval(g, "sobs_bg", ss, _budget(args))})
    surf = sf.parse_surface(args.surfaces)
    return _dump({"bg_surface": wd.param_eval(g, "bg_surface", surf, _budget(args))})


# ----------------------------------------------------------------- parser

def _globals(parser, defaults: bool):
    # the same flags work before or after the subcommand; only the top
    # level sets defaults so a subcommand never overwrites an earlier value
    d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    parser.add_argument("--budget-nodes", type=int, default=d(2 * 10 ** 6),
                        help="search node limit for exhaustive searches (default 2e6)")
    parser.add_argument("--budget-seconds", type=float, default=d(None),
                        help="wall-clock limit for exhaustive searches (default none)")
    parser.add_argument("--threads", type=int, default=d(1),
                        help="accepted for interface stability; work runs on one thread")
    parser.add_argument("--output", "-o", default=d("-"),
                        help="output path (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="surfgrid", description=__doc__.splitlines()[0])
    _globals(top, True)
    common = _Parser(add_help=False)
    _globals(common, False)
    sub = top.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    g = add("generate", help="emit a grid family member")
    g.add_argument("family", choices=["dyck", "mixed", "cylindrical", "annulus", "handle",
                                      "crosscap", "dtilde", "dhat", "wall", "dyck-wall",
                                      "crossed", "hairy-wall"])
    g.add_argument("--handles", type=int, default=0)
    g.add_argument("--crosscaps", type=int, default=0)
    g.add_argument("--order", type=int, required=True)
    g.add_argument("--length", type=int, default=None, help="cycle length (cylindrical)")
    g.add_argument("--kinds", default="", help="comma list of handle/crosscap (mixed)")
    g.add_argument("--subdivisions", type=int, default=0)
    g.add_argument("--format", choices=["dimacs", "dot", "json"], default="json")

    s = add("surfaces", help="surface lattice calculus")
    s.add_argument("action", choices=["sobs", "prevalent", "contains", "lattice"])
    s.add_argument("surfaces", nargs="*", help="two surfaces for 'contains'")
    s.add_argument("--set", default="", help='closed surface set, e.g. "empty,sphere"')
    s.add_argument("--max-genus", type=int, default=4)

    c = add("check", help="validate certificates")
    c.add_argument("what", choices=["model", "well-linked", "strongly-linked",
                                    "tangle", "free-set"])
    c.add_argument("--file", help="model or tangle JSON")
    c.add_argument("--graph", help="graph file, DIMACS or JSON")
    c.add_argument("--set", default=None, help="vertex set S (default: all vertices)")
    c.add_argument("--q", type=int, default=1)
    c.add_argument("--k", type=int, default=2)
    c.add_argument("--alpha", default="2/3")

    t = add("transform", help="build routed minor models")
    t.add_argument("op", choices=["swap", "crosscaps-to-handle", "handle-to-crosscaps",
                                  "annulus", "packing", "plan"])
    t.add_argument("--order", type=int, default=1)
    t.add_argument("--kinds", default="")
    t.add_argument("--position", type=int, default=2)
    t.add_argument("--handles", type=int, default=0)
    t.add_argument("--crosscaps", type=int, default=0)
    t.add_argument("--factor", type=int, default=2)
    t.add_argument("--x", type=int, default=1)
    t.add_argument("--y", type=int, default=1)

    p = add("params", help="evaluate graph parameters")
    p.add_argument("param", choices=["tw", "tw-annotated", "tw-torso", "bg", "hadwiger",
                                     "g-bg", "sobs-bg", "bg-surface"])
    p.add_argument("--graph", required=True)
    p.add_argument("--set", default=None, help="annotation set X")
    p.add_argument("--genus", type=int, default=0)
    p.add_argument("--surfaces", default="sphere")
    p.add_argument("--format", choices=["json", "td"], default="json")
    p.add_argument("--cap", type=int, default=wd.TW_CAP,
                   help=f"vertex cap for exact treewidth (default {wd.TW_CAP})")
    return top


_HANDLERS = {"generate": _generate, "surfaces": _surfaces, "check": _check,
             "transform": _transform, "params": _params}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _Usage as u:
        stderr.write(str(u))
        return EX_USAGE
    except _Done:
        return 0
    try:
        if args.command == "generate" and args.family == "cylindrical" and args.length is None:
            raise DomainError("cylindrical grids need --length")
        if args.command == "check" and args.what in ("model", "tangle") and not args.file:
            raise DomainError(f"check {args.what} needs --file")
        if args.command == "check" and args.what != "model" and not args.graph:
            raise DomainError(f"check {args.what} needs --graph")
        text = _HANDLERS[args.command](args)
    except DomainError as e:
        stderr.write(_dump(e.to_json()))
        return 1
    except BudgetExceeded as e:
        stderr.write(_dump({"error": str(e), "nodes": e.nodes}))
        return 2
    except (OSError, json.JSONDecodeError, KeyError) as e:
        stderr.write(_dump({"error": f"cannot read input: {e}"}))
        return 1
    if args.output == "-":
        stdout.write(text)
    else:
        with open(args.output, "w") as fh:
            fh.write(text)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
