"""Command line front end: ``ordlab <group> <command> [options]``.

Exit status is 0 on success, 1 on a domain error (reported as
``ErrorName: message`` on stderr) and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import coloring, compactness, diamond, gen, hf, io, ktype, seqcode, trees
from .errors import OrdlabError
from .logic import definable, semantics, syntax

__all__ = ["main", "run", "build_parser"]


# -- rendering -----------------------------------------------------------


def _show(p) -> str:
    if isinstance(p, seqcode.DigitSeq):
        return str(p) or "ε"
    if isinstance(p, tuple):
        return "(" + ",".join(_show(x) for x in p) + ")"
    return str(p)


def _emit(args, text, data=None):
    if args.format == "json":
        print(io.dumps(text if data is None else data))
    elif isinstance(text, (list, tuple)):
        for line in text:
            print(line)
    else:
        print(text)


def _set(args, text):
    return hf.parse_literal(text, args.normalize)


def _seq(text, base=2):
    return seqcode.DigitSeq.parse(text, base)


def _int_list(text):
    if text in ("", "-"):
        return []
    try:
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a comma separated list of integers") from None


def _named(text):
    if "=" not in text:
        raise argparse.ArgumentTypeError(f"{text!r} is not NAME=LITERAL")
    name, _, lit = text.partition("=")
    return name.strip(), lit.strip()


def _tree(args, attr="input"):
    return io.load_tree(getattr(args, attr), args.normalize)


def _emit_tree(args, tree):
    print(io.dumps(io.tree_to_json(tree)))


# -- hf --------------------------------------------------------------------


def cmd_hf(args):
    if args.cmd == "encode":
        _emit(args, str(hf.ack_encode(_set(args, args.literal))), hf.ack_encode(_set(args, args.literal)))
    elif args.cmd == "decode":
        s = hf.ack_decode(args.index)
        _emit(args, s.to_literal())
    elif args.cmd == "rank":
        r = hf.rank(_set(args, args.literal))
        _emit(args, str(r), r)
    elif args.cmd == "tc":
        closure = hf.transitive_closure(_set(args, args.literal))
        lits = [s.to_literal() for s in closure]
        _emit(args, [f"kappa={len(lits)}"] + lits, {"kappa": len(lits), "elements": lits})
    elif args.cmd == "slice":
        u = hf.parse_universe_spec(args.universe)
        lits = [s.to_literal() for s in u]
        _emit(args, lits, {"universe": u.label, "elements": lits})


# -- code ------------------------------------------------------------------


def cmd_code(args):
    if args.cmd == "pair":
        n = seqcode.pair(args.a, args.b)
        _emit(args, str(n), n)
    elif args.cmd == "unpair":
        a, b = seqcode.unpair(args.n)
        _emit(args, f"{a} {b}", [a, b])
    elif args.cmd == "set2seq":
        s = _set(args, args.literal)
        g = None
        if args.bijection:
            raw = json.loads(args.bijection)
            g = {hf.parse_literal(k, args.normalize): v for k, v in raw.items()}
        _emit(args, str(seqcode.encode_set(s, g)))
    elif args.cmd == "seq2set":
        _emit(args, seqcode.decode_set(_seq(args.digits)).to_literal())
    elif args.cmd == "concat":
        _emit(args, str(seqcode.ternary_concat([_seq(b) for b in args.blocks])))
    elif args.cmd == "embed":
        if args.inverse:
            _emit(args, str(seqcode.binary_unembed(_seq(args.digits))))
        else:
            _emit(args, str(seqcode.binary_embed(_seq(args.digits, 3))))
    elif args.cmd == "chain":
        _emit(args, str(seqcode.chain_code([_set(args, lit) for lit in args.literals])))


# -- tree ------------------------------------------------------------------


def cmd_tree(args):
    if args.cmd == "gen":
        rng = random.Random(args.seed)
        if args.shape == "full-binary":
            t = gen.full_binary_tree(args.height)
        elif args.shape == "chain":
            t = gen.chain_tree(args.height)
        elif args.shape == "random":
            t = gen.random_tree(rng, args.height, args.max_nodes)
        else:
            t = gen.random_inclusion_tree(rng, args.height, args.max_nodes)
        _emit_tree(args, t)
    elif args.cmd == "product":
        _emit_tree(args, trees.product(_tree(args), _tree(args, "other")))
    elif args.cmd == "sum":
        t, mapping = trees.disjoint_sum(_tree(args), _tree(args, "other"))
        doc = io.tree_to_json(t)
        doc["mapping"] = [[io.payload_to_json(k), io.payload_to_json(v)] for k, v in sorted(
            mapping.items(), key=lambda kv: trees.payload_key(kv[0]))]
        print(io.dumps(doc))
    elif args.cmd == "tilde":
        _emit_tree(args, trees.tilde(_tree(args), args.exhaustive))
    elif args.cmd == "prune":
        _emit_tree(args, trees.prune(_tree(args)))
    elif args.cmd == "choice":
        u = hf.parse_universe_spec(args.universe)
        _emit_tree(args, trees.choice_tree(u, args.alpha))
    elif args.cmd == "ktype":
        u = hf.parse_universe_spec(args.universe)
        _emit_tree(args, ktype.ktype_tree(u, args.depth, args.beta, args.alpha))
    elif args.cmd == "branches":
        t = _tree(args)
        bs = trees.branches(t)
        lines = [" < ".join(_show(t.payloads[i]) for i in b) for b in bs]
        data = [[io.payload_to_json(t.payloads[i]) for i in b] for b in bs]
        _emit(args, lines, data)
    elif args.cmd == "gamma":
        th = compactness.compactness_theory(_tree(args))
        levels = [
            {"alpha": a, "sigma": sorted(map(list, th.sigma[a])), "phi": list(th.phi[a])}
            for a in range(len(th.phi))
        ]
        lines = [f"level {d['alpha']}: {len(d['sigma'])} facts, phi over {d['phi']}" for d in levels]
        _emit(args, lines, {"tree_order": th.tree_order, "levels": levels})
    elif args.cmd == "gamma-model":
        t = _tree(args)
        th = compactness.compactness_theory(t)
        c = compactness.subtheory_model(th, args.levels)
        if c is None:
            _emit(args, "none", None)
        else:
            chain = compactness.predecessor_chain(t, c)
            data = {"node": c, "payload": io.payload_to_json(t.payloads[c]), "chain": list(chain)}
            _emit(args, f"{c} {_show(t.payloads[c])}", data)


# -- color -----------------------------------------------------------------


def cmd_color(args):
    if args.cmd == "pair":
        t = _tree(args) if args.input else None
        v = coloring.color_pair(_seq(args.p), _seq(args.q), t)
        _emit(args, str(v), v)
    elif args.cmd == "extract":
        t = _tree(args)
        family = [_seq(x) for x in args.family.split(",")] if args.family else []
        b = coloring.extract_branch(family, args.value, t)
        if b is None:
            _emit(args, "none", None)
        else:
            _emit(args, [_show(t.payloads[i]) for i in b], [io.payload_to_json(t.payloads[i]) for i in b])


# -- logic -----------------------------------------------------------------


def _structure(args, params=()):
    u = hf.parse_universe_spec(args.universe)
    named = tuple((k, _set(args, v)) for k, v in params)
    return semantics.Structure(u, not args.no_order, named)


def cmd_logic(args):
    if args.cmd == "eval":
        M = _structure(args, args.param or ())
        assign = {k: _set(args, v) for k, v in (args.assign or ())}
        v = semantics.evaluate(syntax.parse_formula(args.formula), M, assign)
        _emit(args, "true" if v else "false", v)
    elif args.cmd == "enum":
        M = _structure(args)
        rows = definable.enumerate_definable(M, args.bound, args.params)
        lines, data = [], []
        for w, subset in rows:
            lits = [s.to_literal() for s in sorted(subset)]
            lines.append("{" + ",".join(lits) + "}\t" + str(w))
            data.append({"subset": lits, "witness": w.to_json()})
        _emit(args, lines, data)
    elif args.cmd == "branch-search":
        M = _structure(args)
        w = definable.find_definable_branch(_tree(args), M, args.bound, not args.no_params)
        _emit(args, "none" if w is None else str(w), None if w is None else w.to_json())
    elif args.cmd == "cut":
        M = _structure(args)
        res = definable.cut_experiment(M, args.max_n, args.bound, args.params)
        levels = [
            {
                "n": lv["n"],
                "coded_sentences": lv["coded_sentences"],
                "witness": None if lv["witness"] is None else lv["witness"].to_json(),
            }
            for lv in res["levels"]
        ]
        lines = [f"largest {res['largest']}"] + [
            f"n={lv['n']} coded={lv['coded_sentences']} " + ("none" if lv["witness"] is None else lv["witness"]["formula"])
            for lv in levels
        ]
        _emit(args, lines, {"largest": res["largest"], "levels": levels})


# -- diamond ---------------------------------------------------------------


def cmd_diamond(args):
    u = hf.parse_universe_spec(args.universe)
    M = semantics.Structure(u, order=False)
    if args.cmd == "run":
        D = diamond.diamond_sequence(
            M, None, args.bound, not args.no_params, set(args.stationary) if args.stationary is not None else None
        )
        lines = []
        for e in D.entries:
            line = f"theta={e.theta} A={sorted(e.guess)}"
            if e.trace is not None:
                line += f" A_def={e.trace[0]} C_def={e.trace[1]}"
            lines.append(line)
        _emit(args, lines, D.to_json())
    elif args.cmd == "wellorder":
        if args.order == "ackermann":
            w = diamond.ackermann_order()
        elif args.order == "rank-refined":
            w = diamond.rank_refine(diamond.ackermann_order())
        elif args.order == "hod":
            w = diamond.hod_order(M, args.bound)
        else:
            w = diamond.wellorder_from_diamond(diamond.diamond_sequence(M, None, args.bound), M)
        lits = [s.to_literal() for s in w.sort(u)]
        _emit(args, lits, {"order": w.kind, "elements": lits})


def cmd_report(args):
    from .report import roundtrip_report

    doc = roundtrip_report(args.universe, args.limit, args.seed, args.timings)
    if args.format == "json":
        print(io.dumps(doc))
        return
    print(f"universe {doc['universe']} seed {doc['seed']}")
    for s in doc["suites"]:
        extra = s.get("reason") or f"{s['checked']} checked, {s['failures']} failed"
        if "seconds" in s:
            extra += f", {s['seconds']}s"
        print(f"{s['status']:7} {s['name']}: {extra}")


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text", help="output format")
    common.add_argument("--normalize", action="store_true", help="accept set literals in any member order")

    p = argparse.ArgumentParser(prog="ordlab", description="Finite-scale set-theoretic constructions.")
    groups = p.add_subparsers(dest="group", required=True)

    def group(name, fn, help_text):
        g = groups.add_parser(name, help=help_text)
        g.set_defaults(func=fn)
        sub = g.add_subparsers(dest="cmd", required=True)
        return lambda cmd, h: sub.add_parser(cmd, help=h, parents=[common])

    def universe(q, default="V3"):
        q.add_argument("--universe", default=default, help="V<n> (rank slice) or A<n> (Ackermann prefix)")

    add = group("hf", cmd_hf, "hereditarily finite sets")
    add("encode", "Ackermann index of a set").add_argument("literal")
    add("decode", "set with a given Ackermann index").add_argument("index", type=int)
    add("rank", "rank of a set").add_argument("literal")
    add("tc", "transitive closure of {s}").add_argument("literal")
    add("slice", "elements of a universe slice").add_argument("universe")

    add = group("code", cmd_code, "coding sets as sequences")
    q = add("pair", "pairing function")
    q.add_argument("a", type=int)
    q.add_argument("b", type=int)
    add("unpair", "inverse pairing").add_argument("n", type=int)
    q = add("set2seq", "binary code of a set")
    q.add_argument("literal")
    q.add_argument("--bijection", help='JSON object mapping member literals to indices, e.g. {"{}":1,"{{}}":0}')
    add("seq2set", "decode a binary sequence").add_argument("digits")
    add("concat", "ternary block concatenation").add_argument("blocks", nargs="*")
    q = add("embed", "ternary to binary embedding")
    q.add_argument("digits")
    q.add_argument("--inverse", action="store_true")
    add("chain", "code of an inclusion chain").add_argument("literals", nargs="+")

    add = group("tree", cmd_tree, "tree constructions (JSON documents)")
    q = add("gen", "generate a tree")
    q.add_argument("shape", choices=("full-binary", "chain", "random", "random-inclusion"))
    q.add_argument("--height", type=int, default=3)
    q.add_argument("--max-nodes", type=int, default=12)
    q.add_argument("--seed", type=int, default=0)
    for name, h in (("product", "level-wise product"), ("sum", "inclusion-ordered product copy")):
        q = add(name, h)
        q.add_argument("--in", dest="input", required=True)
        q.add_argument("--with", dest="other", required=True)
    q = add("tilde", "coded sequence tree")
    q.add_argument("--in", dest="input", required=True)
    q.add_argument("--exhaustive", action="store_true", help="every bijection, not just the Ackermann one")
    for name, h in (("prune", "drop dead nodes"), ("branches", "list branches"), ("gamma", "level theory")):
        add(name, h).add_argument("--in", dest="input", required=True)
    q = add("gamma-model", "model of finitely many level pieces")
    q.add_argument("--in", dest="input", required=True)
    q.add_argument("--levels", type=_int_list, default=[])
    q = add("choice", "tree of choice functions")
    universe(q)
    q.add_argument("--alpha", type=int, default=2)
    q = add("ktype", "tree of depth-k types")
    universe(q, "V2")
    q.add_argument("--depth", type=int, default=0)
    q.add_argument("--beta", type=int, default=2)
    q.add_argument("--alpha", type=int, default=1)

    add = group("color", cmd_color, "the right-of coloring")
    q = add("pair", "color of a pair of nodes")
    q.add_argument("p")
    q.add_argument("q")
    q.add_argument("--in", dest="input", help="reference tree for heights")
    q = add("extract", "branch from a monochromatic family")
    q.add_argument("--in", dest="input", required=True)
    q.add_argument("--family", default="", help="comma separated binary strings")
    q.add_argument("--value", type=int, choices=(0, 1), default=0)

    add = group("logic", cmd_logic, "first-order definability")
    q = add("eval", "truth of a formula")
    q.add_argument("formula")
    universe(q)
    q.add_argument("--assign", type=_named, action="append", help="NAME=LITERAL, repeatable")
    q.add_argument("--param", type=_named, action="append", help="NAME=LITERAL, repeatable")
    q.add_argument("--no-order", action="store_true", help="drop the lt relation")
    q = add("enum", "definable subsets with least witnesses")
    universe(q, "V2")
    q.add_argument("--bound", type=int, default=2)
    q.add_argument("--params", action="store_true")
    q.add_argument("--no-order", action="store_true")
    q = add("branch-search", "definable branch of a tree of sets")
    q.add_argument("--in", dest="input", required=True)
    universe(q)
    q.add_argument("--bound", type=int, default=1)
    q.add_argument("--no-params", action="store_true")
    q.add_argument("--no-order", action="store_true")
    q = add("cut", "truth-predicate experiment")
    universe(q, "V2")
    q.add_argument("--max-n", type=int, default=2)
    q.add_argument("--bound", type=int, default=2)
    q.add_argument("--params", action="store_true")
    q.add_argument("--no-order", action="store_true")

    add = group("diamond", cmd_diamond, "diamond recursion and well-orders")
    q = add("run", "compute the guessing sequence")
    universe(q, "V4")
    q.add_argument("--bound", type=int, default=2)
    q.add_argument("--no-params", action="store_true")
    q.add_argument("--stationary", type=_int_list, help="only define entries at these ordinals")
    q = add("wellorder", "list a universe in a global well-order")
    universe(q)
    q.add_argument("--order", choices=("ackermann", "rank-refined", "hod", "from-diamond"), default="rank-refined")
    q.add_argument("--bound", type=int, default=3)

    r = groups.add_parser("report", help="invariant self-check", parents=[common])
    r.set_defaults(func=cmd_report)
    universe(r)
    r.add_argument("--limit", type=int, default=64)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--timings", action="store_true", help="include wall-clock times (not reproducible)")
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args)
    except OrdlabError as exc:
        print(f"{exc.name}: {exc}", file=sys.stderr)
        return 1
    except (ValueError, KeyError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"InputError: {exc}", file=sys.stderr)
        return 1
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
