"""Command-line interface: ``wqolang <command> ...``.

Exit codes: 0 for wqo / true, 1 for not-wqo / false, 2 for usage, input or
budget errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import automata as A
from . import decision as D
from . import grammars as G
from . import infinite as I
from .orders import AntichainSearchExhausted, mine_antichain
from .regex import EMPTY_SET, RegexSyntaxError, regex_nfa
from .words import inf_period_chain, lyndon_root, minimal_period, primitive_root


class UsageError(Exception):
    pass


def show(w: str) -> str:
    return w if w else "eps"


def regex_alphabet(text: str) -> list[str]:
    out = []
    i = 0
    while i < len(text):
        c = text[i]
        if c == "\\" and i + 1 < len(text):
            out.append(text[i + 1])
            i += 2
            continue
        if text.startswith("eps", i):
            i += 3
            continue
        if not c.isspace() and c not in "|*+?()" and c != EMPTY_SET:
            out.append(c)
        i += 1
    return sorted(set(out)) or ["a"]


def load_language(args):
    """Return ("regular", Nfa) or ("grammar", Cfg)."""
    alphabet = args.alphabet.split() if getattr(args, "alphabet", None) else None
    if args.regex is not None:
        return "regular", regex_nfa(args.regex, alphabet or regex_alphabet(args.regex))
    if args.automaton is not None:
        nfa = A.parse_automaton(Path(args.automaton).read_text(encoding="utf-8"))
        return "regular", A.with_alphabet(nfa, alphabet) if alphabet else nfa
    if args.grammar is not None:
        return "grammar", G.parse_cfg(Path(args.grammar).read_text(encoding="utf-8"), alphabet)
    raise UsageError("a language source is required: --regex, --automaton or --grammar")


def add_source(p: argparse.ArgumentParser):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--regex", help="regular expression")
    g.add_argument("--automaton", metavar="FILE", help="automaton file")
    g.add_argument("--grammar", metavar="FILE", help="context-free grammar file")
    p.add_argument("--alphabet", help="space-separated symbols (default: symbols of the input)")


def format_report(rep: D.DecisionReport) -> str:
    c = rep.certificate
    lines = [f"relation: {rep.relation}", f"verdict: {rep.verdict}", f"certificate: {c['kind']}"]
    kind = c["kind"]
    if kind == "chain-decomposition":
        lines.append(f"  chain count: {c['chain_count']}")
        lines.append("  anchors: " + " ".join(show(w) for w in c["anchors"]))
        if c["singletons"]:
            lines.append("  singletons: " + " ".join(show(w) for w in c["singletons"]))
    elif kind == "r-inclusion":
        b = c["bounds"]
        lines.append(f"  bounding words: {' '.join(c['bounding_words'])}")
        lines.append(f"  n={b['n']} m={b['m']} n0={b['n0']} b1={b['b1']} b2={b['b2']}")
    elif kind == "unboundedness":
        where = c.get("state", c.get("nonterminal"))
        lines.append(f"  non-commuting cycles at {where}: {c['u']} / {c['v']}")
    elif kind == "escape-word":
        lines.append(f"  escape word: {show(c['word'])}")
    words = c.get("words") or c.get("antichain")
    if words is not None:
        lines.append(f"  antichain ({c.get('construction', 'sample')}, {len(words)} words): "
                     + " ".join(show(w) for w in words))
    if rep.ordinal_bounds is not None:
        ob = rep.ordinal_bounds
        rel = lambda strict: "<" if strict else "<="  # noqa: E731
        lines.append(
            f"ordinal bounds: height {rel(ob.height_strict)} {ob.height}, "
            f"width {rel(ob.width_strict)} {ob.width}, mot {rel(ob.mot_strict)} {ob.mot}"
        )
    return "\n".join(lines)


def emit_report(rep: D.DecisionReport, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps(rep.to_json(), ensure_ascii=False)
    return format_report(rep)


def dump(obj, as_json: bool, text: str) -> str:
    return json.dumps(obj, ensure_ascii=False) if as_json else text


# ---------------------------------------------------------------- commands


def cmd_decide(args) -> int:
    kind, lang = load_language(args)
    if kind == "grammar":
        rep = G.decide_cfg(lang, args.order, args.sample)
    else:
        rep = D.decide(lang, args.order, args.sample)
    print(emit_report(rep, "json" if args.json else "text"))
    return 0 if rep.wqo else 1


def cmd_witness(args) -> int:
    kind, lang = load_language(args)
    words: list[str] = []
    if kind == "grammar":
        words = G.mine_cfg_antichain(lang, args.order, args.size)["words"]
    elif args.order in ("prefix", "suffix"):
        src = lang if args.order == "prefix" else A.reverse(lang)
        analysis = D.fork_analysis(src)
        if analysis.on_cycle():
            words = D.antichain_branch_witness(analysis, args.size)
            if args.order == "suffix":
                words = [w[::-1] for w in words]
        else:
            try:
                words = mine_antichain(A.iter_words(src), args.order, max(args.size, 2))
            except AntichainSearchExhausted as e:
                words = e.found
            if args.order == "suffix":
                words = [w[::-1] for w in words]
    else:
        words = D.antichain_sample(D.as_trim(lang), args.order, args.size)["words"]
    words = words[: args.size]
    ok = len(words) >= args.size
    print(dump({"order": args.order, "size": args.size, "found": ok, "words": words}, args.json,
               " ".join(show(w) for w in words) if words else "(none)"))
    return 0 if ok else 1


def cmd_bounded(args) -> int:
    kind, lang = load_language(args)
    cert = G.cfg_bounded(lang) if kind == "grammar" else D.decide_bounded(lang)
    if cert.bounded:
        text = "bounded: " + (" ".join(cert.words) if cert.words else "(empty language)")
    else:
        s, u, v = cert.witness_cycle_pair
        text = f"unbounded: at {s}, {u} and {v} do not commute"
    print(dump(cert.to_json(), args.json, text))
    return 0 if cert.bounded else 1


def cmd_closure(args) -> int:
    kind, lang = load_language(args)
    if kind == "grammar":
        if args.kind != "subword":
            raise UsageError("grammars only support --kind subword")
        nfa = G.cfg_subword_closure(lang)
    else:
        nfa = A.closure(args.kind, lang)
    d = A.determinize_trim(nfa)
    text = A.format_automaton(d)
    print(dump({"kind": args.kind, "automaton": text}, args.json, text.rstrip("\n")))
    return 0


def cmd_period(args) -> int:
    w = args.word
    if not w:
        raise UsageError("--word must be non-empty")
    out = {"word": w, "minimal_period": minimal_period(w), "primitive_root": primitive_root(w),
           "lyndon_root": lyndon_root(w)}
    text = "\n".join(f"{k}: {v}" for k, v in out.items())
    print(dump(out, args.json, text))
    return 0


def cmd_infchain(args) -> int:
    if not args.period:
        raise UsageError("--period must be non-empty")
    alphabet = args.alphabet.split() if args.alphabet else sorted(set(args.period + (args.test or "")))
    chain = inf_period_chain(args.period, alphabet)
    out = {
        "period": chain.period,
        "states": chain.nfa.n,
        "components": [[u, v] for u, v in chain.components],
        "short_factors": sorted(chain.short_factors, key=A.length_lex_key),
    }
    code = 0
    if args.test is not None:
        member = chain.accepts(args.test)
        out["test"] = {"word": args.test, "member": member}
        code = 0 if member else 1
    lines = [f"period: {chain.period}", f"states: {chain.nfa.n}",
             "components: " + " ".join(f"({show(u)},{show(v)})" for u, v in chain.components)]
    if "test" in out:
        lines.append(f"{show(args.test)}: {'member' if out['test']['member'] else 'not a member'}")
    print(dump(out, args.json, "\n".join(lines)))
    return code


def cmd_infinite(args) -> int:
    if args.sequence_file:
        seq = I.parse_automatic(Path(args.sequence_file).read_text(encoding="utf-8")).oracle(args.sequence_file)
    elif args.sequence == "thue-morse":
        seq = I.THUE_MORSE
    elif args.sequence == "block":
        seq = I.BLOCK_WORD
    else:
        raise UsageError("choose --sequence or --sequence-file")
    if args.check == "cube-free":
        cube = I.has_cube(seq.prefix(args.length))
        out = {"check": "cube-free", "length": args.length, "cube": None if cube is None else list(cube)}
        text = "cube-free" if cube is None else f"cube {cube[1]}^3 at position {cube[0]}"
        print(dump(out, args.json, text))
        return 0 if cube is None else 1
    if args.check == "recurrence":
        prof = I.recurrence_profile(seq, args.k_max, args.horizon)
        rows = [{"k": e.k, "factors": e.factor_count, "max_gap": e.max_gap, "window_bound": e.window_bound,
                 "flagged": list(e.flagged[:10])} for e in prof.entries]
        text = "\n".join(
            f"k={r['k']} factors={r['factors']} max_gap={r['max_gap']} window="
            + (str(r["window_bound"]) if r["window_bound"] is not None else "unbounded-at-horizon")
            for r in rows
        )
        print(dump({"check": "recurrence", "horizon": prof.horizon, "profile": rows}, args.json, text))
        return 0 if prof.all_finite else 1
    v = I.empirical_ultimately_ur(seq, args.n0_cap, args.k_max, args.horizon)
    text = v.status
    if v.n0 is not None:
        text += f" (n0 = {v.n0})"
    if v.antichain:
        text += ": " + " ".join(v.antichain)
    print(dump(v.to_json(), args.json, text))
    return 0 if v.status == "ur-consistent" else 1


def cmd_reduce(args) -> int:
    kind, lang = load_language(args)
    if kind == "grammar":
        if args.kind != "marker":
            raise UsageError("grammars only support --kind marker")
        text = str(G.marker_cfg(lang, args.marker)).rstrip("\n")
        print(dump({"kind": args.kind, "grammar": text}, args.json, text))
        return 0
    if args.kind == "marker":
        nfa = D.reduction_prefix_to_infix(lang, args.marker)
    else:
        nfa = D.reduction_emptiness_to_prefix(lang)
    text = A.format_automaton(A.determinize_trim(nfa))
    print(dump({"kind": args.kind, "automaton": text}, args.json, text.rstrip("\n")))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wqolang", description="Well-quasi-order decisions for word languages.")
    sub = p.add_subparsers(dest="command", required=True)

    def cmd(name, func, source=True, help=None):
        sp = sub.add_parser(name, help=help)
        if source:
            add_source(sp)
        sp.add_argument("--json", action="store_true", help="JSON output")
        sp.set_defaults(func=func)
        return sp

    sp = cmd("decide", cmd_decide, help="decide prefix/suffix/infix wqo")
    sp.add_argument("--order", choices=["prefix", "suffix", "infix"], required=True)
    sp.add_argument("--sample", type=int, default=5, help="antichain sample size for not-wqo verdicts")

    sp = cmd("witness", cmd_witness, help="antichain of a given size")
    sp.add_argument("--size", type=int, required=True)
    sp.add_argument("--order", choices=["prefix", "suffix", "infix"], default="prefix")

    cmd("bounded", cmd_bounded, help="boundedness certificate")

    sp = cmd("closure", cmd_closure, help="downward closure automaton")
    sp.add_argument("--kind", choices=["prefix", "suffix", "infix", "subword"], required=True)

    sp = cmd("period", cmd_period, source=False, help="periods of a word")
    sp.add_argument("--word", required=True)

    sp = cmd("infchain", cmd_infchain, source=False, help="the period chain Inf(x)")
    sp.add_argument("--period", required=True)
    sp.add_argument("--test", help="word to test for membership")
    sp.add_argument("--alphabet")

    sp = cmd("infinite", cmd_infinite, source=False, help="infinite-word checks")
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--sequence", choices=["thue-morse", "block"])
    src.add_argument("--sequence-file", metavar="FILE")
    sp.add_argument("--check", choices=["cube-free", "recurrence", "ultimately-ur"], required=True)
    sp.add_argument("--length", type=int, default=4096)
    sp.add_argument("--k-max", type=int, default=I.DEFAULT_K_MAX)
    sp.add_argument("--horizon", type=int, default=I.DEFAULT_HORIZON)
    sp.add_argument("--n0-cap", type=int, default=I.DEFAULT_N0_CAP)

    sp = cmd("reduce", cmd_reduce, help="the reductions between decision problems")
    sp.add_argument("--kind", choices=["marker", "full-image"], required=True)
    sp.add_argument("--marker", default="#")
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except (UsageError, OSError, RegexSyntaxError, A.AutomatonError, G.CfgError, I.AutomaticError,
            A.BudgetExceeded, D.NotApplicable, ValueError) as e:
        print(f"wqolang: error: {e}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
