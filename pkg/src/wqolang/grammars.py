"""Context-free grammars: parsing, reduction, regular intersection,
boundedness, subword closure and the wqo decisions on top of them."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Hashable, Iterable, Iterator

from . import automata as A
from .automata import Nfa, length_lex_key
from .decision import (
    INFIX_WQO_BOUNDS,
    BoundednessCertificate,
    DecisionReport,
    OrdinalBounds,
    RBounds,
    build_r_language,
    r_periods,
    _finite_bounds,
)
from .orders import AntichainSearchExhausted, OrdinalExpr, W, mine_antichain
from .words import primitive_root

DEFAULT_ENUM_LEN = 14
DEFAULT_ENUM_BUDGET = 200_000


class CfgError(ValueError):
    pass


@dataclass(frozen=True)
class Cfg:
    nonterminals: tuple[str, ...]
    terminals: tuple[str, ...]
    productions: tuple[tuple[str, tuple[str, ...]], ...]
    start: str
    reduced: bool = False

    def __post_init__(self):
        object.__setattr__(self, "terminals", A.make_alphabet(self.terminals))
        nts = set(self.nonterminals)
        if self.start not in nts:
            raise CfgError(f"start symbol {self.start!r} is not declared")
        if nts & set(self.terminals):
            raise CfgError("nonterminals and terminals overlap")
        for lhs, rhs in self.productions:
            if lhs not in nts:
                raise CfgError(f"undeclared nonterminal {lhs!r}")
            for s in rhs:
                if s not in nts and s not in self.terminals:
                    raise CfgError(f"undeclared symbol {s!r} in a rule for {lhs}")

    @property
    def alphabet(self) -> tuple[str, ...]:
        return self.terminals

    def is_nt(self, s: str) -> bool:
        return s in self.rules

    @cached_property
    def rules(self) -> dict[str, list[tuple[str, ...]]]:
        out: dict[str, list[tuple[str, ...]]] = {n: [] for n in self.nonterminals}
        for lhs, rhs in self.productions:
            out[lhs].append(rhs)
        return out

    def with_alphabet(self, alphabet) -> "Cfg":
        alphabet = A.make_alphabet(alphabet)
        if not set(self.terminals) <= set(alphabet):
            raise A.AlphabetMismatch(f"{self.terminals} is not contained in {alphabet}")
        return Cfg(self.nonterminals, alphabet, self.productions, self.start, self.reduced)

    def __str__(self) -> str:
        lines = []
        for n in self.nonterminals:
            alts = [" ".join(r) if r else "eps" for r in self.rules[n]]
            if alts:
                lines.append(f"{n} -> " + " | ".join(alts))
        return "\n".join(lines) + "\n"


def parse_cfg(text: str, alphabet=None) -> Cfg:
    """One rule per line, ``A -> alt | alt``.  Tokens are separated by
    whitespace; a token starting with an uppercase letter is a nonterminal,
    ``eps`` is the empty word and any other single character is a terminal."""
    order: list[str] = []
    prods: list[tuple[str, tuple[str, ...]]] = []
    used: list[tuple[int, str]] = []
    terms: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("//"):
            continue
        lhs, arrow, rhs = line.partition("->")
        lhs = lhs.strip()
        if not arrow or not lhs or not lhs[0].isupper() or len(lhs.split()) != 1:
            raise CfgError(f"line {lineno}: expected 'Nonterminal -> alternatives', got {raw!r}")
        if lhs not in order:
            order.append(lhs)
        for alt in rhs.split("|"):
            toks = alt.split()
            if not toks:
                raise CfgError(f"line {lineno}: empty alternative (write 'eps')")
            if toks == ["eps"]:
                prods.append((lhs, ()))
                continue
            seq = []
            for t in toks:
                if t[0].isupper():
                    used.append((lineno, t))
                elif len(t) == 1:
                    terms.add(t)
                else:
                    raise CfgError(f"line {lineno}: bad token {t!r}")
                seq.append(t)
            prods.append((lhs, tuple(seq)))
    if not order:
        raise CfgError("no rules")
    for lineno, t in used:
        if t not in order:
            raise CfgError(f"line {lineno}: undefined nonterminal {t!r}")
    if alphabet is None:
        alphabet = sorted(terms) or ["a"]
    alphabet = A.make_alphabet(alphabet)
    if not terms <= set(alphabet):
        raise A.AlphabetMismatch(f"terminals {sorted(terms - set(alphabet))} not in alphabet")
    return Cfg(tuple(order), alphabet, tuple(prods), order[0])


# ---------------------------------------------------------------- reduction


def productive(g: Cfg) -> set[str]:
    prod: set[str] = set()
    changed = True
    while changed:
        changed = False
        for lhs, rhs in g.productions:
            if lhs not in prod and all(s in prod or not g.is_nt(s) for s in rhs):
                prod.add(lhs)
                changed = True
    return prod


def empty_cfg(alphabet, start: str = "S") -> Cfg:
    return Cfg((start,), alphabet, (), start, True)


def reduce_cfg(g: Cfg) -> Cfg:
    prod = productive(g)
    if g.start not in prod:
        return empty_cfg(g.terminals, g.start)
    rules = [(l, r) for l, r in g.productions if l in prod and all(s in prod or not g.is_nt(s) for s in r)]
    reach = {g.start}
    stack = [g.start]
    by_lhs = defaultdict(list)
    for l, r in rules:
        by_lhs[l].append(r)
    while stack:
        n = stack.pop()
        for r in by_lhs[n]:
            for s in r:
                if g.is_nt(s) and s not in reach:
                    reach.add(s)
                    stack.append(s)
    nts = tuple(n for n in g.nonterminals if n in reach)
    rules = tuple(dict.fromkeys((l, r) for l, r in rules if l in reach))
    return Cfg(nts, g.terminals, rules, g.start, True)


def binarize(g: Cfg) -> Cfg:
    """Right-hand sides of length at most two."""
    names = set(g.nonterminals)
    nts = list(g.nonterminals)
    out = []
    for i, (lhs, rhs) in enumerate(g.productions):
        cur = lhs
        rest = list(rhs)
        j = 0
        while len(rest) > 2:
            name = f"{lhs}__{i}_{j}"
            while name in names:
                name += "_"
            names.add(name)
            nts.append(name)
            out.append((cur, (rest[0], name)))
            cur = name
            rest = rest[1:]
            j += 1
        out.append((cur, tuple(rest)))
    return Cfg(tuple(nts), g.terminals, tuple(out), g.start, g.reduced)


def reverse_cfg(g: Cfg) -> Cfg:
    return Cfg(g.nonterminals, g.terminals, tuple((l, r[::-1]) for l, r in g.productions), g.start, g.reduced)


def marker_cfg(g: Cfg, marker: str = "#") -> Cfg:
    """Grammar for marker·L(g)."""
    if marker in g.terminals:
        raise CfgError(f"marker {marker!r} already in the alphabet")
    start = g.start + "'"
    while start in g.nonterminals:
        start += "'"
    return Cfg(
        (start,) + g.nonterminals,
        g.terminals + (marker,),
        ((start, (marker, g.start)),) + g.productions,
        start,
        g.reduced,
    )


def regular_cfg(lang) -> Cfg:
    """Right-linear grammar for a regular language."""
    d = A.determinize_trim(lang)
    if d.initial is None:
        return empty_cfg(d.alphabet)
    name = {q: f"Q{q}" for q in range(d.n)}
    prods = [(name[p], (a, name[q])) for (p, a), q in sorted(d.delta.items())]
    prods += [(name[q], ()) for q in sorted(d.accepting)]
    nts = tuple(name[q] for q in range(d.n))
    return Cfg(nts, d.alphabet, tuple(prods), name[d.initial], True)


# ---------------------------------------------------------------- emptiness and words


def min_words(g: Cfg) -> dict[str, str]:
    """Length-lex least word derivable from each productive nonterminal."""
    best: dict[str, str] = {}
    changed = True
    while changed:
        changed = False
        for lhs, rhs in g.productions:
            if all(s in best or not g.is_nt(s) for s in rhs):
                w = "".join(best[s] if g.is_nt(s) else s for s in rhs)
                if lhs not in best or length_lex_key(w) < length_lex_key(best[lhs]):
                    best[lhs] = w
                    changed = True
    return best


def cfg_is_empty(g: Cfg) -> tuple[bool, str | None]:
    best = min_words(g)
    if g.start in best:
        return False, best[g.start]
    return True, None


def _length_layers(g: Cfg, maxlen: int, budget: int = DEFAULT_ENUM_BUDGET) -> Iterator[tuple[int, set[str]]]:
    """Yield (k, words of length exactly k) for k = 0 .. maxlen.  Each layer
    is built from shorter layers, with a small fixpoint for unit and empty
    rules inside one length."""
    g = binarize(reduce_cfg(g))
    tab: dict[str, list[set[str]]] = {n: [] for n in g.nonterminals}
    total = 0

    def seq(rhs: tuple[str, ...], k: int) -> set[str]:
        if not rhs:
            return {""} if k == 0 else set()
        head, rest = rhs[0], rhs[1:]
        if not g.is_nt(head):
            return {head + v for v in seq(rest, k - 1)} if k >= 1 else set()
        out: set[str] = set()
        for i in range(k + 1):
            left = tab[head][i]
            if left:
                right = seq(rest, k - i)
                out |= {u + v for u in left for v in right}
        return out

    for k in range(maxlen + 1):
        for n in g.nonterminals:
            tab[n].append(set())
        changed = True
        while changed:
            changed = False
            for lhs, rhs in g.productions:
                fresh = seq(rhs, k) - tab[lhs][k]
                if fresh:
                    tab[lhs][k] |= fresh
                    total += len(fresh)
                    changed = True
                    if total > budget:
                        raise A.BudgetExceeded(f"enumeration exceeded {budget} words")
        yield k, tab[g.start][k]


def cfg_enumerate(g: Cfg, maxlen: int, budget: int = DEFAULT_ENUM_BUDGET) -> list[str]:
    """All words of length at most ``maxlen`` in length-lex order."""
    out: list[str] = []
    for _, layer in _length_layers(g, maxlen, budget):
        out.extend(sorted(layer))
    return out


def cfg_is_finite(g: Cfg) -> bool:
    g = reduce_cfg(g)
    nonempty = _nonempty_nts(g)
    edges: dict[str, set[str]] = defaultdict(set)
    heavy: set[tuple[str, str]] = set()
    for lhs, rhs in g.productions:
        for i, s in enumerate(rhs):
            if g.is_nt(s):
                edges[lhs].add(s)
                others = rhs[:i] + rhs[i + 1 :]
                if any((not g.is_nt(t)) or t in nonempty for t in others):
                    heavy.add((lhs, s))
    comp = _scc_index(g.nonterminals, edges)
    return not any(comp[a] == comp[b] for a, b in heavy)


def _nonempty_nts(g: Cfg) -> set[str]:
    """Nonterminals deriving at least one non-empty word."""
    prod = productive(g)
    ne: set[str] = set()
    changed = True
    while changed:
        changed = False
        for lhs, rhs in g.productions:
            if lhs in ne or not all(s in prod or not g.is_nt(s) for s in rhs):
                continue
            if any((not g.is_nt(s)) or s in ne for s in rhs):
                ne.add(lhs)
                changed = True
    return ne


def _scc_index(nodes: Iterable[str], edges: dict[str, set[str]]) -> dict[str, int]:
    nodes = list(nodes)
    index: dict[str, int] = {}
    low: dict[str, int] = {}
    comp: dict[str, int] = {}
    stack: list[str] = []
    on: set[str] = set()
    counter = [0, 0]

    def visit(root):
        work = [(root, iter(sorted(edges.get(root, ()))))]
        index[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on.add(root)
        while work:
            v, it = work[-1]
            pushed = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append(w)
                    on.add(w)
                    work.append((w, iter(sorted(edges.get(w, ())))))
                    pushed = True
                    break
                if w in on:
                    low[v] = min(low[v], index[w])
            if pushed:
                continue
            work.pop()
            if work:
                low[work[-1][0]] = min(low[work[-1][0]], low[v])
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on.discard(w)
                    comp[w] = counter[1]
                    if w == v:
                        break
                counter[1] += 1

    for n in nodes:
        if n not in index:
            visit(n)
    return comp  # components numbered callees first


# ---------------------------------------------------------------- saturation


def _saturate(g: Cfg, init: Iterable[Hashable], step: Callable, budget: int = A.DEFAULT_STATE_BUDGET):
    """Summaries of a binarized grammar against a deterministic transition
    function: ``summary[(X, p)]`` is the set of states q such that X derives
    a word leading from p to q.  Only demanded pairs are explored."""
    summary: dict[tuple, set] = defaultdict(set)
    waiters: dict[tuple, list] = defaultdict(list)
    requested: set[tuple] = set()
    work: list = []
    seen_items: set = set()

    def push(item):
        if item not in seen_items:
            if len(seen_items) >= budget:
                raise A.BudgetExceeded(f"grammar saturation exceeded {budget} items")
            seen_items.add(item)
            work.append(item)

    def need(n, p):
        if (n, p) in requested:
            return
        requested.add((n, p))
        for k, rhs in enumerate(g.rules[n]):
            push((n, k, 0, p, p))

    for p in init:
        need(g.start, p)
    while work:
        n, k, i, p, cur = work.pop()
        rhs = g.rules[n][k]
        if i == len(rhs):
            if cur not in summary[(n, p)]:
                summary[(n, p)].add(cur)
                for (m, k2, i2, p2) in waiters[(n, p)]:
                    push((m, k2, i2 + 1, p2, cur))
            continue
        s = rhs[i]
        if g.is_nt(s):
            waiters[(s, cur)].append((n, k, i, p))
            need(s, cur)
            for q in list(summary[(s, cur)]):
                push((n, k, i + 1, p, q))
        else:
            q = step(cur, s)
            if q is not None:
                push((n, k, i + 1, p, q))
    return summary, requested


def _shortest_summaries(g: Cfg, summary, step) -> dict[tuple, str]:
    """Length-lex least word for every summary triple (X, p, q)."""
    best: dict[tuple, str] = {}
    pairs = list(summary)
    changed = True
    while changed:
        changed = False
        for (n, p) in pairs:
            for rhs in g.rules[n]:
                layer = {p: ""}
                for s in rhs:
                    nxt: dict = {}
                    for cur, w in layer.items():
                        if g.is_nt(s):
                            for q in summary.get((s, cur), ()):
                                sub = best.get((s, cur, q))
                                if sub is None:
                                    continue
                                cand = w + sub
                                if q not in nxt or length_lex_key(cand) < length_lex_key(nxt[q]):
                                    nxt[q] = cand
                        else:
                            q = step(cur, s)
                            if q is not None:
                                cand = w + s
                                if q not in nxt or length_lex_key(cand) < length_lex_key(nxt[q]):
                                    nxt[q] = cand
                    layer = nxt
                for q, w in layer.items():
                    key = (n, p, q)
                    if key not in best or length_lex_key(w) < length_lex_key(best[key]):
                        best[key] = w
                        changed = True
    return best


def cfg_accepts(g: Cfg, word: str) -> bool:
    g = binarize(reduce_cfg(g))
    if not g.productions:
        return False

    def step(i, c):
        return i + 1 if i < len(word) and word[i] == c else None

    summary, _ = _saturate(g, [0], step)
    return len(word) in summary[(g.start, 0)]


def cfg_intersect_regular(g: Cfg, lang, budget: int = A.DEFAULT_STATE_BUDGET) -> Cfg:
    d = A.determinize_trim(lang)
    if d.alphabet != g.terminals:
        raise A.AlphabetMismatch(f"grammar over {g.terminals}, automaton over {d.alphabet}")
    g = binarize(reduce_cfg(g))
    if d.initial is None or not g.productions:
        return empty_cfg(g.terminals)
    summary, _ = _saturate(g, [d.initial], d.step, budget)

    def name(n, p, q):
        return f"{n}[{p},{q}]"

    start = "S*"
    prods = [(start, (name(g.start, d.initial, q),)) for q in sorted(summary[(g.start, d.initial)]) if q in d.accepting]
    nts = {start}
    for (n, p), qs in summary.items():
        for q in qs:
            nts.add(name(n, p, q))
        for rhs in g.rules[n]:
            paths = [(p, ())]
            for s in rhs:
                nxt = []
                for cur, seq in paths:
                    if g.is_nt(s):
                        for q in summary.get((s, cur), ()):
                            nxt.append((q, seq + (name(s, cur, q),)))
                    else:
                        q = d.step(cur, s)
                        if q is not None:
                            nxt.append((q, seq + (s,)))
                paths = nxt
            for q, seq in paths:
                prods.append((name(n, p, q), seq))
    nts_t = (start,) + tuple(sorted(nts - {start}))
    return reduce_cfg(Cfg(nts_t, g.terminals, tuple(dict.fromkeys(prods)), start))


def cfg_subset_regular(g: Cfg, lang, budget: int = A.DEFAULT_STATE_BUDGET) -> tuple[bool, str | None]:
    """L(g) ⊆ L(lang), exploring the subset automaton of ``lang`` lazily.
    The counterexample is the length-lex least word of L(g) outside."""
    nfa = A.as_nfa(lang)
    if nfa.alphabet != g.terminals:
        raise A.AlphabetMismatch(f"grammar over {g.terminals}, automaton over {nfa.alphabet}")
    g = binarize(reduce_cfg(g))
    if not g.productions:
        return True, None
    cache: dict = {}

    def step(s, c):
        key = (s, c)
        if key not in cache:
            cache[key] = nfa.step(s, c)
        return cache[key]

    start = nfa.start()
    summary, _ = _saturate(g, [start], step, budget)
    bad = [q for q in summary[(g.start, start)] if not q & nfa.accepting]
    if not bad:
        return True, None
    best = _shortest_summaries(g, summary, step)
    return False, min((best[(g.start, start, q)] for q in bad), key=length_lex_key)


# ---------------------------------------------------------------- boundedness


MARKERS = "#$%&@!~^=;:,."


def fresh_marker(alphabet) -> str:
    return next(c for c in MARKERS if c not in alphabet)


def _marked_grammar(g: Cfg, target: str, marker: str) -> Cfg:
    """Grammar for { x # y : target ⇒* x target y }."""
    hat = {n: n + "^" for n in g.nonterminals}
    prods = [(hat[target], (marker,))]
    for lhs, rhs in g.productions:
        for i, s in enumerate(rhs):
            if g.is_nt(s):
                prods.append((hat[lhs], rhs[:i] + (hat[s],) + rhs[i + 1 :]))
    prods += list(g.productions)
    nts = (hat[target],) + tuple(hat[n] for n in g.nonterminals if n != target) + g.nonterminals
    return reduce_cfg(Cfg(nts, g.terminals + (marker,), tuple(prods), hat[target]))


def _pump_sets(g: Cfg, target: str):
    """(grammar for x#y, marker, u, v) with u, v primitive roots of some non-empty
    left and right pump, or None when that side is always empty."""
    mark = fresh_marker(g.terminals)
    mg = _marked_grammar(g, target, mark)
    al = mg.terminals
    syms = "(" + "|".join("\\" + a for a in g.terminals) + ")"
    left = A.determinize_trim(_regex(f"{syms}+\\{mark}{syms}*", al))
    right = A.determinize_trim(_regex(f"{syms}*\\{mark}{syms}+", al))
    u = v = None
    empty, w = cfg_is_empty(cfg_intersect_regular(mg, left))
    if not empty:
        u = primitive_root(w.split(mark)[0])
    empty, w = cfg_is_empty(cfg_intersect_regular(mg, right))
    if not empty:
        v = primitive_root(w.split(mark)[1])
    return mg, mark, u, v


def _regex(text, alphabet):
    from .regex import regex_nfa

    return regex_nfa(text, alphabet)


def _star(w: str | None) -> str:
    return "eps" if w is None else "(" + "".join("\\" + c for c in w) + ")*"


def cfg_bounded(g: Cfg) -> BoundednessCertificate:
    """Ginsburg's criterion: L(g) is bounded iff for every nonterminal A the
    left pumps {x : A ⇒* x A y} lie in some u* and the right pumps in some v*."""
    g = reduce_cfg(g)
    if not g.productions:
        return BoundednessCertificate(True, ())
    pumps: dict[str, tuple[str | None, str | None]] = {}
    for n in g.nonterminals:
        mg, mark, u, v = _pump_sets(g, n)
        shape = _regex(f"{_star(u)}\\{mark}{_star(v)}", mg.terminals)
        ok, w = cfg_subset_regular(mg, shape)
        if not ok:
            x, y = w.split(mark)
            if u is not None and x and primitive_root(x) != u:
                return BoundednessCertificate(False, (), (n, u, x))
            if v is not None and y and primitive_root(y) != v:
                return BoundednessCertificate(False, (), (n, v, y))
            raise AssertionError("inconsistent pump witness")
        pumps[n] = (u, v)
    words = _bounding_words(g, g.start, frozenset(), pumps, {})
    merged: list[str] = []
    for w in words:
        if not merged or merged[-1] != w:
            merged.append(w)
    ok, _ = cfg_subset_regular(g, A.word_stars(merged, g.terminals))
    if not ok:
        raise AssertionError("bounding words do not cover the language")
    return BoundednessCertificate(True, tuple(merged))


def _bounding_words(g: Cfg, n: str, removed: frozenset, pumps, memo) -> tuple[str, ...]:
    """Words w1..wk with L(n) ⊆ w1*...wk* in the grammar without ``removed``.

    A derivation tree of n has an n-node with no n-node below it, so
    L(n) ⊆ X · (rules of n without n) · Y with X, Y the pump sets.
    """
    key = (n, removed)
    if key in memo:
        return memo[key]
    gone = removed | {n}
    # removing rules only shrinks the pump sets, so the full-grammar roots still bound them
    u, v = pumps[n]
    out: list[str] = []
    if u:
        out.append(u)
    for rhs in g.rules[n]:
        if any(s in gone for s in rhs if g.is_nt(s)):
            continue
        for s in rhs:
            if g.is_nt(s):
                out.extend(_bounding_words(g, s, gone, pumps, memo))
            else:
                out.append(s)
    if v:
        out.append(v)
    memo[key] = tuple(out)
    return memo[key]


# ---------------------------------------------------------------- subword closure


def cfg_subword_closure(g: Cfg) -> Nfa:
    """Subword downward closure, by strongly connected components of the
    nonterminal graph.  A linear component has closure X*·↓E·Y* with X, Y
    the closed left and right contexts and E the exits; any other recursive
    component generates every word over its letters."""
    g = reduce_cfg(g)
    al = g.terminals
    if not g.productions:
        return A.empty_language(al)
    edges: dict[str, set[str]] = defaultdict(set)
    for lhs, rhs in g.productions:
        edges[lhs].update(s for s in rhs if g.is_nt(s))
    comp = _scc_index(g.nonterminals, edges)
    groups: dict[int, list[str]] = defaultdict(list)
    for n in g.nonterminals:
        groups[comp[n]].append(n)
    done: dict[str, Nfa] = {}

    def sym(s):
        if g.is_nt(s):
            return done[s]
        return A.finite_language(["", s], al)

    def seq(items):
        return A.concat_all([sym(s) for s in items], al)

    for c in sorted(groups):
        members = set(groups[c])
        recursive = len(members) > 1 or any(groups[c][0] in edges[m] for m in members)
        if not recursive:
            (n,) = groups[c]
            done[n] = A.trim_nfa(A.union_all([seq(r) for r in g.rules[n]], al))
            continue
        inner = [(l, r) for l, r in g.productions if l in members]
        linear = all(sum(1 for s in r if s in members) <= 1 for _, r in inner)
        if not linear:
            letters = set()
            stack = list(members)
            seen = set(members)
            while stack:
                m = stack.pop()
                for r in g.rules[m]:
                    for s in r:
                        if g.is_nt(s):
                            if s not in seen:
                                seen.add(s)
                                stack.append(s)
                        else:
                            letters.add(s)
            star = A.Nfa(1, al, {(0, a, 0) for a in letters}, {0}, {0})
            for m in members:
                done[m] = star
            continue
        lefts, rights, exits = [], [], []
        for _, r in inner:
            pos = [i for i, s in enumerate(r) if s in members]
            if pos:
                lefts.append(seq(r[: pos[0]]))
                rights.append(seq(r[pos[0] + 1 :]))
            else:
                exits.append(seq(r))
        x = A.star(A.union_all(lefts, al))
        y = A.star(A.union_all(rights, al))
        res = A.trim_nfa(A.concat_all([x, A.union_all(exits, al), y], al))
        for m in members:
            done[m] = res
    return done[g.start]


# ---------------------------------------------------------------- decisions


def mine_cfg_antichain(g: Cfg, relation: str, size: int = 8, pool_size: int = 20_000,
                       max_len: int = 40) -> dict:
    """Antichain sample from the words of L(g), enumerated up to the largest
    length whose word count stays within ``pool_size``."""
    from .decision import mine_pumped_family

    words: list[str] = []
    reached = 0
    try:
        for k, layer in _length_layers(g, max_len):
            if len(words) + len(layer) > pool_size:
                break
            words.extend(sorted(layer))
            reached = k
    except A.BudgetExceeded:
        pass
    n = reached
    pool = set(words)
    fam = mine_pumped_family(pool.__contains__, g.terminals, relation, size, max_total=min(n, DEFAULT_ENUM_LEN))
    if fam is not None:
        return {"construction": "pumped-family", "words": fam}
    try:
        got = mine_antichain(words, relation, size)
    except AntichainSearchExhausted as e:
        got = e.found
    return {"construction": "greedy", "words": got}


def _cfg_infix(g: Cfg, sample: int, relation_for_mining: str, mining_grammar: Cfg) -> DecisionReport:
    g = reduce_cfg(g)
    if not g.productions:
        z = OrdinalExpr()
        b = RBounds(0, 0, 0, 0, 0)
        cert = {"kind": "r-inclusion", "bounds": b.to_json(), "bounding_words": [], "periods": []}
        return DecisionReport("infix", "wqo", cert, OrdinalBounds(z, False, z, False, z, False))
    bc = cfg_bounded(g)
    if not bc.bounded:
        n, u, v = bc.witness_cycle_pair
        smp = mine_cfg_antichain(mining_grammar, relation_for_mining, sample)
        cert = {"kind": "unboundedness", "nonterminal": n, "u": u, "v": v,
                "antichain": smp["words"], "construction": smp["construction"]}
        return DecisionReport("infix", "not-wqo", cert)
    n = len(bc.words)
    m = max((len(w) for w in bc.words), default=0)
    n0 = A.determinize_trim(cfg_subword_closure(g)).n
    rb = RBounds(n, m, n0, max(n, m), n * m * (n0 + 1))
    r = build_r_language(rb, g.terminals)
    ok, escape = cfg_subset_regular(g, r)
    if not ok:
        smp = mine_cfg_antichain(mining_grammar, relation_for_mining, sample)
        cert = {"kind": "escape-word", "word": escape, "bounds": rb.to_json(),
                "bounding_words": list(bc.words), "antichain": smp["words"],
                "construction": smp["construction"]}
        return DecisionReport("infix", "not-wqo", cert)
    cert = {"kind": "r-inclusion", "bounds": rb.to_json(), "bounding_words": list(bc.words),
            "periods": r_periods(rb.b1, g.terminals)}
    return DecisionReport("infix", "wqo", cert, INFIX_WQO_BOUNDS)


def decide_cfg(g: Cfg, relation: str, sample: int = 8) -> DecisionReport:
    g = reduce_cfg(g)
    finite = cfg_is_finite(g)
    if relation == "infix":
        rep = _cfg_infix(g, sample, "infix", g)
        if rep.wqo and finite and g.productions:
            rep = DecisionReport("infix", "wqo", rep.certificate, _finite_bounds(cfg_enumerate(g, _max_len(g)), "infix"))
        return rep
    if relation == "prefix":
        rep = _cfg_infix(marker_cfg(g, fresh_marker(g.terminals)), sample, "prefix", g)
        cert = dict(rep.certificate)
        cert["reduction"] = "marker"
        if not rep.wqo:
            return DecisionReport("prefix", "not-wqo", cert)
        if finite:
            words = cfg_enumerate(g, _max_len(g)) if g.productions else []
            bounds = _finite_bounds(words, "prefix") if words else rep.ordinal_bounds
        else:
            bounds = OrdinalBounds(W, False, W, True, OrdinalExpr.omega(2), True)
        return DecisionReport("prefix", "wqo", cert, bounds)
    if relation == "suffix":
        rep = decide_cfg(reverse_cfg(g), "prefix", sample)
        cert = dict(rep.certificate)
        if "antichain" in cert:
            cert["antichain"] = [w[::-1] for w in cert["antichain"]]
        return DecisionReport("suffix", rep.verdict, cert, rep.ordinal_bounds)
    raise ValueError(f"unsupported relation {relation!r}")


def _max_len(g: Cfg) -> int:
    """Longest word of a finite language (the grammar must be finite)."""
    g = reduce_cfg(g)
    memo: dict[str, int] = {}

    def longest(n):
        if n not in memo:
            memo[n] = -1  # not reached for finite reduced grammars except unit cycles
            memo[n] = max(sum(longest(s) if g.is_nt(s) else 1 for s in r) for r in g.rules[n])
        return memo[n]

    return max(longest(g.start), 0)
