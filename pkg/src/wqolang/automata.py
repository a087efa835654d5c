"""Finite automata over explicit single-character alphabets.

Words are plain ``str`` values; the empty string is the empty word and also
the epsilon label on transitions.  Every automaton is immutable once built.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import islice
from typing import Iterable, Iterator, Mapping

EPS = ""
DEFAULT_STATE_BUDGET = 1_000_000
DEFAULT_OUTPUT_BUDGET = 1_000_000


class AutomatonError(ValueError):
    pass


class AlphabetMismatch(AutomatonError):
    pass


class BudgetExceeded(RuntimeError):
    pass


def make_alphabet(symbols: Iterable[str]) -> tuple[str, ...]:
    syms = list(symbols)
    if not syms:
        raise AutomatonError("alphabet must not be empty")
    for s in syms:
        if not isinstance(s, str) or len(s) != 1:
            raise AutomatonError(f"symbols must be single characters, got {s!r}")
    if len(set(syms)) != len(syms):
        raise AutomatonError("duplicate symbols in alphabet")
    return tuple(sorted(syms))


def check_word(word: str, alphabet: tuple[str, ...]) -> str:
    bad = set(word) - set(alphabet)
    if bad:
        raise AlphabetMismatch(f"symbols {sorted(bad)} not in alphabet {alphabet}")
    return word


def length_lex_key(word: str) -> tuple[int, str]:
    return (len(word), word)


@dataclass(frozen=True, eq=False)
class Nfa:
    """Nondeterministic automaton with states ``0 .. n-1``."""

    n: int
    alphabet: tuple[str, ...]
    transitions: frozenset  # of (p, label, q); label "" is epsilon
    initial: frozenset
    accepting: frozenset

    def __post_init__(self):
        object.__setattr__(self, "alphabet", make_alphabet(self.alphabet))
        object.__setattr__(self, "transitions", frozenset(self.transitions))
        object.__setattr__(self, "initial", frozenset(self.initial))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        syms = set(self.alphabet)
        for p, a, q in self.transitions:
            if not (0 <= p < self.n and 0 <= q < self.n):
                raise AutomatonError(f"transition ({p}, {a!r}, {q}) uses an undeclared state")
            if a != EPS and a not in syms:
                raise AlphabetMismatch(f"label {a!r} not in alphabet {self.alphabet}")
        for q in self.initial | self.accepting:
            if not 0 <= q < self.n:
                raise AutomatonError(f"state {q} is not declared")

    @cached_property
    def out(self) -> tuple[tuple[tuple[str, int], ...], ...]:
        adj: list[list[tuple[str, int]]] = [[] for _ in range(self.n)]
        for p, a, q in self.transitions:
            adj[p].append((a, q))
        return tuple(tuple(sorted(edges)) for edges in adj)

    @cached_property
    def has_eps(self) -> bool:
        return any(a == EPS for _, a, _ in self.transitions)

    def eps_closure(self, states: Iterable[int]) -> frozenset:
        seen = set(states)
        if not self.has_eps:
            return frozenset(seen)
        stack = list(seen)
        while stack:
            p = stack.pop()
            for a, q in self.out[p]:
                if a == EPS and q not in seen:
                    seen.add(q)
                    stack.append(q)
        return frozenset(seen)

    def start(self) -> frozenset:
        return self.eps_closure(self.initial)

    def step(self, states: Iterable[int], symbol: str) -> frozenset:
        nxt = set()
        for p in states:
            for a, q in self.out[p]:
                if a == symbol:
                    nxt.add(q)
        return self.eps_closure(nxt)

    def accepts(self, word: str) -> bool:
        cur = self.start()
        for c in word:
            if c not in self.alphabet:
                return False
            cur = self.step(cur, c)
            if not cur:
                return False
        return bool(cur & self.accepting)

    __contains__ = accepts

    def to_nfa(self) -> "Nfa":
        return self


@dataclass(frozen=True, eq=False)
class Dfa:
    """Deterministic, possibly partial automaton.  ``initial`` is None when
    the automaton has no states at all (the trimmed empty language)."""

    n: int
    alphabet: tuple[str, ...]
    delta: Mapping[tuple[int, str], int]
    initial: int | None
    accepting: frozenset
    trim: bool = False

    def __post_init__(self):
        object.__setattr__(self, "alphabet", make_alphabet(self.alphabet))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        object.__setattr__(self, "delta", dict(self.delta))
        syms = set(self.alphabet)
        for (p, a), q in self.delta.items():
            if a not in syms:
                raise AlphabetMismatch(f"label {a!r} not in alphabet {self.alphabet}")
            if not (0 <= p < self.n and 0 <= q < self.n):
                raise AutomatonError(f"transition ({p}, {a!r}, {q}) uses an undeclared state")
        if self.initial is None:
            if self.n:
                raise AutomatonError("a Dfa with states needs an initial state")
        elif not 0 <= self.initial < self.n:
            raise AutomatonError(f"initial state {self.initial} is not declared")

    def step(self, q: int | None, symbol: str) -> int | None:
        if q is None:
            return None
        return self.delta.get((q, symbol))

    def run(self, word: str, start: int | None = None) -> int | None:
        q = self.initial if start is None else start
        for c in word:
            q = self.step(q, c)
            if q is None:
                return None
        return q

    def accepts(self, word: str) -> bool:
        return self.run(word) in self.accepting

    __contains__ = accepts

    @cached_property
    def succ(self) -> tuple[tuple[tuple[str, int], ...], ...]:
        adj: list[list[tuple[str, int]]] = [[] for _ in range(self.n)]
        for (p, a), q in self.delta.items():
            adj[p].append((a, q))
        return tuple(tuple(sorted(e)) for e in adj)

    def to_nfa(self) -> Nfa:
        return Nfa(
            self.n,
            self.alphabet,
            frozenset((p, a, q) for (p, a), q in self.delta.items()),
            frozenset() if self.initial is None else frozenset({self.initial}),
            self.accepting,
        )

    def with_accepting(self, accepting: Iterable[int]) -> "Dfa":
        return Dfa(self.n, self.alphabet, self.delta, self.initial, frozenset(accepting), False)


def as_nfa(x) -> Nfa:
    return x.to_nfa()


def _same_alphabet(a, b) -> tuple[str, ...]:
    if a.alphabet != b.alphabet:
        raise AlphabetMismatch(f"alphabets differ: {a.alphabet} vs {b.alphabet}")
    return a.alphabet


# ---------------------------------------------------------------- basic languages


def empty_language(alphabet) -> Nfa:
    return Nfa(0, alphabet, frozenset(), frozenset(), frozenset())


def epsilon_language(alphabet) -> Nfa:
    return Nfa(1, alphabet, frozenset(), {0}, {0})


def sigma_star(alphabet) -> Nfa:
    alphabet = make_alphabet(alphabet)
    return Nfa(1, alphabet, {(0, a, 0) for a in alphabet}, {0}, {0})


def sigma_upto(alphabet, k: int) -> Nfa:
    """Words of length at most ``k``."""
    alphabet = make_alphabet(alphabet)
    trans = {(i, a, i + 1) for i in range(k) for a in alphabet}
    return Nfa(k + 1, alphabet, trans, {0}, set(range(k + 1)))


def finite_language(words: Iterable[str], alphabet) -> Nfa:
    alphabet = make_alphabet(alphabet)
    trans, accepting = set(), set()
    n = 1
    for w in words:
        check_word(w, alphabet)
        p = 0
        for c in w:
            trans.add((p, c, n))
            p = n
            n += 1
        accepting.add(p)
    return Nfa(n, alphabet, trans, {0}, accepting)


def word_stars(words: Iterable[str], alphabet) -> Nfa:
    """The language w1* w2* ... wn*."""
    alphabet = make_alphabet(alphabet)
    trans = set()
    n = 1
    hub = 0
    for w in words:
        check_word(w, alphabet)
        nxt = n
        n += 1
        trans.add((hub, EPS, nxt))
        if w:
            p = nxt
            for i, c in enumerate(w):
                q = nxt if i == len(w) - 1 else n
                if q == n:
                    n += 1
                trans.add((p, c, q))
                p = q
        hub = nxt
    return Nfa(n, alphabet, trans, {0}, {hub})


# ---------------------------------------------------------------- determinization


def determinize(x, budget: int = DEFAULT_STATE_BUDGET) -> Dfa:
    """Reachable subset construction; the empty subset is never materialized."""
    if isinstance(x, Dfa):
        return x
    nfa = x
    start = nfa.start()
    if not start:
        return Dfa(0, nfa.alphabet, {}, None, frozenset())
    index = {start: 0}
    order = [start]
    delta = {}
    queue = deque([start])
    while queue:
        s = queue.popleft()
        i = index[s]
        for a in nfa.alphabet:
            t = nfa.step(s, a)
            if not t:
                continue
            j = index.get(t)
            if j is None:
                if len(index) >= budget:
                    raise BudgetExceeded(f"subset construction exceeded {budget} states")
                j = index[t] = len(order)
                order.append(t)
                queue.append(t)
            delta[(i, a)] = j
    accepting = {index[s] for s in order if s & nfa.accepting}
    return Dfa(len(order), nfa.alphabet, delta, 0, accepting)


def useful_states(d: Dfa) -> set[int]:
    if d.initial is None:
        return set()
    reach = {d.initial}
    stack = [d.initial]
    while stack:
        p = stack.pop()
        for _, q in d.succ[p]:
            if q not in reach:
                reach.add(q)
                stack.append(q)
    pred: dict[int, list[int]] = {}
    for (p, _), q in d.delta.items():
        pred.setdefault(q, []).append(p)
    co = set(d.accepting & reach)
    stack = list(co)
    while stack:
        q = stack.pop()
        for p in pred.get(q, ()):
            if p not in co and p in reach:
                co.add(p)
                stack.append(p)
    return co


def trim_dfa(d: Dfa) -> Dfa:
    """Drop useless states and renumber in breadth-first, alphabet order."""
    keep = useful_states(d)
    if d.initial not in keep:
        return Dfa(0, d.alphabet, {}, None, frozenset(), True)
    index = {d.initial: 0}
    queue = deque([d.initial])
    delta = {}
    while queue:
        p = queue.popleft()
        for a, q in d.succ[p]:
            if q not in keep:
                continue
            if q not in index:
                index[q] = len(index)
                queue.append(q)
            delta[(index[p], a)] = index[q]
    accepting = {index[q] for q in d.accepting if q in index}
    return Dfa(len(index), d.alphabet, delta, 0, accepting, True)


def merge_equivalent(d: Dfa) -> Dfa:
    """Moore partition refinement on a trim partial Dfa.  Missing transitions
    go to an implicit dead state, which no trim state is equivalent to."""
    if d.initial is None:
        return d
    block = [1 if q in d.accepting else 0 for q in range(d.n)]
    while True:
        sig = [
            (block[q],) + tuple(block[d.delta[(q, a)]] if (q, a) in d.delta else -1 for a in d.alphabet)
            for q in range(d.n)
        ]
        ids: dict = {}
        new = [ids.setdefault(s, len(ids)) for s in sig]
        stable = len(ids) == len(set(block))
        block = new
        if stable:
            break
    delta = {(block[p], a): block[q] for (p, a), q in d.delta.items()}
    merged = Dfa(len(set(block)), d.alphabet, delta, block[d.initial], {block[q] for q in d.accepting})
    return trim_dfa(merged)


def determinize_trim(x, budget: int = DEFAULT_STATE_BUDGET) -> Dfa:
    """Subset construction, trimming and merging of equivalent states, so the
    result is the minimal partial Dfa with states numbered breadth-first."""
    if isinstance(x, Dfa) and x.trim:
        return x
    return merge_equivalent(trim_dfa(determinize(x, budget)))


def trim_nfa(nfa: Nfa) -> Nfa:
    fwd: dict[int, list[int]] = {}
    bwd: dict[int, list[int]] = {}
    for p, _, q in nfa.transitions:
        fwd.setdefault(p, []).append(q)
        bwd.setdefault(q, []).append(p)

    def closure(seed, adj):
        seen = set(seed)
        stack = list(seen)
        while stack:
            p = stack.pop()
            for q in adj.get(p, ()):
                if q not in seen:
                    seen.add(q)
                    stack.append(q)
        return seen

    keep = closure(nfa.initial, fwd) & closure(nfa.accepting, bwd)
    index = {q: i for i, q in enumerate(sorted(keep))}
    return Nfa(
        len(index),
        nfa.alphabet,
        {(index[p], a, index[q]) for p, a, q in nfa.transitions if p in keep and q in keep},
        {index[q] for q in nfa.initial if q in keep},
        {index[q] for q in nfa.accepting if q in keep},
    )


# ---------------------------------------------------------------- boolean operations


def complement(d: Dfa) -> Dfa:
    """Complete ``d`` with a sink, then swap accepting and rejecting states."""
    d = determinize(d)
    n = d.n
    if d.initial is None:
        return Dfa(1, d.alphabet, {(0, a): 0 for a in d.alphabet}, 0, {0})
    sink = n
    delta = dict(d.delta)
    for p in range(n + 1):
        for a in d.alphabet:
            delta.setdefault((p, a), sink)
    accepting = set(range(n + 1)) - set(d.accepting)
    return Dfa(n + 1, d.alphabet, delta, d.initial, accepting)


def _disjoint(a: Nfa, b: Nfa, offset: int):
    return {(p + offset, c, q + offset) for p, c, q in b.transitions}


def union(a, b) -> Nfa:
    a, b = as_nfa(a), as_nfa(b)
    alphabet = _same_alphabet(a, b)
    k = a.n
    return Nfa(
        a.n + b.n,
        alphabet,
        set(a.transitions) | _disjoint(a, b, k),
        set(a.initial) | {q + k for q in b.initial},
        set(a.accepting) | {q + k for q in b.accepting},
    )


def intersection(a, b) -> Nfa:
    a, b = as_nfa(a), as_nfa(b)
    alphabet = _same_alphabet(a, b)
    index: dict[tuple[frozenset, frozenset], int] = {}
    sa, sb = a.start(), b.start()
    if not sa or not sb:
        return empty_language(alphabet)
    index[(sa, sb)] = 0
    queue = deque([(sa, sb)])
    trans = set()
    accepting = set()
    while queue:
        pair = queue.popleft()
        i = index[pair]
        if pair[0] & a.accepting and pair[1] & b.accepting:
            accepting.add(i)
        for c in alphabet:
            ta, tb = a.step(pair[0], c), b.step(pair[1], c)
            if not ta or not tb:
                continue
            nxt = (ta, tb)
            if nxt not in index:
                index[nxt] = len(index)
                queue.append(nxt)
            trans.add((i, c, index[nxt]))
    return Nfa(len(index), alphabet, trans, {0}, accepting)


def difference(a, b, budget: int = DEFAULT_STATE_BUDGET) -> Nfa:
    _same_alphabet(a, b)
    return intersection(a, complement(determinize(as_nfa(b), budget)))


def boolean_combine(kind: str, a, b, budget: int = DEFAULT_STATE_BUDGET) -> Nfa:
    if kind == "union":
        return union(a, b)
    if kind == "intersection":
        return intersection(a, b)
    if kind == "difference":
        return difference(a, b, budget)
    raise ValueError(f"unknown boolean operation {kind!r}")


# ---------------------------------------------------------------- rational operations


def concat(a, b) -> Nfa:
    a, b = as_nfa(a), as_nfa(b)
    alphabet = _same_alphabet(a, b)
    k = a.n
    trans = set(a.transitions) | _disjoint(a, b, k)
    trans |= {(p, EPS, q + k) for p in a.accepting for q in b.initial}
    return Nfa(a.n + b.n, alphabet, trans, a.initial, {q + k for q in b.accepting})


def concat_all(parts, alphabet) -> Nfa:
    out = epsilon_language(alphabet)
    for p in parts:
        out = concat(out, p)
    return out


def union_all(parts, alphabet) -> Nfa:
    out = empty_language(alphabet)
    for p in parts:
        out = union(out, p)
    return out


def star(a) -> Nfa:
    a = as_nfa(a)
    hub = a.n
    trans = set(a.transitions)
    trans |= {(hub, EPS, q) for q in a.initial}
    trans |= {(p, EPS, hub) for p in a.accepting}
    return Nfa(a.n + 1, a.alphabet, trans, {hub}, {hub})


def reverse(a) -> Nfa:
    a = as_nfa(a)
    return Nfa(a.n, a.alphabet, {(q, c, p) for p, c, q in a.transitions}, a.accepting, a.initial)


def rational_op(kind: str, *args) -> Nfa:
    if kind == "concat":
        if not args:
            raise ValueError("concat needs at least one argument")
        out = as_nfa(args[0])
        for nxt in args[1:]:
            out = concat(out, nxt)
        return out
    if kind in ("star", "reverse"):
        if len(args) != 1:
            raise ValueError(f"{kind} takes exactly one argument")
        return star(args[0]) if kind == "star" else reverse(args[0])
    raise ValueError(f"unknown rational operation {kind!r}")


def with_alphabet(a, alphabet) -> Nfa:
    """Same language viewed over a larger alphabet."""
    a = as_nfa(a)
    alphabet = make_alphabet(alphabet)
    if not set(a.alphabet) <= set(alphabet):
        raise AlphabetMismatch(f"{a.alphabet} is not contained in {alphabet}")
    return Nfa(a.n, alphabet, a.transitions, a.initial, a.accepting)


# ---------------------------------------------------------------- decisions


def _bfs_subsets(nfa: Nfa, budget: int):
    """Breadth-first walk of the reachable subsets in length-lex order of
    their first (shortest, lexicographically least) access word."""
    start = nfa.start()
    if not start:
        return
    seen = {start: ""}
    queue = deque([start])
    while queue:
        s = queue.popleft()
        yield s, seen[s]
        for a in nfa.alphabet:
            t = nfa.step(s, a)
            if t and t not in seen:
                if len(seen) >= budget:
                    raise BudgetExceeded(f"search exceeded {budget} subsets")
                seen[t] = seen[s] + a
                queue.append(t)


def is_empty(x, budget: int = DEFAULT_STATE_BUDGET) -> tuple[bool, str | None]:
    """Return ``(True, None)`` or ``(False, w)`` with ``w`` the length-lex
    least accepted word."""
    if isinstance(x, Dfa):
        if x.initial is None:
            return True, None
        seen = {x.initial: ""}
        queue = deque([x.initial])
        while queue:
            p = queue.popleft()
            if p in x.accepting:
                return False, seen[p]
            for a, q in x.succ[p]:
                if q not in seen:
                    seen[q] = seen[p] + a
                    queue.append(q)
        return True, None
    for s, w in _bfs_subsets(x, budget):
        if s & x.accepting:
            return False, w
    return True, None


def has_cycle(d: Dfa) -> bool:
    color = [0] * d.n
    for root in range(d.n):
        if color[root]:
            continue
        stack = [(root, iter(d.succ[root]))]
        color[root] = 1
        while stack:
            p, it = stack[-1]
            for _, q in it:
                if color[q] == 1:
                    return True
                if color[q] == 0:
                    color[q] = 1
                    stack.append((q, iter(d.succ[q])))
                    break
            else:
                color[p] = 2
                stack.pop()
    return False


def is_finite(x, budget: int = DEFAULT_STATE_BUDGET) -> bool:
    return not has_cycle(determinize_trim(x, budget))


def is_subset(a, b, budget: int = DEFAULT_STATE_BUDGET) -> tuple[bool, str | None]:
    """Decide L(a) ⊆ L(b) by an on-the-fly product with the subset automaton
    of ``b``; the counterexample is the length-lex least word of L(a) \\ L(b)."""
    a, b = as_nfa(a), as_nfa(b)
    alphabet = _same_alphabet(a, b)
    sa = a.start()
    if not sa:
        return True, None
    start = (sa, b.start())
    seen = {start: ""}
    queue = deque([start])
    step_cache: dict[tuple[frozenset, str], frozenset] = {}

    def bstep(s, c):
        key = (s, c)
        t = step_cache.get(key)
        if t is None:
            t = step_cache[key] = b.step(s, c)
        return t

    while queue:
        pair = queue.popleft()
        if pair[0] & a.accepting and not pair[1] & b.accepting:
            return False, seen[pair]
        for c in alphabet:
            ta = a.step(pair[0], c)
            if not ta:
                continue
            nxt = (ta, bstep(pair[1], c))
            if nxt not in seen:
                if len(seen) >= budget:
                    raise BudgetExceeded(f"inclusion check exceeded {budget} product states")
                seen[nxt] = seen[pair] + c
                queue.append(nxt)
    return True, None


def equivalent(a, b, budget: int = DEFAULT_STATE_BUDGET) -> bool:
    return is_subset(a, b, budget)[0] and is_subset(b, a, budget)[0]


# ---------------------------------------------------------------- downward closures


def closure(kind: str, x) -> Nfa:
    """Downward closure of L(x) for the prefix, suffix, infix or subword order."""
    nfa = trim_nfa(as_nfa(x))
    states = set(range(nfa.n))
    if kind == "prefix":
        return Nfa(nfa.n, nfa.alphabet, nfa.transitions, nfa.initial, states)
    if kind == "suffix":
        return Nfa(nfa.n, nfa.alphabet, nfa.transitions, states, nfa.accepting)
    if kind == "infix":
        return Nfa(nfa.n, nfa.alphabet, nfa.transitions, states, states)
    if kind == "subword":
        extra = {(p, EPS, q) for p, a, q in nfa.transitions if a != EPS}
        return Nfa(nfa.n, nfa.alphabet, nfa.transitions | extra, nfa.initial, nfa.accepting)
    raise ValueError(f"unknown closure kind {kind!r}")


# ---------------------------------------------------------------- enumeration


def iter_words(x, budget: int = DEFAULT_STATE_BUDGET) -> Iterator[str]:
    """All accepted words in length-lexicographic order (possibly infinite)."""
    d = determinize_trim(x, budget)
    if d.initial is None:
        return
    finite = not has_cycle(d)
    # exact[r] = states with an accepted continuation of length exactly r
    exact = [set(d.accepting)]
    length = 0
    while True:
        if finite and length >= d.n:
            return
        while len(exact) <= length:
            prev = exact[-1]
            exact.append({p for p in range(d.n) if any(q in prev for _, q in d.succ[p])})
        if d.initial in exact[length]:
            stack = [(d.initial, "")]
            while stack:
                p, w = stack.pop()
                r = length - len(w)
                if r == 0:
                    yield w
                    continue
                nxt = exact[r - 1]
                for a, q in reversed(d.succ[p]):
                    if q in nxt:
                        stack.append((q, w + a))
        length += 1


def enumerate_words(x, maxlen: int, budget: int = DEFAULT_OUTPUT_BUDGET) -> list[str]:
    out = []
    for w in iter_words(x):
        if len(w) > maxlen:
            break
        if len(out) >= budget:
            raise BudgetExceeded(f"enumeration exceeded {budget} words")
        out.append(w)
    return out


def first_words(x, count: int) -> list[str]:
    return list(islice(iter_words(x), count))


# ---------------------------------------------------------------- transducers


@dataclass(frozen=True, eq=False)
class Transducer:
    """Finite automaton whose transitions carry (input, output) label pairs."""

    n: int
    input_alphabet: tuple[str, ...]
    output_alphabet: tuple[str, ...]
    transitions: frozenset  # of (p, in_label, out_label, q)
    initial: frozenset
    accepting: frozenset

    def __post_init__(self):
        object.__setattr__(self, "input_alphabet", make_alphabet(self.input_alphabet))
        object.__setattr__(self, "output_alphabet", make_alphabet(self.output_alphabet))
        object.__setattr__(self, "transitions", frozenset(self.transitions))
        object.__setattr__(self, "initial", frozenset(self.initial))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        for p, i, o, q in self.transitions:
            if not (0 <= p < self.n and 0 <= q < self.n):
                raise AutomatonError("transducer transition uses an undeclared state")
            if i != EPS and i not in self.input_alphabet:
                raise AlphabetMismatch(f"input label {i!r} not in {self.input_alphabet}")
            if o != EPS and o not in self.output_alphabet:
                raise AlphabetMismatch(f"output label {o!r} not in {self.output_alphabet}")


def identity_transducer(alphabet) -> Transducer:
    alphabet = make_alphabet(alphabet)
    return Transducer(1, alphabet, alphabet, {(0, a, a, 0) for a in alphabet}, {0}, {0})


def marker_transducer(alphabet, marker: str = "#") -> Transducer:
    """w ↦ marker·w."""
    alphabet = make_alphabet(alphabet)
    if marker in alphabet:
        raise AutomatonError(f"marker {marker!r} already in the alphabet")
    trans = {(0, EPS, marker, 1)} | {(1, a, a, 1) for a in alphabet}
    return Transducer(2, alphabet, alphabet + (marker,), trans, {0}, {1})


def full_image_transducer(alphabet, outputs=("a", "b")) -> Transducer:
    """The relation Σ* × outputs*."""
    alphabet = make_alphabet(alphabet)
    outputs = make_alphabet(outputs)
    trans = {(0, a, EPS, 0) for a in alphabet} | {(0, EPS, b, 0) for b in outputs}
    return Transducer(1, alphabet, outputs, trans, {0}, {0})


def apply_transducer(t: Transducer, x) -> Nfa:
    nfa = as_nfa(x)
    if t.input_alphabet != nfa.alphabet:
        raise AlphabetMismatch(f"transducer reads {t.input_alphabet}, language is over {nfa.alphabet}")
    index: dict[tuple[int, int], int] = {}

    def idx(pair):
        if pair not in index:
            index[pair] = len(index)
        return index[pair]

    starts = [(p, q) for p in sorted(t.initial) for q in sorted(nfa.initial)]
    for s in starts:
        idx(s)
    queue = deque(starts)
    trans = set()
    by_state: dict[int, list] = {}
    for p, i, o, p2 in t.transitions:
        by_state.setdefault(p, []).append((i, o, p2))
    while queue:
        tp, nq = queue.popleft()
        here = index[(tp, nq)]
        moves = []
        for i, o, tp2 in by_state.get(tp, ()):
            if i == EPS:
                moves.append((o, (tp2, nq)))
            else:
                for a, nq2 in nfa.out[nq]:
                    if a == i:
                        moves.append((o, (tp2, nq2)))
        for a, nq2 in nfa.out[nq]:
            if a == EPS:
                moves.append((EPS, (tp, nq2)))
        for label, pair in moves:
            fresh = pair not in index
            j = idx(pair)
            if fresh:
                queue.append(pair)
            trans.add((here, label, j))
    accepting = {i for (tp, nq), i in index.items() if tp in t.accepting and nq in nfa.accepting}
    return Nfa(len(index), t.output_alphabet, trans, {index[s] for s in starts}, accepting)


# ---------------------------------------------------------------- text format


def parse_automaton(text: str) -> Nfa:
    """Parse the line-based automaton format (``alphabet:``, ``states:``,
    ``initial:``, ``accepting:`` headers followed by ``p label q`` lines)."""
    headers: dict[str, list[str]] = {}
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip() if not raw.lstrip().startswith("#") else ""
        if not line:
            continue
        key, sep, rest = line.partition(":")
        if sep and key.strip() in ("alphabet", "states", "initial", "accepting"):
            headers[key.strip()] = rest.split()
            continue
        parts = line.split()
        if len(parts) != 3:
            raise AutomatonError(f"line {lineno}: expected 'state label state', got {raw!r}")
        edges.append((lineno, parts))
    for key in ("alphabet", "states", "initial"):
        if key not in headers:
            raise AutomatonError(f"missing '{key}:' header")
    alphabet = make_alphabet(headers["alphabet"])
    names = headers["states"]
    if len(set(names)) != len(names):
        raise AutomatonError("duplicate state names")
    index = {name: i for i, name in enumerate(names)}

    def state(name, lineno=None):
        if name not in index:
            where = f"line {lineno}: " if lineno else ""
            raise AutomatonError(f"{where}undeclared state {name!r}")
        return index[name]

    trans = set()
    for lineno, (p, a, q) in edges:
        label = EPS if a == "eps" else a
        trans.add((state(p, lineno), label, state(q, lineno)))
    return Nfa(
        len(names),
        alphabet,
        trans,
        {state(s) for s in headers["initial"]},
        {state(s) for s in headers.get("accepting", [])},
    )


def format_automaton(x) -> str:
    nfa = as_nfa(x)
    lines = [
        "alphabet: " + " ".join(nfa.alphabet),
        "states: " + " ".join(f"q{i}" for i in range(nfa.n)),
        "initial: " + " ".join(f"q{i}" for i in sorted(nfa.initial)),
        "accepting: " + " ".join(f"q{i}" for i in sorted(nfa.accepting)),
    ]
    for p, a, q in sorted(nfa.transitions):
        lines.append(f"q{p} {a if a != EPS else 'eps'} q{q}")
    return "\n".join(lines) + "\n"
