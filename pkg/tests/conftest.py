"""Shared brute-force oracles and hypothesis strategies."""
from __future__ import annotations

import itertools
import sys
from pathlib import Path

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from wqolang.automata import Nfa, as_nfa

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def all_words(alphabet, max_len: int):
    for k in range(max_len + 1):
        for t in itertools.product(sorted(alphabet), repeat=k):
            yield "".join(t)


def oracle_accepts(x, word: str) -> bool:
    """Path search over the raw transition relation, independent of the
    library's own simulation."""
    nfa = as_nfa(x)
    frontier = set(nfa.initial)

    def close(states):
        stack = list(states)
        out = set(states)
        while stack:
            p = stack.pop()
            for (s, a, q) in nfa.transitions:
                if s == p and a == "" and q not in out:
                    out.add(q)
                    stack.append(q)
        return out

    frontier = close(frontier)
    for c in word:
        frontier = close({q for (p, a, q) in nfa.transitions if p in frontier and a == c})
    return bool(frontier & nfa.accepting)


def lang(x, max_len: int, alphabet=None) -> set[str]:
    alphabet = alphabet or as_nfa(x).alphabet
    return {w for w in all_words(alphabet, max_len) if oracle_accepts(x, w)}


def factors(w: str) -> set[str]:
    return {w[i:j] for i in range(len(w) + 1) for j in range(i, len(w) + 1)}


def subwords(w: str) -> set[str]:
    return {"".join(c) for k in range(len(w) + 1) for c in itertools.combinations(w, k)}


@st.composite
def nfas(draw, max_states: int = 4, alphabet=("a", "b"), eps: bool = True):
    n = draw(st.integers(1, max_states))
    labels = list(alphabet) + ([""] if eps else [])
    trans = draw(st.sets(st.tuples(st.integers(0, n - 1), st.sampled_from(labels), st.integers(0, n - 1)),
                         max_size=3 * n))
    init = draw(st.sets(st.integers(0, n - 1), min_size=1, max_size=n))
    acc = draw(st.sets(st.integers(0, n - 1), max_size=n))
    return Nfa(n, alphabet, trans, init, acc)


def dfa_lang(d, max_len: int) -> set[str]:
    """Words of a DFA up to max_len, walking the raw transition map."""
    out = set()
    if d.initial is None:
        return out
    layer = [("", d.initial)]
    for k in range(max_len + 1):
        out |= {w for w, q in layer if q in d.accepting}
        if k == max_len:
            break
        layer = [(w + c, d.delta[(q, c)]) for w, q in layer for c in d.alphabet if (q, c) in d.delta]
    return out


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
