import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import factors, subwords
from wqolang.automata import iter_words
from wqolang.orders import (
    AntichainSearchExhausted, FinitePoset, OrdinalExpr, OrdinalOverflow, W, bad_sequence, compare, is_antichain,
    leq, mine_antichain, ordinal_arith, parse_ordinal, poset_invariants,
)
from wqolang.regex import regex_nfa

RELS = ["prefix", "suffix", "infix", "subword"]
words = st.text(alphabet="ab", max_size=6)


def oracle_leq(rel, u, v):
    return {"prefix": lambda: v.startswith(u), "suffix": lambda: v.endswith(u),
            "infix": lambda: u in factors(v), "subword": lambda: u in subwords(v)}[rel]()


def brute_invariants(elems, rel):
    le = lambda a, b: oracle_leq(rel, a, b)  # noqa: E731
    n = len(elems)
    height = max((k for k in range(n + 1) for c in itertools.combinations(elems, k)
                  if all(le(a, b) or le(b, a) for a, b in itertools.combinations(c, 2))), default=0)
    width = max((k for k in range(n + 1) for c in itertools.combinations(elems, k)
                 if all(not le(a, b) and not le(b, a) for a, b in itertools.combinations(c, 2))), default=0)

    def longest_bad(seq):
        best = len(seq)
        for e in elems:
            if e not in seq and not any(le(s, e) for s in seq):
                best = max(best, longest_bad(seq + [e]))
        return best

    return height, width, longest_bad([])


def test_compare_examples():
    assert compare("infix", "ba", "abab") == "lt"
    assert compare("prefix", "ab", "ba") == "incomparable"
    assert compare("infix", "aabbaa", "aaabbbaaa") == "incomparable"
    assert compare("subword", "aba", "aba") == "eq"


@given(st.sampled_from(RELS), words, words)
def test_leq_matches_oracle(rel, u, v):
    assert leq(rel, u, v) == oracle_leq(rel, u, v)
    c = compare(rel, u, v)
    assert c == {(True, True): "eq", (True, False): "lt", (False, True): "gt",
                 (False, False): "incomparable"}[(oracle_leq(rel, u, v), oracle_leq(rel, v, u))]


@given(st.sampled_from(RELS), st.lists(words, max_size=6))
def test_relation_is_partial_order(rel, ws):
    m = FinitePoset(tuple(ws), rel).matrix
    n = len(m)
    for i in range(n):
        assert m[i][i]
        for j in range(n):
            if i != j:
                assert not (m[i][j] and m[j][i])
            for k in range(n):
                if m[i][j] and m[j][k]:
                    assert m[i][k]


def test_poset_examples():
    inv = poset_invariants(FinitePoset(("", "a", "aa"), "prefix"))
    assert (inv.height, inv.width, inv.mot) == (3, 1, 3)
    inv = poset_invariants(FinitePoset(("ab", "ba"), "infix"))
    assert (inv.height, inv.width, inv.mot) == (1, 2, 2)
    inv = poset_invariants(FinitePoset(("a", "b", "ab"), "subword"))
    assert (inv.height, inv.width, inv.mot) == (2, 2, 3)


@given(st.sampled_from(RELS), st.lists(words, max_size=7, unique=True))
def test_poset_invariants_match_brute_force(rel, ws):
    inv = poset_invariants(FinitePoset(tuple(ws), rel))
    assert (inv.height, inv.width, inv.mot) == brute_invariants(ws, rel)


def test_mot_equals_cardinality_random_posets():
    rng = random.Random(7)
    for _ in range(50):
        ws = list({"".join(rng.choice("ab") for _ in range(rng.randint(0, 6))) for _ in range(rng.randint(1, 20))})
        rel = rng.choice(RELS)
        p = FinitePoset(tuple(ws), rel)
        seq = bad_sequence(p)
        assert not any(leq(rel, seq[i], seq[j]) for i in range(len(seq)) for j in range(i + 1, len(seq)))
        assert poset_invariants(p).mot == len(ws)


def test_mine_antichain_examples():
    got = mine_antichain(iter_words(regex_nfa("a*b", "ab")), "prefix", 5)
    assert len(got) == 5 and is_antichain("prefix", got)
    assert all(w.endswith("b") and set(w[:-1]) <= {"a"} for w in got)
    got = mine_antichain(iter_words(regex_nfa("a*b*a*", "ab")), "infix", 4)
    assert len(got) == 4 and is_antichain("infix", got)
    with pytest.raises(AntichainSearchExhausted) as e:
        mine_antichain(iter_words(regex_nfa("a*", "a")), "prefix", 2, budget=500)
    assert e.value.reason == "budget"
    with pytest.raises(AntichainSearchExhausted) as e:
        mine_antichain(iter(["", "a", "aa"]), "prefix", 2)
    assert e.value.reason == "finite" and len(e.value.found) == 1


@given(st.sampled_from(RELS), st.lists(words, max_size=30, unique=True), st.integers(2, 4))
def test_mine_antichain_sound(rel, ws, target):
    ws.sort(key=lambda w: (len(w), w))
    try:
        got = mine_antichain(iter(ws), rel, target)
    except AntichainSearchExhausted as e:
        got = e.found
        assert len(got) < target
    else:
        assert len(got) >= target
    assert set(got) <= set(ws) and is_antichain(rel, got)


def test_ordinal_examples():
    assert W.hessenberg(W) == OrdinalExpr.omega(2)
    assert OrdinalExpr.omega(2).hessenberg(W) == OrdinalExpr.omega(3)
    assert ordinal_arith("compare", parse_ordinal("w*2 + 1"), parse_ordinal("w^2")) == "lt"
    assert str(parse_ordinal("w^3*2 + w + 4")) == "w^3*2 + w + 4"
    assert str(OrdinalExpr()) == "0"
    with pytest.raises(OrdinalOverflow):
        OrdinalExpr.omega(2).hessenberg(OrdinalExpr.omega(2))
    with pytest.raises(ValueError):
        parse_ordinal("w^5")


ords = st.builds(OrdinalExpr, *[st.integers(0, 3)] * 4)


@given(ords, ords)
def test_ordinal_laws(a, b):
    assert a.natural_sum(b) == b.natural_sum(a)
    assert parse_ordinal(str(a)) == a
    assert (a < b) == (ordinal_arith("compare", a, b) == "lt")
    try:
        assert a.hessenberg(b) == b.hessenberg(a)
    except OrdinalOverflow:
        pass
