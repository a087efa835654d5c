import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import all_words, lang
from wqolang import automata as A
from wqolang.orders import compare
from wqolang.words import (
    border_table, common_power_root, inf_period_chain, is_primitive, least_rotation, lyndon_words,
    minimal_period, period_inheritance_check, primitive_root,
)

AB = ("a", "b")
ab_words = st.text(alphabet="ab", min_size=1, max_size=12)


def naive_period(w: str) -> int:
    return next(p for p in range(1, len(w) + 1) if all(w[i] == w[i + p] for i in range(len(w) - p)))


def brute_inf(x: str, n: int) -> set[str]:
    host = x * (n // len(x) + 2)
    return {host[i:i + k] for k in range(n + 1) for i in range(len(host) - k + 1)}


def test_minimal_period_examples():
    assert minimal_period("abab") == 2
    assert minimal_period("aaa") == 1
    assert minimal_period("abcab") == 3
    assert border_table("abcab")[-1] == 2
    with pytest.raises(ValueError):
        minimal_period("")


def test_minimal_period_exhaustive():
    for w in all_words(AB, 14):
        if w:
            assert minimal_period(w) == naive_period(w), w


def test_roots():
    assert primitive_root("abab") == "ab"
    assert is_primitive("aab") and not is_primitive("aa")
    assert least_rotation("baba") == "abab"
    assert least_rotation("bba") == "abb"
    assert list(lyndon_words(AB, 3)) == ["a", "aab", "ab", "abb", "b"]


def test_inf_examples():
    ch = inf_period_chain("ab")
    for w in ("ba", "bab", "abab"):
        assert ch.accepts(w)
    assert not ch.accepts("aa")
    assert A.equivalent(inf_period_chain("a").nfa, A.star(A.finite_language(["a"], ["a"])))
    assert lang(ch.nfa, 10) == brute_inf("ab", 10)
    assert ch.nfa.n == 2 and ch.nfa.initial == ch.nfa.accepting == {0, 1}
    with pytest.raises(ValueError):
        inf_period_chain("")


def test_inf_matches_factors_exhaustive():
    for x in all_words(AB, 4):
        if not x:
            continue
        ch = inf_period_chain(x, AB, canonical=False)
        assert lang(ch.nfa, 8) == brute_inf(x, 8), x


def test_components_cover_exactly():
    for x in ("ab", "aab", "abb", "a"):
        ch = inf_period_chain(x, AB)
        covered = set(ch.short_factors)
        for u, v in ch.components:
            covered |= {u + x * m + v for m in range(11) if len(u + x * m + v) <= 10}
        assert {w for w in covered if len(w) <= 10} == brute_inf(x, 10)


@pytest.mark.parametrize("rel", ["prefix", "suffix", "infix"])
def test_chain_property(rel):
    for x in all_words(AB, 3):
        if not x:
            continue
        ch = inf_period_chain(x, AB, canonical=False)
        for u, v in ch.components:
            for k in range(1, 7):
                for l in range(k):
                    assert compare(rel, u + x * l + v, u + x * k + v) == "lt"


@given(st.text(alphabet="ab", min_size=1, max_size=4), st.integers(0, 3), st.integers(1, 3))
def test_inf_rotation_and_power_invariance(x, r, k):
    r %= len(x)
    base = inf_period_chain(x, AB, canonical=False).nfa
    assert A.equivalent(base, inf_period_chain(x[r:] + x[:r], AB, canonical=False).nfa)
    assert A.equivalent(base, inf_period_chain(x * k, AB, canonical=False).nfa)
    assert inf_period_chain(x, AB).period == inf_period_chain(x[r:] + x[:r], AB).period


def test_period_inheritance_examples():
    assert period_inheritance_check("abab", "ababab") == "confirmed"
    assert period_inheritance_check("aaa", "aaab") == "threshold-not-met"
    assert period_inheritance_check("abba", "abba") == "confirmed"
    with pytest.raises(ValueError):
        period_inheritance_check("bb", "abab")


def test_period_inheritance_exhaustive():
    for v in all_words(AB, 12):
        for u in {v[i:j] for i in range(len(v)) for j in range(i + 1, len(v) + 1)}:
            assert period_inheritance_check(u, v) != "violation", (u, v)


def test_common_power_root_examples():
    w, p = common_power_root("ab", 4, "ba", 5)
    assert len(w) == 2 and w in "abab" and ("ab" * 4) in w * p
    assert common_power_root("aa", 3, "a", 7) == ("a", 7)
    assert common_power_root("abb", 2, "abb", 3) == ("abb", 3)
    assert common_power_root("ab", 1, "aab", 1) is None
    with pytest.raises(ValueError):
        common_power_root("ab", 3, "ab", 2)


@given(ab_words, st.integers(1, 4), st.integers(1, 5))
def test_common_power_root_property(v, k, l):
    big = v * l
    u = big[: max(1, len(big) // 2)]
    if u * k not in big:
        return
    got = common_power_root(u, k, v, l)
    if got is not None:
        w, p = got
        assert len(w) <= min(len(u), len(v))
        assert big in w * p and u * k in w * p
