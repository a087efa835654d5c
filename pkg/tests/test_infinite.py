import pytest
from hypothesis import given
from hypothesis import strategies as st

from wqolang import automata as A
from wqolang import infinite as I
from wqolang.orders import is_antichain

AUTOMATON_TM = """\
base: 2
alphabet: 0 1
states: even odd
initial: even
accepting: even odd
even 0 even
even 1 odd
odd 0 odd
odd 1 even
output: even 0
output: odd 1
"""


def naive_block(n: int) -> str:
    out, i = "", 1
    while len(out) < n:
        out += "a" * i + "b"
        i += 1
    return out[:n]


def naive_cube(w: str):
    for i in range(len(w)):
        for p in range(1, (len(w) - i) // 3 + 1):
            if w[i:i + p] == w[i + p:i + 2 * p] == w[i + 2 * p:i + 3 * p]:
                return i, w[i:i + p]
    return None


def naive_window(w: str, k: int) -> int:
    facs = {w[i:i + k] for i in range(len(w) - k + 1)}
    for size in range(k, len(w) + 1):
        if all({w[s + i:s + i + k] for i in range(size - k + 1)} == facs for s in range(len(w) - size + 1)):
            return size
    raise AssertionError


def test_thue_morse_examples():
    assert I.thue_morse_prefix(8) == "01101001"
    assert I.thue_morse(0) == "0" and I.thue_morse(3) == "0"
    assert all(I.thue_morse(i) == str(bin(i).count("1") % 2) for i in range(5000))
    assert I.thue_morse_prefix(5000) == "".join(I.thue_morse(i) for i in range(5000))


def test_block_word_examples():
    assert I.block_word_prefix(6) == "abaaba"
    assert I.block_word_prefix(0) == ""
    w = I.block_word_prefix(10)
    assert "baab" in w and "baaab" in w and "bab" not in I.block_word_prefix(5000)
    assert I.block_word_prefix(3000) == naive_block(3000)
    assert "".join(I.block_letter(i) for i in range(3000)) == naive_block(3000)


def test_cube_examples():
    assert I.has_cube("aaab") == (0, "a")
    assert I.has_cube("abab") is None
    assert I.has_cube(I.thue_morse_prefix(4096)) is None


@given(st.text(alphabet="ab", max_size=40))
def test_cube_matches_naive(w):
    assert I.has_cube(w) == naive_cube(w)


@given(st.text(alphabet="abc", min_size=1, max_size=30), st.integers(1, 4))
def test_window_bound_is_exact(w, k):
    if k > len(w):
        return
    prof = I.recurrence_profile(w, k, len(w))
    e = prof.entries[k - 1]
    assert e.max_gap + k - 1 == naive_window(w, k)
    assert I.verify_windows(w, k, e.max_gap + k - 1)


def test_recurrence_thue_morse():
    prof = I.recurrence_profile(I.THUE_MORSE, 8, 1 << 16)
    assert prof.all_finite
    bounds = [e.window_bound for e in prof.entries]
    assert bounds == sorted(bounds) and all(b >= e.k for b, e in zip(bounds, prof.entries))
    w = I.thue_morse_prefix(1 << 16)
    for e in prof.entries:
        assert I.verify_windows(w, e.k, e.window_bound)


def test_recurrence_block_and_constant():
    prof = I.recurrence_profile(I.BLOCK_WORD, 3, 10_000)
    assert not prof.all_finite
    assert set(prof.entries[2].flagged) == {"aab", "aba", "baa"}
    const = I.SequenceOracle(lambda i: "a", "const")
    assert [e.window_bound for e in I.recurrence_profile(const, 5, 1000).entries] == [1, 2, 3, 4, 5]


def test_ultimately_ur():
    v = I.empirical_ultimately_ur(I.THUE_MORSE)
    assert v.status == "ur-consistent" and v.n0 == 0
    v = I.empirical_ultimately_ur(I.prefixed("c", I.THUE_MORSE))
    assert v.status == "ur-consistent" and v.n0 > 0
    v = I.empirical_ultimately_ur(I.BLOCK_WORD)
    assert v.status == "refuted"
    w = I.block_word_prefix(1 << 16)
    assert len(v.antichain) == 8 and is_antichain("infix", v.antichain)
    assert all(f in w for f in v.antichain)


def test_bi_split():
    tm = I.BiSequenceOracle(lambda i: I.thue_morse(abs(i)))
    plus, minus, both = I.bi_split_check(tm)
    assert (plus.status, minus.status, both) == ("ur-consistent", "ur-consistent", True)
    block = I.BiSequenceOracle(lambda i: I.block_letter(abs(i)))
    plus, minus, both = I.bi_split_check(block)
    assert (plus.status, minus.status, both) == ("refuted", "refuted", False)
    mixed = I.BiSequenceOracle(lambda i: I.thue_morse(i) if i >= 0 else "a")
    assert I.bi_split_check(mixed)[2]


def test_automatic():
    tm = I.thue_morse_automaton()
    assert all(I.automatic_eval(tm, i) == I.thue_morse(i) for i in range(1 << 14))
    assert I.automatic_eval(tm, 0) == tm.outputs[tm.dfa.step(tm.dfa.initial, "0")]
    assert tm.eval_digits("011") == tm.eval_digits("11")
    parsed = I.parse_automatic(AUTOMATON_TM)
    assert all(parsed(i) == I.thue_morse(i) for i in range(2000))
    bad = A.Dfa(2, ("0", "1"), {(0, "0"): 1, (0, "1"): 0, (1, "0"): 1, (1, "1"): 1}, 0, {0, 1})
    with pytest.raises(I.AutomaticError):
        I.AutomaticSequence(2, bad, {0: "x", 1: "y"})
    with pytest.raises(I.AutomaticError):
        I.parse_automatic(AUTOMATON_TM.replace("base: 2\n", ""))
    with pytest.raises(I.AutomaticError):
        I.AutomaticSequence(2, A.Dfa(1, ("0", "1"), {(0, "0"): 0}, 0, {0}), {0: "a"})
