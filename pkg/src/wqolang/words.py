"""Periods, primitive roots, Lyndon words and the period-chain languages Inf(x)."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Iterator

from .automata import Dfa, Nfa, determinize_trim, make_alphabet


def border_table(w: str) -> list[int]:
    """``b[i]`` is the length of the longest proper border of ``w[:i+1]``."""
    b = [0] * len(w)
    k = 0
    for i in range(1, len(w)):
        while k and w[i] != w[k]:
            k = b[k - 1]
        if w[i] == w[k]:
            k += 1
        b[i] = k
    return b


def minimal_period(w: str) -> int:
    if not w:
        raise ValueError("the empty word has no period")
    return len(w) - border_table(w)[-1]


def primitive_root(w: str) -> str:
    if not w:
        raise ValueError("the empty word has no primitive root")
    p = minimal_period(w)
    return w[:p] if len(w) % p == 0 else w


def is_primitive(w: str) -> bool:
    return primitive_root(w) == w


def least_rotation(w: str) -> str:
    if not w:
        return w
    return min(w[i:] + w[:i] for i in range(len(w)))


def lyndon_root(x: str) -> str:
    """Canonical period: least rotation of the primitive root."""
    return least_rotation(primitive_root(x))


def lyndon_words(alphabet, max_len: int) -> Iterator[str]:
    """Lyndon words of length 1..max_len in lexicographic order (Duval)."""
    alphabet = make_alphabet(alphabet)
    if max_len < 1:
        return
    k = len(alphabet)
    w = [-1]
    while w:
        w[-1] += 1
        yield "".join(alphabet[i] for i in w)
        m = len(w)
        while len(w) < max_len:
            w.append(w[len(w) - m])
        while w and w[-1] == k - 1:
            w.pop()


def is_infix(u: str, v: str) -> bool:
    return u in v


def factors(w: str, max_len: int | None = None) -> set[str]:
    top = len(w) if max_len is None else min(max_len, len(w))
    return {w[i : i + n] for n in range(top + 1) for i in range(len(w) - n + 1)}


@dataclass(frozen=True)
class PeriodChain:
    """Inf(x): every infix of some power of ``period``.

    ``components`` are the pairs (u, v), u a suffix and v a prefix of the
    period, with Inf(x) = short_factors ∪ ⋃ u x* v.  ``short_factors`` are
    the factors of x lying strictly inside one copy of x.
    """

    period: str
    alphabet: tuple[str, ...]

    @cached_property
    def components(self) -> tuple[tuple[str, str], ...]:
        x = self.period
        return tuple((x[i:], x[:j]) for i in range(len(x) + 1) for j in range(len(x) + 1))

    @cached_property
    def short_factors(self) -> frozenset:
        x = self.period
        split = {u + v for u, v in self.components}
        return frozenset(f for f in factors(x) if f not in split)

    @cached_property
    def nfa(self) -> Nfa:
        """The cyclic automaton: states are positions mod |x|, all initial
        and accepting, state i reads x[i]."""
        x = self.period
        n = len(x)
        trans = {(i, x[i], (i + 1) % n) for i in range(n)}
        return Nfa(n, self.alphabet, trans, set(range(n)), set(range(n)))

    @cached_property
    def dfa(self) -> Dfa:
        return determinize_trim(self.nfa)

    def to_nfa(self) -> Nfa:
        return self.nfa

    def accepts(self, w: str) -> bool:
        x = self.period
        if not w:
            return True
        reps = len(w) // len(x) + 2
        return w in x * reps

    __contains__ = accepts

    def component_of(self, w: str) -> tuple[str, int, str] | None:
        """Return (u, m, v) with w = u x^m v, or None for a short factor or
        a word outside Inf(x)."""
        x = self.period
        for u, v in self.components:
            rest = len(w) - len(u) - len(v)
            if rest < 0 or rest % len(x):
                continue
            m = rest // len(x)
            if w == u + x * m + v:
                return u, m, v
        return None


def inf_period_chain(x: str, alphabet=None, canonical: bool = True) -> PeriodChain:
    if not x:
        raise ValueError("the period must be non-empty")
    alphabet = make_alphabet(alphabet if alphabet is not None else sorted(set(x)))
    return PeriodChain(lyndon_root(x) if canonical else x, alphabet)


def period_inheritance_check(u: str, v: str) -> str:
    """Check that a long enough infix inherits the period of its host word.

    Returns ``confirmed``, ``violation`` or ``threshold-not-met``.
    """
    if not u or not v:
        raise ValueError("words must be non-empty")
    if u not in v:
        raise ValueError(f"{u!r} is not an infix of {v!r}")
    p, q = minimal_period(u), minimal_period(v)
    if len(u) < p + q - gcd(p, q):
        return "threshold-not-met"
    return "confirmed" if p == q else "violation"


def common_power_root(u: str, k: int, v: str, l: int) -> tuple[str, int] | None:
    """For u^k an infix of v^l, find a short w and p with v^l an infix of w^p.

    Returns None when u^k is too short for the Fine-Wilf argument.
    """
    if not u or not v or k < 1 or l < 1:
        raise ValueError("words must be non-empty and exponents positive")
    big = v * l
    if u * k not in big:
        raise ValueError(f"({u})^{k} is not an infix of ({v})^{l}")
    ru, rv = primitive_root(u), primitive_root(v)
    if k * len(u) < len(ru) + len(rv) - gcd(len(ru), len(rv)):
        return None
    w = rv
    p = l * len(v) // len(w)
    return w, p
