"""Word orders, finite posets, antichain mining and small ordinal arithmetic."""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import cached_property
from itertools import islice
from typing import Iterable, Sequence

DEFAULT_POSET_CAP = 64


class Order(str, enum.Enum):
    PREFIX = "prefix"
    SUFFIX = "suffix"
    INFIX = "infix"
    SUBWORD = "subword"


def leq(rel, u: str, v: str) -> bool:
    rel = Order(rel)
    if rel is Order.PREFIX:
        return v.startswith(u)
    if rel is Order.SUFFIX:
        return v.endswith(u)
    if rel is Order.INFIX:
        return u in v
    it = iter(v)
    return all(c in it for c in u)


def compare(rel, u: str, v: str) -> str:
    """One of ``lt``, ``gt``, ``eq``, ``incomparable``."""
    if u == v:
        return "eq"
    if leq(rel, u, v):
        return "lt"
    if leq(rel, v, u):
        return "gt"
    return "incomparable"


def comparable(rel, u: str, v: str) -> bool:
    return compare(rel, u, v) != "incomparable"


def is_antichain(rel, words: Sequence[str]) -> bool:
    return all(
        not comparable(rel, words[i], words[j])
        for i in range(len(words))
        for j in range(i + 1, len(words))
    )


class PosetTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class FinitePoset:
    elements: tuple[str, ...]
    relation: Order

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(dict.fromkeys(self.elements)))
        object.__setattr__(self, "relation", Order(self.relation))

    @cached_property
    def matrix(self) -> tuple[tuple[bool, ...], ...]:
        """``matrix[i][j]`` iff elements[i] ≤ elements[j]."""
        e = self.elements
        return tuple(tuple(leq(self.relation, a, b) for b in e) for a in e)


@dataclass(frozen=True)
class PosetInvariants:
    height: int
    width: int
    mot: int


def _height(p: FinitePoset) -> int:
    order = sorted(range(len(p.elements)), key=lambda i: len(p.elements[i]))
    best = {}
    for i in order:
        best[i] = 1 + max((best[j] for j in best if j != i and p.matrix[j][i]), default=0)
    return max(best.values(), default=0)


def _width(p: FinitePoset) -> int:
    """Maximum antichain by branch and bound over the incomparability graph."""
    n = len(p.elements)
    m = p.matrix
    inc = [frozenset(j for j in range(n) if j != i and not m[i][j] and not m[j][i]) for i in range(n)]
    best = 0

    def grow(size: int, cand: frozenset):
        nonlocal best
        if not cand:
            best = max(best, size)
            return
        if size + len(cand) <= best:
            return
        i = min(cand)
        grow(size + 1, cand & inc[i])
        grow(size, cand - {i})

    grow(0, frozenset(range(n)))
    return best


def bad_sequence(p: FinitePoset) -> list[str]:
    """A linearization listing larger elements first, so no earlier element
    is below a later one; its length is the maximal order type."""
    n = len(p.elements)
    remaining = set(range(n))
    out = []
    while remaining:
        # a maximal element among the remaining ones
        i = next(i for i in sorted(remaining) if not any(j != i and p.matrix[i][j] for j in remaining))
        out.append(p.elements[i])
        remaining.remove(i)
    return out


def poset_invariants(p: FinitePoset, cap: int = DEFAULT_POSET_CAP) -> PosetInvariants:
    if len(p.elements) > cap:
        raise PosetTooLarge(f"{len(p.elements)} elements exceed the cap of {cap}")
    return PosetInvariants(_height(p), _width(p), len(bad_sequence(p)))


class AntichainSearchExhausted(RuntimeError):
    def __init__(self, reason: str, found: list[str]):
        super().__init__(f"antichain search stopped ({reason}) after finding {len(found)}")
        self.reason = reason  # "budget" or "finite"
        self.found = found


def mine_antichain(words: Iterable[str], rel, target: int, budget: int = 100_000) -> list[str]:
    """Greedy antichain extraction from a length-lex stream.

    Plain first-fit keeps the very first words, which are often comparable
    with everything longer.  So whenever a length is finished we also retry
    the greedy pass starting from a later length, and keep the first attempt
    that reaches ``target``.
    """
    if target < 2:
        raise ValueError("target must be at least 2")
    rel = Order(rel)
    seen: list[str] = []
    starts: dict[int, int] = {}  # length -> index of first word with that length
    examined = 0
    best: list[str] = []

    def greedy(lo: int) -> list[str]:
        nonlocal examined
        chosen: list[str] = []
        for w in islice(seen, lo, None):
            examined += 1
            if all(not comparable(rel, w, c) for c in chosen):
                chosen.append(w)
                if len(chosen) >= target:
                    break
        return chosen

    def attempt() -> list[str] | None:
        nonlocal best
        h = len(seen[-1])
        for lo_len in sorted({0, (h + 1) // 2, h}):
            lo = next((starts[k] for k in sorted(starts) if k >= lo_len), len(seen))
            got = greedy(lo)
            if len(got) > len(best):
                best = got
            if len(got) >= target:
                return got
            if examined > budget:
                raise AntichainSearchExhausted("budget", best)
        return None

    it = iter(words)
    for w in it:
        examined += 1
        if seen and len(w) != len(seen[-1]):
            got = attempt()
            if got:
                return got
        starts.setdefault(len(w), len(seen))
        seen.append(w)
        if examined > budget:
            raise AntichainSearchExhausted("budget", best)
    if seen:
        got = attempt()
        if got:
            return got
    raise AntichainSearchExhausted("finite", best)


# ---------------------------------------------------------------- ordinals below ω^4


class OrdinalOverflow(ValueError):
    pass


@dataclass(frozen=True, order=False)
class OrdinalExpr:
    """ω³·c3 + ω²·c2 + ω·c1 + c0 with natural coefficients."""

    c3: int = 0
    c2: int = 0
    c1: int = 0
    c0: int = 0

    def __post_init__(self):
        if min(self.coeffs) < 0:
            raise ValueError("coefficients must be natural numbers")

    @property
    def coeffs(self) -> tuple[int, int, int, int]:
        return (self.c3, self.c2, self.c1, self.c0)

    @classmethod
    def finite(cls, n: int) -> "OrdinalExpr":
        return cls(0, 0, 0, n)

    @classmethod
    def omega(cls, power: int = 1, coeff: int = 1) -> "OrdinalExpr":
        if not 0 <= power <= 3:
            raise OrdinalOverflow(f"ω^{power} is outside the supported fragment")
        c = [0, 0, 0, 0]
        c[3 - power] = coeff
        return cls(*c)

    def cmp(self, other: "OrdinalExpr") -> int:
        return (self.coeffs > other.coeffs) - (self.coeffs < other.coeffs)

    def __lt__(self, other):
        return self.coeffs < other.coeffs

    def __le__(self, other):
        return self.coeffs <= other.coeffs

    def __gt__(self, other):
        return self.coeffs > other.coeffs

    def __ge__(self, other):
        return self.coeffs >= other.coeffs

    def natural_sum(self, other: "OrdinalExpr") -> "OrdinalExpr":
        return OrdinalExpr(*(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def hessenberg(self, other: "OrdinalExpr") -> "OrdinalExpr":
        out = [0] * 7  # index = degree
        for i, a in enumerate(reversed(self.coeffs)):
            for j, b in enumerate(reversed(other.coeffs)):
                out[i + j] += a * b
        if any(out[4:]):
            raise OrdinalOverflow("natural product leaves the ω^4 fragment")
        return OrdinalExpr(out[3], out[2], out[1], out[0])

    def is_finite(self) -> bool:
        return not (self.c3 or self.c2 or self.c1)

    def __str__(self) -> str:
        terms = []
        for power, c in zip((3, 2, 1), self.coeffs[:3]):
            if c:
                base = "w" if power == 1 else f"w^{power}"
                terms.append(base if c == 1 else f"{base}*{c}")
        if self.c0 or not terms:
            terms.append(str(self.c0))
        return " + ".join(terms)


_TERM = re.compile(r"^(?:w(?:\^([0-3]))?(?:\*(\d+))?|(\d+))$")


def parse_ordinal(text: str) -> OrdinalExpr:
    c = [0, 0, 0, 0]
    for raw in text.split("+"):
        term = raw.strip()
        m = _TERM.match(term)
        if not m:
            raise ValueError(f"bad ordinal term {term!r}")
        if m.group(3) is not None:
            c[3] += int(m.group(3))
        else:
            power = int(m.group(1) or 1)
            c[3 - power] += int(m.group(2) or 1)
    return OrdinalExpr(*c)


def ordinal_arith(op: str, a: OrdinalExpr, b: OrdinalExpr):
    if op == "compare":
        return {-1: "lt", 0: "eq", 1: "gt"}[a.cmp(b)]
    if op == "add":
        return a.natural_sum(b)
    if op == "hessenberg":
        return a.hessenberg(b)
    raise ValueError(f"unknown ordinal operation {op!r}")


W = OrdinalExpr.omega()
