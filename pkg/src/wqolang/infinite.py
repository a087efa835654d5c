"""Infinite words: Thue-Morse, recurrence profiles, automatic sequences.

Everything here is empirical: a scan of a finite prefix can support or
refute uniform recurrence, never prove it.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt
from typing import Callable

import numpy as np

from . import automata as A
from .orders import compare

DEFAULT_HORIZON = 1 << 16
DEFAULT_K_MAX = 8
DEFAULT_N0_CAP = 64
REFUTE_SIZE = 8


@dataclass(frozen=True)
class SequenceOracle:
    letter_at: Callable[[int], str]
    tag: str = "sequence"
    fast_prefix: Callable[[int], str] | None = None

    def prefix(self, n: int, start: int = 0) -> str:
        if self.fast_prefix is not None:
            return self.fast_prefix(start + n)[start:]
        return "".join(self.letter_at(i) for i in range(start, start + n))

    def shifted(self, n0: int) -> "SequenceOracle":
        if n0 == 0:
            return self
        fp = None if self.fast_prefix is None else (lambda n, f=self.fast_prefix: f(n + n0)[n0:])
        return SequenceOracle(lambda i: self.letter_at(i + n0), f"{self.tag}[{n0}:]", fp)


@dataclass(frozen=True)
class BiSequenceOracle:
    letter_at: Callable[[int], str]
    tag: str = "bi-sequence"

    def positive(self) -> SequenceOracle:
        return SequenceOracle(self.letter_at, self.tag + "+")

    def negative(self) -> SequenceOracle:
        return SequenceOracle(lambda i: self.letter_at(-i), self.tag + "-")


# ---------------------------------------------------------------- generators


def thue_morse(i: int) -> str:
    return "1" if i.bit_count() & 1 else "0"


def thue_morse_prefix(n: int) -> str:
    w = "0"
    while len(w) < n:
        w = w + w.translate(str.maketrans("01", "10"))
    return w[:n]


THUE_MORSE = SequenceOracle(thue_morse, "thue-morse", thue_morse_prefix)


def _block_b(i: int) -> bool:
    # b sits at positions k(k+3)/2 - 1, k >= 1
    t = 2 * (i + 1)
    k = (isqrt(4 * t + 9) - 3) // 2
    return k >= 1 and k * (k + 3) == t


def block_letter(i: int) -> str:
    return "b" if _block_b(i) else "a"


def block_word_prefix(n: int) -> str:
    out = []
    k = 1
    while len(out) < n:
        out.extend("a" * k + "b")
        k += 1
    return "".join(out[:n])


BLOCK_WORD = SequenceOracle(block_letter, "block", block_word_prefix)


def prefixed(word: str, s: SequenceOracle) -> SequenceOracle:
    """The finite word followed by the sequence."""
    n = len(word)
    fp = None if s.fast_prefix is None else (lambda m: (word + s.fast_prefix(max(m - n, 0)))[:m])
    return SequenceOracle(lambda i: word[i] if i < n else s.letter_at(i - n), f"{word}.{s.tag}", fp)


# ---------------------------------------------------------------- cubes


def has_cube(w: str) -> tuple[int, str] | None:
    """Leftmost occurrence of a cube uuu, shortest u first at that position."""
    n = len(w)
    if n < 3:
        return None
    a = np.frombuffer(w.encode("utf-32-le"), dtype=np.uint32)
    best = None
    for p in range(1, n // 3 + 1):
        eq = (a[:-p] == a[p:]).astype(np.int32)
        need = 2 * p
        if len(eq) < need:
            break
        c = np.concatenate(([0], np.cumsum(eq)))
        hits = np.flatnonzero(c[need:] - c[:-need] == need)
        if hits.size:
            pos = int(hits[0])
            if best is None or pos < best[0]:
                best = (pos, w[pos : pos + p])
    return best


# ---------------------------------------------------------------- recurrence


@dataclass(frozen=True)
class RecurrenceEntry:
    k: int
    factor_count: int
    max_gap: int
    window_bound: int | None  # None when some factor is unbounded at the horizon
    flagged: tuple[str, ...] = ()


@dataclass(frozen=True)
class RecurrenceProfile:
    k_max: int
    horizon: int
    entries: tuple[RecurrenceEntry, ...]
    first_occurrences: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def all_finite(self) -> bool:
        return len(self.entries) == self.k_max and all(e.window_bound is not None for e in self.entries)

    def flagged(self) -> list[str]:
        return [f for e in self.entries for f in e.flagged]


def _scan(w: str, k: int):
    """Per factor: (record gap, position where the record gap ends, last
    occurrence before that gap).  Gaps include the lead-in from the start
    (first + 1) and the tail up to the end of the scan."""
    n = len(w)
    last: dict[str, int] = {}
    rec: dict[str, tuple[int, int, int]] = {}
    for i in range(n - k + 1):
        f = w[i : i + k]
        prev = last.get(f)
        gap = i + 1 if prev is None else i - prev
        r = rec.get(f)
        if r is None or gap > r[0]:
            rec[f] = (gap, i, -1 if prev is None else prev)
        last[f] = i
    tail_end = n - k + 1
    for f, i in last.items():
        gap = tail_end - i
        if gap > rec[f][0]:
            rec[f] = (gap, tail_end, i)
    return rec


def recurrence_profile(s: SequenceOracle | str, k_max: int = DEFAULT_K_MAX, horizon: int = DEFAULT_HORIZON,
                       stop_at_flag: bool = False) -> RecurrenceProfile:
    if k_max > horizon:
        raise ValueError("k_max must not exceed the horizon")
    w = s if isinstance(s, str) else s.prefix(horizon)
    horizon = len(w)
    half = horizon // 2
    entries = []
    firsts = {}
    for k in range(1, k_max + 1):
        rec = _scan(w, k)
        if not rec:
            break
        max_gap = max(r[0] for r in rec.values())
        flagged = tuple(sorted(f for f, r in rec.items() if r[1] > half and r[0] > 1))
        for f in flagged:
            firsts[f] = rec[f][2]
        bound = None if flagged else max_gap + k - 1
        entries.append(RecurrenceEntry(k, len(rec), max_gap, bound, flagged))
        if flagged and stop_at_flag:
            break
    return RecurrenceProfile(k_max, horizon, tuple(entries), firsts)


def verify_windows(w: str, k: int, window: int) -> bool:
    """Every length-k factor of ``w`` occurs in every length-``window`` window."""
    n = len(w)
    if window > n:
        return True
    codes: dict[str, int] = {}
    ids = [codes.setdefault(w[i : i + k], len(codes)) for i in range(n - k + 1)]
    span = window - k + 1  # factor starts inside one window
    counts = [0] * len(codes)
    present = 0
    for i in range(span):
        if counts[ids[i]] == 0:
            present += 1
        counts[ids[i]] += 1
    if present != len(codes):
        return False
    for s in range(1, n - window + 1):
        out, inn = ids[s - 1], ids[s + span - 1]
        counts[out] -= 1
        if counts[out] == 0:
            present -= 1
        if counts[inn] == 0:
            present += 1
        counts[inn] += 1
        if present != len(codes):
            return False
    return True


@dataclass(frozen=True)
class UrVerdict:
    status: str  # "ur-consistent", "refuted" or "inconclusive"
    n0: int | None = None
    profile: RecurrenceProfile | None = None
    antichain: tuple[str, ...] = ()

    def to_json(self) -> dict:
        out: dict = {"status": self.status}
        if self.n0 is not None:
            out["n0"] = self.n0
        if self.profile is not None:
            out["window_bounds"] = [e.window_bound for e in self.profile.entries]
        if self.antichain:
            out["antichain"] = list(self.antichain)
        return out


def return_words(w: str, u: str) -> list[str]:
    """Complete return words u...u of ``u`` in ``w``, in order of first appearance."""
    occ = []
    i = w.find(u)
    while i != -1:
        occ.append(i)
        i = w.find(u, i + 1)
    seen = dict.fromkeys(w[a : b + len(u)] for a, b in zip(occ, occ[1:]))
    return list(seen)


def _mine_factor_antichain(w: str, candidates: list[str], size: int) -> list[str] | None:
    for u in candidates:
        chosen: list[str] = []
        for r in return_words(w, u):
            if all(compare("infix", r, c) == "incomparable" for c in chosen):
                chosen.append(r)
                if len(chosen) >= size:
                    return chosen
    return None


def empirical_ultimately_ur(s: SequenceOracle, n0_cap: int = DEFAULT_N0_CAP, k_max: int = DEFAULT_K_MAX,
                            horizon: int = DEFAULT_HORIZON, size: int = REFUTE_SIZE) -> UrVerdict:
    """Look for a shift n0 <= n0_cap after which the profile is all-finite.

    A shift only helps when it skips every early occurrence of a flagged
    factor, so the next candidate jumps past the last occurrence that
    precedes the record gap.
    """
    n0 = 0
    flagged_seen: list[str] = []
    while n0 <= n0_cap:
        prof = recurrence_profile(s.shifted(n0), k_max, horizon, stop_at_flag=True)
        if prof.all_finite:
            return UrVerdict("ur-consistent", n0, prof)
        flagged = prof.flagged()
        flagged_seen.extend(f for f in flagged if f not in flagged_seen)
        jump = max(prof.first_occurrences[f] for f in flagged) + 1
        n0 += max(jump, 1)
    w = s.prefix(horizon)
    cands = sorted(flagged_seen, key=A.length_lex_key)
    fam = _mine_factor_antichain(w, cands, size)
    if fam is not None:
        return UrVerdict("refuted", None, None, tuple(fam))
    return UrVerdict("inconclusive")


def bi_split_check(s: BiSequenceOracle, **caps) -> tuple[UrVerdict, UrVerdict, bool]:
    plus = empirical_ultimately_ur(s.positive(), **caps)
    minus = empirical_ultimately_ur(s.negative(), **caps)
    both = plus.status == "ur-consistent" and minus.status == "ur-consistent"
    return plus, minus, both


# ---------------------------------------------------------------- automatic sequences


class AutomaticError(ValueError):
    pass


def to_digits(i: int, base: int) -> str:
    if i < 0:
        raise ValueError("indices are natural numbers")
    if i == 0:
        return "0"
    out = []
    while i:
        i, r = divmod(i, base)
        out.append(str(r))
    return "".join(reversed(out))


@dataclass(frozen=True)
class AutomaticSequence:
    """Digit automaton read most-significant digit first; the output of the
    final state is the letter."""

    base: int
    dfa: A.Dfa
    outputs: dict

    def __post_init__(self):
        if not 2 <= self.base <= 10:
            raise AutomaticError("base must lie between 2 and 10")
        digits = tuple(str(d) for d in range(self.base))
        if self.dfa.alphabet != digits:
            raise AutomaticError(f"digit alphabet must be {digits}, got {self.dfa.alphabet}")
        if self.dfa.initial is None:
            raise AutomaticError("automaton has no initial state")
        for q in range(self.dfa.n):
            if q not in self.outputs:
                raise AutomaticError(f"state q{q} has no output")
            for d in digits:
                if (q, d) not in self.dfa.delta:
                    raise AutomaticError(f"state q{q} has no transition on digit {d}")
        if not self._leading_zero_invariant():
            raise AutomaticError("output depends on leading zeros")

    def _leading_zero_invariant(self) -> bool:
        d = self.dfa
        s0 = d.initial
        s1 = d.step(s0, "0")
        start = [(d.step(s0, a), d.step(s1, a)) for a in d.alphabet]
        seen = set(start)
        stack = list(start)
        while stack:
            p, q = stack.pop()
            if self.outputs[p] != self.outputs[q]:
                return False
            for a in d.alphabet:
                nxt = (d.step(p, a), d.step(q, a))
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        return True

    def eval_digits(self, digits: str) -> str:
        return self.outputs[self.dfa.run(digits)]

    def __call__(self, i: int) -> str:
        return self.eval_digits(to_digits(i, self.base))

    def oracle(self, tag: str = "automatic") -> SequenceOracle:
        return SequenceOracle(self, tag)


def automatic_eval(a: AutomaticSequence, i: int) -> str:
    return a(i)


def thue_morse_automaton() -> AutomaticSequence:
    d = A.Dfa(2, ("0", "1"), {(0, "0"): 0, (0, "1"): 1, (1, "0"): 1, (1, "1"): 0}, 0, {0, 1})
    return AutomaticSequence(2, d, {0: "0", 1: "1"})


def parse_automatic(text: str) -> AutomaticSequence:
    base = None
    outputs: dict[str, str] = {}
    rest = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        key, sep, val = line.partition(":")
        if sep and key.strip() == "base":
            try:
                base = int(val)
            except ValueError:
                raise AutomaticError(f"line {lineno}: bad base {val.strip()!r}") from None
        elif sep and key.strip() == "output":
            parts = val.split()
            if len(parts) != 2:
                raise AutomaticError(f"line {lineno}: expected 'output: state symbol'")
            outputs[parts[0]] = parts[1]
        else:
            rest.append(raw)
    if base is None:
        raise AutomaticError("missing 'base:' line")
    nfa = A.parse_automaton("\n".join(rest))
    names = _state_names("\n".join(rest))
    if len(nfa.initial) != 1 or nfa.has_eps:
        raise AutomaticError("digit automaton must be deterministic with one initial state")
    delta = {}
    for p, a, q in nfa.transitions:
        if (p, a) in delta:
            raise AutomaticError("digit automaton must be deterministic")
        delta[(p, a)] = q
    unknown = set(outputs) - set(names)
    if unknown:
        raise AutomaticError(f"outputs for undeclared states {sorted(unknown)}")
    index = {nm: i for i, nm in enumerate(names)}
    dfa = A.Dfa(nfa.n, nfa.alphabet, delta, next(iter(nfa.initial)), nfa.accepting)
    return AutomaticSequence(base, dfa, {index[k]: v for k, v in outputs.items()})


def _state_names(text: str) -> list[str]:
    for raw in text.splitlines():
        key, sep, val = raw.split("#", 1)[0].partition(":")
        if sep and key.strip() == "states":
            return val.split()
    return []
