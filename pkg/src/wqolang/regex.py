"""Regular expressions: parsing, printing and Thompson compilation.

Grammar (whitespace is ignored)::

    union   := concat ('|' concat)*
    concat  := postfix*
    postfix := atom ('*' | '+' | '?')*
    atom    := symbol | '\\' char | 'eps' | '∅' | '(' union ')'

Empty alternatives are rejected; write ``eps`` for the empty word.
"""
from __future__ import annotations

from dataclasses import dataclass

from .automata import EPS, AlphabetMismatch, Nfa, make_alphabet

SPECIAL = set("|*+?()\\")
EMPTY_SET = "∅"


class RegexSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at offset {position}")
        self.position = position


class Regex:
    __slots__ = ()


@dataclass(frozen=True)
class Empty(Regex):
    pass


@dataclass(frozen=True)
class Eps(Regex):
    pass


@dataclass(frozen=True)
class Sym(Regex):
    symbol: str


@dataclass(frozen=True)
class Concat(Regex):
    left: Regex
    right: Regex


@dataclass(frozen=True)
class Union(Regex):
    left: Regex
    right: Regex


@dataclass(frozen=True)
class Star(Regex):
    inner: Regex


@dataclass(frozen=True)
class Plus(Regex):
    inner: Regex


@dataclass(frozen=True)
class Optional(Regex):
    inner: Regex


class _Parser:
    def __init__(self, text: str, alphabet: tuple[str, ...]):
        self.text = text
        self.pos = 0
        self.alphabet = alphabet

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str | None:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else None

    def parse(self) -> Regex:
        node = self.union()
        if self.peek() is not None:
            raise RegexSyntaxError(f"unexpected {self.text[self.pos]!r}", self.pos)
        return node

    def union(self) -> Regex:
        node = self.concat()
        while self.peek() == "|":
            self.pos += 1
            node = Union(node, self.concat())
        return node

    def concat(self) -> Regex:
        parts = []
        while (c := self.peek()) is not None and c not in "|)":
            parts.append(self.postfix())
        if not parts:
            raise RegexSyntaxError("expected an expression", self.pos)
        node = parts[0]
        for p in parts[1:]:
            node = Concat(node, p)
        return node

    def postfix(self) -> Regex:
        node = self.atom()
        while (c := self.peek()) in ("*", "+", "?"):
            self.pos += 1
            node = {"*": Star, "+": Plus, "?": Optional}[c](node)
        return node

    def atom(self) -> Regex:
        c = self.peek()
        start = self.pos
        if c == "(":
            self.pos += 1
            node = self.union()
            if self.peek() != ")":
                raise RegexSyntaxError("expected ')'", self.pos)
            self.pos += 1
            return node
        if c in ("*", "+", "?"):
            raise RegexSyntaxError(f"nothing to repeat before {c!r}", start)
        if c == "\\":
            if self.pos + 1 >= len(self.text):
                raise RegexSyntaxError("dangling escape", start)
            sym = self.text[self.pos + 1]
            self.pos += 2
            return self.symbol(sym, start)
        if self.text.startswith("eps", self.pos):
            self.pos += 3
            return Eps()
        if c == EMPTY_SET:
            self.pos += 1
            return Empty()
        self.pos += 1
        return self.symbol(c, start)

    def symbol(self, sym: str, where: int) -> Regex:
        if sym not in self.alphabet:
            raise AlphabetMismatch(f"symbol {sym!r} at offset {where} not in alphabet {self.alphabet}")
        return Sym(sym)


def parse_regex(text: str, alphabet) -> Regex:
    return _Parser(text, make_alphabet(alphabet)).parse()


def _prec(r: Regex) -> int:
    if isinstance(r, Union):
        return 0
    if isinstance(r, Concat):
        return 1
    if isinstance(r, (Star, Plus, Optional)):
        return 2
    return 3


def format_regex(r: Regex) -> str:
    def wrap(sub, level):
        s = format_regex(sub)
        return f"({s})" if _prec(sub) < level else s

    if isinstance(r, Empty):
        return EMPTY_SET
    if isinstance(r, Eps):
        return "eps"
    if isinstance(r, Sym):
        return "\\" + r.symbol if r.symbol in SPECIAL or r.symbol.isspace() or r.symbol == EMPTY_SET else r.symbol
    if isinstance(r, Union):
        return f"{wrap(r.left, 0)}|{wrap(r.right, 1)}"
    if isinstance(r, Concat):
        left, right = wrap(r.left, 1), wrap(r.right, 2)
        # keep "e" "ps" from fusing into the eps keyword, and vice versa
        return f"{left} {right}" if _fuses(left, right) else left + right
    op = {Star: "*", Plus: "+", Optional: "?"}[type(r)]
    return wrap(r.inner, 3) + op


def _fuses(left: str, right: str) -> bool:
    joined = left + right
    return "eps" in joined and joined.count("eps") != left.count("eps") + right.count("eps")


def compile_regex(r: Regex, alphabet) -> Nfa:
    """Thompson construction; every fragment has one entry and one exit."""
    alphabet = make_alphabet(alphabet)
    trans: set = set()
    counter = [0]

    def fresh():
        counter[0] += 1
        return counter[0] - 1

    def build(node):
        s, t = fresh(), fresh()
        if isinstance(node, Empty):
            pass
        elif isinstance(node, Eps):
            trans.add((s, EPS, t))
        elif isinstance(node, Sym):
            trans.add((s, node.symbol, t))
        elif isinstance(node, Concat):
            a, b = build(node.left), build(node.right)
            trans.update({(s, EPS, a[0]), (a[1], EPS, b[0]), (b[1], EPS, t)})
        elif isinstance(node, Union):
            for a in (build(node.left), build(node.right)):
                trans.update({(s, EPS, a[0]), (a[1], EPS, t)})
        else:
            a = build(node.inner)
            trans.update({(s, EPS, a[0]), (a[1], EPS, t)})
            if isinstance(node, (Star, Plus)):
                trans.add((a[1], EPS, a[0]))
            if isinstance(node, (Star, Optional)):
                trans.add((s, EPS, t))
        return s, t

    s, t = build(r)
    return Nfa(counter[0], alphabet, trans, {s}, {t})


def regex_nfa(text: str, alphabet) -> Nfa:
    return compile_regex(parse_regex(text, alphabet), alphabet)
