"""Deciding prefix, suffix and infix well-quasi-orderedness of regular languages."""
from __future__ import annotations

from collections import deque
from dataclasses import asdict, dataclass
from itertools import product

from . import automata as A
from .automata import Dfa, Nfa, determinize_trim, is_subset
from .orders import (
    AntichainSearchExhausted,
    FinitePoset,
    OrdinalExpr,
    W,
    is_antichain,
    mine_antichain,
    poset_invariants,
)
from .words import inf_period_chain, lyndon_words, primitive_root

DEFAULT_SAMPLE = 8
DEFAULT_COMPONENT_BUDGET = 5000
FINITE_EXACT_CAP = 64


class NotApplicable(ValueError):
    pass


def as_trim(lang, budget: int = A.DEFAULT_STATE_BUDGET) -> Dfa:
    return determinize_trim(lang, budget)


# ---------------------------------------------------------------- reports


@dataclass(frozen=True)
class OrdinalBounds:
    height: OrdinalExpr
    height_strict: bool
    width: OrdinalExpr
    width_strict: bool
    mot: OrdinalExpr
    mot_strict: bool

    def to_json(self) -> dict:
        return {
            "height": str(self.height),
            "height_strict": self.height_strict,
            "width": str(self.width),
            "width_strict": self.width_strict,
            "mot": str(self.mot),
            "mot_strict": self.mot_strict,
        }


@dataclass(frozen=True)
class DecisionReport:
    relation: str
    verdict: str  # "wqo" or "not-wqo"
    certificate: dict
    ordinal_bounds: OrdinalBounds | None = None

    @property
    def wqo(self) -> bool:
        return self.verdict == "wqo"

    def to_json(self) -> dict:
        return {
            "relation": self.relation,
            "verdict": self.verdict,
            "certificate": self.certificate,
            "ordinal_bounds": None if self.ordinal_bounds is None else self.ordinal_bounds.to_json(),
        }

    def antichain(self) -> list[str]:
        c = self.certificate
        return list(c.get("words") or c.get("antichain") or [])


def _finite_bounds(words: list[str], relation: str) -> OrdinalBounds:
    if len(words) <= FINITE_EXACT_CAP:
        inv = poset_invariants(FinitePoset(tuple(words), relation), cap=FINITE_EXACT_CAP)
        h, w = inv.height, inv.width
    else:
        h = w = len(words)
    f = OrdinalExpr.finite
    return OrdinalBounds(f(h), False, f(w), False, f(len(words)), False)


# ---------------------------------------------------------------- prefix


@dataclass(frozen=True)
class PrefixAnalysis:
    dfa: Dfa
    fork_states: frozenset
    nc_states: frozenset

    @property
    def s_language(self) -> Dfa:
        return self.dfa.with_accepting(self.nc_states)

    def on_cycle(self) -> list[int]:
        """NC states lying on a cycle, in breadth-first order."""
        d = self.dfa
        return [q for q in range(d.n) if q in self.nc_states and _shortest_path(d, q, q) is not None]


def _shortest_path(d: Dfa, src: int, dst: int, nonempty: bool = True) -> str | None:
    """Length-lex least word leading from src to dst."""
    if src == dst and not nonempty:
        return ""
    seen: dict[int, str] = {}
    queue = deque()
    for a, q in d.succ[src]:
        if q not in seen:
            seen[q] = a
            queue.append(q)
    while queue:
        p = queue.popleft()
        if p == dst:
            return seen[p]
        for a, q in d.succ[p]:
            if q not in seen:
                seen[q] = seen[p] + a
                queue.append(q)
    return None


def _access_words(d: Dfa) -> dict[int, str]:
    if d.initial is None:
        return {}
    seen = {d.initial: ""}
    queue = deque([d.initial])
    while queue:
        p = queue.popleft()
        for a, q in d.succ[p]:
            if q not in seen:
                seen[q] = seen[p] + a
                queue.append(q)
    return seen


def fork_analysis(lang) -> PrefixAnalysis:
    d = as_trim(lang)
    forks = frozenset(q for q in range(d.n) if len({a for a, _ in d.succ[q]}) >= 2)
    pred: dict[int, set[int]] = {}
    for (p, _), q in d.delta.items():
        pred.setdefault(q, set()).add(p)
    nc = set(forks)
    stack = list(forks)
    while stack:
        q = stack.pop()
        for p in pred.get(q, ()):
            if p not in nc:
                nc.add(p)
                stack.append(p)
    return PrefixAnalysis(d, forks, frozenset(nc))


def antichain_branch_witness(analysis: PrefixAnalysis, k: int) -> list[str]:
    """k pairwise prefix-incomparable words of L.

    Follow a lasso p z z z ... that stays inside the NC states.  Each new
    word is the length-lex least word of L that leaves the branch after the
    point where the previous word left it.
    """
    d = analysis.dfa
    if k < 1:
        return []
    cyc = analysis.on_cycle()
    if not cyc:
        raise NotApplicable("the language is prefix-wqo: no antichain branch exists")
    c = cyc[0]
    p = _access_words(d)[c]
    z = _shortest_path(d, c, c)
    lasso = p + z

    def branch_letter(i: int) -> str:
        return lasso[lasso_pos(i)]

    def lasso_pos(i: int) -> int:
        return i if i < len(p) else len(p) + (i - len(p)) % len(z)

    def advance(lp: int) -> int:
        return lp + 1 if lp + 1 < len(lasso) else len(p)

    out: list[str] = []
    start = 0
    while len(out) < k:
        prefix = "".join(branch_letter(i) for i in range(start))
        # BFS over (dfa state, lasso position or None once off the branch)
        first = (d.run(prefix), lasso_pos(start))
        seen = {first: ""}
        queue = deque([first])
        best = None
        while queue:
            q, lp = queue.popleft()
            w = seen[(q, lp)]
            if lp is None and q in d.accepting:
                best = w
                break
            for a, r in d.succ[q]:
                nxt = (r, advance(lp)) if lp is not None and a == lasso[lp] else (r, None)
                if nxt not in seen:
                    seen[nxt] = w + a
                    queue.append(nxt)
        if best is None:
            raise AssertionError("an NC state always has an off-branch extension")
        word = prefix + best
        out.append(word)
        # divergence point
        dpos = next(i for i in range(len(word)) if word[i] != branch_letter(i))
        start = dpos + 1
    return out


def _chain_certificate(analysis: PrefixAnalysis):
    d = analysis.dfa
    s_words = A.enumerate_words(analysis.s_language, d.n)
    s_set = set(s_words)
    anchors = []
    for s in s_words:
        q = d.run(s)
        for a, _ in d.succ[q]:
            if s + a not in s_set:
                anchors.append(s + a)
    if not s_words and d.initial is not None:
        anchors = [""]
    anchors.sort(key=A.length_lex_key)
    singles = [s for s in s_words if d.accepts(s)]
    return s_words, anchors, singles


def decide_prefix(lang, sample: int = DEFAULT_SAMPLE) -> DecisionReport:
    analysis = fork_analysis(lang)
    d = analysis.dfa
    if analysis.on_cycle():
        words = antichain_branch_witness(analysis, sample)
        return DecisionReport(
            "prefix",
            "not-wqo",
            {"kind": "antichain-sample", "construction": "antichain-branch", "words": words},
        )
    s_words, anchors, singles = _chain_certificate(analysis)
    cert = {
        "kind": "chain-decomposition",
        "anchors": anchors,
        "singletons": singles,
        "chain_count": len(anchors) + len(singles),
        "s_words": s_words,
    }
    if d.initial is None:
        cert["chain_count"] = 0
        cert["anchors"] = []
        z = OrdinalExpr()
        return DecisionReport("prefix", "wqo", cert, OrdinalBounds(z, False, z, False, z, False))
    if not A.has_cycle(d):
        bounds = _finite_bounds(A.enumerate_words(d, d.n), "prefix")
    else:
        k = cert["chain_count"]
        bounds = OrdinalBounds(
            W, False, OrdinalExpr.finite(k), False, OrdinalExpr(0, 0, len(anchors), len(singles)), False
        )
    return DecisionReport("prefix", "wqo", cert, bounds)


def _reverse_report(rep: DecisionReport, relation: str) -> DecisionReport:
    cert = dict(rep.certificate)
    for key in ("words", "anchors", "singletons", "s_words"):
        if key in cert:
            cert[key] = [w[::-1] for w in cert[key]]
    if "anchors" in cert:
        cert["anchors"].sort(key=A.length_lex_key)
    return DecisionReport(relation, rep.verdict, cert, rep.ordinal_bounds)


def decide_suffix(lang, sample: int = DEFAULT_SAMPLE) -> DecisionReport:
    return _reverse_report(decide_prefix(A.reverse(A.as_nfa(lang)), sample), "suffix")


# ---------------------------------------------------------------- boundedness


@dataclass(frozen=True)
class BoundednessCertificate:
    bounded: bool
    words: tuple[str, ...] = ()
    witness_cycle_pair: tuple[int, str, str] | None = None

    def to_json(self) -> dict:
        if self.bounded:
            return {"bounded": True, "words": list(self.words)}
        s, u, v = self.witness_cycle_pair
        return {"bounded": False, "state": s, "u": u, "v": v}


def sccs(d: Dfa) -> list[list[int]]:
    """Strongly connected components in topological order (Tarjan, iterative)."""
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on: set[int] = set()
    stack: list[int] = []
    out: list[list[int]] = []
    counter = 0
    for root in range(d.n):
        if root in index:
            continue
        work = [(root, iter(d.succ[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for _, w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on.add(w)
                    work.append((w, iter(d.succ[w])))
                    advanced = True
                    break
                if w in on:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                low[work[-1][0]] = min(low[work[-1][0]], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                out.append(sorted(comp))
    out.reverse()
    return out


def decide_bounded(lang) -> BoundednessCertificate:
    d = as_trim(lang)
    if d.initial is None:
        return BoundednessCertificate(True, ())
    comps = sccs(d)
    for c in comps:
        members = set(c)
        for q in c:
            inner = [(a, r) for a, r in d.succ[q] if r in members]
            if len(inner) >= 2:
                (a, r1), (b, r2) = inner[0], inner[1]
                u = a + (_shortest_path(d, r1, q, nonempty=False) or "")
                v = b + (_shortest_path(d, r2, q, nonempty=False) or "")
                return BoundednessCertificate(False, (), (q, u, v))
    words: list[str] = []
    for i, c in enumerate(comps):
        members = set(c)
        cyclic = len(c) > 1 or any(r == c[0] for _, r in d.succ[c[0]])
        if cyclic:
            entries = set()
            if d.initial in members:
                entries.add(d.initial)
            for (p, _), r in d.delta.items():
                if r in members and p not in members:
                    entries.add(r)
            for e in sorted(entries):
                cycle = _shortest_path(d, e, e)
                words.append(cycle)
                words.extend(cycle[:-1])
        bridge = sorted({a for q in c for a, r in d.succ[q] if r not in members})
        words.extend(bridge)
    merged: list[str] = []
    for w in words:
        if not merged or merged[-1] != w:
            merged.append(w)
    cert = BoundednessCertificate(True, tuple(merged))
    ok, _ = is_subset(d, A.word_stars(merged, d.alphabet))
    if not ok:
        raise AssertionError("bounding words do not cover the language")
    return cert


# ---------------------------------------------------------------- the R languages


@dataclass(frozen=True)
class RBounds:
    n: int
    m: int
    n0: int
    b1: int
    b2: int

    def to_json(self) -> dict:
        return asdict(self)


def compute_r_bounds(cert: BoundednessCertificate, lang) -> RBounds:
    if not cert.bounded:
        raise NotApplicable("R bounds need a bounded language")
    d = as_trim(lang)
    if d.initial is None:
        return RBounds(0, 0, 0, 0, 0)
    n = len(cert.words)
    m = max((len(w) for w in cert.words), default=0)
    n0 = determinize_trim(A.closure("subword", d)).n
    return RBounds(n, m, n0, max(n, m), n * m * (n0 + 1))


def r_periods(b1: int, alphabet) -> list[str]:
    return list(lyndon_words(alphabet, b1))


def build_r_language(b: RBounds, alphabet, component_budget: int = DEFAULT_COMPONENT_BUDGET) -> Nfa:
    """I · Σ^{≤b2} · I where I is {ε} together with every Inf(x), x a Lyndon
    word of length at most b1."""
    alphabet = A.make_alphabet(alphabet)
    periods = r_periods(b.b1, alphabet)
    if len(periods) > component_budget:
        raise A.BudgetExceeded(f"{len(periods)} periods exceed the component budget {component_budget}")
    trans = set()
    n = 0

    def block():
        nonlocal n
        hub_in, hub_out = n, n + 1
        n += 2
        trans.add((hub_in, A.EPS, hub_out))
        for x in periods:
            base = n
            n += len(x)
            for i, c in enumerate(x):
                trans.add((base + i, c, base + (i + 1) % len(x)))
                trans.add((hub_in, A.EPS, base + i))
                trans.add((base + i, A.EPS, hub_out))
        return hub_in, hub_out

    i1, o1 = block()
    mid = n
    n += b.b2 + 1
    for i in range(b.b2):
        for a in alphabet:
            trans.add((mid + i, a, mid + i + 1))
    i2, o2 = block()
    trans.add((o1, A.EPS, mid))
    for i in range(b.b2 + 1):
        trans.add((mid + i, A.EPS, i2))
    return Nfa(n, alphabet, trans, {i1}, {o2})


def r_membership(word: str, b: RBounds, alphabet) -> bool:
    return build_r_language(b, alphabet).accepts(word)


# ---------------------------------------------------------------- antichain samples


def mine_pumped_family(accepts, alphabet, relation: str, size: int = DEFAULT_SAMPLE,
                       max_total: int = 10, budget: int = 200_000, viable=None) -> list[str] | None:
    """Search p, q, s (smallest first) with p q^i s accepted for i = 1..size
    and the family pairwise incomparable.  ``viable(p)`` may prune prefixes."""
    by_len = [[""]]
    spent = 0
    for total in range(1, max_total + 1):
        by_len.append(["".join(t) for t in product(alphabet, repeat=total)])
        for lp in range(0, total):
            for lq in range(1, total - lp + 1):
                ls = total - lp - lq
                for p in by_len[lp]:
                    if viable is not None and not viable(p):
                        continue
                    for q in by_len[lq]:
                        if primitive_root(q) != q:
                            continue
                        for s in by_len[ls]:
                            spent += 1
                            if spent > budget:
                                return None
                            fam = [p + q * i + s for i in range(1, size + 1)]
                            if all(accepts(w) for w in fam) and is_antichain(relation, fam):
                                return fam
    return None


def antichain_sample(d: Dfa, relation: str, size: int = DEFAULT_SAMPLE) -> dict:
    fam = mine_pumped_family(d.accepts, d.alphabet, relation, size, viable=lambda p: d.run(p) is not None)
    if fam is not None:
        return {"construction": "pumped-family", "words": fam}
    try:
        words = mine_antichain(A.iter_words(d), relation, size)
    except AntichainSearchExhausted as e:
        words = e.found
    return {"construction": "greedy", "words": words}


# ---------------------------------------------------------------- infix


INFIX_WQO_BOUNDS = OrdinalBounds(W, False, OrdinalExpr.omega(2), True, OrdinalExpr.omega(3), True)


def decide_infix(lang, sample: int = DEFAULT_SAMPLE, budget: int = A.DEFAULT_STATE_BUDGET) -> DecisionReport:
    d = as_trim(lang, budget)
    if d.initial is None:
        z = OrdinalExpr()
        b = RBounds(0, 0, 0, 0, 0)
        cert = {"kind": "r-inclusion", "bounds": b.to_json(), "bounding_words": [], "periods": []}
        return DecisionReport("infix", "wqo", cert, OrdinalBounds(z, False, z, False, z, False))
    bc = decide_bounded(d)
    if not bc.bounded:
        s, u, v = bc.witness_cycle_pair
        smp = antichain_sample(d, "infix", sample)
        cert = {"kind": "unboundedness", "state": s, "u": u, "v": v, "antichain": smp["words"],
                "construction": smp["construction"]}
        return DecisionReport("infix", "not-wqo", cert)
    rb = compute_r_bounds(bc, d)
    r = build_r_language(rb, d.alphabet)
    ok, escape = is_subset(d, r, budget)
    if not ok:
        smp = antichain_sample(d, "infix", sample)
        cert = {"kind": "escape-word", "word": escape, "bounds": rb.to_json(),
                "bounding_words": list(bc.words), "antichain": smp["words"],
                "construction": smp["construction"]}
        return DecisionReport("infix", "not-wqo", cert)
    cert = {"kind": "r-inclusion", "bounds": rb.to_json(), "bounding_words": list(bc.words),
            "periods": r_periods(rb.b1, d.alphabet)}
    if not A.has_cycle(d):
        bounds = _finite_bounds(A.enumerate_words(d, d.n), "infix")
    else:
        bounds = INFIX_WQO_BOUNDS
    return DecisionReport("infix", "wqo", cert, bounds)


def decide(lang, relation: str, sample: int = DEFAULT_SAMPLE) -> DecisionReport:
    if relation == "prefix":
        return decide_prefix(lang, sample)
    if relation == "suffix":
        return decide_suffix(lang, sample)
    if relation == "infix":
        return decide_infix(lang, sample)
    raise ValueError(f"unsupported relation {relation!r}")


def decide_infix_closure_invariance(lang) -> bool:
    d = as_trim(lang)
    if not decide_bounded(d).bounded:
        raise NotApplicable("closure invariance is only claimed for bounded languages")
    return decide_infix(d).verdict == decide_infix(A.closure("infix", d)).verdict


# ---------------------------------------------------------------- ideals


def _triple_nfa(x: str, u: str, y: str, alphabet) -> Nfa:
    def inf(p):
        return inf_period_chain(p, alphabet).nfa if p else A.epsilon_language(alphabet)

    return A.concat(A.concat(inf(x), A.finite_language([u], alphabet)), inf(y))


def _in_inf(w: str, x: str) -> bool:
    if not x:
        return not w
    return w in x * (len(w) // len(x) + 2)


def ideal_representation(lang, budget: int = 200) -> list[tuple[str, str, str]] | None:
    """Triples (x, u, y) with L = ⋃ Inf(x)·u·Inf(y); an empty period stands
    for {ε}.  Returns None when ``budget`` greedy rounds do not suffice."""
    d = as_trim(lang)
    if not A.equivalent(A.closure("infix", d), d):
        raise NotApplicable("the language is not downward closed for the infix order")
    rep = decide_infix(d)
    if not rep.wqo:
        raise NotApplicable("the language is not infix-wqo")
    rb = RBounds(**rep.certificate["bounds"])
    periods = [""] + r_periods(rb.b1, d.alphabet)
    chosen: list[tuple[str, str, str]] = []
    cover = A.empty_language(d.alphabet)
    for _ in range(budget):
        ok, w = is_subset(d, cover)
        if ok:
            return _drop_redundant(chosen, d.alphabet)
        best = None
        for i in range(len(w) + 1):
            for j in range(i, len(w) + 1):
                alpha, u, beta = w[:i], w[i:j], w[j:]
                if len(u) > rb.b2:
                    continue
                for x in periods:
                    if not _in_inf(alpha, x):
                        continue
                    for y in periods:
                        if not _in_inf(beta, y):
                            continue
                        key = (len(u), -(bool(x) + bool(y)), not x, len(x), x, len(y), y, u)
                        if best is not None and key >= best[0]:
                            continue
                        if is_subset(_triple_nfa(x, u, y, d.alphabet), d)[0]:
                            best = (key, (x, u, y))
        if best is None:
            return None
        x, u, y = _simplify(*best[1], d.alphabet)
        chosen.append((x, u, y))
        cover = A.union(cover, _triple_nfa(x, u, y, d.alphabet))
    return None


def _drop_redundant(triples, alphabet):
    out = list(triples)
    for t in list(out):
        rest = [r for r in out if r != t]
        if rest and is_subset(_triple_nfa(*t, alphabet), ideal_language(rest, alphabet))[0]:
            out = rest
    return out


def _simplify(x: str, u: str, y: str, alphabet) -> tuple[str, str, str]:
    full = _triple_nfa(x, u, y, alphabet)
    if y and A.equivalent(_triple_nfa(x, u, "", alphabet), full):
        y = ""
    if x and A.equivalent(_triple_nfa("", u, y, alphabet), full):
        x = ""
    return x, u, y


def ideal_language(triples, alphabet) -> Nfa:
    return A.union_all([_triple_nfa(x, u, y, alphabet) for x, u, y in triples], alphabet)


# ---------------------------------------------------------------- reductions


def reduction_prefix_to_infix(lang, marker: str = "#") -> Nfa:
    return A.apply_transducer(A.marker_transducer(A.as_nfa(lang).alphabet, marker), A.as_nfa(lang))


def reduction_emptiness_to_prefix(lang, outputs=("a", "b")) -> Nfa:
    nfa = A.as_nfa(lang)
    return A.apply_transducer(A.full_image_transducer(nfa.alphabet, outputs), nfa)
