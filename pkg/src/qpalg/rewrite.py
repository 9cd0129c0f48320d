"""Rewriting modulo a two-sided ideal of a free algebra.

Relations are oriented into rules lhs -> rhs with every rhs term strictly
below the lhs in deglex, so each rewrite strictly decreases the leading
word and normal forms terminate.  Completion resolves critical pairs in
increasing overlap degree up to a cap; a system that exhausts all pairs is
confluent and its normal forms are canonical coset representatives.  A
truncated system still certifies "reduces to zero", but a nonzero normal
form from it is inconclusive as an ideal non-membership claim.
"""

from __future__ import annotations

import heapq
from bisect import insort
from dataclasses import dataclass, field
from fractions import Fraction

from .exactnum import Cyclotomic
from .ncalg import Alphabet, NCPoly, Word, deglex_key, parse_poly

_ZERO = Fraction(0)

RAW = "raw"
TRUNCATED = "truncated"
CONFLUENT = "confluent"


@dataclass(frozen=True)
class RewriteRule:
    """Oriented relation: the word lhs rewrites to the polynomial rhs."""

    lhs: Word
    rhs: NCPoly

    def as_relation(self) -> NCPoly:
        return NCPoly(self.rhs.alphabet, {self.lhs: 1}) - self.rhs

    def render(self) -> str:
        lhs = ".".join(self.rhs.alphabet.names[i] for i in self.lhs)
        return f"{lhs} -> {self.rhs.render()}"


class RewriteSystem:
    """Frozen inter-reduced rule set with a completion status."""

    __slots__ = ("alphabet", "order", "rules", "status", "status_degree", "_by_first")

    def __init__(self, alphabet: Alphabet, rules, status: str = RAW, status_degree=None):
        self.alphabet = alphabet
        self.order = "deglex"
        self.rules = tuple(sorted(rules, key=lambda r: deglex_key(r.lhs)))
        self.status = status
        self.status_degree = status_degree
        by_first: dict[int, list] = {}
        for r in self.rules:
            by_first.setdefault(r.lhs[0], []).append((r.lhs, r.rhs.terms))
        self._by_first = by_first

    @classmethod
    def from_relations(cls, alphabet: Alphabet, relations, status: str = RAW) -> "RewriteSystem":
        return cls(alphabet, interreduce(alphabet, relations), status=status)

    @property
    def max_rule_degree(self) -> int:
        return max((len(r.lhs) for r in self.rules), default=0)

    def status_label(self) -> str:
        if self.status == TRUNCATED:
            return f"complete_up_to({self.status_degree})"
        return self.status

    def __repr__(self):
        return (f"RewriteSystem({len(self.alphabet)} generators, "
                f"{len(self.rules)} rules, {self.status_label()})")


class InconsistentPresentation(ValueError):
    """The ideal contains a nonzero scalar, so the quotient collapses."""


def _orient(p: NCPoly) -> tuple[Word, NCPoly]:
    lhs = p.leading_word()
    if not lhs:
        raise InconsistentPresentation("relation reduces to a nonzero scalar")
    lc = p.terms[lhs]
    rhs = NCPoly(p.alphabet, {lhs: 1}) - p * (1 / lc)
    return lhs, rhs


def _contains(big: Word, small: Word) -> bool:
    ls = len(small)
    return any(big[i:i + ls] == small for i in range(len(big) - ls + 1))


def _heapkey(w: Word):
    # heapq is a min-heap; negate so the deglex-largest word pops first
    return (-len(w), tuple(-x for x in w))


def _reduce_terms(terms: dict, by_first: dict) -> dict:
    """Full normal form of a term map against an lhs-indexed rule table.

    Deterministic: always rewrites the largest remaining word at its
    leftmost reducible position with the smallest matching lhs.
    """
    work = dict(terms)
    heap = [(_heapkey(w), w) for w in work]
    heapq.heapify(heap)
    out: dict = {}
    while heap:
        w = heapq.heappop(heap)[1]
        c = work.pop(w, None)
        if c is None:
            continue
        hit = None
        lw_total = len(w)
        for pos in range(lw_total):
            bucket = by_first.get(w[pos])
            if not bucket:
                continue
            for lhs, rhs_terms in bucket:
                lw = len(lhs)
                if pos + lw <= lw_total and w[pos:pos + lw] == lhs:
                    hit = (pos, lhs, rhs_terms)
                    break
            if hit:
                break
        if hit is None:
            out[w] = c
            continue
        pos, lhs, rhs_terms = hit
        pre, suf = w[:pos], w[pos + len(lhs):]
        for rw, rc in rhs_terms.items():
            nw = pre + rw + suf
            prev = work.get(nw)
            if prev is None:
                work[nw] = c * rc
                heapq.heappush(heap, (_heapkey(nw), nw))
            else:
                s = prev + c * rc
                if s:
                    work[nw] = s
                else:
                    del work[nw]
    return out


def normal_form(p: NCPoly, system: RewriteSystem) -> NCPoly:
    if p.alphabet != system.alphabet:
        raise ValueError("polynomial and system alphabets differ")
    out = NCPoly(system.alphabet)
    out.terms = _reduce_terms(p.terms, system._by_first)
    return out


def reduces_to_zero(p: NCPoly, system: RewriteSystem) -> bool:
    """True iff the normal form vanishes.

    Against a confluent system this decides ideal membership; otherwise
    True is still a membership certificate while False only says the
    polynomial is irreducible to zero at the current completion level.
    """
    return not normal_form(p, system)


def interreduce(alphabet: Alphabet, relations) -> list[RewriteRule]:
    """Orient relations into a rule set with pairwise non-overlapping lhs.

    No lhs contains another lhs as a factor and every rhs is fully reduced
    against the final rule set.
    """
    heap: list = []
    counter = 0
    for p in relations:
        if isinstance(p, RewriteRule):
            p = p.as_relation()
        if p:
            heapq.heappush(heap, (deglex_key(p.leading_word()), counter, p))
            counter += 1
    rules: dict[Word, NCPoly] = {}
    by_first: dict[int, list] = {}

    def _insert(lhs: Word, rhs: NCPoly):
        rules[lhs] = rhs
        insort(by_first.setdefault(lhs[0], []), (lhs, rhs.terms),
               key=lambda t: deglex_key(t[0]))

    def _remove(lhs: Word):
        rhs = rules.pop(lhs)
        by_first[lhs[0]].remove((lhs, rhs.terms))

    while heap:
        _, _, p = heapq.heappop(heap)
        nf_terms = _reduce_terms(p.terms, by_first)
        if not nf_terms:
            continue
        q = NCPoly(alphabet)
        q.terms = nf_terms
        lhs, rhs = _orient(q)
        for old in [k for k in rules if _contains(k, lhs)]:
            rel = NCPoly(alphabet, {old: 1}) - rules[old]
            _remove(old)
            heapq.heappush(heap, (deglex_key(old), counter, rel))
            counter += 1
        _insert(lhs, rhs)
    final = []
    for lhs in sorted(rules, key=deglex_key):
        rhs = NCPoly(alphabet)
        rhs.terms = _reduce_terms(rules[lhs].terms, by_first)
        final.append(RewriteRule(lhs, rhs))
    return final


@dataclass
class CompletionResult:
    """Outcome of critical-pair completion up to a degree cap."""

    system: RewriteSystem
    status: str
    cap: int
    rule_count_history: list[tuple[int, int]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "status": self.system.status_label(),
            "cap": self.cap,
            "rule_count": len(self.system.rules),
            "rule_count_history": [list(t) for t in self.rule_count_history],
        }


def complete(system: RewriteSystem, degree_cap: int) -> CompletionResult:
    """Resolve all critical pairs of combined degree <= degree_cap.

    Returns a confluent system when every overlap at every degree resolves,
    otherwise one truncated at the cap.  Pairs are processed in increasing
    (degree, overlap word) order for determinism.
    """
    if degree_cap < system.max_rule_degree:
        raise ValueError(
            f"degree cap {degree_cap} is below the maximal rule degree "
            f"{system.max_rule_degree}")
    for r in system.rules:
        for c in r.rhs.terms.values():
            if not isinstance(c, (Fraction, Cyclotomic)):
                raise ValueError(
                    f"rule coefficients live in incompatible fields: "
                    f"{type(c).__name__} is not rational or cyclotomic")

    alphabet = system.alphabet
    active: dict[int, RewriteRule] = {}
    by_first: dict[int, list] = {}
    heap: list = []
    next_id = 0

    def _insert(rule: RewriteRule) -> int:
        nonlocal next_id
        rid = next_id
        next_id += 1
        active[rid] = rule
        insort(by_first.setdefault(rule.lhs[0], []), (rule.lhs, rule.rhs.terms),
               key=lambda t: deglex_key(t[0]))
        return rid

    def _remove(rid: int):
        rule = active.pop(rid)
        by_first[rule.lhs[0]].remove((rule.lhs, rule.rhs.terms))

    def _push_overlaps(i: int, j: int):
        a, b = active[i].lhs, active[j].lhs
        for olap in range(1, min(len(a), len(b))):
            if a[-olap:] == b[:olap]:
                w = a + b[olap:]
                heapq.heappush(heap, (len(w), w, i, j, olap))

    def _nf(p: NCPoly) -> NCPoly:
        out = NCPoly(alphabet)
        out.terms = _reduce_terms(p.terms, by_first)
        return out

    def _add_relation(p: NCPoly):
        """Orient p (already a consequence) and cascade retirements."""
        pending = [p]
        while pending:
            q = _nf(pending.pop(0))
            if not q:
                continue
            lhs, rhs = _orient(q)
            for rid in sorted(k for k, r in active.items() if _contains(r.lhs, lhs)):
                pending.append(active[rid].as_relation())
                _remove(rid)
            new_id = _insert(RewriteRule(lhs, rhs))
            for other in sorted(active):
                _push_overlaps(new_id, other)
                if other != new_id:
                    _push_overlaps(other, new_id)

    for rule in system.rules:
        _insert(rule)
    for i in sorted(active):
        for j in sorted(active):
            _push_overlaps(i, j)

    history: list[tuple[int, int]] = []
    last_degree = None
    skipped = False
    while heap:
        deg, w, i, j, olap = heapq.heappop(heap)
        if i not in active or j not in active:
            continue                      # stale pair; must not count as truncation
        if deg > degree_cap:
            skipped = True
            break
        if last_degree is not None and deg != last_degree:
            history.append((last_degree, len(active)))
        last_degree = deg
        a, ra = active[i].lhs, active[i].rhs
        b, rb = active[j].lhs, active[j].rhs
        if a[-olap:] != b[:olap]:
            continue
        suffix, prefix = b[olap:], a[:len(a) - olap]
        s1 = NCPoly(alphabet, {rw + suffix: rc for rw, rc in ra.terms.items()})
        s2 = NCPoly(alphabet, {prefix + rw: rc for rw, rc in rb.terms.items()})
        spoly = s1 - s2
        if spoly:
            _add_relation(spoly)
    if last_degree is not None:
        history.append((last_degree, len(active)))

    final_rules = []
    for rid in sorted(active, key=lambda k: deglex_key(active[k].lhs)):
        rule = active[rid]
        rhs = NCPoly(alphabet)
        rhs.terms = _reduce_terms(rule.rhs.terms, by_first)
        final_rules.append(RewriteRule(rule.lhs, rhs))
    status = TRUNCATED if skipped else CONFLUENT
    out = RewriteSystem(alphabet, final_rules, status=status,
                        status_degree=degree_cap if skipped else None)
    return CompletionResult(out, status, degree_cap, history)


def _require_counting_degree(system: RewriteSystem, d: int):
    if system.status == CONFLUENT:
        return
    need = d + system.max_rule_degree
    if system.status == TRUNCATED and (system.status_degree or 0) >= need:
        return
    raise ValueError(
        f"counting irreducible words of length <= {d} needs completion up to "
        f"degree {need}; system status is {system.status_label()}")


def irreducible_words_by_length(system: RewriteSystem, d: int) -> list[list[Word]]:
    """Words of each length 0..d containing no rule lhs as a factor."""
    max_rule = system.max_rule_degree
    levels = [[()]]
    frontier = [()]
    nletters = len(system.alphabet)
    lhs_set = {r.lhs for r in system.rules}
    for _ in range(d):
        nxt = []
        for w in frontier:
            for a in range(nletters):
                nw = w + (a,)
                ok = True
                for ls in range(1, min(max_rule, len(nw)) + 1):
                    if nw[-ls:] in lhs_set:
                        ok = False
                        break
                if ok:
                    nxt.append(nw)
        levels.append(nxt)
        frontier = nxt
    return levels


def filtration_dimension(system: RewriteSystem, d: int) -> list[int]:
    """Dimensions of the spans of irreducible words of length <= e, e=0..d."""
    _require_counting_degree(system, d)
    levels = irreducible_words_by_length(system, d)
    counts = []
    total = 0
    for level in levels:
        total += len(level)
        counts.append(total)
    return counts


def quotient_basis(system: RewriteSystem, max_degree: int = 64) -> list[Word]:
    """All irreducible words of a confluent system with a finite quotient.

    Enumerates by length until a length has no irreducible words (then no
    longer word can avoid reducible factors either).  Raises if the basis
    is still growing at max_degree.
    """
    if system.status != CONFLUENT:
        raise ValueError("quotient basis needs a confluent system")
    basis: list[Word] = []
    frontier: list[Word] = [()]
    length = 0
    while frontier:
        basis.extend(frontier)
        length += 1
        if length > max_degree:
            raise ValueError(f"quotient basis still growing at degree {max_degree}")
        frontier = _extend_irreducible(system, frontier)
    return sorted(basis, key=deglex_key)


def _extend_irreducible(system: RewriteSystem, frontier: list[Word]) -> list[Word]:
    lhs_set = {r.lhs for r in system.rules}
    max_rule = system.max_rule_degree
    out = []
    for w in frontier:
        for a in range(len(system.alphabet)):
            nw = w + (a,)
            if not any(nw[-ls:] in lhs_set for ls in range(1, min(max_rule, len(nw)) + 1)):
                out.append(nw)
    return out


# -- presentation text format --

def format_presentation(alphabet: Alphabet, relations) -> str:
    lines = ["alphabet: " + " ".join(alphabet.names), "order: deglex"]
    for rel in relations:
        if isinstance(rel, RewriteRule):
            rel = rel.as_relation()
        lines.append(rel.render())
    return "\n".join(lines) + "\n"


def parse_presentation(text: str) -> tuple[Alphabet, list[NCPoly]]:
    alphabet = None
    relations = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("alphabet:"):
            alphabet = Alphabet(line.split(":", 1)[1].split())
            continue
        if line.startswith("order:"):
            if line.split(":", 1)[1].strip() != "deglex":
                raise ValueError("only the deglex order is supported")
            continue
        if alphabet is None:
            raise ValueError("presentation must declare an alphabet first")
        relations.append(parse_poly(line, alphabet))
    if alphabet is None:
        raise ValueError("presentation has no alphabet declaration")
    return alphabet, relations
