"""Degree-bounded rewriting systems (diamond-lemma completion).

A :class:`RewriteSystem` orients every relation as ``leading word -> tail``
with the tail strictly smaller in the term order.  ``complete_to_degree``
adds rules until all overlap ambiguities of weight <= D resolve.  If every
overlap of the final rule set resolves (at any weight) the system is flagged
``confluent_all`` and normal forms are unique in every degree.
"""

from __future__ import annotations

import heapq
import sys
from dataclasses import dataclass, field as dc_field
from typing import Iterable

from ..linalg import Echelon, axpy
from .poly import FreeAlgebra, NCPoly, Word

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))


class CompletionDiverged(RuntimeError):
    pass


class DegreeExceeded(ValueError):
    pass


@dataclass
class Presentation:
    alg: FreeAlgebra
    relations: list[NCPoly]
    name: str = ""
    degree: int | None = None  # suggested completion degree

    def __post_init__(self):
        for r in self.relations:
            if r.alg is not self.alg:
                raise ValueError("relation from a different free algebra")

    def max_relation_degree(self) -> int:
        return max((r.degree() for r in self.relations), default=0)

    def extended(self, relations: Iterable[NCPoly], name: str = "") -> Presentation:
        return Presentation(self.alg, list(self.relations) + list(relations), name or self.name, self.degree)


@dataclass
class CompletionStats:
    overlaps_checked: int = 0
    rules_added: int = 0
    max_rule_weight: int = 0
    history: list = dc_field(default_factory=list)


class RewriteSystem:
    def __init__(self, alg: FreeAlgebra, degree: int, presentation: Presentation | None = None):
        self.alg = alg
        self.degree = degree
        self.presentation = presentation
        self.rules: dict[Word, dict] = {}
        self.confluent_all = False
        self.stats = CompletionStats()
        self._lengths: list[int] = []
        self._letter_cache: dict = {}
        self._one = alg.field.one

    # -- rule bookkeeping ---------------------------------------------------
    def _set_rules(self, rules: dict[Word, dict]) -> None:
        self.rules = rules
        self._lengths = sorted({len(w) for w in rules})
        self._letter_cache = {}

    def find_match(self, word: Word):
        """Leftmost occurrence (pos, lead) of a rule's leading word, or None."""
        rules = self.rules
        n = len(word)
        for i in range(n):
            for L in self._lengths:
                if i + L > n:
                    break
                sub = word[i:i + L]
                if sub in rules:
                    return i, sub
        return None

    def is_reducible(self, word: Word) -> bool:
        return self.find_match(word) is not None

    def _suffix_match(self, word: Word):
        rules = self.rules
        n = len(word)
        for L in self._lengths:
            if L > n:
                break
            sub = word[n - L:]
            if sub in rules:
                return sub
        return None

    # -- normal forms ---------------------------------------------------------
    def _mult_letter(self, u: Word, g: int) -> dict:
        key = (u, g)
        hit = self._letter_cache.get(key)
        if hit is not None:
            return hit
        word = u + (g,)
        lead = self._suffix_match(word)
        if lead is None:
            res = {word: self._one}
        else:
            prefix = word[:len(word) - len(lead)]
            res = {}
            for t, c in self.rules[lead].items():
                axpy(res, c, self._mult_word(prefix, t))
        self._letter_cache[key] = res
        return res

    def _mult_word(self, u: Word, w: Word) -> dict:
        """Normal form of u*w for a normal word u and arbitrary word w."""
        cur = {u: self._one}
        for g in w:
            nxt: dict = {}
            for v, c in cur.items():
                axpy(nxt, c, self._mult_letter(v, g))
            cur = nxt
            if not cur:
                break
        return cur

    def reduce_terms(self, terms: dict) -> dict:
        out: dict = {}
        for w, c in terms.items():
            axpy(out, c, self._mult_word((), w))
        return out

    def _check_degree(self, f: NCPoly) -> None:
        if not self.confluent_all and f.degree() > self.degree:
            raise DegreeExceeded(
                f"degree {f.degree()} exceeds completion degree {self.degree}")

    def normal_form(self, f: NCPoly) -> NCPoly:
        self._check_degree(f)
        return NCPoly(self.alg, self.reduce_terms(f.terms))

    def multiply(self, a: NCPoly, b: NCPoly) -> NCPoly:
        """Normal form of a*b for a, b already in normal form."""
        if not self.confluent_all and a.degree() + b.degree() > self.degree:
            raise DegreeExceeded(
                f"product degree {a.degree() + b.degree()} exceeds {self.degree}")
        out: dict = {}
        for u, c in a.terms.items():
            for w, d in b.terms.items():
                axpy(out, c * d, self._mult_word(u, w))
        return NCPoly(self.alg, out)

    def equal(self, a: NCPoly, b: NCPoly) -> bool:
        return self.normal_form(a - b).is_zero()

    def rule_polys(self) -> list[NCPoly]:
        out = []
        for lead, tail in sorted(self.rules.items(), key=lambda kv: self.alg.key(kv[0])):
            terms = {w: -c for w, c in tail.items()}
            terms[lead] = self._one
            out.append(NCPoly(self.alg, terms))
        return out

    # -- counting ---------------------------------------------------------------
    def normal_words(self, max_weight: int) -> list[Word]:
        """All irreducible words of weight <= max_weight, ordered by the term order."""
        alg = self.alg
        out = [()]
        frontier = [()]
        while frontier:
            nxt = []
            for u in frontier:
                wu = alg.weight(u)
                for g, dg in enumerate(alg.degrees):
                    if wu + dg > max_weight:
                        continue
                    w = u + (g,)
                    if self._suffix_match(w) is None:
                        nxt.append(w)
            out.extend(nxt)
            frontier = nxt
        out.sort(key=alg.key)
        return out

    def graded_dimension(self, d: int) -> int:
        self._check_count_degree(d)
        return sum(1 for w in self.normal_words(d) if self.alg.weight(w) == d)

    def filtered_dimension(self, d: int) -> int:
        self._check_count_degree(d)
        return len(self.normal_words(d))

    def _check_count_degree(self, d: int) -> None:
        if not self.confluent_all and d > self.degree:
            raise DegreeExceeded(f"degree {d} exceeds completion degree {self.degree}")

    def summary(self) -> dict:
        return {
            "rules": len(self.rules),
            "max_rule_weight": max((self.alg.weight(w) for w in self.rules), default=0),
            "completion_degree": self.degree,
            "confluent_all": self.confluent_all,
        }


def _overlaps(a: Word, b: Word):
    """Proper overlaps: suffix of a equals prefix of b."""
    for k in range(1, min(len(a), len(b))):
        if a[len(a) - k:] == b[:k]:
            yield k


def _contains(big: Word, small: Word) -> bool:
    n, m = len(big), len(small)
    return any(big[i:i + m] == small for i in range(n - m + 1))


def complete_to_degree(pres: Presentation, D: int, *, max_rules: int = 5000,
                       max_terms: int = 20000, check_all: bool = True) -> RewriteSystem:
    """Complete a presentation to a rewriting system confluent up to weight D."""
    alg = pres.alg
    if D < pres.max_relation_degree():
        raise ValueError(f"completion degree {D} below relation degree {pres.max_relation_degree()}")
    rs = RewriteSystem(alg, D, pres)
    key = alg.key
    one = alg.field.one

    ech = Echelon(key=key)
    for r in pres.relations:
        ech.add(r.terms)

    queue: list = []
    seq = 0

    def push(weight, word, kind, payload):
        nonlocal seq
        heapq.heappush(queue, (weight, word, seq, kind, payload))
        seq += 1

    for row in ech.rows():
        lead = max(row, key=key)
        push(alg.weight(lead), lead, "insert", row)

    rules: dict[Word, dict] = {}

    def add_rule(terms: dict):
        lead = max(terms, key=key)
        inv = terms[lead].inv()
        tail = {w: -c * inv for w, c in terms.items() if w != lead}
        if len(tail) > max_terms:
            raise CompletionDiverged(f"rule with {len(tail)} terms exceeds limit {max_terms}")
        for old in [w for w in rules if _contains(w, lead)]:
            old_terms = {w: -c for w, c in rules[old].items()}
            old_terms[old] = one
            del rules[old]
            push(alg.weight(old), old, "insert", old_terms)
        rules[lead] = tail
        rs._set_rules(rules)
        rs.stats.rules_added += 1
        rs.stats.max_rule_weight = max(rs.stats.max_rule_weight, alg.weight(lead))
        if len(rules) > max_rules:
            raise CompletionDiverged(f"more than {max_rules} rules")
        for other in list(rules):
            for a, b in ((lead, other), (other, lead)):
                for k in _overlaps(a, b):
                    w = a + b[k:]
                    if alg.weight(w) <= D:
                        push(alg.weight(w), w, "overlap", (a, b, k))

    def s_poly(a: Word, b: Word, k: int) -> dict:
        x = a[:len(a) - k]
        z = b[k:]
        out: dict = {}
        for t, c in rules[a].items():
            axpy(out, c, rs._mult_word((), t + z))
        for t, c in rules[b].items():
            axpy(out, -c, rs._mult_word((), x + t))
        return out

    while queue:
        weight, word, _, kind, payload = heapq.heappop(queue)
        if kind == "insert":
            red = rs.reduce_terms(payload)
            if red:
                add_rule(red)
        else:
            a, b, k = payload
            if a not in rules or b not in rules:
                continue
            rs.stats.overlaps_checked += 1
            s = s_poly(a, b, k)
            if s:
                add_rule(s)

    # interreduce tails
    final = {lead: rs.reduce_terms(tail) for lead, tail in rules.items()}
    rs._set_rules(final)

    if check_all:
        rs.confluent_all = _all_overlaps_resolve(rs)
    return rs


def _all_overlaps_resolve(rs: RewriteSystem) -> bool:
    rules = rs.rules
    for a in rules:
        for b in rules:
            for k in _overlaps(a, b):
                x, z = a[:len(a) - k], b[k:]
                out: dict = {}
                for t, c in rules[a].items():
                    axpy(out, c, rs._mult_word((), t + z))
                for t, c in rules[b].items():
                    axpy(out, -c, rs._mult_word((), x + t))
                if out:
                    return False
    return True
