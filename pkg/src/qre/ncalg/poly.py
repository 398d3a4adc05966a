"""Free associative algebras and their noncommutative polynomials."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from ..coeff import ExtScalar, QScalar, ScalarField, parse_expression, ScalarParseError

Word = tuple  # tuple of generator indices


class FreeAlgebra:
    """Free algebra over a ScalarField on named, weighted generators.

    Term order: weighted degree first, then lexicographic on generator
    positions (earlier generator = smaller).
    """

    def __init__(self, names: Sequence[str], field: ScalarField, degrees: Sequence[int] | None = None):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("generator names must be unique")
        clash = set(names) & set(field.names)
        if clash:
            raise ValueError(f"generator names clash with parameters: {sorted(clash)}")
        self.names = names
        self.field = field
        self.degrees = tuple(degrees) if degrees is not None else (1,) * len(names)
        if len(self.degrees) != len(names) or any(d < 1 for d in self.degrees):
            raise ValueError("each generator needs a positive degree")
        self.index = {n: i for i, n in enumerate(names)}
        self._uniform = all(d == 1 for d in self.degrees)

    def __repr__(self) -> str:
        return f"FreeAlgebra({list(self.names)}, {self.field})"

    def weight(self, word: Word) -> int:
        if self._uniform:
            return len(word)
        return sum(self.degrees[g] for g in word)

    def key(self, word: Word):
        return (self.weight(word), word)

    def gen(self, name: str) -> NCPoly:
        return NCPoly(self, {(self.index[name],): self.field.one})

    def gens(self) -> list[NCPoly]:
        return [self.gen(n) for n in self.names]

    def __call__(self, value) -> NCPoly:
        if isinstance(value, NCPoly):
            return value
        if isinstance(value, ExtScalar):
            return NCPoly(self, {(): value})
        return NCPoly(self, {(): self.field(value)})

    def zero(self) -> NCPoly:
        return NCPoly(self, {})

    def one(self) -> NCPoly:
        return NCPoly(self, {(): self.field.one})

    def word(self, *names: str) -> NCPoly:
        return NCPoly(self, {tuple(self.index[n] for n in names): self.field.one})

    def word_str(self, word: Word) -> str:
        return "*".join(self.names[g] for g in word) if word else "1"

    def parse(self, text: str) -> NCPoly:
        def lookup(name, col):
            if name in self.index:
                return self.gen(name)
            if name in self.field.names:
                return self.field.gen(name)
            raise ScalarParseError(f"unknown symbol {name!r}", col)

        return self(parse_expression(text, lookup))


class NCPoly:
    """Finite sum of coefficient * word; zero coefficients are never stored."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: FreeAlgebra, terms: dict | None = None):
        self.alg = alg
        self.terms = {w: c for w, c in (terms or {}).items() if c}

    def _coerce(self, other):
        if isinstance(other, NCPoly):
            if other.alg is not self.alg:
                raise ValueError("polynomials live in different free algebras")
            return other
        if isinstance(other, (QScalar, ExtScalar, int, Fraction)) and not isinstance(other, bool):
            return self.alg(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for w, c in o.terms.items():
            s = out.get(w)
            out[w] = c if s is None else s + c
        return NCPoly(self.alg, out)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly(self.alg, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (QScalar, ExtScalar, int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in o.terms.items():
                w = w1 + w2
                p = c1 * c2
                s = out.get(w)
                out[w] = p if s is None else s + p
        return NCPoly(self.alg, out)

    def __rmul__(self, other):
        if isinstance(other, (QScalar, ExtScalar, int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def scale(self, c) -> NCPoly:
        if isinstance(c, (int, Fraction)):
            c = self.alg.field(c)
        return NCPoly(self.alg, {w: c * v for w, v in self.terms.items()})

    def __truediv__(self, c):
        if isinstance(c, (QScalar, ExtScalar, int, Fraction)) and not isinstance(c, bool):
            c = self.alg.field(c) if isinstance(c, (int, Fraction)) else c
            return self.scale(c.inv())
        return NotImplemented

    def __pow__(self, n: int) -> NCPoly:
        out = self.alg.one()
        for _ in range(n):
            out = out * self
        return out

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        o = self._coerce(other) if not isinstance(other, NCPoly) or other.alg is self.alg else None
        if o is None:
            return NotImplemented if not isinstance(other, NCPoly) else False
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def leading_word(self) -> Word:
        return max(self.terms, key=self.alg.key)

    def degree(self) -> int:
        return max((self.alg.weight(w) for w in self.terms), default=-1)

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: self.alg.key(t[0]), reverse=True)

    def coefficient(self, word: Word):
        return self.terms.get(tuple(word), self.alg.field.zero)

    def map_coefficients(self, fn) -> NCPoly:
        return NCPoly(self.alg, {w: fn(c) for w, c in self.terms.items()})

    def substitute(self, images: Sequence[NCPoly]) -> NCPoly:
        """Algebra map sending generator i to images[i]."""
        target = images[0].alg if images else self.alg
        out = NCPoly(target, {})
        for w, c in self.terms.items():
            m = target.one()
            for g in w:
                m = m * images[g]
            out = out + m.scale(c)
        return out

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.sorted_terms():
            cs = str(c)
            word = self.alg.word_str(w)
            if c == 1 and w:
                parts.append(word)
            elif c == -1 and w:
                parts.append("-" + word)
            else:
                if " " in cs or isinstance(c, ExtScalar):
                    cs = f"({cs})"
                parts.append(f"{cs}*{word}" if w else cs)
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"NCPoly({str(self)!r})"


def commutator(a: NCPoly, b: NCPoly) -> NCPoly:
    return a * b - b * a


def words_of_weight(alg: FreeAlgebra, d: int) -> Iterable[Word]:
    """All words of exact weight d (no rewriting)."""
    if d == 0:
        yield ()
        return
    for g, dg in enumerate(alg.degrees):
        if dg <= d:
            for rest in words_of_weight(alg, d - dg):
                yield (g,) + rest


def transport(f: NCPoly, alg: FreeAlgebra) -> NCPoly:
    """Copy f into another free algebra, matching generators by name.

    The target field must contain the source parameters.
    """
    src = f.alg
    if src is alg:
        return f
    m = [alg.index[name] for name in src.names]
    same_field = src.field is alg.field
    terms = {}
    for w, c in f.terms.items():
        if not same_field and not hasattr(c, "r"):
            c = alg.field.coerce(c)
        terms[tuple(m[g] for g in w)] = c
    return NCPoly(alg, terms)
