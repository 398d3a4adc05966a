"""Exact coefficient arithmetic: the field Q(q, ...) of rational functions.

Every scalar in the package is a :class:`QScalar`, a reduced fraction of two
integer polynomials over a declared :class:`ScalarField` (parameter set).
Numerator and denominator are python-flint ``fmpz_mpoly`` objects; the pair is
kept coprime with a positive leading denominator coefficient, so equality is
structural.

Canonical text form (used in golden files and reports)::

    scalar   := laurent | "(" laurent ") / (" laurent ")"
    laurent  := term (("+" | "-") term)*
    term     := [coeff "*"] monomial | coeff
    monomial := name ["^" int] ("*" name ["^" int])*

Terms are listed by descending total degree, then descending exponent vector
in parameter order.  The denominator never contains a monomial factor: such
factors are moved into the numerator as negative exponents.  ``parse`` accepts
any arithmetic expression over the parameter names (``+ - * / ^`` and
parentheses) and in particular reads back every canonical string.
"""

from __future__ import annotations

import ast
from fractions import Fraction
from typing import Iterable, Mapping, Union

import flint

MAX_EXPONENT = 4096


class CoeffError(ArithmeticError):
    pass


class PoleAtOne(CoeffError):
    """Denominator vanishes at q = 1 after cancellation."""


class ParameterMismatch(CoeffError):
    pass


class ExponentOverflow(CoeffError):
    pass


class ScalarParseError(ValueError):
    def __init__(self, msg: str, col: int | None = None):
        super().__init__(msg if col is None else f"{msg} (column {col})")
        self.col = col


Number = Union[int, Fraction]


class ScalarField:
    """A declared parameter set; ``q`` must be one of the names."""

    _cache: dict[tuple[str, ...], "ScalarField"] = {}

    def __new__(cls, names: Iterable[str] = ("q",)):
        names = tuple(names)
        if names in cls._cache:
            return cls._cache[names]
        if "q" not in names:
            raise ValueError("parameter set must contain q")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate parameter names in {names}")
        self = super().__new__(cls)
        self.names = names
        self.ctx = flint.fmpz_mpoly_ctx.get(names, "deglex")
        self._one_poly = self.ctx.constant(1)
        self._zero_poly = self.ctx.constant(0)
        self.zero = QScalar._raw(self._zero_poly, self._one_poly, self)
        self.one = QScalar._raw(self._one_poly, self._one_poly, self)
        cls._cache[names] = self
        return self

    def __reduce__(self):
        return (ScalarField, (self.names,))

    def __repr__(self) -> str:
        return f"ScalarField({', '.join(self.names)})"

    def gen(self, name: str) -> QScalar:
        if name not in self.names:
            raise ParameterMismatch(f"{name!r} is not a parameter of {self}")
        return QScalar._raw(self.ctx.gens()[self.names.index(name)], self._one_poly, self)

    @property
    def q(self) -> QScalar:
        return self.gen("q")

    def __call__(self, value) -> QScalar:
        if isinstance(value, QScalar):
            if value.field is not self:
                raise ParameterMismatch(f"scalar over {value.field} used in {self}")
            return value
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            return QScalar._raw(self.ctx.constant(value), self._one_poly, self)
        if isinstance(value, Fraction):
            return QScalar(self.ctx.constant(value.numerator), self.ctx.constant(value.denominator), self)
        if isinstance(value, str):
            return self.parse(value)
        raise TypeError(f"cannot convert {type(value).__name__} to QScalar")

    def monomial(self, exps: Mapping[str, int], coeff: Number = 1) -> QScalar:
        pos = [0] * len(self.names)
        neg = [0] * len(self.names)
        for name, e in exps.items():
            i = self.names.index(name)
            if e >= 0:
                pos[i] = e
            else:
                neg[i] = -e
        coeff = Fraction(coeff)
        num = self.ctx.from_dict({tuple(pos): coeff.numerator})
        den = self.ctx.from_dict({tuple(neg): coeff.denominator})
        return QScalar(num, den, self)

    def coerce(self, x: QScalar) -> QScalar:
        """Map a scalar from a field whose parameters are a subset of ours."""
        if x.field is self:
            return x
        if not set(x.field.names) <= set(self.names):
            raise ParameterMismatch(f"cannot coerce {x.field} into {self}")
        idx = [self.names.index(n) for n in x.field.names]

        def remap(p):
            out = {}
            for exps, c in p.terms():
                e = [0] * len(self.names)
                for i, v in zip(idx, exps):
                    e[i] = v
                out[tuple(e)] = int(c)
            return self.ctx.from_dict(out)

        return QScalar(remap(x.num), remap(x.den), self)

    def parse(self, text: str) -> QScalar:
        return parse_expression(text, self._lookup)

    def _lookup(self, name: str, col: int):
        if name in self.names:
            return self.gen(name)
        raise ScalarParseError(f"unknown parameter {name!r}", col)


class QScalar:
    """Element of Q(q, ...): coprime numerator/denominator over a ScalarField."""

    __slots__ = ("num", "den", "field", "_hash")

    def __init__(self, num, den, field: ScalarField):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            num, den = field._zero_poly, field._one_poly
        else:
            g = num.gcd(den)
            if not g.is_one():
                num = num / g
                den = den / g
            if den.leading_coefficient() < 0:
                num, den = -num, -den
            _check_exponents(num, den)
        self.num = num
        self.den = den
        self.field = field
        self._hash = None

    @classmethod
    def _raw(cls, num, den, field) -> QScalar:
        self = object.__new__(cls)
        self.num = num
        self.den = den
        self.field = field
        self._hash = None
        return self

    # -- coercion helpers -------------------------------------------------
    def _other(self, other):
        if isinstance(other, QScalar):
            if other.field is not self.field:
                raise ParameterMismatch(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.field(other)
        return None

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if not self.num:
            return o
        if not o.num:
            return self
        if self.den == o.den:
            return QScalar(self.num + o.num, self.den, self.field)
        return QScalar(self.num * o.den + o.num * self.den, self.den * o.den, self.field)

    __radd__ = __add__

    def __neg__(self):
        return QScalar._raw(-self.num, self.den, self.field)

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if not self.num or not o.num:
            return self.field.zero
        if o.den.is_one() and self.den.is_one():
            return QScalar._checked(self.num * o.num, self.den, self.field)
        g1 = self.num.gcd(o.den)
        g2 = o.num.gcd(self.den)
        num = (self.num / g1) * (o.num / g2)
        den = (self.den / g2) * (o.den / g1)
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return QScalar._checked(num, den, self.field)

    __rmul__ = __mul__

    @classmethod
    def _checked(cls, num, den, field):
        _check_exponents(num, den)
        return cls._raw(num, den, field)

    def inv(self) -> QScalar:
        if not self.num:
            raise ZeroDivisionError("inverse of zero QScalar")
        num, den = self.den, self.num
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return QScalar._raw(num, den, self.field)

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inv() ** (-n)
        return QScalar._checked(self.num**n, self.den**n, self.field)

    # -- predicates -------------------------------------------------------
    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def __eq__(self, other) -> bool:
        if isinstance(other, QScalar):
            return self.field is other.field and self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self == self.field(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((tuple(self.num.terms()), tuple(self.den.terms())))
        return self._hash

    def to_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a rational constant")
        return Fraction(int(self.num.leading_coefficient()) if self.num else 0,
                        int(self.den.leading_coefficient()))

    # -- substitution -----------------------------------------------------
    def substitute(self, values: Mapping[str, object]) -> QScalar:
        """Replace parameters by rationals or scalars of the same field."""
        vals = {k: self.field(v) for k, v in values.items()}
        for k in vals:
            if k not in self.field.names:
                raise ParameterMismatch(f"{k!r} is not a parameter of {self.field}")
        return _eval_poly(self.num, self.field, vals) / _eval_poly(self.den, self.field, vals)

    def laurent_terms(self):
        """(monomial-free denominator, numerator terms with Laurent exponents)."""
        shift = [int(min(e)) for e in zip(*[t[0] for t in self.den.terms()])]
        terms = [(tuple(int(a) - s for a, s in zip(e, shift)), Fraction(int(c)))
                 for e, c in self.num.terms()]
        den = self.field.ctx.from_dict(
            {tuple(int(a) - s for a, s in zip(e, shift)): int(c) for e, c in self.den.terms()})
        return den, terms

    def __str__(self) -> str:
        if not self.num:
            return "0"
        den, terms = self.laurent_terms()
        if den.is_constant():
            k = int(den.leading_coefficient())
            return _fmt_laurent([(e, c / k) for e, c in terms], self.field.names)
        den_terms = [(tuple(int(a) for a in e), Fraction(int(c))) for e, c in den.terms()]
        return (f"({_fmt_laurent(terms, self.field.names)}) / "
                f"({_fmt_laurent(den_terms, self.field.names)})")

    def __repr__(self) -> str:
        return f"QScalar({str(self)!r})"


def _check_exponents(num, den):
    for p in (num, den):
        if p.total_degree() > MAX_EXPONENT:
            raise ExponentOverflow(f"exponent bound {MAX_EXPONENT} exceeded")


def _eval_poly(p, field: ScalarField, vals: Mapping[str, QScalar]) -> QScalar:
    total = field.zero
    gens = [vals.get(n, field.gen(n)) for n in field.names]
    for exps, c in p.terms():
        m = field(int(c))
        for g, e in zip(gens, exps):
            if e:
                m = m * g ** int(e)
        total = total + m
    return total


def _fmt_laurent(terms, names) -> str:
    terms = sorted(terms, key=lambda t: (sum(t[0]), t[0]), reverse=True)
    out = []
    for exps, c in terms:
        mono = "*".join(
            n if e == 1 else f"{n}^{e}" for n, e in zip(names, exps) if e != 0)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out) if out else "0"


# -- expression parsing --------------------------------------------------

_BINOPS = {ast.Add: "__add__", ast.Sub: "__sub__", ast.Mult: "__mul__", ast.Div: "__truediv__"}


def parse_expression(text: str, lookup, *, line_offset: int = 0):
    """Evaluate an arithmetic expression with ``lookup(name, col)`` for names.

    Only integers, names, ``+ - * / ^`` and parentheses are accepted.  The
    result is whatever the operands' arithmetic produces (scalars or
    noncommutative polynomials).
    """
    src = text.replace("^", "**")
    try:
        tree = ast.parse(src.strip() or "0", mode="eval")
    except SyntaxError as exc:
        raise ScalarParseError(f"syntax error: {exc.msg}", exc.offset) from None
    leading = len(src) - len(src.lstrip())

    def col(node):
        # columns refer to the original text; '**' replaced one-char '^'
        c = node.col_offset + leading
        return c - src[:c].count("**") + 1

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant):
            if isinstance(node.value, int) and not isinstance(node.value, bool):
                return node.value
            raise ScalarParseError(f"unsupported literal {node.value!r}", col(node))
        if isinstance(node, ast.Name):
            return lookup(node.id, col(node))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            left, right = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Pow):
                if not isinstance(right, int):
                    raise ScalarParseError("exponent must be an integer", col(node.right))
                if isinstance(left, int):
                    return Fraction(left) ** right if right < 0 else left**right
                if isinstance(left, Fraction):
                    return left**right
                return left**right
            op = _BINOPS.get(type(node.op))
            if op is None:
                raise ScalarParseError("unsupported operator", col(node))
            if isinstance(node.op, ast.Div) and isinstance(left, int) and isinstance(right, int):
                return Fraction(left, right)
            res = getattr(left, op)(right)
            if res is NotImplemented:
                rop = "__r" + op[2:]
                res = getattr(right, rop)(left)
            if res is NotImplemented:
                raise ScalarParseError("incompatible operands", col(node))
            return res
        raise ScalarParseError(f"unsupported syntax {type(node).__name__}", col(node))

    return ev(tree)


# -- q-numbers and the classical limit ------------------------------------

def q_number(n: int, field: ScalarField | None = None) -> QScalar:
    """The symmetric q-integer (q^n - q^-n)/(q - q^-1) as a Laurent polynomial."""
    if n < 0:
        raise ValueError("q_number requires n >= 0")
    field = field or ScalarField(("q",))
    total = field.zero
    for k in range(n):
        total = total + field.monomial({"q": n - 1 - 2 * k})
    return total


def classical_limit(s, values: Mapping[str, Number] | None = None) -> Fraction:
    """Value at q = 1, other parameters replaced by the given rationals."""
    if isinstance(s, ExtScalar):
        if s.v:
            raise ValueError("classical_limit of an irrational ExtScalar")
        s = s.u
    values = dict(values or {})
    values.pop("q", None)
    missing = [n for n in s.field.names if n != "q" and n not in values]
    if missing:
        raise ValueError(f"no value supplied for {missing}")
    if values:
        s = s.substitute(values)
    q_index = s.field.names.index("q")
    den_at_one = _eval_at_one(s.den, q_index)
    if den_at_one == 0:
        raise PoleAtOne(f"{s} has a pole at q = 1")
    return _eval_at_one(s.num, q_index) / den_at_one


def _eval_at_one(p, q_index) -> Fraction:
    total = Fraction(0)
    for exps, c in p.terms():
        if any(e for i, e in enumerate(exps) if i != q_index):
            raise ValueError("polynomial still depends on non-q parameters")
        total += int(c)
    return total


# -- quadratic extension ----------------------------------------------------

class ExtScalar:
    """u + v*nu with nu^2 = r, for u, v, r in a common ScalarField."""

    __slots__ = ("u", "v", "r")

    def __init__(self, u, v, r):
        field = r.field
        self.u = field(u)
        self.v = field(v)
        self.r = r

    @property
    def field(self) -> ScalarField:
        return self.r.field

    @classmethod
    def nu(cls, r: QScalar) -> ExtScalar:
        return cls(r.field.zero, r.field.one, r)

    def _other(self, other):
        if isinstance(other, ExtScalar):
            if other.r != self.r:
                raise ParameterMismatch("ExtScalars with different discriminants")
            return other
        if isinstance(other, (QScalar, int, Fraction)) and not isinstance(other, bool):
            return ExtScalar(self.field(other), self.field.zero, self.r)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return ExtScalar(self.u + o.u, self.v + o.v, self.r)

    __radd__ = __add__

    def __neg__(self):
        return ExtScalar(-self.u, -self.v, self.r)

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return ExtScalar(self.u * o.u + self.r * self.v * o.v, self.u * o.v + self.v * o.u, self.r)

    __rmul__ = __mul__

    def inv(self) -> ExtScalar:
        norm = self.u * self.u - self.r * self.v * self.v
        if not norm:
            raise ZeroDivisionError("inverse of zero ExtScalar")
        return ExtScalar(self.u / norm, -self.v / norm, self.r)

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        out = ExtScalar(self.field.one, self.field.zero, self.r)
        for _ in range(n):
            out = out * self
        return out

    def __bool__(self) -> bool:
        return bool(self.u) or bool(self.v)

    def is_zero(self) -> bool:
        return not self

    def __eq__(self, other) -> bool:
        if isinstance(other, ExtScalar):
            return self.r == other.r and self.u == other.u and self.v == other.v
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self.u == o.u and self.v == o.v

    def __hash__(self):
        return hash((self.u, self.v, self.r))

    def __str__(self) -> str:
        return f"{self.u} + ({self.v})*nu [nu^2 = {self.r}]"

    __repr__ = __str__


def scalar_sqrt(s: QScalar) -> QScalar | None:
    """Square root inside the field, or None if s is not a perfect square."""
    if not s:
        return s
    num, den = s.num, s.den
    if num.leading_coefficient() < 0:
        return None
    try:
        rn = num.sqrt()
        rd = den.sqrt()
    except Exception:
        return None
    if rn * rn != num or rd * rd != den:
        return None
    return QScalar(rn, rd, s.field)
