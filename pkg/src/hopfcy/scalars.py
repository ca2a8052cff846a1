"""Exact scalar arithmetic over a list of formal parameters.

Scalars live in the rational-function field Q(q_1, ..., q_m).  They are held
as quotients of Laurent polynomials with `Fraction` coefficients; equality is
decided by cross-multiplication, so no canonical factored form is needed.
`Monomial` is the hashable subset (c * q^e, c != 0) used for character and
cocycle values, and `Character` is a homomorphism Z^s -> {monomials with
coefficient +1} described by an integer exponent matrix.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Exps = tuple[int, ...]
Poly = dict[Exps, Fraction]

_F0 = Fraction(0)
_F1 = Fraction(1)


def zeros(m: int) -> Exps:
    return (0,) * m


def add_exps(a: Exps, b: Exps) -> Exps:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def sub_exps(a: Exps, b: Exps) -> Exps:
    return tuple(x - y for x, y in zip(a, b, strict=True))


def neg_exps(a: Exps) -> Exps:
    return tuple(-x for x in a)


def scale_exps(k: int, a: Exps) -> Exps:
    return tuple(k * x for x in a)


# ---------------------------------------------------------------------------
# Laurent polynomial dictionaries.  Invariant: no zero coefficients stored.

def poly_const(c: Fraction | int, m: int) -> Poly:
    c = Fraction(c)
    return {zeros(m): c} if c else {}


def poly_term(c: Fraction | int, e: Exps) -> Poly:
    c = Fraction(c)
    return {e: c} if c else {}


def poly_add(a: Poly, b: Poly) -> Poly:
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, _F0) + c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def poly_neg(a: Poly) -> Poly:
    return {e: -c for e, c in a.items()}


def poly_sub(a: Poly, b: Poly) -> Poly:
    return poly_add(a, poly_neg(b))


def poly_mul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = add_exps(ea, eb)
            s = out.get(e, _F0) + ca * cb
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return out


def poly_scale(c: Fraction, a: Poly) -> Poly:
    return {e: c * v for e, v in a.items()} if c else {}


def poly_eval(a: Poly, values: Sequence[Fraction]) -> Fraction:
    total = _F0
    for e, c in a.items():
        term = c
        for v, k in zip(values, e):
            term *= Fraction(v) ** k
        total += term
    return total


def _dense(a: Poly) -> tuple[int, list[Fraction]]:
    """Univariate Laurent -> (shift, ascending coefficient list)."""
    lo = min(e[0] for e in a)
    hi = max(e[0] for e in a)
    coeffs = [_F0] * (hi - lo + 1)
    for (k,), c in a.items():
        coeffs[k - lo] = c
    return lo, coeffs


def _from_dense(shift: int, coeffs: list[Fraction]) -> Poly:
    return {(shift + i,): c for i, c in enumerate(coeffs) if c}


def _divmod_dense(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    """Division with remainder; lists are ascending, b nonzero."""
    a = a[:]
    while a and not a[-1]:
        a.pop()
    db = len(b) - 1
    q = [_F0] * max(len(a) - db, 0)
    while len(a) - 1 >= db and a:
        f = a[-1] / b[-1]
        q[len(a) - 1 - db] = f
        for i in range(len(b)):
            a[len(a) - len(b) + i] -= f * b[i]
        while a and not a[-1]:
            a.pop()
    return q, a


def _gcd_dense(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    while b:
        _, r = _divmod_dense(a, b)
        a, b = b, r
    lc = a[-1]
    return [c / lc for c in a]


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Monomial:
    """A nonzero scalar of the shape c * q1^e1 * ... * qm^em."""

    coeff: Fraction
    exps: Exps

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeff", Fraction(self.coeff))
        object.__setattr__(self, "exps", tuple(int(k) for k in self.exps))
        if not self.coeff:
            raise ValueError("monomial coefficient must be nonzero")

    @classmethod
    def one(cls, m: int) -> "Monomial":
        return cls(_F1, zeros(m))

    @classmethod
    def var(cls, i: int, m: int, power: int = 1) -> "Monomial":
        e = [0] * m
        e[i] = power
        return cls(_F1, tuple(e))

    @property
    def is_one(self) -> bool:
        return self.coeff == 1 and not any(self.exps)

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(self.coeff * other.coeff, add_exps(self.exps, other.exps))

    def inv(self) -> "Monomial":
        return Monomial(1 / self.coeff, neg_exps(self.exps))

    def __pow__(self, k: int) -> "Monomial":
        return Monomial(self.coeff ** k, scale_exps(k, self.exps))

    def eval(self, values: Sequence[Fraction]) -> Fraction:
        return poly_eval({self.exps: self.coeff}, values)

    def as_poly(self) -> Poly:
        return {self.exps: self.coeff}

    def as_rf(self) -> "RationalFunction":
        m = len(self.exps)
        return RationalFunction(self.as_poly(), poly_const(1, m))

    def render(self, params: Sequence[str]) -> str:
        return render_poly(self.as_poly(), params)


def _lead_key(a: Poly) -> Exps:
    return max(a)


class RationalFunction:
    """Quotient of Laurent polynomials; equality by cross-multiplication.

    Normalization absorbs monomial denominators, reduces by the univariate
    gcd when there is a single parameter, and scales the denominator monic.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly):
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            m = len(next(iter(den)))
            self.num: Poly = {}
            self.den: Poly = poly_const(1, m)
            return
        if len(den) == 1:
            (e, c), = den.items()
            num = {sub_exps(k, e): v / c for k, v in num.items()}
            m = len(e)
            den = poly_const(1, m)
        else:
            m = len(next(iter(den)))
            if m == 1:
                ns, nc = _dense(num)
                ds, dc = _dense(den)
                g = _gcd_dense(nc[:], dc[:])
                if len(g) > 1:
                    nc, _ = _divmod_dense(nc, g)
                    dc, _ = _divmod_dense(dc, g)
                num = _from_dense(ns, nc)
                den = _from_dense(ds, dc)
                if len(den) == 1:
                    (e, c), = den.items()
                    num = {sub_exps(k, e): v / c for k, v in num.items()}
                    den = poly_const(1, 1)
            if len(den) > 1:
                lc = den[_lead_key(den)]
                if lc != 1:
                    num = poly_scale(1 / lc, num)
                    den = poly_scale(1 / lc, den)
        self.num = num
        self.den = den

    # -- constructors -------------------------------------------------------

    @classmethod
    def const(cls, c: Fraction | int, m: int) -> "RationalFunction":
        return cls(poly_const(c, m), poly_const(1, m))

    @classmethod
    def zero(cls, m: int) -> "RationalFunction":
        return cls.const(0, m)

    @classmethod
    def one(cls, m: int) -> "RationalFunction":
        return cls.const(1, m)

    @classmethod
    def var(cls, i: int, m: int) -> "RationalFunction":
        return Monomial.var(i, m).as_rf()

    # -- predicates ---------------------------------------------------------

    @property
    def nvars(self) -> int:
        return len(next(iter(self.den)))

    @property
    def is_zero(self) -> bool:
        return not self.num

    @property
    def is_one(self) -> bool:
        return self.num == self.den

    def as_monomial(self) -> Monomial | None:
        """Return self as a Monomial if it is one, else None."""
        if len(self.num) == 1 and len(self.den) == 1:
            (en, cn), = self.num.items()
            (ed, cd), = self.den.items()
            return Monomial(cn / cd, sub_exps(en, ed))
        return None

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "RationalFunction | None":
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, Monomial):
            return other.as_rf()
        if isinstance(other, (int, Fraction)):
            return RationalFunction.const(other, self.nvars)
        return None

    def __add__(self, other) -> "RationalFunction":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        num = poly_add(poly_mul(self.num, o.den), poly_mul(o.num, self.den))
        return RationalFunction(num, poly_mul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(poly_neg(self.num), self.den)

    def __sub__(self, other) -> "RationalFunction":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "RationalFunction":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other) -> "RationalFunction":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(poly_mul(self.num, o.num), poly_mul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalFunction":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero:
            raise ZeroDivisionError("division by zero scalar")
        return RationalFunction(poly_mul(self.num, o.den), poly_mul(self.den, o.num))

    def __rtruediv__(self, other) -> "RationalFunction":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int) -> "RationalFunction":
        if k < 0:
            return RationalFunction.one(self.nvars) / self ** (-k)
        out = RationalFunction.one(self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return poly_mul(self.num, o.den) == poly_mul(o.num, self.den)

    __hash__ = None  # equality is structural on an unreduced form

    def eval(self, values: Sequence[Fraction]) -> Fraction:
        d = poly_eval(self.den, values)
        if not d:
            raise ZeroDivisionError("denominator vanishes at evaluation point")
        return poly_eval(self.num, values) / d

    def render(self, params: Sequence[str]) -> str:
        if self.den == poly_const(1, self.nvars):
            return render_poly(self.num, params)
        return "(%s)/(%s)" % (render_poly(self.num, params), render_poly(self.den, params))

    def __repr__(self) -> str:
        names = ["q%d" % i for i in range(self.nvars)] if self.nvars != 1 else ["q"]
        return "RF[%s]" % self.render(names)


def render_poly(p: Poly, params: Sequence[str]) -> str:
    if not p:
        return "0"
    parts: list[str] = []
    for e in sorted(p, reverse=True):
        c = p[e]
        vars_part = "*".join(
            name if k == 1 else "%s^%d" % (name, k)
            for name, k in zip(params, e)
            if k
        )
        mag = abs(c)
        if not vars_part:
            body = str(mag)
        elif mag == 1:
            body = vars_part
        else:
            body = "%s*%s" % (mag, vars_part)
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Character:
    """A homomorphism Z^s -> parameter monomials with coefficient +1.

    ``rows[i]`` is the exponent vector of the value at the i-th standard
    generator; the value at g is the product q^(g . rows).
    """

    rows: tuple[Exps, ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "rows", tuple(tuple(int(k) for k in r) for r in self.rows)
        )
        if self.rows and len({len(r) for r in self.rows}) != 1:
            raise ValueError("ragged exponent matrix")

    @classmethod
    def trivial(cls, s: int, m: int) -> "Character":
        return cls(tuple(zeros(m) for _ in range(s)))

    @property
    def s(self) -> int:
        return len(self.rows)

    @property
    def m(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def exps_at(self, g: Sequence[int]) -> Exps:
        m = self.m
        out = [0] * m
        for gi, row in zip(g, self.rows):
            if gi:
                for j in range(m):
                    out[j] += gi * row[j]
        return tuple(out)

    def eval(self, g: Sequence[int]) -> Monomial:
        return Monomial(_F1, self.exps_at(g))

    @property
    def is_trivial(self) -> bool:
        return not any(any(r) for r in self.rows)

    def __mul__(self, other: "Character") -> "Character":
        if len(other.rows) != len(self.rows):
            raise ValueError("character rank mismatch")
        return Character(tuple(add_exps(a, b) for a, b in zip(self.rows, other.rows)))

    def inv(self) -> "Character":
        return Character(tuple(neg_exps(r) for r in self.rows))

    def __pow__(self, k: int) -> "Character":
        return Character(tuple(scale_exps(k, r) for r in self.rows))


# ---------------------------------------------------------------------------
# A small recursive-descent parser for scalar expressions in config files:
# integers, parameter names, + - * / ^ ( ), with ^ taking an integer
# exponent (q^-1 and q^(-2) both work).

_TOKEN = re.compile(r"\s*(\d+|[A-Za-z_][A-Za-z_0-9]*|\*\*|[-+*/^()])")


def _tokenize(text: str) -> list[str]:
    out: list[str] = []
    pos = 0
    while pos < len(text):
        mo = _TOKEN.match(text, pos)
        if not mo:
            raise ValueError("bad scalar expression at %r" % text[pos:])
        out.append(mo.group(1))
        pos = mo.end()
    return out


class _Parser:
    def __init__(self, tokens: list[str], params: Sequence[str]):
        self.tokens = tokens
        self.pos = 0
        self.params = list(params)
        self.m = len(self.params)

    def peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise ValueError("unexpected end of scalar expression")
        self.pos += 1
        return tok

    def expect(self, tok: str) -> None:
        got = self.take()
        if got != tok:
            raise ValueError("expected %r, got %r" % (tok, got))

    def expr(self) -> RationalFunction:
        value = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> RationalFunction:
        value = self.factor()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.factor()
            value = value * rhs if op == "*" else value / rhs
        return value

    def factor(self) -> RationalFunction:
        if self.peek() == "-":
            self.take()
            return -self.factor()
        if self.peek() == "+":
            self.take()
            return self.factor()
        base = self.atom()
        if self.peek() in ("^", "**"):
            self.take()
            return base ** self.int_exponent()
        return base

    def int_exponent(self) -> int:
        sign = 1
        if self.peek() == "(":
            self.take()
            k = self.int_exponent()
            self.expect(")")
            return k
        if self.peek() == "-":
            self.take()
            sign = -1
        tok = self.take()
        if not tok.isdigit():
            raise ValueError("exponent must be an integer, got %r" % tok)
        return sign * int(tok)

    def atom(self) -> RationalFunction:
        tok = self.take()
        if tok == "(":
            value = self.expr()
            self.expect(")")
            return value
        if tok.isdigit():
            return RationalFunction.const(int(tok), self.m)
        if tok in self.params:
            return RationalFunction.var(self.params.index(tok), self.m)
        raise ValueError("unknown name %r (parameters: %s)" % (tok, self.params))


def parse_scalar(text: str, params: Sequence[str]) -> RationalFunction:
    """Parse an expression like ``1/(q - q^-1)`` into a RationalFunction."""
    parser = _Parser(_tokenize(str(text)), params)
    value = parser.expr()
    if parser.peek() is not None:
        raise ValueError("trailing input in scalar expression: %r" % parser.peek())
    return value
