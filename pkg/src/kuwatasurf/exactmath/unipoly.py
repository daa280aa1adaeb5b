"""Dense univariate polynomials over Q or Q(sqrt(D)).

Coefficients are stored low degree first.  Any coefficient type supporting
field arithmetic works (int, Fraction, QuadElt); division promotes ints to
Fractions.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .scalars import QuadElt, common_field, short_scalar


def _strip(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def _div(a, b):
    if isinstance(a, int) and isinstance(b, int):
        return Fraction(a, b)
    return a / b


class UniPoly:
    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs=(), var: str = "t"):
        self.coeffs = _strip(coeffs)
        self.var = var

    # -- construction -------------------------------------------------
    @classmethod
    def gen(cls, var: str = "t") -> UniPoly:
        return cls((0, 1), var)

    @classmethod
    def const(cls, c, var: str = "t") -> UniPoly:
        return cls((c,), var)

    @classmethod
    def monomial(cls, n: int, c=1, var: str = "t") -> UniPoly:
        return cls((0,) * n + (c,), var)

    @classmethod
    def from_roots(cls, roots, var: str = "t") -> UniPoly:
        p = cls.const(1, var)
        x = cls.gen(var)
        for r in roots:
            p = p * (x - r)
        return p

    def _lift(self, other) -> UniPoly | None:
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (int, Fraction, QuadElt)):
            return UniPoly((other,), self.var)
        return None

    # -- basic properties ----------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else -1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_const(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else 0

    def __getitem__(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.coeffs, self.var))

    def field(self):
        return common_field(*self.coeffs)

    # -- ring operations -------------------------------------------------
    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return UniPoly(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QuadElt)):
            if other == 0:
                return UniPoly((), self.var)
            return UniPoly([c * other for c in self.coeffs], self.var)
        if not isinstance(other, UniPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly((), self.var)
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return UniPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result, base = UniPoly((1,), self.var), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, c):
        if isinstance(c, UniPoly):
            return self.exquo(c)
        return UniPoly([_div(x, c) for x in self.coeffs], self.var)

    def divrem(self, other: UniPoly) -> tuple[UniPoly, UniPoly]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db = other.degree
        lc = other.lc
        if len(r) <= db:
            return UniPoly((), self.var), self
        q = [0] * (len(r) - db)
        b = other.coeffs
        for k in range(len(r) - 1, db - 1, -1):
            c = r[k]
            if c == 0:
                continue
            c = _div(c, lc)
            q[k - db] = c
            for j in range(db + 1):
                r[k - db + j] = r[k - db + j] - c * b[j]
        return UniPoly(q, self.var), UniPoly(r[:db], self.var)

    def __divmod__(self, other):
        return self.divrem(other)

    def __floordiv__(self, other):
        return self.divrem(other)[0]

    def __mod__(self, other):
        return self.divrem(other)[1]

    def exquo(self, other: UniPoly) -> UniPoly:
        q, r = self.divrem(other)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    def divides(self, other: UniPoly) -> bool:
        return (other % self).is_zero()

    # -- field-level helpers ------------------------------------------
    def monic(self) -> UniPoly:
        if self.is_zero():
            return self
        return self / self.lc

    def gcd(self, other: UniPoly) -> UniPoly:
        """Monic gcd (zero only when both inputs are zero)."""
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def xgcd(self, other: UniPoly):
        """(g, s, t) with s*self + t*other = g monic."""
        r0, r1 = self, other
        s0, s1 = UniPoly((1,), self.var), UniPoly((), self.var)
        t0, t1 = UniPoly((), self.var), UniPoly((1,), self.var)
        while not r1.is_zero():
            q, r = r0.divrem(r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        lc = r0.lc
        if lc == 0:
            return r0, s0, t0
        return r0 / lc, s0 / lc, t0 / lc

    def derivative(self) -> UniPoly:
        return UniPoly([k * c for k, c in enumerate(self.coeffs)][1:], self.var)

    def content(self) -> Fraction:
        """Positive rational content (gcd of numerators / lcm of denominators)."""
        num, den = 0, 1
        for c in self.coeffs:
            if isinstance(c, QuadElt):
                raise TypeError("content is defined over Q only")
            c = Fraction(c)
            num = math.gcd(num, c.numerator)
            den = den * c.denominator // math.gcd(den, c.denominator)
        return Fraction(num, den) if num else Fraction(0)

    def primitive(self) -> UniPoly:
        """Integer primitive part with positive leading coefficient."""
        if self.is_zero():
            return self
        c = self.content()
        if self.lc < 0:
            c = -c
        return UniPoly([int(Fraction(x) / c) for x in self.coeffs], self.var)

    def squarefree_decomposition(self) -> list[tuple[UniPoly, int]]:
        """Yun's algorithm: [(g_i, i)] with self = lc * prod g_i**i, g_i monic."""
        if self.degree <= 0:
            return []
        f = self.monic()
        out = []
        d = f.derivative()
        a = f.gcd(d)
        b, c = f.exquo(a), d.exquo(a)
        i = 1
        while b.degree > 0:
            e = c - b.derivative()
            g = b.gcd(e)
            if g.degree > 0:
                out.append((g, i))
            b, c = b.exquo(g), e.exquo(g)
            i += 1
        return out

    def sqrt(self, fld=None) -> UniPoly | None:
        """Exact square root in fld[t] (default: the coefficient field), or None."""
        if self.is_zero():
            return self
        if self.degree % 2:
            return None
        fld = fld or self.field()
        m = self.degree // 2
        top = fld.sqrt(self.lc)
        if top is None:
            return None
        r = [0] * (m + 1)
        r[m] = top
        two_top = 2 * top
        for k in range(1, m + 1):
            acc = self[2 * m - k]
            for i in range(m - k + 1, m):
                j = 2 * m - k - i
                if m - k < j <= m:
                    acc = acc - r[i] * r[j]
            r[m - k] = _div(acc, two_top)
        root = UniPoly(r, self.var)
        return root if root * root == self else None

    # -- evaluation and substitution -------------------------------------
    def __call__(self, x):
        acc = 0
        if isinstance(x, UniPoly):
            acc = UniPoly((), x.var)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, other: UniPoly) -> UniPoly:
        return self(other)

    def shift(self, a) -> UniPoly:
        """p(t + a)."""
        return self(UniPoly((a, 1), self.var))

    def scale(self, c) -> UniPoly:
        """p(c t)."""
        out, m = [], 1
        for coef in self.coeffs:
            out.append(coef * m)
            m = m * c
        return UniPoly(out, self.var)

    def subs_power(self, n: int) -> UniPoly:
        """p(t**n)."""
        if n < 1:
            raise ValueError("t -> t^n needs n >= 1")
        out = [0] * (n * self.degree + 1) if self.coeffs else []
        for k, c in enumerate(self.coeffs):
            out[n * k] = c
        return UniPoly(out, self.var)

    def reverse(self, n: int | None = None) -> UniPoly:
        """t**n * p(1/t), the degree-clearing form of t -> 1/t (default n = deg)."""
        if n is None:
            n = self.degree
        if self.coeffs and n < self.degree:
            raise ValueError("clearing degree below polynomial degree")
        out = [0] * (n + 1)
        for k, c in enumerate(self.coeffs):
            out[n - k] = c
        return UniPoly(out, self.var)

    def valuation(self, place: UniPoly | None = None) -> int:
        """Order of vanishing at t = 0 (default) or at a place polynomial."""
        if self.is_zero():
            raise ValueError("valuation of zero")
        if place is None:
            k = 0
            while self.coeffs[k] == 0:
                k += 1
            return k
        k, f = 0, self
        while True:
            q, r = f.divrem(place)
            if not r.is_zero():
                return k
            f, k = q, k + 1

    def map_coeffs(self, fn) -> UniPoly:
        return UniPoly([fn(c) for c in self.coeffs], self.var)

    def conjugate(self) -> UniPoly:
        return self.map_coeffs(lambda c: c.conjugate() if isinstance(c, QuadElt) else c)

    # -- display ----------------------------------------------------------
    def __repr__(self):
        return f"UniPoly({list(self.coeffs)!r}, {self.var!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else (self.var if k == 1 else f"{self.var}^{k}")
            cs = short_scalar(c)
            if isinstance(c, QuadElt):
                cs = f"({cs})"
            term = cs if not mono else f"{cs}*{mono}"
            if parts and term.startswith("-"):
                parts.append(f"- {term[1:]}")
            elif parts:
                parts.append(f"+ {term}")
            else:
                parts.append(term)
        return " ".join(parts)
