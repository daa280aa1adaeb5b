"""Rational functions num/den in one variable, kept in lowest terms with a
monic denominator."""

from __future__ import annotations

from fractions import Fraction

from .scalars import QuadElt, common_field
from .unipoly import UniPoly

_SCALARS = (int, Fraction, QuadElt)


class RatFunc:
    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, reduce: bool = True):
        if isinstance(num, _SCALARS):
            num = UniPoly.const(num)
        if den is None:
            den = UniPoly.const(1, num.var)
        elif isinstance(den, _SCALARS):
            den = UniPoly.const(den, num.var)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if reduce:
            if num.is_zero():
                den = UniPoly.const(1, num.var)
            else:
                g = num.gcd(den)
                if g.degree > 0:
                    num, den = num.exquo(g), den.exquo(g)
            lc = den.lc
            if lc != 1:
                num, den = num / lc, den / lc
        self.num = num
        self.den = den

    @property
    def var(self) -> str:
        return self.num.var

    @classmethod
    def gen(cls, var: str = "t") -> RatFunc:
        return cls(UniPoly.gen(var))

    def _lift(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, UniPoly):
            return RatFunc(other)
        if isinstance(other, _SCALARS):
            return RatFunc(UniPoly.const(other, self.var))
        return None

    # -- predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_poly(self) -> bool:
        return self.den.degree == 0

    def as_poly(self) -> UniPoly:
        if not self.is_poly():
            raise ValueError("rational function is not a polynomial")
        return self.num

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> RatFunc:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num**n, self.den**n, reduce=False)

    # -- analysis -----------------------------------------------------------
    def __call__(self, x):
        n, d = self.num(x), self.den(x)
        if isinstance(x, (UniPoly, RatFunc)):
            return self._lift(n) / self._lift(d)
        if d == 0:
            raise ZeroDivisionError("pole at evaluation point")
        if isinstance(n, int) and isinstance(d, int):
            return Fraction(n, d)
        return n / d

    def valuation(self, place: UniPoly | None = None) -> int:
        """Order at a finite place (default t = 0); +inf not representable, zero raises."""
        return self.num.valuation(place) - self.den.valuation(place)

    def valuation_at_infinity(self) -> int:
        """Order at t = infinity: deg den - deg num."""
        if self.is_zero():
            raise ValueError("valuation of zero")
        return self.den.degree - self.num.degree

    def derivative(self) -> RatFunc:
        return RatFunc(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def invert_variable(self, weight: int = 0) -> RatFunc:
        """t**weight * f(1/t).  Applying twice with the same weight gives f back."""
        n, d = self.num.degree, self.den.degree
        num = self.num.reverse(max(n, 0))
        den = self.den.reverse(d)
        shift = weight + d - max(n, 0)
        if shift >= 0:
            num = num * UniPoly.monomial(shift, 1, self.var)
        else:
            den = den * UniPoly.monomial(-shift, 1, self.var)
        return RatFunc(num, den)

    def subs_power(self, n: int) -> RatFunc:
        return RatFunc(self.num.subs_power(n), self.den.subs_power(n))

    def sqrt(self, fld=None) -> RatFunc | None:
        """Exact square root as a rational function, or None."""
        if self.is_zero():
            return self
        fld = fld or common_field(*self.num.coeffs, *self.den.coeffs)
        rd = self.den.sqrt(fld)
        rn = self.num.sqrt(fld)
        if rd is None or rn is None:
            return None
        return RatFunc(rn, rd)

    def map_coeffs(self, fn) -> RatFunc:
        return RatFunc(self.num.map_coeffs(fn), self.den.map_coeffs(fn))

    def conjugate(self) -> RatFunc:
        return RatFunc(self.num.conjugate(), self.den.conjugate())

    def __repr__(self):
        return f"RatFunc({self.num!r}, {self.den!r})"

    def __str__(self):
        if self.is_poly():
            return str(self.num)
        return f"({self.num})/({self.den})"


def subs_laurent(p: UniPoly, alpha, var: str = "t") -> RatFunc:
    """p(t + alpha/t) as a rational function of t."""
    n = max(p.degree, 0)
    t = UniPoly.gen(var)
    q = t * t + alpha
    acc = UniPoly((), var)
    qk = UniPoly.const(1, var)
    for k, c in enumerate(p.coeffs):
        if c != 0:
            acc = acc + qk * UniPoly.monomial(n - k, c, var)
        qk = qk * q
    return RatFunc(acc, UniPoly.monomial(n, 1, var))
