"""Exact scalars: rationals (``fractions.Fraction``) and elements of a single
quadratic extension Q(sqrt(D)).

Rationals are plain ``Fraction``/``int`` values.  ``QuadElt`` carries the
irrational part; arithmetic that lands back in Q returns a ``Fraction`` so
the common case stays cheap.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational


class ContextError(ValueError):
    """Raised when values from different quadratic contexts are mixed."""


def is_squarefree(n: int) -> bool:
    if n == 0:
        return False
    n = abs(n)
    if n % 4 == 0:
        return False
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return True


def iroot(n: int, k: int) -> tuple[int, bool]:
    """Integer k-th root of n >= 0: (floor root, exact?)."""
    if n < 0:
        raise ValueError("negative radicand")
    if n < 2:
        return n, True
    if k == 2:
        r = math.isqrt(n)
        return r, r * r == n
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x**k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x, x**k == n


def perfect_power(x, k: int):
    """Rational r with r**k == x, or None.  Negative x allowed for odd k."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("perfect_power of zero")
    sign = 1
    if x < 0:
        if k % 2 == 0:
            return None
        sign = -1
        x = -x
    num, ok1 = iroot(x.numerator, k)
    den, ok2 = iroot(x.denominator, k)
    if ok1 and ok2:
        return sign * Fraction(num, den)
    return None


def _frac(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, (int, Rational)):
        return Fraction(v)
    raise TypeError(f"not a rational: {v!r}")


class QuadElt:
    """a + b*sqrt(D) with a, b rational and D a squarefree integer != 1."""

    __slots__ = ("a", "b", "D")

    def __init__(self, a, b, D: int):
        self.a = _frac(a)
        self.b = _frac(b)
        self.D = D

    @staticmethod
    def make(a, b, D: int):
        if b == 0:
            return _frac(a)
        return QuadElt(a, b, D)

    def _coerce(self, other):
        if isinstance(other, QuadElt):
            if other.D != self.D:
                raise ContextError(f"mixed contexts sqrt({self.D}) and sqrt({other.D})")
            return other.a, other.b
        if isinstance(other, (int, Fraction)):
            return Fraction(other), Fraction(0)
        return None

    def __add__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return QuadElt.make(self.a + c[0], self.b + c[1], self.D)

    __radd__ = __add__

    def __sub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return QuadElt.make(self.a - c[0], self.b - c[1], self.D)

    def __rsub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return QuadElt.make(c[0] - self.a, c[1] - self.b, self.D)

    def __mul__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        a, b = c
        return QuadElt.make(self.a * a + self.D * self.b * b, self.a * b + self.b * a, self.D)

    __rmul__ = __mul__

    def __neg__(self):
        return QuadElt(-self.a, -self.b, self.D)

    def __pos__(self):
        return self

    def conjugate(self):
        return QuadElt(self.a, -self.b, self.D)

    def norm(self) -> Fraction:
        return self.a * self.a - self.D * self.b * self.b

    def trace(self) -> Fraction:
        return 2 * self.a

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("QuadElt inverse of zero")
        return QuadElt.make(self.a / n, -self.b / n, self.D)

    def __truediv__(self, other):
        if isinstance(other, QuadElt):
            return self * other.inverse()
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return QuadElt.make(self.a / other, self.b / other, self.D)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = Fraction(1), self
        while n:
            if n & 1:
                result = base * result
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, QuadElt):
            return self.D == other.D and self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.D))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __repr__(self):
        return f"QuadElt({self.a}, {self.b}, {self.D})"

    def __str__(self):
        return format_scalar(self)


def conjugate(x):
    return x.conjugate() if isinstance(x, QuadElt) else x


def is_rational(x) -> bool:
    return isinstance(x, (int, Fraction)) or (isinstance(x, QuadElt) and x.b == 0)


def height(x) -> int:
    """Naive height: max |numerator|, denominator over all rational parts."""
    if isinstance(x, QuadElt):
        return max(height(x.a), height(x.b))
    x = Fraction(x)
    return max(abs(x.numerator), x.denominator)


@dataclass(frozen=True)
class Field:
    """Coefficient context: Q (``D is None``) or Q(sqrt(D))."""

    D: int | None = None

    def __post_init__(self):
        if self.D is not None and (self.D == 1 or not is_squarefree(self.D)):
            raise ValueError(f"D={self.D} must be squarefree and != 1")

    @property
    def is_rational(self) -> bool:
        return self.D is None

    def __call__(self, a, b=0):
        if b != 0 and self.D is None:
            raise ContextError("Q has no irrational part")
        if isinstance(a, QuadElt):
            if self.D is None and a.b != 0:
                raise ContextError(f"{a} is not rational")
            if self.D is not None and a.b != 0 and a.D != self.D:
                raise ContextError("mixed contexts")
            return a + (QuadElt(0, b, self.D) if b else 0)
        return QuadElt.make(a, b, self.D) if self.D is not None else Fraction(a)

    @property
    def gen(self):
        if self.D is None:
            raise ContextError("Q has no generator")
        return QuadElt(0, 1, self.D)

    def contains(self, x) -> bool:
        if isinstance(x, QuadElt):
            return x.b == 0 or x.D == self.D
        return isinstance(x, (int, Fraction))

    def sqrt(self, x):
        """Square root of x inside this field, or None."""
        if x == 0:
            return Fraction(0)
        if is_rational(x):
            q = Fraction(x.a if isinstance(x, QuadElt) else x)
            r = perfect_power(q, 2) if q > 0 else None
            if r is not None:
                return r
            if self.D is not None:
                s = perfect_power(q / self.D, 2) if q / self.D > 0 else None
                if s is not None:
                    return QuadElt(0, s, self.D)
            return None
        if self.D is None or x.D != self.D:
            return None
        # (u + v sqrt D)^2 = a + b sqrt D  =>  u^2 = (a +- sqrt(N))/2
        a, b = x.a, x.b
        n = perfect_power(x.norm(), 2) if x.norm() > 0 else None
        if n is None:
            return None
        for cand in ((a + n) / 2, (a - n) / 2):
            if cand <= 0:
                continue
            u = perfect_power(cand, 2)
            if u is None:
                continue
            v = b / (2 * u)
            r = QuadElt.make(u, v, self.D)
            if r * r == x:
                return r
        return None

    def zeta3(self):
        if self.D != -3:
            raise ContextError("primitive cube root of unity needs D = -3")
        return QuadElt(Fraction(-1, 2), Fraction(1, 2), -3)

    def __str__(self):
        return "Q" if self.D is None else f"Q(sqrt({self.D}))"


QQ = Field()


def common_field(*values) -> Field:
    D = None
    for v in values:
        if isinstance(v, QuadElt) and v.b != 0:
            if D is not None and v.D != D:
                raise ContextError("mixed contexts")
            D = v.D
    return Field(D)


def format_scalar(x) -> str:
    """Exact string: "p/q" or "p/q + r/s*sqrt(D)"."""
    if isinstance(x, QuadElt):
        if x.b == 0:
            return format_scalar(x.a)
        sign = "-" if x.b < 0 else "+"
        return f"{format_scalar(x.a)} {sign} {format_scalar(abs(x.b))}*sqrt({x.D})"
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def short_scalar(x) -> str:
    """Display form: integers without denominator, otherwise like format_scalar."""
    if isinstance(x, QuadElt):
        if x.b == 0:
            return short_scalar(x.a)
        sign = "-" if x.b < 0 else "+"
        if x.a == 0:
            return f"{'-' if x.b < 0 else ''}{short_scalar(abs(x.b))}*sqrt({x.D})"
        return f"{short_scalar(x.a)} {sign} {short_scalar(abs(x.b))}*sqrt({x.D})"
    x = Fraction(x)
    return str(x)


_QUAD_RE = re.compile(
    r"^\s*(?P<a>[-+]?\d+(?:/\d+)?)\s*(?:(?P<op>[-+])\s*(?P<b>\d+(?:/\d+)?)\s*\*\s*sqrt\(\s*(?P<D>[-+]?\d+)\s*\))?\s*$"
)


def parse_scalar(text) -> Fraction | QuadElt:
    """Inverse of ``format_scalar``; also accepts plain integers/fractions."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if not isinstance(text, str):
        raise TypeError(f"cannot parse scalar from {text!r}")
    m = _QUAD_RE.match(text)
    if not m:
        raise ValueError(f"malformed exact scalar {text!r}")
    a = Fraction(m.group("a"))
    if m.group("b") is None:
        return a
    b = Fraction(m.group("b"))
    if m.group("op") == "-":
        b = -b
    return QuadElt.make(a, b, int(m.group("D")))


def exquo(a, b):
    """Exact quotient a/b staying in int when both are ints."""
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError(f"{b} does not divide {a}")
        return q
    return a / b
