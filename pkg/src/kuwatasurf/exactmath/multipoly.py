"""Sparse multivariate polynomials (exponent tuple -> coefficient).

Terms iterate in graded-lexicographic order, highest first.  Zero
coefficients are never stored.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .scalars import QuadElt, format_scalar
from .unipoly import UniPoly

_SCALARS = (int, Fraction, QuadElt)


def _exact(a, b):
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        return q if r == 0 else Fraction(a, b)
    return a / b


def _grlex_key(exp):
    return (sum(exp), exp)


class MultiPoly:
    __slots__ = ("vars", "terms")

    def __init__(self, terms: dict | None = None, vars: tuple[str, ...] = ()):
        self.vars = tuple(vars)
        self.terms = {e: c for e, c in (terms or {}).items() if c != 0}

    # -- construction ---------------------------------------------------
    @classmethod
    def gens(cls, *names: str) -> list[MultiPoly]:
        n = len(names)
        out = []
        for i in range(n):
            e = [0] * n
            e[i] = 1
            out.append(cls({tuple(e): 1}, names))
        return out

    @classmethod
    def const(cls, c, vars: tuple[str, ...]) -> MultiPoly:
        return cls({(0,) * len(vars): c}, vars)

    @classmethod
    def from_unipoly(cls, p: UniPoly, var: str, vars: tuple[str, ...]) -> MultiPoly:
        i = vars.index(var)
        terms = {}
        for k, c in enumerate(p.coeffs):
            e = [0] * len(vars)
            e[i] = k
            terms[tuple(e)] = c
        return cls(terms, vars)

    def with_vars(self, vars: tuple[str, ...]) -> MultiPoly:
        if vars == self.vars:
            return self
        idx = []
        for v in self.vars:
            if v not in vars:
                if any(e[self.vars.index(v)] for e in self.terms):
                    raise ValueError(f"variable {v} missing from target ordering")
                idx.append(None)
            else:
                idx.append(vars.index(v))
        terms = {}
        for e, c in self.terms.items():
            ne = [0] * len(vars)
            for k, j in zip(e, idx):
                if j is not None:
                    ne[j] = k
            terms[tuple(ne)] = c
        return MultiPoly(terms, vars)

    def _unify(self, other):
        if isinstance(other, _SCALARS):
            return self, MultiPoly.const(other, self.vars)
        if not isinstance(other, MultiPoly):
            return None
        if other.vars == self.vars:
            return self, other
        vars = self.vars + tuple(v for v in other.vars if v not in self.vars)
        return self.with_vars(vars), other.with_vars(vars)

    # -- properties --------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_const(self) -> bool:
        return all(not any(e) for e in self.terms)

    def const_value(self):
        if not self.is_const():
            raise ValueError("not a constant polynomial")
        return next(iter(self.terms.values()), 0)

    def degree(self, var: str | None = None) -> int:
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        if var not in self.vars:
            return 0
        i = self.vars.index(var)
        return max(e[i] for e in self.terms)

    def free_vars(self) -> set[str]:
        return {v for i, v in enumerate(self.vars) if any(e[i] for e in self.terms)}

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)

    def __eq__(self, other):
        u = self._unify(other)
        if u is None:
            return NotImplemented
        return u[0].terms == u[1].terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        u = self._unify(other)
        if u is None:
            return NotImplemented
        a, b = u
        terms = dict(a.terms)
        for e, c in b.terms.items():
            v = terms.get(e, 0) + c
            if v == 0:
                terms.pop(e, None)
            else:
                terms[e] = v
        return MultiPoly(terms, a.vars)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly({e: -c for e, c in self.terms.items()}, self.vars)

    def __sub__(self, other):
        u = self._unify(other)
        if u is None:
            return NotImplemented
        return u[0] + (-u[1])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, _SCALARS):
            if other == 0:
                return MultiPoly({}, self.vars)
            return MultiPoly({e: c * other for e, c in self.terms.items()}, self.vars)
        u = self._unify(other)
        if u is None:
            return NotImplemented
        a, b = u
        terms: dict = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return MultiPoly(terms, a.vars)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = MultiPoly.const(1, self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, c):
        if isinstance(c, _SCALARS):
            if isinstance(c, int):
                c = Fraction(c)
            return MultiPoly({e: x / c for e, x in self.terms.items()}, self.vars)
        return NotImplemented

    def exquo(self, other: MultiPoly) -> MultiPoly:
        """Exact quotient self / other; raises ArithmeticError if inexact."""
        if isinstance(other, _SCALARS):
            return self._scalar_exquo(other)
        a, b = self._unify(other)
        if not b.terms:
            raise ZeroDivisionError("division by zero polynomial")
        if len(b.terms) == 1:
            (eb, cb), = b.terms.items()
            out = {}
            for e, c in a.terms.items():
                ne = tuple(x - y for x, y in zip(e, eb))
                if min(ne) < 0:
                    raise ArithmeticError("inexact multivariate division")
                out[ne] = _exact(c, cb)
            return MultiPoly(out, a.vars)
        lead_b = max(b.terms)
        cb = b.terms[lead_b]
        rem = dict(a.terms)
        quot = {}
        while rem:
            lead = max(rem)
            ne = tuple(x - y for x, y in zip(lead, lead_b))
            if min(ne) < 0:
                raise ArithmeticError("inexact multivariate division")
            q = _exact(rem[lead], cb)
            quot[ne] = q
            for e, c in b.terms.items():
                k = tuple(x + y for x, y in zip(e, ne))
                v = rem.get(k, 0) - q * c
                if v == 0:
                    rem.pop(k, None)
                else:
                    rem[k] = v
        return MultiPoly(quot, a.vars)

    def _scalar_exquo(self, c) -> MultiPoly:
        return MultiPoly({e: _exact(x, c) for e, x in self.terms.items()}, self.vars)

    # -- structure ----------------------------------------------------------
    def coeffs_in(self, var: str) -> dict[int, MultiPoly]:
        """Coefficients as a polynomial in ``var`` (other variables kept)."""
        i = self.vars.index(var)
        out: dict[int, dict] = {}
        for e, c in self.terms.items():
            k = e[i]
            ne = e[:i] + (0,) + e[i + 1 :]
            out.setdefault(k, {})[ne] = c
        return {k: MultiPoly(t, self.vars) for k, t in out.items()}

    def coeff(self, var: str, k: int) -> MultiPoly:
        return self.coeffs_in(var).get(k, MultiPoly({}, self.vars))

    def to_unipoly(self, var: str) -> UniPoly:
        i = self.vars.index(var) if var in self.vars else None
        out: dict[int, object] = {}
        for e, c in self.terms.items():
            if any(k for j, k in enumerate(e) if j != i):
                raise ValueError(f"polynomial is not univariate in {var}")
            out[e[i] if i is not None else 0] = c
        n = max(out) + 1 if out else 0
        return UniPoly([out.get(k, 0) for k in range(n)], var)

    def subs(self, values: dict) -> MultiPoly:
        """Substitute scalars or MultiPolys for variables."""
        result = MultiPoly({}, self.vars)
        idx = {self.vars.index(v): val for v, val in values.items() if v in self.vars}
        if not idx:
            return self
        cache: dict = {}
        for e, c in self.terms.items():
            rest = list(e)
            factor = c
            for i, val in idx.items():
                k = e[i]
                rest[i] = 0
                if k:
                    key = (i, k)
                    if key not in cache:
                        cache[key] = val**k
                    factor = factor * cache[key]
            mono = MultiPoly({tuple(rest): 1}, self.vars)
            result = result + mono * factor
        return result

    def subs_fraction(self, var: str, num: MultiPoly, den: MultiPoly) -> MultiPoly:
        """den**d * self(var = num/den), d = degree in var (clears the denominator)."""
        d = self.degree(var)
        if d <= 0:
            return self
        cs = self.coeffs_in(var)
        out = MultiPoly({}, self.vars)
        npow = [MultiPoly.const(1, self.vars)]
        dpow = [MultiPoly.const(1, self.vars)]
        for _ in range(d):
            npow.append(npow[-1] * num)
            dpow.append(dpow[-1] * den)
        for k, c in cs.items():
            out = out + c * npow[k] * dpow[d - k]
        return out

    def evaluate(self, values: dict):
        p = self.subs(values)
        if not p.is_const():
            raise ValueError(f"unassigned variables {sorted(p.free_vars())}")
        return p.const_value()

    def content(self) -> Fraction:
        num, den = 0, 1
        for c in self.terms.values():
            if isinstance(c, QuadElt):
                raise TypeError("content is defined over Q only")
            c = Fraction(c)
            num = math.gcd(num, c.numerator)
            den = den * c.denominator // math.gcd(den, c.denominator)
        return Fraction(num, den) if num else Fraction(0)

    def primitive(self) -> MultiPoly:
        """Integer primitive part, leading grlex coefficient positive."""
        if not self.terms:
            return self
        c = self.content()
        if self.sorted_terms()[0][1] < 0:
            c = -c
        return MultiPoly({e: int(Fraction(x) / c) for e, x in self.terms.items()}, self.vars)

    def monomial_content(self) -> tuple[int, ...]:
        if not self.terms:
            return (0,) * len(self.vars)
        return tuple(min(e[i] for e in self.terms) for i in range(len(self.vars)))

    def strip_monomial(self, var: str) -> tuple[MultiPoly, int]:
        """Divide out the largest power of ``var`` dividing every term."""
        i = self.vars.index(var)
        k = self.monomial_content()[i]
        if k == 0:
            return self, 0
        terms = {e[:i] + (e[i] - k,) + e[i + 1 :]: c for e, c in self.terms.items()}
        return MultiPoly(terms, self.vars), k

    def map_coeffs(self, fn) -> MultiPoly:
        return MultiPoly({e: fn(c) for e, c in self.terms.items()}, self.vars)

    # -- display ----------------------------------------------------------
    def __repr__(self):
        return f"MultiPoly({self.sorted_terms()!r}, {self.vars!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k
            )
            cs = format_scalar(c)
            if isinstance(c, QuadElt):
                cs = f"({cs})"
            parts.append(f"{cs}*{mono}" if mono else cs)
        return " + ".join(parts)
