"""Resultants of polynomials with respect to one variable.

``resultant`` runs the subresultant pseudo-remainder sequence over the ring
of coefficients in the remaining variables (fraction-free: every division is
exact).  ``sylvester_resultant`` builds the Sylvester matrix and takes its
Bareiss determinant; it is slower and exists as an independent route for
cross-checking.  Both use the same sign: the Sylvester determinant with the
rows of f first, i.e. res(f, g) = lc(f)^deg g * prod g(roots of f).
"""

from __future__ import annotations

import math
from fractions import Fraction

from . import _dense
from .multipoly import MultiPoly
from .scalars import QuadElt
from .unipoly import UniPoly


class _IntRing:
    zero, one = 0, 1

    @staticmethod
    def is_zero(a):
        return a == 0

    add = staticmethod(lambda a, b: a + b)
    sub = staticmethod(lambda a, b: a - b)
    mul = staticmethod(lambda a, b: a * b)
    neg = staticmethod(lambda a: -a)

    @staticmethod
    def exquo(a, b):
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError("inexact integer division in PRS")
        return q

    @staticmethod
    def pow(a, n):
        return a**n


class _FieldRing(_IntRing):
    @staticmethod
    def exquo(a, b):
        if isinstance(a, int) and isinstance(b, int):
            return Fraction(a, b)
        return a / b


class _DenseRing:
    zero, one = (), (1,)
    is_zero = staticmethod(lambda a: not a)
    add = staticmethod(_dense.add)
    sub = staticmethod(_dense.sub)
    mul = staticmethod(_dense.mul)
    neg = staticmethod(_dense.neg)
    exquo = staticmethod(_dense.exquo)
    pow = staticmethod(_dense.pow_)


class _MultiRing:
    def __init__(self, vars):
        self.zero = MultiPoly({}, vars)
        self.one = MultiPoly.const(1, vars)

    is_zero = staticmethod(lambda a: not a.terms)
    add = staticmethod(lambda a, b: a + b)
    sub = staticmethod(lambda a, b: a - b)
    mul = staticmethod(lambda a, b: a * b)
    neg = staticmethod(lambda a: -a)
    exquo = staticmethod(lambda a, b: a.exquo(b))
    pow = staticmethod(lambda a, n: a**n)


def _strip(R, c):
    c = list(c)
    while c and R.is_zero(c[-1]):
        c.pop()
    return c


def _prem(R, A, B):
    """Pseudo-remainder: lc(B)^(deg A - deg B + 1) * A mod B."""
    dB = len(B) - 1
    lb = B[-1]
    rem = list(A)
    e = len(A) - len(B) + 1
    while len(rem) - 1 >= dB and rem:
        lr = rem[-1]
        k = len(rem) - 1 - dB
        rem = [R.mul(lb, c) for c in rem]
        for j in range(dB + 1):
            rem[k + j] = R.sub(rem[k + j], R.mul(lr, B[j]))
        rem = _strip(R, rem[:-1])
        e -= 1
    if e > 0 and rem:
        f = R.pow(lb, e)
        rem = [R.mul(c, f) for c in rem]
    return rem


def subresultant(R, A, B):
    """Resultant of coefficient lists A, B (low degree first) over ring R."""
    A, B = _strip(R, A), _strip(R, B)
    if not A or not B:
        return R.zero
    a, b = len(A) - 1, len(B) - 1
    s = 1
    if a < b:
        A, B = B, A
        if a % 2 and b % 2:
            s = -1
    if len(B) == 1:
        r = R.pow(B[0], len(A) - 1)
        return r if s == 1 else R.neg(r)
    g = h = R.one
    while True:
        da, db = len(A) - 1, len(B) - 1
        delta = da - db
        if da % 2 and db % 2:
            s = -s
        rem = _prem(R, A, B)
        if not rem:
            return R.zero
        div = R.mul(g, R.pow(h, delta))
        A, B = B, [R.exquo(c, div) for c in rem]
        g = A[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = R.exquo(R.pow(g, delta), R.pow(h, delta - 1))
        if len(B) == 1:
            break
    da = len(A) - 1
    r = R.pow(B[0], da)
    if da > 1:
        r = R.exquo(r, R.pow(h, da - 1))
    return r if s == 1 else R.neg(r)


# -- front ends ---------------------------------------------------------------


def _int_scale(poly: MultiPoly) -> int:
    """Smallest positive integer making every coefficient integral."""
    den = 1
    for c in poly.terms.values():
        d = Fraction(c).denominator
        den = den * d // math.gcd(den, d)
    return den


def resultant(f: MultiPoly, g: MultiPoly, var: str, *, primitive: bool = False) -> MultiPoly:
    """res_var(f, g) as a polynomial in the remaining variables.

    With ``primitive=True`` the integer content is divided out and the sign
    normalized (leading grlex coefficient positive); elimination layers use
    this, since only the zero set matters there.
    """
    f, g = f._unify(g)
    vars = f.vars
    if var not in vars or (f.degree(var) <= 0 and g.degree(var) <= 0):
        raise ValueError(f"variable {var} absent from both inputs")
    if f.is_zero() or g.is_zero():
        return MultiPoly({}, vars)
    df, dg = f.degree(var), g.degree(var)
    others = sorted((f.free_vars() | g.free_vars()) - {var}, key=vars.index)
    quadratic = any(isinstance(c, QuadElt) for c in list(f.terms.values()) + list(g.terms.values()))
    if quadratic:
        R = _MultiRing(vars)
        A = [f.coeff(var, k) for k in range(df + 1)]
        B = [g.coeff(var, k) for k in range(dg + 1)]
        res = subresultant(R, A, B)
    else:
        sf, sg = _int_scale(f), _int_scale(g)
        fi, gi = f * sf, g * sg
        scale = Fraction(sf) ** dg * Fraction(sg) ** df
        if not others:
            R = _IntRing
            A = [int(fi.coeff(var, k).const_value()) for k in range(df + 1)]
            B = [int(gi.coeff(var, k).const_value()) for k in range(dg + 1)]
            val = Fraction(subresultant(R, A, B)) / scale
            res = MultiPoly.const(val, vars)
        elif len(others) == 1:
            w = others[0]
            A = [_to_dense(fi.coeff(var, k), w) for k in range(df + 1)]
            B = [_to_dense(gi.coeff(var, k), w) for k in range(dg + 1)]
            dense = subresultant(_DenseRing, A, B)
            res = MultiPoly.from_unipoly(UniPoly(dense, w), w, vars)
            if scale != 1:
                res = res / scale
        else:
            R = _MultiRing(vars)
            A = [fi.coeff(var, k).map_coeffs(int) for k in range(df + 1)]
            B = [gi.coeff(var, k).map_coeffs(int) for k in range(dg + 1)]
            res = subresultant(R, A, B)
            if scale != 1:
                res = res / scale
    res = res.map_coeffs(_normalize_scalar)
    if primitive and not res.is_zero() and not quadratic:
        res = res.primitive()
    return res


def _to_dense(p: MultiPoly, var: str) -> tuple:
    u = p.to_unipoly(var)
    return tuple(int(c) for c in u.coeffs)


def _normalize_scalar(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


def unipoly_resultant(f: UniPoly, g: UniPoly):
    """Resultant of two univariate polynomials over the coefficient field."""
    if f.is_zero() or g.is_zero():
        return 0
    return subresultant(_FieldRing, list(f.coeffs), list(g.coeffs))


def sylvester_matrix(f_coeffs, g_coeffs):
    """Sylvester matrix (f rows first) from coefficient lists, low degree first."""
    m, n = len(f_coeffs) - 1, len(g_coeffs) - 1
    size = m + n
    rows = []
    fr = list(reversed(f_coeffs))
    gr = list(reversed(g_coeffs))
    for i in range(n):
        rows.append([0] * i + fr + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gr + [0] * (size - n - 1 - i))
    return rows


def sylvester_resultant(f: MultiPoly, g: MultiPoly, var: str) -> MultiPoly:
    """Bareiss determinant of the Sylvester matrix (independent slow route)."""
    f, g = f._unify(g)
    vars = f.vars
    df, dg = f.degree(var), g.degree(var)
    if df <= 0 and dg <= 0:
        raise ValueError(f"variable {var} absent from both inputs")
    F = [f.coeff(var, k) for k in range(df + 1)]
    G = [g.coeff(var, k) for k in range(dg + 1)]
    M = sylvester_matrix(F, G)
    n = len(M)
    zero = MultiPoly({}, vars)
    a = [[x if isinstance(x, MultiPoly) else MultiPoly.const(x, vars) for x in row] for row in M]
    sign, prev = 1, MultiPoly.const(1, vars)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return zero
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            sign = -sign
        p = a[col][col]
        for r in range(col + 1, n):
            for c in range(col + 1, n):
                a[r][c] = (p * a[r][c] - a[r][col] * a[col][c]).exquo(prev)
            a[r][col] = zero
        prev = p
    return (a[n - 1][n - 1] * sign).map_coeffs(_normalize_scalar)
