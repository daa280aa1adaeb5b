"""Root finding for univariate polynomials over Q, and over one quadratic
field Q(sqrt(D)).

Rational roots come from the rational-root theorem (divisor enumeration)
when the leading and constant coefficients factor within a budget; past the
budget the search switches to p-adic lifting plus rational reconstruction,
which finds the same roots, and the overflow is recorded.  Roots in
Q(sqrt(D)) are found by lifting roots in Z_p for a prime where D is a
square, pairing conjugates and reconstructing the quadratic factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import _dense, modp
from .scalars import Field, QuadElt, is_squarefree, perfect_power
from .unipoly import UniPoly


@dataclass
class RationalRoots:
    roots: list  # [(Fraction, multiplicity)], ascending
    cofactor: UniPoly  # f divided by the linear factors of its rational roots
    method: str = "divisors"  # or "p-adic"
    divisor_overflow: bool = False
    notes: list = field(default_factory=list)


# -- integer polynomial helpers -------------------------------------------------


def to_int_coeffs(f: UniPoly) -> list[int]:
    """Primitive integer coefficient list (positive leading coefficient)."""
    return list(f.primitive().coeffs)


def _eval_int(a, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _maxnorm(a):
    return max(abs(v) for v in a)


def _primitive_int(a):
    g = _dense.content(a)
    a = [v // g for v in a]
    if a and a[-1] < 0:
        a = [-v for v in a]
    return a


def _exact_div(a, b):
    try:
        return list(_dense.exquo(tuple(a), tuple(b)))
    except ArithmeticError:
        return None


def int_gcd(f: list[int], g: list[int]) -> list[int]:
    """Primitive gcd of integer polynomials (heuristic gcd, checked by division;
    falls back to Euclid over Q)."""
    f, g = _dense.strip(f), _dense.strip(g)
    if not f:
        return _primitive_int(list(g)) if g else []
    if not g:
        return _primitive_int(list(f))
    if len(f) == 1 or len(g) == 1:
        return [1]
    fp, gp = _primitive_int(list(f)), _primitive_int(list(g))
    bound = 2 * min(_maxnorm(fp), _maxnorm(gp)) + 29
    x = max(min(bound, 99 * math.isqrt(bound)), 2 * min(_maxnorm(fp) // abs(fp[-1]), _maxnorm(gp) // abs(gp[-1])) + 2)
    for _ in range(6):
        ff, gg = _eval_int(fp, x), _eval_int(gp, x)
        if ff and gg:
            h = math.gcd(ff, gg)
            cand = []
            while h:
                d = h % x
                if d > x // 2:
                    d -= x
                cand.append(d)
                h = (h - d) // x
            cand = _primitive_int(cand) if cand else []
            if cand and _exact_div(fp, cand) is not None and _exact_div(gp, cand) is not None:
                return cand
        x = 73794 * x * math.isqrt(math.isqrt(x)) // 27011
    u = UniPoly(fp).gcd(UniPoly(gp))
    return to_int_coeffs(u)


def squarefree_part(a: list[int]) -> list[int]:
    a = _primitive_int(list(a))
    if len(a) <= 2:
        return a
    d = [k * c for k, c in enumerate(a)][1:]
    g = int_gcd(a, d)
    if len(g) == 1:
        return a
    return _primitive_int(_exact_div(a, g))


# -- integer factoring for divisor enumeration ------------------------------------


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _factor_small(n: int, trial_bound: int):
    """Factor |n| by trial division; None when a composite cofactor remains."""
    n = abs(n)
    out = {}
    q = 2
    while q * q <= n and q <= trial_bound:
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
        q += 1 if q == 2 else 2
    if n > 1:
        if q * q > n or _is_probable_prime(n):
            out[n] = out.get(n, 0) + 1
        else:
            return None
    return out


def _divisors(fac):
    ds = [1]
    for q, e in fac.items():
        ds = [d * q**k for d in ds for k in range(e + 1)]
    return ds


# -- p-adic machinery ---------------------------------------------------------------


def _hensel_lift(a, r, p, k):
    """Lift a simple root r of a mod p to a root mod p**k."""
    da = [i * c for i, c in enumerate(a)][1:]
    mod = p
    while mod < p**k:
        mod = min(mod * mod, p**k)
        fr = _eval_int(a, r) % mod
        dr = _eval_int(da, r) % mod
        r = (r - fr * pow(dr, -1, mod)) % mod
    return r, mod


def rational_reconstruct(u: int, m: int, num_bound: int, den_bound: int):
    """n/d with n = u*d mod m, |n| <= num_bound, 0 < d <= den_bound; or None."""
    r0, r1 = m, u % m
    s0, s1 = 0, 1
    while r1 > num_bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > den_bound:
        return None
    if math.gcd(r1, s1) != 1 and r1 != 0:
        return None
    return Fraction(r1, s1)


def _cauchy_bound(a) -> Fraction:
    lc = abs(a[-1])
    return 1 + max(Fraction(abs(c), lc) for c in a[:-1])


def _good_prime(a, *, start=3, square_of=None, avoid=1):
    """Smallest prime keeping a squarefree with unit leading coefficient
    (and with ``square_of`` a nonzero square residue)."""
    for p in modp.small_primes(start):
        if a[-1] % p == 0 or avoid % p == 0:
            continue
        if square_of is not None and modp.legendre(square_of, p) != 1:
            continue
        ap = modp.strip([v % p for v in a])
        if modp.is_squarefree(ap, p):
            return p
    raise RuntimeError("unreachable: no good prime")


def _padic_rational_roots(a):
    """Rational roots of a squarefree primitive integer polynomial with a(0) != 0."""
    lc, c0 = abs(a[-1]), abs(a[0])
    cb = _cauchy_bound(a)
    num_bound = min(c0, math.ceil(cb * lc))
    den_bound = lc
    p = _good_prime(a)
    ap = [v % p for v in a]
    base = modp.roots(ap, p)
    if not base:
        return []
    k = 1
    while p**k <= 2 * num_bound * den_bound:
        k += 1
    out = []
    for r in base:
        u, m = _hensel_lift(a, r, p, k)
        cand = rational_reconstruct(u, m, num_bound, den_bound)
        if cand is not None and _eval_frac(a, cand) == 0:
            out.append(cand)
    return out


def _eval_frac(a, x: Fraction):
    """Exact a(x) for x = n/d, scaled by d**deg (sign-preserving zero test)."""
    n, d = x.numerator, x.denominator
    acc = 0
    dp = 1
    for c in reversed(a):
        acc = acc * n + c * dp
        dp *= d
    # acc = d**deg * a(x) up to exact scaling
    return acc


def _divisor_rational_roots(a, cap, trial_bound):
    lc, c0 = abs(a[-1]), abs(a[0])
    flc = _factor_small(lc, trial_bound)
    fc0 = _factor_small(c0, trial_bound)
    if flc is None or fc0 is None:
        return None
    count = 1
    for fac in (flc, fc0):
        for e in fac.values():
            count *= e + 1
    if count > cap:
        return None
    out = []
    for q in _divisors(flc):
        for n in _divisors(fc0):
            if math.gcd(n, q) != 1:
                continue
            for s in (n, -n):
                x = Fraction(s, q)
                if _eval_frac(a, x) == 0:
                    out.append(x)
    return out


def root_multiplicity(f: UniPoly, r) -> int:
    m = 0
    g = f
    while not g.is_zero() and g(r) == 0:
        m += 1
        g = g.derivative()
    return m


def rational_roots(f: UniPoly, *, divisor_cap: int = 20000, trial_bound: int = 10**5,
                   method: str = "auto") -> RationalRoots:
    """Rational roots of f with multiplicities, plus the rational-root-free cofactor."""
    if f.is_zero():
        raise ValueError("rational_roots of the zero polynomial")
    if f.degree <= 0:
        return RationalRoots([], f)
    a = to_int_coeffs(f)
    found: list[Fraction] = []
    v0 = 0
    while a[v0] == 0:
        v0 += 1
    if v0:
        found.append(Fraction(0))
    a = a[v0:]
    used, overflow = "divisors", False
    if len(a) > 1:
        sq = squarefree_part(a)
        roots = None
        if method in ("auto", "divisors"):
            roots = _divisor_rational_roots(sq, divisor_cap, trial_bound)
            if roots is None:
                overflow = True
        if roots is None:
            if method == "divisors":
                roots = []
            else:
                used = "p-adic"
                roots = _padic_rational_roots(sq)
        found.extend(roots)
    found = sorted(set(found))
    out = []
    cof = f
    for r in found:
        m = root_multiplicity(f, r)
        out.append((r, m))
        cof = cof.exquo(UniPoly((-r, 1), f.var) ** m)
    notes = []
    if overflow:
        notes.append("divisor enumeration exceeded its budget; p-adic search used")
    return RationalRoots(out, cof, used, overflow, notes)


# -- quadratic roots -------------------------------------------------------------


def quadratic_factors(f: UniPoly, D: int) -> list[UniPoly]:
    """Monic irreducible quadratic factors of f over Q splitting in Q(sqrt(D))."""
    if f.degree < 2:
        return []
    a = squarefree_part(to_int_coeffs(f))
    v0 = 0
    while a[v0] == 0:
        v0 += 1
    a = a[v0:]
    if len(a) < 3:
        return []
    lc = abs(a[-1])
    cb = _cauchy_bound(a)
    cbi = math.ceil(cb)
    p = _good_prime(a, square_of=D, avoid=2 * D)
    base = modp.roots([v % p for v in a], p)
    if len(base) < 2:
        return []
    # s = r1 + r2 and q = r1 r2 have denominators dividing lc
    num_bound = lc * max(2 * cbi, cbi * cbi)
    k = 1
    while p**k <= 2 * num_bound * lc:
        k += 1
    lifted = []
    for r in base:
        u, m = _hensel_lift(a, r, p, k)
        lifted.append(u)
    M = p**k
    out = []
    seen = set()
    for i in range(len(lifted)):
        for j in range(i + 1, len(lifted)):
            s = rational_reconstruct((lifted[i] + lifted[j]) % M, M, num_bound, lc)
            q = rational_reconstruct(lifted[i] * lifted[j] % M, M, num_bound, lc)
            if s is None or q is None:
                continue
            disc = s * s - 4 * q
            if disc == 0:
                continue
            if not _is_D_times_square(disc, D):
                continue
            quad = UniPoly((q, -s, 1), f.var)
            if quad in seen:
                continue
            if quad.divides(f):
                seen.add(quad)
                out.append(quad)
    return sorted(out, key=lambda u: (u[1], u[0]))


def _is_D_times_square(x: Fraction, D: int) -> bool:
    y = Fraction(x) / D
    return y > 0 and perfect_power(y, 2) is not None


def roots_of_quadratic(quad: UniPoly, D: int):
    """The two roots of a monic quadratic with discriminant D * square."""
    s, q = -quad[1], quad[0]
    disc = s * s - 4 * q
    b = perfect_power(Fraction(disc) / D, 2)
    if b is None:
        raise ValueError("discriminant is not D times a square")
    half = Fraction(1, 2)
    return [QuadElt.make(s * half, -b * half, D), QuadElt.make(s * half, b * half, D)]


def field_roots(f: UniPoly, fld: Field) -> list:
    """All roots of f in the field (Q or Q(sqrt(D))) with multiplicities."""
    if f.is_zero():
        raise ValueError("roots of the zero polynomial")
    quad_coeffs = any(isinstance(c, QuadElt) and c.b != 0 for c in f.coeffs)
    if quad_coeffs:
        D = next(c.D for c in f.coeffs if isinstance(c, QuadElt) and c.b != 0)
        if fld.D != D:
            raise ValueError("polynomial coefficients lie outside the requested field")
        norm = f * f.conjugate()
        norm = norm.map_coeffs(lambda c: c.a if isinstance(c, QuadElt) else c)
        cands = [r for r, _ in field_roots(norm, fld)]
        out = []
        for r in cands:
            if f(r) == 0:
                out.append((r, root_multiplicity(f, r)))
        return _sort_roots(out)
    rr = rational_roots(f)
    out = list(rr.roots)
    if fld.D is not None and rr.cofactor.degree >= 2:
        for quad in quadratic_factors(rr.cofactor, fld.D):
            for r in roots_of_quadratic(quad, fld.D):
                out.append((r, root_multiplicity(f, r)))
    return _sort_roots(out)


def _sort_roots(rs):
    def key(item):
        r = item[0]
        if isinstance(r, QuadElt):
            return (1, max(abs(r.a.numerator), r.a.denominator, abs(r.b.numerator), r.b.denominator), r.a, r.b)
        return (0, max(abs(Fraction(r).numerator), Fraction(r).denominator), Fraction(r), 0)

    return sorted(rs, key=key)


# -- degree patterns ---------------------------------------------------------------


def modular_degree_pattern(f: UniPoly, p: int) -> list[int]:
    """Degrees of the irreducible factors of f mod p (f squarefree mod p)."""
    if f.degree <= 0:
        return []
    if any(isinstance(c, QuadElt) and c.b != 0 for c in f.coeffs):
        raise TypeError("degree patterns are computed for rational polynomials")
    coeffs = [Fraction(c) for c in f.coeffs]
    fp = modp.reduce(coeffs, p)
    if len(fp) != len(coeffs):
        raise modp.BadPrimeError(f"{p} divides the leading coefficient")
    if not modp.is_squarefree(fp, p):
        raise modp.BadPrimeError(f"{p} divides the discriminant")
    return modp.distinct_degree_pattern(fp, p)


def auto_degree_pattern(f: UniPoly, start: int = 3) -> tuple[int, list[int]]:
    """Degree pattern of the squarefree part of f at the first good prime."""
    sq = UniPoly(squarefree_part(to_int_coeffs(f)), f.var)
    for p in modp.small_primes(start):
        try:
            return p, modular_degree_pattern(sq, p)
        except modp.BadPrimeError:
            continue
    raise RuntimeError("unreachable")


def is_valid_D(D: int) -> bool:
    return D != 1 and is_squarefree(D)
