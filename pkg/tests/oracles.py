"""Independent brute-force oracles shared by the unit and acceptance tests."""

from __future__ import annotations

import math
import random
from fractions import Fraction

from kuwatasurf.exactmath.unipoly import UniPoly
from kuwatasurf.kuwata import FamilyError, KuwataFamily, corq_params
from kuwatasurf.weierstrass import WeierstrassSurface


def brute_force_x(S: WeierstrassSurface, bound: int, squares: int) -> set[UniPoly]:
    """x = a t^2 + b t + c with integer b, c in [-bound, bound] and a = k^2 <= squares^2
    such that x^3 + A x + B is a square; integer sample points prefilter."""
    A = [int(c) for c in S.A.coeffs]
    B = [int(c) for c in S.B.coeffs]

    def ev(coeffs, v):
        return sum(c * v**i for i, c in enumerate(coeffs))

    samples = (0, 1, -1, 2, -2, 3)
    Av = [ev(A, v) for v in samples]
    Bv = [ev(B, v) for v in samples]
    hits = set()
    for k in range(squares + 1):
        a = k * k
        for b in range(-bound, bound + 1):
            for c in range(-bound, bound + 1):
                ok = True
                for v, av, bv in zip(samples, Av, Bv):
                    xv = a * v * v + b * v + c
                    r = xv**3 + av * xv + bv
                    if r < 0 or math.isqrt(r) ** 2 != r:
                        ok = False
                        break
                if not ok:
                    continue
                x = UniPoly([c, b, a])
                if S.rhs(x).sqrt() is not None:
                    hits.add(x)
    return hits


def in_grid(x: UniPoly, bound: int, squares: int) -> bool:
    c = [Fraction(v) for v in x.coeffs] + [Fraction(0)] * 3
    if any(v.denominator != 1 for v in c[:3]):
        return False
    k = math.isqrt(int(c[2])) if c[2] >= 0 else -1
    return k * k == c[2] and k <= squares and abs(c[1]) <= bound and abs(c[0]) <= bound


def brute_force_corq(limit: int = 6):
    """Small (rho, tau, u) passing the four square conditions with distinct j."""
    vals = sorted({Fraction(p, q) for p in range(1, limit + 1) for q in range(1, 3)} - {Fraction(1)})
    hits = []
    for rho in vals:
        for tau in vals:
            if rho == tau:
                continue
            for u in (1, 2):
                c = corq_params(rho, tau, u)
                if c.valid:
                    hits.append((rho, tau, Fraction(u)))
    return hits


def random_tuples(n: int, seed: int = 7):
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        lam, mu, nu, xi = (Fraction(rng.randint(1, 9), rng.randint(1, 3)) for _ in range(4))
        if len({lam, mu}) < 2 or len({nu, xi}) < 2:
            continue
        try:
            fam = KuwataFamily.from_legendre(lam, mu, nu, xi)
        except FamilyError:
            continue
        out.append(fam)
    return out
