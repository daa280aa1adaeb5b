"""Polynomials over a prime field GF(p), as lists of ints in [0, p), low
degree first.  Used for degree-pattern reports and for choosing primes in
p-adic root searches."""

from __future__ import annotations


class BadPrimeError(ValueError):
    """The prime divides the leading coefficient or the discriminant."""


def strip(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def reduce(coeffs, p):
    """Reduce rational/int coefficients mod p (denominators must be units)."""
    out = []
    for c in coeffs:
        num, den = c.numerator, c.denominator
        if den % p == 0:
            raise BadPrimeError(f"{p} divides a coefficient denominator")
        out.append(num * pow(den, -1, p) % p)
    return strip(out)


def add(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, v in enumerate(b):
        out[i] = (out[i] + v) % p
    return strip(out)


def sub(a, b, p):
    return add(a, [(-v) % p for v in b], p)


def mul(a, b, p):
    if not a or not b:
        return []
    if len(a) * len(b) < 256:
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return strip([v % p for v in out])
    # Kronecker substitution: all coefficients non-negative, no carries
    bits = 2 * p.bit_length() + min(len(a), len(b)).bit_length()
    kb = (bits + 7) // 8
    pa = int.from_bytes(b"".join(v.to_bytes(kb, "little") for v in a), "little")
    pb = int.from_bytes(b"".join(v.to_bytes(kb, "little") for v in b), "little")
    n = len(a) + len(b) - 1
    raw = (pa * pb).to_bytes(kb * n, "little")
    return strip([int.from_bytes(raw[i * kb : (i + 1) * kb], "little") % p for i in range(n)])


def divmod_(a, b, p):
    if not b:
        raise ZeroDivisionError("division by zero polynomial mod p")
    r = list(a)
    db = len(b) - 1
    if len(r) <= db:
        return [], strip(r)
    inv = pow(b[-1], -1, p)
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k] % p
        if c == 0:
            continue
        c = c * inv % p
        q[k - db] = c
        base = k - db
        for j in range(db + 1):
            r[base + j] -= c * b[j]
    return strip(q), strip([v % p for v in r[:db]])


def rem(a, b, p):
    return divmod_(a, b, p)[1]


def monic(a, p):
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return [v * inv % p for v in a]


def gcd(a, b, p):
    a, b = strip(a), strip(b)
    while b:
        a, b = b, rem(a, b, p)
    return monic(a, p)


def derivative(a, p):
    return strip([(k * c) % p for k, c in enumerate(a)][1:])


def powmod(base, e, f, p):
    result = [1]
    base = rem(base, f, p)
    while e:
        if e & 1:
            result = rem(mul(result, base, p), f, p)
        base = rem(mul(base, base, p), f, p)
        e >>= 1
    return result


def evaluate(a, x, p):
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def is_squarefree(a, p) -> bool:
    return len(gcd(a, derivative(a, p), p)) == 1


def distinct_degree_pattern(f, p) -> list[int]:
    """Sorted degrees of the irreducible factors of a squarefree f mod p."""
    f = monic(strip(f), p)
    pattern: list[int] = []
    x = [0, 1]
    h = x
    d = 1
    while len(f) - 1 >= 2 * d:
        h = powmod(h, p, f, p)
        g = gcd(f, sub(h, x, p), p)
        if len(g) > 1:
            pattern.extend([d] * ((len(g) - 1) // d))
            f = divmod_(f, g, p)[0]
            h = rem(h, f, p)
        d += 1
    if len(f) > 1:
        pattern.append(len(f) - 1)
    return sorted(pattern)


def roots(f, p) -> list[int]:
    """All roots in GF(p) (brute force over residues for small p, else via
    gcd with x^p - x and trial evaluation)."""
    f = strip(f)
    if len(f) <= 1:
        return []
    if p <= 4096:
        return [r for r in range(p) if evaluate(f, r, p) == 0]
    g = gcd(f, sub(powmod([0, 1], p, f, p), [0, 1], p), p)
    out = []
    # split by gcd with (x + a)^((p-1)/2) - 1, deterministic shifts
    stack = [g]
    a = 0
    while stack:
        h = stack.pop()
        if len(h) == 1:
            continue
        if len(h) == 2:
            out.append((-h[0]) * pow(h[1], -1, p) % p)
            continue
        while True:
            a += 1
            w = sub(powmod([a, 1], (p - 1) // 2, h, p), [1], p)
            s = gcd(h, w, p)
            if 1 < len(s) < len(h):
                stack.append(s)
                stack.append(divmod_(h, s, p)[0])
                break
    return sorted(out)


def small_primes(start: int = 3):
    """Primes >= start in increasing order."""
    n = max(start, 2)
    while True:
        if n > 1 and all(n % q for q in range(2, int(n**0.5) + 1)):
            yield n
        n += 1


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1
