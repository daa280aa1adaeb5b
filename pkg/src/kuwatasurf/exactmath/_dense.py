"""Dense integer polynomials in one variable, as tuples (low degree first).

These are the coefficient ring of the bivariate resultant hot path.  Large
products and exact quotients go through Kronecker substitution so the work
lands in CPython's big-integer multiply.
"""

from __future__ import annotations

import math

_KRONECKER_MIN = 400  # len(a) * len(b) above which packing pays off


def strip(c) -> tuple:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, v in enumerate(b):
        out[i] += v
    return strip(out)


def neg(a):
    return tuple(-v for v in a)


def sub(a, b):
    return add(a, neg(b))


try:  # GMP big integers when available; plain ints otherwise (same results)
    from gmpy2 import mpz as _big
except ImportError:  # pragma: no cover
    _big = int


def _slot_bytes(bits: int) -> int:
    return (bits + 8) // 8


def _pack(a, kb):
    """Evaluate a at 2**(8*kb); coefficients must satisfy |c| < 2**(8*kb-1)."""
    half = 1 << (8 * kb - 1)
    raw = b"".join((v + half).to_bytes(kb, "little") for v in a)
    offset = int.from_bytes(half.to_bytes(kb, "little") * len(a), "little")
    return _big(int.from_bytes(raw, "little") - offset)


def _unpack(n, kb, length):
    half = 1 << (8 * kb - 1)
    offset = int.from_bytes(half.to_bytes(kb, "little") * length, "little")
    n = int(n) + offset
    if n < 0 or n.bit_length() > 8 * kb * length:
        raise ArithmeticError("Kronecker unpacking overflow")
    raw = n.to_bytes(kb * length, "little")
    return strip(
        int.from_bytes(raw[i * kb : (i + 1) * kb], "little") - half for i in range(length)
    )


def _maxbits(a):
    return max((abs(v).bit_length() for v in a), default=0)


def mul(a, b):
    if not a or not b:
        return ()
    if len(a) * len(b) < _KRONECKER_MIN:
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return strip(out)
    kb = _slot_bytes(_maxbits(a) + _maxbits(b) + min(len(a), len(b)).bit_length() + 1)
    return _unpack(_pack(a, kb) * _pack(b, kb), kb, len(a) + len(b) - 1)


def scale(a, c):
    if c == 0:
        return ()
    return tuple(v * c for v in a)


def pow_(a, n):
    result = (1,)
    while n:
        if n & 1:
            result = mul(result, a)
        a = mul(a, a)
        n >>= 1
    return result


def _exquo_school(a, b):
    da, db = len(a) - 1, len(b) - 1
    r = list(a)
    q = [0] * (da - db + 1)
    lb = b[-1]
    for k in range(da - db, -1, -1):
        c = r[k + db]
        if c == 0:
            continue
        qk, rem = divmod(c, lb)
        if rem:
            raise ArithmeticError("inexact dense division")
        q[k] = qk
        for j in range(db + 1):
            r[k + j] -= qk * b[j]
    if any(r):
        raise ArithmeticError("inexact dense division")
    return strip(q)


def exquo(a, b):
    """Exact quotient a / b over Z[x]; raises ArithmeticError otherwise."""
    if not b:
        raise ZeroDivisionError("dense division by zero")
    if not a:
        return ()
    if len(b) == 1:
        c = b[0]
        out = []
        for v in a:
            q, r = divmod(v, c)
            if r:
                raise ArithmeticError("inexact dense division")
            out.append(q)
        return tuple(out)
    if len(a) < len(b):
        raise ArithmeticError("inexact dense division")
    dq = len(a) - len(b)
    if (dq + 1) * len(b) < _KRONECKER_MIN:
        return _exquo_school(a, b)
    # Quotient coefficients are usually no larger than the dividend's; start
    # there and widen up to the Mignotte bound |q_i| <= 2**deg(q) * ||a||_2.
    abits = _maxbits(a)
    norm_bits = (sum(v * v for v in a).bit_length() + 1) // 2 + 1
    limit = dq + norm_bits + 1
    bits = abits + 2
    while True:
        bits = min(bits, limit)
        kb = _slot_bytes(bits)
        pq, rem = divmod(_pack(a, kb), _pack(b, kb))
        if not rem:
            try:
                q = _unpack(pq, kb, dq + 1)
            except ArithmeticError:
                q = None
            if q is not None and mul(q, b) == tuple(a):
                return q
        if bits >= limit:
            raise ArithmeticError("inexact dense division")
        bits *= 2


def content(a) -> int:
    g = 0
    for v in a:
        g = math.gcd(g, v)
        if g == 1:
            break
    return g
