"""Exact linear algebra by fraction-free (Bareiss) elimination."""

from __future__ import annotations

from fractions import Fraction


def _div(a, b):
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r == 0:
            return q
        return Fraction(a, b)
    return a / b


def exact_rank_det(M) -> tuple[int, object]:
    """(rank, determinant) of a square matrix of exact scalars.

    One-step Bareiss elimination with row pivoting; every division is exact
    over an integral domain, and exact field division otherwise.
    """
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("exact_rank_det needs a square matrix")
    if n == 0:
        return 0, 1
    a = [list(row) for row in M]
    sign = 1
    prev = 1
    rank = 0
    row = 0
    for col in range(n):
        piv = next((r for r in range(row, n) if a[r][col] != 0), None)
        if piv is None:
            continue
        if piv != row:
            a[row], a[piv] = a[piv], a[row]
            sign = -sign
        p = a[row][col]
        for r in range(row + 1, n):
            for c in range(col + 1, n):
                a[r][c] = _div(p * a[r][c] - a[r][col] * a[row][c], prev)
            a[r][col] = 0
        prev = p
        row += 1
        rank += 1
    if rank < n:
        return rank, 0
    return rank, sign * a[n - 1][n - 1]


def solve_linear(M, rhs):
    """Solve M x = rhs exactly (Gauss-Jordan); returns None when singular.

    Works for non-square systems too: returns one solution (free variables
    set to 0) when consistent, None otherwise.
    """
    rows = len(M)
    cols = len(M[0]) if rows else 0
    a = [list(M[i]) + [rhs[i]] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = a[r][c]
        a[r] = [_div(v, inv) for v in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if a[i][cols] != 0:
            return None
    x = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        x[c] = a[i][cols]
    return x


def nullspace(M) -> list[list]:
    """Basis of the right kernel of M over the coefficient field."""
    rows = len(M)
    cols = len(M[0]) if rows else 0
    a = [list(row) for row in M]
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = a[r][c]
        a[r] = [_div(v, inv) for v in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -a[i][fc]
        basis.append(v)
    return basis
