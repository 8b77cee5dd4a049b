"""Dense exact linear algebra over the finite fields of `fields`.

Matrices are lists of rows; entries are integer field codes.  All sizes in
this package are small, so plain cubic Gaussian elimination is used
throughout; prime fields get a direct modular fast path.
"""

from __future__ import annotations

from .fields import Field


def rref(field: Field, rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form (copy) and the list of pivot columns."""
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots: list[int] = []
    r = 0
    if field.k == 1:
        p = field.p
        for c in range(ncols):
            pr = next((i for i in range(r, nrows) if m[i][c] % p), None)
            if pr is None:
                continue
            m[r], m[pr] = m[pr], m[r]
            inv = pow(m[r][c], p - 2, p)
            m[r] = [v * inv % p for v in m[r]]
            row_r = m[r]
            for i in range(nrows):
                if i != r and m[i][c]:
                    f = m[i][c]
                    row_i = m[i]
                    m[i] = [(a - f * b) % p for a, b in zip(row_i, row_r)]
            pivots.append(c)
            r += 1
            if r == nrows:
                break
    else:
        mul, sub, invf = field.mul, field.sub, field.inv
        for c in range(ncols):
            pr = next((i for i in range(r, nrows) if m[i][c]), None)
            if pr is None:
                continue
            m[r], m[pr] = m[pr], m[r]
            inv = invf(m[r][c])
            m[r] = [mul(v, inv) for v in m[r]]
            row_r = m[r]
            for i in range(nrows):
                if i != r and m[i][c]:
                    f = m[i][c]
                    row_i = m[i]
                    m[i] = [sub(a, mul(f, b)) for a, b in zip(row_i, row_r)]
            pivots.append(c)
            r += 1
            if r == nrows:
                break
    return m, pivots


def rank(field: Field, rows: list[list[int]]) -> int:
    return len(rref(field, rows)[1])


def kernel_basis(field: Field, rows: list[list[int]], ncols: int) -> list[list[int]]:
    """Canonical basis of the right kernel of the matrix.

    Each basis vector has a 1 in one free column and 0 in the others, so the
    output is deterministic given the row space.
    """
    if not rows:
        return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    m, pivots = rref(field, rows)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    neg = field.neg
    out = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = neg(m[i][fc])
        out.append(v)
    return out


def solve(field: Field, rows: list[list[int]], rhs: list[int]):
    """One solution of A x = rhs with free variables set to 0, or None."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    ncols = len(rows[0]) if rows else 0
    m, pivots = rref(field, aug)
    if pivots and pivots[-1] == ncols:
        return None
    x = [0] * ncols
    for i, pc in enumerate(pivots):
        x[pc] = m[i][ncols]
    return x


def mat_mul(field: Field, a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    mul, add = field.mul, field.add
    nb = len(b[0])
    out = []
    for row in a:
        acc = [0] * nb
        for i, c in enumerate(row):
            if c:
                bi = b[i]
                for j in range(nb):
                    if bi[j]:
                        acc[j] = add(acc[j], mul(c, bi[j]))
        out.append(acc)
    return out


def mat_vec(field: Field, a: list[list[int]], v: list[int]) -> list[int]:
    mul, add = field.mul, field.add
    out = []
    for row in a:
        acc = 0
        for c, x in zip(row, v):
            if c and x:
                acc = add(acc, mul(c, x))
        out.append(acc)
    return out


def det(field: Field, rows: list[list[int]]) -> int:
    """Determinant by elimination (square matrix)."""
    n = len(rows)
    m = [list(r) for r in rows]
    mul, sub, invf, neg = field.mul, field.sub, field.inv, field.neg
    d = 1
    for c in range(n):
        pr = next((i for i in range(c, n) if m[i][c]), None)
        if pr is None:
            return 0
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            d = neg(d)
        d = mul(d, m[c][c])
        inv = invf(m[c][c])
        for i in range(c + 1, n):
            if m[i][c]:
                f = mul(m[i][c], inv)
                m[i] = [sub(a, mul(f, b)) for a, b in zip(m[i], m[c])]
    return d
