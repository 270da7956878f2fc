"""Exact integer and rational matrix arithmetic.

Everything here works on plain Python integers (arbitrary precision) or
``fractions.Fraction``; no floating point is used anywhere.  Matrices are
immutable tuples of tuples of ints.
"""

from __future__ import annotations

from fractions import Fraction

IntMatrix = tuple[tuple[int, ...], ...]


class DegenerateForm(ValueError):
    """Raised when a nondegenerate symmetric form was expected."""


def as_matrix(rows) -> IntMatrix:
    """Normalize a nested sequence of ints into an IntMatrix, validating shape."""
    out = tuple(tuple(int(x) for x in row) for row in rows)
    if out and any(len(row) != len(out[0]) for row in out):
        raise ValueError("ragged matrix")
    return out


def identity(n: int) -> IntMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zeros(rows: int, cols: int) -> IntMatrix:
    return tuple((0,) * cols for _ in range(rows))


def dims(m: IntMatrix) -> tuple[int, int]:
    return (len(m), len(m[0]) if m else 0)


def transpose(m: IntMatrix) -> IntMatrix:
    return tuple(zip(*m)) if m else ()


def mat_mul(a, b):
    """Matrix product; works for int or Fraction entries."""
    if not a or not b:
        return ()
    bt = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def mat_vec(m, v):
    return tuple(sum(x * y for x, y in zip(row, v)) for row in m)


def scale(m: IntMatrix, t: int) -> IntMatrix:
    return tuple(tuple(t * x for x in row) for row in m)


def block_diag(blocks) -> IntMatrix:
    """Block-diagonal assembly of square matrices."""
    sizes = [len(b) for b in blocks]
    n = sum(sizes)
    out = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[off + i][off + j] = x
        off += len(b)
    return as_matrix(out)


def is_symmetric(m: IntMatrix) -> bool:
    r, c = dims(m)
    return r == c and all(m[i][j] == m[j][i] for i in range(r) for j in range(i))


def det_exact(m: IntMatrix) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    n, c = dims(m)
    if n != c:
        raise ValueError("determinant of non-square matrix")
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _min_pivot(a, t, rows, cols):
    """Nonzero entry of the trailing block minimizing (|value|, i, j); None if all zero."""
    best = None
    for i in range(t, rows):
        for j in range(t, cols):
            if a[i][j] != 0:
                key = (abs(a[i][j]), i, j)
                if best is None or key < best[0]:
                    best = (key, i, j)
    return None if best is None else (best[1], best[2])


def smith_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form with transforms.

    Returns (U, D, V) with U·m·V = D, U and V unimodular, and D diagonal with
    nonnegative entries d1 | d2 | ... .  Pivot selection is deterministic
    (smallest absolute value, then position), so the transforms are
    reproducible.
    """
    rows, cols = dims(m)
    a = [list(row) for row in m]
    u = [list(row) for row in identity(rows)]
    v = [list(row) for row in identity(cols)]

    def row_add(i, j, q):  # row_i += q * row_j
        a[i] = [x + q * y for x, y in zip(a[i], a[j])]
        u[i] = [x + q * y for x, y in zip(u[i], u[j])]

    def col_add(i, j, q):  # col_i += q * col_j
        for r in range(rows):
            a[r][i] += q * a[r][j]
        for r in range(cols):
            v[r][i] += q * v[r][j]

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def col_swap(i, j):
        for r in range(rows):
            a[r][i], a[r][j] = a[r][j], a[r][i]
        for r in range(cols):
            v[r][i], v[r][j] = v[r][j], v[r][i]

    t = 0
    while t < min(rows, cols):
        loc = _min_pivot(a, t, rows, cols)
        if loc is None:
            break
        i, j = loc
        if i != t:
            row_swap(t, i)
        if j != t:
            col_swap(t, j)
        # Clear row and column t; swaps keep shrinking the pivot until exact.
        while True:
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    row_add(i, t, -q)
                    if a[i][t] != 0:
                        row_swap(t, i)
                        dirty = True
            for j in range(t + 1, cols):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    col_add(j, t, -q)
                    if a[t][j] != 0:
                        col_swap(t, j)
                        dirty = True
            if dirty:
                continue
            # Enforce divisibility of the trailing block by the pivot.
            culprit = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if a[i][j] % a[t][t] != 0:
                        culprit = i
                        break
                if culprit is not None:
                    break
            if culprit is None:
                break
            row_add(t, culprit, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1

    d = [[a[i][j] if i == j else 0 for j in range(cols)] for i in range(rows)]
    return as_matrix(u), as_matrix(d), as_matrix(v)


def signature_of_symmetric(m: IntMatrix) -> tuple[int, int]:
    """Signature (s_plus, s_minus) of a nondegenerate symmetric integer matrix.

    Computed by exact congruence diagonalization over the rationals.  When all
    remaining diagonal entries vanish (as happens for even lattices such as the
    hyperbolic plane) a row/column of an off-diagonal entry is added in first,
    which splits the 2x2 hyperbolic block exactly.
    """
    n, c = dims(m)
    if n != c or not is_symmetric(m):
        raise ValueError("signature requires a symmetric square matrix")
    if det_exact(m) == 0:
        raise DegenerateForm("matrix is singular")
    a = [[Fraction(x) for x in row] for row in m]

    def sym_add(i, j, q):  # row_i += q*row_j and col_i += q*col_j
        a[i] = [x + q * y for x, y in zip(a[i], a[j])]
        for r in range(n):
            a[r][i] += q * a[r][j]

    def sym_swap(i, j):
        a[i], a[j] = a[j], a[i]
        for r in range(n):
            a[r][i], a[r][j] = a[r][j], a[r][i]

    plus = minus = 0
    for k in range(n):
        if a[k][k] == 0:
            pivot_row = next((i for i in range(k + 1, n) if a[i][i] != 0), None)
            if pivot_row is not None:
                sym_swap(k, pivot_row)
            else:
                j = next(j for j in range(k + 1, n) if a[k][j] != 0)
                sym_add(k, j, Fraction(1))
        p = a[k][k]
        if p > 0:
            plus += 1
        else:
            minus += 1
        for i in range(k + 1, n):
            if a[i][k] != 0:
                sym_add(i, k, -a[i][k] / p)
    return plus, minus
