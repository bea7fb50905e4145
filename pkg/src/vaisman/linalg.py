"""Exact rational linear algebra.

Matrices are tuples of row tuples of :class:`fractions.Fraction`; vectors are
tuples of Fractions.  Elimination is fraction-free (Bareiss) on integer rows
obtained by clearing denominators, so intermediate coefficients stay bounded
by minors of the input.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

Vector = tuple
Matrix = tuple


def frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass int, Fraction or 'p/q' string")
    return Fraction(x)


def vector(values: Iterable) -> Vector:
    return tuple(frac(v) for v in values)


def matrix(rows: Iterable[Iterable]) -> Matrix:
    out = tuple(vector(r) for r in rows)
    if out and len({len(r) for r in out}) != 1:
        raise ValueError("ragged matrix")
    return out


def zeros(n: int, m: int | None = None) -> Matrix:
    m = n if m is None else m
    return tuple((Fraction(0),) * m for _ in range(n))


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def unit(n: int, i: int) -> Vector:
    return tuple(Fraction(int(k == i)) for k in range(n))


def shape(a: Matrix) -> tuple[int, int]:
    return len(a), (len(a[0]) if a else 0)


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a)) if a else ()


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt) for row in a)


def matvec(a: Matrix, v: Sequence) -> Vector:
    return tuple(sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a)


def madd(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(a, b))


def msub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(a, b))


def mscale(c, a: Matrix) -> Matrix:
    c = frac(c)
    return tuple(tuple(c * x for x in r) for r in a)


def trace(a: Matrix) -> Fraction:
    return sum((a[i][i] for i in range(len(a))), Fraction(0))


def is_zero_matrix(a: Matrix) -> bool:
    return all(x == 0 for r in a for x in r)


def vadd(u: Sequence, v: Sequence) -> Vector:
    return tuple(x + y for x, y in zip(u, v))


def vsub(u: Sequence, v: Sequence) -> Vector:
    return tuple(x - y for x, y in zip(u, v))


def vscale(c, v: Sequence) -> Vector:
    c = frac(c)
    return tuple(c * x for x in v)


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((x * y for x, y in zip(u, v)), Fraction(0))


def outer(u: Sequence, v: Sequence) -> Matrix:
    """Matrix of the endomorphism ``w -> v(w) u`` for a covector ``v``."""
    return tuple(tuple(x * y for y in v) for x in u)


def lincomb(coeffs: Sequence, vectors: Sequence[Sequence], n: int) -> Vector:
    out = [Fraction(0)] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for i, x in enumerate(v):
                out[i] += c * x
    return tuple(out)


def is_symmetric(a: Matrix) -> bool:
    return all(a[i][j] == a[j][i] for i in range(len(a)) for j in range(i))


def is_antisymmetric(a: Matrix) -> bool:
    return all(a[i][j] == -a[j][i] for i in range(len(a)) for j in range(i, len(a)))


# -- fraction-free elimination ------------------------------------------------

def _integer_rows(rows: Sequence[Sequence]) -> list[list[int]]:
    out = []
    for r in rows:
        r = [frac(x) for x in r]
        m = lcm(1, *(x.denominator for x in r))
        out.append([int(x * m) for x in r])
    return out


def _bareiss(rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int], int]:
    """Fraction-free forward elimination in place.

    Returns the integer echelon rows, the pivot columns, and the sign of the
    row permutation used.
    """
    nrows = len(rows)
    pivots: list[int] = []
    prev = 1
    sign = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            rows[r], rows[p] = rows[p], rows[r]
            sign = -sign
        piv = rows[r][c]
        for i in range(r + 1, nrows):
            a = rows[i][c]
            row_i = rows[i]
            row_r = rows[r]
            for j in range(c, ncols):
                num = piv * row_i[j] - a * row_r[j]
                q, rem = divmod(num, prev)
                assert rem == 0, "Bareiss division must be exact"
                row_i[j] = q
        # columns left of c in rows below are already zero
        prev = piv
        pivots.append(c)
        r += 1
    return rows, pivots, sign


def rref(rows: Sequence[Sequence]) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form (nonzero rows only) and pivot columns."""
    rows = list(rows)
    if not rows:
        return (), ()
    ncols = len(rows[0])
    ints, pivots, _ = _bareiss(_integer_rows(rows), ncols)
    rank = len(pivots)
    red = [[Fraction(x) for x in ints[i]] for i in range(rank)]
    for i in range(rank - 1, -1, -1):
        c = pivots[i]
        p = red[i][c]
        red[i] = [x / p for x in red[i]]
        for k in range(i):
            f = red[k][c]
            if f:
                red[k] = [x - f * y for x, y in zip(red[k], red[i])]
    return tuple(tuple(r) for r in red), tuple(pivots)


def rank(rows: Sequence[Sequence]) -> int:
    rows = list(rows)
    if not rows:
        return 0
    _, pivots, _ = _bareiss(_integer_rows(rows), len(rows[0]))
    return len(pivots)


def det(a: Matrix) -> Fraction:
    n = len(a)
    if n == 0:
        return Fraction(1)
    if any(len(r) != n for r in a):
        raise ValueError("determinant of a non-square matrix")
    scale = Fraction(1)
    ints = []
    for r in a:
        r = [frac(x) for x in r]
        m = lcm(1, *(x.denominator for x in r))
        scale /= m
        ints.append([int(x * m) for x in r])
    rows, pivots, sign = _bareiss(ints, n)
    if len(pivots) < n:
        return Fraction(0)
    return sign * rows[n - 1][n - 1] * scale


def nullspace(a: Matrix, ncols: int | None = None) -> tuple[Vector, ...]:
    """Basis of ``{x : a x = 0}``, one vector per free column."""
    ncols = len(a[0]) if a else (ncols or 0)
    red, pivots = rref(a) if a else ((), ())
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return tuple(basis)


def solve(a: Matrix, b: Sequence) -> Vector | None:
    """One exact solution of ``a x = b`` (free variables set to 0), or None."""
    ncols = len(a[0]) if a else 0
    aug = [tuple(r) + (frac(y),) for r, y in zip(a, b)]
    if not aug:
        return (Fraction(0),) * ncols
    red, pivots = rref(aug)
    if pivots and pivots[-1] == ncols:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(red, pivots):
        x[p] = row[ncols]
    return tuple(x)


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    cols = []
    for i in range(n):
        x = solve(a, unit(n, i))
        if x is None:
            raise ZeroDivisionError("matrix is singular")
        cols.append(x)
    if rank(a) < n:
        raise ZeroDivisionError("matrix is singular")
    return transpose(tuple(cols))


def leading_minors(a: Matrix) -> tuple[Fraction, ...]:
    return tuple(det(tuple(r[:k] for r in a[:k])) for k in range(1, len(a) + 1))


def is_positive_definite(a: Matrix) -> bool:
    """Sylvester's criterion on the leading principal minors."""
    a = matrix(a)
    if not is_symmetric(a):
        raise ValueError("positive definiteness is only defined here for symmetric matrices")
    return all(m > 0 for m in leading_minors(a))


def inertia(a: Matrix) -> tuple[int, int, int]:
    """(positive, negative, zero) counts of a symmetric matrix by congruence."""
    a = [list(frac(x) for x in r) for r in a]
    if not is_symmetric(tuple(tuple(r) for r in a)):
        raise ValueError("inertia needs a symmetric matrix")
    n = len(a)
    pos = neg = 0
    active = list(range(n))
    while active:
        i = next((k for k in active if a[k][k] != 0), None)
        if i is None:
            pair = next(((k, l) for k in active for l in active if k != l and a[k][l] != 0), None)
            if pair is None:
                break
            k, l = pair
            # e_k -> e_k + e_l makes the diagonal entry 2 a_kl
            for m in range(n):
                a[k][m] += a[l][m]
            for m in range(n):
                a[m][k] += a[m][l]
            i = k
        p = a[i][i]
        if p > 0:
            pos += 1
        else:
            neg += 1
        active.remove(i)
        for k in active:
            f = a[k][i] / p
            if f:
                for m in range(n):
                    a[k][m] -= f * a[i][m]
                for m in range(n):
                    a[m][k] -= f * a[m][i]
    return pos, neg, n - pos - neg


def charpoly(a: Matrix) -> tuple[Fraction, ...]:
    """Coefficients of det(u I - a), highest degree first (Faddeev-LeVerrier)."""
    n = len(a)
    coeffs = [Fraction(1)]
    m = zeros(n)
    eye = identity(n)
    for k in range(1, n + 1):
        m = madd(matmul(a, m), mscale(coeffs[-1], eye))
        coeffs.append(-trace(matmul(a, m)) / k)
    return tuple(coeffs)


def fmt(x: Fraction) -> str:
    x = frac(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
