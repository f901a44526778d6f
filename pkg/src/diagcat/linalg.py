"""Exact linear algebra over Q and over Q[t].

Rational matrices are lists of lists of Fractions.  Univariate polynomial
matrices are lists of lists of dense coefficient lists (see poly.py).  The
polynomial path uses one-step fraction-free (Bareiss) elimination: divisions
by the previous pivot are exact by the Sylvester identity, and only scalar
row content is ever removed, which preserves that exactness.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as igcd

from .poly import (
    udeg, ueval, uexact_div, ugcd, uis_zero, umul, uscale, usub, utrim,
)


# ---------------------------------------------------------------------------
# rational matrices

def qrank(matrix):
    if not matrix or not matrix[0]:
        return 0
    m = [[Fraction(x) for x in row] for row in matrix]
    rows, cols = len(m), len(m[0])
    rank = 0
    for col in range(cols):
        pivot = None
        for r in range(rank, rows):
            if m[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = 1 / m[rank][col]
        m[rank] = [x * inv for x in m[rank]]
        for r in range(rows):
            if r != rank and m[r][col]:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
        if rank == rows:
            break
    return rank


def qrref(matrix):
    """Reduced row echelon form; returns (rref rows, pivot column list)."""
    if not matrix or not matrix[0]:
        return [], []
    m = [[Fraction(x) for x in row] for row in matrix]
    rows, cols = len(m), len(m[0])
    pivots = []
    rank = 0
    for col in range(cols):
        pivot = None
        for r in range(rank, rows):
            if m[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = 1 / m[rank][col]
        m[rank] = [x * inv for x in m[rank]]
        for r in range(rows):
            if r != rank and m[r][col]:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        pivots.append(col)
        rank += 1
        if rank == rows:
            break
    return m[:rank], pivots


def qnullspace(matrix):
    """Basis of the right kernel, each vector a list of Fractions."""
    if not matrix or not matrix[0]:
        return []
    cols = len(matrix[0])
    rref, pivots = qrref(matrix)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -rref[r][f]
        basis.append(v)
    return basis


def qsolve(matrix, rhs):
    """One exact solution of A x = b, or None when inconsistent."""
    if not matrix:
        return None if any(rhs) else []
    cols = len(matrix[0])
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    rref, pivots = qrref(aug)
    for row in rref:
        if all(x == 0 for x in row[:cols]) and row[cols]:
            return None
    x = [Fraction(0)] * cols
    for r, p in enumerate(pivots):
        if p == cols:
            return None
        x[p] = rref[r][cols]
    return x


def qmatinv(matrix):
    """Exact inverse of a square rational matrix, or None if singular."""
    n = len(matrix)
    aug = [[Fraction(x) for x in row] +
           [Fraction(1 if i == j else 0) for j in range(n)]
           for i, row in enumerate(matrix)]
    rref, pivots = qrref(aug)
    if len(pivots) < n or pivots[:n] != list(range(n)):
        return None
    return [row[n:] for row in rref[:n]]


def qdet(matrix):
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    m = [[Fraction(x) for x in row] for row in matrix]
    det = Fraction(1)
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if m[r][col]:
                pivot = r
                break
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            if m[r][col]:
                f = m[r][col] * inv
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return det


# ---------------------------------------------------------------------------
# univariate polynomial matrices

class PolyElimination:
    """Fraction-free echelonization record for a matrix over Q[t]."""

    def __init__(self, rank, pivots, echelon, pivot_cols, ncols):
        self.rank = rank
        self.pivots = pivots          # pivot polynomial per eliminated column
        self.echelon = echelon        # first `rank` working rows
        self.pivot_cols = pivot_cols
        self.ncols = ncols


def _scalar_primitive_rows(rows):
    """Scale each row by a rational so its entries are primitive-int polys.

    Scalar scaling keeps subsequent Bareiss divisions exact over Q[t];
    polynomial content removal would not, so it is never done here.
    """
    out = []
    for row in rows:
        den = 1
        for p in row:
            for c in p:
                c = Fraction(c)
                den = den * c.denominator // igcd(den, c.denominator)
        num = 0
        for p in row:
            for c in p:
                num = igcd(num, abs(int(Fraction(c) * den)))
        if num == 0:
            out.append([utrim([Fraction(c) for c in p]) for p in row])
            continue
        scale = Fraction(den, num)
        out.append([utrim([Fraction(c) * scale for c in p]) for p in row])
    return out


def poly_eliminate(matrix):
    """Fraction-free elimination of a matrix of coefficient lists.

    Pivots are chosen with minimal degree (ties: column then row index),
    which keeps intermediate degrees down.
    """
    if not matrix or not matrix[0]:
        return PolyElimination(0, [], [], [], 0)
    m = _scalar_primitive_rows([[utrim(list(p)) for p in row] for row in matrix])
    rows, cols = len(m), len(m[0])
    prev = [Fraction(1)]
    pivots = []
    pivot_cols = []
    rank = 0
    for _step in range(min(rows, cols)):
        best = None
        for r in range(rank, rows):
            for c in range(cols):
                if c in pivot_cols:
                    continue
                p = m[r][c]
                if uis_zero(p):
                    continue
                key = (udeg(p), c, r)
                if best is None or key < best[0]:
                    best = (key, r, c)
        if best is None:
            break
        _, prow, pcol = best
        m[rank], m[prow] = m[prow], m[rank]
        piv = m[rank][pcol]
        for r in range(rank + 1, rows):
            old = m[r]
            factor = old[pcol]
            new = []
            for c2 in range(cols):
                if uis_zero(factor):
                    num = umul(piv, old[c2])
                else:
                    num = usub(umul(piv, old[c2]), umul(factor, m[rank][c2]))
                new.append([0] if uis_zero(num) else uexact_div(num, prev))
            m[r] = new
        m[rank + 1:rows] = _scalar_primitive_rows(m[rank + 1:rows])
        prev = piv
        pivots.append(piv)
        pivot_cols.append(pcol)
        rank += 1
    return PolyElimination(rank, pivots, m[:rank], pivot_cols, cols)


def poly_generic_rank(matrix):
    return poly_eliminate(matrix).rank


def poly_rank_at(matrix, value):
    """Rank of the matrix specialized at t = value, over Q."""
    spec = [[ueval(p, Fraction(value)) for p in row] for row in matrix]
    return qrank(spec)


def poly_det(matrix):
    """Exact determinant of a square polynomial matrix, fraction-free."""
    n = len(matrix)
    if n == 0:
        return [Fraction(1)]
    if any(len(row) != n for row in matrix):
        raise ValueError("determinant needs a square matrix")
    m = [[utrim([Fraction(c) for c in p]) for p in row] for row in matrix]
    prev = [Fraction(1)]
    sign = 1
    for k in range(n - 1):
        best = None
        for r in range(k, n):
            p = m[r][k]
            if uis_zero(p):
                continue
            key = (udeg(p), r)
            if best is None or key < best[0]:
                best = (key, r)
        if best is None:
            return [Fraction(0)]
        _, prow = best
        if prow != k:
            m[k], m[prow] = m[prow], m[k]
            sign = -sign
        piv = m[k][k]
        for r in range(k + 1, n):
            factor = m[r][k]
            for c in range(k + 1, n):
                if uis_zero(factor):
                    num = umul(piv, m[r][c])
                else:
                    num = usub(umul(piv, m[r][c]), umul(factor, m[k][c]))
                m[r][c] = [0] if uis_zero(num) else uexact_div(num, prev)
            m[r][k] = [0]
        prev = piv
    out = m[n - 1][n - 1]
    return uscale(out, -1) if sign < 0 else utrim(out)


def _frac_reduce(num, den):
    g = ugcd(num, den)
    if udeg(g) > 0:
        num = uexact_div(num, g)
        den = uexact_div(den, g)
    return num, den


def poly_generic_nullspace(matrix):
    """Kernel basis over Q(t), each vector cleared to Q[t] entries."""
    elim = poly_eliminate(matrix)
    cols = elim.ncols
    free = [c for c in range(cols) if c not in elim.pivot_cols]
    basis = []
    for f in free:
        vec = [([Fraction(0)], [Fraction(1)]) for _ in range(cols)]
        vec[f] = ([Fraction(1)], [Fraction(1)])
        for r in reversed(range(elim.rank)):
            p = elim.pivot_cols[r]
            num, den = [Fraction(0)], [Fraction(1)]
            for c in range(cols):
                if c == p:
                    continue
                coeff = elim.echelon[r][c]
                vn, vd = vec[c]
                if uis_zero(vn) or uis_zero(coeff):
                    continue
                tn = umul(coeff, vn)
                num = usub(umul(num, vd), uscale(umul(tn, den), -1))
                den = umul(den, vd)
                num, den = _frac_reduce(num, den)
            piv = elim.echelon[r][p]
            vec[p] = _frac_reduce(uscale(num, -1), umul(den, piv))
        lcm = [Fraction(1)]
        for _, vd in vec:
            g = ugcd(lcm, vd)
            lcm = uexact_div(umul(lcm, vd), g)
        cleared = [umul(vn, uexact_div(lcm, vd)) for vn, vd in vec]
        # joint scalar normalization
        den = 1
        for p in cleared:
            for c in p:
                den = den * Fraction(c).denominator // igcd(den, Fraction(c).denominator)
        num = 0
        for p in cleared:
            for c in p:
                num = igcd(num, abs(int(Fraction(c) * den)))
        if num:
            scale = Fraction(den, num)
            cleared = [utrim([Fraction(c) * scale for c in p]) for p in cleared]
        basis.append(cleared)
    return basis
