"""Exact integer linear algebra for chain-complex computations.

Everything here is exact: the fast path runs vectorized row operations
on int64 matrices with an overflow sentinel and falls back to Python
big integers the moment an update could exceed the int64 range.  No
floating point is used anywhere.

Rank computations may scale rows (rank is invariant); Smith normal form
uses unimodular operations only.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

import numpy as np

# An int64 row update  row <- piv*row - f*pivot_row  is safe when
# |piv|*max|row| + |f|*max|pivot_row| stays below this.
_SAFE = 1 << 62
# Re-measure actual magnitudes once the pessimistic running bound passes this.
_REMEASURE = 1 << 40


def _as_int64(mat) -> np.ndarray | None:
    a = np.asarray(mat)
    if a.dtype == object:
        if a.size and max((abs(int(x)) for x in a.flat), default=0) >= _REMEASURE:
            return None
        return a.astype(np.int64)
    return a.astype(np.int64, copy=True)


def rank(mat) -> int:
    """Exact rank over the rationals of an integer matrix."""
    a = _as_int64(mat)
    if a is None:
        return _rank_bigint([[int(x) for x in row] for row in np.asarray(mat)])
    if a.ndim != 2 or 0 in a.shape:
        return 0
    return _eliminate(a, want_echelon=False)[0]


def row_echelon(mat) -> tuple[np.ndarray, list[int]]:
    """Integer row-echelon form (rows may be scaled) and pivot columns."""
    a = _as_int64(mat)
    if a is None:
        raise ValueError("matrix entries too large for the echelon fast path")
    if a.ndim != 2 or 0 in a.shape:
        return a.reshape(a.shape if a.ndim == 2 else (0, 0)), []
    _, ech, pivots = _eliminate(a, want_echelon=True)
    return ech, pivots


def _eliminate(a: np.ndarray, want_echelon: bool):
    """Row elimination with unit-pivot preference.  Returns
    (rank, matrix, pivot_cols); escalates to bigint on overflow risk."""
    nr, nc = a.shape
    r = 0
    pivots: list[int] = []
    bound = int(np.abs(a).max()) if a.size else 0
    for c in range(nc):
        col = a[r:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        vals = col[nz]
        unit = np.nonzero(np.abs(vals) == 1)[0]
        pi = nz[unit[0]] if unit.size else nz[np.argmin(np.abs(vals))]
        p = r + int(pi)
        if p != r:
            a[[r, p]] = a[[p, r]]
        piv = int(a[r, c])
        rest = np.nonzero(a[r + 1 :, c])[0]
        if rest.size:
            rows = rest + r + 1
            fmax = int(np.abs(a[rows, c]).max())
            step = abs(piv) * bound + fmax * bound
            if step >= _SAFE or bound >= _REMEASURE:
                bound = int(np.abs(a[r:, c:]).max())
                fmax = int(np.abs(a[rows, c]).max())
                step = abs(piv) * bound + fmax * bound
                if step >= _SAFE:
                    big = [[int(x) for x in row] for row in a[r:]]
                    rk = _rank_bigint(big)
                    if want_echelon:
                        raise ValueError("entry growth too large for echelon fast path")
                    return r + rk, a, pivots
            f = a[rows, c : c + 1]
            if piv == 1:
                a[rows] -= f * a[r]
            elif piv == -1:
                a[rows] += f * a[r]
            else:
                a[rows] = a[rows] * piv - f * a[r]
            bound = step
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return r, a, pivots


def _rank_bigint(rows: list[list[int]]) -> int:
    """Fraction-free elimination with Python integers (no overflow)."""
    rows = [r[:] for r in rows if any(r)]
    rank_ = 0
    col = 0
    ncols = len(rows[0]) if rows else 0
    while rows and col < ncols:
        piv_i = None
        for i, row in enumerate(rows):
            if row[col]:
                if piv_i is None or abs(row[col]) < abs(rows[piv_i][col]):
                    piv_i = i
        if piv_i is None:
            col += 1
            continue
        piv_row = rows.pop(piv_i)
        p = piv_row[col]
        nxt = []
        for row in rows:
            if row[col]:
                f = row[col]
                row = [p * x - f * y for x, y in zip(row, piv_row)]
                g = 0
                for x in row:
                    g = gcd(g, x)
                if g > 1:
                    row = [x // g for x in row]
            if any(row):
                nxt.append(row)
        rows = nxt
        rank_ += 1
        col += 1
    return rank_


def kernel_basis(mat) -> list[np.ndarray]:
    """Primitive integer basis of the rational null space (column vectors
    returned as 1-d arrays of Python ints)."""
    a = np.asarray(mat)
    if a.ndim != 2:
        raise ValueError("kernel_basis expects a matrix")
    nr, nc = a.shape
    if nc == 0:
        return []
    if nr == 0 or not np.any(a):
        return [np.array([1 if i == j else 0 for i in range(nc)], dtype=object) for j in range(nc)]
    ech, pivots = row_echelon(a)
    free = [c for c in range(nc) if c not in pivots]
    out = []
    for fc in free:
        x = [Fraction(0)] * nc
        x[fc] = Fraction(1)
        # rows are in echelon order: solve from the bottom up
        for ri in range(len(pivots) - 1, -1, -1):
            pc = pivots[ri]
            s = sum(Fraction(int(ech[ri, c])) * x[c] for c in range(pc + 1, nc) if x[c])
            x[pc] = -s / int(ech[ri, pc])
        denom = 1
        for v in x:
            denom = denom * v.denominator // gcd(denom, v.denominator)
        ints = [int(v * denom) for v in x]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if g > 1:
            ints = [v // g for v in ints]
        out.append(np.array(ints, dtype=object))
    return out


def in_column_span(basis: np.ndarray, vec) -> bool:
    """Is ``vec`` in the rational column span of ``basis``?"""
    if basis.size == 0 or basis.shape[1] == 0:
        return not np.any(np.asarray(vec))
    stacked = np.column_stack([basis, vec])
    return rank(stacked) == rank(basis)


def solve_columns(basis: np.ndarray, vec) -> list[Fraction] | None:
    """Coordinates of ``vec`` in the columns of ``basis`` (exact), or
    None when the vector is outside the span."""
    a = np.asarray(basis)
    nr, nc = a.shape
    rows = [[Fraction(int(a[i, j])) for j in range(nc)] + [Fraction(int(vec[i]))] for i in range(nr)]
    piv_cols = []
    r = 0
    for c in range(nc):
        p = next((i for i in range(r, nr) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(nr):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    sol = [Fraction(0)] * nc
    for ri, c in enumerate(piv_cols):
        sol[c] = rows[ri][nc]
    for i in range(r, nr):
        if rows[i][nc]:
            return None
    # consistency: residual must vanish on all rows
    for i in range(nr):
        s = sum(Fraction(int(a[i, j])) * sol[j] for j in range(nc))
        if s != vec[i]:
            return None
    return sol


# -- Smith normal form -------------------------------------------------


def smith_invariants(mat) -> tuple[int, list[int]]:
    """(rank, invariant factors) of an integer matrix, exactly.

    Unit pivots are cleared first with vectorized unimodular row and
    column operations; whatever block remains is finished with the
    classical smallest-pivot algorithm on Python integers.
    """
    a = _as_int64(mat)
    if a is None:
        a = np.asarray(mat, dtype=object)
        return _smith_bigint([[int(x) for x in row] for row in a])
    if a.ndim != 2 or 0 in a.shape:
        return 0, []
    nr, nc = a.shape
    r = 0
    ones = 0
    bound = int(np.abs(a).max()) if a.size else 0
    while r < min(nr, nc):
        sub = a[r:, r:]
        units = np.argwhere(np.abs(sub) == 1)
        if units.size == 0:
            break
        i, j = units[0]
        i, j = int(i) + r, int(j) + r
        if i != r:
            a[[r, i]] = a[[i, r]]
        if j != r:
            a[:, [r, j]] = a[:, [j, r]]
        piv = int(a[r, r])
        col = a[r + 1 :, r]
        row = a[r, r + 1 :]
        step = bound + bound * bound
        if step >= _SAFE or bound >= _REMEASURE:
            bound = int(np.abs(a[r:, r:]).max())
            if bound + bound * bound >= _SAFE:
                rk, facs = _smith_bigint([[int(x) for x in rw] for rw in a[r:, r:]])
                return r + rk, [1] * ones + facs
        nz = np.nonzero(col)[0]
        if nz.size:
            rows = nz + r + 1
            f = a[rows, r : r + 1]
            a[rows] -= f * (a[r] * piv)
        nz = np.nonzero(a[r, r + 1 :])[0]
        if nz.size:
            cols = nz + r + 1
            f = a[r : r + 1, cols]
            a[:, cols] -= (a[:, r : r + 1] * piv) * f
        bound = int(np.abs(a[r:, r:]).max()) if a[r:, r:].size else 0
        ones += 1
        r += 1
    rest = a[r:, r:]
    if rest.size and np.any(rest):
        rk, facs = _smith_bigint([[int(x) for x in row] for row in rest])
        return r + rk, [1] * ones + facs
    return r, [1] * ones


def _smith_bigint(rows: list[list[int]]) -> tuple[int, list[int]]:
    rows = [r[:] for r in rows]
    nr = len(rows)
    nc = len(rows[0]) if rows else 0
    factors: list[int] = []
    top = 0
    while True:
        piv = None
        for i in range(top, nr):
            for j in range(top, nc):
                v = rows[i][j]
                if v and (piv is None or abs(v) < abs(rows[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        i, j = piv
        rows[top], rows[i] = rows[i], rows[top]
        for row in rows:
            row[top], row[j] = row[j], row[top]
        while True:
            p = rows[top][top]
            done = True
            for i in range(top + 1, nr):
                if rows[i][top]:
                    q = rows[i][top] // p
                    rows[i] = [x - q * y for x, y in zip(rows[i], rows[top])]
                    if rows[i][top]:
                        rows[top], rows[i] = rows[i], rows[top]
                        done = False
                        break
            if not done:
                continue
            for j in range(top + 1, nc):
                if rows[top][j]:
                    q = rows[top][j] // p
                    for row in rows:
                        row[j] -= q * row[top]
                    if rows[top][j]:
                        for row in rows:
                            row[top], row[j] = row[j], row[top]
                        done = False
                        break
            if done:
                break
        # pivot now alone in its row and column; force divisibility
        p = rows[top][top]
        offender = None
        for i in range(top + 1, nr):
            for j in range(top + 1, nc):
                if rows[i][j] % p:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            rows[top] = [x + y for x, y in zip(rows[top], rows[offender])]
            continue
        factors.append(abs(p))
        top += 1
    # enforce the divisibility chain
    for i in range(len(factors)):
        for j in range(i + 1, len(factors)):
            a_, b_ = factors[i], factors[j]
            g = gcd(a_, b_)
            factors[i], factors[j] = g, a_ // g * b_
    return len(factors), factors
