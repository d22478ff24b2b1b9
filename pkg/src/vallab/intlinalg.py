"""Exact integer and rational linear algebra on small dense matrices.

Everything here works on lists of row vectors (ints or Fractions) and is
sized for the rank <= 4 lattices this library manipulates, so clarity
wins over asymptotics.  The two workhorses are row_echelon (integer row
reduction with an optional unimodular transform) and
diagonalize_with_basis, which returns a diagonal presentation of a row
lattice together with an ambient basis adapted to it.
"""

from __future__ import annotations

from fractions import Fraction


def xgcd(a: int, b: int):
    """Return (g, x, y) with g = gcd(a, b) >= 0 and a*x + b*y = g."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def row_echelon(rows, track=False):
    """Integer row echelon form by euclidean row operations.

    Returns (echelon, transform); transform is None unless track is set,
    otherwise it is a unimodular matrix T (list of rows) with
    echelon = T * rows.  Zero rows sink to the bottom.
    """
    a = [list(map(int, r)) for r in rows]
    n = len(a)
    ncols = len(a[0]) if a else 0
    t = [[1 if i == j else 0 for j in range(n)] for i in range(n)] if track else None
    piv = 0
    for col in range(ncols):
        if piv >= n:
            break
        # euclidean elimination in this column, rows piv..n-1
        while True:
            nz = [i for i in range(piv, n) if a[i][col] != 0]
            if not nz:
                break
            best = min(nz, key=lambda i: abs(a[i][col]))
            if best != piv:
                a[piv], a[best] = a[best], a[piv]
                if track:
                    t[piv], t[best] = t[best], t[piv]
            done = True
            for i in range(piv + 1, n):
                if a[i][col] != 0:
                    q = a[i][col] // a[piv][col]
                    a[i] = [x - q * y for x, y in zip(a[i], a[piv])]
                    if track:
                        t[i] = [x - q * y for x, y in zip(t[i], t[piv])]
                    if a[i][col] != 0:
                        done = False
            if done:
                break
        if piv < n and a[piv][col] != 0:
            if a[piv][col] < 0:
                a[piv] = [-x for x in a[piv]]
                if track:
                    t[piv] = [-x for x in t[piv]]
            piv += 1
    return a, t


def lattice_basis(rows):
    """Nonzero echelon rows: a Z-basis of the row lattice."""
    ech, _ = row_echelon(rows)
    return [r for r in ech if any(x != 0 for x in r)]


def int_kernel(rows):
    """Z-basis of {x in Z^k : sum_i x_i * rows[i] = 0}.

    The result spans a saturated sublattice of Z^k (it is the full
    integer kernel, not a finite-index piece of it).
    """
    rows = [list(map(int, r)) for r in rows]
    if not rows:
        return []
    ech, t = row_echelon(rows, track=True)
    return [t[i] for i in range(len(rows)) if not any(x != 0 for x in ech[i])]


def rational_solve(cols, target):
    """Solve sum_i x_i * cols[i] = target over Q for independent cols.

    cols is a list of column vectors.  Returns a list of Fractions, or
    None if the system is inconsistent.  Raises if cols are dependent.
    """
    k = len(cols)
    if k == 0:
        return [] if all(Fraction(v) == 0 for v in target) else None
    m = len(cols[0])
    aug = [[Fraction(cols[j][i]) for j in range(k)] + [Fraction(target[i])]
           for i in range(m)]
    pivots = []
    row = 0
    for col in range(k):
        sel = None
        for i in range(row, m):
            if aug[i][col] != 0:
                sel = i
                break
        if sel is None:
            raise ValueError("dependent columns in rational_solve")
        aug[row], aug[sel] = aug[sel], aug[row]
        pv = aug[row][col]
        aug[row] = [x / pv for x in aug[row]]
        for i in range(m):
            if i != row and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[row])]
        pivots.append(row)
        row += 1
    # consistency: remaining rows must have zero rhs
    for i in range(row, m):
        if aug[i][k] != 0:
            return None
    return [aug[r][k] for r in pivots]


def det(rows) -> Fraction:
    """Determinant of a square rational matrix (fraction-free enough)."""
    a = [[Fraction(x) for x in r] for r in rows]
    n = len(a)
    sign = 1
    result = Fraction(1)
    for col in range(n):
        sel = None
        for i in range(col, n):
            if a[i][col] != 0:
                sel = i
                break
        if sel is None:
            return Fraction(0)
        if sel != col:
            a[col], a[sel] = a[sel], a[col]
            sign = -sign
        pv = a[col][col]
        result *= pv
        for i in range(col + 1, n):
            if a[i][col] != 0:
                f = a[i][col] / pv
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return result * sign


def diagonalize_with_basis(rows, n):
    """Diagonalize an integer row lattice, tracking an ambient basis.

    Given integer rows spanning a sublattice L of Z^n, returns
    (diag, basis) where diag is a list of positive integers d_1..d_s and
    basis is a list of s vectors u_1..u_s in Z^n extending to a basis of
    Z^n, with L = Z*d_1*u_1 + ... + Z*d_s*u_s.

    Row operations leave L fixed; column operations change ambient
    coordinates and are mirrored on the inverse transform, whose rows
    are the u_i.
    """
    a = [list(map(int, r)) for r in rows]
    m = len(a)
    # cinv rows: current ambient basis expressed in original coordinates
    cinv = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def col_swap(j, k):
        for r in a:
            r[j], r[k] = r[k], r[j]
        cinv[j], cinv[k] = cinv[k], cinv[j]

    def col_sub(j, k, q):
        # col_j -= q * col_k  on a;  row_k += q * row_j  on cinv
        for r in a:
            r[j] -= q * r[k]
        cinv[k] = [x + q * y for x, y in zip(cinv[k], cinv[j])]

    t = 0
    while True:
        # find a nonzero pivot in the submatrix a[t:, t:]
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        if bi != t:
            a[t], a[bi] = a[bi], a[t]
        if bj != t:
            col_swap(t, bj)
        # clear column t below the pivot and row t right of it
        dirty = False
        for i in range(t + 1, m):
            if a[i][t] != 0:
                q = a[i][t] // a[t][t]
                a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t] != 0:
                    dirty = True
        for j in range(t + 1, n):
            if a[t][j] != 0:
                q = a[t][j] // a[t][t]
                col_sub(j, t, q)
                if a[t][j] != 0:
                    dirty = True
        if dirty:
            continue
        t += 1
        if t >= m or t >= n:
            break
    diag = []
    basis = []
    for i in range(min(m, n)):
        d = a[i][i] if i < len(a) else 0
        if d != 0:
            diag.append(abs(d))
            basis.append(list(cinv[i]))
    return diag, basis


def lattice_solve(rows, target):
    """Integer coefficients x with sum_i x_i * rows[i] = target, or None.

    None means target is outside the integer row lattice (it may still
    lie in the rational span).
    """
    rows = [list(map(int, r)) for r in rows]
    if not rows:
        return None if any(v != 0 for v in target) else []
    ech, tr = row_echelon(rows, track=True)
    t = list(map(int, target))
    coeffs = [0] * len(rows)
    for r, row in enumerate(ech):
        j = next((k for k, x in enumerate(row) if x != 0), None)
        if j is None:
            break
        q, rem = divmod(t[j], row[j])
        if rem:
            return None
        if q:
            t = [a - q * b for a, b in zip(t, row)]
            for i in range(len(rows)):
                coeffs[i] += q * tr[r][i]
    if any(v != 0 for v in t):
        return None
    return coeffs


def prime_to_p_part(n: int, p: int) -> int:
    """Largest divisor of |n| coprime to p."""
    n = abs(n)
    if n == 0:
        return 0
    if p <= 1:
        return n
    while n % p == 0:
        n //= p
    return n
