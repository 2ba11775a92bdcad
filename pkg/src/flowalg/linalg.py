"""Exact linear algebra over the rationals and the integers.

Everything here is exact: matrices hold Python ints or ``Fraction``s and no
floating point enters any code path.  Dense routines are adequate at the
working scale (tens of rows and columns); the sparse integer elimination in
:func:`rank_int_rows` is the hot path for relation-matrix ranks.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

from .errors import InfeasibleError, InputError

Vector = list[Fraction]
Matrix = list[list[Fraction]]


# -- rational elimination -------------------------------------------------


def rref(mat: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot column indices (copy; exact)."""
    m = [[Fraction(x) for x in row] for row in mat]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(mat) -> int:
    """Rank over the rationals."""
    if not mat:
        return 0
    if all(isinstance(x, int) for row in mat for x in row):
        ncols = len(mat[0])
        rows = [{j: v for j, v in enumerate(row) if v} for row in mat]
        return rank_int_rows(rows, ncols)
    return len(rref(mat)[1])


def kernel_basis(mat: Matrix) -> list[Vector]:
    """Basis of the right null space over the rationals."""
    if not mat or not mat[0]:
        n = len(mat[0]) if mat else 0
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    red, pivots = rref(mat)
    cols = len(mat[0])
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -red[r][f]
        basis.append(v)
    return basis


def solve_square(a: Matrix, b: Vector) -> Vector:
    """Solve a nonsingular square rational system."""
    n = len(a)
    aug = [[Fraction(x) for x in row] + [Fraction(b[i])]
           for i, row in enumerate(a)]
    red, pivots = rref(aug)
    if len(pivots) != n or any(p >= n for p in pivots):
        raise InputError("singular system")
    return [red[r][n] for r in range(n)]


def min_norm_solution(a: Matrix, b: Vector) -> Vector:
    """The vector of least Euclidean norm satisfying ``a @ x = b``.

    Computed by exact orthogonal projection: the minimizer lies in the row
    space of ``a``, so with an independent subsystem (A', b') it equals
    A'^T y where (A' A'^T) y = b'.
    """
    if not a:
        raise InputError("empty constraint system")
    aug = [list(row) + [b[i]] for i, row in enumerate(a)]
    red, pivots = rref(aug)
    ncols = len(a[0])
    if any(p == ncols for p in pivots):
        raise InfeasibleError("constraints are inconsistent")
    rows = [red[r][:ncols] for r in range(len(pivots))]
    rhs = [red[r][ncols] for r in range(len(pivots))]
    if not rows:
        return [Fraction(0)] * ncols
    gram = [[sum(x * y for x, y in zip(r1, r2)) for r2 in rows] for r1 in rows]
    y = solve_square(gram, rhs)
    return [sum(y[i] * rows[i][c] for i in range(len(rows)))
            for c in range(ncols)]


def min_norm_affine(mat: Matrix, fixed: list[tuple[int, Fraction]],
                    ncols: int | None = None) -> Vector:
    """Minimum-norm point of ``{x : mat @ x = 0, x[i] = v for (i, v) in
    fixed}``."""
    if ncols is None:
        if mat:
            ncols = len(mat[0])
        elif fixed:
            ncols = max(i for i, _ in fixed) + 1
        else:
            raise InputError("cannot infer dimension")
    rows = [[Fraction(x) for x in row] for row in mat]
    rhs: Vector = [Fraction(0)] * len(rows)
    for i, v in fixed:
        if not 0 <= i < ncols:
            raise InputError(f"fixed coordinate {i} out of range")
        unit = [Fraction(0)] * ncols
        unit[i] = Fraction(1)
        rows.append(unit)
        rhs.append(Fraction(v))
    return min_norm_solution(rows, rhs)


# -- sparse fraction-free integer elimination ------------------------------


def rank_int_rows(rows: list[dict[int, int]], ncols: int) -> int:
    """Rank of an integer matrix given as sparse rows (column -> value).

    Fraction-free: rows are combined by cross-multiplication and reduced by
    their gcd, so entries stay integral and small for incidence-like input.
    The input rows are consumed.
    """
    rows = [dict(r) for r in rows if r]
    by_col: dict[int, set[int]] = {}
    for idx, row in enumerate(rows):
        for c in row:
            by_col.setdefault(c, set()).add(idx)
    alive = set(range(len(rows)))
    rnk = 0
    while alive:
        # cheapest pivot: unit value if possible, then sparsest row
        best = None
        for idx in alive:
            row = rows[idx]
            nnz = len(row)
            has_unit = any(abs(v) == 1 for v in row.values())
            key = (not has_unit, nnz)
            if best is None or key < best[0]:
                best = (key, idx)
                if key == (False, 1):
                    break
        idx = best[1]
        row = rows[idx]
        alive.discard(idx)
        rnk += 1
        pc, pv = min(
            ((c, v) for c, v in row.items()),
            key=lambda cv: (abs(cv[1]) != 1, len(by_col.get(cv[0], ())), cv[0]))
        for other_idx in list(by_col.get(pc, ())):
            if other_idx == idx or other_idx not in alive:
                continue
            other = rows[other_idx]
            f = other[pc]
            g = gcd(f, pv)
            mult_o, mult_p = pv // g, f // g
            for c, v in row.items():
                nv = other.get(c, 0) * mult_o - mult_p * v
                if nv:
                    other[c] = nv
                    by_col.setdefault(c, set()).add(other_idx)
                else:
                    if c in other:
                        del other[c]
                        by_col[c].discard(other_idx)
            if mult_o != 1:
                for c in [c for c in other if c not in row]:
                    other[c] *= mult_o
            if other:
                g = 0
                for v in other.values():
                    g = gcd(g, v)
                    if g == 1:
                        break
                if g > 1:
                    for c in other:
                        other[c] //= g
            else:
                alive.discard(other_idx)
        for c in row:
            by_col[c].discard(idx)
    return rnk


def det_int(mat: list[list[int]]) -> int:
    """Determinant of a square integer matrix (Bareiss)."""
    n = len(mat)
    if n == 0:
        return 1
    m = [list(row) for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            pr = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if pr is None:
                return 0
            m[k], m[pr] = m[pr], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


# -- Smith normal form ----------------------------------------------------


def smith_normal_form(mat: list[list[int]], transforms: bool = False):
    """Invariant factors of an integer matrix.

    Returns the list of nonzero invariant factors ``d_1 | d_2 | ...``;
    with ``transforms=True`` returns ``(factors, U, V)`` where
    ``U @ mat @ V`` is the diagonal Smith form.
    """
    a = [list(row) for row in mat]
    nr = len(a)
    nc = len(a[0]) if nr else 0
    u = [[int(i == j) for j in range(nr)] for i in range(nr)]
    v = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def row_op(i, j, q):  # row i -= q * row j
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, q):  # col i -= q * col j
        for r in range(nr):
            a[r][i] -= q * a[r][j]
        for r in range(nc):
            v[r][i] -= q * v[r][j]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in range(nr):
            a[r][i], a[r][j] = a[r][j], a[r][i]
        for r in range(nc):
            v[r][i], v[r][j] = v[r][j], v[r][i]

    t = 0
    size = min(nr, nc)
    while t < size:
        # locate a minimal nonzero entry in the trailing block
        pivot = None
        for i in range(t, nr):
            for j in range(t, nc):
                if a[i][j] != 0 and (pivot is None
                                     or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, nr):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    row_op(i, t, q)
                    if a[i][t] != 0:  # remainder smaller than pivot
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, nc):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    col_op(j, t, q)
                    if a[t][j] != 0:
                        swap_cols(t, j)
                        dirty = True
        # divisibility: fold in any entry the pivot does not divide
        offender = None
        for i in range(t + 1, nr):
            for j in range(t + 1, nc):
                if a[i][j] % a[t][t] != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            row_op(t, offender, -1)  # adds the offending row to row t
            continue
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1

    factors = [a[i][i] for i in range(t) if a[i][i] != 0]
    if transforms:
        return factors, u, v
    return factors


def integer_kernel_basis(mat: list[list[int]]) -> list[list[int]]:
    """Basis of the integer kernel ``{x : mat @ x = 0}`` in Hermite-style
    echelon form (reproducible)."""
    nr = len(mat)
    nc = len(mat[0]) if nr else 0
    if nr == 0:
        return hermite_rows([[int(i == j) for j in range(nc)]
                             for i in range(nc)])
    factors, _, v = smith_normal_form(mat, transforms=True)
    r = len(factors)
    basis = [[v[row][col] for row in range(nc)] for col in range(r, nc)]
    return hermite_rows(basis)


def hermite_rows(rows: list[list[int]]) -> list[list[int]]:
    """Row Hermite normal form of a full-row-rank integer matrix: positive
    pivots, entries above each pivot reduced into [0, pivot)."""
    m = [list(r) for r in rows]
    if not m:
        return m
    nc = len(m[0])
    r = 0
    for c in range(nc):
        pr = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        # gcd-reduce all rows below against the pivot row
        for i in range(r + 1, len(m)):
            while m[i][c] != 0:
                q = m[r][c] // m[i][c]
                m[r] = [x - q * y for x, y in zip(m[r], m[i])]
                m[r], m[i] = m[i], m[r]
        if m[r][c] < 0:
            m[r] = [-x for x in m[r]]
        for i in range(r):
            q = m[i][c] // m[r][c]
            if q:
                m[i] = [x - q * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return [row for row in m if any(row)]


# -- lattice point enumeration --------------------------------------------


def ldl(gram: list[list[Fraction]]):
    """Exact LDL^T data of a symmetric positive definite matrix: returns
    (diag, lower) with ``lower`` unit lower triangular.  Raises
    ``InputError`` if the matrix is not symmetric positive definite."""
    n = len(gram)
    g = [[Fraction(x) for x in row] for row in gram]
    for i in range(n):
        if len(g[i]) != n:
            raise InputError("Gram matrix must be square")
        for j in range(i):
            if g[i][j] != g[j][i]:
                raise InputError("Gram matrix must be symmetric")
    d = [Fraction(0)] * n
    low = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        low[i][i] = Fraction(1)
        s = g[i][i] - sum(low[i][k] ** 2 * d[k] for k in range(i))
        if s <= 0:
            raise InputError("matrix is not positive definite")
        d[i] = s
        for j in range(i + 1, n):
            low[j][i] = (g[j][i]
                         - sum(low[j][k] * low[i][k] * d[k] for k in range(i))) / d[i]
    return d, low


def _int_range_sq(center: Fraction, bound: Fraction):
    """All integers t with (t + center)^2 <= bound (bound >= 0)."""
    a, b = center.numerator, center.denominator
    p, q = bound.numerator, bound.denominator
    s = isqrt(p * b * b // q) + 1
    lo = -(s + a) // b - 1
    hi = (s - a) // b + 1
    return [t for t in range(lo, hi + 1)
            if (t * b + a) ** 2 * q <= p * b * b]


def enumerate_by_norm(gram, bound) -> list[tuple[int, ...]]:
    """All integer coordinate vectors v with ``v^T gram v <= bound``.

    The Gram matrix must be symmetric positive definite (checked exactly).
    The list is complete, duplicate-free, contains 0 and is symmetric under
    negation.
    """
    n = len(gram)
    bound = Fraction(bound)
    if bound < 0:
        raise InputError("norm bound must be nonnegative")
    if n == 0:
        return [()]
    d, low = ldl(gram)
    out: list[tuple[int, ...]] = []
    vec = [0] * n

    def descend(i: int, remaining: Fraction):
        if i < 0:
            out.append(tuple(vec))
            return
        center = sum(low[j][i] * vec[j] for j in range(i + 1, n))
        for t in _int_range_sq(center, remaining / d[i]):
            vec[i] = t
            descend(i - 1, remaining - d[i] * (t + center) ** 2)
        vec[i] = 0

    descend(n - 1, bound)
    return out
