"""Exact rational linear algebra over fractions.Fraction.

Matrices are lists of row lists; entries are ints or Fractions. Nothing in
here ever touches a float. All outputs are canonical: kernel bases come from
the reduced row echelon form, so identical inputs give identical results.
"""

from fractions import Fraction
from math import gcd


def frac_matrix(rows):
    return [[Fraction(x) for x in row] for row in rows]


def mat_vec(m, v):
    return [sum(r[j] * v[j] for j in range(len(v))) for r in m]


def mat_mul(a, b):
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]


def transpose(m):
    return [list(col) for col in zip(*m)]


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def dot(u, v):
    return sum(x * y for x, y in zip(u, v))


def rref(rows):
    """Reduced row echelon form. Returns (rref rows, pivot column list)."""
    m = frac_matrix(rows)
    if not m:
        return [], []
    nrows, ncols = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def rank(rows):
    return len(rref(rows)[1])


def kernel_basis(rows):
    """Canonical basis of {x : rows . x = 0}, one vector per free column."""
    if not rows:
        return []
    ncols = len(rows[0])
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -red[r][f]
        basis.append(v)
    return basis


def left_kernel_basis(rows):
    return kernel_basis(transpose(rows))


def solve(a, b):
    """One exact solution of a.x = b, or None if inconsistent."""
    if not a:
        return None if any(x != 0 for x in b) else []
    ncols = len(a[0])
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for r, p in enumerate(pivots):
        x[p] = red[r][ncols]
    return x


def inverse(m):
    n = len(m)
    aug = [list(row) + ident for row, ident in zip(frac_matrix(m), identity(n))]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        return None
    return [row[n:] for row in red]


def det_int(m):
    """Bareiss fraction-free determinant of an integer matrix."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(map(int, row)) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if pivot is None:
                return 0
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (akk * row_i[j] - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def det(m):
    n = len(m)
    if all(isinstance(x, int) for row in m for x in row):
        return Fraction(det_int(m))
    a = frac_matrix(m)
    result = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if a[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            a[c], a[pivot] = a[pivot], a[c]
            result = -result
        result *= a[c][c]
        inv = 1 / a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return result


def solve_cramer_int(a, b):
    """Solve a square integer system by Cramer's rule.

    Returns (numerators, denominator) with denominator = det(a) > 0 after
    sign normalization, or None when det(a) = 0. Faster than rref for the
    hot n-subset scans because it stays in machine integers.
    """
    d = det_int(a)
    if d == 0:
        return None
    n = len(a)
    nums = []
    for j in range(n):
        col = [row[j] for row in a]
        for i in range(n):
            a[i][j] = b[i]
        nums.append(det_int(a))
        for i in range(n):
            a[i][j] = col[i]
    if d < 0:
        d = -d
        nums = [-x for x in nums]
    return nums, d


def primitive(vec):
    """Primitive integer vector from a rational one. Positive scaling only:
    the direction is preserved, never flipped."""
    fracs = [Fraction(x) for x in vec]
    if all(x == 0 for x in fracs):
        return tuple(0 for _ in fracs)
    denom_lcm = 1
    for x in fracs:
        denom_lcm = denom_lcm * x.denominator // gcd(denom_lcm, x.denominator)
    ints = [int(x * denom_lcm) for x in fracs]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    return tuple(x // g for x in ints)


def scale_rows_int(rows, rhs=None):
    """Scale each row (and its rhs entry) by a positive rational so all
    entries are integers. Inequality semantics are unchanged."""
    out_rows, out_rhs = [], []
    for i, row in enumerate(rows):
        entries = [Fraction(x) for x in row]
        if rhs is not None:
            entries = entries + [Fraction(rhs[i])]
        denom_lcm = 1
        for x in entries:
            denom_lcm = denom_lcm * x.denominator // gcd(denom_lcm, x.denominator)
        ints = [int(x * denom_lcm) for x in entries]
        g = 0
        for x in ints:
            g = gcd(g, abs(x))
        if g > 1:
            ints = [x // g for x in ints]
        if rhs is not None:
            out_rows.append(ints[:-1])
            out_rhs.append(ints[-1])
        else:
            out_rows.append(ints)
    return (out_rows, out_rhs) if rhs is not None else out_rows
