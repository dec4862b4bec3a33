"""Exact rational linear algebra: Fraction matrices, integer lattice solving,
interval propagation, and a two-phase simplex over the rationals.

No floating point is used anywhere; every routine is exact.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


Vec = tuple[int, ...]


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def vec_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(c, a):
    return tuple(c * x for x in a)


def mat_mul(a, b):
    """Product of two matrices given as lists of rows."""
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_vec(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(a):
    return [list(col) for col in zip(*a)]


def bareiss_det(m):
    """Exact determinant of an integer square matrix (fraction-free)."""
    n = len(m)
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
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rank(m):
    """Rank of a matrix with integer or Fraction entries."""
    a = [[Fraction(x) for x in row] for row in m]
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [inv * x for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == nrows:
            break
    return r


def _ext_gcd(a, b):
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b)."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def solve_integer_system(eq_rows, rhs):
    """Solve E x = b over the integers.

    ``eq_rows`` is a list of integer rows, ``rhs`` the integer right-hand
    sides.  Returns ``(x0, kernel)`` where ``x0`` is one integer solution and
    ``kernel`` is a list of integer vectors spanning the solution lattice, or
    ``None`` when no integer solution exists (including the rationally
    infeasible case).
    """
    m = len(eq_rows)
    n = len(eq_rows[0]) if m else 0
    h = [list(row) for row in eq_rows]
    u = identity(n)

    def colop_combine(r, j, k):
        # Column ops making h[r][j] = gcd and h[r][k] = 0, tracked in u.
        a, b = h[r][j], h[r][k]
        g, s, t = _ext_gcd(a, b)
        p, q = -(b // g), a // g
        for rows in (h, u):
            for row in rows:
                rj, rk = row[j], row[k]
                row[j] = s * rj + t * rk
                row[k] = p * rj + q * rk

    pivots = []  # (row, col)
    col = 0
    for r in range(m):
        if col >= n:
            break
        j0 = next((j for j in range(col, n) if h[r][j]), None)
        if j0 is None:
            continue
        for j in range(j0 + 1, n):
            if h[r][j]:
                colop_combine(r, j0, j)
        if j0 != col:
            for rows in (h, u):
                for row in rows:
                    row[col], row[j0] = row[j0], row[col]
        pivots.append((r, col))
        col += 1

    # Forward-substitute pivot variables; a non-divisible step means no
    # integer solution, a mismatched pivot-free row means no solution at all.
    y = [0] * n
    piv_of_row = dict(pivots)
    for r in range(m):
        acc = rhs[r] - sum(h[r][j] * y[j] for j in range(col) if h[r][j])
        if r in piv_of_row:
            c = piv_of_row[r]
            if acc % h[r][c]:
                return None
            y[c] += acc // h[r][c]
        elif acc != 0:
            return None

    x0 = tuple(sum(u[i][j] * y[j] for j in range(col)) for i in range(n))
    kernel = [tuple(u[i][j] for i in range(n)) for j in range(col, n)]
    return x0, kernel


# ---------------------------------------------------------------------------
# Interval propagation over integer boxes.  Bounds are ints or None (=inf).

def propagate_box(rows, lower, upper, max_rounds=None):
    """Tighten per-variable integer bounds against rows ``a . x >= r``.

    ``rows`` is a list of ``(coeffs, r)``.  Returns ``(lower, upper)`` lists
    (entries may stay None) or ``None`` when a row is provably unsatisfiable.
    Sound: never cuts off an integer solution.
    """
    n = len(lower)
    lo = list(lower)
    hi = list(upper)
    if max_rounds is None:
        max_rounds = 4 * (n + 1)
    for _ in range(max_rounds):
        changed = False
        for coeffs, r in rows:
            # Best-case value of each term given the current box.
            best = []
            ok = True
            for a, l, h in zip(coeffs, lo, hi):
                if a > 0:
                    best.append(None if h is None else a * h)
                elif a < 0:
                    best.append(None if l is None else a * l)
                else:
                    best.append(0)
            total = 0
            ninf = 0
            for b in best:
                if b is None:
                    ninf += 1
                else:
                    total += b
            if ninf == 0 and total < r:
                return None
            for i, a in enumerate(coeffs):
                if a == 0:
                    continue
                if best[i] is None:
                    if ninf > 1:
                        continue
                    rest = total
                elif ninf > 0:
                    continue
                else:
                    rest = total - best[i]
                # a*x_i >= r - rest
                if a > 0:
                    bound = -((rest - r) // a)  # ceil((r - rest)/a)
                    if lo[i] is None or bound > lo[i]:
                        lo[i] = bound
                        changed = True
                else:
                    bound = (rest - r) // (-a)  # floor((r - rest)/(-a))
                    if hi[i] is None or bound < hi[i]:
                        hi[i] = bound
                        changed = True
                if lo[i] is not None and hi[i] is not None and lo[i] > hi[i]:
                    return None
        if not changed:
            break
    return lo, hi


# ---------------------------------------------------------------------------
# Exact LP: two-phase simplex with Bland's rule, free variables.

OPTIMAL = "optimal"
UNBOUNDED = "unbounded"
INFEASIBLE = "infeasible"


class LPResult:
    __slots__ = ("status", "value", "point")

    def __init__(self, status, value=None, point=None):
        self.status = status
        self.value = value
        self.point = point

    def __repr__(self):
        return f"LPResult({self.status}, {self.value})"


def _simplex(tableau, basis, ncols):
    """Minimize the objective in row -1 of the tableau (Bland's rule)."""
    m = len(tableau) - 1
    while True:
        obj = tableau[-1]
        enter = next((j for j in range(ncols) if obj[j] < 0), None)
        if enter is None:
            return OPTIMAL
        leave = None
        best = None
        for i in range(m):
            a = tableau[i][enter]
            if a > 0:
                ratio = tableau[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:
            return UNBOUNDED
        piv = tableau[leave][enter]
        row = tableau[leave] = [v / piv for v in tableau[leave]]
        for i, t in enumerate(tableau):
            if i != leave and t[enter]:
                f = t[enter]
                tableau[i] = [a - f * b for a, b in zip(t, row)]
        basis[leave] = enter


def solve_lp(objective, ge_rows, ge_rhs, eq_rows=(), eq_rhs=(), sense="max"):
    """Exact LP over free rational variables.

    Constraints: ``ge_rows . x >= ge_rhs`` and ``eq_rows . x = eq_rhs``.
    Returns an LPResult; ``point`` is a tuple of Fractions when optimal.
    """
    n = len(objective)
    rows = [([Fraction(v) for v in r], Fraction(b), False) for r, b in zip(ge_rows, ge_rhs)]
    rows += [([Fraction(v) for v in r], Fraction(b), True) for r, b in zip(eq_rows, eq_rhs)]
    m = len(rows)
    nge = sum(1 for _, _, is_eq in rows if not is_eq)

    # Columns: x+ (n), x- (n), surplus (one per >= row), artificials (m).
    width = 2 * n + nge
    tableau = []
    surplus_idx = 0
    art_cols = []
    for coeffs, b, is_eq in rows:
        row = [Fraction(0)] * (width + m + 1)
        for j, v in enumerate(coeffs):
            row[j] = v
            row[n + j] = -v
        if not is_eq:
            row[2 * n + surplus_idx] = Fraction(-1)
            surplus_idx += 1
        if b < 0:
            row = [-v for v in row]
            b = -b
        row[-1] = b
        tableau.append(row)
    for i in range(m):
        tableau[i][width + i] = Fraction(1)
        art_cols.append(width + i)

    # Phase 1: minimize the sum of artificials.
    obj = [Fraction(0)] * (width + m + 1)
    for c in art_cols:
        obj[c] = Fraction(1)
    for i in range(m):
        obj = [a - b for a, b in zip(obj, tableau[i])]
    tableau.append(obj)
    basis = list(art_cols)
    _simplex(tableau, basis, width + m)
    if tableau[-1][-1] != 0:
        return LPResult(INFEASIBLE)

    # Drive leftover artificials out of the basis where possible.
    for i in range(m):
        if basis[i] >= width:
            enter = next((j for j in range(width) if tableau[i][j] != 0), None)
            if enter is None:
                continue
            piv = tableau[i][enter]
            row = tableau[i] = [v / piv for v in tableau[i]]
            for k, t in enumerate(tableau):
                if k != i and t[enter]:
                    f = t[enter]
                    tableau[k] = [a - f * b for a, b in zip(t, row)]
            basis[i] = enter

    # Phase 2.
    sign = -1 if sense == "max" else 1
    obj = [Fraction(0)] * (width + m + 1)
    for j in range(n):
        obj[j] = sign * Fraction(objective[j])
        obj[n + j] = -sign * Fraction(objective[j])
    for c in art_cols:
        obj[c] = Fraction(0)
    for i in range(m):
        if basis[i] < width and obj[basis[i]]:
            f = obj[basis[i]]
            obj = [a - f * b for a, b in zip(obj, tableau[i])]
    tableau[-1] = obj
    # Artificial columns stay out: restrict pricing to the first ``width`` columns.
    status = _simplex(tableau, basis, width)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)
    x = [Fraction(0)] * (2 * n)
    for i in range(m):
        if basis[i] < 2 * n:
            x[basis[i]] = tableau[i][-1]
    point = tuple(x[j] - x[n + j] for j in range(n))
    value = sum(Fraction(objective[j]) * point[j] for j in range(n))
    return LPResult(OPTIMAL, value, point)


def lp_feasible(ge_rows, ge_rhs, eq_rows=(), eq_rhs=()):
    """Exact feasibility of a mixed >=/= rational system (phase 1 only)."""
    n = len(ge_rows[0]) if ge_rows else (len(eq_rows[0]) if eq_rows else 0)
    res = solve_lp([0] * n, ge_rows, ge_rhs, eq_rows, eq_rhs)
    return res.status != INFEASIBLE
