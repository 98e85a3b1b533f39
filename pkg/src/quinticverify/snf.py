"""Smith normal form over the integers and linear congruence solving.

The solver works in (Q/Z)^n: a system B*u = r (mod 1) is diagonalised through
U*B*V = S with unimodular U, V.  Q/Z is divisible, so every nonzero diagonal
s admits exactly s solutions per coordinate; zero rows impose integrality
constraints, and zero columns are free Q/Z directions.
"""
from __future__ import annotations

from fractions import Fraction


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_normal_form(matrix):
    """(U, S, V) with U*matrix*V = S, U and V unimodular, S diagonal.

    Diagonal entries are nonnegative and each divides the next.
    """
    a = [list(row) for row in matrix]
    m = len(a)
    n = len(a[0]) if m else 0
    u = _identity(m)
    v = _identity(n)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):
        # row dst += q * row src
        for k in range(n):
            a[dst][k] += q * a[src][k]
        for k in range(m):
            u[dst][k] += q * u[src][k]

    def add_col(src, dst, q):
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < min(m, n):
        # locate the nonzero entry of least absolute value in the submatrix
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                x = a[i][j]
                if x and (pivot is None or abs(x) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        # clear row and column t
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    add_row(t, i, -q)
                    if a[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    add_col(t, j, -q)
                    if a[t][j]:
                        swap_cols(t, j)
                        dirty = True
        # enforce divisibility: a[t][t] must divide every later entry
        fixed = False
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if a[i][j] % a[t][t] != 0:
                    add_row(i, t, 1)
                    fixed = True
                    break
            if fixed:
                break
        if fixed:
            continue
        if a[t][t] < 0:
            negate_row(t)
        t += 1
    return u, a, v


class ToralSolution:
    """Solutions of B*u = r in (Q/Z)^n.

    particular: one solution (tuple of Fractions in [0,1)).
    torsion: list of (generator vector, order); the full finite part is the
        set of integer combinations of generators added to the particular.
    free: basis vectors spanning continuous Q/Z directions.
    """

    __slots__ = ("particular", "torsion", "free")

    def __init__(self, particular, torsion, free):
        self.particular = particular
        self.torsion = torsion
        self.free = free

    def count_finite(self):
        out = 1
        for _, order in self.torsion:
            out *= order
        return out

    def enumerate(self):
        """All solutions of the finite part (free directions at zero)."""
        n = len(self.particular)
        sols = [tuple(self.particular)]
        for gen, order in self.torsion:
            new = []
            for base in sols:
                for k in range(order):
                    new.append(
                        tuple((base[i] + k * gen[i]) % 1 for i in range(n))
                    )
            sols = new
        return sols


def solve_toral(matrix, rhs):
    """Solve matrix * u = rhs in (Q/Z)^n; rhs entries are Fractions mod 1.

    Returns a ToralSolution, or None when no solution exists.
    """
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    u, s, v = smith_normal_form(matrix)
    rprime = []
    for i in range(m):
        acc = Fraction(0)
        for k in range(m):
            if u[i][k]:
                acc += u[i][k] * rhs[k]
        rprime.append(acc % 1)
    particular_w = [Fraction(0)] * n
    torsion_idx = []
    free_idx = []
    for i in range(n):
        si = s[i][i] if i < m else 0
        if si == 0:
            free_idx.append(i)
        else:
            particular_w[i] = (rprime[i] / si) % 1
            if si > 1:
                torsion_idx.append((i, si))
    for i in range(n, m):
        if rprime[i] % 1 != 0:
            return None
    for i in range(min(m, n)):
        if s[i][i] == 0 and rprime[i] % 1 != 0:
            return None

    def map_w(w):
        out = []
        for row_i in range(n):
            acc = Fraction(0)
            for k in range(n):
                if v[row_i][k] and w[k]:
                    acc += v[row_i][k] * w[k]
            out.append(acc % 1)
        return tuple(out)

    particular = map_w(particular_w)
    torsion = []
    for i, si in torsion_idx:
        w = [Fraction(0)] * n
        w[i] = Fraction(1, si)
        torsion.append((map_w(w), si))
    free = []
    for i in free_idx:
        free.append(tuple(v[r][i] for r in range(n)))
    return ToralSolution(particular, torsion, free)
