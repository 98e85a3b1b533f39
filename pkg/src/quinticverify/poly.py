"""Homogeneous multivariate polynomials over cyclotomic coefficients.

Terms live in a dict keyed by exponent tuples; iteration order is the
descending lexicographic order on exponents so printed forms and hashes are
reproducible.  All stored coefficients are nonzero and share the polynomial's
ambient conductor.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb, lcm

from .cyclotomic import Cyclo
from .errors import DimensionMismatch, SingularMatrix


def monomials_of_degree(nvars, degree):
    """All exponent tuples of the given total degree, descending lex order."""
    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for e in range(remaining, -1, -1):
            rec(prefix + (e,), remaining - e, slots - 1)

    rec((), degree, nvars)
    assert len(out) == comb(nvars + degree - 1, degree)
    return out


class Polynomial:
    __slots__ = ("nvars", "degree", "conductor", "terms")

    def __init__(self, nvars, degree, terms, conductor=1, _lift=True):
        self.nvars = nvars
        self.degree = degree
        clean = {}
        n = conductor
        if _lift:
            for c in terms.values():
                n = lcm(n, c.n)
        for e, c in terms.items():
            if c.is_zero():
                continue
            if sum(e) != degree or len(e) != nvars:
                raise ValueError(f"exponent {e} does not fit degree {degree}, nvars {nvars}")
            clean[e] = c.lift(n) if _lift else c
        self.conductor = n
        self.terms = clean

    @staticmethod
    def zero(nvars, degree, conductor=1):
        return Polynomial(nvars, degree, {}, conductor)

    @staticmethod
    def monomial(nvars, exponents, coeff=None):
        if coeff is None:
            coeff = Cyclo.one()
        return Polynomial(nvars, sum(exponents), {tuple(exponents): coeff})

    def is_zero(self):
        return not self.terms

    def support(self):
        """Exponent vectors in canonical (descending lex) order."""
        return sorted(self.terms, reverse=True)

    def contains_monomial(self, exponents):
        return tuple(exponents) in self.terms

    def coeff(self, exponents):
        c = self.terms.get(tuple(exponents))
        return c if c is not None else Cyclo.zero(self.conductor)

    def lift(self, conductor):
        if conductor % self.conductor != 0:
            conductor = lcm(conductor, self.conductor)
        return Polynomial(
            self.nvars,
            self.degree,
            {e: c.lift(conductor) for e, c in self.terms.items()},
            conductor,
            _lift=False,
        )

    def __add__(self, other):
        if self.nvars != other.nvars or self.degree != other.degree:
            raise DimensionMismatch("cannot add polynomials of different shape")
        n = lcm(self.conductor, other.conductor)
        terms = {e: c.lift(n) for e, c in self.terms.items()}
        for e, c in other.terms.items():
            if e in terms:
                s = terms[e] + c
                if s.is_zero():
                    del terms[e]
                else:
                    terms[e] = s
            else:
                terms[e] = c.lift(n)
        return Polynomial(self.nvars, self.degree, terms, n, _lift=False)

    def __neg__(self):
        return Polynomial(
            self.nvars,
            self.degree,
            {e: -c for e, c in self.terms.items()},
            self.conductor,
            _lift=False,
        )

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if not isinstance(c, Cyclo):
            c = Cyclo.from_rational(c)
        if c.is_zero():
            return Polynomial.zero(self.nvars, self.degree, self.conductor)
        return Polynomial(
            self.nvars, self.degree, {e: c * v for e, v in self.terms.items()}
        )

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        if self.nvars != other.nvars or self.degree != other.degree:
            return False
        if set(self.terms) != set(other.terms):
            return False
        return all(self.terms[e] == other.terms[e] for e in self.terms)

    __hash__ = None

    def proportionality_factor(self, other):
        """lambda with self == lambda * other, or None (both nonzero)."""
        if self.is_zero() or other.is_zero():
            return None
        if set(self.terms) != set(other.terms):
            return None
        it = iter(self.terms)
        e0 = next(it)
        lam = self.terms[e0] / other.terms[e0]
        for e in it:
            if self.terms[e] != lam * other.terms[e]:
                return None
        return lam

    def evaluate(self, point):
        """Exact value at a tuple of Cyclo coordinates."""
        acc = Cyclo.zero()
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = v * x**k
            acc = acc + v
        return acc

    def __repr__(self):
        from .parsing import format_poly

        return f"Polynomial({format_poly(self)!r})"


def partial(f, i):
    """Formal partial derivative with respect to x_i (1-based index)."""
    if not 1 <= i <= f.nvars:
        raise DimensionMismatch(f"variable index {i} out of range")
    if f.degree == 0:
        return Polynomial.zero(f.nvars, 0, f.conductor)
    terms = {}
    j = i - 1
    for e, c in f.terms.items():
        k = e[j]
        if k:
            e2 = e[:j] + (k - 1,) + e[j + 1 :]
            terms[e2] = c * k
    return Polynomial(f.nvars, max(f.degree - 1, 0), terms, f.conductor)


def higher_partial(f, alpha):
    """Iterated formal derivative by the multi-index alpha."""
    g = f
    for i, k in enumerate(alpha, start=1):
        for _ in range(k):
            g = partial(g, i)
    return g


def _poly_dict_mul(p, q, nvars):
    out = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            prior = out.get(e)
            s = c1 * c2 if prior is None else prior + c1 * c2
            if s.is_zero():
                out.pop(e, None)
            else:
                out[e] = s
    return out


def substitute_linear(rows, f, new_nvars):
    """f(L_1, ..., L_n) for linear forms L_k = sum_j rows[k][j] * y_j.

    rows is an n x new_nvars array of Cyclo entries (n = f.nvars).  Used both
    by apply_matrix (square case) and hyperplane restriction (rectangular).
    """
    if len(rows) != f.nvars:
        raise DimensionMismatch("substitution row count does not match nvars")
    unit = {(0,) * new_nvars: Cyclo.one()}
    # Per-variable power cache: powers[k][e] = (row_k)^e as a term dict.
    row_dicts = []
    for row in rows:
        d = {}
        for j, c in enumerate(row):
            if not c.is_zero():
                e = tuple(1 if t == j else 0 for t in range(new_nvars))
                d[e] = c
        row_dicts.append(d)
    powers = [{0: unit} for _ in rows]

    def row_power(k, e):
        cache = powers[k]
        if e in cache:
            return cache[e]
        prev = row_power(k, e - 1)
        cache[e] = _poly_dict_mul(prev, row_dicts[k], new_nvars)
        return cache[e]

    acc = {}
    for e, c in f.terms.items():
        term = {(0,) * new_nvars: c}
        for k, ek in enumerate(e):
            if ek:
                term = _poly_dict_mul(term, row_power(k, ek), new_nvars)
        for m, v in term.items():
            prior = acc.get(m)
            s = v if prior is None else prior + v
            if s.is_zero():
                acc.pop(m, None)
            else:
                acc[m] = s
    return Polynomial(new_nvars, f.degree, acc, f.conductor)


class SquareMatrix:
    """An exactly invertible square matrix over cyclotomic entries."""

    __slots__ = ("n", "entries", "_det")

    def __init__(self, entries, check=True):
        rows = tuple(tuple(r) for r in entries)
        self.n = len(rows)
        for r in rows:
            if len(r) != self.n:
                raise DimensionMismatch("matrix is not square")
        self.entries = rows
        self._det = None
        if check and self.det().is_zero():
            raise SingularMatrix("matrix has determinant zero")

    @staticmethod
    def identity(n):
        one, zero = Cyclo.one(), Cyclo.zero()
        return SquareMatrix(
            [[one if i == j else zero for j in range(n)] for i in range(n)], check=False
        )

    @staticmethod
    def diagonal(values):
        zero = Cyclo.zero()
        n = len(values)
        return SquareMatrix(
            [[values[i] if i == j else zero for j in range(n)] for i in range(n)],
            check=False,
        )

    def det(self):
        if self._det is None:
            self._det = _det_cofactor(self.entries)
        return self._det

    def __mul__(self, other):
        if self.n != other.n:
            raise DimensionMismatch("matrix size mismatch")
        n = self.n
        a, b = self.entries, other.entries
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = Cyclo.zero()
                for k in range(n):
                    x = a[i][k]
                    if not x.is_zero():
                        y = b[k][j]
                        if not y.is_zero():
                            acc = acc + x * y
                row.append(acc)
            out.append(row)
        return SquareMatrix(out, check=False)

    def scale(self, c):
        return SquareMatrix(
            [[c * x for x in row] for row in self.entries], check=False
        )

    def __eq__(self, other):
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        return self.n == other.n and all(
            self.entries[i][j] == other.entries[i][j]
            for i in range(self.n)
            for j in range(self.n)
        )

    __hash__ = None

    def conductor(self):
        n = 1
        for row in self.entries:
            for c in row:
                n = lcm(n, c.n)
        return n

    def transpose(self):
        return SquareMatrix(
            [[self.entries[j][i] for j in range(self.n)] for i in range(self.n)],
            check=False,
        )

    def inverse(self):
        d = self.det()
        if d.is_zero():
            raise SingularMatrix("cannot invert a singular matrix")
        dinv = d.inverse()
        n = self.n
        cof = []
        for i in range(n):
            row = []
            for j in range(n):
                minor = [
                    [self.entries[r][c] for c in range(n) if c != j]
                    for r in range(n)
                    if r != i
                ]
                m = _det_cofactor(tuple(tuple(r) for r in minor))
                row.append(-m if (i + j) % 2 else m)
            cof.append(row)
        # adjugate is the transposed cofactor matrix
        return SquareMatrix(
            [[cof[j][i] * dinv for j in range(n)] for i in range(n)], check=False
        )

    def __repr__(self):
        from .parsing import format_matrix

        return f"SquareMatrix(\n{format_matrix(self)})"


def _det_cofactor(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    acc = None
    for j in range(n):
        c = rows[0][j]
        if c.is_zero():
            continue
        minor = tuple(r[:j] + r[j + 1 :] for r in rows[1:])
        sub = _det_cofactor(minor)
        term = c * sub
        if j % 2:
            term = -term
        acc = term if acc is None else acc + term
    return acc if acc is not None else Cyclo.zero()


def apply_matrix(a, f):
    """F(sum a_1i x_i, ..., sum a_ni x_i), expanded and reduced."""
    if a.n != f.nvars:
        raise DimensionMismatch("matrix dimension does not match polynomial nvars")
    return substitute_linear(a.entries, f, f.nvars)


def semi_invariance_factor(a, f):
    """lambda with a(F) == lambda * F, or None if not proportional."""
    if f.is_zero():
        raise ValueError("semi-invariance undefined for the zero polynomial")
    return apply_matrix(a, f).proportionality_factor(f)


def char_poly(a):
    """Exact characteristic polynomial coefficients, ascending, monic.

    Faddeev-LeVerrier: only divisions are by the integers 1..n, exact here.
    """
    n = a.n
    coeffs = [None] * (n + 1)
    coeffs[n] = Cyclo.one()
    mk = a
    for k in range(1, n + 1):
        c = _trace(mk) * Fraction(-1, k)
        coeffs[n - k] = c
        if k < n:
            mk = a * _add_scalar(mk, c)
    return coeffs


def _trace(m):
    acc = Cyclo.zero()
    for i in range(m.n):
        acc = acc + m.entries[i][i]
    return acc


def _add_scalar(m, c):
    rows = [list(r) for r in m.entries]
    for i in range(m.n):
        rows[i][i] = rows[i][i] + c
    return SquareMatrix(rows, check=False)


def eval_poly_coeffs(coeffs, x):
    """Evaluate sum coeffs[i] * x^i exactly."""
    acc = Cyclo.zero()
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc
