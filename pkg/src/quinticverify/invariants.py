"""(Semi-)invariant monomials and joint invariant subspaces of linear actions."""
from __future__ import annotations

from fractions import Fraction
from math import lcm

from .cyclotomic import Cyclo
from .errors import DimensionMismatch
from .groups import matrix_to_rep, rep_mul, _Mono, _mono_to_dense
from .poly import Polynomial, apply_matrix, monomials_of_degree


class DiagonalAction:
    """diag(zeta_N^w1, ..., zeta_N^wn) acting on monomials by weight."""

    __slots__ = ("modulus", "weights")

    def __init__(self, modulus, weights):
        self.modulus = modulus
        self.weights = tuple(w % modulus for w in weights)

    def weight_of(self, exponents):
        return sum(w * e for w, e in zip(self.weights, exponents)) % self.modulus


class MonomialSpan:
    __slots__ = ("nvars", "degree", "monomials")

    def __init__(self, nvars, degree, monomials):
        self.nvars = nvars
        self.degree = degree
        self.monomials = tuple(monomials)

    def __len__(self):
        return len(self.monomials)

    def __iter__(self):
        return iter(self.monomials)


def semi_invariant_monomials(action, degree, chi=0):
    """Degree-d monomials whose weight is chi mod N."""
    n = len(action.weights)
    chi %= action.modulus
    selected = [
        e
        for e in monomials_of_degree(n, degree)
        if action.weight_of(e) == chi
    ]
    return MonomialSpan(n, degree, selected)


def _monomial_image(rep, e):
    """(image exponent, root factor) of a monomial under a monomial matrix."""
    image = [0] * len(e)
    t = 0
    for k, ek in enumerate(e):
        if ek:
            image[rep.cols[k]] = ek
            t += ek * rep.exps[k]
    return tuple(image), t % rep.N


def _kernel_of_columns(columns, dim_rows, row_index):
    """Nullspace basis of a matrix given by sparse columns over Cyclo.

    columns: list of dicts row_key -> Cyclo.  Returns a list of coefficient
    vectors (tuples of Cyclo) spanning the kernel, in reduced echelon form
    with leftmost pivots.
    """
    ncols = len(columns)
    # Gaussian elimination on the transpose: treat each column as a vector,
    # eliminate to find dependencies.  Maintain an augmented identity.
    rows = []  # list of (dict row_key -> Cyclo, coeffs list)
    kernel = []
    for j, col in enumerate(columns):
        vec = dict(col)
        coeffs = [Cyclo.zero() for _ in range(ncols)]
        coeffs[j] = Cyclo.one()
        for pivot_key, pivot_vec, pivot_coeffs in rows:
            c = vec.get(pivot_key)
            if c is not None and not c.is_zero():
                for k, v in pivot_vec.items():
                    nv = vec.get(k, None)
                    nv = -c * v if nv is None else nv - c * v
                    if nv.is_zero():
                        vec.pop(k, None)
                    else:
                        vec[k] = nv
                for idx in range(ncols):
                    if not pivot_coeffs[idx].is_zero():
                        coeffs[idx] = coeffs[idx] - c * pivot_coeffs[idx]
        vec = {k: v for k, v in vec.items() if not v.is_zero()}
        if not vec:
            kernel.append(coeffs)
            continue
        pivot_key = min(vec, key=row_index)
        inv = vec[pivot_key].inverse()
        vec = {k: inv * v for k, v in vec.items()}
        coeffs = [inv * c for c in coeffs]
        rows.append((pivot_key, vec, coeffs))
    return kernel


def _echelonize_polys(polys):
    """Reduced echelon form of a list of polynomials, leftmost-pivot first."""
    basis = []  # (pivot exponent, Polynomial)
    order = None
    for f in polys:
        g = f
        for pivot, h in basis:
            c = g.terms.get(pivot)
            if c is not None:
                g = g - h.scale(c)
        if g.is_zero():
            continue
        pivot = max(g.terms)  # descending lex: leftmost variable heavy first
        g = g.scale(g.terms[pivot].inverse())
        basis.append((pivot, g))
    # back-substitution for the reduced form
    basis.sort(key=lambda t: t[0], reverse=True)
    reduced = []
    for i, (pivot, g) in enumerate(basis):
        for pj, h in basis:
            if pj == pivot:
                continue
            c = g.terms.get(pj)
            if c is not None:
                g = g - h.scale(c)
        reduced.append(g)
    return reduced


def invariant_subspace(generators, degree):
    """Exact joint kernel of (rho_d(A) - I) over all generator matrices.

    Returns a basis of polynomials in reduced echelon form.  Monomial
    generators are processed first through orbit decomposition, which keeps
    the generic elimination small.
    """
    if not generators:
        raise ValueError("need at least one generator")
    n = generators[0].n
    for g in generators:
        if g.n != n:
            raise DimensionMismatch("generators of mixed dimension")
    reps = [matrix_to_rep(g) for g in generators]
    reps.sort(key=lambda r: 0 if isinstance(r, _Mono) else 1)
    monos = monomials_of_degree(n, degree)
    basis = None  # None means the full monomial space

    for rep in reps:
        if isinstance(rep, _Mono) and basis is None:
            basis = _orbit_invariants(rep, monos, n, degree)
            continue
        if basis is None:
            basis = [Polynomial.monomial(n, e) for e in monos]
        from .poly import SquareMatrix

        mat = SquareMatrix(
            [[_rep_entry(rep, i, j) for j in range(n)] for i in range(n)],
            check=False,
        )
        columns = []
        for b in basis:
            diff = apply_matrix(mat, b) - b
            columns.append(dict(diff.terms))
        row_order = {e: i for i, e in enumerate(monos)}
        kern = _kernel_of_columns(columns, len(monos), lambda key: row_order[key])
        new_basis = []
        for coeffs in kern:
            acc = None
            for c, b in zip(coeffs, basis):
                if c.is_zero():
                    continue
                piece = b.scale(c)
                acc = piece if acc is None else acc + piece
            if acc is not None and not acc.is_zero():
                new_basis.append(acc)
        basis = new_basis
        if not basis:
            return []
    if basis is None:
        basis = [Polynomial.monomial(n, e) for e in monos]
    return _echelonize_polys(basis)


def _rep_entry(rep, i, j):
    if isinstance(rep, _Mono):
        rep = _mono_to_dense(rep)
    for col, val in rep.rows[i]:
        if col == j:
            return val
    return Cyclo.zero()


def _orbit_invariants(rep, monos, n, degree):
    """Invariant basis of a monomial matrix action from orbit cycles."""
    from .cyclotomic import root_of_unity

    basis = []
    seen = set()
    for start in monos:
        if start in seen:
            continue
        orbit = [start]
        factors = []
        seen.add(start)
        current = start
        total = 0
        while True:
            image, t = _monomial_image(rep, current)
            total = (total + t) % rep.N
            if image == start:
                break
            seen.add(image)
            orbit.append(image)
            factors.append(t)
            current = image
        if total % rep.N != 0:
            continue  # no invariant combination on this orbit
        terms = {}
        acc = 0
        for idx, e in enumerate(orbit):
            # coefficient of the idx-th monomial: product of factors before it
            terms[e] = root_of_unity(rep.N, (-acc) % rep.N)
            if idx < len(factors):
                acc = (acc + factors[idx]) % rep.N
        basis.append(Polynomial(n, degree, terms))
    return basis


def _newton_complete_homogeneous(power_sums, d):
    """h_d from power sums p_1..p_d via Newton's identity (exact)."""
    h = [Cyclo.one()]
    for k in range(1, d + 1):
        acc = Cyclo.zero()
        for i in range(1, k + 1):
            acc = acc + power_sums[i - 1] * h[k - i]
        h.append(acc * Fraction(1, k))
    return h[d]


def _rep_trace(rep):
    from .cyclotomic import root_of_unity

    if isinstance(rep, _Mono):
        acc = Cyclo.zero()
        for i in range(rep.n):
            if rep.cols[i] == i:
                acc = acc + root_of_unity(rep.N, rep.exps[i])
        return acc
    acc = Cyclo.zero()
    for i, row in enumerate(rep.rows):
        for col, val in row:
            if col == i:
                acc = acc + val
    return acc


def reynolds_dimension(matrix_elements, degree):
    """dim of the degree-d invariants of an honest matrix group, by trace sum.

    matrix_elements: the full list of group elements as internal reps or
    SquareMatrix.  The average of trace(rho_d(g)) equals the invariant
    dimension; trace(rho_d(g)) is the complete homogeneous symmetric
    function h_d of the eigenvalues, computed from power sums trace(g^k).
    """
    from .poly import SquareMatrix

    total = Cyclo.zero()
    for g in matrix_elements:
        rep = matrix_to_rep(g) if isinstance(g, SquareMatrix) else g
        power_sums = []
        acc = rep
        for _ in range(degree):
            power_sums.append(_rep_trace(acc))
            acc = rep_mul(acc, rep)
        total = total + _newton_complete_homogeneous(power_sums, degree)
    q = (total * Fraction(1, len(matrix_elements))).as_rational()
    if q is None or q.denominator != 1:
        raise ArithmeticError("Reynolds trace sum is not an integer")
    return int(q)
