"""Stabilizer computations: semi-permutation stabilizers, F-liftings,
and binary-quintic stabilizers via Moebius candidates.

The diagonal part of a monomial stabilizer is the solution set of a linear
congruence system: writing diagonal entries as t_k = e^(2 pi i d_k) and the
semi-invariance unit as e^(2 pi i y), each support monomial constrains
sum_k e_k d_k - y to the argument of a coefficient ratio.  The system is
solved exactly in (Q/Z)^(n+1) through the integer Smith normal form, which
captures every finite-order solution; no modulus guess is involved.  The
global rescaling direction (1, ..., 1, d) is the unique allowed free line.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import permutations, product
from math import lcm

from .cyclotomic import Cyclo, as_root_of_unity, root_of_unity
from .errors import (
    CapExceeded,
    InfiniteFamily,
    NotDistinct,
    NotSemiInvariant,
    RootMismatch,
)
from .groups import (
    GeneratedGroup,
    ProjectiveClass,
    _Mono,
    _mono_semi_factor,
    canonicalize,
    class_semi_factor,
    group_from_elements,
    matrix_closure,
    matrix_to_rep,
    projective_order,
    rep_canonical,
    rep_is_identity,
    rep_mul,
    rep_to_matrix,
)
from .poly import SquareMatrix, semi_invariance_factor
from .snf import solve_toral


class DiagonalSolutionSet:
    """All diagonal matrices t with (P_sigma * diag(t))(F) = lambda * F.

    modulus is the lcm of all solution denominators; particular and lattice
    describe the solution group additively mod modulus (diagonal exponents
    first, then the lambda exponent when semi-invariance is allowed).
    """

    __slots__ = (
        "sigma",
        "semi",
        "modulus",
        "particular",
        "lattice",
        "non_torsion_ratio",
        "_solutions",
        "nvars",
    )

    def __init__(self, sigma, semi, modulus, particular, lattice, solutions, nvars, non_torsion_ratio=False):
        self.sigma = sigma
        self.semi = semi
        self.modulus = modulus
        self.particular = particular
        self.lattice = lattice
        self.non_torsion_ratio = non_torsion_ratio
        self._solutions = solutions
        self.nvars = nvars

    @staticmethod
    def empty(sigma, semi, nvars, non_torsion=False):
        return DiagonalSolutionSet(sigma, semi, 1, None, [], [], nvars, non_torsion)

    def count(self):
        return len(self._solutions)

    def matrices(self):
        """The solution matrices (for semi mode, one per projective class)."""
        return [rep_to_matrix(rep) for rep in self._solutions]

    def classes(self):
        return [ProjectiveClass(rep_canonical(rep)) for rep in self._solutions]




def _sigma_maps_support(sigma, support_set):
    images = {}
    for e in support_set:
        image = [0] * len(e)
        for k, ek in enumerate(e):
            if ek:
                image[sigma[k]] = ek
        image = tuple(image)
        if image not in support_set:
            return None
        images[e] = image
    return images


def diagonal_solutions(f, sigma, semi=True):
    """Solve for diagonals d with (P_sigma * diag(d))(F) semi-invariant.

    Returns every solution up to global rescaling, each verified by direct
    substitution.  Raises InfiniteFamily when the exponent-difference lattice
    is projectively rank-deficient (a positive-dimensional stabilizer).
    """
    if f.is_zero():
        raise ValueError("stabilizer of the zero polynomial")
    n = f.nvars
    sigma = tuple(sigma)
    support = set(f.terms)
    images = _sigma_maps_support(sigma, support)
    if images is None:
        return DiagonalSolutionSet.empty(sigma, semi, n)

    ncols = n + 1 if semi else n
    rows = []
    rhs = []
    for e in sorted(support, reverse=True):
        image = images[e]
        ratio = f.terms[image] / f.terms[e]
        root = as_root_of_unity(ratio)
        if root is None:
            return DiagonalSolutionSet.empty(sigma, semi, n, non_torsion=True)
        order, exponent = root
        row = list(e) + ([-1] if semi else [])
        rows.append(row)
        rhs.append(Fraction(exponent, order))
    solution = solve_toral(rows, rhs)
    if solution is None:
        return DiagonalSolutionSet.empty(sigma, semi, n)

    # the only admissible free direction is the global rescaling line
    scalar_dir = tuple([1] * n + ([f.degree] if semi else []))
    for free in solution.free:
        if not _proportional_int(free, scalar_dir):
            raise InfiniteFamily(
                f"free diagonal direction {free} beyond global rescaling"
            )
    if semi and not solution.free:
        # the rescaling line solves the homogeneous system, so it must appear
        raise InfiniteFamily("missing rescaling direction; inconsistent system")
    if not semi and solution.free:
        raise InfiniteFamily("positive-dimensional strict stabilizer")

    all_solutions = solution.enumerate()
    modulus = 1
    for sol in all_solutions:
        for x in sol[:n]:
            modulus = lcm(modulus, x.denominator)
    reps = []
    for sol in all_solutions:
        ints = tuple(int(x * modulus) % modulus for x in sol[:n])
        rep = _Mono(n, modulus, sigma, ints)
        lam = _mono_semi_factor(rep, f)
        if lam is None or (not semi and not lam.is_one()):
            raise AssertionError("enumerated solution fails substitution check")
        reps.append(rep)

    particular = tuple(
        int(x * modulus) % modulus for x in solution.particular[:n]
    )
    lattice = [
        (tuple(int(x * modulus) % modulus for x in gen[:n]), order)
        for gen, order in solution.torsion
    ]
    return DiagonalSolutionSet(
        sigma, semi, modulus, particular, lattice, reps, n
    )


def _proportional_int(vec, direction):
    """vec parallel to direction over Q (both integer tuples)."""
    for i in range(len(vec)):
        for j in range(len(vec)):
            if vec[i] * direction[j] != vec[j] * direction[i]:
                return False
    return True


def semiperm_stabilizer(f, semi=True, cap=200000):
    """The group of semi-permutation projective classes preserving F.

    Union over all compatible column permutations of the diagonal solution
    sets; closure of the collected set is verified, not assumed.
    """
    if f.is_zero():
        raise ValueError("stabilizer of the zero polynomial")
    n = f.nvars
    classes = []
    seen = set()
    for sigma in permutations(range(n)):
        ds = diagonal_solutions(f, sigma, semi=semi)
        for pc in ds.classes():
            amb = pc.conductor()
            key = (sigma, pc.key(amb), amb)
            if key not in seen:
                seen.add(key)
                classes.append(pc)
        if len(classes) > cap:
            raise CapExceeded(cap)
    return group_from_elements(classes, cap=cap)


def _rep_pow(rep, k):
    acc = None
    base = rep
    while k:
        if k & 1:
            acc = base if acc is None else rep_mul(acc, base)
        k >>= 1
        if k:
            base = rep_mul(base, base)
    return acc


def _fifth_root_scalars(lam):
    """The five scalars c with c^5 = lam^(-1), for a root of unity lam."""
    root = as_root_of_unity(lam)
    if root is None:
        raise NotSemiInvariant("factor is not a root of unity")
    order, exponent = root
    base = root_of_unity(5 * order, (-exponent) % (5 * order))
    return [base * root_of_unity(5, k) for k in range(5)]


def f_lift_element(pc, f):
    """An honest lift c*A with (cA)(F) = F and ord(cA) = projective order.

    Returns the lifted matrix, or None: by construction the five scalar
    branches are the complete set of F-preserving lifts, so None decides
    non-liftability of the cyclic group generated by the class.
    """
    pc = canonicalize(pc)
    lam = class_semi_factor(pc, f)
    if lam is None:
        raise NotSemiInvariant("class is not semi-invariant on F")
    target = projective_order(pc)
    a = pc.matrix()
    for c in _fifth_root_scalars(lam):
        lifted = a.scale(c)
        rep = matrix_to_rep(lifted)
        power = _rep_pow(rep, target)
        if rep_is_identity(power):
            lam_check = semi_invariance_factor(lifted, f)
            assert lam_check is not None and lam_check.is_one()
            return lifted
    return None


def _scalar_in_derived_closure(lifted_gens, cap):
    """True iff the derived subgroup of the lifted matrix group contains a
    nontrivial scalar; independent of the scalar branch choice since
    commutators cancel central scalars."""
    reps = [matrix_to_rep(g) for g in lifted_gens]
    inv = [matrix_to_rep(rep_to_matrix(r).inverse()) for r in reps]
    commutators = []
    for i in range(len(reps)):
        for j in range(len(reps)):
            if i == j:
                continue
            c = rep_mul(rep_mul(reps[i], reps[j]), rep_mul(inv[i], inv[j]))
            if not rep_is_identity(c):
                commutators.append(rep_to_matrix(c))
    if not commutators:
        return False
    dgens = list(commutators)
    while True:
        try:
            elements, hit = matrix_closure(dgens, cap=cap, abort_on_scalar=True)
        except CapExceeded:
            return False  # inconclusive; fall back to branch enumeration
        if hit:
            return True
        from math import lcm as _lcm

        from .groups import rep_conductor, rep_key

        amb = 1
        for e in elements:
            amb = _lcm(amb, rep_conductor(e))
        keys = {rep_key(e, amb) for e in elements}
        new = []
        for d in dgens:
            drep = matrix_to_rep(d) if isinstance(d, SquareMatrix) else d
            for r, ri in zip(reps, inv):
                c = rep_mul(rep_mul(r, drep), ri)
                if rep_key(c, amb) not in keys:
                    new.append(rep_to_matrix(c))
        if not new:
            return False
        dgens.extend(new)


def f_lift_group(group, f, branch_limit=120000):
    """An F-lifting of the whole group: lifted generators whose matrix-group
    closure has order exactly |G|, or None when every branch fails."""
    gens = group.generators
    if not gens:
        return [SquareMatrix.identity(group.elements[0].n)]
    branches = []
    for g in gens:
        lam = class_semi_factor(g, f)
        if lam is None:
            raise NotSemiInvariant("generator is not semi-invariant on F")
        a = g.matrix()
        branches.append([a.scale(c) for c in _fifth_root_scalars(lam)])
    cap = 10 * group.order

    canonical = [b[0] for b in branches]
    if _scalar_in_derived_closure(canonical, cap):
        return None
    total = 5 ** len(branches)
    if total > branch_limit:
        raise CapExceeded(branch_limit)
    for combo in product(*branches):
        try:
            elements, hit = matrix_closure(list(combo), cap=cap, abort_on_scalar=True)
        except CapExceeded:
            continue
        if hit:
            continue
        if len(elements) == group.order:
            return list(combo)
    return None


def _projective_pair_equal(p, q):
    # p, q: pairs of Cyclo coordinates
    return (p[0] * q[1] - p[1] * q[0]).is_zero()


def _standardizing_matrix(p1, p2, p3):
    """The 2x2 matrix sending p1, p2, p3 to [1:0], [0:1], [1:1]."""
    (a1, b1), (a2, b2), (a3, b3) = p1, p2, p3
    u = b2 * a3 - a2 * b3
    v = b1 * a3 - a1 * b3
    rows = [[v * b2, -(v * a2)], [u * b1, -(u * a1)]]
    return SquareMatrix(rows)


def binary_quintic_stabilizer(h, roots):
    """Projective stabilizer of a binary quintic with five distinct roots.

    Each stabilizer element is determined by the images of three fixed roots,
    so the 60 ordered triples of distinct roots are the complete candidate
    set; a candidate survives iff it permutes the root set.
    """
    if h.nvars != 2 or h.degree != 5:
        raise ValueError("expected a binary quintic")
    roots = [tuple(r) for r in roots]
    if len(roots) != 5:
        raise NotDistinct("need exactly five roots")
    for i in range(5):
        for j in range(i + 1, 5):
            if _projective_pair_equal(roots[i], roots[j]):
                raise NotDistinct(f"roots {i} and {j} coincide")
    for r in roots:
        if not h.evaluate(r).is_zero():
            raise RootMismatch(f"polynomial does not vanish at {r}")

    base = _standardizing_matrix(roots[0], roots[1], roots[2])
    found = []
    for triple in permutations(range(5), 3):
        target = _standardizing_matrix(*(roots[t] for t in triple))
        t = target.inverse() * base
        image_ok = True
        for r in roots:
            tx = (
                t.entries[0][0] * r[0] + t.entries[0][1] * r[1],
                t.entries[1][0] * r[0] + t.entries[1][1] * r[1],
            )
            if not any(_projective_pair_equal(tx, s) for s in roots):
                image_ok = False
                break
        if image_ok:
            found.append(canonicalize(t))
    return group_from_elements(found)
