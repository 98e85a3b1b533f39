"""Projective classes of invertible matrices and finite group enumeration.

Elements are stored canonically (first nonzero entry in row-major order
scaled to 1) in one of two internal forms: a monomial form holding a column
permutation plus root-of-unity exponents, with pure integer arithmetic, and
a sparse-row form over Cyclo entries for everything else.  Group closure is
a breadth-first walk deduplicated by hashable keys at a fixed ambient
conductor.
"""
from __future__ import annotations

from math import gcd, lcm

from .cyclotomic import Cyclo, as_root_of_unity, root_of_unity
from .errors import CapExceeded, NotInvariant, SingularMatrix
from .poly import SquareMatrix, semi_invariance_factor

DEFAULT_CAP = 200000
ORDER_CAP = 10**6


class _Mono:
    """Monomial matrix: row i has the single entry zeta_N^exps[i] at cols[i]."""

    __slots__ = ("n", "N", "cols", "exps")

    def __init__(self, n, N, cols, exps):
        self.n = n
        self.N = N
        self.cols = cols
        self.exps = exps


class _Dense:
    """Sparse-row matrix; rows are tuples of (column, nonzero Cyclo)."""

    __slots__ = ("n", "rows")

    def __init__(self, n, rows):
        self.n = n
        self.rows = rows


def _mono_identity(n):
    return _Mono(n, 1, tuple(range(n)), (0,) * n)


def _mono_mul(a, b):
    big = lcm(a.N, b.N)
    sa, sb = big // a.N, big // b.N
    acols, bcols = a.cols, b.cols
    aexps, bexps = a.exps, b.exps
    cols = tuple(bcols[k] for k in acols)
    exps = tuple(
        (aexps[i] * sa + bexps[acols[i]] * sb) % big for i in range(len(acols))
    )
    return _Mono(a.n, big, cols, exps)


def _mono_canonical(m):
    e0 = m.exps[0]
    if e0 == 0:
        return m
    return _Mono(m.n, m.N, m.cols, tuple((e - e0) % m.N for e in m.exps))


def _mono_to_dense(m):
    rows = tuple(
        ((m.cols[i], root_of_unity(m.N, m.exps[i])),) for i in range(m.n)
    )
    return _Dense(m.n, rows)


def _dense_mul(a, b):
    if isinstance(a, _Mono):
        a = _mono_to_dense(a)
    if isinstance(b, _Mono):
        b = _mono_to_dense(b)
    brows = b.rows
    out = []
    for row in a.rows:
        acc = {}
        for k, x in row:
            for j, y in brows[k]:
                prior = acc.get(j)
                v = x * y if prior is None else prior + x * y
                if v.is_zero():
                    acc.pop(j, None)
                else:
                    acc[j] = v
        out.append(tuple(sorted(acc.items())))
    d = _Dense(a.n, tuple(out))
    # keep the representation canonical: monomial matrices with root entries
    # always travel in monomial form, so keys never depend on the route taken
    mono = _try_mono(d)
    return mono if mono is not None else d


def rep_mul(a, b):
    if isinstance(a, _Mono) and isinstance(b, _Mono):
        return _mono_mul(a, b)
    return _dense_mul(a, b)


def _dense_first_entry(d):
    for row in d.rows:
        if row:
            return row[0][1]
    raise SingularMatrix("zero matrix")


def _dense_scale(d, c):
    return _Dense(
        d.n, tuple(tuple((j, c * x) for j, x in row) for row in d.rows)
    )


def _try_mono(d):
    """Convert a sparse-row matrix to monomial form when possible."""
    n = d.n
    cols = []
    pairs = []
    seen_cols = set()
    for row in d.rows:
        if len(row) != 1:
            return None
        j, x = row[0]
        if j in seen_cols:
            return None
        seen_cols.add(j)
        root = as_root_of_unity(x)
        if root is None:
            return None
        cols.append(j)
        pairs.append(root)
    big = 1
    for order, _ in pairs:
        big = lcm(big, order)
    exps = tuple((e * (big // order)) % big for order, e in pairs)
    return _Mono(n, big, tuple(cols), exps)


def rep_canonical(rep):
    if isinstance(rep, _Mono):
        return _mono_canonical(rep)
    s = _dense_first_entry(rep)
    if not s.is_one():
        rep = _dense_scale(rep, s.inverse())
    mono = _try_mono(rep)
    return mono if mono is not None else rep


def rep_key(rep, ambient):
    if isinstance(rep, _Mono):
        step = ambient // rep.N
        return (rep.cols, tuple(e * step for e in rep.exps))
    return tuple(
        tuple((j, x.key(ambient)) for j, x in row) for row in rep.rows
    )


def rep_conductor(rep):
    if isinstance(rep, _Mono):
        return rep.N
    n = 1
    for row in rep.rows:
        for _, x in row:
            n = lcm(n, x.n)
    return n


def rep_is_scalar(rep):
    if isinstance(rep, _Mono):
        return all(rep.cols[i] == i for i in range(rep.n)) and len(set(rep.exps)) == 1
    first = None
    for i, row in enumerate(rep.rows):
        if len(row) != 1 or row[0][0] != i:
            return False
        if first is None:
            first = row[0][1]
        elif not (row[0][1] == first):
            return False
    return True


def rep_is_identity(rep):
    if isinstance(rep, _Mono):
        return all(rep.cols[i] == i for i in range(rep.n)) and not any(rep.exps)
    return all(
        len(row) == 1 and row[0][0] == i and row[0][1].is_one()
        for i, row in enumerate(rep.rows)
    )


def rep_inverse(rep):
    if isinstance(rep, _Mono):
        cols = [0] * rep.n
        exps = [0] * rep.n
        for i in range(rep.n):
            c = rep.cols[i]
            cols[c] = i
            exps[c] = (-rep.exps[i]) % rep.N
        return _Mono(rep.n, rep.N, tuple(cols), tuple(exps))
    return matrix_to_rep(rep_to_matrix(rep).inverse())


def _perm_sign(cols):
    seen = [False] * len(cols)
    sign = 1
    for i in range(len(cols)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = cols[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def rep_det(rep):
    if isinstance(rep, _Mono):
        d = root_of_unity(rep.N, sum(rep.exps) % rep.N)
        return -d if _perm_sign(rep.cols) < 0 else d
    return rep_to_matrix(rep).det()


def rep_to_matrix(rep):
    if isinstance(rep, _Mono):
        rep = _mono_to_dense(rep)
    zero = Cyclo.zero()
    out = []
    for row in rep.rows:
        full = [zero] * rep.n
        for j, x in row:
            full[j] = x
        out.append(full)
    return SquareMatrix(out, check=False)


def matrix_to_rep(m):
    rows = []
    for i in range(m.n):
        row = tuple(
            (j, m.entries[i][j]) for j in range(m.n) if not m.entries[i][j].is_zero()
        )
        if not row:
            raise SingularMatrix("matrix has a zero row")
        rows.append(row)
    d = _Dense(m.n, tuple(rows))
    mono = _try_mono(d)
    return mono if mono is not None else d


class ProjectiveClass:
    """A canonical representative of an element of PGL(n)."""

    __slots__ = ("rep",)

    def __init__(self, rep):
        self.rep = rep

    @property
    def n(self):
        return self.rep.n

    def matrix(self):
        return rep_to_matrix(self.rep)

    def key(self, ambient):
        return rep_key(self.rep, ambient)

    def conductor(self):
        return rep_conductor(self.rep)

    def is_identity(self):
        return rep_is_identity(self.rep)

    def __mul__(self, other):
        return ProjectiveClass(rep_canonical(rep_mul(self.rep, other.rep)))

    def inverse(self):
        return ProjectiveClass(rep_canonical(rep_inverse(self.rep)))

    def __eq__(self, other):
        if not isinstance(other, ProjectiveClass):
            return NotImplemented
        amb = lcm(self.conductor(), other.conductor())
        return self.key(amb) == other.key(amb)

    __hash__ = None

    def __repr__(self):
        return f"ProjectiveClass({self.matrix()!r})"


def canonicalize(a):
    """Canonical projective class of an invertible matrix."""
    if isinstance(a, ProjectiveClass):
        return a
    if isinstance(a, SquareMatrix):
        if a.det().is_zero():
            raise SingularMatrix("projective class of a singular matrix")
        return ProjectiveClass(rep_canonical(matrix_to_rep(a)))
    return ProjectiveClass(rep_canonical(a))


def is_semi_permutation(a):
    """True iff the matrix has exactly one nonzero entry per row and column."""
    rep = canonicalize(a).rep
    if isinstance(rep, _Mono):
        return True
    cols = set()
    for row in rep.rows:
        if len(row) != 1:
            return False
        cols.add(row[0][0])
    return len(cols) == rep.n


class GeneratedGroup:
    """A fully enumerated finite subgroup of PGL(n)."""

    __slots__ = ("elements", "generators", "ambient", "index")

    def __init__(self, elements, generators, ambient, index):
        self.elements = elements
        self.generators = generators
        self.ambient = ambient
        self.index = index

    @property
    def order(self):
        return len(self.elements)

    def contains(self, pc):
        amb = self.ambient
        if amb % pc.conductor() != 0:
            amb = lcm(amb, pc.conductor())
            if amb != self.ambient:
                return any(pc == e for e in self.elements)
        return pc.key(self.ambient) in self.index

    def element_index(self, pc):
        return self.index[pc.key(self.ambient)]

    def product(self, i, j):
        """Index of elements[i] * elements[j] (on-demand multiplication oracle)."""
        return self.element_index(self.elements[i] * self.elements[j])

    def __repr__(self):
        return f"GeneratedGroup(order={self.order})"


def _ambient_of(classes):
    amb = 1
    for pc in classes:
        amb = lcm(amb, pc.conductor())
    return amb


def closure(generators, cap=DEFAULT_CAP):
    """Breadth-first closure under left multiplication by the generators."""
    gens = [canonicalize(g) for g in generators]
    if not gens:
        raise ValueError("closure requires at least one generator")
    n = gens[0].n
    for g in gens:
        if g.n != n:
            raise ValueError("generators of mixed dimension")
    amb = _ambient_of(gens)
    ident = ProjectiveClass(_mono_identity(n))
    elements = [ident]
    index = {ident.key(amb): 0}
    frontier = [ident]
    while frontier:
        next_frontier = []
        for x in frontier:
            for g in gens:
                y = ProjectiveClass(rep_canonical(rep_mul(g.rep, x.rep)))
                k = y.key(amb)
                if k not in index:
                    if len(elements) >= cap:
                        raise CapExceeded(cap)
                    index[k] = len(elements)
                    elements.append(y)
                    next_frontier.append(y)
        frontier = next_frontier
    return GeneratedGroup(elements, gens, amb, index)


def group_from_elements(classes, cap=DEFAULT_CAP):
    """Build a GeneratedGroup from a closed element set, verifying closure.

    A greedy generating subset is grown until its closure reproduces the set;
    the closure is then checked to be exactly the given set.
    """
    classes = [canonicalize(c) for c in classes]
    if not classes:
        raise ValueError("empty element set")
    amb = _ambient_of(classes)
    keyset = {c.key(amb) for c in classes}
    gens = []
    current = None
    for c in classes:
        if c.is_identity():
            continue
        if current is not None and c.key(amb) in current.index:
            continue
        gens.append(c)
        current = closure(gens, cap=cap)
        if current.ambient != amb:
            current = GeneratedGroup(
                current.elements,
                current.generators,
                amb,
                {e.key(amb): i for i, e in enumerate(current.elements)},
            )
    if current is None:
        ident = ProjectiveClass(_mono_identity(classes[0].n))
        current = GeneratedGroup([ident], [], amb, {ident.key(amb): 0})
    got = set(current.index)
    if got != keyset:
        raise NotInvariant("element set is not closed under multiplication")
    return current


def projective_order(pc, cap=ORDER_CAP):
    """Least m with pc^m scalar."""
    rep = canonicalize(pc).rep
    if isinstance(rep, _Mono):
        # order of the permutation part
        k0 = 1
        seen = [False] * rep.n
        for i in range(rep.n):
            if seen[i]:
                continue
            length = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = rep.cols[j]
                length += 1
            k0 = k0 * length // gcd(k0, length)
        b = rep
        for _ in range(k0 - 1):
            b = _mono_mul(b, rep)
        # b is diagonal; projective order = order of the difference vector
        diffs = [(e - b.exps[0]) % b.N for e in b.exps]
        g = b.N
        for d in diffs:
            g = gcd(g, d)
        m = b.N // g
        order = k0 * m
        if order > cap:
            raise CapExceeded(cap)
        return order
    acc = rep
    for m in range(1, cap + 1):
        if rep_is_scalar(acc):
            return m
        acc = rep_mul(acc, rep)
    raise CapExceeded(cap)


class GroupFingerprint:
    """Structural invariants replacing abstract isomorphism identification."""

    __slots__ = (
        "order",
        "is_abelian",
        "exponent",
        "element_order_histogram",
        "center_order",
        "derived_subgroup_order",
        "conjugacy_class_count",
    )

    def __init__(
        self,
        order,
        is_abelian,
        exponent,
        element_order_histogram,
        center_order,
        derived_subgroup_order,
        conjugacy_class_count,
    ):
        self.order = order
        self.is_abelian = is_abelian
        self.exponent = exponent
        self.element_order_histogram = element_order_histogram
        self.center_order = center_order
        self.derived_subgroup_order = derived_subgroup_order
        self.conjugacy_class_count = conjugacy_class_count

    def as_dict(self):
        return {
            "order": self.order,
            "isAbelian": self.is_abelian,
            "exponent": self.exponent,
            "elementOrderHistogram": dict(sorted(self.element_order_histogram.items())),
            "centerOrder": self.center_order,
            "derivedSubgroupOrder": self.derived_subgroup_order,
            "conjugacyClassCount": self.conjugacy_class_count,
        }


CLASS_COUNT_LIMIT = 5000


def fingerprint(group, class_count_limit=CLASS_COUNT_LIMIT):
    amb = group.ambient
    gens = group.generators
    order = group.order
    histogram = {}
    exponent = 1
    for e in group.elements:
        m = projective_order(e)
        histogram[m] = histogram.get(m, 0) + 1
        exponent = exponent * m // gcd(exponent, m)
    center_order = 0
    for e in group.elements:
        if all(
            rep_key(rep_canonical(rep_mul(e.rep, g.rep)), amb)
            == rep_key(rep_canonical(rep_mul(g.rep, e.rep)), amb)
            for g in gens
        ):
            center_order += 1
    is_abelian = center_order == order
    derived_order = _derived_subgroup_order(group)
    class_count = None
    if order <= class_count_limit:
        class_count = _conjugacy_class_count(group)
    return GroupFingerprint(
        order, is_abelian, exponent, histogram, center_order, derived_order, class_count
    )


def _derived_subgroup_order(group):
    gens = group.generators
    if not gens:
        return 1
    inv = [g.inverse() for g in gens]
    seed = []
    amb = group.ambient
    seen = set()
    for i, a in enumerate(gens):
        for j, b in enumerate(gens):
            if i == j:
                continue
            c = a * b * inv[i] * inv[j]
            k = c.key(amb)
            if k not in seen and not c.is_identity():
                seen.add(k)
                seed.append(c)
    if not seed:
        return 1
    dgens = list(seed)
    while True:
        sub = closure(dgens, cap=group.order + 1)
        new = []
        keys = {e.key(amb) for e in sub.elements}
        for d in dgens:
            for g, gi in zip(gens, inv):
                c = g * d * gi
                if c.key(amb) not in keys:
                    new.append(c)
        if not new:
            return sub.order
        dgens.extend(new)


def _conjugacy_class_count(group):
    amb = group.ambient
    gens = group.generators
    inv = [g.inverse() for g in gens]
    unvisited = dict(group.index)
    count = 0
    for e in group.elements:
        k = e.key(amb)
        if k not in unvisited:
            continue
        count += 1
        orbit = [e]
        del unvisited[k]
        while orbit:
            x = orbit.pop()
            for g, gi in zip(gens, inv):
                y = g * x * gi
                yk = y.key(amb)
                if yk in unvisited:
                    del unvisited[yk]
                    orbit.append(y)
    return count


def _mono_semi_factor(rep, f):
    """Semi-invariance factor of a monomial class on f, or None."""
    support = f.support()
    cols = rep.cols
    n = rep.N
    lam = None
    for e in support:
        image = [0] * len(e)
        t = 0
        for k, ek in enumerate(e):
            if ek:
                image[cols[k]] = ek
                t += ek * rep.exps[k]
        image = tuple(image)
        ce = f.terms.get(e)
        ci = f.terms.get(image)
        if ci is None:
            return None
        value = (ce / ci) * root_of_unity(n, t % n)
        if lam is None:
            lam = value
        elif not (lam == value):
            return None
    return lam


def class_semi_factor(pc, f):
    """Semi-invariance factor of a projective class's canonical rep on f."""
    rep = canonicalize(pc).rep
    if isinstance(rep, _Mono):
        return _mono_semi_factor(rep, f)
    return semi_invariance_factor(rep_to_matrix(rep), f)


def gorenstein_subgroup(group, f):
    """Subgroup of classes whose canonical rep satisfies lambda = det on f.

    n = degree = 5 makes the test scaling-invariant, so the canonical
    representative is as good as any.
    """
    members = []
    for e in group.elements:
        lam = class_semi_factor(e, f)
        if lam is None:
            raise NotInvariant("group element is not semi-invariant on F")
        if lam == rep_det(e.rep):
            members.append(e)
    return group_from_elements(members, cap=group.order + 1)


def matrix_closure(generators, cap, abort_on_scalar=False):
    """Closure of honest matrices in GL(n) (no projective identification).

    Returns (elements, hit_scalar): hit_scalar reports a non-identity scalar
    matrix in the group, and when abort_on_scalar is set the walk stops there.
    """
    gens = [matrix_to_rep(g) if isinstance(g, SquareMatrix) else g for g in generators]
    n = gens[0].n
    amb = 1
    for g in gens:
        amb = lcm(amb, rep_conductor(g))
    ident = _mono_identity(n)
    elements = [ident]
    index = {rep_key(ident, amb): 0}
    frontier = [ident]
    hit_scalar = False
    while frontier:
        next_frontier = []
        for x in frontier:
            for g in gens:
                y = rep_mul(g, x)
                k = rep_key(y, amb)
                if k not in index:
                    if len(elements) >= cap:
                        raise CapExceeded(cap)
                    index[k] = len(elements)
                    elements.append(y)
                    next_frontier.append(y)
                    if rep_is_scalar(y) and not rep_is_identity(y):
                        hit_scalar = True
                        if abort_on_scalar:
                            return elements, True
        frontier = next_frontier
    return elements, hit_scalar
