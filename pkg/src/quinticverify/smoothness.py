"""Smoothness and singularity certification for projective hypersurfaces.

Verdicts are deliberately one-sided: a smooth verdict is rigorous (smooth
reduction at a good prime forces characteristic-zero smoothness, since a
singular hypersurface has vanishing discriminant at every reduction), while
a singular verdict is rigorous only when backed by a combinatorial or
witness certificate.
"""
from __future__ import annotations

from itertools import combinations
from math import lcm

from .cyclotomic import Cyclo, choose_prime, reduce_mod, root_of_unity
from .errors import BadDenominator
from .groebner import buchberger, has_pure_power_leads
from .poly import partial


class CombinatorialCertificate:
    """F lies in (x_a1,...) + (x_b1,...)^2 with 2|a| + |b| <= n-1."""

    __slots__ = ("a_vars", "b_vars")

    def __init__(self, a_vars, b_vars):
        self.a_vars = tuple(sorted(a_vars))
        self.b_vars = tuple(sorted(b_vars))

    def as_dict(self):
        return {
            "kind": "combinatorial",
            "aVars": list(self.a_vars),
            "bVars": list(self.b_vars),
        }

    def __repr__(self):
        return f"Combinatorial(a={self.a_vars}, b={self.b_vars})"


class WitnessCertificate:
    """A nonzero projective point annihilating all partial derivatives."""

    __slots__ = ("point",)

    def __init__(self, point):
        self.point = tuple(point)

    def as_dict(self):
        from .parsing import format_cyclo

        return {"kind": "witness", "point": [format_cyclo(c) for c in self.point]}

    def __repr__(self):
        return f"Witness({self.point!r})"


class SupportLevelCertificate:
    """A combinatorial certificate valid for every polynomial in a support family."""

    __slots__ = ("a_vars", "b_vars", "prop_condition")

    def __init__(self, a_vars, b_vars):
        self.a_vars = tuple(sorted(a_vars))
        self.b_vars = tuple(sorted(b_vars))
        self.prop_condition = _prop_condition_id(self.a_vars, self.b_vars)

    def as_dict(self):
        return {
            "kind": "support-level",
            "aVars": list(self.a_vars),
            "bVars": list(self.b_vars),
            "propCondition": self.prop_condition,
        }

    def __repr__(self):
        return f"SupportLevel(a={self.a_vars}, b={self.b_vars}, cond={self.prop_condition})"


def _prop_condition_id(a_vars, b_vars):
    # The three quintic-specific shapes; the general (a, b) pattern otherwise.
    if len(a_vars) == 0 and len(b_vars) == 4:
        return 1
    if len(a_vars) == 2 and len(b_vars) == 0:
        return 2
    if len(a_vars) == 1 and len(b_vars) == 2:
        return 3
    return None


class SmoothnessVerdict:
    KINDS = ("SmoothCertified", "SingularCertified", "SingularLikely", "Unknown")

    __slots__ = ("kind", "prime", "certificate", "tested_primes")

    def __init__(self, kind, prime=None, certificate=None, tested_primes=()):
        self.kind = kind
        self.prime = prime
        self.certificate = certificate
        self.tested_primes = tuple(tested_primes)

    def is_smooth(self):
        return self.kind == "SmoothCertified"

    def as_dict(self):
        out = {"kind": self.kind}
        if self.prime is not None:
            out["prime"] = str(self.prime)
        if self.certificate is not None:
            out["certificate"] = self.certificate.as_dict()
        if self.tested_primes:
            out["testedPrimes"] = [str(p) for p in self.tested_primes]
        return out

    def __repr__(self):
        extra = f", p={self.prime}" if self.prime else ""
        return f"SmoothnessVerdict({self.kind}{extra})"


def check_power_monomials(f):
    """Indices i (1-based) with no x_i^(d-1)*x_j in the support of f."""
    n, d = f.nvars, f.degree
    failing = []
    for i in range(n):
        found = False
        for e in f.terms:
            if e[i] >= d - 1:
                found = True
                break
        if not found:
            failing.append(i + 1)
    return failing


def _support_cert_pairs(n):
    """All (a_vars, b_vars) with 2|a| + |b| <= n - 1, in a deterministic order."""
    out = []
    variables = range(1, n + 1)
    for a_size in range((n - 1) // 2 + 1):
        for b_size in range(n - 1 - 2 * a_size + 1):
            if a_size == 0 and b_size == 0:
                continue
            for a in combinations(variables, a_size):
                rest = [v for v in variables if v not in a]
                for b in combinations(rest, b_size):
                    out.append((a, b))
    out.sort(key=lambda ab: (len(ab[0]) + len(ab[1]), len(ab[0]), ab[0], ab[1]))
    return out


def _support_satisfies(support, a_vars, b_vars):
    for e in support:
        if any(e[i - 1] for i in a_vars):
            continue
        if sum(e[j - 1] for j in b_vars) >= 2:
            continue
        return False
    return True


def combinatorial_singularity(f):
    """Least (a, b) certificate for a single polynomial, or None."""
    support = list(f.terms)
    for a_vars, b_vars in _support_cert_pairs(f.nvars):
        if _support_satisfies(support, a_vars, b_vars):
            return CombinatorialCertificate(a_vars, b_vars)
    return None


def support_family_singular(support, n, d):
    """A certificate valid for every nonzero polynomial with support in the set."""
    support = list(support)
    for e in support:
        if len(e) != n or sum(e) != d:
            raise ValueError(f"support vector {e} does not match n={n}, d={d}")
    for a_vars, b_vars in _support_cert_pairs(n):
        if _support_satisfies(support, a_vars, b_vars):
            return SupportLevelCertificate(a_vars, b_vars)
    return None


def jacobian_smooth_mod_p(f, emb):
    """Jacobian criterion over F_p via a Groebner basis of the partials.

    True iff the ideal (d1 F, ..., dn F) is zero-dimensional at the origin,
    i.e. each variable has a pure power among the leading monomials.
    """
    n = f.nvars
    gens = []
    for i in range(1, n + 1):
        g = partial(f, i)
        reduced = {}
        for e, c in g.terms.items():
            v = reduce_mod(c, emb)
            if v:
                reduced[e] = v
        gens.append(reduced)
    if any(not g for g in gens):
        # a vanishing partial derivative: the form misses a variable direction
        return False
    basis = buchberger(gens, emb.prime)
    return has_pure_power_leads(basis, n)


def verify_witness(f, point):
    """True iff every partial derivative vanishes exactly at the nonzero point."""
    if all(c.is_zero() for c in point):
        raise ValueError("witness point must be nonzero")
    for i in range(1, f.nvars + 1):
        if not partial(f, i).evaluate(point).is_zero():
            return False
    return True


def _good_embeddings(f, max_primes):
    """Conductor-compatible embeddings, skipping primes dividing denominators."""
    bad = 1
    for c in f.terms.values():
        bad = lcm(bad, c.den)
    out = []
    skip = 0
    while len(out) < max_primes and skip < max_primes + 40:
        emb = choose_prime(f.conductor, skip)
        skip += 1
        if bad % emb.prime == 0:
            continue
        out.append(emb)
    return out


def _witness_lift_attempt(f, embeddings, point_budget=200000):
    """Try to lift an F_p singular point to exact cyclotomic coordinates.

    Brute-forces projective points over the smallest tested prime, then
    pattern-matches each coordinate against a bounded set of small cyclotomic
    values.  Failure is expected and acceptable.
    """
    embs = [e for e in embeddings if e.prime <= 13]
    if not embs:
        return None
    emb = embs[0]
    p = emb.prime
    n = f.nvars
    parts = [partial(f, i) for i in range(1, n + 1)]
    parts_p = []
    for g in parts:
        parts_p.append({e: reduce_mod(c, emb) for e, c in g.terms.items()})

    def eval_mod(poly, pt):
        acc = 0
        for e, c in poly.items():
            v = c
            for x, k in zip(pt, e):
                if k:
                    v = v * pow(x, k, p) % p
            acc = (acc + v) % p
        return acc

    candidates = _small_cyclo_candidates(f.conductor)
    reductions = {}
    for value in candidates:
        try:
            reductions.setdefault(reduce_mod(value, emb), []).append(value)
        except BadDenominator:
            continue

    count = 0
    for pt in _projective_points(p, n):
        count += 1
        if count > point_budget:
            break
        if all(eval_mod(g, pt) == 0 for g in parts_p):
            # try coordinate-wise lift
            options = []
            for x in pt:
                opts = reductions.get(x, [])
                if not opts:
                    break
                options.append(opts)
            else:
                lifted = _search_lift(f, options)
                if lifted is not None:
                    return WitnessCertificate(lifted)
    return None


def _small_cyclo_candidates(conductor):
    out = [Cyclo.from_rational(k) for k in (0, 1, -1, 2, -2, 3, -3)]
    if conductor > 1:
        for k in range(1, conductor):
            z = root_of_unity(conductor, k)
            out.append(z)
            out.append(-z)
            out.append(z + 1)
            out.append(z - 1)
    return out


def _search_lift(f, options, cap=20000):
    def rec(prefix, idx, budget):
        if budget[0] <= 0:
            return None
        if idx == len(options):
            budget[0] -= 1
            point = tuple(prefix)
            if all(c.is_zero() for c in point):
                return None
            if verify_witness(f, point):
                return point
            return None
        for opt in options[idx]:
            got = rec(prefix + [opt], idx + 1, budget)
            if got is not None:
                return got
        return None

    return rec([], 0, [cap])


def _projective_points(p, n):
    """Canonical representatives (first nonzero coordinate 1) of P^(n-1)(F_p)."""
    for lead in range(n):
        prefix = (0,) * lead + (1,)
        free = n - lead - 1

        def rec(pt, k):
            if k == 0:
                yield pt
                return
            for v in range(p):
                yield from rec(pt + (v,), k - 1)

        yield from rec(prefix, free)


def certify(f, max_primes=3):
    """Certification policy: combinatorics, then good primes, then witness."""
    cert = combinatorial_singularity(f)
    if cert is not None:
        return SmoothnessVerdict("SingularCertified", certificate=cert)
    embeddings = _good_embeddings(f, max_primes)
    tested = []
    for emb in embeddings:
        try:
            smooth = jacobian_smooth_mod_p(f, emb)
        except BadDenominator:
            continue
        tested.append(emb.prime)
        if smooth:
            return SmoothnessVerdict("SmoothCertified", prime=emb.prime)
    if not tested:
        return SmoothnessVerdict("Unknown")
    witness = _witness_lift_attempt(f, embeddings)
    if witness is not None:
        return SmoothnessVerdict("SingularCertified", certificate=witness)
    return SmoothnessVerdict("SingularLikely", tested_primes=tested)
