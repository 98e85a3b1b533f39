"""Finite exclusion sweeps over diagonal weight data, and admissible orders.

Sweeps never touch matrices: a diagonal projective class is a weight vector
mod N, and a support family is certified singular purely combinatorially.
Candidate encodings in reports are sorted, so serial and chunked runs merge
to identical output.
"""
from __future__ import annotations

from itertools import combinations, combinations_with_replacement
from math import gcd

from .cyclotomic import Cyclo
from .poly import Polynomial, monomials_of_degree
from .smoothness import certify, support_family_singular, _support_cert_pairs


class SweepReport:
    __slots__ = (
        "name",
        "enumerated",
        "excluded",
        "candidates",
        "survivors",
        "escalations",
        "counterexamples",
    )

    def __init__(self, name, enumerated, excluded, candidates, survivors, escalations, counterexamples):
        self.name = name
        self.enumerated = enumerated
        self.excluded = excluded
        self.candidates = candidates
        self.survivors = survivors
        self.escalations = escalations
        self.counterexamples = counterexamples

    @property
    def passed(self):
        return not self.survivors and not self.counterexamples

    def as_dict(self):
        return {
            "name": self.name,
            "enumerated": str(self.enumerated),
            "excluded": str(self.excluded),
            "candidates": str(self.candidates),
            "survivors": [str(s) for s in sorted(self.survivors)],
            "escalations": [str(s) for s in sorted(self.escalations)],
            "counterexamples": [str(s) for s in sorted(self.counterexamples)],
            "passed": self.passed,
        }

    def __repr__(self):
        return (
            f"SweepReport({self.name}: candidates={self.candidates}, "
            f"survivors={len(self.survivors)})"
        )


def _combo_masks(n, d):
    """Per-monomial bitmask over all (a, b) certificate shapes with 2a+b <= n-1."""
    pairs = _support_cert_pairs(n)
    monos = monomials_of_degree(n, d)
    masks = []
    for e in monos:
        mask = 0
        for bit, (a_vars, b_vars) in enumerate(pairs):
            if any(e[i - 1] for i in a_vars) or sum(e[j - 1] for j in b_vars) >= 2:
                mask |= 1 << bit
        masks.append(mask)
    return monos, masks, pairs


def order25_weight_is_candidate(weights):
    """Projective order 25 for diag weights (first normalised to 0) mod 25."""
    w0 = weights[0]
    return any((w - w0) % 5 for w in weights)


def order25_instance(weights, chi):
    """Support-level certificate for one (weights, chi) pair, or None."""
    action_w = [w % 25 for w in weights]
    monos = monomials_of_degree(5, 5)
    support = [
        e
        for e in monos
        if sum(w * k for w, k in zip(action_w, e)) % 25 == chi % 25
    ]
    return support_family_singular(support, 5, 5)


def sweep_order25(reduced=False):
    """Exclude projective order-25 diagonal symmetries of smooth quintics.

    Enumerates diag(1, z^a, z^b, z^c, z^d) of projective order 25 (z = the
    25th root) and all 25 semi-invariance characters; every (class, chi)
    support family must carry a singularity certificate.  The reduced mode
    sorts the last four weights (sound by coordinate-permutation symmetry);
    the full mode is the unreduced audit sweep.
    """
    monos, masks, _ = _combo_masks(5, 5)
    mono_data = [(e[1], e[2], e[3], e[4], m) for e, m in zip(monos, masks)]
    full_mask = (1 << len(_support_cert_pairs(5))) - 1
    survivors = []
    enumerated = 0
    excluded = 0
    candidates = 0

    if reduced:
        tuples = combinations_with_replacement(range(25), 4)
    else:
        tuples = (
            (a, b, c, d)
            for a in range(25)
            for b in range(25)
            for c in range(25)
            for d in range(25)
        )

    tab = [[(w * k) % 25 for k in range(6)] for w in range(25)]
    for a, b, c, d in tuples:
        enumerated += 1
        if not (a % 5 or b % 5 or c % 5 or d % 5):
            excluded += 1
            continue
        candidates += 1
        acc = [full_mask] * 25
        ta, tb, tc, td = tab[a], tab[b], tab[c], tab[d]
        for e2, e3, e4, e5, m in mono_data:
            chi = (ta[e2] + tb[e3] + tc[e4] + td[e5]) % 25
            acc[chi] &= m
        for chi in range(25):
            if acc[chi] == 0:
                survivors.append(((0, a, b, c, d), chi))
    return SweepReport(
        "order25" + ("-reduced" if reduced else ""),
        enumerated,
        excluded,
        candidates,
        survivors,
        [],
        [],
    )


def _rref_subspaces(p, n, k):
    """All rank-k subspaces of F_p^n as reduced row echelon bases."""
    for pivots in combinations(range(n), k):
        free_slots = []
        for r, pc in enumerate(pivots):
            for c in range(pc + 1, n):
                if c not in pivots:
                    free_slots.append((r, c))
        total = len(free_slots)

        def rec(assign):
            if len(assign) == total:
                rows = [[0] * n for _ in range(k)]
                for r, pc in enumerate(pivots):
                    rows[r][pc] = 1
                for (r, c), v in zip(free_slots, assign):
                    rows[r][c] = v
                yield [tuple(r) for r in rows]
                return
            for v in range(p):
                yield from rec(assign + [v])

        yield from rec([])


def _in_rowspace(vector, rows, p, pivots):
    v = list(vector)
    for row, pc in zip(rows, pivots):
        c = v[pc] % p
        if c:
            v = [(x - c * y) % p for x, y in zip(v, row)]
    return not any(x % p for x in v)


def sweep_elementary_abelian(p):
    """Exclude (Z/p)^3 diagonal symmetry groups for p in {2, 3}.

    Rank-3 weight subgroups of (Z/p)^5 avoiding the all-ones line are the
    honest invariant lifts (liftability holds since gcd(p^3, 5) = 1); each
    candidate's joint invariant support must be certified singular.  A
    candidate without a support-level certificate is escalated to an explicit
    member polynomial; a smooth escalation is a loud counterexample flag.
    """
    if p not in (2, 3):
        raise ValueError("p must be 2 or 3")
    monos, masks, pairs = _combo_masks(5, 5)
    full_mask = (1 << len(pairs)) - 1
    enumerated = 0
    excluded = 0
    candidates = 0
    survivors = []
    escalations = []
    counterexamples = []
    all_ones = (1,) * 5
    for rows in _rref_subspaces(p, 5, 3):
        enumerated += 1
        pivots = [next(i for i, x in enumerate(r) if x) for r in rows]
        if _in_rowspace(all_ones, rows, p, pivots):
            excluded += 1
            continue
        candidates += 1
        acc = full_mask
        support = []
        for e, m in zip(monos, masks):
            if all(sum(w * k for w, k in zip(r, e)) % p == 0 for r in rows):
                support.append(e)
                acc &= m
        if acc:
            continue
        survivors.append(tuple(rows))
        member = Polynomial(
            5, 5, {e: Cyclo.from_rational(i + 1) for i, e in enumerate(support)}
        )
        verdict = certify(member, max_primes=3)
        escalations.append((tuple(rows), verdict.kind))
        if verdict.is_smooth():
            counterexamples.append(tuple(rows))
    return SweepReport(
        f"c{p}cubed",
        enumerated,
        excluded,
        candidates,
        survivors,
        escalations,
        counterexamples,
    )


def gaussian_binomial(n, k, q):
    """Number of k-dimensional subspaces of F_q^n."""
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (k - i) - 1
    assert num % den == 0
    return num // den


def _primary_numbers(bound):
    out = []
    for q in range(2, bound + 1):
        m = q
        p = None
        for d in range(2, q + 1):
            if m % d == 0:
                p = d
                while m % d == 0:
                    m //= d
                break
        if m == 1:
            out.append((q, p))
    return out


def admissible_primary_orders(n, d, bound):
    """Prime powers q <= bound coprime to d(d-1) with (1-d)^l = 1 mod q for some l <= n+2."""
    if d < 3:
        raise ValueError("degree must be at least 3")
    hits = []
    for q, _ in _primary_numbers(bound):
        if gcd(q, d) != 1 or gcd(q, d - 1) != 1:
            continue
        base = (1 - d) % q
        acc = 1
        for _ in range(n + 2):
            acc = acc * base % q
            if acc == 1:
                hits.append(q)
                break
    return hits
