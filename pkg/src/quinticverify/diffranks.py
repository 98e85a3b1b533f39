"""The differential method: ranks of higher-derivative spans of a form.

The profile (rank of the span of all order-i partials, i = 1..d) is
invariant under invertible linear substitution, so differing profiles
obstruct linear equivalence.  Exact characteristic-zero ranks are
authoritative; ranks at a good prime can only drop and serve as a bound.
"""
from __future__ import annotations

from .cyclotomic import reduce_mod
from .poly import higher_partial, monomials_of_degree


class RankProfile:
    __slots__ = ("degree", "ranks")

    def __init__(self, ranks):
        self.ranks = tuple(ranks)
        self.degree = len(self.ranks)

    def rank(self, i):
        return self.ranks[i - 1]

    def __eq__(self, other):
        return isinstance(other, RankProfile) and self.ranks == other.ranks

    __hash__ = None

    def __repr__(self):
        return f"RankProfile{self.ranks}"


def _derivative_rows(f, i):
    """Coefficient vectors of all order-i partials in the degree d-i basis."""
    monos = monomials_of_degree(f.nvars, f.degree - i)
    col = {e: k for k, e in enumerate(monos)}
    rows = []
    for alpha in monomials_of_degree(f.nvars, i):
        g = higher_partial(f, alpha)
        if g.is_zero():
            continue
        rows.append({col[e]: c for e, c in g.terms.items()})
    return rows, len(monos)


def _rank_exact(rows):
    """Rank over the cyclotomic field by elimination with normalized pivots."""
    rank = 0
    pivots = []  # (column, row dict with pivot coefficient 1)
    for row in rows:
        work = dict(row)
        for pcol, prow in pivots:
            c = work.get(pcol)
            if c is not None and not c.is_zero():
                for k, v in prow.items():
                    nv = work.get(k)
                    nv = -c * v if nv is None else nv - c * v
                    if nv.is_zero():
                        work.pop(k, None)
                    else:
                        work[k] = nv
            else:
                work.pop(pcol, None)
        work = {k: v for k, v in work.items() if not v.is_zero()}
        if not work:
            continue
        pcol = min(work)
        inv = work[pcol].inverse()
        pivots.append((pcol, {k: inv * v for k, v in work.items()}))
        rank += 1
    return rank


def diff_rank(f, i):
    """Exact rank of the span of all order-i partial derivatives."""
    if not 1 <= i <= f.degree:
        raise ValueError(f"order {i} out of range 1..{f.degree}")
    rows, _ = _derivative_rows(f, i)
    return _rank_exact(rows)


def diff_rank_mod_p(f, i, emb):
    """Rank of the order-i span after reduction mod p (can only drop)."""
    rows, _ = _derivative_rows(f, i)
    reduced = []
    for row in rows:
        r = {}
        for k, c in row.items():
            v = reduce_mod(c, emb)
            if v:
                r[k] = v
        if r:
            reduced.append(r)
    p = emb.prime
    rank = 0
    pivots = []
    for row in reduced:
        work = dict(row)
        for pcol, prow in pivots:
            c = work.get(pcol)
            if c:
                for k, v in prow.items():
                    nv = (work.get(k, 0) - c * v) % p
                    if nv:
                        work[k] = nv
                    else:
                        work.pop(k, None)
            else:
                work.pop(pcol, None)
        work = {k: v for k, v in work.items() if v}
        if not work:
            continue
        pcol = min(work)
        inv = pow(work[pcol], p - 2, p)
        pivots.append((pcol, {k: inv * v % p for k, v in work.items()}))
        rank += 1
    return rank


def diff_profile(f):
    """Ranks for every order 1..d."""
    return RankProfile([diff_rank(f, i) for i in range(1, f.degree + 1)])


def equivalence_obstruction(f, g):
    """Least order with differing rank, certifying non-equivalence, or None."""
    if f.nvars != g.nvars or f.degree != g.degree:
        raise ValueError("forms must share nvars and degree")
    for i in range(1, f.degree + 1):
        if diff_rank(f, i) != diff_rank(g, i):
            return i
    return None
