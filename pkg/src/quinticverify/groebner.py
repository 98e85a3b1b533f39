"""Buchberger's algorithm over prime fields, graded reverse lexicographic order.

Polynomials over F_p are dicts mapping exponent tuples to nonzero residues.
The pair queue is a heap keyed by the grevlex key of the pair lcm (normal
selection strategy); pairs with coprime leading terms are dropped at
creation.  Tie-breaking in grevlex puts x1 > x2 > ... > xn.
"""
from __future__ import annotations

import heapq


def grevlex_key(mono):
    return (sum(mono), tuple(-e for e in reversed(mono)))


def leading_monomial(poly):
    return max(poly, key=grevlex_key)


def _mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _mono_divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _mono_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def poly_normalize(poly, p):
    """Make monic (leading coefficient 1)."""
    if not poly:
        return poly
    lm = leading_monomial(poly)
    c = poly[lm]
    if c == 1:
        return poly
    inv = pow(c, p - 2, p)
    return {m: v * inv % p for m, v in poly.items()}


def _reduce_against(work, basis_data, p):
    """Full normal form of the dict work against [(poly, lm, lm_key), ...]."""
    remainder = {}
    while work:
        lm = max(work, key=grevlex_key)
        c = work[lm]
        lm_deg = sum(lm)
        hit = None
        for g, glm, gdeg in basis_data:
            if gdeg <= lm_deg and _mono_divides(glm, lm):
                hit = (g, glm)
                break
        if hit is None:
            remainder[lm] = c
            del work[lm]
            continue
        g, glm = hit
        shift = _mono_div(lm, glm)
        if any(shift):
            for m, v in g.items():
                key = _mono_mul(m, shift)
                nv = (work.get(key, 0) - c * v) % p
                if nv:
                    work[key] = nv
                else:
                    work.pop(key, None)
        else:
            for m, v in g.items():
                nv = (work.get(m, 0) - c * v) % p
                if nv:
                    work[m] = nv
                else:
                    work.pop(m, None)
    return remainder


def poly_reduce(poly, basis, p):
    """Full normal form of poly against a list of monic polynomials."""
    basis_data = [(g, leading_monomial(g), sum(leading_monomial(g))) for g in basis]
    return _reduce_against(dict(poly), basis_data, p)


def s_polynomial(f, g, p):
    lf, lg = leading_monomial(f), leading_monomial(g)
    return _s_polynomial_lm(f, lf, g, lg, p)


def _s_polynomial_lm(f, lf, g, lg, p):
    l = _mono_lcm(lf, lg)
    sf, sg = _mono_div(l, lf), _mono_div(l, lg)
    cf, cg = f[lf], g[lg]
    out = {}
    for m, v in f.items():
        key = _mono_mul(m, sf)
        out[key] = (out.get(key, 0) + v * cg) % p
    for m, v in g.items():
        key = _mono_mul(m, sg)
        nv = (out.get(key, 0) - v * cf) % p
        if nv:
            out[key] = nv
        else:
            out.pop(key, None)
    return {m: v for m, v in out.items() if v}


def buchberger(generators, p, max_basis=2000):
    """Groebner basis (monic, minimalised) of the ideal generated over F_p."""
    basis = []  # list of (poly, lm, lm_degree)
    for g in generators:
        g = {m: v % p for m, v in g.items() if v % p}
        if g:
            g = poly_normalize(g, p)
            lm = leading_monomial(g)
            basis.append((g, lm, sum(lm)))

    heap = []

    def push_pairs(k):
        _, lmk, _ = basis[k]
        for i in range(k):
            _, lmi, _ = basis[i]
            l = _mono_lcm(lmi, lmk)
            if l == _mono_mul(lmi, lmk):
                continue  # coprime leading terms: S-polynomial reduces to zero
            heapq.heappush(heap, (grevlex_key(l), i, k))

    for k in range(len(basis)):
        push_pairs(k)

    while heap:
        _, i, j = heapq.heappop(heap)
        fi, lmi, _ = basis[i]
        fj, lmj, _ = basis[j]
        s = _s_polynomial_lm(fi, lmi, fj, lmj, p)
        r = _reduce_against(s, basis, p)
        if r:
            r = poly_normalize(r, p)
            lm = leading_monomial(r)
            if len(basis) >= max_basis:
                raise RuntimeError("Groebner basis grew beyond the safety cap")
            basis.append((r, lm, sum(lm)))
            push_pairs(len(basis) - 1)
    return _minimalise([g for g, _, _ in basis], p)


def _minimalise(basis, p):
    lms = [leading_monomial(g) for g in basis]
    keep = []
    for i, lm in enumerate(lms):
        if not any(
            j != i
            and _mono_divides(lms[j], lm)
            and (grevlex_key(lms[j]) != grevlex_key(lm) or j < i)
            for j in range(len(basis))
        ):
            keep.append(i)
    return [basis[i] for i in keep]


def verify_groebner(basis, p):
    """Post-hoc check: every S-polynomial reduces to zero against the basis."""
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            if poly_reduce(s_polynomial(basis[i], basis[j], p), basis, p):
                return False
    return True


def has_pure_power_leads(basis, nvars):
    """True iff every variable has a pure power among the leading monomials.

    For a homogeneous ideal this is the standard zero-dimensionality test:
    the affine zero set is the origin alone.
    """
    covered = [False] * nvars
    for g in basis:
        lm = leading_monomial(g)
        nz = [k for k, e in enumerate(lm) if e]
        if len(nz) == 1:
            covered[nz[0]] = True
        elif len(nz) == 0:
            return True  # unit ideal
    return all(covered)
