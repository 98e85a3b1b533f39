import random

from quinticverify.cyclotomic import Cyclo, choose_prime
from quinticverify.groebner import (
    buchberger,
    grevlex_key,
    has_pure_power_leads,
    leading_monomial,
    verify_groebner,
)
from quinticverify.parsing import parse_poly
from quinticverify.poly import monomials_of_degree
from quinticverify.smoothness import (
    certify,
    check_power_monomials,
    combinatorial_singularity,
    jacobian_smooth_mod_p,
    support_family_singular,
    verify_witness,
)

FERMAT = parse_poly("x1^5+x2^5+x3^5+x4^5+x5^5", 5)
KLEIN = parse_poly("x1^4*x2+x2^4*x3+x3^4*x4+x4^4*x5+x5^4*x1", 5)


def test_grevlex_order_basics():
    # x1 > x2 > ... in grevlex, and degree dominates
    assert grevlex_key((1, 0, 0)) > grevlex_key((0, 1, 0)) > grevlex_key((0, 0, 1))
    assert grevlex_key((0, 2, 0)) > grevlex_key((1, 0, 1))  # x2^2 > x1*x3
    assert grevlex_key((2, 0, 0)) > grevlex_key((0, 1, 0))


def test_buchberger_known_basis():
    # <x^2 - y, x*y - x> in F_7, grevlex: classic tiny example
    p = 7
    f1 = {(2, 0): 1, (0, 1): p - 1}
    f2 = {(1, 1): 1, (1, 0): p - 1}
    basis = buchberger([f1, f2], p)
    assert verify_groebner(basis, p)
    # x*y - x reduces the S-polynomial to y^2 - y (membership checks)
    from quinticverify.groebner import poly_reduce

    assert not poly_reduce(f1, basis, p)
    assert not poly_reduce(f2, basis, p)
    assert not poly_reduce({(0, 2): 1, (0, 1): p - 1}, basis, p)


def test_jacobian_fermat_smooth():
    emb = choose_prime(1)  # p = 7
    assert jacobian_smooth_mod_p(FERMAT, emb)


def test_jacobian_singular_example():
    f = parse_poly("x1^4*x2", 5)
    emb = choose_prime(1)
    assert not jacobian_smooth_mod_p(f, emb)


def test_check_power_monomials():
    assert check_power_monomials(FERMAT) == []
    f = parse_poly("x1^4*x2+x2^4*x3+x3^4*x4+x4^4*x5", 5)
    assert check_power_monomials(f) == [5]
    g = parse_poly("x1^5", 5)
    assert check_power_monomials(g) == [2, 3, 4, 5]


def _cert_is_valid(f, cert):
    if 2 * len(cert.a_vars) + len(cert.b_vars) > f.nvars - 1:
        return False
    for e in f.terms:
        if any(e[i - 1] for i in cert.a_vars):
            continue
        if sum(e[j - 1] for j in cert.b_vars) >= 2:
            continue
        return False
    return True


def test_combinatorial_singularity_examples():
    f = parse_poly("x1^4*x2", 5)
    cert = combinatorial_singularity(f)
    assert cert is not None and _cert_is_valid(f, cert)
    # stable across calls: the enumeration order is deterministic
    again = combinatorial_singularity(f)
    assert (cert.a_vars, cert.b_vars) == (again.a_vars, again.b_vars)
    g = parse_poly("x1*x4^4 + x2^2*x3^3", 5)
    cert = combinatorial_singularity(g)
    assert cert is not None and _cert_is_valid(g, cert)
    assert combinatorial_singularity(FERMAT) is None
    assert combinatorial_singularity(KLEIN) is None


def test_verify_witness_examples():
    f = parse_poly("x1^4*x2", 5)
    zero, one = Cyclo.zero(), Cyclo.one()
    assert verify_witness(f, (zero, zero, one, zero, zero))
    assert not verify_witness(FERMAT, (one, zero, zero, zero, zero))
    g = parse_poly("x1*x4^4+x2^2*x3^3", 5)
    assert verify_witness(g, (zero, zero, zero, zero, one))


def test_certify_smooth_catalog_samples():
    for f in (FERMAT, KLEIN):
        verdict = certify(f)
        assert verdict.kind == "SmoothCertified"
        assert verdict.prime is not None


def test_certify_combinatorial():
    f = parse_poly("x1^5+x2^5", 5)
    verdict = certify(f)
    assert verdict.kind == "SingularCertified"
    assert verdict.certificate.as_dict()["kind"] == "combinatorial"


def test_consistency_no_double_verdict():
    rng = random.Random(17)
    monos = monomials_of_degree(5, 5)
    for _ in range(30):
        support = rng.sample(monos, rng.randint(1, 8))
        terms = {e: Cyclo.from_rational(rng.randint(1, 5)) for e in support}
        from quinticverify.poly import Polynomial

        f = Polynomial(5, 5, terms)
        verdict = certify(f, max_primes=1)
        if verdict.kind == "SmoothCertified":
            assert combinatorial_singularity(f) is None


def test_support_family_examples():
    monos = monomials_of_degree(5, 5)
    assert support_family_singular(monos, 5, 5) is None  # contains Fermat support
    div_x1 = [e for e in monos if e[0] >= 1]
    cert = support_family_singular(div_x1, 5, 5)
    assert cert is not None
    assert cert.a_vars == (1,) and cert.b_vars == ()


def test_support_family_monotone_under_subsets():
    rng = random.Random(23)
    monos = monomials_of_degree(5, 5)
    base = [e for e in monos if e[0] >= 1]
    for _ in range(100):
        k = rng.randint(1, len(base))
        subset = rng.sample(base, k)
        assert support_family_singular(subset, 5, 5) is not None


def _points_p2(field):
    """Projective plane points over a tiny field object."""
    els = field.elements()
    one = field.one()
    zero = field.zero()
    pts = [(one, y, z) for y in els for z in els]
    pts += [(zero, one, z) for z in els]
    pts += [(zero, zero, one)]
    return pts


class Fp:
    def __init__(self, p):
        self.p = p

    def elements(self):
        return list(range(self.p))

    def one(self):
        return 1

    def zero(self):
        return 0

    def add(self, a, b):
        return (a + b) % self.p

    def mul(self, a, b):
        return a * b % self.p


class Fp2:
    """F_p[t]/(t^2 - c) for a nonresidue c; elements are pairs (a, b)."""

    def __init__(self, p):
        self.p = p
        self.c = next(
            c for c in range(2, p) if pow(c, (p - 1) // 2, p) == p - 1
        )

    def elements(self):
        return [(a, b) for a in range(self.p) for b in range(self.p)]

    def one(self):
        return (1, 0)

    def zero(self):
        return (0, 0)

    def add(self, x, y):
        return ((x[0] + y[0]) % self.p, (x[1] + y[1]) % self.p)

    def mul(self, x, y):
        a, b = x
        c, d = y
        return (
            (a * c + b * d % self.p * self.c) % self.p,
            (a * d + b * c) % self.p,
        )


def _eval_terms(field, terms, pt):
    acc = field.zero()
    for e, c in terms.items():
        v = (c % field.p, 0) if isinstance(field, Fp2) else c % field.p
        for x, k in zip(pt, e):
            for _ in range(k):
                v = field.mul(v, x)
        acc = field.add(acc, v)
    return acc


def test_brute_force_cross_check_p11():
    """Groebner verdict vs exhaustive search over P^2(F_11) and P^2(F_121)."""
    rng = random.Random(31)
    emb = choose_prime(1, 1)  # p = 11
    assert emb.prime == 11
    monos = monomials_of_degree(3, 5)
    f11, f121 = Fp(11), Fp2(11)
    for _ in range(20):
        support = rng.sample(monos, rng.randint(2, 6))
        from quinticverify.poly import Polynomial

        f = Polynomial(3, 5, {e: Cyclo.from_rational(rng.randint(1, 10)) for e in support})
        partial_terms = []
        from quinticverify.poly import partial as d

        for i in (1, 2, 3):
            g = d(f, i)
            partial_terms.append({e: int(c.as_rational()) % 11 for e, c in g.terms.items()})
        smooth = jacobian_smooth_mod_p(f, emb)
        sing_11 = any(
            all(_eval_terms(f11, t, pt) == 0 for t in partial_terms)
            for pt in _points_p2(f11)
        )
        if smooth:
            assert not sing_11
            sing_121 = any(
                all(_eval_terms(f121, t, pt) == (0, 0) for t in partial_terms)
                for pt in _points_p2(f121)
            )
            assert not sing_121
        if sing_11:
            assert not smooth


def test_groebner_spoly_verification_on_jacobians():
    emb = choose_prime(1)
    from quinticverify.poly import partial as d

    for f in (FERMAT, KLEIN):
        gens = []
        for i in range(1, 6):
            g = d(f, i)
            from quinticverify.cyclotomic import reduce_mod

            gens.append({e: reduce_mod(c, emb) for e, c in g.terms.items()})
        basis = buchberger(gens, emb.prime)
        assert len(basis) <= 200
        assert verify_groebner(basis, emb.prime)
        assert has_pure_power_leads(basis, 5)
