import random
from itertools import product

import pytest

from quinticverify.cyclotomic import Cyclo, root_of_unity
from quinticverify.errors import InfiniteFamily, NotSemiInvariant
from quinticverify.groups import canonicalize, closure, projective_order
from quinticverify.parsing import parse_poly, parse_scalar
from quinticverify.poly import SquareMatrix, apply_matrix, semi_invariance_factor
from quinticverify.stabilizers import (
    binary_quintic_stabilizer,
    diagonal_solutions,
    f_lift_element,
    f_lift_group,
    semiperm_stabilizer,
)

FERMAT = parse_poly("x1^5+x2^5+x3^5+x4^5+x5^5", 5)
KLEIN = parse_poly("x1^4*x2+x2^4*x3+x3^4*x4+x4^4*x5+x5^4*x1", 5)
IDENT = tuple(range(5))


def diag(*entries):
    return SquareMatrix.diagonal([parse_scalar(t) for t in entries])


def perm(images):
    n = len(images)
    zero, one = Cyclo.zero(), Cyclo.one()
    return SquareMatrix(
        [[one if j == images[i] - 1 else zero for j in range(n)] for i in range(n)]
    )


def test_fermat_identity_sigma_count():
    ds = diagonal_solutions(FERMAT, IDENT, semi=True)
    assert ds.count() == 625
    # each solution verified semi-invariant during construction; spot check
    for mat in ds.matrices()[:5]:
        assert semi_invariance_factor(mat, FERMAT) is not None


def test_klein_identity_sigma_count():
    # oracle: congruence chain forces d = s*(0,1,2,3,4) + 41-part; the
    # projective solution group is cyclic of order 205
    ds = diagonal_solutions(KLEIN, IDENT, semi=True)
    assert ds.count() == 205
    orders = sorted({projective_order(pc) for pc in ds.classes()})
    assert 41 in orders and 205 in orders


def test_brute_force_oracle_small_moduli():
    cases = [
        ("x1^5+x2^5+x3^5+x4^5+x5^5", 5),
        ("x1^4*x2+x2^4*x1+x3^5+x4^5+x5^5", 15),
        ("x1^4*x2+x2^4*x1+x3^4*x4+x4^4*x3+x5^5", 15),
    ]
    for text, expect_modulus in cases:
        f = parse_poly(text, 5)
        ds = diagonal_solutions(f, IDENT, semi=True)
        m = ds.modulus
        assert m == expect_modulus
        assert m <= 15
        support = list(f.terms)
        raw = 0
        for d in product(range(m), repeat=5):
            lam = None
            ok = True
            for e in support:
                t = sum(k * w for k, w in zip(e, d)) % m
                if lam is None:
                    lam = t
                elif t != lam:
                    ok = False
                    break
            if ok:
                raw += 1
        # raw solutions in mu_m^5 = projective count times m global scalings
        assert raw == ds.count() * m


def test_incompatible_sigma_empty():
    # x1^4*x2 cannot map to support under a swap of x1, x2 for this F
    f = parse_poly("x1^4*x2+x2^5+x3^5+x4^5+x5^5", 5)
    swap12 = (1, 0, 2, 3, 4)
    ds = diagonal_solutions(f, swap12, semi=True)
    assert ds.count() == 0


def test_infinite_family_detected():
    f = parse_poly("x1^5+x2^5+x3^5+x4^5", 5)
    with pytest.raises(InfiniteFamily):
        diagonal_solutions(f, IDENT, semi=True)


def test_semiperm_stabilizer_fermat():
    g = semiperm_stabilizer(FERMAT)
    assert g.order == 75000


def test_semiperm_stabilizer_klein():
    g = semiperm_stabilizer(KLEIN)
    assert g.order == 1025


def test_semiperm_stabilizer_remark_examples():
    cases = [
        ("x1^5+x2^4*x1+x3^4*x2+x4^4*x3+x5^4*x4+x5^5", 1),
        ("x1^4*x2+x2^4*x3+x3^4*x4+x4^4*x5+x5^5+x1^2*x5^3", 2),
        ("x1^4*x2+x2^4*x1+x3^5+x4^4*x3+x5^4*x4+x1^3*x4*x5", 3),
        ("x1^5+x2^4*x1+x3^4*x2+x4^4*x3+x4^5+x5^5", 5),
    ]
    for text, expected in cases:
        f = parse_poly(text, 5)
        g = semiperm_stabilizer(f)
        assert g.order == expected, text


def test_semiperm_conjugation_covariance():
    # permuting the variables of F yields a stabilizer of equal order
    rng = random.Random(8)
    f = parse_poly("x1^4*x2+x2^4*x3+x3^4*x4+x4^4*x5+x5^5+x1^2*x5^3", 5)
    base = semiperm_stabilizer(f).order
    images = list(range(1, 6))
    rng.shuffle(images)
    g = apply_matrix(perm(tuple(images)), f)
    assert semiperm_stabilizer(g).order == base


def test_strict_invariance_mode():
    # strict solutions are matrices with A(F) = F exactly; projectively the
    # Fermat class set coincides with the semi one (every factor has a
    # fifth-root scalar correction), while the raw solution data differs
    ds_strict = diagonal_solutions(FERMAT, IDENT, semi=False)
    ds_semi = diagonal_solutions(FERMAT, IDENT, semi=True)
    assert ds_strict.count() == 5**5  # matrices, not classes
    assert ds_semi.count() == 5**4
    for mat in ds_strict.matrices()[:8]:
        lam = semi_invariance_factor(mat, FERMAT)
        assert lam is not None and lam.is_one()
    g = semiperm_stabilizer(FERMAT, semi=False)
    assert g.order == 75000


def test_f_lift_element_klein_obstruction():
    a = canonicalize(diag("1", "E(5)", "E(5)^2", "E(5)^3", "E(5)^4"))
    assert f_lift_element(a, KLEIN) is None


def test_f_lift_element_fermat_positive():
    a = canonicalize(diag("E(5)", "1", "1", "1", "1"))
    lifted = f_lift_element(a, FERMAT)
    assert lifted is not None
    assert semi_invariance_factor(lifted, FERMAT).is_one()
    # order of the honest matrix equals the projective order
    assert projective_order(a) == 5


def test_f_lift_element_involution():
    f = parse_poly("x1^4*x2+x2^4*x3+x3^4*x4+x4^4*x5+x5^5+x1^2*x5^3", 5)
    a = canonicalize(diag("-1", "1", "1", "1", "1"))
    lifted = f_lift_element(a, f)
    assert lifted is not None


def test_f_lift_element_requires_semi_invariance():
    a = canonicalize(diag("E(4)", "1", "1", "1", "1"))
    with pytest.raises(NotSemiInvariant):
        f_lift_element(a, FERMAT)


def test_f_lift_group_klein_c25_not_liftable():
    a1 = diag("1", "E(5)", "E(5)^2", "E(5)^3", "E(5)^4")
    a2 = perm((2, 3, 4, 5, 1))
    g = closure([a1, a2])
    assert g.order == 25
    assert f_lift_group(g, KLEIN) is None


def test_f_lift_group_fermat_c25_liftable():
    a1 = diag("E(5)", "1", "1", "1", "1")
    a2 = diag("1", "E(5)", "1", "1", "1")
    g = closure([a1, a2])
    assert g.order == 25
    lifted = f_lift_group(g, FERMAT)
    assert lifted is not None
    from quinticverify.groups import matrix_closure

    elements, hit = matrix_closure(lifted, cap=300)
    assert len(elements) == 25 and not hit
    for m in lifted:
        assert semi_invariance_factor(m, FERMAT).is_one()


def test_binary_quintic_stabilizers():
    # H = x1^5 + x2^5, roots t^5 = -1: t = zeta_10^odd
    h1 = parse_poly("x1^5+x2^5", 2)
    roots1 = [(root_of_unity(10, 2 * k + 1), Cyclo.one()) for k in range(5)]
    g1 = binary_quintic_stabilizer(h1, roots1)
    assert g1.order == 10

    # H = x1^4 x2 + x2^4 x1: roots [1:0], [0:1], t^3 = -1
    h2 = parse_poly("x1^4*x2+x2^4*x1", 2)
    roots2 = [(Cyclo.one(), Cyclo.zero()), (Cyclo.zero(), Cyclo.one())]
    roots2 += [(root_of_unity(6, 2 * k + 1), Cyclo.one()) for k in range(3)]
    g2 = binary_quintic_stabilizer(h2, roots2)
    assert g2.order == 6

    # H = x1^4 x2 + x2^5: roots [1:0] and t^4 = -1
    h3 = parse_poly("x1^4*x2+x2^5", 2)
    roots3 = [(Cyclo.one(), Cyclo.zero())]
    roots3 += [(root_of_unity(8, 2 * k + 1), Cyclo.one()) for k in range(4)]
    g3 = binary_quintic_stabilizer(h3, roots3)
    assert g3.order == 4


def test_binary_quintic_input_validation():
    from quinticverify.errors import NotDistinct, RootMismatch

    h = parse_poly("x1^5+x2^5", 2)
    bad = [(root_of_unity(10, 1), Cyclo.one())] * 5
    with pytest.raises(NotDistinct):
        binary_quintic_stabilizer(h, bad)
    roots = [(root_of_unity(10, 2 * k + 1), Cyclo.one()) for k in range(4)]
    roots.append((Cyclo.one(), Cyclo.one()))
    with pytest.raises(RootMismatch):
        binary_quintic_stabilizer(h, roots)
