import random
from fractions import Fraction

import pytest

from quinticverify.cyclotomic import Cyclo, root_of_unity
from quinticverify.errors import (
    ConductorTooSmall,
    DimensionMismatch,
    NotHomogeneous,
    PolySyntaxError,
    SingularMatrix,
)
from quinticverify.parsing import (
    format_cyclo,
    format_poly,
    parse_matrix,
    parse_matrix_list,
    parse_poly,
    parse_scalar,
)
from quinticverify.poly import (
    SquareMatrix,
    apply_matrix,
    char_poly,
    eval_poly_coeffs,
    higher_partial,
    monomials_of_degree,
    partial,
    semi_invariance_factor,
)

FERMAT = "x1^5+x2^5+x3^5+x4^5+x5^5"
KLEIN = "x1^4*x2+x2^4*x3+x3^4*x4+x4^4*x5+x5^4*x1"


def diag(*roots):
    return SquareMatrix.diagonal([parse_scalar(t) for t in roots])


def perm_matrix(images):
    """Matrix with y_k = x_images[k] (1-based)."""
    n = len(images)
    zero, one = Cyclo.zero(), Cyclo.one()
    return SquareMatrix(
        [[one if j == images[i] - 1 else zero for j in range(n)] for i in range(n)]
    )


def test_parse_fermat():
    f = parse_poly(FERMAT, 5)
    assert len(f.terms) == 5
    assert f.degree == 5
    assert f.contains_monomial((5, 0, 0, 0, 0))


def test_parse_cyclotomic_coefficient():
    f = parse_poly("x1^4*x2 + (2+4*E(3)^2)*x1^2*x2^2*x3", 5)
    assert len(f.terms) == 2
    c = f.coeff((2, 2, 1, 0, 0))
    assert c == 2 + 4 * root_of_unity(3, 2)


def test_parse_rejects_inhomogeneous():
    with pytest.raises(NotHomogeneous):
        parse_poly("x1^5 + x2^4", 5)


def test_parse_conductor_too_small():
    with pytest.raises(ConductorTooSmall):
        parse_poly("E(3)*x1^5", 5, ambient_conductor=5)


def test_parse_syntax_error_positions():
    with pytest.raises(PolySyntaxError) as err:
        parse_poly("x1^5 + + x2^5", 5)
    assert err.value.position > 0
    with pytest.raises(PolySyntaxError):
        parse_poly("x9^5", 5)
    with pytest.raises(PolySyntaxError):
        parse_poly("x1^5)", 5)


def test_round_trip_printer():
    texts = [
        FERMAT,
        KLEIN,
        "x1^4*x2 + (2+4*E(3)^2)*x1^2*x2^2*x3",
        "x1^4*x2+x2^4*x1+x3^4*x2+x4^4*x1+x5^5+x2^3*x3*x4-x1^3*x3*x4",
        "-1/2*x1^2+x1*x2-3*x2^2",
    ]
    for text in texts:
        f = parse_poly(text, 5)
        again = parse_poly(format_poly(f), 5)
        assert again == f


def test_scalar_round_trip():
    rng = random.Random(7)
    for n in (1, 3, 4, 8, 12):
        for _ in range(40):
            phi = len(root_of_unity(n, 0).num)
            c = Cyclo(n, tuple(rng.randint(-5, 5) for _ in range(phi)), rng.randint(1, 7))
            assert parse_scalar(format_cyclo(c)) == c


def test_apply_matrix_identity_and_klein_example():
    f = parse_poly(KLEIN, 5)
    assert apply_matrix(SquareMatrix.identity(5), f) == f
    a = diag("1", "E(5)", "E(5)^2", "E(5)^3", "E(5)^4")
    g = apply_matrix(a, f)
    assert g == f.scale(root_of_unity(5, 1))
    lam = semi_invariance_factor(a, f)
    assert lam == root_of_unity(5, 1)


def test_apply_matrix_permutation_on_fermat():
    f = parse_poly(FERMAT, 5)
    for images in [(2, 1, 3, 4, 5), (2, 3, 4, 5, 1), (5, 4, 3, 2, 1)]:
        assert apply_matrix(perm_matrix(images), f) == f


def test_semi_invariance_none_case():
    f = parse_poly(FERMAT, 5)
    a = diag("E(4)", "1", "1", "1", "1")
    assert semi_invariance_factor(a, f) is None


def test_contravariant_composition():
    rng = random.Random(11)
    polys = [parse_poly(KLEIN, 5), parse_poly(FERMAT, 5)]
    for k in range(200):
        f = polys[k % 2]
        images = list(range(1, 6))
        rng.shuffle(images)
        scales = [f"E({rng.choice([3, 4, 5])})^{rng.randrange(3)}" for _ in range(5)]
        a = perm_matrix(images) * diag(*scales)
        images2 = list(range(1, 6))
        rng.shuffle(images2)
        b = perm_matrix(images2) * diag(*(f"E(5)^{rng.randrange(5)}" for _ in range(5)))
        lhs = apply_matrix(a * b, f)
        rhs = apply_matrix(b, apply_matrix(a, f))
        assert lhs == rhs


def test_partial_derivatives():
    f = parse_poly("x1^4*x2", 5)
    assert partial(f, 1) == parse_poly("4*x1^3*x2", 5)
    assert partial(f, 5).is_zero()
    klein = parse_poly(KLEIN, 5)
    assert partial(klein, 1) == parse_poly("4*x1^3*x2+x5^4", 5)


def test_euler_identity_on_catalog_like_polys():
    for text in (FERMAT, KLEIN, "x1^4*x2+x2^5+x3^4*x4+x4^4*x3+x5^5"):
        f = parse_poly(text, 5)
        acc = None
        for i in range(1, 6):
            e_i = tuple(1 if j == i - 1 else 0 for j in range(5))
            term_dict = {}
            g = partial(f, i)
            for e, c in g.terms.items():
                e2 = tuple(a + b for a, b in zip(e, e_i))
                term_dict[e2] = c
            from quinticverify.poly import Polynomial

            piece = Polynomial(5, 5, term_dict, f.conductor)
            acc = piece if acc is None else acc + piece
        assert acc == f.scale(5)


def test_higher_partial():
    f = parse_poly("x1^4*x2", 5)
    g = higher_partial(f, (2, 1, 0, 0, 0))
    assert g == parse_poly("12*x1^2", 5)


def test_support_and_cancellation():
    f = parse_poly("x1^4*x2 + x2^5 - x2^5", 5)
    assert f.support() == [(4, 1, 0, 0, 0)]


def test_monomial_counts():
    assert len(monomials_of_degree(5, 5)) == 126
    assert len(monomials_of_degree(2, 5)) == 6
    assert len(monomials_of_degree(6, 5)) == 252


def test_char_poly_examples():
    a = diag("1", "E(5)", "E(5)^2", "E(5)^3", "E(5)^4")
    coeffs = char_poly(a)
    # Product of (t - zeta_5^k) = t^5 - 1.
    assert coeffs[0] == -1
    assert coeffs[5] == 1
    assert all(coeffs[i].is_zero() for i in (1, 2, 3, 4))
    for k in range(5):
        assert eval_poly_coeffs(coeffs, root_of_unity(5, k)).is_zero()

    ident = SquareMatrix.identity(5)
    coeffs = char_poly(ident)
    # (t-1)^5 = t^5 - 5t^4 + 10t^3 - 10t^2 + 5t - 1, ascending order.
    for i, expected in enumerate((-1, 5, -10, 10, -5, 1)):
        assert coeffs[i] == expected

    cycle = perm_matrix((2, 3, 4, 5, 1))
    coeffs = char_poly(cycle)
    assert coeffs[0] == -1 and coeffs[5] == 1
    assert all(coeffs[i].is_zero() for i in (1, 2, 3, 4))


def test_singular_matrix_detected():
    zero, one = Cyclo.zero(), Cyclo.one()
    with pytest.raises(SingularMatrix):
        SquareMatrix([[one, one], [one, one]])


def test_matrix_inverse():
    a = parse_matrix("1,1\n0,1")
    inv = a.inverse()
    assert (a * inv) == SquareMatrix.identity(2)
    b = parse_matrix("-1/2-1/2*E(4),1/2+1/2*E(4)\n-1/2+1/2*E(4),-1/2+1/2*E(4)")
    assert (b * b.inverse()) == SquareMatrix.identity(2)


def test_parse_matrix_list():
    text = "0,1\n1,0\n\n1,0\n0,E(5)\n"
    mats = parse_matrix_list(text)
    assert len(mats) == 2
    assert mats[1].entries[1][1] == root_of_unity(5, 1)


def test_apply_matrix_dimension_mismatch():
    f = parse_poly(FERMAT, 5)
    with pytest.raises(DimensionMismatch):
        apply_matrix(SquareMatrix.identity(4), f)
