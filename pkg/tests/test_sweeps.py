import pytest

from quinticverify.sweeps import (
    admissible_primary_orders,
    gaussian_binomial,
    order25_instance,
    order25_weight_is_candidate,
    sweep_elementary_abelian,
    sweep_order25,
    _rref_subspaces,
)


def test_order25_candidate_filter():
    assert not order25_weight_is_candidate((0, 5, 10, 15, 20))
    assert order25_weight_is_candidate((0, 1, 21, 16, 11))
    assert order25_weight_is_candidate((0, 0, 0, 0, 1))


def test_order25_single_instance():
    cert = order25_instance((0, 1, -4, 16, 11), 1)
    assert cert is not None
    # Fermat-like full support is never certified
    assert order25_instance((0, 0, 0, 0, 0), 0) is None


def test_order25_reduced_sweep_no_survivors():
    report = sweep_order25(reduced=True)
    assert report.candidates == 20405
    assert report.enumerated == 20475
    assert report.excluded == 70
    assert not report.survivors
    assert report.passed


def test_rref_subspace_counts_match_gaussian_binomials():
    for p in (2, 3):
        got = sum(1 for _ in _rref_subspaces(p, 5, 3))
        assert got == gaussian_binomial(5, 3, p)
        assert sum(1 for _ in _rref_subspaces(p, 4, 2)) == gaussian_binomial(4, 2, p)
    assert gaussian_binomial(5, 3, 2) == 155
    assert gaussian_binomial(5, 3, 3) == 1210


def test_c2_cubed_sweep():
    report = sweep_elementary_abelian(2)
    assert report.enumerated == 155
    assert report.excluded == 35
    assert report.candidates == 120
    assert not report.survivors
    assert not report.counterexamples
    assert report.passed


def test_c3_cubed_sweep():
    report = sweep_elementary_abelian(3)
    assert report.enumerated == 1210
    assert report.excluded == 130
    assert report.candidates == 1080
    assert not report.survivors
    assert report.passed


def test_sweep_rejects_other_primes():
    with pytest.raises(ValueError):
        sweep_elementary_abelian(5)


def test_sweeps_are_deterministic():
    r1 = sweep_elementary_abelian(2).as_dict()
    r2 = sweep_elementary_abelian(2).as_dict()
    assert r1 == r2


def test_admissible_primary_orders():
    assert admissible_primary_orders(3, 5, 100) == [3, 13, 17, 41]
    assert 9 not in admissible_primary_orders(3, 5, 100)
    assert 25 not in admissible_primary_orders(3, 5, 100)
    assert admissible_primary_orders(4, 5, 1) == []
    # oracle: direct modular exponentiation for the quintic threefold case
    for q in (3, 13, 17, 41):
        assert any(pow(-4, l, q) == 1 % q for l in range(1, 6))
    hits9 = [l for l in range(1, 6) if pow(-4, l, 9) == 1]
    assert not hits9
