"""Acceptance suite: one test per criterion, each printing a pass/fail line
and holding the stated time budget.  Shared Groebner bases live in the
session cache so later criteria reuse earlier fibers.

Run with `pytest -s tests/test_acceptance.py` to see the per-criterion
lines; the optional long runs are enabled with `-m stretch`.
"""

import time
from math import comb

import pytest

from helpers import cached_keys, cached_space
from nilmoduli import (
    GF,
    CoefficientField,
    Ideal,
    ModuliSpec,
    O,
    certify_prime,
    check_geo1,
    decompose_C,
    equal_ideals,
    hilbert_series,
    homological_verdicts,
    koszul_betti,
    krull_dimension,
    leading_term_ideal,
    multiplicity,
    predict_betti,
    standard_monomial_count,
    verify_buchberger,
    verify_flatness,
    verify_space,
)
from nilmoduli.moduli import ComponentCertificate, borel_parametrization, segre_parametrization


def _criterion(k, name, t0, budget):
    elapsed = time.perf_counter() - t0
    print(f"criterion {k} ({name}): PASS in {elapsed:.2f}s (budget {budget}s)")
    assert elapsed < budget, f"criterion {k} exceeded its {budget}s budget ({elapsed:.1f}s)"


def test_criterion_1_a1_suite():
    t0 = time.perf_counter()
    I = cached_space("A", 1, 0)
    ring = I.ring
    a1, b1, c1 = ring.gens()
    assert equal_ideals(I, Ideal(ring, [a1 * a1 - b1 * c1]))
    assert list(I.generators) == [a1 * a1 - b1 * c1]
    assert krull_dimension(I) == 2

    table = koszul_betti(I, ring.variables, (3, 5))
    assert table.entries == {(0, 0): 1, (1, 2): 1}
    v = homological_verdicts(table, 2, 3)
    assert v.is_cm and v.is_gorenstein and v.type == 1
    _criterion(1, "A_1 suite", t0, 1)


@pytest.mark.parametrize("char,budget", [(5, 30), (0, 300)])
def test_criterion_2_a2_suite(char, budget):
    t0 = time.perf_counter()
    I = cached_space("A", 2, char)
    assert len(I.generators) == 6
    dim = krull_dimension(I)
    assert dim == 3
    assert multiplicity(I) == 4

    table = koszul_betti(I, I.ring.variables, (6, 8))
    assert table.entries == {(0, 0): 1, (1, 2): 6, (2, 3): 8, (3, 4): 3}
    v = homological_verdicts(table, dim, 6)
    assert v.proj_dim == 3 == I.ring.nvars - dim  # codimension
    assert v.is_cm and not v.is_gorenstein and v.type == 3

    predicted = predict_betti(O(-1, -1, -1, -1))
    assert table.matches(predicted)

    cert = ComponentCertificate("A2", I, segre_parametrization(I, 2, c_sign=1))
    assert certify_prime(cert)
    _criterion(2, f"A_2 suite char {char}", t0, budget)


def test_criterion_3_b_suite():
    t0 = time.perf_counter()
    field = GF(5)
    B0 = cached_space("B0", 1, 5)
    W = tuple(v for v in B0.ring.variables if v != "alpha")
    table = koszul_betti(B0, W, (7, 9))
    assert table.entry(0, 0) == 1
    assert table.entry(0, 1) == 1
    assert table.entry(1, 2) == 5  # 4r + C(2r, 2) at r = 1

    from nilmoduli import quotient_by_element
    from nilmoduli.moduli import _phi

    det1 = _phi(B0.ring).det() - B0.ring.one()
    assert equal_ideals(quotient_by_element(B0, det1), B0)

    B = cached_space("B", 1, 5)
    assert krull_dimension(B) == 4

    report = verify_space(ModuliSpec("B", 1, field))
    assert report.overall == "pass"
    cited = [l for l in report.lines if l.verdict == "cited-inference"]
    assert any("Cohen-Macaulay" in l.claim for l in cited)
    assert any("not Gorenstein" in l.claim for l in cited)

    cert = ComponentCertificate("B1", B, borel_parametrization(B, 1))
    assert certify_prime(cert)
    _criterion(3, "B0_1 / B_1 suite over F5", t0, 120)


@pytest.mark.parametrize("char,budget", [(5, 300), (0, 1800)])
def test_criterion_4_c1_decomposition(char, budget):
    t0 = time.perf_counter()
    field = CoefficientField(char)
    I = cached_space("C", 1, char)
    assert len(I.generators) == 20
    assert I.ring.nvars == 11
    assert krull_dimension(I) == 4

    dec = decompose_C(1, field)
    assert dec.dims == [4, 4, 4]
    assert dec.pairwise_noncontainment
    assert dec.all_prime_certified
    assert dec.contains_total_each
    assert dec.intersection_equal
    assert dec.product_contained
    _criterion(4, f"C_1 decomposition char {char}", t0, budget)


def test_criterion_5_flatness_runs():
    t0 = time.perf_counter()
    for p in (5, 3):
        report = verify_flatness("C", 1, p)
        assert report.criterion_satisfied
        assert report.generic_fiber["dim"] == report.special_fiber["dim"] == 4
        assert report.generic_fiber["components"] == report.special_fiber["components"] == 3
        assert report.special_fiber["reduced_certified"]
        assert len(report.conclusions) == 2
        assert any("zero-divisor" in c for c in report.conclusions)
        assert any("reduced" in c for c in report.conclusions)
    with pytest.raises(ValueError):
        verify_flatness("C", 1, 2)
    _criterion(5, "flatness criterion p=5,3", t0, 600)


def test_criterion_6_predictor_suite():
    t0 = time.perf_counter()
    for r in range(1, 7):
        g = check_geo1(O(*([2] * r)))
        assert g.cm_predicted
        assert g.gorenstein_at_origin_predicted == (r == 1)
        g2 = check_geo1(O(*([1, 1] + [2] * r)))
        assert g2.cm_predicted and not g2.gorenstein_at_origin_predicted
    for n in range(-10, 11):
        assert O(n).h1() == O(-n - 2).h0()  # Serre duality
        assert O(n).h0() - O(n).h1() == n + 1  # Euler characteristic
    for r in range(1, 7):
        table = predict_betti(O(*([-1] * (2 * r))))
        pd = table.proj_dim()
        assert pd == 2 * r - 1
        assert table.entry(pd, pd + 1) == 2 * r - 1
    _criterion(6, "predictor property suite", t0, 1)


def test_criterion_7_engine_suite():
    t0 = time.perf_counter()
    # dimension agreement char 0 vs p for every space, r <= 2
    expected_dim = {"A": lambda r: r + 1, "B0": lambda r: r + 4,
                    "B": lambda r: r + 3, "C": lambda r: r + 3}
    for space in ("A", "B0", "B", "C"):
        for r in (1, 2):
            d0 = krull_dimension(cached_space(space, r, 0))
            assert d0 == expected_dim[space](r)
            for p in (3, 5, 7):
                assert krull_dimension(cached_space(space, r, p)) == d0

    # Buchberger recheck on every cached basis
    for key in cached_keys():
        assert verify_buchberger(cached_space(*key)), key

    # Hilbert series vs brute-force standard-monomial counts, degrees <= 6
    for space, r in (("A", 1), ("A", 2), ("B0", 1)):
        I = cached_space(space, r, 0)
        hs = hilbert_series(leading_term_ideal(I))
        for j in range(7):
            assert hs.coefficient(j) == standard_monomial_count(I, j)

    # Euler identity on every certified table
    for space, r, W_drop in (("A", 1, ()), ("A", 2, ()), ("B0", 1, ("alpha",))):
        I = cached_space(space, r, 0)
        W = tuple(v for v in I.ring.variables if v not in W_drop)
        table = koszul_betti(I, W, (len(W), len(W) + 2))
        assert table.euler_certified
        num, dim = hilbert_series(leading_term_ideal(I)).simplified()
        rhs = list(num)
        for _ in range(len(W) - dim):
            rhs = [a - b for a, b in zip(rhs + [0], [0] + rhs)]
        while rhs and rhs[-1] == 0:
            rhs.pop()
        lhs = table.euler_polynomial()
        while lhs and lhs[-1] == 0:
            lhs.pop()
        assert lhs == rhs
    _criterion(7, "engine property suite", t0, 60)


@pytest.mark.stretch
def test_criterion_8_stretch_a3_betti():
    t0 = time.perf_counter()
    I = cached_space("A", 3, 5)
    table = koszul_betti(I, I.ring.variables, (9, 11))
    expected = {(0, 0): 1}
    for n in range(1, 6):
        expected[(n, n + 1)] = n * comb(6, n + 1)
    assert table.entries == expected
    assert table.matches(predict_betti(O(*([-1] * 6))))
    _criterion(8, "stretch: A_3 Betti table over F5", t0, 3600)


@pytest.mark.stretch
def test_criterion_8_stretch_c2_decomposition():
    t0 = time.perf_counter()
    dec = decompose_C(2, GF(5))
    assert dec.dims == [5, 5, 5]
    assert dec.all_prime_certified
    assert dec.intersection_equal
    assert dec.product_contained
    _criterion(8, "stretch: C_2 decomposition over F5", t0, 3600)
