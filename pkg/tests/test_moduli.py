from math import comb

import pytest

from nilmoduli import (
    GF,
    CoefficientField,
    Ideal,
    ModuliSpec,
    QQ,
    certify_prime,
    component_ideals_C,
    construct_A,
    construct_B,
    construct_B0,
    construct_C,
    contains,
    deformation_special_fiber,
    equal_ideals,
    kernel_of_map,
    krull_dimension,
    normal_form,
    verify_flatness,
    verify_space,
)
from nilmoduli.moduli import (
    ComponentCertificate,
    Mat2,
    borel_parametrization,
    quadratic_extension_is_domain,
    segre_parametrization,
    tuple_product_relations,
)


def test_spec_validation():
    with pytest.raises(ValueError):
        ModuliSpec("D", 1, QQ)
    with pytest.raises(ValueError):
        ModuliSpec("A", 0, QQ)
    with pytest.raises(ValueError):
        construct_A(0, QQ)
    with pytest.raises(ValueError):
        construct_A(1, CoefficientField(2))
    with pytest.raises(ValueError):
        construct_C(1, CoefficientField(9))


def test_construct_A_generators():
    I1 = construct_A(1, QQ)
    ring = I1.ring
    a1, b1, c1 = ring.gens()
    assert list(I1.generators) == [a1 * a1 - b1 * c1]
    assert len(construct_A(2, QQ).generators) == 6
    assert len(construct_A(3, QQ).generators) == 15 == comb(6, 2)
    assert construct_A(2, QQ).is_homogeneous()


def test_construct_B_generators():
    B0 = construct_B0(1, QQ)
    assert len(B0.generators) == 6  # 1 + 4 + 1
    assert B0.is_homogeneous()
    assert all(g.total_degree() == 2 for g in B0.generators)
    B = construct_B(1, QQ)
    assert len(B.generators) == len(B0.generators) + 1
    assert not B.is_homogeneous()
    assert B.ring.variables == ("a1", "b1", "c1", "phi1", "phi2", "phi3", "phi4", "alpha")


def test_construct_C_generators():
    C = construct_C(1, QQ)
    assert len(C.generators) == 20
    assert C.ring.nvars == 11
    assert len(construct_C(2, QQ).generators) == comb(6, 2) + 12 + 4 + 2


def test_deformation_special_fiber_alias():
    assert equal_ideals(deformation_special_fiber(1, GF(5)), construct_C(1, GF(5)))


def test_product_relations_match_matrix_products():
    # the direct-encoding family must literally be the entries of m_i * m_j
    ring = construct_B0(2, QQ).ring
    triples = [(ring.var(f"a{i}"), ring.var(f"b{i}"), ring.var(f"c{i}")) for i in (1, 2)]
    mats = [Mat2(a, b, c, -a) for a, b, c in triples]
    rels = set()
    for rel in tuple_product_relations(triples, eps=-1):
        rels.add(rel.normalized())
    I = Ideal(ring, tuple_product_relations(triples, eps=-1))
    for mi in mats:
        for mj in mats:
            for entry in (mi * mj).entries():
                assert entry.is_zero() or normal_form(entry, I).is_zero()
        assert normal_form(mi.det(), I).is_zero()
        assert mi.trace().is_zero()


def test_paper_sign_determinant_in_A_ideal():
    # standalone A-space uses the [[a,b],[-c,-a]] encoding
    I = construct_A(2, QQ)
    ring = I.ring
    for i in (1, 2):
        a, b, c = ring.var(f"a{i}"), ring.var(f"b{i}"), ring.var(f"c{i}")
        m = Mat2(a, b, -c, -a)
        assert m.trace().is_zero()
        assert normal_form(m.det(), I).is_zero()


def test_eigen_relations_vanish_on_parametrization():
    for r in (1, 2):
        B = construct_B(r, GF(5))
        phi = borel_parametrization(B, r)
        for g in B.generators:
            assert phi.apply(g).is_zero()


def test_segre_parametrization_soundness():
    for r in (1, 2, 3):
        I = construct_A(r, QQ)
        phi = segre_parametrization(I, r, c_sign=1)
        for g in I.generators:
            assert phi.apply(g).is_zero()


def test_a1_kernel_frozen():
    # by hand: a = l*x*y, b = l*y^2, c = l*x^2 satisfy exactly a^2 = b*c in
    # degree 2, and the image is the 2-dimensional cone over a conic
    I = construct_A(1, QQ)
    phi = segre_parametrization(I, 1, c_sign=1)
    ker = kernel_of_map(phi)
    a1, b1, c1 = I.ring.gens()
    assert equal_ideals(ker, Ideal(I.ring, [a1 * a1 - b1 * c1]))


def test_certify_prime_A2():
    I = construct_A(2, GF(5))
    cert = ComponentCertificate("A2", I, segre_parametrization(I, 2, c_sign=1))
    assert certify_prime(cert)
    assert cert.domain_certified and cert.kernel_contains_ideal and cert.ideal_contains_kernel


def test_certify_prime_fails_on_wrong_ideal():
    I = construct_A(1, QQ)
    a1, b1, c1 = I.ring.gens()
    wrong = Ideal(I.ring, [a1 * a1 + b1 * c1])  # opposite sign convention
    cert = ComponentCertificate("wrong", wrong, segre_parametrization(I, 1, c_sign=1))
    assert not certify_prime(cert)
    assert cert.kernel_contains_ideal is False or cert.ideal_contains_kernel is False


def test_quadratic_extension_certificate():
    from nilmoduli import PolyRing

    T = PolyRing(QQ, ("c", "z1", "z2", "x", "y"))
    c, z1, z2, x, y = T.gens()
    assert quadratic_extension_is_domain(c * c + c * (z1 * y - z2 * x) - 1)
    assert not quadratic_extension_is_domain(c * c - z1 * z1)  # factors as (c-z1)(c+z1)
    assert not quadratic_extension_is_domain(c * c + c - 1)  # constant linear coefficient
    assert not quadratic_extension_is_domain(c * c + c * z1)  # zero tail


def test_component_ideals_basic_checks():
    field = GF(5)
    certs = component_ideals_C(1, field)
    assert [c.label for c in certs] == ["p1", "p2", "p3"]
    total = construct_C(1, field)
    for cert in certs:
        assert cert.verified_contains_total
        assert contains(cert.component_ideal, total)
    for i in range(3):
        for j in range(3):
            if i != j:
                assert not contains(certs[i].component_ideal, certs[j].component_ideal)
    assert all(krull_dimension(c.component_ideal) == 4 for c in certs)


def test_verify_space_A1_passes_with_gorenstein():
    report = verify_space(ModuliSpec("A", 1, GF(3)))
    assert report.overall == "pass"
    assert report.data["verdicts"]["gorenstein"] is True
    assert report.data["dimension"] == 2


def test_verify_space_B_emits_cited_inferences():
    report = verify_space(ModuliSpec("B", 1, GF(5)))
    assert report.overall == "pass"
    cited = [l for l in report.lines if l.verdict == "cited-inference"]
    assert any("Cohen-Macaulay" in l.claim for l in cited)
    assert any("Gorenstein" in l.claim for l in cited)
    assert report.data["verdicts"]["cm"] is True
    assert report.data["verdicts"]["gorenstein"] is False


def test_flatness_guards():
    with pytest.raises(ValueError):
        verify_flatness("C", 1, 2)
    with pytest.raises(ValueError):
        verify_flatness("C", 1, 15)
    with pytest.raises(ValueError):
        verify_flatness("A", 1, 5)
