from fractions import Fraction
from random import Random

import pytest

from nilmoduli import (
    CoefficientField,
    Ideal,
    PolyRing,
    QQ,
    RingMap,
    block_order,
    contains,
    eliminate,
    equal_ideals,
    groebner_basis,
    intersect,
    kernel_of_map,
    normal_form,
    quotient_by_element,
    verify_buchberger,
)


def _ring(*names, char=0):
    return PolyRing(CoefficientField(char), names)


def test_basis_single_generator():
    R = _ring("a1", "b1", "c1")
    a1, b1, c1 = R.gens()
    I = Ideal(R, [a1 * a1 - b1 * c1])
    assert groebner_basis(I) == (a1 * a1 - b1 * c1,)


def test_basis_unit_ideal():
    R = _ring("x", "y")
    x, y = R.gens()
    I = Ideal(R, [x, x + R.one()])
    assert groebner_basis(I) == (R.one(),)
    assert I.is_unit()


def test_basis_zero_ideal():
    R = _ring("x")
    assert groebner_basis(Ideal(R, [])) == ()
    assert groebner_basis(Ideal(R, [R.zero()])) == ()


def test_basis_deterministic():
    R = _ring("x", "y", "z")
    x, y, z = R.gens()
    gens = [x * y - z * z, y * y - x * z, x * x - y * z]
    b1 = groebner_basis(Ideal(R, gens))
    b2 = groebner_basis(Ideal(R, list(gens)))
    assert b1 == b2


def test_normal_form_membership_and_units():
    R = _ring("a1", "b1", "c1")
    a1, b1, c1 = R.gens()
    I = Ideal(R, [a1 * a1 - b1 * c1])
    assert normal_form(a1 * a1 - b1 * c1, I).is_zero()
    assert normal_form(R.one(), I) == R.one()
    # one division step: a1^2*b1 = b1*(a1^2 - b1*c1) + b1^2*c1
    assert normal_form(a1 * a1 * b1, I) == b1 * b1 * c1


def test_normal_form_idempotent_linear():
    rng = Random(13)
    R = _ring("x", "y", "z")
    x, y, z = R.gens()
    I = Ideal(R, [x * x - y * z, y * y - x])
    for _ in range(15):
        f = _random_poly(rng, R)
        g = _random_poly(rng, R)
        nf = normal_form(f, I)
        assert normal_form(nf, I) == nf
        assert normal_form(f - nf, I).is_zero()  # f - nf lies in the ideal
        assert normal_form(f + g, I) == normal_form(f, I) + normal_form(g, I)
        assert normal_form(3 * f, I) == 3 * normal_form(f, I)


def _random_poly(rng, ring, nterms=4, maxdeg=3):
    terms = {}
    for _ in range(nterms):
        mono = tuple(rng.randint(0, maxdeg) for _ in ring.variables)
        c = rng.randint(-5, 5)
        if c:
            terms[mono] = terms.get(mono, 0) + c
    return ring.from_terms(terms)


def test_normal_form_rational_remainder():
    # dividing by 2x - y leaves a genuinely fractional remainder
    R = _ring("x", "y")
    x, y = R.gens()
    I = Ideal(R, [2 * x - y])
    assert normal_form(x, I) == Fraction(1, 2) * y


def test_contains_and_equal():
    R = _ring("a1", "b1", "c1")
    a1, b1, c1 = R.gens()
    I = Ideal(R, [a1])
    J = Ideal(R, [a1 * a1])
    assert contains(I, I)
    assert contains(I, J)
    assert not contains(J, I)
    assert equal_ideals(I, Ideal(R, [2 * a1]))
    assert not equal_ideals(I, J)
    # contains both ways iff equal
    K = Ideal(R, [a1 - b1, b1])
    L = Ideal(R, [a1, b1])
    assert contains(K, L) and contains(L, K)
    assert equal_ideals(K, L)


def test_eliminate_examples():
    # oracle for (t*x - 1, t*y): y = -y*(t*x - 1) + x*(t*y) lies in the
    # intersection with k[x, y], and nothing smaller can (the ideal forces
    # t invertible, hence y = 0, and no relation on x alone holds)
    R = PolyRing(QQ, ("t", "x", "y"), block_order(1))
    t, x, y = R.gens()
    E = eliminate(Ideal(R, [t * x - 1, t * y]), 1)
    small = E.ring
    assert E.ring.variables == ("x", "y")
    assert equal_ideals(E, Ideal(small, [small.var("y")]))

    # graph of a map
    R2 = _ring("t", "x", "y")
    t, x, y = R2.gens()
    E2 = eliminate(Ideal(R2, [x - t, y - t * t]), 1)
    s = E2.ring
    assert equal_ideals(E2, Ideal(s, [s.var("y") - s.var("x") * s.var("x")]))

    I = Ideal(R2, [x - t])
    assert eliminate(I, 0) is I


def test_intersect_examples():
    R = _ring("x", "y")
    x, y = R.gens()
    assert equal_ideals(intersect(Ideal(R, [x]), Ideal(R, [y])), Ideal(R, [x * y]))
    I = Ideal(R, [x * x - y])
    assert equal_ideals(intersect(I, Ideal(R, [R.one()])), I)


def test_intersect_properties():
    R = _ring("x", "y", "z")
    x, y, z = R.gens()
    I = Ideal(R, [x * y - z])
    J = Ideal(R, [x - y, z * z])
    assert equal_ideals(intersect(I, J), intersect(J, I))
    K = intersect(I, J)
    assert contains(I, K) and contains(J, K)


def test_quotient_examples():
    R = _ring("x", "y")
    x, y = R.gens()
    assert equal_ideals(quotient_by_element(Ideal(R, [x * y]), x), Ideal(R, [y]))
    I = Ideal(R, [x * x - y])
    assert equal_ideals(quotient_by_element(I, R.one()), I)
    with pytest.raises(ValueError):
        quotient_by_element(I, R.zero())


def test_kernel_injective_map():
    S = PolyRing(QQ, ("y",))
    T = PolyRing(QQ, ("x",))
    x, = T.gens()
    ker = kernel_of_map(RingMap(S, T, (x * x,)))
    assert groebner_basis(ker) == ()


def test_kernel_veronese():
    # classic: u -> x^2, v -> xy, w -> y^2 has kernel (v^2 - u*w); v^2 - uw
    # maps to zero by hand and the image surface is the rank-one quadric
    S = PolyRing(QQ, ("u", "v", "w"))
    T = PolyRing(QQ, ("x", "y"))
    x, y = T.gens()
    ker = kernel_of_map(RingMap(S, T, (x * x, x * y, y * y)))
    u, v, w = S.gens()
    assert equal_ideals(ker, Ideal(S, [v * v - u * w]))


def test_kernel_with_target_relations():
    # u -> c, v -> s into k[c,s]/(c^2 - s^3): the quotient is the cuspidal
    # cubic's coordinate ring, so the kernel is exactly (u^2 - v^3)
    S = PolyRing(QQ, ("u", "v"))
    T = PolyRing(QQ, ("c", "s"))
    c, s = T.gens()
    ker = kernel_of_map(RingMap(S, T, (c, s), target_relations=(c * c - s * s * s,)))
    u, v = S.gens()
    assert equal_ideals(ker, Ideal(S, [u * u - v * v * v]))

    # a univariate source has zero kernel here: f(c^2) = f(s^2) mod the
    # relation c^2 - s^2, and no univariate polynomial kills s^2
    S1 = PolyRing(QQ, ("u",))
    ker1 = kernel_of_map(RingMap(S1, T, (c * c,), target_relations=(c * c - s * s,)))
    assert groebner_basis(ker1) == ()


def test_kernel_name_collision():
    # source and target share the variable name "c"
    S = PolyRing(QQ, ("c", "d"))
    T = PolyRing(QQ, ("c",))
    cvar, = T.gens()
    ker = kernel_of_map(RingMap(S, T, (cvar, cvar * cvar)))
    c, d = S.gens()
    assert equal_ideals(ker, Ideal(S, [c * c - d]))


def test_buchberger_recheck():
    R = _ring("x", "y", "z", char=5)
    x, y, z = R.gens()
    I = Ideal(R, [x * y - z * z, y * y - x * z, x * x + 2 * y * z])
    groebner_basis(I)
    assert verify_buchberger(I)


def test_char_p_basis_monic():
    R = _ring("x", "y", char=7)
    x, y = R.gens()
    I = Ideal(R, [3 * x * x - y, 2 * y * y - x])
    for g in groebner_basis(I):
        assert g.leading_coefficient() == 1
