"""Moduli ideals of tuples of 2x2 matrices, their component decompositions,
primality certificates via parametrization kernels, and the executable
fiberwise flatness criterion.

The four spaces, over a field of odd or zero characteristic:

- ``A`` (r >= 1): tuples (m_1..m_r) of trace-0, det-0 matrices with all
  pairwise products zero.
- ``B0``: (phi, alpha; m_1..m_r) with alpha a root of the characteristic
  polynomial of phi and m_i phi = alpha m_i; no determinant condition, so
  the ideal is homogeneous (all generators quadratic).
- ``B``: B0 plus det(phi) = 1.
- ``C``: (phi, alpha; m_1..m_{r+1}) as in B plus m_{r+1} phi = phi m_{r+1};
  it decomposes into two copies of the A-space on r+2 matrices (alpha = 1
  and alpha = -1) and one copy of B_r (m_{r+1} = 0).

A matrix m_i is encoded by the traceless triple (a_i, b_i, c_i), i.e.
[[a, b], [c, -a]].  The standalone A-space is presented with the opposite
sign bound into c (matrices [[a, b], [-c, -a]]), which turns its product
equations into a_i a_j = b_i c_j; the eigen-equation spaces use the direct
encoding so that m_i phi = alpha m_i reads off the matrix entries verbatim.
The two sign conventions present isomorphic A-ideals (flip every c_i), and
each comes with the parametrization that certifies it prime.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .groebner import (
    Ideal,
    contains,
    equal_ideals,
    kernel_of_map,
    normal_form,
    quotient_by_element,
)
from .invariants import EMPTY, hilbert_series, krull_dimension, leading_term_ideal, multiplicity
from .p1geom import O, check_geo1, predict_betti
from .polyalg import CoefficientField, GREVLEX, PolyRing, Polynomial, RingMap, transport
from .syzygy import homological_verdicts, koszul_betti

SPACES = ("A", "B0", "B", "C")


@dataclass(frozen=True)
class ModuliSpec:
    space: str
    r: int
    field: CoefficientField

    def __post_init__(self):
        if self.space not in SPACES:
            raise ValueError(f"space must be one of {SPACES}")
        if self.r < 1:
            raise ValueError("r must be at least 1")
        # the field constructor already rejects characteristic 2


# ---------------------------------------------------------------------------
# rings, matrices, equation families


def matrix_count(space: str, r: int) -> int:
    return r + 1 if space == "C" else r


def moduli_ring(space: str, r: int, field: CoefficientField) -> PolyRing:
    """The fixed ambient ring: a_1,b_1,c_1,...,phi_1..phi_4,alpha (when used)."""
    m = matrix_count(space, r)
    names = []
    for i in range(1, m + 1):
        names += [f"a{i}", f"b{i}", f"c{i}"]
    if space != "A":
        names += ["phi1", "phi2", "phi3", "phi4", "alpha"]
    return PolyRing(field, tuple(names), GREVLEX)


class Mat2:
    """2x2 matrix with polynomial entries; just enough arithmetic for the
    constructors to read like the equations they implement."""

    __slots__ = ("e",)

    def __init__(self, e11, e12, e21, e22):
        self.e = (e11, e12, e21, e22)

    def __mul__(self, other):
        a, b, c, d = self.e
        w, x, y, z = other.e
        return Mat2(a * w + b * y, a * x + b * z, c * w + d * y, c * x + d * z)

    def __sub__(self, other):
        return Mat2(*(s - o for s, o in zip(self.e, other.e)))

    def scale(self, s):
        return Mat2(*(s * v for v in self.e))

    def trace(self):
        return self.e[0] + self.e[3]

    def det(self):
        a, b, c, d = self.e
        return a * d - b * c

    def entries(self):
        return list(self.e)


def _triples(ring: PolyRing, m: int):
    return [(ring.var(f"a{i}"), ring.var(f"b{i}"), ring.var(f"c{i}")) for i in range(1, m + 1)]


def _phi(ring: PolyRing) -> Mat2:
    return Mat2(ring.var("phi1"), ring.var("phi2"), ring.var("phi3"), ring.var("phi4"))


def tuple_product_relations(triples, eps: int):
    """Quadrics forcing pairwise products (and determinants) of the tuple to vanish.

    First family a_i*a_j - eps*b_i*c_j over all ordered pairs including i=j
    (the i=j case is the determinant), then both antisymmetric families for
    i < j.  eps=+1 is the [[a,b],[-c,-a]] encoding, eps=-1 the direct
    [[a,b],[c,-a]] one.
    """
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    rels = []
    m = len(triples)
    for i in range(m):
        ai, bi, _ = triples[i]
        for j in range(m):
            aj, _, cj = triples[j]
            rels.append(ai * aj - bi * cj if eps == 1 else ai * aj + bi * cj)
    for i in range(m):
        ai, bi, ci = triples[i]
        for j in range(i + 1, m):
            aj, bj, cj = triples[j]
            rels.append(ai * bj - aj * bi)
            rels.append(ai * cj - aj * ci)
    return rels


def eigen_relations(triple, phi: Mat2, alpha):
    """The four entries of m*phi - alpha*m for m = [[a,b],[c,-a]]."""
    a, b, c = triple
    m = Mat2(a, b, c, -a)
    return (m * phi - m.scale(alpha)).entries()


def char_poly_relation(phi: Mat2, alpha):
    return alpha * alpha - phi.trace() * alpha + phi.det()


def _expected_generator_count(space: str, r: int) -> int:
    m = matrix_count(space, r)
    aeq = math.comb(2 * m, 2)
    if space == "A":
        return aeq
    if space == "B0":
        return aeq + 4 * r + 1
    if space == "B":
        return aeq + 4 * r + 2
    return aeq + 4 * (r + 1) + 4 + 2


def construct_A(r: int, field: CoefficientField) -> Ideal:
    """Tuples of r strongly nilpotent pairwise-annihilating matrices.

    Generators: a_i*a_j - b_i*c_j for all ordered pairs (i=j is the
    determinant), plus a_i*b_j - a_j*b_i and a_i*c_j - a_j*c_i for i<j;
    C(2r, 2) quadrics in all.
    """
    ModuliSpec("A", r, field)
    ring = moduli_ring("A", r, field)
    gens = tuple_product_relations(_triples(ring, r), eps=1)
    assert len(gens) == _expected_generator_count("A", r)
    return Ideal(ring, gens)


def construct_B0(r: int, field: CoefficientField) -> Ideal:
    """The homogeneous cone: product relations, eigen relations, characteristic
    polynomial; every generator is quadratic."""
    ModuliSpec("B0", r, field)
    ring = moduli_ring("B0", r, field)
    triples = _triples(ring, r)
    phi = _phi(ring)
    alpha = ring.var("alpha")
    gens = tuple_product_relations(triples, eps=-1)
    for t in triples:
        gens += eigen_relations(t, phi, alpha)
    gens.append(char_poly_relation(phi, alpha))
    assert len(gens) == _expected_generator_count("B0", r)
    return Ideal(ring, gens)


def construct_B(r: int, field: CoefficientField) -> Ideal:
    """B0 together with det(phi) = 1 (inhomogeneous)."""
    base = construct_B0(r, field)
    ring = base.ring
    gens = list(base.generators)
    gens.append(_phi(ring).det() - ring.one())
    return Ideal(ring, gens)


def construct_C(r: int, field: CoefficientField) -> Ideal:
    """r+1 matrices with the eigen condition, the last one commuting with phi."""
    ModuliSpec("C", r, field)
    ring = moduli_ring("C", r, field)
    triples = _triples(ring, r + 1)
    phi = _phi(ring)
    alpha = ring.var("alpha")
    gens = tuple_product_relations(triples, eps=-1)
    for t in triples:
        gens += eigen_relations(t, phi, alpha)
    a, b, c = triples[r]
    last = Mat2(a, b, c, -a)
    gens += (last * phi - phi * last).entries()
    gens.append(char_poly_relation(phi, alpha))
    gens.append(phi.det() - ring.one())
    assert len(gens) == _expected_generator_count("C", r)
    return Ideal(ring, gens)


def deformation_special_fiber(d: int, field: CoefficientField) -> Ideal:
    """The C-space on d+1 matrices; alias used by the deformation dictionary."""
    return construct_C(d, field)


def construct_space(space: str, r: int, field: CoefficientField) -> Ideal:
    return {"A": construct_A, "B0": construct_B0, "B": construct_B, "C": construct_C}[space](
        r, field
    )


# ---------------------------------------------------------------------------
# parametrizations and primality certificates


@dataclass
class ComponentCertificate:
    label: str
    component_ideal: Ideal
    parametrization: RingMap
    domain_certified: bool = False
    kernel_contains_ideal: bool | None = None
    ideal_contains_kernel: bool | None = None
    verified_prime: bool = False
    verified_contains_total: bool | None = None


def _segre_images(source_ring, target_ring, m, c_sign, lam_offset=0):
    """Images a_i -> lam_i x y, b_i -> lam_i y^2, c_i -> c_sign * lam_i x^2."""
    x, y = target_ring.var("x"), target_ring.var("y")
    images = {}
    for i in range(1, m + 1):
        lam = target_ring.var(f"lam{i + lam_offset}")
        images[f"a{i}"] = lam * x * y
        images[f"b{i}"] = lam * y * y
        images[f"c{i}"] = c_sign * lam * x * x
    return images


def _map_from(source_ring, target_ring, images, relations=()):
    return RingMap(
        source_ring,
        target_ring,
        tuple(images[v] for v in source_ring.variables),
        tuple(relations),
    )


def segre_parametrization(I: Ideal, r: int, c_sign: int = 1) -> RingMap:
    """The rank-one parametrization of the A-space: m_i = lam_i * v w^T.

    ``c_sign`` matches the presentation: +1 for the standalone A-ideal
    (a_i a_j = b_i c_j), -1 for the direct matrix encoding.
    """
    field = I.ring.field
    names = ("x", "y") + tuple(f"lam{i}" for i in range(1, r + 1))
    target = PolyRing(field, names, GREVLEX)
    return _map_from(I.ring, target, _segre_images(I.ring, target, r, c_sign))


def borel_parametrization(I: Ideal, r: int, zero_last: bool = False) -> RingMap:
    """Chart of the eigen-pair space: phi = c*Id + v z^T on v = (y, -x), w = (x, y),
    m_i = lam_i v w^T, alpha = c, with the determinant-one relation
    c^2 + c(z1 y - z2 x) - 1 = 0 on the target.

    With ``zero_last`` the final matrix triple maps to zero (the C-space
    component where the commuting matrix vanishes).
    """
    field = I.ring.field
    names = ("x", "y", "z1", "z2", "c") + tuple(f"lam{i}" for i in range(1, r + 1))
    target = PolyRing(field, names, GREVLEX)
    x, y = target.var("x"), target.var("y")
    z1, z2, c = target.var("z1"), target.var("z2"), target.var("c")
    images = _segre_images(I.ring, target, r, c_sign=-1)
    images["phi1"] = c + y * z1
    images["phi2"] = y * z2
    images["phi3"] = -(x * z1)
    images["phi4"] = c - x * z2
    images["alpha"] = c
    if zero_last:
        zero = target.zero()
        images[f"a{r + 1}"] = zero
        images[f"b{r + 1}"] = zero
        images[f"c{r + 1}"] = zero
    relation = c * c + c * (z1 * y - z2 * x) - target.one()
    return _map_from(I.ring, target, images, (relation,))


def _unipotent_component_parametrization(I: Ideal, r: int, sign: int) -> RingMap:
    """Parametrization of the alpha = sign component of the C-space:
    phi = sign + m_0 with m_0 = lam_0 v w^T, all r+1 matrices rank one."""
    field = I.ring.field
    names = ("x", "y") + tuple(f"lam{i}" for i in range(0, r + 2))
    target = PolyRing(field, names, GREVLEX)
    x, y = target.var("x"), target.var("y")
    lam0 = target.var("lam0")
    images = _segre_images(I.ring, target, r + 1, c_sign=-1)
    s = target.const(sign)
    images["phi1"] = s + lam0 * x * y
    images["phi2"] = lam0 * y * y
    images["phi3"] = -(lam0 * x * x)
    images["phi4"] = s - lam0 * x * y
    images["alpha"] = s
    return _map_from(I.ring, target, images)


def quadratic_extension_is_domain(relation: Polynomial) -> bool:
    """Syntactic domain certificate for k[vars]/(v^2 + s v + u).

    Requires some variable v with: degree exactly 2, the v^2 coefficient a
    nonzero constant, the linear coefficient s nonconstant (and v-free by
    construction), and a nonzero constant tail.  A root of such a monic
    quadratic in the polynomial ring would be a unit plus forcing s
    constant, so the quadratic is irreducible and the quotient a domain.
    """
    ring = relation.ring
    for vi in range(ring.nvars):
        deg = max((m[vi] for m in relation.terms), default=0)
        if deg != 2:
            continue
        sq = [(m, c) for m, c in relation.terms.items() if m[vi] == 2]
        lin = [(m, c) for m, c in relation.terms.items() if m[vi] == 1]
        const = [(m, c) for m, c in relation.terms.items() if m[vi] == 0]
        if len(sq) != 1 or sum(sq[0][0]) != 2:
            continue  # v^2 coefficient must be constant
        if not lin or all(sum(m) == 1 for m, _ in lin):
            continue  # linear coefficient must be nonconstant
        if len(const) != 1 or sum(const[0][0]) != 0 or not const[0][1]:
            continue  # tail must be a nonzero constant
        return True
    return False


def _domain_certified(phi: RingMap) -> bool:
    rels = phi.target_relations
    if not rels:
        return True  # polynomial ring
    if len(rels) == 1:
        return quadratic_extension_is_domain(rels[0])
    return False


def certify_prime(cert: ComponentCertificate) -> bool:
    """Check kernel(parametrization) == component ideal and certify the target
    a domain; only then is the component ideal certified prime."""
    cert.domain_certified = _domain_certified(cert.parametrization)
    ker = kernel_of_map(cert.parametrization)
    cert.kernel_contains_ideal = contains(ker, cert.component_ideal)
    cert.ideal_contains_kernel = contains(cert.component_ideal, ker)
    cert.verified_prime = bool(
        cert.domain_certified and cert.kernel_contains_ideal and cert.ideal_contains_kernel
    )
    return cert.verified_prime


# ---------------------------------------------------------------------------
# the C-space decomposition


def component_ideals_C(r: int, field: CoefficientField):
    """The three candidate component primes of the C-space, with certificates.

    p1/p2: alpha = +-1, trace(phi) = +-2, and the product relations on the
    r+2 matrices (m_0 = phi -+ 1; a_0 -> phi1 -+ 1, b_0 -> phi2, c_0 -> phi3).
    p3: the B-ideal plus the vanishing of the last matrix.
    """
    ModuliSpec("C", r, field)
    ring = moduli_ring("C", r, field)
    alpha = ring.var("alpha")
    phi1, phi2, phi3, phi4 = (ring.var(f"phi{i}") for i in range(1, 5))
    out = []
    total = construct_C(r, field)
    for sign, label in ((1, "p1"), (-1, "p2")):
        m0 = (phi1 - ring.const(sign), phi2, phi3)
        triples = [m0] + _triples(ring, r + 1)
        gens = [alpha - ring.const(sign), phi1 + phi4 - ring.const(2 * sign)]
        gens += tuple_product_relations(triples, eps=-1)
        ideal = Ideal(ring, gens)
        cert = ComponentCertificate(
            label=label,
            component_ideal=ideal,
            parametrization=_unipotent_component_parametrization(ideal, r, sign),
        )
        out.append(cert)
    b_gens = [transport(g, ring) for g in construct_B(r, field).generators]
    b_gens += [ring.var(f"a{r + 1}"), ring.var(f"b{r + 1}"), ring.var(f"c{r + 1}")]
    p3 = Ideal(ring, b_gens)
    out.append(
        ComponentCertificate(
            label="p3",
            component_ideal=p3,
            parametrization=borel_parametrization(p3, r, zero_last=True),
        )
    )
    for cert in out:
        cert.verified_contains_total = contains(cert.component_ideal, total)
    return out


@dataclass
class DecompositionResult:
    ideal: Ideal
    certificates: list
    dims: list
    total_dim: object
    equidimensional: bool
    contains_total_each: bool
    pairwise_noncontainment: bool
    all_prime_certified: bool
    intersection_equal: bool
    product_contained: bool

    @property
    def component_count(self) -> int:
        return sum(1 for c in self.certificates if c.verified_prime)

    @property
    def reduced_certified(self) -> bool:
        return bool(self.all_prime_certified and self.intersection_equal)


def decompose_C(r: int, field: CoefficientField) -> DecompositionResult:
    """Run every machine check behind the three-component decomposition."""
    from .groebner import intersect

    total = construct_C(r, field)
    certs = component_ideals_C(r, field)
    for cert in certs:
        certify_prime(cert)
    dims = [krull_dimension(c.component_ideal) for c in certs]
    equidim = len(set(dims)) == 1 and dims[0] != EMPTY
    noncontain = True
    for i in range(len(certs)):
        for j in range(len(certs)):
            if i != j and contains(certs[i].component_ideal, certs[j].component_ideal):
                noncontain = False
    inter = intersect(
        intersect(certs[0].component_ideal, certs[1].component_ideal),
        certs[2].component_ideal,
    )
    intersection_equal = equal_ideals(inter, total)
    product_contained = _product_contained(total, [c.component_ideal for c in certs])
    return DecompositionResult(
        ideal=total,
        certificates=certs,
        dims=dims,
        total_dim=krull_dimension(total),
        equidimensional=equidim,
        contains_total_each=all(c.verified_contains_total for c in certs),
        pairwise_noncontainment=noncontain,
        all_prime_certified=all(c.verified_prime for c in certs),
        intersection_equal=intersection_equal,
        product_contained=product_contained,
    )


def _product_contained(total: Ideal, ideals) -> bool:
    """Every product of one generator from each ideal reduces to zero mod total."""
    for f in ideals[0].generators:
        for g in ideals[1].generators:
            fg = f * g
            for h in ideals[2].generators:
                if not normal_form(fg * h, total).is_zero():
                    return False
    return True


# ---------------------------------------------------------------------------
# verification reports


@dataclass(frozen=True)
class ReportLine:
    claim: str
    anchor: str
    computed: str
    verdict: str  # pass | fail | inconclusive | cited-inference


@dataclass
class VerificationReport:
    space: str
    r: int
    characteristic: int
    lines: list
    data: dict

    @property
    def overall(self) -> str:
        verdicts = [line.verdict for line in self.lines]
        if any(v == "fail" for v in verdicts):
            return "fail"
        if any(v == "inconclusive" for v in verdicts):
            return "inconclusive"
        return "pass"


ANCHORS = {
    "gen_count": "presentation has the predicted generator count",
    "dim_A": "affine dimension r+1",
    "dim_B0": "affine dimension r+4 (cone over the eigen-pair space)",
    "dim_B": "affine dimension r+3",
    "dim_C": "equidimensional of dimension r+3",
    "mult_A": "degree 2r, the product-of-lines embedding degree",
    "hilbert_brute": "series matches brute-force standard-monomial counts",
    "betti_pred": "Koszul homology equals the sheaf-cohomology prediction",
    "cm": "depth equals dimension (Cohen-Macaulay)",
    "gor_A": "Gorenstein exactly in the hypersurface case r=1",
    "gor_B0": "type 2r+1 > 1: not Gorenstein",
    "geo1": "cone checker: ample, globally generated, cohomology vanishing",
    "nzd": "det(phi)-1 is a nonzerodivisor modulo the homogeneous ideal",
    "transfer_cm": "Cohen-Macaulay descends along the quotient by a nonzerodivisor",
    "transfer_gor": "non-Gorenstein descends along a nonzerodivisor in the maximal ideal",
    "prime_cert": "prime: the kernel of a map into a certified domain",
    "components": "three components: alpha=1, alpha=-1, and last-matrix-zero",
    "component_dims": "every component of dimension r+3",
    "contains_total": "each component prime contains the full ideal",
    "no_containment": "no containment among the component primes",
    "intersection": "the intersection of the three primes equals the full ideal",
    "product": "the product of the three primes lies in the full ideal",
    "flat_dims": "generic and special fibers equidimensional of equal dimension",
    "flat_counts": "generic and special fibers have equally many components",
    "flat_reduced": "special fiber reduced, certified by its prime decomposition",
    "flat_nzd": "p is not a zero-divisor in the interpolating ring",
    "flat_total_reduced": "the interpolating ring is reduced, granted p-adic separatedness",
}


def _line(lines, key, claim, ok, computed, inference=False):
    verdict = "cited-inference" if inference else ("pass" if ok else "fail")
    lines.append(ReportLine(claim=claim, anchor=ANCHORS[key], computed=str(computed), verdict=verdict))
    return ok


def default_window(W) -> tuple[int, int]:
    return (len(W), len(W) + 2)


def verify_space(spec: ModuliSpec, windows: dict | None = None) -> VerificationReport:
    """Construct the space and machine-check every structural claim about it."""
    windows = windows or {}
    space, r, field = spec.space, spec.r, spec.field
    I = construct_space(space, r, field)
    lines: list[ReportLine] = []
    data = {
        "space": space,
        "r": r,
        "characteristic": field.characteristic,
        "dimension": None,
        "multiplicity": None,
        "hilbert_numerator": None,
        "betti": None,
        "verdicts": {
            "cm": None,
            "gorenstein": None,
            "type": None,
            "components": None,
            "intersection_equal": None,
            "flat_criterion": None,
        },
    }

    _line(
        lines,
        "gen_count",
        f"{space}_{r} generator count",
        len(I.generators) == _expected_generator_count(space, r),
        len(I.generators),
    )

    if space == "A":
        _verify_A(I, r, lines, data, windows)
    elif space == "B0":
        _verify_B0(I, r, lines, data, windows)
    elif space == "B":
        _verify_B(I, r, field, lines, data, windows)
    else:
        _verify_C(I, r, field, lines, data)

    return VerificationReport(space, r, field.characteristic, lines, data)


def _verify_A(I, r, lines, data, windows):
    dim = krull_dimension(I)
    data["dimension"] = dim
    _line(lines, "dim_A", f"dim A_{r}", dim == r + 1, dim)
    hs = hilbert_series(leading_term_ideal(I))
    num, _ = hs.simplified()
    data["hilbert_numerator"] = list(num)
    mult = multiplicity(I)
    data["multiplicity"] = mult
    _line(lines, "mult_A", f"multiplicity A_{r}", mult == 2 * r, mult)

    geo = check_geo1(O(*([2] * r)))
    _line(
        lines,
        "geo1",
        "cone hypotheses for twists [2]^r",
        geo.cm_predicted and (geo.gorenstein_at_origin_predicted == (r == 1)),
        geo,
    )

    W = I.ring.variables
    table = koszul_betti(I, W, windows.get("A", default_window(W)))
    data["betti"] = {str(n): {str(j): v for j, v in row.items()} for n, row in table.rows_dict().items()}
    predicted = predict_betti(O(*([-1] * (2 * r))))
    _line(lines, "betti_pred", f"Betti table A_{r}", table.matches(predicted), table.rows_dict())
    v = homological_verdicts(table, dim, len(W))
    data["verdicts"]["cm"] = v.is_cm
    data["verdicts"]["gorenstein"] = v.is_gorenstein
    data["verdicts"]["type"] = v.type
    if v.status != "ok":
        lines.append(ReportLine("homological verdicts", ANCHORS["cm"], "window uncertified", "inconclusive"))
    else:
        _line(lines, "cm", f"A_{r} Cohen-Macaulay", bool(v.is_cm), v.as_dict())
        _line(lines, "gor_A", f"A_{r} Gorenstein iff r=1", v.is_gorenstein == (r == 1), v.type)

    cert = ComponentCertificate(
        label=f"A_{r}", component_ideal=I, parametrization=segre_parametrization(I, r, c_sign=1)
    )
    _line(lines, "prime_cert", f"A_{r} integrality certificate", certify_prime(cert), cert.verified_prime)


def _verify_B0(I, r, lines, data, windows):
    dim = krull_dimension(I)
    data["dimension"] = dim
    _line(lines, "dim_B0", f"dim B0_{r}", dim == r + 4, dim)
    hs = hilbert_series(leading_term_ideal(I))
    num, _ = hs.simplified()
    data["hilbert_numerator"] = list(num)
    data["multiplicity"] = multiplicity(I)

    W = tuple(v for v in I.ring.variables if v != "alpha")
    table = koszul_betti(I, W, windows.get("B0", default_window(W)))
    data["betti"] = {str(n): {str(j): v for j, v in row.items()} for n, row in table.rows_dict().items()}
    predicted = predict_betti(O(*([-2] + [-1] * (2 * r))), module_generator_degrees=(0, 1))
    _line(lines, "betti_pred", f"Betti table B0_{r}", table.matches(predicted), table.rows_dict())
    v = homological_verdicts(table, dim, len(W))
    data["verdicts"]["cm"] = v.is_cm
    data["verdicts"]["gorenstein"] = v.is_gorenstein
    data["verdicts"]["type"] = v.type
    if v.status != "ok":
        lines.append(ReportLine("homological verdicts", ANCHORS["cm"], "window uncertified", "inconclusive"))
    else:
        _line(lines, "cm", f"B0_{r} Cohen-Macaulay", bool(v.is_cm), v.as_dict())
        _line(lines, "gor_B0", f"B0_{r} type", v.type == 2 * r + 1 and not v.is_gorenstein, v.type)

    det_minus_one = _phi(I.ring).det() - I.ring.one()
    quot = quotient_by_element(I, det_minus_one)
    nzd_ok = equal_ideals(quot, I)
    _line(lines, "nzd", f"(B0_{r} : det(phi)-1) = B0_{r}", nzd_ok, "equal" if nzd_ok else "proper")


def _verify_B(I, r, field, lines, data, windows):
    dim = krull_dimension(I)
    data["dimension"] = dim
    _line(lines, "dim_B", f"dim B_{r}", dim == r + 3, dim)

    # transfer hypotheses computed on the homogeneous cone
    B0 = construct_B0(r, field)
    det_minus_one = _phi(B0.ring).det() - B0.ring.one()
    nzd_ok = equal_ideals(quotient_by_element(B0, det_minus_one), B0)
    _line(lines, "nzd", f"det(phi)-1 nonzerodivisor mod B0_{r}", nzd_ok, nzd_ok)
    W = tuple(v for v in B0.ring.variables if v != "alpha")
    table = koszul_betti(B0, W, windows.get("B0", default_window(W)))
    v = homological_verdicts(table, krull_dimension(B0), len(W))
    if v.status == "ok" and nzd_ok and v.is_cm:
        _line(lines, "transfer_cm", f"B_{r} Cohen-Macaulay (transferred)", True, v.as_dict(), inference=True)
        data["verdicts"]["cm"] = True
        if not v.is_gorenstein:
            _line(lines, "transfer_gor", f"B_{r} not Gorenstein (transferred)", True, v.type, inference=True)
            data["verdicts"]["gorenstein"] = False
            data["verdicts"]["type"] = v.type
    else:
        lines.append(ReportLine("transfer verdicts", ANCHORS["transfer_cm"], "hypotheses not established", "inconclusive"))

    cert = ComponentCertificate(
        label=f"B_{r}", component_ideal=I, parametrization=borel_parametrization(I, r)
    )
    _line(lines, "prime_cert", f"B_{r} integrality certificate", certify_prime(cert), cert.verified_prime)


def _verify_C(I, r, field, lines, data):
    dec = decompose_C(r, field)
    dim = dec.total_dim
    data["dimension"] = dim
    _line(lines, "dim_C", f"dim C_{r}", dim == r + 3, dim)
    _line(lines, "component_dims", "component dimensions", dec.equidimensional and dec.dims[0] == r + 3, dec.dims)
    _line(lines, "contains_total", "components contain the full ideal", dec.contains_total_each, dec.contains_total_each)
    _line(lines, "no_containment", "pairwise non-containment", dec.pairwise_noncontainment, dec.pairwise_noncontainment)
    _line(lines, "prime_cert", "three primality certificates", dec.all_prime_certified, [c.verified_prime for c in dec.certificates])
    _line(lines, "intersection", "p1 ^ p2 ^ p3 equals the ideal", dec.intersection_equal, dec.intersection_equal)
    _line(lines, "product", "p1*p2*p3 inside the ideal", dec.product_contained, dec.product_contained)
    _line(lines, "components", "component count", dec.component_count == 3, dec.component_count)
    data["verdicts"]["components"] = dec.component_count
    data["verdicts"]["intersection_equal"] = dec.intersection_equal


# ---------------------------------------------------------------------------
# fiberwise flatness criterion


@dataclass
class FlatnessReport:
    space: str
    r: int
    p: int
    generic_fiber: dict
    special_fiber: dict
    criterion_satisfied: bool
    conclusions: list
    lines: list

    @property
    def overall(self) -> str:
        if any(line.verdict == "fail" for line in self.lines):
            return "fail"
        return "pass"


def _fiber_summary(r: int, field: CoefficientField) -> dict:
    dec = decompose_C(r, field)
    return {
        "dim": dec.total_dim,
        "components": dec.component_count,
        "reduced_certified": dec.reduced_certified,
        "equidimensional": dec.equidimensional,
        "component_dims": dec.dims,
    }


def verify_flatness(space: str, r: int, p: int) -> FlatnessReport:
    """Compare the characteristic-0 and characteristic-p fibers of the C-space.

    Both fibers are built from the same integer-coefficient generators; the
    criterion needs equidimensional fibers of equal dimension, equal
    component counts, and a reduced-certified special fiber.  The two
    conclusions are classical inferences from those hypotheses and are
    flagged as such.
    """
    if space != "C":
        raise ValueError("the flatness run is defined for the C space")
    special_field = CoefficientField(p)  # rejects 2 and composites
    generic = _fiber_summary(r, CoefficientField(0))
    special = _fiber_summary(r, special_field)
    lines: list[ReportLine] = []
    dims_ok = (
        generic["equidimensional"]
        and special["equidimensional"]
        and generic["dim"] == special["dim"]
        and generic["dim"] != EMPTY
    )
    _line(lines, "flat_dims", "fiber dimensions", dims_ok, (generic["dim"], special["dim"]))
    counts_ok = generic["components"] == special["components"] == 3
    _line(lines, "flat_counts", "fiber component counts", counts_ok, (generic["components"], special["components"]))
    reduced_ok = special["reduced_certified"]
    _line(lines, "flat_reduced", "special fiber reduced", reduced_ok, reduced_ok)
    criterion = bool(dims_ok and counts_ok and reduced_ok)
    conclusions = []
    if criterion:
        conclusions.append(ANCHORS["flat_nzd"])
        conclusions.append(ANCHORS["flat_total_reduced"])
        _line(lines, "flat_nzd", "p not a zero-divisor", True, p, inference=True)
        _line(lines, "flat_total_reduced", "interpolating ring reduced", True, p, inference=True)
    return FlatnessReport(
        space=space,
        r=r,
        p=p,
        generic_fiber=generic,
        special_fiber=special,
        criterion_satisfied=criterion,
        conclusions=conclusions,
        lines=lines,
    )
