"""Exact commutative-algebra engine and verification harness for moduli of
nilpotent 2x2 matrices: sparse polynomials over Q and F_p, Buchberger,
Hilbert series, Koszul Betti numbers, split-bundle cohomology on the
projective line, and the fiberwise flatness criterion."""

__version__ = "0.1.0"

from .polyalg import (
    CoefficientField,
    GF,
    GREVLEX,
    LEX,
    MonomialOrder,
    Polynomial,
    PolyRing,
    QQ,
    RingMap,
    apply_map,
    block_order,
    compare_monomials,
    format_ideal,
    format_polynomial,
    parse_polynomial,
    poly_arith,
    transport,
)
from .groebner import (
    Ideal,
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
from .invariants import (
    EMPTY,
    HilbertSeries,
    hilbert_series,
    krull_dimension,
    leading_term_ideal,
    multiplicity,
    standard_monomial_count,
)
from .syzygy import BettiTable, HomologicalVerdicts, homological_verdicts, koszul_betti
from .p1geom import O, SplitBundle, bundle_calc, check_geo1, cohomology, predict_betti
from .moduli import (
    ComponentCertificate,
    FlatnessReport,
    ModuliSpec,
    VerificationReport,
    certify_prime,
    component_ideals_C,
    construct_A,
    construct_B,
    construct_B0,
    construct_C,
    construct_space,
    decompose_C,
    deformation_special_fiber,
    verify_flatness,
    verify_space,
)
