"""Closed-form calculus of split vector bundles on the projective line.

Every bundle here is a direct sum of line bundles O(n), stored as a sorted
multiset of twists, so cohomology and the multilinear functors are pure
multiset combinatorics:

    h0(O(n)) = max(n+1, 0),    h1(O(n)) = max(-n-1, 0).

On top of that sit the two predictors used by the verification harness: the
singularity checker for cones over globally generated bundles, and the
graded Betti-table predictor for quotients presented by a subbundle of a
trivial bundle.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement

from .syzygy import BettiTable


class UnsupportedBundleError(ValueError):
    """Input outside the regime where the closed forms are valid."""


@dataclass(frozen=True)
class SplitBundle:
    """A direct sum of line bundles O(n_i); twists stored sorted."""

    twists: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "twists", tuple(sorted(self.twists)))

    @property
    def rank(self) -> int:
        return len(self.twists)

    @property
    def degree(self) -> int:
        return sum(self.twists)

    def h0(self) -> int:
        return sum(max(n + 1, 0) for n in self.twists)

    def h1(self) -> int:
        return sum(max(-n - 1, 0) for n in self.twists)

    def sym(self, k: int) -> "SplitBundle":
        if k < 0:
            raise ValueError("negative symmetric power")
        return SplitBundle(tuple(sum(c) for c in combinations_with_replacement(self.twists, k)))

    def wedge(self, i: int) -> "SplitBundle":
        if i < 0:
            raise ValueError("negative exterior power")
        return SplitBundle(tuple(sum(c) for c in combinations(self.twists, i)))

    def det(self) -> "SplitBundle":
        return SplitBundle((self.degree,))

    def tensor(self, other: "SplitBundle") -> "SplitBundle":
        return SplitBundle(tuple(a + b for a in self.twists for b in other.twists))

    def twist(self, m: int) -> "SplitBundle":
        return SplitBundle(tuple(n + m for n in self.twists))

    def dual(self) -> "SplitBundle":
        return SplitBundle(tuple(-n for n in self.twists))

    def __str__(self):
        return "[" + ",".join(str(n) for n in self.twists) + "]"


def O(*twists: int) -> SplitBundle:
    """Convenience constructor: O(2, -1, -1) is O(2) + O(-1)^2."""
    return SplitBundle(tuple(twists))


def cohomology(bundle: SplitBundle) -> tuple[int, int]:
    """(h0, h1) of the bundle; all higher cohomology vanishes on a curve."""
    return (bundle.h0(), bundle.h1())


_BUNDLE_OPS = {
    "sym": lambda b, k: b.sym(k),
    "wedge": lambda b, i: b.wedge(i),
    "det": lambda b: b.det(),
    "tensor": lambda b, other: b.tensor(other),
    "twist": lambda b, m: b.twist(m),
    "dual": lambda b: b.dual(),
}


def bundle_calc(op: str, bundle: SplitBundle, *args) -> SplitBundle:
    if op not in _BUNDLE_OPS:
        raise ValueError(f"unknown bundle operation {op!r}")
    return _BUNDLE_OPS[op](bundle, *args)


@dataclass(frozen=True)
class ConeGeometry:
    """Verdicts of the cone singularity checker for a bundle with twists >= 0."""

    ample: bool
    globally_generated: bool
    sym_vanishing: bool
    sym_det_omega_vanishing: bool
    cm_predicted: bool
    gorenstein_at_origin_predicted: bool


def check_geo1(eta: SplitBundle) -> ConeGeometry:
    """Hypothesis/singularity checker for the affine cone Spec Gamma(Sym eta).

    Supported regime: all twists nonnegative (the checker refuses anything
    else rather than answer wrongly).  With omega = O(-2):

    - H^1(Sym^k eta) = 0 for all k since every Sym summand has degree >= 0;
    - H^1(Sym eta . det eta . omega) = 0 iff deg det(eta) >= 1;
    - the cone is predicted Cohen-Macaulay when ampleness, global generation
      and both vanishings hold;
    - the origin is predicted Gorenstein iff h0(det(eta) . omega) <= 1,
      i.e. deg det(eta) <= 2.
    """
    if any(n < 0 for n in eta.twists):
        raise UnsupportedBundleError("checker supports nonnegative twists only")
    ample = all(n >= 1 for n in eta.twists)
    globally_generated = True
    sym_vanishing = True  # minimal Sym-summand degree is 0 > -2
    d = eta.degree
    sym_det_omega_vanishing = d >= 1
    cm = ample and globally_generated and sym_vanishing and sym_det_omega_vanishing
    gorenstein = max(d - 2 + 1, 0) <= 1  # h0(O(d-2)) <= 1
    return ConeGeometry(
        ample=ample,
        globally_generated=globally_generated,
        sym_vanishing=sym_vanishing,
        sym_det_omega_vanishing=sym_det_omega_vanishing,
        cm_predicted=cm,
        gorenstein_at_origin_predicted=gorenstein,
    )


def predict_betti(xi: SplitBundle, module_generator_degrees=(0,)) -> BettiTable:
    """Graded Betti table predicted from the presenting subbundle xi.

    For a quotient presented by 0 -> xi -> (trivial) -> eta -> 0 the n-th
    Tor is h0(wedge^n xi) in internal degree n plus h1(wedge^(n+1) xi) in
    degree n+1; higher cohomology vanishes on the line.  Row 0 is taken from
    the supplied module generator degrees and cross-checked against the
    cohomological row (h0(O) at degree 0, h1(xi) at degree 1).
    """
    if any(n > -1 for n in xi.twists):
        raise UnsupportedBundleError("presenting subbundle needs all twists <= -1")
    gens = tuple(sorted(module_generator_degrees))
    row0 = {}
    for d in gens:
        row0[d] = row0.get(d, 0) + 1
    formula_row0 = {0: 1}
    h1_xi = xi.h1()
    if h1_xi:
        formula_row0[1] = h1_xi
    if row0 != formula_row0:
        raise ValueError(
            f"module generator degrees {dict(row0)} disagree with the "
            f"cohomological degree-0 row {formula_row0}"
        )
    entries = {}
    for d, c in row0.items():
        entries[(0, d)] = c
    for n in range(1, xi.rank + 2):
        h0 = xi.wedge(n).h0()
        if h0:
            entries[(n, n)] = entries.get((n, n), 0) + h0
        h1 = xi.wedge(n + 1).h1()
        if h1:
            entries[(n, n + 1)] = entries.get((n, n + 1), 0) + h1
    max_n = max(n for n, _ in entries)
    max_j = max(j for _, j in entries)
    return BettiTable(
        entries=entries,
        koszul_variables=(),
        window=(max_n, max_j),
        euler_certified=True,
        module_generator_degrees=gens,
    )
