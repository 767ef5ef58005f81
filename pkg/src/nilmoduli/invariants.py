"""Leading-term ideals, Hilbert series of monomial ideals, Krull dimension,
and multiplicity.

Dimension of an arbitrary ideal is read off the grevlex leading-term ideal
(valid for degree-compatible orders, homogeneous or not), so one Groebner
basis serves every invariant here.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .groebner import Ideal
from .polyalg import Polynomial, monomial_divides

#: Sentinel reported for the dimension of the empty scheme (unit ideal).
EMPTY = "empty"


class OrderError(ValueError):
    """The operation needs a degree-compatible (grevlex) monomial order."""


@dataclass(frozen=True)
class HilbertSeries:
    """Hilbert series of a graded quotient as numerator / (1-t)^denominator_exponent.

    ``simplified()`` cancels every (1-t) factor; the remaining denominator
    exponent is the Krull dimension and the numerator at t=1 the multiplicity.
    """

    numerator: tuple[int, ...]
    denominator_exponent: int

    def simplified(self) -> tuple[tuple[int, ...], int]:
        num = list(self.numerator)
        if not any(num):
            return ((0,), 0)
        n = self.denominator_exponent
        while sum(num) == 0 and n > 0:
            num = _divide_by_one_minus_t(num)
            n -= 1
        # for a quotient ring the numerator sheds at most n factors of (1-t)
        assert sum(num) != 0, "numerator vanished past the denominator"
        return (_trim(num), n)

    @property
    def dimension(self) -> int:
        return self.simplified()[1]

    @property
    def multiplicity(self) -> int:
        return sum(self.simplified()[0])

    def coefficient(self, j: int) -> int:
        """dim of the degree-j graded piece (power series expansion)."""
        from math import comb

        n = self.denominator_exponent
        total = 0
        for i, c in enumerate(self.numerator):
            if i > j or not c:
                continue
            total += c * (comb(j - i + n - 1, n - 1) if n > 0 else (1 if i == j else 0))
        return total

    def as_dict(self):
        return {
            "numerator": list(self.numerator),
            "denominator_exponent": self.denominator_exponent,
            "simplified_numerator": list(self.simplified()[0]),
            "dimension": self.simplified()[1],
        }


def _trim(num):
    while num and num[-1] == 0:
        num.pop()
    return tuple(num) if num else (0,)


def _divide_by_one_minus_t(num):
    # N(t) / (1-t) when N(1) == 0: partial sums
    out = []
    acc = 0
    for c in num:
        acc += c
        out.append(acc)
    assert out[-1] == 0
    out.pop()
    return out


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def leading_term_ideal(I: Ideal) -> Ideal:
    """Monomial ideal of leading terms; minimal generators, grevlex only."""
    if not I.ring.order.degree_compatible:
        raise OrderError("leading-term invariants need a grevlex order")
    ring = I.ring
    gens = []
    for g in I.basis():
        m = g.leading_monomial()
        gens.append(Polynomial(ring, {m: ring.field.coerce(1)}))
    return Ideal(ring, gens, _basis=gens)


def _monomial_generators(M: Ideal):
    exps = []
    for g in M.generators:
        if len(g.terms) != 1:
            raise ValueError("not a monomial ideal")
        exps.append(next(iter(g.terms)))
    return _minimalize(exps)


def _minimalize(exps):
    out = []
    for m in sorted(exps, key=sum):
        if not any(monomial_divides(g, m) for g in out):
            out.append(m)
    return out


def hilbert_series(M: Ideal) -> HilbertSeries:
    """Exact Hilbert series of S/M for a monomial ideal M.

    Variable-splitting recursion on the minimal generators; the pivot is the
    most frequent variable among the non-simple generators, ties broken by
    ring order.
    """
    gens = _monomial_generators(M)
    n = M.ring.nvars
    num = _hilbert_numerator(tuple(sorted(gens)))
    return HilbertSeries(tuple(num), n)


@lru_cache(maxsize=None)
def _hilbert_numerator(gens):
    if not gens:
        return (1,)
    if any(sum(m) == 0 for m in gens):
        return (0,)
    simple = [m for m in gens if _support_size(m) == 1]
    rest = [m for m in gens if _support_size(m) > 1]
    if not rest:
        num = [1]
        for m in simple:
            factor = [0] * (sum(m) + 1)
            factor[0] = 1
            factor[-1] = -1
            num = _poly_mul(num, factor)
        return tuple(num)
    nvars = len(gens[0])
    counts = [0] * nvars
    for m in rest:
        for i, e in enumerate(m):
            if e:
                counts[i] += 1
    pivot = max(range(nvars), key=lambda i: (counts[i], -i))
    x = tuple(1 if i == pivot else 0 for i in range(nvars))
    plus = _minimalize([m for m in gens if m[pivot] == 0] + [x])
    colon = _minimalize(
        [tuple(e - 1 if i == pivot and e > 0 else e for i, e in enumerate(m)) for m in gens]
    )
    a = _hilbert_numerator(tuple(sorted(plus)))
    b = _hilbert_numerator(tuple(sorted(colon)))
    out = [0] * max(len(a), len(b) + 1)
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i + 1] += c
    return tuple(_trim(out))


def _support_size(m):
    return sum(1 for e in m if e)


def krull_dimension(I: Ideal):
    """Dimension of ring/I via the grevlex leading-term ideal.

    The unit ideal is reported as the sentinel ``EMPTY``, never as 0.
    """
    if I.is_unit():
        return EMPTY
    lt = leading_term_ideal(I)
    return monomial_dimension(lt)


def monomial_dimension(M: Ideal) -> int:
    """Largest size of a variable subset containing no minimal generator's support."""
    gens = _monomial_generators(M)
    if any(sum(m) == 0 for m in gens):
        return EMPTY
    n = M.ring.nvars
    supports = sorted(
        {frozenset(i for i, e in enumerate(m) if e) for m in gens}, key=lambda s: (len(s), sorted(s))
    )
    return n - _min_cover(supports, n)


def _min_cover(supports, n, chosen=frozenset(), best=None):
    """Minimum number of variables hitting every support (branch and bound)."""
    if best is None:
        best = [n]
    uncovered = [s for s in supports if not (s & chosen)]
    if not uncovered:
        best[0] = min(best[0], len(chosen))
        return best[0]
    if len(chosen) + 1 >= best[0]:
        return best[0]
    pivot = min(uncovered, key=lambda s: (len(s), sorted(s)))
    for v in sorted(pivot):
        _min_cover(uncovered, n, chosen | {v}, best)
    return best[0]


def multiplicity(I: Ideal) -> int:
    """Numerator at t=1 of the simplified Hilbert series (degree of the cone)."""
    if not I.is_homogeneous():
        raise ValueError("multiplicity needs a homogeneous ideal")
    return hilbert_series(leading_term_ideal(I)).multiplicity


def standard_monomials(lt_monomials, nvars: int, degree: int):
    """All degree-d monomials not divisible by any of the given leading terms."""
    lts = list(lt_monomials)
    out = []
    mono = [0] * nvars

    def rec(pos, remaining):
        if pos == nvars - 1:
            mono[pos] = remaining
            m = tuple(mono)
            if not any(monomial_divides(g, m) for g in lts):
                out.append(m)
            mono[pos] = 0
            return
        for e in range(remaining + 1):
            mono[pos] = e
            rec(pos + 1, remaining - e)
        mono[pos] = 0

    if nvars == 0:
        return [()] if degree == 0 else []
    rec(0, degree)
    return out


def standard_monomial_count(I: Ideal, degree: int) -> int:
    """Brute-force Hilbert function value: count of standard monomials."""
    lts = I.leading_monomials()
    return len(standard_monomials(lts, I.ring.nvars, degree))
