"""Exact coefficient fields, monomial orders, sparse multivariate polynomials, ring maps.

Coefficients are `Fraction` over the rationals and machine ints in ``[0, p)``
over a prime field; nothing is ever rounded.  Every value in this module is
immutable after construction and may be shared freely across threads.

Monomials are exponent tuples.  The plain-text syntax understood by
:func:`format_polynomial` / :meth:`PolyRing.parse` is integer coefficients,
``*`` for products, ``^`` for powers, variables by name, terms listed in
descending monomial order, e.g. ``a1^2 - b1*c1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm


class RingMismatchError(ValueError):
    """Operands live in different rings (or different coefficient fields)."""


_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class CoefficientField:
    """The rationals (characteristic 0) or the prime field F_p for an odd prime p.

    Characteristic 2 and composite characteristics are rejected here, once,
    so nothing downstream has to re-check.
    """

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p == 0:
            return
        if p == 2:
            raise ValueError("characteristic 2 is not supported")
        if not _is_prime(p):
            raise ValueError(f"characteristic must be 0 or an odd prime, got {p}")

    @property
    def p(self) -> int:
        return self.characteristic

    def coerce(self, x):
        """Bring an int/Fraction into canonical element form."""
        p = self.characteristic
        if p == 0:
            return x if isinstance(x, Fraction) else Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise ZeroDivisionError(f"denominator divisible by {p}")
            return x.numerator * pow(x.denominator, p - 2, p) % p
        return x % p

    def add(self, a, b):
        p = self.characteristic
        return a + b if p == 0 else (a + b) % p

    def mul(self, a, b):
        p = self.characteristic
        return a * b if p == 0 else (a * b) % p

    def neg(self, a):
        p = self.characteristic
        return -a if p == 0 else (-a) % p

    def inv(self, a):
        p = self.characteristic
        if p == 0:
            return Fraction(1) / a
        if a % p == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, p - 2, p)

    def __str__(self):
        return "QQ" if self.characteristic == 0 else f"F{self.characteristic}"


QQ = CoefficientField(0)


def GF(p: int) -> CoefficientField:
    return CoefficientField(p)


# ---------------------------------------------------------------------------
# monomial orders


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order: grevlex, lex, or block(k).

    ``block(k)`` eliminates the first k variables: lex between the two
    blocks, grevlex inside each.  ``key`` maps an exponent tuple to a sort
    key; larger key means larger monomial.
    """

    kind: str = "grevlex"
    block: int = 0

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "block" and self.block < 0:
            raise ValueError("block size must be nonnegative")

    def key(self, exps: tuple[int, ...]):
        if self.kind == "lex":
            return exps
        if self.kind == "grevlex" or self.block == 0:
            return _grevlex_key(exps)
        k = self.block
        return (_grevlex_key(exps[:k]), _grevlex_key(exps[k:]))

    @property
    def degree_compatible(self) -> bool:
        return self.kind == "grevlex"


def _grevlex_key(exps):
    total = 0
    for e in exps:
        total += e
    return (total, tuple(-e for e in reversed(exps)))


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def block_order(k: int) -> MonomialOrder:
    return MonomialOrder("block", k)


def compare_monomials(m1, m2, order: MonomialOrder) -> int:
    """Total-order comparison of exponent tuples: -1, 0, or +1."""
    if len(m1) != len(m2):
        raise ValueError("exponent vectors of different lengths")
    k1, k2 = order.key(tuple(m1)), order.key(tuple(m2))
    return (k1 > k2) - (k1 < k2)


def monomial_mul(m1, m2):
    return tuple(a + b for a, b in zip(m1, m2))


def monomial_divides(m1, m2) -> bool:
    """True iff m1 divides m2."""
    return all(a <= b for a, b in zip(m1, m2))


def monomial_div(m1, m2):
    """m1 / m2, assuming divisibility."""
    return tuple(a - b for a, b in zip(m1, m2))


# ---------------------------------------------------------------------------
# rings and polynomials


@dataclass(frozen=True)
class PolyRing:
    """A polynomial ring: coefficient field, ordered variable names, monomial order."""

    field: CoefficientField
    variables: tuple[str, ...]
    order: MonomialOrder = GREVLEX

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")
        for v in self.variables:
            if not _NAME_RE.match(v):
                raise ValueError(f"bad variable name {v!r}")
        if self.order.kind == "block" and self.order.block > len(self.variables):
            raise ValueError("block size exceeds variable count")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def key(self, mono):
        return self.order.key(mono)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        c = self.field.coerce(c)
        if not c:
            return Polynomial(self, {})
        return Polynomial(self, {(0,) * self.nvars: c})

    def var(self, name: str) -> "Polynomial":
        i = self.variables.index(name)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field.coerce(1)})

    def gens(self) -> tuple["Polynomial", ...]:
        return tuple(self.var(v) for v in self.variables)

    def from_terms(self, terms: dict) -> "Polynomial":
        out = {}
        for mono, c in terms.items():
            mono = tuple(mono)
            if len(mono) != self.nvars:
                raise ValueError("exponent vector of wrong length")
            c = self.field.coerce(c)
            if c:
                out[mono] = c
        return Polynomial(self, out)

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(self, text)

    def __str__(self):
        return f"{self.field}[{', '.join(self.variables)}]"


class Polynomial:
    """Sparse exact polynomial: map from exponent tuples to nonzero coefficients.

    Treated as immutable; do not mutate ``terms`` after construction.
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def _check(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        f = self.ring.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = f.add(out.get(m, 0), c)
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        f = self.ring.field
        return Polynomial(self.ring, {m: f.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        f = self.ring.field
        p = f.characteristic
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                c = out.get(m, 0) + c1 * c2
                if p:
                    c %= p
                if c:
                    out[m] = c
                else:
                    out.pop(m, None)
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def leading_monomial(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=self.ring.key)

    def leading_coefficient(self):
        return self.terms[self.leading_monomial()]

    def total_degree(self) -> int:
        """Degree of the zero polynomial is reported as -1."""
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def sorted_terms(self):
        """Terms in descending monomial order."""
        return sorted(self.terms.items(), key=lambda t: self.ring.key(t[0]), reverse=True)

    def normalized(self) -> "Polynomial":
        """Canonical scalar multiple: monic over F_p; primitive integer with
        positive leading coefficient over the rationals."""
        if not self.terms:
            return self
        f = self.ring.field
        if f.characteristic:
            c = f.inv(self.leading_coefficient())
            if c == 1:
                return self
            return Polynomial(self.ring, {m: (v * c) % f.characteristic for m, v in self.terms.items()})
        den = lcm(*(c.denominator for c in self.terms.values()))
        num = gcd(*(c.numerator for c in self.terms.values()))
        scale = Fraction(den, num)
        if (self.leading_coefficient() * scale) < 0:
            scale = -scale
        if scale == 1:
            return self
        return Polynomial(self.ring, {m: c * scale for m, c in self.terms.items()})

    def __str__(self):
        return format_polynomial(self)

    __repr__ = __str__


def poly_arith(f: Polynomial, g: Polynomial, op: str) -> Polynomial:
    """Exact ring arithmetic; ``op`` is one of add, sub, mul."""
    if f.ring != g.ring:
        raise RingMismatchError(f"{f.ring} vs {g.ring}")
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown op {op!r}")


def transport(f: Polynomial, ring: PolyRing, rename: dict | None = None) -> Polynomial:
    """Re-express f in another ring over the same field, matching variables by name.

    Every variable actually occurring in f must exist in the target ring
    (after the optional renaming).
    """
    if f.ring.field != ring.field:
        raise RingMismatchError("coefficient fields differ")
    rename = rename or {}
    src_names = f.ring.variables
    pos = []
    for i, v in enumerate(src_names):
        name = rename.get(v, v)
        pos.append(ring.variables.index(name) if name in ring.variables else None)
    out = {}
    for mono, c in f.terms.items():
        new = [0] * ring.nvars
        for i, e in enumerate(mono):
            if not e:
                continue
            if pos[i] is None:
                raise ValueError(f"variable {src_names[i]!r} missing from target ring")
            new[pos[i]] = e
        out[tuple(new)] = c
    return Polynomial(ring, out)


# ---------------------------------------------------------------------------
# ring maps


class RingMap:
    """A field-fixing ring map into a (quotient of a) polynomial ring.

    ``images`` gives one target polynomial per source variable;
    ``target_relations`` present the target as a quotient, and images of
    polynomials are reduced to normal form modulo them.
    """

    __slots__ = ("source", "target", "images", "target_relations", "_rel_ideal", "_powers")

    def __init__(self, source: PolyRing, target: PolyRing, images, target_relations=()):
        images = tuple(images)
        target_relations = tuple(target_relations)
        if len(images) != source.nvars:
            raise ValueError("need one image per source variable")
        if source.field != target.field:
            raise RingMismatchError("source and target fields differ")
        for g in images + target_relations:
            if g.ring != target:
                raise RingMismatchError("image not in target ring")
        self.source = source
        self.target = target
        self.images = images
        self.target_relations = target_relations
        self._rel_ideal = None
        self._powers = [{0: target.one(), 1: img} for img in images]

    def _reduce(self, g: Polynomial) -> Polynomial:
        if not self.target_relations:
            return g
        from . import groebner

        if self._rel_ideal is None:
            self._rel_ideal = groebner.Ideal(self.target, self.target_relations)
        return groebner.normal_form(g, self._rel_ideal)

    def apply(self, f: Polynomial) -> Polynomial:
        if f.ring != self.source:
            raise RingMismatchError("polynomial not in source ring")
        out = self.target.zero()
        for mono, c in f.terms.items():
            term = self.target.const(c)
            for i, e in enumerate(mono):
                if e:
                    term = term * self._power(i, e)
            out = out + term
        return self._reduce(out)

    def _power(self, i: int, e: int) -> Polynomial:
        cache = self._powers[i]
        if e not in cache:
            half = self._power(i, e // 2)
            q = half * half
            if e % 2:
                q = q * cache[1]
            cache[e] = q
        return cache[e]


def apply_map(phi: RingMap, f: Polynomial) -> Polynomial:
    """Substitute images into f and reduce modulo the target relations."""
    return phi.apply(f)


# ---------------------------------------------------------------------------
# plain-text format

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\^)|(\*)|(\+)|(-))")


def format_polynomial(f: Polynomial) -> str:
    if not f.terms:
        return "0"
    names = f.ring.variables
    pieces = []
    for mono, c in f.sorted_terms():
        factors = []
        for i, e in enumerate(mono):
            if e == 1:
                factors.append(names[i])
            elif e > 1:
                factors.append(f"{names[i]}^{e}")
        body = "*".join(factors)
        if not body:
            body = str(abs(c)) if isinstance(c, int) or c.denominator == 1 else str(abs(c))
            coeff = ""
        else:
            a = abs(c)
            coeff = "" if a == 1 else f"{a}*"
        sign = "-" if c < 0 else "+"
        pieces.append((sign, f"{coeff}{body}" if body not in ("",) else body))
    first_sign, first_body = pieces[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


def parse_polynomial(ring: PolyRing, text: str) -> Polynomial:
    """Parse the plain-text syntax (sums of integer-coefficient terms)."""
    pos = 0
    toks = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise ValueError(f"bad token at {text[pos:]!r}")
            break
        toks.append(m)
        pos = m.end()

    result = ring.zero()
    i = 0
    n = len(toks)

    def tok_kind(j):
        m = toks[j]
        if m.group(1):
            return "int"
        if m.group(2):
            return "name"
        if m.group(3):
            return "pow"
        if m.group(4):
            return "mul"
        if m.group(5):
            return "plus"
        return "minus"

    while i < n:
        sign = 1
        while i < n and tok_kind(i) in ("plus", "minus"):
            if tok_kind(i) == "minus":
                sign = -sign
            i += 1
        if i >= n:
            raise ValueError("dangling sign")
        coeff = sign
        mono = [0] * ring.nvars
        expect_factor = True
        while i < n:
            k = tok_kind(i)
            if k == "int" and expect_factor:
                coeff *= int(toks[i].group(1))
                i += 1
            elif k == "name" and expect_factor:
                name = toks[i].group(2)
                if name not in ring.variables:
                    raise ValueError(f"unknown variable {name!r}")
                idx = ring.variables.index(name)
                i += 1
                e = 1
                if i < n and tok_kind(i) == "pow":
                    i += 1
                    if i >= n or tok_kind(i) != "int":
                        raise ValueError("exponent expected after '^'")
                    e = int(toks[i].group(1))
                    i += 1
                mono[idx] += e
            elif k == "mul":
                i += 1
                expect_factor = True
                continue
            else:
                break
            expect_factor = False
        term = ring.from_terms({tuple(mono): coeff})
        result = result + term
    return result


def format_ideal(generators) -> str:
    """One canonically normalized generator per line."""
    return "\n".join(format_polynomial(g.normalized()) for g in generators)


def parse_ideal_text(ring: PolyRing, text: str):
    return tuple(parse_polynomial(ring, line) for line in text.splitlines() if line.strip())
