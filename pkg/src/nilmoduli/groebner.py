"""Buchberger engine and ideal-level operations.

Normal form, membership, equality, elimination, intersection, quotient by an
element, and kernels of ring maps.  Everything is exact: integer arithmetic
with content control over the rationals, monic arithmetic over F_p.

Internally a polynomial is a list of ``(key, monomial, coeff)`` triples in
strictly descending monomial order, so reduction is list merging and never
rescans for a leading term.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from math import gcd, lcm

from .polyalg import (
    GREVLEX,
    Polynomial,
    PolyRing,
    RingMismatchError,
    block_order,
    monomial_div,
    monomial_divides,
    transport,
)


class InternalInconsistencyError(RuntimeError):
    """An invariant the engine guarantees was violated; always a bug."""


# ---------------------------------------------------------------------------
# internal term-list arithmetic


def _to_list(f: Polynomial, keyfn):
    """Convert to a descending (key, mono, int-coeff) list, denominators cleared."""
    if not f.terms:
        return []
    p = f.ring.field.characteristic
    if p:
        items = [(keyfn(m), m, c % p) for m, c in f.terms.items()]
    else:
        den = lcm(*(c.denominator for c in f.terms.values()))
        items = [(keyfn(m), m, int(c * den)) for m, c in f.terms.items()]
    items.sort(key=lambda t: t[0], reverse=True)
    return items


def _from_list(ring: PolyRing, terms) -> Polynomial:
    p = ring.field.characteristic
    if p:
        return Polynomial(ring, {m: c for _, m, c in terms})
    return Polynomial(ring, {m: Fraction(c) for _, m, c in terms})


def _strip_content(terms):
    if not terms:
        return terms
    g = 0
    for _, _, c in terms:
        g = gcd(g, c)
        if g == 1:
            return terms
    return [(k, m, c // g) for k, m, c in terms]


def _normalize_list(terms, p):
    """Monic over F_p; primitive with positive leading coefficient over Q."""
    if not terms:
        return terms
    if p:
        lc = terms[0][2]
        if lc != 1:
            inv = pow(lc, p - 2, p)
            terms = [(k, m, (c * inv) % p) for k, m, c in terms]
        return terms
    terms = _strip_content(terms)
    if terms[0][2] < 0:
        terms = [(k, m, -c) for k, m, c in terms]
    return terms


def _merge(A, ia, B, p):
    """Sum of A[ia:] and B, both descending; coefficients added exactly."""
    out = []
    ib = 0
    na, nb = len(A), len(B)
    while ia < na and ib < nb:
        ka = A[ia][0]
        kb = B[ib][0]
        if ka > kb:
            out.append(A[ia])
            ia += 1
        elif kb > ka:
            out.append(B[ib])
            ib += 1
        else:
            c = A[ia][2] + B[ib][2]
            if p:
                c %= p
            if c:
                out.append((ka, A[ia][1], c))
            ia += 1
            ib += 1
    if ia < na:
        out.extend(A[ia:])
    if ib < nb:
        out.extend(B[ib:])
    return out


def _shift_scale(terms, shift, factor, p, keyfn):
    out = []
    for _, m, c in terms:
        mm = tuple(a + b for a, b in zip(m, shift))
        cc = c * factor
        if p:
            cc %= p
            if not cc:
                continue
        out.append((keyfn(mm), mm, cc))
    return out


def _reduce(terms, basis, p, keyfn, exact=False):
    """Full multivariate division of ``terms`` by ``basis``.

    Returns (remainder, s) with ``remainder == s * input  (mod ideal)``;
    over F_p the multiplier s is always 1 (the basis is monic).  When
    ``exact`` is false the remainder is content-stripped (s is meaningless).
    """
    out = []  # (key, mono, coeff, s_at_finalize)
    s = 1
    work = terms
    wi = 0
    nb = len(basis)
    while wi < len(work):
        k, m, c = work[wi]
        hit = None
        for t in range(nb):
            if monomial_divides(basis[t][0], m):
                hit = basis[t]
                break
        if hit is None:
            out.append((k, m, c, s))
            wi += 1
            continue
        lt, ltc, tail = hit
        shift = monomial_div(m, lt)
        if p:
            factor = (-c) % p  # basis monic
            sub = _shift_scale(tail, shift, factor, p, keyfn)
            work = _merge(work, wi + 1, sub, p)
        else:
            d = gcd(c, ltc)
            a = ltc // d
            b = c // d
            if a < 0:
                a, b = -a, -b
            if a != 1:
                s *= a
                work = [(kk, mm, cc * a) for kk, mm, cc in work[wi + 1 :]]
            else:
                work = work[wi + 1 :]
            sub = _shift_scale(tail, shift, -b, 0, keyfn)
            work = _merge(work, 0, sub, 0)
        wi = 0
    if p:
        return [(k, m, c) for k, m, c, _ in out], 1
    rem = [(k, m, c * (s // sm)) for k, m, c, sm in out]
    if not exact:
        rem = _strip_content(rem)
        s = 1
    return rem, s


def _spoly(gi, gj, p, keyfn):
    lti, ltci, taili = gi
    ltj, ltcj, tailj = gj
    L = tuple(max(a, b) for a, b in zip(lti, ltj))
    si = monomial_div(L, lti)
    sj = monomial_div(L, ltj)
    if p:
        a, b = 1, 1
    else:
        d = gcd(ltci, ltcj)
        a = ltcj // d
        b = ltci // d
    A = _shift_scale(taili, si, a, p, keyfn)
    B = _shift_scale(tailj, sj, -b, p, keyfn)
    return _merge(A, 0, B, p)


def _entry(terms):
    """Split a normalized term list into (lt, ltc, tail)."""
    _, lt, ltc = terms[0][0], terms[0][1], terms[0][2]
    return (lt, ltc, terms[1:])


def _buchberger(gen_lists, p, keyfn):
    """Reduced Groebner basis of the ideal generated by ``gen_lists``.

    Both of Buchberger's pruning criteria (coprime leading terms, chain
    criterion) with normal-strategy pair selection: smallest lcm degree
    first, ties by monomial order, then by pair index.
    """
    G = []  # (lt, ltc, tail)
    # seed with inter-reduced nonzero generators, smallest leading term first
    seeds = [g for g in gen_lists if g]
    seeds.sort(key=lambda t: t[0][0])
    for g in seeds:
        h, _ = _reduce(g, G, p, keyfn)
        if h:
            G.append(_entry(_normalize_list(h, p)))

    def is_unit():
        return any(sum(lt) == 0 for lt, _, _ in G)

    if is_unit():
        return [[(keyfn((0,) * _width(G)), (0,) * _width(G), 1)]]

    heap = []
    pending = set()

    def push_pairs(j):
        ltj = G[j][0]
        for i in range(j):
            lti = G[i][0]
            L = tuple(max(a, b) for a, b in zip(lti, ltj))
            if all(a + b == c for a, b, c in zip(lti, ltj, L)):
                continue  # coprime leading terms: S-poly reduces to zero
            heapq.heappush(heap, (sum(L), keyfn(L), i, j, L))
            pending.add((i, j))

    for j in range(len(G)):
        push_pairs(j)

    while heap:
        _, _, i, j, L = heapq.heappop(heap)
        if (i, j) not in pending:
            continue
        pending.discard((i, j))
        # chain criterion
        skip = False
        for t in range(len(G)):
            if t == i or t == j:
                continue
            if monomial_divides(G[t][0], L):
                a = (i, t) if i < t else (t, i)
                b = (j, t) if j < t else (t, j)
                if a not in pending and b not in pending:
                    skip = True
                    break
        if skip:
            continue
        S = _spoly(G[i], G[j], p, keyfn)
        h, _ = _reduce(S, G, p, keyfn)
        if not h:
            continue
        G.append(_entry(_normalize_list(h, p)))
        if sum(G[-1][0]) == 0:
            return [[(keyfn(G[-1][0]), G[-1][0], 1)]]
        push_pairs(len(G) - 1)

    return _inter_reduce(G, p, keyfn)


def _width(G):
    return len(G[0][0]) if G else 0


def _inter_reduce(G, p, keyfn):
    """Minimalize and tail-reduce to the unique reduced basis, sorted ascending."""
    keep = []
    for idx, (lt, _, _) in enumerate(G):
        if any(
            monomial_divides(G[t][0], lt) and (G[t][0] != lt or t < idx)
            for t in range(len(G))
            if t != idx
        ):
            continue
        keep.append(idx)
    reduced = []
    minimal = [G[t] for t in keep]
    for pos, idx in enumerate(keep):
        others = [minimal[q] for q in range(len(minimal)) if q != pos]
        lt, ltc, tail = G[idx]
        full = [(keyfn(lt), lt, ltc)] + list(tail)
        h, _ = _reduce(full, others, p, keyfn)
        reduced.append(_normalize_list(h, p))
    reduced.sort(key=lambda terms: terms[0][0])
    return reduced


# ---------------------------------------------------------------------------
# public ideal interface


class Ideal:
    """A finitely generated ideal with a lazily cached reduced Groebner basis."""

    __slots__ = ("ring", "generators", "_basis", "_internal")

    def __init__(self, ring: PolyRing, generators, _basis=None):
        self.ring = ring
        gens = tuple(generators)
        for g in gens:
            if not isinstance(g, Polynomial) or g.ring != ring:
                raise RingMismatchError("generator not in the ideal's ring")
        self.generators = gens
        self._basis = tuple(_basis) if _basis is not None else None
        self._internal = None

    def basis(self):
        if self._basis is None:
            keyfn = self.ring.key
            p = self.ring.field.characteristic
            lists = [_to_list(g, keyfn) for g in self.generators]
            reduced = _buchberger(lists, p, keyfn)
            self._basis = tuple(_from_list(self.ring, terms) for terms in reduced)
        return self._basis

    def _basis_internal(self):
        if self._internal is None:
            keyfn = self.ring.key
            entries = []
            for g in self.basis():
                terms = _to_list(g, keyfn)
                entries.append(_entry(terms))
            self._internal = entries
        return self._internal

    def is_unit(self) -> bool:
        b = self.basis()
        return len(b) == 1 and b[0].total_degree() == 0

    def is_zero(self) -> bool:
        return not self.basis()

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def leading_monomials(self):
        return tuple(g.leading_monomial() for g in self.basis())

    def __repr__(self):
        return f"Ideal({self.ring}, {len(self.generators)} generators)"


def groebner_basis(I: Ideal):
    """The reduced Groebner basis under the ring's order; cached, deterministic."""
    return I.basis()


def normal_form(f: Polynomial, I: Ideal) -> Polynomial:
    """Remainder of full division by the reduced basis; exact coefficients."""
    if f.ring != I.ring:
        raise RingMismatchError("polynomial not in the ideal's ring")
    keyfn = I.ring.key
    p = I.ring.field.characteristic
    terms = _to_list(f, keyfn)
    if p:
        rem, _ = _reduce(terms, I._basis_internal(), p, keyfn)
        return _from_list(I.ring, rem)
    if not f.terms:
        return f
    den = lcm(*(c.denominator for c in f.terms.values()))
    rem, s = _reduce(terms, I._basis_internal(), 0, keyfn, exact=True)
    scale = Fraction(1, s * den)
    return Polynomial(I.ring, {m: c * scale for _, m, c in rem})


def contains(I: Ideal, J: Ideal) -> bool:
    """True iff J is a subset of I (every generator of J reduces to zero)."""
    if I.ring != J.ring:
        raise RingMismatchError("ideals in different rings")
    keyfn = I.ring.key
    p = I.ring.field.characteristic
    basis = I._basis_internal()
    for g in J.generators:
        rem, _ = _reduce(_to_list(g, keyfn), basis, p, keyfn)
        if rem:
            return False
    return True


def equal_ideals(I: Ideal, J: Ideal) -> bool:
    """Syntactic identity of canonically normalized reduced bases."""
    if I.ring != J.ring:
        raise RingMismatchError("ideals in different rings")
    return I.basis() == J.basis()


def eliminate(I: Ideal, k: int) -> Ideal:
    """I intersected with the subring on the last n-k variables, presented there."""
    if k < 0 or k > I.ring.nvars:
        raise ValueError("cannot eliminate that many variables")
    if k == 0:
        return I
    ring = I.ring
    small = PolyRing(ring.field, ring.variables[k:], GREVLEX)
    gens = [transport(g, small) for g in _eliminated_generators(I, k)]
    return Ideal(small, gens, _basis=gens)


def _eliminated_generators(I: Ideal, k: int):
    """Elements of the reduced block(k) basis free of the first k variables.

    These form a reduced Groebner basis of the elimination ideal under the
    order induced on the remaining variables (grevlex).
    """
    ring = I.ring
    if ring.order.kind == "block" and ring.order.block == k:
        work = I
    else:
        work_ring = PolyRing(ring.field, ring.variables, block_order(k))
        work = Ideal(work_ring, [transport(g, work_ring) for g in I.generators])
    out = []
    for g in work.basis():
        if all(all(e == 0 for e in m[:k]) for m in g.terms):
            out.append(g)
    return out


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J via a fresh scalar t: eliminate t from t*I + (1-t)*J."""
    if I.ring != J.ring:
        raise RingMismatchError("ideals in different rings")
    ring = I.ring
    tname = "t"
    while tname in ring.variables:
        tname += "_"
    aux = PolyRing(ring.field, (tname,) + ring.variables, block_order(1))
    t = aux.var(tname)
    one = aux.one()
    gens = [t * transport(f, aux) for f in I.generators]
    gens += [(one - t) * transport(g, aux) for g in J.generators]
    eliminated = _eliminated_generators(Ideal(aux, gens), 1)
    back = [transport(g, ring) for g in eliminated]
    seed = back if ring.order == GREVLEX else None
    return Ideal(ring, back, _basis=seed)


def quotient_by_element(I: Ideal, f: Polynomial) -> Ideal:
    """(I : f), computed as intersect(I, (f)) with generators divided by f."""
    if f.ring != I.ring:
        raise RingMismatchError("polynomial not in the ideal's ring")
    if f.is_zero():
        raise ValueError("quotient by the zero element")
    K = intersect(I, Ideal(I.ring, (f,)))
    gens = [_divide_exact(h, f) for h in K.basis()]
    return Ideal(I.ring, gens)


def _divide_exact(h: Polynomial, f: Polynomial) -> Polynomial:
    ring = h.ring
    fld = ring.field
    keyfn = ring.key
    ltf = f.leading_monomial()
    lcf = f.leading_coefficient()
    q = {}
    r = h
    while r.terms:
        m = r.leading_monomial()
        if not monomial_divides(ltf, m):
            raise InternalInconsistencyError(
                "exact division failed; intersection produced a non-multiple"
            )
        c = fld.mul(r.terms[m], fld.inv(lcf))
        shift = monomial_div(m, ltf)
        q[shift] = c
        r = r - Polynomial(ring, {shift: c}) * f
    return Polynomial(ring, q)


def kernel_of_map(phi) -> Ideal:
    """Kernel of the induced map source -> target/target_relations.

    Graph construction: adjoin the target variables ahead of the source
    variables under a block order, add the relations y_i - image_i together
    with the target relations, and eliminate the target block.  Every
    returned generator is checked to map to normal form zero.
    """
    src = phi.source
    tgt = phi.target
    taken = set(src.variables)
    rename = {}
    for v in tgt.variables:
        name = v
        while name in taken:
            name += "_"
        rename[v] = name
        taken.add(name)
    tvars = tuple(rename[v] for v in tgt.variables)
    amb = PolyRing(src.field, tvars + src.variables, block_order(len(tvars)))
    gens = [transport(rel, amb, rename) for rel in phi.target_relations]
    for i, v in enumerate(src.variables):
        gens.append(amb.var(v) - transport(phi.images[i], amb, rename))
    eliminated = _eliminated_generators(Ideal(amb, gens), len(tvars))
    back = [transport(g, src) for g in eliminated]
    seed = back if src.order == GREVLEX else None
    ker = Ideal(src, back, _basis=seed)
    for g in ker.generators:
        if not phi.apply(g).is_zero():
            raise InternalInconsistencyError("kernel generator does not map to zero")
    return ker


def monomial_normal_form_int(I: Ideal, mono) -> tuple[list, int]:
    """Normal form of a single monomial as (integer term pairs, denominator).

    The true normal form is (sum of c*m over the pairs) / denominator; over
    F_p the denominator is always 1.  Used by the Koszul homology matrices,
    which only need integer columns up to a column scale.
    """
    keyfn = I.ring.key
    p = I.ring.field.characteristic
    terms = [(keyfn(mono), mono, 1)]
    rem, s = _reduce(terms, I._basis_internal(), p, keyfn, exact=True)
    return [(m, c) for _, m, c in rem], s


def verify_buchberger(I: Ideal) -> bool:
    """Re-check the Buchberger criterion: every S-polynomial of the reduced
    basis reduces to zero against it."""
    keyfn = I.ring.key
    p = I.ring.field.characteristic
    basis = I._basis_internal()
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            S = _spoly(basis[i], basis[j], p, keyfn)
            rem, _ = _reduce(S, basis, p, keyfn)
            if rem:
                return False
    return True
