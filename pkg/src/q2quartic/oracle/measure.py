"""Haar-measure computations for coefficient sets of Eisenstein quartics.

measure_set enumerates every Eisenstein coefficient class modulo pi^c and
sums q^{-4c} over classes whose representative satisfies the predicate.
The caller asserts the predicate is constant on classes at this depth;
a deterministic sample of classes is re-tested one digit deeper and any
flip raises ClassInstability.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from ..errors import BudgetExceeded, ClassInstability
from ..padic.field import LocalField
from ..padic.quartic import EisensteinQuartic, count_roots_in_stem, disc_valuation, in_Tm


def _digit_tuples(q: int, span: int):
    return product(range(q), repeat=span)


def measure_set(
    field: LocalField,
    predicate,
    c: int,
    sample_stride: int = 97,
    budget: int = 4_000_000,
) -> Fraction:
    """Measure (relative to mu(O_K^4) = 1) of the Eisenstein set cut out by predicate."""
    q = field.q
    n_classes = (q - 1) * q ** (4 * c - 5)
    if n_classes > budget:
        raise BudgetExceeded(f"{n_classes} classes at depth {c} exceed budget {budget}")
    total = Fraction(0)
    weight = Fraction(1, q ** (4 * c))
    idx = 0
    for lead in range(1, q):
        for rest0 in _digit_tuples(q, c - 2):
            d0 = (0, lead) + rest0
            a0 = field.from_digits(d0)
            for d1 in _digit_tuples(q, c - 1):
                a1 = field.from_digits((0,) + d1)
                for d2 in _digit_tuples(q, c - 1):
                    a2 = field.from_digits((0,) + d2)
                    for d3 in _digit_tuples(q, c - 1):
                        fq = EisensteinQuartic(
                            field, a0, a1, a2, field.from_digits((0,) + d3)
                        )
                        verdict = predicate(fq)
                        if verdict:
                            total += weight
                        idx += 1
                        if idx % sample_stride == 0:
                            _check_stability(field, predicate, fq, verdict, c)
    return total


def _check_stability(field, predicate, fq, verdict, c):
    # re-test with one extra digit on each coefficient in turn
    pi_c = field.digit_elt(1, c)
    ring = field.ring
    coeffs = list(fq.coeffs())
    for i in range(4):
        bumped = list(coeffs)
        bumped[i] = ring.add(bumped[i], pi_c)
        refined = EisensteinQuartic(field, *bumped)
        if predicate(refined) != verdict:
            raise ClassInstability(
                f"predicate flipped under refinement at depth {c} (coefficient {i})"
            )


def eisenstein_measure(field: LocalField) -> Fraction:
    """mu of all monic Eisenstein quartics: (q-1) q^-5."""
    return Fraction(field.q - 1, field.q**5)


def t_m_measure(field: LocalField, m: int) -> Fraction:
    """mu(T_m) by enumeration at the depth where the valuation pattern is decided."""
    c = m // 4 + 2
    return measure_set(field, lambda fq: in_Tm(fq, m), c)


def one_aut_measure(field: LocalField, m: int) -> Fraction:
    """mu(P_m^{1-Aut}) by enumeration, with the independent stem-root predicate.

    Membership of the (m, trivial-automorphisms) stratum is decided by
    v(disc) and the stem root count; both are constant on classes at depth
    m//3 + 2 by the Krasner radius of those strata.
    """
    c = m // 3 + 2

    def pred(fq):
        return disc_valuation(fq) == m and count_roots_in_stem(fq) == 1

    return measure_set(field, pred, c)


def cubic_congruence_measure(field: LocalField, a: int, b: int) -> Fraction:
    """Measure of the cubic-congruence triple set, by stratified enumeration.

    The set consists of (x0, x1, x2) with v(x0) = 1, v(x1) = a + b,
    v(x2) >= b such that x1 + u x2 x0^a + u^3 x0^{a+b} = 0 mod p^{a+b+1}
    for some unit residue representative u.
    """
    if a <= 0 or b <= 0:
        raise ValueError("a and b must be positive")
    q = field.q
    ring = field.ring
    depth = a + b + 1
    count = 0
    units = [(ring.teich(t), ring.teich(field.res.pow(t, 3))) for t in range(1, q)]
    for lead in range(1, q):
        for rest in _digit_tuples(q, depth - 2):
            x0 = field.from_digits((0, lead) + rest)
            x0_a = _pow(ring, x0, a)
            x0_ab = _pow(ring, x0, a + b)
            for d2 in _digit_tuples(q, a + 1):
                x2 = field.from_digits((0,) * b + d2)
                mid = ring.mul(x2, x0_a)
                for t1 in range(1, q):
                    x1 = field.digit_elt(t1, a + b)
                    hit = False
                    for u, u3 in units:
                        lhs = ring.add(x1, ring.add(ring.mul(u, mid), ring.mul(u3, x0_ab)))
                        v = ring.val(lhs)
                        if v is None or v >= depth:
                            hit = True
                            break
                    if hit:
                        count += 1
    return Fraction(count, q ** (3 * depth))


def _pow(ring, x, n):
    out = ring.one
    for _ in range(n):
        out = ring.mul(out, x)
    return out
