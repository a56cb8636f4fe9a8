"""Dedup oracle: count isomorphism classes directly.

Enumerates Eisenstein coefficient classes at a flat depth past the Krasner
radius of every field with m <= m_max, classifies each representative, and
groups representatives of the same (m, g) cell by stem-field isomorphism:
f and g define isomorphic quartic extensions iff g has a root in
K[X]/(f).  This is the slowest oracle and the arbiter when the density
and formula counts disagree.
"""

from __future__ import annotations

from itertools import product

from ..errors import BudgetExceeded
from ..padic.field import LocalField
from ..padic.quartic import (
    EisensteinQuartic,
    _count_roots_in_ring,
    classify_quartic,
    disc_valuation,
    stem_ring,
)
from ..params import GroupTag


def _has_root_in(stem, fq: EisensteinQuartic) -> bool:
    lift = lambda c: (c,) + (fq.field.ring.zero,) * 3
    coeffs = [lift(fq.a0), lift(fq.a1), lift(fq.a2), lift(fq.a3), stem.one]
    cap = 4 * (8 * fq.field.e_abs + 3) + 64
    return _count_roots_in_ring(stem, coeffs, cap) > 0


def dedup_counts(
    field: LocalField,
    m_max: int,
    c: int | None = None,
    budget: int = 300_000,
) -> dict[tuple[int, GroupTag], int]:
    """Isomorphism-class counts per (m, g) for m <= m_max."""
    q = field.q
    if c is None:
        c = m_max // 3 + 2
    n_classes = (q - 1) * q ** (4 * c - 5)
    if n_classes > budget:
        raise BudgetExceeded(f"{n_classes} classes at depth {c} exceed budget {budget}")
    groups: dict[tuple[int, GroupTag], list] = {}
    span0 = c - 2
    span = c - 1
    for lead in range(1, q):
        for rest0 in product(range(q), repeat=span0):
            a0 = field.from_digits((0, lead) + rest0)
            for d1 in product(range(q), repeat=span):
                a1 = field.from_digits((0,) + d1)
                for d2 in product(range(q), repeat=span):
                    a2 = field.from_digits((0,) + d2)
                    for d3 in product(range(q), repeat=span):
                        fq = EisensteinQuartic(field, a0, a1, a2, field.from_digits((0,) + d3))
                        if disc_valuation(fq) > m_max:
                            continue
                        m, g = classify_quartic(fq)
                        bucket = groups.setdefault((m, g), [])
                        for _, leader_stem in bucket:
                            if _has_root_in(leader_stem, fq):
                                break
                        else:
                            bucket.append((fq, stem_ring(fq)))
    return {key: len(bucket) for key, bucket in sorted(
        groups.items(), key=lambda kv: (kv[0][0], kv[0][1].value)
    )}
