from fractions import Fraction

import pytest

from q2quartic import counts as C
from q2quartic.errors import ClassInstability
from q2quartic.oracle.density import density_counts, density_measures
from q2quartic.oracle.measure import (
    cubic_congruence_measure,
    eisenstein_measure,
    measure_set,
    one_aut_measure,
    t_m_measure,
)
from q2quartic.params import GROUP_ORDER


def test_density_counts_q2_m8_full_cross_check(Q2):
    p = Q2.derive_params()
    dc, meta = density_counts(Q2, 8, cross_check_every=1)
    for m in range(0, 9):
        for g in GROUP_ORDER:
            assert dc.get((m, g), 0) == C.count(p, m, g)
    assert meta["root_count_cross_checks"] == meta["leaves"]
    assert meta["pruned"] > 0


def test_density_counts_q2_full_support(Q2):
    p = Q2.derive_params()
    dc, _ = density_counts(Q2, cross_check_every=1)
    expected = {
        (m, g): C.count(p, m, g)
        for m in range(0, 12)
        for g in GROUP_ORDER
        if C.count(p, m, g)
    }
    assert dc == expected


def test_density_measures_against_one_aut_density(Q2):
    measures, _ = density_measures(Q2, cross_check_every=0)
    q = 2
    for m in (4, 6, 8):
        got = sum(v for (mm, g), v in measures.items() if mm == m and g.value in ("S4", "A4"))
        expect = (
            Fraction(q - 1, 1) ** 2
            * Fraction(1, q ** (-(-2 * m // 3) + 3))
            * (1 + (Fraction(1 - 2 * q, 3 * q) if m % 6 == 0 else 0))
        )
        assert got == expect


def test_density_jobs_parallel_matches_serial(Q2):
    serial, _ = density_counts(Q2, 8, jobs=1)
    parallel, _ = density_counts(Q2, 8, jobs=2)
    assert serial == parallel


def test_measure_set_basics(Q2):
    assert measure_set(Q2, lambda fq: True, 3) == eisenstein_measure(Q2)
    assert measure_set(Q2, lambda fq: False, 3) == 0


def test_measure_set_instability_detected(Q2):
    # a predicate reading digits beyond the class depth must be rejected
    def unstable(fq):
        v = Q2.val(fq.a2)
        return v is None or v > 3

    with pytest.raises(ClassInstability):
        measure_set(Q2, unstable, 3, sample_stride=1)


def test_t_m_measures_q2(Q2):
    q = 2
    for m in (4, 6, 8):
        assert t_m_measure(Q2, m) == Fraction((q - 1) ** 2, q ** (-(-2 * m // 3) + 3))


def test_one_aut_measures_q2(Q2):
    q = 2
    for m in (4, 6, 8):
        expect = Fraction((q - 1) ** 2, q ** (-(-2 * m // 3) + 3)) * (
            1 + (Fraction(1 - 2 * q, 3 * q) if m % 6 == 0 else 0)
        )
        assert one_aut_measure(Q2, m) == expect


def test_cubic_congruence_q2(Q2):
    q = 2
    for a, b in [(1, 1), (1, 2), (2, 2)]:
        expect = Fraction((q - 1) ** 2 * (2 * q - 1), 3 * q ** (a + 2 * b + 4))
        assert cubic_congruence_measure(Q2, a, b) == expect


def test_density_equals_tower_on_common_scope(Q2):
    from q2quartic.oracle.tower import tower_counts

    dc, _ = density_counts(Q2)
    tc = tower_counts(Q2)
    for key, n in tc.items():
        assert dc.get(key, 0) == n
    for (m, g), n in dc.items():
        if g.value in ("V4", "C4", "D4"):
            assert tc.get((m, g), 0) == n
