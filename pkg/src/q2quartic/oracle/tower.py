"""Tower oracle: count quartics with V4/C4/D4 closure by enumerating towers.

Every such quartic sits in a tower L/E/K of two totally ramified quadratic
steps.  Quadratic extensions of a field are in bijection with its
nontrivial square classes, so the enumeration is: ramified square classes
d of K (giving E = K(sqrt(d))), then ramified square classes alpha of E
(giving L = E(sqrt(alpha))).  The total discriminant exponent is
m = 2 m1 + m2 by the discriminant tower law, the closure group comes from
the norm criterion on N_{E/K}(alpha), and pair counts divide by the fibre
sizes 1/2/3 (C4/D4/V4) of the tower-to-field forgetful map.
"""

from __future__ import annotations

from ..errors import NonIntegralCount
from ..padic.field import TRIVIAL, UNRAMIFIED, LocalField, ramified_quadratic
from ..padic.quartic import classify_tower_from_norm
from ..params import GroupTag

_FIBRE = {GroupTag.C4: 1, GroupTag.D4: 2, GroupTag.V4: 3}


def _tower_pairs(K: LocalField):
    pairs: dict[tuple[int, GroupTag], int] = {}
    for d in K.square_class_reps():
        m1 = K.hecke_disc(d)
        if m1 in (TRIVIAL, UNRAMIFIED):
            continue
        E = ramified_quadratic(K, d)
        for alpha in E.square_class_reps():
            m2 = E.hecke_disc(alpha)
            if m2 in (TRIVIAL, UNRAMIFIED):
                continue
            m = 2 * m1 + m2
            g = classify_tower_from_norm(K, d, E.norm(alpha))
            key = (m, g)
            pairs[key] = pairs.get(key, 0) + 1
    return pairs


def tower_pair_totals(K: LocalField) -> dict[int, int]:
    """Number of m-towers per m (before fibre division); equals #Tow_m."""
    totals: dict[int, int] = {}
    for (m, _), n in _tower_pairs(K).items():
        totals[m] = totals.get(m, 0) + n
    return totals


def tower_counts(K: LocalField) -> dict[tuple[int, GroupTag], int]:
    """Field counts per (m, g) for g in {V4, C4, D4} from tower enumeration."""
    counts: dict[tuple[int, GroupTag], int] = {}
    for (m, g), n in sorted(_tower_pairs(K).items(), key=lambda kv: (kv[0][0], kv[0][1].value)):
        fibre = _FIBRE[g]
        if n % fibre:
            raise NonIntegralCount(
                f"{n} towers at (m={m}, {g.value}) not divisible by fibre size {fibre}"
            )
        counts[(m, g)] = n // fibre
    return counts
