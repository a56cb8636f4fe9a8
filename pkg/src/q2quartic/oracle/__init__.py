from .density import density_counts
from .dedup import dedup_counts
from .measure import cubic_congruence_measure, measure_set, one_aut_measure, t_m_measure
from .tower import tower_counts, tower_pair_totals
from .verify import VerificationReport, verify

__all__ = [
    "density_counts",
    "dedup_counts",
    "measure_set",
    "t_m_measure",
    "one_aut_measure",
    "cubic_congruence_measure",
    "tower_counts",
    "tower_pair_totals",
    "VerificationReport",
    "verify",
]
