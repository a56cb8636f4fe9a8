"""Exact counts and masses of totally ramified quartic extensions of 2-adic fields.

The package has three layers:

* closed-form evaluators (:mod:`q2quartic.counts`, :mod:`q2quartic.masses`)
  working from an abstract base-field parameter tuple,
* a truncated 2-adic arithmetic engine (:mod:`q2quartic.padic`) over
  concretely specified base fields, and
* independent brute-force oracles (:mod:`q2quartic.oracle`) that re-derive
  the counts by enumerating Eisenstein polynomials and quadratic towers.
"""

__version__ = "0.1.0"

from .params import FieldParams, GroupTag, MinusOneClass, aut_order, validate

__all__ = [
    "FieldParams",
    "GroupTag",
    "MinusOneClass",
    "aut_order",
    "validate",
    "__version__",
]
