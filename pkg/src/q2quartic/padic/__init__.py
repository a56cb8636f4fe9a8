from .field import LocalField, LocalElement, ramified_quadratic
from .quartic import EisensteinQuartic

__all__ = ["LocalField", "LocalElement", "EisensteinQuartic", "ramified_quadratic"]
