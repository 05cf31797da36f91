"""Integral lattice-ordered monoids on the unit interval.

Every degree computed by the package flows through an :class:`LMonoid`.
The four built-in structures share the carrier ``[0, 1]``, with ``min`` as
meet, ``max`` as join, ``0`` as bottom and ``1`` as both top and monoid
unit. They differ only in the multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from ._kernels import BOOLEAN, GODEL, LUKASIEWICZ, PRODUCT, otimes_np

__all__ = [
    "ConfigurationError",
    "LMonoid",
    "STRUCTURES",
    "make_structure",
    "big_join",
    "value_eq",
]

STRUCTURES = ("godel", "product", "lukasiewicz", "boolean")

_CODES = {"godel": GODEL, "product": PRODUCT, "lukasiewicz": LUKASIEWICZ, "boolean": BOOLEAN}
_DEFAULT_TOLERANCE = {"godel": 0.0, "product": 1e-9, "lukasiewicz": 1e-9, "boolean": 0.0}


class ConfigurationError(ValueError):
    """Unknown structure name, bad tolerance or a value outside the carrier."""


@dataclass(frozen=True)
class LMonoid:
    """An integral l-monoid ``(L, meet, join, otimes, 0, 1, e)`` with ``e = 1``.

    Instances are immutable and cheap to share. ``tolerance`` is the slack
    used whenever two degrees are compared for equality.
    """

    name: str
    tolerance: float = 0.0

    def __post_init__(self):
        if self.name not in _CODES:
            raise ConfigurationError(
                f"unknown structure {self.name!r}; expected one of {', '.join(STRUCTURES)}"
            )
        if not self.tolerance >= 0:
            raise ConfigurationError(f"tolerance must be non-negative, got {self.tolerance!r}")

    @property
    def code(self) -> int:
        return _CODES[self.name]

    zero = 0.0
    one = 1.0  # also the monoid unit e

    def meet(self, a: float, b: float) -> float:
        return a if a <= b else b

    def join(self, a: float, b: float) -> float:
        return a if a >= b else b

    def otimes(self, a: float, b: float) -> float:
        code = self.code
        if code == PRODUCT:
            return a * b
        if code == LUKASIEWICZ:
            # a + b - 1 rounds; keep the unit law exact
            if b == 1.0:
                return a
            if a == 1.0:
                return b
            v = a + b - 1.0
            return v if v > 0.0 else 0.0
        # Goedel and Boolean (AND on {0, 1} is min)
        return a if a <= b else b

    def otimes_array(self, a, b) -> np.ndarray:
        """Elementwise multiplication with numpy broadcasting."""
        return otimes_np(a, b, self.code)

    def leq(self, a: float, b: float) -> bool:
        """``a <= b`` up to the structure tolerance."""
        return a <= b + self.tolerance

    def check(self, value: float) -> float:
        """Return ``value`` as a float, raising if it is not in the carrier."""
        v = float(value)
        if not 0.0 <= v <= 1.0:
            raise ConfigurationError(f"value {value!r} is outside [0, 1]")
        if self.code == BOOLEAN and v not in (0.0, 1.0):
            raise ConfigurationError(f"boolean structure admits only 0 and 1, got {value!r}")
        return v

    def __str__(self):
        return self.name


def make_structure(name: str, tolerance: float | None = None) -> LMonoid:
    """Build one of the four built-in structures.

    When ``tolerance`` is omitted, min/max structures compare exactly and the
    arithmetic ones (product, Lukasiewicz) allow ``1e-9``.
    """
    if name not in _CODES:
        raise ConfigurationError(
            f"unknown structure {name!r}; expected one of {', '.join(STRUCTURES)}"
        )
    if tolerance is None:
        tolerance = _DEFAULT_TOLERANCE[name]
    return LMonoid(name, float(tolerance))


def big_join(lm: LMonoid, values: Iterable[float]) -> float:
    out = lm.zero
    for v in values:
        out = lm.join(out, v)
    return out


def value_eq(lm: LMonoid, a: float, b: float) -> bool:
    return abs(a - b) <= lm.tolerance
