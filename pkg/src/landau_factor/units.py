"""Minimal dimensional bookkeeping in Gaussian units.

Only mass, length and time are tracked; charge and field enter through the
combination qB/c, which has dimension mass/time.  The tags exist so that a
missing qB/c or hbar in an exponent is caught when the generator is built.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple


class Dimension(NamedTuple):
    mass: Fraction = Fraction(0)
    length: Fraction = Fraction(0)
    time: Fraction = Fraction(0)

    def __mul__(self, other: "Dimension") -> "Dimension":  # type: ignore[override]
        return Dimension(*(a + b for a, b in zip(self, other)))

    def __truediv__(self, other: "Dimension") -> "Dimension":
        return Dimension(*(a - b for a, b in zip(self, other)))

    def __pow__(self, k) -> "Dimension":
        k = Fraction(k)
        return Dimension(*(a * k for a in self))

    @property
    def is_dimensionless(self) -> bool:
        return all(a == 0 for a in self)

    def __str__(self) -> str:
        parts = []
        for sym, e in zip("MLT", self):
            if e == 1:
                parts.append(sym)
            elif e != 0:
                parts.append(f"{sym}^{e}")
        return " ".join(parts) or "1"


DIMENSIONLESS = Dimension()
MASS = Dimension(mass=Fraction(1))
LENGTH = Dimension(length=Fraction(1))
TIME = Dimension(time=Fraction(1))
VELOCITY = LENGTH / TIME
MOMENTUM = MASS * VELOCITY
ACTION = MOMENTUM * LENGTH
ENERGY = ACTION / TIME
#: qB/c, momentum per length
FIELD_COUPLING = MOMENTUM / LENGTH
