"""Exact rational phases: angles stored as reduced fractions of a full turn."""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True, order=True)
class RationalPhase:
    """An angle as an exact fraction of a full turn, reduced mod 1.

    The value is ``numerator/denominator`` turns with
    ``0 <= numerator < denominator`` and ``gcd(numerator, denominator) == 1``.
    """

    numerator: int
    denominator: int

    def __post_init__(self):
        if self.denominator <= 0:
            raise ValueError("denominator must be positive")
        f = Fraction(self.numerator, self.denominator) % 1
        if (f.numerator, f.denominator) != (self.numerator, self.denominator):
            raise ValueError(
                f"phase {self.numerator}/{self.denominator} not reduced mod 1"
            )

    @staticmethod
    def of(numerator, denominator=1) -> "RationalPhase":
        """Build a phase from any integer or Fraction data, reducing mod 1."""
        f = Fraction(numerator, denominator) % 1
        return RationalPhase(f.numerator, f.denominator)

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def __add__(self, other: "RationalPhase") -> "RationalPhase":
        return RationalPhase.of(self.fraction + other.fraction)

    def __sub__(self, other: "RationalPhase") -> "RationalPhase":
        return RationalPhase.of(self.fraction - other.fraction)

    def __neg__(self) -> "RationalPhase":
        return RationalPhase.of(-self.fraction)

    def __mul__(self, n: int) -> "RationalPhase":
        return RationalPhase.of(self.fraction * n)

    __rmul__ = __mul__

    @property
    def is_zero(self) -> bool:
        return self.numerator == 0

    def unit(self) -> complex:
        """exp(2 pi i * value)."""
        return cmath.exp(2j * cmath.pi * self.numerator / self.denominator)

    @staticmethod
    def from_float(x: float, max_denominator: int = 240, tol: float = 1e-9) -> "RationalPhase":
        """Nearest rational phase with bounded denominator; error if none is close.

        Used for rational reconstruction of central charges; ambiguity within
        ``tol`` is impossible for ``tol`` below 1/max_denominator**2.
        """
        f = Fraction(x % 1.0).limit_denominator(max_denominator)
        err = abs(float(f) - x % 1.0)
        # the wrap-around candidate: x close to 1 reconstructs as 0
        err = min(err, abs(float(f) + 1.0 - x % 1.0), abs(float(f) - 1.0 - x % 1.0))
        if err > tol:
            raise ValueError(
                f"no rational with denominator <= {max_denominator} within {tol} of {x}"
            )
        return RationalPhase.of(f)

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator}"

    @staticmethod
    def parse(text: str) -> "RationalPhase":
        num, _, den = text.partition("/")
        return RationalPhase.of(int(num), int(den) if den else 1)


# the trivial phase, shared
ZERO_PHASE = RationalPhase(0, 1)
