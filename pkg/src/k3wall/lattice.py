"""Rank-one lattice arithmetic for a polarized K3 surface.

A class is the integer triple v = (r, c, s): rank, coefficient of the ample
generator H in ch_1, and r + ch_2.  The pairing is

    <(r, c, s), (r', c', s')> = c*c'*H^2 - r*s' - r'*s,

so v^2 = c^2*H^2 - 2*r*s, and the Euler characteristic is its negative.
Second Chern characters may be half-integral (twists introduce r*H^2/2), so
they live in Fraction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor


@dataclass(frozen=True)
class Surface:
    """Polarized K3 with Picard group Z*H; hsq is the self-intersection H^2."""

    hsq: int

    def __post_init__(self):
        if self.hsq < 2 or self.hsq % 2:
            raise ValueError("H^2 must be a positive even integer")

    @property
    def genus(self) -> int:
        return self.hsq // 2 + 1

    @staticmethod
    def of_genus(g: int) -> "Surface":
        return Surface(2 * g - 2)


@dataclass(frozen=True)
class MukaiVector:
    r: int
    c: int
    s: int

    def chern(self) -> "ChernCharacter":
        return ChernCharacter(self.r, self.c, Fraction(self.s - self.r))

    def __str__(self):
        return f"({self.r}, {self.c}, {self.s})"


@dataclass(frozen=True)
class ChernCharacter:
    """(ch0, ch1, ch2) with ch1 in units of H and ch2 possibly half-integral."""

    ch0: int
    ch1: int
    ch2: Fraction

    def __post_init__(self):
        object.__setattr__(self, "ch2", Fraction(self.ch2))
        if self.ch2.denominator not in (1, 2):
            raise ValueError("ch2 must be integral or half-integral")

    def mukai_vector(self) -> MukaiVector:
        s = Fraction(self.ch0) + self.ch2
        if s.denominator != 1:
            raise ValueError("class has half-integral ch0 + ch2")
        return MukaiVector(self.ch0, self.ch1, int(s))


def mukai_pairing(v: MukaiVector, u: MukaiVector, X: Surface) -> int:
    return v.c * u.c * X.hsq - v.r * u.s - u.r * v.s


def mukai_square(v: MukaiVector, X: Surface) -> int:
    return mukai_pairing(v, v, X)


def euler_form(v: MukaiVector, u: MukaiVector, X: Surface) -> int:
    return -mukai_pairing(v, u, X)


O_X = MukaiVector(1, 0, 1)


def compute_s(r: int, k: int, X: Surface) -> int:
    """Unique s with -2 <= k^2*H^2 - 2*r*s < 2*r - 2.

    Equivalently the only integer in the unit interval
    (k^2*H^2/(2r) - 1 + 1/r, k^2*H^2/(2r) + 1/r].
    """
    if r < 1 or k < 1:
        raise ValueError("need positive rank and degree")
    lower = Fraction(k * k * X.hsq, 2 * r) - 1 + Fraction(1, r)
    s = floor(lower) + 1
    assert -2 <= k * k * X.hsq - 2 * r * s < 2 * r - 2
    return s


def twist_minus_H(v: MukaiVector, X: Surface) -> ChernCharacter:
    """Chern character of E(-H) for E of class v."""
    ch2 = Fraction(v.s - v.r) - v.c * X.hsq + Fraction(v.r * X.hsq, 2)
    return ChernCharacter(v.r, v.c - v.r, ch2)


def pushforward_class(r: int, k: int, X: Surface) -> ChernCharacter:
    """Class of the push-forward of a rank-r degree-k*H^2 bundle on C in |H|."""
    return ChernCharacter(0, r, k * X.hsq - Fraction(r * X.hsq, 2))


def alpha_class(r: int, k: int, s: int) -> MukaiVector:
    """The kernel-bundle class (s, -k, r) attached to v = (r, k, s)."""
    return MukaiVector(s, -k, r)


def theorem_dimension(r: int, k: int, s: int, X: Surface) -> int:
    """Moduli dimension v^2 + 2 for v = (r, k, s)."""
    return mukai_square(MukaiVector(r, k, s), X) + 2
