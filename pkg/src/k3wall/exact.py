"""Exact arithmetic kernel: rationals, quadratic surds, sums of square roots.

Every quantity appearing in the wall geometry is either rational or of the
form (p + t*sqrt(D))/q with integer data, and the remaining comparisons all
reduce to the sign of a short sum

    c_0 + c_1*sqrt(d_1) + ... + c_n*sqrt(d_n)

with rational coefficients and squarefree radicands.  Signs are decided
exactly, never by floating point:

* at most two distinct radicands: isolation and squaring, a finite exact
  procedure;
* three or more: symbolic cancellation first (grouping equal radicands), then
  adaptive outward-rounded interval refinement with doubling precision.
  Square roots of distinct squarefree integers are linearly independent over
  the rationals, so a nonzero canonical sum has nonzero value and the
  refinement terminates; the configurable bit cap only guards pathological
  inputs.

Rationals are plain ``fractions.Fraction`` (always reduced, positive
denominator), re-exported as ``Rational``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Union

Rational = Fraction

# Orderings returned by surd_compare / surdsum_sign.
LT, EQ, GT = -1, 0, 1
NEG, ZERO, POS = -1, 0, 1

_DEFAULT_BIT_CAP = 4096


class PrecisionExhausted(ArithmeticError):
    """Interval refinement hit the bit cap without separating from zero."""


def set_default_bit_cap(bits: int) -> None:
    """Set the module-wide interval refinement cap (bits of precision)."""
    global _DEFAULT_BIT_CAP
    if bits < 64:
        raise ValueError("bit cap must be at least 64")
    _DEFAULT_BIT_CAP = bits


def get_default_bit_cap() -> int:
    return _DEFAULT_BIT_CAP


def _square_split(n: int) -> tuple[int, int]:
    """Write n >= 1 as root**2 * squarefree; return (root, squarefree).

    Trial division runs only up to the cube root of the shrinking cofactor:
    past that point at most two prime factors remain, so the cofactor is
    either a perfect square or already squarefree.
    """
    if n < 1:
        raise ValueError("need a positive integer")
    root, sf, d = 1, 1, 2
    while d * d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            root *= d ** (e // 2)
            if e % 2:
                sf *= d
        d += 1 if d == 2 else 2
    r = isqrt(n)
    if r * r == n:
        root *= r
    else:
        sf *= n
    return root, sf


def sqrt_normalize(n: Union[int, Fraction]) -> tuple[Fraction, int]:
    """Normalize sqrt(n) for n >= 0 as coefficient * sqrt(radicand).

    Returns (coefficient, radicand) with the radicand a squarefree integer;
    radicand 1 means no radical is left (sqrt(1) = 1), and sqrt(0) comes back
    as (0, 1).  Satisfies coefficient**2 * radicand == n.
    """
    n = Fraction(n)
    if n < 0:
        raise ValueError("radicand must be non-negative")
    if n == 0:
        return Fraction(0), 1
    a, b = n.numerator, n.denominator
    root, sf = _square_split(a * b)
    return Fraction(root, b), sf


def _sqrt_interval(d: int, bits: int) -> tuple[Fraction, Fraction]:
    """Outward-rounded enclosure of sqrt(d) with ~bits of precision."""
    if d == 0:
        return Fraction(0), Fraction(0)
    lo = isqrt(d << (2 * bits))
    scale = 1 << bits
    if lo * lo == d << (2 * bits):
        v = Fraction(lo, scale)
        return v, v
    return Fraction(lo, scale), Fraction(lo + 1, scale)


def _sign_one_radical(a: Fraction, b: Fraction, d: int) -> int:
    """Exact sign of a + b*sqrt(d), d squarefree > 1."""
    if b == 0:
        return (a > 0) - (a < 0)
    if a == 0:
        return (b > 0) - (b < 0)
    if a > 0 and b > 0:
        return POS
    if a < 0 and b < 0:
        return NEG
    s = a * a - b * b * d
    cmp = (s > 0) - (s < 0)
    # a and b have opposite signs here; the larger square wins.
    return cmp if a > 0 else -cmp


ValueLike = Union[int, Fraction, "QuadraticSurd", "SurdSum"]


class QuadraticSurd:
    """The real number (p + t*sqrt(d))/q in canonical form.

    Canonical means: d squarefree (d == 0 exactly when the value is rational),
    q > 0, and gcd(p, t, q) == 1.  Instances are immutable; all arithmetic
    that stays inside a single radicand is supported exactly.
    """

    __slots__ = ("p", "t", "d", "q")

    def __init__(self, p: int, t: int = 0, d: int = 0, q: int = 1):
        if q == 0:
            raise ZeroDivisionError("zero denominator")
        if d < 0:
            raise ValueError("negative radicand")
        if q < 0:
            p, t, q = -p, -t, -q
        if t == 0 or d == 0:
            t, d = 0, 0
        else:
            root, sf = _square_split(d)
            t *= root
            d = sf
            if d == 1:
                p, t, d = p + t, 0, 0
        g = gcd(gcd(abs(p), abs(t)), q)
        if g > 1:
            p, t, q = p // g, t // g, q // g
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "q", q)

    def __setattr__(self, *args):
        raise AttributeError("QuadraticSurd is immutable")

    @classmethod
    def from_rational(cls, x: Union[int, Fraction]) -> "QuadraticSurd":
        x = Fraction(x)
        return cls(x.numerator, 0, 0, x.denominator)

    @classmethod
    def make(cls, rational: Union[int, Fraction], coeff: Union[int, Fraction],
             radicand: Union[int, Fraction]) -> "QuadraticSurd":
        """Build rational + coeff*sqrt(radicand), normalizing the radicand."""
        rational, coeff = Fraction(rational), Fraction(coeff)
        c, d = sqrt_normalize(Fraction(radicand))
        coeff *= c
        if d == 1:
            rational += coeff
            coeff = Fraction(0)
        den = rational.denominator * coeff.denominator // gcd(
            rational.denominator, coeff.denominator)
        return cls(rational.numerator * (den // rational.denominator),
                   coeff.numerator * (den // coeff.denominator),
                   d if coeff else 0, den)

    @property
    def is_rational(self) -> bool:
        return self.t == 0

    def to_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is irrational")
        return Fraction(self.p, self.q)

    def rational_part(self) -> Fraction:
        return Fraction(self.p, self.q)

    def radical_coeff(self) -> Fraction:
        return Fraction(self.t, self.q)

    # -- arithmetic -----------------------------------------------------

    def _parts(self, other) -> tuple[Fraction, Fraction, int]:
        """Coerce other to (rational, coeff, d) compatible with self's d."""
        if isinstance(other, QuadraticSurd):
            if other.t != 0 and self.t != 0 and other.d != self.d:
                raise ValueError(
                    f"mixed radicands {self.d} and {other.d}; use SurdSum")
            d = self.d if self.t != 0 else other.d
            return other.rational_part(), other.radical_coeff(), d
        if isinstance(other, (int, Fraction)):
            return Fraction(other), Fraction(0), self.d
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        parts = self._parts(other)
        if parts is NotImplemented:
            return NotImplemented
        ra, ca, d = parts
        r = self.rational_part() + ra
        c = self.radical_coeff() + ca
        return QuadraticSurd.make(r, c, d if d else 0)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticSurd(-self.p, -self.t, self.d, self.q)

    def __sub__(self, other):
        res = self.__add__(-other if isinstance(other, QuadraticSurd)
                           else -Fraction(other))
        return res

    def __rsub__(self, other):
        return (-self).__add__(Fraction(other))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return QuadraticSurd(self.p * f.numerator, self.t * f.numerator,
                                 self.d, self.q * f.denominator)
        if isinstance(other, QuadraticSurd):
            if self.t == 0 or other.t == 0 or self.d == other.d:
                d = self.d or other.d
                p = self.p * other.p + self.t * other.t * (d or 0)
                t = self.p * other.t + self.t * other.p
                return QuadraticSurd(p, t, d, self.q * other.q)
            raise ValueError("mixed radicands; use SurdSum")
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            if f == 0:
                raise ZeroDivisionError
            return self * (1 / f)
        if isinstance(other, QuadraticSurd):
            if other.p == 0 and other.t == 0:
                raise ZeroDivisionError
            if other.t == 0:
                return self / other.to_fraction()
            if self.t != 0 and self.d != other.d:
                raise ValueError("mixed radicands; use SurdSum")
            # multiply by the conjugate: norm p^2 - t^2 d is a nonzero integer
            norm = other.p * other.p - other.t * other.t * other.d
            conj = QuadraticSurd(other.p, -other.t, other.d, 1)
            return self * conj * Fraction(other.q, norm)
        return NotImplemented

    def __rtruediv__(self, other):
        return QuadraticSurd.from_rational(Fraction(other)) / self

    # -- order ----------------------------------------------------------

    def _sign(self) -> int:
        return _sign_one_radical(Fraction(self.p), Fraction(self.t), self.d) \
            if self.t else ((self.p > 0) - (self.p < 0))

    def _cmp(self, other) -> int:
        if isinstance(other, (int, Fraction)):
            other = QuadraticSurd.from_rational(other)
        if not isinstance(other, QuadraticSurd):
            return NotImplemented  # type: ignore[return-value]
        if self.d == other.d or self.t == 0 or other.t == 0:
            diff_r = self.rational_part() - other.rational_part()
            diff_c = self.radical_coeff() - other.radical_coeff()
            return _sign_one_radical(diff_r, diff_c, self.d or other.d or 1)
        return surdsum_sign(SurdSum.of(self) - SurdSum.of(other))

    def __eq__(self, other):
        if isinstance(other, QuadraticSurd):
            return (self.p, self.t, self.d, self.q) == \
                   (other.p, other.t, other.d, other.q)
        if isinstance(other, (int, Fraction)):
            return self.is_rational and Fraction(self.p, self.q) == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational:
            return hash(Fraction(self.p, self.q))
        return hash((self.p, self.t, self.d, self.q))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    # -- numeric views ----------------------------------------------------

    def interval(self, bits: int = 64) -> tuple[Fraction, Fraction]:
        """Outward-rounded rational enclosure of the value."""
        lo, hi = _sqrt_interval(self.d, bits) if self.t else (Fraction(0),) * 2
        if self.t < 0:
            lo, hi = hi, lo
        return ((self.p + self.t * lo) / self.q,
                (self.p + self.t * hi) / self.q)

    def __float__(self) -> float:
        lo, hi = self.interval(80)
        return float((lo + hi) / 2)

    def floor(self) -> int:
        if self.is_rational:
            return self.p // self.q
        lo, hi = self.interval(64)
        n = lo.numerator // lo.denominator
        while self._cmp(Fraction(n + 1)) >= 0:
            n += 1
        while self._cmp(Fraction(n)) < 0:
            n -= 1
        return n

    def decimal(self, digits: int = 6) -> str:
        return _decimal_of(self, digits)

    def __str__(self):
        if self.is_rational:
            return str(Fraction(self.p, self.q))
        core = f"{self.p} + {self.t}*sqrt({self.d})" if self.t >= 0 \
            else f"{self.p} - {-self.t}*sqrt({self.d})"
        if self.p == 0:
            core = f"{self.t}*sqrt({self.d})"
        return core if self.q == 1 else f"({core})/{self.q}"

    def __repr__(self):
        return f"QuadraticSurd(p={self.p}, t={self.t}, d={self.d}, q={self.q})"


@dataclass(frozen=True)
class SurdSum:
    """Canonical sum of terms coeff*sqrt(radicand).

    Radicands are distinct squarefree positive integers; radicand 1 carries
    the rational part.  Zero coefficients are dropped, so the zero value is
    the empty sum -- which is exactly when the represented real is zero,
    since square roots of distinct squarefree integers are linearly
    independent over the rationals.
    """

    terms: tuple[tuple[Fraction, int], ...]

    @staticmethod
    def from_terms(raw: Iterable[tuple[Union[int, Fraction],
                                       Union[int, Fraction]]]) -> "SurdSum":
        acc: dict[int, Fraction] = {}
        for coeff, rad in raw:
            coeff = Fraction(coeff)
            if coeff == 0:
                continue
            c, d = sqrt_normalize(Fraction(rad))
            coeff *= c
            if coeff == 0:
                continue
            acc[d] = acc.get(d, Fraction(0)) + coeff
        terms = tuple((c, d) for d, c in sorted(acc.items()) if c != 0)
        return SurdSum(terms)

    @staticmethod
    def zero() -> "SurdSum":
        return SurdSum(())

    @staticmethod
    def sqrt(x: Union[int, Fraction]) -> "SurdSum":
        return SurdSum.from_terms([(1, x)])

    @staticmethod
    def of(x: ValueLike) -> "SurdSum":
        if isinstance(x, SurdSum):
            return x
        if isinstance(x, QuadraticSurd):
            out = [(Fraction(x.p, x.q), 1)]
            if x.t:
                out.append((Fraction(x.t, x.q), x.d))
            return SurdSum.from_terms(out)
        return SurdSum.from_terms([(Fraction(x), 1)])

    # -- algebra -----------------------------------------------------------

    def __add__(self, other):
        other = SurdSum.of(other) if not isinstance(other, SurdSum) else other
        return SurdSum._merge(self, other)

    @staticmethod
    def _merge(a: "SurdSum", b: "SurdSum") -> "SurdSum":
        acc = {d: c for c, d in a.terms}
        for c, d in b.terms:
            acc[d] = acc.get(d, Fraction(0)) + c
        return SurdSum(tuple((c, d) for d, c in sorted(acc.items()) if c != 0))

    __radd__ = __add__

    def __neg__(self):
        return SurdSum(tuple((-c, d) for c, d in self.terms))

    def __sub__(self, other):
        other = SurdSum.of(other) if not isinstance(other, SurdSum) else other
        return SurdSum._merge(self, -other)

    def __rsub__(self, other):
        return SurdSum.of(other) - self

    def __mul__(self, other):
        f = Fraction(other)
        if f == 0:
            return SurdSum.zero()
        return SurdSum(tuple((c * f, d) for c, d in self.terms))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * (1 / Fraction(other))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_rational(self) -> bool:
        return all(d == 1 for _, d in self.terms)

    def to_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is irrational")
        return self.terms[0][0] if self.terms else Fraction(0)

    def radical_count(self) -> int:
        return sum(1 for _, d in self.terms if d > 1)

    # -- sign ---------------------------------------------------------------

    def sign(self, bit_cap: int | None = None) -> int:
        """Exact sign; raises PrecisionExhausted past the bit cap."""
        if not self.terms:
            return ZERO
        if all(c > 0 for c, _ in self.terms):
            return POS
        if all(c < 0 for c, _ in self.terms):
            return NEG
        radicals = [(c, d) for c, d in self.terms if d > 1]
        rational = sum((c for c, d in self.terms if d == 1), Fraction(0))
        if len(radicals) == 1:
            return _sign_one_radical(rational, radicals[0][0], radicals[0][1])
        if len(radicals) == 2:
            return self._sign_two_radicals(rational, radicals)
        return self._sign_interval(bit_cap or _DEFAULT_BIT_CAP)

    @staticmethod
    def _sign_two_radicals(a: Fraction,
                           radicals: list[tuple[Fraction, int]]) -> int:
        # sign(a + b*sqrt(d1) + c*sqrt(d2)): compare y = a + b*sqrt(d1)
        # against z = -c*sqrt(d2); squaring is valid once both signs agree.
        (b, d1), (c, d2) = radicals
        sy = _sign_one_radical(a, b, d1)
        sz = -((c > 0) - (c < 0))
        if sy != sz:
            return POS if sy > sz else NEG
        sigma = sy  # equal and nonzero (c != 0 in canonical form)
        tau = _sign_one_radical(a * a + b * b * d1 - c * c * d2, 2 * a * b, d1)
        return sigma * tau

    def _sign_interval(self, bit_cap: int) -> int:
        bits = 64
        while bits <= bit_cap:
            lo, hi = self.interval(bits)
            if lo > 0:
                return POS
            if hi < 0:
                return NEG
            bits *= 2
        raise PrecisionExhausted(
            f"sign of {self} undecided at {bit_cap} bits")

    # -- numeric views -------------------------------------------------------

    def interval(self, bits: int = 64) -> tuple[Fraction, Fraction]:
        lo = hi = Fraction(0)
        for c, d in self.terms:
            slo, shi = (Fraction(1), Fraction(1)) if d == 1 \
                else _sqrt_interval(d, bits)
            if c >= 0:
                lo += c * slo
                hi += c * shi
            else:
                lo += c * shi
                hi += c * slo
        return lo, hi

    def __float__(self) -> float:
        lo, hi = self.interval(80)
        return float((lo + hi) / 2)

    def floor(self) -> int:
        if self.is_rational:
            f = self.to_fraction()
            return f.numerator // f.denominator
        lo, _ = self.interval(64)
        n = lo.numerator // lo.denominator
        while (self - Fraction(n + 1)).sign() >= 0:
            n += 1
        while (self - Fraction(n)).sign() < 0:
            n -= 1
        return n

    def decimal(self, digits: int = 6) -> str:
        return _decimal_of(self, digits)

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for c, d in self.terms:
            mag = f"{abs(c)}" if d == 1 else (
                f"sqrt({d})" if abs(c) == 1 else f"{abs(c)}*sqrt({d})")
            bits.append(("- " if c < 0 else "+ ") + mag)
        out = " ".join(bits)
        return out[2:] if out.startswith("+ ") else "-" + out[2:]


def surd_compare(a: ValueLike, b: ValueLike) -> int:
    """Exact three-way comparison; returns LT, EQ or GT."""
    if isinstance(a, QuadraticSurd) and isinstance(b, QuadraticSurd):
        return a._cmp(b)
    return surdsum_sign(SurdSum.of(a) - SurdSum.of(b))


def surdsum_sign(x: SurdSum, bit_cap: int | None = None) -> int:
    """Exact sign of a canonical surd sum; NEG, ZERO or POS."""
    return x.sign(bit_cap)


def _round_half_even(value, digits: int) -> int:
    """Nearest integer to value * 10**digits, ties to even (exact)."""
    scale = 10 ** digits
    if isinstance(value, (int, Fraction)):
        return round(Fraction(value) * scale)
    scaled = value * scale
    m = scaled.floor()
    rem_cmp = surdsum_sign(SurdSum.of(scaled) - Fraction(2 * m + 1, 2))
    if rem_cmp > 0:
        return m + 1
    if rem_cmp < 0:
        return m
    return m if m % 2 == 0 else m + 1


def _decimal_of(value, digits: int) -> str:
    n = _round_half_even(value, digits)
    sign = "-" if n < 0 else ""
    digits_str = str(abs(n)).rjust(digits + 1, "0")
    if digits == 0:
        return sign + digits_str
    return f"{sign}{digits_str[:-digits]}.{digits_str[-digits:]}"


def decimal_str(value: ValueLike, digits: int = 6) -> str:
    """Correctly rounded decimal rendering of an exact value."""
    if isinstance(value, (QuadraticSurd, SurdSum)):
        return value.decimal(digits)
    return _decimal_of(Fraction(value), digits)
