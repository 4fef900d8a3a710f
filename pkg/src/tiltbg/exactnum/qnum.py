"""Exact rationals, degree-two algebraic numbers, and rational intervals.

Rationals are plain ``fractions.Fraction`` (always lowest terms, positive
denominator).  ``QuadraticNumber`` represents a + b*sqrt(n) with rational
a, b and a squarefree integer radicand n, closed under field operations
inside a fixed Q(sqrt(n)).  ``RationalInterval`` is a certified enclosure:
every operation returns an interval guaranteed to contain the true value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rational = Fraction

RationalLike = Union[int, Fraction]
ExactValue = Union[int, Fraction, "QuadraticNumber"]


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or a decimal integer string into an exact Fraction."""
    return Fraction(text.strip())


def fmt_rational(x: RationalLike) -> str:
    """Serialize exactly: decimal string for integers, "p/q" otherwise."""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def squarefree_decompose(m: int) -> tuple[int, int]:
    """Write m >= 0 as s*s*n with n squarefree; returns (s, n)."""
    if m < 0:
        raise ValueError("negative radicand")
    if m == 0:
        return 0, 0
    r = math.isqrt(m)
    if r * r == m:
        return r, 1
    s, n, p = 1, m, 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
            s *= p
        p += 1 if p == 2 else 2
    return s, n


@dataclass(frozen=True)
class QuadraticNumber:
    """Exact value a + b*sqrt(n), n squarefree; n in {0,1} is folded into a."""

    a: Fraction
    b: Fraction
    n: int

    def __post_init__(self):
        a, b, n = Fraction(self.a), Fraction(self.b), int(self.n)
        if n < 0:
            raise ValueError("negative radicand")
        if n in (0, 1) or b == 0:
            a, b, n = a + (b if n == 1 else 0), Fraction(0), 0
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "n", n)

    # -- constructors -------------------------------------------------

    @staticmethod
    def of(x: ExactValue) -> "QuadraticNumber":
        if isinstance(x, QuadraticNumber):
            return x
        return QuadraticNumber(Fraction(x), Fraction(0), 0)

    @staticmethod
    def sqrt(r: RationalLike) -> "QuadraticNumber":
        """Exact square root of a nonnegative rational."""
        r = Fraction(r)
        if r < 0:
            raise ValueError("sqrt of negative rational")
        if r == 0:
            return QuadraticNumber(Fraction(0), Fraction(0), 0)
        s, n = squarefree_decompose(r.numerator * r.denominator)
        return QuadraticNumber(Fraction(0), Fraction(s, r.denominator), n)

    # -- predicates ----------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def to_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is irrational")
        return self.a

    # -- arithmetic (closed in Q(sqrt(n)); rationals always mix) -------

    def _coerce(self, other) -> "QuadraticNumber":
        o = QuadraticNumber.of(other) if isinstance(other, (int, Fraction)) else other
        if not isinstance(o, QuadraticNumber):
            return NotImplemented
        if self.n and o.n and self.n != o.n:
            raise ValueError(f"incompatible radicands {self.n} and {o.n}")
        return o

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticNumber(self.a + o.a, self.b + o.b, max(self.n, o.n))

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(-self.a, -self.b, self.n)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = max(self.n, o.n)
        return QuadraticNumber(
            self.a * o.a + self.b * o.b * n, self.a * o.b + self.b * o.a, n
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = max(self.n, o.n)
        den = o.a * o.a - o.b * o.b * n
        if den == 0:
            raise ZeroDivisionError("division by zero quadratic number")
        conj = QuadraticNumber(o.a, -o.b, o.n)
        num = self * conj
        return QuadraticNumber(num.a / den, num.b / den, n)

    def __rtruediv__(self, other):
        return QuadraticNumber.of(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return QuadraticNumber.of(1) / self ** (-k)
        out = QuadraticNumber.of(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def square(self) -> "QuadraticNumber":
        return self * self

    def __abs__(self):
        return self if self.sign() >= 0 else -self

    # -- exact sign and ordering ---------------------------------------

    def sign(self) -> int:
        """Exact sign of a + b*sqrt(n)."""
        a, b, n = self.a, self.b, self.n
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return 1 if b > 0 else -1
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # opposite signs: compare a^2 with b^2 n
        lhs, rhs = a * a, b * b * n
        if lhs == rhs:
            return 0
        big_is_a = lhs > rhs
        return (1 if a > 0 else -1) if big_is_a else (1 if b > 0 else -1)

    def _cmp(self, other) -> int:
        return (self - other).sign()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, QuadraticNumber)):
            try:
                return self._cmp(other) == 0
            except ValueError:
                return False
        return NotImplemented

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __hash__(self):
        return hash((self.a, self.b, self.n)) if self.b else hash(self.a)

    # -- approximation --------------------------------------------------

    def approx(self, bits: int = 64) -> Fraction:
        """Rational approximation with error below |b| * 2**-bits."""
        if self.b == 0:
            return self.a
        scale = 1 << bits
        root_lo = Fraction(math.isqrt(self.n * scale * scale), scale)
        root = root_lo if self.b > 0 else root_lo + Fraction(1, scale)
        return self.a + self.b * root

    def enclosure(self, bits: int = 64) -> "RationalInterval":
        """Certified rational interval containing the exact value."""
        if self.b == 0:
            return RationalInterval(self.a, self.a)
        scale = 1 << bits
        lo = Fraction(math.isqrt(self.n * scale * scale), scale)
        hi = lo + Fraction(1, scale)
        if self.b > 0:
            return RationalInterval(self.a + self.b * lo, self.a + self.b * hi)
        return RationalInterval(self.a + self.b * hi, self.a + self.b * lo)

    def floor(self) -> int:
        if self.b == 0:
            return self.a.numerator // self.a.denominator
        box = self.enclosure(32)
        k = box.lo.numerator // box.lo.denominator
        while self._cmp(k + 1) >= 0:
            k += 1
        while self._cmp(k) < 0:
            k -= 1
        return k

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.n)

    def __repr__(self):
        if self.b == 0:
            return fmt_rational(self.a)
        return f"{fmt_rational(self.a)} + {fmt_rational(self.b)}*sqrt({self.n})"


def exact_sign(x: ExactValue) -> int:
    if isinstance(x, QuadraticNumber):
        return x.sign()
    return (x > 0) - (x < 0)


def exact_compare(x: ExactValue, y: ExactValue) -> int:
    """Sign of x - y for any mix of rationals and quadratic numbers.

    Values from distinct quadratic fields are compared through certified
    enclosures; sqrt(n) and sqrt(m) with n != m squarefree are linearly
    independent over Q, so refinement always terminates.
    """
    qx, qy = QuadraticNumber.of(x), QuadraticNumber.of(y)
    if qx.n == 0 or qy.n == 0 or qx.n == qy.n:
        return (qx - qy).sign()
    bits = 32
    while True:
        bx, by = qx.enclosure(bits), qy.enclosure(bits)
        if bx.lo > by.hi:
            return 1
        if bx.hi < by.lo:
            return -1
        bits *= 2
        if bits > 1 << 16:  # unreachable for independent radicands
            raise ArithmeticError("comparison failed to separate")


@dataclass(frozen=True)
class RationalInterval:
    """Closed interval [lo, hi] with exact rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo, hi = Fraction(self.lo), Fraction(self.hi)
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x: ExactValue) -> bool:
        return exact_compare(x, self.lo) >= 0 and exact_compare(x, self.hi) <= 0

    def strictly_inside(self, x: ExactValue) -> bool:
        return exact_compare(x, self.lo) > 0 and exact_compare(x, self.hi) < 0

    def intersects(self, other: "RationalInterval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    # interval arithmetic: outward-exact (no rounding, so exact hull)

    def __add__(self, other):
        if isinstance(other, RationalInterval):
            return RationalInterval(self.lo + other.lo, self.hi + other.hi)
        return RationalInterval(self.lo + other, self.hi + other)

    __radd__ = __add__

    def __neg__(self):
        return RationalInterval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-other if isinstance(other, RationalInterval) else -Fraction(other))

    def __mul__(self, other):
        if isinstance(other, RationalInterval):
            c = (self.lo * other.lo, self.lo * other.hi,
                 self.hi * other.lo, self.hi * other.hi)
            return RationalInterval(min(c), max(c))
        other = Fraction(other)
        if other >= 0:
            return RationalInterval(self.lo * other, self.hi * other)
        return RationalInterval(self.hi * other, self.lo * other)

    __rmul__ = __mul__

    def sign(self) -> int | None:
        """Definite sign of every point of the interval, or None."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.lo == self.hi == 0:
            return 0
        return None

    def __repr__(self):
        return f"[{fmt_rational(self.lo)}, {fmt_rational(self.hi)}]"


def sqrt_enclosure(r: RationalLike, bits: int = 64) -> RationalInterval:
    """Certified enclosure of sqrt(r) for rational r >= 0."""
    r = Fraction(r)
    if r < 0:
        raise ValueError("sqrt of negative rational")
    if r == 0:
        return RationalInterval(Fraction(0), Fraction(0))
    scale = 1 << bits
    lo = Fraction(math.isqrt((r.numerator * scale * scale) // r.denominator), scale)
    # lo <= sqrt(r) may fail by one ulp from the floor division; widen safely
    while lo * lo > r:
        lo -= Fraction(1, scale)
    hi = lo + Fraction(2, scale)
    return RationalInterval(lo, hi)
