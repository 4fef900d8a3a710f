"""Numerical Chern characters on a threefold model: lattice classes,
twists by rational multiples of the polarization, duals, discriminants,
and the standard line-bundle / ideal-sheaf constructors.

Twists are restricted to B = b*H; that is the only family the in-scope
formulas consume, and it keeps every derived pairing rational.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .exactnum import ExactValue, QuadraticNumber, fmt_rational, parse_rational
from .threefold import ThreefoldModel

RationalLike = Union[int, Fraction]


@dataclass(frozen=True)
class ChernClass:
    """Chern character data (ch0, ch1, ch2 pairings, ch3) on a model basis.

    ch1 holds lattice coordinates, ch2_pair the linear functional
    ch2 . D_i, which is exactly the degree-two data the slope, wall and
    inequality formulas consume.  Entries are rational: twisted classes
    need not be integral.
    """

    model: ThreefoldModel
    ch0: Fraction
    ch1: tuple[Fraction, ...]
    ch2_pair: tuple[Fraction, ...]
    ch3: Fraction

    def __post_init__(self):
        rho = self.model.picard_rank
        if len(self.ch1) != rho or len(self.ch2_pair) != rho:
            raise ValueError("chern vectors must have length picard_rank")
        object.__setattr__(self, "ch0", Fraction(self.ch0))
        object.__setattr__(self, "ch1", tuple(Fraction(c) for c in self.ch1))
        object.__setattr__(self, "ch2_pair", tuple(Fraction(c) for c in self.ch2_pair))
        object.__setattr__(self, "ch3", Fraction(self.ch3))

    # -- reduced accessors -------------------------------------------------

    @property
    def H2ch1(self) -> Fraction:
        return sum(a * c for a, c in zip(self.model.h2_pair, self.ch1))

    @property
    def Hch2(self) -> Fraction:
        return sum(Fraction(a) * c for a, c in zip(self.model.h, self.ch2_pair))

    @property
    def c2ch1(self) -> Fraction:
        return sum(Fraction(a) * c for a, c in zip(self.model.c2_pair, self.ch1))

    @property
    def Hch1sq(self) -> Fraction:
        qh = self.model.qh
        return sum(self.ch1[i] * qh[i][j] * self.ch1[j]
                   for i in range(len(self.ch1)) for j in range(len(self.ch1)))

    def reduced(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return self.ch0, self.H2ch1, self.Hch2, self.ch3

    # -- linear structure ---------------------------------------------------

    def __add__(self, other: "ChernClass") -> "ChernClass":
        if other.model is not self.model:
            raise ValueError("classes live on different models")
        return ChernClass(self.model, self.ch0 + other.ch0,
                          tuple(a + b for a, b in zip(self.ch1, other.ch1)),
                          tuple(a + b for a, b in zip(self.ch2_pair, other.ch2_pair)),
                          self.ch3 + other.ch3)

    def __neg__(self) -> "ChernClass":
        return self.scale(-1)

    def __sub__(self, other: "ChernClass") -> "ChernClass":
        return self + (-other)

    def scale(self, f: RationalLike) -> "ChernClass":
        f = Fraction(f)
        return ChernClass(self.model, f * self.ch0,
                          tuple(f * c for c in self.ch1),
                          tuple(f * c for c in self.ch2_pair),
                          f * self.ch3)

    def shift(self) -> "ChernClass":
        """Class of the homological shift by one: all signs flip."""
        return -self

    # -- serialization --------------------------------------------------------

    def to_dict(self) -> dict:
        return {"ch0": fmt_rational(self.ch0),
                "ch1": [fmt_rational(c) for c in self.ch1],
                "ch2_pair": [fmt_rational(c) for c in self.ch2_pair],
                "ch3": fmt_rational(self.ch3)}

    @staticmethod
    def from_dict(model: ThreefoldModel, data: dict) -> "ChernClass":
        return ChernClass(model,
                          parse_rational(data["ch0"]),
                          tuple(parse_rational(c) for c in data["ch1"]),
                          tuple(parse_rational(c) for c in data["ch2_pair"]),
                          parse_rational(data["ch3"]))

    def __repr__(self):
        return (f"ch({fmt_rational(self.ch0)}, {list(map(fmt_rational, self.ch1))}, "
                f"{list(map(fmt_rational, self.ch2_pair))}, {fmt_rational(self.ch3)})")


# -- constructors ----------------------------------------------------------------


def line_bundle(model: ThreefoldModel, m: int) -> ChernClass:
    """Class of the m-th power of the polarization: exp(m*H)."""
    mm = Fraction(m)
    return ChernClass(
        model,
        Fraction(1),
        tuple(mm * Fraction(a) for a in model.h),
        tuple(mm * mm / 2 * a for a in model.h2_pair),
        mm ** 3 * model.d / 6,
    )


def ideal_sheaf(model: ThreefoldModel, m: int, n: int) -> ChernClass:
    """Twisted ideal class: exp(m*H) with n points subtracted in degree 3."""
    if n < 0:
        raise ValueError("subscheme length must be nonnegative")
    lb = line_bundle(model, m)
    return ChernClass(model, lb.ch0, lb.ch1, lb.ch2_pair, lb.ch3 - n)


def twist(ch: ChernClass, b: RationalLike) -> ChernClass:
    """Multiply by exp(-b*H): the twisted character with respect to b*H."""
    b = Fraction(b)
    model = ch.model
    qh = model.qh
    h_dot_ch1 = [sum(qh[i][j] * ch.ch1[j] for j in range(len(ch.ch1)))
                 for i in range(len(ch.ch1))]
    ch1 = tuple(c - b * ch.ch0 * Fraction(a) for c, a in zip(ch.ch1, model.h))
    ch2 = tuple(c - b * hc + b * b / 2 * ch.ch0 * h2
                for c, hc, h2 in zip(ch.ch2_pair, h_dot_ch1, model.h2_pair))
    ch3 = (ch.ch3 - b * ch.Hch2 + b * b / 2 * ch.H2ch1
           - b ** 3 / 6 * model.d * ch.ch0)
    return ChernClass(model, ch.ch0, ch1, ch2, ch3)


def dual(ch: ChernClass) -> ChernClass:
    """Sign flip in odd degrees: the class of the derived dual."""
    return ChernClass(ch.model, ch.ch0, tuple(-c for c in ch.ch1),
                      ch.ch2_pair, -ch.ch3)


# -- twisted pairings as functions of the twist parameter -------------------------
#
# These accept QuadraticNumber arguments so degree-two twist values can be
# evaluated exactly.


def h2ch1_at(ch: ChernClass, b: ExactValue):
    return ch.H2ch1 + (-b) * (ch.model.d * ch.ch0)


def hch2_at(ch: ChernClass, b: ExactValue):
    return ch.Hch2 + (-b) * ch.H2ch1 + b * b * Fraction(1, 2) * (ch.model.d * ch.ch0)


def ch3_at(ch: ChernClass, b: ExactValue):
    return (ch.ch3 + (-b) * ch.Hch2 + b * b * Fraction(1, 2) * ch.H2ch1
            + (-b) * b * b * Fraction(1, 6) * (ch.model.d * ch.ch0))


# -- discriminants -----------------------------------------------------------------


def deltabar(ch: ChernClass, b: RationalLike = 0) -> Fraction:
    """(H^2 ch1)^2 - 2 H^3 ch0 (H ch2) of the b-twisted class; independent
    of b, which the property suite checks exactly."""
    t = twist(ch, b) if b else ch
    return t.H2ch1 ** 2 - 2 * ch.model.d * t.ch0 * t.Hch2


def h_delta(ch: ChernClass) -> Fraction:
    """H-degree of ch1^2 - 2 ch0 ch2; satisfies d * h_delta <= deltabar."""
    return ch.Hch1sq - 2 * ch.ch0 * ch.Hch2
