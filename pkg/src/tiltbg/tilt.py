"""Slope and tilt-slope functions, the two-sided slope bounds, wall
circles, and the real-part vanishing loci in the (beta, alpha) plane,
together with the exact derivative of the inequality expression along
the capped locus.

The stability parameter alpha enters as alpha^2 so that every slope,
wall and locus computation stays rational; alpha itself only surfaces
inside quadratic-number results such as wall radii.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .chern import ChernClass, ch3_at, h2ch1_at, hch2_at, deltabar
from .exactnum import ExactValue, QuadraticNumber, exact_sign, fmt_rational
from .threefold import ThreefoldModel

RationalLike = Union[int, Fraction]


@dataclass(frozen=True)
class SlopeValue:
    """Finite exact slope or plus infinity (vanishing denominator)."""

    finite: bool
    value: Optional[ExactValue] = None
    boundary: bool = False  # evaluated at the alpha = 0 boundary

    @staticmethod
    def of(value: ExactValue, boundary: bool = False) -> "SlopeValue":
        return SlopeValue(True, value, boundary)

    @staticmethod
    def infinity() -> "SlopeValue":
        return SlopeValue(False, None)

    @property
    def is_infinite(self) -> bool:
        return not self.finite

    def unwrap(self) -> ExactValue:
        if not self.finite:
            raise ValueError("infinite slope")
        return self.value

    def __repr__(self):
        if not self.finite:
            return "+inf"
        tag = " (boundary)" if self.boundary else ""
        return f"{self.value!r}{tag}"


def mu(ch: ChernClass, b: RationalLike = 0) -> SlopeValue:
    """Twisted slope (H^2 ch1^b)/(H^3 ch0); +inf on torsion classes."""
    if ch.ch0 == 0:
        return SlopeValue.infinity()
    b = Fraction(b)
    return SlopeValue.of(h2ch1_at(ch, b) / (ch.model.d * ch.ch0))


def nu(ch: ChernClass, b: RationalLike, alpha_sq: RationalLike) -> SlopeValue:
    """Tilt slope (H ch2^b - (alpha^2/2) H^3 ch0)/(H^2 ch1^b).

    alpha_sq = 0 is allowed as a boundary evaluation and flagged as such.
    """
    alpha_sq = Fraction(alpha_sq)
    if alpha_sq < 0:
        raise ValueError("alpha^2 must be nonnegative")
    b = Fraction(b)
    den = h2ch1_at(ch, b)
    if den == 0:
        return SlopeValue.infinity()
    num = hch2_at(ch, b) - alpha_sq / 2 * ch.model.d * ch.ch0
    return SlopeValue.of(num / den, boundary=alpha_sq == 0)


def psi(ch: ChernClass, b: RationalLike, alpha_sq: RationalLike,
        delta: RationalLike, sign: int) -> QuadraticNumber:
    """Two-sided slope bound nu +- sqrt(nu^2 + alpha^2 + delta)."""
    if Fraction(delta) < 0:
        raise ValueError("delta must be nonnegative")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    slope = nu(ch, b, alpha_sq)
    if slope.is_infinite:
        raise ValueError("Psi undefined at infinite slope")
    v = slope.value
    radicand = v * v + Fraction(alpha_sq) + Fraction(delta)
    root = QuadraticNumber.sqrt(radicand)
    return QuadraticNumber.of(v) + (root if sign > 0 else -root)


@dataclass(frozen=True)
class WallCircle:
    """Circle in the (beta, alpha) plane along which the tilt slope of the
    class is constant equal to center_beta - beta."""

    center_beta: ExactValue
    radius_sq: Fraction

    def __post_init__(self):
        if Fraction(self.radius_sq) <= 0:
            raise ValueError("wall must have positive radius")

    def contains(self, b: ExactValue, alpha_sq: ExactValue) -> bool:
        lhs = (b - self.center_beta) * (b - self.center_beta) + alpha_sq
        return exact_sign(lhs - self.radius_sq) == 0

    def alpha_sq_at(self, b: RationalLike) -> Fraction:
        return Fraction(self.radius_sq) - (Fraction(b) - self.center_beta) ** 2

    def to_dict(self) -> dict:
        return {"center_beta": fmt_rational(self.center_beta),
                "radius_sq": fmt_rational(self.radius_sq)}


def wall_circle(ch: ChernClass, b0: RationalLike, alpha0_sq: RationalLike) -> WallCircle:
    """Wall through the base point: center b0 + nu, squared radius
    nu^2 + alpha0^2; the base point always lies on the circle."""
    slope = nu(ch, b0, alpha0_sq)
    if slope.is_infinite:
        raise ValueError("wall undefined at infinite tilt slope")
    v = slope.value
    return WallCircle(Fraction(b0) + v, v * v + Fraction(alpha0_sq))


@dataclass(frozen=True)
class ConicLocus:
    """Vanishing locus of H ch2^{beta H} - (alpha^2/2) H^3 ch0 as a conic
    relation a2*beta^2 + a1*beta + a0 - a2*alpha^2 = 0; a vertical line
    when the class has ch0 = 0."""

    a2: Fraction
    a1: Fraction
    a0: Fraction
    alpha_cap_sq: Optional[Fraction] = None

    @property
    def is_vertical(self) -> bool:
        return self.a2 == 0

    @property
    def beta_line(self) -> Fraction:
        if not self.is_vertical:
            raise ValueError("locus is not a vertical line")
        if self.a1 == 0:
            raise ValueError("degenerate locus")
        return -self.a0 / self.a1

    def residual(self, beta: ExactValue, alpha_sq: ExactValue):
        return self.a2 * beta * beta + self.a1 * beta + self.a0 - self.a2 * alpha_sq

    def contains(self, beta: ExactValue, alpha_sq: ExactValue) -> bool:
        return exact_sign(self.residual(beta, alpha_sq)) == 0

    def alpha_sq_at(self, beta: RationalLike) -> Fraction:
        """alpha^2 on the locus above a given beta (requires a2 != 0)."""
        if self.is_vertical:
            raise ValueError("alpha is free on a vertical locus")
        beta = Fraction(beta)
        return (self.a2 * beta * beta + self.a1 * beta + self.a0) / self.a2

    def sample(self, count: int) -> list[tuple[Fraction, Fraction]]:
        """Exact (beta, alpha^2) points, evenly spaced in beta."""
        if count < 2:
            raise ValueError("need at least two samples")
        if self.is_vertical:
            beta = self.beta_line
            top = self.alpha_cap_sq if self.alpha_cap_sq is not None else Fraction(1)
            return [(beta, top * k / (count - 1)) for k in range(count)]
        lo, hi = self._beta_range()
        out = []
        for k in range(count):
            beta = lo + (hi - lo) * k / (count - 1)
            a2 = self.alpha_sq_at(beta)
            if a2 >= 0 and (self.alpha_cap_sq is None or a2 <= self.alpha_cap_sq):
                out.append((beta, a2))
        return out

    def _beta_range(self) -> tuple[Fraction, Fraction]:
        """Beta span of the branch: from the alpha = 0 crossings to the cap
        (or one unit past the crossings when uncapped)."""
        disc = self.a1 * self.a1 - 4 * self.a2 * self.a0
        cap = self.alpha_cap_sq
        vertex = -self.a1 / (2 * self.a2)
        if disc >= 0:
            spread = QuadraticNumber.sqrt(disc).enclosure(32).hi / (2 * abs(self.a2))
        else:
            spread = Fraction(0)
        if cap is not None:
            extra_disc = disc + 4 * self.a2 * self.a2 * cap
            extra = (QuadraticNumber.sqrt(max(extra_disc, Fraction(0)))
                     .enclosure(32).hi / (2 * abs(self.a2)))
            return vertex - extra, vertex + extra
        return vertex - spread - 1, vertex + spread + 1

    def to_dict(self) -> dict:
        out = {"a2": fmt_rational(self.a2), "a1": fmt_rational(self.a1),
               "a0": fmt_rational(self.a0)}
        if self.alpha_cap_sq is not None:
            out["alpha_cap_sq"] = fmt_rational(self.alpha_cap_sq)
        return out


def z_locus(ch: ChernClass) -> ConicLocus:
    """Uncapped vanishing locus of the real part of the tilt stability
    function of the class."""
    half = Fraction(ch.model.d) * ch.ch0 / 2
    return ConicLocus(a2=half, a1=-ch.H2ch1, a0=ch.Hch2)


def c_locus(ch: ChernClass, alpha0_sq: RationalLike) -> ConicLocus:
    """Capped locus through the base point (0, alpha0); requires the tilt
    slope of the class to vanish there."""
    alpha0_sq = Fraction(alpha0_sq)
    slope = nu(ch, 0, alpha0_sq)
    if slope.is_infinite or slope.value != 0:
        raise ValueError("locus requires vanishing tilt slope at the base point")
    base = z_locus(ch)
    return ConicLocus(base.a2, base.a1, base.a0, alpha_cap_sq=alpha0_sq)


def recenter(ch: ChernClass, b0: RationalLike, alpha0_sq: RationalLike
             ) -> tuple[Fraction, Fraction]:
    """Shifted base point (b0 + nu, nu^2 + alpha0^2); the returned point
    lies on the uncapped locus of the class."""
    slope = nu(ch, b0, alpha0_sq)
    if slope.is_infinite:
        raise ValueError("cannot recenter at infinite tilt slope")
    v = slope.value
    return Fraction(b0) + v, v * v + Fraction(alpha0_sq)


def d_dalpha_along_c(model: ThreefoldModel, ch: ChernClass, xi: RationalLike,
                     beta: ExactValue, alpha: ExactValue):
    """Exact derivative of the inequality expression with respect to alpha
    along the vanishing locus:

        (-alpha * deltabar - 3 xi (H^3 ch0)^2) / (3 H^2 ch1^{beta H}).

    The point must satisfy the locus relation exactly; the twisted degree
    must be nonzero.
    """
    locus = z_locus(ch)
    alpha_sq = alpha * alpha
    res = locus.residual(beta, alpha_sq)
    if exact_sign(res) != 0:
        raise ValueError(f"point is off the locus, residual {res!r}")
    den = h2ch1_at(ch, beta)
    if exact_sign(den) == 0:
        raise ValueError("twisted degree vanishes at the point")
    dbar = deltabar(ch)
    num = (-alpha) * dbar + Fraction(-3) * Fraction(xi) * (Fraction(model.d) * ch.ch0) ** 2
    return (QuadraticNumber.of(num) / QuadraticNumber.of(den)
            if isinstance(num, QuadraticNumber) or isinstance(den, QuadraticNumber)
            else Fraction(num, 1) / den)


def dbeta_dalpha_along_c(ch: ChernClass, beta: ExactValue, alpha: ExactValue):
    """Slope of the locus parametrized by alpha:
    -alpha H^3 ch0 / H^2 ch1^{beta H}."""
    den = h2ch1_at(ch, beta)
    if exact_sign(den) == 0:
        raise ValueError("twisted degree vanishes at the point")
    num = (-alpha) * (ch.model.d * ch.ch0)
    if isinstance(num, QuadraticNumber) or isinstance(den, QuadraticNumber):
        return QuadraticNumber.of(num) / QuadraticNumber.of(den)
    return Fraction(num) / den
