"""Certified sign verification for polynomial-plus-surd expressions.

A ``SurdExpression`` is v(x) = p(x) + sqrt(s) * q(x) with polynomials p, q
over Q and a nonnegative rational s.  ``certify_sign`` decides claims
"nonnegative" / "positive" over a bounded window with an exact certificate:
the zeros of v are confined to roots of the conjugate product
w = p^2 - s*q^2, the sign of v is constant between consecutive w-roots and
is sampled at exact rational points, and at each w-root the value of v is
classified exactly (zero, or a definite sign) through gcd tests and
interval refinement.  A violated claim comes back with an exact witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..report import CheckReport, encode_value
from .poly import Polynomial, count_roots, isolate_real_roots, refine_root, sign_at_root
from .qnum import (QuadraticNumber, Rational, RationalInterval, exact_sign,
                   fmt_rational, sqrt_enclosure, squarefree_decompose)

DEPTH_CAP = 64


class InconclusiveError(ArithmeticError):
    """Raised when certification hits the subdivision depth cap
    without reaching a decision; never a silent pass."""


@dataclass(frozen=True)
class SurdExpression:
    """Value p(x) + sqrt(s) * q(x) with s a nonnegative rational."""

    p: Polynomial
    q: Polynomial
    s: Fraction

    def __post_init__(self):
        s = Fraction(self.s)
        if s < 0:
            raise ValueError("surd radicand must be nonnegative")
        object.__setattr__(self, "s", s)

    @staticmethod
    def of_poly(p: Polynomial) -> "SurdExpression":
        return SurdExpression(p, Polynomial.of([]), Fraction(0))

    @property
    def is_polynomial(self) -> bool:
        return self.s == 0 or self.q.is_zero

    def as_polynomial(self) -> Polynomial | None:
        """The expression as a single polynomial when sqrt(s) is rational."""
        if self.is_polynomial:
            return self.p
        root = QuadraticNumber.sqrt(self.s)
        if root.is_rational:
            return self.p + self.q * root.to_fraction()
        return None

    def eval(self, x) -> QuadraticNumber:
        px, qx = self.p.eval(x), self.q.eval(x)
        return QuadraticNumber.of(px) + QuadraticNumber.sqrt(self.s) * qx

    def eval_float(self, x: float) -> float:
        import math

        return self.p.eval_float(x) + math.sqrt(float(self.s)) * self.q.eval_float(x)

    def eval_interval(self, box: RationalInterval, bits: int = 64) -> RationalInterval:
        pv = self.p.eval_interval(box)
        qv = self.q.eval_interval(box)
        return pv + sqrt_enclosure(self.s, bits) * qv

    def derivative(self) -> "SurdExpression":
        return SurdExpression(self.p.derivative(), self.q.derivative(), self.s)

    def conjugate_product(self) -> Polynomial:
        """w = p^2 - s q^2; every real zero of the expression is a zero of w."""
        return self.p * self.p - self.q * self.q * self.s


def certify_sign(expr: SurdExpression, window: RationalInterval,
                 claim: str) -> CheckReport:
    """Certify that expr is nonnegative (or strictly positive) on the window.

    Returns a CheckReport with verdict "certified" (carrying a region-by-
    region certificate, including exact equality points for nonnegative
    claims) or "violated" (carrying an exact witness point).  Raises
    InconclusiveError at the refinement depth cap.
    """
    if claim not in ("nonnegative", "positive"):
        raise ValueError(f"unknown claim {claim!r}")
    folded = expr.as_polynomial()
    if folded is not None:
        return _certify_polynomial(folded, window, claim)
    return _certify_surd(expr, window, claim)


def _report(claim: str, window: RationalInterval, verdict: str,
            entries: list[dict], witness=None) -> CheckReport:
    rep = CheckReport(
        claim=f"{claim} on {window}",
        verdict=verdict,
        entries=entries,
    )
    if witness is not None:
        rep.witness = encode_value(witness)
    return rep


def _zero_entry(where, kind: str) -> dict:
    return {"region": kind, "at": encode_value(where), "value": "0",
            "proof": "exact equality"}


def _certify_polynomial(p: Polynomial, window: RationalInterval,
                        claim: str) -> CheckReport:
    if p.is_zero:
        if claim == "nonnegative":
            return _report(claim, window, "certified",
                           [{"region": "whole window", "proof": "identically zero"}])
        return _report(claim, window, "violated",
                       [{"region": "whole window", "proof": "identically zero"}],
                       witness=window.lo)
    strict = claim == "positive"
    entries: list[dict] = []
    isolators = isolate_real_roots(p, window)
    # endpoint values
    for x in sorted({window.lo, window.hi}):
        v = p.eval(x)
        if v < 0 or (strict and v == 0):
            return _report(claim, window, "violated",
                           [{"region": "endpoint", "at": fmt_rational(x),
                             "value": fmt_rational(v)}], witness=x)
    # sample each open gap between consecutive root isolators
    for gap, sample in _gaps(window, isolators):
        v = p.eval(sample)
        if v < 0:
            return _report(claim, window, "violated",
                           [{"region": str(gap), "at": fmt_rational(sample),
                             "value": fmt_rational(v)}], witness=sample)
        entries.append({"region": str(gap), "at": fmt_rational(sample),
                        "value": fmt_rational(v), "proof": "no zero inside region"})
    # every isolated root is an exact zero of p
    for iv in isolators:
        where = iv.lo if iv.width == 0 else _identify_rational_root(p, iv) or iv
        if strict:
            return _report(claim, window, "violated",
                           [_zero_entry(where, "root")],
                           witness=where if not isinstance(where, RationalInterval) else None)
        entries.append(_zero_entry(where, "equality point"))
    return _report(claim, window, "certified", entries)


def _certify_surd(expr: SurdExpression, window: RationalInterval,
                  claim: str) -> CheckReport:
    strict = claim == "positive"
    p, q = expr.p, expr.q
    if p.is_zero and q.is_zero:
        return _certify_polynomial(Polynomial.of([]), window, claim)
    w = expr.conjugate_product()
    if w.is_zero:
        # p^2 = s q^2 with sqrt(s) irrational forces p = q = 0, handled above
        raise ArithmeticError("degenerate surd expression")
    entries: list[dict] = []
    isolators = isolate_real_roots(w, window)
    for x in sorted({window.lo, window.hi}):
        v = expr.eval(x)
        sgn = v.sign()
        if sgn < 0 or (strict and sgn == 0):
            return _report(claim, window, "violated",
                           [{"region": "endpoint", "at": fmt_rational(x),
                             "value": encode_value(v)}], witness=x)
    for gap, sample in _gaps(window, isolators):
        v = expr.eval(sample)
        sgn = v.sign()
        if sgn < 0:
            return _report(claim, window, "violated",
                           [{"region": str(gap), "at": fmt_rational(sample),
                             "value": encode_value(v)}], witness=sample)
        entries.append({"region": str(gap), "at": fmt_rational(sample),
                        "value": encode_value(v), "proof": "no zero inside region"})
    w_sf = w.squarefree_part()
    for iv in isolators:
        sgn = _surd_sign_at_conjugate_root(expr, w_sf, iv)
        if sgn > 0:
            entries.append({"region": str(iv), "proof": "positive at conjugate root"})
            continue
        if sgn == 0:
            where = iv.lo if iv.width == 0 else _identify_rational_root(w_sf, iv) or iv
            if strict:
                witness = where if not isinstance(where, RationalInterval) else None
                return _report(claim, window, "violated",
                               [_zero_entry(where, "root")], witness=witness)
            entries.append(_zero_entry(where, "equality point"))
            continue
        witness = _rational_negative_witness(expr, iv)
        return _report(claim, window, "violated",
                       [{"region": str(iv), "at": fmt_rational(witness),
                         "value": encode_value(expr.eval(witness))}],
                       witness=witness)
    return _report(claim, window, "certified", entries)


def _gaps(window: RationalInterval, isolators: list[RationalInterval]):
    """Open gaps between window endpoints and root isolators, with an
    interior rational sample point for each nonempty gap."""
    cuts = [window.lo]
    for iv in isolators:
        cuts.extend((iv.lo, iv.hi))
    cuts.append(window.hi)
    out = []
    for lo, hi in zip(cuts[::2], cuts[1::2]):
        if lo < hi:
            out.append((RationalInterval(lo, hi), (lo + hi) / 2))
    return out


def _surd_sign_at_conjugate_root(expr: SurdExpression, w_sf: Polynomial,
                                 iv: RationalInterval) -> int:
    """Exact sign of v = p + sqrt(s) q at the unique root t of w_sf in iv.

    At such a root p(t)^2 = s q(t)^2, so v(t) = 0 iff p(t) and q(t) have
    opposite signs or both vanish; otherwise v(t) = 2 p(t) != 0.
    """
    if iv.width == 0:
        return expr.eval(iv.lo).sign()
    sp = sign_at_root(expr.p, w_sf, iv)
    if sp == 0:
        # w(t) = 0 and p(t) = 0 force q(t) = 0, hence v(t) = 0
        return 0
    sq = sign_at_root(expr.q, w_sf, iv)
    if sq == 0:
        # q(t) = 0 and w(t) = 0 force p(t) = 0, contradicting sp != 0
        raise ArithmeticError("inconsistent conjugate-root signs")
    if sp == -sq:
        return 0
    return sp


def _rational_negative_witness(expr: SurdExpression, iv: RationalInterval) -> Fraction:
    """A rational point near a negative conjugate root where expr < 0."""
    box = iv
    for _ in range(DEPTH_CAP):
        for cand in (box.lo, box.mid, box.hi):
            if expr.eval(cand).sign() < 0:
                return cand
        box = RationalInterval((box.lo + box.mid) / 2, (box.mid + box.hi) / 2)
    raise InconclusiveError("inconclusive at depth cap")


def _identify_rational_root(p: Polynomial, iv: RationalInterval) -> Fraction | None:
    """The rational root of p inside iv, if the root there is rational."""
    for cand in p.rational_roots():
        if iv.lo <= cand <= iv.hi:
            return cand
    return None


def grid_scan_min(expr: SurdExpression, window: RationalInterval,
                  samples: int) -> tuple[Fraction, QuadraticNumber]:
    """Exact minimum of expr over an even rational grid (test oracle)."""
    best_x = window.lo
    best = expr.eval(best_x)
    step = window.width / samples
    x = window.lo
    for _ in range(samples):
        x = x + step
        v = expr.eval(x)
        if v < best:
            best, best_x = v, x
    return best_x, best
