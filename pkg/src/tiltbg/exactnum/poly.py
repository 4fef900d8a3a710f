"""Univariate polynomials over Q: exact arithmetic, Sturm counting,
real root isolation and certified refinement."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .qnum import ExactValue, QuadraticNumber, Rational, RationalInterval

MAX_BISECTIONS = 256


@dataclass(frozen=True)
class Polynomial:
    """Coefficients ascending by degree; leading coefficient nonzero."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        cs = [Fraction(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @staticmethod
    def of(coeffs: Iterable) -> "Polynomial":
        return Polynomial(tuple(Fraction(c) for c in coeffs))

    @staticmethod
    def constant(c) -> "Polynomial":
        return Polynomial.of([c])

    @staticmethod
    def x() -> "Polynomial":
        return Polynomial.of([0, 1])

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else -1

    @property
    def leading(self) -> Fraction:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    # -- ring operations -----------------------------------------------

    def __add__(self, other):
        other = other if isinstance(other, Polynomial) else Polynomial.of([other])
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial.of([self.coeff(i) + other.coeff(i) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Polynomial.of([-c for c in self.coeffs])

    def __sub__(self, other):
        other = other if isinstance(other, Polynomial) else Polynomial.of([other])
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return Polynomial.of([c * Fraction(other) for c in self.coeffs])
        if self.is_zero or other.is_zero:
            return Polynomial.of([])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial.of(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Polynomial.of([1])
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def derivative(self) -> "Polynomial":
        return Polynomial.of([i * c for i, c in enumerate(self.coeffs)][1:])

    def divmod(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        q = [Fraction(0)] * max(0, self.degree - other.degree + 1)
        r = list(self.coeffs)
        d, lc = other.degree, other.leading
        while len(r) - 1 >= d and any(r):
            while r and r[-1] == 0:
                r.pop()
            if len(r) - 1 < d:
                break
            k = len(r) - 1 - d
            factor = r[-1] / lc
            q[k] = factor
            for i, c in enumerate(other.coeffs):
                r[k + i] -= factor * c
            r.pop()
        return Polynomial.of(q), Polynomial.of(r)

    def rem(self, other: "Polynomial") -> "Polynomial":
        return self.divmod(other)[1]

    def monic(self) -> "Polynomial":
        if self.is_zero:
            return self
        lc = self.leading
        return Polynomial.of([c / lc for c in self.coeffs])

    def gcd(self, other: "Polynomial") -> "Polynomial":
        a, b = self, other
        while not b.is_zero:
            r = a.rem(b)
            a, b = b, (r.monic() if not r.is_zero else r)
        return a.monic() if not a.is_zero else a

    def squarefree_part(self) -> "Polynomial":
        if self.degree <= 0:
            return self.monic()
        g = self.gcd(self.derivative())
        if g.degree <= 0:
            return self.monic()
        return self.divmod(g)[0].monic()

    # -- evaluation ------------------------------------------------------

    def eval(self, x: ExactValue):
        """Horner evaluation; exact for Fraction and QuadraticNumber inputs."""
        acc = Fraction(0) if not isinstance(x, QuadraticNumber) else QuadraticNumber.of(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __call__(self, x):
        return self.eval(x)

    def eval_interval(self, box: RationalInterval) -> RationalInterval:
        """Certified enclosure of the image of an interval (interval Horner)."""
        acc = RationalInterval(Fraction(0), Fraction(0))
        for c in reversed(self.coeffs):
            acc = acc * box + c
        return acc

    def eval_float(self, x: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + float(c)
        return acc

    def shift(self, t) -> "Polynomial":
        """Polynomial p(x + t)."""
        out = Polynomial.of([])
        base = Polynomial.of([Fraction(t), 1])
        for c in reversed(self.coeffs):
            out = out * base + Polynomial.of([c])
        return out

    def rational_roots(self) -> list[Fraction]:
        """All rational roots, via the rational root theorem on the
        integer-cleared polynomial."""
        if self.is_zero:
            raise ValueError("indeterminate roots")
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        k = 0
        while ints[k] == 0:
            k += 1
        roots = [Fraction(0)] if k > 0 else []
        a0, an = abs(ints[k]), abs(ints[-1])
        for p in _divisors(a0):
            for q in _divisors(an):
                for cand in (Fraction(p, q), Fraction(-p, q)):
                    if self.eval(cand) == 0 and cand not in roots:
                        roots.append(cand)
        return sorted(roots)

    def __repr__(self):
        if self.is_zero:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c:
                parts.append(f"{c}*x^{i}" if i else f"{c}")
        return " + ".join(parts)


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.extend((d, n // d))
        d += 1
    return sorted(set(out))


# -- Sturm machinery ----------------------------------------------------


def sturm_chain(poly: Polynomial) -> list[Polynomial]:
    """Sturm chain of the squarefree part."""
    f = poly.squarefree_part()
    chain = [f, f.derivative()]
    while not chain[-1].is_zero:
        chain.append(-chain[-2].rem(chain[-1]))
    chain.pop()
    return chain


def _sign_variations(values: Sequence[Fraction]) -> int:
    signs = [(v > 0) - (v < 0) for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a * b < 0)


def _variations_at(chain: list[Polynomial], x: Fraction) -> int:
    return _sign_variations([p.eval(x) for p in chain])


def sturm_count_open(poly: Polynomial, lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots in the open interval (lo, hi).

    Requires poly nonzero at both endpoints.
    """
    f = poly.squarefree_part()
    if f.eval(lo) == 0 or f.eval(hi) == 0:
        raise ValueError("endpoint is a root")
    if lo >= hi:
        return 0
    chain = sturm_chain(f)
    return _variations_at(chain, lo) - _variations_at(chain, hi)


def count_roots(poly: Polynomial, window: RationalInterval) -> int:
    """Number of distinct real roots in the closed window."""
    if poly.is_zero:
        raise ValueError("indeterminate roots")
    f = poly.squarefree_part()
    extra = 0
    for endpoint in {window.lo, window.hi}:
        if f.eval(endpoint) == 0:
            extra += 1
            f = f.divmod(Polynomial.of([-endpoint, 1]))[0]
    if window.lo == window.hi or f.degree < 1:
        return extra
    return extra + sturm_count_open(f, window.lo, window.hi)


def isolate_real_roots(poly: Polynomial, window: RationalInterval) -> list[RationalInterval]:
    """Disjoint intervals, each containing exactly one real root of poly
    inside the closed window, jointly covering every such root.

    Exact rational roots encountered during bisection come back as
    degenerate point intervals.
    """
    if poly.is_zero:
        raise ValueError("indeterminate roots")
    f = poly.squarefree_part()
    if f.degree < 1:
        return []
    points: list[Fraction] = []
    for endpoint in sorted({window.lo, window.hi}):
        if f.eval(endpoint) == 0:
            points.append(endpoint)
            f = f.divmod(Polynomial.of([-endpoint, 1]))[0]
    boxes: list[RationalInterval] = []
    if window.lo < window.hi and f.degree >= 1:
        chain = sturm_chain(f)
        stack = [(window.lo, window.hi,
                  _variations_at(chain, window.lo), _variations_at(chain, window.hi))]
        guard = 0
        while stack:
            lo, hi, vlo, vhi = stack.pop()
            count = vlo - vhi
            if count == 0:
                continue
            if count == 1:
                boxes.append(RationalInterval(lo, hi))
                continue
            guard += 1
            if guard > MAX_BISECTIONS * (poly.degree + 1):
                raise ArithmeticError("root isolation failed to separate")
            mid = (lo + hi) / 2
            if f.eval(mid) == 0:
                # deflate the exact root; emitted boxes never contain it, so
                # they stay valid isolators for the quotient as well
                points.append(mid)
                f = f.divmod(Polynomial.of([-mid, 1]))[0]
                chain = sturm_chain(f)
                stack = [(l, h, _variations_at(chain, l), _variations_at(chain, h))
                         for l, h, _, _ in stack] + \
                        [(lo, hi, _variations_at(chain, lo), _variations_at(chain, hi))]
                continue
            vmid = _variations_at(chain, mid)
            stack.append((lo, mid, vlo, vmid))
            stack.append((mid, hi, vmid, vhi))
    # each box holds a sign change of the final deflated f; shrink until it
    # avoids the exact roots found along the way and its neighbours
    out = [RationalInterval(p, p) for p in points]
    for box in boxes:
        cur = box
        for _ in range(MAX_BISECTIONS):
            if not any(cur.lo <= p <= cur.hi for p in points):
                break
            cur = _halve_around_root(f, cur)
        else:
            raise ArithmeticError("failed to separate isolator from exact root")
        out.append(cur)
    out.sort(key=lambda iv: (iv.lo, iv.hi))
    for i in range(len(out) - 1):
        guard = 0
        while out[i].hi >= out[i + 1].lo:
            target = out[i] if out[i].width > 0 else out[i + 1]
            shrunk = _halve_around_root(f, target)
            if target is out[i]:
                out[i] = shrunk
            else:
                out[i + 1] = shrunk
            guard += 1
            if guard > MAX_BISECTIONS:
                raise ArithmeticError("failed to separate isolators")
    return out


def _halve_around_root(f: Polynomial, iv: RationalInterval) -> RationalInterval:
    """Halve an interval carrying a sign change of f, keeping the root."""
    mid = iv.mid
    v = f.eval(mid)
    if v == 0:
        return RationalInterval(mid, mid)
    if f.eval(iv.lo) * v < 0:
        return RationalInterval(iv.lo, mid)
    return RationalInterval(mid, iv.hi)


def refine_root(poly: Polynomial, isolating: RationalInterval, width) -> RationalInterval:
    """Bisection refinement of a simple root known to lie in `isolating`.

    The result is contained in the input, has width <= `width`, and still
    contains the root.  Raises if the interval carries no sign change.
    """
    if poly.is_zero:
        raise ValueError("indeterminate roots")
    width = Fraction(width)
    lo, hi = isolating.lo, isolating.hi
    flo, fhi = poly.eval(lo), poly.eval(hi)
    if flo == 0:
        return RationalInterval(lo, lo)
    if fhi == 0:
        return RationalInterval(hi, hi)
    if (flo > 0) == (fhi > 0):
        raise ValueError("not isolating")
    while hi - lo > width:
        mid = (lo + hi) / 2
        fmid = poly.eval(mid)
        if fmid == 0:
            return RationalInterval(mid, mid)
        if (flo > 0) != (fmid > 0):
            hi, fhi = mid, fmid
        else:
            lo, flo = mid, fmid
    return RationalInterval(lo, hi)


def sign_at_root(f: Polynomial, g: Polynomial, isolator: RationalInterval) -> int:
    """Exact sign of f at the unique root of g inside `isolator`.

    g must be squarefree with exactly one root there.  Decides zero via
    gcd(f, g), otherwise refines the isolator until interval evaluation
    of f is sign-definite.
    """
    common = f.gcd(g)
    if not common.is_zero and common.degree >= 1 and count_roots(common, isolator) > 0:
        return 0
    box = isolator
    for _ in range(MAX_BISECTIONS):
        s = f.eval_interval(box).sign()
        if s is not None:
            return s
        box = refine_root(g, box, box.width / 4) if box.width else box
        if box.width == 0:
            v = f.eval(box.lo)
            return (v > 0) - (v < 0)
    raise ArithmeticError("sign refinement did not converge")
