"""Lattice-level numerical model of a polarized smooth projective
threefold: intersection tensor, polarization, second Chern pairings,
Fano index, and the lattice minimization behind the kappa constant.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Optional, Sequence

from .exactnum import Polynomial, Rational, fmt_rational
from .report import CheckReport, HOLDS, NOT_APPLICABLE, VIOLATED


class ModelError(ValueError):
    """Malformed or inconsistent threefold data."""


@dataclass(frozen=True)
class ThreefoldModel:
    """Numerical data of a polarized threefold on a chosen divisor basis.

    triple_form[i][j][k] is the triple intersection D_i.D_j.D_k, h gives
    the coordinates of the polarization H, c2_pair[i] = c2(X).D_i, and
    index r satisfies -K_X = r*H (r = 0 marks a non-Fano model, which
    disables the Fano-only operations).
    """

    name: str
    picard_rank: int
    basis_labels: tuple[str, ...]
    triple_form: tuple[tuple[tuple[int, ...], ...], ...]
    h: tuple[int, ...]
    c2_pair: tuple[int, ...]
    index: int
    effective_generators: Optional[tuple[tuple[int, ...], ...]] = None

    def __post_init__(self):
        rho = self.picard_rank
        if rho < 1:
            raise ModelError("picard_rank must be positive")
        if len(self.basis_labels) != rho or len(self.h) != rho or len(self.c2_pair) != rho:
            raise ModelError("basis data length must equal picard_rank")
        t = self.triple_form
        if len(t) != rho or any(len(r) != rho for r in t) or any(
                len(c) != rho for r in t for c in r):
            raise ModelError("triple_form must be a rho^3 tensor")
        if self.index not in (0, 1, 2, 3, 4):
            raise ModelError("index must be one of 0,1,2,3,4")
        if self.d <= 0:
            raise ModelError("H^3 must be positive")

    # -- derived pairings ------------------------------------------------

    def triple(self, u: Sequence, v: Sequence, w: Sequence) -> Fraction:
        """Triple intersection of three divisor classes in coordinates."""
        total = Fraction(0)
        t = self.triple_form
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                for k, c in enumerate(w):
                    if c:
                        total += Fraction(a) * b * c * t[i][j][k]
        return total

    @property
    def d(self) -> int:
        """Degree H^3."""
        return int(self.triple(self.h, self.h, self.h))

    @property
    def h2_pair(self) -> tuple[Fraction, ...]:
        """H^2 . D_i for each basis divisor."""
        e = _unit_rows(self.picard_rank)
        return tuple(self.triple(self.h, self.h, e[i]) for i in range(self.picard_rank))

    @property
    def qh(self) -> tuple[tuple[Fraction, ...], ...]:
        """Symmetric matrix H . D_i . D_j."""
        e = _unit_rows(self.picard_rank)
        return tuple(
            tuple(self.triple(self.h, e[i], e[j]) for j in range(self.picard_rank))
            for i in range(self.picard_rank))

    @property
    def c2h(self) -> int:
        return int(sum(Fraction(c) * a for c, a in zip(self.c2_pair, self.h)))

    @property
    def is_fano(self) -> bool:
        return self.index >= 1

    def require_fano(self, what: str) -> None:
        if not self.is_fano:
            raise ModelError(f"{what} requires Fano index")

    # -- quadratic form behind e1 -----------------------------------------

    def hodge_q(self, coords: Sequence) -> Fraction:
        """q(D) = (H^2.D)^2 - H^3 * (H.D^2); vanishes exactly on the line
        spanned by H and is invariant under D -> D + t*H."""
        h2d = sum(Fraction(a) * b for a, b in zip(self.h2_pair, coords))
        hd2 = self.triple(self.h, coords, coords)
        return h2d * h2d - self.d * hd2

    def h2_dot(self, coords: Sequence) -> Fraction:
        return sum(Fraction(a) * b for a, b in zip(self.h2_pair, coords))

    # -- serialization ------------------------------------------------------

    @staticmethod
    def from_dict(data: dict) -> "ThreefoldModel":
        try:
            gens = data.get("effective_generators")
            return ThreefoldModel(
                name=str(data["name"]),
                picard_rank=int(data["picard_rank"]),
                basis_labels=tuple(str(s) for s in data["basis_labels"]),
                triple_form=tuple(tuple(tuple(int(x) for x in row) for row in plane)
                                  for plane in data["triple_form"]),
                h=tuple(int(x) for x in data["h"]),
                c2_pair=tuple(int(x) for x in data["c2_pair"]),
                index=int(data["index"]),
                effective_generators=None if gens is None else tuple(
                    tuple(int(x) for x in g) for g in gens),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ModelError(f"bad model data: {exc}") from exc

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "picard_rank": self.picard_rank,
            "basis_labels": list(self.basis_labels),
            "triple_form": [[list(r) for r in plane] for plane in self.triple_form],
            "h": list(self.h),
            "c2_pair": list(self.c2_pair),
            "index": self.index,
        }
        if self.effective_generators is not None:
            out["effective_generators"] = [list(g) for g in self.effective_generators]
        return out


def _unit_rows(n: int) -> list[tuple[int, ...]]:
    return [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]


# -- model loading -----------------------------------------------------------

BUNDLED_MODELS = ("p3", "quadric3", "blowup_p3_point", "p2xp1")


def load_model(source: str | Path | dict) -> ThreefoldModel:
    """Load a model from a dict, a JSON file path, or a bundled name."""
    if isinstance(source, dict):
        return ThreefoldModel.from_dict(source)
    path = Path(source)
    if path.exists():
        return ThreefoldModel.from_dict(json.loads(path.read_text()))
    stem = path.name.removesuffix(".json")
    if stem in BUNDLED_MODELS:
        ref = resources.files("tiltbg").joinpath(f"data/models/{stem}.json")
        return ThreefoldModel.from_dict(json.loads(ref.read_text()))
    raise ModelError(f"model not found: {source}")


# -- Todd class ---------------------------------------------------------------

@dataclass(frozen=True)
class ToddClass:
    """Todd class of a Fano threefold of index r:
    (1, (r/2) H, (r^2 H^2 + c2)/12, 1)."""

    t0: Fraction
    t1_coeff: Fraction
    t2_h2_coeff: Fraction
    t2_c2_coeff: Fraction
    t3: Fraction


def todd(model: ThreefoldModel) -> ToddClass:
    model.require_fano("Todd")
    r = Fraction(model.index)
    return ToddClass(Fraction(1), r / 2, r * r / 12, Fraction(1, 12), Fraction(1))


# -- validation ----------------------------------------------------------------

def validate(model: ThreefoldModel) -> CheckReport:
    """Check tensor symmetry, positivity of the degree, the Hodge index
    signature of H.D_i.D_j, and the Fano pairing c2.H = 24/r."""
    report = CheckReport(claim=f"model {model.name}", verdict=HOLDS)
    rho, t = model.picard_rank, model.triple_form

    symmetric = all(
        t[i][j][k] == t[p[0]][p[1]][p[2]]
        for i in range(rho) for j in range(rho) for k in range(rho)
        for p in ((i, k, j), (j, i, k), (j, k, i), (k, i, j), (k, j, i)))
    report.add("triple form symmetry", "pass" if symmetric else "fail")

    report.add("degree positive", "pass" if model.d > 0 else "fail", d=model.d)

    pos, neg, zero = _signature(model.qh)
    sig_ok = pos == 1 and neg == rho - 1 and zero == 0
    report.add("hodge index signature", "pass" if sig_ok else "fail",
               positive=pos, negative=neg, zero=zero)

    if model.is_fano:
        expected = Fraction(24, model.index)
        got = Fraction(model.c2h)
        ok = got == expected
        report.add("fano second-chern pairing", "pass" if ok else "fail",
                   c2_dot_h=got, expected=expected)
    else:
        report.add("fano second-chern pairing", "skipped (index 0)")

    if model.effective_generators is not None:
        good = all(model.h2_dot(g) > 0 for g in model.effective_generators)
        report.add("effective generators have positive H^2-degree",
                   "pass" if good else "fail")

    if any(e.get("status") == "fail" for e in report.entries):
        report.verdict = VIOLATED
    return report


def _char_poly(matrix: Sequence[Sequence[Fraction]]) -> Polynomial:
    """Characteristic polynomial det(xI - M) by Faddeev-LeVerrier."""
    n = len(matrix)
    m = [[Fraction(v) for v in row] for row in matrix]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    aux = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        if k == 1:
            aux = [row[:] for row in m]
        else:
            shifted = [[aux[i][j] + (coeffs[n - k + 1] if i == j else 0)
                        for j in range(n)] for i in range(n)]
            aux = _mat_mul(m, shifted)
        coeffs[n - k] = -Fraction(sum(aux[i][i] for i in range(n)), k)
    return Polynomial.of(coeffs)


def _mat_mul(a, b):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)]


def _signature(matrix) -> tuple[int, int, int]:
    """(positive, negative, zero) eigenvalue counts of a symmetric matrix,
    exact via Descartes' rule on the characteristic polynomial (all roots
    real, so the sign-variation count is sharp)."""
    cp = _char_poly(matrix)
    zero = 0
    cs = list(cp.coeffs)
    while cs and cs[0] == 0:
        cs.pop(0)
        zero += 1
    pos = _descartes(cs)
    neg = _descartes([c if i % 2 == 0 else -c for i, c in enumerate(cs)])
    return pos, neg, zero


def _descartes(coeffs) -> int:
    signs = [(c > 0) - (c < 0) for c in coeffs if c != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a * b < 0)


# -- kappa minimization ----------------------------------------------------------

def e1(model: ThreefoldModel) -> int:
    """Exact minimum positive value of q(D) = (H^2.D)^2 - H^3 (H.D^2) over
    the divisor lattice.

    q is invariant under D -> D + tH, so it descends to the quotient by
    the saturation of <H>, where the Hodge index theorem makes it positive
    definite; all cosets inside the ellipsoid bounded by any nonzero value
    are enumerated.
    """
    rho = model.picard_rank
    if rho == 1:
        raise ModelError("e1 undefined at Picard rank one")
    basis = _complement_basis(model.h)
    dim = rho - 1

    def q_of(coeffs: Sequence[int]) -> Fraction:
        coords = [sum(c * basis[j][i] for j, c in enumerate(coeffs))
                  for i in range(rho)]
        return model.hodge_q(coords)

    gram = [[Fraction(0)] * dim for _ in range(dim)]
    for i in range(dim):
        for j in range(dim):
            ei = [1 if k == i else 0 for k in range(dim)]
            ej = [1 if k == j else 0 for k in range(dim)]
            gram[i][j] = (q_of([a + b for a, b in zip(ei, ej)])
                          - q_of(ei) - q_of(ej)) / 2

    bound = min(q_of([1 if k == i else 0 for k in range(dim)]) for i in range(dim))
    lam = _min_eigenvalue_lower_bound(gram)
    radius = math.isqrt(int(bound / lam)) + 1

    best: Fraction | None = None
    for point in _box_points(dim, radius):
        val = q_of(point)
        if val > 0 and (best is None or val < best):
            best = val
    assert best is not None and best.denominator == 1
    return int(best)


def _complement_basis(h: Sequence[int]) -> list[tuple[int, ...]]:
    """Integer vectors completing the primitive part of h to a unimodular
    basis; they represent the quotient lattice modulo the saturation of h."""
    g = math.gcd(*[abs(x) for x in h])
    prim = [x // g for x in h]
    cols = _unimodular_with_first_column(prim)
    return [tuple(c) for c in cols[1:]]


def _unimodular_with_first_column(v: list[int]) -> list[list[int]]:
    """Columns of a GL(rho, Z) matrix whose first column is the primitive
    vector v.  Maintains the invariant U w = v while integer column
    operations reduce the working vector w to a signed unit vector."""
    rho = len(v)
    u = [[1 if i == j else 0 for j in range(rho)] for i in range(rho)]
    w = list(v)
    while sum(1 for x in w if x) > 1:
        nz = sorted((abs(x), i) for i, x in enumerate(w) if x)
        (_, i), (_, j) = nz[0], nz[1]
        f = w[j] // w[i]
        w[j] -= f * w[i]
        for r in range(rho):
            u[r][i] += f * u[r][j]
    p = next(i for i, x in enumerate(w) if x)
    sign = w[p]
    assert abs(sign) == 1  # v primitive
    first = [sign * u[r][p] for r in range(rho)]
    assert first == list(v)
    rest = [[u[r][j] for r in range(rho)] for j in range(rho) if j != p]
    return [first] + rest


def _min_eigenvalue_lower_bound(gram) -> Fraction:
    """Exact positive lower bound for the smallest eigenvalue of a positive
    definite rational matrix: 1/trace(G^{-1})."""
    inv = _mat_inverse(gram)
    tr = sum(inv[i][i] for i in range(len(inv)))
    if tr <= 0:
        raise ModelError("descended form is not positive definite")
    return Fraction(1) / tr


def _mat_inverse(m):
    n = len(m)
    a = [[Fraction(v) for v in row] + [Fraction(1 if j == i else 0) for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ModelError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        scale = a[col][col]
        a[col] = [v / scale for v in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
    return [row[n:] for row in a]


def _box_points(dim: int, radius: int):
    if dim == 0:
        return
    coords = list(range(-radius, radius + 1))
    idx = [0] * dim
    while True:
        point = tuple(coords[i] for i in idx)
        if any(point):
            yield point
        k = 0
        while k < dim:
            idx[k] += 1
            if idx[k] < len(coords):
                break
            idx[k] = 0
            k += 1
        if k == dim:
            return


def e2(model: ThreefoldModel) -> int:
    """Minimum of (H^2.D)^2 + 1 over nonzero effective classes; H^2 pairs
    additively and positively on the effective cone, so the minimum is
    attained at one of the supplied extremal generators."""
    if model.picard_rank < 2:
        raise ModelError("e1 undefined at Picard rank one")
    if not model.effective_generators:
        raise ModelError("effective cone data required")
    degrees = [model.h2_dot(g) for g in model.effective_generators]
    if any(x <= 0 for x in degrees):
        raise ModelError("effective generator with nonpositive H^2-degree")
    m = min(degrees)
    assert m.denominator == 1
    return int(m) ** 2 + 1


def kappa(model: ThreefoldModel) -> Fraction:
    """min{e1/d^2, e2/d^2, 3/(2 r d)}, with the rank-one convention 3/(2rd)."""
    model.require_fano("kappa")
    r, d = model.index, model.d
    slope_term = Fraction(3, 2 * r * d)
    if model.picard_rank == 1:
        return slope_term
    dd = Fraction(d * d)
    return min(Fraction(e1(model)) / dd, Fraction(e2(model)) / dd, slope_term)


def kappa_report(model: ThreefoldModel) -> CheckReport:
    """kappa with its ingredients, as an auditable report."""
    report = CheckReport(claim=f"kappa({model.name})", verdict=HOLDS)
    model.require_fano("kappa")
    r, d = model.index, model.d
    report.add("degree", "info", d=d)
    report.add("index", "info", r=r)
    report.add("slope term", "info", value=Fraction(3, 2 * r * d))
    if model.picard_rank == 1:
        report.add("rank-one convention", "info", kappa=Fraction(3, 2 * r * d))
        report.note("Picard rank one: kappa = 3/(2rd) by definition")
    else:
        v1, v2 = e1(model), e2(model)
        report.add("e1", "info", value=v1)
        report.add("e2", "info", value=v2)
        if (d, v1, v2) == (54, 9, 82):
            report.note(
                "e2 follows the literal lattice definition min{(H^2.D)^2 + 1} = 82; "
                "a tabulated value of 22 for this threefold reads the minimum as a "
                "sum of generator degrees plus one. Both candidates exceed e1 = 9, "
                "so kappa = e1/d^2 is unaffected.")
    report.add("kappa", "info", value=kappa(model))
    return report
