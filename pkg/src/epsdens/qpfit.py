"""Exact quasi-polynomial fitting of length tables over offset chambers.

A period-h quasi-polynomial on an offset cone is one polynomial per residue
class (m mod h, n mod h).  Writing m = rm + h*i, n = rn + h*j turns each class
into an ordinary polynomial Q(i, j) in "cell coordinates".  We interpolate
every class on the same set of cells (cells whose whole h x h block sits in
the cone), so one exact inverse serves all h^2 classes, then validate every
lattice point of the cone up to twice the fitted depth.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import FitFailure, StructuralError, UnverifiedRegionError
from .linalg import inverse, solve
from .polys import BiPoly, Poly
from .vpf import Chamber, RestrictedCone


def _exponents(D: int) -> list[tuple[int, int]]:
    return [(a, b) for t in range(D + 1) for b in range(t + 1) for a in [t - b]]


@dataclass
class QuasiPolynomial2:
    """Residue-indexed bivariate polynomials of period h.

    ``cell_table`` holds each class in cell coordinates; ``table`` gives the
    same polynomials in (X, Y).
    """

    h: int
    D: int
    cell_table: dict[tuple[int, int], BiPoly]

    @cached_property
    def table(self) -> dict[tuple[int, int], BiPoly]:
        return {r: self.poly(*r) for r in sorted(self.cell_table)}

    def poly(self, rm: int, rn: int) -> BiPoly:
        return self.cell_table[(rm, rn)].affine_substitute(rm, rn, self.h)

    def __call__(self, m: int, n: int) -> Fraction:
        rm, rn = m % self.h, n % self.h
        return self.cell_table[(rm, rn)]((m - rm) // self.h, (n - rn) // self.h)

    def is_polynomial(self) -> bool:
        """True when every residue class carries the same (X, Y) polynomial."""
        polys = list(self.table.values())
        return all(p == polys[0] for p in polys[1:])

    def distinct_lower_parts(self) -> int:
        return len({p.lower_part(self.D) for p in self.table.values()})


@dataclass
class ChamberFit:
    chamber: Chamber
    offset_found: tuple[Fraction, Fraction]
    k: int
    qp: QuasiPolynomial2
    top: BiPoly
    density_piece: Poly
    holdout_report: int
    n_range: tuple[int, int]

    def provenance(self) -> dict:
        lam, beta = self.offset_found
        return {
            "chamber": self.chamber.interval_json(),
            "offset": [str(lam), str(beta)],
            "k": self.k,
            "period": self.qp.h,
            "fit_n_top": self.n_range[0],
            "validated_n_top": self.n_range[1],
            "validated_points": self.holdout_report,
        }


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def _floor(x: Fraction) -> int:
    return x.numerator // x.denominator


class _Region:
    """Lattice geometry of an offset cone, with an optional cap for the last chamber."""

    def __init__(self, cone: RestrictedCone, width: Fraction):
        self.cone = cone
        self.lam, self.beta = cone.offset
        self.lo = cone.chamber.lo
        self.hi = cone.chamber.hi
        self.width = width

    def m_range(self, n: int) -> Optional[tuple[int, int]]:
        t = n - self.beta
        if t < 0:
            return None
        lo = _ceil(self.lam + self.lo * t)
        if self.hi is None:
            hi = _floor(self.lam + (self.lo + self.width) * t)
        else:
            hi = _floor(self.lam + self.hi * t)
        return (lo, hi) if lo <= hi else None

    def cell_range(self, j: int, h: int, extra: int = 0) -> Optional[tuple[int, int]]:
        """Cells i whose block [hi, hi+h-1] x [hj, hj+h-1] lies in the cone."""
        t0 = h * j - self.beta
        if t0 < 0:
            return None
        i_lo = _ceil((self.lam + self.lo * (t0 + h - 1)) / h)
        if self.hi is None:
            i_hi = i_lo + extra
        else:
            i_hi = _floor((self.lam + self.hi * t0 - h + 1) / h)
        return (i_lo, i_hi) if i_lo <= i_hi else None


# residue classes fitted at once; beyond this the coefficient tables do not fit in memory
MAX_RESIDUES = 1 << 22


def _sample_cells(region: _Region, h: int, D: int, max_rows: int) -> Optional[list[tuple[int, int]]]:
    """Triangular unisolvent set: row j0 + t carries t + 1 cells."""
    counts = {}
    for j0 in range(max_rows):
        ok = True
        cells = []
        for t in range(D + 1):
            j = j0 + t
            if j not in counts:
                counts[j] = region.cell_range(j, h, extra=D)
            rng = counts[j]
            if rng is None or rng[1] - rng[0] < t:
                ok = False
                break
            # spread the cells across the row
            lo, hi = rng
            if t == 0:
                picks = [(lo + hi) // 2]
            else:
                picks = sorted({lo + (hi - lo) * s // t for s in range(t + 1)})
            cells.extend((i, j) for i in picks)
        if ok:
            return cells
    return None


def _monomial_matrix(points: Sequence[tuple[int, int]], exps) -> list[list[int]]:
    return [[i**a * j**b for a, b in exps] for i, j in points]


def fit_chamber(
    oracle,
    chamber: Chamber,
    h: int,
    D: int,
    offsets: Optional[Iterable[int]] = None,
    *,
    d: Optional[int] = None,
    width: Fraction = Fraction(2),
    validate_box: Optional[tuple[int, int]] = None,
    validation: str = "full",
    common_top: bool = True,
    max_rows: int = 400,
) -> ChamberFit:
    """Fit a period-h quasi-polynomial of degree <= D on an offset chamber.

    ``offsets`` is the schedule of k values; the offset tried is
    k * (midpoint slope, 1) and the first validating k wins.  ``d`` is the
    dimension used for the density normalization (default D + 1).

    With ``validation="full"`` every cone point with n up to twice the fitted
    depth is checked (for the last chamber, slopes up to lo + width).  With
    ``"cells"`` only whole holdout cells (every residue class at once) in
    that depth range are checked; this keeps large periods affordable.
    ``validate_box`` adds every cone point of [0, M] x [0, N].

    ``common_top`` asserts that the degree-D part is the same for every
    residue class, which holds for length functions of graded families but
    not for arbitrary partition functions.
    """
    if D < 0:
        raise ValueError("degree bound must be nonnegative")
    if validation not in ("full", "cells"):
        raise ValueError(f"unknown validation mode {validation!r}")
    if h * h > MAX_RESIDUES:
        raise FitFailure(
            f"period {h} on chamber {chamber.interval_json()} is too large for exact fitting",
            {"chamber": chamber.interval_json(), "period": h, "max_residues": MAX_RESIDUES},
        )
    d = D + 1 if d is None else d
    ks = list(range(0, 9) if offsets is None else offsets)
    exps = _exponents(D)
    K = len(exps)
    n_limit = getattr(oracle, "n_limit", None)
    mid = chamber.midpoint_slope()
    last_failure: dict = {}
    window_blocked = 0
    for k in ks:
        cone = RestrictedCone(chamber, (k * mid, Fraction(k)))
        region = _Region(cone, Fraction(width))
        cells = _sample_cells(region, h, D, max_rows)
        if cells is None:
            last_failure = {"k": k, "reason": "no unisolvent cell set"}
            continue
        j_top = max(j for _, j in cells)
        n_fit_top = h * (j_top + 1) - 1
        n_val = 2 * (n_fit_top + 1) - 1
        if n_limit is not None:
            n_val = min(n_val, n_limit)
        if n_val < n_fit_top:
            last_failure = {"k": k, "reason": "fit rows exceed the verified window", "n_limit": n_limit}
            window_blocked += 1
            continue
        ms, ns = _validation_points(region, cells, h, D, n_val, validation, validate_box, n_limit)
        if len(ms) == 0:
            last_failure = {"k": k, "reason": "no validation points"}
            continue
        m_need = int(max(ms.max(), max(h * i + h - 1 for i, _ in cells)))
        n_need = int(max(ns.max(), n_fit_top))
        try:
            table = oracle.grid(m_need, n_need)
        except UnverifiedRegionError as exc:
            last_failure = {"k": k, "reason": str(exc)}
            window_blocked += 1
            continue
        # interpolate every residue on the shared cells with one integer inverse
        inv = inverse(_monomial_matrix(cells, exps))
        L = math.lcm(*(x.denominator for row in inv for x in row))
        inv_int = np.array([[int(x * L) for x in row] for row in inv], dtype=object)
        ra, rb = np.divmod(np.arange(h * h), h)
        vals = np.array([table[ra + h * i, rb + h * j] for (i, j) in cells]).astype(object)
        C = inv_int.dot(vals)
        bad = _check(ms, ns, table, C, L, h, exps)
        if bad:
            last_failure = {
                "k": k,
                "reason": "validation mismatch",
                "mismatches": len(bad),
                "residuals": [{"m": m, "n": n, "oracle": o, "fit": str(f)} for m, n, o, f in bad[:12]],
            }
            continue
        # validation points that are not interpolation nodes
        node = np.zeros(len(ms), dtype=bool)
        for i, j in cells:
            node |= (ms // h == i) & (ns // h == j)
        holdout = int((~node).sum())
        if holdout < K:
            last_failure = {"k": k, "reason": "holdout too small", "holdout": holdout}
            continue
        cell_table = {
            (int(ra[r]), int(rb[r])): BiPoly({exps[k2]: Fraction(C[k2, r], L) for k2 in range(K)})
            for r in range(h * h)
        }
        qp = QuasiPolynomial2(h, D, cell_table)
        if common_top:
            top = _common_top(qp, chamber)
            piece = top.dehomogenize() * math.factorial(d)
        else:
            top, piece = None, None
        return ChamberFit(chamber, cone.offset, k, qp, top, piece, holdout, (n_fit_top, n_val))
    if ks and window_blocked == len(ks):
        raise UnverifiedRegionError(
            f"every offset on chamber {chamber.interval_json()} needs lengths beyond the verified window", n_limit
        )
    raise FitFailure(
        f"no offset in the schedule validates on chamber {chamber.interval_json()}",
        {"chamber": chamber.interval_json(), "period": h, "degree": D, "last_attempt": last_failure},
    )


def _validation_points(region, cells, h, D, n_val, mode, box, n_limit):
    pts = set()
    if mode == "full":
        for n in range(n_val + 1):
            rng = region.m_range(n)
            if rng is not None:
                pts.update((m, n) for m in range(rng[0], rng[1] + 1))
    else:
        j_top = max(j for _, j in cells)
        K = (D + 1) * (D + 2) // 2
        rows = list(range(j_top + 1, (n_val + 1) // h))
        hold = []
        for j in rows:
            rng = region.cell_range(j, h, extra=2 * D + 2)
            if rng is None:
                continue
            lo, hi = rng
            hold.extend((i, j) for i in sorted({lo, (lo + hi) // 2, hi}))
        if len(hold) < K:
            # too few rows beyond the fit: fall back to every cone point
            return _validation_points(region, cells, h, D, n_val, "full", box, n_limit)
        for i, j in hold + list(cells):
            pts.update((h * i + a, h * j + b) for a in range(h) for b in range(h))
    if box is not None:
        Mb, Nb = box
        for n in range((Nb if n_limit is None else min(Nb, n_limit)) + 1):
            rng = region.m_range(n)
            if rng is None:
                continue
            top = Mb if region.hi is None else min(Mb, rng[1])
            pts.update((m, n) for m in range(rng[0], top + 1))
    pts = sorted(pts, key=lambda p: (p[1], p[0]))
    ms = np.array([p[0] for p in pts], dtype=np.int64)
    ns = np.array([p[1] for p in pts], dtype=np.int64)
    return ms, ns


def _check(ms, ns, table, C, L, h, exps):
    """Exact comparison of the fitted values with the table at (ms, ns)."""
    ridx = (ms % h) * h + (ns % h)
    I = (ms // h).astype(object)
    J = (ns // h).astype(object)
    got = np.zeros(len(ms), dtype=object)
    for k, (a, b) in enumerate(exps):
        got = got + C[k, ridx] * (I**a * J**b)
    want = table[ms, ns].astype(object) * L
    bad_idx = np.nonzero(got != want)[0]
    return [(int(ms[t]), int(ns[t]), int(table[ms[t], ns[t]]), Fraction(got[t], L)) for t in bad_idx]


def _common_top(qp: QuasiPolynomial2, chamber: Chamber) -> BiPoly:
    """Degree-D part, shared by every residue class or a structural error."""
    h, D = qp.h, qp.D
    tops = {res: p.homogeneous_part(D).scale(Fraction(1, h**D)) for res, p in qp.cell_table.items()}
    first = next(iter(tops.values()))
    diff = [res for res, t in tops.items() if t != first]
    if diff:
        raise StructuralError(
            f"top homogeneous part depends on the residue class on chamber {chamber.interval_json()}",
            {"residues": [list(r) for r in diff[:8]]},
        )
    return first


# -- diagonal fits ----------------------------------------------------------


@dataclass
class DiagonalFit:
    p: int
    q: int
    D: int
    period: int
    start: int
    leading: Fraction
    value: Fraction  # leading coefficient times D!
    polys: dict[int, Poly] = field(default_factory=dict)


def _fit_sequence(ns: list[int], vals: list[int], D: int) -> Optional[Poly]:
    """Interpolate on the first D+1 points, validate on the rest."""
    if len(ns) < D + 1:
        return None
    base = ns[: D + 1]
    coeffs = solve([[x**a for a in range(D + 1)] for x in base], vals[: D + 1])
    p = Poly(coeffs)
    if all(p(x) == y for x, y in zip(ns[D + 1 :], vals[D + 1 :])):
        return p
    return None


def diagonal_fit(oracle, p: int, q: int, D: int, *, n_max: Optional[int] = None, period_max: int = 12) -> DiagonalFit:
    """Fit n -> oracle(p n, q n) as a quasi-polynomial of degree <= D.

    Tries periods 1..period_max and, for each, the smallest start index that
    leaves at least D + 1 validation points per residue class.
    """
    if math.gcd(p, q) != 1:
        raise ValueError("(p, q) must be gcd-normalized")
    n_limit = getattr(oracle, "n_limit", None)
    N = n_max if n_max is not None else 60
    if n_limit is not None:
        N = min(N, n_limit // q)
    table = oracle.grid(p * N, q * N)
    seq = [int(table[p * n, q * n]) for n in range(N + 1)]
    for P in range(1, period_max + 1):
        for n0 in range(0, N // 2 + 1):
            polys = {}
            for r in range(P):
                ns = [n for n in range(n0, N + 1) if n % P == r]
                if len(ns) < 2 * (D + 1):
                    polys = None
                    break
                fit = _fit_sequence(ns, [seq[n] for n in ns], D)
                if fit is None:
                    polys = None
                    break
                polys[r] = fit
            if polys is None:
                continue
            leads = {polys[r].coeff(D) for r in polys}
            if len(leads) != 1:
                continue
            lead = leads.pop()
            return DiagonalFit(p, q, D, P, n0, lead, lead * math.factorial(D), polys)
    raise FitFailure(
        f"diagonal ({p}, {q}) did not fit a quasi-polynomial of degree {D}",
        {"p": p, "q": q, "degree": D, "terms": len(seq), "tail": [str(x) for x in seq[-6:]]},
    )
