"""Density functions of ordinary and saturated power filtrations.

Pieces come from per-chamber quasi-polynomial fits of the length table;
values at breakpoints come from separate diagonal fits, so continuity is
checked rather than assumed.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np
from mpmath import iv, mpf

from . import staircase as st
from .config import FitConfig
from .core import MonomialIdeal, RingDescriptor, minimalize
from .errors import FitFailure, InputError, StructuralError
from .hilbert import oracle_for, ring_multiplicity
from .ideals import (
    ORDINARY,
    SATURATED,
    FiltrationSpec,
    box_for,
    detect_saturation_stabilization,
    integral_closure,
    ordinary_spec,
    saturated_power_stairs,
)
from .polys import Poly, format_fraction
from .qpfit import ChamberFit, diagonal_fit, fit_chamber
from .surd import QuadraticSurd
from .vpf import VPMatrix, chambers, period

BreakpointValue = Union[Fraction, QuadraticSurd]


def as_breakpoint(x) -> BreakpointValue:
    if isinstance(x, QuadraticSurd):
        return x.to_fraction() if x.is_rational else x
    return Fraction(x)


def breakpoint_json(x) -> dict:
    x = as_breakpoint(x)
    if isinstance(x, QuadraticSurd):
        return {"type": "surd", **x.to_json()}
    return {"type": "rat", "value": format_fraction(x)}


def value_json(x):
    x = as_breakpoint(x)
    return breakpoint_json(x) if isinstance(x, QuadraticSurd) else format_fraction(x)


class PiecewisePolynomial:
    """Pieces on [0, b_0), (b_0, b_1), ..., (b_last, inf) plus point values."""

    def __init__(self, breakpoints, pieces, point_values, d: int, provenance: Optional[dict] = None):
        self.breakpoints = [as_breakpoint(b) for b in breakpoints]
        self.pieces = [p if isinstance(p, Poly) else Poly(p) for p in pieces]
        self.point_values = [as_breakpoint(v) for v in point_values]
        self.d = d
        self.provenance = provenance or {}
        if len(self.pieces) != len(self.breakpoints) + 1:
            raise ValueError("need one more piece than breakpoints")
        if len(self.point_values) != len(self.breakpoints):
            raise ValueError("need one point value per breakpoint")
        if any(a >= b for a, b in zip(self.breakpoints, self.breakpoints[1:])):
            raise ValueError("breakpoints must increase strictly")

    def interval(self, k: int) -> tuple:
        lo = Fraction(0) if k == 0 else self.breakpoints[k - 1]
        hi = self.breakpoints[k] if k < len(self.breakpoints) else None
        return lo, hi

    def piece_index(self, x) -> int:
        """Index of the piece whose open interval contains x (x not a breakpoint)."""
        for k, b in enumerate(self.breakpoints):
            if x < b:
                return k
        return len(self.breakpoints)

    def __call__(self, x):
        for k, b in enumerate(self.breakpoints):
            if x == b:
                return self.point_values[k]
            if x < b:
                return self.pieces[k](x)
        return self.pieces[-1](x)

    def one_sided(self, k: int) -> tuple:
        b = self.breakpoints[k]
        return self.pieces[k](b), self.pieces[k + 1](b)

    def continuity(self) -> list[dict]:
        out = []
        for k, b in enumerate(self.breakpoints):
            left, right = self.one_sided(k)
            pv = self.point_values[k]
            out.append(
                {
                    "at": b,
                    "left": left,
                    "value": pv,
                    "right": right,
                    "continuous": left == pv == right,
                }
            )
        return out

    def derivative_jumps(self) -> list[tuple]:
        """(breakpoint, left derivative, right derivative) for each breakpoint."""
        out = []
        for k, b in enumerate(self.breakpoints):
            out.append((b, self.pieces[k].derivative()(b), self.pieces[k + 1].derivative()(b)))
        return out

    def integrate(self, a, b):
        """Exact integral over [a, b]; b may be a surd."""
        total = Fraction(0)
        edges = [Fraction(0)] + list(self.breakpoints)
        for k, p in enumerate(self.pieces):
            lo = edges[k]
            hi = self.breakpoints[k] if k < len(self.breakpoints) else None
            s = lo if lo > a else a
            e = b if hi is None or hi > b else hi
            if s < e:
                total = total + p.integrate(s, e)
        return total

    def __sub__(self, other: "PiecewisePolynomial") -> "PiecewisePolynomial":
        bps = sorted(set(self.breakpoints) | set(other.breakpoints))
        pieces = []
        for k in range(len(bps) + 1):
            x = _interior_point(bps, k)
            pieces.append(self.pieces[self.piece_index(x)] - other.pieces[other.piece_index(x)])
        pvs = [self(b) - other(b) for b in bps]
        return PiecewisePolynomial(bps, pieces, pvs, self.d)

    def differing_intervals(self, other: "PiecewisePolynomial") -> list:
        """Open intervals of the common refinement where the pieces differ."""
        bps = sorted(set(self.breakpoints) | set(other.breakpoints))
        bad = []
        for k in range(len(bps) + 1):
            x = _interior_point(bps, k)
            if self.pieces[self.piece_index(x)] != other.pieces[other.piece_index(x)]:
                lo = Fraction(0) if k == 0 else bps[k - 1]
                bad.append((lo, bps[k] if k < len(bps) else None))
        return bad

    def samples(self, step: Fraction, to: Fraction) -> list[tuple[Fraction, BreakpointValue]]:
        out = []
        x = Fraction(0)
        while x <= to:
            out.append((x, self(x)))
            x += step
        return out

    def to_json(self) -> dict:
        pieces = []
        for k, p in enumerate(self.pieces):
            lo, hi = self.interval(k)
            pieces.append(
                {
                    "interval": [value_json(lo), None if hi is None else value_json(hi)],
                    "coeffs": p.to_strings(),
                }
            )
        return {
            "breakpoints": [breakpoint_json(b) for b in self.breakpoints],
            "pieces": pieces,
            "point_values": [value_json(v) for v in self.point_values],
            "normalization": {"d": self.d, "scale": math.factorial(self.d)},
        }

    def __repr__(self):
        parts = []
        for k, p in enumerate(self.pieces):
            lo, hi = self.interval(k)
            parts.append(f"{p} on [{lo}, {'inf' if hi is None else hi}]")
        return "PiecewisePolynomial(" + "; ".join(parts) + ")"


def _interior_point(bps: Sequence, k: int) -> Fraction:
    """A rational strictly inside the k-th open interval of the refinement."""
    if not bps:
        return Fraction(1)
    if k == 0:
        return _rational_between(Fraction(0), bps[0]) if bps[0] > 0 else Fraction(-1)
    if k == len(bps):
        return _rational_above(bps[-1])
    return _rational_between(bps[k - 1], bps[k])


def _rational_above(b) -> Fraction:
    return Fraction(math.floor(float(b)) + 1)


def _rational_between(a, b) -> Fraction:
    if not isinstance(a, QuadraticSurd) and not isinstance(b, QuadraticSurd):
        return (Fraction(a) + Fraction(b)) / 2
    den = 2
    while True:
        lo = math.floor(float(a) * den)
        for num in (lo, lo + 1, lo + 2):
            x = Fraction(num, den)
            if a < x < b:
                return x
        den *= 2


# -- assembly ---------------------------------------------------------------


@dataclass
class DensityRun:
    """A density plus the fits it was assembled from."""

    density: PiecewisePolynomial
    fits: list[ChamberFit]
    matrix: VPMatrix
    h: int
    d: int
    spec: FiltrationSpec
    diagonal: list[dict] = field(default_factory=list)


def _fit_all(oracle, matrix: VPMatrix, D: int, d: int, cfg: FitConfig) -> tuple[int, list[ChamberFit]]:
    h = period(matrix)
    chs = chambers(matrix)

    def one(ch):
        return fit_chamber(oracle, ch, h, D, cfg.offsets(), d=d, width=cfg.width)

    if cfg.threads > 1 and len(chs) > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            fits = list(pool.map(one, chs))
    else:
        fits = [one(ch) for ch in chs]
    return h, fits


def _point_values(oracle, slopes: Sequence[Fraction], D: int, d: int, cfg: FitConfig):
    pvs, diag = [], []
    for s in slopes:
        p, q = s.numerator, s.denominator
        fit = diagonal_fit(oracle, p, q, D, n_max=cfg.diag_terms)
        e = fit.value
        pvs.append(d * e / Fraction(q) ** (d - 1))
        diag.append({"p": p, "q": q, "e": format_fraction(e), "period": fit.period, "start": fit.start})
    return pvs, diag


def _degree(ring: RingDescriptor, cfg: FitConfig) -> tuple[int, int]:
    d = ring.krull_dim
    if d < 1:
        raise InputError("the ring has dimension 0: densities are not defined")
    return d, (cfg.degree if cfg.degree is not None else d - 1)


def _check_ideal(ring: RingDescriptor, I: MonomialIdeal) -> MonomialIdeal:
    if I.ring.var_count != ring.var_count:
        raise InputError("ideal and ring have different variable counts")
    if I.is_zero:
        raise InputError("the zero ideal has no density")
    if I.is_unit:
        raise InputError("the unit ideal has no density")
    if ring.quotient is not None:
        kept = [g for g in I.generators if g not in ring.quotient]
        if not kept:
            raise InputError("the ideal vanishes in the quotient ring")
        I = minimalize(kept, ring)
    elif I.ring != ring:
        I = minimalize(I.generators, ring)
    return I


def ordinary_run(ring: RingDescriptor, I: MonomialIdeal, cfg: Optional[FitConfig] = None) -> DensityRun:
    cfg = cfg or FitConfig()
    I = _check_ideal(ring, I)
    d, D = _degree(ring, cfg)
    spec = ordinary_spec(I)
    oracle = oracle_for(spec)
    matrix = VPMatrix(ring.var_count, tuple((g.degree, 1) for g in I.generators))
    h, fits = _fit_all(oracle, matrix, D, d, cfg)
    slopes = [s for s, _ in matrix.slope_classes]
    pvs, diag = _point_values(oracle, slopes, D, d, cfg)
    pieces = [Poly()] + [f.density_piece for f in fits]
    f = PiecewisePolynomial(slopes, pieces, pvs, d)
    cont = f.continuity()
    if ring.is_polynomial:
        for c in cont[1:]:
            if not c["continuous"]:
                raise StructuralError(f"ordinary density of a domain jumps at {c['at']}")
    f.provenance = {
        "filtration": ORDINARY,
        "period": h,
        "fits": [fit.provenance() for fit in fits],
        "diagonal": diag,
        "continuity": [{"at": value_json(c["at"]), "continuous": c["continuous"]} for c in cont],
    }
    return DensityRun(f, fits, matrix, h, d, spec, diag)


def ordinary_density(ring: RingDescriptor, I: MonomialIdeal, cfg: Optional[FitConfig] = None) -> PiecewisePolynomial:
    return ordinary_run(ring, I, cfg).density


def harvest_saturated_bidegrees(I: MonomialIdeal, upto: int) -> list[tuple[int, int]]:
    """Bidegrees (deg, n) of algebra generators of the saturated Rees algebra, n <= upto.

    A minimal generator of sat(I^n) is new when it is not in any product
    sat(I^a) sat(I^(n-a)).
    """
    v = I.var_count
    M = box_for(I, upto)
    S = saturated_power_stairs(I, upto, M)
    out = []
    for n in range(1, upto + 1):
        prod = st.zero(v, M)
        for a in range(1, n // 2 + 1):
            prod = st.add(prod, st.product(S[a], S[n - a]))
        for g in st.corners(S[n]):
            head = tuple(int(x) for x in g[:-1])
            if v == 1:
                inside = int(g[-1]) >= int(prod.f)
            else:
                inside = int(g[-1]) >= int(prod.f[head])
            if not inside:
                out.append((int(g.sum()), n))
    return out


def saturated_run(ring: RingDescriptor, I: MonomialIdeal, cfg: Optional[FitConfig] = None) -> DensityRun:
    cfg = cfg or FitConfig()
    if not ring.is_polynomial:
        raise InputError("saturated densities are implemented for polynomial rings only")
    I = _check_ideal(ring, I)
    d, D = _degree(ring, cfg)
    spec = detect_saturation_stabilization(I, cfg.n_max, cfg.direct_n_max)
    stab = spec.stabilization
    upto = min(stab.c * cfg.k_max if stab is not None else spec.window, spec.window)
    oracle = oracle_for(spec)
    bidegrees = harvest_saturated_bidegrees(I, upto)
    matrix = VPMatrix(ring.var_count, tuple(bidegrees))
    rescanned = False
    try:
        h, fits = _fit_all(oracle, matrix, D, d, cfg)
    except FitFailure:
        if upto >= spec.window:
            raise
        # generators of higher n may carry breakpoints the short harvest missed
        upto, rescanned = spec.window, True
        bidegrees = harvest_saturated_bidegrees(I, upto)
        matrix = VPMatrix(ring.var_count, tuple(bidegrees))
        h, fits = _fit_all(oracle, matrix, D, d, cfg)
    slopes = [s for s, _ in matrix.slope_classes]
    pvs, diag = _point_values(oracle, slopes, D, d, cfg)
    pieces = [Poly()] + [f.density_piece for f in fits]
    f = PiecewisePolynomial(slopes, pieces, pvs, d)
    cont = f.continuity()
    bad = [c["at"] for c in cont if not c["continuous"]]
    if bad:
        raise StructuralError(f"saturated density is discontinuous at {bad}")
    alpha = slopes[0]
    c1 = [
        {"at": value_json(b), "left": format_fraction(l), "right": format_fraction(r), "smooth": l == r}
        for b, l, r in f.derivative_jumps()
        if b > alpha
    ]
    if not all(c["smooth"] for c in c1):
        raise StructuralError("saturated density is not C1 beyond alpha", {"derivatives": c1})
    f.provenance = {
        "filtration": SATURATED,
        "stabilization": None if stab is None else {"c": stab.c, "verified_up_to": stab.verified_up_to},
        "verified": stab is not None,
        "window": spec.window,
        "direct_limit": spec.direct_limit,
        "generator_bidegrees": sorted(set(bidegrees)),
        "harvested_up_to": upto,
        "rescanned": rescanned,
        "period": h,
        "fits": [fit.provenance() for fit in fits],
        "diagonal": diag,
        "c1_checks": c1,
    }
    return DensityRun(f, fits, matrix, h, d, spec, diag)


def saturated_density(ring: RingDescriptor, I: MonomialIdeal, cfg: Optional[FitConfig] = None) -> PiecewisePolynomial:
    return saturated_run(ring, I, cfg).density


# -- epsilon ----------------------------------------------------------------


def _sample_grid(upto: Fraction, step: Fraction = Fraction(1, 20)) -> list[Fraction]:
    out, x = [], Fraction(0)
    while x <= upto:
        out.append(x)
        x += step
    return out


def epsilon_from(f_sat: PiecewisePolynomial, f_ord: PiecewisePolynomial) -> tuple[PiecewisePolynomial, Fraction]:
    """f_eps = f_sat - f_ord with its structural checks, and its integral."""
    f_eps = f_sat - f_ord
    d_l = f_ord.breakpoints[-1]
    alpha = f_sat.breakpoints[0] if f_sat.breakpoints else Fraction(0)
    if not f_eps.pieces[-1].is_zero():
        raise StructuralError("saturated and ordinary tails differ", {"tail": f_eps.pieces[-1].to_strings()})
    for k, p in enumerate(f_eps.pieces):
        lo, hi = f_eps.interval(k)
        if (hi is not None and hi <= alpha) or lo >= d_l:
            if not p.is_zero():
                raise StructuralError(f"epsilon density is nonzero on [{lo}, {hi}]")
    grid = _sample_grid(d_l + 1) + list(f_eps.breakpoints)
    neg = [x for x in grid if f_eps(x) < 0]
    if neg:
        raise StructuralError("epsilon density takes negative values", {"at": [str(x) for x in neg[:10]]})
    eps = f_eps.integrate(Fraction(0), d_l)
    f_eps.provenance = {"support": [value_json(alpha), value_json(d_l)]}
    return f_eps, eps


def epsilon_density(ring: RingDescriptor, I: MonomialIdeal, cfg: Optional[FitConfig] = None) -> PiecewisePolynomial:
    f_sat = saturated_density(ring, I, cfg)
    f_ord = ordinary_density(ring, I, cfg)
    return epsilon_from(f_sat, f_ord)[0]


def epsilon_value(ring: RingDescriptor, I: MonomialIdeal, cfg: Optional[FitConfig] = None) -> Fraction:
    f_sat = saturated_density(ring, I, cfg)
    f_ord = ordinary_density(ring, I, cfg)
    return epsilon_from(f_sat, f_ord)[1]


def epsilon_sequence(I: MonomialIdeal, ns: Sequence[int]) -> list[Fraction]:
    """l(sat(I^n) / I^n) * d! / n^d, computed directly for each n."""
    v = I.var_count
    d = I.ring.krull_dim
    out = []
    gens = I.exponent_array()
    for n in ns:
        M = box_for(I, n)
        cur = st.unit(v, M)
        for _ in range(n):
            cur = st.times_exponents(cur, gens)
        sat = st.saturate_maximal(cur)
        out.append(Fraction(st.colength_difference(cur, sat) * math.factorial(d), n**d))
    return out


# -- alpha and beta -----------------------------------------------------------


@dataclass
class BetaEstimate:
    value: Fraction
    exact: bool
    window: int
    start: int

    def to_json(self) -> dict:
        return {
            "value": format_fraction(self.value),
            "exact": self.exact,
            "window": self.window,
            "start": self.start,
        }


def _saturated_stairs(ring: RingDescriptor, I: MonomialIdeal, cfg: FitConfig):
    if not ring.is_polynomial:
        raise InputError("saturation invariants are implemented for polynomial rings only")
    I = _check_ideal(ring, I)
    spec = detect_saturation_stabilization(I, cfg.n_max, cfg.direct_n_max)
    return spec, saturated_power_stairs(I, spec.window)


def alpha_invariant(ring: RingDescriptor, I: MonomialIdeal, cfg: Optional[FitConfig] = None) -> Fraction:
    """mindeg(sat(I^c)) / c, cross-checked against min_n mindeg(sat(I^n)) / n."""
    cfg = cfg or FitConfig()
    spec, S = _saturated_stairs(ring, I, cfg)
    ratios = [Fraction(st.min_degree(S[n]), n) for n in range(1, len(S))]
    best = min(ratios)
    if spec.stabilization is None:
        return best
    c = spec.stabilization.c
    alpha = Fraction(st.min_degree(S[c]), c)
    if alpha != best:
        raise StructuralError(f"alpha from stabilization ({alpha}) disagrees with the window minimum ({best})")
    return alpha


def beta_invariant(ring: RingDescriptor, I: MonomialIdeal, cfg: Optional[FitConfig] = None) -> BetaEstimate:
    """Limit slope of maxdeg(sat(I^n)).

    With period c (the stabilization constant), the increments
    maxdeg(n + c) - maxdeg(n) are eventually constant.  The estimate is
    flagged exact when the constant run starts in the first half of the
    window, so the tail validating it is at least as deep as the fit.
    """
    cfg = cfg or FitConfig()
    spec, S = _saturated_stairs(ring, I, cfg)
    W = len(S) - 1
    c = spec.stabilization.c if spec.stabilization is not None else 1
    md = [None] + [st.max_generator_degree(S[n]) for n in range(1, W + 1)]
    for n0 in range(1, W - c + 1):
        incs = {md[n + c] - md[n] for n in range(n0, W - c + 1)}
        if len(incs) == 1:
            delta = incs.pop()
            return BetaEstimate(Fraction(delta, c), 2 * (n0 + c) <= W, W, n0)
    return BetaEstimate(Fraction(md[W], W), False, W, W)


# -- multiplicities -----------------------------------------------------------


def diagonal_multiplicity(
    ring: RingDescriptor, I: MonomialIdeal, p: int, q: int, cfg: Optional[FitConfig] = None, run: Optional[DensityRun] = None
) -> Fraction:
    """e(R_Delta(p, q)), the multiplicity of the algebra of (I^{qn})_{pn}."""
    if p < 1 or q < 1:
        raise InputError("p and q must be positive")
    cfg = cfg or FitConfig()
    run = run or ordinary_run(ring, I, cfg)
    f, d = run.density, run.d
    x = Fraction(p, q)
    if x < f.breakpoints[0]:
        return Fraction(0)
    if x in f.breakpoints:
        g = math.gcd(p, q)
        fit = diagonal_fit(oracle_for(run.spec), p // g, q // g, d - 1, n_max=cfg.diag_terms)
        return fit.value * Fraction(g) ** (d - 1)
    return Fraction(q) ** (d - 1) * f(x) / d


def mixed_multiplicities(
    ring: RingDescriptor, I: MonomialIdeal, cfg: Optional[FitConfig] = None, last_piece: Optional[Poly] = None
) -> tuple[list[int], list[int]]:
    """(e_0..e_{d-1} of the Rees algebra, intersection numbers (H^{d-1-i} E^i)).

    Solves p_l(x) = sum_i (-1)^i d!/((d-1-i)! i!) (H^{d-1-i} E^i) x^{d-1-i}
    for the intersection numbers, which must be integers.
    """
    d = ring.krull_dim
    if last_piece is None:
        last_piece = ordinary_density(ring, I, cfg).pieces[-1]
    inter = []
    for i in range(d):
        a = last_piece.coeff(d - 1 - i)
        val = a * (-1) ** i * math.factorial(d - 1 - i) * math.factorial(i) / math.factorial(d)
        if val.denominator != 1:
            raise StructuralError(f"intersection number (H^{d - 1 - i} E^{i}) = {val} is not an integer")
        inter.append(int(val))
    # e_i = (-1)^(d-1-i) (H^i E^(d-1-i)) and (H^i E^(d-1-i)) = inter[d-1-i]
    e = [(-1) ** (d - 1 - i) * inter[d - 1 - i] for i in range(d)]
    return e, inter


# -- checks -------------------------------------------------------------------


@dataclass
class ClosureReport:
    ideal: str
    closure: str
    ordinary_equal: bool
    saturated_equal: bool
    ordinary_differences: list
    saturated_differences: list

    @property
    def ok(self) -> bool:
        return self.ordinary_equal and self.saturated_equal

    def to_json(self) -> dict:
        fmt = lambda ivs: [[value_json(a), None if b is None else value_json(b)] for a, b in ivs]
        return {
            "ideal": self.ideal,
            "closure": self.closure,
            "ordinary_equal": self.ordinary_equal,
            "saturated_equal": self.saturated_equal,
            "ordinary_differences": fmt(self.ordinary_differences),
            "saturated_differences": fmt(self.saturated_differences),
        }


def closure_invariance_check(ring: RingDescriptor, I: MonomialIdeal, cfg: Optional[FitConfig] = None) -> ClosureReport:
    """Compare both densities of I and of its integral closure on shared open intervals."""
    if not ring.is_polynomial:
        raise InputError("the closure check needs a polynomial ring")
    J = integral_closure(I)
    fo_I, fo_J = ordinary_density(ring, I, cfg), ordinary_density(ring, J, cfg)
    fs_I, fs_J = saturated_density(ring, I, cfg), saturated_density(ring, J, cfg)
    od = fo_I.differing_intervals(fo_J)
    sd = fs_I.differing_intervals(fs_J)
    return ClosureReport(str(I), str(J), not od, not sd, od, sd)


def log_concavity_violations(f: PiecewisePolynomial, alpha, d: int, e0: int, points: Sequence[Fraction]) -> list:
    """Pairs x < y in (alpha, ...) with f(y)^(1/(d-1)) < f(x)^(1/(d-1)) + (y-x)(d e0)^(1/(d-1)).

    d = 2 and d = 3 are decided exactly; larger d uses interval arithmetic and
    only reports definite violations.
    """
    pts = sorted(x for x in points if x > alpha)
    bad = []
    for a in range(len(pts)):
        for b in range(a + 1, len(pts)):
            x, y = pts[a], pts[b]
            B, A = Fraction(f(x)), Fraction(f(y))
            if d == 2:
                ok = A >= B + (y - x) * 2 * e0
            elif d == 3:
                C = (y - x) ** 2 * 3 * e0
                rest = A - B - C
                ok = rest >= 0 and rest * rest >= 4 * B * C
            else:
                k = d - 1
                lhs = iv.mpf([A.numerator, A.numerator]) / A.denominator
                rhs_x = iv.mpf([B.numerator, B.numerator]) / B.denominator
                t = iv.mpf([(y - x).numerator, (y - x).numerator]) / (y - x).denominator
                diff = lhs ** (iv.mpf(1) / k) - rhs_x ** (iv.mpf(1) / k) - t * iv.mpf(d * e0) ** (iv.mpf(1) / k)
                ok = not (diff.b < 0)
            if not ok:
                bad.append((x, y))
    return bad


def strictly_increasing_on(f: PiecewisePolynomial, points: Sequence[Fraction]) -> bool:
    vals = [f(x) for x in sorted(points)]
    return all(a < b for a, b in zip(vals, vals[1:]))


# -- reports ------------------------------------------------------------------


@dataclass
class DensityReport:
    f_ordinary: PiecewisePolynomial
    f_saturated: PiecewisePolynomial
    f_epsilon: PiecewisePolynomial
    alpha: Fraction
    beta: BetaEstimate
    epsilon: Fraction
    diagonal: list
    mixed_multiplicities: list[int]
    intersection_numbers: list[int]
    provenance: dict

    def to_json(self) -> dict:
        return {
            "f_ordinary": self.f_ordinary.to_json(),
            "f_saturated": self.f_saturated.to_json(),
            "f_epsilon": self.f_epsilon.to_json(),
            "alpha": value_json(self.alpha),
            "beta": self.beta.to_json(),
            "epsilon": format_fraction(self.epsilon),
            "diagonal": self.diagonal,
            "mixed": self.mixed_multiplicities,
            "intersection_numbers": self.intersection_numbers,
            "provenance": self.provenance,
        }


def density_report(ring: RingDescriptor, I: MonomialIdeal, cfg: Optional[FitConfig] = None) -> DensityReport:
    cfg = cfg or FitConfig()
    ord_run = ordinary_run(ring, I, cfg)
    sat_run = saturated_run(ring, I, cfg)
    f_eps, eps = epsilon_from(sat_run.density, ord_run.density)
    alpha = alpha_invariant(ring, I, cfg)
    if alpha != sat_run.density.breakpoints[0]:
        raise StructuralError(f"alpha {alpha} differs from the first saturated breakpoint")
    beta = beta_invariant(ring, I, cfg)
    e, inter = mixed_multiplicities(ring, I, cfg, ord_run.density.pieces[-1])
    return DensityReport(
        ord_run.density,
        sat_run.density,
        f_eps,
        alpha,
        beta,
        eps,
        ord_run.diagonal,
        e,
        inter,
        {
            "ordinary": ord_run.density.provenance,
            "saturated": sat_run.density.provenance,
            "e0": ring_multiplicity(ring),
        },
    )


# -- fixtures -----------------------------------------------------------------


def reference_fixture(name: str, s: Optional[int] = None) -> PiecewisePolynomial:
    """Closed-form saturated densities used as data (not computed from ideals).

    ``nagata`` with s >= 4: 0 then 3(x^2 - s^2) from x = s.
    ``cutkosky``: 0 then 18(33x^2 - 12x + 1) from x = (6 + sqrt 3)/33.
    """
    if name == "nagata":
        if s is None or s < 4:
            raise InputError("the nagata fixture needs s >= 4")
        return PiecewisePolynomial([Fraction(s)], [Poly(), Poly([-3 * s * s, 0, 3])], [0], 3, {"fixture": f"nagata({s})"})
    if name == "cutkosky":
        b = QuadraticSurd(6, 1, 3, 33)
        return PiecewisePolynomial([b], [Poly(), Poly([18, -216, 594])], [0], 3, {"fixture": "cutkosky"})
    raise InputError(f"unknown fixture {name!r}")
