"""Graded lengths of monomial ideals and Hilbert series numerators."""

from __future__ import annotations

import threading
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Optional

import numpy as np

from . import staircase as st
from .core import MonomialIdeal, RingDescriptor
from .errors import FitFailure, InputError, UnverifiedRegionError
from .ideals import ORDINARY, SATURATED, FiltrationSpec, box_for


# -- univariate numerators --------------------------------------------------


@dataclass(frozen=True)
class HilbertNumerator1:
    """Hilbert series numerator: series = sum_k c_k t^k / (1 - t)^v."""

    coefficients: tuple[tuple[int, int], ...]
    denominator_power: int

    @classmethod
    def from_list(cls, coeffs: list[int], v: int) -> "HilbertNumerator1":
        return cls(tuple((k, c) for k, c in enumerate(coeffs) if c), v)

    def as_dict(self) -> dict[int, int]:
        return dict(self.coefficients)

    def dim(self, m: int) -> int:
        """Coefficient of t^m in the series."""
        if m < 0:
            return 0
        v = self.denominator_power
        return sum(c * comb(m - k + v - 1, v - 1) for k, c in self.coefficients if k <= m)

    def reduced(self) -> tuple[list[int], int]:
        """Cancel factors (1 - t): returns (numerator, remaining power)."""
        coeffs = [0] * (max((k for k, _ in self.coefficients), default=0) + 1)
        for k, c in self.coefficients:
            coeffs[k] = c
        p = self.denominator_power
        while p > 0 and coeffs and sum(coeffs) == 0:
            # synthetic division by (1 - t)
            q, acc = [], 0
            for c in coeffs[:-1]:
                acc += c
                q.append(acc)
            coeffs, p = q or [0], p - 1
        return coeffs, p

    def dimension(self) -> int:
        coeffs, p = self.reduced()
        return p if any(coeffs) else -1

    def multiplicity(self) -> int:
        coeffs, _ = self.reduced()
        return sum(coeffs)


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_add(a: list[int], b: list[int]) -> list[int]:
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def _minimal(gens: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    gens = sorted(set(gens), key=sum)
    out: list[tuple[int, ...]] = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return out


def _numerator(gens: list[tuple[int, ...]]) -> list[int]:
    """Numerator of the Hilbert series of S/(gens), pivot recursion."""
    if not gens:
        return [1]
    if any(sum(g) == 0 for g in gens):
        return [0]
    supports = [frozenset(i for i, e in enumerate(g) if e) for g in gens]
    if all(not (a & b) for a, b in _pairs(supports)):
        out = [1]
        for g in gens:
            f = [0] * (sum(g) + 1)
            f[0], f[-1] = 1, -1
            out = _poly_mul(out, f)
        return out
    v = len(gens[0])
    counts = [sum(1 for g in gens if g[i]) for i in range(v)]
    i = max(range(v), key=lambda k: (counts[k], -k))
    exps = sorted(g[i] for g in gens if g[i])
    e = exps[(len(exps) - 1) // 2]
    pivot = tuple(e if k == i else 0 for k in range(v))
    plus = _minimal(gens + [pivot])
    colon = _minimal([tuple(max(a - b, 0) for a, b in zip(g, pivot)) for g in gens])
    shifted = [0] * e + _numerator(colon)
    return _poly_add(_numerator(plus), shifted)


def _pairs(xs):
    for a in range(len(xs)):
        for b in range(a + 1, len(xs)):
            yield xs[a], xs[b]


def numerator_of_quotient(ring: RingDescriptor, I: MonomialIdeal) -> HilbertNumerator1:
    """Numerator of the Hilbert series of S/I over the polynomial ring S."""
    gens = [g.exponents for g in I.generators]
    coeffs = _numerator(_minimal(gens)) if gens else [1]
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return HilbertNumerator1.from_list(coeffs, ring.var_count)


def graded_dim(ring: RingDescriptor, I: MonomialIdeal, m: int) -> int:
    """dim_k of the degree-m part of the image of I in the ring (0 for m < 0)."""
    if m < 0:
        return 0
    v = ring.var_count
    if ring.quotient is None:
        return comb(m + v - 1, v - 1) - numerator_of_quotient(ring, I).dim(m)
    J = ring.quotient
    IJ = tuple(I.generators) + tuple(J.generators)
    from .core import minimalize

    IJ = minimalize(IJ, ring.polynomial_ring)
    return numerator_of_quotient(ring, J).dim(m) - numerator_of_quotient(ring, IJ).dim(m)


def ring_multiplicity(ring: RingDescriptor) -> int:
    """e_0(A) for A = S or S/J."""
    if ring.quotient is None:
        return 1
    return numerator_of_quotient(ring, ring.quotient).multiplicity()


# -- length oracles ---------------------------------------------------------


class LengthOracle:
    """Table of l((I_n)_m) for a filtration, grown on demand.

    Rows are cached as numpy arrays; the cache only ever grows, so any two
    queries return the same value regardless of their order.
    """

    def __init__(self, spec: FiltrationSpec):
        self.spec = spec
        ring = spec.base.ring
        self.v = ring.var_count
        if spec.kind == SATURATED and ring.quotient is not None:
            raise InputError("saturated filtrations need a polynomial ambient ring")
        if spec.kind == SATURATED and spec.stabilization is None and spec.window < 1:
            raise InputError("saturated filtration without a window")
        self._M = 0
        self._rows: list[np.ndarray] = []
        self._lock = threading.Lock()

    @property
    def n_limit(self) -> Optional[int]:
        if self.spec.kind == ORDINARY:
            return None
        return max(self._window, self.spec.direct_limit)

    @property
    def _window(self) -> int:
        stab = self.spec.stabilization
        return stab.verified_up_to if stab is not None else self.spec.window

    def _build(self, M: int, n_max: int):
        spec, v = self.spec, self.v
        I = spec.base
        ring = I.ring
        gens = I.exponent_array()
        rows = []
        if spec.kind == ORDINARY:
            Jst = (
                st.from_exponents(ring.quotient.exponent_array(), v, M)
                if ring.quotient is not None
                else None
            )
            base = st.lengths(Jst, M) if Jst is not None else 0
            cur = st.unit(v, M)
            for n in range(n_max + 1):
                if n:
                    cur = st.times_exponents(cur, gens)
                s = st.add(cur, Jst) if Jst is not None else cur
                rows.append(st.lengths(s, M) - base)
        elif n_max > self._window:
            # past the verified window: saturate every power directly
            Msat = max(M, box_for(I, n_max))
            cur = st.unit(v, Msat)
            for n in range(n_max + 1):
                if n:
                    cur = st.times_exponents(cur, gens)
                s = st.saturate_maximal(cur)
                rows.append(st.lengths(s, M))
        else:
            stab = spec.stabilization
            c = stab.c if stab is not None else n_max + 1
            direct_to = min(n_max, 2 * c - 1)
            Msat = max(M, box_for(I, direct_to))
            cur = st.unit(v, Msat)
            sats: list[st.Staircase] = []
            for n in range(direct_to + 1):
                if n:
                    cur = st.times_exponents(cur, gens)
                sats.append(st.saturate_maximal(cur))
            if Msat != M:
                sats = [st.Staircase(s.f[(slice(0, M + 1),) * (v - 1)].copy(), v, M) for s in sats]
            rows = [st.lengths(s, M) for s in sats]
            if n_max >= 2 * c:
                corners_c = st.corners(sats[c])
                recent = deque(sats[c:], maxlen=c)
                for n in range(2 * c, n_max + 1):
                    nxt = st.times_exponents(recent[0], corners_c)
                    recent.append(nxt)
                    rows.append(st.lengths(nxt, M))
        self._rows, self._M = rows, M

    def _ensure(self, m_max: int, n_max: int):
        lim = self.n_limit
        if lim is not None and n_max > lim:
            raise UnverifiedRegionError(
                f"n = {n_max} lies beyond the verified window n <= {lim}", window=lim
            )
        with self._lock:
            if m_max > self._M or n_max >= len(self._rows):
                M = max(m_max, 2 * self._M, 16)
                n = max(n_max, len(self._rows) - 1, 8)
                if lim is not None:
                    n = min(n, lim)
                self._build(M, n)

    def __call__(self, m: int, n: int) -> int:
        if m < 0 or n < 0:
            return 0
        self._ensure(m, n)
        return int(self._rows[n][m])

    def grid(self, m_max: int, n_max: int) -> np.ndarray:
        """Array indexed [m, n] for 0 <= m <= m_max, 0 <= n <= n_max."""
        self._ensure(m_max, n_max)
        return np.stack([r[: m_max + 1] for r in self._rows[: n_max + 1]], axis=1)


@lru_cache(maxsize=64)
def oracle_for(spec: FiltrationSpec) -> LengthOracle:
    return LengthOracle(spec)


def length_oracle(spec: FiltrationSpec, m: int, n: int) -> int:
    """l((I_n)_m) for the filtration described by ``spec``."""
    return oracle_for(spec)(m, n)


# -- bigraded numerators ----------------------------------------------------


@dataclass(frozen=True)
class BiNumerator:
    """p(x, y) with series sum l(R_{m,n}) x^m y^n = p / ((1-x)^r prod(1 - x^d y^e))."""

    coefficients: tuple[tuple[tuple[int, int], int], ...]
    r: int
    bidegrees: tuple[tuple[int, int], ...]

    def as_dict(self) -> dict[tuple[int, int], int]:
        return dict(self.coefficients)

    def to_json(self) -> dict:
        return {
            "numerator": [{"a": a, "b": b, "c": c} for (a, b), c in self.coefficients],
            "denominator": {"r": self.r, "factors": [list(t) for t in self.bidegrees]},
        }


def multiply_by_denominator(table: np.ndarray, r: int, bidegrees) -> np.ndarray:
    """Coefficients of (series in box) * (1-x)^r prod(1 - x^d y^e), same box."""
    P = np.array(table, dtype=object)
    for _ in range(r):
        P[1:, :] = P[1:, :] - P[:-1, :]
    for d, e in bidegrees:
        Q = P.copy()
        if d < P.shape[0] and e < P.shape[1]:
            Q[d:, e:] = P[d:, e:] - P[: P.shape[0] - d, : P.shape[1] - e]
        P = Q
    return P


def fit_binumerator(spec: FiltrationSpec, bidegrees, r: int, box: tuple[int, int]) -> BiNumerator:
    """Recover the bigraded numerator from the length table on a box.

    The numerator support must stay out of the outer 20% of the box, which is
    the evidence that the box is large enough.
    """
    M, N = box
    table = oracle_for(spec).grid(M, N)
    P = multiply_by_denominator(table, r, bidegrees)
    nz = [(int(a), int(b)) for a, b in zip(*np.nonzero(P != 0))]
    ma, nb = int(0.8 * M), int(0.8 * N)
    bad = [(a, b) for a, b in nz if a > ma or b > nb]
    if bad:
        raise FitFailure(
            "numerator support reaches the outer margin of the box",
            {"box": [M, N], "margin_hits": bad[:20]},
        )
    coeffs = tuple(sorted(((a, b), int(P[a, b])) for a, b in nz))
    return BiNumerator(coeffs, r, tuple(tuple(int(x) for x in t) for t in bidegrees))
