"""Monomial ideal arithmetic and filtration specs.

Generator-list operations live here.  Heavy, high-power work (saturating
I^48, length tables) goes through :mod:`epsdens.staircase` instead.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Optional

import numpy as np

from . import staircase as st
from .core import (
    Monomial,
    MonomialIdeal,
    maximal_ideal,
    minimalize,
    monomial_lcm,
    monomial_quotient,
    unit_ideal,
)
from .errors import DimensionError, InputError
from .linalg import nullspace

ORDINARY = "ordinary_powers"
SATURATED = "saturated_powers"

# refuse staircase boxes beyond this many cells per ideal
MAX_BOX_CELLS = 4_000_000


def _same_ring(I: MonomialIdeal, J: MonomialIdeal):
    if I.ring.var_count != J.ring.var_count:
        raise DimensionError(f"ambient mismatch: {I.ring.var_count} vs {J.ring.var_count} variables")
    if I.ring != J.ring:
        raise DimensionError("ideals live in different rings")


def ideal_sum(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _same_ring(I, J)
    return minimalize(I.generators + J.generators, I.ring)


def ideal_product(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _same_ring(I, J)
    if I.is_zero or J.is_zero:
        return minimalize([], I.ring)
    a, b = I.exponent_array(), J.exponent_array()
    prods = (a[:, None, :] + b[None, :, :]).reshape(-1, I.var_count)
    return minimalize(prods, I.ring)


def ideal_power(I: MonomialIdeal, n: int) -> MonomialIdeal:
    if n < 0:
        raise InputError("negative power")
    out = unit_ideal(I.ring)
    base = I
    while n:
        if n & 1:
            out = ideal_product(out, base)
        n >>= 1
        if n:
            base = ideal_product(base, base)
    return out


def ideal_intersect(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _same_ring(I, J)
    if I.is_zero or J.is_zero:
        return minimalize([], I.ring)
    a, b = I.exponent_array(), J.exponent_array()
    lcms = np.maximum(a[:, None, :], b[None, :, :]).reshape(-1, I.var_count)
    return minimalize(lcms, I.ring)


def ideal_colon(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _same_ring(I, J)
    if J.is_zero:
        raise InputError("colon by the zero ideal is undefined")
    out = None
    for h in J.generators:
        part = minimalize([monomial_quotient(g, h) for g in I.generators], I.ring)
        out = part if out is None else ideal_intersect(out, part)
    return out


def saturate(I: MonomialIdeal, J: Optional[MonomialIdeal] = None) -> MonomialIdeal:
    """I : J^infinity by iterating the colon to a fixpoint (J defaults to m)."""
    if J is None:
        J = maximal_ideal(I.ring)
    K = I
    while True:
        nxt = ideal_colon(K, J)
        if nxt == K:
            return K
        K = nxt


def mindeg(I: MonomialIdeal) -> int:
    if I.is_zero:
        raise InputError("the zero ideal has no generators")
    return min(g.degree for g in I.generators)


def maxdeg(I: MonomialIdeal) -> int:
    if I.is_zero:
        raise InputError("the zero ideal has no generators")
    return max(g.degree for g in I.generators)


def is_subset(I: MonomialIdeal, J: MonomialIdeal) -> bool:
    return all(g in J for g in I.generators)


# -- integral closure -------------------------------------------------------


def newton_facets(I: MonomialIdeal) -> list[tuple[tuple[int, ...], int]]:
    """Inequalities w.x >= b (w >= 0, integers) cutting out the Newton polyhedron.

    Each candidate hyperplane passes through k generator exponents and is
    parallel to v - k coordinate axes; it is kept when its normal is
    nonnegative and every generator lies on the correct side.
    """
    v = I.var_count
    pts = [g.exponents for g in I.generators]
    found = set()
    for k in range(1, v + 1):
        for S in itertools.combinations(range(len(pts)), k):
            for T in itertools.combinations(range(v), v - k):
                rows = [[Fraction(pts[s][i] - pts[S[0]][i]) for i in range(v)] for s in S[1:]]
                rows += [[Fraction(int(i == t)) for i in range(v)] for t in T]
                ns = nullspace(rows, v)
                if len(ns) != 1:
                    continue
                w = ns[0]
                if all(x <= 0 for x in w):
                    w = [-x for x in w]
                if any(x < 0 for x in w):
                    continue
                den = lcm(*(x.denominator for x in w))
                wi = [int(x * den) for x in w]
                b = sum(a * c for a, c in zip(wi, pts[S[0]]))
                if all(sum(a * c for a, c in zip(wi, p)) >= b for p in pts):
                    g = np.gcd.reduce(wi + [b]) if b else np.gcd.reduce(wi)
                    g = int(g) or 1
                    found.add((tuple(x // g for x in wi), b // g))
    return sorted(found)


def _monomials_up_to(v: int, B: int) -> np.ndarray:
    rows = [c for c in itertools.product(range(B + 1), repeat=v) if sum(c) <= B]
    return np.array(rows, dtype=np.int64).reshape(-1, v)


def integral_closure(I: MonomialIdeal) -> MonomialIdeal:
    """Monomials whose exponents lie in the Newton polyhedron of I.

    Minimal lattice points of the polyhedron have degree below maxdeg + v,
    so candidates are enumerated up to that degree.
    """
    if I.is_zero:
        raise InputError("integral closure of the zero ideal")
    if I.is_unit:
        return I
    v = I.var_count
    facets = newton_facets(I)
    W = np.array([w for w, _ in facets], dtype=np.int64)
    b = np.array([bb for _, bb in facets], dtype=np.int64)
    cand = _monomials_up_to(v, maxdeg(I) + v - 1)
    inside = np.all(cand @ W.T >= b, axis=1)
    return minimalize(cand[inside], I.ring)


# -- filtrations ------------------------------------------------------------


@dataclass(frozen=True)
class Stabilization:
    """I_{n+c} = I_n I_c was verified for c <= n with n + c <= verified_up_to.

    ``verified_up_to`` None means it holds for all n (ordinary powers).
    """

    c: int
    verified_up_to: Optional[int]


@dataclass(frozen=True)
class FiltrationSpec:
    kind: str
    base: MonomialIdeal
    stabilization: Optional[Stabilization] = None
    window: int = 0
    direct_limit: int = 0  # saturated lengths beyond the window are computed directly up to this n

    def __post_init__(self):
        if self.kind not in (ORDINARY, SATURATED):
            raise InputError(f"unknown filtration kind {self.kind!r}")
        if self.kind == ORDINARY and self.stabilization is None:
            object.__setattr__(self, "stabilization", Stabilization(1, None))

    @property
    def ring(self):
        return self.base.ring


def ordinary_spec(I: MonomialIdeal) -> FiltrationSpec:
    return FiltrationSpec(ORDINARY, I)


def box_for(I: MonomialIdeal, n: int) -> int:
    """Box size making every generator of I^n (and its saturation) visible."""
    return max(1, n * max(I.max_exponents()))


def saturated_power_stairs(I: MonomialIdeal, n_max: int, M: Optional[int] = None) -> list[st.Staircase]:
    """Staircases of sat(I^n) for n = 0..n_max computed directly."""
    v = I.var_count
    M = M if M is not None else box_for(I, n_max)
    gens = I.exponent_array()
    cur = st.unit(v, M)
    out = [st.saturate_maximal(cur)]
    for _ in range(n_max):
        cur = st.times_exponents(cur, gens)
        out.append(st.saturate_maximal(cur))
    return out


def affordable_window(I: MonomialIdeal, n_max: int) -> int:
    """Largest n <= n_max whose saturation box fits in the memory budget."""
    v = I.var_count
    n = n_max
    while n > 2 and (box_for(I, n) + 1) ** (v - 1) * (n + 1) > MAX_BOX_CELLS * 8:
        n -= 1
    return n


def direct_budget(I: MonomialIdeal, cap: int = 4096) -> int:
    """Largest n whose single saturation box fits in the memory budget."""
    v = I.var_count
    if v == 1:
        return cap
    lo, hi = 0, cap
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if (box_for(I, mid) + 1) ** (v - 1) <= MAX_BOX_CELLS:
            lo = mid
        else:
            hi = mid - 1
    return lo


def detect_saturation_stabilization(
    I: MonomialIdeal, n_max: int = 48, direct_n_max: Optional[int] = None
) -> FiltrationSpec:
    """Smallest c with sat(I^{n+c}) = sat(I^n) sat(I^c) across the window.

    The check runs over c <= n, n + c <= n_max.  If no c works the returned
    spec carries ``stabilization=None`` and downstream code computes each
    saturation directly.  ``direct_n_max`` caps the direct fallback used past
    the window (None: memory budget, 0: no fallback).
    """
    if n_max < 2:
        raise InputError("n_max must be at least 2")
    if I.is_zero:
        raise InputError("saturated filtration of the zero ideal")
    window = affordable_window(I, n_max)
    budget = direct_budget(I)
    direct = budget if direct_n_max is None else min(direct_n_max, budget)
    direct = direct if direct > window else 0
    S = saturated_power_stairs(I, window)
    for c in range(1, window // 2 + 1):
        Sc = st.corners(S[c])
        if all(S[n + c] == st.times_exponents(S[n], Sc) for n in range(c, window - c + 1)):
            return FiltrationSpec(SATURATED, I, Stabilization(c, window), window, direct)
    return FiltrationSpec(SATURATED, I, None, window, direct)


def staircase_to_ideal(s: st.Staircase, ring) -> MonomialIdeal:
    return minimalize(st.corners(s), ring)


def saturated_power(I: MonomialIdeal, n: int) -> MonomialIdeal:
    """sat(I^n) as a generator list (through the staircase kernel)."""
    s = saturated_power_stairs(I, n)[n]
    return staircase_to_ideal(s, I.ring)
