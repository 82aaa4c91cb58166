"""Two-row vector partition functions.

The matrix has r columns (1, 0) and further columns (d_i, e_i) with e_i > 0.
phi(m, n) counts nonnegative integer combinations of the columns equal to
(m, n); it is also the coefficient of x^m y^n in

    1 / ((1 - x)^r * prod_i (1 - x^d_i y^e_i)).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from math import comb, gcd, lcm
from typing import Optional, Sequence

import numpy as np

from .errors import InputError


@dataclass(frozen=True)
class VPMatrix:
    r: int
    columns: tuple[tuple[int, int], ...]

    def __post_init__(self):
        cols = tuple((int(d), int(e)) for d, e in self.columns)
        if self.r < 0:
            raise InputError("r must be nonnegative")
        for d, e in cols:
            if d < 0 or e <= 0:
                raise InputError(f"column ({d}, {e}) needs d >= 0 and e > 0")
        object.__setattr__(self, "columns", cols)

    @cached_property
    def slope_classes(self) -> list[tuple[Fraction, list[tuple[int, int]]]]:
        """Distinct slopes d/e in increasing order with their columns."""
        classes: dict[Fraction, list] = {}
        for d, e in self.columns:
            classes.setdefault(Fraction(d, e), []).append((d, e))
        return sorted(classes.items())

    @property
    def size(self) -> int:
        return self.r + len(self.columns)

    @property
    def all_columns(self) -> list[tuple[int, int]]:
        return [(1, 0)] * self.r + list(self.columns)

    def to_json(self) -> dict:
        return {"r": self.r, "columns": [list(c) for c in self.columns]}


@dataclass(frozen=True)
class Chamber:
    """Cone spanned by two consecutive slope rays; ``hi`` None means infinity."""

    index: int
    rays: tuple[tuple[int, int], tuple[int, int]]
    lo: Fraction
    hi: Optional[Fraction]

    @property
    def is_last(self) -> bool:
        return self.hi is None

    def midpoint_slope(self) -> Fraction:
        return self.lo + 1 if self.hi is None else (self.lo + self.hi) / 2

    def interval_json(self) -> list:
        return [_fmt(self.lo), None if self.hi is None else _fmt(self.hi)]


@dataclass(frozen=True)
class RestrictedCone:
    """A chamber translated by ``offset``; the offset need not lie in the chamber."""

    chamber: Chamber
    offset: tuple[Fraction, Fraction]

    def __post_init__(self):
        object.__setattr__(self, "offset", tuple(Fraction(x) for x in self.offset))


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _primitive(d: int, e: int) -> tuple[int, int]:
    g = gcd(d, e) or 1
    return d // g, e // g


def chambers(M: VPMatrix) -> list[Chamber]:
    if not M.columns:
        raise InputError("no non-unit columns: the chamber complex is empty")
    cls = M.slope_classes
    out = []
    for j, (s, cols) in enumerate(cls):
        ray = _primitive(*cols[0])
        if j + 1 < len(cls):
            s2, cols2 = cls[j + 1]
            out.append(Chamber(j + 1, (ray, _primitive(*cols2[0])), s, s2))
        else:
            out.append(Chamber(j + 1, (ray, (1, 0)), s, None))
    return out


def period(M: VPMatrix) -> int:
    """lcm over rank-2 column pairs of the exponent of Z^2 / (pair lattice)."""
    cols = sorted(set(([(1, 0)] if M.r else []) + list(M.columns)))
    exps = []
    for a in range(len(cols)):
        for b in range(a + 1, len(cols)):
            (p, q), (s, t) = cols[a], cols[b]
            det = abs(p * t - q * s)
            if det:
                # Smith normal form of [[p, s], [q, t]] is diag(g, det / g)
                g = reduce(gcd, (p, q, s, t))
                exps.append(det // g)
    if not exps:
        raise InputError("matrix has rank < 2")
    return reduce(lcm, exps, 1)


def cone_contains(c, point: Sequence) -> bool:
    """Membership of a rational point in a chamber or restricted cone."""
    m, n = (Fraction(x) for x in point)
    if isinstance(c, RestrictedCone):
        lam, beta = c.offset
        m, n, c = m - lam, n - beta, c.chamber
    if m < 0 or n < 0:
        return False
    if n == 0:
        return m == 0 or c.hi is None
    s = m / n
    return s >= c.lo and (c.hi is None or s <= c.hi)


# -- evaluation -------------------------------------------------------------


def phi_brute(M: VPMatrix, m: int, n: int) -> int:
    """Direct enumeration over the non-unit column multiplicities."""
    if m < 0 or n < 0:
        return 0
    cols = M.columns
    r = M.r

    def rec(i: int, mleft: int, nleft: int) -> int:
        if i == len(cols):
            if nleft:
                return 0
            if r == 0:
                return int(mleft == 0)
            return comb(mleft + r - 1, r - 1)
        d, e = cols[i]
        total = 0
        lam = 0
        while lam * e <= nleft and lam * d <= mleft:
            total += rec(i + 1, mleft - lam * d, nleft - lam * e)
            lam += 1
        return total

    return rec(0, m, n)


def phi_brute_box(M: VPMatrix, m_max: int, n_max: int) -> np.ndarray:
    """phi on [0, m_max] x [0, n_max] by enumerating non-unit multiplicities.

    Each multiplicity vector with total (a, b) inside the box adds the
    stars-and-bars count C(m - a + r - 1, r - 1) to row b for every m >= a.
    Independent of the generating-function expansion in ``phi_table``.
    """
    T = np.zeros((m_max + 1, n_max + 1), dtype=object)
    ms = np.arange(m_max + 1)
    if M.r:
        spread = np.array([comb(int(k) + M.r - 1, M.r - 1) for k in ms], dtype=object)
    cols = M.columns

    def rec(i: int, a: int, b: int):
        if i == len(cols):
            if M.r:
                T[a:, b] += spread[: m_max + 1 - a]
            else:
                T[a, b] += 1
            return
        d, e = cols[i]
        while a <= m_max and b <= n_max:
            rec(i + 1, a, b)
            a, b = a + d, b + e

    rec(0, 0, 0)
    return T


def phi_table(M: VPMatrix, m_max: int, n_max: int) -> np.ndarray:
    """phi on [0, m_max] x [0, n_max], by expanding the generating function."""
    bound = comb(m_max + n_max + M.size, max(M.size, 1))
    dtype = np.int64 if bound < (1 << 62) else object
    T = np.zeros((m_max + 1, n_max + 1), dtype=dtype)
    T[0, 0] = 1
    for _ in range(M.r):
        T = np.cumsum(T, axis=0, dtype=dtype)
    for d, e in M.columns:
        for n in range(e, n_max + 1):
            if d <= m_max:
                T[d:, n] += T[: m_max + 1 - d, n - e]
    return T


class PhiOracle:
    """Oracle interface (call and grid) over phi_table."""

    n_limit = None

    def __init__(self, M: VPMatrix):
        self.M = M
        self._T = np.zeros((0, 0), dtype=np.int64)

    def _ensure(self, m_max, n_max):
        if m_max >= self._T.shape[0] or n_max >= self._T.shape[1]:
            mm = max(m_max, 2 * self._T.shape[0], 16)
            nn = max(n_max, 2 * self._T.shape[1], 8)
            self._T = phi_table(self.M, mm, nn)

    def __call__(self, m: int, n: int) -> int:
        if m < 0 or n < 0:
            return 0
        self._ensure(m, n)
        return int(self._T[m, n])

    def grid(self, m_max: int, n_max: int) -> np.ndarray:
        self._ensure(m_max, n_max)
        return self._T[: m_max + 1, : n_max + 1]
