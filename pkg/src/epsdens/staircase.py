"""Dense staircase representation of monomial ideals inside a box.

A monomial ideal J in k[x_1..x_v] is determined by the function

    f(p) = min { t : x^p * x_v^t in J },   p in N^(v-1),

which is nonincreasing in every coordinate.  Storing f on the box [0, M]^(v-1)
turns the ideal operations needed for length tables into numpy array ops:
sums are elementwise minima, intersections elementwise maxima, products are
shifted minima, and saturation reads f off the far face of the box.

All results are exact for monomials whose first v-1 exponents lie in the box.
Saturation additionally needs M at least the largest exponent of any
generator, which the callers guarantee.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

INF = np.int64(1 << 40)


@dataclass(frozen=True, eq=False)
class Staircase:
    f: np.ndarray
    v: int
    M: int

    def __eq__(self, other):
        return (
            isinstance(other, Staircase)
            and self.v == other.v
            and self.M == other.M
            and bool(np.array_equal(self.f, other.f))
        )

    __hash__ = None

    @property
    def is_zero(self) -> bool:
        return bool(np.all(self.f >= INF))


def _empty(v: int, M: int) -> np.ndarray:
    return np.full((M + 1,) * (v - 1), INF, dtype=np.int64)


def from_exponents(exps, v: int, M: int) -> Staircase:
    """Staircase of the ideal generated by the rows of ``exps``."""
    f = _empty(v, M)
    for g in np.asarray(exps, dtype=np.int64).reshape(-1, v):
        head = tuple(int(x) for x in g[:-1])
        if any(x > M for x in head):
            continue
        f[head] = min(f[head], g[-1])
    for ax in range(v - 1):
        f = np.minimum.accumulate(f, axis=ax)
    return Staircase(f, v, M)


def unit(v: int, M: int) -> Staircase:
    return from_exponents(np.zeros((1, v), dtype=np.int64), v, M)


def zero(v: int, M: int) -> Staircase:
    return Staircase(_empty(v, M), v, M)


def times_exponents(s: Staircase, exps) -> Staircase:
    """Product of the ideal ``s`` with the ideal generated by ``exps``."""
    v, M = s.v, s.M
    rows = np.asarray(exps, dtype=np.int64).reshape(-1, v)
    if v == 1:
        best = min((int(s.f) + int(g[0]) for g in rows), default=int(INF))
        return Staircase(np.array(min(best, int(INF)), dtype=np.int64), v, M)
    out = _empty(v, M)
    for g in rows:
        head = [int(x) for x in g[:-1]]
        if any(x > M for x in head):
            continue
        dst = tuple(slice(x, None) for x in head)
        src = tuple(slice(0, M + 1 - x) for x in head)
        np.minimum(out[dst], s.f[src] + g[-1], out=out[dst])
    np.minimum(out, INF, out=out)
    return Staircase(out, v, M)


def product(a: Staircase, b: Staircase) -> Staircase:
    return times_exponents(a, corners(b))


def add(a: Staircase, b: Staircase) -> Staircase:
    return Staircase(np.minimum(a.f, b.f), a.v, a.M)


def intersect(a: Staircase, b: Staircase) -> Staircase:
    return Staircase(np.maximum(a.f, b.f), a.v, a.M)


def colon_var_infinity(s: Staircase, k: int) -> Staircase:
    """J : x_k^infinity."""
    v, M = s.v, s.M
    if k == v - 1:
        return Staircase(np.where(s.f < INF, 0, INF).astype(np.int64), v, M)
    face = np.take(s.f, [M], axis=k)
    return Staircase(np.broadcast_to(face, s.f.shape).copy(), v, M)


def saturate_maximal(s: Staircase) -> Staircase:
    """J : m^infinity as the intersection of the J : x_k^infinity."""
    v, M = s.v, s.M
    if v == 1:
        return colon_var_infinity(s, 0)
    out = np.where(s.f < INF, 0, INF).astype(np.int64)
    for k in range(v - 1):
        np.maximum(out, np.take(s.f, [M], axis=k), out=out)
    return Staircase(out, v, M)


def corners(s: Staircase) -> np.ndarray:
    """Minimal generators (exponent rows) of the ideal inside the box."""
    f, v = s.f, s.v
    if v == 1:
        return np.array([[int(f)]], dtype=np.int64) if f < INF else np.zeros((0, 1), np.int64)
    mask = f < INF
    for ax in range(v - 1):
        prev = np.full_like(f, INF)
        sl_dst = [slice(None)] * (v - 1)
        sl_src = [slice(None)] * (v - 1)
        sl_dst[ax] = slice(1, None)
        sl_src[ax] = slice(0, -1)
        prev[tuple(sl_dst)] = f[tuple(sl_src)]
        mask &= f < prev
    idx = np.argwhere(mask)
    if len(idx) == 0:
        return np.zeros((0, v), dtype=np.int64)
    last = f[tuple(idx.T)].reshape(-1, 1)
    return np.hstack([idx.astype(np.int64), last])


@lru_cache(maxsize=8)
def _index_sums(shape: tuple[int, ...]) -> np.ndarray:
    out = np.indices(shape).sum(axis=0)
    out.flags.writeable = False
    return out


def degree_sums(s: Staircase) -> np.ndarray:
    """|p| + f(p) over the box: the degree of the lowest monomial above p."""
    if s.v == 1:
        return np.asarray(s.f).reshape(1)
    return _index_sums(s.f.shape) + s.f


def lengths(s: Staircase, m_max: int) -> np.ndarray:
    """Array L with L[m] = number of degree-m monomials of the ideal, m <= m_max."""
    if m_max > s.M:
        raise ValueError(f"box of size {s.M} cannot resolve degree {m_max}")
    d = degree_sums(s).ravel()
    d = d[d <= m_max]
    return np.cumsum(np.bincount(d, minlength=m_max + 1))[: m_max + 1].astype(np.int64)


def colength_difference(small: Staircase, big: Staircase) -> int:
    """Number of monomials in big but not in small (small contained in big).

    Requires the difference to be finite and inside the box.
    """
    mask = big.f < INF
    if np.any(small.f[mask] >= INF):
        raise ValueError("difference of the two ideals is not of finite length")
    return int((small.f[mask] - big.f[mask]).sum())


def min_degree(s: Staircase) -> int:
    return int(degree_sums(s).min())


def max_generator_degree(s: Staircase) -> int:
    c = corners(s)
    return int(c.sum(axis=1).max())
