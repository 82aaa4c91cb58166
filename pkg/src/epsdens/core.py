"""Monomials, monomial ideals and ring descriptors.

Everything here is an immutable value.  Ideals are always stored in canonical
form (minimal generators sorted by degree, then by descending exponent tuple),
so two equal ideals compare equal as Python objects.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import DimensionError, InputError

# Exact scalars are plain stdlib fractions.
ExactScalar = Fraction

DEFAULT_NAMES = ("X", "Y", "Z", "W", "U", "V")


def default_names(v: int) -> tuple[str, ...]:
    if v <= len(DEFAULT_NAMES):
        return DEFAULT_NAMES[:v]
    return tuple(f"X{i + 1}" for i in range(v))


@dataclass(frozen=True, order=False)
class Monomial:
    """An exponent vector.  ``degree`` is derived and cached."""

    exponents: tuple[int, ...]
    degree: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        exps = tuple(int(e) for e in self.exponents)
        if any(e < 0 for e in exps):
            raise InputError(f"negative exponent in {exps}")
        object.__setattr__(self, "exponents", exps)
        object.__setattr__(self, "degree", sum(exps))

    @classmethod
    def one(cls, v: int) -> "Monomial":
        return cls((0,) * v)

    @classmethod
    def var(cls, i: int, v: int, e: int = 1) -> "Monomial":
        exps = [0] * v
        exps[i] = e
        return cls(tuple(exps))

    def __len__(self):
        return len(self.exponents)

    def __mul__(self, other: "Monomial") -> "Monomial":
        _check_len(self, other)
        return Monomial(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def __pow__(self, n: int) -> "Monomial":
        return Monomial(tuple(a * n for a in self.exponents))

    def sort_key(self):
        return (self.degree, tuple(-e for e in self.exponents))

    def support(self) -> frozenset[int]:
        return frozenset(i for i, e in enumerate(self.exponents) if e)


def _check_len(a: Monomial, b: Monomial):
    if len(a.exponents) != len(b.exponents):
        raise DimensionError(
            f"variable count mismatch: {len(a.exponents)} vs {len(b.exponents)}"
        )


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    _check_len(a, b)
    return all(x <= y for x, y in zip(a.exponents, b.exponents))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    _check_len(a, b)
    return Monomial(tuple(max(x, y) for x, y in zip(a.exponents, b.exponents)))


def monomial_quotient(a: Monomial, b: Monomial) -> Monomial:
    """a / gcd(a, b), i.e. componentwise max(a - b, 0)."""
    _check_len(a, b)
    return Monomial(tuple(max(x - y, 0) for x, y in zip(a.exponents, b.exponents)))


@dataclass(frozen=True)
class RingDescriptor:
    """Polynomial ring k[X_1..X_v], optionally modulo a monomial ideal."""

    var_count: int
    names: tuple[str, ...] = ()
    quotient: Optional["MonomialIdeal"] = None

    def __post_init__(self):
        if self.var_count < 1:
            raise InputError("a ring needs at least one variable")
        if not self.names:
            object.__setattr__(self, "names", default_names(self.var_count))
        object.__setattr__(self, "names", tuple(self.names))
        if len(self.names) != self.var_count:
            raise InputError("one name per variable is required")
        if len(set(self.names)) != len(self.names):
            raise InputError(f"duplicate variable names in {self.names}")
        q = self.quotient
        if q is not None:
            if q.ring.quotient is not None or q.ring.var_count != self.var_count:
                raise DimensionError("quotient ideal must live in the polynomial ring")
            if q.is_unit:
                raise InputError("quotient by the unit ideal gives the zero ring")
            if q.is_zero:
                object.__setattr__(self, "quotient", None)

    @property
    def polynomial_ring(self) -> "RingDescriptor":
        if self.quotient is None:
            return self
        return RingDescriptor(self.var_count, self.names)

    @property
    def is_polynomial(self) -> bool:
        return self.quotient is None

    @cached_property
    def krull_dim(self) -> int:
        if self.quotient is None:
            return self.var_count
        # dim S/J = v - (minimum vertex cover of the supports of rad(J))
        edges = {g.support() for g in self.quotient.generators}
        for k in range(self.var_count + 1):
            for cover in itertools.combinations(range(self.var_count), k):
                cs = set(cover)
                if all(cs & e for e in edges):
                    return self.var_count - k
        raise AssertionError("unreachable: all variables always cover")

    def __hash__(self):
        return hash((self.var_count, self.names, self.quotient))


@dataclass(frozen=True)
class MonomialIdeal:
    """Minimal generators in canonical order plus the ambient ring.

    Build through :func:`minimalize`; the constructor trusts its input.
    """

    generators: tuple[Monomial, ...]
    ring: RingDescriptor

    @property
    def is_zero(self) -> bool:
        return not self.generators

    @property
    def is_unit(self) -> bool:
        return len(self.generators) == 1 and self.generators[0].degree == 0

    @property
    def var_count(self) -> int:
        return self.ring.var_count

    def __contains__(self, m: Monomial) -> bool:
        return any(monomial_divides(g, m) for g in self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def exponent_array(self) -> np.ndarray:
        if not self.generators:
            return np.zeros((0, self.var_count), dtype=np.int64)
        return np.array([g.exponents for g in self.generators], dtype=np.int64)

    def max_exponents(self) -> tuple[int, ...]:
        if not self.generators:
            return (0,) * self.var_count
        return tuple(int(x) for x in self.exponent_array().max(axis=0))

    def degrees(self) -> list[int]:
        return sorted({g.degree for g in self.generators})

    def __str__(self):
        if self.is_zero:
            return "(0)"
        return "(" + ", ".join(format_monomial(g, self.ring.names) for g in self.generators) + ")"


def _minimal_rows(arr: np.ndarray) -> np.ndarray:
    """Divisibility-minimal, deduplicated rows of an exponent array."""
    if len(arr) == 0:
        return arr
    arr = np.unique(arr, axis=0)
    order = np.argsort(arr.sum(axis=1), kind="stable")
    arr = arr[order]
    keep: list[np.ndarray] = []
    kept = np.zeros((0, arr.shape[1]), dtype=arr.dtype)
    for row in arr:
        if len(kept) and np.any(np.all(kept <= row, axis=1)):
            continue
        keep.append(row)
        kept = np.asarray(keep)
    return kept


def minimalize(gens: Iterable, ring: RingDescriptor) -> MonomialIdeal:
    """Canonical ideal generated by ``gens`` (Monomials or exponent tuples)."""
    rows = []
    for g in gens:
        e = g.exponents if isinstance(g, Monomial) else tuple(int(x) for x in g)
        if len(e) != ring.var_count:
            raise DimensionError(f"monomial {e} does not live in a {ring.var_count}-variable ring")
        rows.append(e)
    if not rows:
        return MonomialIdeal((), ring)
    arr = _minimal_rows(np.array(rows, dtype=np.int64).reshape(len(rows), ring.var_count))
    mons = sorted((Monomial(tuple(int(x) for x in r)) for r in arr), key=Monomial.sort_key)
    return MonomialIdeal(tuple(mons), ring)


def zero_ideal(ring: RingDescriptor) -> MonomialIdeal:
    return MonomialIdeal((), ring)


def unit_ideal(ring: RingDescriptor) -> MonomialIdeal:
    return MonomialIdeal((Monomial.one(ring.var_count),), ring)


def maximal_ideal(ring: RingDescriptor) -> MonomialIdeal:
    v = ring.var_count
    return minimalize([Monomial.var(i, v) for i in range(v)], ring)


def ideal_from_strings(texts: Sequence[str], ring: RingDescriptor) -> MonomialIdeal:
    return minimalize([parse_monomial(t, ring.names) for t in texts], ring)


# -- text syntax ------------------------------------------------------------

_FACTOR = re.compile(r"\s*([A-Za-z_][A-Za-z_0-9]*)\s*(?:\^\s*(\d+))?\s*")


def parse_monomial(text: str, names: Sequence[str]) -> Monomial:
    """Parse ``X^2*Y^3`` style text; ``1`` is the unit monomial."""
    index = {n: i for i, n in enumerate(names)}
    exps = [0] * len(names)
    s = text.strip()
    if s == "1":
        return Monomial(tuple(exps))
    if not s:
        raise InputError("empty monomial")
    pos = 0
    parts = text.split("*")
    for part in parts:
        m = _FACTOR.fullmatch(part)
        if m is None:
            raise InputError(f"bad monomial factor {part.strip()!r} at column {pos + 1} of {text!r}")
        name, e = m.group(1), m.group(2)
        if name not in index:
            raise InputError(f"unknown variable {name!r} at column {pos + 1} of {text!r}")
        exps[index[name]] += int(e) if e is not None else 1
        pos += len(part) + 1
    return Monomial(tuple(exps))


def format_monomial(m: Monomial, names: Sequence[str]) -> str:
    parts = []
    for n, e in zip(names, m.exponents):
        if e == 1:
            parts.append(n)
        elif e > 1:
            parts.append(f"{n}^{e}")
    return "*".join(parts) if parts else "1"
