"""Exact real quadratic surds (a + b*sqrt(c)) / q."""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import InputError


def _squarefree_part(c: int) -> tuple[int, int]:
    """c = k^2 * s with s squarefree; returns (k, s)."""
    k, s = 1, c
    p = 2
    while p * p <= s:
        while s % (p * p) == 0:
            s //= p * p
            k *= p
        p += 1
    return k, s


class QuadraticSurd:
    """Element of Q(sqrt(c)) in canonical form (a + b*sqrt(c)) / q.

    ``c`` is squarefree and > 1 unless b == 0, in which case the value is
    rational and represented with b = 0, c = 1.
    """

    __slots__ = ("a", "b", "c", "q")

    def __init__(self, a, b=0, c=1, q=1):
        a, b, q = Fraction(a), Fraction(b), Fraction(q)
        c = int(c)
        if c <= 0:
            raise InputError("surd radicand must be positive")
        if q == 0:
            raise InputError("zero denominator")
        k, s = _squarefree_part(c)
        b = b * k
        if s == 1:
            a, b = a + b, Fraction(0)
        # clear all denominators into q
        a, b = a / q, b / q
        if b == 0:
            s = 1
        den = a.denominator * b.denominator // gcd(a.denominator, b.denominator)
        an, bn = int(a * den), int(b * den)
        g = gcd(gcd(an, bn), den)
        self.a, self.b, self.c, self.q = an // g, bn // g, s, den // g

    @classmethod
    def coerce(cls, x) -> "QuadraticSurd":
        return x if isinstance(x, QuadraticSurd) else cls(Fraction(x))

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def to_fraction(self) -> Fraction:
        if self.b:
            raise ValueError("irrational surd")
        return Fraction(self.a, self.q)

    def _parts(self):
        return Fraction(self.a, self.q), Fraction(self.b, self.q)

    def _radicand(self, other: "QuadraticSurd") -> int:
        if self.b and other.b and self.c != other.c:
            raise ValueError("surds from different quadratic fields")
        return self.c if self.b else other.c

    def __add__(self, other):
        other = QuadraticSurd.coerce(other)
        c = self._radicand(other)
        a1, b1 = self._parts()
        a2, b2 = other._parts()
        return QuadraticSurd(a1 + a2, b1 + b2, c)

    __radd__ = __add__

    def __neg__(self):
        a, b = self._parts()
        return QuadraticSurd(-a, -b, self.c)

    def __sub__(self, other):
        return self + (-QuadraticSurd.coerce(other))

    def __rsub__(self, other):
        return QuadraticSurd.coerce(other) - self

    def __mul__(self, other):
        other = QuadraticSurd.coerce(other)
        c = self._radicand(other)
        a1, b1 = self._parts()
        a2, b2 = other._parts()
        return QuadraticSurd(a1 * a2 + b1 * b2 * c, a1 * b2 + a2 * b1, c)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = QuadraticSurd(1)
        for _ in range(n):
            out = out * self
        return out

    def __truediv__(self, other):
        other = QuadraticSurd.coerce(other)
        c = self._radicand(other)
        a2, b2 = other._parts()
        norm = a2 * a2 - b2 * b2 * c
        conj = QuadraticSurd(a2 / norm, -b2 / norm, c)
        return self * conj

    def __rtruediv__(self, other):
        return QuadraticSurd.coerce(other) / self

    def sign(self) -> int:
        # sign of a + b sqrt(c), q > 0
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        if a >= 0 and b >= 0:
            return 1
        if a <= 0 and b <= 0:
            return -1
        # opposite signs: compare a^2 with b^2 c
        diff = a * a - b * b * self.c
        return (1 if a > 0 else -1) * ((diff > 0) - (diff < 0))

    def _cmp(self, other) -> int:
        return (self - other).sign()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, QuadraticSurd)):
            return self._cmp(other) == 0
        return NotImplemented

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __hash__(self):
        if self.b == 0:
            return hash(Fraction(self.a, self.q))
        return hash((self.a, self.b, self.c, self.q))

    def __float__(self):
        return (self.a + self.b * self.c**0.5) / self.q

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b, "c": self.c, "q": self.q}

    def __repr__(self):
        if self.b == 0:
            return f"QuadraticSurd({Fraction(self.a, self.q)})"
        return f"QuadraticSurd(({self.a} + {self.b}*sqrt({self.c}))/{self.q})"
