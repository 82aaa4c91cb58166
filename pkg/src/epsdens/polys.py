"""Exact univariate and bivariate polynomials over the rationals."""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Mapping


def _frac(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class Poly:
    """Univariate polynomial, coefficients stored low degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def monomial(cls, k: int, c=1) -> "Poly":
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if not isinstance(other, Poly):
            other = Poly([other])
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly([other])
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.coeff(i) + other.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-other if isinstance(other, Poly) else Poly([-_frac(other)]))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly(c * _frac(other) for c in self.coeffs)
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = Poly([1])
        for _ in range(n):
            out = out * self
        return out

    def derivative(self) -> "Poly":
        return Poly(i * c for i, c in enumerate(self.coeffs) if i)

    def antiderivative(self) -> "Poly":
        return Poly([0] + [c / (i + 1) for i, c in enumerate(self.coeffs)])

    def integrate(self, a, b):
        F = self.antiderivative()
        return F(b) - F(a)

    def shift(self, a) -> "Poly":
        """p(x + a)."""
        out = Poly()
        xa = Poly([a, 1])
        for c in reversed(self.coeffs):
            out = out * xa + c
        return out

    def to_strings(self) -> list[str]:
        return [format_fraction(c) for c in self.coeffs]

    def __repr__(self):
        if not self.coeffs:
            return "Poly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" + ("" if i == 0 else "*x" if i == 1 else f"*x^{i}"))
        return "Poly(" + " + ".join(terms) + ")"


class BiPoly:
    """Bivariate polynomial in (X, Y): map (i, j) -> coefficient of X^i Y^j."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None):
        t = {}
        for k, c in (terms or {}).items():
            c = _frac(c)
            if c:
                t[(int(k[0]), int(k[1]))] = c
        self.terms = dict(sorted(t.items()))

    @property
    def degree(self) -> int:
        return max((i + j for i, j in self.terms), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def __call__(self, x, y):
        return sum((c * x**i * y**j for (i, j), c in self.terms.items()), Fraction(0))

    def __eq__(self, other):
        return isinstance(other, BiPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def __add__(self, other):
        t = dict(self.terms)
        for k, c in other.terms.items():
            t[k] = t.get(k, 0) + c
        return BiPoly(t)

    def __sub__(self, other):
        t = dict(self.terms)
        for k, c in other.terms.items():
            t[k] = t.get(k, 0) - c
        return BiPoly(t)

    def scale(self, c) -> "BiPoly":
        return BiPoly({k: v * c for k, v in self.terms.items()})

    def homogeneous_part(self, D: int) -> "BiPoly":
        return BiPoly({k: c for k, c in self.terms.items() if k[0] + k[1] == D})

    def lower_part(self, D: int) -> "BiPoly":
        return BiPoly({k: c for k, c in self.terms.items() if k[0] + k[1] < D})

    def dehomogenize(self) -> Poly:
        """p(x) = P(x, 1)."""
        if not self.terms:
            return Poly()
        out = [Fraction(0)] * (max(i for i, _ in self.terms) + 1)
        for (i, _), c in self.terms.items():
            out[i] += c
        return Poly(out)

    def affine_substitute(self, a, b, s) -> "BiPoly":
        """P((X - a) / s, (Y - b) / s) expanded in X, Y."""
        out: dict = {}
        s = _frac(s)
        for (i, j), c in self.terms.items():
            base = c / s ** (i + j)
            for k in range(i + 1):
                ck = comb(i, k) * (-_frac(a)) ** (i - k)
                for l in range(j + 1):
                    cl = comb(j, l) * (-_frac(b)) ** (j - l)
                    out[(k, l)] = out.get((k, l), 0) + base * ck * cl
        return BiPoly(out)

    def to_json(self) -> list[dict]:
        return [{"i": i, "j": j, "c": format_fraction(c)} for (i, j), c in self.terms.items()]

    def __repr__(self):
        if not self.terms:
            return "BiPoly(0)"
        return "BiPoly(" + " + ".join(f"{c}*X^{i}*Y^{j}" for (i, j), c in self.terms.items()) + ")"


def format_fraction(c) -> str:
    c = _frac(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def parse_fraction(s: str) -> Fraction:
    return Fraction(s)
