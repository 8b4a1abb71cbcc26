"""Dense univariate polynomials over an exact field.

Coefficients are stored low degree first with no trailing zeros; the zero
polynomial has an empty coefficient tuple and degree -1.  The variable is
always called z.

Polynomial gcds over Q run on integer coefficient lists with a primitive
pseudo-remainder sequence, so intermediate coefficient blowup stays bounded;
over F_p the plain Euclidean algorithm is used.  Squarefree decomposition is
the derivative-gcd cascade (Yun); in characteristic p a nonzero part with
vanishing derivative aborts with an explicit inseparable-part report.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd
from math import lcm as int_lcm
from typing import Iterable, List, Tuple

from .fields import Field, same_field


class InseparablePartError(ArithmeticError):
    """Squarefree decomposition hit a nonzero part with zero derivative.

    `part` is the undigested factor (a polynomial in z^p); `factors` holds
    the separable factors already extracted, as (poly, exponent) pairs.
    """

    def __init__(self, part: "Poly", factors):
        self.part = part
        self.factors = list(factors)
        super().__init__(
            f"inseparable part {part} (characteristic "
            f"{part.field.characteristic})")


class Poly:
    """Immutable dense polynomial over a fixed exact field."""

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs: Iterable, field: Field):
        cs = [field.coerce(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs: Tuple = tuple(cs)
        self.field = field

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, field: Field) -> "Poly":
        return cls((), field)

    @classmethod
    def one(cls, field: Field) -> "Poly":
        return cls((1,), field)

    @classmethod
    def constant(cls, c, field: Field) -> "Poly":
        return cls((c,), field)

    @classmethod
    def gen(cls, field: Field) -> "Poly":
        """The polynomial z."""
        return cls((0, 1), field)

    # -- basic queries ------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial at -1."""
        return len(self.coeffs) - 1

    @property
    def lc(self):
        """Leading coefficient (of the zero polynomial: 0)."""
        return self.coeffs[-1] if self.coeffs else self.field.zero

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def coefficient(self, i: int):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.zero

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.field == other.field
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.coeffs, self.field))

    # -- arithmetic ---------------------------------------------------

    def _same(self, other: "Poly") -> None:
        if not isinstance(other, Poly):
            raise TypeError(f"expected Poly, got {other!r}")
        same_field(self.field, other.field)

    def __add__(self, other: "Poly") -> "Poly":
        self._same(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(out, self.field)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs], self.field)

    def __mul__(self, other: "Poly") -> "Poly":
        self._same(other)
        if self.is_zero or other.is_zero:
            return Poly.zero(self.field)
        zero = self.field.zero
        out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(out, self.field)

    def scale(self, c) -> "Poly":
        c = self.field.coerce(c)
        return Poly([c * a for a in self.coeffs], self.field)

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative polynomial power")
        result = Poly.one(self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: "Poly") -> Tuple["Poly", "Poly"]:
        self._same(other)
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        if self.degree < other.degree:
            return Poly.zero(self.field), self
        rem = list(self.coeffs)
        quot = [self.field.zero] * (self.degree - other.degree + 1)
        inv_lc = self.field.one / other.lc
        for k in range(len(quot) - 1, -1, -1):
            c = rem[other.degree + k] * inv_lc
            quot[k] = c
            if c:
                for i, b in enumerate(other.coeffs):
                    rem[i + k] = rem[i + k] - c * b
        return Poly(quot, self.field), Poly(rem[:other.degree], self.field)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def divides(self, other: "Poly") -> bool:
        if self.is_zero:
            return other.is_zero
        return (other % self).is_zero

    def __call__(self, a):
        """Horner evaluation at a field element."""
        a = self.field.coerce(a)
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * a + c
        return acc

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:], self.field)

    def monic(self) -> "Poly":
        if self.is_zero or self.lc == self.field.one:
            return self
        return self.scale(self.field.one / self.lc)

    # -- printing -----------------------------------------------------

    def __str__(self):
        if self.is_zero:
            return "0"
        parts: List[str] = []
        for d in range(self.degree, -1, -1):
            c = self.coeffs[d]
            if not c:
                continue
            negative = isinstance(c, Fraction) and c < 0
            mag = -c if negative else c
            if d == 0:
                body = str(mag)
            else:
                zpow = "z" if d == 1 else f"z^{d}"
                body = zpow if mag == self.field.one else f"{mag}*{zpow}"
            if not parts:
                parts.append(f"-{body}" if negative else body)
            else:
                parts.append(f"{'-' if negative else '+'} {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"Poly({self})"


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor; gcd(0, 0) = 0."""
    a._same(b)
    if a.is_zero and b.is_zero:
        return a
    if a.is_zero:
        return b.monic()
    if b.is_zero:
        return a.monic()
    if a.field.characteristic == 0:
        return _rational_gcd(a, b)
    x, y = a, b
    while not y.is_zero:
        x, y = y, x % y
    return x.monic()


def _int_coeffs(p: Poly) -> List[int]:
    den = int_lcm(*(c.denominator for c in p.coeffs))
    return [int(c * den) for c in p.coeffs]


def _int_primitive(cs: List[int]) -> List[int]:
    while cs and cs[-1] == 0:
        cs.pop()
    if not cs:
        return cs
    g = 0
    for c in cs:
        g = int_gcd(g, c)
    if cs[-1] < 0:
        g = -g
    return [c // g for c in cs]


def _int_prem(u: List[int], v: List[int]) -> List[int]:
    """Pseudo-remainder of integer coefficient lists (up to content)."""
    r = list(u)
    dv, lv = len(v) - 1, v[-1]
    while r and len(r) - 1 >= dv:
        s = r[-1]
        r = [lv * c for c in r]
        shift = len(r) - 1 - dv
        for i, cv in enumerate(v):
            r[shift + i] -= s * cv
        while r and r[-1] == 0:
            r.pop()
    return r


def _rational_gcd(a: Poly, b: Poly) -> Poly:
    u = _int_primitive(_int_coeffs(a))
    v = _int_primitive(_int_coeffs(b))
    if len(u) < len(v):
        u, v = v, u
    while v:
        u, v = v, _int_primitive(_int_prem(u, v))
    return Poly([Fraction(c) for c in u], a.field).monic()


def squarefree_decomposition(a: Poly) -> List[Tuple[Poly, int]]:
    """Write a = lc(a) * prod s_i^i with the s_i monic squarefree coprime.

    Returns the (s_i, i) pairs with ascending exponents, omitting trivial
    factors.  Constants decompose as the empty product.  Raises ValueError
    on the zero polynomial and InseparablePartError when a characteristic-p
    input has a factor in z^p.
    """
    if a.is_zero:
        raise ValueError("zero polynomial has no squarefree decomposition")
    f = a.monic()
    if f.degree == 0:
        return []
    fp = f.derivative()
    if fp.is_zero:
        raise InseparablePartError(f, [])
    g = poly_gcd(f, fp)
    b = f // g
    d = (fp // g) - b.derivative()
    factors: List[Tuple[Poly, int]] = []
    i = 1
    while b.degree > 0:
        if i > f.degree:
            raise InseparablePartError(f, factors)
        s = poly_gcd(b, d)
        if s.degree > 0:
            factors.append((s, i))
        b = b // s
        d = (d // s) - b.derivative()
        i += 1
    if a.field.characteristic != 0:
        rebuilt = Poly.one(a.field)
        for s, e in factors:
            rebuilt = rebuilt * s ** e
        quot, rem = divmod(f, rebuilt)
        if not rem.is_zero:
            raise InseparablePartError(f, factors)
        if quot.degree > 0:
            raise InseparablePartError(quot, factors)
    return factors


def radical(a: Poly) -> Poly:
    """Product of the distinct monic irreducible factors of a (a != 0)."""
    if a.is_zero:
        raise ValueError("radical of the zero polynomial")
    if a.degree == 0:
        return Poly.one(a.field)
    return a.monic() // poly_gcd(a, a.derivative())
