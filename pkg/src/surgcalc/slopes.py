"""Exact slope arithmetic on framed tori.

A slope is the class ``p*mu + q*lambda`` of an essential simple closed curve,
taken up to sign.  Slopes are kept in a canonical form (``q >= 0``, the sign
carried by ``p``, meridian written ``1/0``) so that equality is structural.
All arithmetic uses Python integers, which never overflow.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd

__all__ = [
    "Slope",
    "BasisChange",
    "normalize",
    "distance",
    "change_basis",
    "classify_slope",
    "parse_slope",
    "MERIDIAN",
    "LONGITUDE",
]


@dataclass(frozen=True, order=True)
class Slope:
    """A slope ``p/q`` in canonical form.

    Construct through :func:`normalize` (or :func:`parse_slope`); the
    constructor only validates.
    """

    p: int
    q: int

    def __post_init__(self):
        p, q = self.p, self.q
        if not isinstance(p, int) or not isinstance(q, int):
            raise TypeError("slope coordinates must be integers")
        if p == 0 and q == 0:
            raise ValueError("0/0 is not a slope")
        if q < 0:
            raise ValueError(f"{p}/{q} is not canonical: q must be >= 0")
        if q == 0 and p != 1:
            raise ValueError(f"{p}/0 is not canonical: the meridian is 1/0")
        if gcd(p, q) != 1:
            raise ValueError(f"{p}/{q} is not canonical: gcd(p, q) != 1")

    def __str__(self):
        return f"{self.p}/{self.q}"

    @property
    def kind(self):
        return classify_slope(self)

    def vector(self):
        return (self.p, self.q)


MERIDIAN = Slope(1, 0)
LONGITUDE = Slope(0, 1)


def normalize(p: int, q: int) -> Slope:
    """Return the canonical slope of the class ``p*mu + q*lambda``.

    >>> normalize(-7, -3)
    Slope(p=7, q=3)
    >>> str(normalize(2, 0))
    '1/0'
    """
    p, q = int(p), int(q)
    if p == 0 and q == 0:
        raise ValueError("(0, 0) does not define a slope")
    g = gcd(p, q)
    p, q = p // g, q // g
    if q < 0 or (q == 0 and p < 0):
        p, q = -p, -q
    return Slope(p, q)


def distance(a: Slope, b: Slope) -> int:
    """Minimal geometric intersection number ``|p1*q2 - q1*p2|``."""
    return abs(a.p * b.q - a.q * b.p)


@dataclass(frozen=True)
class BasisChange:
    """Unimodular change of basis of H_1 of a torus.

    The matrix ``[[a, b], [c, d]]`` acts on column vectors ``(p, q)``.
    """

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.det not in (1, -1):
            raise ValueError(
                f"basis change [[{self.a}, {self.b}], [{self.c}, {self.d}]] "
                f"has determinant {self.det}, expected +1 or -1"
            )

    @classmethod
    def identity(cls):
        return cls(1, 0, 0, 1)

    @classmethod
    def from_rows(cls, rows):
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    @property
    def det(self):
        return self.a * self.d - self.b * self.c

    def inverse(self):
        # exact since det = +-1
        k = self.det
        return BasisChange(self.d * k, -self.b * k, -self.c * k, self.a * k)

    def __matmul__(self, other):
        if isinstance(other, BasisChange):
            return BasisChange(
                self.a * other.a + self.b * other.c,
                self.a * other.b + self.b * other.d,
                self.c * other.a + self.d * other.c,
                self.c * other.b + self.d * other.d,
            )
        if isinstance(other, Slope):
            return change_basis(other, self)
        return NotImplemented


def change_basis(slope: Slope, m: BasisChange) -> Slope:
    """Apply ``m`` to the coordinate vector of ``slope`` and renormalize."""
    return normalize(m.a * slope.p + m.b * slope.q, m.c * slope.p + m.d * slope.q)


def classify_slope(slope: Slope) -> str:
    """One of ``meridian``, ``integral``, ``half_integral`` or ``other``."""
    if slope.q == 0:
        return "meridian"
    if slope.q == 1:
        return "integral"
    if slope.q == 2:
        return "half_integral"
    return "other"


_SLOPE_RE = re.compile(r"\s*([+-]?\d+)\s*/\s*([+-]?\d+)\s*")


def parse_slope(text: str) -> Slope:
    """Parse ``"p/q"``.  A bare integer is rejected on purpose; write ``5/1``."""
    m = _SLOPE_RE.fullmatch(text)
    if m is None:
        raise ValueError(f"malformed slope {text!r}: expected 'p/q', e.g. '7/3' or '5/1'")
    return normalize(int(m.group(1)), int(m.group(2)))
