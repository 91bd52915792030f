"""Exact scalars: rationals (``fractions.Fraction``) and quadratic numbers.

A quadratic number is ``(a + b*sqrt(d)) / c`` with integers ``a, b, c`` and a
square-free radicand ``d > 1``.  Results whose irrational part vanishes collapse
back to ``Fraction`` so rational data stays rational.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from numbers import Rational

__all__ = [
    "QuadraticNumber",
    "Scalar",
    "sqrt",
    "to_scalar",
    "sign",
    "is_rational",
    "radicand_of",
    "format_scalar",
]


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def _make(a: int, b: int, c: int, d: int):
    if c < 0:
        a, b, c = -a, -b, -c
    if b == 0:
        return Fraction(a, c)
    g = gcd(gcd(a, b), c)
    if g > 1:
        a, b, c = a // g, b // g, c // g
    obj = object.__new__(QuadraticNumber)
    obj._a, obj._b, obj._c, obj._d = a, b, c, d
    return obj


class QuadraticNumber:
    """Element of Q(sqrt d) with an exact sign."""

    __slots__ = ("_a", "_b", "_c", "_d")

    def __new__(cls, a, b, d: int = 5):
        d = int(d)
        r = isqrt(d)
        if d < 2 or r * r == d:
            raise ValueError(f"radicand must be a non-square integer > 1, got {d}")
        fa, fb = Fraction(a), Fraction(b)
        c = _lcm(fa.denominator, fb.denominator)
        return _make(fa.numerator * (c // fa.denominator),
                     fb.numerator * (c // fb.denominator), c, d)

    # components
    @property
    def radicand(self) -> int:
        return self._d

    @property
    def rational_part(self) -> Fraction:
        return Fraction(self._a, self._c)

    @property
    def irrational_part(self) -> Fraction:
        return Fraction(self._b, self._c)

    def conjugate(self):
        return _make(self._a, -self._b, self._c, self._d)

    def norm(self) -> Fraction:
        return Fraction(self._a * self._a - self._d * self._b * self._b, self._c * self._c)

    def sign(self) -> int:
        a, b = self._a, self._b
        sa = (a > 0) - (a < 0)
        sb = (b > 0) - (b < 0)
        if sa == 0:
            return sb
        if sa == sb:
            return sa
        # opposite signs: compare a^2 with d b^2
        return sa if a * a > self._d * b * b else sb

    # coercion
    def _coerce(self, other):
        if isinstance(other, QuadraticNumber):
            if other._d != self._d:
                raise TypeError(f"cannot mix sqrt({self._d}) and sqrt({other._d})")
            return other._a, other._b, other._c
        if isinstance(other, int):
            return other, 0, 1
        if isinstance(other, Rational):
            return other.numerator, 0, other.denominator
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b, c = o
        return _make(self._a * c + a * self._c, self._b * c + b * self._c, self._c * c, self._d)

    __radd__ = __add__

    def __neg__(self):
        return _make(-self._a, -self._b, self._c, self._d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b, c = o
        return _make(self._a * c - a * self._c, self._b * c - b * self._c, self._c * c, self._d)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b, c = o
        return _make(self._a * a + self._d * self._b * b,
                     self._a * b + self._b * a, self._c * c, self._d)

    __rmul__ = __mul__

    def _inverse(self):
        # 1/((a+b s)/c) = c (a - b s) / (a^2 - d b^2)
        n = self._a * self._a - self._d * self._b * self._b
        if n == 0:
            raise ZeroDivisionError("division by zero")
        return _make(self._c * self._a, -self._c * self._b, n, self._d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b, c = o
        if b == 0:
            if a == 0:
                raise ZeroDivisionError("division by zero")
            return _make(self._a * c, self._b * c, self._c * a, self._d)
        return self * _make(a, b, c, self._d)._inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b, c = o
        return _make(a, b, c, self._d) * self._inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return (1 / self) ** (-k)
        out, base = Fraction(1), self
        while k:
            if k & 1:
                out = base * out
            base = base * base
            k >>= 1
        return out

    # comparison
    def __eq__(self, other):
        if isinstance(other, QuadraticNumber):
            return (self._a, self._b, self._c, self._d) == (other._a, other._b, other._c, other._d)
        if isinstance(other, (int, Rational)):
            return False  # nonzero irrational part
        return NotImplemented

    def __hash__(self):
        return hash((self._a, self._b, self._c, self._d))

    def _cmp(self, other) -> int:
        diff = self - other
        return diff.sign() if isinstance(diff, QuadraticNumber) else (diff > 0) - (diff < 0)

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __bool__(self):
        return True

    def __float__(self):
        return (self._a + self._b * self._d ** 0.5) / self._c

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __repr__(self):
        return f"QuadraticNumber({self.rational_part}, {self.irrational_part}, {self._d})"

    def __str__(self):
        return f"({self.rational_part})+({self.irrational_part})*sqrt({self._d})"


Scalar = "Fraction | QuadraticNumber"


def sqrt(d: int) -> QuadraticNumber:
    """The number sqrt(d) as an exact scalar."""
    return QuadraticNumber(0, 1, d)


def to_scalar(x):
    """Coerce ints, Fractions, ``"p/q"`` strings and quadratic numbers."""
    if isinstance(x, QuadraticNumber):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, (int, Rational, str)):
        return Fraction(x)
    if isinstance(x, dict):
        return QuadraticNumber(Fraction(x["a"]), Fraction(x["b"]), int(x.get("d", 5)))
    if isinstance(x, float):
        raise TypeError("floating point values are not exact scalars")
    raise TypeError(f"cannot interpret {x!r} as an exact scalar")


def sign(x) -> int:
    if isinstance(x, QuadraticNumber):
        return x.sign()
    return (x > 0) - (x < 0)


def is_rational(x) -> bool:
    return not isinstance(x, QuadraticNumber)


def radicand_of(values) -> int | None:
    """Common radicand of an iterable of scalars (None if all rational)."""
    d = None
    for v in values:
        if isinstance(v, QuadraticNumber):
            if d is None:
                d = v.radicand
            elif d != v.radicand:
                raise TypeError(f"mixed radicands {d} and {v.radicand}")
    return d


def format_scalar(x):
    """JSON form: ``"p/q"`` strings, or ``{"a","b","d"}`` for quadratic numbers."""
    if isinstance(x, QuadraticNumber):
        return {"a": str(x.rational_part), "b": str(x.irrational_part), "d": x.radicand}
    return str(Fraction(x))
