"""Exact arithmetic in Q(sqrt(D)) for a fixed non-negative integer D.

Every value is a Surd (a + b*sqrt(D))/den kept in canonical form:
gcd(a, b, den) = 1, den > 0, and b = 0 whenever D is a perfect square
(the root is absorbed into the rational part).  All comparisons, signs
and floors are decided by integer arithmetic only -- no floating point
ever enters a decision path.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache, total_ordering
from math import gcd, isqrt


@lru_cache(maxsize=None)
def exact_sqrt(n: int) -> int | None:
    """Integer square root of n if n is a perfect square, else None."""
    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None


def is_discriminant(D: int) -> bool:
    """True for positive integers congruent to 0 or 1 mod 4."""
    return D > 0 and D % 4 in (0, 1)


def discriminants(start: int, stop: int):
    """Yield all discriminants D with start <= D <= stop."""
    for D in range(start, stop + 1):
        if is_discriminant(D):
            yield D


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def sqrt_sign(p: int, q: int, D: int) -> int:
    """Sign of p + q*sqrt(D), decided without irrational intermediates.

    When the signs of p and q agree the answer is immediate; otherwise
    the dominant term is found by comparing p^2 with q^2*D.
    """
    if q == 0 or D == 0:
        return _sign(p)
    if p >= 0 and q >= 0:
        return 1
    if p <= 0 and q <= 0:
        return -1
    # signs differ and both nonzero
    s = _sign(p * p - q * q * D)
    if s == 0:
        return 0  # only possible when D is a perfect square
    return s if p > 0 else -s


@total_ordering
class Surd:
    """Canonical element (a + b*sqrt(D))/den of Q(sqrt(D))."""

    __slots__ = ("a", "b", "den", "D")

    def __init__(self, a: int, b: int, den: int, D: int) -> None:
        if den == 0:
            raise ZeroDivisionError("Surd with zero denominator")
        if D < 0:
            raise ValueError("negative radicand")
        r = exact_sqrt(D)
        if r is not None:
            a, b = a + b * r, 0
        if den < 0:
            a, b, den = -a, -b, -den
        g = gcd(gcd(a, b), den)
        if g > 1:
            a //= g
            b //= g
            den //= g
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "D", D)

    def __setattr__(self, name, value):
        raise AttributeError("Surd is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def rational(cls, x: int | Fraction, D: int = 0) -> Surd:
        fr = Fraction(x)
        return cls(fr.numerator, 0, fr.denominator, D)

    @classmethod
    def sqrt(cls, D: int) -> Surd:
        return cls(0, 1, 1, D)

    # -- housekeeping -------------------------------------------------

    def _coerce(self, other) -> "Surd | None":
        if isinstance(other, Surd):
            if other.b != 0 and self.b != 0 and other.D != self.D:
                raise ValueError(f"mixed radicands {self.D} and {other.D}")
            D = self.D if self.b != 0 or other.b == 0 else other.D
            return Surd(other.a, other.b, other.den, D if other.b else D)
        if isinstance(other, int):
            return Surd(other, 0, 1, self.D)
        if isinstance(other, Fraction):
            return Surd(other.numerator, 0, other.denominator, self.D)
        return None

    def __repr__(self) -> str:
        if self.b == 0:
            return f"{self.a}/{self.den}" if self.den != 1 else f"{self.a}"
        s = f"{self.a}{self.b:+}√{self.D}" if self.a else f"{self.b}√{self.D}"
        return f"({s})/{self.den}" if self.den != 1 else s

    def __hash__(self) -> int:
        if self.b == 0:
            return hash(Fraction(self.a, self.den))
        return hash((self.a, self.b, self.den, self.D))

    def as_json(self) -> dict:
        return {"a": self.a, "b": self.b, "den": self.den, "D": self.D}

    # -- predicates ---------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def as_fraction(self) -> Fraction:
        if self.b != 0:
            raise ValueError(f"{self!r} is irrational")
        return Fraction(self.a, self.den)

    def sign(self) -> int:
        return sqrt_sign(self.a, self.b, self.D)

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        D = self.D if self.b or not o.b else o.D
        return Surd(self.a * o.den + o.a * self.den,
                    self.b * o.den + o.b * self.den,
                    self.den * o.den, D)

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.a, -self.b, self.den, self.D)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        D = self.D if self.b or not o.b else o.D
        return Surd(self.a * o.a + self.b * o.b * D,
                    self.a * o.b + self.b * o.a,
                    self.den * o.den, D)

    __rmul__ = __mul__

    def conj(self) -> Surd:
        """Galois conjugate (a - b*sqrt(D))/den."""
        return Surd(self.a, -self.b, self.den, self.D)

    def inverse(self) -> Surd:
        if not self:
            raise ZeroDivisionError("inverse of zero")
        # 1/x = conj(x) / (x * conj(x)), the norm being rational
        norm_num = self.a * self.a - self.b * self.b * self.D
        return Surd(self.a * self.den, -self.b * self.den, norm_num, self.D)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    # -- order --------------------------------------------------------

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() == 0

    def __lt__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() < 0

    def __floor__(self) -> int:
        return self.floor()

    def floor(self) -> int:
        """Greatest integer <= self, via an isqrt estimate corrected by
        at most two exact comparisons."""
        if self.b == 0:
            return self.a // self.den
        # numerator a + b*sqrt(D); estimate b*sqrt(D) by isqrt(b^2 D)
        root = isqrt(self.b * self.b * self.D)
        num_lo = self.a + (root if self.b > 0 else -(root + 1))
        est = num_lo // self.den
        while not (self - (est + 1)).sign() < 0:
            est += 1
        while (self - est).sign() < 0:
            est -= 1
        return est

    def approx(self) -> float:
        """Float approximation -- diagnostics only, never on a decision path."""
        return (self.a + self.b * self.D ** 0.5) / self.den


def lam(e: int, D: int) -> Surd:
    """lambda = (e + sqrt(D))/2, the defining length of a prototype."""
    return Surd(e, 1, 2, D)
