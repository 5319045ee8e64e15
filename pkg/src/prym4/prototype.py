"""Prototypes (w,h,t,e) of 4-cylinder decompositions, their validity,
Model A/B classification, enumeration, invariant classes and
square-tiled counting.

A quadruple (w,h,t,e) with discriminant D = e^2 + 4wh is a prototype
when w,h > 0, 0 <= t < gcd(w,h), gcd(w,h,t,e) = 1 and the length
lambda = (e + sqrt(D))/2 satisfies 0 < lambda < w with lambda != w/2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .exact import Surd, exact_sqrt, is_discriminant, lam


@dataclass(frozen=True, order=True)
class Prototype:
    # field order gives the lexicographic enumeration order on (e,w,h,t)
    e: int
    w: int
    h: int
    t: int
    D: int

    @property
    def quad(self) -> tuple[int, int, int, int]:
        return (self.w, self.h, self.t, self.e)

    @property
    def lam(self) -> Surd:
        return lam(self.e, self.D)

    def __repr__(self) -> str:
        return f"P{self.D}({self.w},{self.h},{self.t},{self.e})"

    def as_json(self) -> dict:
        return {"D": self.D, "w": self.w, "h": self.h, "t": self.t,
                "e": self.e, "model": classify_model(self),
                "class": invariant_class(self)}


def proto(w: int, h: int, t: int, e: int, D: int | None = None) -> Prototype:
    """Validating constructor; raises on invalid quadruples."""
    if D is None:
        D = e * e + 4 * w * h
    p = validate(w, h, t, e, D)
    if isinstance(p, str):
        raise ValueError(f"({w},{h},{t},{e}) D={D}: {p}")
    return p


def validate(w: int, h: int, t: int, e: int, D: int) -> Prototype | str:
    """Return a Prototype, or a string naming the violated condition."""
    if not is_discriminant(D):
        return "D is not a discriminant"
    if w <= 0 or h <= 0:
        return "w and h must be positive"
    if D != e * e + 4 * w * h:
        return "D != e^2 + 4wh"
    if not (0 <= t < gcd(w, h)):
        return "t out of range [0, gcd(w,h))"
    if gcd(gcd(w, h), gcd(t, e)) != 1:
        return "gcd(w,h,t,e) != 1"
    la = lam(e, D)
    if not (0 < la):
        return "lambda <= 0"
    if not (la < w):
        return "lambda >= w"
    if la == Fraction(w, 2):
        return "lambda = w/2"
    return Prototype(e=e, w=w, h=h, t=t, D=D)


def classify_model(p: Prototype) -> str:
    """'A' when lambda < w/2, i.e. (e+4h)^2 < D; 'B' when
    (e+2h)^2 < D < (e+4h)^2.  Total on valid prototypes."""
    if (p.e + 4 * p.h) ** 2 < p.D:
        return "A"
    assert (p.e + 2 * p.h) ** 2 < p.D < (p.e + 4 * p.h) ** 2, \
        f"{p} is neither Model A nor Model B"
    return "B"


FILTERS = ("all", "A", "B", "reduced1", "reduced2")


def enumerate_prototypes(D: int, filter: str = "all") -> list[Prototype]:
    """All prototypes with discriminant D, ordered lexicographically on
    (e,w,h,t).  Filters: 'all', 'A', 'B', 'reduced1' (h=1, t=0),
    'reduced2' (h=2, t=0, w even)."""
    if filter not in FILTERS:
        raise ValueError(f"unknown filter {filter!r}")
    if not is_discriminant(D):
        return []
    out: list[Prototype] = []
    emax = isqrt(D)
    for e in range(-emax, emax + 1):
        rem = D - e * e
        if rem <= 0 or rem % 4 != 0:
            continue
        wh = rem // 4
        for w in range(1, wh + 1):
            if wh % w != 0:
                continue
            h = wh // w
            for t in range(gcd(w, h)):
                p = validate(w, h, t, e, D)
                if isinstance(p, str):
                    continue
                if filter == "A" and classify_model(p) != "A":
                    continue
                if filter == "B" and classify_model(p) != "B":
                    continue
                if filter == "reduced1" and not (h == 1 and t == 0
                                                 and classify_model(p) == "A"):
                    continue
                if filter == "reduced2" and not (h == 2 and t == 0 and w % 2 == 0
                                                 and classify_model(p) == "A"):
                    continue
                out.append(p)
    return sorted(out)


def s1_esets(D: int) -> list[int]:
    """The e-parametrization of the reduced set S^1_D:
    e^2 = D mod 4 and e^2, (e+4)^2 < D."""
    r = isqrt(D)
    return sorted(e for e in range(-r, r + 1)
                  if (e * e - D) % 4 == 0 and e * e < D and (e + 4) ** 2 < D)


def s2_esets(D: int) -> list[int]:
    """The e-parametrization of the almost-reduced set S^2_D:
    e^2 = D mod 16 and e^2, (e+8)^2 < D (primitivity forces e odd)."""
    r = isqrt(D)
    return sorted(e for e in range(-r, r + 1)
                  if e % 2 == 1 and (e * e - D) % 16 == 0
                  and e * e < D and (e + 8) ** 2 < D)


def s_esets(D: int, h: int) -> list[int]:
    if h == 1:
        return s1_esets(D)
    if h == 2:
        return s2_esets(D)
    raise ValueError("h must be 1 or 2")


def reduced_prototype(e: int, h: int, D: int) -> Prototype:
    """The member of S^h_D with the given e (h=1 reduced, h=2 almost-reduced)."""
    w = (D - e * e) // (4 * h)
    return proto(w, h, 0, e, D)


def invariant_class(p: Prototype) -> str:
    """Butterfly-invariant label: the residue e mod 4 for even D, the
    parity class A1/A2 for D = 1 mod 8, a single label otherwise."""
    if p.D % 2 == 0:
        return f"e%4={p.e % 4}"
    if p.D % 8 == 1:
        return "A2" if p.w % 2 == 0 and p.h % 2 == 0 and p.t % 2 == 0 else "A1"
    return "-"


def is_reduced(p: Prototype) -> bool:
    return p.h == 1 and p.t == 0


def is_almost_reduced(p: Prototype) -> bool:
    return p.h == 2 and p.t == 0 and p.w % 2 == 0


def primitive_square_count(p: Prototype) -> tuple[int, tuple[Fraction, Fraction]]:
    """For square D = d^2 and p reduced or almost-reduced: the number of
    unit squares (2d) of the rescaled surface, together with the diagonal
    rescaling matrix diag(sx, sy) making the period lattice Z + iZ."""
    d = exact_sqrt(p.D)
    if d is None:
        raise ValueError("D is not a square")
    if is_reduced(p):
        la = Fraction(p.e + d, 2)  # lambda is rational here
        scale = (Fraction(2, 1) / la, Fraction(2))
    elif is_almost_reduced(p):
        if (p.e + d) % 2 != 0:
            raise ValueError("e and d must have equal parity")
        half = (p.e + d) // 2
        if half % 2 == 1:
            scale = (Fraction(4, p.e + d), Fraction(2))
        else:
            scale = (Fraction(8, p.e + d), Fraction(1))
    else:
        raise ValueError("prototype is neither reduced nor almost-reduced")
    return 2 * d, scale


def period_lattice(p: Prototype) -> list[tuple[Fraction, Fraction]]:
    """Generators of the absolute period lattice of the prototypical
    surface for square D (all periods are then rational vectors):
    the two core-curve classes and the two crossing classes."""
    d = exact_sqrt(p.D)
    if d is None:
        raise ValueError("period lattice is rational only for square D")
    la = Fraction(p.e + d, 2)
    return [(la / 2, Fraction(0)), (Fraction(0), la / 2),
            (Fraction(p.w, 2), Fraction(0)),
            (Fraction(p.t, 2), Fraction(p.h, 2))]
