"""Prototype-to-prototype transformations.

* butterfly moves B_q / B_infinity on Model-A prototypes, with the full
  output quadruple (the closed forms give only e' and h'; t' and w' come
  from normalizing the basis-change matrix),
* the induced steps on the reduced/almost-reduced e-sets S^h_D and the
  composite moves F_{+-q},
* switch moves S_1..S_7 on Model-B prototypes (partial targets: e',
  target model and the exact slope of the new periodic direction),
* the Model-B decomposition carried by every reduced or almost-reduced
  prototype in the direction of slope h/lambda.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .exact import Surd, exact_sqrt, lam
from .prototype import (Prototype, classify_model, is_almost_reduced,
                        is_reduced, proto, reduced_prototype, s_esets,
                        validate)

INF = "inf"


@dataclass(frozen=True)
class MoveRecord:
    kind: str          # "B_q", "B_inf", "S_i", "lemma-b1", "traced"
    params: tuple
    source: Prototype
    target: Prototype | None
    e_prime: int
    slope: "Surd | str | None" = None  # exact slope, "vertical", or None

    def as_json(self) -> dict:
        return {
            "kind": self.kind,
            "params": list(self.params),
            "source": self.source.quad,
            "target": self.target.quad if self.target else None,
            "e_prime": self.e_prime,
            "slope": (self.slope if isinstance(self.slope, (str, type(None)))
                      else self.slope.as_json()),
        }


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with a*x + b*y = g = gcd(a,b) >= 0."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def _normalize_rows(a: int, b: int, c: int, d: int) -> tuple[int, int, int]:
    """Bring the integer matrix [[a,b],[c,d]] to the form [[w',t'],[0,h']]
    by a right unimodular factor; returns (w', t'_raw, h').

    The residual freedom moves t' by multiples of w' and h', so callers
    reduce t'_raw modulo gcd(w',h')."""
    g = gcd(c, d)
    assert g > 0, "degenerate second row"
    c1, d1 = c // g, d // g
    _, x0, y0 = _egcd(c1, d1)
    assert c1 * x0 + d1 * y0 == 1
    u = a * d1 - b * c1
    v = a * x0 + b * y0
    if u < 0:
        u, v = -u, -v
    return u, v, g


def butterfly_admissible(p: Prototype, q: int | str) -> bool:
    if classify_model(p) != "A":
        return False
    if q == INF:
        return True
    return isinstance(q, int) and q >= 1 and (p.e + 4 * q * p.h) ** 2 < p.D


def butterfly(p: Prototype, q: int | str,
              pair: tuple[int, int] | None = None) -> Prototype:
    """Apply the butterfly move B_q (q >= 1) or B_infinity (q = "inf").

    ``pair`` optionally selects a general coprime pair (p,q) for the core
    curve; by default only (1,q) and (0,1) -- the moves generating the
    component relation -- are used.
    """
    w, h, t, e, D = p.w, p.h, p.t, p.e, p.D
    if pair is None:
        if not butterfly_admissible(p, q):
            raise ValueError(f"B_{q} not admissible on {p}")
        if q == INF:
            pp, qq, r, s = 0, 1, -1, 0
            e2 = -e - 4 * h
            h2_expect = gcd(t, h) if t else h
        else:
            pp, qq, r, s = 1, q, 0, 1
            e2 = -e - 4 * q * h
            h2_expect = gcd(q * h, w + q * t)
    else:
        pp, qq = pair
        if gcd(pp, qq) != 1 or qq <= 0:
            raise ValueError("pair must be coprime with q > 0")
        _, y, x = _egcd(pp, qq)
        r, s = -x, y          # pp*s - qq*r = 1
        assert pp * s - qq * r == 1
        e2 = -e - 4 * qq * h
        h2_expect = gcd(qq * h, pp * w + qq * t)
        if (e2 * e2) >= D:
            raise ValueError(f"pair {pair} not admissible on {p}")
    a = s * h
    b = -4 * qq * h - r * w - s * t - 2 * e
    c = -qq * h
    d = pp * w + qq * t
    w2, v, h2 = _normalize_rows(a, b, c, d)
    assert h2 == h2_expect, (p, q, h2, h2_expect)
    assert a * d - b * c == w2 * h2 == (D - e2 * e2) // 4, (p, q)
    t2 = v % gcd(w2, h2)
    out = validate(w2, h2, t2, e2, D)
    assert isinstance(out, Prototype), (p, q, (w2, h2, t2, e2), out)
    return out


def butterfly_qs(p: Prototype):
    """All admissible butterfly parameters on p: finite q with
    (e+4qh)^2 < D, plus infinity.  The finite range is provably complete."""
    qs: list[int | str] = []
    q = 1
    while (p.e + 4 * q * p.h) ** 2 < p.D:
        qs.append(q)
        q += 1
    qs.append(INF)
    return qs


def s_level_step(e: int, h: int, D: int, q: int | str) -> int | None:
    """One butterfly step inside the e-set S^h_D.

    Returns e' when B_q carries [e] to another member [e'] of S^h_D, and
    None when the image leaves S^h_D (or the move is inadmissible).
    """
    if e not in s_esets(D, h):
        raise ValueError(f"{e} not in S^{h}_{D}")
    p = reduced_prototype(e, h, D)
    if not butterfly_admissible(p, q):
        return None
    img = butterfly(p, q)
    in_s = (img.h == h and img.t == 0
            and (h == 1 or img.w % 2 == 0)
            and classify_model(img) == "A")
    # cross-check the closed forms against the matrix computation
    if q == INF:
        assert img.e == -e - 4 * h
        assert in_s
    else:
        assert img.e == -e - 4 * q * h
        assert (gcd(p.w, q * h) == h) == (img.h == h)
    return img.e if in_s else None


def f_admissible(e: int, h: int, D: int, q: int) -> bool:
    """Congruence admissibility of the composite move F_q:
    for +q require D != e^2 mod q, for -q require D != (e+4h)^2 mod q."""
    if q > 0:
        return (D - e * e) % q != 0
    return (D - (e + 4 * h) ** 2) % (-q) != 0


def f_move(e: int, h: int, D: int, q: int) -> int:
    """F_q(e) = e + 4h(q-1) for q > 0, e - 4h(|q|-1) for q < 0, realized
    as the two-butterfly composite at the S-level and asserted equal."""
    aq = abs(q)
    if not f_admissible(e, h, D, q):
        raise ValueError(f"F_{q} congruence fails on (D,e)=({D},{e})")
    if q > 0:
        # F_q = B_inf . B_q
        mid = s_level_step(e, h, D, aq)
        if mid is None:
            raise ValueError(f"B_{aq} leaves S on (D,e)=({D},{e})")
        out = s_level_step(mid, h, D, INF)
    else:
        # F_{-q} = B_q . B_inf
        mid = s_level_step(e, h, D, INF)
        if mid is None:
            raise ValueError(f"B_inf leaves S on (D,e)=({D},{e})")
        out = s_level_step(mid, h, D, aq)
    if out is None:
        raise ValueError(f"F_{q} leaves S on (D,e)=({D},{e})")
    expect = e + 4 * h * (aq - 1) * (1 if q > 0 else -1)
    assert out == expect, (e, h, D, q, out, expect)
    return out


@dataclass(frozen=True)
class SwitchResult:
    admissible: bool
    e_prime: int | None = None
    target_model: str | None = None
    slope: "Surd | str | None" = None


def switch(p: Prototype, i: int) -> SwitchResult:
    """Switch move S_i (i = 1..7) on a Model-B prototype.

    Returns the partial target: e' of the new decomposition, its model,
    and the exact slope of the periodic direction ("vertical" for the
    t = 0 branch of S_5).  S_1..S_4 and the first branch of S_5 require
    t = 0; inadmissible calls return SwitchResult(False).
    """
    if classify_model(p) != "B":
        raise ValueError(f"{p} is not Model B")
    w, h, t, e, D = p.w, p.h, p.t, p.e, p.D
    la = lam(e, D)
    if i in (1, 2, 3, 4) and t != 0:
        return SwitchResult(False)
    if i == 1:
        if not (2 * h + e - w < 0):
            return SwitchResult(False)
        return SwitchResult(True, 3 * e - 2 * w + 4 * h, "A", (la + h) / la)
    if i == 2:
        if not (Surd.rational(w - e - h, D) < la):
            return SwitchResult(False)
        return SwitchResult(True, 3 * e - 2 * w + 2 * h, "A", -(la + h) / la)
    if i == 3:
        if not (6 * h + 3 * e - 2 * w < 0):
            return SwitchResult(False)
        return SwitchResult(True, 7 * e + 12 * h - 4 * w, "A",
                            (la * 2 + 3 * h) / la)
    if i == 4:
        if not (Surd.rational(w - e - h, D) < la / 2):
            return SwitchResult(False)
        return SwitchResult(True, 5 * e - 4 * w + 4 * h, "A",
                            (la + h) * (-2) / la)
    if i == 5:
        if t == 0:
            return SwitchResult(True, 3 * e + 4 * h - 2 * w, "B", "vertical")
        if not (la + (e + 2 * h - w - t) > 0):
            return SwitchResult(False)
        return SwitchResult(True, 3 * e + 4 * h - 2 * w - 2 * t, "A",
                            (la + h) / Surd.rational(t, D))
    if i == 6:
        sgn = w + t - 2 * h - e
        slope = (la + h) / (la + t)
        if sgn > 0:
            return SwitchResult(True, 3 * e + 4 * h - 2 * w, "A", slope)
        if sgn < 0:
            return SwitchResult(True, e + 2 * t, "A", slope)
        return SwitchResult(True, e + 2 * t, "B", slope)
    if i == 7:
        if not (la > w - h - t):
            return SwitchResult(False)
        # the direction in the figure has negative slope
        slope = -((la + h) / Surd.rational(w - t, D))
        if t < e + h:
            return SwitchResult(True, e + 2 * h - 2 * w + 2 * t, "A", slope)
        if t > e + h:
            return SwitchResult(True, 3 * e + 4 * h - 2 * w, "A", slope)
        return SwitchResult(True, 3 * e + 4 * h - 2 * w, "B", slope)
    raise ValueError(f"no switch move S_{i}")


def model_b_of_reduced(p: Prototype) -> tuple[int, int, int, int, Surd]:
    """The Model-B decomposition of a reduced or almost-reduced
    prototypical surface in the direction of slope h/lambda (D not a
    square).  Returns (e', w', h', n, slope); e' and w' are solved
    exactly by matching the rational and sqrt(D)-parts of the ratio
    lambda'/w' = N/M, and h' = (D - e'^2)/(4w')."""
    if exact_sqrt(p.D) is not None:
        raise ValueError("square discriminant: direction may be two-cylinder")
    la = lam(p.e, p.D)
    n = (Surd.rational(p.w, p.D) / la).floor()
    if is_reduced(p):
        N = la + n
        M = la + n + 1
    elif is_almost_reduced(p):
        frac = Surd.rational(p.w, p.D) / la - n
        eps = 1 if frac > Fraction(1, 2) else 0
        N = la * 2 + (4 * n + 2 * eps)
        M = la * 2 + (4 * n + 2 + 2 * eps)
    else:
        raise ValueError(f"{p} is neither reduced nor almost-reduced")
    # lambda' * M = w' * N with lambda' = (e' + sqrt(D))/2:
    #   rational part:  e'*Ma + Mb*D - 2*w'*Na = 0
    #   sqrt(D) part:   e'*Mb + Ma - 2*w'*Nb = 0
    Ma, Mb = Fraction(M.a, M.den), Fraction(M.b, M.den)
    Na, Nb = Fraction(N.a, N.den), Fraction(N.b, N.den)
    det = Ma * (-2 * Nb) - (-2 * Na) * Mb
    assert det != 0
    ep = ((-Mb * p.D) * (-2 * Nb) - (-2 * Na) * (-Ma)) / det
    wp = (Ma * (-Ma) - (-Mb * p.D) * Mb) / det
    assert ep.denominator == 1 and wp.denominator == 1, (p, ep, wp)
    ep, wp = int(ep), int(wp)
    rem = p.D - ep * ep
    assert rem > 0 and rem % (4 * wp) == 0, (p, ep, wp)
    hp = rem // (4 * wp)
    slope = Surd.rational(p.h, p.D) / la
    return ep, wp, hp, n, slope
