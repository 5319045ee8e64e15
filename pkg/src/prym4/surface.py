"""Geometric ground truth: flat surfaces built from horizontal cylinders
with exact gluing data, and a separatrix tracer that certifies periodic
directions and extracts full cylinder decompositions.

A surface is a list of horizontal cylinders (circumference x height
rectangles with their vertical sides identified) plus a gluing table
matching top-boundary segments to bottom-boundary segments by
translation.  All lengths live in Q(sqrt(D)).

Tracing a direction with dy > 0 shoots one separatrix upward from every
bottom-boundary corner (the corners are the unique cone point of angle
14*pi, which has 7 upward prongs, one per bottom segment).  Each
separatrix closes into a saddle connection; the crossing points cut the
bottom circles into intervals permuted by the first-return map, and the
orbits of that permutation are the cylinders of the decomposition.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from math import gcd

from .exact import Surd, exact_sqrt, lam
from .prototype import Prototype, classify_model, proto, validate


class TraceBudgetExceeded(RuntimeError):
    """A separatrix failed to close within the crossing budget."""


@dataclass(frozen=True)
class Gluing:
    """Top of cylinder `ti` along [a, a+length) is glued by translation
    to the bottom of cylinder `bi` along [b, b+length)."""
    ti: int
    a: Surd
    bi: int
    b: Surd
    length: Surd


@dataclass
class FlatSurface:
    D: int
    cyls: list[tuple[Surd, Surd]]       # (circumference, height)
    gluings: list[Gluing]
    label: str = ""

    def __post_init__(self):
        for i, (C, H) in enumerate(self.cyls):
            for side in ("top", "bottom"):
                segs = self.boundary_segments(i, side)
                total = Surd.rational(0, self.D)
                for _, a, ln in segs:
                    total = total + ln
                if not (total == C):
                    raise ValueError(
                        f"{self.label}: {side} of cylinder {i} not tiled")
        if len(self.bottom_corners()) != 7 and len(self.cyls) > 1:
            raise ValueError(f"{self.label}: expected 7 bottom corners")

    def boundary_segments(self, i: int, side: str):
        """[(gluing index, start, length)] on the given boundary circle."""
        out = []
        for gi, g in enumerate(self.gluings):
            if side == "top" and g.ti == i:
                out.append((gi, g.a, g.length))
            if side == "bottom" and g.bi == i:
                out.append((gi, g.b, g.length))
        return out

    def area(self) -> Surd:
        total = Surd.rational(0, self.D)
        for C, H in self.cyls:
            total = total + C * H
        return total

    def bottom_corners(self) -> list[tuple[int, Surd]]:
        """All segment endpoints on bottom boundaries (copies of the zero)."""
        out = []
        for i in range(len(self.cyls)):
            C = self.cyls[i][0]
            for _, b, _ in self.boundary_segments(i, "bottom"):
                out.append((i, _mod(b, C)))
        return out


def _mod(x: Surd, C: Surd) -> Surd:
    return x - C * (x / C).floor()


# ----------------------------------------------------------------------
# surface constructors
# ----------------------------------------------------------------------

def build_prototype_surface(p: Prototype,
                            twist_override: int | None = None) -> FlatSurface:
    """The prototypical surface X_D(w,h,t,e): two large cylinders of
    width w/2, height h/2, twist t/2 and two lambda/2-cylinders, glued
    per the model diagram.  Cylinder order: [U, L, TS, BS]; U,L are the
    large pair, TS,BS the (semi-)simple pair.

    ``twist_override`` builds the surface with an arbitrary raw twist
    in place of p.t (any integer congruent to p.t modulo gcd(w,h) gives
    a GL+-equivalent surface, via unit shears and Dehn twists)."""
    D = p.D
    half = Fraction(1, 2)
    W = Surd.rational(Fraction(p.w) * half, D)
    H = Surd.rational(Fraction(p.h) * half, D)
    t_eff = p.t if twist_override is None else twist_override
    T = Surd.rational(Fraction(t_eff) * half, D)
    L = lam(p.e, D) / 2                      # lambda/2
    model = classify_model(p)
    U, Lc, TS, BS = 0, 1, 2, 3
    z = Surd.rational(0, D)
    if model == "A":
        # U.top: [T,T+L]->TS.bot, [T+L,T+2L]->BS.bot, [T+2L,T+W]->U.bot[2L,W]
        # L.top: [T,T+(W-2L)]->L.bot[0,..], [T+W-2L,T+W]->U.bot[0,2L]
        # L.bot: [W-2L,W-L]->TS.top, [W-L,W]->BS.top
        gl = [
            Gluing(U, T, TS, z, L),
            Gluing(U, T + L, BS, z, L),
            Gluing(U, T + L * 2, U, L * 2, W - L * 2),
            Gluing(Lc, T + (W - L * 2), U, z, L * 2),
            Gluing(Lc, T, Lc, z, W - L * 2),
            Gluing(TS, z, Lc, W - L * 2, L),
            Gluing(BS, z, Lc, W - L, L),
        ]
        sq_h = L
    else:
        # Model B: w/2 < lambda < w, i.e. L < W < 2L.
        gl = [
            Gluing(U, T, TS, z, L),
            Gluing(U, T + L, BS, z, W - L),
            Gluing(TS, z, U, z, L * 2 - W),
            Gluing(Lc, T, U, L * 2 - W, (W - L) * 2),
            Gluing(TS, L * 2 - W, Lc, z, W - L),
            Gluing(Lc, T + (W - L) * 2, BS, W - L, L * 2 - W),
            Gluing(BS, z, Lc, W - L, L),
        ]
        sq_h = L
    cyls = [(W, H), (W, H), (L, sq_h), (L, sq_h)]
    return FlatSurface(D, cyls, gl, label=f"X_{D}{p.quad}")


def build_two_cylinder_st(lA: int, lB: int, lC: int) -> FlatSurface:
    """The two-cylinder square-tiled surface with boundary word
    A B C Bbar Cbar on top and (A) C B Cbar Bbar Abar on bottom; both
    cylinders have height 1 and circumference d = lA + 2lB + 2lC."""
    d = lA + 2 * lB + 2 * lC
    D = d * d
    r = lambda x: Surd.rational(x, D)
    a, b, c = lA, lB, lC
    Top, Bo = 0, 1
    gl = [
        Gluing(Top, r(0), Top, r(0), r(a)),                    # A
        Gluing(Top, r(a), Bo, r(c), r(b)),                     # B
        Gluing(Top, r(a + b), Bo, r(0), r(c)),                 # C
        Gluing(Top, r(a + b + c), Bo, r(b + 2 * c), r(b)),     # Bbar
        Gluing(Top, r(a + 2 * b + c), Bo, r(b + c), r(c)),     # Cbar
        Gluing(Bo, r(0), Top, r(a), r(2 * b + 2 * c)),         # interior
        Gluing(Bo, r(2 * b + 2 * c), Bo, r(2 * b + 2 * c), r(a)),  # Abar
    ]
    cyls = [(r(d), r(1)), (r(d), r(1))]
    return FlatSurface(D, cyls, gl, label=f"ST({lA},{lB},{lC})")


# ----------------------------------------------------------------------
# tracing
# ----------------------------------------------------------------------

@dataclass
class TracedCylinder:
    charts: list[int]
    intervals: list[tuple[int, Surd, Surd]]   # (chart, lo, hi), lo < hi
    width: Surd                               # transversal interval length
    dy: Surd                                  # core-curve total rise
    area: Surd
    core: tuple[Surd, Surd]
    left: dict          # sep id -> developed zero (x, y) on one boundary
    right: dict         # sep id -> developed zero on the other boundary

    @property
    def n_left(self) -> int:
        return len(self.left)

    @property
    def n_right(self) -> int:
        return len(self.right)

    def is_simple(self) -> bool:
        return self.n_left == 1 and self.n_right == 1

    def is_semi_simple(self) -> bool:
        return self.n_left == 1 or self.n_right == 1


@dataclass
class CylinderDecomposition:
    direction: object            # Surd slope, "vertical" or "horizontal"
    cylinders: list[TracedCylinder]
    kind: str                    # two-cylinder / four-cylinder-A / -B
    pairing: list[tuple[int, int]]
    sep_rise: dict | None = None     # sep id -> total rise to closure
    dxody: Surd | None = None        # None for the horizontal decomposition

    def as_json(self) -> dict:
        return {
            "direction": (self.direction if isinstance(self.direction, str)
                          else self.direction.as_json()),
            "kind": self.kind,
            "pairing": self.pairing,
            "cylinders": [
                {"area": cyl.area.as_json(),
                 "rise": cyl.dy.as_json(),
                 "crossings": len(cyl.charts),
                 "boundary_counts": [cyl.n_left, cyl.n_right]}
                for cyl in self.cylinders],
        }


def _top_hit(surface: FlatSurface, i: int, xt: Surd):
    """Locate xt on the top circle of cylinder i: returns ("corner", pos)
    or ("seg", gluing, offset)."""
    C = surface.cyls[i][0]
    xt = _mod(xt, C)
    for gi, a, ln in surface.boundary_segments(i, "top"):
        off = _mod(xt - a, C)
        if off == 0 or off == ln:
            return ("corner", xt)
        if off < ln:
            return ("seg", surface.gluings[gi], off)
    raise AssertionError("top boundary not tiled")


def _step(surface: FlatSurface, i: int, x: Surd, dxody: Surd):
    """Flow from bottom position x of cylinder i up through the chart and
    the gluing; returns ("corner",) or (j, x', rise)."""
    C, H = surface.cyls[i]
    xt = x + dxody * H
    hit = _top_hit(surface, i, xt)
    if hit[0] == "corner":
        return ("corner", H)
    _, g, off = hit
    Cb = surface.cyls[g.bi][0]
    return (g.bi, _mod(g.b + off, Cb), H)


def trace_direction(surface: FlatSurface, slope,
                    budget: int = 100_000) -> CylinderDecomposition:
    """Certify the direction of the given slope as periodic and return
    its cylinder decomposition.  ``slope`` is a Surd (dy/dx, any sign),
    "vertical", or "horizontal"."""
    if slope == "horizontal" or (isinstance(slope, Surd) and slope.sign() == 0):
        return _horizontal_decomposition(surface)
    if slope == "vertical":
        dxody = Surd.rational(0, surface.D)
    else:
        dxody = Surd.rational(1, surface.D) / slope

    # shoot the separatrices
    crossing_info: dict = {}    # (chart, pos) -> (sep id, rise from start)
    sep_rise: dict = {}         # sep id -> total rise when the connection closes
    for sep, (i0, x0) in enumerate(surface.bottom_corners()):
        i, x = i0, x0
        rise = Surd.rational(0, surface.D)
        for _ in range(budget):
            key = (i, x)
            assert key not in crossing_info or crossing_info[key][1] == 0, \
                "saddle connections may only meet at the cone point"
            crossing_info.setdefault(key, (sep, rise))
            res = _step(surface, i, x, dxody)
            if res[0] == "corner":
                sep_rise[sep] = rise + res[1]
                break
            i, x, h = res
            rise = rise + h
        else:
            raise TraceBudgetExceeded(
                f"{surface.label}: slope {slope} not certified periodic")

    # cut the bottom circles into intervals
    cuts: dict[int, list[Surd]] = {i: [] for i in range(len(surface.cyls))}
    for (i, x) in crossing_info:
        cuts[i].append(x)
    intervals: list[tuple[int, Surd, Surd]] = []
    for i, xs in cuts.items():
        xs = sorted(set(xs))
        C = surface.cyls[i][0]
        for k, lo in enumerate(xs):
            hi = xs[k + 1] if k + 1 < len(xs) else xs[0] + C
            intervals.append((i, lo, hi))

    # per-chart interval starts are sorted, so lookup is one circle
    # reduction plus a bisection
    chart_idx: dict[int, list[int]] = {}
    chart_los: dict[int, list[Surd]] = {}
    for idx, (j, lo, _hi) in enumerate(intervals):
        chart_idx.setdefault(j, []).append(idx)
        chart_los.setdefault(j, []).append(lo)

    def interval_index(i: int, x: Surd) -> int:
        C = surface.cyls[i][0]
        los = chart_los[i]
        y = los[0] + _mod(x - los[0], C)
        return chart_idx[i][bisect_right(los, y) - 1]

    # first-return orbits of the intervals = cylinders
    seen = [False] * len(intervals)
    cylinders: list[TracedCylinder] = []
    for start in range(len(intervals)):
        if seen[start]:
            continue
        orbit = []
        idx = start
        i, lo, hi = intervals[idx]
        x = (lo + hi) / 2
        rise = Surd.rational(0, surface.D)
        dev_y: list[Surd] = []
        while True:
            seen[idx] = True
            orbit.append(idx)
            dev_y.append(rise)
            j, x2, h = _step(surface, i, x, dxody)
            assert j != "corner", "interval midpoint hit a corner"
            rise = rise + h
            idx = interval_index(j, x2)
            i, x = j, x2
            if idx == start:
                break
            assert not (seen[idx] and idx != start), "orbit inconsistency"
        width = intervals[start][2] - intervals[start][1]
        area = Surd.rational(0, surface.D)
        left: dict = {}
        right: dict = {}
        charts = []
        for k, idx2 in enumerate(orbit):
            ci, lo2, hi2 = intervals[idx2]
            C2, H2 = surface.cyls[ci]
            charts.append(ci)
            area = area + width * H2
            # developed positions of the interval endpoints at this step
            y0 = dev_y[k]
            for endpoint, store in ((lo2, left), (hi2, right)):
                sep, rise_at = crossing_info[(ci, _mod(endpoint, C2))]
                if sep not in store:
                    base_x = intervals[start][1 if store is left else 2]
                    dev_x = base_x + dxody * y0
                    store[sep] = (dev_x - dxody * rise_at, y0 - rise_at)
        dy = rise
        core = (dxody * dy, dy)
        cylinders.append(TracedCylinder(charts, [intervals[k] for k in orbit],
                                        width, dy, area, core, left, right))

    total = Surd.rational(0, surface.D)
    for cyl in cylinders:
        total = total + cyl.area
    assert total == surface.area(), "area not conserved by the trace"
    if len(cylinders) not in (2, 4):
        raise AssertionError(f"{len(cylinders)} cylinders traced")
    pairing = _pair(cylinders)
    kind = _classify_kind(cylinders)
    return CylinderDecomposition(slope, cylinders, kind, pairing,
                                 sep_rise=sep_rise, dxody=dxody)


def _pair(cylinders: list[TracedCylinder]) -> list[tuple[int, int]]:
    groups: dict = {}
    for i, cyl in enumerate(cylinders):
        groups.setdefault((cyl.width, cyl.dy), []).append(i)
    pairing = []
    for members in groups.values():
        assert len(members) % 2 == 0, "involution pairing failed"
        while members:
            pairing.append((members.pop(0), members.pop(0)))
    return pairing


def _classify_kind(cylinders: list[TracedCylinder]) -> str:
    if len(cylinders) == 2:
        return "two-cylinder"
    if any(c.is_simple() for c in cylinders):
        return "four-cylinder-A"
    assert any(c.is_semi_simple() for c in cylinders)
    return "four-cylinder-B"


def _horizontal_decomposition(surface: FlatSurface) -> CylinderDecomposition:
    """The defining horizontal decomposition, read off the gluing table."""
    cylinders = []
    z = Surd.rational(0, surface.D)
    for i, (C, H) in enumerate(surface.cyls):
        left = {}
        right = {}
        for side, store in (("bottom", left), ("top", right)):
            for gi, a, ln in surface.boundary_segments(i, side):
                y = z if side == "bottom" else H
                store[(side, gi)] = (_mod(a, C), y)
        cylinders.append(TracedCylinder(
            [i], [(i, z, C)], C, H, C * H, (C, z), left, right))
    pairing = _pair(cylinders)
    return CylinderDecomposition("horizontal", cylinders,
                                 _classify_kind(cylinders), pairing)


# ----------------------------------------------------------------------
# reading off prototypes
# ----------------------------------------------------------------------

def e_from_area(surface: FlatSurface, cyl: TracedCylinder) -> int:
    """The e-invariant of the decomposition containing the given
    (semi-)simple cylinder: lambda' = 2 sqrt(D) Area(C)/Area(X), written
    as (e' + sqrt(D))/2."""
    if not cyl.is_semi_simple():
        raise ValueError("cylinder is not simple or semi-simple")
    D = surface.D
    lam2 = Surd.sqrt(D) * 2 * cyl.area / surface.area()
    e2 = lam2 * 2 - Surd.sqrt(D)
    if not e2.is_rational:
        raise ValueError("area does not define a prototype eigenvalue")
    fr = e2.as_fraction()
    if fr.denominator != 1:
        raise ValueError("non-integral e'")
    return int(fr)


def _solve_g(u: tuple[Surd, Surd], b: tuple[Surd, Surd], lam2: Surd):
    """The linear map g with g(u) = (lam2/2, 0), g(b) = (0, lam2/2),
    returned as a 2x2 Surd matrix, or None if [u b] is singular."""
    det = u[0] * b[1] - u[1] * b[0]
    if det.sign() == 0:
        return None
    s = lam2 / 2 / det
    # g = (lam2/2) * [u b]^{-1}
    return ((b[1] * s, -b[0] * s), (-u[1] * s, u[0] * s))


def _apply(m, v):
    return (m[0][0] * v[0] + m[0][1] * v[1],
            m[1][0] * v[0] + m[1][1] * v[1])


def _as_int(x: Surd) -> int | None:
    if not x.is_rational:
        return None
    fr = x.as_fraction()
    return int(fr) if fr.denominator == 1 else None


def translation_isomorphic(s1: FlatSurface, s2: FlatSurface) -> bool:
    """Exact translation-isomorphism test.  Any isomorphism maps
    horizontal cylinders to horizontal cylinders of equal dimensions and
    rotates each one; corners must land on corners, so only finitely
    many rotations need to be tried."""
    n = len(s1.cyls)
    if n != len(s2.cyls):
        return False

    def matches(sig, offs) -> bool:
        for g in s1.gluings:
            a2 = _mod(g.a + offs[g.ti], s1.cyls[g.ti][0])
            b2 = _mod(g.b + offs[g.bi], s1.cyls[g.bi][0])
            if not any(g2.ti == sig[g.ti] and g2.bi == sig[g.bi]
                       and g2.length == g.length
                       and _mod(g2.a - a2, s2.cyls[g2.ti][0]) == 0
                       and _mod(g2.b - b2, s2.cyls[g2.bi][0]) == 0
                       for g2 in s2.gluings):
                return False
        return True

    for sig in permutations(range(n)):
        if any(s1.cyls[i] != s2.cyls[sig[i]] for i in range(n)):
            continue
        offset_opts = []
        for i in range(n):
            C = s1.cyls[i][0]
            b1 = s1.boundary_segments(i, "bottom")[0][1]
            opts = {_mod(b2 - b1, C)
                    for _, b2, _ in s2.boundary_segments(sig[i], "bottom")}
            offset_opts.append(sorted(opts, key=lambda s: (s.a, s.b, s.den)))
        for offs in product(*offset_opts):
            if matches(sig, offs):
                return True
    return False


def rotate_half_turn(surface: FlatSurface) -> FlatSurface:
    """Image of the surface under -id (in GL+, so prototypes may be
    normalized in either of the two horizontal orientations)."""
    gl = [Gluing(g.bi, -g.b - g.length, g.ti, -g.a - g.length, g.length)
          for g in surface.gluings]
    return FlatSurface(surface.D, list(surface.cyls), gl,
                       label=surface.label + "-rot")


def _apply_upper(surface: FlatSurface, g) -> FlatSurface:
    """Image of the surface under an upper-triangular g (horizontal
    cylinders stay horizontal)."""
    assert g[1][0].sign() == 0, "matrix does not preserve horizontals"
    sx, sh, sy = g[0][0], g[0][1], g[1][1]
    cyls = [(C * sx, H * sy) for C, H in surface.cyls]
    gl = [Gluing(gg.ti, gg.a * sx + surface.cyls[gg.ti][1] * sh,
                 gg.bi, gg.b * sx, gg.length * sx)
          for gg in surface.gluings]
    return FlatSurface(surface.D, cyls, gl, label=surface.label + "~")


def _rebuild(decomp: CylinderDecomposition, g, D: int) -> FlatSurface:
    """The traced decomposition re-cut along its direction and mapped by
    the frame g into a horizontal-cylinder surface."""
    bottom_of: dict = {}
    top_of: dict = {}
    cyls = []
    for k, cyl in enumerate(decomp.cylinders):
        gu = _apply(g, cyl.core)
        assert gu[1].sign() == 0 and gu[0].sign() > 0, "core not horizontal"
        C = gu[0]
        sides = []
        for store in (cyl.left, cyl.right):
            dev = {sep: _apply(g, z) for sep, z in store.items()}
            ys = {z[1] for z in dev.values()}
            assert len(ys) == 1, "boundary zeros not on one horizontal line"
            sides.append((ys.pop(), dev))
        sides.sort(key=lambda s: s[0])
        (y_bot, dev_bot), (y_top, dev_top) = sides
        H = y_top - y_bot
        assert H.sign() > 0, "degenerate cylinder"
        cyls.append((C, H))
        for sep, z in dev_bot.items():
            assert sep not in bottom_of, "saddle connection bounds two bottoms"
            bottom_of[sep] = (k, _mod(z[0], C))
        for sep, z in dev_top.items():
            assert sep not in top_of, "saddle connection bounds two tops"
            top_of[sep] = (k, _mod(z[0], C))
    assert set(bottom_of) == set(top_of) == set(decomp.sep_rise)
    gl = []
    for sep, rise in decomp.sep_rise.items():
        hol = _apply(g, (decomp.dxody * rise, rise))
        assert hol[1].sign() == 0 and hol[0].sign() > 0, "connection not flat"
        ti, a = top_of[sep]
        bi, b = bottom_of[sep]
        gl.append(Gluing(ti, a, bi, b, hol[0]))
    return FlatSurface(D, cyls, gl, label="recut")


def _twist_candidates(recut: FlatSurface, w2: int, lam2: Surd) -> list[int]:
    """Raw-twist search order for ``extract_prototype``: candidates read
    off the re-cut surface's gluing table first, then the full range.

    Along a top/bottom gluing pair between the same two circles the
    unknown per-circle origins cancel, leaving the twist up to
    half-circumference wraps; lambda/2 wraps are stripped exactly via
    the sqrt(D) coefficient (or a short shift scan when D is square).
    The order is purely a heuristic — every candidate is still verified
    by exact translation isomorphism."""
    L = lam2 / 2
    vals = []
    for g1 in recut.gluings:
        if g1.ti == g1.bi:
            vals.append(g1.a - g1.b)
        for g2 in recut.gluings:
            if g1.ti == g2.bi and g1.bi == g2.ti and g1.ti != g1.bi:
                vals.append(g1.a + g2.a - g1.b - g2.b)
    out: list[int] = []
    for v in vals:
        for x in (v, -v):
            if x.b == 0 and L.b == 0:
                shifts = [L * k for k in range(-3, 4)]
            elif L.b != 0 and (4 * x.b) % x.den == 0:
                shifts = [L * ((4 * x.b) // x.den)]
            else:
                continue
            for s in shifts:
                xr = (x - s) * 2
                if not xr.is_rational:
                    continue
                fr = xr.as_fraction()
                if fr.denominator == 1:
                    out.append(int(fr) % w2)
    ordered = list(dict.fromkeys(out))
    rest = set(ordered)
    ordered += [t for t in range(w2) if t not in rest]
    return ordered


def extract_prototype(surface: FlatSurface,
                      decomp: CylinderDecomposition) -> Prototype:
    """Normalize a four-cylinder decomposition back to its prototype
    (w', h', t', e').

    e' comes from the (semi-)simple cylinder's area and w' from the
    core-length ratio, both canonical.  The twist is certified
    geometrically: a frame g sending one lambda-cylinder's period basis
    to the lattice (lambda'/2) Z^2 is applied to the re-cut surface,
    and the result is compared against the built model of each twist
    candidate by exact translation isomorphism.  (Frame data alone
    cannot tell twists apart: a shear aligning the wrong pair of zeros
    can look integral on every single cylinder.)
    """
    if decomp.kind == "two-cylinder":
        raise ValueError("two-cylinder decomposition has no prototype")
    D = surface.D
    small = [c for c in decomp.cylinders if c.is_semi_simple()]
    large = [c for c in decomp.cylinders if not c.is_semi_simple()]
    assert len(small) == 2 and len(large) == 2, "unexpected boundary pattern"
    cs, cl = small[0], large[0]
    e2 = e_from_area(surface, cs)
    lam2 = lam(e2, D)
    if decomp.dxody is None:        # defining horizontal decomposition
        ratio = cl.core[0] / cs.core[0]
    else:
        ratio = cl.dy / cs.dy
    # the cores are parallel, so w'/lambda' is their length ratio
    w2 = _as_int(lam2 * ratio)
    if w2 is None or w2 <= 0:
        raise ValueError("large/small core ratio is not integral")
    if (D - e2 * e2) % (4 * w2) != 0:
        raise ValueError("width does not divide the discriminant datum")
    h2 = (D - e2 * e2) // (4 * w2)
    for zs_l in cs.left.values():
        for zs_r in cs.right.values():
            beta_s = (zs_r[0] - zs_l[0], zs_r[1] - zs_l[1])
            det = cs.core[0] * beta_s[1] - cs.core[1] * beta_s[0]
            if det.sign() == 0:
                continue
            if det.sign() < 0:
                beta_s = (-beta_s[0], -beta_s[1])
            g = _solve_g(cs.core, beta_s, lam2)
            if g is None:
                continue
            try:
                if decomp.dxody is None:
                    recut = _apply_upper(surface, g)
                else:
                    recut = _rebuild(decomp, g, D)
            except AssertionError:
                continue
            # the residual normalization freedom is an integer shear,
            # which shifts the raw twist by multiples of h2: raw twists
            # in [0, w2) are tried in heuristic order, reduced modulo
            # gcd, and the first exact isomorphism wins (prototypes are
            # normal forms, so distinct ones are never both isomorphic
            # to the re-cut surface)
            for t_raw in _twist_candidates(recut, w2, lam2):
                t2 = t_raw % gcd(w2, h2)
                cand = validate(w2, h2, t2, e2, D)
                if not isinstance(cand, Prototype):
                    continue
                model = build_prototype_surface(cand, twist_override=t_raw)
                if (translation_isomorphic(recut, model)
                        or translation_isomorphic(recut,
                                                  rotate_half_turn(model))):
                    return cand
    raise ValueError("no twist candidate matches the re-cut surface")
