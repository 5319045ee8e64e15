"""Flat-surface builder and exact separatrix tracer."""

import random
from fractions import Fraction

import pytest

from prym4.exact import Surd, lam
from prym4.moves import INF, butterfly, butterfly_qs, switch
from prym4.prototype import classify_model, enumerate_prototypes, proto
from prym4.surface import (build_prototype_surface, build_two_cylinder_st,
                           e_from_area, extract_prototype, rotate_half_turn,
                           trace_direction, translation_isomorphic)


def bf_slope(p, q):
    if q == INF:
        return "vertical" if p.t == 0 else Surd.rational(p.h, p.D) / p.t
    return Surd.rational(q * p.h, p.D) / (p.w + q * p.t)


def test_surface_area():
    p = proto(4, 1, 0, -1, 17)
    s = build_prototype_surface(p)
    assert s.area() == lam(-1, 17) * Surd.sqrt(17) / 2


def test_horizontal_roundtrip():
    for quad, D in [((4, 1, 0, -1), 17), ((2, 4, 1, -3), 41),
                    ((3, 4, 0, -2), 52)]:
        p = proto(*quad, D)
        s = build_prototype_surface(p)
        dec = trace_direction(s, "horizontal")
        assert extract_prototype(s, dec) == p


def test_rotation_symmetry():
    p = proto(2, 4, 1, -3, 41)
    s = build_prototype_surface(p)
    assert translation_isomorphic(s, rotate_half_turn(rotate_half_turn(s)))


def test_butterfly_oracle_small():
    for D in (17, 41, 88):
        for p in enumerate_prototypes(D, "A"):
            s = build_prototype_surface(p)
            for q in butterfly_qs(p):
                dec = trace_direction(s, bf_slope(p, q))
                assert extract_prototype(s, dec) == butterfly(p, q)


def test_switch_oracle_small():
    for D in (41, 65, 73):
        for p in enumerate_prototypes(D, "B"):
            s = build_prototype_surface(p)
            for i in range(1, 8):
                res = switch(p, i)
                if not res.admissible:
                    continue
                dec = trace_direction(s, res.slope)
                got = extract_prototype(s, dec)
                assert got.e == res.e_prime
                assert classify_model(got) == res.target_model


def test_two_cylinder_st_basics():
    s = build_two_cylinder_st(2, 1, 1)     # d = 6, D = 36
    assert s.area() == 2 * 6                   # 2d unit squares
    dec = trace_direction(s, "horizontal")
    assert dec.kind == "two-cylinder"


def test_worked_square_bridges():
    # d=6: vertical cylinder of area 2, slope 3/5 cylinder of area 3
    s = build_two_cylinder_st(2, 1, 1)
    dec = trace_direction(s, "vertical")
    assert extract_prototype(s, dec).quad == (8, 1, 0, -2)
    dec = trace_direction(s, Surd.rational(Fraction(3, 5), 36))
    assert extract_prototype(s, dec).quad == (9, 1, 0, 0)
    # d=10: the pair of surfaces that joins all three components
    s = build_two_cylinder_st(4, 1, 2)
    assert extract_prototype(
        s, trace_direction(s, "vertical")).quad == (24, 1, 0, -2)
    assert extract_prototype(
        s, trace_direction(s, Surd.rational(Fraction(3, 8), 100))
    ).quad == (21, 1, 0, -4)
    s = build_two_cylinder_st(2, 3, 1)
    assert extract_prototype(
        s, trace_direction(s, Surd.rational(-2, 100))).quad == (24, 1, 0, 2)
    assert extract_prototype(
        s, trace_direction(s, Surd.rational(Fraction(2, 9), 100))
    ).quad == (25, 1, 0, 0)
    # d=12: vertical area 2, slope 2/11 area 7
    s = build_two_cylinder_st(2, 4, 1)
    v = trace_direction(s, "vertical")
    small = [c for c in v.cylinders if c.is_simple()]
    assert small and e_from_area(s, small[0]) == -8
    dec = trace_direction(s, Surd.rational(Fraction(2, 11), 144))
    assert extract_prototype(s, dec).quad == (35, 1, 0, 2)


def certified_slopes(p):
    """Slopes of directions known to be periodic on the prototypical
    surface: butterfly directions (Model A), switch directions and the
    h/lambda direction (Model B)."""
    out = []
    if classify_model(p) == "A":
        for q in butterfly_qs(p):
            out.append(bf_slope(p, q))
    else:
        la = p.lam
        out.append(Surd.rational(p.h, p.D) / la)
        for i in range(1, 8):
            res = switch(p, i)
            if res.admissible:
                out.append(res.slope)
    return out


def test_tracer_conservation_sample():
    rng = random.Random(7)
    cases = []
    for D in (17, 41, 52, 65, 68, 73, 88, 105):
        for p in enumerate_prototypes(D):
            for slope in certified_slopes(p):
                cases.append((p, slope))
    for p, slope in rng.sample(cases, 40):
        s = build_prototype_surface(p)
        dec = trace_direction(s, slope)
        total = sum((c.area for c in dec.cylinders),
                    Surd.rational(0, p.D))
        assert total == lam(p.e, p.D) * Surd.sqrt(p.D) / 2
        assert len(dec.cylinders) in (2, 4)
