"""Prototype validity, enumeration, e-sets, invariants, square counts."""

from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from prym4.exact import lam
from prym4.prototype import (Prototype, classify_model,
                             enumerate_prototypes, invariant_class,
                             is_almost_reduced, is_reduced,
                             period_lattice, primitive_square_count, proto,
                             reduced_prototype, s1_esets, s2_esets, validate)


def test_empty_and_singleton_sets():
    assert enumerate_prototypes(4) == []
    assert enumerate_prototypes(9) == []
    ps = enumerate_prototypes(5)
    assert [p.quad for p in ps] == [(1, 1, 0, -1)]
    assert classify_model(ps[0]) == "B"
    assert [p.quad for p in enumerate_prototypes(16, "A")] == [(3, 1, 0, -2)]


def test_validate_messages():
    assert validate(2, 1, 0, 1, 17) == "D != e^2 + 4wh"
    assert validate(4, 1, 1, -1, 17) == "t out of range [0, gcd(w,h))"
    assert validate(2, 2, 0, -2, 20) == "gcd(w,h,t,e) != 1"
    assert validate(1, 4, 0, 1, 17) == "lambda >= w"
    assert validate(4, 1, 0, 0, 16) == "lambda = w/2"
    with pytest.raises(ValueError):
        proto(2, 1, 0, 1, 17)


def test_d36_prototypes():
    assert [p.quad for p in enumerate_prototypes(36)] == \
        [(5, 1, 0, -4), (8, 1, 0, -2), (9, 1, 0, 0)]


def test_model_classification():
    assert classify_model(proto(4, 1, 0, -1, 17)) == "A"
    assert classify_model(proto(2, 2, 0, -1, 17)) == "B"


def test_esets():
    assert s1_esets(88) == [-8, -6, -4, -2, 0, 2, 4]
    assert s1_esets(73) == [-7, -5, -3, -1, 1, 3]
    assert s2_esets(73) == [-5, -3]
    assert s2_esets(49) == []
    assert s2_esets(113) == [-9, -7, -1, 1]
    assert -10 not in s1_esets(88)
    p = reduced_prototype(-2, 1, 52)
    assert p.quad == (12, 1, 0, -2) and is_reduced(p)
    q = reduced_prototype(-1, 2, 65)
    assert q.quad == (8, 2, 0, -1) and is_almost_reduced(q)


def test_invariant_class():
    assert invariant_class(proto(8, 1, 0, -2, 36)) == "e%4=2"
    assert invariant_class(proto(5, 1, 0, -4, 36)) == "e%4=0"
    assert invariant_class(proto(2, 2, 0, -7, 65)) == "A2"
    assert invariant_class(proto(14, 1, 0, 3, 65)) == "A1"
    assert invariant_class(proto(3, 1, 0, -1, 13)) == "-"


def test_enumeration_is_exhaustive_and_sorted():
    for D in (41, 52, 65, 100):
        ps = enumerate_prototypes(D)
        assert ps == sorted(ps)
        brute = []
        for e in range(-20, 21):
            rem = D - e * e
            if rem <= 0 or rem % 4:
                continue
            for w in range(1, rem // 4 + 1):
                if (rem // 4) % w:
                    continue
                h = rem // 4 // w
                for t in range(gcd(w, h)):
                    if isinstance(validate(w, h, t, e, D), Prototype):
                        brute.append((w, h, t, e))
        assert sorted(p.quad for p in ps) == sorted(brute)


def test_primitive_square_count_rejects():
    with pytest.raises(ValueError):
        primitive_square_count(proto(4, 1, 0, -1, 17))
    with pytest.raises(ValueError):
        period_lattice(proto(4, 1, 0, -1, 17))


def test_square_counts_small():
    for d in (4, 6, 8):
        for p in enumerate_prototypes(d * d, "reduced1"):
            n, (sx, sy) = primitive_square_count(p)
            assert n == 2 * d
            gens = [(sx * x, sy * y) for x, y in period_lattice(p)]
            assert all(v.denominator == 1 for g in gens for v in g)
            m = 0
            for i in range(len(gens)):
                for j in range(i + 1, len(gens)):
                    m = gcd(m, abs(int(gens[i][0] * gens[j][1]
                                       - gens[i][1] * gens[j][0])))
            assert m == 1


@settings(max_examples=60, deadline=None)
@given(st.integers(4, 800))
def test_enumerated_prototypes_are_valid(D):
    for p in enumerate_prototypes(D):
        assert validate(p.w, p.h, p.t, p.e, D) == p
        assert classify_model(p) in ("A", "B")
        la = lam(p.e, D)
        assert 0 < la < p.w
