"""Connected components of prototype spaces and orbit counting.

Three layers:

* ``component_partition`` -- union-find closure of a prototype set under
  the butterfly relation (on the full Model-A set or on the reduced /
  almost-reduced e-sets),
* ``verify_pd_theorem`` / ``verify_sd_theorem`` -- comparison of the
  computed partitions against the predicted component structure,
  including the embedded exceptional data,
* bridging: tracer-certified passages between butterfly components
  through Model-B decompositions, two-cylinder square-tiled surfaces and
  the simple-cylinder search on almost-reduced surfaces; ``orbit_count``
  assembles them into an orbit graph.

The exceptional lists and component tables below are verification
oracles, kept verbatim; they are never recomputed from the generic
predicates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt

from .exact import Surd, exact_sqrt, lam
from .moves import INF, MoveRecord, butterfly, butterfly_qs, switch
from .prototype import (Prototype, classify_model, enumerate_prototypes,
                        invariant_class, proto, reduced_prototype, s_esets,
                        validate)
from .surface import (build_prototype_surface, build_two_cylinder_st,
                      extract_prototype, trace_direction)

# -- embedded exceptional data -------------------------------------------

#: Discriminants where the Model-A component count deviates from the
#: generic residue rule.
EXC1 = frozenset({4, 5, 8, 9, 12, 16, 17, 25, 33, 36, 41, 49, 52, 68, 84, 100})

#: Discriminants (all = 1 mod 8) where the all-even class itself splits
#: in two, giving three components in total.
EXC2 = frozenset({113, 145, 153, 177, 209, 265, 313, 481})

#: Discriminants excluded from the generic component rule for the
#: reduced e-sets (h = 1).
S1_EXCEPTIONAL = frozenset({
    12, 16, 17, 20, 25, 28, 36, 73, 88, 97, 105, 112, 121, 124, 136, 145,
    148, 169, 172, 184, 193, 196, 201, 217, 220, 241, 244, 265, 268, 292,
    304, 316, 364, 385, 436, 484, 556, 604, 676, 796, 844, 1684})

#: Discriminants where the almost-reduced e-set (h = 2) is empty or
#: disconnected.
S2_EXCEPTIONAL = frozenset({
    17, 25, 33, 49, 113, 145, 153, 177, 209, 217, 265, 273, 313, 321, 361,
    385, 417, 481, 513})

#: Known component structures of exceptional reduced e-sets.
S1_COMPONENT_TABLE: dict[int, list[frozenset[int]]] = {
    20: [frozenset({-2}), frozenset({-4, 0})],
    28: [frozenset({-2}), frozenset({-4, 0})],
    36: [frozenset({-2}), frozenset({-4, 0})],
    52: [frozenset({-2}), frozenset({-4, 0}), frozenset({-6, 2})],
    68: [frozenset({-2}), frozenset({-8, -4, 0, 4}), frozenset({-6, 2})],
    73: [frozenset({-5, 1}), frozenset({-7, 3}), frozenset({-3, -1})],
    84: [frozenset({-2}), frozenset({-8, -4, 0, 4}), frozenset({-6, 2})],
    88: [frozenset({0, -4}), frozenset({-8, 4}), frozenset({2, -6, -2})],
}

#: Component structures of the disconnected almost-reduced e-sets (the
#: four smallest exceptional discriminants have empty e-sets).
S2_COMPONENT_TABLE: dict[int, list[frozenset[int]]] = {
    113: [frozenset({-7, -1}), frozenset({1, -9})],
    145: [frozenset({-7, -1}), frozenset({1, -9})],
    153: [frozenset({3, -11}), frozenset({-5, -3})],
    177: [frozenset({-7, -1}), frozenset({1, -9})],
    209: [frozenset({-7, -1}), frozenset({1, -9})],
    217: [frozenset({3, -11}), frozenset({-13, -3, 5, -5})],
    265: [frozenset({3, -3, -11, -5}), frozenset({-13, 5})],
    273: [frozenset({1, -9}), frozenset({-15, -7, -1, 7})],
    313: [frozenset({3, -11}), frozenset({-13, -3, 5, -5})],
    321: [frozenset({1, -7, -9, 9, -1, -17}), frozenset({-15, 7})],
    361: [frozenset({3, -3, -11, -5}), frozenset({-13, 5})],
    385: [frozenset({1, -15, 7, -7, -9, -1}), frozenset({9, -17})],
    417: [frozenset({1, -7, -9, 9, -1, -17}), frozenset({-15, 7})],
    481: [frozenset({1, -15, 7, -7, -9, -1}), frozenset({9, -17})],
    513: [frozenset({1, -7, -9, 9, -1, -17}), frozenset({-15, 7})],
}

#: Model-B prototypes whose first two switch moves connect the even
#: components for the square discriminants missed by the odd-side-length
#: search (indexed by d = sqrt(D)).
SQUARE_SWITCH_TABLE: dict[int, tuple[int, int, int, int]] = {
    14: (15, 3, 0, 4),
    18: (16, 5, 0, 2),
    20: (25, 3, 0, 10),
    22: (21, 5, 0, 8),
    24: (20, 7, 0, 4),
    32: (28, 9, 0, 4),
    34: (45, 5, 0, 16),
    36: (35, 9, 0, 6),
    46: (35, 15, 0, 4),
}

LEVELS = ("pa", "s1", "s2")


# -- union-find ----------------------------------------------------------

class _UnionFind:
    def __init__(self, members):
        self.parent = {m: m for m in members}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # deterministic representative: keep the smaller one
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra

    def classes(self) -> list[frozenset]:
        out: dict = {}
        for m in self.parent:
            out.setdefault(self.find(m), set()).add(m)
        return [frozenset(v) for v in out.values()]


@dataclass(frozen=True)
class ComponentPartition:
    D: int
    level: str
    universe: tuple
    labels: dict          # member -> smallest member of its class
    edges: tuple          # MoveRecords generating the relation

    @property
    def n_components(self) -> int:
        return len(set(self.labels.values()))

    def components(self) -> list[frozenset]:
        out: dict = {}
        for m, lab in self.labels.items():
            out.setdefault(lab, set()).add(m)
        return [frozenset(out[k]) for k in sorted(out)]

    def label_of(self, member):
        return self.labels[member]

    def as_json(self) -> dict:
        if self.level == "pa":
            comps = [sorted(p.quad for p in c) for c in self.components()]
        else:
            comps = [sorted(c) for c in self.components()]
        return {"D": self.D, "level": self.level,
                "n_components": self.n_components, "components": comps}

    def to_dot(self) -> str:
        lines = [f'graph "{self.level}_{self.D}" {{']
        for m in self.universe:
            name = repr(m) if isinstance(m, Prototype) else f"[{m}]"
            lines.append(f'  "{name}";')
        for rec in self.edges:
            src = repr(rec.source) if isinstance(rec.source, Prototype) \
                else f"[{rec.source}]"
            tgt = repr(rec.target) if isinstance(rec.target, Prototype) \
                else f"[{rec.target}]"
            lines.append(f'  "{src}" -- "{tgt}" [label="{rec.kind}"];')
        lines.append("}")
        return "\n".join(lines)


def component_partition(D: int, level: str = "pa") -> ComponentPartition:
    """Partition of the Model-A prototype set ("pa") or of the reduced /
    almost-reduced e-sets ("s1"/"s2") under all admissible butterfly
    moves.  Labels are the smallest member of each class."""
    if level not in LEVELS:
        raise ValueError(f"unknown level {level!r}")
    edges: list[MoveRecord] = []
    if level == "pa":
        universe = tuple(enumerate_prototypes(D, "A"))
        uf = _UnionFind(universe)
        for p in universe:
            for q in butterfly_qs(p):
                img = butterfly(p, q)
                uf.union(p, img)
                edges.append(MoveRecord(
                    kind="B_inf" if q == INF else f"B_{q}",
                    params=(q,), source=p, target=img, e_prime=img.e))
    else:
        h = 1 if level == "s1" else 2
        universe = tuple(s_esets(D, h))
        uf = _UnionFind(universe)
        from .moves import s_level_step
        for e in universe:
            p = reduced_prototype(e, h, D)
            for q in butterfly_qs(p):
                e2 = s_level_step(e, h, D, q)
                if e2 is None:
                    continue
                uf.union(e, e2)
                edges.append(MoveRecord(
                    kind="B_inf" if q == INF else f"B_{q}",
                    params=(q,), source=e, target=e2, e_prime=e2))
    labels = {m: uf.find(m) for m in universe}
    return ComponentPartition(D=D, level=level, universe=universe,
                              labels=labels, edges=tuple(edges))


# -- theorem verification ------------------------------------------------

def _sets_equal(computed: list[frozenset], predicted: list[frozenset]) -> bool:
    return sorted(computed, key=sorted) == sorted(predicted, key=sorted)


def verify_pd_theorem(D: int) -> dict:
    """Compare the computed Model-A partition with the predicted
    component structure (generic residue rule plus exceptional data)."""
    part = component_partition(D, "pa")
    comps = part.components()
    n = part.n_components
    report = {"D": D, "level": "pa", "n_components": n, "match": True,
              "detail": ""}

    def fail(msg):
        report["match"] = False
        report["detail"] = msg
        return report

    if D in EXC1:
        if D in (4, 5, 9):
            if n != 0:
                return fail(f"expected empty, found {n} components")
        elif D in (8, 12, 16, 17, 25, 33, 49):
            if n != 1:
                return fail(f"expected 1 component, found {n}")
        elif D == 36:
            # {(5,1,0,-4),(9,1,0,0)} and {(8,1,0,-2)}
            if n != 2:
                return fail(f"expected 2 components, found {n}")
        else:  # 41, 52, 68, 84, 100
            if n != 3:
                return fail(f"expected 3 components, found {n}")
        report["detail"] = "exceptional"
        return report
    if D in EXC2:
        # The all-even class splits in two (except for D = 481, where a
        # depth-two butterfly chain with parity-forced twists reconnects
        # it); the complementary class stays connected.
        expected = 2 if D == 481 else 3
        if n != expected:
            return fail(f"expected {expected} components, found {n}")
        odd = frozenset(p for p in part.universe
                        if invariant_class(p) == "A1")
        if odd not in comps:
            return fail("the non-all-even class is not connected")
        report["detail"] = "exceptional: all-even class splits in two" \
            if D != 481 else "exceptional list entry; both classes connected"
        return report

    if D % 8 == 5:
        if n != 1:
            return fail(f"expected 1 component, found {n}")
    elif D % 2 == 0:
        pred = [frozenset(p for p in part.universe if p.e % 4 == r)
                for r in (0, 2)]
        if not _sets_equal(comps, pred):
            return fail("components differ from the e mod 4 classes")
    else:  # D = 1 mod 8
        pred = [frozenset(p for p in part.universe
                          if invariant_class(p) == c) for c in ("A1", "A2")]
        if not _sets_equal(comps, pred):
            return fail("components differ from the parity classes")
    return report


def _s1_prediction(D: int, universe) -> list[frozenset]:
    universe = frozenset(universe)
    if D % 8 == 4:
        groups = [(0, 4), (2,), (-2 % 8,)]
    elif D % 8 == 1:
        groups = [(1, 3), (7, 5)]
    elif D % 8 == 0:
        groups = [(0, 4), (2, 6)]
    else:
        return [universe]
    return [frozenset(e for e in universe if e % 8 in g) for g in groups]


def verify_sd_theorem(D: int, h: int) -> dict:
    """Compare the computed e-set partition with the predicted structure
    for the given h (1: reduced, 2: almost-reduced)."""
    level = f"s{h}"
    part = component_partition(D, level)
    comps = part.components()
    n = part.n_components
    report = {"D": D, "level": level, "n_components": n, "match": True,
              "detail": ""}

    def fail(msg):
        report["match"] = False
        report["detail"] = msg
        return report

    if h == 1:
        if D < 12:
            report["detail"] = "below stated range"
            return report
        if D in S1_EXCEPTIONAL:
            if D in S1_COMPONENT_TABLE:
                if not _sets_equal(comps, S1_COMPONENT_TABLE[D]):
                    return fail("differs from the tabulated components")
            elif D in (12, 16, 17, 25) and n > 1:
                return fail(f"expected at most 1 component, found {n}")
            report["detail"] = "exceptional"
            return report
        pred = _s1_prediction(D, part.universe)
        if not part.universe:
            return fail("expected non-empty e-set")
        if not _sets_equal(comps, [c for c in pred if c]):
            return fail("components differ from the residue classes")
        if any(not c for c in pred):
            return fail("a predicted residue class is empty")
        return report

    # h = 2: the set only exists for D = 1 mod 8
    if D % 8 != 1 or D < 12:
        report["detail"] = "no prediction"
        return report
    if D in S2_EXCEPTIONAL:
        if D in (17, 25, 33, 49):
            if part.universe:
                return fail("expected empty e-set")
        else:
            if not _sets_equal(comps, S2_COMPONENT_TABLE[D]):
                return fail("differs from the tabulated components")
        report["detail"] = "exceptional"
        return report
    if not part.universe:
        return fail("expected non-empty e-set")
    if n != 1:
        return fail(f"expected 1 component, found {n}")
    return report


# -- tracer-certified bridges --------------------------------------------

@dataclass(frozen=True)
class BridgeRecord:
    """One certified passage between butterfly components: the listed
    prototypes were all extracted from traced decompositions of a single
    surface, so their components lie in one orbit."""
    kind: str                    # "switch-web", "two-cylinder-st", ...
    via: str                     # human-readable origin of the surface
    prototypes: tuple            # full Model-A prototypes on the surface
    moves: tuple = ()            # MoveRecords of the individual traces

    def as_json(self) -> dict:
        return {"kind": self.kind, "via": self.via,
                "prototypes": [p.quad for p in self.prototypes],
                "moves": [m.as_json() for m in self.moves]}


def _traced_switches(p: Prototype):
    """All admissible switch moves on the prototypical surface of a
    Model-B prototype, each certified by tracing its exact slope.
    Yields (i, full target prototype, MoveRecord); Model-B landings are
    reported too (they stay on the same surface)."""
    surface = build_prototype_surface(p)
    for i in range(1, 8):
        res = switch(p, i)
        if not res.admissible:
            continue
        dec = trace_direction(surface, res.slope)
        if dec.kind == "two-cylinder":
            continue
        target = extract_prototype(surface, dec)
        assert target.e == res.e_prime and \
            classify_model(target) == res.target_model, (p, i, target, res)
        yield i, target, MoveRecord(kind=f"S_{i}", params=(i,), source=p,
                                    target=target, e_prime=target.e,
                                    slope=res.slope)


def _traced_model_b(p: Prototype) -> tuple[Prototype, MoveRecord]:
    """The Model-B prototype carried by a reduced or almost-reduced
    surface in the direction of slope h/lambda, with the full quadruple
    read off the tracer (the closed form fixes only e', w', h')."""
    from .moves import model_b_of_reduced
    ep, wp, hp, n, slope = model_b_of_reduced(p)
    surface = build_prototype_surface(p)
    dec = trace_direction(surface, slope)
    target = extract_prototype(surface, dec)
    assert (target.e, target.w, target.h) == (ep, wp, hp), (p, target)
    assert classify_model(target) == "B"
    rec = MoveRecord(kind="model-b", params=(n,), source=p, target=target,
                     e_prime=ep, slope=slope)
    return target, rec


def _st_bridge(lA: int, lB: int, lC: int) -> BridgeRecord:
    """Model-A prototypes found on the two-cylinder square-tiled surface
    with the given side lengths, by tracing a small battery of
    directions known to cut out simple cylinders."""
    d = lA + 2 * lB + 2 * lC
    D = d * d
    surface = build_two_cylinder_st(lA, lB, lC)
    m = lA + 2 * lB + lC
    slopes = ["vertical",
              Surd.rational(Fraction(3, m), D),
              Surd.rational(Fraction(2, m), D),
              Surd.rational(Fraction(-2, lC), D)]
    protos: list[Prototype] = []
    moves: list[MoveRecord] = []
    for slope in slopes:
        dec = trace_direction(surface, slope)
        if dec.kind == "two-cylinder":
            continue
        target = extract_prototype(surface, dec)
        if classify_model(target) != "A":
            continue
        protos.append(target)
        moves.append(MoveRecord(kind="traced", params=(lA, lB, lC),
                                source=target, target=target,
                                e_prime=target.e, slope=slope))
    return BridgeRecord(kind="two-cylinder-st", via=f"st({lA},{lB},{lC})",
                        prototypes=tuple(protos), moves=tuple(moves))


def bridge_even(D: int) -> list[BridgeRecord]:
    """Certified bridges between the Model-A components of an even
    discriminant D >= 8."""
    if D % 2 != 0 or D < 8:
        raise ValueError("even discriminant >= 8 required")
    d = exact_sqrt(D)
    if d is not None:
        return _bridge_even_square(d)
    if D in (52, 68, 84):
        return _bridge_via_reduced(D)
    if D in (8, 12):
        return []           # single component, nothing to connect
    # the unique e >= 0 with e+2 < sqrt(D) < e+4 and matching parity
    e = isqrt(D) - 2
    if (D - e) % 2 != 0:
        e -= 1
    assert (e + 2) ** 2 < D < (e + 4) ** 2
    p = proto((D - e * e) // 4, 1, 0, e, D)
    assert classify_model(p) == "B"
    if (e + 2) ** 2 + 4 < D < (e + 4) ** 2 - 4:
        wanted = (1, 2)
    elif D == (e + 4) ** 2 - 4:
        wanted = (1, 3)
    else:
        assert D == (e + 2) ** 2 + 4
        wanted = (2, 4)
    found = {i: (t, rec) for i, t, rec in _traced_switches(p) if i in wanted}
    assert set(found) == set(wanted), (D, p, wanted, set(found))
    targets = tuple(found[i][0] for i in wanted)
    assert (targets[0].e - targets[1].e) % 4 == 2
    return [BridgeRecord(kind="switch-pair", via=repr(p),
                         prototypes=targets,
                         moves=tuple(found[i][1] for i in wanted))]


def _bridge_via_reduced(D: int) -> list[BridgeRecord]:
    """Bridges for the even discriminants whose switch prototype is only
    reachable through the slope-h/lambda decomposition of a reduced
    surface."""
    out = []
    for e in (-2, 2):
        src = reduced_prototype(e, 1, D)
        pb, rec_b = _traced_model_b(src)
        switches = list(_traced_switches(pb))
        protos = (src,) + tuple(t for _, t, _ in switches
                                if classify_model(t) == "A")
        out.append(BridgeRecord(
            kind="model-b-switch", via=repr(src), prototypes=protos,
            moves=(rec_b,) + tuple(r for _, _, r in switches)))
    return out


def _bridge_even_square(d: int) -> list[BridgeRecord]:
    """Bridges for D = d^2 (d even): two-cylinder square-tiled surfaces
    with an odd middle side when the search window contains one, the
    tabulated Model-B switch prototypes otherwise, and the small-d
    surface battery for d <= 12."""
    D = d * d
    if d in SQUARE_SWITCH_TABLE:
        p = proto(*SQUARE_SWITCH_TABLE[d], D=D)
        found = {i: (t, rec) for i, t, rec in _traced_switches(p)
                 if i in (1, 2)}
        assert set(found) == {1, 2}
        targets = tuple(found[i][0] for i in (1, 2))
        assert (targets[0].e - targets[1].e) % 4 == 2
        return [BridgeRecord(kind="switch-pair", via=repr(p),
                             prototypes=targets,
                             moves=tuple(found[i][1] for i in (1, 2)))]
    if d >= 14:
        lo, hi = Fraction(d + 4, 7), Fraction(2 * d + 5, 11)
        for lB in range(1, d, 2):
            if lo < lB < hi:
                return [_st_bridge(d - 4 * lB + 2, lB, lB - 1)]
        raise AssertionError(f"no odd side length in the window for d={d}")
    # small squares: battery of two-cylinder surfaces
    out = []
    for lB in range(1, d // 2):
        for lC in range(1, d // 2):
            lA = d - 2 * lB - 2 * lC
            if lA <= 0 or gcd(lB, lC) != 1:
                continue
            out.append(_st_bridge(lA, lB, lC))
    return out


def bridge_1mod8(D: int) -> list[BridgeRecord]:
    """Certified bridges between the two parity classes of a
    discriminant D = 1 mod 8, D > 9: the simple-cylinder search on an
    almost-reduced surface when it succeeds, the Model-B switch web
    otherwise (small and exceptional D)."""
    if D % 8 != 1 or D <= 9:
        raise ValueError("discriminant = 1 mod 8, > 9 required")
    rec = _search_simple_cylinder(D)
    if rec is not None:
        return [rec]
    return _switch_web(D)


def _search_simple_cylinder(D: int, require_4w: bool = False
                            ) -> BridgeRecord | None:
    """Search the almost-reduced prototypes (w,2,0,e) for a direction of
    slope ((n+1)h + lambda)/(w + m*lambda) carrying a simple cylinder
    whose prototype has at least one odd coordinate; m = floor(lambda/h)
    and n runs over the admissibility window subject to the parity
    criterion w = n*m*h mod 4.  Every hit is certified by tracing the
    slope."""
    h = 2
    root = Surd.sqrt(D)
    for e in s_esets(D, h):
        w = (D - e * e) // (4 * h)
        p = validate(w, h, 0, e, D)
        if isinstance(p, str):
            continue
        if require_4w and w % 4 != 0:
            continue
        la = p.lam
        m = (la / h).floor()
        base = (Surd.rational(w, D) + la * m) / 2
        q1y = (Surd.rational(h, D) / la) * base
        q0y = ((la + h) / (la * (m + 2))) * base
        n = 0
        while True:
            mid = la / 2 + Surd.rational(Fraction(n + 1, 2), D) * h
            if not (mid < q1y):
                break
            if (w - n * m * h) % 4 == 0 and q0y < mid:
                e2 = 3 * e - 2 * w + 4 * h + 2 * n * (m + 2) * h
                if e2 * e2 < D and ((D - e2 * e2) // 4) % 4 != 0:
                    slope = (Surd.rational((n + 1) * h, D) + la) \
                        / (Surd.rational(w, D) + la * m)
                    surface = build_prototype_surface(p)
                    dec = trace_direction(surface, slope)
                    target = extract_prototype(surface, dec)
                    assert target.e == e2, (p, n, m, target)
                    assert invariant_class(target) == "A1"
                    move = MoveRecord(kind="traced", params=(m, n),
                                      source=p, target=target,
                                      e_prime=e2, slope=slope)
                    return BridgeRecord(kind="simple-cylinder-search",
                                        via=repr(p),
                                        prototypes=(p, target),
                                        moves=(move,))
            n += 1
    return None


def _switch_web(D: int, stop_when=None) -> list[BridgeRecord]:
    """Bridges from the full Model-B switch web: every Model-B prototype
    contributes the Model-A prototypes reachable from its surface, and
    every reduced/almost-reduced prototype links to its slope-h/lambda
    Model-B decomposition.  ``stop_when`` is an optional callback taking
    the accumulated records and returning True to stop early."""
    out: list[BridgeRecord] = []
    b_links: dict[Prototype, list[Prototype]] = {}
    if exact_sqrt(D) is None:
        for h in (1, 2):
            for e in s_esets(D, h):
                src = reduced_prototype(e, h, D)
                pb, rec = _traced_model_b(src)
                b_links.setdefault(pb, []).append(src)
                out.append(BridgeRecord(kind="model-b", via=repr(src),
                                        prototypes=(src,), moves=(rec,)))
                if stop_when and stop_when(out):
                    return out
    for pb in enumerate_prototypes(D, "B"):
        switches = list(_traced_switches(pb))
        protos = tuple(b_links.get(pb, [])) + tuple(
            t for _, t, _ in switches if classify_model(t) == "A")
        if len(protos) < 2 and not b_links.get(pb):
            continue
        out.append(BridgeRecord(kind="switch-web", via=repr(pb),
                                prototypes=protos,
                                moves=tuple(r for _, _, r in switches)))
        if stop_when and stop_when(out):
            return out
    return out


# -- orbit graph ---------------------------------------------------------

@dataclass(frozen=True)
class OrbitGraph:
    partition: ComponentPartition
    bridges: tuple

    def orbit_count(self) -> int:
        labels = sorted(set(self.partition.labels.values()))
        if not labels:
            return 0
        uf = _UnionFind(labels)
        for br in self.bridges:
            comps = [self.partition.labels[p] for p in br.prototypes
                     if p in self.partition.labels]
            for a, b in zip(comps, comps[1:]):
                uf.union(a, b)
        return len(uf.classes())

    def as_json(self) -> dict:
        return {"D": self.partition.D,
                "pa_components": self.partition.n_components,
                "bridges": [b.as_json() for b in self.bridges],
                "orbits": self.orbit_count()}

    def to_dot(self) -> str:
        lines = [f'graph "orbits_{self.partition.D}" {{']
        for lab in sorted(set(self.partition.labels.values())):
            lines.append(f'  "{lab!r}";')
        for br in self.bridges:
            comps = [self.partition.labels[p] for p in br.prototypes
                     if p in self.partition.labels]
            for a, b in zip(comps, comps[1:]):
                lines.append(f'  "{a!r}" -- "{b!r}" [label="{br.kind}"];')
        lines.append("}")
        return "\n".join(lines)


def orbit_graph(D: int) -> OrbitGraph:
    """The component partition of the Model-A set together with enough
    certified bridges to decide the orbit count."""
    part = component_partition(D, "pa")
    if part.n_components <= 1:
        return OrbitGraph(partition=part, bridges=())

    def connected(bridges) -> bool:
        return OrbitGraph(part, tuple(bridges)).orbit_count() == 1

    bridges: list[BridgeRecord] = []
    try:
        if D % 2 == 0:
            bridges.extend(bridge_even(D))
        elif D % 8 == 1:
            bridges.extend(bridge_1mod8(D))
    except AssertionError:
        pass
    if not connected(bridges):
        bridges.extend(_switch_web(
            D, stop_when=lambda acc: connected(bridges + acc)))
    return OrbitGraph(partition=part, bridges=tuple(bridges))


def orbit_count(D: int) -> int:
    """Number of orbits of eigenform surfaces for the discriminant D:
    0 when the prototype set is empty, otherwise the number of connected
    pieces of the orbit graph."""
    all_protos = enumerate_prototypes(D)
    if not all_protos:
        return 0
    if not enumerate_prototypes(D, "A"):
        # the one discriminant whose only prototype is Model B
        return 1
    return orbit_graph(D).orbit_count()


def square_tiled_orbits(n: int) -> int:
    """Number of orbits of primitive n-square surfaces: n must be even
    with n >= 8 (n = 2d squares for discriminant d^2)."""
    if n < 8 or n % 2 != 0:
        return 0
    return orbit_count((n // 2) ** 2)
