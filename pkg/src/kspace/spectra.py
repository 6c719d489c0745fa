"""The maps V and I, k-spaces on Spi A / Idl A, the Zariski space on Spec A,
and the mechanical property suites that compare them."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement
from typing import Iterable

from .config import Caps, resolve
from .errors import VerificationError
from .ideals import (
    Ideal,
    IdealFamily,
    enumerate_ideals,
    family as ideal_family,
    generate,
    ideal_product,
    ideal_sum,
    intersect,
    intersect_all,
    radical,
)
from .rings import FiniteRing, idempotents, zero_divisors
from .topology import FiniteSpace

__all__ = [
    "V",
    "I",
    "SpectrumTopology",
    "build_kspace",
    "build_zariski",
    "Check",
    "SuiteReport",
    "prop22_suite",
    "kspace_suite",
    "zariski_suite",
    "Table2Report",
    "compare_spaces",
]

INTERPRETATIONS = {
    "V_surjective": "V: Idl A -> C_V is onto its image family C_V; every nonempty member is V(a) for some a in Spi A",
    "I_surjective": "I: P(Spi A) -> Idl A, witnessed by I({a}) = a and I(empty) = A",
    "item3_direction": "checked as V(rad a) strictly inside V(a); the reverse strict inclusion is reported separately",
    "item10_scope": "VI(T) = T is asserted for T in C_V; failures for other T are recorded, not treated as errors",
}


def _element_mask(S: Iterable[int]) -> int:
    m = 0
    for a in S:
        m |= 1 << a
    return m


def V(family: IdealFamily, S) -> frozenset[Ideal]:
    """Members of ``family`` containing ``S`` (an :class:`Ideal` or a set of elements)."""
    m = S.mask if isinstance(S, Ideal) else _element_mask(S)
    return frozenset(s for s in family if s.mask & m == m)


def I(T: Iterable[Ideal], ring: FiniteRing | None = None) -> Ideal:
    """Intersection of a set of ideals; ``I(empty)`` is the unit ideal of ``ring``."""
    T = list(T)
    if not T:
        if ring is None:
            raise ValueError("the ring must be given to intersect an empty family")
        return Ideal(ring, ring.elements())
    return intersect_all(T[0].ring, T)


class SpectrumTopology:
    """A family of ideals topologized by the closed subbase ``{V(a) | a in Idl A}``."""

    def __init__(self, ring: FiniteRing, family: IdealFamily, caps: Caps | None = None):
        self.ring = ring
        self.family = family
        self.caps = resolve(caps)
        self.idl = enumerate_ideals(ring, caps).ideals
        self.points = family.ideals
        self.unit_mask = (1 << ring.size) - 1
        self.v_masks = tuple(self.v_mask(a.mask) for a in self.idl)
        self.space = FiniteSpace.from_masks(self.points, self.v_masks, self.caps)

    @property
    def flavor(self) -> str:
        return self.family.flavor

    def v_mask(self, element_mask: int) -> int:
        out = 0
        for i, s in enumerate(self.points):
            if s.mask & element_mask == element_mask:
                out |= 1 << i
        return out

    def V(self, S) -> frozenset[Ideal]:
        m = S.mask if isinstance(S, Ideal) else _element_mask(S)
        return self.space.subset(self.v_mask(m))

    def i_mask(self, point_mask: int) -> int:
        out = self.unit_mask
        i = 0
        while point_mask:
            if point_mask & 1:
                out &= self.points[i].mask
            point_mask >>= 1
            i += 1
        return out

    def I(self, T: Iterable[Ideal]) -> Ideal:
        return self.ideal(self.i_mask(self.space.mask(T)))

    def ideal(self, element_mask: int) -> Ideal:
        return Ideal(self.ring, (k for k in range(self.ring.size) if element_mask >> k & 1))

    def label(self, p) -> str:
        return str(p)

    def fmt(self, point_mask: int) -> list[str]:
        return [str(self.points[i]) for i in range(len(self.points)) if point_mask >> i & 1]

    def report(self):
        return self.space.report()

    def to_json(self) -> dict:
        out = self.space.to_json(str)
        out["ring"] = self.ring.label
        out["flavor"] = self.flavor
        return out


def build_kspace(ring: FiniteRing, flavor: str = "Spi", caps: Caps | None = None) -> SpectrumTopology:
    if flavor not in ("Spi", "Idl"):
        raise ValueError("k-spaces are built on Spi or Idl")
    return ring.cached(("kspace", flavor, caps),
                       lambda: SpectrumTopology(ring, ideal_family(ring, flavor, caps), caps))


def build_zariski(ring: FiniteRing, caps: Caps | None = None) -> SpectrumTopology:
    def compute():
        top = SpectrumTopology(ring, ideal_family(ring, "Spec", caps), caps)
        basis = set(top.space.subbase_masks)
        for a, b in combinations(basis, 2):
            if a | b not in basis:
                raise VerificationError(
                    f"{ring.label}: V-sets on Spec are not closed under finite unions")
        return top

    return ring.cached(("zariski", caps), compute)


# ---------------------------------------------------------------------------
# suites


@dataclass
class Check:
    name: str
    ok: bool
    checked: int = 0
    kind: str = "expected-true"
    witness: object = None
    expected: object = None
    observed: object = None
    note: str | None = None

    def to_json(self) -> dict:
        out = {"name": self.name, "ok": self.ok, "kind": self.kind, "checked": self.checked}
        for key in ("witness", "expected", "observed", "note"):
            value = getattr(self, key)
            if value is not None:
                out[key] = value
        return out


@dataclass
class ItemResult:
    item: str
    title: str
    checks: list[Check] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        if not all(c.ok for c in self.checks):
            return "fail"
        if any(c.kind == "known-discrepancy" for c in self.checks):
            return "known-discrepancy"
        return "pass"

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self) -> dict:
        return {"item": self.item, "title": self.title, "verdict": self.verdict,
                "checks": [c.to_json() for c in self.checks]}


@dataclass
class SuiteReport:
    ring: str
    suite: str
    items: list[ItemResult]
    header: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(i.verdict != "fail" for i in self.items)

    def item(self, key) -> ItemResult:
        for i in self.items:
            if i.item == str(key):
                return i
        raise KeyError(key)

    def to_json(self) -> dict:
        return {"ring": self.ring, "suite": self.suite, "ok": self.ok, "header": self.header,
                "items": [i.to_json() for i in self.items]}


def _point_subsets(n: int, caps: Caps, rng: random.Random) -> tuple[list[int], bool]:
    full = (1 << n) - 1
    if n <= caps.sample_threshold:
        return list(range(full + 1)), True
    sample = {0, full} | {1 << i for i in range(n)}
    while len(sample) < min(caps.sample_count, full + 1):
        sample.add(rng.getrandbits(n))
    return sorted(sample), False


def _tuples(masks: list[int], k: int, exhaustive: bool, caps: Caps, rng: random.Random):
    if exhaustive:
        return list(combinations_with_replacement(masks, k))
    return [tuple(rng.choice(masks) for _ in range(k)) for _ in range(caps.sample_count)]


def _ideal_str(a: Ideal) -> str:
    return str(a)


def prop22_suite(ring: FiniteRing, caps: Caps | None = None) -> SuiteReport:
    """Check the V/I properties (1)-(11) on Spi A within the configured bounds."""
    caps = resolve(caps)
    rng = random.Random(caps.sample_seed)
    top = build_kspace(ring, "Spi", caps)
    idl = top.idl
    full_ring = top.unit_mask
    zero = Ideal(ring, [ring.zero])
    unit = Ideal(ring, ring.elements())
    spi_full = top.space.full
    n_pts = len(top.points)
    V = {a: top.v_mask(a.mask) for a in idl}
    rad = {a: radical(a) for a in idl}
    cv = set(V.values())
    items: list[ItemResult] = []

    # (1)
    it = ItemResult("1", "V(S) = V(<S>)")
    bad, count = None, 0
    for k in range(caps.max_subset_size + 1):
        for S in combinations(ring.elements(), k):
            count += 1
            if top.v_mask(_element_mask(S)) != top.v_mask(generate(ring, S).mask):
                bad = bad or [ring.element_labels[s] for s in S]
    for a in idl:
        count += 1
        if top.v_mask(_element_mask(a.elements)) != V[a]:
            bad = bad or [ring.element_labels[s] for s in a.elements]
    it.checks.append(Check("element subsets and ideals", bad is None, count, witness=bad))
    items.append(it)

    # (2)
    it = ItemResult("2", "V is order reversing and surjective")
    bad, count = None, 0
    for a in idl:
        for b in idl:
            if a <= b:
                count += 1
                if V[b] & V[a] != V[b]:
                    bad = bad or [str(a), str(b)]
    it.checks.append(Check("order reversing", bad is None, count, witness=bad))
    missing = []
    for m in sorted(cv):
        witnesses = [a for a in idl if V[a] == m and (a.is_proper or m == 0)]
        if not witnesses:
            missing.append(top.fmt(m))
    it.checks.append(Check("onto C_V with witnesses from Spi A (or A for the empty set)",
                           not missing, len(cv), witness=missing or None))
    injective = len(cv) == len(idl)
    it.checks.append(Check("distinct ideals have distinct V-sets", injective, len(idl)))
    items.append(it)

    # (3)
    it = ItemResult("3", "radicals and strict inclusion")
    has_zd = bool(zero_divisors(ring))
    non_radical = [a for a in idl if rad[a] != a]
    biconditional_ok = True
    strict_witness = None
    for a in non_radical:
        strict = V[rad[a]] != V[a] and V[rad[a]] & V[a] == V[rad[a]]
        if strict and strict_witness is None:
            strict_witness = {"a": str(a), "rad_a": str(rad[a]),
                              "V(rad a)": top.fmt(V[rad[a]]), "V(a)": top.fmt(V[a])}
        if strict != has_zd:
            biconditional_ok = False
    it.checks.append(Check("V(rad a) is contained in V(a) for every ideal",
                           all(V[rad[a]] & V[a] == V[rad[a]] for a in idl), len(idl)))
    it.checks.append(Check(
        "for non-radical a: V(rad a) strictly inside V(a) iff nonzero zero divisors exist",
        biconditional_ok, len(non_radical), witness=strict_witness,
        note=f"nonzero zero divisors: {'yes' if has_zd else 'no'}; "
             f"non-radical ideals: {len(non_radical)}"))
    reverse = [str(a) for a in non_radical if V[a] != V[rad[a]] and V[a] & V[rad[a]] == V[a]]
    it.checks.append(Check("reverse strict inclusion V(a) inside V(rad a)", not reverse,
                           len(non_radical), kind="known-discrepancy", expected=False,
                           observed=bool(reverse)))
    items.append(it)

    # (4)
    it = ItemResult("4", "V(a) u V(b) in V(a n b) in V(ab)")
    bad, count = None, 0
    strict1 = strict2 = None
    for a, b in combinations_with_replacement(idl, 2):
        count += 1
        union = V[a] | V[b]
        vi = V[intersect(a, b)]
        vp = V[ideal_product(a, b)]
        if union & vi != union or vi & vp != vi:
            bad = bad or [str(a), str(b)]
        if union != vi and strict1 is None:
            strict1 = {"a": str(a), "b": str(b), "union": top.fmt(union), "V(a n b)": top.fmt(vi)}
        if vi != vp and strict2 is None:
            strict2 = {"a": str(a), "b": str(b), "V(a n b)": top.fmt(vi), "V(ab)": top.fmt(vp)}
    it.checks.append(Check("inclusions for all pairs", bad is None, count, witness=bad))
    it.checks.append(Check("first inclusion strict somewhere", True, count, kind="info",
                           observed=strict1 is not None, witness=strict1))
    it.checks.append(Check("second inclusion strict somewhere", True, count, kind="info",
                           observed=strict2 is not None, witness=strict2))
    items.append(it)

    # (5)
    it = ItemResult("5", "intersection of V(a_i) = V(sum a_i)")
    bad, count = None, 0
    for k in range(1, 4):
        for fam in combinations(idl, k):
            count += 1
            inter = spi_full
            total = fam[0]
            for a in fam:
                inter &= V[a]
            for a in fam[1:]:
                total = ideal_sum(total, a)
            if inter != V[total]:
                bad = bad or [str(a) for a in fam]
    inter = spi_full
    total = zero
    for a in idl:
        inter &= V[a]
        total = ideal_sum(total, a)
    count += 1
    if inter != V[total]:
        bad = bad or ["all ideals"]
    it.checks.append(Check("families of size <= 3 and the full family", bad is None, count,
                           witness=bad))
    items.append(it)

    # (6)
    it = ItemResult("6", "V(a) = Spi A iff a = 0; V(a) empty implies a = A")
    bad = [str(a) for a in idl if (V[a] == spi_full) != (a == zero)]
    it.checks.append(Check("V(a) = Spi A iff a = 0", not bad, len(idl), witness=bad or None))
    bad = [str(a) for a in idl if V[a] == 0 and a != unit]
    it.checks.append(Check("V(a) empty implies a = A", not bad, len(idl), witness=bad or None))
    items.append(it)

    # (7)
    it = ItemResult("7", "b in rad a implies V(rad a) in V(b)")
    bad, count = None, 0
    for a in idl:
        for b in idl:
            if b <= rad[a]:
                count += 1
                if V[rad[a]] & V[b] != V[rad[a]]:
                    bad = bad or [str(a), str(b)]
    it.checks.append(Check("all pairs", bad is None, count, witness=bad))
    items.append(it)

    subsets, exhaustive = _point_subsets(n_pts, caps, rng)
    i_of = {T: top.i_mask(T) for T in subsets}

    def I_mask(T):
        if T not in i_of:
            i_of[T] = top.i_mask(T)
        return i_of[T]

    # (8)
    it = ItemResult("8", "I is order reversing and surjective")
    bad, count = None, 0
    for T, U in _tuples(subsets, 2, exhaustive, caps, rng):
        small, big = (T, U) if T & U == T else (U, T) if U & T == U else (None, None)
        if small is None:
            continue
        count += 1
        if I_mask(big) & I_mask(small) != I_mask(big):
            bad = bad or [top.fmt(small), top.fmt(big)]
    it.checks.append(Check("order reversing", bad is None, count, witness=bad))
    bad = [str(a) for i, a in enumerate(top.points) if I_mask(1 << i) != a.mask]
    if I_mask(0) != full_ring:
        bad.append("I(empty) != A")
    it.checks.append(Check("onto Idl A: I({a}) = a and I(empty) = A", not bad, len(idl),
                           witness=bad or None))
    items.append(it)

    # (9)
    it = ItemResult("9", "I(empty) = A and I(union) = intersection of I")
    it.checks.append(Check("I(empty) = A", I_mask(0) == full_ring, 1))
    bad, count = None, 0
    for k in (2, 3):
        for fam in _tuples(subsets, k, exhaustive, caps, rng):
            count += 1
            union = 0
            inter = full_ring
            for T in fam:
                union |= T
                inter &= I_mask(T)
            if I_mask(union) != inter:
                bad = bad or [top.fmt(T) for T in fam]
    it.checks.append(Check("pairs and triples of point subsets", bad is None, count,
                           witness=bad, note="exhaustive" if exhaustive else "sampled"))
    items.append(it)

    # (10)
    it = ItemResult("10", "IV(a) contains a; VI(T) = T")
    bad = [str(a) for a in idl if top.i_mask(V[a]) & a.mask != a.mask]
    it.checks.append(Check("IV(a) contains a", not bad, len(idl), witness=bad or None))
    bad = [top.fmt(T) for T in sorted(cv) if top.v_mask(I_mask(T)) != T]
    it.checks.append(Check("VI(T) = T for T in C_V", not bad, len(cv), witness=bad or None))
    bad = [str(a) for a in idl if top.v_mask(top.i_mask(V[a])) != V[a]]
    it.checks.append(Check("VIV = V", not bad, len(idl), witness=bad or None))
    failures = [T for T in subsets if top.v_mask(I_mask(T)) != T]
    outside = [T for T in subsets if T not in cv]
    it.checks.append(Check(
        "VI(T) = T for arbitrary T", failures == outside, len(subsets),
        kind="known-discrepancy", expected="fails exactly for T outside C_V",
        observed="fails exactly for T outside C_V" if failures == outside else "mismatch",
        witness=[{"T": top.fmt(T), "VI(T)": top.fmt(top.v_mask(I_mask(T)))} for T in failures[:8]],
        note=f"{len(failures)} counterexamples among {len(subsets)} subsets "
             f"({'exhaustive' if exhaustive else 'sampled'})"))
    items.append(it)

    # (11)
    it = ItemResult("11", "C_V = C_VI")
    cvi = {top.v_mask(I_mask(T)) for T in subsets}
    # every V(a) is VI({a}) for proper a, and the empty set is VI(empty)
    constructive = {top.v_mask(I_mask(1 << i)) for i in range(n_pts)} | {top.v_mask(I_mask(0))}
    if exhaustive:
        ok = cvi == cv
    else:
        ok = cvi <= cv and constructive == cv
    it.checks.append(Check("families coincide", ok, len(subsets),
                           note="exhaustive" if exhaustive else "sampled + constructive"))
    items.append(it)

    header = dict(INTERPRETATIONS)
    header["points"] = len(top.points)
    header["ideals"] = len(idl)
    header["subset_quantification"] = "exhaustive" if exhaustive else "sampled"
    return SuiteReport(ring.label, "V/I properties", items, header)


def kspace_suite(ring: FiniteRing, caps: Caps | None = None) -> SuiteReport:
    """Topological claims about the k-space Spi A (and the ambient Idl A)."""
    caps = resolve(caps)
    top = build_kspace(ring, "Spi", caps)
    space = top.space
    rep = space.report()
    items = []

    it = ItemResult("T0", "T0")
    it.checks.append(Check("T0", rep.t0, len(top.points), witness=_w(rep, "t0")))
    items.append(it)

    it = ItemResult("quasi-compact", "quasi-compact via the subbase")
    fip = rep.fip
    sums_ok = True
    if not fip.vacuous and fip.holds:
        # the witnessing V-sets come from ideals summing to the unit ideal
        by_mask = dict(zip(top.v_masks, top.idl))
        total = Ideal(ring, [ring.zero])
        for a in (by_mask[space.subbase_masks[i]] for i in fip.witness):
            total = ideal_sum(total, a)
        sums_ok = not total.is_proper
    proper_sum = Ideal(ring, [ring.zero])
    for a in top.points:
        proper_sum = ideal_sum(proper_sum, a)
    vacuous_ok = fip.vacuous == proper_sum.is_proper
    it.checks.append(Check("finite subfamily with empty intersection", fip.holds and sums_ok,
                           len(space.subbase_masks), witness=fip.to_json()))
    it.checks.append(Check("vacuous exactly when the proper ideals sum to a proper ideal",
                           vacuous_ok, 1))
    items.append(it)

    it = ItemResult("irreducible", "nonempty subbasic closed sets are irreducible, and conversely")
    bad = [str(a) for a in top.points if not space.irreducibility_mask(top.v_mask(a.mask))[0]]
    it.checks.append(Check("every nonempty V(a) is irreducible", not bad, len(top.points),
                           witness=bad or None))
    vsets = {top.v_mask(a.mask) for a in top.points}
    bad = [top.fmt(k) for k in space.irreducible_closed_masks if k not in vsets]
    it.checks.append(Check("every nonempty irreducible closed set is some V(a), a in Spi A",
                           not bad, len(space.irreducible_closed_masks), witness=bad or None))
    items.append(it)

    it = ItemResult("connected", "Spi A is connected")
    it.checks.append(Check("connected", rep.connected, 1, witness=_w(rep, "connected")))
    it.checks.append(Check("Spi A = V(0) is irreducible",
                           space.irreducibility_mask(space.full)[0], 1))
    items.append(it)

    it = ItemResult("sober", "sober with generic point of V(a) equal to a")
    it.checks.append(Check("sober", rep.sober, len(rep.irreducible_closed_sets),
                           witness=_w(rep, "sober")))
    bad = []
    for i, a in enumerate(top.points):
        if space.point_closures[i] != top.v_mask(a.mask):
            bad.append(str(a))
        elif space.generic_points_mask(top.v_mask(a.mask)) != [i]:
            bad.append(str(a))
    it.checks.append(Check("Cl{a} = V(a) with a the unique generic point", not bad,
                           len(top.points), witness=bad or None))
    items.append(it)

    it = ItemResult("spectral", "spectral")
    it.checks.append(Check("spectral (direct route)", rep.spectral_direct, 1))
    it.checks.append(Check("spectral (finite T0 + sober route)", rep.spectral_finite, 1))
    it.checks.append(Check("routes agree", rep.spectral_direct == rep.spectral_finite, 1))
    items.append(it)

    it = ItemResult("Idl", "Spi A as an open subspace of the spectral space Idl A")
    idl_top = build_kspace(ring, "Idl", caps)
    ispace = idl_top.space
    unit = Ideal(ring, ring.elements())
    ui = idl_top.points.index(unit)
    va = idl_top.v_mask(unit.mask)
    it.checks.append(Check("{A} = V(A) = Cl({A})",
                           va == 1 << ui and ispace.closure_mask(1 << ui) == 1 << ui, 1))
    it.checks.append(Check("Spi A is open in Idl A", ispace.is_open(top.points), 1))
    sub = ispace.subspace(top.points)
    same = {sub.mask(sub.subset(m)) for m in sub.closed_masks} == \
        {sub.mask(space.subset(m)) for m in space.closed_masks}
    it.checks.append(Check("subspace topology from Idl A equals the k-topology", same, 1))
    irep = ispace.report()
    it.checks.append(Check("Idl A is spectral", irep.spectral, 1))
    items.append(it)

    return SuiteReport(ring.label, "k-space topology", items,
                       {"points": len(top.points), "closed_sets": len(space.closed_masks),
                        "subbasic_sets": len(space.subbase_masks)})


def _w(rep, key):
    v = rep.witness.get(key)
    if v is None:
        return None
    return rep.to_json()["witness"][key]


def zariski_suite(ring: FiniteRing, caps: Caps | None = None) -> SuiteReport:
    """Equalities that hold on Spec A, and the idempotent criterion for connectedness."""
    caps = resolve(caps)
    top = build_zariski(ring, caps)
    idl = top.idl
    V = {a: top.v_mask(a.mask) for a in idl}
    items = []

    it = ItemResult("unions", "V(a) u V(b) = V(a n b) = V(ab)")
    bad = None
    pairs = list(combinations_with_replacement(idl, 2))
    for a, b in pairs:
        if not (V[a] | V[b] == V[intersect(a, b)] == V[ideal_product(a, b)]):
            bad = bad or [str(a), str(b)]
    it.checks.append(Check("all pairs", bad is None, len(pairs), witness=bad))
    basis = set(top.space.subbase_masks)
    it.checks.append(Check("V-sets closed under finite unions",
                           all(a | b in basis for a in basis for b in basis), len(basis)))
    items.append(it)

    it = ItemResult("radical", "V(a) = V(rad a) and IV(a) = rad a")
    bad = [str(a) for a in idl if V[a] != V[radical(a)]]
    it.checks.append(Check("V(a) = V(rad a)", not bad, len(idl), witness=bad or None))
    bad = [str(a) for a in idl if top.i_mask(V[a]) != radical(a).mask]
    it.checks.append(Check("IV(a) = rad a", not bad, len(idl), witness=bad or None))
    items.append(it)

    rep = top.report()
    it = ItemResult("connected", "Spec A connected iff no nontrivial idempotents")
    nontrivial = sorted(idempotents(ring) - {ring.zero, ring.one})
    it.checks.append(Check("connectedness matches idempotents", rep.connected == (not nontrivial), 1,
                           observed={"connected": rep.connected,
                                     "nontrivial_idempotents": [ring.element_labels[e] for e in nontrivial]},
                           witness=_w(rep, "connected")))
    items.append(it)

    it = ItemResult("topology", "Zariski space invariants")
    it.checks.append(Check("T0", rep.t0, 1))
    it.checks.append(Check("sober", rep.sober, 1))
    it.checks.append(Check("spectral (both routes)", rep.spectral_direct and rep.spectral_finite, 1))
    primes = {top.v_mask(p.mask) for p in top.points}
    it.checks.append(Check("irreducible closed sets are exactly V(p), p prime",
                           set(top.space.irreducible_closed_masks) == primes, len(primes)))
    spi_top = build_kspace(ring, "Spi", caps)
    sub = spi_top.space.subspace(top.points)
    same = {sub.mask(sub.subset(m)) for m in sub.closed_masks} == set(top.space.closed_masks)
    it.checks.append(Check("k-topology restricted to Spec A is the Zariski topology", same, 1))
    items.append(it)

    return SuiteReport(ring.label, "Zariski contrast", items, {"points": len(top.points)})


# ---------------------------------------------------------------------------
# side-by-side comparison


@dataclass
class Table2Report:
    ring: str
    rows: list[tuple[str, str, str]]
    data: dict

    def to_json(self) -> dict:
        return {"ring": self.ring,
                "rows": [{"row": r, "zariski": z, "kspace": k} for r, z, k in self.rows],
                "data": self.data}

    def to_text(self) -> str:
        header = ("", "Zariski space (Spec A)", "k-space (Spi A)")
        rows = [header] + list(self.rows)
        widths = [max(len(r[i]) for r in rows) for i in range(3)]
        lines = [f"{self.ring}"]
        sep = "-+-".join("-" * w for w in widths)
        for n, r in enumerate(rows):
            lines.append(" | ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
            if n == 0:
                lines.append(sep)
        return "\n".join(lines) + "\n"


def _yes(b: bool) -> str:
    return "yes" if b else "no"


def compare_spaces(ring: FiniteRing, caps: Caps | None = None) -> Table2Report:
    caps = resolve(caps)
    z = build_zariski(ring, caps)
    k = build_kspace(ring, "Spi", caps)
    idl = k.idl
    zr, kr = z.report(), k.report()
    pairs = list(combinations_with_replacement(idl, 2))

    def inclusion_stats(top):
        eq1 = eq2 = 0
        for a, b in pairs:
            union = top.v_mask(a.mask) | top.v_mask(b.mask)
            vi = top.v_mask(intersect(a, b).mask)
            vp = top.v_mask(ideal_product(a, b).mask)
            eq1 += union == vi
            eq2 += vi == vp
        return eq1, eq2

    z1, z2 = inclusion_stats(z)
    k1, k2 = inclusion_stats(k)
    n = len(pairs)
    zrad = sum(z.v_mask(a.mask) == z.v_mask(radical(a).mask) for a in idl)
    krad_strict = [str(a) for a in idl if k.v_mask(a.mask) != k.v_mask(radical(a).mask)]
    iv_z = {str(a): str(z.ideal(z.i_mask(z.v_mask(a.mask)))) for a in idl}
    iv_k = {str(a): str(k.ideal(k.i_mask(k.v_mask(a.mask)))) for a in idl}
    iv_z_rad = sum(z.i_mask(z.v_mask(a.mask)) == radical(a).mask for a in idl)
    iv_k_eq = sum(k.i_mask(k.v_mask(a.mask)) == a.mask for a in idl)
    nontrivial = sorted(idempotents(ring) - {ring.zero, ring.one})
    k_irr = set(k.space.irreducible_closed_masks)
    k_sub = {k.v_mask(a.mask) for a in k.points}
    z_irr = set(z.space.irreducible_closed_masks)
    z_primes = {z.v_mask(p.mask) for p in z.points}

    def names(fam):
        return "[" + ", ".join(str(a) for a in fam) + "]"

    rows = [
        ("points", f"prime ideals {names(z.points)}", f"proper ideals {names(k.points)}"),
        ("V(a) u V(b) vs V(a n b) vs V(ab)",
         f"= and = on {min(z1, z2)}/{n} pairs",
         f"⊆ ⊆; first strict on {n - k1}/{n}, second strict on {n - k2}/{n}"),
        ("V(a) vs V(rad a)", f"= on {zrad}/{len(idl)} ideals",
         f"⊇; strict for {len(krad_strict)}/{len(idl)} ideals"),
        ("IV(a)", f"= rad a on {iv_z_rad}/{len(idl)} ideals",
         f"⊇ a; equal to a on {iv_k_eq}/{len(idl)} ideals"),
        ("topology", f"Zariski, {len(z.space.closed_masks)} closed sets",
         f"k-topology, {len(k.space.closed_masks)} closed sets"),
        ("compact and T0", _yes(zr.quasi_compact and zr.t0), _yes(kr.quasi_compact and kr.t0)),
        ("irreducible closed sets",
         f"V(p), p prime: {_yes(z_irr == z_primes)} ({len(z_irr)})",
         f"nonempty subbasic: {_yes(k_irr == k_sub)} ({len(k_irr)})"),
        ("sober", _yes(zr.sober), _yes(kr.sober)),
        ("spectral", _yes(zr.spectral), _yes(kr.spectral)),
        ("connected",
         f"{_yes(zr.connected)} (nontrivial idempotents: "
         f"{', '.join(ring.element_labels[e] for e in nontrivial) or 'none'})",
         _yes(kr.connected)),
    ]
    data = {
        "spec_connected": zr.connected,
        "spi_connected": kr.connected,
        "nontrivial_idempotents": [ring.element_labels[e] for e in nontrivial],
        "IV_zariski": iv_z,
        "IV_kspace": iv_k,
        "V_radical_strict_on_spi": krad_strict,
        "pairs": n,
        "zariski_union_equalities": min(z1, z2),
        "kspace_first_equalities": k1,
        "kspace_second_equalities": k2,
    }
    return Table2Report(ring.label, rows, data)
