"""Ring homomorphisms, the induced maps on ideal spaces, and localization.

A homomorphism ``phi: A -> B`` pulls ideals back, ``b -> phi^-1(b)``; the
certificates below check what this pullback does to the k-topology.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from .config import Caps
from .errors import DomainError, VerificationError
from .ideals import (
    Ideal,
    enumerate_ideals,
    generate,
    intersect_all,
    quotient_ring,
    radical,
    spi,
)
from .rings import FiniteRing, units
from .spectra import Check, build_kspace, build_zariski
from .topology import is_closed_map, is_continuous, is_homeomorphism

__all__ = [
    "RingHom",
    "MultiplicativeSet",
    "Certificate",
    "find_homomorphisms",
    "find_isomorphism",
    "pullback",
    "continuity_check",
    "surjection_homeo_check",
    "density_check",
    "localize",
    "universal_property_check",
    "localization_embedding_check",
    "quotient_corollary_check",
    "nilradical_check",
]


class RingHom:
    """A unital ring homomorphism given by its full element map.

    With ``check=True`` (the default) preservation of 0, 1, sums and products
    is verified on every pair of elements.
    """

    def __init__(self, source: FiniteRing, target: FiniteRing, mapping: Sequence[int],
                 check: bool = True):
        self.source = source
        self.target = target
        self.map = tuple(int(v) for v in mapping)
        if len(self.map) != source.size or any(not 0 <= v < target.size for v in self.map):
            raise DomainError("mapping must send every source element to a target element")
        if check:
            problem = self._violation()
            if problem:
                raise DomainError(f"not a ring homomorphism {source.label} -> {target.label}: {problem}")

    def _violation(self) -> str | None:
        A, B, f = self.source, self.target, np.array(self.map)
        if f[A.zero] != B.zero:
            return "0 is not sent to 0"
        if f[A.one] != B.one:
            return f"1 is sent to {B.element_labels[f[A.one]]}"
        for name, sa, sb in (("+", A.add_table, B.add_table), ("*", A.mul_table, B.mul_table)):
            bad = np.argwhere(f[sa] != sb[f[:, None], f[None, :]])
            if len(bad):
                a, b = bad[0]
                la, lb = A.element_labels[a], A.element_labels[b]
                return f"{name} is not preserved at ({la}, {lb})"
        return None

    @classmethod
    def identity(cls, ring: FiniteRing) -> RingHom:
        return cls(ring, ring, range(ring.size), check=False)

    @classmethod
    def from_generator_images(cls, source: FiniteRing, target: FiniteRing,
                              images: Sequence[int]) -> RingHom:
        """The homomorphism sending ``source.generators()`` to ``images``."""
        gens = source.generators()
        if len(images) != len(gens):
            labels = [source.element_labels[g] for g in gens]
            raise DomainError(f"{source.label} needs images for {len(gens)} generator(s) {labels}")
        mapping = _extend(source, target, dict(zip(gens, images)))
        if mapping is None:
            raise DomainError("generator images do not extend to a homomorphism")
        return cls(source, target, mapping)

    def __call__(self, a: int) -> int:
        return self.map[a]

    def __eq__(self, other):
        if not isinstance(other, RingHom):
            return NotImplemented
        return (self.map == other.map and self.source == other.source
                and self.target == other.target)

    def __hash__(self):
        return hash(self.map)

    def compose(self, inner: RingHom) -> RingHom:
        """``self o inner``."""
        if inner.target != self.source:
            raise DomainError("maps are not composable")
        return RingHom(inner.source, self.target, [self.map[v] for v in inner.map], check=False)

    @cached_property
    def kernel(self) -> Ideal:
        return Ideal(self.source, (a for a, v in enumerate(self.map) if v == self.target.zero))

    @cached_property
    def image(self) -> frozenset[int]:
        return frozenset(self.map)

    @property
    def is_surjective(self) -> bool:
        return len(self.image) == self.target.size

    @property
    def is_injective(self) -> bool:
        return len(self.image) == self.source.size

    def preimage(self, ideal: Ideal) -> Ideal:
        return Ideal(self.source, (a for a, v in enumerate(self.map) if v in ideal.members))

    def image_ideal(self, ideal: Ideal) -> Ideal:
        """``<phi(a)>``, the ideal of the target generated by the image."""
        return generate(self.target, {self.map[a] for a in ideal.elements})

    def __str__(self):
        A, B = self.source, self.target
        shown = ", ".join(f"{A.element_labels[g]}->{B.element_labels[self.map[g]]}"
                          for g in A.generators())
        return f"{A.label} -> {B.label}" + (f" [{shown}]" if shown else "")

    def __repr__(self):
        return f"RingHom({self})"

    def to_json(self) -> dict:
        A, B = self.source, self.target
        return {
            "source": A.label,
            "target": B.label,
            "map": {A.element_labels[a]: B.element_labels[v] for a, v in enumerate(self.map)},
            "kernel": str(self.kernel),
            "surjective": self.is_surjective,
            "injective": self.is_injective,
        }


def _extend(A: FiniteRing, B: FiniteRing, assignment: dict[int, int]) -> list[int] | None:
    """Propagate an assignment through sums and products; None on a clash."""
    m = {A.zero: B.zero, A.one: B.one}
    for a, v in assignment.items():
        if m.setdefault(a, v) != v:
            return None
    frontier = list(m)
    while frontier:
        new = []
        known = list(m.items())
        for a in frontier:
            fa = m[a]
            add_a, mul_a = A._add[a], A._mul[a]
            add_f, mul_f = B._add[fa], B._mul[fa]
            for b, fb in known:
                for c, fc in ((add_a[b], add_f[fb]), (mul_a[b], mul_f[fb])):
                    got = m.get(c)
                    if got is None:
                        m[c] = fc
                        new.append(c)
                    elif got != fc:
                        return None
        frontier = new
    if len(m) != A.size:
        return None
    return [m[a] for a in range(A.size)]


def find_homomorphisms(A: FiniteRing, B: FiniteRing) -> list[RingHom]:
    """Every unital homomorphism ``A -> B``, by choosing images of generators."""
    key = (B, B.label)
    cache = A.cached("homs", dict)
    if key in cache:
        return cache[key]
    gens = A.generators()
    found = {}
    for images in product(range(B.size), repeat=len(gens)):
        mapping = _extend(A, B, dict(zip(gens, images)))
        if mapping is None:
            continue
        hom = RingHom(A, B, mapping)
        found.setdefault(hom.map, hom)
    result = cache[key] = [found[k] for k in sorted(found)]
    return result


def find_isomorphism(A: FiniteRing, B: FiniteRing) -> RingHom | None:
    if A.size != B.size:
        return None
    for hom in find_homomorphisms(A, B):
        if hom.is_injective:
            return hom
    return None


def pullback(phi: RingHom, caps: Caps | None = None) -> dict[Ideal, Ideal]:
    """``phi*``: each proper ideal of the target to its preimage."""
    out = {}
    for b in spi(phi.target, caps):
        a = phi.preimage(b)
        if not a.is_proper:
            raise VerificationError(f"preimage of {b} is not proper")
        out[b] = a
    return out


# ---------------------------------------------------------------------------
# certificates


@dataclass
class Certificate:
    name: str
    subject: str
    checks: list[Check] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self) -> dict:
        return {"certificate": self.name, "subject": self.subject, "ok": self.ok,
                "checks": [c.to_json() for c in self.checks], "data": self.data}


def _names(ideals: Iterable[Ideal]) -> list[str]:
    return [str(i) for i in sorted(ideals, key=Ideal.sort_key)]


def _pairs(f: dict) -> list[list[str]]:
    return [[str(b), str(a)] for b, a in sorted(f.items(), key=lambda kv: kv[0].sort_key())]


def continuity_check(phi: RingHom, caps: Caps | None = None) -> Certificate:
    """``(phi*)^-1(V(a)) = V(<phi(a)>)`` for every ideal ``a`` of the source,
    plus a direct continuity test against the subbase."""
    f = pullback(phi, caps)
    X = build_kspace(phi.target, "Spi", caps)
    Y = build_kspace(phi.source, "Spi", caps)
    bad = []
    idl = enumerate_ideals(phi.source, caps)
    for a in idl:
        lhs = frozenset(b for b, pa in f.items() if a <= pa)
        rhs = X.V(phi.image_ideal(a))
        if lhs != rhs:
            bad.append(str(a))
    cont, witness = is_continuous(f, X.space, Y.space)
    checks = [
        Check("pullback lands in Spi of the source", True, len(f)),
        Check("preimage of V(a) equals V(<phi(a)>)", not bad, len(idl), witness=bad[:8] or None),
        Check("preimages of subbasic closed sets are closed", cont, len(Y.space.subbase_masks) + 1,
              witness=_names(witness) if witness is not None else None),
    ]
    return Certificate("continuity", str(phi), checks, {"pullback": _pairs(f)})


def surjection_homeo_check(phi: RingHom, caps: Caps | None = None) -> Certificate:
    """For surjective ``phi``: ``phi*`` is a homeomorphism onto ``V(ker phi)``."""
    if not phi.is_surjective:
        raise DomainError(f"{phi} is not surjective")
    f = pullback(phi, caps)
    X = build_kspace(phi.target, "Spi", caps)
    Y = build_kspace(phi.source, "Spi", caps)
    K = phi.kernel
    VK = Y.V(K)
    image = frozenset(f.values())
    injective = len(image) == len(f)
    sub = Y.space.subspace(VK)
    inverse = {a: b for b, a in f.items()}
    homeo = injective and image == VK and is_homeomorphism(f, X.space, sub)
    closed_whole, w1 = is_closed_map(f, X.space, Y.space)
    inv_closed, w2 = is_closed_map(inverse, sub, X.space) if image == VK else (False, None)

    idl_t = enumerate_ideals(phi.target, caps)
    bad_image, bad_closure = [], []
    for b in idl_t:
        pre = phi.preimage(b)
        img = frozenset(f[p] for p in X.V(b))
        if img != Y.V(pre):
            bad_image.append(str(b))
        if Y.space.closure(img) != Y.V(pre):
            bad_closure.append(str(b))
    bad_round = [str(b) for b in f if phi.image_ideal(f[b]) != b]

    checks = [
        Check("pullback is injective", injective, len(f)),
        Check("image equals V(ker phi)", image == VK, len(VK),
              expected=_names(VK), observed=_names(image)),
        Check("homeomorphism onto the subspace V(ker phi)", homeo, len(f)),
        Check("pullback maps closed sets to closed sets", closed_whole,
              len(X.space.closed_masks), witness=_names(w1) if w1 else None),
        Check("inverse maps closed sets to closed sets", inv_closed,
              len(sub.closed_masks), witness=_names(w2) if w2 else None),
        Check("phi*(V(b)) = V(phi^-1(b))", not bad_image, len(idl_t), witness=bad_image[:8] or None),
        Check("Cl(phi*(V(b))) = V(phi^-1(b))", not bad_closure, len(idl_t),
              witness=bad_closure[:8] or None),
        Check("phi(phi*(b)) = b", not bad_round, len(f), witness=bad_round[:8] or None),
    ]
    return Certificate("surjection-homeomorphism", str(phi), checks,
                       {"kernel": str(K), "bijection": _pairs(f), "image": _names(image)})


def density_check(phi: RingHom, caps: Caps | None = None) -> Certificate:
    """``phi*(Spi B)`` is dense in ``Spi A`` iff ``ker phi`` lies in every proper ideal."""
    f = pullback(phi, caps)
    Y = build_kspace(phi.source, "Spi", caps)
    image = frozenset(f.values())
    closure = Y.space.closure(image)
    dense = closure == frozenset(Y.points)
    meet = intersect_all(phi.source, spi(phi.source, caps))
    contained = phi.kernel <= meet
    checks = [
        Check("dense iff ker phi inside the meet of Spi", dense == contained, 1,
              observed={"dense": dense, "kernel_contained": contained}),
        Check("closure of the image equals V(ker phi)", closure == Y.V(phi.kernel), 1),
    ]
    # b -> phi(phi^-1(b)) recovers b only inside the image of phi
    if phi.is_surjective:
        bad = [str(b) for b in f if phi.image_ideal(f[b]) != b]
        checks.append(Check("phi(phi*(b)) = b", not bad, len(f), witness=bad[:8] or None))
    else:
        bad = [str(b) for b in f
               if {phi(a) for a in f[b].elements} != b.members & phi.image]
        checks.append(Check("phi(phi*(b)) = b meet im(phi)", not bad, len(f),
                            witness=bad[:8] or None))
    data = {"dense": dense, "kernel": str(phi.kernel), "meet": str(meet),
            "closure": _names(closure)}
    return Certificate("density", str(phi), checks, data)


# ---------------------------------------------------------------------------
# localization


class MultiplicativeSet:
    """A multiplicatively closed subset containing 1 and not containing 0."""

    def __init__(self, ring: FiniteRing, members: Iterable[int]):
        self.ring = ring
        self.members = frozenset(int(s) for s in members)
        if ring.one not in self.members:
            raise DomainError("a multiplicative set must contain 1")
        if ring.zero in self.members:
            raise DomainError("a multiplicative set containing 0 localizes to the zero ring")
        for s in self.members:
            for t in self.members:
                if ring._mul[s][t] not in self.members:
                    raise DomainError(
                        f"not closed under multiplication: "
                        f"{ring.element_labels[s]}*{ring.element_labels[t]}")

    @classmethod
    def generated_by(cls, ring: FiniteRing, gens: Iterable[int]) -> MultiplicativeSet:
        members = {ring.one}
        frontier = list(gens)
        while frontier:
            s = frontier.pop()
            if s in members:
                continue
            members.add(s)
            frontier.extend(ring._mul[s][t] for t in list(members))
        return cls(ring, members)

    def __contains__(self, a):
        return a in self.members

    def __iter__(self):
        return iter(sorted(self.members))

    def __str__(self):
        return "{" + ",".join(self.ring.element_labels[s] for s in sorted(self.members)) + "}"


def localize(ring: FiniteRing, S: MultiplicativeSet) -> tuple[FiniteRing, RingHom]:
    """``A_S`` realized as ``A / {a | sa = 0 for some s in S}``."""
    if S.ring != ring:
        raise DomainError("multiplicative set belongs to another ring")
    killed = Ideal(ring, (a for a in ring.elements()
                          if any(ring._mul[s][a] == ring.zero for s in S.members)))
    # sums of killed elements are killed by the product of their witnesses
    local, pi = quotient_ring(ring, killed, label=f"{ring.label}_{S}")
    inverted = units(local)
    for s in S.members:
        if pi(s) not in inverted:
            raise VerificationError(f"{ring.element_labels[s]} does not become a unit in {local.label}")
    return local, pi


def universal_property_check(ring: FiniteRing, S: MultiplicativeSet,
                             targets: Iterable[FiniteRing]) -> Certificate:
    """Every hom inverting S factors uniquely through ``A -> A_S``; no other hom factors."""
    local, pi = localize(ring, S)
    checks, data = [], {}
    for B in targets:
        unit_set = units(B)
        via = find_homomorphisms(local, B)
        inverting = factoring = 0
        failures = []
        homs = find_homomorphisms(ring, B)
        for psi in homs:
            inverts = all(psi(s) in unit_set for s in S.members)
            count = sum(1 for chi in via if chi.compose(pi) == psi)
            inverting += inverts
            factoring += count == 1
            if count != (1 if inverts else 0):
                failures.append({"hom": str(psi), "factorizations": count, "inverts_S": inverts})
        checks.append(Check(f"factorization through {local.label} into {B.label}",
                            not failures, len(homs), witness=failures[:4] or None))
        data[B.label] = {"homs": len(homs), "inverting": inverting, "factoring": factoring}
    return Certificate("localization-universal-property", f"{ring.label} at S={S}", checks, data)


def localization_embedding_check(ring: FiniteRing, S: MultiplicativeSet,
                                 caps: Caps | None = None) -> Certificate:
    """``Spi(A_S) -> (Spi A)_S`` is closed, continuous and injective.

    ``(Spi A)_S`` (proper ideals missing S) carries the subspace topology.
    """
    local, pi = localize(ring, S)
    f = pullback(pi, caps)
    X = build_kspace(local, "Spi", caps)
    Y = build_kspace(ring, "Spi", caps)
    avoid = [p for p in Y.points if not p.members & S.members]
    sub = Y.space.subspace(avoid)
    image = frozenset(f.values())
    inside = image <= frozenset(avoid)
    checks = [
        Check("image avoids S", inside, len(f), observed=_names(image)),
        Check("pullback is injective", len(image) == len(f), len(f)),
    ]
    if inside:
        cont, w1 = is_continuous(f, X.space, sub)
        closed, w2 = is_closed_map(f, X.space, sub)
    else:
        cont = closed = False
        w1 = w2 = None
    checks += [
        Check("continuous into (Spi A)_S", cont, len(sub.subbase_masks) + 1,
              witness=_names(w1) if w1 else None),
        Check("closed into (Spi A)_S", closed, len(X.space.closed_masks),
              witness=_names(w2) if w2 else None),
    ]
    data = {"localization": local.label, "kernel": str(pi.kernel), "mapping": _pairs(f),
            "subspace": _names(avoid)}
    return Certificate("localization-embedding", f"{ring.label} at S={S}", checks, data)


def quotient_corollary_check(ring: FiniteRing, ideal: Ideal, caps: Caps | None = None) -> Certificate:
    """``Spi(A/a)`` is homeomorphic to the closed subspace ``V(a)`` of ``Spi A``."""
    if not ideal.is_proper:
        raise DomainError("the ideal must be proper")
    quotient, pi = quotient_ring(ring, ideal)
    cert = surjection_homeo_check(pi, caps)
    Y = build_kspace(ring, "Spi", caps)
    closed = Y.space.is_closed(Y.V(ideal))
    checks = [Check("kernel of A -> A/a is a", pi.kernel == ideal, 1),
              Check("V(a) is closed in Spi A", closed, 1), *cert.checks]
    return Certificate("quotient-corollary", f"{ring.label} / {ideal}", checks,
                       {"quotient": quotient.label, **cert.data})


def nilradical_check(ring: FiniteRing, caps: Caps | None = None) -> Certificate:
    """``Spec A`` and ``Spec(A/N)`` are homeomorphic, N the nilradical."""
    N = radical(Ideal(ring, [ring.zero]))
    quotient, pi = quotient_ring(ring, N)
    X = build_zariski(quotient, caps)
    Y = build_zariski(ring, caps)
    f = {p: pi.preimage(p) for p in X.points}
    lands = all(a in set(Y.points) for a in f.values())
    homeo = lands and is_homeomorphism(f, X.space, Y.space)
    checks = [Check("preimages of primes are prime", lands, len(f)),
              Check("Spec(A/N) -> Spec A is a homeomorphism", homeo, len(f))]
    return Certificate("nilradical-quotient", ring.label, checks,
                       {"nilradical": str(N), "mapping": _pairs(f)})
