"""Ideals of finite rings and the lattices Idl, Spi, Spec and Spm."""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Iterable

import numpy as np

from .config import Caps, resolve
from .errors import DomainError, ResourceLimitError
from .rings import FiniteRing

__all__ = [
    "Ideal",
    "IdealFamily",
    "FLAVORS",
    "is_ideal",
    "generate",
    "principal",
    "ideal_sum",
    "ideal_product",
    "intersect",
    "radical",
    "enumerate_ideals",
    "spi",
    "spec",
    "spm",
    "family",
    "quotient_ring",
]

FLAVORS = ("Idl", "Spi", "Spec", "Spm")


def _mask(members: Iterable[int]) -> int:
    m = 0
    for a in members:
        m |= 1 << a
    return m


class Ideal:
    """An ideal, stored as its fully materialized member set.

    Equality is set equality within the same ring.  ``check=True`` verifies
    the closure laws and raises :class:`DomainError` if they fail.
    """

    __slots__ = ("ring", "members", "mask", "elements")

    def __init__(self, ring: FiniteRing, members: Iterable[int], check: bool = False):
        self.ring = ring
        self.members = frozenset(int(a) for a in members)
        self.elements = tuple(sorted(self.members))
        self.mask = _mask(self.members)
        if check and not is_ideal(ring, self.members):
            raise DomainError(f"{sorted(self.members)} is not an ideal of {ring.label}")

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def is_proper(self) -> bool:
        return self.ring.one not in self.members

    @property
    def is_zero(self) -> bool:
        return self.members == {self.ring.zero}

    def sort_key(self):
        return (len(self.elements), self.elements)

    def __contains__(self, a) -> bool:
        return a in self.members

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __le__(self, other: Ideal) -> bool:
        _same_ring(self, other)
        return self.mask & other.mask == self.mask

    def __lt__(self, other: Ideal) -> bool:
        return self <= other and self.mask != other.mask

    def __ge__(self, other: Ideal) -> bool:
        return other <= self

    def __gt__(self, other: Ideal) -> bool:
        return other < self

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.mask == other.mask and self.ring == other.ring

    def __hash__(self):
        return hash(self.mask)

    def __add__(self, other: Ideal) -> Ideal:
        return ideal_sum(self, other)

    def __mul__(self, other: Ideal) -> Ideal:
        return ideal_product(self, other)

    def __and__(self, other: Ideal) -> Ideal:
        return intersect(self, other)

    def generators(self) -> tuple[int, ...]:
        """A short generating set, found greedily (a single one when principal)."""
        ring = self.ring
        for a in self.elements:
            if principal(ring, a).mask == self.mask:
                return (a,)
        gens: list[int] = []
        current = 1 << ring.zero
        for a in sorted(self.elements, key=lambda x: (-principal(ring, x).size, x)):
            if not current >> a & 1:
                gens.append(a)
                current = generate(ring, gens).mask
            if current == self.mask:
                break
        return tuple(gens)

    def __str__(self):
        labels = self.ring.element_labels
        return "(" + ",".join(labels[g] for g in self.generators()) + ")"

    def __repr__(self):
        return f"Ideal({self.ring.label}, {list(self.elements)})"


def _same_ring(a: Ideal, b: Ideal):
    if a.ring is not b.ring and a.ring != b.ring:
        raise DomainError("ideals belong to different rings")


def is_ideal(ring: FiniteRing, subset: Iterable[int]) -> bool:
    """Direct check of the ideal axioms on an arbitrary subset."""
    s = set(subset)
    if ring.zero not in s:
        return False
    for a in s:
        if ring.neg(a) not in s:
            return False
        add_row, mul_row = ring._add[a], ring._mul[a]
        if any(add_row[b] not in s for b in s):
            return False
        if any(mul_row[r] not in s for r in ring.elements()):
            return False
    return True


def _additive_closure(ring: FiniteRing, members: set[int]) -> set[int]:
    frontier = list(members)
    while frontier:
        new = []
        current = list(members)
        for a in frontier:
            row = ring._add[a]
            for b in current:
                c = row[b]
                if c not in members:
                    members.add(c)
                    new.append(c)
        frontier = new
    return members


def generate(ring: FiniteRing, S: Iterable[int]) -> Ideal:
    """Smallest ideal containing ``S``, by alternating closure to a fixpoint."""
    members = {ring.zero, *S}
    if any(not 0 <= a < ring.size for a in members):
        raise DomainError("generators must be elements of the ring")
    mul = ring.mul_table
    while True:
        scaled = set(np.unique(mul[:, sorted(members)]).tolist())
        closed = _additive_closure(ring, scaled | members)
        if closed == members:
            return Ideal(ring, members)
        members = closed


def principal(ring: FiniteRing, a: int) -> Ideal:
    """``aA``; in a commutative ring with identity this is already an ideal."""
    cache = ring.cached("principal", dict)
    if a not in cache:
        cache[a] = Ideal(ring, ring._mul[a])
    return cache[a]


def ideal_sum(a: Ideal, b: Ideal) -> Ideal:
    _same_ring(a, b)
    ring = a.ring
    add = ring.add_table
    # the set of sums of an ideal pair is itself an ideal
    members = np.unique(add[np.ix_(a.elements, b.elements)])
    return Ideal(ring, members.tolist())


def ideal_product(a: Ideal, b: Ideal) -> Ideal:
    _same_ring(a, b)
    ring = a.ring
    prods = np.unique(ring.mul_table[np.ix_(a.elements, b.elements)])
    return generate(ring, prods.tolist())


def intersect(a: Ideal, b: Ideal) -> Ideal:
    _same_ring(a, b)
    return Ideal(a.ring, a.members & b.members)


def intersect_all(ring: FiniteRing, ideals: Iterable[Ideal]) -> Ideal:
    """Intersection of a family of ideals; the empty family gives the unit ideal."""
    mask = (1 << ring.size) - 1
    for i in ideals:
        mask &= i.mask
    return Ideal(ring, (k for k in range(ring.size) if mask >> k & 1))


def radical(a: Ideal) -> Ideal:
    """``{x | x**m in a for some m <= |A|}``."""
    ring = a.ring
    members = set()
    for x in ring.elements():
        p = x
        seen = set()
        # the sequence x, x^2, ... enters a cycle within |A| steps
        while p not in seen:
            if p in a.members:
                members.add(x)
                break
            seen.add(p)
            p = ring._mul[p][x]
    return Ideal(ring, members)


@dataclass(frozen=True)
class IdealFamily:
    """A canonically ordered list of ideals of one ring, tagged with its flavor."""

    ring: FiniteRing
    flavor: str
    ideals: tuple[Ideal, ...]

    def __post_init__(self):
        if self.flavor not in FLAVORS:
            raise DomainError(f"unknown flavor {self.flavor!r}")

    def __iter__(self):
        return iter(self.ideals)

    def __len__(self):
        return len(self.ideals)

    def __getitem__(self, i) -> Ideal:
        return self.ideals[i]

    def __contains__(self, ideal) -> bool:
        return ideal in self.ideals

    def index(self, ideal: Ideal) -> int:
        return self.ideals.index(ideal)

    def to_json(self) -> dict:
        return {
            "ring": self.ring.label,
            "flavor": self.flavor,
            "ideals": [list(i.elements) for i in self.ideals],
        }


def _canonical(ideals) -> tuple[Ideal, ...]:
    return tuple(sorted(set(ideals), key=Ideal.sort_key))


def enumerate_ideals(ring: FiniteRing, caps: Caps | None = None) -> IdealFamily:
    """All ideals, as the join-closure of the principal ideals."""
    limit = resolve(caps).max_ring_size
    if ring.size > limit:
        raise ResourceLimitError("max_ring_size", limit, ring.size)

    def compute():
        principals = {principal(ring, a) for a in ring.elements()}
        found = set(principals) | {Ideal(ring, [ring.zero])}
        frontier = list(found)
        plist = sorted(principals, key=Ideal.sort_key)
        while frontier:
            new = []
            for i in frontier:
                for p in plist:
                    if p <= i:
                        continue
                    j = ideal_sum(i, p)
                    if j not in found:
                        found.add(j)
                        new.append(j)
            frontier = new
        return IdealFamily(ring, "Idl", _canonical(found))

    return ring.cached("Idl", compute)


def _is_prime(ideal: Ideal) -> bool:
    if not ideal.is_proper:
        return False
    ring = ideal.ring
    inside = np.zeros(ring.size, dtype=bool)
    inside[list(ideal.elements)] = True
    outside = ~inside
    # xy in p with x, y both outside p
    bad = inside[ring.mul_table] & outside[:, None] & outside[None, :]
    return not bad.any()


def spi(ring: FiniteRing, caps: Caps | None = None) -> IdealFamily:
    return ring.cached("Spi", lambda: IdealFamily(
        ring, "Spi", tuple(i for i in enumerate_ideals(ring, caps) if i.is_proper)))


def spec(ring: FiniteRing, caps: Caps | None = None) -> IdealFamily:
    return ring.cached("Spec", lambda: IdealFamily(
        ring, "Spec", tuple(i for i in spi(ring, caps) if _is_prime(i))))


def spm(ring: FiniteRing, caps: Caps | None = None) -> IdealFamily:
    def compute():
        proper = spi(ring, caps).ideals
        return IdealFamily(ring, "Spm", tuple(
            m for m in proper if not any(m < other for other in proper)))

    return ring.cached("Spm", compute)


def family(ring: FiniteRing, flavor: str, caps: Caps | None = None) -> IdealFamily:
    builders = {"Idl": enumerate_ideals, "Spi": spi, "Spec": spec, "Spm": spm}
    try:
        return builders[flavor](ring, caps)
    except KeyError:
        raise DomainError(f"unknown flavor {flavor!r}; expected one of {FLAVORS}") from None


def quotient_ring(ring: FiniteRing, ideal: Ideal, label: str | None = None):
    """``A/a`` on coset representatives, with the canonical surjection.

    Cosets are numbered in order of their smallest member, which is also the
    representative whose label the coset inherits.
    """
    from .morphisms import RingHom

    if ideal.ring != ring:
        raise DomainError("ideal does not belong to this ring")
    if not ideal.is_proper:
        raise DomainError("quotient by the unit ideal is the zero ring, which is excluded")
    coset_of = [-1] * ring.size
    reps: list[int] = []
    for x in ring.elements():
        if coset_of[x] >= 0:
            continue
        c = len(reps)
        reps.append(x)
        for i in ideal.elements:
            coset_of[ring._add[x][i]] = c
    q = len(reps)
    add = [[coset_of[ring._add[a][b]] for b in reps] for a in reps]
    mul = [[coset_of[ring._mul[a][b]] for b in reps] for a in reps]
    labels = [ring.element_labels[r] for r in reps]
    if label is None:
        label = ring.label if ideal.is_zero else f"{ring.label}/{ideal}"
    quotient = FiniteRing(add, mul, coset_of[ring.zero], coset_of[ring.one], label, labels,
                          kind="quotient")
    assert q * ideal.size == ring.size
    return quotient, RingHom(ring, quotient, coset_of)
