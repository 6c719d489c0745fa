"""Finite topological spaces presented by a closed subbase.

Points are arbitrary hashables.  Internally every subset of points is an
``int`` bitmask over the point indices; the public methods take and return
``frozenset`` objects of points.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Callable, Hashable, Iterable, Mapping

from .config import Caps, resolve
from .errors import DomainError, ResourceLimitError

__all__ = [
    "FiniteSpace",
    "TopologyReport",
    "FipResult",
    "is_continuous",
    "is_closed_map",
    "is_homeomorphism",
]


def _popcount(m: int) -> int:
    return bin(m).count("1")


def _bits(m: int):
    i = 0
    while m:
        if m & 1:
            yield i
        m >>= 1
        i += 1


def _key(m: int):
    return (_popcount(m), tuple(_bits(m)))


@dataclass
class FipResult:
    """Outcome of the finite-subfamily search behind quasi-compactness."""

    holds: bool
    vacuous: bool
    witness_size: int | None = None
    witness: tuple[int, ...] = ()

    def to_json(self) -> dict:
        return {"holds": self.holds, "vacuous": self.vacuous,
                "witness_size": self.witness_size, "witness": list(self.witness)}


@dataclass
class TopologyReport:
    t0: bool
    connected: bool
    sober: bool
    spectral: bool
    spectral_direct: bool
    spectral_finite: bool
    quasi_compact: bool
    fip: FipResult
    irreducible_closed_sets: list[frozenset]
    generic_point_map: dict[frozenset, Hashable | None]
    witness: dict = field(default_factory=dict)

    def to_json(self, label: Callable = str) -> dict:
        def fmt(s):
            return sorted(label(p) for p in s)

        def fmt_witness(v):
            if isinstance(v, frozenset):
                return fmt(v)
            if isinstance(v, (tuple, list)):
                return [fmt_witness(x) for x in v]
            if v is None or isinstance(v, (bool, int, str)):
                return v
            return label(v)

        return {
            "t0": self.t0,
            "connected": self.connected,
            "sober": self.sober,
            "spectral": self.spectral,
            "spectral_direct": self.spectral_direct,
            "spectral_finite": self.spectral_finite,
            "quasi_compact": self.quasi_compact,
            "subbase_fip": self.fip.to_json(),
            "irreducible_closed_sets": [fmt(k) for k in self.irreducible_closed_sets],
            "generic_points": [
                {"closed_set": fmt(k), "generic_point": None if p is None else label(p)}
                for k, p in self.generic_point_map.items()
            ],
            "witness": {k: fmt_witness(v) for k, v in sorted(self.witness.items())},
        }


class FiniteSpace:
    """A finite set of points with a closed subbase.

    The closed sets are generated lazily: intersections of subbasic sets
    first, then finite unions of those, with the empty set and the whole
    space always adjoined.
    """

    def __init__(self, points: Iterable[Hashable], subbase: Iterable[Iterable[Hashable]] = (),
                 caps: Caps | None = None):
        self.points = tuple(points)
        self._index = {p: i for i, p in enumerate(self.points)}
        if len(self._index) != len(self.points):
            raise DomainError("points must be distinct")
        self.full = (1 << len(self.points)) - 1
        self.caps = resolve(caps)
        masks = []
        seen = set()
        for s in subbase:
            m = self.mask(s)
            if m not in seen:
                seen.add(m)
                masks.append(m)
        self.subbase_masks = tuple(masks)

    @classmethod
    def from_masks(cls, points, masks: Iterable[int], caps: Caps | None = None) -> FiniteSpace:
        """Build directly from subbase bitmasks over ``points``."""
        space = cls(points, (), caps)
        seen, kept = set(), []
        for m in masks:
            if m & ~space.full:
                raise DomainError("subbase mask refers to points outside the space")
            if m not in seen:
                seen.add(m)
                kept.append(m)
        space.subbase_masks = tuple(kept)
        return space

    def __len__(self):
        return len(self.points)

    def __repr__(self):
        return f"FiniteSpace({len(self.points)} points, {len(self.subbase_masks)} subbasic sets)"

    # mask helpers
    def mask(self, subset: Iterable[Hashable]) -> int:
        m = 0
        for p in subset:
            try:
                m |= 1 << self._index[p]
            except KeyError:
                raise DomainError(f"{p!r} is not a point of this space") from None
        return m

    def subset(self, mask: int) -> frozenset:
        return frozenset(self.points[i] for i in _bits(mask))

    @property
    def subbase(self) -> list[frozenset]:
        return [self.subset(m) for m in self.subbase_masks]

    # closed sets
    @cached_property
    def basic_closed_masks(self) -> tuple[int, ...]:
        """Subbase plus the whole space, closed under pairwise intersection."""
        cap = self.caps.max_closed_sets
        family = {self.full, *self.subbase_masks}
        frontier = list(family)
        gens = list(family)
        while frontier:
            new = []
            for a in frontier:
                for b in gens:
                    c = a & b
                    if c not in family:
                        family.add(c)
                        new.append(c)
                        if len(family) > cap:
                            raise ResourceLimitError("max_closed_sets", cap, len(family))
            frontier = new
        return tuple(sorted(family, key=_key))

    @cached_property
    def closed_masks(self) -> tuple[int, ...]:
        """Every closed set, canonically ordered (size, then members)."""
        cap = self.caps.max_closed_sets
        basic = self.basic_closed_masks
        family = {0, *basic}
        frontier = list(family)
        while frontier:
            new = []
            for a in frontier:
                for b in basic:
                    c = a | b
                    if c not in family:
                        family.add(c)
                        new.append(c)
                        if len(family) > cap:
                            raise ResourceLimitError("max_closed_sets", cap, len(family))
            frontier = new
        return tuple(sorted(family, key=_key))

    @cached_property
    def _closed_lookup(self) -> frozenset[int]:
        return frozenset(self.closed_masks)

    @property
    def closed_sets(self) -> list[frozenset]:
        return [self.subset(m) for m in self.closed_masks]

    @property
    def open_masks(self) -> tuple[int, ...]:
        return tuple(sorted((self.full & ~m for m in self.closed_masks), key=_key))

    def is_closed_mask(self, m: int) -> bool:
        return m in self._closed_lookup

    def is_closed(self, subset: Iterable[Hashable]) -> bool:
        return self.is_closed_mask(self.mask(subset))

    def is_open(self, subset: Iterable[Hashable]) -> bool:
        return self.is_closed_mask(self.full & ~self.mask(subset))

    def closure_mask(self, m: int) -> int:
        out = self.full
        for c in self.closed_masks:
            if c & m == m:
                out &= c
        return out

    def closure(self, subset: Iterable[Hashable]) -> frozenset:
        """Intersection of all closed sets containing ``subset``."""
        return self.subset(self.closure_mask(self.mask(subset)))

    @cached_property
    def point_closures(self) -> tuple[int, ...]:
        return tuple(self.closure_mask(1 << i) for i in range(len(self.points)))

    # irreducibility
    def _maximal_proper_closed(self, k: int) -> list[int]:
        proper = [c for c in self.closed_masks if c & k == c and c != k]
        return [c for c in proper if not any(c != d and c & d == c for d in proper)]

    def irreducibility_mask(self, k: int) -> tuple[bool, tuple[int, int] | None]:
        if not self.is_closed_mask(k):
            raise DomainError("irreducibility is only decided for closed sets")
        if k == 0:
            return False, None
        maximal = self._maximal_proper_closed(k)
        # a reducing pair exists iff a pair of maximal proper closed subsets covers k
        for a, b in combinations(maximal, 2):
            if a | b == k:
                return False, (a, b)
        return True, None

    def is_irreducible(self, subset: Iterable[Hashable]):
        """Return ``(verdict, witness)``; the witness is a reducing pair of closed sets."""
        ok, pair = self.irreducibility_mask(self.mask(subset))
        if pair is None:
            return ok, None
        return ok, (self.subset(pair[0]), self.subset(pair[1]))

    @cached_property
    def irreducible_closed_masks(self) -> tuple[int, ...]:
        return tuple(k for k in self.closed_masks if k and self.irreducibility_mask(k)[0])

    @property
    def irreducible_closed_sets(self) -> list[frozenset]:
        return [self.subset(k) for k in self.irreducible_closed_masks]

    def generic_points_mask(self, k: int) -> list[int]:
        return [i for i, c in enumerate(self.point_closures) if c == k]

    # separation, connectedness, sobriety
    def t0_witness(self):
        seen: dict[int, int] = {}
        for i, c in enumerate(self.point_closures):
            if c in seen:
                return (seen[c], i)
            seen[c] = i
        return None

    def clopen_witness(self) -> int | None:
        for c in self.closed_masks:
            if c not in (0, self.full) and self.is_closed_mask(self.full & ~c):
                return c
        return None

    def subbase_fip_check(self, bound: int | None = None) -> FipResult:
        """Search for a small subfamily of nonempty subbasic sets with empty intersection.

        Empty subbasic sets are their own size-1 witnesses and are skipped.
        If the whole family meets, every subfamily does and the check is vacuous.
        """
        bound = self.caps.fip_bound if bound is None else bound
        sets = [(i, m) for i, m in enumerate(self.subbase_masks) if m]
        total = self.full
        for _, m in sets:
            total &= m
        if total:
            return FipResult(True, True)
        for size in range(1, bound + 1):
            for combo in combinations(sets, size):
                inter = self.full
                for _, m in combo:
                    inter &= m
                if not inter:
                    return FipResult(True, False, size, tuple(i for i, _ in combo))
        return FipResult(False, False)

    def opens_closed_under_intersection(self) -> bool:
        opens = set(self.open_masks)
        return all(a & b in opens for a in opens for b in opens)

    def report(self) -> TopologyReport:
        witness: dict = {}
        t0w = self.t0_witness()
        t0 = t0w is None
        if not t0:
            witness["t0"] = (self.points[t0w[0]], self.points[t0w[1]])
        clopen = self.clopen_witness()
        connected = clopen is None and len(self.points) > 0
        if clopen is not None:
            witness["connected"] = self.subset(clopen)
        generic: dict[frozenset, Hashable | None] = {}
        sober = True
        for k in self.irreducible_closed_masks:
            gp = self.generic_points_mask(k)
            generic[self.subset(k)] = self.points[gp[0]] if len(gp) == 1 else None
            if len(gp) != 1 and sober:
                sober = False
                witness["sober"] = (self.subset(k), tuple(self.points[i] for i in gp))
        fip = self.subbase_fip_check()
        # every finite space is quasi-compact; the fip search is reported alongside
        quasi_compact = True
        direct = quasi_compact and t0 and sober and self.opens_closed_under_intersection()
        finite = t0 and sober
        return TopologyReport(
            t0=t0, connected=connected, sober=sober,
            spectral=direct and finite, spectral_direct=direct, spectral_finite=finite,
            quasi_compact=quasi_compact, fip=fip,
            irreducible_closed_sets=[self.subset(k) for k in self.irreducible_closed_masks],
            generic_point_map=generic, witness=witness)

    def specialization_pairs(self) -> list[tuple[int, int]]:
        """Index pairs ``(x, y)``, ``x != y``, with ``y`` in the closure of ``x``."""
        out = []
        for i, c in enumerate(self.point_closures):
            for j in _bits(c):
                if j != i:
                    out.append((i, j))
        return out

    def subspace(self, points: Iterable[Hashable]) -> FiniteSpace:
        keep = [p for p in self.points if p in set(points)]
        keep_mask = self.mask(keep)
        return FiniteSpace(keep, (self.subset(m & keep_mask) for m in self.subbase_masks),
                           self.caps)

    def to_json(self, label: Callable = str, with_report: bool = True) -> dict:
        def idx(m):
            return list(_bits(m))

        out = {
            "points": [label(p) for p in self.points],
            "subbase": [idx(m) for m in self.subbase_masks],
            "closed_sets": [idx(m) for m in self.closed_masks],
        }
        if with_report:
            out["report"] = self.report().to_json(label)
        return out


def _image_mask(f: Mapping, X: FiniteSpace, Y: FiniteSpace, m: int) -> int:
    return Y.mask(f[X.points[i]] for i in _bits(m))


def _preimage_mask(f: Mapping, X: FiniteSpace, Y: FiniteSpace, m: int) -> int:
    target = Y.subset(m)
    return X.mask(p for p in X.points if f[p] in target)


def is_continuous(f: Mapping, X: FiniteSpace, Y: FiniteSpace):
    """Check that preimages of subbasic closed sets of ``Y`` are closed in ``X``.

    Returns ``(verdict, witness)`` where the witness is an offending closed set of ``Y``.
    """
    for m in (Y.full, *Y.subbase_masks):
        if not X.is_closed_mask(_preimage_mask(f, X, Y, m)):
            return False, Y.subset(m)
    return True, None


def is_closed_map(f: Mapping, X: FiniteSpace, Y: FiniteSpace):
    for m in X.closed_masks:
        if not Y.is_closed_mask(_image_mask(f, X, Y, m)):
            return False, X.subset(m)
    return True, None


def is_homeomorphism(f: Mapping, X: FiniteSpace, Y: FiniteSpace) -> bool:
    images = [f[p] for p in X.points]
    if len(set(images)) != len(X.points) or set(images) != set(Y.points):
        return False
    return is_continuous(f, X, Y)[0] and is_closed_map(f, X, Y)[0]
