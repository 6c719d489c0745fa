"""Finite commutative rings with identity, stored as dense operation tables.

Elements are plain ``int`` indices ``0 <= i < ring.size``; the ring object
owns their meaning (residue, pair, coefficient vector) and a display label
for each.
"""

from __future__ import annotations

import json
from itertools import product as _cartesian

import numpy as np

from .config import Caps, resolve
from .errors import InvalidRingError, ResourceLimitError, UnsupportedModulusError

__all__ = [
    "FiniteRing",
    "make_zmod",
    "make_product",
    "make_poly_quotient",
    "units",
    "zero_divisors",
    "idempotents",
    "nilpotents",
    "format_poly",
]


def _frozen(table) -> np.ndarray:
    arr = np.array(table, dtype=np.int32)
    arr.setflags(write=False)
    return arr


class FiniteRing:
    """A finite commutative ring with ``one != zero``.

    Construction only checks shapes, ranges and identities; the full set of
    ring axioms is checked by :meth:`axiom_violations` (and by
    :meth:`from_tables` with ``check=True``).
    """

    def __init__(self, add_table, mul_table, zero: int, one: int, label: str,
                 element_labels=None, kind: str = "tables"):
        add = _frozen(add_table)
        mul = _frozen(mul_table)
        n = add.shape[0]
        if add.ndim != 2 or add.shape != (n, n) or mul.shape != (n, n):
            raise InvalidRingError("operation tables must be square and of equal size")
        if n < 2:
            raise InvalidRingError("a ring needs at least two elements (one != zero)")
        if add.min() < 0 or add.max() >= n or mul.min() < 0 or mul.max() >= n:
            raise InvalidRingError("table entries must be element indices")
        if not (0 <= zero < n and 0 <= one < n) or zero == one:
            raise InvalidRingError("zero and one must be distinct elements")
        self.size = n
        self.add_table = add
        self.mul_table = mul
        self.zero = int(zero)
        self.one = int(one)
        self.label = label
        self.kind = kind
        if element_labels is None:
            element_labels = [str(i) for i in range(n)]
        self.element_labels = tuple(element_labels)
        if len(self.element_labels) != n or len(set(self.element_labels)) != n:
            raise InvalidRingError("element labels must be unique, one per element")
        self._label_index = {s: i for i, s in enumerate(self.element_labels)}
        # Python-level copies; scalar numpy indexing is slow in tight loops.
        self._add = tuple(tuple(int(v) for v in row) for row in add)
        self._mul = tuple(tuple(int(v) for v in row) for row in mul)
        neg = [None] * n
        for a in range(n):
            row = self._add[a]
            for b in range(n):
                if row[b] == self.zero:
                    neg[a] = b
                    break
        if any(v is None for v in neg):
            raise InvalidRingError("every element needs an additive inverse")
        self._neg = tuple(neg)
        self._hash = hash((n, self.zero, self.one, add.tobytes(), mul.tobytes()))
        self._cache: dict = {}

    @classmethod
    def from_tables(cls, add_table, mul_table, zero, one, label, element_labels=None,
                    check: bool = True) -> FiniteRing:
        ring = cls(add_table, mul_table, zero, one, label, element_labels)
        if check:
            problems = ring.axiom_violations(limit=1)
            if problems:
                raise InvalidRingError(f"{label}: {problems[0]}")
        return ring

    # element arithmetic
    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self._add[a][self._neg[b]]

    def power(self, a: int, k: int) -> int:
        result = self.one
        for _ in range(k):
            result = self._mul[result][a]
        return result

    def elements(self) -> range:
        return range(self.size)

    def element_label(self, a: int) -> str:
        return self.element_labels[a]

    def element(self, label: str) -> int:
        """Look an element up by its display label (or a bare index)."""
        label = label.strip()
        if label in self._label_index:
            return self._label_index[label]
        compact = label.replace(" ", "")
        if compact in self._label_index:
            return self._label_index[compact]
        if compact.isdigit() and int(compact) < self.size:
            return int(compact)
        raise KeyError(f"{self.label} has no element labelled {label!r}")

    def cached(self, key, compute):
        """Memoize a derived structure on this (immutable) ring."""
        try:
            return self._cache[key]
        except KeyError:
            value = self._cache[key] = compute()
            return value

    def axiom_violations(self, limit: int | None = None) -> list[str]:
        """Exhaustively check the commutative-ring-with-identity axioms."""
        n = self.size
        add, mul = self.add_table, self.mul_table
        idx = np.arange(n)
        out: list[str] = []

        def note(msg):
            out.append(msg)
            return limit is not None and len(out) >= limit

        if not np.array_equal(add, add.T) and note("addition is not commutative"):
            return out
        if not np.array_equal(mul, mul.T) and note("multiplication is not commutative"):
            return out
        if not np.array_equal(add[self.zero], idx) and note("zero is not an additive identity"):
            return out
        if not np.array_equal(mul[self.one], idx) and note("one is not a multiplicative identity"):
            return out
        for a in range(n):
            # (a+b)+c == a+(b+c), (ab)c == a(bc), a(b+c) == ab+ac over all b, c
            if not np.array_equal(add[add[a]], add[a][add]):
                if note(f"addition is not associative at a={a}"):
                    return out
            if not np.array_equal(mul[mul[a]], mul[a][mul]):
                if note(f"multiplication is not associative at a={a}"):
                    return out
            lhs = mul[a][add]
            rhs = add[mul[a][:, None], mul[a][None, :]]
            if not np.array_equal(lhs, rhs):
                if note(f"multiplication does not distribute at a={a}"):
                    return out
        return out

    def is_valid(self) -> bool:
        return not self.axiom_violations(limit=1)

    # subring closure, used to find small generating sets for homomorphisms
    def subring_closure(self, gens) -> frozenset[int]:
        members = {self.zero, self.one, *gens}
        frontier = list(members)
        while frontier:
            new = []
            current = list(members)
            for a in frontier:
                for b in current:
                    for c in (self._add[a][b], self._mul[a][b]):
                        if c not in members:
                            members.add(c)
                            new.append(c)
                c = self._neg[a]
                if c not in members:
                    members.add(c)
                    new.append(c)
            frontier = new
        return frozenset(members)

    def generators(self) -> tuple[int, ...]:
        """A small set of elements that, with 1, generates the ring."""

        def compute():
            gens: list[int] = []
            closure = self.subring_closure(())
            for a in range(self.size):
                if len(closure) == self.size:
                    break
                if a not in closure:
                    gens.append(a)
                    closure = self.subring_closure(gens)
            return tuple(gens)

        return self.cached("generators", compute)

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "size": self.size,
            "zero": self.zero,
            "one": self.one,
            "add": self.add_table.tolist(),
            "mul": self.mul_table.tolist(),
            "elements": list(self.element_labels),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(cls, data: dict) -> FiniteRing:
        ring = cls.from_tables(data["add"], data["mul"], data["zero"], data["one"],
                               data.get("label", "ring"), data.get("elements"))
        if "size" in data and data["size"] != ring.size:
            raise InvalidRingError("declared size does not match the tables")
        return ring

    def __eq__(self, other):
        if not isinstance(other, FiniteRing):
            return NotImplemented
        return (self is other or (
            self._hash == other._hash
            and self.size == other.size
            and self.zero == other.zero
            and self.one == other.one
            and np.array_equal(self.add_table, other.add_table)
            and np.array_equal(self.mul_table, other.mul_table)))

    def __hash__(self):
        return self._hash

    def __len__(self):
        return self.size

    def __repr__(self):
        return f"FiniteRing({self.label}, size={self.size})"

    def __str__(self):
        return self.label


def _check_size(n: int, caps: Caps | None):
    limit = resolve(caps).max_ring_size
    if n > limit:
        raise ResourceLimitError("max_ring_size", limit, n)


def make_zmod(n: int, caps: Caps | None = None) -> FiniteRing:
    """The integers modulo ``n``."""
    if not isinstance(n, (int, np.integer)) or n < 2:
        raise InvalidRingError(f"Z_n needs n >= 2, got {n!r}")
    n = int(n)
    _check_size(n, caps)
    idx = np.arange(n)
    add = (idx[:, None] + idx[None, :]) % n
    mul = (idx[:, None] * idx[None, :]) % n
    return FiniteRing(add, mul, 0, 1, f"Z{n}", kind="zmod")


def _compound(label: str) -> bool:
    return not label.lstrip("-").isalnum()


def make_product(A: FiniteRing, B: FiniteRing, caps: Caps | None = None) -> FiniteRing:
    """Componentwise ring structure on ``A x B``; ``(a, b)`` has index ``a*|B| + b``."""
    n = A.size * B.size
    _check_size(n, caps)
    m = B.size
    ia = np.repeat(np.arange(A.size), m)
    ib = np.tile(np.arange(m), A.size)
    add = A.add_table[ia[:, None], ia[None, :]] * m + B.add_table[ib[:, None], ib[None, :]]
    mul = A.mul_table[ia[:, None], ia[None, :]] * m + B.mul_table[ib[:, None], ib[None, :]]
    labels = [f"({A.element_labels[a]},{B.element_labels[b]})" for a, b in zip(ia, ib)]
    right = f"({B.label})" if B.kind == "product" else B.label
    return FiniteRing(add, mul, A.zero * m + B.zero, A.one * m + B.one,
                      f"{A.label}x{right}", labels, kind="product")


def format_poly(ring: FiniteRing, coeffs, var: str = "x") -> str:
    """Render coefficients (lowest degree first) as e.g. ``x^2+3x+1``."""
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == ring.zero:
            continue
        lab = ring.element_labels[c]
        if k == 0:
            terms.append(lab)
            continue
        mono = var if k == 1 else f"{var}^{k}"
        if c == ring.one:
            terms.append(mono)
        elif _compound(lab):
            terms.append(f"({lab}){mono}")
        else:
            terms.append(f"{lab}{mono}")
    return "+".join(terms) if terms else ring.element_labels[ring.zero]


def _poly_mulmod(base: FiniteRing, u, v, modulus) -> tuple[int, ...]:
    d = len(modulus) - 1
    add, mul = base._add, base._mul
    prod = [base.zero] * (2 * d - 1)
    for i, a in enumerate(u):
        if a == base.zero:
            continue
        row = mul[a]
        for j, b in enumerate(v):
            prod[i + j] = add[prod[i + j]][row[b]]
    # long division by the monic modulus, from the top degree down
    for k in range(len(prod) - 1, d - 1, -1):
        t = prod[k]
        if t == base.zero:
            continue
        nt = base._neg[t]
        for i in range(d + 1):
            prod[k - d + i] = add[prod[k - d + i]][mul[nt][modulus[i]]]
    return tuple(prod[:d])


def make_poly_quotient(base: FiniteRing, modulus_coeffs, caps: Caps | None = None) -> FiniteRing:
    """``base[x]/(f)`` for a monic ``f`` given lowest degree first.

    Elements are the remainders of degree < deg f; the coefficient vector
    ``(c0, ..., c_{d-1})`` has index ``sum c_k * |base|**k``.
    """
    coeffs = [int(c) for c in modulus_coeffs]
    if any(not 0 <= c < base.size for c in coeffs):
        raise UnsupportedModulusError("modulus coefficients must be elements of the base ring")
    while coeffs and coeffs[-1] == base.zero:
        coeffs.pop()
    d = len(coeffs) - 1
    if d < 1:
        raise UnsupportedModulusError("modulus must have degree >= 1")
    if coeffs[-1] != base.one:
        raise UnsupportedModulusError(
            "modulus must be monic; division by a non-monic polynomial is not defined over this base")
    q = base.size
    n = q**d
    _check_size(n, caps)
    vecs = list(_cartesian(range(q), repeat=d))
    # itertools varies the last slot fastest; index wants c0 as the low digit
    vecs = [tuple(reversed(v)) for v in vecs]
    index = {v: sum(c * q**k for k, c in enumerate(v)) for v in vecs}
    order = sorted(vecs, key=index.__getitem__)
    add = np.empty((n, n), dtype=np.int32)
    mul = np.empty((n, n), dtype=np.int32)
    for i, u in enumerate(order):
        for j in range(i, n):
            v = order[j]
            s = index[tuple(base._add[a][b] for a, b in zip(u, v))]
            p = index[_poly_mulmod(base, u, v, coeffs)]
            add[i, j] = add[j, i] = s
            mul[i, j] = mul[j, i] = p
    labels = [format_poly(base, v) for v in order]
    zero = index[tuple([base.zero] * d)]
    one = index[tuple([base.one] + [base.zero] * (d - 1))]
    label = f"{base.label}[x]/({format_poly(base, coeffs)})"
    return FiniteRing(add, mul, zero, one, label, labels, kind="poly")


def units(A: FiniteRing) -> frozenset[int]:
    return frozenset(a for a in A.elements() if A.one in A._mul[a])


def zero_divisors(A: FiniteRing) -> frozenset[int]:
    """Nonzero elements ``x`` with ``x*y == 0`` for some nonzero ``y``."""
    z = A.zero
    return frozenset(
        a for a in A.elements()
        if a != z and any(A._mul[a][b] == z for b in A.elements() if b != z))


def idempotents(A: FiniteRing) -> frozenset[int]:
    return frozenset(a for a in A.elements() if A._mul[a][a] == a)


def nilpotents(A: FiniteRing) -> frozenset[int]:
    out = set()
    for a in A.elements():
        p = a
        for _ in range(A.size):
            if p == A.zero:
                out.add(a)
                break
            p = A._mul[p][a]
    return frozenset(out)
