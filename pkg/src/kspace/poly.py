"""Univariate polynomials over a finite ring, their zero sets, and the table
of minimal-degree annihilators of every subset of the ring."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Sequence

import numpy as np

from .config import Caps, resolve
from .errors import DomainError, ResourceLimitError, SearchExhaustedError
from .rings import FiniteRing, _compound, format_poly

__all__ = [
    "Polynomial",
    "VarietyEntry",
    "Table1Row",
    "Table1",
    "evaluate",
    "solution_set",
    "annihilator_family",
    "annihilators_of",
    "exact_variety_witness",
    "parse_family",
    "table1",
]

MAX_TABLE_RING = 8


class Polynomial:
    """Coefficients lowest degree first, trailing zeros stripped.

    ``roots`` is optional display metadata: when given, the polynomial is
    printed as the product of ``(x - r)`` over the roots, in that order.
    """

    __slots__ = ("ring", "coeffs", "roots")

    def __init__(self, ring: FiniteRing, coeffs: Sequence[int], roots: Sequence[int] | None = None):
        coeffs = [int(c) for c in coeffs]
        if any(not 0 <= c < ring.size for c in coeffs):
            raise DomainError("coefficients must be ring elements")
        while coeffs and coeffs[-1] == ring.zero:
            coeffs.pop()
        self.ring = ring
        self.coeffs = tuple(coeffs)
        self.roots = None if roots is None else tuple(roots)

    @classmethod
    def from_roots(cls, ring: FiniteRing, roots: Iterable[int]) -> Polynomial:
        roots = tuple(roots)
        p = cls(ring, [ring.one])
        for r in roots:
            p = p * cls(ring, [ring.neg(r), ring.one])
        return cls(ring, p.coeffs, roots)

    @property
    def degree(self) -> float:
        """``len(coeffs) - 1``; the zero polynomial has degree ``-inf``."""
        return len(self.coeffs) - 1 if self.coeffs else -math.inf

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, a: int) -> int:
        return evaluate(self, a)

    def __add__(self, other: Polynomial) -> Polynomial:
        R = self.ring
        n = max(len(self.coeffs), len(other.coeffs))
        u = self.coeffs + (R.zero,) * (n - len(self.coeffs))
        v = other.coeffs + (R.zero,) * (n - len(other.coeffs))
        return Polynomial(R, [R._add[a][b] for a, b in zip(u, v)])

    def __mul__(self, other: Polynomial) -> Polynomial:
        R = self.ring
        if self.is_zero or other.is_zero:
            return Polynomial(R, [])
        out = [R.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = R._add[out[i + j]][R._mul[a][b]]
        return Polynomial(R, out)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs and self.ring == other.ring

    def __hash__(self):
        return hash(self.coeffs)

    def zero_set(self) -> frozenset[int]:
        return solution_set([self], self.ring)

    def expanded(self, var: str = "x") -> str:
        return format_poly(self.ring, self.coeffs, var)

    def factored(self, var: str = "x") -> str:
        if self.roots is None:
            return self.expanded(var)
        if not self.roots:
            return self.ring.element_labels[self.ring.one]
        R = self.ring
        factors = []
        for r in self.roots:
            if r == R.zero:
                factors.append(var)
                continue
            lab = R.element_labels[R.neg(r)]
            factors.append(f"{var}+({lab})" if _compound(lab) else f"{var}+{lab}")
        if len(factors) == 1:
            return factors[0]
        return "".join(f if f == var else f"({f})" for f in factors)

    def __str__(self):
        return self.factored()

    def __repr__(self):
        return f"Polynomial({self.ring.label}, {list(self.coeffs)})"

    def to_json(self, var: str = "x") -> dict:
        return {"coeffs": list(self.coeffs), "text": self.factored(var),
                "expanded": self.expanded(var),
                "degree": self.degree if self.coeffs else None}


def evaluate(p: Polynomial, a: int) -> int:
    """Horner evaluation in the coefficient ring."""
    R = p.ring
    if not 0 <= a < R.size:
        raise DomainError("evaluation point is not a ring element")
    acc = R.zero
    for c in reversed(p.coeffs):
        acc = R._add[R._mul[acc][a]][c]
    return acc


def solution_set(ps: Iterable[Polynomial], ring: FiniteRing | None = None) -> frozenset[int]:
    """Common zeros of a system; the empty system is solved by every element."""
    ps = list(ps)
    if ring is None:
        if not ps:
            raise DomainError("the ring must be given for an empty system")
        ring = ps[0].ring
    if any(p.ring != ring for p in ps):
        raise DomainError("polynomials have different coefficient rings")
    return frozenset(a for a in ring.elements() if all(evaluate(p, a) == ring.zero for p in ps))


# ---------------------------------------------------------------------------
# linear systems over the ring, solved by meet-in-the-middle enumeration


def _tables(ring: FiniteRing):
    return ring.cached("np_tables", lambda: (
        np.asarray(ring.add_table, dtype=np.int64),
        np.asarray(ring.mul_table, dtype=np.int64),
        np.asarray(ring._neg, dtype=np.int64)))


def _all_tuples(n: int, m: int) -> np.ndarray:
    if m == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.indices((n,) * m).reshape(m, -1).T
    return grids.astype(np.int64)


def _apply_forms(ring: FiniteRing, forms: np.ndarray, X: np.ndarray) -> np.ndarray:
    """``out[t, j] = sum_i forms[j, i] * X[t, i]`` computed in the ring."""
    add, mul, _ = _tables(ring)
    out = np.full((X.shape[0], forms.shape[0]), ring.zero, dtype=np.int64)
    for i in range(X.shape[1]):
        out = add[out, mul[forms[:, i][None, :], X[:, i][:, None]]]
    return out


def _kernel(ring: FiniteRing, forms: np.ndarray, m: int, caps: Caps) -> np.ndarray:
    """All coefficient tuples of length ``m`` annihilated by every row of ``forms``."""
    n = ring.size
    lo = m // 2
    hi = m - lo
    if n ** hi > caps.max_function_space:
        raise ResourceLimitError("max_function_space", caps.max_function_space, n ** hi)
    if forms.shape[0] == 0:
        return _all_tuples(n, m)
    _, _, neg = _tables(ring)
    lo_t, hi_t = _all_tuples(n, lo), _all_tuples(n, hi)
    # sum over the low half must cancel the sum over the high half
    lo_v = neg[_apply_forms(ring, forms[:, :lo], lo_t)]
    hi_v = _apply_forms(ring, forms[:, lo:], hi_t)
    _, ids = np.unique(np.vstack([lo_v, hi_v]), axis=0, return_inverse=True)
    ids = ids.reshape(-1)
    lo_ids, hi_ids = ids[:len(lo_t)], ids[len(lo_t):]
    order = np.argsort(hi_ids, kind="stable")
    sorted_ids = hi_ids[order]
    start = np.searchsorted(sorted_ids, lo_ids, "left")
    count = np.searchsorted(sorted_ids, lo_ids, "right") - start
    total = int(count.sum())
    lo_rep = np.repeat(np.arange(len(lo_t)), count)
    offset = np.arange(total) - np.repeat(np.cumsum(count) - count, count)
    hi_idx = order[np.repeat(start, count) + offset]
    sol = np.hstack([lo_t[lo_rep], hi_t[hi_idx]])
    return sol[np.lexsort(sol.T[::-1])] if len(sol) else sol


def _power_rows(ring: FiniteRing, subset: Sequence[int], m: int) -> np.ndarray:
    rows = []
    for a in subset:
        row, p = [], ring.one
        for _ in range(m):
            row.append(p)
            p = ring._mul[p][a]
        rows.append(row)
    return np.asarray(rows, dtype=np.int64).reshape(len(rows), m)


def annihilator_family(ring: FiniteRing, subset: Iterable[int], degree: int,
                       caps: Caps | None = None) -> np.ndarray:
    """Coefficient tuples (lowest first, length ``degree+1``) of every polynomial
    of degree at most ``degree`` vanishing on ``subset``; includes zero."""
    subset = sorted(set(subset))
    m = degree + 1
    return _kernel(ring, _power_rows(ring, subset, m), m, resolve(caps))


def _eval_all(ring: FiniteRing, F: np.ndarray) -> np.ndarray:
    """Values of each row of ``F`` (as a polynomial) at every ring element."""
    return _apply_forms(ring, _power_rows(ring, list(ring.elements()), F.shape[1]), F)


# ---------------------------------------------------------------------------
# presentation of a family by linear constraints on its coefficients


def _var_names(m: int, poly_var: str) -> list[str]:
    letters = [c for c in "abcdefghijklmnopqrstuvw" if c != poly_var]
    if m > len(letters):
        raise DomainError("too many coefficients to name")
    return letters[:m]


def _template(ring: FiniteRing, names: list[str], keep: list[bool], var: str) -> str:
    m = len(names)
    terms = []
    for k, name in enumerate(names):
        if not keep[k]:
            continue
        deg = m - 1 - k
        mono = "" if deg == 0 else var if deg == 1 else f"{var}^{deg}"
        terms.append(name + mono)
    return "+".join(terms)


def _form_text(ring: FiniteRing, w: Sequence[int], names: list[str]) -> str:
    terms = []
    for k, c in enumerate(w):
        if c == ring.zero:
            continue
        lab = ring.element_labels[c]
        if c == ring.one:
            terms.append(names[k])
        elif _compound(lab):
            terms.append(f"({lab}){names[k]}")
        else:
            terms.append(f"{lab}{names[k]}")
    return "+".join(terms) + "=0"


def _constraints(ring: FiniteRing, F: np.ndarray, caps: Caps) -> list[tuple[int, ...]] | None:
    """A short list of linear forms (in variable order a, b, ... = highest degree
    first) whose common zeros are exactly ``F``; None if too large to search."""
    n, m = ring.size, F.shape[1]
    if n ** m > caps.max_function_space or (n ** m) * len(F) > 2**22:
        return None
    full = _all_tuples(n, m)
    Fv = F[:, ::-1]                               # variable order
    forms = full[1:] if ring.zero == 0 else full[np.any(full != ring.zero, axis=1)]
    vanish = np.all(_apply_forms(ring, Fv, forms) == ring.zero, axis=1)
    forms = forms[vanish]
    weight = np.sum(forms != ring.zero, axis=1)
    cost = np.sum(np.where(forms != ring.zero, forms, 0), axis=1)
    order = np.lexsort((*forms.T, cost, weight))   # weight, then cost, then reversed tuple
    sol = full
    chosen: list[np.ndarray] = []
    for idx in order:
        if len(sol) == len(F):
            break
        w = forms[idx]
        hit = _apply_forms(ring, w[None, :], sol)[:, 0] == ring.zero
        if not hit.all():
            chosen.append(w)
            sol = sol[hit]
    # drop forms implied by the others
    for k in range(len(chosen) - 1, -1, -1):
        rest = chosen[:k] + chosen[k + 1:]
        if not rest:
            continue
        ok = np.all(_apply_forms(ring, np.array(rest), full) == ring.zero, axis=1)
        if ok.sum() == len(F):
            chosen = rest
    chosen.sort(key=lambda w: (next(i for i, c in enumerate(w) if c != ring.zero),
                               int(np.sum(w != ring.zero)), tuple(w)))
    return [tuple(int(c) for c in w) for w in chosen]


def _span_generators(ring: FiniteRing, F: np.ndarray) -> list[tuple[int, ...]]:
    """Greedy generators of ``F`` as an A-module."""
    members = [tuple(int(c) for c in row) for row in F]
    zero = tuple([ring.zero] * F.shape[1])
    spanned = {zero}
    gens = []

    def key(t):
        nz = [i for i, c in enumerate(t) if c != ring.zero]
        return (max(nz) if nz else -1, len(nz), t[::-1])

    for t in sorted(members, key=key):
        if t in spanned:
            continue
        gens.append(t)
        multiples = {tuple(ring._mul[r][c] for c in t) for r in ring.elements()}
        spanned = {tuple(ring._add[u][v] for u, v in zip(s, mlt)) for s in spanned for mlt in multiples}
    return gens


def describe_family(ring: FiniteRing, F: np.ndarray, var: str = "x", caps: Caps | None = None) -> str:
    """Render a family of coefficient tuples as ``{template | constraints}``."""
    caps = resolve(caps)
    m = F.shape[1]
    if len(F) == ring.size ** m and m == 1:
        return f"{ring.label}\\{{{ring.element_labels[ring.zero]}}}"
    constraints = _constraints(ring, F, caps)
    if constraints is None:
        gens = _span_generators(ring, F)
        return "span(" + ", ".join(format_poly(ring, g, var) for g in gens) + ")"
    names = _var_names(m, var)
    keep = [True] * m
    simple = [w for w in constraints if sum(c != ring.zero for c in w) == 1 and ring.one in w]
    if len(simple) == len(constraints) and len(simple) < m:
        for w in simple:
            keep[w.index(ring.one)] = False
        constraints = []
    body = _template(ring, names, keep, var)
    if not constraints:
        return "{" + body + "}"
    return "{" + body + " | " + ", ".join(_form_text(ring, w, names) for w in constraints) + "}"


# ---------------------------------------------------------------------------
# varieties


@dataclass
class VarietyEntry:
    subset: frozenset[int]
    degree: int
    family: np.ndarray            # coefficient tuples, lowest degree first
    description: str
    witness: Polynomial | None    # a family member vanishing exactly on the subset

    def members(self) -> set[tuple[int, ...]]:
        return {tuple(int(c) for c in row) for row in self.family}

    def nonzero_members(self) -> set[tuple[int, ...]]:
        return {t for t in self.members() if any(t)} if self.family.size else set()


def _is_monic(ring, t) -> bool:
    nz = [i for i, c in enumerate(t) if c != ring.zero]
    return bool(nz) and t[nz[-1]] == ring.one


def annihilators_of(ring: FiniteRing, subset: Iterable[int], max_degree: int | None = None,
                    var: str = "x", caps: Caps | None = None) -> VarietyEntry:
    """Least degree carrying a nonzero annihilator of ``subset``, with the
    full family of annihilators of at most that degree."""
    caps = resolve(caps)
    subset = frozenset(subset)
    if any(not 0 <= a < ring.size for a in subset):
        raise DomainError("subset must consist of ring elements")
    if max_degree is None:
        max_degree = ring.size
    if max_degree < 0:
        raise DomainError("max_degree must be non-negative")
    for d in range(max_degree + 1):
        F = annihilator_family(ring, subset, d, caps)
        nonzero = F[np.any(F != ring.zero, axis=1)]
        if len(nonzero):
            break
    else:
        raise SearchExhaustedError(f"no nonzero annihilator of degree <= {max_degree}")
    values = _eval_all(ring, nonzero)
    target = np.zeros(ring.size, dtype=bool)
    target[list(subset)] = True
    exact = nonzero[np.all((values == ring.zero) == target[None, :], axis=1)]
    witness = None
    if len(exact):
        rows = [tuple(int(c) for c in row) for row in exact]
        best = min(rows, key=lambda t: (not _is_monic(ring, t),
                                        sum(c != ring.zero for c in t), t[::-1]))
        witness = Polynomial(ring, best)
    return VarietyEntry(subset, d, F, describe_family(ring, F, var, caps), witness)


def exact_variety_witness(ring: FiniteRing, subset: Iterable[int],
                          caps: Caps | None = None) -> Polynomial | None:
    """A polynomial whose zero set is exactly ``subset``.

    Tries the product of ``(x - a)`` first; if that picks up extra zeros,
    searches the polynomial functions by increasing degree.  Returns None if
    no polynomial has this zero set.
    """
    caps = resolve(caps)
    subset = frozenset(subset)
    candidate = Polynomial.from_roots(ring, sorted(subset))
    if candidate.zero_set() == subset:
        return candidate
    return _function_search(ring, subset, caps)


def _zero_set_index(ring: FiniteRing, caps: Caps) -> dict[int, tuple[int, ...]] | None:
    """For every realizable zero set (as a bitmask), a least-degree polynomial
    with that zero set; None if the function space outgrows the cap."""

    def compute():
        n = ring.size
        nonzero = [c for c in ring.elements() if c != ring.zero]
        known = {tuple([c] * n): (c,) for c in ring.elements()}
        fresh = dict(known)
        best: dict[int, tuple[int, ...]] = {}
        for d in range(n + 1):
            if d:
                power = [ring.power(a, d) for a in range(n)]
                fresh = {}
                for values, coeffs in known.items():
                    padded = coeffs + (ring.zero,) * (d - len(coeffs))
                    for c in nonzero:
                        v = tuple(ring._add[values[a]][ring._mul[c][power[a]]] for a in range(n))
                        if v not in known and v not in fresh:
                            fresh[v] = padded + (c,)
                # no new functions at degree d means none at any higher degree
                if not fresh:
                    break
                known.update(fresh)
                if len(known) > caps.max_function_space:
                    return None
            level: dict[int, tuple[int, ...]] = {}
            for v, coeffs in fresh.items():
                mask = sum(1 << a for a in range(n) if v[a] == ring.zero)
                if mask in best:
                    continue
                old = level.get(mask)
                if old is None or _pick_key(ring, coeffs) < _pick_key(ring, old):
                    level[mask] = coeffs
            best.update(level)
        return best

    return ring.cached(("zero_sets", caps.max_function_space), compute)


def _pick_key(ring, t):
    return (not _is_monic(ring, t), t[::-1])


def _function_search(ring: FiniteRing, subset: frozenset[int], caps: Caps) -> Polynomial | None:
    index = _zero_set_index(ring, caps)
    if index is None:
        return None
    coeffs = index.get(sum(1 << a for a in subset))
    return None if coeffs is None else Polynomial(ring, coeffs)


# ---------------------------------------------------------------------------
# printed constraint families


_TERM = re.compile(r"([a-w])(?:x|y)?(?:\^(\d+))?")


def _coeff_element(ring: FiniteRing, k: int) -> int:
    acc = ring.zero
    for _ in range(abs(k)):
        acc = ring._add[acc][ring.one]
    return ring.neg(acc) if k < 0 else acc


def parse_family(ring: FiniteRing, text: str) -> tuple[int, set[tuple[int, ...]]]:
    """Parse ``{ax^2+bx+c | a+b=0, c=0}`` (or ``Z4\\{0}``) into its degree and
    the set of coefficient tuples (lowest degree first) it describes.

    Integer coefficients in the constraints are read as multiples of 1.
    """
    text = text.replace(" ", "").replace("\\setminus", "\\")
    if text.startswith(ring.label + "\\"):
        excluded = text[len(ring.label) + 1:].strip("{}")
        bad = {ring.element(s) for s in excluded.split(",") if s}
        return 0, {(c,) for c in ring.elements() if c not in bad}
    if not (text.startswith("{") and text.endswith("}")):
        raise DomainError(f"cannot parse family {text!r}")
    body, _, cons = text[1:-1].partition("|")
    degree_of = {}
    for term in body.split("+"):
        mt = re.fullmatch(r"([a-w])((?:x|y)(?:\^(\d+))?)?", term)
        if not mt:
            raise DomainError(f"bad template term {term!r}")
        name, monomial, exp = mt.groups()
        degree_of[name] = int(exp) if exp else (1 if monomial else 0)
    m = max(degree_of.values()) + 1
    forms = []
    for eq in filter(None, cons.split(",")):
        lhs, _, rhs = eq.partition("=")
        if rhs != "0":
            raise DomainError(f"constraint {eq!r} must have the form ...=0")
        w = [ring.zero] * m
        for sign, k, name in re.findall(r"([+-]?)(\d*)([a-w])", lhs):
            value = _coeff_element(ring, int(k) if k else 1)
            if sign == "-":
                value = ring.neg(value)
            pos = degree_of[name]
            w[pos] = ring._add[w[pos]][value]
        forms.append(w)
    free = sorted(degree_of.values())
    out = set()
    for values in product(ring.elements(), repeat=len(free)):
        t = [ring.zero] * m
        for pos, v in zip(free, values):
            t[pos] = v
        if all(_dot(ring, w, t) == ring.zero for w in forms):
            out.add(tuple(t))
    return m - 1, out


def _dot(ring, w, t) -> int:
    acc = ring.zero
    for a, b in zip(w, t):
        acc = ring._add[acc][ring._mul[a][b]]
    return acc


# ---------------------------------------------------------------------------
# the table


@dataclass
class Table1Row:
    subset: frozenset[int]
    entry: VarietyEntry
    witness: Polynomial | None
    algebraic_set: frozenset[int] | None


@dataclass
class Table1:
    ring: FiniteRing
    var: str
    rows: list[Table1Row]

    def subset_text(self, s: frozenset[int]) -> str:
        if not s:
            return "∅"
        if len(s) == self.ring.size:
            return self.ring.label
        return "{" + ",".join(self.ring.element_labels[a] for a in sorted(s)) + "}"

    def cells(self, row: Table1Row) -> list[str]:
        return [
            self.subset_text(row.subset),
            row.entry.description,
            "none" if row.algebraic_set is None else self.subset_text(row.algebraic_set),
            "none" if row.witness is None else row.witness.factored(self.var),
        ]

    def to_text(self) -> str:
        header = ["subset", "annihilators of minimal degree", "algebraic set", "exact witness"]
        body = [self.cells(r) for r in self.rows]
        widths = [max(len(line[i]) for line in [header, *body]) for i in range(4)]

        def fmt(cells):
            return " | ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()

        sep = "-+-".join("-" * w for w in widths)
        return "\n".join([f"Algebraic sets of {self.ring.label}", fmt(header), sep,
                          *(fmt(c) for c in body)]) + "\n"

    def to_json(self) -> dict:
        R = self.ring
        rows = []
        for r in self.rows:
            cells = self.cells(r)
            rows.append({
                "subset": [R.element_labels[a] for a in sorted(r.subset)],
                "label": cells[0],
                "degree": r.entry.degree,
                "family": cells[1],
                "family_size": int(len(r.entry.family)),
                "members": sorted(list(t) for t in r.entry.members()),
                "minimal_witness": (None if r.entry.witness is None
                                    else r.entry.witness.expanded(self.var)),
                "algebraic_set": (None if r.algebraic_set is None
                                  else [R.element_labels[a] for a in sorted(r.algebraic_set)]),
                "witness": cells[3],
                "witness_expanded": None if r.witness is None else r.witness.expanded(self.var),
                "witness_degree": None if r.witness is None else r.witness.degree,
            })
        return {"ring": R.label, "variable": self.var, "rows": rows}


def table1(ring: FiniteRing, caps: Caps | None = None) -> Table1:
    """One row per subset of the ring, ordered by size then lexicographically."""
    if ring.size > MAX_TABLE_RING:
        raise ResourceLimitError("table ring size", MAX_TABLE_RING, ring.size)
    caps = resolve(caps)
    var = "y" if any("x" in lab for lab in ring.element_labels) else "x"
    rows = []
    for k in range(ring.size + 1):
        for subset in combinations(ring.elements(), k):
            s = frozenset(subset)
            entry = annihilators_of(ring, s, var=var, caps=caps)
            w = exact_variety_witness(ring, s, caps)
            rows.append(Table1Row(s, entry, w, None if w is None else w.zero_set()))
    return Table1(ring, var, rows)
