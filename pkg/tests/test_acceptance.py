"""End-to-end acceptance criteria, one test each.

Each test records a single ``criterion N: PASS|FAIL ...`` line, printed in
the terminal summary, and then asserts.  Time limits are wall-clock seconds.
"""

import json
import time
from itertools import combinations

from hypothesis import given

from kspace import (
    MultiplicativeSet,
    build_kspace,
    build_zariski,
    continuity_check,
    density_check,
    enumerate_ideals,
    find_homomorphisms,
    localization_embedding_check,
    prop22_suite,
    surjection_homeo_check,
    universal_property_check,
)
from kspace.ringspec import parse_ring
from kspace.cli import cmd_table1, cmd_verify
from kspace.corpus import DEFAULT_HOMS, DEFAULT_RINGS, resolve_hom
from kspace.poly import annihilator_family, parse_family
from kspace.rings import idempotents, zero_divisors

from conftest import ACCEPTANCE, GOLDEN, SMALL_SPECS, ring
from test_ideals import brute_force_ideals
from test_poly import oracle_family
from test_topology import oracle_closed_sets, spaces

TABLE1_SECONDS = 1.0
PROP22_SECONDS = 10.0
TOPOLOGY_SECONDS = 10.0
MORPHISM_SECONDS = 10.0

CORPUS = [ring(s) for s in DEFAULT_RINGS]


def fresh_corpus():
    """Newly parsed rings, so timings include every cached computation."""
    return [parse_ring(s) for s in DEFAULT_RINGS]


def record(n: int, problems: list[str], detail: str):
    line = f"criterion {n}: {'PASS' if not problems else 'FAIL'} - {detail}"
    if problems:
        line += " | " + "; ".join(problems)
    ACCEPTANCE[n] = line
    print(line)
    assert not problems, line


def _key(subset) -> str:
    return ",".join(str(a) for a in sorted(subset))


def _strip_outer_parens(text: str) -> str:
    if text.startswith("(") and text.endswith(")") and text.count("(") == 1:
        return text[1:-1]
    return text


def test_criterion_1_table1():
    start = time.perf_counter()
    text = cmd_table1("Z4")
    elapsed = time.perf_counter() - start
    ref = json.loads((GOLDEN / "table1_Z4_reference.json").read_text(encoding="utf-8"))
    Z4 = ring("Z4")
    table = json.loads(cmd_table1("Z4", "json"))
    rows = {_key(r["subset"]): r for r in table["rows"]}
    problems = []
    if text != (GOLDEN / "table1_Z4.txt").read_text(encoding="utf-8"):
        problems.append("text differs from golden")
    if elapsed >= TABLE1_SECONDS:
        problems.append(f"took {elapsed:.2f}s")
    if len(ref["rows"]) != 16 or len(rows) != 16:
        problems.append("expected 16 rows")
    div = ref["divergences"]
    same_family = same_witness = 0
    for r in ref["rows"]:
        k = _key(r["subset"])
        ours = rows[k]
        # witness column: byte-identical unless recorded as a typographic divergence
        if ours["witness"] == r["witness"]:
            same_witness += 1
            if k in div["witness"]:
                problems.append(f"witness {k} recorded as divergent but matches")
        elif not (k in div["witness"] and _strip_outer_parens(r["witness"]) == ours["witness"]):
            problems.append(f"witness {k}: {ours['witness']!r} vs printed {r['witness']!r}")
        # family column: extensional comparison at the printed degree, nonzero members
        degree, printed = parse_family(Z4, r["family"])
        printed = {t for t in printed if any(t)}
        truth = {t for t in oracle_family(Z4, r["subset"], degree) if any(t)}
        computed = {tuple(int(c) for c in row)
                    for row in annihilator_family(Z4, r["subset"], degree)} - {(0,) * (degree + 1)}
        if computed != truth:
            problems.append(f"family {k}: computed family disagrees with the oracle")
        if printed == truth:
            same_family += 1
            if k in div["family"]:
                problems.append(f"family {k} recorded as divergent but matches")
        elif k not in div["family"]:
            problems.append(f"family {k}: unrecorded divergence from the printed row")
        if (ours["degree"] != degree) != (k in div["degree"]):
            problems.append(f"degree {k}: computed {ours['degree']}, printed {degree}")
    record(1, problems,
           f"{same_witness}/16 witnesses byte-identical, {same_family}/16 families equal; "
           f"{len(div['witness'])} witness, {len(div['family'])} family and "
           f"{len(div['degree'])} degree divergences recorded; {elapsed:.3f}s")


def test_criterion_2_prop22():
    start = time.perf_counter()
    corpus = fresh_corpus()
    reports = {A.label: prop22_suite(A) for A in corpus}
    elapsed = time.perf_counter() - start
    problems = []
    if len(CORPUS) < 8 or max(A.size for A in CORPUS) > 16:
        problems.append("corpus shape")
    for A in CORPUS:
        rep = reports[A.label]
        for key in ("1", "2", "4", "5", "6", "7", "8", "9", "11"):
            if rep.item(key).verdict != "pass":
                problems.append(f"{A.label} item {key}")
        item3 = rep.item("3")
        if not all(c.ok for c in item3.checks):
            problems.append(f"{A.label} item 3 direction")
        strict = item3.check(
            "for non-radical a: V(rad a) strictly inside V(a) iff nonzero zero divisors exist").witness
        if zero_divisors(A) and strict is None:
            problems.append(f"{A.label}: no strictness witness")
        if not zero_divisors(A) and strict is not None:
            problems.append(f"{A.label}: strictness on a field")
        item10 = rep.item("10")
        if not item10.check("VI(T) = T for T in C_V").ok:
            problems.append(f"{A.label} item 10 on C_V")
    counter = reports["Z4"].item("10").check("VI(T) = T for arbitrary T").witness
    if {"T": ["(0)"], "VI(T)": ["(0)", "(2)"]} not in counter:
        problems.append("Z4 counterexample T={(0)} missing")
    if elapsed >= PROP22_SECONDS:
        problems.append(f"took {elapsed:.2f}s")
    record(2, problems, f"{len(CORPUS)} rings, {elapsed:.2f}s")


def test_criterion_3_topology():
    start = time.perf_counter()
    problems = []
    for A in fresh_corpus():
        top = build_kspace(A, "Spi")
        X = top.space
        rep = X.report()
        for name in ("t0", "connected", "sober", "spectral_direct", "spectral_finite"):
            if not getattr(rep, name):
                problems.append(f"{A.label} {name}")
        for i, a in enumerate(top.points):
            if X.generic_points_mask(top.v_mask(a.mask)) != [i]:
                problems.append(f"{A.label} generic point of V({a})")
        subbasic = {top.v_mask(a.mask) for a in top.points}
        # exhaustive over the generated closed sets, against the pairwise definition
        family = set(X.closed_masks)
        for k in family:
            if k == 0:
                continue
            proper = [c for c in family if c & k == c and c != k]
            irreducible = not any(a | b == k for a, b in combinations(proper, 2))
            if irreducible != (k in subbasic):
                problems.append(f"{A.label} closed set {top.fmt(k)}")
    elapsed = time.perf_counter() - start
    if elapsed >= TOPOLOGY_SECONDS:
        problems.append(f"took {elapsed:.2f}s")
    record(3, problems, f"{len(CORPUS)} rings, {elapsed:.2f}s")


def test_criterion_4_zariski():
    from kspace.ideals import ideal_product, intersect, radical

    problems = []
    for A in CORPUS:
        top = build_zariski(A)
        V = {a: top.v_mask(a.mask) for a in top.idl}
        for a, b in combinations(top.idl, 2):
            if not (V[a] | V[b] == V[intersect(a, b)] == V[ideal_product(a, b)]):
                problems.append(f"{A.label} unions at {a}, {b}")
        for a in top.idl:
            if V[a] != V[radical(a)]:
                problems.append(f"{A.label} V(rad {a})")
            if top.i_mask(V[a]) != radical(a).mask:
                problems.append(f"{A.label} IV({a})")
        nontrivial = idempotents(A) - {A.zero, A.one}
        if top.report().connected != (not nontrivial):
            problems.append(f"{A.label} connectedness vs idempotents")
    Z6 = ring("Z6")
    if build_zariski(Z6).report().connected:
        problems.append("Spec Z6 connected")
    if not build_kspace(Z6, "Spi").report().connected:
        problems.append("Spi Z6 disconnected")
    record(4, problems, f"{len(CORPUS)} rings, exact set equalities")


def test_criterion_5_morphisms():
    start = time.perf_counter()
    problems = []
    rings = {}
    homs = [phi for spec in DEFAULT_HOMS for phi in resolve_hom(spec, rings=rings)]
    names = {(phi.source.label, phi.target.label) for phi in homs}
    for need in [("Z4", "Z2"), ("Z6", "Z2"), ("Z6", "Z3"), ("Z4", "Z4"), ("Z6", "Z6"), ("Z2", "Z2xZ2")]:
        if need not in names:
            problems.append(f"hom corpus lacks {need}")
    for phi in homs:
        if not continuity_check(phi).ok:
            problems.append(f"continuity {phi}")
        if not density_check(phi).ok:
            problems.append(f"density {phi}")
        if phi.is_surjective and not surjection_homeo_check(phi).ok:
            problems.append(f"homeomorphism {phi}")
    if not any(not phi.is_surjective for phi in homs):
        problems.append("no non-surjective hom")
    targets = [A for A in fresh_corpus() if A.size <= 8]
    for spec in ("Z6", "Z4"):
        A = parse_ring(spec)
        S = MultiplicativeSet(A, [A.element("1"), A.element("3")])
        if not localization_embedding_check(A, S).ok:
            problems.append(f"embedding {spec}")
        if not universal_property_check(A, S, targets).ok:
            problems.append(f"universal property {spec}")
    elapsed = time.perf_counter() - start
    if elapsed >= MORPHISM_SECONDS:
        problems.append(f"took {elapsed:.2f}s")
    record(5, problems, f"{len(homs)} homomorphisms, {len(targets)} targets, {elapsed:.2f}s")


closed_set_failures = []


@given(spaces())
def _closed_sets_agree(data):
    n, subbase, X = data
    if set(X.closed_masks) != oracle_closed_sets(n, subbase):
        closed_set_failures.append((n, subbase))


def test_criterion_6_oracles():
    problems = []
    specs = sorted({*SMALL_SPECS, *DEFAULT_RINGS})
    small = [ring(s) for s in specs if ring(s).size <= 8]
    for A in small:
        if {a.members for a in enumerate_ideals(A)} != brute_force_ideals(A):
            problems.append(f"ideals of {A.label}")
    spaces_checked = 0
    for A in CORPUS:
        top = build_kspace(A, "Spi")
        if len(top.points) <= 6:
            spaces_checked += 1
            if set(top.space.closed_masks) != oracle_closed_sets(len(top.points), top.v_masks):
                problems.append(f"closed sets of Spi {A.label}")
    _closed_sets_agree()
    problems += [f"random space {f}" for f in closed_set_failures[:3]]
    record(6, problems, f"{len(small)} rings of size <= 8, {spaces_checked} spectra "
                        f"and random spaces of <= 6 points")


def test_criterion_7_determinism():
    first = cmd_verify()
    second = cmd_verify()
    problems = [] if first == second else ["reports differ"]
    if first[0] != 0:
        problems.append(f"verify exit status {first[0]}")
    record(7, problems, f"{len(first[1])} bytes, identical")
