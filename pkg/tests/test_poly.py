from itertools import combinations, product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kspace import (
    DomainError,
    Polynomial,
    SearchExhaustedError,
    annihilators_of,
    exact_variety_witness,
    solution_set,
    table1,
)
from kspace.poly import annihilator_family, evaluate, parse_family

from conftest import FIELDS, ring


def oracle_family(A, subset, degree):
    """All coefficient tuples of length degree+1 vanishing on the subset."""
    out = set()
    for t in product(A.elements(), repeat=degree + 1):
        if all(evaluate(Polynomial(A, t), a) == A.zero for a in subset):
            out.add(t)
    return out


def oracle_zero_sets(A, degree):
    """Every zero set realized by a polynomial of degree <= ``degree``."""
    return {Polynomial(A, t).zero_set() for t in product(A.elements(), repeat=degree + 1)}


def subsets(A):
    elems = list(A.elements())
    for k in range(len(elems) + 1):
        yield from (frozenset(s) for s in combinations(elems, k))


def test_evaluate_and_solution_set(Z4):
    p = Polynomial(Z4, [2, 0, 1])   # x^2 + 2
    assert [evaluate(p, a) for a in range(4)] == [2, 3, 2, 3]
    q = Polynomial(Z4, [0, 2])      # 2x
    assert solution_set([q]) == {0, 2}
    assert solution_set([q, Polynomial(Z4, [0, 1])]) == {0}
    assert solution_set([], Z4) == {0, 1, 2, 3}
    with pytest.raises(DomainError):
        solution_set([])
    with pytest.raises(DomainError):
        evaluate(q, 4)


def test_product_of_linear_factors(Z4):
    p = Polynomial.from_roots(Z4, [1, 3])
    assert p.coeffs == (3, 0, 1)     # (x+3)(x+1) = x^2+3 over Z4
    assert p.factored() == "(x+3)(x+1)"
    assert p.expanded() == "x^2+3"
    assert Polynomial.from_roots(Z4, [2]).factored() == "x+2"
    assert Polynomial.from_roots(Z4, [0, 2]).factored() == "x(x+2)"
    assert Polynomial.from_roots(Z4, []).factored() == "1"


def test_zero_polynomial(Z4):
    z = Polynomial(Z4, [0, 0])
    assert z.is_zero and z.degree == float("-inf")
    assert z.zero_set() == {0, 1, 2, 3}


@given(st.sampled_from(["Z4", "Z6", "Z2[x]/(x^2)"]).map(ring), st.data())
def test_arithmetic_is_pointwise(A, data):
    coeffs = st.lists(st.sampled_from(A.elements()), max_size=4)
    p = Polynomial(A, data.draw(coeffs))
    q = Polynomial(A, data.draw(coeffs))
    for a in A.elements():
        assert (p + q)(a) == A.add(p(a), q(a))
        assert (p * q)(a) == A.mul(p(a), q(a))


@pytest.mark.parametrize("spec", ["Z4", "Z6", "Z2[x]/(x^2)", "Z2xZ2"])
def test_family_matches_oracle(spec):
    A = ring(spec)
    for S in subsets(A):
        for d in range(3):
            F = annihilator_family(A, S, d)
            got = {tuple(int(c) for c in row) for row in F}
            assert got == oracle_family(A, S, d), (sorted(S), d)


def test_single_point_rows(Z4):
    e = annihilators_of(Z4, {2})
    assert e.degree == 1
    assert e.description == "{ax+b | 2a+b=0}"
    assert e.witness.expanded() == "x+2"
    e = annihilators_of(Z4, {0})
    assert e.description == "{ax}"
    assert e.witness.expanded() == "x"


def test_empty_subset_row(Z4):
    e = annihilators_of(Z4, set())
    assert e.degree == 0
    assert e.description == "Z4\\{0}"
    assert e.witness.expanded() == "1"


def test_minimal_degree_can_undercut_subset_size(Z4):
    # 2x vanishes on {0,2}; 2x^2+2x vanishes on all of Z4
    assert annihilators_of(Z4, {0, 2}).degree == 1
    assert annihilators_of(Z4, {0, 1, 2, 3}).degree == 2


def test_search_exhausted(Z4):
    with pytest.raises(SearchExhaustedError):
        annihilators_of(Z4, {1}, max_degree=0)
    with pytest.raises(DomainError):
        annihilators_of(Z4, {7})


def test_every_z4_subset_has_product_witness(Z4):
    for S in subsets(Z4):
        w = exact_variety_witness(Z4, S)
        assert w is not None and w.zero_set() == S
        assert w.degree == len(S) or (not S and w.degree == 0)


@pytest.mark.parametrize("spec,degree", [("Z6", 2), ("Z8", 3)])
def test_realizable_zero_sets_match_oracle(spec, degree):
    # k! vanishes as a function times x(x-1)...(x-k+1), so polynomial functions on
    # Z6 (resp. Z8) are realized in degree <= 2 (resp. 3)
    A = ring(spec)
    realizable = oracle_zero_sets(A, degree)
    for S in subsets(A):
        w = exact_variety_witness(A, S)
        if S in realizable:
            assert w is not None and w.zero_set() == S
        else:
            assert w is None, sorted(S)


def test_unrealizable_counts():
    assert sum(exact_variety_witness(ring("Z6"), S) is None for S in subsets(ring("Z6"))) == 42
    Z8 = ring("Z8")
    assert exact_variety_witness(Z8, {1, 3}) is None
    assert sum(exact_variety_witness(Z8, S) is None for S in subsets(Z8)) == 192


@pytest.mark.parametrize("spec", [f for f in FIELDS if ring(f).size <= 8])
def test_fields_realize_every_subset(spec):
    F = ring(spec)
    for S in subsets(F):
        w = exact_variety_witness(F, S)
        assert w is not None and w.zero_set() == S
        if S and len(S) < F.size:
            assert annihilators_of(F, S).degree == len(S)


def test_parse_family(Z4):
    deg, members = parse_family(Z4, "{ax+b | 2a+b=0}")
    assert deg == 1 and members == {(0, 0), (2, 1), (0, 2), (2, 3)}
    deg, members = parse_family(Z4, "Z4\\{0}")
    assert deg == 0 and members == {(1,), (2,), (3,)}
    deg, members = parse_family(Z4, "{ax^2+bx+c | a-b=0, 2a+c=0}")
    assert deg == 2 and (2, 1, 1) in members
    _, ax = parse_family(Z4, "{ax}")
    assert ax == {(0, a) for a in range(4)}
    with pytest.raises(DomainError):
        parse_family(Z4, "ax+b")


@pytest.mark.parametrize("spec", ["Z4", "Z6"])
def test_description_round_trips(spec):
    A = ring(spec)
    for S in subsets(A):
        e = annihilators_of(A, S)
        deg, members = parse_family(A, e.description)
        if e.description.startswith(A.label):
            assert members == e.nonzero_members()
        else:
            # the template may drop variables forced to zero
            padded = {t + (A.zero,) * (e.degree + 1 - len(t)) for t in members}
            assert padded == e.members()


def test_table1_shape(Z4):
    t = table1(Z4)
    assert len(t.rows) == 16
    assert [r.algebraic_set for r in t.rows] == [r.subset for r in t.rows]
    assert t.subset_text(frozenset()) == "∅"
    assert t.subset_text(frozenset(Z4.elements())) == "Z4"
