import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import SMALL_SPECS, ring, small_rings
from kspace import DomainError, Ideal, enumerate_ideals, generate, principal, radical, spec, spi, spm
from kspace.ideals import ideal_product, ideal_sum, intersect, is_ideal, quotient_ring


def brute_force_ideals(R):
    """Independent oracle: test the ideal axioms on every subset of A."""
    n = R.size
    found = set()
    for mask in range(1 << n):
        s = {a for a in range(n) if mask >> a & 1}
        if R.zero not in s:
            continue
        if any(R._add[a][b] not in s for a in s for b in s):
            continue
        if any(R._neg[a] not in s for a in s):
            continue
        if any(R._mul[r][a] not in s for a in s for r in range(n)):
            continue
        found.add(frozenset(s))
    return found


def brute_prime(R, s):
    return R.one not in s and all(
        R._mul[a][b] not in s for a in range(R.size) for b in range(R.size)
        if a not in s and b not in s)


@pytest.mark.parametrize("spec_", [s for s in SMALL_SPECS if ring(s).size <= 8])
def test_enumeration_matches_subset_oracle(spec_):
    R = ring(spec_)
    ideals = {i.members for i in enumerate_ideals(R)}
    assert ideals == brute_force_ideals(R)


@pytest.mark.parametrize("spec_", SMALL_SPECS)
def test_prime_and_maximal_filters(spec_):
    R = ring(spec_)
    ideals = list(enumerate_ideals(R))
    assert {i.members for i in spec(R)} == {i.members for i in ideals if brute_prime(R, i.members)}
    proper = [i for i in ideals if i.is_proper]
    maximal = {i.members for i in proper if not any(i.members < j.members for j in proper)}
    assert {i.members for i in spm(R)} == maximal
    assert len(spi(R)) == len(ideals) - 1


def test_known_spectra():
    Z12 = ring("Z12")
    assert [str(i) for i in spi(Z12)] == ["(0)", "(6)", "(4)", "(3)", "(2)"]
    assert sorted(str(p) for p in spec(Z12)) == ["(2)", "(3)"]
    assert [str(p) for p in spec(ring("Z4"))] == ["(2)"]
    assert [str(p) for p in spec(ring("Z5"))] == ["(0)"]


def test_canonical_order_is_size_then_members():
    keys = [i.sort_key() for i in enumerate_ideals(ring("Z2xZ4"))]
    assert keys == sorted(keys)


@given(small_rings, st.data())
def test_generate_is_smallest_ideal(R, data):
    S = data.draw(st.sets(st.integers(0, R.size - 1), max_size=3))
    I = generate(R, S)
    assert is_ideal(R, I.members) and S <= I.members
    for J in enumerate_ideals(R):
        if S <= J.members:
            assert I <= J


@given(small_rings, st.data())
def test_lattice_operations(R, data):
    ideals = list(enumerate_ideals(R))
    a = data.draw(st.sampled_from(ideals))
    b = data.draw(st.sampled_from(ideals))
    s, p, i = ideal_sum(a, b), ideal_product(a, b), intersect(a, b)
    assert all(is_ideal(R, x.members) for x in (s, p, i))
    assert p <= i <= a <= s and i <= b <= s
    assert s == generate(R, a.members | b.members)


@given(small_rings, st.data())
def test_radical(R, data):
    a = data.draw(st.sampled_from(list(enumerate_ideals(R))))
    r = radical(a)
    assert a <= r and radical(r) == r
    for x in r:
        assert any(R.power(x, k) in a.members for k in range(1, R.size + 1))
    # radical equals the intersection of the primes containing a
    primes = [p for p in spec(R) if a <= p]
    expected = set(range(R.size))
    for p in primes:
        expected &= p.members
    assert r.members == expected


def test_principal_and_str():
    Z4 = ring("Z4")
    assert principal(Z4, 2).members == {0, 2}
    assert str(principal(Z4, 2)) == "(2)"
    D = ring("Z4[x]/(x^2)")
    two_x = generate(D, [D.element("2"), D.element("x")])
    assert str(two_x) == "(2,x)"


def test_ideal_check_rejects_non_ideal():
    with pytest.raises(DomainError):
        Ideal(ring("Z4"), [0, 1], check=True)


@pytest.mark.parametrize("spec_", ["Z6", "Z12", "Z2xZ4", "Z4[x]/(x^2)"])
def test_quotient_ring_by_every_proper_ideal(spec_):
    R = ring(spec_)
    for a in spi(R):
        Q, pi = quotient_ring(R, a)
        assert Q.size * a.size == R.size
        assert Q.is_valid
        assert pi.kernel == a and pi.is_surjective


def test_quotient_rejects_unit_ideal():
    R = ring("Z6")
    with pytest.raises(DomainError):
        quotient_ring(R, Ideal(R, range(6)))


def test_ideal_count_of_boolean_cube():
    # ideals of (Z2)^3 correspond to subsets of the three coordinates
    assert len(enumerate_ideals(ring("Z2xZ2xZ2"))) == 8
    assert len(spm(ring("Z2xZ2xZ2"))) == 3
