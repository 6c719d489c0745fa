import pytest
from hypothesis import given

from kspace import (
    I,
    V,
    build_kspace,
    build_zariski,
    compare_spaces,
    enumerate_ideals,

    kspace_suite,
    prop22_suite,
    radical,
    spi,
    zariski_suite,
)
from kspace.rings import zero_divisors

from conftest import CORPUS_SPECS, FIELDS, GOLDEN, ring, small_rings


def test_v_and_i_basics(Z4):
    pts = spi(Z4)
    zero, two = pts
    assert V(pts, [Z4.zero]) == frozenset(pts)
    assert V(pts, two) == frozenset([two])
    assert V(pts, [Z4.one]) == frozenset()
    assert I([zero, two]) == zero
    assert set(I([], Z4).elements) == set(Z4.elements())
    with pytest.raises(ValueError):
        I([])


@given(small_rings)
def test_v_of_ideal_matches_definition(A):
    top = build_kspace(A, "Spi")
    for a in top.idl:
        expected = {p for p in top.points if set(a.elements) <= set(p.elements)}
        assert top.V(a) == expected


def test_item10_counterexample_on_z4(Z4):
    rep = prop22_suite(Z4)
    item = rep.item("10")
    assert item.check("VI(T) = T for T in C_V").ok
    arbitrary = item.check("VI(T) = T for arbitrary T")
    assert arbitrary.kind == "known-discrepancy"
    assert {"T": ["(0)"], "VI(T)": ["(0)", "(2)"]} in arbitrary.witness


def test_item3_strict_on_z4_and_never_on_fields(Z4):
    check = prop22_suite(Z4).item("3").check(
        "for non-radical a: V(rad a) strictly inside V(a) iff nonzero zero divisors exist")
    assert check.ok
    assert check.witness == {"a": "(0)", "rad_a": "(2)", "V(rad a)": ["(2)"],
                             "V(a)": ["(0)", "(2)"]}
    for spec in FIELDS[:5]:
        assert prop22_suite(ring(spec)).item("3").checks[1].witness is None


def test_reduced_rings_have_no_strictness():
    # on a reduced ring every ideal is radical, so V(rad a) = V(a) always
    for spec in ("Z6", "Z10", "Z2xZ2"):
        A = ring(spec)
        assert zero_divisors(A)
        assert all(radical(a) == a for a in enumerate_ideals(A))
        assert prop22_suite(A).item("3").checks[1].witness is None


@pytest.mark.parametrize("spec", CORPUS_SPECS)
def test_suites_pass_on_corpus(spec):
    A = ring(spec)
    for suite in (prop22_suite, kspace_suite, zariski_suite):
        rep = suite(A)
        assert rep.ok, [(i.item, i.verdict) for i in rep.items]


def test_spec_z6_disconnected_spi_connected(Z6):
    assert not build_zariski(Z6).report().connected
    assert build_kspace(Z6, "Spi").report().connected


def test_zariski_equals_restricted_kspace(Z6):
    z = build_zariski(Z6)
    assert [str(p) for p in z.points] == ["(3)", "(2)"]
    assert zariski_suite(Z6).item("topology").check(
        "k-topology restricted to Spec A is the Zariski topology").ok


@pytest.mark.parametrize("spec,name", [("Z4", "table2_Z4"), ("Z6", "table2_Z6"),
                                       ("Z12", "table2_Z12"), ("Z2[x]/(x^2)", "table2_Z2_dual")])
def test_table2_golden(spec, name):
    text = compare_spaces(ring(spec)).to_text()
    assert text == (GOLDEN / f"{name}.txt").read_text(encoding="utf-8")


def test_table2_json_shape(Z4):
    data = compare_spaces(Z4).to_json()
    assert data["ring"] == "Z4"
    assert [r["row"] for r in data["rows"]][0] == "points"
