from itertools import product

import pytest

from conftest import corpus
from sullivan_lab.cohomology import basis_classes, betti_numbers, class_of, cohomology_basis
from sullivan_lab.gca import AlgebraError, Element
from sullivan_lab.geomodels import (
    FiniteGradedRing, circle_bundle_model, constructive_amassey_vanishing,
    constructive_massey_vanishing, cpn_ring, cup_length, hard_lefschetz_check, lefschetz_split,
    obstruction_report, s2xs2_ring, sphere_bundle_model, sphere_power_ring, split_class_representative,
    split_parts, tievsky_model,
    torus_ring,
)
from sullivan_lab.massey import (
    MasseyUndefined, a_massey, amassey_value_element, defining_system_value, validate_primitives,
)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_tievsky_over_cpn_is_odd_sphere(n):
    E = tievsky_model(cpn_ring(n), "h")
    top = 2 * n + 1
    assert betti_numbers(E, range(top + 1)) == [1] + [0] * (top - 1) + [1]


def test_tievsky_over_s2xs2():
    E = tievsky_model(s2xs2_ring(), "a + b", name="y")
    assert betti_numbers(E, range(6)) == [1, 0, 1, 1, 0, 1]
    assert E.lefschetz_ring is not None
    rep = cohomology_basis(E, 3).representatives[0]
    assert str(rep) == "a*y - b*y"


def test_tievsky_rejects_bad_class():
    with pytest.raises(AlgebraError):
        tievsky_model(s2xs2_ring(), "ab")
    with pytest.raises(AlgebraError):
        tievsky_model(s2xs2_ring(), "0")


@pytest.mark.parametrize("ring", [cpn_ring(1), cpn_ring(2), cpn_ring(3), s2xs2_ring(), sphere_power_ring(3)])
def test_lefschetz_holds(ring):
    assert hard_lefschetz_check(ring).holds


def test_lefschetz_fails_for_degenerate_omega():
    A = FiniteGradedRing.from_table([("a", 2), ("b", 2), ("ab", 4)], {"a*b": "ab"}, omega="a", n=2)
    rep = hard_lefschetz_check(A)
    assert not rep.holds
    assert rep.lines()[-1].startswith("hard Lefschetz: fails")


def test_torus_lefschetz():
    assert hard_lefschetz_check(torus_ring(4)).holds


def test_split_high_class():
    E = tievsky_model(s2xs2_ring(), "a + b", name="y")
    c = cohomology_basis(E, 3).representatives[0]
    sp = lefschetz_split(E, c)
    assert sp.form == "y"
    assert str(sp.beta) == "a - b"
    assert E.d(sp.certificate) == c - sp.representative


def test_split_low_class():
    E = tievsky_model(s2xs2_ring(), "a + b", name="y")
    c = cohomology_basis(E, 2).representatives[0]
    sp = lefschetz_split(E, c)
    assert sp.form == "base"
    alpha, beta = split_parts(E, sp.representative)
    assert not beta


def fixture_sets(E):
    top = 2 * E.lefschetz_ring.n + 1
    classes = [c.representative for k in range(1, top + 1) for c in basis_classes(E, k)]
    classes.append(E.algebra.zero(2))
    return classes


@pytest.mark.parametrize("ring", [s2xs2_ring(), sphere_power_ring(3)], ids=["s2xs2", "s2cubed"])
def test_constructive_quadruple(ring):
    E = tievsky_model(ring, ring.omega, name="y")
    done = 0
    for combo in product(fixture_sets(E), repeat=4):
        try:
            W = constructive_massey_vanishing(E, list(combo))
        except MasseyUndefined:
            continue
        assert defining_system_value(E, W).is_zero()
        done += 1
    assert done > 0


@pytest.mark.parametrize("ring", [s2xs2_ring(), sphere_power_ring(3)], ids=["s2xs2", "s2cubed"])
def test_constructive_amassey(ring):
    E = tievsky_model(ring, ring.omega, name="y")
    classes = fixture_sets(E)
    done = 0
    for a in [c for c in classes if c.degree % 2 == 0]:
        for bs in product(classes, repeat=3):
            try:
                xis = constructive_amassey_vanishing(E, a, list(bs))
            except MasseyUndefined:
                continue
            breps = [split_class_representative(E, b) for b in bs]
            arep = split_class_representative(E, a)
            validate_primitives(E, arep, breps, xis)
            q = 2 * a.degree + sum(b.degree for b in bs) - 2
            assert class_of(E, amassey_value_element(E, breps, xis, q)).is_zero()
            done += 1
    assert done > 0


def test_lefschetz_fallback_in_engine(monkeypatch):
    import sullivan_lab.massey as massey

    E = tievsky_model(s2xs2_ring(), "a + b", name="y")
    b = E.embed(E.base.element("b"))
    real = massey._decide
    monkeypatch.setattr(massey, "_decide", lambda fam, policy, h: ("undecided", None, {}, []))
    r = massey.a_massey(E, b, [b, b, b])
    assert r.vanishes and r.proof["method"] == "lefschetz_constructive"
    r = massey.higher_massey_search(E, [b] * 4)
    assert r.vanishes and defining_system_value(E, r.witness).is_zero()
    off = massey.SearchPolicy(accept_lefschetz=False)
    assert massey.a_massey(E, b, [b, b, b], off).verdict == "undecided"
    monkeypatch.setattr(massey, "_decide", real)


def test_sphere_bundle_reproduces_m7(m7):
    base = corpus("s2xs2_model")
    E = sphere_bundle_model(base, 3, "2*a*b")
    assert betti_numbers(E, range(8)) == betti_numbers(m7, range(8))
    assert E.minimal


def test_circle_bundle_over_s2cubed():
    base = corpus("s2cubed_model")
    E = circle_bundle_model(base, "a1 + a2 + a3")
    assert betti_numbers(E, range(8)) == [1, 0, 2, 0, 0, 2, 0, 1]


def test_bundle_errors():
    base = corpus("s2xs2_model")
    with pytest.raises(AlgebraError):
        sphere_bundle_model(base, 2, "a")
    with pytest.raises(AlgebraError):
        circle_bundle_model(base, "a*b")


def test_cup_length(m7, b4):
    # [alpha*beta][gamma][mu] spans H^4; gamma^2 = 0 rules out four factors
    assert cup_length(b4, 4) == 3
    assert cup_length(m7, 7) == 2


def test_m7_not_obstructed(m7):
    rep = obstruction_report(model=m7, dimension=7)
    assert rep.verdict == "no obstruction found"
    assert rep.informational
    assert rep.tests["triple_massey"]["nonzero"] > 0


def test_odd_b1_obstructed():
    rep = obstruction_report(betti=[1, 1, 0, 0, 1, 1], dimension=5)
    assert rep.verdict == "obstructed"
    assert rep.tests["betti_parity"]["odd_degrees"] == [1]


def test_report_json_is_stable(m7):
    a = obstruction_report(model=m7, dimension=7).to_json()
    b = obstruction_report(model=m7, dimension=7).to_json()
    assert a == b
