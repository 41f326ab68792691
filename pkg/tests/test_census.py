import pytest

from twistedcubic.algebra import GF
from twistedcubic.census import (
    generic_index_histogram,
    j_set_census,
    j_set_formulas,
    line_census,
    pgl2,
    point_census,
    point_orbit_closure,
    point_orbit_formula,
    verify_all,
)
from twistedcubic.errors import BadCharacteristic, BoundExceeded, FieldTooSmall


def test_pgl2_order(F5):
    G = pgl2(F5)
    assert len(G) == 120


def test_point_census_q5(F5):
    assert point_census(F5) == (6, 30, 20, 60, 40) == point_orbit_formula(5)
    assert sum(point_census(F5)) == 156


def test_point_orbit_closure_q5(F5):
    assert point_orbit_closure(F5)


def test_bound(F7):
    with pytest.raises(BoundExceeded):
        point_census(GF(17))
    with pytest.raises(BoundExceeded):
        line_census(F7, bound=5)


def test_line_census_q5(F5):
    c = line_census(F5)
    assert c.ok
    assert len(c.generic_orbits) == 6
    assert c.index_histogram() == {1: 2, 2: 4}
    assert sum(o.size for o in c.line_orbits) == 806


def test_line_census_q7(F7):
    c = line_census(F7)
    assert len(c.generic_orbits) == 12
    assert c.index_histogram() == {k: v for k, v in generic_index_histogram(7, 1).items() if v}


def test_census_determinism(F5):
    a = line_census(F5, threads=1)
    b = line_census(F5, threads=2)
    assert [o.row() for o in a.line_orbits] == [o.row() for o in b.line_orbits]
    assert [o.rep for o in a.line_orbits] == [o.rep for o in b.line_orbits]


def test_j_sets_q7(F7):
    js = j_set_census(F7)
    assert js.ok
    assert (len(js.J4), len(js.J2), len(js.J1)) == (0, 3, 2)
    assert (len(js.J2_plus), len(js.J4_plus), len(js.J1_plus)) == (1, 0, 1)
    assert js.J1 | js.J2 | js.J4 == set(range(7)) - {0, 1728 % 7}


def test_j_set_formulas_larger_q():
    # the formulas are integral for every admissible q
    for q in (17, 19, 23, 29, 31, 37, 41, 43):
        mu = 1 if q % 3 == 1 else -1
        f = j_set_formulas(q, mu)
        assert f["J1"] + f["J2"] + f["J4"] == q - 2


@pytest.mark.slow
def test_j_sets_q17():
    js = j_set_census(GF(17), bound=17)
    assert js.ok and len(js.J4_plus) == 1


def test_verify_all_q5(F5):
    rep = verify_all(F5, seed=3, trials=50)
    assert rep.passed, rep.failures
    assert len(rep.checks) >= 20
    names = [c["name"] for c in rep.checks]
    assert len(set(names)) == len(names)


@pytest.mark.parametrize("p,k,exc", [(2, 2, FieldTooSmall), (3, 2, BadCharacteristic)])
def test_excluded(p, k, exc):
    with pytest.raises(exc):
        verify_all(GF(p, k))
