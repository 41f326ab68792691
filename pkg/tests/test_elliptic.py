import random

import pytest
from hypothesis import given, settings, strategies as st

from twistedcubic.algebra import GF
from twistedcubic.errors import NonGenericLine, SingularCurve
from twistedcubic.elliptic import (
    INFINITY,
    add,
    coeffs,
    coeffs_closed,
    coeffs_via_quartic,
    count_points,
    elliptic_data,
    hasse_ok,
    mul,
    neg,
    on_curve,
    orbit_invariance_check,
    torsion_witness,
)
from twistedcubic.forms import discriminant, gl2_identity
from twistedcubic.incidence import decompose_generic
from twistedcubic.klein import all_lines, line_from_ints, random_generic_line, random_gl2


def test_golden_sample_line_q7():
    # frozen output of the sample-line generator at q = 7
    F = GF(7)
    L = random_generic_line(F, random.Random(51))
    assert L.key() == (1, 6, 1, 6, 4, 6)
    assert [x.value for x in coeffs(L)] == [2, 3]
    d = elliptic_data(L)
    assert d.e_count == 12 and [x.value for x in d.torsion_witness] == [6, 4]
    assert decompose_generic(L).counts == (0, 2, 1, 1, 4)


def test_golden_sample_line_q11():
    F = GF(11)
    L = random_generic_line(F, random.Random(11))
    assert L.key() == (1, 9, 1, 1, 9, 5)
    assert [x.value for x in coeffs(L)] == [9, 0]
    assert elliptic_data(L).e_count == 12


@pytest.mark.parametrize("q", (7, 11))
def test_coefficient_routes_agree(q, rng):
    F = GF(q)
    for _ in range(100):
        L = random_generic_line(F, rng)
        assert coeffs_closed(L) == coeffs_via_quartic(L)


def test_scaling_coordinates(F11, rng):
    """Rescaling the six coordinates twists (g2, g3) by (c^4, c^6) and keeps #E."""
    for _ in range(30):
        L = random_generic_line(F11, rng)
        c = F11.elem(1 + rng.randrange(10))
        z = [c * x for x in L.z]
        g2, g3 = coeffs_via_quartic(L)
        h2, h3 = coeffs_via_quartic(z)
        assert (h2, h3) == (c ** 4 * g2, c ** 6 * g3)
        assert count_points(h2, h3, F11) == count_points(g2, g3, F11)


def test_non_generic_rejected(F7):
    L = line_from_ints(F7, (0, 0, 1, 0, 0, 1))
    for fn in (coeffs, torsion_witness):
        with pytest.raises(NonGenericLine):
            fn(L)


def test_singular_curve(F7):
    with pytest.raises(SingularCurve):
        count_points(F7(0), F7(0), F7)
    # 4S^3 - 3S + 1 = (S + 1)(2S - 1)^2
    with pytest.raises(SingularCurve):
        count_points(F7(3), F7(-1), F7)


def test_rational_root_contributes_one_point(F7):
    # 4S^3 - 4S = 4S(S-1)(S+1): three affine points with T = 0
    n = count_points(F7(4), F7(0), F7)
    brute = 1 + sum(1 for s in F7 for t in F7 if t * t == 4 * s ** 3 - 4 * s)
    assert n == brute
    assert sum(1 for s in F7 if 4 * s ** 3 - 4 * s == 0) == 3


@pytest.mark.parametrize("q", (5, 7, 11))
def test_count_matches_exhaustive_points(q, rng):
    F = GF(q)
    for _ in range(15):
        g2, g3 = F.elem(rng.randrange(q)), F.elem(rng.randrange(q))
        if g2 ** 3 == 27 * g3 * g3:
            continue
        brute = 1 + sum(1 for s in F for t in F if t * t == 4 * s ** 3 - g2 * s - g3)
        assert count_points(g2, g3, F) == brute


@pytest.mark.parametrize("q", (5, 7))
def test_every_generic_line(q):
    F = GF(q)
    for L in all_lines(F):
        if not discriminant(L.phi):
            continue
        p = decompose_generic(L)
        assert hasse_ok(p.e_count, q)
        assert p.e_count % 3 == 0
        assert p.nu == (p.e_count - p.eta) // 2
        S, T = torsion_witness(L)
        assert T != 0


def test_orbit_invariance(F7, rng):
    L = random_generic_line(F7, rng)
    assert orbit_invariance_check(L, gl2_identity(F7))
    for _ in range(50):
        assert orbit_invariance_check(L, random_gl2(F7, rng))


# -- group law --------------------------------------------------------------------


def _points(F, g2, g3):
    out = [INFINITY]
    for s in F:
        for t in F:
            if t * t == 4 * s ** 3 - g2 * s - g3:
                out.append((s, t))
    return out


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 12), st.integers(0, 12), st.randoms(use_true_random=False))
def test_group_law(a, b, r):
    F = GF(13)
    g2, g3 = F(a), F(b)
    if g2 ** 3 == 27 * g3 * g3:
        return
    pts = _points(F, g2, g3)
    P, Q, R = (r.choice(pts) for _ in range(3))
    assert on_curve(add(P, Q, g2, g3), g2, g3)
    assert add(P, Q, g2, g3) == add(Q, P, g2, g3)
    assert add(add(P, Q, g2, g3), R, g2, g3) == add(P, add(Q, R, g2, g3), g2, g3)
    assert add(P, INFINITY, g2, g3) == P
    assert add(P, neg(P), g2, g3) is INFINITY
    assert mul(len(pts), P, g2, g3) is INFINITY


def test_hasse():
    assert hasse_ok(8, 7) and not hasse_ok(14, 7)
