import pytest

from twistedcubic.algebra import GF, find_cube_root_of_unity, find_nonsquare
from twistedcubic.errors import NonGenericLine, OsculatingLine, ZeroDirection
from twistedcubic.forms import BinaryForm, discriminant, pg1_points
from twistedcubic.incidence import (
    NONGENERIC_CLASSES,
    brute_decompose,
    counts_from_elliptic,
    counts_from_nu,
    d_quartic,
    d_quartic_expanded,
    d_quartic_matrix,
    decompose,
    decompose_generic,
    decompose_nongeneric,
    eta,
    h_form,
    in_pencil,
    nongeneric_class,
    nongeneric_representatives,
    nu,
    osculating_point,
    planes_through_line_brute,
    planes_through_line_decompose,
    table_row,
)
from twistedcubic.klein import (
    all_lines,
    act_on_line,
    line_from_ints,
    line_from_pencil,
    line_nature,
    m_z,
    polar_dual_line,
    random_generic_line,
    random_gl2,
    random_line,
)


def mono(F, *cs):
    return BinaryForm.from_monomials(F, [F(c) for c in cs])


QS = (5, 7, 11, 13)


# -- h-forms ------------------------------------------------------------------------


def test_h_of_secant_at_infinity(F7):
    L = line_from_ints(F7, (0, 0, 1, 0, 0, 1))
    h = h_form(L, F7.one, F7.zero)
    assert h.proportional(mono(F7, 1, 0, 0))  # Y^2
    assert osculating_point(L, F7.one, F7.zero).proportional(mono(F7, 1, 0, 0, 0))


def test_h_secant_splits_with_cube_roots(F7):
    """On the secant, h factors through the cube roots of unity."""
    L = line_from_ints(F7, (0, 0, 1, 0, 0, 1))
    w = find_cube_root_of_unity(F7)
    for s, t in pg1_points(F7):
        want = BinaryForm.linear(w * s, t) * BinaryForm.linear(w * w * s, t) * F7(2)
        assert h_form(L, s, t) == want


def test_h_imaginary_secant_closed_form(F7):
    e = find_nonsquare(F7)
    L = [e * e, F7.zero, -e / 3, F7.zero, F7.one, 2 * e / 3]  # unnormalized
    for s, t in pg1_points(F7):
        a = BinaryForm.from_monomials(F7, [-e * t, s])  # Xs - Y e t
        b = BinaryForm.linear(s, t)
        assert h_form(L, s, t) == a * a + b * b * (e / 3)


def test_h_errors(F7):
    with pytest.raises(OsculatingLine):
        h_form(line_from_ints(F7, (0, 0, 1, 0, 0, -1)), F7.one, F7.zero)
    with pytest.raises(ZeroDirection):
        h_form(line_from_ints(F7, (0, 0, 1, 0, 0, 1)), F7.zero, F7.zero)


def test_osculating_points_lie_on_the_line(F11, rng):
    n = 0
    while n < 40:
        L = random_line(F11, rng)
        if line_nature(L).in_osculating:
            continue
        n += 1
        for s, t in pg1_points(F11):
            assert in_pencil(L, osculating_point(L, s, t))


# -- D_L --------------------------------------------------------------------------------


def test_d_quartic_two_formulas_on_every_line_q5(F5):
    for L in all_lines(F5):
        if not line_nature(L).in_osculating:
            assert d_quartic_matrix(L) == d_quartic_expanded(L)
            assert d_quartic(L, check=True) == d_quartic_expanded(L)


def test_disc_h_is_4D(F11, rng):
    for _ in range(20):
        L = random_generic_line(F11, rng)
        D = d_quartic(L)
        for s, t in pg1_points(F11):
            a3, a2, a1 = h_form(L, s, t).monomials()
            assert a2 * a2 - 4 * a1 * a3 == 4 * D(s, t)


def test_d_quartic_refuses_osculating(F7):
    with pytest.raises(OsculatingLine):
        d_quartic(line_from_ints(F7, (0, 0, 1, 0, 0, -1)))


# -- generic lines ------------------------------------------------------------------


def test_eta_examples(F13):
    # XY(X - Y)(X + Y) has four rational roots, X^4 - 2Y^4 none
    assert eta_of(F13, mono(F13, 0, -1, 0, 1, 0)) == 4
    F5 = GF(5)
    assert eta_of(F5, mono(F5, -2, 0, 0, 0, 1)) == 0


def eta_of(F, phi):
    from twistedcubic.algebra import sqrt
    from twistedcubic.forms import inv_I
    from twistedcubic.klein import Line

    r = sqrt(inv_I(phi))
    if r is None:
        pytest.skip("quartic does not come from a line over this field")
    return eta(Line(list(phi.coords) + [r]))


def test_generic_only(F7):
    L = line_from_ints(F7, (0, 0, 1, 0, 0, 1))
    for fn in (eta, nu, decompose_generic):
        with pytest.raises(NonGenericLine):
            fn(L)


def test_counts_helpers():
    assert counts_from_nu(7, 2, 5) == (0, 2, 1, 1, 4)
    assert counts_from_elliptic(7, 2, 12) == (0, 2, 1, 1, 4)


@pytest.mark.parametrize("q", (5, 7))
def test_generic_formula_equals_brute_force_everywhere(q):
    F = GF(q)
    seen = 0
    for L in all_lines(F):
        if not discriminant(L.phi):
            continue
        seen += 1
        b = brute_decompose(L).counts
        p = decompose_generic(L)
        assert p.counts == b == decompose_generic(L, via="elliptic").counts
        assert p.counts[0] == 0 and sum(p.counts) == q + 1
        assert (p.nu - p.eta) % 3 == 0 and (2 * p.nu + p.eta) % 3 == 0
        assert p.e_count % 3 == 0 and (p.e_count - p.eta) % 2 == 0
        assert p.counts[4] * 3 == p.e_count
    assert seen > 0


def test_h_tallies_match_counts(F7):
    for L in list(all_lines(F7))[::7]:
        brute_decompose(L, diagnostics=True)


@pytest.mark.parametrize("q", (11, 13))
def test_profile_constant_on_orbits(q, rng):
    F = GF(q)
    for _ in range(20):
        L, g = random_line(F, rng), random_gl2(F, rng)
        assert decompose(L).counts == decompose(act_on_line(g, L)).counts


# -- non-generic lines ------------------------------------------------------------------


@pytest.mark.parametrize("q", QS)
def test_representatives_match_table(q):
    F = GF(q)
    for name, L in nongeneric_representatives(F).items():
        assert nongeneric_class(L) == name
        assert brute_decompose(L).counts == table_row(name, q, F.mu) == decompose_nongeneric(L).counts


def test_table_spot_values(F7, F13):
    assert brute_decompose(line_from_ints(F7, (0, 0, 0, 0, 1, 0))).counts == (1, 7, 0, 0, 0)
    reps = nongeneric_representatives(F13)
    assert brute_decompose(reps["imaginary_axis"]).counts == (0, 0, 0, 14, 0)
    assert brute_decompose(reps["real_axis"]).counts == (0, 2, 12, 0, 0)
    q, mu = 13, 1
    assert decompose_nongeneric(reps["unisecant_irr"]).counts == (1, 0, (q - mu) // 6, (q + mu) // 2, (q - mu) // 3)
    assert decompose_nongeneric(reps["external_split"]).counts == (0, 3, (q - 3) // 2, (q - 1) // 2, 0)


def test_representative_matrices(F7):
    e = find_nonsquare(F7)

    def M(rows):
        return [[F7(x) if isinstance(x, int) else x for x in r] for r in rows]

    def z(*cs):
        return [F7(c) if isinstance(c, int) else c for c in cs]

    assert m_z(z(0, 0, 1, 0, 0, 1)) == M([[0, 0, 2], [0, 2, 0], [2, 0, 0]])
    assert m_z(z(0, 0, e, 0, -6, e)) == M([[-6, 0, 2 * e], [0, 2 * e, 0], [2 * e, 0, 0]])
    assert m_z(z(0, 0, 2, 3, 0, 2)) == M([[0, -6, 4], [-6, 4, 0], [4, 0, 0]])


@pytest.mark.parametrize(
    "u,v,name",
    [
        ((0, 0, 0, 1), (0, 0, 1, 0), "tangent"),  # X^2 (X + tY)
        ((0, 1, 0, 0), (0, 0, 0, -1), "osculating_unisecant"),  # X (Y^2 - t X^2)
        ((0, 1, 0, 0), (0, 0, 1, 0), "real_axis"),  # XY (Y + tX)
        ((0, 1, 2, 1), (0, 0, 0, 0), "external_split"),  # X ((X+Y)^2 - t Y^2)
    ],
)
@pytest.mark.parametrize("q", (7, 11))
def test_explicit_pencils(u, v, name, q):
    F = GF(q)
    U, V = mono(F, *u), mono(F, *v)
    if name == "external_split":
        V = mono(F, 0, -1, 0, 0)
    L = line_from_pencil(U, V)
    assert nongeneric_class(L) == name
    assert brute_decompose(L).counts == table_row(name, q, F.mu)


@pytest.mark.parametrize("q", (7, 11))
def test_imaginary_axis_pencil(q):
    F = GF(q)
    e = find_nonsquare(F)
    quad = BinaryForm.from_monomials(F, [-e, F.zero, F.one])  # X^2 - e Y^2
    L = line_from_pencil(quad * mono(F, 1, 0), quad * mono(F, 0, 1))
    assert nongeneric_class(L) == "imaginary_axis"
    assert brute_decompose(L).counts == (0, 0, 0, q + 1, 0)


@pytest.mark.parametrize("q", (5, 7))
def test_every_nongeneric_line(q):
    F = GF(q)
    seen = set()
    for L in all_lines(F):
        if discriminant(L.phi):
            continue
        p = decompose_nongeneric(L)
        seen.add(p.orbit_class)
        assert p.counts == brute_decompose(L).counts
    assert seen == set(NONGENERIC_CLASSES)


def test_table_rows_sum_to_q_plus_1():
    for q in (5, 7, 11, 13, 17, 19, 23, 25, 29, 31, 37, 41, 43, 47, 49):
        mu = 1 if q % 3 == 1 else -1
        for name in NONGENERIC_CLASSES:
            assert sum(table_row(name, q, mu)) == q + 1


# -- planes through a line ------------------------------------------------------------


def test_planes_through_secant(F7):
    L = line_from_ints(F7, (0, 0, 1, 0, 0, 1))
    assert planes_through_line_decompose(L) == (0, 2, 6, 0, 0)
    assert planes_through_line_brute(L) == (0, 2, 6, 0, 0)


def test_planes_duality_involution(F7, rng):
    for _ in range(20):
        L = random_line(F7, rng)
        assert planes_through_line_decompose(polar_dual_line(L)) == brute_decompose(L).counts


def test_planes_generic_brute_q5(F5, rng):
    from twistedcubic.klein import all_planes

    planes = list(all_planes(F5))
    for _ in range(40):
        L = random_generic_line(F5, rng)
        assert planes_through_line_decompose(L) == planes_through_line_brute(L, planes)
