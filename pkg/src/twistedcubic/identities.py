"""Randomized single-trial checks of the algebraic identities.

Each function draws its own random data from ``rng`` and returns True when the
identity holds.  Tests and ``census.verify_all`` drive them in loops.
"""

from __future__ import annotations

import random

from .algebra import GF, det, mat_scale
from .forms import (
    BinaryForm,
    act,
    hankel_J,
    inv_I,
    inv_J,
    j_invariant,
    discriminant,
    m_phi,
    omega_pair,
)
from .klein import (
    act_on_coords,
    act_on_line,
    g2_conjugate,
    line_from_pencil,
    line_to_quartic,
    m_z,
    pencil_basis,
    random_generic_line,
    random_gl2,
    random_line,
)
from .incidence import d_quartic, d_quartic_expanded, d_quartic_matrix, h_form, in_pencil
from .elliptic import coeffs_closed, coeffs_via_quartic


def _form(F: GF, m: int, rng: random.Random) -> BinaryForm:
    return BinaryForm([F.elem(rng.randrange(F.q)) for _ in range(m + 1)], F)


def _nonosculating_line(F, rng):
    while True:
        L = random_line(F, rng)
        if det(m_z(L)):
            return L


def act_routes_agree(F, rng) -> bool:
    g = random_gl2(F, rng)
    f = _form(F, rng.randint(1, 4), rng)
    act(g, f, check=True)
    return True


def omega_equivariance(F, rng) -> bool:
    g, m = random_gl2(F, rng), rng.randint(1, 4)
    f, h = _form(F, m, rng), _form(F, m, rng)
    return omega_pair(act(g, f), act(g, h)) == g.det ** (-m) * omega_pair(f, h)


def ij_equivariance(F, rng) -> bool:
    g, phi = random_gl2(F, rng), _form(F, 4, rng)
    gphi, d = act(g, phi), g.det
    return inv_I(gphi) == d ** -4 * inv_I(phi) and inv_J(gphi) == d ** -6 * inv_J(phi)


def j_projective_invariance(F, rng) -> bool:
    g, phi = random_gl2(F, rng), _form(F, 4, rng)
    if not discriminant(phi):
        return True
    return j_invariant(act(g, phi)) == j_invariant(phi)


def hankel_matches_det(F, rng) -> bool:
    phi = _form(F, 4, rng)
    return hankel_J(phi) == inv_J(phi)


def m_phi_equivariance(F, rng) -> bool:
    g, phi = random_gl2(F, rng), _form(F, 4, rng)
    return m_phi(act(g, phi)) == mat_scale(g.det ** -4, g2_conjugate(g, m_phi(phi)))


def m_z_equivariance(F, rng) -> bool:
    g, L = random_gl2(F, rng), random_line(F, rng)
    lhs = m_z(act_on_coords(g, L.z))
    return lhs == mat_scale(g.det ** -5, g2_conjugate(g, m_z(L)))


def det_m_z(F, rng) -> bool:
    L = random_line(F, rng)
    phi, z5 = line_to_quartic(L)
    return det(m_z(L)) == 4 * (inv_J(phi) - z5 ** 3)


def klein_pencil_action(F, rng) -> bool:
    g, L = random_gl2(F, rng), random_line(F, rng)
    u, v = pencil_basis(L)
    return line_from_pencil(act(g, u), act(g, v)) == act_on_line(g, L)


def d_quartic_routes(F, rng) -> bool:
    L = _nonosculating_line(F, rng)
    return d_quartic_matrix(L) == d_quartic_expanded(L)


def d_quartic_equivariance(F, rng) -> bool:
    g, L = random_gl2(F, rng), _nonosculating_line(F, rng)
    lhs = d_quartic(act_on_coords(g, L.z)) * g.det ** 4
    return lhs == act(g, d_quartic(L))


def d_quartic_invariants(F, rng) -> bool:
    L = _nonosculating_line(F, rng)
    phi, z5 = line_to_quartic(L)
    I, J = inv_I(phi), inv_J(phi)
    D = d_quartic(L)
    return (
        inv_I(D) == J * z5 + I * I * 5 / 4
        and inv_J(D) == -(11 * I ** 3 + 2 * J * J + 14 * J * z5 * I) / 8
    )


def _direction(F, rng):
    while True:
        s, t = F.elem(rng.randrange(F.q)), F.elem(rng.randrange(F.q))
        if s or t:
            return s, t


def h_discriminant(F, rng) -> bool:
    L = _nonosculating_line(F, rng)
    s, t = _direction(F, rng)
    a3, a2, a1 = h_form(L, s, t).monomials()
    return a2 * a2 - 4 * a1 * a3 == 4 * d_quartic(L)(s, t)


def h_on_diagonal(F, rng) -> bool:
    L = _nonosculating_line(F, rng)
    s, t = _direction(F, rng)
    return h_form(L, s, t)(s, t) == L.phi(s, t)


def h_point_on_line(F, rng) -> bool:
    L = _nonosculating_line(F, rng)
    s, t = _direction(F, rng)
    return in_pencil(L, BinaryForm.linear(s, t) * h_form(L, s, t))


def h_equivariance(F, rng) -> bool:
    """The osculating point of L at (s,t) is carried by g to that of g.L at g.(s,t)."""
    g, L = random_gl2(F, rng), _nonosculating_line(F, rng)
    s, t = _direction(F, rng)
    P = BinaryForm.linear(s, t) * h_form(L, s, t)
    gP = act(g, P)
    # g.(Xt - Ys) is proportional to X t' - Y s'
    lin = act(g, BinaryForm.linear(s, t))
    t2, s2 = lin.monomials()[1], -lin.monomials()[0]
    Q = BinaryForm.linear(s2, t2) * h_form(act_on_line(g, L), s2, t2)
    return gP.proportional(Q)


def g2g3_routes(F, rng) -> bool:
    L = random_generic_line(F, rng)
    return coeffs_closed(L) == coeffs_via_quartic(L)


ALGEBRAIC_IDENTITIES = {
    "act_routes_agree": act_routes_agree,
    "omega_equivariance": omega_equivariance,
    "ij_equivariance": ij_equivariance,
    "j_projective_invariance": j_projective_invariance,
    "hankel_matches_det": hankel_matches_det,
    "m_phi_equivariance": m_phi_equivariance,
    "m_z_equivariance": m_z_equivariance,
    "det_m_z": det_m_z,
    "klein_pencil_action": klein_pencil_action,
    "d_quartic_routes": d_quartic_routes,
    "d_quartic_equivariance": d_quartic_equivariance,
    "d_quartic_invariants": d_quartic_invariants,
    "h_discriminant": h_discriminant,
    "h_on_diagonal": h_on_diagonal,
    "h_point_on_line": h_point_on_line,
    "h_equivariance": h_equivariance,
    "g2g3_routes": g2g3_routes,
}


def run_identity(name: str, F: GF, trials: int, seed: int = 0) -> int:
    """Number of failing trials of one identity."""
    fn = ALGEBRAIC_IDENTITIES[name]
    rng = random.Random(f"{name}:{seed}")
    return sum(not fn(F, rng) for _ in range(trials))
