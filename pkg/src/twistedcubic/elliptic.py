"""The elliptic curve E_L: T^2 = 4S^3 - g2 S - g3 attached to a generic line."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InternalInconsistency, NonGenericLine, SingularCurve
from .forms import discriminant, inv_I, inv_J
from .klein import _coords, act_on_line, line_to_quartic

INFINITY = None  # the identity of the group law


@dataclass(frozen=True)
class EllipticData:
    g2: object
    g3: object
    e_count: int
    torsion_witness: tuple


def _generic_quartic(L):
    phi, z5 = line_to_quartic(L)
    if not discriminant(phi):
        raise NonGenericLine("E_L is only defined for generic lines")
    return phi, z5


def coeffs_closed(L):
    phi, z5 = _generic_quartic(L)
    I, J = inv_I(phi), inv_J(phi)
    g2 = 3 * z5 * J + I * I * 15 / 4
    g3 = -(11 * I ** 3 + 2 * J * J + 14 * J * z5 * I) / 8
    return g2, g3


def coeffs_via_quartic(L):
    from .incidence import d_quartic

    _generic_quartic(L)
    D = d_quartic(L)
    return 3 * inv_I(D), inv_J(D)


def coeffs(L):
    """(g2, g3), computed by the closed form and checked against I, J of D_L."""
    closed = coeffs_closed(L)
    via = coeffs_via_quartic(L)
    if closed != via:
        raise InternalInconsistency(f"g2, g3 routes disagree: {closed} vs {via}")
    return closed


def curve_discriminant(g2, g3):
    return g2 ** 3 - 27 * g3 * g3


def count_points(g2, g3, F=None) -> int:
    """#E(F_q) including infinity, as 1 + sum over s of (1 + chi(rhs)) with chi(0) = 0."""
    F = F or g2.field
    g2, g3 = F(g2), F(g3)
    if not curve_discriminant(g2, g3):
        raise SingularCurve("4S^3 - g2 S - g3 has a repeated root")
    flags = F.square_flags()
    n = 1
    for s in F:
        r = 4 * s ** 3 - g2 * s - g3
        if not r:
            n += 1
        elif flags[r.value]:
            n += 2
    return n


def on_curve(P, g2, g3) -> bool:
    if P is INFINITY:
        return True
    S, T = P
    return T * T == 4 * S ** 3 - g2 * S - g3


def neg(P):
    return P if P is INFINITY else (P[0], -P[1])


def add(P, Q, g2, g3):
    """Chord-tangent addition on T^2 = 4S^3 - g2 S - g3."""
    if P is INFINITY:
        return Q
    if Q is INFINITY:
        return P
    (S1, T1), (S2, T2) = P, Q
    if S1 == S2:
        if T1 + T2 == 0:
            return INFINITY
        lam = (12 * S1 * S1 - g2) / (2 * T1)
    else:
        lam = (T2 - T1) / (S2 - S1)
    S3 = lam * lam / 4 - S1 - S2
    T3 = -(lam * (S3 - S1) + T1)
    return (S3, T3)


def mul(n: int, P, g2, g3):
    if n < 0:
        return mul(-n, neg(P), g2, g3)
    R, B = INFINITY, P
    while n:
        if n & 1:
            R = add(R, B, g2, g3)
        B = add(B, B, g2, g3)
        n >>= 1
    return R


def torsion_witness(L):
    """The rational 3-torsion point (3I/4, (J - z5^3)/2) of E_L."""
    phi, z5 = _generic_quartic(L)
    g2, g3 = coeffs(L)
    I, J = inv_I(phi), inv_J(phi)
    P = (I * 3 / 4, (J - z5 ** 3) / 2)
    if not on_curve(P, g2, g3):
        raise InternalInconsistency("torsion witness is not on E_L")
    if mul(3, P, g2, g3) is not INFINITY:
        raise InternalInconsistency("torsion witness is not 3-torsion")
    return P


def elliptic_data(L) -> EllipticData:
    g2, g3 = coeffs(L)
    F = _coords(L)[0].field
    return EllipticData(g2, g3, count_points(g2, g3, F), torsion_witness(L))


def hasse_ok(n: int, q: int) -> bool:
    return (n - q - 1) ** 2 <= 4 * q


def orbit_invariance_check(L, g) -> bool:
    F = _coords(L)[0].field
    return count_points(*coeffs(L), F) == count_points(*coeffs(act_on_line(g, L)), F)
