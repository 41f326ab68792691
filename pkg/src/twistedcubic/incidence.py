"""How the q+1 points of a line split across the five point orbits.

Generic lines are handled by the discriminant quartic D_L; non-generic lines
by their orbit's closed-form row; every line can also be brute-forced.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import find_nonsquare, mat_mul, rank
from .errors import (
    IntegralityViolation,
    InternalInconsistency,
    NonGenericLine,
    OsculatingLine,
    UnclassifiableLine,
    ZeroDirection,
)
from .forms import (
    BinaryForm,
    CubicPattern,
    discriminant,
    factor_pattern,
    factor_type,
    cubic_pattern,
    pg1_points,
)
from .klein import (
    Line,
    _coords,
    all_planes,
    line_nature,
    line_points,
    line_to_quartic,
    m_z,
    pencil_basis,
    plane_meets_twisted_cubic,
    point_classify,
    polar_dual_line,
)


@dataclass
class IncidenceProfile:
    counts: tuple[int, int, int, int, int]
    orbit_class: str
    eta: int | None = None
    nu: int | None = None
    e_count: int | None = None
    diagnostics: dict[str, int] = field(default_factory=dict)

    def as_dict(self) -> dict:
        out = {"counts": list(self.counts), "orbit_class": self.orbit_class}
        if self.eta is not None:
            out.update(eta=self.eta, nu=self.nu, e_count=self.e_count)
        if self.diagnostics:
            out["diagnostics"] = dict(self.diagnostics)
        return out


def _require_not_osculating(L) -> None:
    if line_nature(L).in_osculating:
        raise OsculatingLine("the line lies in an osculating plane")


def h_form(L, s, t) -> BinaryForm:
    """The quadratic h with (Xt - Ys) h the point of L on the osculating plane at (s, t)."""
    _require_not_osculating(L)
    if not s and not t:
        raise ZeroDirection("(s, t) = (0, 0)")
    M = m_z(L)
    v = (s * s, s * t, t * t)
    a1, a2, a3 = (sum((x * y for x, y in zip(row, v)), s.field.zero) for row in M)
    # a1 X^2 + a2 XY + a3 Y^2, monomials indexed by the power of X
    return BinaryForm.from_monomials(s.field, [a3, a2, a1])


def osculating_point(L, s, t) -> BinaryForm:
    return BinaryForm.linear(s, t) * h_form(L, s, t)


def in_pencil(L: Line, f: BinaryForm) -> bool:
    u, v = pencil_basis(L)
    return rank([u.coords, v.coords, f.coords]) == 2


def _quartic_from_gram(F, N, scale) -> BinaryForm:
    # sum N_ij m_i m_j over m = (X^2, XY, Y^2), X-degrees (2, 1, 0)
    xdeg = (2, 1, 0)
    mono = [F.zero] * 5
    for i in range(3):
        for j in range(3):
            mono[xdeg[i] + xdeg[j]] = mono[xdeg[i] + xdeg[j]] + N[i][j]
    return BinaryForm.from_monomials(F, [scale * c for c in mono])


def d_quartic_matrix(L) -> BinaryForm:
    z = _coords(L)
    F = z[0].field
    A2inv = [[F.zero, F.zero, F.one], [F.zero, -F.one / 2, F.zero], [F.one, F.zero, F.zero]]
    M = m_z(z)
    N = mat_mul(mat_mul(M, A2inv), M)
    return _quartic_from_gram(F, N, -F.one / 2)


def d_quartic_expanded(L) -> BinaryForm:
    z0, z1, z2, z3, z4, z5 = _coords(L)
    F = z0.field
    phi_mono = BinaryForm((z0, z1, z2, z3, z4), F).monomials()
    extra = [
        z1 * z1 - z0 * z2,
        2 * (z0 * z3 - z1 * z2),
        -(z0 * z4 + 2 * z1 * z3 - 3 * z2 * z2),
        2 * (z1 * z4 - z2 * z3),
        z3 * z3 - z2 * z4,
    ]
    return BinaryForm.from_monomials(F, [e - z5 * c for c, e in zip(phi_mono, extra)])


def d_quartic(L, check: bool = False) -> BinaryForm:
    """The discriminant quartic D_L: disc(h_(s,t)) = 4 D_L(s, t)."""
    _require_not_osculating(L)
    D = d_quartic_matrix(L)
    if check and D != d_quartic_expanded(L):
        raise InternalInconsistency(f"the two D_L formulas disagree on {L}")
    return D


def _require_generic(L) -> BinaryForm:
    phi, _ = line_to_quartic(L)
    if not discriminant(phi):
        raise NonGenericLine("line meets the twisted cubic or an osculating plane")
    return phi


def eta(L) -> int:
    return factor_type(_require_generic(L)).eta


def nu(L) -> int:
    """Points (s, t) of PG(1,q) where D_L(s, t) is a nonzero square."""
    _require_generic(L)
    D = d_quartic(L)
    F = D.field
    flags = F.square_flags()
    n = 0
    for s, t in pg1_points(F):
        v = D(s, t)
        if v and flags[v.value]:
            n += 1
    return n


def _exact(x: Fraction, what: str) -> int:
    if x.denominator != 1 or x < 0:
        raise IntegralityViolation(f"{what} = {x} is not a nonnegative integer")
    return int(x)


def counts_from_nu(q: int, eta_: int, nu_: int) -> tuple[int, ...]:
    return (
        0,
        eta_,
        _exact(Fraction(nu_ - eta_, 3), "O3 count"),
        _exact(Fraction(q + 1 - nu_ - eta_), "O4 count"),
        _exact(Fraction(2 * nu_ + eta_, 3), "O5 count"),
    )


def counts_from_elliptic(q: int, eta_: int, e_count: int) -> tuple[int, ...]:
    return (
        0,
        eta_,
        _exact(Fraction(e_count - 3 * eta_, 6), "O3 count"),
        _exact(q + 1 - Fraction(e_count + eta_, 2), "O4 count"),
        _exact(Fraction(e_count, 3), "O5 count"),
    )


def decompose_generic(L, via: str = "nu") -> IncidenceProfile:
    """Orbit counts of a generic line from eta and nu, or from eta and #E_L."""
    from .elliptic import coeffs, count_points

    _require_generic(L)
    F = _coords(L)[0].field
    e = eta(L)
    n = nu(L)
    g2, g3 = coeffs(L)
    E = count_points(g2, g3, F)
    if via == "nu":
        counts = counts_from_nu(F.q, e, n)
    elif via == "elliptic":
        counts = counts_from_elliptic(F.q, e, E)
    else:
        raise ValueError(f"unknown route {via!r}")
    return IncidenceProfile(counts, "generic", eta=e, nu=n, e_count=E)


_A_SET = {
    CubicPattern.Cube: "a1",
    CubicPattern.SquareTimesLinear: "a2",
    CubicPattern.ThreeRational: "a33",
    CubicPattern.OneRationalPlusQuadratic: "a31",
}


def brute_decompose(L: Line, diagnostics: bool = False) -> IncidenceProfile:
    """Classify each of the q+1 points of L directly.

    With ``diagnostics`` the osculating-plane points are also tallied by the
    factor pattern of (Xt - Ys) h and checked against the counts.
    """
    tally = [0] * 5
    for P in line_points(L):
        tally[point_classify(P) - 1] += 1
    counts = tuple(tally)
    nat = line_nature(L)
    diag: dict[str, int] = {}
    if diagnostics and not nat.in_osculating:
        diag = dict.fromkeys(("a1", "a2", "a33", "a31"), 0)
        for s, t in pg1_points(L.field):
            pat = cubic_pattern(osculating_point(L, s, t))
            if pat not in _A_SET:
                raise InternalInconsistency("osculating point without a rational factor")
            diag[_A_SET[pat]] += 1
        expect = (diag["a1"], Fraction(diag["a2"], 2), Fraction(diag["a33"], 3), diag["a31"])
        if tuple(counts[:4]) != expect:
            raise InternalInconsistency(f"h-form tallies {diag} disagree with counts {counts}")
    label = "generic" if nat.generic else nongeneric_class(L)
    return IncidenceProfile(counts, label, diagnostics=diag)


# -- non-generic lines ---------------------------------------------------------

NONGENERIC_CLASSES = (
    "secant",
    "real_axis",
    "tangent",
    "imaginary_secant",
    "imaginary_axis",
    "osculating_unisecant",
    "unisecant_irr",
    "external_irr",
    "unisecant_split",
    "external_split",
)

# factor pattern of phi_L -> (class meeting C, class in an osculating plane)
_PATTERN_CLASSES = {
    ((1, 4),): ("tangent", "tangent"),
    ((1, 1), (1, 3)): ("osculating_unisecant", "osculating_unisecant"),
    ((1, 2), (1, 2)): ("secant", "real_axis"),
    ((2, 2),): ("imaginary_secant", "imaginary_axis"),
    ((1, 2), (2, 1)): ("unisecant_irr", "external_irr"),
    ((1, 1), (1, 1), (1, 2)): ("unisecant_split", "external_split"),
}


def nongeneric_class(L) -> str:
    phi, z5 = line_to_quartic(L)
    if discriminant(phi):
        raise ValueError("line is generic")
    nat = line_nature(L)
    pair = _PATTERN_CLASSES.get(factor_pattern(phi))
    # both signs only when z5 = 0 (tangent, osculating unisecant)
    if pair is None or (nat.meets_C == nat.in_osculating and z5):
        raise UnclassifiableLine(f"no non-generic class fits {L}")
    return pair[0] if nat.meets_C else pair[1]


def table_row(name: str, q: int, mu: int) -> tuple[int, ...]:
    """Closed-form orbit counts for a non-generic class."""
    Fr = Fraction
    rows = {
        "secant": (2, 0, Fr((mu + 1) * (q - 1), 6), Fr((1 - mu) * (q - 1), 2), Fr((mu + 1) * (q - 1), 3)),
        "real_axis": (0, 2, q - 1, 0, 0),
        "tangent": (1, q, 0, 0, 0),
        "imaginary_secant": (0, 0, Fr((1 - mu) * (q + 1), 6), Fr((1 + mu) * (q + 1), 2), Fr((1 - mu) * (q + 1), 3)),
        "imaginary_axis": (0, 0, 0, q + 1, 0),
        "osculating_unisecant": (1, 1, Fr(q - 1, 2), Fr(q - 1, 2), 0),
        "unisecant_irr": (1, 0, Fr(q - mu, 6), Fr(q + mu, 2), Fr(q - mu, 3)),
        "external_irr": (0, 1, Fr(q - 1, 2), Fr(q + 1, 2), 0),
        "unisecant_split": (1, 2, Fr(q - mu - 6, 6), Fr(q + mu - 2, 2), Fr(q - mu, 3)),
        "external_split": (0, 3, Fr(q - 3, 2), Fr(q - 1, 2), 0),
    }
    return tuple(_exact(Fr(x), f"{name} entry") for x in rows[name])


def decompose_nongeneric(L) -> IncidenceProfile:
    name = nongeneric_class(L)
    F = _coords(L)[0].field
    return IncidenceProfile(table_row(name, F.q, F.mu), name)


def decompose(L) -> IncidenceProfile:
    phi, _ = line_to_quartic(L)
    return decompose_generic(L) if discriminant(phi) else decompose_nongeneric(L)


def nongeneric_representatives(F) -> dict[str, Line]:
    """One line in each of the ten non-generic orbits."""
    e = find_nonsquare(F)
    z = {
        "tangent": (0, 0, 0, 0, 1, 0),
        "osculating_unisecant": (0, 0, 0, 1, 0, 0),
        "secant": (0, 0, 1, 0, 0, 1),
        "real_axis": (0, 0, 1, 0, 0, -1),
        "imaginary_secant": (e * e, 0, -e / 3, 0, 1, 2 * e / 3),
        "imaginary_axis": (e * e, 0, -e / 3, 0, 1, -2 * e / 3),
        "unisecant_irr": (0, 0, e, 0, -6, e),
        "external_irr": (0, 0, e, 0, -6, -e),
        "unisecant_split": (0, 0, 2, 3, 0, 2),
        "external_split": (0, 0, 2, 3, 0, -2),
    }
    return {k: Line([F(c) for c in v]) for k, v in z.items()}


# -- planes through a line ---------------------------------------------------


def planes_through_line_decompose(L: Line) -> tuple[int, ...]:
    """Plane-orbit counts of the q+1 planes through L, via the points of L-perp."""
    return brute_decompose(polar_dual_line(L)).counts


def planes_through_line_brute(L: Line, planes=None) -> tuple[int, ...]:
    """Same counts by scanning every plane of PG(3,q) for those containing L."""
    u, v = pencil_basis(L)
    tally = [0] * 5
    found = 0
    for pi in planes if planes is not None else all_planes(L.field):
        if pi.contains(u) and pi.contains(v):
            tally[plane_meets_twisted_cubic(pi) - 1] += 1
            found += 1
    if found != L.field.q + 1:
        raise InternalInconsistency(f"{found} planes through a line, expected q+1")
    return tuple(tally)
