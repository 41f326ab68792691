"""Points, planes and lines of PG(3,q) in the language of binary cubics.

A point is a projective cubic form.  A line is a point (z0, ..., z5) of the
Klein quadric, written in coordinates where the Pluecker vector is

    (p01, p02, p03, p12, p13, p23) = (z0, 2 z1, 3 (z2 + z5), z2 - z5, 2 z3, z4)

so that the quadric reads I(phi) = z5^2 with phi the quartic of (z0..z4).
"""

from __future__ import annotations

import functools
import itertools
import random
from dataclasses import dataclass
from typing import Iterator, Sequence

from .algebra import GF, FieldElem, inverse, mat_mul, rank, sqrt, transpose
from .errors import DependentForms, InternalInconsistency, NotOnKleinQuadric, ZeroForm
from .forms import (
    BinaryForm,
    CubicPattern,
    GL2El,
    act,
    cubic_pattern,
    discriminant,
    inv_I,
    inv_J,
    m_phi,
    omega_pair,
    rep_matrix,
)

ORBIT_OF_PATTERN = {
    CubicPattern.Cube: 1,
    CubicPattern.SquareTimesLinear: 2,
    CubicPattern.ThreeRational: 3,
    CubicPattern.OneRationalPlusQuadratic: 4,
    CubicPattern.IrreducibleCubic: 5,
}


def normalize(vec: Sequence[FieldElem]) -> tuple[FieldElem, ...]:
    lead = next((c for c in vec if c), None)
    if lead is None:
        raise ZeroForm("zero vector is not a projective point")
    if lead.value == 1:
        return tuple(vec)
    inv = lead.inverse()
    return tuple(c * inv for c in vec)


def klein_value(z: Sequence[FieldElem]) -> FieldElem:
    z0, z1, z2, z3, z4, z5 = z
    return (z0 * z4 - 4 * z1 * z3 + 3 * z2 * z2) / 3 - z5 * z5


def plucker_from_z(z: Sequence[FieldElem]) -> tuple[FieldElem, ...]:
    z0, z1, z2, z3, z4, z5 = z
    return (z0, 2 * z1, 3 * (z2 + z5), z2 - z5, 2 * z3, z4)


def z_from_plucker(p: Sequence[FieldElem]) -> tuple[FieldElem, ...]:
    p01, p02, p03, p12, p13, p23 = p
    a = p03 / 3
    return (p01, p02 / 2, (a + p12) / 2, p13 / 2, p23, (a - p12) / 2)


class Line:
    """A line of PG(3,q), stored by its normalized Klein coordinates."""

    __slots__ = ("z", "field")

    def __init__(self, z: Sequence[FieldElem], check: bool = True):
        z = normalize(z)
        if len(z) != 6:
            raise NotOnKleinQuadric("a line needs six coordinates")
        if check and klein_value(z):
            raise NotOnKleinQuadric(f"{[c.value for c in z]} is not on the Klein quadric")
        self.z = z
        self.field = z[0].field

    @property
    def phi(self) -> BinaryForm:
        return BinaryForm(self.z[:5], self.field)

    @property
    def z5(self) -> FieldElem:
        return self.z[5]

    @property
    def plucker(self) -> tuple[FieldElem, ...]:
        return plucker_from_z(self.z)

    def key(self) -> tuple[int, ...]:
        return tuple(c.value for c in self.z)

    def __eq__(self, other):
        return isinstance(other, Line) and self.z == other.z

    def __hash__(self):
        return hash(self.key())

    def __lt__(self, other):
        return self.key() < other.key()

    def __repr__(self):
        return f"Line({list(self.key())}, {self.field})"


def line_from_ints(F: GF, values: Sequence) -> Line:
    return Line([F(v) for v in values])


def _coords(L) -> tuple[FieldElem, ...]:
    return L.z if isinstance(L, Line) else tuple(L)


def line_from_pencil(u: BinaryForm, v: BinaryForm) -> Line:
    a, b = u.coords, v.coords
    p = [a[i] * b[j] - a[j] * b[i] for i, j in itertools.combinations(range(4), 2)]
    if not any(p):
        raise DependentForms("the two cubics span a point, not a line")
    z = z_from_plucker(p)
    if klein_value(z):
        raise InternalInconsistency("pencil coordinates fell off the Klein quadric")
    return Line(z, check=False)


def pencil_basis(L: Line) -> tuple[BinaryForm, BinaryForm]:
    """Two cubics spanning L, read off the columns of the Pluecker matrix."""
    F = L.field
    p = dict(zip(itertools.combinations(range(4), 2), L.plucker))
    P = [[F.zero] * 4 for _ in range(4)]
    for (i, j), v in p.items():
        P[i][j] = v
        P[j][i] = -v
    cols = [[P[i][j] for i in range(4)] for j in range(4)]
    for c1, c2 in itertools.combinations(cols, 2):
        if rank([c1, c2]) == 2:
            return BinaryForm(c1, F), BinaryForm(c2, F)
    raise InternalInconsistency("Pluecker matrix of a line has rank < 2")


def line_points(L: Line) -> list[BinaryForm]:
    """The q+1 points of L as normalized cubic forms."""
    u, v = pencil_basis(L)
    F = L.field
    pts = []
    for x in F:
        pts.append(BinaryForm(normalize([a + x * b for a, b in zip(u.coords, v.coords)]), F))
    pts.append(BinaryForm(normalize(v.coords), F))
    return pts


def line_to_quartic(L) -> tuple[BinaryForm, FieldElem]:
    z = _coords(L)
    return BinaryForm(z[:5]), z[5]


def polar_dual_line(L: Line) -> Line:
    z = L.z
    return Line(z[:5] + (-z[5],), check=False)


def orthocomplement(forms: Sequence[BinaryForm]) -> list[BinaryForm]:
    """Basis of {w : omega(f, w) = 0 for every f in forms}."""
    F = forms[0].field
    m = forms[0].m
    basis = [BinaryForm([F.one if i == j else F.zero for i in range(m + 1)], F) for j in range(m + 1)]
    rows = [[omega_pair(f, e) for e in basis] for f in forms]
    # nullspace of rows by elimination
    M = [list(r) for r in rows]
    pivots = []
    rk = 0
    for col in range(m + 1):
        piv = next((r for r in range(rk, len(M)) if M[r][col]), None)
        if piv is None:
            continue
        M[rk], M[piv] = M[piv], M[rk]
        inv = M[rk][col].inverse()
        M[rk] = [x * inv for x in M[rk]]
        for r in range(len(M)):
            if r != rk and M[r][col]:
                c = M[r][col]
                M[r] = [x - c * y for x, y in zip(M[r], M[rk])]
        pivots.append(col)
        rk += 1
    free = [c for c in range(m + 1) if c not in pivots]
    out = []
    for fc in free:
        vec = [F.zero] * (m + 1)
        vec[fc] = F.one
        for r, pc in enumerate(pivots):
            vec[pc] = -M[r][fc]
        out.append(BinaryForm(vec, F))
    return out


def polar_dual_line_direct(L: Line) -> Line:
    """L-perp computed as the pairing-orthocomplement of a spanning pencil."""
    u, v = pencil_basis(L)
    w1, w2 = orthocomplement([u, v])
    return line_from_pencil(w1, w2)


class Plane:
    """The plane {f : omega(f, w) = 0} polar to the point w."""

    __slots__ = ("w",)

    def __init__(self, w: BinaryForm):
        if w.m != 3:
            raise ValueError("planes are dual to cubic forms")
        self.w = w.normalized()

    def contains(self, f: BinaryForm) -> bool:
        return not omega_pair(f, self.w)

    def __eq__(self, other):
        return isinstance(other, Plane) and self.w == other.w

    def __hash__(self):
        return hash(self.w)

    def __repr__(self):
        return f"Plane({list(self.w.key())})"


def polar_dual_point(P: BinaryForm) -> Plane:
    return Plane(P)


@functools.lru_cache(maxsize=None)
def _classify_key(field: GF, key: tuple[int, ...]) -> int:
    f = BinaryForm([field.elem(v) for v in key], field)
    return ORBIT_OF_PATTERN[cubic_pattern(f)]


def point_classify(P: BinaryForm) -> int:
    """Orbit index 1..5 of a point of PG(3,q) under PGL2(q)."""
    if P.m != 3:
        raise ValueError("points of PG(3,q) are cubic forms")
    return _classify_key(P.field, P.normalized().key())


def plane_classify(pi: Plane) -> int:
    return point_classify(pi.w)


def plane_meets_twisted_cubic(pi: Plane) -> int:
    """Plane orbit read off from how the plane cuts the twisted cubic.

    (s, t) lies on the plane when omega((Xt - Ys)^3, w) = 0, a binary cubic
    in (s, t) whose factorization pattern names the orbit.
    """
    w0, w1, w2, w3 = pi.w.coords
    F = pi.w.field
    cut = BinaryForm.from_monomials(F, [-w0, 3 * w1, -3 * w2, w3])
    return ORBIT_OF_PATTERN[cubic_pattern(cut)]


@dataclass(frozen=True)
class LineNature:
    generic: bool
    meets_C: bool
    in_osculating: bool


def line_nature(L) -> LineNature:
    phi, z5 = line_to_quartic(L)
    J = inv_J(phi)
    c = z5**3
    nat = LineNature(
        generic=bool(discriminant(phi)),
        meets_C=J == -c,
        in_osculating=J == c,
    )
    if nat.generic and (nat.meets_C or nat.in_osculating):
        raise InternalInconsistency(f"generic line flagged special: {L}")
    return nat


def m_z(L):
    z = _coords(L)
    z0, z1, z2, z3, z4, z5 = z
    return [
        [z4, -2 * z3, z2 + z5],
        [-2 * z3, 4 * z2 - 2 * z5, -2 * z1],
        [z2 + z5, -2 * z1, z0],
    ]


def act_on_coords(g: GL2El, z: Sequence[FieldElem]) -> list[FieldElem]:
    """The exact vector g~5 z = det(g)^-1 (g4 (z0..z4), det(g)^-2 z5)."""
    g4 = rep_matrix(g, 4)
    s = g.det.inverse()
    head = [s * sum((a * b for a, b in zip(row, z[:5])), g.det.field.zero) for row in g4]
    return head + [s**3 * z[5]]


def act_on_line(g: GL2El, L: Line, check: bool = False) -> Line:
    out = Line(act_on_coords(g, L.z), check=False)
    if check:
        u, v = pencil_basis(L)
        if line_from_pencil(act(g, u), act(g, v)) != out:
            raise InternalInconsistency("Klein action disagrees with the pencil action")
        if klein_value(out.z):
            raise InternalInconsistency("Klein action left the quadric")
    return out


def act_on_point(g: GL2El, P: BinaryForm) -> BinaryForm:
    return act(g, P).normalized()


# -- enumeration -------------------------------------------------------------


def projective_points(F: GF, n: int) -> Iterator[tuple[FieldElem, ...]]:
    """Normalized points of PG(n-1, q), first nonzero coordinate 1."""
    zero, one = F.zero, F.one
    elems = list(F)
    for lead in range(n):
        for tail in itertools.product(elems, repeat=n - lead - 1):
            yield (zero,) * lead + (one,) + tail


def all_points(F: GF) -> Iterator[BinaryForm]:
    for c in projective_points(F, 4):
        yield BinaryForm(c, F)


def all_planes(F: GF) -> Iterator[Plane]:
    for P in all_points(F):
        yield Plane(P)


def root_table(F: GF) -> dict[int, list[FieldElem]]:
    roots: dict[int, list[FieldElem]] = {}
    for y in F:
        roots.setdefault((y * y).value, []).append(y)
    return roots


def all_lines(F: GF) -> Iterator[Line]:
    """Every line, in increasing order of normalized Klein coordinates."""
    roots = root_table(F)
    for head in projective_points(F, 5):
        z0, z1, z2, z3, z4 = head
        I = (z0 * z4 - 4 * z1 * z3 + 3 * z2 * z2) / 3
        for r in sorted(roots.get(I.value, ())):
            yield Line(head + (r,), check=False)


def random_gl2(F: GF, rng: random.Random) -> GL2El:
    while True:
        a, b, c, d = (F.elem(rng.randrange(F.q)) for _ in range(4))
        if a * d - b * c:
            return GL2El(a, b, c, d)


def random_line(F: GF, rng: random.Random) -> Line:
    while True:
        head = [F.elem(rng.randrange(F.q)) for _ in range(5)]
        if not any(head):
            continue
        r = sqrt(inv_I(BinaryForm(head, F)))
        if r is None:
            continue
        if not r and rng.random() < 0.5:
            continue  # a zero root stands for one line, not two
        if rng.random() < 0.5:
            r = -r
        return Line(head + [r], check=False)


def random_generic_line(F: GF, rng: random.Random) -> Line:
    while True:
        L = random_line(F, rng)
        if discriminant(L.phi):
            return L


def g2_conjugate(g: GL2El, M):
    """g2^-T M g2^-1, the congruence appearing in the M_phi and M_z laws."""
    g2i = inverse(rep_matrix(g, 2))
    return mat_mul(mat_mul(transpose(g2i), M), g2i)


__all__ = [
    "Line",
    "LineNature",
    "Plane",
    "act_on_coords",
    "act_on_line",
    "act_on_point",
    "all_lines",
    "all_planes",
    "all_points",
    "klein_value",
    "line_from_ints",
    "line_from_pencil",
    "line_nature",
    "line_points",
    "line_to_quartic",
    "m_phi",
    "m_z",
    "orthocomplement",
    "pencil_basis",
    "plane_classify",
    "plane_meets_twisted_cubic",
    "plucker_from_z",
    "point_classify",
    "polar_dual_line",
    "polar_dual_line_direct",
    "polar_dual_point",
    "random_generic_line",
    "random_gl2",
    "random_line",
    "z_from_plucker",
]
