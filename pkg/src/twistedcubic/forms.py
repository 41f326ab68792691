"""Binary forms of degree 1..4 and their GL2 invariants.

A form of degree m is stored by its coordinates (z_0, ..., z_m) in the basis

    Y^m, -C(m,1) Y^(m-1) X, C(m,2) Y^(m-2) X^2, ..., (-1)^m X^m

so a quartic reads z0 Y^4 - 4 z1 Y^3 X + 6 z2 Y^2 X^2 - 4 z3 Y X^3 + z4 X^4.
Monomial coefficients are indexed by the power of X.
"""

from __future__ import annotations

import enum
from math import comb
from typing import Iterable, Sequence

from .algebra import (
    GF,
    FieldElem,
    Poly,
    det,
    distinct_degree_profile,
    poly_gcd,
    poly_powmod,
)
from .errors import (
    BadLambda,
    DegreeMismatch,
    InternalInconsistency,
    SingularForm,
    SingularMatrix,
    ZeroForm,
)


def pg1_points(F: GF) -> list[tuple[FieldElem, FieldElem]]:
    """The q+1 points (s, t) of PG(1,q): (x, 1) in canonical order, then (1, 0)."""
    one = F.one
    return [(x, one) for x in F] + [(one, F.zero)]


class BinaryForm:
    __slots__ = ("m", "coords", "field")

    def __init__(self, coords: Sequence[FieldElem], field: GF | None = None):
        coords = tuple(coords)
        if field is None:
            field = coords[0].field
        self.field = field
        self.coords = tuple(field(c) for c in coords)
        self.m = len(coords) - 1
        if not 1 <= self.m <= 4:
            raise DegreeMismatch(f"degree {self.m} outside 1..4")

    @classmethod
    def from_monomials(cls, F: GF, mono: Sequence) -> "BinaryForm":
        m = len(mono) - 1
        return cls(
            [F(mono[i]) / ((-1) ** i * comb(m, i)) for i in range(m + 1)], F
        )

    @classmethod
    def linear(cls, s: FieldElem, t: FieldElem) -> "BinaryForm":
        """The form X t - Y s, vanishing at (s, t)."""
        return cls.from_monomials(s.field, [-s, t])

    def monomials(self) -> list[FieldElem]:
        m = self.m
        return [self.coords[i] * ((-1) ** i * comb(m, i)) for i in range(m + 1)]

    def __call__(self, s: FieldElem, t: FieldElem) -> FieldElem:
        mono = self.monomials()
        acc = self.field.zero
        # Horner in s with t-powers: sum c_i s^i t^(m-i)
        tp = self.field.one
        sp = [self.field.one]
        for _ in range(self.m):
            sp.append(sp[-1] * s)
        for i in range(self.m, -1, -1):
            acc = acc + mono[i] * sp[i] * tp
            tp = tp * t
        return acc

    def __mul__(self, other):
        if isinstance(other, BinaryForm):
            a, b = self.monomials(), other.monomials()
            out = [self.field.zero] * (len(a) + len(b) - 1)
            for i, x in enumerate(a):
                for j, y in enumerate(b):
                    out[i + j] = out[i + j] + x * y
            return BinaryForm.from_monomials(self.field, out)
        c = self.field(other)
        return BinaryForm([c * z for z in self.coords], self.field)

    __rmul__ = __mul__

    def __add__(self, other: "BinaryForm") -> "BinaryForm":
        if other.m != self.m:
            raise DegreeMismatch("adding forms of different degree")
        return BinaryForm([a + b for a, b in zip(self.coords, other.coords)], self.field)

    def __sub__(self, other: "BinaryForm") -> "BinaryForm":
        return self + (-1) * other

    def __eq__(self, other):
        return isinstance(other, BinaryForm) and self.coords == other.coords

    def __hash__(self):
        return hash(tuple(c.value for c in self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def normalized(self) -> "BinaryForm":
        """Projective representative with first nonzero coordinate 1."""
        lead = next((c for c in self.coords if c), None)
        if lead is None:
            raise ZeroForm("the zero form has no projective class")
        inv = lead.inverse()
        return BinaryForm([c * inv for c in self.coords], self.field)

    def proportional(self, other: "BinaryForm") -> bool:
        if self.m != other.m:
            return False
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        return self.normalized() == other.normalized()

    def dehomogenize(self) -> Poly:
        """f(x, 1) as a polynomial in x."""
        return Poly(self.field, self.monomials())

    def key(self) -> tuple[int, ...]:
        return tuple(c.value for c in self.coords)

    def __repr__(self):
        return f"BinaryForm({list(self.key())}, {self.field})"


class GL2El:
    """The matrix ((a, b), (c, d)) with nonzero determinant."""

    __slots__ = ("a", "b", "c", "d", "det")

    def __init__(self, a, b, c, d):
        self.a, self.b, self.c, self.d = a, b, c, d
        self.det = a * d - b * c
        if not self.det:
            raise SingularMatrix("ad - bc = 0")

    @property
    def field(self) -> GF:
        return self.det.field

    def __matmul__(self, other: "GL2El") -> "GL2El":
        a, b, c, d = self.a, self.b, self.c, self.d
        e, f, g, h = other.a, other.b, other.c, other.d
        return GL2El(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def inverse(self) -> "GL2El":
        i = self.det.inverse()
        return GL2El(self.d * i, -self.b * i, -self.c * i, self.a * i)

    def __repr__(self):
        return f"GL2El({self.a}, {self.b}, {self.c}, {self.d})"


def gl2_identity(F: GF) -> GL2El:
    return GL2El(F.one, F.zero, F.zero, F.one)


def rep_matrix(g: GL2El, m: int):
    """The (m+1)x(m+1) matrix of g acting on degree-m coordinates."""
    a, b, c, d = g.a, g.b, g.c, g.d
    ad, bc = a * d, b * c
    if m == 1:
        raw = [[a, b], [c, d]]
    elif m == 2:
        raw = [
            [a * a, 2 * a * b, b * b],
            [a * c, ad + bc, b * d],
            [c * c, 2 * c * d, d * d],
        ]
    elif m == 3:
        raw = [
            [a**3, 3 * a * a * b, 3 * a * b * b, b**3],
            [a * a * c, a * (ad + 2 * bc), b * (bc + 2 * ad), b * b * d],
            [a * c * c, c * (bc + 2 * ad), d * (ad + 2 * bc), b * d * d],
            [c**3, 3 * c * c * d, 3 * c * d * d, d**3],
        ]
    elif m == 4:
        raw = [
            [a**4, 4 * a**3 * b, 6 * a * a * b * b, 4 * a * b**3, b**4],
            [a**3 * c, a * a * (ad + 3 * bc), 3 * a * b * (ad + bc), b * b * (bc + 3 * ad), b**3 * d],
            [a * a * c * c, 2 * a * c * (bc + ad), (ad + bc) ** 2 + 2 * ad * bc, 2 * b * d * (ad + bc), d * d * b * b],
            [c**3 * a, c * c * (bc + 3 * ad), 3 * c * d * (ad + bc), d * d * (ad + 3 * bc), d**3 * b],
            [c**4, 4 * c**3 * d, 6 * c * c * d * d, 4 * c * d**3, d**4],
        ]
    else:
        raise DegreeMismatch(f"no representation matrix for degree {m}")
    s = g.det ** (-m)
    return [[s * x for x in row] for row in raw]


def _act_substitute(g: GL2El, f: BinaryForm) -> BinaryForm:
    F = f.field
    # X -> dX - bY, Y -> aY - cX, monomials indexed by the power of X
    xs = [-g.b, g.d]
    ys = [g.a, -g.c]

    def mul(p, r):
        out = [F.zero] * (len(p) + len(r) - 1)
        for i, x in enumerate(p):
            for j, y in enumerate(r):
                out[i + j] = out[i + j] + x * y
        return out

    m = f.m
    total = [F.zero] * (m + 1)
    for i, c in enumerate(f.monomials()):
        if not c:
            continue
        term = [c]
        for _ in range(i):
            term = mul(term, xs)
        for _ in range(m - i):
            term = mul(term, ys)
        total = [u + v for u, v in zip(total, term)]
    s = g.det ** (-m)
    return BinaryForm.from_monomials(F, [s * x for x in total])


def _act_matrix(g: GL2El, f: BinaryForm) -> BinaryForm:
    M = rep_matrix(g, f.m)
    return BinaryForm(
        [sum((x * z for x, z in zip(row, f.coords)), f.field.zero) for row in M], f.field
    )


def act(g: GL2El, f: BinaryForm, check: bool = False) -> BinaryForm:
    """g . f = det(g)^-m f(dX - bY, aY - cX).

    Computed with the explicit representation matrix; ``check=True`` also
    substitutes into the monomials and insists both routes agree.
    """
    out = _act_matrix(g, f)
    if check and out != _act_substitute(g, f):
        raise InternalInconsistency(f"action routes disagree on {f} under {g}")
    return out


def omega_matrix(F: GF, m: int):
    """Gram matrix of the invariant pairing on degree-m forms (antidiagonal)."""
    A = [[F.zero] * (m + 1) for _ in range(m + 1)]
    for i in range(m + 1):
        A[i][m - i] = F((-1) ** i * comb(m, i))
    return A


def omega_pair(f: BinaryForm, h: BinaryForm) -> FieldElem:
    if f.m != h.m:
        raise DegreeMismatch(f"pairing degree {f.m} with degree {h.m}")
    m = f.m
    acc = f.field.zero
    for i in range(m + 1):
        acc = acc + f.coords[i] * h.coords[m - i] * ((-1) ** i * comb(m, i))
    return acc


def _quartic(phi: BinaryForm) -> tuple:
    if phi.m != 4:
        raise DegreeMismatch("expected a quartic form")
    return phi.coords


def inv_I(phi: BinaryForm) -> FieldElem:
    z0, z1, z2, z3, z4 = _quartic(phi)
    return (z0 * z4 - 4 * z1 * z3 + 3 * z2 * z2) / 3


def m_phi(phi: BinaryForm):
    z0, z1, z2, z3, z4 = _quartic(phi)
    return [
        [z4, -2 * z3, z2],
        [-2 * z3, 4 * z2, -2 * z1],
        [z2, -2 * z1, z0],
    ]


def inv_J(phi: BinaryForm) -> FieldElem:
    """Quarter of det(M_phi)."""
    return det(m_phi(phi)) / 4


def hankel_J(phi: BinaryForm) -> FieldElem:
    z0, z1, z2, z3, z4 = _quartic(phi)
    return det([[z0, z1, z2], [z1, z2, z3], [z2, z3, z4]])


def discriminant(phi: BinaryForm) -> FieldElem:
    I = inv_I(phi)
    J = inv_J(phi)
    return I**3 - J * J


def j_invariant(phi: BinaryForm) -> FieldElem:
    """j with j * (I^3 - J^2) = 1728 I^3."""
    I = inv_I(phi)
    D = I**3 - inv_J(phi) ** 2
    if not D:
        raise SingularForm("j is undefined when the discriminant vanishes")
    return 1728 * I**3 / D


def j_of_lambda(lam: FieldElem) -> FieldElem:
    """j of the four points {0, 1, infinity, lam}: 256 (l^2-l+1)^3 / (l^2 (l-1)^2)."""
    if lam == 0 or lam == 1:
        raise BadLambda("cross-ratio must avoid 0 and 1")
    num = lam * lam - lam + 1
    return 256 * num**3 / (lam * lam * (lam - 1) ** 2)


class FactorType(enum.Enum):
    F4 = "F4"
    F2 = "F2"
    F1 = "F1"
    F4prime = "F4'"
    F2prime = "F2'"

    @property
    def eta(self) -> int:
        return {"F4": 4, "F2": 2, "F1": 1}.get(self.value, 0)


class CubicPattern(enum.Enum):
    Cube = "Cube"
    SquareTimesLinear = "SquareTimesLinear"
    ThreeRational = "ThreeRational"
    OneRationalPlusQuadratic = "OneRationalPlusQuadratic"
    IrreducibleCubic = "IrreducibleCubic"


def rational_roots(f: BinaryForm) -> list[tuple[FieldElem, FieldElem]]:
    return [(s, t) for s, t in pg1_points(f.field) if not f(s, t)]


def factor_pattern(f: BinaryForm) -> tuple[tuple[int, int], ...]:
    """Sorted (degree, multiplicity) of the irreducible factors over GF(q)."""
    if f.is_zero():
        raise ZeroForm("the zero form has no factorization")
    p = f.dehomogenize()
    out: list[tuple[int, int]] = []
    # a drop in degree is a factor Y, i.e. a root at (1, 0)
    if f.m > p.degree:
        out.append((1, f.m - p.degree))
    if p.degree > 0:
        # Yun's squarefree decomposition; char p > 4 >= degree keeps it valid
        a = p.monic()
        b = a.derivative()
        c = poly_gcd(a, b)
        w = a // c
        i = 1
        while w.degree > 0:
            y = poly_gcd(w, c)
            part = w // y
            if part.degree > 0:
                for d, n in distinct_degree_profile(part).items():
                    out.extend([(d, i)] * n)
            w, c = y, c // y
            i += 1
    return tuple(sorted(out))


def factor_type(phi: BinaryForm) -> FactorType:
    if phi.is_zero():
        raise ZeroForm("zero quartic")
    if not discriminant(phi):
        raise SingularForm("factor type needs a squarefree quartic")
    r = len(rational_roots(phi))
    if r == 4:
        return FactorType.F4
    if r == 2:
        return FactorType.F2
    if r == 1:
        return FactorType.F1
    if r != 0:
        raise InternalInconsistency(f"a squarefree quartic with {r} rational roots")
    # no rational roots: X^(q^2) - X picks up every root in GF(q^2)
    p = phi.dehomogenize()
    q = phi.field.q
    x = Poly.x(phi.field)
    g = poly_gcd(poly_powmod(x, q * q, p) - x, p)
    return FactorType.F4prime if g.degree == 4 else FactorType.F2prime


_CUBIC_PATTERNS = {
    ((1, 3),): CubicPattern.Cube,
    ((1, 1), (1, 2)): CubicPattern.SquareTimesLinear,
    ((1, 1), (1, 1), (1, 1)): CubicPattern.ThreeRational,
    ((1, 1), (2, 1)): CubicPattern.OneRationalPlusQuadratic,
    ((3, 1),): CubicPattern.IrreducibleCubic,
}


def cubic_pattern(f: BinaryForm) -> CubicPattern:
    if f.m != 3:
        raise DegreeMismatch("expected a cubic form")
    return _CUBIC_PATTERNS[factor_pattern(f)]


def forms_from_ints(F: GF, values: Iterable[int]) -> BinaryForm:
    return BinaryForm([F(v) for v in values], F)
