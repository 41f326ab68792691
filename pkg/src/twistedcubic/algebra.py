"""Finite fields GF(p^k) with p >= 5, univariate polynomials and small matrices.

Elements are interned: every field keeps one :class:`FieldElem` per value, so
arithmetic is a table lookup plus an integer operation.  An element's
``value`` is its canonical integer encoding ``sum(c_i * p**i)`` of the
polynomial-basis coefficients, and that integer also defines the canonical
order used wherever a "least" representative is chosen.
"""

from __future__ import annotations

import functools
import re
from typing import Iterable, Sequence

from .errors import (
    BadCharacteristic,
    FieldError,
    FieldTooSmall,
    NotPrime,
    ReducibleModulus,
    SingularMatrix,
    ZeroModulus,
)

MAX_ORDER = 1 << 20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def prime_power(n: int) -> tuple[int, int] | None:
    """Return ``(p, k)`` with ``p**k == n``, or None if n is not a prime power."""
    if n < 2:
        return None
    p = 2
    while p * p <= n and n % p:
        p += 1
    if n % p:
        p = n
    k, m = 0, n
    while m % p == 0:
        m //= p
        k += 1
    return (p, k) if m == 1 else None


class FieldElem:
    __slots__ = ("field", "value")

    def __init__(self, field: "GF", value: int):
        self.field = field
        self.value = value

    def _coerce(self, other):
        if type(other) is FieldElem:
            if other.field is not self.field and other.field != self.field:
                raise TypeError(f"mixing elements of {self.field} and {other.field}")
            return other.value
        if isinstance(other, int):
            return other % self.field.p
        return None

    def __add__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        F = self.field
        return F._elems[F._add(self.value, b)]

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        F = self.field
        return F._elems[F._add(self.value, F._neg(b))]

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        F = self.field
        return F._elems[F._add(b, F._neg(self.value))]

    def __mul__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        F = self.field
        return F._elems[F._mul(self.value, b)]

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        if b == 0:
            raise ZeroDivisionError("division by zero in " + str(self.field))
        F = self.field
        return F._elems[F._mul(self.value, F._inv(b))]

    def __rtruediv__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return self.field._elems[b] / self

    def __neg__(self):
        F = self.field
        return F._elems[F._neg(self.value)]

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        F = self.field
        return F._elems[F._pow(self.value, n)]

    def inverse(self) -> "FieldElem":
        if self.value == 0:
            raise ZeroDivisionError("zero has no inverse")
        return self.field._elems[self.field._inv(self.value)]

    def __eq__(self, other):
        b = self._coerce(other) if isinstance(other, (FieldElem, int)) else None
        if b is None:
            return NotImplemented
        return self.value == b

    def __hash__(self):
        return hash(self.value)

    def __lt__(self, other):
        return self.value < other.value

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value

    def coeffs(self) -> tuple[int, ...]:
        """Polynomial-basis coefficients over GF(p), low to high."""
        return self.field.digits(self.value)

    def __repr__(self):
        return f"FieldElem({self.value}, {self.field})"

    def __str__(self):
        return str(self.value)


class GF:
    """The field GF(p^k), p >= 5.

    For k > 1 multiplication goes through discrete log tables and addition
    through a Zech logarithm table, both built once at construction.
    """

    def __init__(self, p: int, k: int = 1, modulus: Sequence[int] | None = None):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if k < 1:
            raise FieldError("extension degree must be >= 1")
        q = p**k
        # char 3 is reported as such even for q = 3; q = 4 is "too small".
        if p == 3:
            raise BadCharacteristic("characteristic 3 is excluded")
        if q <= 4:
            raise FieldTooSmall(f"q = {q} must exceed 4")
        if p == 2:
            raise BadCharacteristic("characteristic 2 is excluded")
        if q > MAX_ORDER:
            raise FieldError(f"q = {q} is beyond the supported size {MAX_ORDER}")
        self.p, self.k, self.q = p, k, q
        self._elems = [FieldElem(self, v) for v in range(q)]
        self._sqrt_table = None
        self._square_flags = None
        if k == 1:
            self.modulus = (0, 1)
            self._setup_prime()
        else:
            if modulus is None:
                modulus = least_irreducible(p, k)
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != k + 1 or modulus[-1] != 1:
                raise FieldError("modulus must be monic of degree k, given low-to-high")
            if not _is_irreducible_mod_p(modulus, p):
                raise ReducibleModulus(f"{modulus} is reducible over GF({p})")
            self.modulus = modulus
            self._setup_extension()

    # -- construction -------------------------------------------------------

    def _setup_prime(self):
        p = self.p
        inv = [0] * p
        for a in range(1, p):
            inv[a] = pow(a, p - 2, p)
        self._inv_table = inv
        self._add = lambda a, b: (a + b) % p
        self._neg = lambda a: (-a) % p
        self._mul = lambda a, b: (a * b) % p
        self._inv = inv.__getitem__

    def _setup_extension(self):
        p, k, q = self.p, self.k, self.q
        mod = self.modulus
        n = q - 1

        def times(a: list[int], b: list[int]) -> list[int]:
            prod = [0] * (2 * k - 1)
            for i, ai in enumerate(a):
                if ai:
                    for j, bj in enumerate(b):
                        prod[i + j] = (prod[i + j] + ai * bj) % p
            for d in range(2 * k - 2, k - 1, -1):
                c = prod[d]
                if c:
                    for j in range(k + 1):
                        prod[d - k + j] = (prod[d - k + j] - c * mod[j]) % p
            return prod[:k]

        for g in range(p, q):
            gd = list(self.digits(g))
            exp = [0] * n
            x = [1] + [0] * (k - 1)
            ok = True
            for e in range(n):
                v = self.encode(x)
                if e and v == 1:
                    ok = False
                    break
                exp[e] = v
                x = times(x, gd)
            if ok:
                break
        log = [0] * q
        for e, v in enumerate(exp):
            log[v] = e
        zech: list[int | None] = [None] * n
        for e in range(n):
            v = exp[e]
            c0 = v % p
            w = v - c0 + (c0 + 1) % p
            zech[e] = None if w == 0 else log[w]
        self.generator = self._elems[exp[1]]
        half = n // 2

        def add(a, b):
            if a == 0:
                return b
            if b == 0:
                return a
            la = log[a]
            z = zech[(log[b] - la) % n]
            return 0 if z is None else exp[(la + z) % n]

        def mul(a, b):
            if a == 0 or b == 0:
                return 0
            return exp[(log[a] + log[b]) % n]

        self._exp, self._log = exp, log
        self._add = add
        self._mul = mul
        self._neg = lambda a: 0 if a == 0 else exp[(log[a] + half) % n]
        self._inv = lambda a: exp[(-log[a]) % n]

    def _pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("zero to a negative power")
            return 1 if e == 0 else 0
        if self.k == 1:
            return pow(a, e % (self.p - 1), self.p)
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    # -- encoding -----------------------------------------------------------

    def digits(self, v: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.k):
            v, r = divmod(v, self.p)
            out.append(r)
        return tuple(out)

    def encode(self, coeffs: Iterable[int]) -> int:
        v = 0
        for c in reversed(list(coeffs)):
            v = v * self.p + (c % self.p)
        return v

    # -- public -------------------------------------------------------------

    def __call__(self, x) -> FieldElem:
        if type(x) is FieldElem:
            if x.field != self:
                raise TypeError("element of another field")
            return x
        return self._elems[int(x) % self.p]

    def from_coeffs(self, coeffs: Iterable[int]) -> FieldElem:
        return self._elems[self.encode(coeffs)]

    def elem(self, value: int) -> FieldElem:
        """Element with the given canonical encoding."""
        return self._elems[value]

    @property
    def zero(self) -> FieldElem:
        return self._elems[0]

    @property
    def one(self) -> FieldElem:
        return self._elems[1]

    def __iter__(self):
        return iter(self._elems)

    def __len__(self):
        return self.q

    def nonzero(self) -> list[FieldElem]:
        return self._elems[1:]

    @property
    def mu(self) -> int:
        """The sign with q = mu (mod 3)."""
        return 1 if self.q % 3 == 1 else -1

    def square_flags(self) -> list[bool]:
        """``flags[v]`` is True iff the element with encoding v is a square."""
        if self._square_flags is None:
            flags = [False] * self.q
            for x in self._elems:
                flags[(x * x).value] = True
            self._square_flags = flags
        return self._square_flags

    def spec_string(self) -> str:
        if self.k == 1:
            return str(self.p)
        return f"{self.p}^{self.k}/" + ",".join(map(str, self.modulus))

    def __eq__(self, other):
        return (
            isinstance(other, GF)
            and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        return f"GF({self.spec_string()})"

    def __reduce__(self):
        return (field_make, (self.p, self.k, None if self.k == 1 else self.modulus))


@functools.lru_cache(maxsize=None)
def _field_cached(p: int, k: int, modulus: tuple[int, ...] | None) -> GF:
    return GF(p, k, modulus)


def field_make(p: int, k: int = 1, modulus: Sequence[int] | None = None) -> GF:
    """Build (or fetch the cached) GF(p^k).

    With ``modulus`` omitted and k > 1 the lexicographically least monic
    irreducible of degree k is used.
    """
    if modulus is not None:
        modulus = tuple(int(c) for c in modulus)
    elif k > 1 and is_prime(p) and p > 3:
        modulus = least_irreducible(p, k)
    return _field_cached(p, k, modulus)


_SPEC_RE = re.compile(r"^\s*(\d+)(?:\s*\^\s*(\d+))?(?:\s*/\s*([-\d,\s]+))?\s*$")


def parse_field(text: str) -> GF:
    """Parse ``"p"``, ``"p^k"`` or ``"p^k/c0,...,ck"``.

    A bare prime power such as ``"25"`` is accepted as ``"5^2"``.
    """
    m = _SPEC_RE.match(text)
    if not m:
        raise FieldError(f"cannot parse field spec {text!r}")
    base = int(m.group(1))
    k = int(m.group(2)) if m.group(2) else 1
    modulus = None
    if m.group(3):
        modulus = [int(c) for c in m.group(3).split(",") if c.strip()]
    if m.group(2) is None and not is_prime(base):
        pk = prime_power(base)
        if pk is None:
            raise NotPrime(f"{base} is not a prime power")
        base, k = pk
    return field_make(base, k, modulus)


# -- polynomials over GF(p) as int tuples (used before a field exists) -------


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _is_irreducible_mod_p(f: Sequence[int], p: int) -> bool:
    Fp = field_make(p)
    poly = Poly(Fp, [Fp(c) for c in f])
    n = poly.degree
    if n <= 0:
        return False
    x = Poly.x(Fp)
    xp = x
    for _ in range(n // 2):
        xp = poly_powmod(xp, p, poly)
        if poly_gcd(xp - x, poly).degree > 0:
            return False
    return True


@functools.lru_cache(maxsize=None)
def least_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Least monic irreducible of degree k over GF(p), coefficients low-to-high.

    "Least" compares the lower coefficients by the integer ``sum(c_i p**i)``.
    """
    for v in range(p**k):
        low = []
        w = v
        for _ in range(k):
            w, r = divmod(w, p)
            low.append(r)
        cand = tuple(low) + (1,)
        if _is_irreducible_mod_p(cand, p):
            return cand
    raise ReducibleModulus(f"no irreducible of degree {k} over GF({p})")


# -- squares, roots of unity ----------------------------------------------


def is_square(x: FieldElem) -> bool:
    """Quadratic residuosity, 0 included.

    Prime fields use Euler's criterion; extensions reduce to the norm, which
    is a square in GF(p) exactly when x is a square in GF(p^k).
    """
    F = x.field
    if x.value == 0:
        return True
    if F.k == 1:
        return pow(x.value, (F.p - 1) // 2, F.p) == 1
    norm = x ** ((F.q - 1) // (F.p - 1))
    return pow(norm.value, (F.p - 1) // 2, F.p) == 1


def _tonelli_shanks(n: int, p: int) -> int:
    if n == 0:
        return 0
    s, qq = 0, p - 1
    while qq % 2 == 0:
        qq //= 2
        s += 1
    if s == 1:
        return pow(n, (p + 1) // 4, p)
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, qq, p), pow(n, qq, p), pow(n, (qq + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def sqrt(x: FieldElem) -> FieldElem | None:
    """A square root of x, or None for a non-square.

    Of the two roots the one with the smaller canonical encoding is returned.
    """
    if not is_square(x):
        return None
    F = x.field
    if F.k == 1:
        r = _tonelli_shanks(x.value, F.p)
        return F.elem(min(r, (-r) % F.p))
    if F._sqrt_table is None:
        table: dict[int, int] = {}
        for y in F:
            sq = (y * y).value
            if sq not in table or y.value < table[sq]:
                table[sq] = y.value
        F._sqrt_table = table
    return F.elem(F._sqrt_table[x.value])


def find_nonsquare(F: GF) -> FieldElem:
    for x in F.nonzero():
        if not is_square(x):
            return x
    raise AssertionError("every finite field of odd order has non-squares")


def find_cube_root_of_unity(F: GF) -> FieldElem | None:
    """Least primitive cube root of unity, present iff q = 1 (mod 3)."""
    if F.q % 3 != 1:
        return None
    for x in F.nonzero():
        if x * x + x + 1 == 0:
            return x
    return None


# -- univariate polynomials ---------------------------------------------------


class Poly:
    """Univariate polynomial over a GF, coefficients low-to-high, trimmed."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: GF, coeffs: Iterable):
        c = [field(a) for a in coeffs]
        while c and c[-1].value == 0:
            c.pop()
        self.field = field
        self.coeffs = tuple(c)

    @classmethod
    def x(cls, field: GF) -> "Poly":
        return cls(field, [0, 1])

    @classmethod
    def const(cls, field: GF, c) -> "Poly":
        return cls(field, [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> FieldElem:
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def _wrap(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return Poly(self.field, [other])

    def __add__(self, other):
        other = self._wrap(other)
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        z = self.field.zero
        return Poly(
            self.field,
            [(a[i] if i < len(a) else z) + (b[i] if i < len(b) else z) for i in range(n)],
        )

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __mul__(self, other):
        other = self._wrap(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(self.field, [])
        out = [self.field.zero] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] = out[i + j] + ai * bj
        return Poly(self.field, out)

    __rmul__ = __mul__

    def __divmod__(self, other):
        other = self._wrap(other)
        if other.is_zero():
            raise ZeroModulus("polynomial division by zero")
        rem = list(self.coeffs)
        d = other.degree
        inv_lead = other.lead.inverse()
        if len(rem) <= d:
            return Poly(self.field, []), Poly(self.field, rem)
        quo = [self.field.zero] * (len(rem) - d)
        for i in range(len(rem) - 1, d - 1, -1):
            c = rem[i] * inv_lead
            if c:
                quo[i - d] = c
                for j, oj in enumerate(other.coeffs):
                    rem[i - d + j] = rem[i - d + j] - c * oj
        return Poly(self.field, quo), Poly(self.field, rem[:d])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other):
        if not isinstance(other, Poly):
            other = self._wrap(other)
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(c.value for c in self.coeffs))

    def __call__(self, x):
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        inv = self.lead.inverse()
        return Poly(self.field, [c * inv for c in self.coeffs])

    def derivative(self) -> "Poly":
        return Poly(self.field, [c * i for i, c in enumerate(self.coeffs)][1:])

    def __repr__(self):
        return f"Poly({[c.value for c in self.coeffs]}, {self.field})"


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (the zero polynomial when both inputs vanish)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_powmod(base: Poly, e: int, m: Poly) -> Poly:
    if m.is_zero():
        raise ZeroModulus("powmod modulus is zero")
    result = Poly.const(base.field, 1) % m
    b = base % m
    while e > 0:
        if e & 1:
            result = (result * b) % m
        b = (b * b) % m
        e >>= 1
    return result


def distinct_degree_profile(f: Poly) -> dict[int, int]:
    """Number of irreducible factors of each degree of a squarefree f."""
    q = f.field.q
    out: dict[int, int] = {}
    x = Poly.x(f.field)
    rest = f.monic()
    xq = x
    d = 0
    while rest.degree > 0:
        d += 1
        if 2 * d > rest.degree:
            out[rest.degree] = out.get(rest.degree, 0) + 1
            break
        xq = poly_powmod(xq, q, rest)
        g = poly_gcd(xq - x, rest)
        if g.degree > 0:
            out[d] = g.degree // d
            rest = rest // g
            xq = xq % rest
    return out


# -- small dense linear algebra --------------------------------------------


def mat_mul(A, B):
    cols = list(zip(*B))
    return [[sum((a * b for a, b in zip(row, col)), row[0] * 0) for col in cols] for row in A]


def mat_vec(A, v):
    return [sum((a * b for a, b in zip(row, v)), row[0] * 0) for row in A]


def transpose(A):
    return [list(r) for r in zip(*A)]


def mat_scale(c, A):
    return [[c * a for a in row] for row in A]


def det(A) -> FieldElem:
    n = len(A)
    if n == 3:
        (a, b, c), (d, e, f), (g, h, i) = A
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    M = [list(r) for r in A]
    F = M[0][0].field
    acc = F.one
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col]), None)
        if piv is None:
            return F.zero
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            acc = -acc
        acc = acc * M[col][col]
        inv = M[col][col].inverse()
        for r in range(col + 1, n):
            if M[r][col]:
                c = M[r][col] * inv
                M[r] = [x - c * y for x, y in zip(M[r], M[col])]
    return acc


def inverse(A):
    n = len(A)
    F = A[0][0].field
    M = [list(r) + [F.one if i == j else F.zero for j in range(n)] for i, r in enumerate(A)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col]), None)
        if piv is None:
            raise SingularMatrix("matrix is not invertible")
        M[col], M[piv] = M[piv], M[col]
        inv = M[col][col].inverse()
        M[col] = [x * inv for x in M[col]]
        for r in range(n):
            if r != col and M[r][col]:
                c = M[r][col]
                M[r] = [x - c * y for x, y in zip(M[r], M[col])]
    return [row[n:] for row in M]


def rank(rows) -> int:
    M = [list(r) for r in rows]
    if not M:
        return 0
    ncols = len(M[0])
    rk = 0
    for col in range(ncols):
        piv = next((r for r in range(rk, len(M)) if M[r][col]), None)
        if piv is None:
            continue
        M[rk], M[piv] = M[piv], M[rk]
        inv = M[rk][col].inverse()
        for r in range(len(M)):
            if r != rk and M[r][col]:
                c = M[r][col] * inv
                M[r] = [x - c * y for x, y in zip(M[r], M[rk])]
        rk += 1
    return rk


def parse_scalar(F: GF, text: str) -> FieldElem:
    """Parse an integer or ``a/b`` into the field."""
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        d = F(int(den))
        if not d:
            raise ZeroDivisionError(f"zero denominator in {text!r}")
        return F(int(num)) / d
    return F(int(text))


def subfield_embedding(small: GF, big: GF) -> dict[int, FieldElem]:
    """Embedding of ``small`` into ``big`` as a map from encodings.

    Requires same characteristic and ``small.k`` dividing ``big.k``.  For a
    prime subfield the map is the identity on integers.
    """
    if small.p != big.p or big.k % small.k:
        raise FieldError(f"{small} does not embed in {big}")
    if small.k == 1:
        return {v: big(v) for v in range(small.p)}
    mod = small.modulus
    root = next(
        x for x in big if sum((c * x**i for i, c in enumerate(mod)), big.zero) == 0
    )
    out = {}
    for x in small:
        out[x.value] = sum((c * root**i for i, c in enumerate(x.coeffs())), big.zero)
    return out
