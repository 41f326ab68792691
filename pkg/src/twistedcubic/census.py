"""Brute-force ground truth for small q.

Orbits are found by applying every element of PGL(2,q) to each not-yet-seen
line, never by trusting invariant labels.  Everything is then compared with the
closed-form counts.
"""

from __future__ import annotations

import os
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .algebra import GF, field_make, parse_field, subfield_embedding
from .elliptic import coeffs, count_points, hasse_ok, orbit_invariance_check, torsion_witness
from .errors import BadLambda, BoundExceeded, InternalInconsistency
from .forms import GL2El, discriminant, factor_type, inv_J, j_invariant, j_of_lambda
from .identities import ALGEBRAIC_IDENTITIES, run_identity
from .incidence import (
    IncidenceProfile,
    brute_decompose,
    decompose,
    decompose_generic,
    nongeneric_class,
    nongeneric_representatives,
    planes_through_line_brute,
    planes_through_line_decompose,
)
from .klein import (
    Line,
    act_on_coords,
    act_on_point,
    all_lines,
    all_planes,
    all_points,
    line_to_quartic,
    normalize,
    point_classify,
    random_gl2,
    random_line,
)

DEFAULT_BOUND = 13


def _check_bound(F: GF, bound: int) -> None:
    if F.q > bound:
        raise BoundExceeded(f"q = {F.q} exceeds the exhaustive bound {bound}")


def pgl2(F: GF) -> list[GL2El]:
    """One matrix per element of PGL(2,q): first nonzero entry of the top row is 1."""
    out = []
    zero, one = F.zero, F.one
    for a, b in [(one, x) for x in F] + [(zero, one)]:
        for c in F:
            for d in F:
                if a * d - b * c:
                    out.append(GL2El(a, b, c, d))
    return out


def group_order(q: int) -> int:
    return q ** 3 - q


# -- points --------------------------------------------------------------------


def point_orbit_formula(q: int) -> tuple[int, ...]:
    return (q + 1, q * (q + 1), (q ** 3 - q) // 6, q * (q * q - 1) // 2, (q ** 3 - q) // 3)


def point_census(F: GF, bound: int = DEFAULT_BOUND) -> tuple[int, ...]:
    _check_bound(F, bound)
    tally = [0] * 5
    for P in all_points(F):
        tally[point_classify(P) - 1] += 1
    return tuple(tally)


def point_orbit_closure(F: GF, bound: int = DEFAULT_BOUND) -> bool:
    """The G-orbit of one point of each class is exactly that class."""
    _check_bound(F, bound)
    G = pgl2(F)
    classes: dict[int, set] = {}
    for P in all_points(F):
        classes.setdefault(point_classify(P), set()).add(P.key())
    for label, members in classes.items():
        P = next(p for p in all_points(F) if point_classify(p) == label)
        if {act_on_point(g, P).key() for g in G} != members:
            return False
    return len(classes) == 5


# -- lines ---------------------------------------------------------------------

# total generic orbit counts by index [G : stabilizer]
def generic_index_histogram(q: int, mu: int) -> dict[int, int]:
    return {
        1: (q - mu) // 3,
        2: q - 1,
        3: 1 + mu,
        4: (2 * q - 10 - (1 + mu) // 2) // 3,
        12: (1 + mu) // 2,
    }


def nongeneric_orbit_sizes(q: int) -> dict[str, int]:
    big = (q ** 3 - q) // 2
    return {
        "tangent": q + 1,
        "osculating_unisecant": q * (q + 1),
        "secant": q * (q + 1) // 2,
        "real_axis": q * (q + 1) // 2,
        "imaginary_secant": (q * q - q) // 2,
        "imaginary_axis": (q * q - q) // 2,
        "unisecant_irr": big,
        "external_irr": big,
        "unisecant_split": big,
        "external_split": big,
    }


def line_label(L: Line) -> tuple:
    """(generic, factor type, j, r, non-generic class): constant on orbits."""
    phi, z5 = line_to_quartic(L)
    r = (inv_J(phi) / z5 ** 3).value if z5 else None
    if discriminant(phi):
        return (True, factor_type(phi).value, j_invariant(phi).value, r, None)
    return (False, None, None, r, nongeneric_class(L))


@dataclass
class OrbitRecord:
    orbit_id: int
    rep: tuple[int, ...]
    size: int
    generic: bool
    factor_type: str | None
    j: int | None
    r: int | None
    nongeneric: str | None
    profile: IncidenceProfile | None = None
    brute_counts: tuple[int, ...] | None = None

    def row(self) -> dict:
        p = self.profile
        counts = p.counts if p else (None,) * 5
        return {
            "orbit_id": self.orbit_id,
            "size": self.size,
            "generic": int(self.generic),
            "factor_type": self.factor_type or "",
            "j": "" if self.j is None else self.j,
            "r": "" if self.r is None else self.r,
            **{f"c{i + 1}": c for i, c in enumerate(counts)},
            "e_count": "" if p is None or p.e_count is None else p.e_count,
        }


@dataclass
class OrbitCensus:
    field_spec: str
    q: int
    mu: int
    point_orbit_sizes: tuple[int, ...]
    line_orbits: list[OrbitRecord]
    checks: dict[str, tuple[bool, str]] = field(default_factory=dict)

    @property
    def generic_orbits(self) -> list[OrbitRecord]:
        return [o for o in self.line_orbits if o.generic]

    @property
    def ok(self) -> bool:
        return all(ok for ok, _ in self.checks.values())

    def index_histogram(self) -> dict[int, int]:
        G = group_order(self.q)
        return dict(sorted(Counter(G // o.size for o in self.generic_orbits).items()))


def line_orbits(F: GF) -> tuple[list[tuple[tuple[int, ...], int]], dict[tuple[int, ...], int]]:
    """Exact G-orbits of lines as (least key, size), plus a key -> orbit index map."""
    G = pgl2(F)
    where: dict[tuple[int, ...], int] = {}
    orbits = []
    for L in all_lines(F):
        if L.key() in where:
            continue
        members = {tuple(c.value for c in normalize(act_on_coords(g, L.z))) for g in G}
        for k in members:
            where[k] = len(orbits)
        orbits.append((min(members), len(members)))
    return orbits, where


def _profile_job(spec: str, key: tuple[int, ...]):
    F = parse_field(spec)
    L = Line([F.elem(v) for v in key])
    prof = decompose(L)
    brute = brute_decompose(L, diagnostics=True).counts
    via_e = decompose_generic(L, via="elliptic").counts if prof.orbit_class == "generic" else prof.counts
    return prof, brute, via_e


def _map(fn, jobs, threads: int):
    if threads <= 1:
        return [fn(*j) for j in jobs]
    with ProcessPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(fn, *zip(*jobs)))


def line_census(F: GF, bound: int = DEFAULT_BOUND, threads: int = 1, strict: bool = True,
                label_samples: int = 12) -> OrbitCensus:
    _check_bound(F, bound)
    q, mu = F.q, F.mu
    G = group_order(q)
    orbits, where = line_orbits(F)
    records = []
    for i, (rep, size) in enumerate(orbits):
        lab = line_label(Line([F.elem(v) for v in rep]))
        records.append(OrbitRecord(i, rep, size, lab[0], lab[1], lab[2], lab[3], lab[4]))

    spec = F.spec_string()
    results = _map(_profile_job, [(spec, o.rep) for o in records], threads)
    formula_ok = elliptic_ok = True
    for o, (prof, brute, via_e) in zip(records, results):
        o.profile, o.brute_counts = prof, brute
        formula_ok &= prof.counts == brute
        elliptic_ok &= via_e == brute

    census = OrbitCensus(spec, q, mu, point_orbit_formula(q), records)
    chk = census.checks

    def put(name, ok, detail=""):
        chk[name] = (bool(ok), detail)

    total = sum(o.size for o in records)
    put("line_total", total == (q * q + 1) * (q * q + q + 1), f"{total} lines")
    put("orbit_sizes_divide_group", all(G % o.size == 0 for o in records))

    gen = census.generic_orbits
    put("generic_orbit_count", len(gen) == 2 * q - 3 + mu, f"{len(gen)} generic orbits")
    hist, want = census.index_histogram(), {k: v for k, v in generic_index_histogram(q, mu).items() if v}
    put("generic_index_histogram", hist == want, f"got {hist}, expected {want}")

    ng = Counter(o.nongeneric for o in records if not o.generic)
    sizes = {o.nongeneric: o.size for o in records if not o.generic}
    put("ten_nongeneric_orbits", len(ng) == 10 and set(ng.values()) == {1}, str(dict(ng)))
    put("nongeneric_orbit_sizes", sizes == nongeneric_orbit_sizes(q), str(sizes))

    reps_ok = all(
        records[where[L.key()]].nongeneric == name for name, L in nongeneric_representatives(F).items()
    )
    put("nongeneric_representatives", reps_ok)
    put("incidence_formula_vs_brute", formula_ok)
    put("incidence_elliptic_route_vs_brute", elliptic_ok)

    # labels never disagree inside an orbit
    rng = random.Random(f"labels:{spec}")
    members: dict[int, list] = {}
    for k, i in where.items():
        members.setdefault(i, []).append(k)
    labels_ok = True
    for o in records:
        own = (o.generic, o.factor_type, o.j, o.r, o.nongeneric)
        pool = members[o.orbit_id]
        for k in rng.sample(pool, min(label_samples, len(pool))):
            labels_ok &= line_label(Line([F.elem(v) for v in k])) == own
    put("labels_constant_on_orbits", labels_ok)

    js = j_set_census(F, bound=bound)
    ok, detail = _per_j_structure(census, js)
    put("orbits_per_j_value", ok, detail)

    if strict and not census.ok:
        bad = [k for k, (ok, _) in chk.items() if not ok]
        raise InternalInconsistency(f"line census failed: {bad}")
    return census


def _expected_indices(j: int, q: int, mu: int, js: "JSetCensus") -> Counter:
    if j == 0:
        return Counter({2: 1 - mu, 3: 1 + mu, 4: (1 + mu) // 2, 12: (1 + mu) // 2})
    if j == 1728 % js.p:
        return Counter({2: 2}) if q % 12 in (5, 7) else Counter({4: 4})
    if j in js.J1_plus:
        return Counter({1: 2})
    if j in js.J2_plus:
        return Counter({2: 4})
    if j in js.J4_plus:
        return Counter({4: 8})
    return Counter()


def _per_j_structure(census: OrbitCensus, js: "JSetCensus") -> tuple[bool, str]:
    G = group_order(census.q)
    seen: dict[int, Counter] = {}
    for o in census.generic_orbits:
        seen.setdefault(o.j, Counter())[G // o.size] += 1
    F = parse_field(census.field_spec)
    bad = []
    for x in F:
        want = +_expected_indices(x.value, census.q, census.mu, js)
        got = seen.get(x.value, Counter())
        if got != want:
            bad.append((x.value, dict(got), dict(want)))
    return not bad, f"mismatches {bad}" if bad else ""


# -- j-sets ----------------------------------------------------------------------


@dataclass
class JSetCensus:
    field_spec: str
    p: int
    q: int
    mu: int
    J1: set
    J2: set
    J4: set
    J1_plus: set
    J2_plus: set
    J4_plus: set
    checks: dict[str, tuple[bool, str]] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(ok for ok, _ in self.checks.values())

    def sizes(self) -> dict[str, int]:
        return {k: len(getattr(self, k)) for k in ("J1", "J2", "J4", "J1_plus", "J2_plus", "J4_plus")}


def j_set_formulas(q: int, mu: int) -> dict[str, int]:
    r = q % 12
    j2p = {1: (q - 1) // 4, 7: (q - 3) // 4, 5: (q - 5) // 4, 11: (q - 3) // 4}[r]
    return {
        "J1": (q - mu) // 3,
        "J2": (q - 2 + mu) // 2,
        "J4": (q - 6 - mu) // 6,
        "J1_plus": (q - mu) // 6,
        "J2_plus": j2p,
        "J4_plus": (q - (r if r != 1 else 13)) // 12,
    }


def _exceptional(K: GF) -> set:
    """{-1, 1/2, 2} and the roots of x^2 - x + 1 (that is -w, -w^2) inside K."""
    out = {-K.one, K.one / 2, K(2)}
    out |= {x for x in K if x * x - x + 1 == 0}
    return out


def _j_image(lams, small: GF, big: GF) -> set:
    back = {v.value: k for k, v in subfield_embedding(small, big).items()} if big is not small else None
    out = set()
    for lam in lams:
        try:
            j = j_of_lambda(lam)
        except BadLambda:
            continue
        if back is None:
            out.add(j.value)
        elif j.value in back:
            out.add(back[j.value])
        else:
            raise InternalInconsistency(f"j({lam}) is not in the base field")
    return out


def j_set_census(F: GF, bound: int = DEFAULT_BOUND) -> JSetCensus:
    _check_bound(F, bound)
    p, k, q, mu = F.p, F.k, F.q, F.mu
    F2, F3 = field_make(p, 2 * k), field_make(p, 3 * k)

    n4 = [x for x in F if x and x != 1 and x not in _exceptional(F)]
    ex2 = _exceptional(F2)
    n2 = [x for x in F2 if x != 1 and x ** (q + 1) == 1 and x not in ex2]
    ex3 = _exceptional(F3)
    n1 = [x for x in F3 if x ** (q + 1) - x ** q + 1 == 0 and x not in ex3]

    J4, J2, J1 = _j_image(n4, F, F), _j_image(n2, F, F2), _j_image(n1, F, F3)
    c1728 = 1728 % p
    flags = F.square_flags()

    def plus(S):
        return {r for r in S if flags[(F.elem(r) / (F.elem(r) - c1728)).value]}

    js = JSetCensus(F.spec_string(), p, q, mu, J1, J2, J4, plus(J1), plus(J2), plus(J4))
    want = j_set_formulas(q, mu)
    got = js.sizes()
    for name in ("J1", "J2", "J4"):
        js.checks[f"size_{name}"] = (got[name] == want[name], f"{got[name]} vs {want[name]}")
    for name in ("J1_plus", "J2_plus", "J4_plus"):
        js.checks[f"size_{name}"] = (got[name] == want[name], f"{got[name]} vs {want[name]}")
    rest = {x.value for x in F} - {0, c1728}
    disjoint = not (J1 & J2 or J1 & J4 or J2 & J4)
    js.checks["partition_minus_0_1728"] = (disjoint and (J1 | J2 | J4) == rest, "")
    return js


# -- everything ----------------------------------------------------------------


@dataclass
class VerifyReport:
    field_spec: str
    seed: int
    checks: list[dict] = field(default_factory=list)

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append({"name": name, "passed": bool(passed), "detail": detail})

    @property
    def passed(self) -> bool:
        return all(c["passed"] for c in self.checks)

    @property
    def failures(self) -> list[dict]:
        return [c for c in self.checks if not c["passed"]]

    def as_dict(self) -> dict:
        return {"field": self.field_spec, "seed": self.seed, "passed": self.passed, "checks": self.checks}


def _guard(report: VerifyReport, name: str, fn) -> None:
    try:
        ok, detail = fn()
    except (InternalInconsistency, ArithmeticError, ValueError) as exc:
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    report.add(name, ok, detail)


def verify_all(F: GF, seed: int = 0, trials: int = 200, threads: int = 1,
               bound: int = DEFAULT_BOUND, duality_samples: int = 30,
               group_samples: int = 50) -> VerifyReport:
    """Run every census and identity check; never raises on a failed check."""
    _check_bound(F, bound)
    q = F.q
    rep = VerifyReport(F.spec_string(), seed)

    pts = point_census(F, bound)
    rep.add("point_orbit_sizes", pts == point_orbit_formula(q), f"{pts}")
    rep.add("point_orbit_total", sum(pts) == q ** 3 + q * q + q + 1)
    _guard(rep, "point_orbit_closure", lambda: (point_orbit_closure(F, bound), ""))

    census = line_census(F, bound, threads=threads, strict=False)
    for name, (ok, detail) in census.checks.items():
        rep.add(f"line_census.{name}", ok, detail)

    js = j_set_census(F, bound)
    for name, (ok, detail) in js.checks.items():
        rep.add(f"j_sets.{name}", ok, detail)

    rng = random.Random(seed)
    gen_lines = [Line([F.elem(v) for v in o.rep]) for o in census.generic_orbits]

    def elliptic_checks():
        bad = []
        for L in gen_lines:
            prof = decompose_generic(L)
            E = prof.e_count
            if prof.nu != (E - prof.eta) // 2 or (E - prof.eta) % 2:
                bad.append(("nu", L.key()))
            if E % 3 or not hasse_ok(E, q):
                bad.append(("count", L.key()))
            torsion_witness(L)
        return not bad, str(bad)

    _guard(rep, "elliptic.nu_from_point_count", elliptic_checks)

    def orbit_invariance():
        return all(
            orbit_invariance_check(L, random_gl2(F, rng)) for L in gen_lines for _ in range(group_samples)
        ), ""

    _guard(rep, "elliptic.count_constant_on_orbits", orbit_invariance)

    def twist():
        for L in gen_lines:
            g2, g3 = coeffs(L)
            lam = F.nonzero()[rng.randrange(q - 1)]
            if count_points(lam ** 4 * g2, lam ** 6 * g3, F) != count_points(g2, g3, F):
                return False, str(L)
        return True, ""

    _guard(rep, "elliptic.twist_invariance", twist)

    def duality():
        planes = list(all_planes(F))
        for _ in range(duality_samples):
            L = random_line(F, rng)
            if planes_through_line_decompose(L) != planes_through_line_brute(L, planes):
                return False, str(L)
        return True, ""

    _guard(rep, "duality.planes_through_line", duality)

    for name in ALGEBRAIC_IDENTITIES:
        _guard(rep, f"identity.{name}", lambda n=name: (
            (fails := run_identity(n, F, trials, seed)) == 0, f"{fails}/{trials} failing"))
    return rep


def default_threads() -> int:
    return os.cpu_count() or 1
