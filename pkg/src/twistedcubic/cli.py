"""Command-line front end.

Exit status: 0 success, 1 a verification failed, 2 usage error, 3 the input is
mathematically out of range (bad field, non-generic line where a generic one is
needed, and so on).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import __version__
from .algebra import parse_field, parse_scalar, sqrt
from .census import (
    DEFAULT_BOUND,
    default_threads,
    generic_index_histogram,
    group_order,
    j_set_census,
    line_census,
    nongeneric_orbit_sizes,
    point_census,
    point_orbit_formula,
    verify_all,
)
from .elliptic import elliptic_data, hasse_ok
from .errors import DomainError, InternalInconsistency
from .forms import (
    BinaryForm,
    cubic_pattern,
    discriminant,
    factor_type,
    inv_I,
    inv_J,
    j_invariant,
)
from .incidence import (
    NONGENERIC_CLASSES,
    brute_decompose,
    decompose,
    decompose_generic,
    table_row,
)
from .klein import Line, line_from_pencil, line_nature, point_classify


class UsageError(Exception):
    pass


def _ints(xs) -> list:
    return [x.value for x in xs]


def _scalars(F, text: str, n: int, what: str):
    parts = [p for p in text.split(",")]
    if len(parts) != n:
        raise UsageError(f"--{what} needs {n} comma-separated values, got {len(parts)}")
    try:
        return [parse_scalar(F, p) for p in parts]
    except ValueError as exc:
        raise UsageError(f"bad --{what} value: {exc}") from None


def _line(args, F) -> Line:
    if args.z and args.pencil:
        raise UsageError("give --z or --pencil, not both")
    if args.z:
        return Line(_scalars(F, args.z, 6, "z"))
    if args.pencil:
        if ":" not in args.pencil:
            raise UsageError("--pencil takes u0,u1,u2,u3:v0,v1,v2,v3")
        u, v = args.pencil.split(":", 1)
        return line_from_pencil(BinaryForm(_scalars(F, u, 4, "pencil"), F),
                                BinaryForm(_scalars(F, v, 4, "pencil"), F))
    raise UsageError("a line is required: --z or --pencil")


def _nature(L) -> dict:
    n = line_nature(L)
    return {"generic": n.generic, "meets_C": n.meets_C, "in_osculating": n.in_osculating}


def _line_record(L: Line) -> dict:
    return {
        "z": _ints(L.z),
        "plucker": _ints(L.plucker),
        "phi": _ints(L.phi.coords),
        "z5": L.z5.value,
        "nature": _nature(L),
        "orbit_class": decompose(L).orbit_class,
    }


# -- subcommands: each returns (payload, exit status) ---------------------------------


def cmd_classify_point(args, F):
    if not args.cubic:
        raise UsageError("--cubic is required")
    f = BinaryForm(_scalars(F, args.cubic, 4, "cubic"), F).normalized()
    label = point_classify(f)
    return {"cubic": _ints(f.coords), "orbit": f"O{label}", "pattern": cubic_pattern(f).name}, 0


def cmd_classify_line(args, F):
    if args.quartic:
        if args.z or args.pencil:
            raise UsageError("give --quartic or a line, not both")
        phi = BinaryForm(_scalars(F, args.quartic, 5, "quartic"), F)
        I, J = inv_I(phi), inv_J(phi)
        out = {"quartic": _ints(phi.coords), "I": I.value, "J": J.value,
               "discriminant": discriminant(phi).value}
        if discriminant(phi):
            out["j"] = j_invariant(phi).value
            out["factor_type"] = factor_type(phi).value
        r = sqrt(I) if any(phi.coords) else None
        roots = [] if r is None else sorted({r, -r})
        out["lines"] = [_line_record(Line(list(phi.coords) + [z5])) for z5 in roots]
        return out, 0
    return _line_record(_line(args, F)), 0


def cmd_incidence(args, F):
    L = _line(args, F)
    prof = decompose(L)
    out = {"counts": list(prof.counts), "eta": prof.eta, "nu": prof.nu,
           "e_count": prof.e_count, "orbit_class": prof.orbit_class}
    status = 0
    if args.check:
        brute = brute_decompose(L).counts
        out["brute_counts"] = list(brute)
        agree = brute == prof.counts
        if prof.orbit_class == "generic":
            agree &= decompose_generic(L, via="elliptic").counts == brute
        out["check_passed"] = agree
        status = 0 if agree else 1
    return out, status


def cmd_elliptic(args, F):
    L = _line(args, F)
    d = elliptic_data(L)
    return {"g2": d.g2.value, "g3": d.g3.value, "count": d.e_count,
            "hasse_ok": hasse_ok(d.e_count, F.q), "div3": d.e_count % 3 == 0,
            "torsion_witness": _ints(d.torsion_witness)}, 0


def cmd_census(args, F):
    threads = args.threads or default_threads()
    pts = point_census(F, args.bound)
    c = line_census(F, args.bound, threads=threads, strict=False)
    js = j_set_census(F, args.bound)
    checks = {f"line_census.{k}": v for k, v in c.checks.items()}
    checks.update({f"j_sets.{k}": v for k, v in js.checks.items()})
    checks["point_orbit_sizes"] = (pts == point_orbit_formula(F.q), str(pts))
    out = {
        "field": F.spec_string(),
        "q": F.q,
        "mu": F.mu,
        "point_orbit_sizes": list(pts),
        "generic_orbits": len(c.generic_orbits),
        "generic_index_histogram": {str(k): v for k, v in c.index_histogram().items()},
        "j_sets": js.sizes(),
        "orbits": [{**o.row(), "rep": list(o.rep), "class": o.nongeneric or "generic"}
                   for o in c.line_orbits],
        "checks": [{"name": k, "passed": ok, "detail": d} for k, (ok, d) in checks.items()],
        "passed": all(ok for ok, _ in checks.values()),
    }
    if args.tables:
        with open(args.tables, "w", newline="") as fh:
            fh.write(_csv([o.row() for o in c.line_orbits]))
    status = 0 if out["passed"] else 1
    if args.format == "csv":
        return [o.row() for o in c.line_orbits], status
    return out, status


def cmd_tables(args, F):
    """Closed-form tables for any admissible q; nothing here is brute force."""
    q, mu = F.q, F.mu
    G = group_order(q)
    sizes = nongeneric_orbit_sizes(q)
    rows = []
    for i, s in enumerate(point_orbit_formula(q), 1):
        rows.append({"table": "points", "name": f"O{i}", "size": s})
    for name in NONGENERIC_CLASSES:
        c = table_row(name, q, mu)
        rows.append({"table": "nongeneric", "name": name, "size": sizes[name],
                     **{f"c{i + 1}": x for i, x in enumerate(c)}})
    for idx, n in generic_index_histogram(q, mu).items():
        rows.append({"table": "generic", "name": f"index_{idx}", "size": G // idx, "orbits": n})
    if args.format in ("csv", "text"):
        return rows, 0
    out = {"field": F.spec_string(), "q": q, "mu": mu, "group_order": G,
           "point_orbits": point_orbit_formula(q),
           "nongeneric": {n: {"size": sizes[n], "counts": table_row(n, q, mu)} for n in NONGENERIC_CLASSES},
           "generic_orbits": 2 * q - 3 + mu,
           "generic_index_histogram": {str(k): v for k, v in generic_index_histogram(q, mu).items()}}
    return out, 0


def cmd_verify(args, F):
    rep = verify_all(F, seed=args.seed, trials=args.trials,
                     threads=args.threads or default_threads(), bound=args.bound)
    return rep.as_dict(), 0 if rep.passed else 1


COMMANDS = {
    "classify-point": cmd_classify_point,
    "classify-line": cmd_classify_line,
    "incidence": cmd_incidence,
    "elliptic": cmd_elliptic,
    "census": cmd_census,
    "tables": cmd_tables,
    "verify": cmd_verify,
}


# -- output -------------------------------------------------------------------


def _csv(rows) -> str:
    if isinstance(rows, dict):
        rows = [{k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in rows.items()}]
    cols: list[str] = []
    for r in rows:
        cols += [k for k in r if k not in cols]
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def _text(payload) -> str:
    if isinstance(payload, list):
        return "".join(" ".join(f"{k}={v}" for k, v in r.items()) + "\n" for r in payload)
    if "orbit" in payload and "cubic" in payload:
        return payload["orbit"] + "\n"
    lines = []
    for k, v in payload.items():
        if k == "checks":
            lines += [f"{'PASS' if c['passed'] else 'FAIL'} {c['name']} {c['detail']}".rstrip() for c in v]
        elif k == "orbits":
            lines.append(f"orbits: {len(v)}")
        else:
            lines.append(f"{k}: {json.dumps(v)}")
    return "\n".join(lines) + "\n"


def render(payload, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2, sort_keys=False) + "\n"
    if fmt == "csv":
        return _csv(payload)
    return _text(payload)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", required=True, help='"p", "p^k" or "p^k/c0,...,ck"')
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--cubic", help="B3 coordinates c0,c1,c2,c3 (a/b allowed)")
    common.add_argument("--quartic", help="B4 coordinates of a quartic")
    common.add_argument("--z", help="Klein coordinates z0,...,z5 of a line")
    common.add_argument("--pencil", help="two cubics spanning the line, u0,..,u3:v0,..,v3")
    common.add_argument("--threads", type=int, default=0, help="worker processes (default: all cores)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=200, help="random trials per identity in verify")
    common.add_argument("--bound", type=int, default=DEFAULT_BOUND, help="largest q for exhaustive work")
    common.add_argument("--tables", help="census: also write the per-orbit CSV here")
    common.add_argument("--check", action="store_true", help="incidence: compare with brute force")

    p = argparse.ArgumentParser(prog="twistedcubic", description="Lines, points and the twisted cubic in PG(3,q).")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return p


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        F = parse_field(args.field)
        payload, status = COMMANDS[args.command](args, F)
    except UsageError as exc:
        print(f"usage error: {exc}", file=stderr)
        return 2
    except (DomainError, ZeroDivisionError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=stderr)
        return 3
    except InternalInconsistency as exc:
        print(f"verification failed: {exc}", file=stderr)
        return 1
    text = render(payload, args.format)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return status


def main() -> None:
    sys.exit(run())
