"""Command-line interface: ``algchar <verb> ...``.

Output is deterministic JSON (sorted keys) or an aligned text table.
Results may be cached in a content-addressed directory given by
``--cache-dir`` or the ALGCHAR_CACHE environment variable.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__, fixtures
from .analysis import (
    analyze_functional,
    count_by_degree,
    count_constituents_super,
    count_constituents_xi,
    xi_partition,
    xi_tensor_experiment,
)
from .charfun import (
    CharFunError,
    exp_map,
    identity_bijection,
    kirillov,
    poly_bijection,
    poly_kirillov,
    supercharacter,
    theta_fun,
    xi,
)
from .dualforms import chain, orbit_sizes
from .grouporbit import DEFAULT_POINT_LIMIT, orbit
from .nilalg import AlgebraError, CapacityError
from .oracle import all_irreducibles, decompose, is_character

CACHE_ENV = "ALGCHAR_CACHE"
EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_CAPACITY = 0, 1, 2, 3
SCHEMA_HINT = "algebra files use the schema algchar.algebra/1 (see algchar/data/q8.json)"
EXAMPLES = ("q8", "ut5-odd", "ut13-98", "ut6-tensor", "sangroniz-u3q3")


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------------------
# argument parsing

def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("algebra and run options")
    g.add_argument("--algebra", default="ut", choices=["ut", "file", "q8", "ut5-odd", "ut6-constrained"],
                   help="algebra kind (default ut)")
    g.add_argument("--n", type=int, help="matrix size for --algebra ut")
    g.add_argument("--q", type=int, help="field size")
    g.add_argument("--file", help="algebra JSON for --algebra file")
    g.add_argument("--lambda", dest="lam", help='functional: "e*(1,3)+2e*(2,3)" or comma-separated coordinates')
    g.add_argument("--threads", type=int, default=1, help="accepted for compatibility; runs are single-process")
    g.add_argument("--cache-dir", help=f"result cache directory (default ${CACHE_ENV}, unset disables)")
    g.add_argument("--guard-bytes", type=int, help="memory budget for enumerated point sets")
    g.add_argument("--format", default="json", choices=["json", "table"])
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="algchar", description="Characters of finite algebra groups 1 + n.")
    parser.add_argument("--version", action="version", version=f"algchar {__version__}")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("algebra", parents=[common], help="build, validate and inspect an algebra")
    p.add_argument("--emit", action="store_true", help="include the structure-constant document")

    sub.add_parser("chain", parents=[common], help="the chains l^i, s^i of a functional")

    p = sub.add_parser("orbit", parents=[common], help="coadjoint, one-sided and two-sided orbit sizes")
    p.add_argument("--enumerate", action="store_true", help="also enumerate the orbits by closure")

    p = sub.add_parser("char", parents=[common], help="a class function in the theta basis")
    p.add_argument("kind", choices=["theta", "kirillov", "super", "xi", "poly-kirillov"])
    p.add_argument("--poly", help="coefficients a_2,a_3,... of F(X) = 1 + X + a_2 X^2 + ... (default Exp)")

    p = sub.add_parser("count", parents=[common], help="constituent counts")
    p.add_argument("kind", choices=["super", "xi", "by-degree"])

    p = sub.add_parser("analyze", parents=[common], help="per-functional report")
    p.add_argument("--degrees", action="store_true", help="include the degree histogram (needs the oracle)")

    p = sub.add_parser("oracle", parents=[common], help="Irr(G) and decompositions")
    p.add_argument("action", choices=["irr", "decompose", "is-character"])
    p.add_argument("--char", default="kirillov", choices=["theta", "kirillov", "super", "xi", "poly-kirillov"])
    p.add_argument("--poly", help="coefficients for --char poly-kirillov")
    p.add_argument("--guard", type=int, help="largest dimension for the subalgebra search")

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", help="suite name or 'all'")
    p.add_argument("--slow", action="store_true", help="include u_4(3)")

    p = sub.add_parser("reproduce", parents=[common], help="reproduce a worked example")
    p.add_argument("example", choices=EXAMPLES)

    sub.add_parser("partition-xi", parents=[common], help="the Xi cells covering n*")
    return parser


# ---------------------------------------------------------------------------
# helpers

def _algebra(args):
    try:
        return fixtures.build_algebra(args.algebra, n=args.n, q=args.q, path=args.file)
    except (ValueError, KeyError, OSError) as exc:
        raise UsageError(f"{exc}; {SCHEMA_HINT}") from exc


def _lambda(args, alg):
    if not args.lam:
        raise UsageError("this verb needs --lambda")
    try:
        return fixtures.parse_functional(args.lam, alg)
    except (ValueError, KeyError) as exc:
        raise UsageError(str(exc)) from exc


def _limit(args, alg) -> int:
    if args.guard_bytes is None:
        return DEFAULT_POINT_LIMIT
    return max(1, args.guard_bytes // (8 * max(alg.dim, 1)))


def _bijection(args, alg):
    if args.poly is None:
        return exp_map(alg)
    coeffs = [int(t) for t in args.poly.replace(" ", "").split(",") if t]
    return poly_bijection(alg.field, coeffs) if coeffs else identity_bijection(alg.field)


def _character(kind: str, alg, lam, args):
    if kind == "theta":
        return theta_fun(alg, lam)
    if kind == "kirillov":
        return kirillov(alg, lam)
    if kind == "super":
        return supercharacter(alg, lam)
    if kind == "xi":
        return xi(alg, lam)[0]
    return poly_kirillov(alg, lam, _bijection(args, alg))


def _ints(v):
    return [int(x) for x in np.asarray(v).reshape(-1)]


def _cache_path(args, payload: dict) -> Path | None:
    root = args.cache_dir or os.environ.get(CACHE_ENV)
    if not root:
        return None
    key = hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()
    return Path(root) / key[:2] / f"{key}.json"


def _cache_payload(args, alg) -> dict:
    skip = {"threads", "cache_dir", "format"}
    opts = {k: v for k, v in vars(args).items() if k not in skip}
    return {"version": __version__, "algebra": alg.fingerprint if alg is not None else None, "args": opts}


# ---------------------------------------------------------------------------
# verbs (each returns (report, ok))

def cmd_algebra(args, alg):
    doc = {
        "fingerprint": alg.fingerprint,
        "field": {"p": alg.field.p, "e": alg.field.e, "q": alg.field.q},
        "dim": alg.dim,
        "order": str(alg.order),
        "nilpotency_index": alg.nilpotency_index,
        "names": list(alg.names),
        "associative": True,
    }
    if args.emit:
        doc["document"] = alg.to_document()
    return doc, True


def cmd_chain(args, alg):
    lam = _lambda(args, alg)
    ch = chain(alg, lam)
    out = {"lambda": _ints(lam), **ch.dims()}
    out["bases"] = {name: [_ints(r) for r in getattr(ch, name).basis] for name in ("l", "s", "l_bar", "s_bar", "k_space")}
    return out, True


def cmd_orbit(args, alg):
    lam = _lambda(args, alg)
    out = {"lambda": _ints(lam), **orbit_sizes(alg, lam)}
    if args.enumerate:
        limit = _limit(args, alg)
        out["enumerated"] = {k: orbit(alg, lam, k, limit=limit).size for k in ("coadjoint", "left", "right", "two_sided")}
        ok = all(out["enumerated"][k] == out["sizes"][k] for k in out["enumerated"])
        return out, ok
    return out, True


def cmd_char(args, alg):
    lam = _lambda(args, alg)
    f = _character(args.kind, alg, lam, args)
    return {"kind": args.kind, "lambda": _ints(lam), **f.to_json()}, True


def cmd_count(args, alg):
    lam = _lambda(args, alg)
    limit = _limit(args, alg)
    if args.kind == "super":
        c = count_constituents_super(alg, lam, limit=limit)
        ch = chain(alg, lam)
        out = c.to_json()
        out["O"] = alg.field.q ** (ch.s.dim - ch.l.dim)
        return out, sum(c.witness) == out["O"]
    if args.kind == "xi":
        return count_constituents_xi(alg, lam, limit=limit).to_json(), True
    return count_by_degree(alg, lam).to_json(), True


def cmd_analyze(args, alg):
    lam = _lambda(args, alg)
    return analyze_functional(alg, lam, limit=_limit(args, alg), with_degrees=args.degrees), True


def cmd_oracle(args, alg):
    irr = all_irreducibles(alg, args.guard)
    if args.action == "irr":
        return irr.to_json(), True
    lam = _lambda(args, alg)
    f = _character(args.char, alg, lam, args)
    if args.action == "decompose":
        mults = decompose(f, irr, check=False)
        terms = [{"index": i, "degree": d, "multiplicity": m.to_json()}
                 for i, (m, d) in enumerate(zip(mults, irr.degrees())) if not m.is_zero()]
        return {"char": args.char, "lambda": _ints(lam), "constituents": terms}, True
    return {"char": args.char, "lambda": _ints(lam), "is_character": is_character(f, irr)}, True


def cmd_verify(args, alg):
    from .verify import SUITES, run_suite

    names = list(SUITES) if args.suite == "all" else [args.suite]
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise UsageError(f"unknown suite {unknown[0]!r}; choose from {', '.join(SUITES)} or all")
    results = []
    for n in names:
        r = run_suite(n, slow=args.slow)
        print(r.line(), file=sys.stderr)
        results.append(r.to_json())
    return {"suites": results}, all(r["passed"] for r in results)


def cmd_reproduce(args, alg):
    from . import verify

    ex = args.example
    if ex == "q8":
        r = verify.q8_report()
        ok = r["xi = 2*psi"] and r["xi = chi"] and r["psi irreducible"] and not r["psi well-induced"]
        summary = "xi = chi = 2*psi, psi irreducible of degree 2, psi not well-induced" if ok else "mismatch"
        return {"example": ex, "summary": summary, **r}, ok
    if ex == "ut5-odd":
        r = verify.ut5_report(args.q or 3)
        ok = r["xi = 3*psi"] and r["psi irreducible"] and r["chi fully ramified"] and r["psi = Ind_H theta"]
        summary = (f"xi = 3*psi, psi irreducible of degree {r['psi degree']}, "
                   f"chi fully ramified of degree {r['chi degree']}") if ok else "mismatch"
        return {"example": ex, "summary": summary, **r}, ok
    if ex == "ut13-98":
        r = verify.ut13_report()
        ok = r["O_enumerated"] == r["O"] and r["tension"]["computed_consistent"]
        r["reference_O"] = verify.UT13_REFERENCE_O
        r["reference_O_agrees"] = r["O"] == verify.UT13_REFERENCE_O
        r["reference_count_agrees"] = r["count"] == verify.UT13_REFERENCE_COUNT
        return {"example": ex, **r}, ok
    if ex == "ut6-tensor":
        u6, h = fixtures.ut6_constrained()
        r = xi_tensor_experiment(h.algebra)
        return {"example": ex, **r}, True
    res = verify.suite_exp_kirillov(slow=False)
    return {"example": ex, **res.details}, res.passed


def cmd_partition_xi(args, alg):
    cells = xi_partition(alg) if args.guard_bytes is None else xi_partition(alg, limit=_limit(args, alg))
    out = [{"representative": _ints(c.representative), "size": len(c.points), "coadjoint_orbits": c.orbit_count,
            "l_bar": c.l_bar_dim, "s_bar": c.s_bar_dim} for c in cells]
    return {"cells": out, "count": len(out), "covered": sum(c["size"] for c in out)}, \
        sum(c["size"] for c in out) == alg.order


VERBS = {
    "algebra": cmd_algebra,
    "chain": cmd_chain,
    "orbit": cmd_orbit,
    "char": cmd_char,
    "count": cmd_count,
    "analyze": cmd_analyze,
    "oracle": cmd_oracle,
    "verify": cmd_verify,
    "reproduce": cmd_reproduce,
    "partition-xi": cmd_partition_xi,
}
NEEDS_ALGEBRA = {"algebra", "chain", "orbit", "char", "count", "analyze", "oracle", "partition-xi"}


# ---------------------------------------------------------------------------
# output

def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k in sorted(obj):
            yield from _flatten(obj[k], f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(obj, list) and obj and isinstance(obj[0], (dict, list)):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}[{i}]")
    else:
        yield prefix, json.dumps(obj) if isinstance(obj, (list, bool)) or obj is None else str(obj)


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2)
    rows = list(_flatten(report))
    width = max((len(k) for k, _ in rows), default=0)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    t0 = time.perf_counter()
    try:
        alg = _algebra(args) if args.verb in NEEDS_ALGEBRA else None
        path = _cache_path(args, _cache_payload(args, alg))
        if path is not None and path.exists():
            cached = json.loads(path.read_text())
            report, ok = cached["report"], cached["ok"]
        else:
            report, ok = VERBS[args.verb](args, alg)
            report = json.loads(json.dumps(report, sort_keys=True))
            if path is not None:
                path.parent.mkdir(parents=True, exist_ok=True)
                path.write_text(json.dumps({"report": report, "ok": ok}, sort_keys=True))
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"algchar: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (AlgebraError, CharFunError) as exc:
        print(f"algchar: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapacityError as exc:
        bound = f" (needs at least {exc.lower_bound})" if getattr(exc, "lower_bound", None) else ""
        print(f"algchar: resource limit: {exc}{bound}", file=sys.stderr)
        return EXIT_CAPACITY
    print(render(report, args.format))
    print(f"[{args.verb}] {time.perf_counter() - t0:.2f}s", file=sys.stderr)
    return EXIT_OK if ok else EXIT_VIOLATION


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
