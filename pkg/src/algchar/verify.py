"""Exhaustive verification suites over the desk-scale fixtures.

Each suite returns a SuiteResult; ``passed`` is exact, never a tolerance.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import fixtures
from .analysis import (
    coadjoint_orbits_in_two_sided,
    count_by_degree,
    count_constituents_super,
    count_constituents_xi,
    induction_bijection,
    inflation_checks,
    is_fully_ramified,
    xi_span_check,
    regular_from_xi,
    stabiliser_check,
    tension_report,
    well_induced,
    xi_partition,
)
from .charfun import (
    ClassFunctionTheta,
    exp_map,
    identity_bijection,
    induce_pointwise,
    inner,
    keys_of,
    kirillov,
    poly_bijection,
    poly_kirillov,
    regular,
    supercharacter,
    theta_fun,
    xi,
    xi_set,
)
from .dualforms import chain, orbit_sizes, restrict, subspace_in
from .gf import GF, all_vectors
from .grouporbit import dual_partition
from .nilalg import Algebra, handle, make_ut, power_ideal
from .oracle import all_irreducibles, constituents, well_induced_characters

UT13_REFERENCE = {"two_sided": 39, "intersection": 16}
UT13_REFERENCE_O = 1 << 16
UT13_REFERENCE_COUNT = 98


@dataclass
class SuiteResult:
    name: str
    passed: bool
    details: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name} ({self.seconds:.1f}s)"

    def to_json(self) -> dict:
        return {"suite": self.name, "passed": self.passed, "details": self.details}


def small_algebras() -> list[tuple[str, Algebra]]:
    return [("u3(2)", make_ut(3, GF(2))), ("u4(2)", make_ut(4, GF(2))), ("u3(3)", make_ut(3, GF(3)))]


def _timed(name, fn) -> SuiteResult:
    t = time.perf_counter()
    passed, details = fn()
    return SuiteResult(name, bool(passed), details, time.perf_counter() - t)


# ---------------------------------------------------------------------------

def _orthonormality(alg: Algebra) -> tuple[bool, dict]:
    pts = all_vectors(alg.dim, alg.field.q)
    coad = dual_partition(alg, "coadjoint")
    two = dual_partition(alg, "two_sided")
    order = np.empty(alg.order, dtype=np.int64)
    order[keys_of(alg, coad.points)] = coad.labels
    order2 = np.empty(alg.order, dtype=np.int64)
    order2[keys_of(alg, two.points)] = two.labels
    psis = [kirillov(alg, r) for r in coad.representatives()]
    chis = [supercharacter(alg, r) for r in two.representatives()]
    ok = True
    # every functional gives the function of its orbit
    for k, lam in enumerate(pts):
        ok &= kirillov(alg, lam) == psis[order[k]]
        ok &= supercharacter(alg, lam) == chis[order2[k]]
    for i, a in enumerate(psis):
        for j, b in enumerate(psis):
            ok &= inner(a, b).to_rational() == (1 if i == j else 0)
    for i, (a, r) in enumerate(zip(chis, two.representatives())):
        inter = orbit_sizes(alg, r)["sizes"]["intersection"]
        for j, b in enumerate(chis):
            ok &= inner(a, b).to_rational() == (inter if i == j else 0)
    return ok, {"kirillov_functions": len(psis), "supercharacters": len(chis)}


def suite_orthonormality() -> SuiteResult:
    def run():
        out = {name: _orthonormality(a) for name, a in small_algebras()}
        return all(v[0] for v in out.values()), {k: v[1] for k, v in out.items()}
    return _timed("orthonormality", run)


def suite_decomp() -> SuiteResult:
    def run():
        ok, info = True, {}
        for name, alg in small_algebras():
            rho = regular(alg)
            by_psi = ClassFunctionTheta.zero(alg)
            for r in dual_partition(alg, "coadjoint").representatives():
                p = kirillov(alg, r)
                by_psi = by_psi + p.scale(p.degree())
            by_chi = ClassFunctionTheta.zero(alg)
            for r in dual_partition(alg, "two_sided").representatives():
                s = orbit_sizes(alg, r)["sizes"]
                by_chi = by_chi + supercharacter(alg, r).scale(Fraction(s["two_sided"], s["left"]))
            info[name] = {"psi": by_psi == rho, "chi": by_chi == rho}
            ok &= by_psi == rho and by_chi == rho
        return ok, info
    return _timed("regular decomposition", run)


def suite_stabiliser(alg: Algebra | None = None) -> SuiteResult:
    def run():
        a = make_ut(4, GF(2)) if alg is None else alg
        bad = [c.lam.tolist() for c in (stabiliser_check(a, lam) for lam in all_vectors(a.dim, a.field.q))
               if not c.ok]
        return not bad, {"functionals": a.order, "failures": bad[:5]}
    return _timed("stabiliser lemma", run)


def _structural(alg: Algebra) -> tuple[bool, dict]:
    q = alg.field.q
    ok = True
    for lam in all_vectors(alg.dim, q):
        ch = chain(alg, lam)
        f, xs = xi(alg, lam, ch)
        l_h = handle(alg, ch.l_bar)
        pointwise = induce_pointwise(theta_fun(l_h.algebra, restrict(alg, lam, l_h)), alg, l_h)
        ok &= f == pointwise
        ok &= xs.size * q ** (ch.l_bar.dim + ch.s_bar.dim) == alg.order**2
        if f.norm2() == 1:
            ok &= f == kirillov(alg, lam)
    cells = xi_partition(alg)
    covered = sum(len(c.points) for c in cells)
    ok &= covered == alg.order
    ok &= regular_from_xi(alg, cells) == regular(alg)
    return ok, {"cells": len(cells), "covered": covered}


def suite_structural() -> SuiteResult:
    def run():
        out = {name: _structural(a) for name, a in small_algebras()}
        return all(v[0] for v in out.values()), {k: v[1] for k, v in out.items()}
    return _timed("xi structure", run)


def oracle_fixtures(slow: bool = False) -> list[tuple[str, Algebra]]:
    out = small_algebras()[:1] + [("q8", fixtures.q8())] + small_algebras()[1:]
    if slow:
        out.append(("u4(3)", make_ut(4, GF(3))))
    return out


def suite_oracle(slow: bool = False) -> SuiteResult:
    def run():
        info, ok = {}, True
        for name, alg in oracle_fixtures(slow):
            degs = sorted(all_irreducibles(alg).degrees())
            info[name] = {"count": len(degs), "degrees": _hist(degs)}
        ok &= info["u3(2)"]["degrees"] == {"1": 4, "2": 1}
        ok &= info["q8"]["degrees"] == {"1": 4, "2": 1}
        return ok, info
    return _timed("oracle certification", run)


def _hist(vals) -> dict:
    out: dict[str, int] = {}
    for v in vals:
        out[str(v)] = out.get(str(v), 0) + 1
    return out


def suite_counts() -> SuiteResult:
    def run():
        info, ok = {}, True
        for name, alg in small_algebras()[1:]:
            irr = all_irreducibles(alg)
            degs = irr.degrees()
            bad = 0
            for lam in all_vectors(alg.dim, alg.field.q):
                ch = chain(alg, lam)
                cons = constituents(supercharacter(alg, lam), irr)
                want = {}
                for i in cons:
                    want[degs[i]] = want.get(degs[i], 0) + 1
                total = count_constituents_super(alg, lam, ch=ch).total
                hist = count_by_degree(alg, lam, ch=ch).by_degree
                bad += total != len(cons) or hist != want or total != coadjoint_orbits_in_two_sided(alg, lam)
            info[name] = {"functionals": alg.order, "mismatches": bad}
            ok &= bad == 0
        return ok, info
    return _timed("constituent counts", run)


def ut5_bijections(q: int = 3) -> list:
    """Both bijections for the u_5 example functional.

    The group is beyond the oracle's subalgebra search, so the irreducible
    characters used are the norm-one characters induced from theta on H.
    """
    ex = fixtures.ut5_odd(q)
    alg, lam, h = ex.algebra, ex.lam, ex.h_in_n
    out = []
    for bar in (False, True):
        ch = chain(alg, lam)
        s_space = ch.s_bar if bar else ch.s
        sub = handle(alg, s_space).algebra
        h_local = handle(sub, subspace_in(s_space, h.space))
        mu = restrict(sub, restrict(alg, lam, s_space), h_local)
        cand = [well_induced(sub, h_local, mu).character]
        out.append(induction_bijection(alg, lam, None, bar=bar, local_candidates=cand))
    return out


def suite_bijection() -> SuiteResult:
    def run():
        info, ok = {}, True
        for name, alg in oracle_fixtures():
            irr = all_irreducibles(alg)
            bad = 0
            for lam in all_vectors(alg.dim, alg.field.q):
                for bar in (False, True):
                    bad += not induction_bijection(alg, lam, irr, bar=bar).ok
            info[name] = {"functionals": alg.order, "failures": bad}
            ok &= bad == 0
        ut5 = ut5_bijections(3)
        info["ut5-odd"] = {"functionals": 1, "failures": sum(not c.ok for c in ut5)}
        ok &= all(c.ok for c in ut5)
        return ok, info
    return _timed("induction bijections", run)


def suite_span() -> SuiteResult:
    def run():
        info, ok = {}, True
        for name, alg in small_algebras()[1:]:
            irr = all_irreducibles(alg)
            maps = {"identity": identity_bijection(alg.field), "1+X+X^2": poly_bijection(alg.field, [1]),
                    "Exp": exp_map(alg)}
            for label, bij in maps.items():
                reps = [xi_span_check(alg, lam, bij, irr) for lam in all_vectors(alg.dim, alg.field.q)]
                bad = sum(not r.ok for r in reps)
                info[f"{name} {label}"] = {"failures": bad, "linear_checked": sum(r.linear_checked for r in reps)}
                ok &= bad == 0
        return ok, info
    return _timed("span of xi constituents", run)


def suite_exp_kirillov(slow: bool = False) -> SuiteResult:
    def run():
        info, ok = {}, True
        algs = [("u3(3)", make_ut(3, GF(3)))] + ([("u4(3)", make_ut(4, GF(3)))] if slow else [])
        for name, alg in algs:
            irr = all_irreducibles(alg)
            bij = exp_map(alg)
            fams = {poly_kirillov(alg, r, bij) for r in dual_partition(alg, "coadjoint").representatives()}
            same = fams == set(irr.chars)
            info[name] = {"exp_kirillov": len(fams), "irreducibles": len(irr), "equal": same}
            ok &= same
        return ok, info
    return _timed("exponential Kirillov functions", run)


def q8_report() -> dict:
    alg = fixtures.q8()
    lam = fixtures.q8_lambda()
    psi, chi = kirillov(alg, lam), supercharacter(alg, lam)
    x = xi(alg, lam)[0]
    wi = well_induced_characters(alg)
    irr = all_irreducibles(alg)
    return {
        "xi = chi": x == chi,
        "xi = 2*psi": x == psi.scale(2),
        "psi irreducible": psi.norm2() == 1 and psi in irr,
        "psi degree": int(psi.degree().to_rational()),
        "psi well-induced": any(f == psi for f, _ in wi),
        "well-induced irreducibles": len(wi),
        "xi constituents": count_constituents_xi(alg, lam).total,
        "degrees": sorted(irr.degrees()),
    }


def ut5_report(q: int = 3) -> dict:
    ex = fixtures.ut5_odd(q)
    alg, lam, h = ex.algebra, ex.lam, ex.h_in_n
    psi, chi = kirillov(alg, lam), supercharacter(alg, lam)
    x = xi(alg, lam)[0]
    w = well_induced(alg, h, restrict(alg, lam, h.space))
    return {
        "dims": {"n": alg.dim, "h": h.dim},
        "chi fully ramified": is_fully_ramified(alg, lam),
        "chi degree": int(chi.degree().to_rational()),
        "psi = Ind_H theta": w.character == psi,
        "psi irreducible": w.irreducible,
        "psi degree": int(psi.degree().to_rational()),
        "xi = 3*psi": x == psi.scale(3),
    }


def suite_examples() -> SuiteResult:
    def run():
        a, b = q8_report(), ut5_report(3)
        ok = (a["xi = chi"] and a["xi = 2*psi"] and a["psi irreducible"] and a["psi degree"] == 2
              and not a["psi well-induced"] and a["degrees"] == [1, 1, 1, 1, 2])
        ok &= (b["chi fully ramified"] and b["chi degree"] == 9 and b["psi = Ind_H theta"] and b["psi irreducible"]
               and b["psi degree"] == 3 and b["xi = 3*psi"])
        return ok, {"q8": a, "ut5-odd": b}
    return _timed("worked examples", run)


def ut13_report() -> dict:
    alg, lam = fixtures.ut13()
    ch = chain(alg, lam)
    cnt = count_constituents_super(alg, lam, ch=ch)
    size_o = alg.field.q ** (ch.s.dim - ch.l.dim)
    sizes = orbit_sizes(alg, lam)["exponents"]
    return {
        "chain": ch.dims(),
        "O": size_o,
        "O_enumerated": int(sum(cnt.witness)),
        "count": cnt.total,
        "exponents": {"G lambda": sizes["left"], "lambda G": sizes["right"], "G lambda G": sizes["two_sided"],
                      "G lambda cap lambda G": sizes["intersection"], "coadjoint": sizes["coadjoint"]},
        "tension": tension_report(alg, lam, UT13_REFERENCE),
    }


def suite_ut13() -> SuiteResult:
    def run():
        r = ut13_report()
        ok = r["O"] == UT13_REFERENCE_O and r["O_enumerated"] == UT13_REFERENCE_O and r["count"] == UT13_REFERENCE_COUNT
        return ok, r
    return _timed("u13(2) constituent count", run)


def suite_inflation() -> SuiteResult:
    def run():
        alg = make_ut(4, GF(2))
        checks = inflation_checks(alg, power_ideal(alg, 3))
        bad = [c.mu.tolist() for c in checks if not c.ok]
        return not bad, {"functionals": len(checks), "failures": bad}
    return _timed("inflation", run)


SUITES = {
    "orthonormality": suite_orthonormality,
    "regular": suite_decomp,
    "stabiliser": suite_stabiliser,
    "xi-structure": suite_structural,
    "oracle": suite_oracle,
    "counts": suite_counts,
    "bijection": suite_bijection,
    "span": suite_span,
    "exp-kirillov": suite_exp_kirillov,
    "examples": suite_examples,
    "ut13": suite_ut13,
    "inflation": suite_inflation,
}


def run_suite(name: str, slow: bool = False) -> SuiteResult:
    fn = SUITES[name]
    if name in ("oracle", "exp-kirillov"):
        return fn(slow=slow)
    return fn()


__all__ = ["SUITES", "SuiteResult", "q8_report", "run_suite", "ut13_report", "ut5_report"]
