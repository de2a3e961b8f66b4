"""Irr(G) at desk scale by exhaustive induction from linear characters.

For a subalgebra h and mu in h* vanishing on h^2, theta_mu is a linear
character of H = 1 + h.  Its induced character has coefficient
|O cap (mu + Ann h)| / |O| on every nu of a coadjoint orbit O, so a single
histogram of (restriction, orbit) pairs over n* yields every induced
character of one subalgebra together with its norm.

Not every irreducible needs to be induced from such a theta_mu.  After the
scan, any deficit in sum chi(1)^2 = |G| is filled from residuals of Kirillov
functions and supercharacters, and the result is certified.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .charfun import ClassFunctionTheta, inner, keys_of, kirillov, regular, supercharacter
from .cyclo import CycloNumber
from .dualforms import restrict_many
from .gf import Subspace, all_vectors
from .grouporbit import conjugacy_classes, dual_partition
from .nilalg import Algebra, SubalgebraHandle, enumerate_subalgebras, power_ideal


class OracleError(RuntimeError):
    """Certification failed: the computed set is not all of Irr(G)."""


@dataclass
class IrrSet:
    algebra: Algebra
    chars: list
    provenance: list = field(default_factory=list)

    def __len__(self):
        return len(self.chars)

    def __iter__(self):
        return iter(self.chars)

    def degrees(self) -> list[int]:
        return [int(c.degree().to_rational()) for c in self.chars]

    def index_of(self, f: ClassFunctionTheta) -> int | None:
        for i, c in enumerate(self.chars):
            if c == f:
                return i
        return None

    def __contains__(self, f):
        return self.index_of(f) is not None

    def to_json(self) -> dict:
        out = []
        for c, prov in zip(self.chars, self.provenance):
            entry = {"degree": int(c.degree().to_rational()), "source": prov["source"]}
            if prov.get("subalgebra") is not None:
                entry["subalgebra"] = prov["subalgebra"]
                entry["mu"] = prov["mu"]
            out.append(entry)
        return {"algebra": self.algebra.fingerprint, "count": len(self.chars), "characters": out}


def _sort_key(c: ClassFunctionTheta):
    return (int(c.degree().to_rational()), c.den, np.asarray(c.num, dtype=np.int64).tobytes())


def _orbit_data(alg: Algebra):
    part = dual_partition(alg, "coadjoint")
    order = np.empty(alg.order, dtype=np.int64)
    order[keys_of(alg, part.points)] = part.labels
    return part, order, part.sizes()


def _induced_from(alg: Algebra, h: SubalgebraHandle, labels: np.ndarray, sizes: np.ndarray):
    """Histogram rows for all linear theta_mu of H; returns (mus, counts)."""
    F = alg.field
    sub = h.algebra
    pts = all_vectors(alg.dim, F.q)
    kappa = keys_of(sub, restrict_many(alg, pts, h.space)) if h.dim else np.zeros(alg.order, dtype=np.int64)
    n_orb = len(sizes)
    hist = np.bincount(kappa * n_orb + labels, minlength=sub.order * n_orb).reshape(sub.order, n_orb)
    sq = power_ideal(h, 2).space
    sq_local = Subspace(F, h.dim, h.space.coords(sq.basis)) if sq.dim else Subspace.zero(F, h.dim)
    mus = sq_local.annihilator().vectors()
    return mus, hist[keys_of(sub, mus)] if h.dim else hist[[0]]


def _char_from_counts(alg: Algebra, counts: np.ndarray, labels: np.ndarray, sizes: np.ndarray) -> ClassFunctionTheta:
    L = int(sizes.max())
    per_orbit = counts.astype(np.int64) * (L // sizes.astype(np.int64))
    num = np.zeros((alg.order, alg.field.p), dtype=np.int64)
    num[:, 0] = per_orbit[labels]
    return ClassFunctionTheta(alg, num, L)


def _is_square(r: Fraction) -> Fraction | None:
    from math import isqrt

    if r <= 0:
        return None
    a, b = isqrt(r.numerator), isqrt(r.denominator)
    if a * a == r.numerator and b * b == r.denominator:
        return Fraction(a, b)
    return None


def _power_of(n: int, q: int) -> bool:
    while n > 1 and n % q == 0:
        n //= q
    return n == 1


_CACHE: dict = {}


def all_irreducibles(alg: Algebra, guard: int | None = None, *, complete: bool = True) -> IrrSet:
    """Irr(G), certified by sum chi(1)^2 = |G| and |Irr| = number of classes.

    Results are memoised on the algebra's structure-constant fingerprint.
    """
    key = (alg.fingerprint, guard, complete)
    if key in _CACHE:
        return _CACHE[key]
    irr = _all_irreducibles(alg, guard, complete)
    _CACHE[key] = irr
    return irr


def _all_irreducibles(alg: Algebra, guard: int | None, complete: bool) -> IrrSet:
    part, labels, sizes = _orbit_data(alg)
    target = alg.order
    found: dict[bytes, tuple] = {}
    total = 0
    for h in enumerate_subalgebras(alg, guard):
        if total == target:
            break
        mus, counts = _induced_from(alg, h, labels, sizes)
        deg = alg.order // h.space.size
        # norm^2 = sum_O counts^2 / |O|; irreducible iff it equals 1
        norms = (counts.astype(object) ** 2 * (int(sizes.max()) // sizes.astype(object))).sum(axis=1)
        hits = np.nonzero(norms == int(sizes.max()))[0]
        for i in hits:
            key = counts[i].astype(np.int64).tobytes()
            if key in found:
                continue
            found[key] = (counts[i], {"source": "induced", "subalgebra": h.space.basis.tolist(),
                                      "mu": [int(c) for c in mus[i]]})
            total += deg * deg
    chars = [(_char_from_counts(alg, c, labels, sizes), prov) for c, prov in found.values()]
    if complete and total < target:
        chars = _complete(alg, chars)
    chars.sort(key=lambda cp: _sort_key(cp[0]))
    irr = IrrSet(alg, [c for c, _ in chars], [p for _, p in chars])
    certify(irr)
    return irr


def _complete(alg: Algebra, chars: list) -> list:
    """Fill missing irreducibles from residuals of candidate class functions.

    A residual r (orthogonal to every known irreducible) is accepted as
    r / sqrt<r, r> when that scaling is exact, the result has q-power degree
    and its multiplicity in the remaining part of rho equals its degree.
    """
    rho = regular(alg)
    part = dual_partition(alg, "coadjoint")
    candidates = [("kirillov", r) for r in part.representatives()]
    candidates += [("supercharacter", r) for r in dual_partition(alg, "two_sided").representatives()]
    for source, lam in candidates:
        known = [c for c, _ in chars]
        remaining = rho
        for c in known:
            remaining = remaining - c.scale(c.degree())
        if remaining.is_zero():
            break
        f = kirillov(alg, lam) if source == "kirillov" else supercharacter(alg, lam)
        r = f
        for c in known:
            m = inner(f, c)
            if not m.is_zero():
                r = r - c.scale(m)
        if r.is_zero():
            continue
        n2 = inner(r, r).to_rational()
        s = _is_square(n2) if n2 is not None else None
        if s is None:
            continue
        cand = r.scale(1 / s)
        deg = cand.degree().to_rational()
        if deg is None or deg <= 0 or deg.denominator != 1 or not _power_of(int(deg), alg.field.q):
            continue
        if inner(remaining, cand) != CycloNumber.rational(alg.field.p, deg):
            continue
        chars.append((cand, {"source": f"residual of {source}", "subalgebra": None,
                             "mu": [int(c) for c in lam]}))
    return chars


def certify(irr: IrrSet) -> None:
    alg = irr.algebra
    degs = irr.degrees()
    total = sum(d * d for d in degs)
    if total != alg.order:
        raise OracleError(f"sum of squared degrees {total} != |G| = {alg.order}")
    classes = conjugacy_classes(alg).count
    if len(irr) != classes:
        raise OracleError(f"{len(irr)} irreducibles but {classes} conjugacy classes")
    for d in degs:
        if not _power_of(d, alg.field.q):
            raise OracleError(f"degree {d} is not a power of q")


def decompose(f: ClassFunctionTheta, irr: IrrSet, *, check: bool = True) -> list[CycloNumber]:
    """Multiplicities <f, chi> in the order of ``irr``."""
    mults = [inner(f, c) for c in irr.chars]
    if check and all(m.is_rational() for m in mults):
        recon = ClassFunctionTheta.zero(f.algebra)
        for m, c in zip(mults, irr.chars):
            if not m.is_zero():
                recon = recon + c.scale(m)
        if recon != f:
            raise OracleError("class function is not in the span of Irr(G)")
    return mults


def constituents(f: ClassFunctionTheta, irr: IrrSet) -> dict[int, int]:
    """{index in irr: multiplicity} over the nonzero multiplicities of a character."""
    out = {}
    for i, m in enumerate(decompose(f, irr, check=False)):
        if not m.is_zero():
            r = m.to_rational()
            out[i] = int(r) if r is not None and r.denominator == 1 else m
    return out


def is_character(f: ClassFunctionTheta, irr: IrrSet) -> bool:
    """Nonzero, with nonnegative integer multiplicities reproducing f."""
    if f.is_zero():
        return False
    recon = ClassFunctionTheta.zero(f.algebra)
    for c in irr.chars:
        m = inner(f, c).to_rational()
        if m is None or m.denominator != 1 or m < 0:
            return False
        if m:
            recon = recon + c.scale(m)
    return recon == f


def well_induced_characters(alg: Algebra, guard: int | None = None) -> list[tuple[ClassFunctionTheta, dict]]:
    """Every irreducible Ind_H^G(theta_mu) with mu vanishing on h^2, deduplicated."""
    part, labels, sizes = _orbit_data(alg)
    found = {}
    L = int(sizes.max())
    for h in enumerate_subalgebras(alg, guard):
        mus, counts = _induced_from(alg, h, labels, sizes)
        norms = (counts.astype(object) ** 2 * (L // sizes.astype(object))).sum(axis=1)
        for i in np.nonzero(norms == L)[0]:
            key = counts[i].astype(np.int64).tobytes()
            if key not in found:
                found[key] = (_char_from_counts(alg, counts[i], labels, sizes),
                              {"subalgebra": h.space.basis.tolist(), "mu": [int(c) for c in mus[i]]})
    return list(found.values())


__all__ = [
    "IrrSet",
    "OracleError",
    "all_irreducibles",
    "certify",
    "constituents",
    "decompose",
    "is_character",
    "well_induced_characters",
]
