"""Counting and criterion results for supercharacters and the characters xi.

Constituent counts of chi_lambda and xi_lambda come from coadjoint orbits on
affine sets of restricted functionals, so lambda G and G lambda G are never
materialised.  Degree-stratified counts go through the oracle on a quotient
algebra group.  The remaining functions are exact desk-scale checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .charfun import (
    ClassFunctionTheta,
    PolyBijection,
    exp_map,
    induce,
    inflate,
    inner,
    kirillov,
    poly_kirillov,
    regular,
    restrict as restrict_fun,
    supercharacter,
    tensor,
    theta_fun,
    xi,
    xi_set,
)
from .dualforms import (
    AffineFunctionalSet,
    ChainResult,
    as_functional,
    chain,
    orbit_sizes,
    restrict,
    subspace_in,
)
from .gf import Subspace, all_vectors
from .grouporbit import (
    DEFAULT_POINT_LIMIT,
    action_matrices,
    closure,
    dual_partition,
    partition_points,
)
from .nilalg import Algebra, AlgebraError, CapacityError, SubalgebraHandle, handle, power_ideal, quotient
from .oracle import IrrSet, all_irreducibles, constituents, decompose


class AnalysisError(ValueError):
    """A precondition of an analysis operation does not hold."""


@dataclass
class ConstituentCount:
    lam: np.ndarray
    total: int
    by_degree: dict | None = None
    method: str = ""
    witness: list = field(default_factory=list)

    def __post_init__(self):
        if self.total < 1:
            raise AnalysisError("a character has at least one constituent")
        if self.by_degree is not None and sum(self.by_degree.values()) != self.total:
            raise AnalysisError(f"degree histogram {self.by_degree} does not sum to {self.total}")

    def to_json(self) -> dict:
        out = {"lambda": [int(c) for c in self.lam], "total": self.total, "method": self.method,
               "orbit_sizes": _size_histogram(self.witness)}
        if self.by_degree is not None:
            out["by_degree"] = {str(k): v for k, v in sorted(self.by_degree.items())}
        return out


def _size_histogram(sizes) -> dict:
    vals, counts = np.unique(np.asarray(sizes, dtype=np.int64), return_counts=True)
    return {str(int(v)): int(c) for v, c in zip(vals, counts)}


# ---------------------------------------------------------------------------
# orbit counts on affine sets

def _local(ch: ChainResult, outer: str, inner_: str):
    """(algebra of the outer subspace, lambda restricted, inner subspace in local coordinates)."""
    big = getattr(ch, outer)
    small = getattr(ch, inner_)
    sub = handle(ch.algebra, big).algebra
    mu = restrict(ch.algebra, ch.lam, big)
    return sub, mu, subspace_in(big, small)


def _count_on_affine(sub: Algebra, aff: AffineFunctionalSet, limit: int):
    if aff.size > limit:
        raise CapacityError(f"affine set of size {aff.size} exceeds {limit}", lower_bound=aff.size)
    pts = aff.elements()
    part = partition_points(pts, sub.field, action_matrices(sub, "coadjoint"))
    return part


def count_constituents_super(alg: Algebra, lam, *, limit: int = DEFAULT_POINT_LIMIT,
                             ch: ChainResult | None = None) -> ConstituentCount:
    """Number of irreducible constituents of chi_lambda.

    O = {nu restricted to s : nu in lambda G} = mu + Ann(l) inside s*, and the
    count is the number of coadjoint S-orbits in O.
    """
    lam = as_functional(alg, lam)
    ch = chain(alg, lam) if ch is None else ch
    sub, mu, l_local = _local(ch, "s", "l")
    aff = AffineFunctionalSet(mu, l_local.annihilator())
    part = _count_on_affine(sub, aff, limit)
    return ConstituentCount(lam, part.count, None, "coadjoint S-orbits on O", part.size_multiset())


def count_constituents_xi(alg: Algebra, lam, *, limit: int = DEFAULT_POINT_LIMIT,
                          ch: ChainResult | None = None) -> ConstituentCount:
    """Number of irreducible constituents of xi_lambda: coadjoint S-bar orbits on mu S-bar."""
    lam = as_functional(alg, lam)
    ch = chain(alg, lam) if ch is None else ch
    sub, mu, l_local = _local(ch, "s_bar", "l_bar")
    aff = AffineFunctionalSet(mu, l_local.annihilator())
    part = _count_on_affine(sub, aff, limit)
    return ConstituentCount(lam, part.count, None, "coadjoint S-bar-orbits on mu S-bar", part.size_multiset())


def coadjoint_orbits_in_two_sided(alg: Algebra, lam, limit: int = DEFAULT_POINT_LIMIT) -> int:
    """Number of coadjoint G-orbits inside G lambda G (brute force)."""
    lam = as_functional(alg, lam)
    pts = closure(lam[None, :], alg.field, action_matrices(alg, "two_sided"), limit=limit)
    return partition_points(pts, alg.field, action_matrices(alg, "coadjoint")).count


# ---------------------------------------------------------------------------
# degree-stratified counts

def _exact_power(n: Fraction, q: int) -> int | None:
    if n.denominator != 1 or n < 1:
        return None
    n, e = int(n), 0
    while n > 1:
        if n % q:
            return None
        n //= q
        e += 1
    return e


def _route_quotient(alg: Algebra, ch: ChainResult, ideal: Subspace, check_condition: bool) -> dict:
    """Histogram {q^e: count} from Irr of S/ideal.

    With ``check_condition`` each psi must satisfy psi o pi = psi(1) theta_lambda
    on L; the constituent degree is psi(1) |G| / |S|.
    """
    q = alg.field.q
    sub = handle(alg, ch.s).algebra
    mu = restrict(alg, ch.lam, ch.s)
    ideal_h = handle(sub, subspace_in(ch.s, ideal))
    Q, P = quotient(sub, ideal_h)
    irr = all_irreducibles(Q)
    ratio = Fraction(alg.order, sub.order)
    l_h = handle(sub, subspace_in(ch.s, ch.l))
    theta_l = theta_fun(l_h.algebra, restrict(sub, mu, l_h))
    hist: dict[int, int] = {}
    for psi in irr:
        d = psi.degree().to_rational()
        if check_condition:
            on_l = restrict_fun(inflate(psi, sub, P), l_h)
            if on_l != theta_l.scale(d):
                continue
        deg = d * ratio
        if _exact_power(deg, q) is None:
            raise AnalysisError(f"constituent degree {deg} is not a power of {q}")
        hist[int(deg)] = hist.get(int(deg), 0) + 1
    return hist


def route3_applies(alg: Algebra, ch: ChainResult) -> bool:
    """ker lambda contains s^2."""
    sq = power_ideal(handle(alg, ch.s), 2).space
    ker = Subspace(alg.field, alg.dim, ch.lam[None, :]).annihilator()
    return ker.contains(sq)


def count_by_degree(alg: Algebra, lam, *, ch: ChainResult | None = None) -> ConstituentCount:
    """Degree histogram of the constituents of chi_lambda via Irr(S/K).

    When ker lambda contains s^2 the histogram is recomputed from Irr(S/L)
    and the two routes must agree.
    """
    lam = as_functional(alg, lam)
    ch = chain(alg, lam) if ch is None else ch
    hist = _route_quotient(alg, ch, ch.k_space, True)
    method = "Irr(S/K) with the central condition on L"
    if route3_applies(alg, ch):
        hist3 = _route_quotient(alg, ch, ch.l, False)
        if hist3 != hist:
            raise AnalysisError(f"Irr(S/K) gives {hist} but Irr(S/L) gives {hist3}")
        method += "; agrees with Irr(S/L)"
    return ConstituentCount(lam, sum(hist.values()), hist, method, [])


# ---------------------------------------------------------------------------
# criteria

def is_fully_ramified(alg: Algebra, lam, ch: ChainResult | None = None) -> bool:
    ch = chain(alg, lam) if ch is None else ch
    return ch.s.dim == alg.dim


def exp_criterion(alg: Algebra, lam, ch: ChainResult | None = None) -> bool:
    """(s-bar)^p lies in l-bar cap ker lambda."""
    lam = as_functional(alg, lam)
    ch = chain(alg, lam) if ch is None else ch
    pw = power_ideal(handle(alg, ch.s_bar), alg.field.p).space
    ker = Subspace(alg.field, alg.dim, lam[None, :]).annihilator()
    return (ch.l_bar & ker).contains(pw)


@dataclass
class WellInduced:
    character: ClassFunctionTheta
    irreducible: bool
    kirillov_lambda: np.ndarray | None

    def to_json(self) -> dict:
        return {"degree": int(self.character.degree().to_rational()), "irreducible": self.irreducible,
                "kirillov_lambda": None if self.kirillov_lambda is None else [int(c) for c in self.kirillov_lambda]}


def well_induced(alg: Algebra, h: SubalgebraHandle, mu) -> WellInduced:
    """Ind_H^G theta_mu for mu on h vanishing on h^2."""
    if not h.is_subalgebra:
        raise AlgebraError("h is not a subalgebra")
    mu = np.asarray(mu, dtype=np.int64) % alg.field.q
    if mu.shape != (h.dim,):
        raise AnalysisError(f"mu must have {h.dim} coordinates")
    sub = h.algebra
    sq = power_ideal(sub, 2).space
    if sq.dim and np.any(alg.field.matmul(sq.basis, mu)):
        raise AnalysisError("mu does not vanish on h^2, so theta_mu is not linear on H")
    f = induce(theta_fun(sub, mu), alg, h)
    irreducible = f.norm2() == 1
    lam_k = None
    if irreducible:
        # an irreducible induced character is the Kirillov function of any point of its support
        cand = f.support_functionals()[0]
        if kirillov(alg, cand) == f:
            lam_k = cand
    return WellInduced(f, irreducible, lam_k)


# ---------------------------------------------------------------------------
# the Xi partition

@dataclass
class XiCell:
    representative: np.ndarray
    points: np.ndarray
    orbit_count: int
    s_bar_dim: int
    l_bar_dim: int


def xi_partition(alg: Algebra, limit: int = 1 << 20) -> list[XiCell]:
    """Cells Xi_lambda covering n*, each seeded at the least unassigned functional."""
    if alg.order > limit:
        raise CapacityError(f"|n*| = {alg.order} exceeds {limit}", lower_bound=alg.order)
    from .charfun import keys_of

    pts = all_vectors(alg.dim, alg.field.q)
    owner = np.full(alg.order, -1, dtype=np.int64)
    cells: list[XiCell] = []
    nxt = 0
    while nxt < alg.order:
        lam = pts[nxt]
        ch = chain(alg, lam)
        xs = xi_set(alg, lam, ch)
        keys = keys_of(alg, xs.points)
        if np.any(owner[keys] >= 0):
            raise AnalysisError("Xi cells overlap")
        owner[keys] = len(cells)
        cells.append(XiCell(lam, xs.points, xs.orbit_count, ch.s_bar.dim, ch.l_bar.dim))
        free = np.nonzero(owner[nxt:] < 0)[0]
        nxt = nxt + int(free[0]) if len(free) else alg.order
    return cells


def regular_from_xi(alg: Algebra, cells: list[XiCell]) -> ClassFunctionTheta:
    """sum over cells of (|G| / |S-bar|) xi; equals rho_G."""
    q = alg.field.q
    total = ClassFunctionTheta.zero(alg)
    for c in cells:
        total = total + xi(alg, c.representative)[0].scale(Fraction(alg.order, q**c.s_bar_dim))
    return total


# ---------------------------------------------------------------------------
# span of the constituents of xi

@dataclass
class SpanReport:
    lam: np.ndarray
    residual_norm: Fraction
    constituents: int
    linear_checked: int
    lemma_holds: bool

    @property
    def ok(self) -> bool:
        return self.residual_norm == 0 and self.lemma_holds


def xi_span_check(alg: Algebra, lam, bij: PolyBijection, irr: IrrSet) -> SpanReport:
    """Residual of projecting psi^F_lambda onto span Irr(G, xi_lambda), plus the linear-character lemma."""
    lam = as_functional(alg, lam)
    psi_f = poly_kirillov(alg, lam, bij)
    xi_f, _ = xi(alg, lam)
    idx = [i for i, c in enumerate(irr.chars) if not inner(xi_f, c).is_zero()]
    proj = ClassFunctionTheta.zero(alg)
    for i in idx:
        m = inner(psi_f, irr.chars[i])
        if not m.is_zero():
            proj = proj + irr.chars[i].scale(m)
    res = psi_f - proj
    n2 = inner(res, res).to_rational()
    if n2 is None:
        raise AnalysisError("residual norm is not rational")
    chi = supercharacter(alg, lam)
    checked, holds = 0, True
    for c in irr.chars:
        if c.degree().to_rational() != 1:
            continue
        if inner(chi, c).is_zero():
            checked += 1
            if not inner(psi_f, c).is_zero():
                holds = False
    return SpanReport(lam, n2, len(idx), checked, holds)


# ---------------------------------------------------------------------------
# stabiliser descriptions

@dataclass
class StabiliserCheck:
    lam: np.ndarray
    ratio: int
    intersection: int
    norm: Fraction
    l_matches: bool
    s_matches: bool

    @property
    def ok(self) -> bool:
        return self.l_matches and self.s_matches and self.ratio == self.intersection == self.norm


def stabiliser_check(alg: Algebra, lam, chi: ClassFunctionTheta | None = None) -> StabiliserCheck:
    """|S|/|L| = |G lambda cap lambda G| = <chi, chi>, and L, S as stabiliser sets.

    L = {g : g lambda = lambda} and S = {g : g lambda in G lambda cap lambda G},
    each compared with 1 + l and 1 + s by scanning all of G.
    """
    from .charfun import keys_of
    from .dualforms import form_matrix
    from .grouporbit import g_inv

    lam = as_functional(alg, lam)
    F = alg.field
    ch = chain(alg, lam)
    gs = all_vectors(alg.dim, F.q)
    in_right = np.zeros(alg.order, dtype=bool)
    in_right[keys_of(alg, closure(lam[None, :], F, action_matrices(alg, "right")))] = True
    # g lambda (X) = lambda(g^-1 X) = lambda(X) + lambda(h X) with h = g^-1 - 1
    shift = F.matmul(g_inv(alg, gs), form_matrix(alg, lam))
    glam = F.vadd(shift, lam[None, :])
    in_l = ~np.any(shift, axis=1)
    in_s = in_right[keys_of(alg, glam)]
    left_size = len(closure(lam[None, :], F, action_matrices(alg, "left")))
    # g lambda always lies in G lambda, so |G lambda cap lambda G| counts the right orbit inside it
    both = len(np.unique(keys_of(alg, glam[in_s])))
    assert left_size == len(np.unique(keys_of(alg, glam)))
    chi = supercharacter(alg, lam) if chi is None else chi
    return StabiliserCheck(lam, F.q ** (ch.s.dim - ch.l.dim), both, chi.norm2(),
                           bool(np.array_equal(in_l, ~np.any(ch.l.reduce(gs), axis=1))),
                           bool(np.array_equal(in_s, ~np.any(ch.s.reduce(gs), axis=1))))


# ---------------------------------------------------------------------------
# induction bijections

@dataclass
class BijectionCheck:
    lam: np.ndarray
    local_constituents: int
    global_constituents: int
    norms_one: bool
    distinct: bool
    onto: bool

    @property
    def ok(self) -> bool:
        return self.norms_one and self.distinct and self.onto and self.local_constituents == self.global_constituents


def certified_constituents(f: ClassFunctionTheta, candidates) -> list[int]:
    """Indices of the candidates occurring in the character f.

    Candidates must be irreducible characters.  The decomposition is accepted
    only when f is reproduced exactly with positive integer multiplicities,
    which by uniqueness of decompositions makes the list complete.
    """
    recon = ClassFunctionTheta.zero(f.algebra)
    out = []
    for i, c in enumerate(candidates):
        m = inner(f, c).to_rational()
        if m is None or m.denominator != 1 or m < 0:
            raise AnalysisError("candidate multiplicity is not a nonnegative integer")
        if m:
            out.append(i)
            recon = recon + c.scale(m)
    if recon != f:
        raise AnalysisError("candidates do not account for the whole character")
    return out


def induction_bijection(alg: Algebra, lam, irr: IrrSet | None = None, *, bar: bool = True,
                        local_candidates=None) -> BijectionCheck:
    """Induce the constituents of Ind_L^S theta_lambda from S to G and compare with Irr(G, target).

    With ``bar`` the pair is (L-bar, S-bar) and the target xi_lambda; otherwise
    (L, S) and chi_lambda.  Local constituents come from the oracle on S, or
    from ``local_candidates`` (irreducible characters of S) when given.  The
    target is always rebuilt exactly from the induced characters; with
    ``irr`` the induced set is also matched against the oracle decomposition.
    """
    lam = as_functional(alg, lam)
    ch = chain(alg, lam)
    s_space, l_space = (ch.s_bar, ch.l_bar) if bar else (ch.s, ch.l)
    s_h = handle(alg, s_space)
    sub = s_h.algebra
    mu = restrict(alg, lam, s_space)
    l_h = handle(sub, subspace_in(s_space, l_space))
    local = induce(theta_fun(l_h.algebra, restrict(sub, mu, l_h)), sub, l_h)
    if local_candidates is None:
        irr_s = all_irreducibles(sub)
        parts = [irr_s.chars[i] for i in constituents(local, irr_s)]
    else:
        parts = [local_candidates[i] for i in certified_constituents(local, local_candidates)]
    induced = [induce(p, alg, s_h) for p in parts]
    norms = all(f.norm2() == 1 for f in induced)
    distinct = all(not (a == b) for i, a in enumerate(induced) for b in induced[i + 1:])
    target = xi(alg, lam, ch)[0] if bar else supercharacter(alg, lam)
    try:
        n_target = len(certified_constituents(target, induced)) if norms else -1
    except AnalysisError:
        n_target = -1
    onto = n_target == len(induced)
    if irr is not None:
        want = sorted(constituents(target, irr))
        got = sorted(-1 if irr.index_of(f) is None else irr.index_of(f) for f in induced)
        onto &= got == want
    return BijectionCheck(lam, len(parts), n_target, norms, distinct, onto)


# ---------------------------------------------------------------------------
# inflation

@dataclass
class InflationCheck:
    mu: np.ndarray
    psi: bool
    psi_exp: bool
    chi: bool
    xi: bool
    l_bar: bool
    s_bar: bool

    @property
    def ok(self) -> bool:
        return self.psi and self.psi_exp and self.chi and self.xi and self.l_bar and self.s_bar


def inflation_checks(alg: Algebra, ideal: SubalgebraHandle) -> list[InflationCheck]:
    """For every mu on n/ideal, lambda = mu o pi: each construction commutes with inflation."""
    F = alg.field
    Q, P = quotient(alg, ideal)
    comp = ideal.space.complement_positions()
    embed = np.eye(alg.dim, dtype=np.int64)[comp]
    exp_q, exp_g = exp_map(Q), exp_map(alg)
    out = []
    for mu in all_vectors(Q.dim, F.q):
        lam = F.matmul(mu, P.T)
        ch_q, ch_g = chain(Q, mu), chain(alg, lam)

        def pre(space: Subspace) -> Subspace:
            lifted = F.matmul(space.basis, embed) if space.dim else np.zeros((0, alg.dim), dtype=np.int64)
            return Subspace(F, alg.dim, np.vstack([lifted, ideal.space.basis]))

        out.append(InflationCheck(
            mu,
            inflate(kirillov(Q, mu), alg, P) == kirillov(alg, lam),
            inflate(poly_kirillov(Q, mu, exp_q), alg, P) == poly_kirillov(alg, lam, exp_g),
            inflate(supercharacter(Q, mu), alg, P) == supercharacter(alg, lam),
            inflate(xi(Q, mu, ch_q)[0], alg, P) == xi(alg, lam, ch_g)[0],
            pre(ch_q.l_bar) == ch_g.l_bar,
            pre(ch_q.s_bar) == ch_g.s_bar,
        ))
    return out


# ---------------------------------------------------------------------------
# per-functional report

def analyze_functional(alg: Algebra, lam, *, limit: int = DEFAULT_POINT_LIMIT, with_degrees: bool = False) -> dict:
    """Chain dimensions, orbit sizes and constituent counts for one functional."""
    lam = as_functional(alg, lam)
    ch = chain(alg, lam)
    sizes = orbit_sizes(alg, lam)
    q = alg.field.q
    sup = count_constituents_super(alg, lam, limit=limit, ch=ch)
    out = {
        "lambda": [int(c) for c in lam],
        "chain": ch.dims(),
        "orbit_exponents": sizes["exponents"],
        "orbit_size_O": q ** (ch.s.dim - ch.l.dim),
        "fully_ramified": is_fully_ramified(alg, lam, ch),
        "chi_degree_exponent": alg.dim - ch.l.dim,
        "xi_degree_exponent": alg.dim - ch.l_bar.dim,
        "exp_criterion": exp_criterion(alg, lam, ch),
        "constituents_chi": sup.to_json(),
    }
    try:
        out["constituents_xi"] = count_constituents_xi(alg, lam, limit=limit, ch=ch).to_json()
    except CapacityError as exc:
        out["constituents_xi"] = {"error": str(exc)}
    if with_degrees:
        out["by_degree"] = count_by_degree(alg, lam, ch=ch).to_json()["by_degree"]
    return out


def tension_report(alg: Algebra, lam, reference: dict) -> dict:
    """Computed orbit sizes next to reference exponents, flagging disagreements.

    Sizes satisfy |G lambda|^2 = |G lambda G| |G lambda cap lambda G|, so at
    most one consistent set of exponents exists.
    """
    sizes = orbit_sizes(alg, lam)["exponents"]
    flags = {k: {"reference": v, "computed": sizes[k], "agrees": v == sizes[k]} for k, v in reference.items()}
    consistent = 2 * sizes["left"] == sizes["two_sided"] + sizes["intersection"]
    pub_consistent = None
    if {"left", "two_sided", "intersection"} <= reference.keys():
        pub_consistent = 2 * reference["left"] == reference["two_sided"] + reference["intersection"]
    return {"computed_exponents": sizes, "reference": flags, "computed_consistent": consistent,
            "reference_consistent": pub_consistent}


# ---------------------------------------------------------------------------
# tensor products of xi characters

def _walsh(v: np.ndarray) -> np.ndarray:
    """Unnormalised Walsh-Hadamard transform along the last axis (length 2^d)."""
    v = np.array(v, dtype=np.int64)
    n = v.shape[-1]
    h = 1
    while h < n:
        w = v.reshape(v.shape[:-1] + (n // (2 * h), 2, h))
        a, b = w[..., 0, :].copy(), w[..., 1, :].copy()
        w[..., 0, :] = a + b
        w[..., 1, :] = a - b
        v = w.reshape(v.shape)
        h *= 2
    return v


def _rank_mod(rows: list, prime: int = 2147483629) -> int:
    """Rank over Q of integer vectors, computed modulo a large prime."""
    if not rows:
        return 0
    m = np.array(rows, dtype=np.int64) % prime
    rank = 0
    for col in range(m.shape[1]):
        piv = np.nonzero(m[rank:, col])[0]
        if len(piv) == 0:
            continue
        r = rank + piv[0]
        m[[rank, r]] = m[[r, rank]]
        m[rank] = m[rank] * pow(int(m[rank, col]), -1, prime) % prime
        others = np.nonzero(m[:, col])[0]
        others = others[others != rank]
        if len(others):
            m[others] = (m[others] - (m[others, col][:, None] * m[rank][None, :]) % prime) % prime
        rank += 1
        if rank == len(m):
            break
    return rank


def xi_tensor_experiment(alg: Algebra, max_pairs: int | None = None, max_residuals: int = 256) -> dict:
    """How far products xi xi' fall outside the span of all xi.

    The xi have disjoint supports (one Xi cell each) and are constant there,
    so a class function lies in their span iff its theta coefficients are
    constant on every cell.  Residuals are the deviations from the cell means;
    the reported deficiency is the rank of the residuals collected.
    Over F_2, (|G|/|S-bar|) xi is a cell indicator and products are taken
    with the Walsh-Hadamard transform; otherwise through the theta basis.
    """
    from .charfun import keys_of

    cells = xi_partition(alg)
    n = alg.order
    cell_of = np.empty(n, dtype=np.int64)
    for i, c in enumerate(cells):
        cell_of[keys_of(alg, c.points)] = i
    sizes = np.bincount(cell_of, minlength=len(cells))
    fast = alg.field.q == 2
    if fast:
        # keys of F_2^d in big-endian order coincide with the transform's bit order
        ind = np.zeros((len(cells), n), dtype=np.int64)
        ind[cell_of, np.arange(n)] = 1
        spectra = _walsh(ind)
    else:
        scaled = [xi(alg, c.representative)[0].scale(Fraction(alg.order, alg.field.q**c.s_bar_dim)) for c in cells]
    pairs = outside = 0
    witnesses, residuals = [], []
    for i in range(len(cells)):
        for j in range(i, len(cells)):
            if max_pairs is not None and pairs >= max_pairs:
                break
            pairs += 1
            if fast:
                prod = _walsh(spectra[i] * spectra[j])  # n * coefficients of the product
            else:
                f = tensor(scaled[i], scaled[j])
                if not f.is_rational():
                    raise AnalysisError("product of rational characters is not rational")
                prod = f.num[:, 0].astype(object) * (n // f.den) if n % f.den == 0 else None
                if prod is None:
                    raise AnalysisError("unexpected denominator in a product of characters")
                prod = np.asarray(prod, dtype=np.int64)
            sums = np.zeros(len(cells), dtype=np.int64)
            np.add.at(sums, cell_of, prod)
            # residual scaled by the cell size keeps integers: |cell| c_nu - sum over the cell
            res = prod * sizes[cell_of] - sums[cell_of]
            if np.any(res):
                outside += 1
                if len(witnesses) < 5:
                    witnesses.append([[int(x) for x in cells[i].representative], [int(x) for x in cells[j].representative]])
                if len(residuals) < max_residuals:
                    residuals.append(res)
    return {"algebra_dim": alg.dim, "cells": len(cells), "pairs": pairs, "products_outside_span": outside,
            "residual_rank": _rank_mod(residuals), "residuals_ranked": len(residuals), "witnesses": witnesses}


__all__ = [
    "AnalysisError",
    "BijectionCheck",
    "ConstituentCount",
    "InflationCheck",
    "SpanReport",
    "StabiliserCheck",
    "WellInduced",
    "XiCell",
    "analyze_functional",
    "certified_constituents",
    "coadjoint_orbits_in_two_sided",
    "count_by_degree",
    "count_constituents_super",
    "count_constituents_xi",
    "exp_criterion",
    "induction_bijection",
    "inflation_checks",
    "is_fully_ramified",
    "xi_span_check",
    "regular_from_xi",
    "route3_applies",
    "stabiliser_check",
    "tension_report",
    "well_induced",
    "xi_partition",
    "xi_tensor_experiment",
]
