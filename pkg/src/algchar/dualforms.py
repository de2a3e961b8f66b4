"""Functionals on a nilpotent algebra and the subspaces they determine.

A functional lambda is a coordinate row with lambda(X) = sum_i lambda_i X_i.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gf import Subspace, all_vectors, nullspace
from .nilalg import Algebra, SubalgebraHandle, handle


def as_functional(alg: Algebra, lam) -> np.ndarray:
    lam = np.asarray(lam, dtype=np.int64).reshape(-1)
    if lam.shape != (alg.dim,):
        raise ValueError(f"functional of length {lam.shape[0]} on algebra of dimension {alg.dim}")
    return lam % alg.field.q if alg.field.e == 1 else lam


def evaluate(alg: Algebra, lam, x):
    """lambda(X) for one or many X (last axis)."""
    return alg.field.matmul(np.asarray(x, dtype=np.int64), np.asarray(lam, dtype=np.int64))


def form_matrix(alg: Algebra, lam) -> np.ndarray:
    """Matrix of B(X, Y) = lambda(XY): entry (i, j) = lambda(b_i b_j)."""
    d = alg.dim
    if d == 0:
        return np.zeros((0, 0), dtype=np.int64)
    return alg.field.matmul(alg.table.reshape(d * d, d), as_functional(alg, lam)).reshape(d, d)


def left_kernel(alg: Algebra, lam, rows: Subspace, cols: Subspace, M=None) -> Subspace:
    """{X in rows : lambda(XY) = 0 for all Y in cols}."""
    F = alg.field
    if M is None:
        M = form_matrix(alg, lam)
    if rows.dim == 0 or cols.dim == 0:
        return rows
    K = F.matmul(F.matmul(rows.basis, M), cols.basis.T)  # (r, c)
    coeffs = nullspace(K.T, F)
    if len(coeffs) == 0:
        return Subspace.zero(F, alg.dim)
    return Subspace(F, alg.dim, rows.combine(coeffs))


def right_kernel(alg: Algebra, lam, M=None) -> Subspace:
    """{Y : lambda(XY) = 0 for all X}."""
    if M is None:
        M = form_matrix(alg, lam)
    return Subspace(alg.field, alg.dim, nullspace(M, alg.field))


@dataclass(frozen=True)
class ChainResult:
    """The chains l^i, s^i of a functional and their terminal members."""

    algebra: Algebra
    lam: np.ndarray
    l_chain: tuple
    s_chain: tuple
    depth: int
    k_space: Subspace

    @property
    def l(self) -> Subspace:
        return self.l_chain[1]

    @property
    def s(self) -> Subspace:
        return self.s_chain[1]

    @property
    def l_bar(self) -> Subspace:
        return self.l_chain[-1]

    @property
    def s_bar(self) -> Subspace:
        return self.s_chain[-1]

    def handle(self, which: str) -> SubalgebraHandle:
        space = {"l": self.l, "s": self.s, "l_bar": self.l_bar, "s_bar": self.s_bar, "k": self.k_space}[which]
        return handle(self.algebra, space)

    def dims(self) -> dict:
        return {
            "l_chain": [s.dim for s in self.l_chain],
            "s_chain": [s.dim for s in self.s_chain],
            "depth": self.depth,
            "l": self.l.dim,
            "s": self.s.dim,
            "l_bar": self.l_bar.dim,
            "s_bar": self.s_bar.dim,
            "k": self.k_space.dim,
        }


def chain(alg: Algebra, lam) -> ChainResult:
    """Iterate l^{i+1} = ker B|s^i x s^i, s^{i+1} = ker B|s^i x l^{i+1}.

    The depth is the first index with s^{depth-1} = s^depth; the chains are
    stored up to that index.
    """
    lam = as_functional(alg, lam)
    F, d = alg.field, alg.dim
    M = form_matrix(alg, lam)
    ls = [Subspace.zero(F, d)]
    ss = [Subspace.full(F, d)]
    for _ in range(d + 1):
        s_prev = ss[-1]
        l_new = left_kernel(alg, lam, s_prev, s_prev, M)
        s_new = left_kernel(alg, lam, s_prev, l_new, M)
        ls.append(l_new)
        ss.append(s_new)
        if s_new == s_prev:
            break
    else:  # pragma: no cover - dimensions force termination
        raise RuntimeError("chain failed to stabilise")
    ker = Subspace(F, d, lam[None, :]).annihilator()
    return ChainResult(alg, lam, tuple(ls), tuple(ss), len(ss) - 1, ls[1] & ker)


def radical_alternating(alg: Algebra, lam) -> Subspace:
    """Radical of (X, Y) -> lambda(XY - YX); |coadjoint orbit| = q**codim."""
    F = alg.field
    M = form_matrix(alg, lam)
    A = F.vsub(M, M.T)
    return Subspace(F, alg.dim, nullspace(A.T, F))


# ---------------------------------------------------------------------------
# restriction and lifting

@dataclass(frozen=True)
class AffineFunctionalSet:
    """{base + w : w in directions}, kept symbolic."""

    base: np.ndarray
    directions: Subspace

    @property
    def size(self) -> int:
        return self.directions.size

    @property
    def dim(self) -> int:
        return self.directions.dim

    def contains(self, v) -> bool:
        F = self.directions.field
        return self.directions.contains_vector(F.vsub(np.asarray(v, dtype=np.int64), self.base))

    def elements(self) -> np.ndarray:
        F = self.directions.field
        return F.vadd(self.directions.vectors(), self.base[None, :])

    def canonical_base(self) -> np.ndarray:
        """The unique member vanishing at the pivot columns of ``directions``."""
        return self.directions.reduce(self.base)

    def __eq__(self, other):
        if not isinstance(other, AffineFunctionalSet):
            return NotImplemented
        return self.directions == other.directions and np.array_equal(self.canonical_base(), other.canonical_base())

    __hash__ = None


def restrict(alg: Algebra, lam, h: SubalgebraHandle | Subspace) -> np.ndarray:
    """lambda composed with the inclusion, in the subspace's RREF coordinates."""
    space = h.space if isinstance(h, SubalgebraHandle) else h
    if space.dim == 0:
        return np.zeros(0, dtype=np.int64)
    return alg.field.matmul(space.basis, as_functional(alg, lam))


def lift(alg: Algebra, mu, h: SubalgebraHandle | Subspace) -> AffineFunctionalSet:
    """All extensions of mu (given in h's coordinates) to the parent."""
    space = h.space if isinstance(h, SubalgebraHandle) else h
    base = np.zeros(alg.dim, dtype=np.int64)
    if space.dim:
        base[list(space.pivots)] = np.asarray(mu, dtype=np.int64)
    return AffineFunctionalSet(base, space.annihilator())


def restrict_lift(alg: Algebra, lam, h, direction: str):
    if direction == "restrict":
        return restrict(alg, lam, h)
    if direction == "lift":
        return lift(alg, lam, h)
    raise ValueError(f"direction must be restrict or lift, not {direction!r}")


def restrict_many(alg: Algebra, lams, space: Subspace) -> np.ndarray:
    """Row-wise restriction of a stack of functionals."""
    lams = np.asarray(lams, dtype=np.int64)
    if space.dim == 0:
        return np.zeros(lams.shape[:-1] + (0,), dtype=np.int64)
    return alg.field.matmul(lams, space.basis.T)


def subspace_in(space: Subspace, inner: Subspace) -> Subspace:
    """``inner`` (inside ``space``) written in ``space``'s RREF coordinates."""
    return Subspace(space.field, space.dim, space.coords(inner.basis))


# ---------------------------------------------------------------------------
# orbits with affine structure

def right_orbit_affine(alg: Algebra, lam) -> AffineFunctionalSet:
    """lambda G = lambda + Ann(l_lambda)."""
    lam = as_functional(alg, lam)
    M = form_matrix(alg, lam)
    l = Subspace(alg.field, alg.dim, nullspace(M.T, alg.field))
    return AffineFunctionalSet(lam, l.annihilator())


def left_orbit_affine(alg: Algebra, lam) -> AffineFunctionalSet:
    """G lambda = lambda + Ann(right kernel of B)."""
    lam = as_functional(alg, lam)
    return AffineFunctionalSet(lam, right_kernel(alg, lam).annihilator())


def orbit_sizes(alg: Algebra, lam) -> dict:
    """|lambda^G|, |G lambda|, |lambda G|, |G lambda cap lambda G| and |G lambda G|.

    All come from ranks: the two one-sided orbits are affine, their
    intersection is lambda + (row space cap column space), and the two-sided
    size follows from |GlG| |Gl cap lG| = |Gl| |lG|.
    """
    q, d = alg.field.q, alg.dim
    lam = as_functional(alg, lam)
    left = left_orbit_affine(alg, lam)
    right = right_orbit_affine(alg, lam)
    both = left.directions & right.directions
    rad = radical_alternating(alg, lam)
    exps = {
        "coadjoint": d - rad.dim,
        "left": left.dim,
        "right": right.dim,
        "intersection": both.dim,
        "two_sided": left.dim + right.dim - both.dim,
    }
    return {"q": q, "exponents": exps, "sizes": {k: q**v for k, v in exps.items()}}


def all_functionals(alg: Algebra) -> np.ndarray:
    return all_vectors(alg.dim, alg.field.q)


__all__ = [
    "AffineFunctionalSet",
    "ChainResult",
    "all_functionals",
    "as_functional",
    "chain",
    "evaluate",
    "form_matrix",
    "left_kernel",
    "left_orbit_affine",
    "lift",
    "orbit_sizes",
    "radical_alternating",
    "restrict",
    "restrict_lift",
    "restrict_many",
    "right_kernel",
    "right_orbit_affine",
    "subspace_in",
]
