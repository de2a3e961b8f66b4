"""The algebra group G = 1 + n, its actions on n*, and orbit machinery.

Group elements are stored as the coordinates of X in g = 1 + X.  Every
action is linear on coordinate rows: a point v is sent to ``v @ A`` for an
action matrix A.  Orbits are closed under a generator set and partitioned
with a connected-components pass over the generator graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .gf import Field, Subspace, all_vectors
from .nilalg import Algebra, CapacityError, SubalgebraHandle, full_handle, power_ideal

KINDS = ("coadjoint", "left", "right", "two_sided")
DEFAULT_POINT_LIMIT = 1 << 22


# ---------------------------------------------------------------------------
# group law

def g_mul(alg: Algebra, x, y) -> np.ndarray:
    """(1+X)(1+Y) = 1 + X + Y + XY."""
    F = alg.field
    x = np.asarray(x, dtype=np.int64)
    y = np.asarray(y, dtype=np.int64)
    return F.vadd(F.vadd(x, y), alg.mul(x, y))


def g_inv(alg: Algebra, x) -> np.ndarray:
    """(1+X)^-1 = 1 + sum_{k>=1} (-X)^k."""
    F = alg.field
    x = np.asarray(x, dtype=np.int64)
    neg = F.vneg(x)
    out = neg
    term = neg
    for _ in range(alg.nilpotency_index):
        term = alg.mul(term, neg)
        if not np.any(term):
            break
        out = F.vadd(out, term)
    return out


@dataclass(frozen=True, eq=False)
class GroupElement:
    """g = 1 + X."""

    algebra: Algebra
    x: np.ndarray

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(self.algebra, g_mul(self.algebra, self.x, other.x))

    def inverse(self) -> "GroupElement":
        return GroupElement(self.algebra, g_inv(self.algebra, self.x))

    def is_identity(self) -> bool:
        return not np.any(self.x)

    def __eq__(self, other):
        return isinstance(other, GroupElement) and np.array_equal(self.x, other.x)

    def __hash__(self):
        return hash(self.x.tobytes())


# ---------------------------------------------------------------------------
# action matrices

def conjugation_matrix(alg: Algebra, x) -> np.ndarray:
    """Row-convention matrix of X -> g X g^-1 for g = 1 + x."""
    F, d = alg.field, alg.dim
    eye = np.eye(d, dtype=np.int64)
    h = g_inv(alg, x)
    left = F.vadd(eye, alg.left_matrix(x))
    right = F.vadd(eye, alg.right_matrix(h))
    return F.matmul(left, right)


def action_matrix(alg: Algebra, x, kind: str) -> np.ndarray:
    """Matrix A with (act(lambda, g)) = lambda @ A.

    coadjoint: lambda^g(X) = lambda(g X g^-1)
    left:      g lambda(X) = lambda(g^-1 X)
    right:     lambda g(X) = lambda(X g^-1)
    """
    F, d = alg.field, alg.dim
    eye = np.eye(d, dtype=np.int64)
    if kind == "coadjoint":
        return conjugation_matrix(alg, x).T
    h = g_inv(alg, x)
    if kind == "left":
        return F.vadd(eye, alg.left_matrix(h)).T
    if kind == "right":
        return F.vadd(eye, alg.right_matrix(h)).T
    raise ValueError(f"unknown action kind {kind!r}")


def act(alg: Algebra, lam, x, kind: str) -> np.ndarray:
    return alg.field.matmul(np.asarray(lam, dtype=np.int64), action_matrix(alg, x, kind))


# ---------------------------------------------------------------------------
# generators

def adapted_basis(h: SubalgebraHandle) -> np.ndarray:
    """Basis of h adapted to its power filtration h > h^2 > ... > 0.

    The elements 1 + t b over such a basis generate 1 + h: modulo 1 + h^{k+1}
    the group 1 + h^k is the additive group h^k / h^{k+1}.
    """
    F = h.parent.field
    levels = []
    k = 1
    while True:
        p = power_ideal(h, k).space if k > 1 else h.space
        if p.dim == 0:
            break
        levels.append(p)
        k += 1
    chosen = Subspace.zero(F, h.parent.dim)
    rows = []
    for level in reversed(levels):
        for v in level.basis:
            if not chosen.contains_vector(v):
                rows.append(v)
                chosen = Subspace(F, h.parent.dim, np.array(rows))
    if not rows:
        return np.zeros((0, h.parent.dim), dtype=np.int64)
    return np.array(rows, dtype=np.int64)


@dataclass(frozen=True)
class GeneratorSet:
    """Elements 1 + t b (t nonzero, b in an adapted basis) of an algebra subgroup."""

    algebra: Algebra
    elements: np.ndarray  # rows: X of g = 1 + X

    def __len__(self):
        return len(self.elements)


def generator_set(h: SubalgebraHandle | Algebra) -> GeneratorSet:
    if isinstance(h, Algebra):
        h = full_handle(h)
    F = h.parent.field
    basis = adapted_basis(h)
    elems = [F.vmul(t, b) for b in basis for t in F.nonzero()]
    if not elems:
        return GeneratorSet(h.parent, np.zeros((0, h.parent.dim), dtype=np.int64))
    return GeneratorSet(h.parent, np.array(elems, dtype=np.int64))


def full_element_set(h: SubalgebraHandle | Algebra) -> GeneratorSet:
    """Every element of 1 + h (the fallback generator set)."""
    if isinstance(h, Algebra):
        h = full_handle(h)
    return GeneratorSet(h.parent, h.space.vectors())


def action_matrices(alg: Algebra, kind: str, gens: GeneratorSet | None = None) -> list:
    gens = generator_set(alg) if gens is None else gens
    if kind == "two_sided":
        return action_matrices(alg, "left", gens) + action_matrices(alg, "right", gens)
    return [action_matrix(alg, x, kind) for x in gens.elements]


def element_matrices(alg: Algebra, kind: str, gens: GeneratorSet | None = None) -> list:
    """Matrices acting on group-element coordinates X.

    conjugation: X -> g X g^-1; two_sided: X -> g X and X -> X g.
    """
    F, d = alg.field, alg.dim
    gens = generator_set(alg) if gens is None else gens
    eye = np.eye(d, dtype=np.int64)
    if kind == "conjugation":
        return [conjugation_matrix(alg, x) for x in gens.elements]
    if kind == "two_sided":
        mats = [F.vadd(eye, alg.left_matrix(x)) for x in gens.elements]
        mats += [F.vadd(eye, alg.right_matrix(x)) for x in gens.elements]
        return mats
    raise ValueError(f"unknown element action {kind!r}")


def generated_subgroup_size(h: SubalgebraHandle | Algebra, gens: GeneratorSet | None = None, limit: int = 1 << 16) -> int:
    """Size of the subgroup generated by ``gens`` (BFS on group elements)."""
    if isinstance(h, Algebra):
        h = full_handle(h)
    alg = h.parent
    gens = generator_set(h) if gens is None else gens
    mats = [alg.field.vadd(np.eye(alg.dim, dtype=np.int64), alg.right_matrix(x)) for x in gens.elements]
    # right multiplication by 1+x sends X to X + x + X x: affine, so track 1+X homogeneously
    pts = closure(np.zeros((1, alg.dim), dtype=np.int64), alg.field, mats, limit=limit,
                  shifts=[x for x in gens.elements])
    return len(pts)


# ---------------------------------------------------------------------------
# keys and indices

def _words(d: int, q: int) -> list[tuple[int, int]]:
    per = 1
    while q ** (per + 1) < 2**62:
        per += 1
    return [(i, min(i + per, d)) for i in range(0, d, per)] or [(0, 0)]


def pack(points, q: int) -> np.ndarray:
    """Order-preserving keys: int64 if one word suffices, else a structured array.

    Key order is lexicographic order of the coordinate rows.
    """
    points = np.asarray(points, dtype=np.int64)
    d = points.shape[-1]
    words = _words(d, q)
    cols = []
    for a, b in words:
        w = q ** np.arange(b - a - 1, -1, -1, dtype=np.int64)
        cols.append(points[..., a:b] @ w if b > a else np.zeros(points.shape[:-1], dtype=np.int64))
    if len(cols) == 1:
        return cols[0]
    out = np.empty(points.shape[:-1], dtype=[(f"w{i}", "<i8") for i in range(len(cols))])
    for i, c in enumerate(cols):
        out[f"w{i}"] = c
    return out


class PointIndex:
    """Sorted, deduplicated point set with vectorised membership lookup."""

    def __init__(self, points, q: int):
        points = np.asarray(points, dtype=np.int64)
        keys = pack(points, q)
        keys, first = np.unique(keys, return_index=True)
        self.q = q
        self.points = points[first]
        self.keys = keys

    def __len__(self):
        return len(self.keys)

    def lookup(self, rows) -> np.ndarray:
        """Index of each row, or -1 when absent."""
        k = pack(rows, self.q)
        pos = np.searchsorted(self.keys, k)
        pos = np.minimum(pos, len(self.keys) - 1)
        hit = self.keys[pos] == k
        return np.where(hit, pos, -1)


# ---------------------------------------------------------------------------
# orbits

def _apply(points, F: Field, mat, shift=None):
    out = F.matmul(points, mat)
    if shift is not None:
        out = F.vadd(out, shift[None, :])
    return out


def closure(start, F: Field, mats, *, limit: int = DEFAULT_POINT_LIMIT, shifts=None) -> np.ndarray:
    """Smallest set containing ``start`` closed under every v -> v @ A (+ shift).

    Returns the points in lexicographic order.
    """
    start = np.atleast_2d(np.asarray(start, dtype=np.int64))
    seen = PointIndex(start, F.q)
    all_pts = seen.points
    frontier = all_pts
    while len(frontier):
        images = [_apply(frontier, F, A, None if shifts is None else shifts[i]) for i, A in enumerate(mats)]
        cand = np.concatenate(images) if images else frontier[:0]
        cand_idx = PointIndex(cand, F.q)
        new = cand_idx.points[seen.lookup(cand_idx.points) < 0]
        if len(new) == 0:
            break
        all_pts = np.concatenate([all_pts, new])
        if len(all_pts) > limit:
            raise CapacityError(f"orbit exceeds {limit} points", lower_bound=len(all_pts))
        seen = PointIndex(all_pts, F.q)
        frontier = new
    return seen.points


@dataclass(frozen=True)
class OrbitReport:
    kind: str
    size: int
    representative: np.ndarray
    q: int
    elements: np.ndarray | None = None

    @property
    def exponent(self) -> int:
        e, s = 0, self.size
        while s % self.q == 0 and s > 1:
            s //= self.q
            e += 1
        if s != 1:
            raise ValueError(f"orbit size {self.size} is not a power of {self.q}")
        return e

    def to_json(self) -> dict:
        return {"kind": self.kind, "size": self.size, "exponent": self.exponent,
                "representative": [int(c) for c in self.representative]}


def orbit(alg: Algebra, lam, kind: str, gens: GeneratorSet | None = None, enumerate: bool = False,
          limit: int = DEFAULT_POINT_LIMIT) -> OrbitReport:
    mats = action_matrices(alg, kind, gens)
    pts = closure(np.asarray(lam, dtype=np.int64)[None, :], alg.field, mats, limit=limit)
    return OrbitReport(kind, len(pts), pts[0], alg.field.q, pts if enumerate else None)


@dataclass(frozen=True)
class Partition:
    """Orbits of an explicit point set; labels index ``points`` rows."""

    points: np.ndarray
    labels: np.ndarray
    q: int

    @property
    def count(self) -> int:
        return int(self.labels.max()) + 1 if len(self.labels) else 0

    def sizes(self) -> np.ndarray:
        return np.bincount(self.labels, minlength=self.count)

    def representatives(self) -> np.ndarray:
        """Lexicographically least point of each orbit (points are sorted)."""
        _, first = np.unique(self.labels, return_index=True)
        return self.points[first]

    def members(self, label: int) -> np.ndarray:
        return self.points[self.labels == label]

    def size_multiset(self) -> list[int]:
        return sorted(int(s) for s in self.sizes())

    def reports(self, kind: str) -> list[OrbitReport]:
        reps = self.representatives()
        sizes = self.sizes()
        return [OrbitReport(kind, int(sizes[i]), reps[i], self.q) for i in range(self.count)]


class ClosureError(ValueError):
    pass


def partition_points(points, F: Field, mats, shifts=None) -> Partition:
    """Partition a closed point set into orbits of the generated action.

    Labels are numbered by each orbit's least point, so output does not
    depend on generator order.
    """
    idx = PointIndex(points, F.q)
    n = len(idx)
    rows, cols = [], []
    for i, A in enumerate(mats):
        img = _apply(idx.points, F, A, None if shifts is None else shifts[i])
        j = idx.lookup(img)
        if np.any(j < 0):
            bad = img[np.argmax(j < 0)]
            raise ClosureError(f"point set not closed under the action: {bad.tolist()} escapes")
        rows.append(np.arange(n))
        cols.append(j)
    if rows:
        r = np.concatenate(rows)
        c = np.concatenate(cols)
        graph = coo_matrix((np.ones(len(r), dtype=np.int8), (r, c)), shape=(n, n)).tocsr()
        _, raw = connected_components(graph, directed=True, connection="weak")
    else:
        raw = np.arange(n)
    # relabel by first occurrence in sorted point order
    _, first = np.unique(raw, return_index=True)
    order = np.argsort(first)
    relabel = np.empty_like(order)
    relabel[raw[first[order]]] = np.arange(len(order))
    return Partition(idx.points, relabel[raw], F.q)


def orbit_partition(alg: Algebra, points, kind: str, gens: GeneratorSet | None = None) -> list[OrbitReport]:
    mats = action_matrices(alg, kind, gens)
    return partition_points(points, alg.field, mats).reports(kind)


@lru_cache(maxsize=64)
def _dual_partition(alg: Algebra, kind: str) -> Partition:
    return partition_points(all_vectors(alg.dim, alg.field.q), alg.field, action_matrices(alg, kind))


def dual_partition(alg: Algebra, kind: str = "coadjoint", limit: int = 1 << 20) -> Partition:
    """Orbits of G on all of n* (cached per algebra)."""
    if alg.order > limit:
        raise CapacityError(f"|n*| = {alg.order} exceeds {limit}")
    return _dual_partition(alg, kind)


def _element_partition(alg: Algebra, kind: str, limit: int) -> Partition:
    if alg.order > limit:
        raise CapacityError(f"|G| = {alg.order} exceeds {limit}")
    return partition_points(all_vectors(alg.dim, alg.field.q), alg.field, element_matrices(alg, kind))


def conjugacy_classes(alg: Algebra, limit: int = 1 << 20) -> Partition:
    """Classes of G, as a partition of the X-coordinates of g = 1 + X."""
    return _element_partition(alg, "conjugation", limit)


def superclasses(alg: Algebra, limit: int = 1 << 20) -> Partition:
    """Sets {1 + gXh : g, h in G}."""
    return _element_partition(alg, "two_sided", limit)


def two_sided_orbit(alg: Algebra, lam, limit: int = DEFAULT_POINT_LIMIT) -> np.ndarray:
    return closure(np.asarray(lam)[None, :], alg.field, action_matrices(alg, "two_sided"), limit=limit)


__all__ = [
    "ClosureError",
    "GeneratorSet",
    "GroupElement",
    "KINDS",
    "OrbitReport",
    "Partition",
    "PointIndex",
    "act",
    "action_matrices",
    "action_matrix",
    "adapted_basis",
    "closure",
    "conjugacy_classes",
    "conjugation_matrix",
    "dual_partition",
    "element_matrices",
    "full_element_set",
    "g_inv",
    "g_mul",
    "generated_subgroup_size",
    "generator_set",
    "orbit",
    "orbit_partition",
    "pack",
    "partition_points",
    "superclasses",
    "two_sided_orbit",
]
