"""Nilpotent associative F_q-algebras given by structure constants.

An algebra of dimension d stores a (d, d, d) table ``T`` with
``b_i * b_j = sum_k T[i, j, k] b_k``.  Elements are coordinate rows.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

import numpy as np

from .gf import Field, Subspace, all_vectors, encode1, rref


class AlgebraError(ValueError):
    """Invalid structure constants or a failed closure check."""


class CapacityError(RuntimeError):
    """A desk-scale guard was exceeded; nothing was truncated."""

    def __init__(self, message, lower_bound=None):
        super().__init__(message)
        self.lower_bound = lower_bound


class Algebra:
    """Finite-dimensional nilpotent associative algebra over a finite field."""

    def __init__(self, field: Field, table, names=None, *, check=True):
        self.field = field
        table = np.asarray(table, dtype=np.int64)
        d = table.shape[0] if table.ndim == 3 else 0
        if table.size == 0:
            table = np.zeros((d, d, d), dtype=np.int64)
        if table.shape != (d, d, d):
            raise AlgebraError(f"structure table has shape {table.shape}")
        table.setflags(write=False)
        self.table = table
        self.dim = d
        self.names = tuple(names) if names is not None else tuple(f"b{i + 1}" for i in range(d))
        if len(self.names) != d:
            raise AlgebraError("one name per basis vector")
        if check:
            self.check_associative()
        self.nilpotency_index = self._nilpotency()

    # -- products --------------------------------------------------------
    def mul(self, x, y):
        """Product of elements (broadcasts over leading axes)."""
        F = self.field
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        if self.dim == 0:
            return np.zeros(np.broadcast_shapes(x.shape, y.shape), dtype=np.int64)
        # left multiplication matrix of x, then apply to y
        lm = F.matmul(x, self.table.reshape(self.dim, -1)).reshape(x.shape[:-1] + (self.dim, self.dim))
        return F.matmul(y[..., None, :], lm)[..., 0, :]

    def left_matrix(self, y):
        """Row-convention matrix of X -> y X."""
        d = self.dim
        return self.field.matmul(np.asarray(y, dtype=np.int64), self.table.reshape(d, d * d)).reshape(d, d)

    def right_matrix(self, y):
        """Row-convention matrix of X -> X y."""
        d = self.dim
        t = self.table.transpose(1, 0, 2).reshape(d, d * d)
        return self.field.matmul(np.asarray(y, dtype=np.int64), t).reshape(d, d)

    def power(self, x, k):
        out = np.array(x, dtype=np.int64)
        for _ in range(k - 1):
            out = self.mul(out, x)
        return out

    def zero(self):
        return np.zeros(self.dim, dtype=np.int64)

    def unit_vector(self, i, t=1):
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = t
        return v

    # -- validation ------------------------------------------------------
    def check_associative(self):
        F, d, T = self.field, self.dim, self.table
        if d == 0:
            return
        flat = T.reshape(d * d, d)
        for i in range(d):
            # (b_i b_j) b_k  vs  b_i (b_j b_k)
            left = F.matmul(T[i], T.reshape(d, d * d)).reshape(d, d, d)  # [j, k, :]
            right = F.matmul(flat, T[i].reshape(d, d)).reshape(d, d, d)  # sum_m T[j,k,m] T[i,m,:]
            bad = np.argwhere(np.any(left != right, axis=-1))
            if len(bad):
                j, k = bad[0]
                raise AlgebraError(
                    f"constants not associative on ({self.names[i]}, {self.names[j]}, {self.names[k]})")

    def _nilpotency(self):
        full = Subspace.full(self.field, self.dim)
        power = full
        for m in range(1, self.dim + 2):
            if power.dim == 0:
                return m
            nxt = self.product_space(power, full)
            if nxt == power:
                raise AlgebraError(f"not nilpotent: power filtration stabilises at dimension {power.dim}")
            power = nxt
        raise AlgebraError("not nilpotent")

    def product_space(self, a: Subspace, b: Subspace) -> Subspace:
        """span{xy : x in a, y in b}."""
        if a.dim == 0 or b.dim == 0:
            return Subspace.zero(self.field, self.dim)
        prods = self.mul(a.basis[:, None, :], b.basis[None, :, :]).reshape(-1, self.dim)
        return Subspace(self.field, self.dim, prods)

    # -- identity --------------------------------------------------------
    @property
    def order(self) -> int:
        """|G| = q**dim."""
        return self.field.q**self.dim

    @cached_property
    def fingerprint(self) -> str:
        h = hashlib.sha256()
        h.update(json.dumps(self.field.to_json(), sort_keys=True).encode())
        h.update(np.ascontiguousarray(self.table).tobytes())
        return h.hexdigest()[:16]

    def same_as(self, other: "Algebra") -> bool:
        return self.field == other.field and np.array_equal(self.table, other.table)

    def key(self, v) -> int:
        return encode1(v, self.field.q)

    def __repr__(self):
        return f"Algebra(dim={self.dim}, field={self.field!r})"

    # -- documents -------------------------------------------------------
    def to_document(self) -> dict:
        d = self.dim
        consts = []
        for i in range(d):
            for j in range(d):
                if np.any(self.table[i, j]):
                    consts.append([i, j, [int(c) for c in self.table[i, j]]])
        return {"field": self.field.to_json(), "dim": d, "names": list(self.names), "constants": consts}


def make_from_constants(doc: dict) -> Algebra:
    """Load and validate an algebra document."""
    try:
        field = Field.from_json(doc["field"])
        d = int(doc["dim"])
        names = doc.get("names")
        consts = doc.get("constants", [])
    except (KeyError, TypeError, ValueError) as exc:
        raise AlgebraError(f"malformed algebra document: {exc}") from exc
    table = np.zeros((d, d, d), dtype=np.int64)
    for entry in consts:
        i, j, vec = entry
        if not (0 <= i < d and 0 <= j < d) or len(vec) != d:
            raise AlgebraError(f"bad constant entry {entry!r}")
        table[i, j] = [int(c) % field.q for c in vec]
    return Algebra(field, table, names)


def make_ut(n: int, field: Field) -> Algebra:
    """u_n(q): strictly upper triangular n x n matrices, basis e_ij in lex order."""
    if n < 1:
        raise AlgebraError("n must be positive")
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    index = {pr: k for k, pr in enumerate(pairs)}
    d = len(pairs)
    table = np.zeros((d, d, d), dtype=np.int64)
    for (i, j), a in index.items():
        for k in range(j + 1, n + 1):
            table[a, index[(j, k)], index[(i, k)]] = 1
    alg = Algebra(field, table, [f"e{i},{j}" for i, j in pairs], check=False)
    alg.ut_n = n
    alg.ut_index = index
    return alg


def ut_index(alg: Algebra, i: int, j: int) -> int:
    index = getattr(alg, "ut_index", None)
    if index is None:
        raise AlgebraError("not a u_n(q) algebra")
    return index[(i, j)]


# ---------------------------------------------------------------------------
# subalgebras

@dataclass(frozen=True, eq=False)
class SubalgebraHandle:
    """A subspace of a parent algebra with its closure flags."""

    parent: Algebra
    space: Subspace
    is_subalgebra: bool
    is_left_ideal: bool
    is_right_ideal: bool

    @property
    def dim(self):
        return self.space.dim

    @property
    def basis(self):
        return self.space.basis

    @property
    def is_ideal(self):
        return self.is_left_ideal and self.is_right_ideal

    def __eq__(self, other):
        return isinstance(other, SubalgebraHandle) and self.space == other.space

    def __hash__(self):
        return hash(self.space)

    @cached_property
    def algebra(self) -> Algebra:
        """The subalgebra as an algebra in its own (RREF) basis."""
        if not self.is_subalgebra:
            raise AlgebraError("subspace is not multiplicatively closed")
        B = self.space.basis
        k = len(B)
        if k == 0:
            return Algebra(self.parent.field, np.zeros((0, 0, 0)), [], check=False)
        prods = self.parent.mul(B[:, None, :], B[None, :, :])
        table = self.space.coords(prods)
        return Algebra(self.parent.field, table, check=False)

    def to_parent(self, c):
        """Parent coordinates of elements given in subalgebra coordinates."""
        return self.space.combine(c)

    def from_parent(self, v):
        return self.space.coords(v)

    def __repr__(self):
        return f"SubalgebraHandle(dim={self.dim}, parent_dim={self.parent.dim})"


def closure_flags(alg: Algebra, space: Subspace):
    full = Subspace.full(alg.field, alg.dim)
    return (
        space.contains(alg.product_space(space, space)),
        space.contains(alg.product_space(full, space)),
        space.contains(alg.product_space(space, full)),
    )


def handle(alg: Algebra, space: Subspace) -> SubalgebraHandle:
    return SubalgebraHandle(alg, space, *closure_flags(alg, space))


def full_handle(alg: Algebra) -> SubalgebraHandle:
    return SubalgebraHandle(alg, Subspace.full(alg.field, alg.dim), True, True, True)


def subalgebra_from(alg: Algebra, *, generators=None, equations=None) -> SubalgebraHandle:
    """Subalgebra cut out by linear equations, or generated by vectors.

    ``equations`` are coefficient rows c with c . x = 0.  The solution space
    must be closed; otherwise an AlgebraError names a witness pair.
    """
    F, d = alg.field, alg.dim
    if generators is not None:
        space = Subspace(F, d, np.asarray(generators, dtype=np.int64).reshape(-1, d))
        while True:
            nxt = space.sum(alg.product_space(space, space))
            if nxt == space:
                break
            space = nxt
        return handle(alg, space)
    eqs = np.zeros((0, d), dtype=np.int64) if equations is None else np.asarray(equations, dtype=np.int64).reshape(-1, d)
    space = Subspace(F, d, eqs).annihilator()
    B = space.basis
    if len(B):
        prods = alg.mul(B[:, None, :], B[None, :, :])
        for i in range(len(B)):
            for j in range(len(B)):
                if not space.contains_vector(prods[i, j]):
                    raise AlgebraError(f"not closed: product of basis vectors {B[i].tolist()} and {B[j].tolist()} escapes")
    return handle(alg, space)


def power_ideal(a, k: int) -> SubalgebraHandle:
    """h^k, the span of all k-fold products, as a handle in the parent."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if isinstance(a, Algebra):
        a = full_handle(a)
    alg, h = a.parent, a.space
    power = h
    for _ in range(k - 1):
        power = alg.product_space(power, h)
    return handle(alg, power)


def quotient(alg: Algebra, ideal: SubalgebraHandle):
    """Quotient algebra on the complement of the ideal's pivot columns.

    Returns ``(Q, P)`` where ``P`` is the d x dim(Q) projection matrix in row
    convention: the image of x is ``x @ P``.
    """
    if not (ideal.is_left_ideal and ideal.is_right_ideal):
        raise AlgebraError("quotient needs a two-sided ideal")
    F, d = alg.field, alg.dim
    comp = ideal.space.complement_positions()
    eye = np.eye(d, dtype=np.int64)
    P = ideal.space.reduce(eye)[:, comp]
    C = eye[comp]
    prods = alg.mul(C[:, None, :], C[None, :, :])
    table = F.matmul(prods, P)
    Q = Algebra(F, table, [alg.names[c] for c in comp])
    return Q, P


# ---------------------------------------------------------------------------
# subalgebra enumeration

def _hyperplanes(space: Subspace):
    """Codimension-one subspaces of ``space``, one per projective functional."""
    F = space.field
    k = space.dim
    for c in all_vectors(k, F.q):
        nz = np.nonzero(c)[0]
        if len(nz) == 0 or c[nz[0]] != 1:
            continue
        kernel = Subspace(F, k, c[None, :]).annihilator()
        yield Subspace(F, space.ambient_dim, space.combine(kernel.basis)) if kernel.dim else Subspace.zero(F, space.ambient_dim)


def subalgebra_levels(alg: Algebra):
    """Yield lists of subalgebras by dimension, from dim(alg) down to 0.

    Every proper subalgebra of a nilpotent algebra has codimension one in
    some larger subalgebra, so descending through hyperplanes reaches all.
    """
    level = {Subspace.full(alg.field, alg.dim)}
    while True:
        ordered = sorted(level, key=lambda s: s.basis.tobytes())
        yield [handle(alg, s) for s in ordered]
        if not ordered or ordered[0].dim == 0:
            return
        nxt = set()
        for s in ordered:
            for hyp in _hyperplanes(s):
                if hyp in nxt:
                    continue
                if hyp.contains(alg.product_space(hyp, hyp)):
                    nxt.add(hyp)
        level = nxt


def default_guard(q: int) -> int:
    return 6 if q in (2, 3) else 3


def enumerate_subalgebras(alg: Algebra, guard: int | None = None) -> list[SubalgebraHandle]:
    """Every subalgebra exactly once, largest first."""
    guard = default_guard(alg.field.q) if guard is None else guard
    if alg.dim > guard:
        raise CapacityError(f"subalgebra search on dimension {alg.dim} exceeds guard {guard}")
    out = []
    for level in subalgebra_levels(alg):
        out.extend(level)
    return out


def brute_force_subalgebras(alg: Algebra) -> set[Subspace]:
    """All closed subspaces, by spanning every subset of vectors (tiny algebras only)."""
    F, d = alg.field, alg.dim
    vecs = [v for v in all_vectors(d, F.q) if np.any(v)]
    found = {Subspace.zero(F, d)}
    for r in range(1, d + 1):
        for combo in combinations(vecs, r):
            s = Subspace(F, d, np.array(combo))
            if s.dim == r and s not in found and s.contains(alg.product_space(s, s)):
                found.add(s)
    return found
