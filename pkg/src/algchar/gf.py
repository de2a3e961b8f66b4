"""Finite fields F_q and dense linear algebra over them.

Field elements are integers in ``[0, q)``: the element ``sum c_k x^k`` of
``F_p[x]/(modulus)`` is encoded as ``sum c_k p^k``.  Vectors and matrices are
numpy integer arrays holding such codes, and every operation goes through
lookup tables, so the same code path serves prime and prime-power fields.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterator, Sequence

import numpy as np

# Conway polynomials, coefficients low degree first.
CONWAY = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (5, 2): (2, 4, 1),
}

MAX_Q = 1 << 10


class FieldError(ValueError):
    """Domain error in field arithmetic or field construction."""


class DimensionError(ValueError):
    """Ambient dimension mismatch between subspaces."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _polymulmod(a, b, modulus, p):
    e = len(modulus) - 1
    prod = [0] * (2 * e - 1 if e else 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for k in range(len(prod) - 1, e - 1, -1):
        c = prod[k]
        if c:
            # x^k = -(lower terms of modulus) * x^(k-e), modulus monic
            for j in range(e):
                prod[k - e + j] = (prod[k - e + j] - c * modulus[j]) % p
            prod[k] = 0
    return prod[:e]


@dataclass(frozen=True)
class Field:
    """The finite field F_q, q = p**e, presented as F_p[x]/(modulus)."""

    p: int
    e: int = 1
    modulus: tuple[int, ...] = ()
    q: int = field(init=False)

    def __post_init__(self):
        if not is_prime(self.p):
            raise FieldError(f"characteristic {self.p} is not prime")
        if self.e < 1:
            raise FieldError("degree must be positive")
        mod = tuple(int(c) % self.p for c in self.modulus)
        if not mod:
            if self.e == 1:
                mod = (0, 1)
            elif (self.p, self.e) in CONWAY:
                mod = CONWAY[(self.p, self.e)]
            else:
                raise FieldError(f"no built-in modulus for F_{self.p}^{self.e}; pass one")
        if len(mod) != self.e + 1 or mod[-1] != 1:
            raise FieldError("modulus must be monic of degree e")
        object.__setattr__(self, "modulus", mod)
        object.__setattr__(self, "q", self.p**self.e)
        if self.q > MAX_Q:
            raise FieldError(f"q = {self.q} exceeds the supported table size")
        inv = self.tables[3]
        if any(inv[a] < 0 for a in range(1, self.q)):
            raise FieldError(f"modulus {mod} is reducible over F_{self.p}")

    # -- encoding -------------------------------------------------------
    def digits(self, a: int) -> list[int]:
        return [(a // self.p**k) % self.p for k in range(self.e)]

    def from_digits(self, ds: Sequence[int]) -> int:
        return sum((int(c) % self.p) * self.p**k for k, c in enumerate(ds))

    @cached_property
    def tables(self):
        q, p = self.q, self.p
        polys = [self.digits(a) for a in range(q)]
        add = np.zeros((q, q), dtype=np.int64)
        mul = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            for b in range(q):
                add[a, b] = self.from_digits([(x + y) % p for x, y in zip(polys[a], polys[b])])
                mul[a, b] = self.from_digits(_polymulmod(polys[a], polys[b], self.modulus, p))
        neg = np.array([self.from_digits([-x for x in polys[a]]) for a in range(q)], dtype=np.int64)
        inv = np.full(q, -1, dtype=np.int64)
        for a in range(1, q):
            hits = np.nonzero(mul[a] == 1)[0]
            if len(hits):
                inv[a] = hits[0]
        tr = np.zeros(q, dtype=np.int64)
        for a in range(q):
            acc, power = 0, a
            for _ in range(self.e):
                acc = add[acc, power]
                power = self._pow(mul, power, p)
            tr[a] = acc
        return add, mul, neg, inv, tr

    @staticmethod
    def _pow(mul, a, k):
        r = 1
        for _ in range(k):
            r = mul[r, a]
        return int(r)

    @property
    def ADD(self):
        return self.tables[0]

    @property
    def MUL(self):
        return self.tables[1]

    @property
    def NEG(self):
        return self.tables[2]

    @property
    def TRACE(self):
        return self.tables[4]

    # -- scalar arithmetic -----------------------------------------------
    def _check(self, *xs):
        for x in xs:
            if not 0 <= int(x) < self.q:
                raise FieldError(f"{x} is not an element of F_{self.q}")

    def add(self, a, b):
        self._check(a, b)
        return int(self.ADD[a, b])

    def sub(self, a, b):
        self._check(a, b)
        return int(self.ADD[a, self.NEG[b]])

    def mul(self, a, b):
        self._check(a, b)
        return int(self.MUL[a, b])

    def neg(self, a):
        self._check(a)
        return int(self.NEG[a])

    def inv(self, a):
        self._check(a)
        if a == 0:
            raise FieldError("inverse of zero")
        return int(self.tables[3][a])

    def trace(self, a):
        """Absolute trace F_q -> F_p (returned as an integer in [0, p))."""
        self._check(a)
        return int(self.TRACE[a])

    def from_int(self, n: int) -> int:
        """Image of the integer n in the prime subfield."""
        return n % self.p

    def nonzero(self) -> range:
        return range(1, self.q)

    # -- vectorised arithmetic -------------------------------------------
    def vadd(self, a, b):
        if self.e == 1:
            return (np.asarray(a) + np.asarray(b)) % self.p
        return self.ADD[a, b]

    def vneg(self, a):
        if self.e == 1:
            return (-np.asarray(a)) % self.p
        return self.NEG[a]

    def vsub(self, a, b):
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b):
        if self.e == 1:
            return (np.asarray(a) * np.asarray(b)) % self.p
        return self.MUL[a, b]

    def vsum(self, a, axis=None):
        a = np.asarray(a, dtype=np.int64)
        if self.e == 1:
            return a.sum(axis=axis) % self.p
        out = 0
        for k in range(self.e):
            w = self.p**k
            out = out + ((a // w) % self.p).sum(axis=axis) % self.p * w
        return out

    def matmul(self, a, b):
        """Matrix product over F_q of integer arrays (last axis of a with first of b)."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.e == 1:
            return (a @ b) % self.p
        sa, sb = a.ndim == 1, b.ndim == 1
        if sa:
            a = a[None, :]
        if sb:
            b = b[:, None]
        out = self.vsum(self.MUL[a[..., :, :, None], b[..., None, :, :]], axis=-2)
        if sa:
            out = out[..., 0, :]
        if sb:
            out = out[..., 0]
        return out

    def vtrace(self, a):
        return self.TRACE[np.asarray(a, dtype=np.int64)]

    def __repr__(self):
        return f"F_{self.q}" if self.e == 1 else f"F_{self.q}[mod {self.modulus}]"

    def to_json(self):
        return {"p": self.p, "e": self.e, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, doc):
        return cls(int(doc["p"]), int(doc.get("e", 1)), tuple(doc.get("modulus", ())))


def GF(q: int) -> Field:
    """Field of order q with the built-in modulus."""
    for p in range(2, q + 1):
        if q % p == 0:
            e, r = 0, q
            while r % p == 0:
                r //= p
                e += 1
            if r != 1:
                break
            return Field(p, e)
    raise FieldError(f"{q} is not a prime power")


# ---------------------------------------------------------------------------
# vector keys

def encode(vectors, q: int):
    """Mixed-radix keys, most significant coordinate first.

    Numeric order of keys equals lexicographic order of coordinate tuples.
    Returns int64 when the keys fit, otherwise an object array of Python ints.
    """
    v = np.atleast_2d(np.asarray(vectors, dtype=np.int64))
    d = v.shape[1]
    if q**d < 2**62:
        w = q ** np.arange(d - 1, -1, -1, dtype=np.int64)
        return v @ w
    out = np.empty(len(v), dtype=object)
    for i, row in enumerate(v.tolist()):
        k = 0
        for c in row:
            k = k * q + c
        out[i] = k
    return out


def encode1(vector, q: int) -> int:
    k = 0
    for c in vector:
        k = k * q + int(c)
    return k


def decode(key: int, d: int, q: int) -> np.ndarray:
    out = np.zeros(d, dtype=np.int64)
    key = int(key)
    for i in range(d - 1, -1, -1):
        out[i] = key % q
        key //= q
    return out


def decode_many(keys, d: int, q: int) -> np.ndarray:
    keys = np.asarray(keys)
    if keys.dtype != object:
        w = q ** np.arange(d - 1, -1, -1, dtype=np.int64)
        return (keys[:, None] // w) % q
    return np.array([decode(k, d, q) for k in keys], dtype=np.int64).reshape(len(keys), d)


def all_vectors(d: int, q: int) -> np.ndarray:
    """Every vector of F_q^d in key order."""
    if d == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return decode_many(np.arange(q**d, dtype=np.int64), d, q)


# ---------------------------------------------------------------------------
# row reduction

def rref(m, F: Field):
    """Reduced row echelon form over F.

    Returns ``(rank, reduced, pivots)``; ``reduced`` keeps the input shape with
    zero rows at the bottom.
    """
    a = np.array(m, dtype=np.int64, copy=True)
    if a.ndim != 2:
        a = a.reshape(0, 0) if a.size == 0 else np.atleast_2d(a)
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if len(nz) == 0:
            continue
        k = r + nz[0]
        if k != r:
            a[[r, k]] = a[[k, r]]
        a[r] = F.vmul(F.inv(int(a[r, c])), a[r])
        col = a[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if len(hit):
            a[hit] = F.vsub(a[hit], F.vmul(col[hit, None], a[r][None, :]))
        pivots.append(c)
        r += 1
    return r, a, tuple(pivots)


def rank(m, F: Field) -> int:
    return rref(m, F)[0]


def nullspace(m, F: Field) -> np.ndarray:
    """Basis (rows) of {x : m @ x = 0}."""
    m = np.asarray(m, dtype=np.int64)
    cols = m.shape[1]
    r, red, piv = rref(m, F)
    free = [c for c in range(cols) if c not in piv]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for j, pc in enumerate(piv):
            basis[i, pc] = F.neg(int(red[j, f]))
    return basis


class Subspace:
    """Subspace of F_q^n stored by its RREF basis (rows)."""

    __slots__ = ("field", "ambient_dim", "basis", "pivots", "_key")

    def __init__(self, field: Field, ambient_dim: int, vectors=None, *, reduced=False):
        self.field = field
        self.ambient_dim = int(ambient_dim)
        if vectors is None or len(vectors) == 0:
            basis = np.zeros((0, self.ambient_dim), dtype=np.int64)
            piv = ()
        else:
            vectors = np.asarray(vectors, dtype=np.int64).reshape(-1, self.ambient_dim)
            if reduced:
                basis = vectors
                piv = tuple(int(np.nonzero(row)[0][0]) for row in basis)
            else:
                r, red, piv = rref(vectors, field)
                basis = red[:r]
        basis.setflags(write=False)
        self.basis = basis
        self.pivots = piv
        self._key = None

    @classmethod
    def full(cls, field, n):
        return cls(field, n, np.eye(n, dtype=np.int64), reduced=True)

    @classmethod
    def zero(cls, field, n):
        return cls(field, n)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def size(self) -> int:
        return self.field.q**self.dim

    def key(self):
        if self._key is None:
            self._key = (self.ambient_dim, self.basis.tobytes())
        return self._key

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def _same(self, other):
        if self.ambient_dim != other.ambient_dim:
            raise DimensionError(f"ambient dims {self.ambient_dim} != {other.ambient_dim}")

    def coords(self, v) -> np.ndarray:
        """Coordinates of v (assumed inside) with respect to the RREF basis."""
        v = np.asarray(v, dtype=np.int64)
        return v[..., list(self.pivots)]

    def combine(self, c) -> np.ndarray:
        """Vectors with the given basis coordinates."""
        c = np.asarray(c, dtype=np.int64)
        if self.dim == 0:
            return np.zeros(c.shape[:-1] + (self.ambient_dim,), dtype=np.int64)
        return self.field.matmul(c, self.basis)

    def reduce(self, v) -> np.ndarray:
        """Remainder of v modulo the subspace (zero at pivot positions)."""
        v = np.array(v, dtype=np.int64)
        if self.dim == 0:
            return v
        return self.field.vsub(v, self.combine(self.coords(v)))

    def contains_vector(self, v) -> bool:
        return not np.any(self.reduce(v))

    def contains(self, other: "Subspace") -> bool:
        self._same(other)
        if other.dim == 0:
            return True
        return not np.any(self.reduce(other.basis))

    def __le__(self, other):
        return other.contains(self)

    def sum(self, other: "Subspace") -> "Subspace":
        self._same(other)
        return Subspace(self.field, self.ambient_dim, np.vstack([self.basis, other.basis]))

    def __add__(self, other):
        return self.sum(other)

    def annihilator(self) -> "Subspace":
        """{y : sum_i x_i y_i = 0 for all x in self}, in the dual coordinates."""
        if self.dim == 0:
            return Subspace.full(self.field, self.ambient_dim)
        return Subspace(self.field, self.ambient_dim, nullspace(self.basis, self.field))

    def intersect(self, other: "Subspace") -> "Subspace":
        self._same(other)
        return self.annihilator().sum(other.annihilator()).annihilator()

    def __and__(self, other):
        return self.intersect(other)

    def vectors(self) -> np.ndarray:
        """All q**dim elements (rows), ordered by basis coordinates."""
        return self.combine(all_vectors(self.dim, self.field.q))

    def complement_positions(self) -> list[int]:
        return [c for c in range(self.ambient_dim) if c not in self.pivots]


def subspace_op(a: Subspace, b: Subspace | None, op: str):
    """Dispatcher over sum|intersect|contains|annihilator."""
    if op == "annihilator":
        return a.annihilator()
    if b is None:
        raise ValueError(f"{op} needs two subspaces")
    if op == "sum":
        return a.sum(b)
    if op == "intersect":
        return a.intersect(b)
    if op == "contains":
        return a.contains(b)
    raise ValueError(f"unknown subspace op {op!r}")


def iter_vectors(d: int, q: int) -> Iterator[tuple[int, ...]]:
    return product(range(q), repeat=d)
