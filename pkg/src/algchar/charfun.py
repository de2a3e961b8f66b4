"""Class functions on G = 1 + n in the theta basis.

theta_nu(1 + X) = zeta_p ** Tr(nu(X)).  The theta_nu are orthonormal, so a
function f = sum_nu c_nu theta_nu is stored by its coefficients.  Each
coefficient lives in Q(zeta_p) and is held exactly as a common denominator
plus an integer array ``num`` of shape (q**d, p): c_nu = sum_k num[nu, k]
zeta**k / den, normalised so that column p-1 is zero and the entries share
no factor with ``den``.  Row nu is indexed by the mixed-radix key of nu.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .cyclo import CycloNumber
from .dualforms import as_functional, chain, restrict_many
from .gf import Field, Subspace, all_vectors, encode
from .grouporbit import action_matrices, closure, dual_partition, generator_set
from .nilalg import Algebra, AlgebraError, CapacityError, SubalgebraHandle, handle

DENSE_LIMIT = 1 << 20


class CharFunError(ValueError):
    pass


def _check_dense(alg: Algebra):
    if alg.order > DENSE_LIMIT:
        raise CapacityError(f"|n*| = {alg.order} exceeds the dense limit {DENSE_LIMIT}")


def keys_of(alg: Algebra, lams) -> np.ndarray:
    lams = np.asarray(lams, dtype=np.int64)
    if alg.dim == 0:
        return np.zeros(lams.shape[0] if lams.ndim > 1 else 1, dtype=np.int64)
    return np.asarray(encode(lams.reshape(-1, alg.dim), alg.field.q), dtype=np.int64)


def _reduce(num: np.ndarray, den: int, p: int):
    """Canonical form: last power-sum column zero, gcd(num, den) = 1, den > 0."""
    num = np.asarray(num)
    if num.dtype != object:
        num = num.astype(np.int64)
    num = num - num[:, p - 1 : p]
    if num.dtype == object:
        g = math.gcd(*[int(a) for a in num.ravel()], int(den))
    else:
        g = math.gcd(int(np.gcd.reduce(np.abs(num).ravel())) if num.size else 0, int(den))
    g = g or 1
    if den < 0:
        g = -g
    if g != 1:
        num = num // g
        den //= g
    return num, den


def _to_int64(num):
    if num.dtype == object:
        if num.size and max(abs(int(x)) for x in num.ravel()) >= 2**62:
            return num
        return num.astype(np.int64)
    return num


class ClassFunctionTheta:
    """f = sum_nu c_nu theta_nu on the algebra group of ``algebra``."""

    __slots__ = ("algebra", "num", "den", "p", "__dict__")

    def __init__(self, algebra: Algebra, num, den: int = 1, *, canonical: bool = False):
        _check_dense(algebra)
        self.algebra = algebra
        p = algebra.field.p
        self.p = p
        num = np.asarray(num)
        if num.shape != (algebra.order, p):
            raise CharFunError(f"coefficient array has shape {num.shape}, expected {(algebra.order, p)}")
        if not canonical:
            num, den = _reduce(num, int(den), p)
        self.num = _to_int64(num)
        self.num.setflags(write=False)
        self.den = int(den)

    # -- constructors ----------------------------------------------------
    @classmethod
    def zero(cls, alg: Algebra) -> "ClassFunctionTheta":
        return cls(alg, np.zeros((alg.order, alg.field.p), dtype=np.int64), 1, canonical=True)

    @classmethod
    def from_support(cls, alg: Algebra, lams, coeff: Fraction | int = 1) -> "ClassFunctionTheta":
        """coeff * sum of theta_nu over the given functionals (duplicates ignored)."""
        _check_dense(alg)
        coeff = Fraction(coeff)
        num = np.zeros((alg.order, alg.field.p), dtype=np.int64)
        num[np.unique(keys_of(alg, lams)), 0] = coeff.numerator
        return cls(alg, num, coeff.denominator)

    @classmethod
    def from_map(cls, alg: Algebra, coeffs: dict) -> "ClassFunctionTheta":
        """From {functional tuple: CycloNumber or rational}."""
        p = alg.field.p
        den = 1
        items = []
        for lam, c in coeffs.items():
            c = c if isinstance(c, CycloNumber) else CycloNumber.rational(p, c)
            items.append((lam, c))
            for a in c.coeffs:
                den = den * a.denominator // math.gcd(den, a.denominator)
        num = np.zeros((alg.order, p), dtype=object)
        num[:] = 0
        for lam, c in items:
            k = int(keys_of(alg, [lam])[0])
            num[k, : p - 1] += np.array([int(a * den) for a in c.coeffs], dtype=object)
        return cls(alg, num, den)

    # -- access ----------------------------------------------------------
    @property
    def field(self) -> Field:
        return self.algebra.field

    def support(self) -> np.ndarray:
        return np.nonzero(np.any(self.num != 0, axis=1))[0]

    def support_functionals(self) -> np.ndarray:
        return all_vectors(self.algebra.dim, self.field.q)[self.support()]

    def coeff(self, lam) -> CycloNumber:
        k = int(keys_of(self.algebra, [lam])[0])
        return self._coeff_at(k)

    def _coeff_at(self, k: int) -> CycloNumber:
        row = self.num[k]
        return CycloNumber.from_power_sums(self.p, [Fraction(int(a), self.den) for a in row])

    def terms(self):
        """(functional, coefficient) pairs over the support, in key order."""
        vecs = all_vectors(self.algebra.dim, self.field.q)
        return [(vecs[k], self._coeff_at(int(k))) for k in self.support()]

    def is_rational(self) -> bool:
        return not np.any(self.num[:, 1:])

    # -- arithmetic ------------------------------------------------------
    def _same(self, other: "ClassFunctionTheta"):
        if not isinstance(other, ClassFunctionTheta):
            raise TypeError("expected a ClassFunctionTheta")
        if other.algebra is not self.algebra and not other.algebra.same_as(self.algebra):
            raise CharFunError("class functions live on different algebras")

    def _combine(self, other, sign):
        self._same(other)
        l = self.den * other.den // math.gcd(self.den, other.den)
        a = self.num.astype(object) * (l // self.den)
        b = other.num.astype(object) * (l // other.den)
        return ClassFunctionTheta(self.algebra, a + sign * b, l)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return ClassFunctionTheta(self.algebra, -self.num, self.den, canonical=True)

    def scale(self, r) -> "ClassFunctionTheta":
        if isinstance(r, CycloNumber):
            rr = r.to_rational()
            if rr is None:
                return self._cyclo_scale(r)
            r = rr
        r = Fraction(r)
        return ClassFunctionTheta(self.algebra, self.num.astype(object) * r.numerator, self.den * r.denominator)

    def _cyclo_scale(self, c: CycloNumber) -> "ClassFunctionTheta":
        p = self.p
        den = 1
        for a in c.coeffs:
            den = den * a.denominator // math.gcd(den, a.denominator)
        ints = [int(a * den) for a in c.coeffs] + [0]
        out = np.zeros_like(self.num, dtype=object)
        for j, w in enumerate(ints):
            if w:
                out += np.roll(self.num.astype(object), j, axis=1) * w
        return ClassFunctionTheta(self.algebra, out, self.den * den)

    def __mul__(self, r):
        return self.scale(r)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, ClassFunctionTheta):
            return NotImplemented
        return (self.algebra is other.algebra or self.algebra.same_as(other.algebra)) and self.den == other.den \
            and np.array_equal(self.num, other.num)

    def __hash__(self):
        return hash((self.den, np.asarray(self.num, dtype=np.int64).tobytes()))

    def is_zero(self) -> bool:
        return not np.any(self.num)

    # -- values ----------------------------------------------------------
    def degree(self) -> CycloNumber:
        """f(1) = sum of coefficients."""
        sums = self.num.astype(object).sum(axis=0)
        return CycloNumber.from_power_sums(self.p, [Fraction(int(a), self.den) for a in sums])

    def inner(self, other: "ClassFunctionTheta") -> CycloNumber:
        return inner(self, other)

    def norm2(self) -> Fraction:
        r = inner(self, self).to_rational()
        assert r is not None
        return r

    def evaluate(self, x) -> CycloNumber:
        vals, den = values_at(self, np.asarray(x, dtype=np.int64)[None, :])
        return CycloNumber.from_power_sums(self.p, [Fraction(int(a), den) for a in vals[0]])

    def is_class_function(self) -> bool:
        part = dual_partition(self.algebra, "coadjoint")
        keys = keys_of(self.algebra, part.points)
        rows = self.num[keys]
        for lab in range(part.count):
            block = rows[part.labels == lab]
            if np.any(block != block[0]):
                return False
        return True

    def to_json(self) -> dict:
        terms = [[[int(c) for c in lam], coeff.to_json()] for lam, coeff in self.terms()]
        deg = self.degree()
        norm = inner(self, self)
        return {"basis": "theta", "terms": terms, "degree": deg.to_json(), "norm": norm.to_json()}

    def __repr__(self):
        return f"ClassFunctionTheta(support={len(self.support())}, den={self.den})"


# ---------------------------------------------------------------------------
# core numerics

def inner(f: ClassFunctionTheta, g: ClassFunctionTheta) -> CycloNumber:
    """<f, g> = sum_nu c_nu conj(d_nu)."""
    f._same(g)
    p = f.p
    S = f.num.astype(object).T.dot(g.num.astype(object)) if (f.num.dtype == object or g.num.dtype == object) \
        else f.num.T @ g.num
    sums = [0] * p
    for k in range(p):
        for l in range(p):
            sums[(k - l) % p] += int(S[k, l])
    den = f.den * g.den
    return CycloNumber.from_power_sums(p, [Fraction(a, den) for a in sums])


def _trace_exponents(F: Field, points, lams) -> np.ndarray:
    """Tr(lam(X)) mod p for every (X, lam) pair: shape (len(points), len(lams))."""
    m = F.matmul(np.asarray(points, dtype=np.int64), np.asarray(lams, dtype=np.int64).T)
    return F.vtrace(m) if F.e > 1 else m


CHUNK = 1 << 22


def _character_sum(p: int, t: np.ndarray, coeffs: np.ndarray) -> np.ndarray:
    """out[i, :] = power sums of sum_j coeffs[j] * zeta**t[i, j]."""
    coeffs = np.asarray(coeffs)
    dtype = object if coeffs.dtype == object else np.int64
    out = np.zeros((t.shape[0], p), dtype=dtype)
    for s in range(p):
        mask = (t == s).astype(dtype)
        part = mask @ coeffs
        out += np.roll(part, s, axis=1)
    return out


def _transform(F: Field, points, lams, coeffs, sign: int = 1) -> np.ndarray:
    """Power sums of sum_j coeffs[j] zeta**(sign Tr lams[j](X)) for each X, in row blocks."""
    points = np.asarray(points, dtype=np.int64)
    step = max(1, CHUNK // max(1, len(lams)))
    blocks = []
    for a in range(0, len(points), step):
        t = _trace_exponents(F, points[a : a + step], lams)
        if sign < 0:
            t = (-t) % F.p
        blocks.append(_character_sum(F.p, t, coeffs))
    if not blocks:
        return np.zeros((0, F.p), dtype=np.int64)
    return np.concatenate(blocks)


def values_at(f: ClassFunctionTheta, points) -> tuple[np.ndarray, int]:
    """Values of f at g = 1 + X for each X row, as (power sums, den)."""
    supp = f.support()
    if len(supp) == 0:
        return np.zeros((len(points), f.p), dtype=np.int64), 1
    lams = all_vectors(f.algebra.dim, f.field.q)[supp]
    return _transform(f.field, points, lams, f.num[supp]), f.den


def value_table(f: ClassFunctionTheta) -> tuple[np.ndarray, int]:
    """Values at every group element, rows in key order of X."""
    return values_at(f, all_vectors(f.algebra.dim, f.field.q))


def from_values(alg: Algebra, vals: np.ndarray, den: int) -> ClassFunctionTheta:
    """Inverse of value_table: c_nu = (1/|G|) sum_X f(1+X) zeta**(-Tr nu(X))."""
    pts = all_vectors(alg.dim, alg.field.q)
    num = _transform(alg.field, pts, pts, vals, sign=-1)
    return ClassFunctionTheta(alg, num, den * alg.order)


def value(f: ClassFunctionTheta, x) -> CycloNumber:
    return f.evaluate(x)


def evaluate(f: ClassFunctionTheta, x) -> CycloNumber:
    return f.evaluate(x)


# ---------------------------------------------------------------------------
# the named characters

def theta_fun(alg: Algebra, lam) -> ClassFunctionTheta:
    return ClassFunctionTheta.from_support(alg, [as_functional(alg, lam)])


def regular(alg: Algebra) -> ClassFunctionTheta:
    """rho_G = sum over all nu of theta_nu."""
    _check_dense(alg)
    num = np.zeros((alg.order, alg.field.p), dtype=np.int64)
    num[:, 0] = 1
    return ClassFunctionTheta(alg, num, 1, canonical=True)


def trivial(alg: Algebra) -> ClassFunctionTheta:
    return theta_fun(alg, alg.zero())


def _exact_log(n: int, q: int) -> int:
    e = 0
    while n > 1:
        if n % q:
            raise CharFunError(f"{n} is not a power of {q}")
        n //= q
        e += 1
    return e


def coadjoint_orbit_points(alg: Algebra, lam) -> np.ndarray:
    return closure(as_functional(alg, lam)[None, :], alg.field, action_matrices(alg, "coadjoint"))


def kirillov(alg: Algebra, lam) -> ClassFunctionTheta:
    """psi_lambda = q**(-e/2) sum over the coadjoint orbit (|orbit| = q**e)."""
    pts = coadjoint_orbit_points(alg, lam)
    e = _exact_log(len(pts), alg.field.q)
    if e % 2:
        raise CharFunError("odd coadjoint orbit exponent")
    return ClassFunctionTheta.from_support(alg, pts, Fraction(1, alg.field.q ** (e // 2)))


def supercharacter(alg: Algebra, lam) -> ClassFunctionTheta:
    """chi_lambda = |G lambda| / |G lambda G| sum over G lambda G."""
    lam = as_functional(alg, lam)
    pts = closure(lam[None, :], alg.field, action_matrices(alg, "two_sided"))
    left = closure(lam[None, :], alg.field, action_matrices(alg, "left"))
    return ClassFunctionTheta.from_support(alg, pts, Fraction(len(left), len(pts)))


@dataclass(frozen=True)
class XiSet:
    """Xi_lambda = {g lambda s g^-1} with its coadjoint orbit decomposition."""

    points: np.ndarray
    orbit_sizes: tuple
    representatives: np.ndarray

    @property
    def size(self) -> int:
        return len(self.points)

    @property
    def orbit_count(self) -> int:
        return len(self.orbit_sizes)


def xi_set(alg: Algebra, lam, ch=None) -> XiSet:
    """lambda S-bar, then its coadjoint G-saturation."""
    from .grouporbit import partition_points

    lam = as_functional(alg, lam)
    ch = chain(alg, lam) if ch is None else ch
    F = alg.field
    sbar = handle(alg, ch.s_bar)
    right = action_matrices(alg, "right", generator_set(sbar))
    seed = closure(lam[None, :], F, right)
    coadj = action_matrices(alg, "coadjoint")
    pts = closure(seed, F, coadj)
    part = partition_points(pts, F, coadj)
    return XiSet(part.points, tuple(int(s) for s in part.sizes()), part.representatives())


def xi(alg: Algebra, lam, ch=None) -> tuple[ClassFunctionTheta, XiSet]:
    """xi_lambda = (|S-bar| / |G|) sum over Xi_lambda."""
    lam = as_functional(alg, lam)
    ch = chain(alg, lam) if ch is None else ch
    xs = xi_set(alg, lam, ch)
    q = alg.field.q
    coeff = Fraction(q**ch.s_bar.dim, alg.order)
    return ClassFunctionTheta.from_support(alg, xs.points, coeff), xs


# ---------------------------------------------------------------------------
# restriction, induction, inflation, tensor

def _as_handle(alg: Algebra, h) -> SubalgebraHandle:
    if isinstance(h, SubalgebraHandle):
        return h
    if isinstance(h, Subspace):
        return handle(alg, h)
    raise TypeError("expected a SubalgebraHandle or Subspace")


def restrict(f: ClassFunctionTheta, h) -> ClassFunctionTheta:
    """Restriction to H = 1 + h; the result lives on h's own algebra."""
    alg = f.algebra
    h = _as_handle(alg, h)
    sub = h.algebra
    pts = all_vectors(alg.dim, alg.field.q)
    target = keys_of(sub, restrict_many(alg, pts, h.space)) if h.dim else np.zeros(len(pts), dtype=np.int64)
    out = np.zeros((sub.order, f.p), dtype=object if f.num.dtype == object else np.int64)
    np.add.at(out, target, f.num)
    return ClassFunctionTheta(sub, out, f.den)


def orbit_average(f: ClassFunctionTheta) -> ClassFunctionTheta:
    """Average coefficients over coadjoint orbits (the G-conjugation average)."""
    alg = f.algebra
    part = dual_partition(alg, "coadjoint")
    keys = keys_of(alg, part.points)
    sizes = part.sizes()
    L = int(sizes.max()) if len(sizes) else 1
    sums = np.zeros((part.count, f.p), dtype=object)
    np.add.at(sums, part.labels, f.num[keys].astype(object))
    scaled = sums * np.array([L // int(s) for s in sizes], dtype=object)[:, None]
    out = np.zeros((alg.order, f.p), dtype=object)
    out[keys] = scaled[part.labels]
    return ClassFunctionTheta(alg, out, f.den * L)


def fan_out(f: ClassFunctionTheta, parent: Algebra, h: SubalgebraHandle) -> ClassFunctionTheta:
    """Coefficient of nu is c_{nu restricted to h}."""
    pts = all_vectors(parent.dim, parent.field.q)
    src = keys_of(h.algebra, restrict_many(parent, pts, h.space)) if h.dim else np.zeros(len(pts), dtype=np.int64)
    return ClassFunctionTheta(parent, f.num[src], f.den)


def induce(f: ClassFunctionTheta, parent: Algebra, h) -> ClassFunctionTheta:
    """Ind_H^G f for f on H = 1 + h (f given on h's own algebra).

    The zero extension of f has theta coefficients c_{nu|h} |H|/|G|; the
    induction formula averages its G-conjugates and multiplies by |G|/|H|.
    """
    h = _as_handle(parent, h)
    if not h.is_subalgebra:
        raise AlgebraError("induction needs an algebra subgroup")
    if f.algebra is not h.algebra and not f.algebra.same_as(h.algebra):
        raise CharFunError("function does not live on the given subgroup")
    return orbit_average(fan_out(f, parent, h))


def induce_pointwise(f: ClassFunctionTheta, parent: Algebra, h) -> ClassFunctionTheta:
    """Ind_H^G f(g) = (1/|H|) sum_{x in G} f°(x g x^-1), evaluated directly."""
    from .grouporbit import g_inv, g_mul

    h = _as_handle(parent, h)
    F = parent.field
    pts = all_vectors(parent.dim, F.q)
    sub_vals, den = value_table(f)
    sub = h.algebra
    acc = np.zeros((len(pts), f.p), dtype=object)
    for x in pts:
        xi_ = g_inv(parent, x)
        conj = g_mul(parent, g_mul(parent, np.broadcast_to(x, pts.shape), pts), np.broadcast_to(xi_, pts.shape))
        inside = ~np.any(h.space.reduce(conj), axis=1)
        if not inside.any():
            continue
        coords = h.space.coords(conj[inside])
        acc[inside] += sub_vals[keys_of(sub, coords)].astype(object)
    return from_values(parent, acc, den * h.space.size)


def inflate(f: ClassFunctionTheta, parent: Algebra, P) -> ClassFunctionTheta:
    """f o pi for pi: n -> n/h with x -> x @ P; coefficient of mu o pi is c_mu."""
    Q = f.algebra
    P = np.asarray(P, dtype=np.int64)
    mus = all_vectors(Q.dim, Q.field.q)
    nus = parent.field.matmul(mus, P.T) if Q.dim else np.zeros((1, parent.dim), dtype=np.int64)
    out = np.zeros((parent.order, f.p), dtype=f.num.dtype)
    out[keys_of(parent, nus)] = f.num
    return ClassFunctionTheta(parent, out, f.den)


def tensor(f: ClassFunctionTheta, g: ClassFunctionTheta) -> ClassFunctionTheta:
    """Pointwise product; theta_mu theta_nu = theta_{mu + nu}."""
    f._same(g)
    alg = f.algebra
    F = alg.field
    vecs = all_vectors(alg.dim, F.q)
    gs = g.support()
    gv = vecs[gs]
    out = np.zeros((alg.order, f.p), dtype=object)
    gnum = g.num[gs].astype(object)
    for k in f.support():
        tgt = keys_of(alg, F.vadd(vecs[k][None, :], gv))
        row = f.num[k]
        for j, a in enumerate(row):
            if a:
                out[tgt] += np.roll(gnum, j, axis=1) * int(a)
    return ClassFunctionTheta(alg, out, f.den * g.den)


def pointwise_product(f: ClassFunctionTheta, g: ClassFunctionTheta) -> ClassFunctionTheta:
    return tensor(f, g)


# ---------------------------------------------------------------------------
# polynomial bijections

@dataclass(frozen=True)
class PolyBijection:
    """F(X) = 1 + X + sum_{k>=2} a_k X^k over F_q, with a formal inverse.

    ``forward`` lists coefficients of X^1, X^2, ...; ``inverse`` lists b_1,
    b_2, ... with F'(1 + Y) = sum b_k Y^k undoing F up to degree ``depth``.
    """

    field: Field
    forward: tuple
    depth: int

    def __post_init__(self):
        if not self.forward or self.forward[0] != 1:
            raise CharFunError("an admissible bijection has linear coefficient 1")

    @cached_property
    def inverse(self) -> tuple:
        return _series_inverse(self.field, list(self.forward), self.depth)

    def is_identity(self) -> bool:
        return all(a == 0 for a in self.forward[1 : self.depth])

    def apply(self, alg: Algebra, x) -> np.ndarray:
        """X -> F(X) - 1."""
        return _apply_series(alg, x, self.forward[: max(self.depth, 1)])

    def apply_inverse(self, alg: Algebra, y) -> np.ndarray:
        """Y -> X with F(X) = 1 + Y."""
        return _apply_series(alg, y, self.inverse)

    def for_algebra(self, alg: Algebra) -> "PolyBijection":
        if alg.field != self.field:
            raise CharFunError("bijection and algebra use different fields")
        if self.depth >= alg.nilpotency_index:
            return self
        return PolyBijection(self.field, self.forward, alg.nilpotency_index)

    def to_json(self) -> dict:
        return {"forward": [int(a) for a in self.forward], "inverse": [int(b) for b in self.inverse]}


def _series_mul(F: Field, a: list, b: list, n: int) -> list:
    out = [0] * n
    for i, x in enumerate(a[:n]):
        if x:
            for j, y in enumerate(b[: n - i]):
                if y:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
    return out


def _series_inverse(F: Field, forward: list, depth: int) -> tuple:
    """Compositional inverse of f(x) = sum forward[k-1] x^k modulo x^depth."""
    n = max(depth, 2)
    f = [0] + [forward[k - 1] if k - 1 < len(forward) else 0 for k in range(1, n)]
    powers = [None, f]
    for j in range(2, n):
        powers.append(_series_mul(F, powers[-1], f, n))
    b = [0] * n
    for m in range(1, n):
        acc = 1 if m == 1 else 0
        for j in range(1, m):
            acc = F.sub(acc, F.mul(b[j], powers[j][m]))
        b[m] = acc  # [x^m] f^m = 1
    return tuple(b[1:])


def _apply_series(alg: Algebra, x, coeffs) -> np.ndarray:
    F = alg.field
    x = np.asarray(x, dtype=np.int64)
    out = np.zeros_like(x)
    power = x
    for k, c in enumerate(coeffs, start=1):
        if k >= alg.nilpotency_index + 1 or not np.any(power):
            break
        if c:
            out = F.vadd(out, F.vmul(c, power))
        power = alg.mul(power, x)
    return out


def poly_bijection(field: Field, coefficients, depth: int = 8, *, full: bool = False) -> PolyBijection:
    """Build F from a_2, a_3, ... (or, with ``full``, from a_0, a_1, a_2, ...).

    Full coefficient lists must start with a_0 = 1 and a_1 = 1.
    """
    coefficients = [int(c) for c in coefficients]
    if full:
        if len(coefficients) < 2 or coefficients[0] != 1 or coefficients[1] != 1:
            raise CharFunError("admissible bijections have constant term 1 and linear term X")
        coefficients = coefficients[2:]
    for c in coefficients:
        field._check(c)
    return PolyBijection(field, tuple([1] + coefficients), max(depth, len(coefficients) + 2))


def identity_bijection(field: Field, depth: int = 2) -> PolyBijection:
    return PolyBijection(field, (1,), depth)


def exp_map(alg_or_field, depth: int | None = None) -> PolyBijection:
    """Truncated exponential: a_k = 1/k! mod p for 2 <= k <= p-1."""
    if isinstance(alg_or_field, Algebra):
        field = alg_or_field.field
        depth = alg_or_field.nilpotency_index if depth is None else depth
    else:
        field = alg_or_field
        depth = depth or field.p
    p = field.p
    coeffs = [1]
    fact = 1
    for k in range(2, p):
        fact = fact * k % p
        coeffs.append(field.from_int(pow(fact, -1, p)))
    return PolyBijection(field, tuple(coeffs), max(depth, len(coeffs) + 1))


def twist(f: ClassFunctionTheta, bij: PolyBijection) -> ClassFunctionTheta:
    """f^F defined by f^F(F(X)) = f(1 + X)."""
    alg = f.algebra
    bij = bij.for_algebra(alg)
    ys = all_vectors(alg.dim, alg.field.q)
    xs = bij.apply_inverse(alg, ys)
    vals, den = values_at(f, xs)
    return from_values(alg, vals, den)


def poly_kirillov(alg: Algebra, lam, bij: PolyBijection) -> ClassFunctionTheta:
    return twist(kirillov(alg, lam), bij)


__all__ = [
    "CharFunError",
    "ClassFunctionTheta",
    "PolyBijection",
    "XiSet",
    "exp_map",
    "fan_out",
    "from_values",
    "identity_bijection",
    "induce",
    "induce_pointwise",
    "inflate",
    "inner",
    "kirillov",
    "orbit_average",
    "poly_bijection",
    "poly_kirillov",
    "regular",
    "restrict",
    "supercharacter",
    "tensor",
    "theta_fun",
    "trivial",
    "twist",
    "value_table",
    "values_at",
    "xi",
    "xi_set",
]
