"""Named algebras and functionals used by the examples, tests and CLI."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .dualforms import restrict
from .gf import GF, Field
from .nilalg import Algebra, SubalgebraHandle, make_from_constants, make_ut, subalgebra_from, ut_index

_TERM = re.compile(r"\s*([+-])?\s*(\d*)\s*\*?\s*e\*\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*")


def parse_ut_functional(text: str, alg: Algebra) -> np.ndarray:
    """Parse ``"e*(1,5)+2e*(2,6)"`` into coordinates on u_n(q)."""
    F = alg.field
    lam = np.zeros(alg.dim, dtype=np.int64)
    pos = 0
    text = text.strip()
    if text in ("", "0"):
        return lam
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse functional near {text[pos:]!r}")
        sign, coef, i, j = m.groups()
        c = int(coef) if coef else 1
        if c >= F.q:
            raise ValueError(f"coefficient {c} is not a field element of F_{F.q}")
        if sign == "-":
            c = F.neg(c)
        k = ut_index(alg, int(i), int(j))
        lam[k] = F.add(int(lam[k]), c)
        pos = m.end()
    return lam


def format_ut_functional(lam, alg: Algebra) -> str:
    inv = {k: pr for pr, k in alg.ut_index.items()}
    terms = []
    for k, c in enumerate(lam):
        if c:
            i, j = inv[k]
            terms.append(f"{'' if c == 1 else int(c)}e*({i},{j})")
    return "+".join(terms) or "0"


def parse_coordinates(text: str, alg: Algebra) -> np.ndarray:
    vals = [int(t) for t in re.split(r"[,\s]+", text.strip().strip("[]")) if t]
    if len(vals) != alg.dim:
        raise ValueError(f"expected {alg.dim} coordinates, got {len(vals)}")
    return np.array(vals, dtype=np.int64)


def parse_functional(text: str, alg: Algebra) -> np.ndarray:
    if "e*" in text:
        return parse_ut_functional(text, alg)
    return parse_coordinates(text, alg)


# ---------------------------------------------------------------------------
# quaternion example

def load_document(name: str) -> dict:
    return json.loads(resources.files("algchar").joinpath("data", name).read_text())


def q8() -> Algebra:
    """Dimension-3 algebra over F_2 with group Q_8 (a^2 = ab = b^2 = c)."""
    return make_from_constants(load_document("q8.json"))


def q8_embedding() -> tuple[Algebra, SubalgebraHandle]:
    """The same algebra as the subalgebra {a(e12+e24) + b(e13+e24+e34) + c e14} of u_4(2)."""
    u4 = make_ut(4, GF(2))
    idx = u4.ut_index
    vecs = np.zeros((3, u4.dim), dtype=np.int64)
    for r, entries in enumerate([[(1, 2), (2, 4)], [(1, 3), (2, 4), (3, 4)], [(1, 4)]]):
        for pr in entries:
            vecs[r, idx[pr]] = 1
    return u4, subalgebra_from(u4, generators=vecs)


def q8_lambda() -> np.ndarray:
    """lambda(X) = X_{1,4}: the c coordinate."""
    return np.array([0, 0, 1], dtype=np.int64)


# ---------------------------------------------------------------------------
# odd-characteristic u_5 example

@dataclass(frozen=True)
class UT5Example:
    parent: Algebra
    n: SubalgebraHandle
    h: SubalgebraHandle
    lam_parent: np.ndarray

    @property
    def algebra(self) -> Algebra:
        return self.n.algebra

    @property
    def lam(self) -> np.ndarray:
        """lambda in the coordinates of n's own basis."""
        return restrict(self.parent, self.lam_parent, self.n)

    @property
    def h_in_n(self) -> SubalgebraHandle:
        """h as a subalgebra of n's own algebra."""
        from .nilalg import handle
        from .gf import Subspace

        A = self.algebra
        return handle(A, Subspace(A.field, A.dim, self.n.space.coords(self.h.space.basis)))


def ut5_odd(q: int = 3) -> UT5Example:
    """n = {X in u_5(q): X23 = -X34, X12 = X45} and h = {X in n: X23 = 0}."""
    F = GF(q)
    if F.p == 2:
        raise ValueError("the u_5 example needs odd characteristic")
    u5 = make_ut(5, F)
    idx = u5.ut_index
    d = u5.dim

    def row(pairs):
        r = np.zeros(d, dtype=np.int64)
        for (i, j), c in pairs:
            r[idx[(i, j)]] = c % F.q if F.e == 1 else c
        return r

    eq_n = [row([((2, 3), 1), ((3, 4), 1)]), row([((1, 2), 1), ((4, 5), F.neg(1))])]
    eq_h = eq_n + [row([((2, 3), 1)])]
    n = subalgebra_from(u5, equations=eq_n)
    h = subalgebra_from(u5, equations=eq_h)
    lam = row([((1, 3), 1), ((2, 4), 1), ((3, 5), 1)])
    return UT5Example(u5, n, h, lam)


# ---------------------------------------------------------------------------
# constrained u_6(2)

def ut6_constrained() -> tuple[Algebra, SubalgebraHandle]:
    """{X in u_6(2): X12 = X56}."""
    u6 = make_ut(6, GF(2))
    r = np.zeros(u6.dim, dtype=np.int64)
    r[u6.ut_index[(1, 2)]] = 1
    r[u6.ut_index[(5, 6)]] = 1
    return u6, subalgebra_from(u6, equations=[r])


# ---------------------------------------------------------------------------
# u_13(2) example

UT13_LAMBDA = "e*(1,5)+e*(2,6)+e*(3,10)+e*(4,11)+e*(5,7)+e*(6,8)+e*(7,9)+e*(8,12)+e*(9,13)"


def ut13() -> tuple[Algebra, np.ndarray]:
    alg = make_ut(13, GF(2))
    return alg, parse_ut_functional(UT13_LAMBDA, alg)


def build_algebra(kind: str, *, n: int | None = None, q: int | None = None, path: str | None = None,
                  field: Field | None = None) -> Algebra:
    """Algebra from CLI-style options: ``ut`` with n and q, ``file`` with a JSON path, or a fixture name."""
    if kind == "ut":
        if n is None or q is None:
            raise ValueError("--algebra ut needs --n and --q")
        return make_ut(n, field or GF(q))
    if kind == "file":
        if not path:
            raise ValueError("--algebra file needs --file")
        with open(path) as fh:
            return make_from_constants(json.load(fh))
    if kind == "q8":
        return q8()
    if kind == "ut5-odd":
        return ut5_odd(q or 3).algebra
    if kind == "ut6-constrained":
        return ut6_constrained()[1].algebra
    raise ValueError(f"unknown algebra kind {kind!r}")
