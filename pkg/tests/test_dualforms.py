import numpy as np
import pytest

from algchar.dualforms import (
    all_functionals,
    chain,
    form_matrix,
    left_orbit_affine,
    lift,
    orbit_sizes,
    restrict,
    right_orbit_affine,
)
from algchar.fixtures import parse_ut_functional
from algchar.gf import GF
from algchar.grouporbit import action_matrices, closure
from algchar.nilalg import make_ut


def test_form_matrix_u3():
    A = make_ut(3, GF(2))
    lam = parse_ut_functional("e*(1,3)", A)
    M = form_matrix(A, lam)
    # only e12 * e23 = e13
    assert M[A.ut_index[(1, 2)], A.ut_index[(2, 3)]] == 1
    assert M.sum() == 1


def test_chain_u3_e13():
    A = make_ut(3, GF(2))
    ch = chain(A, parse_ut_functional("e*(1,3)", A))
    # degree |G|/|S| = q for the central functional
    assert ch.s.dim == ch.l.dim == 2
    assert ch.k_space.dim == 1
    assert ch.l_bar == ch.l and ch.s_bar == ch.s


def test_chain_zero_functional():
    A = make_ut(4, GF(3))
    ch = chain(A, np.zeros(A.dim, dtype=np.int64))
    assert ch.l.dim == ch.s.dim == A.dim and ch.depth == 1


@pytest.mark.parametrize("n,q", [(3, 2), (4, 2), (3, 3)])
def test_chain_containments(n, q):
    A = make_ut(n, GF(q))
    for lam in all_functionals(A):
        ch = chain(A, lam)
        for i in range(1, len(ch.l_chain)):
            assert ch.s_chain[i - 1].contains(ch.s_chain[i])
            assert ch.l_chain[i].contains(ch.l_chain[i - 1])
            assert ch.s_chain[i].contains(ch.l_chain[i])
        assert ch.s_bar.contains(ch.l_bar)


@pytest.mark.parametrize("n,q", [(3, 2), (4, 2), (3, 3)])
def test_orbit_sizes_match_enumeration(n, q):
    A = make_ut(n, GF(q))
    mats = {k: action_matrices(A, k) for k in ("coadjoint", "left", "right", "two_sided")}
    for lam in all_functionals(A):
        s = orbit_sizes(A, lam)["sizes"]
        got = {k: closure(lam[None, :], A.field, m) for k, m in mats.items()}
        for k in mats:
            assert len(got[k]) == s[k]
        left = {tuple(v) for v in got["left"]}
        right = {tuple(v) for v in got["right"]}
        assert len(left & right) == s["intersection"]
        assert {tuple(v) for v in left_orbit_affine(A, lam).elements()} == left
        assert {tuple(v) for v in right_orbit_affine(A, lam).elements()} == right


def test_lift_restrict_roundtrip():
    A = make_ut(4, GF(3))
    ch = chain(A, parse_ut_functional("e*(1,4)+e*(2,3)", A))
    mu = restrict(A, ch.lam, ch.s)
    ext = lift(A, mu, ch.s)
    assert ext.contains(ch.lam)
    assert ext.size == 3 ** (A.dim - ch.s.dim)
    for nu in ext.elements()[:10]:
        assert np.array_equal(restrict(A, nu, ch.s), mu)
