import numpy as np
import pytest

from algchar.fixtures import q8, q8_embedding
from algchar.gf import GF, Subspace
from algchar.nilalg import (
    Algebra,
    AlgebraError,
    CapacityError,
    brute_force_subalgebras,
    enumerate_subalgebras,
    make_from_constants,
    make_ut,
    power_ideal,
    quotient,
    subalgebra_from,
    ut_index,
)


@pytest.mark.parametrize("n,q", [(2, 2), (3, 3), (4, 2), (5, 2)])
def test_ut_shape(n, q):
    A = make_ut(n, GF(q))
    assert A.dim == n * (n - 1) // 2
    assert A.nilpotency_index == n
    A.check_associative()


def test_ut_products_are_matrix_products():
    A = make_ut(4, GF(3))
    rng = np.random.default_rng(1)
    for _ in range(20):
        x, y = rng.integers(0, 3, size=(2, A.dim))
        X, Y = np.zeros((4, 4), int), np.zeros((4, 4), int)
        for (i, j), k in A.ut_index.items():
            X[i - 1, j - 1], Y[i - 1, j - 1] = x[k], y[k]
        Z = (X @ Y) % 3
        z = A.mul(x, y)
        for (i, j), k in A.ut_index.items():
            assert z[k] == Z[i - 1, j - 1]


def test_cyclic_constants_rejected():
    F = GF(2)
    doc = {"field": F.to_json(), "dim": 3,
           "constants": [[0, 1, [0, 0, 1]], [1, 2, [1, 0, 0]]]}
    with pytest.raises(AlgebraError):
        make_from_constants(doc)


def test_non_associative_rejected():
    F = GF(2)
    doc = {"field": F.to_json(), "dim": 3, "constants": [[0, 0, [0, 1, 0]], [1, 0, [0, 0, 1]]]}
    with pytest.raises(AlgebraError):
        make_from_constants(doc)


def test_malformed_document():
    with pytest.raises(AlgebraError):
        make_from_constants({"dim": 2})


def test_q8_fixture_matches_embedding():
    Q = q8()
    u4, h = q8_embedding()
    assert h.dim == 3 and h.is_subalgebra
    assert Q.same_as(h.algebra)


def test_document_roundtrip():
    A = make_ut(3, GF(3))
    B = make_from_constants(A.to_document())
    assert B.same_as(A) and B.fingerprint == A.fingerprint


@pytest.mark.parametrize("n,q", [(3, 2), (3, 3)])
def test_enumeration_matches_brute_force(n, q):
    A = make_ut(n, GF(q))
    found = [h.space for h in enumerate_subalgebras(A)]
    assert len(found) == len(set(found))
    assert set(found) == brute_force_subalgebras(A)


def test_enumeration_u42_closed_and_distinct():
    A = make_ut(4, GF(2))
    hs = enumerate_subalgebras(A)
    assert len({h.space for h in hs}) == len(hs)
    assert all(h.is_subalgebra for h in hs)
    assert hs[0].dim == 6 and hs[-1].dim == 0


def test_enumeration_guard():
    with pytest.raises(CapacityError):
        enumerate_subalgebras(make_ut(5, GF(2)))


def test_subalgebra_from_equations_and_generators():
    A = make_ut(4, GF(2))
    r = np.zeros(A.dim, dtype=np.int64)
    r[ut_index(A, 1, 2)] = 1
    h = subalgebra_from(A, equations=[r])
    assert h.dim == A.dim - 1 and h.is_subalgebra
    g = subalgebra_from(A, generators=[A.unit_vector(ut_index(A, 1, 2)), A.unit_vector(ut_index(A, 2, 3))])
    assert g.dim == 3  # e12, e23, e13


def test_non_closed_equations_raise():
    A = make_ut(3, GF(2))
    r = np.zeros(A.dim, dtype=np.int64)
    r[ut_index(A, 1, 3)] = 1
    with pytest.raises(AlgebraError):
        subalgebra_from(A, equations=[r])


def test_quotient_by_power_ideal():
    A = make_ut(4, GF(2))
    I = power_ideal(A, 3)
    assert I.dim == 1 and I.is_ideal
    Q, P = quotient(A, I)
    assert Q.dim == 5
    rng = np.random.default_rng(0)
    for _ in range(20):
        x, y = rng.integers(0, 2, size=(2, A.dim))
        assert np.array_equal(A.field.matmul(A.mul(x, y), P), Q.mul(A.field.matmul(x, P), A.field.matmul(y, P)))


def test_quotient_needs_ideal():
    A = make_ut(3, GF(2))
    h = subalgebra_from(A, generators=[A.unit_vector(0)])
    with pytest.raises(AlgebraError):
        quotient(A, h)


def test_zero_algebra():
    F = GF(3)
    Z = Algebra(F, np.zeros((2, 2, 2), dtype=np.int64))
    assert Z.nilpotency_index == 2
    assert len(enumerate_subalgebras(Z)) == 1 + 4 + 1
