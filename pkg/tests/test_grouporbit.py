import numpy as np
import pytest

from algchar.fixtures import q8
from algchar.gf import GF, all_vectors
from algchar.grouporbit import (
    action_matrix,
    conjugacy_classes,
    dual_partition,
    g_inv,
    g_mul,
    generated_subgroup_size,
    partition_points,
    superclasses,
    action_matrices,
)
from algchar.nilalg import make_ut

CLASS_COUNTS = {(3, 2): (5, 5), (4, 2): (16, 15), (3, 3): (11, 11)}


def test_group_law():
    A = make_ut(4, GF(3))
    rng = np.random.default_rng(2)
    x, y, z = rng.integers(0, 3, size=(3, A.dim))
    assert np.array_equal(g_mul(A, g_mul(A, x, y), z), g_mul(A, x, g_mul(A, y, z)))
    assert not np.any(g_mul(A, x, g_inv(A, x)))


@pytest.mark.parametrize("nq", sorted(CLASS_COUNTS))
def test_class_and_superclass_counts(nq):
    A = make_ut(*nq[:1], GF(nq[1]))
    classes, supers = CLASS_COUNTS[nq]
    assert conjugacy_classes(A).count == classes
    assert superclasses(A).count == supers
    assert dual_partition(A, "coadjoint").count == classes
    assert dual_partition(A, "two_sided").count == supers


def test_q8_classes():
    assert conjugacy_classes(q8()).count == 5


@pytest.mark.parametrize("n,q", [(3, 2), (4, 2), (3, 3), (4, 3)])
def test_generators_generate(n, q):
    A = make_ut(n, GF(q))
    assert generated_subgroup_size(A, limit=1 << 20) == A.order


def test_actions_are_actions():
    A = make_ut(4, GF(2))
    rng = np.random.default_rng(3)
    g, h = rng.integers(0, 2, size=(2, A.dim))
    gh = g_mul(A, g, h)
    F = A.field
    # coadjoint and left are left actions, right is a right action
    for kind in ("coadjoint", "left"):
        assert np.array_equal(action_matrix(A, gh, kind), F.matmul(action_matrix(A, h, kind), action_matrix(A, g, kind)))
    assert np.array_equal(action_matrix(A, gh, "right"), F.matmul(action_matrix(A, g, "right"), action_matrix(A, h, "right")))


def test_partition_is_deterministic():
    A = make_ut(3, GF(3))
    pts = all_vectors(A.dim, 3)
    mats = action_matrices(A, "coadjoint")
    a = partition_points(pts, A.field, mats)
    b = partition_points(pts[::-1], A.field, mats[::-1])
    assert np.array_equal(a.labels, b.labels) and np.array_equal(a.representatives(), b.representatives())
