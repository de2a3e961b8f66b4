import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from algchar.gf import GF, Subspace, all_vectors, decode, encode, nullspace, rank, rref

FIELDS = [GF(2), GF(3), GF(4), GF(5), GF(8), GF(9)]


@pytest.mark.parametrize("F", FIELDS, ids=lambda F: f"GF{F.q}")
def test_field_axioms_exhaustive(F):
    els = range(F.q)
    for a, b, c in itertools.product(els, repeat=3):
        assert F.add(a, F.add(b, c)) == F.add(F.add(a, b), c)
        assert F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c)
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    for a in F.nonzero():
        assert F.mul(a, F.inv(a)) == 1
        assert F.add(a, F.neg(a)) == 0


@pytest.mark.parametrize("F", FIELDS, ids=lambda F: f"GF{F.q}")
def test_trace_is_additive_and_prime_valued(F):
    for a in range(F.q):
        assert 0 <= F.trace(a) < F.p
        for b in range(F.q):
            assert F.trace(F.add(a, b)) == (F.trace(a) + F.trace(b)) % F.p
    # the trace form is nondegenerate, so some element has nonzero trace
    assert any(F.trace(a) for a in range(F.q))


def test_gf_rejects_non_prime_powers():
    with pytest.raises(ValueError):
        GF(6)


def test_encode_order_is_lexicographic():
    vecs = all_vectors(3, 3)
    keys = encode(vecs, 3)
    assert list(keys) == list(range(27))
    for k in (0, 5, 26):
        assert np.array_equal(decode(k, 3, 3), vecs[k])


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 4, 5]), st.integers(1, 5), st.integers(1, 5), st.data())
def test_nullspace_and_rank(q, r, c, data):
    F = GF(q)
    m = np.array(data.draw(st.lists(st.lists(st.integers(0, q - 1), min_size=c, max_size=c), min_size=r, max_size=r)))
    ns = nullspace(m, F)
    assert rank(m, F) + len(ns) == c
    for x in ns:
        assert not np.any(F.matmul(m, x))


def test_rref_pivots_are_unit():
    F = GF(5)
    r, red, piv = rref(np.array([[2, 4, 1], [1, 3, 3]]), F)
    assert r == 2
    for i, p in enumerate(piv):
        assert red[i, p] == 1


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3]), st.data())
def test_subspace_lattice(q, data):
    F = GF(q)
    d = 4
    vec = st.lists(st.integers(0, q - 1), min_size=d, max_size=d)
    A = Subspace(F, d, np.array(data.draw(st.lists(vec, min_size=1, max_size=3))))
    B = Subspace(F, d, np.array(data.draw(st.lists(vec, min_size=1, max_size=3))))
    S, I = A + B, A & B
    assert S.dim + I.dim == A.dim + B.dim
    assert S.contains(A) and S.contains(B) and A.contains(I) and B.contains(I)
    assert A.annihilator().dim == d - A.dim
    assert A.annihilator().annihilator() == A
    members = {tuple(v) for v in A.vectors()}
    assert len(members) == A.size
    assert all(A.contains_vector(np.array(v)) for v in members)


def test_subspace_coords_roundtrip():
    F = GF(3)
    A = Subspace(F, 4, np.array([[1, 2, 0, 1], [0, 1, 1, 2]]))
    for v in A.vectors():
        assert np.array_equal(A.combine(A.coords(v)), v)
