from collections import Counter

import numpy as np
import pytest

from algchar.charfun import kirillov, regular, supercharacter, theta_fun, trivial
from algchar.fixtures import q8
from algchar.gf import GF
from algchar.grouporbit import conjugacy_classes, dual_partition, superclasses
from algchar.nilalg import Algebra, make_ut
from algchar.oracle import (
    OracleError,
    all_irreducibles,
    constituents,
    decompose,
    is_character,
    well_induced_characters,
)

DEGREES = {
    (3, 2): {1: 4, 2: 1},
    (4, 2): {1: 8, 2: 6, 4: 2},
    (3, 3): {1: 9, 3: 2},
}


@pytest.mark.parametrize("nq", sorted(DEGREES))
def test_degree_multiset(nq):
    A = make_ut(nq[0], GF(nq[1]))
    irr = all_irreducibles(A)
    assert Counter(irr.degrees()) == DEGREES[nq]
    for c in irr:
        assert c.norm2() == 1


def test_zero_algebra():
    A = Algebra(GF(2), np.zeros((0, 0, 0), dtype=np.int64))
    irr = all_irreducibles(A)
    assert irr.degrees() == [1]


def test_regular_decomposes_by_degree(u42):
    irr = all_irreducibles(u42)
    mults = constituents(regular(u42), irr)
    assert [mults[i] for i in range(len(irr))] == irr.degrees()


def test_is_character(u32):
    irr = all_irreducibles(u32)
    assert is_character(trivial(u32), irr)
    assert not is_character(-trivial(u32), irr)
    assert not is_character(trivial(u32).scale(0), irr)
    lam = np.array([0, 1, 0])
    assert not is_character(theta_fun(u32, lam), irr)


def test_decompose_rejects_outside_span():
    A = make_ut(3, GF(2))
    irr = all_irreducibles(A)
    broken = type(irr)(A, irr.chars[:-1], irr.provenance[:-1])
    with pytest.raises(OracleError):
        decompose(regular(A), broken)


@pytest.mark.parametrize("n,q", [(3, 2), (4, 2), (3, 3)])
def test_kirillov_is_irreducible_for_small_n(n, q):
    A = make_ut(n, GF(q))
    irr = all_irreducibles(A)
    for rep in dual_partition(A, "coadjoint").representatives():
        assert kirillov(A, rep) in irr


@pytest.mark.slow
def test_kirillov_u43():
    A = make_ut(4, GF(3))
    irr = all_irreducibles(A)
    assert len(irr) == conjugacy_classes(A).count
    for rep in dual_partition(A, "coadjoint").representatives():
        assert kirillov(A, rep) in irr


def test_supercharacters_are_orthogonal(u42):
    reps = dual_partition(u42, "two_sided").representatives()
    assert len(reps) == superclasses(u42).count
    irr = all_irreducibles(u42)
    seen = set()
    for rep in reps:
        s = supercharacter(u42, rep)
        assert is_character(s, irr)
        keys = set(constituents(s, irr))
        assert not keys & seen
        seen |= keys
    assert seen == set(range(len(irr)))


def test_q8_needs_completion():
    Q = q8()
    irr = all_irreducibles(Q)
    assert sorted(irr.degrees()) == [1, 1, 1, 1, 2]
    sources = [p["source"] for p in irr.provenance]
    assert any(s.startswith("residual") for s in sources)
    assert len(well_induced_characters(Q)) == 4


def test_provenance_json(u32):
    data = all_irreducibles(u32).to_json()
    assert data["count"] == 5
    assert all(c["source"] == "induced" for c in data["characters"])
