from fractions import Fraction

import numpy as np
import pytest

from algchar.analysis import (
    AnalysisError,
    certified_constituents,
    coadjoint_orbits_in_two_sided,
    count_by_degree,
    count_constituents_super,
    count_constituents_xi,
    exp_criterion,
    induction_bijection,
    inflation_checks,
    is_fully_ramified,
    xi_span_check,
    regular_from_xi,
    stabiliser_check,
    tension_report,
    well_induced,
    xi_partition,
    xi_tensor_experiment,
)
from algchar.charfun import exp_map, regular, supercharacter, trivial, xi
from algchar.dualforms import all_functionals, chain
from algchar.fixtures import parse_ut_functional
from algchar.gf import GF
from algchar.grouporbit import dual_partition
from algchar.nilalg import make_ut, power_ideal, subalgebra_from
from algchar.oracle import all_irreducibles, constituents


def reps(alg, kind="two_sided"):
    return dual_partition(alg, kind).representatives()


@pytest.mark.parametrize("name", ["u32", "u42", "u33"])
def test_counts_match_oracle(name, request):
    A = request.getfixturevalue(name)
    irr = all_irreducibles(A)
    for lam in reps(A):
        want = constituents(supercharacter(A, lam), irr)
        assert count_constituents_super(A, lam).total == len(want)
        assert coadjoint_orbits_in_two_sided(A, lam) == len(want)
        by_deg = {}
        for i in want:
            d = irr.degrees()[i]
            by_deg[d] = by_deg.get(d, 0) + 1
        assert count_by_degree(A, lam).by_degree == by_deg
        assert count_constituents_xi(A, lam).total == len(constituents(xi(A, lam)[0], irr))


def test_zero_functional_is_trivial(u42):
    z = np.zeros(u42.dim, dtype=np.int64)
    assert supercharacter(u42, z) == trivial(u42)
    assert count_constituents_super(u42, z).total == 1
    assert is_fully_ramified(u42, z)


def test_fully_ramified_means_single_local_orbit(u33):
    irr = all_irreducibles(u33)
    for lam in all_functionals(u33):
        ch = chain(u33, lam)
        if is_fully_ramified(u33, lam, ch):
            assert supercharacter(u33, lam).degree().to_rational() == Fraction(u33.order, 3**ch.l.dim)


def test_exp_criterion_holds_for_odd_small(u33):
    assert all(exp_criterion(u33, lam) for lam in all_functionals(u33))


def test_well_induced_rejects_nonlinear_mu(u42):
    full = subalgebra_from(u42, generators=np.eye(u42.dim, dtype=np.int64))
    mu = np.zeros(u42.dim, dtype=np.int64)
    mu[u42.ut_index[(1, 3)]] = 1
    with pytest.raises(AnalysisError):
        well_induced(u42, full, mu)


def test_well_induced_linear(u32):
    h = subalgebra_from(u32, equations=[u32.unit_vector(u32.ut_index[(1, 2)])])
    # nonzero on e13, so theta_mu is not stable under conjugation
    mu = np.ones(h.dim, dtype=np.int64)
    w = well_induced(u32, h, mu)
    assert w.character.degree().to_rational() == 2
    assert w.irreducible and w.kirillov_lambda is not None


def test_xi_partition_covers(u32):
    cells = xi_partition(u32)
    assert sum(len(c.points) for c in cells) == u32.order
    assert regular_from_xi(u32, cells) == regular(u32)


def test_xi_partition_u33(u33):
    cells = xi_partition(u33)
    assert sum(len(c.points) for c in cells) == u33.order
    assert regular_from_xi(u33, cells) == regular(u33)


@pytest.mark.parametrize("name", ["u42", "u33"])
def test_stabilisers(name, request):
    A = request.getfixturevalue(name)
    for lam in reps(A):
        assert stabiliser_check(A, lam).ok


@pytest.mark.parametrize("name,bar", [("u42", True), ("u42", False), ("u33", True)])
def test_induction_bijection(name, bar, request):
    A = request.getfixturevalue(name)
    irr = all_irreducibles(A)
    for lam in reps(A):
        assert induction_bijection(A, lam, irr, bar=bar).ok


def test_certified_constituents_rejects_incomplete(u32):
    irr = all_irreducibles(u32)
    assert certified_constituents(regular(u32), irr.chars) == list(range(len(irr)))
    with pytest.raises(AnalysisError):
        certified_constituents(regular(u32), irr.chars[:-1])


def test_span_exp(u33):
    irr = all_irreducibles(u33)
    for lam in reps(u33, "coadjoint"):
        assert xi_span_check(u33, lam, exp_map(u33), irr).ok


def test_inflation(u42):
    assert all(c.ok for c in inflation_checks(u42, power_ideal(u42, 3)))


def test_tension_report_consistency(u42):
    lam = parse_ut_functional("e*(1,4)", u42)
    rep = tension_report(u42, lam, {"two_sided": 0, "left": 2})
    assert rep["computed_consistent"]
    assert rep["reference"]["left"]["agrees"]
    assert not rep["reference"]["two_sided"]["agrees"]


@pytest.mark.parametrize("n,q", [(4, 2), (3, 3)])
def test_xi_products_stay_in_span_small(n, q):
    res = xi_tensor_experiment(make_ut(n, GF(q)))
    assert res["products_outside_span"] == 0
