from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from algchar.charfun import (
    CharFunError,
    ClassFunctionTheta,
    exp_map,
    identity_bijection,
    induce,
    induce_pointwise,
    inflate,
    inner,
    kirillov,
    poly_bijection,
    regular,
    restrict,
    supercharacter,
    tensor,
    theta_fun,
    trivial,
    twist,
    value_table,
    xi,
)
from algchar.dualforms import all_functionals
from algchar.fixtures import parse_ut_functional
from algchar.gf import GF, all_vectors
from algchar.grouporbit import dual_partition
from algchar.nilalg import make_ut, power_ideal, quotient, subalgebra_from


def canon(vals):
    """Power-sum rows modulo the all-ones relation of a p-th root of unity."""
    vals = np.asarray(vals, dtype=object)
    return vals - vals[:, -1:]


def test_theta_orthonormal(u32):
    lams = all_functionals(u32)
    for a in lams[:4]:
        for b in lams:
            expect = 1 if np.array_equal(a, b) else 0
            assert inner(theta_fun(u32, a), theta_fun(u32, b)).to_rational() == expect


def test_regular_and_trivial(u33):
    rho = regular(u33)
    vals, den = value_table(rho)
    vals = canon(vals)
    assert Fraction(int(vals[0, 0]), den) == u33.order
    assert not np.any(vals[1:])
    assert trivial(u33).degree().to_rational() == 1
    assert rho.norm2() == u33.order


def test_kirillov_degrees_and_norms(u42):
    part = dual_partition(u42, "coadjoint")
    for rep, size in zip(part.representatives(), part.sizes()):
        k = kirillov(u42, rep)
        assert k.degree().to_rational() ** 2 == size
        assert k.norm2() == 1


def test_supercharacter_norm(u42):
    part = dual_partition(u42, "two_sided")
    for rep in part.representatives():
        s = supercharacter(u42, rep)
        assert s.norm2() == coadjoint_count(u42, rep)


def coadjoint_count(alg, lam):
    from algchar.analysis import coadjoint_orbits_in_two_sided
    return coadjoint_orbits_in_two_sided(alg, lam)


def test_induce_agrees_with_pointwise(u42):
    h = subalgebra_from(u42, equations=[u42.unit_vector(u42.ut_index[(1, 2)])])
    sub = h.algebra
    for mu in all_functionals(sub)[:8]:
        f = theta_fun(sub, mu)
        assert induce(f, u42, h) == induce_pointwise(f, u42, h)


def test_frobenius_reciprocity(u33):
    h = subalgebra_from(u33, equations=[u33.unit_vector(u33.ut_index[(2, 3)])])
    sub = h.algebra
    chi = kirillov(u33, parse_ut_functional("e*(1,3)", u33))
    for mu in all_functionals(sub):
        psi = theta_fun(sub, mu)
        assert inner(induce(psi, u33, h), chi) == inner(psi, restrict(chi, h))


def test_inflate_is_composition(u42):
    ideal = power_ideal(u42, 2)
    Q, P = quotient(u42, ideal)
    f = regular(Q)
    g = inflate(f, u42, P)
    vals_g, dg = value_table(g)
    vals_f, df = value_table(f)
    pts = all_vectors(u42.dim, 2)
    from algchar.charfun import keys_of
    img = keys_of(Q, u42.field.matmul(pts, P))
    assert np.array_equal(canon(vals_g) * df, canon(vals_f)[img] * dg)


def test_tensor_is_pointwise(u32):
    lams = all_functionals(u32)
    f = kirillov(u32, lams[3]) + theta_fun(u32, lams[1])
    g = supercharacter(u32, lams[5])
    t = tensor(f, g)
    for x in all_vectors(u32.dim, 2):
        assert t.evaluate(x) == f.evaluate(x) * g.evaluate(x)


def test_tensor_is_pointwise_odd(u33):
    lams = all_functionals(u33)
    f = kirillov(u33, lams[7]) + theta_fun(u33, lams[2])
    g = kirillov(u33, lams[11])
    t = tensor(f, g)
    for x in all_vectors(u33.dim, 3)[::2]:
        assert t.evaluate(x) == f.evaluate(x) * g.evaluate(x)


@settings(max_examples=20, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=0, max_size=3))
def test_bijection_inverse(coeffs):
    A = make_ut(4, GF(3))
    bij = poly_bijection(A.field, coeffs).for_algebra(A)
    pts = all_vectors(A.dim, 3)[::37]
    assert np.array_equal(bij.apply_inverse(A, bij.apply(A, pts)), pts)


def test_exp_coefficients():
    e = exp_map(GF(5))
    assert e.forward == (1, 3, 1, 4)  # 1/2, 1/6, 1/24 mod 5


def test_twist_identity_is_noop(u33):
    chi = kirillov(u33, parse_ut_functional("e*(1,3)", u33))
    assert twist(chi, identity_bijection(u33.field)) == chi


def test_non_admissible_rejected():
    with pytest.raises(CharFunError):
        poly_bijection(GF(3), [1, 2, 1], full=True)
    with pytest.raises(CharFunError):
        poly_bijection(GF(3), [2, 1, 1], full=True)


def test_xi_is_character_of_expected_degree(u42):
    from algchar.dualforms import chain
    for lam in all_functionals(u42):
        f, xs = xi(u42, lam)
        ch = chain(u42, lam)
        assert f.degree().to_rational() == Fraction(u42.order, 2**ch.s.dim)
        assert xs.size * 2**ch.s_bar.dim % u42.order == 0


def test_shape_guard(u32):
    with pytest.raises(CharFunError):
        ClassFunctionTheta(u32, np.zeros((3, 2), dtype=np.int64))
