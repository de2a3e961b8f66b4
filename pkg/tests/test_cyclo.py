from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from algchar.cyclo import CycloNumber, root_power

rats = st.fractions(min_value=-5, max_value=5, max_denominator=7)


def cyc(p):
    return st.lists(rats, min_size=p - 1, max_size=p - 1).map(lambda c: CycloNumber(p, c))


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([2, 3, 5]).flatmap(lambda p: st.tuples(cyc(p), cyc(p), cyc(p))))
def test_ring_axioms(t):
    a, b, c = t
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert (a - a).is_zero()


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([3, 5]).flatmap(cyc))
def test_inverse_and_norm(a):
    if a.is_zero():
        return
    assert a * a.inverse() == CycloNumber.rational(a.p, 1)
    assert a.norm() != 0
    assert abs(float(a.norm()) - abs(_prod_conjugates(a))) < 1e-6 * max(1.0, abs(float(a.norm())))
    assert (a * a.conj()).to_complex().imag == pytest.approx(0, abs=1e-9)


def _prod_conjugates(a):
    out = 1
    for t in range(1, a.p):
        out *= a.galois(t).to_complex()
    return out


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_sum_of_roots_vanishes(p):
    total = CycloNumber(p)
    for k in range(p):
        total = total + root_power(p, k)
    assert total.is_zero()


def test_complex_embedding():
    z = root_power(3, 1)
    assert abs(z.to_complex() - complex(-0.5, 3**0.5 / 2)) < 1e-12
    assert (z * z * z) == CycloNumber.rational(3, 1)


def test_rational_roundtrip_and_json():
    a = CycloNumber.rational(5, Fraction(7, 3))
    assert a.to_rational() == Fraction(7, 3)
    b = root_power(5, 2).scale(Fraction(1, 2))
    assert CycloNumber.from_json(b.to_json()) == b
    assert b.to_rational() is None
