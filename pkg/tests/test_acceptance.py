"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""

import pytest

from algchar.verify import run_suite

# (criterion, suite, time budget in seconds or None)
CRITERIA = [
    (1, "orthonormality", 60),
    (2, "regular", 60),
    (3, "stabiliser", 300),
    (4, "xi-structure", None),
    (5, "oracle", None),
    (6, "counts", None),
    (7, "bijection", None),
    (8, "span", None),
    (9, "exp-kirillov", None),
    (10, "examples", None),
    (11, "ut13", 1800),
    (12, "inflation", None),
]


def report(capsys, number, result):
    with capsys.disabled():
        print(f"\n[criterion {number:2d}] {result.line()}")


@pytest.mark.parametrize("number,suite,budget", CRITERIA, ids=[f"c{n:02d}-{s}" for n, s, _ in CRITERIA])
def test_criterion(capsys, number, suite, budget):
    result = run_suite(suite)
    report(capsys, number, result)
    assert result.passed, result.details
    if budget is not None:
        assert result.seconds < budget


@pytest.mark.slow
@pytest.mark.parametrize("number,suite", [(5, "oracle"), (9, "exp-kirillov")], ids=["c05-oracle-u43", "c09-exp-kirillov-u43"])
def test_criterion_slow(capsys, number, suite):
    result = run_suite(suite, slow=True)
    report(capsys, number, result)
    assert result.passed, result.details
