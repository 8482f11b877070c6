from __future__ import annotations

import math

import pytest
from hypothesis import given, settings, strategies as st

from hcon.hierarchy import (
    BitBudgetExceeded, DomainError, PreconditionViolated, Tower, check_lemma1, check_lemma2,
    exp_, exp_iter, find_lemma2_witness, int_lt_tower, lemma1_holds, lemma2_samples, log_,
    log_iter, omega, omega_iter, omega_iter_literal, omega_lt_int, omega_recursive,
    omega_tower, tower_le_int, tower_lt_int, varpi,
)


def ref_log(x):
    y = 0
    while 2 ** y < x:
        y += 1
    return y


def ref_omega(m, x):
    if m == -1:
        return 2 * x
    if m == 0:
        return x * x
    return 2 ** ref_omega(m - 1, ref_log(x))


@given(st.integers(1, 10**6))
def test_log_is_ceiling(x):
    assert log_(x) == ref_log(x)
    assert x <= 2 ** log_(x) and (log_(x) == 0 or 2 ** (log_(x) - 1) < x)


def test_log_domain():
    with pytest.raises(DomainError):
        log_(0)
    with pytest.raises(DomainError):
        exp_(-1)


def test_budget_is_enforced():
    with pytest.raises(BitBudgetExceeded):
        exp_(1 << 21)
    with pytest.raises(BitBudgetExceeded):
        exp_iter(3, 5)
    assert exp_iter(3, 2) == 2 ** 16


@pytest.mark.parametrize("m", [-1, 0, 1, 2, 3])
def test_omega_matches_reference(m):
    for x in range(1, 300):
        try:
            v = omega(m, x)
        except DomainError:
            # only the bottom of the range falls outside the domain
            assert m >= 2 and x <= m
            continue
        assert v == omega_recursive(m, x) == ref_omega(m, x)


def test_omega_small_values():
    assert omega(0, 5) == 25
    assert omega(1, 16) == 2 ** 16  # log 16 = 4, 4**2 = 16
    assert omega(2, 2 ** 16) == 2 ** 2 ** 16
    with pytest.raises(DomainError):
        omega(2, 0)


@settings(max_examples=200, deadline=None)
@given(st.integers(-1, 2), st.integers(0, 3), st.integers(1, 5000))
def test_iterate_closed_form(m, n, x):
    try:
        lit = omega_iter_literal(m, n, x)
    except (BitBudgetExceeded, DomainError):
        return
    assert omega_iter(m, n, x) == lit


@settings(max_examples=300, deadline=None)
@given(st.integers(-1, 2), st.integers(0, 3), st.integers(1, 3000), st.integers(0, 2 ** 300))
def test_exact_comparison_against_materialized(m, n, x, y):
    try:
        v = omega_iter(m, n, x)
    except (BitBudgetExceeded, DomainError):
        return
    from hcon.hierarchy import omega_iter_lt_int
    assert omega_iter_lt_int(m, n, x, y) == (v < y)
    assert omega_iter_lt_int(m, n, x, v) is False
    assert omega_iter_lt_int(m, n, x, v + 1) is True


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 4), st.integers(0, 20), st.integers(0, 2 ** 70000))
def test_tower_comparisons(h, b, n):
    t = Tower(h, b)
    try:
        v = t.value(budget=1 << 17)
    except BitBudgetExceeded:
        # too tall: every n drawn here is smaller
        assert not tower_lt_int(t, n) and int_lt_tower(n, t)
        return
    assert tower_lt_int(t, n) == (v < n)
    assert tower_le_int(t, n) == (v <= n)
    assert int_lt_tower(n, t) == (n < v)


@pytest.mark.parametrize("n", [0, 1, 2])
def test_varpi_inverts_omega(n):
    for x in range(1, 400):
        y = varpi(n, x)
        assert ref_omega(n, y) >= x
        assert y == varpi(n, 1) or ref_omega(n, y - 1) < x


def test_omega_tower_shape():
    t = omega_tower(2, 2 ** 16, 1)
    assert t.height == 2 and t.base == 16
    assert t.value() == omega(2, 2 ** 16)


def test_lemma1_small_cases_directly():
    # m = 0: x**(2**N) < 2**(log x)**2 once x > exp^2(N)
    for n in (3, 4):
        x0 = exp_iter(2, n)
        for x in (x0 + 1, x0 + 7, 3 * x0):
            assert lemma1_holds(0, n, x)
            assert x ** (2 ** n) < 2 ** (log_(x) ** 2)


def test_lemma1_fails_below_threshold():
    # the hypothesis is needed: small x violate the inequality
    assert not lemma1_holds(0, 3, 100)


@pytest.mark.parametrize("m,n", [(0, 3), (0, 4), (1, 3), (1, 4)])
def test_lemma1_grid(m, n):
    rep = check_lemma1(m, n, samples=4, seed=1)
    assert len(rep.samples) == 4 and rep.ok and not rep.skipped


def test_lemma1_preconditions():
    with pytest.raises(PreconditionViolated):
        check_lemma1(0, 2)
    rep = check_lemma1(3, 4)
    assert rep.skipped and rep.ok


def _materialized_ok(m, n, x, y):
    # omega_-1^N(y) = 2**N * y and omega_0(y) = y*y; omega_0^N(y) = y**(2**N), omega_1(y) = 2**((log y)**2)
    if m == -1:
        return (y << n) < x <= y * y
    return y ** (2 ** n) < x <= 2 ** (log_(y) ** 2)


@pytest.mark.parametrize("m,n", [(-1, 1), (-1, 2), (0, 1), (0, 2)])
def test_lemma2_witnesses_materialized(m, n):
    for x in lemma2_samples(m, n, samples=4, seed=2, budget=1 << 14):
        y = find_lemma2_witness(m, n, x)
        assert y <= x and _materialized_ok(m, n, x, y)


def test_lemma2_precondition():
    with pytest.raises(PreconditionViolated):
        find_lemma2_witness(0, 1, 100)
    with pytest.raises(PreconditionViolated):
        find_lemma2_witness(0, 0, 10**100)


def test_lemma2_report():
    rep = check_lemma2(0, 3, samples=4)
    assert rep.ok and len(rep.witnesses) == 4
