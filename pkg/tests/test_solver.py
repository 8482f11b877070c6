from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from hcon.solver import ResourceLimit, check_model, naive_unsat, solve


def brute_sat(nvars, clauses):
    for bits in itertools.product((0, 1), repeat=nvars):
        if check_model(clauses, bits):
            return True
    return False


def cnf(max_vars=7, max_clauses=22):
    return st.integers(1, max_vars).flatmap(lambda n: st.tuples(
        st.just(n),
        st.lists(st.lists(st.integers(1, n).flatmap(lambda v: st.sampled_from([v, -v])),
                          min_size=1, max_size=3), max_size=max_clauses)))


@settings(max_examples=600, deadline=None)
@given(cnf(), st.one_of(st.none(), st.integers(0, 10**6)))
def test_agrees_with_exhaustive_search(problem, seed):
    n, clauses = problem
    r = solve(n, clauses, seed=seed)
    assert r.sat == brute_sat(n, clauses)
    if r.sat:
        assert check_model(clauses, r.model)
    else:
        core = [clauses[i] for i in r.core]
        assert not brute_sat(n, core)
        assert naive_unsat(n, core)


def test_propagation_only_refutation_has_chain():
    clauses = [[1], [-1, 2], [-2, 3], [-3, -1], [4, 5]]
    r = solve(5, clauses)
    assert not r.sat and r.propagation_only and r.decisions == 0
    assert sorted(r.core) == [0, 1, 2, 3]
    assert r.chain[0] == (1, 0)
    seen = set()
    for lit, ci in r.chain:
        # each step is forced: its reason holds the literal, the rest already false
        assert lit in clauses[ci]
        assert all(-o in seen for o in clauses[ci] if o != lit)
        seen.add(lit)
    assert all(-o in seen for o in clauses[r.conflict])


def test_empty_clause():
    r = solve(1, [[1], []])
    assert not r.sat and r.core == [1]


def test_pigeonhole_needs_search():
    # three pigeons, two holes
    v = lambda p, h: 2 * p + h + 1
    clauses = [[v(p, 0), v(p, 1)] for p in range(3)]
    for h in range(2):
        for a, b in itertools.combinations(range(3), 2):
            clauses.append([-v(a, h), -v(b, h)])
    r = solve(6, clauses)
    assert not r.sat and not r.propagation_only and r.decisions > 0
    assert naive_unsat(6, [clauses[i] for i in r.core])


def test_default_order_is_deterministic():
    rng = random.Random(3)
    clauses = [[rng.choice([1, -1]) * rng.randint(1, 12) for _ in range(3)] for _ in range(30)]
    a, b = solve(12, clauses), solve(12, clauses)
    assert a.sat == b.sat and a.model == b.model


def test_decision_budget():
    v = lambda p, h: 4 * p + h + 1
    clauses = [[v(p, h) for h in range(4)] for p in range(5)]
    for h in range(4):
        for a, b in itertools.combinations(range(5), 2):
            clauses.append([-v(a, h), -v(b, h)])
    with pytest.raises(ResourceLimit):
        solve(20, clauses, max_decisions=3)
