from __future__ import annotations

import itertools

from hypothesis import given, settings

from hcon.normalize import alpha_equal, canonical, is_nnf, is_rectified, is_rnnf, rectify, to_nnf, to_rnnf
from hcon.syntax import (
    And, Atom, Exists, Forall, Iff, Implies, NegAtom, Not, Or, free_vars, parse_formula,
)
from hcon.theories import Q_AXIOMS, sentence_b
from strategies import formulas

DOMAIN = (0, 1, 2)


def _t(t, env):
    # saturating arithmetic on {0, 1, 2}; c denotes 1
    if t.is_var:
        return env[t.head]
    a = [_t(x, env) for x in t.args]
    return {"0": lambda: 0, "c": lambda: 1, "s": lambda x: min(x + 1, 2),
            "+": lambda x, y: min(x + y, 2), "*": lambda x, y: min(x * y, 2)}[t.head](*a)


def holds(f, env):
    """Reference semantics, written independently of the library."""
    if isinstance(f, (Atom, NegAtom)):
        x, y = (_t(a, env) for a in f.args)
        v = x == y if f.pred == "=" else x <= y
        return v if isinstance(f, Atom) else not v
    if isinstance(f, Not):
        return not holds(f.body, env)
    if isinstance(f, And):
        return holds(f.left, env) and holds(f.right, env)
    if isinstance(f, Or):
        return holds(f.left, env) or holds(f.right, env)
    if isinstance(f, Implies):
        return not holds(f.left, env) or holds(f.right, env)
    if isinstance(f, Iff):
        return holds(f.left, env) == holds(f.right, env)
    q = any if isinstance(f, Exists) else all
    return q(holds(f.body, {**env, f.var: d}) for d in DOMAIN)


def _envs(names):
    for vals in itertools.product(DOMAIN, repeat=len(names)):
        yield dict(zip(names, vals))


@settings(max_examples=250, deadline=None)
@given(formulas(max_leaves=5))
def test_rnnf_is_equivalent_in_a_finite_model(f):
    g = to_rnnf(f)
    assert is_rnnf(g)
    assert set(free_vars(g)) == set(free_vars(f))
    for env in _envs(sorted(set(free_vars(f)))):
        assert holds(f, env) == holds(g, env)


@settings(max_examples=200, deadline=None)
@given(formulas(max_leaves=6))
def test_rnnf_idempotent_and_nnf_shape(f):
    g = to_rnnf(f)
    assert to_rnnf(g) == g
    assert is_nnf(to_nnf(f))
    assert is_rectified(rectify(f))


@settings(max_examples=200, deadline=None)
@given(formulas(max_leaves=5))
def test_alpha_equal_under_renaming(f):
    g = rectify(f)
    assert alpha_equal(f, g)
    assert canonical(f) == canonical(g)


def test_iff_expansion_and_rectification_of_a4():
    a = parse_formula(dict(Q_AXIOMS)["A4"])
    c = parse_formula("forall x. forall y. ((x !<= y | exists u. u + x = y) & "
                      "((forall z. z + x != y) | x <= y))")
    assert alpha_equal(to_rnnf(a), c)


def test_induction_sentence_rnnf_matches_display():
    d = parse_formula(
        "(forall u. (u !<= 0 * 0 | u != 0 * 0)) | "
        "(exists w. ((exists z. (z <= w * w & z = w * w)) & "
        "(forall v. (v !<= S(w) * S(w) | v != S(w) * S(w))))) | "
        "(forall x. exists y. (y <= x * x & y = x * x))")
    assert alpha_equal(to_rnnf(sentence_b()), d)


def test_repeated_binders_are_renamed():
    f = parse_formula("(forall x. x = x) | (forall x. x = 0)")
    g = to_rnnf(f)
    assert is_rectified(g)
    assert sorted(v for v in (g.left.var, g.right.var)) == ["x", "x1"]


def test_free_variable_kept_distinct_from_binders():
    g = to_rnnf(parse_formula("x = 0 & exists x. x = 0"))
    assert free_vars(g) == ["x"]
    assert g.right.var != "x"


def test_canonical_distinguishes_free_from_bound():
    assert not alpha_equal(parse_formula("exists x. x = y"), parse_formula("exists x. x = x"))
    assert alpha_equal(parse_formula("exists x. x = y"), parse_formula("exists z. z = w"))
    assert not alpha_equal(parse_formula("exists x. x = y"), parse_formula("exists z. z = w"),
                           rename_free=False)
