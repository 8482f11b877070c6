from __future__ import annotations

import threading

import pytest
from hypothesis import given, settings, strategies as st

from hcon.normalize import alpha_equal, to_rnnf
from hcon.skolem import (
    SkolemRegistry, available_instances, available_substitutions, brute_force_substitutions,
    skolem_s, skolemize,
)
from hcon.syntax import Exists, free_vars, parse_formula, parse_ground_term, print_formula
from hcon.theories import lambda7, le0_registry, preset_q, sentence_b, b_pins
from strategies import ground_terms

Q_SK = {
    "A1": "S(x) != 0",
    "A2": "S(x) != S(y) | x = y",
    "A3": "x = 0 | x = S(𝔭(x))",
    "A4": "(x !<= y | 𝔥(x, y) + x = y) & (z + x != y | x <= y)",
    "A5": "x + 0 = x",
    "A6": "x + S(y) = S(x + y)",
    "A7": "x * 0 = 0",
    "A8": "x * S(y) = x * y + x",
}


def test_q_table_golden():
    q = preset_q()
    reg = q.registry()
    for label, f in q.axioms:
        assert alpha_equal(skolemize(f, reg), parse_formula(Q_SK[label])), label
    assert reg.symbols() == {"𝔭": 1, "𝔥": 2}


def test_induction_sentence_golden():
    reg = SkolemRegistry()
    for name, ex in b_pins().items():
        reg.pin(name, ex)
    expected = parse_formula(
        "(u !<= 0 * 0 | u != 0 * 0) | "
        "((𝔮(𝔠) <= 𝔠 * 𝔠 & 𝔮(𝔠) = 𝔠 * 𝔠) & (v !<= S(𝔠) * S(𝔠) | v != S(𝔠) * S(𝔠))) | "
        "(𝔮(x) <= x * x & 𝔮(x) = x * x)", constants=["𝔠"])
    assert alpha_equal(skolemize(sentence_b(), reg), expected)
    assert reg.get("𝔠").arity == 0 and reg.get("𝔮").arity == 1


def test_fresh_names_and_arity_follow_free_variables():
    reg = SkolemRegistry()
    g = skolemize(parse_formula("forall x. exists y. forall z. exists w. x + w = y * z"), reg)
    assert print_formula(g, unicode=True) == "x + 𝔣₁(x, 𝔣₀(x), z) = 𝔣₀(x) · z"
    assert reg.symbols() == {"𝔣₀": 1, "𝔣₁": 3}


def test_registry_reuses_symbols_up_to_renaming():
    reg = SkolemRegistry()
    a = reg.symbol_for(parse_formula("exists y. x = S(y)"))
    b = reg.symbol_for(parse_formula("exists z. w = S(z)"))
    assert a is b and len(reg) == 1


def test_pin_conflicts():
    reg = SkolemRegistry()
    reg.pin("𝔭", parse_formula("exists y. x = S(y)"))
    with pytest.raises(ValueError):
        reg.pin("𝔮", parse_formula("exists y. x = S(y)"))
    with pytest.raises(ValueError):
        reg.pin("𝔭", parse_formula("exists y. x = y"))
    with pytest.raises(TypeError):
        reg.pin("𝔯", parse_formula("x = 0"))


def test_registry_thread_safety():
    reg = SkolemRegistry()
    forms = [parse_formula(f"exists y. y = {'S(' * k}x{')' * k}") for k in range(20)]
    out = []

    def work():
        out.append([reg.symbol_for(f).name for f in forms])

    threads = [threading.Thread(target=work) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(o == out[0] for o in out) and len(reg) == 20


def test_skolem_s_requires_rnnf():
    with pytest.raises(ValueError):
        skolem_s(parse_formula("~ exists x. x = 0"), SkolemRegistry())
    out = skolem_s(to_rnnf(parse_formula("exists x. x = 0")), SkolemRegistry())
    assert not free_vars(out) and not isinstance(out, Exists)


def test_example_instances_are_available():
    reg = le0_registry()
    lam = lambda7()
    a4 = dict(preset_q().axioms)["A4"]
    labels = [i.describe() for i in available_instances(a4, lam, reg, "A4")]
    assert "A4[x:=𝔠, y:=0, z1:=𝔥(𝔠, 0)]" in labels
    a3 = dict(preset_q().axioms)["A3"]
    assert [i.describe() for i in available_instances(a3, lam, reg, "A3")] == ["A3[x:=𝔠]"]


def test_values_may_lie_outside_lambda():
    # x := S(0) is not a member, but every atom side S(S(0)), 0 is
    lam = [parse_ground_term("S(S(0))"), parse_ground_term("0")]
    subs = available_substitutions(parse_formula("S(x) != 0"), lam)
    assert {str(b["x"]) for b in subs} == {"S(0)"}


OPEN_FORMS = [parse_formula(s) for s in (
    "S(x) != 0", "S(x) != S(y) | x = y", "x + S(y) = S(x + y)", "x * S(y) = x * y + x",
    "x + 0 = x", "(x !<= y | f(x, y) + x = y) & (z + x != y | x <= y)", "x = y",
)]


@settings(max_examples=150, deadline=None)
@given(st.lists(ground_terms(constants=("c",), skolem=(("f", 2),), max_leaves=4),
                min_size=1, max_size=6, unique=True),
       st.sampled_from(OPEN_FORMS))
def test_matching_agrees_with_brute_force(members, open_form):
    fast = available_substitutions(open_form, members)
    slow = brute_force_substitutions(open_form, members)
    key = lambda b: tuple(sorted((k, id(v)) for k, v in b.items()))
    assert sorted(map(key, fast)) == sorted(map(key, slow))
    assert len(set(map(key, fast))) == len(fast)
