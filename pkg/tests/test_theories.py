from __future__ import annotations

import pytest

from hcon.evaluation import term_value
from hcon.hierarchy import exp_iter
from hcon.normalize import alpha_equal, to_rnnf
from hcon.skolem import skolemize
from hcon.syntax import (
    ZERO, Implies, const, fn, free_vars, numeral, parse_formula, parse_ground_term, succ,
)
from hcon.theories import (
    NotDelta0, Q_AXIOMS, WrongFreeVariables, induction_instance, is_delta0, numerals,
    preset_idelta0, preset_q, preset_qb, sentence_b, theta_sq, upsilon, upsilon_extended,
    z_terms,
)
from hcon.universe import UniverseConfig, close_universe


def test_q_has_eight_sentences():
    q = preset_q()
    assert [l for l, _ in q.axioms] == [f"A{i}" for i in range(1, 9)]
    assert all(not free_vars(f) for f in q.formulas)
    assert alpha_equal(q.axioms[0][1], parse_formula("forall x. S(x) != 0"))


def test_q_variants():
    q = preset_q(a4_sum="x + z", split_a4=True)
    assert [l for l, _ in q.axioms][3:5] == ["A4a", "A4b"]
    reg = q.registry()
    assert alpha_equal(reg.get("𝔥").source, parse_formula("exists z. x + z = y"))
    assert q.name == "Q[x + z, split]"
    with pytest.raises(ValueError):
        preset_q(a4_sum="z * x")


def test_delta0_recognizer():
    assert is_delta0(theta_sq())
    assert is_delta0(parse_formula("forall y <= x. exists z <= y. z + z = y"))
    assert is_delta0(parse_formula("forall y. (y !<= x | y = y)"))
    assert not is_delta0(parse_formula("exists y. y = x * x"))
    assert not is_delta0(parse_formula("forall y <= y. y = y"))
    assert not is_delta0(parse_formula("exists y. (x <= y & y = y)"))


def test_induction_instance_shape():
    b = sentence_b()
    assert isinstance(b, Implies) and not free_vars(b)
    step = b.left.right
    # the step uses the successor
    assert alpha_equal(step, parse_formula(
        "forall x. ((exists y. (y <= x * x & y = x * x)) -> "
        "(exists y. (y <= S(x) * S(x) & y = S(x) * S(x))))"))


def test_induction_errors():
    with pytest.raises(NotDelta0):
        induction_instance(parse_formula("exists y. y = x"), "x")
    with pytest.raises(WrongFreeVariables):
        induction_instance(parse_formula("x = y"), "x")
    with pytest.raises(WrongFreeVariables):
        induction_instance(parse_formula("x = x"), "y")


def test_trivial_induction_instance():
    t = preset_idelta0(parse_formula("x = x"), "x")
    assert len(t.axioms) == 9 and "𝔠" not in t.pins


def test_qb_pins_squaring_witnesses():
    t = preset_qb()
    reg = t.registry()
    assert reg.symbols() == {"𝔭": 1, "𝔥": 2, "𝔮": 1, "𝔠": 0}
    skolemize(t.axioms[-1][1], reg)
    assert len(reg) == 4


def test_numerals_and_z_terms():
    assert numerals(2) == [ZERO, succ(ZERO), succ(succ(ZERO))]
    assert z_terms(0) == [numeral(2)]
    zs = z_terms(4)
    assert zs[1] is fn("𝔮", numeral(2))
    assert [term_value(z) for z in zs] == [exp_iter(2, i) for i in range(5)]
    assert term_value(zs[2]) == 16


def test_upsilon():
    u = upsilon()
    assert len(u) == len(set(u)) == 10
    assert parse_ground_term("S(𝔠) * S(𝔠) + 0") in u
    closed = close_universe(u, 1, preset_qb().registry(), UniverseConfig(max_terms=10_000))
    assert set(u) <= set(closed)


def test_upsilon_extended():
    t = const("t")
    ext = upsilon_extended()
    assert ext[-3:] == [t, fn("*", t, t), fn("𝔮", t)]
    assert upsilon_extended(ZERO)[-1] is fn("𝔮", ZERO)


def test_axiom_texts_parse_as_sentences():
    for label, text in Q_AXIOMS:
        assert not free_vars(to_rnnf(parse_formula(text))), label
