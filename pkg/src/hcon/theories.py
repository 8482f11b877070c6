"""Theory presets (Q, bounded induction) and the special term families."""

from __future__ import annotations

from dataclasses import dataclass, field

from .normalize import alpha_equal
from .skolem import SkolemRegistry
from .syntax import (
    LE, LITERALS, And, Atom, Exists, Forall, Formula, Iff, Implies, NegAtom, Not,
    Or, Term, ZERO, const, fn, free_vars, mul, numeral, parse_formula,
    parse_ground_term, substitute, succ, var,
)


class NotDelta0(ValueError):
    pass


class WrongFreeVariables(ValueError):
    pass


@dataclass
class TheoryPreset:
    name: str
    axioms: list[tuple[str, Formula]]
    pins: dict[str, Formula] = field(default_factory=dict)

    def __post_init__(self):
        for label, ax in self.axioms:
            if free_vars(ax):
                raise ValueError(f"axiom {label} is not a sentence")

    @property
    def formulas(self) -> list[Formula]:
        return [f for _, f in self.axioms]

    def registry(self, reg: SkolemRegistry | None = None) -> SkolemRegistry:
        """A registry with this preset's pinned Skolem names installed."""
        reg = reg if reg is not None else SkolemRegistry()
        for name, ex in self.pins.items():
            reg.pin(name, ex)
        return reg

    def extend(self, name: str, axioms: list[tuple[str, Formula]],
               pins: dict[str, Formula] | None = None) -> "TheoryPreset":
        return TheoryPreset(name, self.axioms + axioms, {**self.pins, **(pins or {})})


Q_AXIOMS = [
    ("A1", "forall x. S(x) != 0"),
    ("A2", "forall x. forall y. (S(x) = S(y) -> x = y)"),
    ("A3", "forall x. (x != 0 -> exists y. x = S(y))"),
    ("A4", "forall x. forall y. (x <= y <-> exists z. z + x = y)"),
    ("A5", "forall x. x + 0 = x"),
    ("A6", "forall x. forall y. x + S(y) = S(x + y)"),
    ("A7", "forall x. x * 0 = 0"),
    ("A8", "forall x. forall y. x * S(y) = x * y + x"),
]

# pinned Skolem names
PRED = "𝔭"
DIFF = "𝔥"
SQ = "𝔮"
WIT = "𝔠"

Q_PINS = {
    PRED: "exists y. x = S(y)",
    DIFF: "exists z. z + x = y",
}


def preset_q(a4_sum: str = "z + x", split_a4: bool = False) -> TheoryPreset:
    """Robinson's Q.  The defaults give the eight axioms as usually printed.

    ``a4_sum`` chooses the witness sum in the order axiom (``"x + z"`` is the
    other orientation); ``split_a4`` states its two directions as separate
    axioms ``A4a``/``A4b``, which changes which instances are available on a
    term set since each axiom's instance must fit on its own.
    """
    if a4_sum not in ("z + x", "x + z"):
        raise ValueError("a4_sum must be 'z + x' or 'x + z'")
    axioms = []
    for label, text in Q_AXIOMS:
        if label != "A4":
            axioms.append((label, parse_formula(text)))
        elif split_a4:
            axioms.append(("A4a", parse_formula(f"forall x. forall y. (x <= y -> exists z. {a4_sum} = y)")))
            axioms.append(("A4b", parse_formula(f"forall x. forall y. ((exists z. {a4_sum} = y) -> x <= y)")))
        else:
            axioms.append((label, parse_formula(f"forall x. forall y. (x <= y <-> exists z. {a4_sum} = y)")))
    pins = {PRED: parse_formula(Q_PINS[PRED]), DIFF: parse_formula(f"exists z. {a4_sum} = y")}
    name = "Q" if (a4_sum, split_a4) == ("z + x", False) else f"Q[{a4_sum}{', split' if split_a4 else ''}]"
    return TheoryPreset(name, axioms, pins)


def empty_theory() -> TheoryPreset:
    return TheoryPreset("empty", [])


# ---------------------------------------------------------------------------
# Bounded formulas and induction


def _bounded_guard(x: str, g: Formula) -> bool:
    return (isinstance(g, (Atom, NegAtom)) and g.pred == LE and g.args[0] is var(x)
            and x not in g.args[1].variables())


def is_delta0(f: Formula) -> bool:
    """Syntactic recognizer: every quantifier carries a bound ``x <= t``.

    Accepted shapes are ``forall x. (x <= t -> F)``, ``forall x. (x !<= t | F)``
    and ``exists x. (x <= t & F)`` with ``x`` not occurring in ``t``.
    """
    if isinstance(f, LITERALS):
        return True
    if isinstance(f, Not):
        return is_delta0(f.body)
    if isinstance(f, (And, Or, Implies, Iff)):
        return is_delta0(f.left) and is_delta0(f.right)
    body = f.body
    if isinstance(f, Forall):
        if isinstance(body, Implies) and isinstance(body.left, Atom):
            return _bounded_guard(f.var, body.left) and is_delta0(body.right)
        if isinstance(body, Or) and isinstance(body.left, NegAtom):
            return _bounded_guard(f.var, body.left) and is_delta0(body.right)
        return False
    if isinstance(body, And) and isinstance(body.left, Atom):
        return _bounded_guard(f.var, body.left) and is_delta0(body.right)
    return False


def induction_instance(theta: Formula, x: str) -> Formula:
    """``theta(0) & forall x. (theta(x) -> theta(S x)) -> forall x. theta(x)``."""
    if not is_delta0(theta):
        raise NotDelta0("induction formula is not bounded")
    fv = free_vars(theta)
    if fv != [x]:
        raise WrongFreeVariables(f"expected exactly [{x}] free, got {fv}")
    step = Forall(x, Implies(theta, substitute(theta, {x: succ(var(x))})))
    return Implies(And(substitute(theta, {x: ZERO}), step), Forall(x, theta))


THETA_SQ = "exists y. (y <= x * x & y = x * x)"
SQ_PIN = "exists z. (z <= x * x & z = x * x)"
WIT_PIN = ("exists w. ((exists z. (z <= w * w & z = w * w)) & "
           "(forall v. (v !<= S(w) * S(w) | v != S(w) * S(w))))")


def theta_sq() -> Formula:
    return parse_formula(THETA_SQ)


def sentence_b() -> Formula:
    return induction_instance(theta_sq(), "x")


def b_pins() -> dict[str, Formula]:
    return {SQ: parse_formula(SQ_PIN), WIT: parse_formula(WIT_PIN)}


def preset_idelta0(theta: Formula, x: str = "x", name: str = "IDelta0",
                   base: TheoryPreset | None = None) -> TheoryPreset:
    """Q plus the induction instance for ``theta``.  The squaring witness names
    are pinned when ``theta`` is the squaring formula."""
    pins = b_pins() if alpha_equal(theta, theta_sq()) else {}
    base = base if base is not None else preset_q()
    return base.extend(name, [("Ind", induction_instance(theta, x))], pins)


def preset_qb(**q_options) -> TheoryPreset:
    return preset_idelta0(theta_sq(), "x", "Q+B", base=preset_q(**q_options))


# ---------------------------------------------------------------------------
# Term families


def numerals(n: int) -> list[Term]:
    return [numeral(j) for j in range(n + 1)]


def z_terms(n: int) -> list[Term]:
    out = [numeral(2)]
    for _ in range(n):
        out.append(fn(SQ, out[-1]))
    return out


def square(t: Term) -> Term:
    return mul(t, t)


def upsilon() -> list[Term]:
    c = const(WIT)
    sc = succ(c)
    return [
        ZERO, fn("+", ZERO, ZERO), square(ZERO), c, square(c),
        fn("+", square(c), ZERO), sc, fn(SQ, c), square(sc), fn("+", square(sc), ZERO),
    ]


def upsilon_extended(t: Term | None = None) -> list[Term]:
    """Upsilon plus ``t``, ``t*t`` and ``q(t)``; ``t`` defaults to a fresh constant."""
    t = t if t is not None else const("t")
    return upsilon() + [t, square(t), fn(SQ, t)]


# Example: Q proves forall x. (x <= 0 -> x = 0)
LE0_GOAL = "forall x. (x <= 0 -> x = 0)"
LAMBDA7 = [
    "0", "𝔠", "𝔥(𝔠, 0)", "𝔥(𝔠, 0) + 𝔠", "S(𝔭(𝔠))",
    "S(𝔥(𝔠, 0) + 𝔭(𝔠))", "𝔥(𝔠, 0) + S(𝔭(𝔠))",
]
NEG_GOAL_PIN = "exists x. (x <= 0 & x != 0)"


def le0_goal() -> Formula:
    return parse_formula(LE0_GOAL)


def lambda7() -> list[Term]:
    return [parse_ground_term(s) for s in LAMBDA7]


def le0_registry() -> SkolemRegistry:
    reg = preset_q().registry()
    reg.pin(WIT, parse_formula(NEG_GOAL_PIN))
    return reg
