"""Term-universe closure, the Herbrand prover loop and quotient models."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .evaluation import (
    Evaluation, TermSet, UnsatCertificate, as_termset, find_evaluation, normalize_theory,
    theory_instances,
)
from .skolem import SkolemRegistry, skolemize
from .solver import ResourceLimit
from .syntax import (
    ARITHMETIC, EQ, LITERALS, And, Atom, Formula, Not, Or, Signature, Term, ZERO, atom_sides,
    fn, print_term,
)


class BudgetExceeded(RuntimeError):
    """Closure stopped early; ``partial`` holds the last complete level."""

    def __init__(self, message: str, partial: TermSet, sizes: list[int]):
        super().__init__(message)
        self.partial = partial
        self.sizes = sizes


class IllDefinedTable(ValueError):
    pass


@dataclass
class UniverseConfig:
    max_depth: int = 3
    max_terms: int = 200  # per-level cap on the closed set
    max_clauses: int | None = 2_000_000
    max_decisions: int | None = 1_000_000
    code_bound: int | None = None  # only Skolem symbols whose source code is <= this
    signature: Signature = field(default_factory=lambda: ARITHMETIC)
    seed: int | None = None

    def __post_init__(self):
        if self.max_depth < 0 or self.max_terms <= 0:
            raise ValueError("budgets must be positive")


def closure_symbols(reg: SkolemRegistry | None, cfg: UniverseConfig) -> list[tuple[str, int]]:
    syms = [(c, 0) for c in cfg.signature.constants]
    syms += list(cfg.signature.functions.items())
    if reg is not None:
        for s in reg:
            if cfg.code_bound is not None:
                from .coding import code_formula
                if code_formula(s.source) > cfg.code_bound:
                    continue
            syms.append((s.name, s.arity))
    return syms


def closure_levels(lam, k: int, reg: SkolemRegistry | None = None,
                   cfg: UniverseConfig | None = None):
    """Yield the levels 0..k of the closure as term sets."""
    cfg = cfg or UniverseConfig()
    cur = TermSet(as_termset(lam).members)
    syms = closure_symbols(reg, cfg)
    sizes = [len(cur)]
    yield cur
    for _ in range(k):
        nxt = TermSet(cur.members)
        base = list(cur.members)
        for name, ar in syms:
            for args in itertools.product(base, repeat=ar):
                nxt.add(fn(name, *args))
                if len(nxt) > cfg.max_terms:
                    raise BudgetExceeded(f"closure exceeds {cfg.max_terms} terms", cur, sizes)
        cur = nxt
        sizes.append(len(cur))
        yield cur


def close_universe(lam, k: int, reg: SkolemRegistry | None = None,
                   cfg: UniverseConfig | None = None) -> TermSet:
    if k < 0:
        raise ValueError("depth must be >= 0")
    out = None
    for out in closure_levels(lam, k, reg, cfg):
        pass
    return out


def closure_sizes(lam, k: int, reg: SkolemRegistry | None = None,
                  cfg: UniverseConfig | None = None) -> list[int]:
    return [len(level) for level in closure_levels(lam, k, reg, cfg)]


def recurrence_constant(reg: SkolemRegistry | None, cfg: UniverseConfig | None = None) -> int:
    """``M``: the larger of the symbol count and the maximal arity."""
    syms = closure_symbols(reg, cfg or UniverseConfig())
    return max(len(syms), max((a for _, a in syms), default=0), 1)


def recurrence_violations(sizes: Sequence[int], m: int) -> list[int]:
    """Levels ``k`` where ``s[k+1] > s[k] + m*s[k]**m + k*s[k]**k`` fails to hold."""
    return [k for k in range(len(sizes) - 1)
            if sizes[k + 1] > sizes[k] + m * sizes[k] ** m + k * sizes[k] ** k]


# ---------------------------------------------------------------------------
# Prover


@dataclass
class ProveResult:
    status: str  # proved | evaluation-found | budget-exhausted
    stage: int
    lam: TermSet
    sizes: list[int]
    certificate: UnsatCertificate | None = None
    evaluation: Evaluation | None = None
    reason: str = ""

    @property
    def exit_code(self) -> int:
        return {"proved": 0, "evaluation-found": 1, "budget-exhausted": 2}[self.status]


def ground_subterms(formulas: Sequence[Formula]) -> list[Term]:
    seen: dict[Term, None] = {}
    for f in formulas:
        for side in atom_sides(f):
            for u in side.subterms():
                if u.is_ground:
                    seen.setdefault(u, None)
    return list(seen)


def prover_seed(theory, goal: Formula, reg: SkolemRegistry) -> TermSet:
    forms = [skolemize(f, reg) for _, f in normalize_theory(theory)]
    forms.append(skolemize(Not(goal), reg))
    return TermSet([ZERO] + ground_subterms(forms))


def herbrand_prove(theory, goal: Formula, cfg: UniverseConfig | None = None,
                   reg: SkolemRegistry | None = None, lam=None) -> ProveResult:
    """Look for a term set carrying no evaluation of ``theory + ~goal``.

    Starting from ``lam`` (or the ground terms of the Skolemized problem plus
    0), each stage runs the evaluation search and then closes the set by one
    level.  ``evaluation-found`` means every stage up to ``max_depth`` had an
    evaluation; this is not a refutation of the goal.
    """
    from .syntax import free_vars
    if free_vars(goal):
        raise ValueError("goal must be a sentence")
    cfg = cfg or UniverseConfig()
    reg = reg if reg is not None else SkolemRegistry()
    axioms = normalize_theory(theory) + [("neg-goal", Not(goal))]
    cur = as_termset(lam) if lam is not None else prover_seed(theory, goal, reg)
    # the override is searched once; the closure loop only runs from a seed
    last_stage = 0 if lam is not None else cfg.max_depth
    sizes = [len(cur)]
    stage = 0
    while True:
        try:
            r = find_evaluation(axioms, cur, reg, seed=cfg.seed,
                                max_decisions=cfg.max_decisions, max_clauses=cfg.max_clauses)
        except ResourceLimit as e:
            return ProveResult("budget-exhausted", stage, cur, sizes, reason=str(e))
        if isinstance(r, UnsatCertificate):
            return ProveResult("proved", stage, cur, sizes, certificate=r)
        if stage >= last_stage:
            return ProveResult("evaluation-found", stage, cur, sizes, evaluation=r)
        try:
            cur = close_universe(cur, 1, reg, cfg)
        except BudgetExceeded as e:
            return ProveResult("budget-exhausted", stage, cur, sizes, evaluation=r, reason=str(e))
        stage += 1
        sizes.append(len(cur))


# ---------------------------------------------------------------------------
# Quotient structure


@dataclass
class QuotientStructure:
    lam: TermSet
    classes: list[list[Term]]
    class_of: dict[Term, int]
    functions: dict[str, dict[tuple[int, ...], int]]
    relations: dict[str, dict[tuple[int, ...], bool]]

    def value(self, t: Term) -> int:
        if t in self.class_of:
            return self.class_of[t]
        table = self.functions.get(t.head, {})
        key = tuple(self.value(a) for a in t.args)
        if key not in table:
            raise KeyError(f"{print_term(t)} is outside the finite fragment")
        return table[key]

    def holds(self, g: Formula) -> bool:
        if isinstance(g, LITERALS):
            key = tuple(self.value(a) for a in g.args)
            if g.pred == EQ:
                v = key[0] == key[1]
            else:
                v = self.relations[g.pred][key]
            return v if isinstance(g, Atom) else not v
        if isinstance(g, And):
            return self.holds(g.left) and self.holds(g.right)
        if isinstance(g, Or):
            return self.holds(g.left) or self.holds(g.right)
        if isinstance(g, Not):
            return not self.holds(g.body)
        raise TypeError("ground quantifier-free formula expected")

    def to_json(self) -> dict:
        name = lambda i: print_term(self.classes[i][0], unicode=True)
        return {
            "classes": [[print_term(t, unicode=True) for t in c] for c in self.classes],
            "functions": {f: sorted([[*(name(a) for a in k), name(v)] for k, v in tab.items()])
                          for f, tab in sorted(self.functions.items())},
            "relations": {r: sorted([[*(name(a) for a in k)] for k, v in tab.items() if v])
                          for r, tab in sorted(self.relations.items())},
        }


def herbrand_model(lam, p: Evaluation) -> QuotientStructure:
    """Quotient of ``lam`` by ``t ~ s iff p[t=s]=1``, with the (partial)
    function and relation tables.  Raises :class:`IllDefinedTable` if the
    tables depend on the choice of representatives."""
    lam = as_termset(lam)
    if p.lam.members != lam.members:
        raise ValueError("evaluation lives on a different term set")
    # union-find over the true equations
    parent = list(range(len(lam)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    members = lam.members
    for i, j in itertools.combinations(range(len(members)), 2):
        if p.equal(members[i], members[j]):
            parent[find(j)] = find(i)
    roots: dict[int, int] = {}
    classes: list[list[Term]] = []
    class_of: dict[Term, int] = {}
    for i, t in enumerate(members):
        r = find(i)
        if r not in roots:
            roots[r] = len(classes)
            classes.append([])
        classes[roots[r]].append(t)
        class_of[t] = roots[r]
    # union-find would hide a non-transitive p; check the class structure
    for c in classes:
        for t, s in itertools.combinations(c, 2):
            if not p.equal(t, s) or not p.equal(s, t):
                raise IllDefinedTable(f"{print_term(t)} and {print_term(s)} share a class but p[t=s]=0")

    functions: dict[str, dict[tuple[int, ...], int]] = {}
    for t in members:
        if not t.args or not all(a in lam for a in t.args):
            continue
        key = tuple(class_of[a] for a in t.args)
        tab = functions.setdefault(t.head, {})
        old = tab.setdefault(key, class_of[t])
        if old != class_of[t]:
            raise IllDefinedTable(f"{t.head} on classes {key} has two values")
    relations: dict[str, dict[tuple[int, ...], bool]] = {}
    for ai, (pred, args) in enumerate(p.table.atoms):
        key = tuple(class_of[a] for a in args)
        tab = relations.setdefault(pred, {})
        v = bool(p.values[ai])
        old = tab.setdefault(key, v)
        if old != v:
            raise IllDefinedTable(f"{pred} on classes {key} depends on representatives")
    return QuotientStructure(lam, classes, class_of, functions, relations)


def quotient_violations(qs: QuotientStructure, theory, reg: SkolemRegistry) -> list[str]:
    """Available instances of ``theory`` that fail in the quotient."""
    return [inst.describe() for inst in theory_instances(theory, qs.lam, reg)
            if not qs.holds(inst.ground)]
