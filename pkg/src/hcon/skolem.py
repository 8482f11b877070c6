"""Skolem symbols, non-prenex Skolemization and available Skolem instances."""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .normalize import canonical, is_rnnf, to_rnnf
from .syntax import (
    BINARY, LITERALS, And, Exists, Forall, Formula, Not, Or, Term, atom_sides,
    fn, free_vars, print_formula, substitute,
)

_SUBSCRIPTS = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")


@dataclass
class SkolemSymbol:
    name: str
    arity: int
    source: Formula  # the existential formula the symbol witnesses


class SkolemRegistry:
    """Maps existential formulas (up to variable renaming) to Skolem symbols.

    Fresh symbols are named 𝔣₀, 𝔣₁, ...; :meth:`pin` reserves a chosen name
    for a given existential formula before Skolemization runs.
    """

    def __init__(self, prefix: str = "𝔣"):
        self.prefix = prefix
        self._by_key: dict[object, SkolemSymbol] = {}
        self._by_name: dict[str, SkolemSymbol] = {}
        self._counter = 0
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._by_name)

    def __contains__(self, name: str) -> bool:
        return name in self._by_name

    def __iter__(self):
        return iter(list(self._by_name.values()))

    def symbols(self) -> dict[str, int]:
        return {s.name: s.arity for s in self._by_name.values()}

    def get(self, name: str) -> SkolemSymbol:
        return self._by_name[name]

    def lookup(self, existential: Formula) -> SkolemSymbol | None:
        return self._by_key.get(canonical(existential))

    def pin(self, name: str, existential: Formula) -> SkolemSymbol:
        if not isinstance(existential, Exists):
            raise TypeError("Skolem symbols are keyed by existential formulas")
        key = canonical(existential)
        with self._lock:
            old = self._by_key.get(key)
            if old is not None:
                if old.name != name:
                    raise ValueError(f"{print_formula(existential)} already named {old.name}")
                return old
            if name in self._by_name:
                raise ValueError(f"Skolem name {name} already in use")
            sym = SkolemSymbol(name, len(free_vars(existential)), existential)
            self._by_key[key] = sym
            self._by_name[name] = sym
            return sym

    def symbol_for(self, existential: Formula) -> SkolemSymbol:
        key = canonical(existential)
        sym = self._by_key.get(key)
        if sym is not None:
            return sym
        with self._lock:
            sym = self._by_key.get(key)
            if sym is None:
                while True:
                    name = f"{self.prefix}{str(self._counter).translate(_SUBSCRIPTS)}"
                    self._counter += 1
                    if name not in self._by_name:
                        break
                sym = SkolemSymbol(name, len(free_vars(existential)), existential)
                self._by_key[key] = sym
                self._by_name[name] = sym
            return sym

    def table(self) -> list[tuple[str, int, str]]:
        return [(s.name, s.arity, print_formula(s.source)) for s in self._by_name.values()]


def skolem_s(f: Formula, reg: SkolemRegistry) -> Formula:
    """Replace each existential by its Skolem term, keeping universals in place."""
    if not is_rnnf(f):
        raise ValueError("skolem_s expects an RNNF formula")
    return _s(f, reg)


def _s(f: Formula, reg: SkolemRegistry) -> Formula:
    if isinstance(f, LITERALS):
        return f
    if isinstance(f, (And, Or)):
        return type(f)(_s(f.left, reg), _s(f.right, reg))
    if isinstance(f, Forall):
        return Forall(f.var, _s(f.body, reg))
    sym = reg.symbol_for(f)
    from .syntax import var  # local: avoid shadowing in signatures above
    witness = fn(sym.name, *(var(y) for y in free_vars(f)))
    return substitute(_s(f.body, reg), {f.var: witness})


def strip_universals(f: Formula) -> Formula:
    if isinstance(f, LITERALS):
        return f
    if isinstance(f, (And, Or)):
        return type(f)(strip_universals(f.left), strip_universals(f.right))
    if isinstance(f, Forall):
        return strip_universals(f.body)
    raise ValueError("existential quantifier left after Skolemization")


def skolemize(f: Formula, reg: SkolemRegistry) -> Formula:
    """The open Skolemized form: RNNF, then the S-map, then drop universals."""
    return strip_universals(skolem_s(to_rnnf(f), reg))


# ---------------------------------------------------------------------------
# Instances


@dataclass(frozen=True)
class SkolemInstance:
    source: Formula
    substitution: tuple[tuple[str, Term], ...]
    ground: Formula
    label: str = ""

    @property
    def subst(self) -> dict[str, Term]:
        return dict(self.substitution)

    def describe(self) -> str:
        binds = ", ".join(f"{v}:={t}" for v, t in self.substitution)
        return f"{self.label or 'axiom'}[{binds}]" if binds else (self.label or "axiom")


def subterm_closure(terms: Iterable[Term]) -> list[Term]:
    """All subterms of ``terms``, in first-seen pre-order, without repeats."""
    seen: dict[Term, None] = {}
    for t in terms:
        for u in t.subterms():
            seen.setdefault(u, None)
    return list(seen)


def match(pattern: Term, term: Term, binding: Mapping[str, Term]) -> dict[str, Term] | None:
    """One-way matching of ``pattern`` against the ground ``term``."""
    out = dict(binding)
    stack = [(pattern, term)]
    while stack:
        p, t = stack.pop()
        if p.is_var:
            bound = out.get(p.head)
            if bound is None:
                out[p.head] = t
            elif bound is not t:
                return None
        elif p._ground:
            if p is not t:
                return None
        elif p.head != t.head or len(p.args) != len(t.args) or t.is_var:
            return None
        else:
            stack.extend(zip(p.args, t.args))
    return out


def available_substitutions(open_form: Formula, members: Sequence[Term]) -> list[dict[str, Term]]:
    """Substitutions of the free variables of ``open_form`` under which every
    atom side lands in ``members``.  Values may themselves lie outside."""
    sides = list(dict.fromkeys(atom_sides(open_form)))
    member_set = set(members)
    variables = free_vars(open_form)
    # ground sides either are members or kill every instance
    for s in sides:
        if s.is_ground and s not in member_set:
            return []
    patterns = [s for s in sides if not s.is_ground]
    # most structured first: fewer candidates survive matching
    patterns.sort(key=lambda p: (-p.depth, -len(p.variables())))
    by_head: dict[tuple[str, int], list[Term]] = {}
    for m in members:
        by_head.setdefault((m.head, len(m.args)), []).append(m)

    results: list[dict[str, Term]] = []

    def go(i: int, binding: dict[str, Term]) -> None:
        if i == len(patterns):
            results.append(binding)
            return
        p = patterns[i]
        if p.is_var:
            bound = binding.get(p.head)
            if bound is not None:
                if bound in member_set:
                    go(i + 1, binding)
                return
            for m in members:
                go(i + 1, {**binding, p.head: m})
            return
        for m in by_head.get((p.head, len(p.args)), ()):
            b = match(p, m, binding)
            if b is not None:
                go(i + 1, b)

    go(0, {})
    if not variables:
        return [{}] if results else []
    order = {t: i for i, t in enumerate(subterm_closure(members))}
    uniq = {tuple(b[v] for v in variables): b for b in results}
    keys = sorted(uniq, key=lambda k: tuple(order[t] for t in k))
    return [{v: uniq[k][v] for v in variables} for k in keys]


def available_instances(f: Formula, lam: Iterable[Term], reg: SkolemRegistry,
                        label: str = "") -> list[SkolemInstance]:
    """Skolem instances of ``f`` available in ``lam``: every atom side of the
    instance is a member of ``lam``."""
    members = list(lam)
    open_form = skolemize(f, reg)
    variables = free_vars(open_form)
    out = []
    for b in available_substitutions(open_form, members):
        pairs = tuple((v, b[v]) for v in variables)
        out.append(SkolemInstance(f, pairs, substitute(open_form, b), label))
    return out


def brute_force_substitutions(open_form: Formula, members: Sequence[Term]) -> list[dict[str, Term]]:
    """Reference enumeration: every substitution from the subterm closure,
    filtered by the atom-side test.  Exponential; for tests only."""
    variables = free_vars(open_form)
    pool = subterm_closure(members)
    member_set = set(members)
    out = []
    for values in itertools.product(pool, repeat=len(variables)):
        b = dict(zip(variables, values))
        if all(s in member_set for s in atom_sides(substitute(open_form, b))):
            out.append(b)
    return out


def is_ground_qf(f: Formula) -> bool:
    if isinstance(f, LITERALS):
        return all(a.is_ground for a in f.args)
    if isinstance(f, BINARY):
        return is_ground_qf(f.left) and is_ground_qf(f.right)
    if isinstance(f, Not):
        return is_ground_qf(f.body)
    return False
