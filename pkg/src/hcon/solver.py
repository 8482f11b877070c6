"""A small DPLL solver: two watched literals, chronological backtracking.

Literals are nonzero ints in DIMACS style (variable ``v`` is ``v + 1``).
Besides a model, an UNSAT run reports which clauses took part in some
conflict; that set is itself unsatisfiable and is what certificates carry.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence


class ResourceLimit(RuntimeError):
    """The configured search budget ran out before an answer was found."""


@dataclass
class SolveResult:
    sat: bool
    model: list[int] | None = None  # 0/1 per variable
    core: list[int] = field(default_factory=list)  # clause indices
    propagation_only: bool = False
    # level-0 trail: (literal, reason clause index) leading to the first conflict
    chain: list[tuple[int, int]] = field(default_factory=list)
    conflict: int = -1
    decisions: int = 0


def _var(lit: int) -> int:
    return abs(lit) - 1


def solve(nvars: int, clauses: Sequence[Sequence[int]], *, order: Sequence[int] | None = None,
          polarity: Sequence[int] | None = None, seed: int | None = None,
          max_decisions: int | None = None) -> SolveResult:
    """Decide satisfiability of ``clauses`` over ``nvars`` variables.

    Without ``seed``, variables are branched in index order (or ``order``),
    trying value 1 first (or ``polarity``).  A seed shuffles both.
    """
    if order is None:
        order = list(range(nvars))
    else:
        order = list(order)
    if polarity is None:
        polarity = [1] * nvars
    else:
        polarity = list(polarity)
    if seed is not None:
        rng = random.Random(seed)
        rng.shuffle(order)
        polarity = [rng.randint(0, 1) for _ in range(nvars)]

    val = [0] * nvars  # 0 unassigned, 1 true, -1 false
    reason = [-1] * nvars
    level = [0] * nvars
    trail: list[int] = []
    lims: list[int] = []
    flipped: list[bool] = []
    watches: dict[int, list[int]] = {}
    cls: list[list[int]] = []
    units: list[tuple[int, int]] = []
    core: set[int] = set()

    for ci, c in enumerate(clauses):
        c = list(dict.fromkeys(c))
        cls.append(c)
        if not c:
            return SolveResult(False, core=[ci], propagation_only=True, conflict=ci)
        if len(c) == 1:
            units.append((c[0], ci))
        else:
            watches.setdefault(c[0], []).append(ci)
            watches.setdefault(c[1], []).append(ci)

    def lit_val(lit: int) -> int:
        v = val[abs(lit) - 1]
        return v if lit > 0 else -v

    def assign(lit: int, why: int) -> None:
        v = abs(lit) - 1
        val[v] = 1 if lit > 0 else -1
        reason[v] = why
        level[v] = len(lims)
        trail.append(lit)

    def analyze(ci: int) -> None:
        # every reason must be retraced: the same clause may be falsified
        # by different implications in different branches
        stack = [ci]
        seen: set[int] = {ci}
        while stack:
            c = stack.pop()
            core.add(c)
            for lit in cls[c]:
                r = reason[abs(lit) - 1]
                if r >= 0 and r not in seen:
                    seen.add(r)
                    stack.append(r)

    qhead = 0

    def propagate() -> int:
        nonlocal qhead
        while qhead < len(trail):
            false_lit = -trail[qhead]
            qhead += 1
            wl = watches.get(false_lit)
            if not wl:
                continue
            i = 0
            while i < len(wl):
                ci = wl[i]
                c = cls[ci]
                if c[0] == false_lit:
                    c[0], c[1] = c[1], c[0]
                if lit_val(c[0]) == 1:
                    i += 1
                    continue
                for k in range(2, len(c)):
                    if lit_val(c[k]) != -1:
                        c[1], c[k] = c[k], c[1]
                        watches.setdefault(c[1], []).append(ci)
                        wl[i] = wl[-1]
                        wl.pop()
                        break
                else:
                    if lit_val(c[0]) == -1:
                        return ci
                    assign(c[0], ci)
                    i += 1
        return -1

    def undo_to(n: int) -> None:
        nonlocal qhead
        while len(trail) > n:
            lit = trail.pop()
            v = abs(lit) - 1
            val[v] = 0
            reason[v] = -1
        qhead = min(qhead, n)

    # level-0 units
    for lit, ci in units:
        lv = lit_val(lit)
        if lv == -1:
            analyze(ci)
            return SolveResult(False, core=sorted(core), propagation_only=True,
                               chain=[(l, reason[_var(l)]) for l in trail], conflict=ci)
        if lv == 0:
            assign(lit, ci)

    decisions = 0
    first_conflict = True
    chain: list[tuple[int, int]] = []
    conflict_at = -1
    ptr = 0
    while True:
        confl = propagate()
        if confl >= 0:
            analyze(confl)
            if first_conflict:
                first_conflict = False
                conflict_at = confl
                chain = [(l, reason[_var(l)]) for l in trail if level[_var(l)] == 0]
            while flipped and flipped[-1]:
                undo_to(lims.pop())
                flipped.pop()
            if not lims:
                return SolveResult(False, core=sorted(core), propagation_only=decisions == 0,
                                   chain=chain, conflict=conflict_at, decisions=decisions)
            start = lims[-1]
            dlit = trail[start]
            undo_to(start)
            flipped[-1] = True
            assign(-dlit, -1)
            ptr = 0
            continue
        while ptr < nvars and val[order[ptr]] != 0:
            ptr += 1
        if ptr == nvars:
            model = [1 if v == 1 else 0 for v in val]
            return SolveResult(True, model=model, decisions=decisions)
        if max_decisions is not None and decisions >= max_decisions:
            raise ResourceLimit(f"decision budget {max_decisions} exhausted")
        decisions += 1
        v = order[ptr]
        lims.append(len(trail))
        flipped.append(False)
        assign(v + 1 if polarity[v] else -(v + 1), -1)


def naive_unsat(nvars: int, clauses: Sequence[Sequence[int]], limit: int = 2_000_000) -> bool:
    """Reference check by plain recursive splitting; independent of :func:`solve`."""
    steps = 0

    def simplify(cs: list[frozenset[int]], lit: int) -> list[frozenset[int]] | None:
        out = []
        for c in cs:
            if lit in c:
                continue
            if -lit in c:
                c = c - {-lit}
                if not c:
                    return None
            out.append(c)
        return out

    def rec(cs: list[frozenset[int]]) -> bool:  # True iff unsatisfiable
        nonlocal steps
        steps += 1
        if steps > limit:
            raise ResourceLimit("naive replay budget exhausted")
        while True:
            unit = next((c for c in cs if len(c) == 1), None)
            if unit is None:
                break
            cs = simplify(cs, next(iter(unit)))
            if cs is None:
                return True
        if not cs:
            return False
        lit = next(iter(cs[0]))
        for choice in (lit, -lit):
            nxt = simplify(cs, choice)
            if nxt is not None and not rec(nxt):
                return False
        return True

    cs = [frozenset(c) for c in clauses]
    if any(not c for c in cs):
        return True
    return rec(cs)


def check_model(clauses: Sequence[Sequence[int]], model: Sequence[int]) -> bool:
    return all(any((model[abs(l) - 1] == 1) == (l > 0) for l in c) for c in clauses)
