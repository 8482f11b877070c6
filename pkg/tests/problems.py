"""Random tiny ground problems for oracle comparisons."""

from __future__ import annotations

import random

from hcon.syntax import Atom, NegAtom, disj, parse_ground_term

POOL = [parse_ground_term(s) for s in (
    "0", "c", "d", "S(0)", "S(c)", "c + 0", "0 + c", "f(c)", "f(0)", "c * c", "S(S(0))",
)]


def random_problem(rng: random.Random, max_terms: int = 3, max_clauses: int = 4):
    """``(lam, theory)``: a term set of at most ``max_terms`` members and a
    ground theory of at most ``max_clauses`` clauses over its atoms.  Short
    clauses are favoured so that unsatisfiable cases are not rare."""
    lam = rng.sample(POOL, rng.randint(1, max_terms))
    theory = []
    for k in range(rng.randint(1, max_clauses)):
        width = rng.choices([1, 2, 3], weights=[5, 3, 1])[0]
        lits = []
        for _ in range(width):
            a, b = rng.choice(lam), rng.choice(lam)
            pred = rng.choice(["=", "=", "<="])
            cls = rng.choice([Atom, NegAtom])
            lits.append(cls(pred, (a, b)))
        theory.append((f"C{k}", disj(lits)))
    return lam, theory
