"""Atoms over a finite term set, evaluations and their search.

An evaluation assigns 0/1 to every atom ``R(t1, ..., tn)`` with all ``ti`` in
the term set.  It must make ``t = t`` true, and whenever ``t = s`` is true
any two atoms that differ by replacing occurrences of ``t`` with ``s`` (at any
depth, any subset of occurrences) must get the same value.  Equality must also
be a congruence for function symbols on members of the set.

:func:`find_evaluation` grounds all of this into clauses and runs the DPLL
solver.  :func:`check_evaluation` and :func:`enumerate_all` re-derive the same
conditions by separate code paths and serve as oracles.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from .skolem import SkolemInstance, SkolemRegistry, available_instances, subterm_closure
from .solver import ResourceLimit, check_model, naive_unsat, solve
from .syntax import (
    EQ, LE, LITERALS, And, Atom, Formula, NegAtom, Not, Or, Term, print_formula,
    print_term,
)

__all__ = [
    "AtomNotInTable", "AtomTable", "Encoding", "Evaluation", "MissingInterpretation",
    "ResourceLimit", "TermSet", "UnsatCertificate", "build_encoding", "check_certificate",
    "check_evaluation", "enumerate_all", "enumerate_assignments", "find_evaluation",
    "normalize_theory", "satisfies", "standard_evaluation",
]


class AtomNotInTable(KeyError):
    pass


class MissingInterpretation(KeyError):
    pass


class TermSet:
    """A finite, insertion-ordered set of ground terms."""

    def __init__(self, members: Iterable[Term] = ()):
        self._index: dict[Term, int] = {}
        self.members: list[Term] = []
        for t in members:
            self.add(t)

    def add(self, t: Term) -> bool:
        if not t.is_ground:
            raise ValueError(f"term set members must be ground: {t}")
        if t in self._index:
            return False
        self._index[t] = len(self.members)
        self.members.append(t)
        return True

    def index(self, t: Term) -> int:
        return self._index[t]

    def __contains__(self, t: object) -> bool:
        return t in self._index

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, i: int) -> Term:
        return self.members[i]

    def lookup(self, head: str, args: Sequence[Term]) -> Term | None:
        """The member ``head(args)`` if present (terms are interned)."""
        from .syntax import fn
        t = fn(head, *args)
        return t if t in self._index else None

    def subterm_closure(self) -> list[Term]:
        return subterm_closure(self.members)

    def __repr__(self) -> str:
        return "TermSet{" + ", ".join(print_term(t) for t in self.members) + "}"


def as_termset(lam) -> TermSet:
    return lam if isinstance(lam, TermSet) else TermSet(lam)


class AtomTable:
    """All atoms ``R(t1..tn)`` with ``R`` a predicate and ``ti`` in the term set,
    ordered by predicate, then lexicographically by member index."""

    def __init__(self, lam: TermSet, predicates: Mapping[str, int] | None = None):
        self.lam = lam
        self.predicates = dict(predicates) if predicates is not None else {EQ: 2, LE: 2}
        if self.predicates.get(EQ) != 2:
            raise ValueError("equality must be a binary predicate")
        self.atoms: list[tuple[str, tuple[Term, ...]]] = []
        self._id: dict[tuple[str, tuple[Term, ...]], int] = {}
        for pred, ar in self.predicates.items():
            for args in itertools.product(lam.members, repeat=ar):
                self._id[(pred, args)] = len(self.atoms)
                self.atoms.append((pred, args))

    def __len__(self) -> int:
        return len(self.atoms)

    def id(self, pred: str, args: Sequence[Term]) -> int:
        try:
            return self._id[(pred, tuple(args))]
        except KeyError:
            raise AtomNotInTable(f"{pred}{tuple(print_term(a) for a in args)}") from None

    def get(self, pred: str, args: Sequence[Term]) -> int | None:
        return self._id.get((pred, tuple(args)))

    def eq(self, t: Term, s: Term) -> int:
        return self.id(EQ, (t, s))

    def label(self, i: int) -> str:
        pred, args = self.atoms[i]
        return print_formula(Atom(pred, args), unicode=True)


def _lit_atom(table: AtomTable, lit: Atom | NegAtom) -> int:
    return table.id(lit.pred, lit.args)


@dataclass(frozen=True)
class Evaluation:
    table: AtomTable
    values: tuple[int, ...]

    @property
    def lam(self) -> TermSet:
        return self.table.lam

    def __getitem__(self, atom: Atom | NegAtom | int) -> int:
        if isinstance(atom, int):
            return self.values[atom]
        v = self.values[_lit_atom(self.table, atom)]
        return v if isinstance(atom, Atom) else 1 - v

    def equal(self, t: Term, s: Term) -> bool:
        return self.values[self.table.eq(t, s)] == 1

    def classes(self) -> list[list[Term]]:
        """The classes of ``t ~ s iff p[t=s]=1``, by first member."""
        out: list[list[Term]] = []
        for t in self.lam:
            for c in out:
                if self.equal(c[0], t):
                    c.append(t)
                    break
            else:
                out.append([t])
        return out

    def true_atoms(self) -> list[str]:
        return [self.table.label(i) for i, v in enumerate(self.values) if v]

    def to_json(self) -> dict:
        return {
            "atoms": [{"atom": self.table.label(i), "value": v} for i, v in enumerate(self.values)],
            "classes": [[print_term(t, unicode=True) for t in c] for c in self.classes()],
        }


def satisfies(p: Evaluation, g: Formula) -> bool:
    if isinstance(g, LITERALS):
        return p[g] == 1
    if isinstance(g, And):
        return satisfies(p, g.left) and satisfies(p, g.right)
    if isinstance(g, Or):
        return satisfies(p, g.left) or satisfies(p, g.right)
    if isinstance(g, Not):
        return not satisfies(p, g.body)
    raise TypeError(f"not a ground quantifier-free formula: {print_formula(g)}")


# ---------------------------------------------------------------------------
# Theories


def normalize_theory(theory) -> list[tuple[str, Formula]]:
    """Accept a preset, a list of formulas or a list of (label, formula)."""
    if hasattr(theory, "axioms"):
        return list(theory.axioms)
    out = []
    for i, item in enumerate(theory):
        if isinstance(item, tuple):
            out.append(item)
        else:
            out.append((f"T{i + 1}", item))
    return out


def theory_instances(theory, lam, reg: SkolemRegistry) -> list[SkolemInstance]:
    members = as_termset(lam).members
    out: list[SkolemInstance] = []
    for label, f in normalize_theory(theory):
        out.extend(available_instances(f, members, reg, label))
    return out


# ---------------------------------------------------------------------------
# Encoding


def _variants(u: Term, t: Term, s: Term, keep: set[Term], memo: dict) -> frozenset[Term]:
    """Terms obtained from ``u`` by replacing any subset of the occurrences of
    ``t`` with ``s``; only results inside ``keep`` are retained."""
    key = (u, t, s)
    r = memo.get(key)
    if r is not None:
        return r
    if u is t:
        out = {u, s}
    elif not u.args:
        out = {u}
    else:
        from .syntax import fn
        options = [_variants(a, t, s, keep, memo) for a in u.args]
        out = {u}
        for combo in itertools.product(*options):
            v = fn(u.head, *combo)
            if v in keep:
                out.add(v)
    r = frozenset(x for x in out if x in keep)
    memo[key] = r
    return r


@dataclass
class Origin:
    kind: str  # instance | reflexivity | replacement | congruence | extra
    detail: str
    instance: SkolemInstance | None = None
    data: tuple = ()


@dataclass
class Encoding:
    table: AtomTable
    clauses: list[list[int]]
    origins: list[Origin]
    instances: list[SkolemInstance]
    extra: list[Formula]

    @property
    def nvars(self) -> int:
        return len(self.table)


def _cnf(g: Formula, table: AtomTable) -> list[list[int]]:
    if isinstance(g, Atom):
        return [[table.id(g.pred, g.args) + 1]]
    if isinstance(g, NegAtom):
        return [[-(table.id(g.pred, g.args) + 1)]]
    if isinstance(g, And):
        return _cnf(g.left, table) + _cnf(g.right, table)
    if isinstance(g, Or):
        left, right = _cnf(g.left, table), _cnf(g.right, table)
        return [a + b for a in left for b in right]
    if isinstance(g, Not):
        from .normalize import to_nnf
        return _cnf(to_nnf(g), table)
    raise TypeError("instances must be quantifier-free")


def _tidy(clause: list[int]) -> list[int] | None:
    c = list(dict.fromkeys(clause))
    s = set(c)
    if any(-l in s for l in c):
        return None
    return c


def build_encoding(theory, lam, reg: SkolemRegistry, *, extra: Sequence[Formula] = (),
                   predicates: Mapping[str, int] | None = None,
                   max_clauses: int | None = None) -> Encoding:
    lam = as_termset(lam)
    if not len(lam):
        raise ValueError("term set must be nonempty")
    table = AtomTable(lam, predicates)
    clauses: list[list[int]] = []
    origins: list[Origin] = []
    seen: set[frozenset[int]] = set()

    def add(clause: list[int], origin: Origin) -> None:
        c = _tidy(clause)
        if c is None:
            return
        key = frozenset(c)
        if key in seen:
            return
        seen.add(key)
        clauses.append(c)
        origins.append(origin)
        if max_clauses is not None and len(clauses) > max_clauses:
            raise ResourceLimit(f"clause budget {max_clauses} exceeded")

    members = lam.members
    for t in members:
        add([table.eq(t, t) + 1], Origin("reflexivity", f"{print_term(t, True)} = {print_term(t, True)}", data=(t,)))

    instances = theory_instances(theory, lam, reg)
    for inst in instances:
        for c in _cnf(inst.ground, table):
            add(c, Origin("instance", inst.describe(), inst))
    for i, g in enumerate(extra):
        for c in _cnf(g, table):
            add(c, Origin("extra", print_formula(g, unicode=True), data=(g,)))

    # function congruence between members with the same head
    by_head: dict[tuple[str, int], list[Term]] = {}
    for t in members:
        if t.args and all(a in lam for a in t.args):
            by_head.setdefault((t.head, len(t.args)), []).append(t)
    for group in by_head.values():
        for u, v in itertools.combinations(group, 2):
            hyps = [-(table.eq(a, b) + 1) for a, b in zip(u.args, v.args) if a is not b]
            add(hyps + [table.eq(u, v) + 1],
                Origin("congruence", f"{print_term(u, True)} = {print_term(v, True)}", data=(u, v)))

    # replacement: t = s makes an atom and any of its t->s variants agree
    keep = set(lam.subterm_closure())
    memo: dict = {}
    for ai, (pred, args) in enumerate(table.atoms):
        occurring = {x for a in args for x in a.subterms() if x in lam}
        for t in occurring:
            for s in members:
                if s is t:
                    continue
                eq_lit = table.eq(t, s) + 1
                for combo in itertools.product(*(_variants(a, t, s, keep, memo) for a in args)):
                    bi = table.get(pred, combo)
                    if bi is None or bi == ai:
                        continue
                    o = Origin("replacement", f"{print_term(t, True)} := {print_term(s, True)}",
                               data=(t, s, ai, bi))
                    add([-eq_lit, -(ai + 1), bi + 1], o)
                    add([-eq_lit, ai + 1, -(bi + 1)], o)
    return Encoding(table, clauses, origins, instances, list(extra))


# ---------------------------------------------------------------------------
# Certificates


@dataclass
class UnsatCertificate:
    encoding: Encoding
    core: list[int]
    propagation_only: bool
    chain: list[tuple[int, int]]
    conflict: int

    @property
    def table(self) -> AtomTable:
        return self.encoding.table

    def core_clauses(self) -> list[list[int]]:
        return [self.encoding.clauses[i] for i in self.core]

    def atoms(self) -> list[int]:
        return sorted({abs(l) - 1 for c in self.core_clauses() for l in c})

    def instance_labels(self) -> list[str]:
        out = []
        for i in self.core:
            o = self.encoding.origins[i]
            if o.kind == "instance" and o.detail not in out:
                out.append(o.detail)
        return out

    def _lit(self, lit: int) -> str:
        s = self.table.label(abs(lit) - 1)
        if lit > 0:
            return s
        return s.replace(" = ", " ≠ ", 1).replace(" ≤ ", " ≰ ", 1)

    def chain_lines(self) -> list[str]:
        """Human-readable derivation: each propagated atom with its origin,
        restricted to steps the final conflict depends on."""
        needed = set(self.core)
        lines = []
        for lit, why in self.chain:
            if why < 0 or why not in needed:
                continue
            o = self.encoding.origins[why]
            if o.kind == "reflexivity":
                continue
            lines.append(f"{self._lit(lit)}    [{o.kind}: {o.detail}]")
        if self.conflict >= 0:
            o = self.encoding.origins[self.conflict]
            lines.append(f"⊥    [{o.kind}: {o.detail}]")
        return lines

    def to_json(self) -> dict:
        lines = []
        for i in self.core:
            o = self.encoding.origins[i]
            lits = " ∨ ".join(self._lit(l) for l in self.encoding.clauses[i])
            lines.append({"kind": o.kind, "origin": o.detail, "clause": lits})
        return {
            "propagation_only": self.propagation_only,
            "instances": self.instance_labels(),
            "chain": self.chain_lines(),
            "core": lines,
        }


def find_evaluation(theory, lam, reg: SkolemRegistry, *, extra: Sequence[Formula] = (),
                    seed: int | None = None, max_decisions: int | None = None,
                    max_clauses: int | None = None,
                    predicates: Mapping[str, int] | None = None) -> Evaluation | UnsatCertificate:
    """Search for an evaluation on ``lam`` satisfying every available Skolem
    instance of ``theory`` (and the ground formulas in ``extra``)."""
    enc = build_encoding(theory, lam, reg, extra=extra, predicates=predicates,
                         max_clauses=max_clauses)
    r = solve(enc.nvars, enc.clauses, seed=seed, max_decisions=max_decisions)
    if r.sat:
        return Evaluation(enc.table, tuple(r.model))
    return UnsatCertificate(enc, r.core, r.propagation_only, r.chain, r.conflict)


def _origin_ok(enc: Encoding, clause: list[int], o: Origin, reg: SkolemRegistry) -> bool:
    table = enc.table
    lam = table.lam
    lits = set(clause)
    if o.kind == "reflexivity":
        (t,) = o.data
        return lits == {table.eq(t, t) + 1}
    if o.kind == "instance":
        inst = o.instance
        from .skolem import skolemize
        from .syntax import atom_sides, substitute
        ground = substitute(skolemize(inst.source, reg), inst.subst)
        if ground != inst.ground or not all(x in lam for x in atom_sides(ground)):
            return False
        return any(set(c) == lits for c in (_tidy(c) for c in _cnf(ground, table)) if c)
    if o.kind == "extra":
        (g,) = o.data
        return any(set(c) == lits for c in (_tidy(c) for c in _cnf(g, table)) if c)
    if o.kind == "congruence":
        u, v = o.data
        if u.head != v.head or len(u.args) != len(v.args) or u not in lam or v not in lam:
            return False
        want = {-(table.eq(a, b) + 1) for a, b in zip(u.args, v.args) if a is not b}
        return lits == want | {table.eq(u, v) + 1}
    if o.kind == "replacement":
        t, s, ai, bi = o.data
        pa, aa = table.atoms[ai]
        pb, ab = table.atoms[bi]
        if pa != pb or not any(_positions(x, t) for x in aa):
            return False
        if not _is_replacement(aa, ab, t, s):
            return False
        e = table.eq(t, s) + 1
        return lits in ({-e, -(ai + 1), bi + 1}, {-e, ai + 1, -(bi + 1)})
    return False


def _positions(u: Term, t: Term, path: tuple = ()) -> list[tuple]:
    if u is t:
        return [path]
    out = []
    for i, a in enumerate(u.args):
        out.extend(_positions(a, t, path + (i,)))
    return out


def _is_replacement(aa: Sequence[Term], ab: Sequence[Term], t: Term, s: Term) -> bool:
    """Whether ``ab`` arises from ``aa`` by replacing some occurrences of ``t``."""
    def same(u: Term, v: Term) -> bool:
        if u is v:
            return True
        if u is t and v is s:
            return True
        if u.is_var or v.is_var or u.head != v.head or len(u.args) != len(v.args):
            return False
        return all(same(x, y) for x, y in zip(u.args, v.args))
    return tuple(aa) != tuple(ab) and all(same(x, y) for x, y in zip(aa, ab))


def check_certificate(cert: UnsatCertificate, reg: SkolemRegistry) -> bool:
    """Re-derive every core clause from its stated origin, then confirm the
    core is contradictory: by unit propagation alone when the certificate
    claims so, otherwise by an independent exhaustive split."""
    enc = cert.encoding
    for i in cert.core:
        if not _origin_ok(enc, enc.clauses[i], enc.origins[i], reg):
            return False
    core = cert.core_clauses()
    if cert.propagation_only:
        return _units_refute(core)
    return naive_unsat(enc.nvars, core)


def _units_refute(clauses: list[list[int]]) -> bool:
    assigned: set[int] = set()
    changed = True
    while changed:
        changed = False
        for c in clauses:
            if any(l in assigned for l in c):
                continue
            open_ = [l for l in c if -l not in assigned]
            if not open_:
                return True
            if len(open_) == 1:
                assigned.add(open_[0])
                changed = True
    return False


# ---------------------------------------------------------------------------
# Independent checker


def replacement_pairs(table: AtomTable, eq_true: Callable[[Term, Term], bool] | None = None):
    """Yield ``(e, a, b)``: atom ids such that ``b`` is ``a`` with some
    occurrences of ``t`` replaced by ``s`` where ``e`` is ``t = s``.

    Works pairwise on atoms, independently of the encoder: every replaced
    occurrence sits on the spine where the two argument tuples differ, so
    the candidates ``(t, s)`` are read off that spine and then confirmed.
    """
    lam = table.lam
    by_pred: dict[str, list[int]] = {}
    for ai, (pred, _) in enumerate(table.atoms):
        by_pred.setdefault(pred, []).append(ai)
    for ids in by_pred.values():
        for ai, bi in itertools.permutations(ids, 2):
            aa, ab = table.atoms[ai][1], table.atoms[bi][1]
            cands: dict[tuple[Term, Term], None] = {}
            for x, y in zip(aa, ab):
                _diff_spine(x, y, cands)
            for t, s in cands:
                if t not in lam or s not in lam:
                    continue
                if eq_true is not None and not eq_true(t, s):
                    continue
                if _is_replacement(aa, ab, t, s):
                    yield table.eq(t, s), ai, bi


def _diff_spine(u: Term, v: Term, out: dict) -> None:
    if u is v:
        return
    out[(u, v)] = None
    if not u.is_var and not v.is_var and u.head == v.head and len(u.args) == len(v.args):
        for x, y in zip(u.args, v.args):
            _diff_spine(x, y, out)


def congruence_pairs(lam: TermSet):
    """Yield ``(u, v, [(a_i, b_i)])`` for same-head composite members whose
    arguments are members."""
    comp = [t for t in lam if t.args and all(a in lam for a in t.args)]
    for u, v in itertools.combinations(comp, 2):
        if u.head == v.head and len(u.args) == len(v.args):
            yield u, v, list(zip(u.args, v.args))


def check_evaluation(p: Evaluation, theory=(), reg: SkolemRegistry | None = None,
                     extra: Sequence[Formula] = ()) -> list[str]:
    """All violated conditions of ``p`` (empty when ``p`` is a valid
    evaluation satisfying the available instances)."""
    table = p.table
    lam = table.lam
    bad: list[str] = []
    for t in lam:
        if not p.equal(t, t):
            bad.append(f"reflexivity fails at {print_term(t)}")
    for e, a, b in replacement_pairs(table, p.equal):
        if p[a] != p[b]:
            bad.append(f"replacement via {table.label(e)}: {table.label(a)} vs {table.label(b)}")
    for u, v, pairs in congruence_pairs(lam):
        if all(a is b or p.equal(a, b) for a, b in pairs) and not p.equal(u, v):
            bad.append(f"congruence fails: {print_term(u)} vs {print_term(v)}")
    # equivalence-relation sanity (a consequence of the above)
    members = lam.members
    for t, s in itertools.product(members, repeat=2):
        if p.equal(t, s) != p.equal(s, t):
            bad.append(f"symmetry fails: {print_term(t)}, {print_term(s)}")
    for t, s, u in itertools.product(members, repeat=3):
        if p.equal(t, s) and p.equal(s, u) and not p.equal(t, u):
            bad.append(f"transitivity fails: {print_term(t)}, {print_term(s)}, {print_term(u)}")
    if reg is not None:
        for inst in theory_instances(theory, lam, reg):
            if not satisfies(p, inst.ground):
                bad.append(f"instance {inst.describe()} fails")
    for g in extra:
        if not satisfies(p, g):
            bad.append(f"extra {print_formula(g)} fails")
    return bad


# ---------------------------------------------------------------------------
# Brute-force oracle


@dataclass
class Enumeration:
    atoms: list[int]  # table ids of the enumerated atoms
    models: list[tuple[int, ...]]  # values aligned with ``atoms``
    scanned: int
    table: AtomTable = field(repr=False)

    def evaluations(self) -> list[Evaluation]:
        if len(self.atoms) != len(self.table):
            raise ValueError("partial enumeration has no total evaluations")
        return [Evaluation(self.table, m) for m in self.models]


def _split_conjuncts(g: Formula) -> list[Formula]:
    if isinstance(g, And):
        return _split_conjuncts(g.left) + _split_conjuncts(g.right)
    return [g]


def _formula_atoms(g: Formula, table: AtomTable) -> set[int]:
    if isinstance(g, LITERALS):
        return {_lit_atom(table, g)}
    if isinstance(g, Not):
        return _formula_atoms(g.body, table)
    return _formula_atoms(g.left, table) | _formula_atoms(g.right, table)


def enumerate_assignments(theory, lam, reg: SkolemRegistry, *, atoms: Sequence[int] | None = None,
                          extra: Sequence[Formula] = (), limit: int = 24,
                          predicates: Mapping[str, int] | None = None,
                          chunk: int = 1 << 16) -> Enumeration:
    """Scan every 0/1 assignment to ``atoms`` (default: the whole table) and
    keep those meeting the evaluation conditions and the available instances.

    With a proper subset of atoms, any condition mentioning an atom outside
    the subset is dropped, so an empty result still proves there is no
    evaluation on the full table.
    """
    import numpy as np

    lam = as_termset(lam)
    table = AtomTable(lam, predicates)
    ids = list(range(len(table))) if atoms is None else sorted(set(atoms))
    k = len(ids)
    if k > limit:
        raise ResourceLimit(f"{k} atoms exceed the exhaustive limit {limit}")
    col = {a: i for i, a in enumerate(ids)}
    inside = col.__contains__

    reflex = [col[table.eq(t, t)] for t in lam if inside(table.eq(t, t))]
    repl = sorted({(col[e], col[a], col[b]) for e, a, b in replacement_pairs(table)
                   if inside(e) and inside(a) and inside(b)})
    cong = []
    for u, v, pairs in congruence_pairs(lam):
        need = [table.eq(a, b) for a, b in pairs if a is not b]
        head = table.eq(u, v)
        if inside(head) and all(inside(x) for x in need):
            cong.append(([col[x] for x in need], col[head]))
    formulas: list[Formula] = []
    for inst in theory_instances(theory, lam, reg):
        formulas.extend(_split_conjuncts(inst.ground))
    for g in extra:
        formulas.extend(_split_conjuncts(g))
    formulas = [g for g in formulas if all(inside(a) for a in _formula_atoms(g, table))]

    def ev(g: Formula, bits):
        if isinstance(g, Atom):
            return bits[col[_lit_atom(table, g)]]
        if isinstance(g, NegAtom):
            return ~bits[col[_lit_atom(table, g)]]
        if isinstance(g, And):
            return ev(g.left, bits) & ev(g.right, bits)
        if isinstance(g, Or):
            return ev(g.left, bits) | ev(g.right, bits)
        return ~ev(g.body, bits)

    total = 1 << k
    models: list[tuple[int, ...]] = []
    scanned = 0
    for start in range(0, total, chunk):
        n = np.arange(start, min(total, start + chunk), dtype=np.int64)
        bits = [((n >> i) & 1).astype(bool) for i in range(k)]
        ok = np.ones(len(n), dtype=bool)
        for r in reflex:
            ok &= bits[r]
        for e, a, b in repl:
            ok &= ~bits[e] | (bits[a] == bits[b])
        for need, head in cong:
            h = bits[head].copy()
            for x in need:
                h |= ~bits[x]
            ok &= h
        for g in formulas:
            ok &= ev(g, bits)
        scanned += len(n)
        for idx in np.nonzero(ok)[0]:
            m = int(n[idx])
            models.append(tuple((m >> i) & 1 for i in range(k)))
    return Enumeration(ids, models, scanned, table)


def enumerate_all(theory, lam, reg: SkolemRegistry, *, extra: Sequence[Formula] = (),
                  limit: int = 24, predicates: Mapping[str, int] | None = None) -> list[Evaluation]:
    return enumerate_assignments(theory, lam, reg, extra=extra, limit=limit,
                                 predicates=predicates).evaluations()


# ---------------------------------------------------------------------------
# Standard model


def _builtin() -> dict[str, Callable[..., int]]:
    from .syntax import PLUS, SUCC, TIMES, ZERO_NAME
    return {
        ZERO_NAME: lambda: 0,
        SUCC: lambda x: x + 1,
        PLUS: lambda x, y: x + y,
        TIMES: lambda x, y: x * y,
        "𝔭": lambda x: max(x - 1, 0),
        "𝔥": lambda x, y: y - x if x <= y else 0,
        "𝔮": lambda x: x * x,
    }


def term_value(t: Term, interp: Mapping[str, object] | None = None, memo: dict | None = None) -> int:
    funcs = _builtin()
    if interp:
        funcs.update(interp)
    memo = {} if memo is None else memo

    def go(u: Term) -> int:
        r = memo.get(u)
        if r is not None:
            return r
        f = funcs.get(u.head)
        if f is None or u.is_var:
            raise MissingInterpretation(u.head)
        if not callable(f):
            if u.args:
                raise MissingInterpretation(u.head)
            r = int(f)
        else:
            r = f(*(go(a) for a in u.args))
        memo[u] = r
        return r

    return go(t)


def standard_evaluation(lam, interp: Mapping[str, object] | None = None,
                        predicates: Mapping[str, int] | None = None) -> Evaluation:
    """The evaluation read off the standard model of arithmetic.

    ``interp`` maps further symbols to Python callables (or ints for
    constants); built-ins cover 0, S, +, *, 𝔭, 𝔥 and 𝔮.
    """
    lam = as_termset(lam)
    table = AtomTable(lam, predicates)
    memo: dict = {}
    vals = {t: term_value(t, interp, memo) for t in lam}
    out = []
    for pred, args in table.atoms:
        xs = [vals[a] for a in args]
        if pred == EQ:
            out.append(int(xs[0] == xs[1]))
        elif pred == LE:
            out.append(int(xs[0] <= xs[1]))
        else:
            raise MissingInterpretation(pred)
    return Evaluation(table, tuple(out))
