"""Negation normal form, rectification and alpha-equivalence."""

from __future__ import annotations

from .syntax import (
    BINARY, LITERALS, QUANTIFIERS, And, Atom, Exists, Forall, Formula, Iff,
    Implies, NegAtom, Not, Or, Term, all_var_names, free_vars, substitute_term,
    var,
)


def to_nnf(f: Formula) -> Formula:
    """Push negations onto atoms; eliminate -> and <->.

    ``A <-> B`` becomes ``(~A | B) & (~B | A)`` before descending.
    """
    return _nnf(f, True)


def _nnf(f: Formula, pos: bool) -> Formula:
    if isinstance(f, Atom):
        return f if pos else NegAtom(f.pred, f.args)
    if isinstance(f, NegAtom):
        return f if pos else Atom(f.pred, f.args)
    if isinstance(f, Not):
        return _nnf(f.body, not pos)
    if isinstance(f, And):
        cls = And if pos else Or
        return cls(_nnf(f.left, pos), _nnf(f.right, pos))
    if isinstance(f, Or):
        cls = Or if pos else And
        return cls(_nnf(f.left, pos), _nnf(f.right, pos))
    if isinstance(f, Implies):
        cls = Or if pos else And
        return cls(_nnf(f.left, not pos), _nnf(f.right, pos))
    if isinstance(f, Iff):
        expanded = And(Or(Not(f.left), f.right), Or(Not(f.right), f.left))
        return _nnf(expanded, pos)
    if isinstance(f, Forall):
        return (Forall if pos else Exists)(f.var, _nnf(f.body, pos))
    return (Exists if pos else Forall)(f.var, _nnf(f.body, pos))


def rectify(f: Formula) -> Formula:
    """Rename bound variables so every binder is distinct and none is free.

    Binders are visited left to right.  A binder keeps its name unless that
    name is already free in ``f`` or bound earlier; then it gets the first
    unused ``<stem><k>`` (k = 1, 2, ...).
    """
    used = set(free_vars(f))
    taken = used | all_var_names(f)

    def fresh(base: str) -> str:
        if base not in used:
            used.add(base)
            return base
        stem = base.rstrip("0123456789") or base
        i = 1
        while f"{stem}{i}" in used or f"{stem}{i}" in taken:
            i += 1
        name = f"{stem}{i}"
        used.add(name)
        taken.add(name)
        return name

    def go(g: Formula, env: dict[str, Term]) -> Formula:
        if isinstance(g, LITERALS):
            if not env:
                return g
            return type(g)(g.pred, tuple(substitute_term(a, env) for a in g.args))
        if isinstance(g, Not):
            return Not(go(g.body, env))
        if isinstance(g, BINARY):
            left = go(g.left, env)
            return type(g)(left, go(g.right, env))
        name = fresh(g.var)
        inner = dict(env)
        if name == g.var:
            inner.pop(g.var, None)
        else:
            inner[g.var] = var(name)
        return type(g)(name, go(g.body, inner))

    return go(f, {})


def to_rnnf(f: Formula) -> Formula:
    return rectify(to_nnf(f))


def is_nnf(f: Formula) -> bool:
    if isinstance(f, LITERALS):
        return True
    if isinstance(f, (And, Or)):
        return is_nnf(f.left) and is_nnf(f.right)
    if isinstance(f, QUANTIFIERS):
        return is_nnf(f.body)
    return False


def is_rectified(f: Formula) -> bool:
    free = set(free_vars(f))
    seen: set[str] = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, QUANTIFIERS):
            if g.var in seen or g.var in free:
                return False
            seen.add(g.var)
            stack.append(g.body)
        elif isinstance(g, Not):
            stack.append(g.body)
        elif isinstance(g, BINARY):
            stack.extend((g.left, g.right))
    return True


def is_rnnf(f: Formula) -> bool:
    return is_nnf(f) and is_rectified(f)


# ---------------------------------------------------------------------------
# Alpha-equivalence


def canonical(f: Formula, rename_free: bool = True):
    """A hashable key identifying ``f`` up to renaming of variables.

    Bound variables become de Bruijn indices.  With ``rename_free`` the free
    variables are numbered by first occurrence, so formulas that differ only
    by a consistent renaming of free variables share a key.
    """
    free_index: dict[str, int] = {}

    def tkey(t: Term, scope: list[str]):
        if t.is_var:
            for depth, name in enumerate(reversed(scope)):
                if name == t.head:
                    return ("b", depth)
            if rename_free:
                return ("f", free_index.setdefault(t.head, len(free_index)))
            return ("f", t.head)
        if not t.args:
            return t.head
        return (t.head, *(tkey(a, scope) for a in t.args))

    def fkey(g: Formula, scope: list[str]):
        if isinstance(g, LITERALS):
            return (type(g).__name__, g.pred, *(tkey(a, scope) for a in g.args))
        if isinstance(g, Not):
            return ("Not", fkey(g.body, scope))
        if isinstance(g, BINARY):
            return (type(g).__name__, fkey(g.left, scope), fkey(g.right, scope))
        scope.append(g.var)
        body = fkey(g.body, scope)
        scope.pop()
        return (type(g).__name__, body)

    return fkey(f, [])


def alpha_equal(f: Formula, g: Formula, rename_free: bool = True) -> bool:
    """Equality up to variable renaming.

    By default free variables may also be renamed (consistently, by order of
    first occurrence), which is the right notion for comparing open
    Skolemized forms.  Pass ``rename_free=False`` for classical
    alpha-equivalence.
    """
    return canonical(f, rename_free) == canonical(g, rename_free)
