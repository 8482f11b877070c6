"""Terms, formulas, the arithmetic signature, parsing and printing.

Terms are hash-consed: building the same term twice returns the same object,
so terms compare and hash by identity.  Formulas are frozen dataclasses whose
structural equality falls out of that.

Text grammar (ASCII, with unicode alternatives accepted on input)::

    term    ::= sum
    sum     ::= prod ('+' prod)*
    prod    ::= primary ('*' primary)*
    primary ::= '0' | name | name '(' term (',' term)* ')' | '(' term ')'
    atom    ::= term ('=' | '<=' | '!=' | '!<=') term
    formula ::= iff
    iff     ::= imp ('<->' imp)*
    imp     ::= or ('->' imp)?
    or      ::= and ('|' and)*
    and     ::= unary ('&' unary)*
    unary   ::= '~' unary | quant | '(' formula ')' | atom
    quant   ::= ('forall' | 'exists') name ['<=' term] '.' formula

``S`` and ``s`` both denote the successor.  ``!=`` and ``!<=`` denote negated
atoms.  ``forall x <= t. F`` is sugar for ``forall x. (x <= t -> F)`` and
``exists x <= t. F`` for ``exists x. (x <= t & F)``.
"""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Union

ZERO_NAME = "0"
SUCC = "s"
PLUS = "+"
TIMES = "*"
EQ = "="
LE = "<="


class SyntaxErrorWithPos(ValueError):
    """Malformed input; ``pos`` is the character offset of the problem."""

    def __init__(self, message: str, text: str, pos: int):
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos}: {text[:pos]}<!>{text[pos:]}")


class ArityError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Terms


class Term:
    """An interned first-order term.  Construct with :func:`var` / :func:`fn`."""

    __slots__ = ("head", "args", "is_var", "_hash", "_ground", "_depth")

    head: str
    args: tuple["Term", ...]
    is_var: bool

    def __new__(cls, *a, **kw):  # pragma: no cover - guarded constructor
        raise TypeError("use var() or fn() to build terms")

    @property
    def arity(self) -> int:
        return len(self.args)

    @property
    def is_ground(self) -> bool:
        return self._ground

    @property
    def depth(self) -> int:
        return self._depth

    def subterms(self) -> Iterator["Term"]:
        """Pre-order walk over all subterm occurrences (self included)."""
        stack = [self]
        while stack:
            t = stack.pop()
            yield t
            stack.extend(reversed(t.args))

    def variables(self) -> list[str]:
        seen: dict[str, None] = {}
        for t in self.subterms():
            if t.is_var:
                seen.setdefault(t.head, None)
        return list(seen)

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        return self is other

    def __repr__(self) -> str:
        return f"Term({print_term(self)!r})"

    def __str__(self) -> str:
        return print_term(self)

    def __reduce__(self):
        if self.is_var:
            return (var, (self.head,))
        return (fn, (self.head, *self.args))


_INTERN: dict[tuple, Term] = {}
_INTERN_LOCK = threading.Lock()


def _make(head: str, args: tuple[Term, ...], is_var: bool) -> Term:
    key = (head, is_var, args)
    t = _INTERN.get(key)
    if t is not None:
        return t
    with _INTERN_LOCK:
        t = _INTERN.get(key)
        if t is None:
            t = object.__new__(Term)
            t.head = head
            t.args = args
            t.is_var = is_var
            t._hash = hash(key)
            t._ground = (not is_var) and all(a._ground for a in args)
            t._depth = 1 + max((a._depth for a in args), default=-1) if args else 0
            _INTERN[key] = t
    return t


def var(name: str) -> Term:
    return _make(name, (), True)


def fn(head: str, *args: Term) -> Term:
    return _make(head, tuple(args), False)


def const(name: str) -> Term:
    return _make(name, (), False)


ZERO = const(ZERO_NAME)


def succ(t: Term) -> Term:
    return fn(SUCC, t)


def add(a: Term, b: Term) -> Term:
    return fn(PLUS, a, b)


def mul(a: Term, b: Term) -> Term:
    return fn(TIMES, a, b)


def numeral(n: int) -> Term:
    t = ZERO
    for _ in range(n):
        t = succ(t)
    return t


def substitute_term(t: Term, sub: Mapping[str, Term]) -> Term:
    if t.is_var:
        return sub.get(t.head, t)
    if not t.args or t._ground:
        return t
    return fn(t.head, *(substitute_term(a, sub) for a in t.args))


def replace_subterm(t: Term, old: Term, new: Term) -> Term:
    if t is old:
        return new
    if not t.args:
        return t
    return fn(t.head, *(replace_subterm(a, old, new) for a in t.args))


# ---------------------------------------------------------------------------
# Signature


@dataclass
class Signature:
    constants: dict[str, int]
    functions: dict[str, int]
    predicates: dict[str, int]

    def __post_init__(self):
        names = list(self.constants) + list(self.functions) + list(self.predicates)
        if len(names) != len(set(names)):
            raise ValueError("symbol names must be unique across the signature")
        if self.predicates.get(EQ) != 2:
            raise ValueError("'=' must be a binary predicate")
        for table in (self.constants, self.functions, self.predicates):
            for name, ar in table.items():
                if ar < 0:
                    raise ValueError(f"negative arity for {name}")
        for name, ar in self.constants.items():
            if ar != 0:
                raise ValueError(f"constant {name} must have arity 0")

    def symbols(self) -> dict[str, int]:
        """Constants and function symbols with their arities, in declaration order."""
        return {**self.constants, **self.functions}

    def extended(self, symbols: Mapping[str, int]) -> "Signature":
        consts = dict(self.constants)
        funcs = dict(self.functions)
        for name, ar in symbols.items():
            if name in consts or name in funcs:
                continue
            (consts if ar == 0 else funcs)[name] = ar
        return Signature(consts, funcs, dict(self.predicates))


def arithmetic_signature() -> Signature:
    return Signature({ZERO_NAME: 0}, {SUCC: 1, PLUS: 2, TIMES: 2}, {EQ: 2, LE: 2})


ARITHMETIC = arithmetic_signature()


# ---------------------------------------------------------------------------
# Formulas


@dataclass(frozen=True, slots=True)
class Atom:
    pred: str
    args: tuple[Term, ...]


@dataclass(frozen=True, slots=True)
class NegAtom:
    pred: str
    args: tuple[Term, ...]


@dataclass(frozen=True, slots=True)
class Not:
    body: "Formula"


@dataclass(frozen=True, slots=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class Iff:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class Forall:
    var: str
    body: "Formula"


@dataclass(frozen=True, slots=True)
class Exists:
    var: str
    body: "Formula"


Formula = Union[Atom, NegAtom, Not, And, Or, Implies, Iff, Forall, Exists]
BINARY = (And, Or, Implies, Iff)
QUANTIFIERS = (Forall, Exists)
LITERALS = (Atom, NegAtom)


def eq(a: Term, b: Term) -> Atom:
    return Atom(EQ, (a, b))


def le(a: Term, b: Term) -> Atom:
    return Atom(LE, (a, b))


def neq(a: Term, b: Term) -> NegAtom:
    return NegAtom(EQ, (a, b))


def nle(a: Term, b: Term) -> NegAtom:
    return NegAtom(LE, (a, b))


def conj(parts: Iterable[Formula]) -> Formula:
    parts = list(parts)
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


def disj(parts: Iterable[Formula]) -> Formula:
    parts = list(parts)
    out = parts[0]
    for p in parts[1:]:
        out = Or(out, p)
    return out


def free_vars(f: Formula) -> list[str]:
    """Free variables in order of first occurrence, left to right."""
    out: dict[str, None] = {}

    def walk(g: Formula, bound: frozenset[str]) -> None:
        if isinstance(g, LITERALS):
            for a in g.args:
                for v in a.variables():
                    if v not in bound:
                        out.setdefault(v, None)
        elif isinstance(g, Not):
            walk(g.body, bound)
        elif isinstance(g, BINARY):
            walk(g.left, bound)
            walk(g.right, bound)
        else:
            walk(g.body, bound | {g.var})

    walk(f, frozenset())
    return list(out)


def bound_vars(f: Formula) -> list[str]:
    """Quantified variables in binder order (with repetitions)."""
    out: list[str] = []
    for g in walk_formula(f):
        if isinstance(g, QUANTIFIERS):
            out.append(g.var)
    return out


def is_sentence(f: Formula) -> bool:
    return not free_vars(f)


def walk_formula(f: Formula) -> Iterator[Formula]:
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        if isinstance(g, (Not, Forall, Exists)):
            stack.append(g.body)
        elif isinstance(g, BINARY):
            stack.append(g.right)
            stack.append(g.left)


def atoms_of(f: Formula) -> Iterator[Atom | NegAtom]:
    for g in walk_formula(f):
        if isinstance(g, LITERALS):
            yield g


def atom_sides(f: Formula) -> list[Term]:
    """Every argument term of every atomic subformula, in order."""
    return [a for lit in atoms_of(f) for a in lit.args]


def all_var_names(f: Formula) -> set[str]:
    names = set(bound_vars(f))
    for lit in atoms_of(f):
        for a in lit.args:
            names.update(a.variables())
    return names


def map_terms(f: Formula, g) -> Formula:
    """Apply ``g`` to every atom argument (no binder awareness)."""
    if isinstance(f, LITERALS):
        return type(f)(f.pred, tuple(g(a) for a in f.args))
    if isinstance(f, Not):
        return Not(map_terms(f.body, g))
    if isinstance(f, BINARY):
        return type(f)(map_terms(f.left, g), map_terms(f.right, g))
    return type(f)(f.var, map_terms(f.body, g))


def substitute(f: Formula, sub: Mapping[str, Term]) -> Formula:
    """Capture-avoiding substitution of free variables."""
    if not sub:
        return f
    if isinstance(f, LITERALS):
        return type(f)(f.pred, tuple(substitute_term(a, sub) for a in f.args))
    if isinstance(f, Not):
        return Not(substitute(f.body, sub))
    if isinstance(f, BINARY):
        return type(f)(substitute(f.left, sub), substitute(f.right, sub))
    inner = {k: v for k, v in sub.items() if k != f.var}
    if not inner:
        return f
    incoming = {v for t in inner.values() for v in t.variables()}
    if f.var in incoming:
        taken = incoming | all_var_names(f.body) | set(inner)
        fresh = _fresh_name(f.var, taken)
        body = substitute(f.body, {f.var: var(fresh)})
        return type(f)(fresh, substitute(body, inner))
    return type(f)(f.var, substitute(f.body, inner))


def _fresh_name(base: str, taken: set[str]) -> str:
    stem = base.rstrip("0123456789") or base
    i = 1
    while f"{stem}{i}" in taken:
        i += 1
    return f"{stem}{i}"


# ---------------------------------------------------------------------------
# Printing

_TERM_PREC = {PLUS: 1, TIMES: 2}


def print_term(t: Term, unicode: bool = False) -> str:
    return _pt(t, 0, unicode)


def _pt(t: Term, ctx: int, uni: bool) -> str:
    if t.head in _TERM_PREC and len(t.args) == 2 and not t.is_var:
        prec = _TERM_PREC[t.head]
        op = {PLUS: "+", TIMES: "·" if uni else "*"}[t.head]
        s = f"{_pt(t.args[0], prec, uni)} {op} {_pt(t.args[1], prec + 1, uni)}"
        return f"({s})" if prec < ctx else s
    if t.head == SUCC and len(t.args) == 1 and not t.is_var:
        return f"S({_pt(t.args[0], 0, uni)})"
    if not t.args:
        return t.head
    return f"{t.head}({', '.join(_pt(a, 0, uni) for a in t.args)})"


_PREC = {Iff: 1, Implies: 2, Or: 3, And: 4}
_ASCII = {
    And: "&", Or: "|", Implies: "->", Iff: "<->", Not: "~",
    Forall: "forall", Exists: "exists",
    (EQ, True): "=", (LE, True): "<=", (EQ, False): "!=", (LE, False): "!<=",
}
_UNI = {
    And: "∧", Or: "∨", Implies: "→", Iff: "↔", Not: "¬",
    Forall: "∀", Exists: "∃",
    (EQ, True): "=", (LE, True): "≤", (EQ, False): "≠", (LE, False): "≰",
}


def _prec(f: Formula) -> int:
    if isinstance(f, QUANTIFIERS):
        return 0
    if isinstance(f, Not):
        return 5
    if isinstance(f, LITERALS):
        return 6
    return _PREC[type(f)]


def print_formula(f: Formula, unicode: bool = False) -> str:
    return _pf(f, 0, _UNI if unicode else _ASCII, unicode)


def _pf(f: Formula, ctx: int, sym: dict, uni: bool) -> str:
    if isinstance(f, LITERALS):
        op = sym.get((f.pred, isinstance(f, Atom)))
        if op is not None and len(f.args) == 2:
            s = f"{_pt(f.args[0], 0, uni)} {op} {_pt(f.args[1], 0, uni)}"
        else:
            inner = f"{f.pred}({', '.join(_pt(a, 0, uni) for a in f.args)})"
            s = inner if isinstance(f, Atom) else f"{sym[Not]}{inner}"
    elif isinstance(f, Not):
        s = f"{sym[Not]}{_pf(f.body, 5, sym, uni)}"
    elif isinstance(f, QUANTIFIERS):
        gap = "" if uni else " "
        s = f"{sym[type(f)]}{gap}{f.var}. {_pf(f.body, 0, sym, uni)}"
    else:
        p = _PREC[type(f)]
        # & and | and <-> associate left, -> associates right
        lp, rp = (p + 1, p) if isinstance(f, Implies) else (p, p + 1)
        s = f"{_pf(f.left, lp, sym, uni)} {sym[type(f)]} {_pf(f.right, rp, sym, uni)}"
    return f"({s})" if _prec(f) < ctx else s


# ---------------------------------------------------------------------------
# Parsing

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<op><->|->|!<=|<=|!=|↔|→|≤|≠|≰|¬|∧|∨|∀|∃|·|[()~&|.,+*=])
  | (?P<name>[^\W\d][\w₀₁₂₃₄₅₆₇₈₉']*|0)
    """,
    re.VERBOSE,
)
_UNICODE_OPS = {"↔": "<->", "→": "->", "≤": "<=", "≠": "!=", "≰": "!<=", "¬": "~",
                "∧": "&", "∨": "|", "·": "*", "∀": "forall", "∃": "exists"}
_SUCC_NAMES = {"S", "s", "𝔰"}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise SyntaxErrorWithPos("unexpected character", text, pos)
        kind = m.lastgroup
        val = m.group(kind)
        if kind == "op":
            val = _UNICODE_OPS.get(val, val)
            if val in ("forall", "exists"):
                kind = "name"
        if kind != "ws":
            toks.append((kind, val, pos))
        pos = m.end()
    toks.append(("eof", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, constants: Iterable[str] | None, ground: bool):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.constants = set(constants or ()) | {ZERO_NAME}
        self.ground = ground
        self.arities: dict[str, int] = {}

    # -- helpers
    def peek(self, k: int = 0) -> tuple[str, str, int]:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def error(self, msg: str) -> SyntaxErrorWithPos:
        return SyntaxErrorWithPos(msg, self.text, self.peek()[2])

    def accept(self, val: str) -> bool:
        if self.peek()[1] == val and self.peek()[0] != "eof":
            self.i += 1
            return True
        return False

    def expect(self, val: str) -> None:
        if not self.accept(val):
            raise self.error(f"expected {val!r}")

    def at_end(self) -> None:
        if self.peek()[0] != "eof":
            raise self.error("trailing input")

    def note_arity(self, name: str, n: int) -> None:
        seen = self.arities.setdefault(name, n)
        if seen != n:
            raise ArityError(f"symbol {name!r} used with arities {seen} and {n}")

    # -- terms
    def term(self) -> Term:
        t = self.prod()
        while self.accept("+"):
            t = add(t, self.prod())
        return t

    def prod(self) -> Term:
        t = self.tprimary()
        while self.accept("*"):
            t = mul(t, self.tprimary())
        return t

    def tprimary(self) -> Term:
        kind, val, _ = self.peek()
        if val == "(":
            self.i += 1
            t = self.term()
            self.expect(")")
            return t
        if kind != "name" or val in ("forall", "exists"):
            raise self.error("expected a term")
        self.i += 1
        if self.accept("("):
            args = [self.term()]
            while self.accept(","):
                args.append(self.term())
            self.expect(")")
            if val in _SUCC_NAMES:
                if len(args) != 1:
                    raise ArityError(f"successor takes one argument, got {len(args)}")
                return succ(args[0])
            if val in (PLUS, TIMES):
                raise self.error("operator used as function name")
            self.note_arity(val, len(args))
            return fn(val, *args)
        if val == ZERO_NAME or val in self.constants or self.ground:
            self.note_arity(val, 0)
            return const(val)
        return var(val)

    # -- formulas
    def formula(self) -> Formula:
        f = self.imp()
        while self.accept("<->"):
            f = Iff(f, self.imp())
        return f

    def imp(self) -> Formula:
        f = self.disj()
        if self.accept("->"):
            return Implies(f, self.imp())
        return f

    def disj(self) -> Formula:
        f = self.conj()
        while self.accept("|"):
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.accept("&"):
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        kind, val, _ = self.peek()
        if val == "~":
            self.i += 1
            return Not(self.unary())
        if kind == "name" and val in ("forall", "exists"):
            return self.quant()
        if val == "(":
            save = self.i
            try:
                return self.atom()
            except SyntaxErrorWithPos:
                self.i = save
            self.i += 1
            f = self.formula()
            self.expect(")")
            return f
        return self.atom()

    def quant(self) -> Formula:
        _, q, _ = self.toks[self.i]
        self.i += 1
        kind, name, _ = self.peek()
        if kind != "name" or name in ("forall", "exists") or name == ZERO_NAME:
            raise self.error("expected a variable")
        self.i += 1
        bound = None
        if self.accept("<="):
            bound = self.term()
        self.expect(".")
        body = self.formula()
        x = var(name)
        if q == "forall":
            return Forall(name, body if bound is None else Implies(le(x, bound), body))
        return Exists(name, body if bound is None else And(le(x, bound), body))

    def atom(self) -> Formula:
        lhs = self.term()
        _, op, _ = self.peek()
        if op not in ("=", "<=", "!=", "!<="):
            raise self.error("expected a relation")
        self.i += 1
        rhs = self.term()
        pred = EQ if op in ("=", "!=") else LE
        cls = NegAtom if op.startswith("!") else Atom
        return cls(pred, (lhs, rhs))


def parse_term(text: str, constants: Iterable[str] | None = None) -> Term:
    """Parse a term; bare names not declared as constants become variables."""
    p = _Parser(text, constants, ground=False)
    t = p.term()
    p.at_end()
    return t


def parse_ground_term(text: str) -> Term:
    """Parse a term in a ground context: every bare name is a constant."""
    p = _Parser(text, None, ground=True)
    t = p.term()
    p.at_end()
    return t


def parse_formula(text: str, constants: Iterable[str] | None = None) -> Formula:
    p = _Parser(text, constants, ground=False)
    f = p.formula()
    p.at_end()
    return f
