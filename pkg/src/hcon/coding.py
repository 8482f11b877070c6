"""A concrete Gödel coding and measurements of the bounds it satisfies.

Every object serializes to a canonical, self-delimiting byte string; the code
is that string read as a big-endian number behind a leading ``0x01`` byte.
Sets list their elements in ascending code order (shorter strings first, then
bytewise), so set codes do not depend on presentation order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .syntax import (
    BINARY, And, Atom, Exists, Forall, Formula, Iff, Implies, NegAtom, Not, Or, Term,
)

_FORMULA_TAGS = {Atom: b"a", NegAtom: b"n", Not: b"~", And: b"&", Or: b"|",
                 Implies: b">", Iff: b"=", Forall: b"A", Exists: b"E"}


def _varint(n: int) -> bytes:
    out = bytearray()
    while True:
        b = n & 0x7F
        n >>= 7
        if n:
            out.append(b | 0x80)
        else:
            out.append(b)
            return bytes(out)


def _name(s: str) -> bytes:
    raw = s.encode("utf-8")
    return _varint(len(raw)) + raw


def _ser_term(t: Term, memo: dict) -> bytes:
    r = memo.get(t)
    if r is None:
        if t.is_var:
            r = b"V" + _name(t.head)
        else:
            r = b"T" + _name(t.head) + _varint(len(t.args)) + b"".join(_ser_term(a, memo) for a in t.args)
        memo[t] = r
    return r


def _ser_formula(f: Formula, memo: dict) -> bytes:
    tag = b"F" + _FORMULA_TAGS[type(f)]
    if isinstance(f, (Atom, NegAtom)):
        return tag + _name(f.pred) + _varint(len(f.args)) + b"".join(_ser_term(a, memo) for a in f.args)
    if isinstance(f, Not):
        return tag + _ser_formula(f.body, memo)
    if isinstance(f, BINARY):
        return tag + _ser_formula(f.left, memo) + _ser_formula(f.right, memo)
    return tag + _name(f.var) + _ser_formula(f.body, memo)


def serialize(obj, memo: dict | None = None) -> bytes:
    """Canonical bytes for terms, formulas, ints, tuples and (frozen)sets."""
    memo = {} if memo is None else memo
    if isinstance(obj, Term):
        return _ser_term(obj, memo)
    if isinstance(obj, _FORMULA_TYPES):
        return _ser_formula(obj, memo)
    if isinstance(obj, bool):
        obj = int(obj)
    if isinstance(obj, int):
        if obj < 0:
            raise ValueError("only natural numbers are coded")
        raw = obj.to_bytes((obj.bit_length() + 7) // 8, "big")
        return b"I" + _varint(len(raw)) + raw
    if isinstance(obj, str):
        return b"N" + _name(obj)
    if isinstance(obj, tuple):
        return b"P" + _varint(len(obj)) + b"".join(serialize(x, memo) for x in obj)
    if isinstance(obj, (set, frozenset, list)):
        items = sorted({serialize(x, memo) for x in obj}, key=lambda b: (len(b), b))
        return b"S" + _varint(len(items)) + b"".join(items)
    raise TypeError(f"cannot code {type(obj).__name__}")


_FORMULA_TYPES = tuple(_FORMULA_TAGS)


def _code(raw: bytes) -> int:
    return int.from_bytes(b"\x01" + raw, "big")


def code(obj) -> int:
    return _code(serialize(obj))


def code_term(t: Term) -> int:
    return _code(serialize(t))


def code_formula(f: Formula) -> int:
    return _code(serialize(f))


def code_set(items: Iterable) -> int:
    """Code of a finite set; lists are read as sets (duplicates collapse)."""
    return _code(serialize(frozenset(items) if not isinstance(items, (set, frozenset)) else items))


def code_tuple(items: Sequence) -> int:
    return _code(serialize(tuple(items)))


def code_evaluation(p) -> int:
    """Code of the set of (atom, bit) pairs of a total evaluation."""
    if not len(p.values):
        raise ValueError("evaluations are total; empty assignment rejected")
    pairs = [(Atom(pred, args), v) for (pred, args), v in zip(p.table.atoms, p.values)]
    return _code(serialize(set(pairs)))


def log2_floor(n: int) -> int:
    return n.bit_length() - 1


# ---------------------------------------------------------------------------
# Polynomial-bound fitting: code <= y**n + n


def min_exponent(code_value: int, y: int) -> int:
    """Least ``n >= 0`` with ``code <= y**n + n``."""
    if code_value <= 1:
        return 0
    if y <= 1:
        # y**n + n is n + (0 or 1)
        return max(code_value - y, 0)
    n = max((code_value.bit_length() - 1) // y.bit_length(), 0)
    while y ** n + n < code_value:
        n += 1
    return n


def min_exponent_pow2(code_value: int, e: int) -> int:
    """Least ``n`` with ``code <= 2**(e*n) + n`` (``y = 2**e``, ``e >= 1``)."""
    if e < 1:
        raise ValueError("exponent of y must be >= 1")
    n = max((code_value.bit_length() - 1) // e - 1, 0)
    while True:
        if e * n >= code_value.bit_length() or (1 << (e * n)) + n >= code_value:
            return n
        n += 1


@dataclass
class PBoundCheck:
    """Observed ``(log2 y, log2 code)`` pairs and the exponents fitted to them."""

    label: str
    pairs: list[tuple[int, int]] = field(default_factory=list)  # (bits of y, bits of code)
    exponents: list[int] = field(default_factory=list)
    exact: list[bool] = field(default_factory=list)

    @property
    def n(self) -> int:
        return max(self.exponents, default=0)

    @property
    def spread(self) -> int:
        """Difference between the largest and smallest per-sample exponent."""
        return self.n - min(self.exponents, default=0)

    def add_exact(self, code_value: int, y: int) -> None:
        self.pairs.append((y.bit_length(), code_value.bit_length()))
        self.exponents.append(min_exponent(code_value, y))
        self.exact.append(True)

    def add_pow2(self, code_value: int, e: int) -> None:
        self.pairs.append((e + 1, code_value.bit_length()))
        self.exponents.append(min_exponent_pow2(code_value, e))
        self.exact.append(True)

    def add_log(self, code_value: int, log2_y_lower: int) -> None:
        """``y`` known only through ``log2 y >= log2_y_lower``: report an
        exponent that certainly suffices (not necessarily the least)."""
        bits = code_value.bit_length()
        self.pairs.append((log2_y_lower, bits))
        self.exponents.append(max(-(-bits // max(log2_y_lower, 1)), 0))
        self.exact.append(False)

    def holds(self, n: int) -> bool:
        """Whether the single exponent ``n`` covers every sample."""
        return all(e <= n for e in self.exponents)

    def to_json(self) -> dict:
        return {"label": self.label, "n": self.n, "spread": self.spread,
                "exponents": self.exponents,
                "pairs_bits": [list(p) for p in self.pairs], "exact": self.exact}


# ---------------------------------------------------------------------------
# Measured bounds


def union_ratio(a: Iterable, b: Iterable) -> Fraction:
    """``code(A | B) / (code(A) * code(B))``."""
    a, b = frozenset(a), frozenset(b)
    return Fraction(code_set(a | b), code_set(a) * code_set(b))


def union_bound_holds(a: Iterable, b: Iterable, constant: int = 64) -> bool:
    a, b = frozenset(a), frozenset(b)
    return code_set(a | b) <= constant * code_set(a) * code_set(b)


def cardinality_bound_holds(a: Iterable) -> bool:
    """``|A| <= log2 code(A)``."""
    a = frozenset(a)
    return len(a) <= log2_floor(code_set(a))


def evaluation_bound(p, check: PBoundCheck | None = None) -> PBoundCheck:
    """Compare ``code(p)`` against ``omega_1(code(lam))``.

    ``omega_1(c) = 2**((log c)**2)`` is a power of two, so the fitted
    exponent is exact without materializing it.
    """
    from .hierarchy import log_
    check = check or PBoundCheck("evaluation")
    c = code_set(p.lam.members)
    check.add_pow2(code_evaluation(p), log_(c) ** 2)
    return check


def check_universe_code_bound(lam, n: int, reg=None, cfg=None,
                              check: PBoundCheck | None = None) -> PBoundCheck:
    """Compare ``code(lam^<n>)`` with ``code(lam) ** (|lam| ** (n+1)!)``."""
    import math
    from .universe import close_universe
    if n < 0 or n > 3:
        raise ValueError("n must be in 0..3")
    check = check or PBoundCheck(f"universe n={n}")
    members = list(lam)
    if cfg is None:
        from .universe import UniverseConfig
        cfg = UniverseConfig(max_terms=1_000_000)
    closed = close_universe(members, n, reg, cfg)
    c = code_set(members)
    e = len(members) ** math.factorial(n + 1)
    measured = code_set(closed.members)
    if c.bit_length() * e <= 1 << 16:
        check.add_exact(measured, c ** e)
    else:
        check.add_log(measured, (c.bit_length() - 1) * e)
    return check


def cartesian_power(a: Sequence, m: int) -> list[tuple]:
    import itertools
    return list(itertools.product(list(a), repeat=m))


def check_power_code_bound(a: Iterable, m: int, check: PBoundCheck | None = None) -> PBoundCheck:
    """Compare ``code(A^m)`` with ``code(A) ** (|A| ** m)``."""
    a = list(frozenset(a))
    check = check or PBoundCheck(f"power m={m}")
    c = code_set(a)
    e = len(a) ** m
    measured = code_set(cartesian_power(a, m))
    if c.bit_length() * e <= 1 << 16:
        check.add_exact(measured, c ** e)
    else:
        check.add_log(measured, (c.bit_length() - 1) * e)
    return check
