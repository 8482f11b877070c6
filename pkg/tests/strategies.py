"""Hypothesis strategies for arithmetic terms and formulas."""

from __future__ import annotations

from hypothesis import strategies as st

from hcon.syntax import (
    ZERO, And, Atom, Exists, Forall, Iff, Implies, NegAtom, Not, Or, add, const, fn, mul, succ,
    var,
)

VARS = ["x", "y", "z", "u"]


def terms(variables=VARS, constants=("c",), skolem=(), max_leaves=6):
    leaves = [st.just(ZERO)] + [st.just(const(c)) for c in constants]
    leaves += [st.just(var(v)) for v in variables]

    def extend(children):
        opts = [
            children.map(succ),
            st.tuples(children, children).map(lambda p: add(*p)),
            st.tuples(children, children).map(lambda p: mul(*p)),
        ]
        for name, ar in skolem:
            opts.append(st.tuples(*[children] * ar).map(lambda p, n=name: fn(n, *p)))
        return st.one_of(opts)

    return st.recursive(st.one_of(leaves), extend, max_leaves=max_leaves)


def ground_terms(constants=("c",), skolem=(), max_leaves=5):
    return terms((), constants, skolem, max_leaves)


def literals(term_st):
    pair = st.tuples(term_st, term_st)
    return st.one_of(
        pair.map(lambda p: Atom("=", p)),
        pair.map(lambda p: Atom("<=", p)),
        pair.map(lambda p: NegAtom("=", p)),
        pair.map(lambda p: NegAtom("<=", p)),
    )


def formulas(variables=VARS, constants=("c",), max_leaves=6, quantifiers=True):
    base = literals(terms(variables, constants, max_leaves=3))

    def extend(children):
        opts = [
            children.map(Not),
            st.tuples(children, children).map(lambda p: And(*p)),
            st.tuples(children, children).map(lambda p: Or(*p)),
            st.tuples(children, children).map(lambda p: Implies(*p)),
            st.tuples(children, children).map(lambda p: Iff(*p)),
        ]
        if quantifiers:
            v = st.sampled_from(variables)
            opts.append(st.tuples(v, children).map(lambda p: Forall(*p)))
            opts.append(st.tuples(v, children).map(lambda p: Exists(*p)))
        return st.one_of(opts)

    return st.recursive(base, extend, max_leaves=max_leaves)
