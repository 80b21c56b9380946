"""Core syntax: terms, formulas, and structural operations.

Terms are built from variables, constants, set abstractions ``{v : body}``
and function applications.  Formulas are membership and equality atoms,
Verum/Falsum, the propositional connectives, and quantifiers.  All nodes are
immutable and hashable; every operation here is a pure function.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")

CANONICAL_VAR = "x"


def is_identifier(name: str) -> bool:
    return bool(IDENT_RE.match(name))


class Term:
    pass


@dataclass(frozen=True)
class Variable(Term):
    name: str


@dataclass(frozen=True)
class Constant(Term):
    """A constant symbol.  The surface grammar has no constant syntax; these
    arise when a theory names a set abstraction."""

    name: str


@dataclass(frozen=True)
class SetAbs(Term):
    """Set abstraction ``{var : body}``; binds ``var`` inside ``body``."""

    var: str
    body: "Formula"


@dataclass(frozen=True)
class FnApp(Term):
    symbol: str
    args: tuple


class Formula:
    pass


@dataclass(frozen=True)
class Membership(Formula):
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class Equality(Formula):
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class Verum(Formula):
    pass


@dataclass(frozen=True)
class Falsum(Formula):
    pass


@dataclass(frozen=True)
class Not(Formula):
    sub: Formula


@dataclass(frozen=True)
class And(Formula):
    lhs: Formula
    rhs: Formula


@dataclass(frozen=True)
class Or(Formula):
    lhs: Formula
    rhs: Formula


@dataclass(frozen=True)
class Implies(Formula):
    lhs: Formula
    rhs: Formula


@dataclass(frozen=True)
class Iff(Formula):
    lhs: Formula
    rhs: Formula


@dataclass(frozen=True)
class Forall(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class Exists(Formula):
    var: str
    body: Formula


BINARY_SYMBOL = {And: "&", Or: "|", Implies: "->", Iff: "<->"}
BINARY_CLASSES = (And, Or, Implies, Iff)
QUANT_CLASSES = (Forall, Exists)
QUANT_SYMBOL = {Forall: "forall", Exists: "exists"}


# ---------------------------------------------------------------------------
# free variables


def term_free_vars(t: Term) -> frozenset:
    if isinstance(t, Variable):
        return frozenset((t.name,))
    if isinstance(t, Constant):
        return frozenset()
    if isinstance(t, SetAbs):
        return free_vars(t.body) - {t.var}
    if isinstance(t, FnApp):
        out = frozenset()
        for a in t.args:
            out |= term_free_vars(a)
        return out
    raise TypeError(f"not a term: {t!r}")


def free_vars(f: Formula) -> frozenset:
    if isinstance(f, (Membership, Equality)):
        return term_free_vars(f.lhs) | term_free_vars(f.rhs)
    if isinstance(f, (Verum, Falsum)):
        return frozenset()
    if isinstance(f, Not):
        return free_vars(f.sub)
    if isinstance(f, BINARY_CLASSES):
        return free_vars(f.lhs) | free_vars(f.rhs)
    if isinstance(f, QUANT_CLASSES):
        return free_vars(f.body) - {f.var}
    raise TypeError(f"not a formula: {f!r}")


def identifiers(f: Formula) -> frozenset:
    """Every identifier appearing anywhere: variable names (free or bound),
    binder names, constant names, and function symbols."""

    out = set()

    def walk_t(t):
        if isinstance(t, Variable) or isinstance(t, Constant):
            out.add(t.name)
        elif isinstance(t, SetAbs):
            out.add(t.var)
            walk_f(t.body)
        elif isinstance(t, FnApp):
            out.add(t.symbol)
            for a in t.args:
                walk_t(a)

    def walk_f(g):
        if isinstance(g, (Membership, Equality)):
            walk_t(g.lhs)
            walk_t(g.rhs)
        elif isinstance(g, Not):
            walk_f(g.sub)
        elif isinstance(g, BINARY_CLASSES):
            walk_f(g.lhs)
            walk_f(g.rhs)
        elif isinstance(g, QUANT_CLASSES):
            out.add(g.var)
            walk_f(g.body)

    walk_f(f)
    return frozenset(out)


def function_symbols(f: Formula) -> dict:
    """Map of function symbol -> arity for every FnApp in the formula."""

    out = {}

    def walk_t(t):
        if isinstance(t, SetAbs):
            walk_f(t.body)
        elif isinstance(t, FnApp):
            out[t.symbol] = len(t.args)
            for a in t.args:
                walk_t(a)

    def walk_f(g):
        if isinstance(g, (Membership, Equality)):
            walk_t(g.lhs)
            walk_t(g.rhs)
        elif isinstance(g, Not):
            walk_f(g.sub)
        elif isinstance(g, BINARY_CLASSES):
            walk_f(g.lhs)
            walk_f(g.rhs)
        elif isinstance(g, QUANT_CLASSES):
            walk_f(g.body)

    walk_f(f)
    return out


# ---------------------------------------------------------------------------
# printing

def term_to_text(t: Term) -> str:
    if isinstance(t, (Variable, Constant)):
        return t.name
    if isinstance(t, SetAbs):
        return "{%s : %s}" % (t.var, to_text(t.body))
    if isinstance(t, FnApp):
        return "%s(%s)" % (t.symbol, ", ".join(term_to_text(a) for a in t.args))
    raise TypeError(f"not a term: {t!r}")


def _paren(f: Formula) -> str:
    # Verum/Falsum are unambiguous bare; everything else gets parentheses so
    # the printed tree reparses with exactly the same shape.
    s = to_text(f)
    if isinstance(f, (Verum, Falsum)):
        return s
    return "(" + s + ")"


def to_text(f: Formula) -> str:
    """Render a formula; parse(to_text(f)) is alpha-equivalent to f."""

    if isinstance(f, Membership):
        return f"{term_to_text(f.lhs)} in {term_to_text(f.rhs)}"
    if isinstance(f, Equality):
        return f"{term_to_text(f.lhs)} = {term_to_text(f.rhs)}"
    if isinstance(f, Verum):
        return "Verum"
    if isinstance(f, Falsum):
        return "Falsum"
    if isinstance(f, Not):
        return "not " + _paren(f.sub)
    if isinstance(f, BINARY_CLASSES):
        sym = BINARY_SYMBOL[type(f)]
        return f"{_paren(f.lhs)} {sym} {_paren(f.rhs)}"
    if isinstance(f, QUANT_CLASSES):
        return f"{QUANT_SYMBOL[type(f)]} {f.var}: " + _paren(f.body)
    raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------------------
# substitution

def fresh_name(base: str, avoid) -> str:
    if base not in avoid:
        return base
    k = 1
    while f"{base}_{k}" in avoid:
        k += 1
    return f"{base}_{k}"


def term_substitute(t: Term, name: str, replacement: Term) -> Term:
    if name not in term_free_vars(t):
        return t
    if isinstance(t, Variable):
        return replacement
    if isinstance(t, SetAbs):
        v, body = t.var, t.body
        if v in term_free_vars(replacement):
            nv = fresh_name(v, free_vars(body) | term_free_vars(replacement) | {name})
            body = substitute(body, v, Variable(nv))
            v = nv
        return SetAbs(v, substitute(body, name, replacement))
    if isinstance(t, FnApp):
        return FnApp(t.symbol, tuple(term_substitute(a, name, replacement) for a in t.args))
    return t


def substitute(f: Formula, name: str, replacement: Term) -> Formula:
    """Capture-avoiding substitution of `replacement` for free `name`."""

    if name not in free_vars(f):
        return f
    if isinstance(f, Membership):
        return Membership(term_substitute(f.lhs, name, replacement),
                          term_substitute(f.rhs, name, replacement))
    if isinstance(f, Equality):
        return Equality(term_substitute(f.lhs, name, replacement),
                        term_substitute(f.rhs, name, replacement))
    if isinstance(f, Not):
        return Not(substitute(f.sub, name, replacement))
    if isinstance(f, BINARY_CLASSES):
        return type(f)(substitute(f.lhs, name, replacement),
                       substitute(f.rhs, name, replacement))
    if isinstance(f, QUANT_CLASSES):
        v, body = f.var, f.body
        if v == name:
            return f
        if v in term_free_vars(replacement):
            nv = fresh_name(v, free_vars(body) | term_free_vars(replacement) | {name})
            body = substitute(body, v, Variable(nv))
            v = nv
        return type(f)(v, substitute(body, name, replacement))
    return f


# ---------------------------------------------------------------------------
# subformulas

def subformulas(f: Formula) -> list:
    """All formula nodes in pre-order, each paired with its own free-variable
    set.  Bodies of set abstractions are included; a variable bound by an
    enclosing binder still counts as free in the subformula itself."""

    out = []

    def walk_t(t):
        if isinstance(t, SetAbs):
            walk_f(t.body)
        elif isinstance(t, FnApp):
            for a in t.args:
                walk_t(a)

    def walk_f(g):
        out.append((g, free_vars(g)))
        if isinstance(g, (Membership, Equality)):
            walk_t(g.lhs)
            walk_t(g.rhs)
        elif isinstance(g, Not):
            walk_f(g.sub)
        elif isinstance(g, BINARY_CLASSES):
            walk_f(g.lhs)
            walk_f(g.rhs)
        elif isinstance(g, QUANT_CLASSES):
            walk_f(g.body)

    walk_f(f)
    return out


def node_count(f: Formula) -> int:
    return len(subformulas(f))


# ---------------------------------------------------------------------------
# alpha equivalence

def alpha_equivalent(f: Formula, g: Formula) -> bool:
    def eq_t(s, t, env_s, env_t):
        if type(s) is not type(t):
            return False
        if isinstance(s, Variable):
            bs, bt = env_s.get(s.name), env_t.get(t.name)
            if bs is None and bt is None:
                return s.name == t.name
            return bs is not None and bs == bt
        if isinstance(s, Constant):
            return s.name == t.name
        if isinstance(s, SetAbs):
            depth = len(env_s)
            return eq_f(s.body, t.body,
                        {**env_s, s.var: depth}, {**env_t, t.var: depth})
        if isinstance(s, FnApp):
            return (s.symbol == t.symbol and len(s.args) == len(t.args)
                    and all(eq_t(a, b, env_s, env_t) for a, b in zip(s.args, t.args)))
        return False

    def eq_f(a, b, env_a, env_b):
        if type(a) is not type(b):
            return False
        if isinstance(a, (Membership, Equality)):
            return eq_t(a.lhs, b.lhs, env_a, env_b) and eq_t(a.rhs, b.rhs, env_a, env_b)
        if isinstance(a, (Verum, Falsum)):
            return True
        if isinstance(a, Not):
            return eq_f(a.sub, b.sub, env_a, env_b)
        if isinstance(a, BINARY_CLASSES):
            return eq_f(a.lhs, b.lhs, env_a, env_b) and eq_f(a.rhs, b.rhs, env_a, env_b)
        if isinstance(a, QUANT_CLASSES):
            depth = len(env_a)
            return eq_f(a.body, b.body,
                        {**env_a, a.var: depth}, {**env_b, b.var: depth})
        return False

    return eq_f(f, g, {}, {})


def alpha_key(node) -> str:
    """Canonical string for alpha-equivalence classes (bound variables
    replaced by binder depth indices)."""

    def key_t(t, env):
        if isinstance(t, Variable):
            b = env.get(t.name)
            return f"V{b}" if b is not None else f"v:{t.name}"
        if isinstance(t, Constant):
            return f"c:{t.name}"
        if isinstance(t, SetAbs):
            return "abs(" + key_f(t.body, {**env, t.var: len(env)}) + ")"
        if isinstance(t, FnApp):
            return t.symbol + "(" + ",".join(key_t(a, env) for a in t.args) + ")"
        raise TypeError(f"not a term: {t!r}")

    def key_f(g, env):
        if isinstance(g, Membership):
            return f"in({key_t(g.lhs, env)},{key_t(g.rhs, env)})"
        if isinstance(g, Equality):
            return f"eq({key_t(g.lhs, env)},{key_t(g.rhs, env)})"
        if isinstance(g, Verum):
            return "T"
        if isinstance(g, Falsum):
            return "F"
        if isinstance(g, Not):
            return "not(" + key_f(g.sub, env) + ")"
        if isinstance(g, BINARY_CLASSES):
            return f"{BINARY_SYMBOL[type(g)]}({key_f(g.lhs, env)},{key_f(g.rhs, env)})"
        if isinstance(g, QUANT_CLASSES):
            return (QUANT_SYMBOL[type(g)] + "(" +
                    key_f(g.body, {**env, g.var: len(env)}) + ")")
        raise TypeError(f"not a formula: {g!r}")

    if isinstance(node, Term):
        return key_t(node, {})
    return key_f(node, {})


# ---------------------------------------------------------------------------
# nearly-closed formulas

@dataclass(frozen=True)
class NearlyClosed:
    """A formula with exactly one free variable."""

    formula: Formula
    the_var: str


@dataclass(frozen=True)
class Rejection:
    """Returned when a formula is not nearly-closed; carries the offending
    free-variable set (empty for closed formulas)."""

    free: frozenset


def nearly_closed(f: Formula):
    fv = free_vars(f)
    if len(fv) == 1:
        return NearlyClosed(f, next(iter(fv)))
    return Rejection(fv)


def canonicalize(nc: NearlyClosed) -> NearlyClosed:
    """Rename the single free variable to the canonical ``x``.  Renaming is
    capture-avoiding: an inner binder named x is pushed out of the way."""

    if nc.the_var == CANONICAL_VAR:
        return nc
    return NearlyClosed(substitute(nc.formula, nc.the_var, Variable(CANONICAL_VAR)),
                        CANONICAL_VAR)


def wrap_closed(f: Formula) -> Formula:
    """Turn a closed formula B into the nearly-closed B & (x = x)."""

    return And(f, Equality(Variable(CANONICAL_VAR), Variable(CANONICAL_VAR)))
