"""Builds the sentence set whose inconsistency defines a pathological
predicate.

For a nearly-closed candidate A(x) the theory contains

  * one comprehension instance per distinct closed set abstraction:
    ``forall y: ((y in c) <-> B(y))``, where c is a fresh constant naming
    ``{v : B}``.  c0 names the top-level abstraction {x : A}; nested closed
    abstractions get c1, c2, ... in pre-order, deduplicated up to renaming of
    bound variables.  Inside each instance, nested closed abstractions are
    replaced by their constants.
  * extensionality,
  * equality axioms: reflexivity, substitutivity in both membership
    positions and both equality positions, and per-argument substitutivity
    for every function symbol in scope.

An abstraction whose body mentions variables bound outside it has no closed
comprehension instance; it stays in place as an opaque term.
"""

from __future__ import annotations

from dataclasses import dataclass

from .syntax import (BINARY_CLASSES, QUANT_CLASSES, And, Constant, Equality,
                     Exists, FnApp, Forall, Formula, Iff, Implies, Membership,
                     NearlyClosed, Not, SetAbs, Variable, alpha_key,
                     canonicalize, function_symbols, identifiers, substitute,
                     term_free_vars)


@dataclass(frozen=True)
class Theory:
    sentences: tuple  # closed formulas, in deterministic order
    constants: tuple  # constant names, c0 first
    abstractions: tuple  # the SetAbs named by each constant, same order
    fn_symbols: tuple  # (symbol, arity) pairs, sorted


def _collect_closed_abs(f: Formula, out: list):
    """Closed set abstractions in pre-order, recursing into bodies."""

    def walk_t(t):
        if isinstance(t, SetAbs):
            if not term_free_vars(t):
                out.append(t)
            walk_f(t.body)
        elif isinstance(t, FnApp):
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


def _replace_closed_abs(f: Formula, mapping: dict) -> Formula:
    """Replace every closed set abstraction by its constant.  Outermost
    first: a replaced abstraction hides the ones nested inside it."""

    def walk_t(t):
        if isinstance(t, SetAbs):
            if not term_free_vars(t):
                return Constant(mapping[alpha_key(t)])
            return SetAbs(t.var, walk_f(t.body))
        if isinstance(t, FnApp):
            return FnApp(t.symbol, tuple(walk_t(a) for a in t.args))
        return t

    def walk_f(g):
        if isinstance(g, Membership):
            return Membership(walk_t(g.lhs), walk_t(g.rhs))
        if isinstance(g, Equality):
            return Equality(walk_t(g.lhs), walk_t(g.rhs))
        if isinstance(g, Not):
            return Not(walk_f(g.sub))
        if isinstance(g, BINARY_CLASSES):
            return type(g)(walk_f(g.lhs), walk_f(g.rhs))
        if isinstance(g, QUANT_CLASSES):
            return type(g)(g.var, walk_f(g.body))
        return g

    return walk_f(f)


def _equality_axioms(fn_symbols) -> list:
    u, v, w = Variable("u"), Variable("v"), Variable("w")
    axioms = [
        # extensionality
        Forall("u", Forall("v", Implies(
            Forall("z", Iff(Membership(Variable("z"), u),
                            Membership(Variable("z"), v))),
            Equality(u, v)))),
        # reflexivity
        Forall("u", Equality(u, u)),
        # substitutivity in membership, both positions
        Forall("u", Forall("v", Forall("w", Implies(
            Equality(u, v), Implies(Membership(u, w), Membership(v, w)))))),
        Forall("u", Forall("v", Forall("w", Implies(
            Equality(u, v), Implies(Membership(w, u), Membership(w, v)))))),
        # substitutivity in equality, both positions
        Forall("u", Forall("v", Forall("w", Implies(
            Equality(u, v), Implies(Equality(u, w), Equality(v, w)))))),
        Forall("u", Forall("v", Forall("w", Implies(
            Equality(u, v), Implies(Equality(w, u), Equality(w, v)))))),
    ]
    for symbol, arity in fn_symbols:
        for pos in range(arity):
            arg_names = [f"a{i}" for i in range(arity)]
            left_args = [Variable(n) for n in arg_names]
            right_args = list(left_args)
            left_args[pos] = u
            right_args[pos] = v
            body = Implies(Equality(u, v),
                           Equality(FnApp(symbol, tuple(left_args)),
                                    FnApp(symbol, tuple(right_args))))
            for name in reversed([n for i, n in enumerate(arg_names) if i != pos]):
                body = Forall(name, body)
            axioms.append(Forall("u", Forall("v", body)))
    return axioms


def build_cosi_theory(nc: NearlyClosed) -> Theory:
    """Theory for the candidate: comprehension instances, extensionality, and
    equality axioms.  Deterministic: same candidate, same sentences."""

    canon = canonicalize(nc)
    top = SetAbs(canon.the_var, canon.formula)

    ordered = [top]
    _collect_closed_abs(canon.formula, ordered)
    used_names = identifiers(canon.formula)

    mapping = {}  # alpha key -> constant name
    constants = []
    abstractions = []
    next_idx = 0
    for term in ordered:
        key = alpha_key(term)
        if key in mapping:
            continue
        while f"c{next_idx}" in used_names:
            next_idx += 1
        name = f"c{next_idx}"
        next_idx += 1
        mapping[key] = name
        constants.append(name)
        abstractions.append(term)

    fns = sorted(function_symbols(canon.formula).items())

    sentences = []
    member = Variable("y")
    for name, term in zip(constants, abstractions):
        body = _replace_closed_abs(term.body, mapping)
        body = substitute(body, term.var, member)
        sentences.append(
            Forall("y", Iff(Membership(member, Constant(name)), body)))
    sentences.extend(_equality_axioms(fns))

    return Theory(tuple(sentences), tuple(constants), tuple(abstractions),
                  tuple(fns))
