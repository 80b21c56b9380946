"""Deterministic random formula generation for the fuzz-driven tests.

Everything is driven by an explicit random.Random seed, so a given seed
always yields the same corpus, on any machine.  Two entry points matter:

  random_formula(rng, ...)        arbitrary ASTs (for print/parse round-trips)
  nearly_closed_corpus(seed, n)   formulas whose only free variable is x
"""

from __future__ import annotations

import random

from patholab.syntax import (And, Equality, Exists, Falsum, FnApp, Forall,
                             Iff, Implies, Membership, Not, Or, SetAbs,
                             Variable, Verum, free_vars)

NAME_POOL = ("x", "y", "z", "u", "v", "w")
FN_POOL = ("f", "g")


def random_term(rng: random.Random, scope: tuple, depth: int,
                allow_fnapp: bool, allow_setabs: bool):
    roll = rng.random()
    if depth > 0 and allow_fnapp and roll < 0.12:
        symbol = rng.choice(FN_POOL)
        arity = rng.choice((1, 1, 2))
        args = tuple(random_term(rng, scope, depth - 1, allow_fnapp,
                                 allow_setabs) for _ in range(arity))
        return FnApp(symbol, args)
    if depth > 0 and allow_setabs and roll < 0.22:
        var = rng.choice(NAME_POOL)
        body = random_formula(rng, tuple(dict.fromkeys(scope + (var,))),
                              depth - 1, allow_fnapp, allow_setabs)
        return SetAbs(var, body)
    return Variable(rng.choice(scope))


def random_formula(rng: random.Random, scope: tuple = ("x",), depth: int = 4,
                   allow_fnapp: bool = True, allow_setabs: bool = True):
    """A random formula whose free variables all come from ``scope``."""

    def atom():
        roll = rng.random()
        if roll < 0.05:
            return Verum()
        if roll < 0.10:
            return Falsum()
        lhs = random_term(rng, scope, depth - 1, allow_fnapp, allow_setabs)
        rhs = random_term(rng, scope, depth - 1, allow_fnapp, allow_setabs)
        return Equality(lhs, rhs) if roll < 0.30 else Membership(lhs, rhs)

    if depth <= 0:
        return atom()
    roll = rng.random()
    if roll < 0.30:
        return atom()
    if roll < 0.45:
        return Not(random_formula(rng, scope, depth - 1, allow_fnapp,
                                  allow_setabs))
    if roll < 0.75:
        cls = rng.choice((And, And, Or, Implies, Iff))
        return cls(random_formula(rng, scope, depth - 1, allow_fnapp,
                                  allow_setabs),
                   random_formula(rng, scope, depth - 1, allow_fnapp,
                                  allow_setabs))
    cls = rng.choice((Forall, Exists))
    var = rng.choice(NAME_POOL)
    body = random_formula(rng, tuple(dict.fromkeys(scope + (var,))),
                          depth - 1, allow_fnapp, allow_setabs)
    return cls(var, body)


def random_nearly_closed(rng: random.Random, depth: int = 4,
                         allow_fnapp: bool = True, allow_setabs: bool = True):
    """A formula with free variables exactly {x}.  Rejection sampling; the
    generator's scope discipline makes acceptance frequent."""

    while True:
        f = random_formula(rng, ("x",), depth, allow_fnapp, allow_setabs)
        if free_vars(f) == frozenset(("x",)):
            return f


def nearly_closed_corpus(seed: int, count: int, depth: int = 4,
                         allow_fnapp: bool = True, allow_setabs: bool = True):
    rng = random.Random(seed)
    return [random_nearly_closed(rng, depth, allow_fnapp, allow_setabs)
            for _ in range(count)]


def formula_corpus(seed: int, count: int, depth: int = 4):
    """Arbitrary (possibly closed or multi-free) formulas, constants
    excluded: the surface grammar cannot spell them."""

    rng = random.Random(seed)
    scope_sizes = [1, 2, 3]
    out = []
    for i in range(count):
        scope = NAME_POOL[:scope_sizes[i % len(scope_sizes)]]
        out.append(random_formula(rng, tuple(scope), depth))
    return out
