"""Syntactic recognition of membership-cycle bans and their derivatives.

The cycle ban of length n, written nc(n) here, forbids an n-step membership
cycle through the free variable:

    nc(1) = not (x in x)
    nc(n) = not exists v1: ... exists v_(n-1):
                ((x in v1) & (v1 in v2) & ... & (v_(n-1) in x))

A derivative keeps that skeleton but may replace any chain atom a by
``(a & not B)`` or ``(a | B)`` (one insertion layer per atom), and the whole
quantified body may carry one trailing ``& not B`` or ``| B``.  Formulas
matching a cycle ban or a derivative, at the top or at any nearly-closed
subformula, are flagged SyntP; everything else is SyntHnP.  The matcher works
modulo bound-variable renaming and conjunction reassociation.

This is a finite-pattern matcher: predicates that are pathological for
non-cyclic reasons (for example bans on infinite descending membership
chains) are out of its reach and can only be caught by the refuter.
"""

from __future__ import annotations

from dataclasses import dataclass

from .syntax import (And, Exists, Formula, Membership, NearlyClosed, Not, Or,
                     Variable, canonicalize, nearly_closed, subformulas,
                     to_text)

AND_NOT_B = "AndNotB"
OR_B = "OrB"


@dataclass(frozen=True)
class Insertion:
    position: int  # 0..n-1 index a chain atom; position n is the whole body
    kind: str  # AndNotB or OrB
    inserted: Formula


@dataclass(frozen=True)
class NcnMatch:
    n: int  # cycle length: number of chain atoms
    chain_vars: tuple  # the cycle's variables starting at the free one
    insertions: tuple


@dataclass(frozen=True)
class SyntVerdict:
    verdict: str  # "SyntP" or "SyntHnP"
    match: NcnMatch | None = None
    matched_subformula: Formula | None = None


def build_ncn(n: int, var: str = "x", chain_names=None) -> Formula:
    """Construct nc(n).  Chain variable names default to v1..v_(n-1)."""

    if n < 1:
        raise ValueError("cycle length must be positive")
    if n == 1:
        return Not(Membership(Variable(var), Variable(var)))
    names = list(chain_names) if chain_names else [f"v{i}" for i in range(1, n)]
    if len(names) != n - 1:
        raise ValueError("need n-1 chain variable names")
    chain = [var] + names + [var]
    atoms = [Membership(Variable(chain[i]), Variable(chain[i + 1]))
             for i in range(n)]
    body = atoms[0]
    for a in atoms[1:]:
        body = And(body, a)
    for name in reversed(names):
        body = Exists(name, body)
    return Not(body)


def _flatten_and(f: Formula) -> list:
    if isinstance(f, And):
        return _flatten_and(f.lhs) + _flatten_and(f.rhs)
    return [f]


def _peel_exists(f: Formula):
    bound = []
    while isinstance(f, Exists):
        bound.append(f.var)
        f = f.body
    return bound, f


def _chain_atoms(var: str, bound: list) -> list:
    chain = [var] + bound + [var]
    return [Membership(Variable(chain[i]), Variable(chain[i + 1]))
            for i in range(len(bound) + 1)]


def match_ncn(f: Formula, var: str = "x") -> NcnMatch | None:
    """Match f against a pure cycle ban; returns the (unique, hence smallest)
    n determined by the binder structure, or None."""

    if not isinstance(f, Not):
        return None
    if f.sub == Membership(Variable(var), Variable(var)):
        return NcnMatch(1, (var,), ())
    bound, body = _peel_exists(f.sub)
    if not bound:
        return None
    if len(set(bound) | {var}) != len(bound) + 1:
        return None  # repeated or shadowing binders never form a chain
    atoms = _chain_atoms(var, bound)
    conjuncts = _flatten_and(body)
    if conjuncts != atoms:
        return None
    return NcnMatch(len(atoms), (var, *bound), ())


def _match_decorated(conjuncts, atoms, start, out):
    """Consume expected chain atoms from a flattened conjunct list, allowing
    one insertion layer per atom: a disjunction decorates its own atom, and a
    negated conjunct decorates the atom consumed just before it (the
    conjunction "atom & not B" flattens to exactly that shape).  Appends
    Insertions to out; returns the next expected index or None."""

    i = start
    decorated = set()
    for g in conjuncts:
        expected = atoms[i] if i < len(atoms) else None
        if expected is not None and g == expected:
            i += 1
        elif expected is not None and isinstance(g, Or) and g.lhs == expected:
            out.append(Insertion(i, OR_B, g.rhs))
            decorated.add(i)
            i += 1
        elif isinstance(g, Not) and i > start and (i - 1) not in decorated:
            out.append(Insertion(i - 1, AND_NOT_B, g.sub))
            decorated.add(i - 1)
        else:
            return None
    return i


def _match_body(body, atoms, n):
    """Match the quantified body: decorated chain, optionally wrapped in one
    trailing whole-body insertion (reported at position n)."""

    insertions = []
    if _match_decorated(_flatten_and(body), atoms, 0, insertions) == n:
        return insertions
    if isinstance(body, And) and isinstance(body.rhs, Not):
        insertions = []
        if _match_decorated(_flatten_and(body.lhs), atoms, 0, insertions) == n:
            insertions.append(Insertion(n, AND_NOT_B, body.rhs.sub))
            return insertions
    if isinstance(body, Or):
        insertions = []
        if _match_decorated(_flatten_and(body.lhs), atoms, 0, insertions) == n:
            insertions.append(Insertion(n, OR_B, body.rhs))
            return insertions
    return None


def match_derivative(f: Formula, var: str = "x") -> NcnMatch | None:
    """Match f against a cycle-ban skeleton with insertions.  A pure cycle
    ban matches with an empty insertion list."""

    if not isinstance(f, Not):
        return None
    bound, body = _peel_exists(f.sub)
    if len(set(bound) | {var}) != len(bound) + 1:
        return None
    atoms = _chain_atoms(var, bound)
    n = len(atoms)
    insertions = _match_body(body, atoms, n)
    if insertions is None:
        return None
    return NcnMatch(n, (var, *bound), tuple(insertions))


def synt_classify(nc: NearlyClosed) -> SyntVerdict:
    """SyntP when the formula, or any nearly-closed subformula after renaming
    to the canonical variable, matches a cycle ban or derivative."""

    canon = canonicalize(nc)
    for sub, fvs in subformulas(canon.formula):
        if len(fvs) != 1:
            continue
        sub_canon = canonicalize(NearlyClosed(sub, next(iter(fvs))))
        match = match_ncn(sub_canon.formula) or match_derivative(sub_canon.formula)
        if match is not None:
            return SyntVerdict("SyntP", match, sub)
    return SyntVerdict("SyntHnP")


def match_to_dict(match: NcnMatch) -> dict:
    return {
        "n": match.n,
        "chain_vars": list(match.chain_vars),
        "insertions": [
            {"position": ins.position, "kind": ins.kind,
             "inserted": to_text(ins.inserted)}
            for ins in match.insertions
        ],
    }
