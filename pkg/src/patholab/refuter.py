"""Refutation search: iterative-deepening ground resolution.

The theory is clausified once (see clausal), then for each depth d = 1, 2,
... the clause patterns are instantiated with every ground term of nesting
depth <= d and the resulting ground clause set is saturated by ordered
resolution: a clause resolves only on its maximal atom (atoms are numbered
in first-encounter order, which is deterministic).  Deriving the empty
clause proves the theory inconsistent; the reported depth is the first
depth at which that happens.

Every created ground clause, instance or resolvent, consumes one step of
the budget, and step counts accumulate across depths, so a search that
proves at depth 2 reports the work done at depth 1 too.

Proof objects record the used axioms, their clause forms, the ground
instances, and the resolution steps; proofcheck re-derives the clause forms
independently and validates each step, so a proof stands on its own.

Serialized form, one step per line::

    <id> <rule> <premise-ids or -> <sentence or clause text>

where rule is axiom, clausify:<k> (the k-th clause of the premise
sentence), instance, or resolve, and the empty clause prints as Falsum.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .clausal import (clause_to_text, clause_vars, clausify_theory,
                      ground_terms, instantiate_clause,
                      signature_of_clauses)
from .syntax import Formula, to_text
from .theory import Theory


@dataclass(frozen=True)
class Budget:
    max_depth: int = 3
    max_steps: int = 50000


@dataclass(frozen=True)
class ProofStep:
    index: int
    rule: str
    premises: tuple
    sentence: Formula | None = None
    clause: tuple | None = None


@dataclass(frozen=True)
class Proof:
    steps: tuple


@dataclass(frozen=True)
class Refutation:
    proof: Proof
    depth_used: int
    steps_used: int


@dataclass(frozen=True)
class NoRefutation:
    reason: str
    steps_used: int


def step_to_text(step: ProofStep) -> str:
    prem = ",".join(str(p) for p in step.premises) if step.premises else "-"
    if step.sentence is not None:
        body = to_text(step.sentence)
    else:
        body = clause_to_text(step.clause)
    return f"{step.index} {step.rule} {prem} {body}"


def proof_to_text(proof: Proof) -> str:
    return "\n".join(step_to_text(s) for s in proof.steps)


class _StepsOut(Exception):
    def __init__(self, steps):
        self.steps = steps


class _EmptyFound(Exception):
    def __init__(self, cid, steps):
        self.cid = cid
        self.steps = steps


class _DepthRun:
    """One saturation pass over all instances at a fixed term depth."""

    def __init__(self, steps_start: int, max_steps: int):
        self.atom_ids = {}
        self.atom_list = [None]  # 1-based
        self.clauses = []  # frozensets of signed atom ids
        self.derivation = []  # ("instance", si, ci, lits) | ("resolve", a, b)
        self.seen = set()
        self.queue = []
        self.steps = steps_start
        self.max_steps = max_steps

    def intern(self, lit) -> int:
        sign, kind, lhs, rhs = lit
        key = (kind, lhs, rhs)
        aid = self.atom_ids.get(key)
        if aid is None:
            aid = len(self.atom_list)
            self.atom_ids[key] = aid
            self.atom_list.append(key)
        return aid if sign else -aid

    def lit_tuple(self, signed: int):
        kind, lhs, rhs = self.atom_list[abs(signed)]
        return (signed > 0, kind, lhs, rhs)

    def add(self, encoded: frozenset, deriv) -> None:
        self.steps += 1
        if self.steps > self.max_steps:
            raise _StepsOut(self.steps)
        if any(-lit in encoded for lit in encoded):
            return
        if encoded in self.seen:
            return
        self.seen.add(encoded)
        cid = len(self.clauses)
        self.clauses.append(encoded)
        self.derivation.append(deriv)
        self.queue.append(cid)
        if not encoded:
            raise _EmptyFound(cid, self.steps)

    def instantiate_all(self, clause_lists, terms) -> None:
        for si, patterns in enumerate(clause_lists):
            for ci, pattern in enumerate(patterns):
                names = clause_vars(pattern)
                for values in itertools.product(terms, repeat=len(names)):
                    lits = instantiate_clause(pattern, names, list(values))
                    encoded = frozenset(self.intern(lit) for lit in lits)
                    deduped = tuple(dict.fromkeys(lits))
                    self.add(encoded, ("instance", si, ci, deduped))

    def saturate(self) -> None:
        pos_index = {}
        neg_index = {}
        head = 0
        while head < len(self.queue):
            cid = self.queue[head]
            head += 1
            clause = self.clauses[cid]
            top = max(abs(lit) for lit in clause)
            positive = top in clause
            mine = top if positive else -top
            partners = (neg_index if positive else pos_index).get(top, ())
            for did in list(partners):
                other = self.clauses[did]
                resolvent = (clause - {mine}) | (other - {-mine})
                self.add(frozenset(resolvent), ("resolve", cid, did))
            (pos_index if positive else neg_index).setdefault(top, []).append(cid)


def _reconstruct(sentences, clause_lists, run: _DepthRun, empty_cid: int) -> Proof:
    # dependency closure of the empty clause, in emission order
    needed = []
    marked = set()
    stack = [(empty_cid, False)]
    while stack:
        cid, expanded = stack.pop()
        if expanded:
            needed.append(cid)
            continue
        if cid in marked:
            continue
        marked.add(cid)
        stack.append((cid, True))
        deriv = run.derivation[cid]
        if deriv[0] == "resolve":
            stack.append((deriv[2], False))
            stack.append((deriv[1], False))
    used_patterns = []
    for cid in needed:
        deriv = run.derivation[cid]
        if deriv[0] == "instance" and (deriv[1], deriv[2]) not in used_patterns:
            used_patterns.append((deriv[1], deriv[2]))
    used_patterns.sort()
    used_sentences = sorted({si for si, _ in used_patterns})

    steps = []
    axiom_step = {}
    for si in used_sentences:
        axiom_step[si] = len(steps)
        steps.append(ProofStep(len(steps), "axiom", (), sentence=sentences[si]))
    clausify_step = {}
    for si, ci in used_patterns:
        clausify_step[(si, ci)] = len(steps)
        steps.append(ProofStep(len(steps), f"clausify:{ci}", (axiom_step[si],),
                               clause=clause_lists[si][ci]))
    clause_step = {}
    for cid in needed:
        deriv = run.derivation[cid]
        if deriv[0] == "instance":
            _, si, ci, lits = deriv
            steps.append(ProofStep(len(steps), "instance",
                                   (clausify_step[(si, ci)],), clause=lits))
        else:
            _, left, right = deriv
            lits = tuple(run.lit_tuple(s) for s in sorted(run.clauses[cid]))
            steps.append(ProofStep(len(steps), "resolve",
                                   (clause_step[left], clause_step[right]),
                                   clause=lits))
        clause_step[cid] = len(steps) - 1
    return Proof(tuple(steps))


def refute(theory: Theory, budget: Budget = Budget()):
    """Refutation | NoRefutation for the theory under the budget."""

    clause_lists, used_names = clausify_theory(theory.sentences)
    constants, functions = signature_of_clauses(clause_lists)
    steps = 0
    for depth in range(1, budget.max_depth + 1):
        terms = ground_terms(constants, functions, depth)
        run = _DepthRun(steps, budget.max_steps)
        try:
            run.instantiate_all(clause_lists, terms)
            run.saturate()
        except _EmptyFound as found:
            proof = _reconstruct(theory.sentences, clause_lists, run, found.cid)
            return Refutation(proof, depth, found.steps)
        except _StepsOut as out:
            return NoRefutation(
                f"step budget exhausted at depth {depth}", out.steps)
        steps = run.steps
    return NoRefutation(
        f"saturated without refutation through depth {budget.max_depth}", steps)
