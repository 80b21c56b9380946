"""Proof validation, independent of the search that produced the proof.

The checker re-clausifies the theory itself (clausify_sentence is a pure
function of the sentence list), so a clausify step is validated against a
recomputed clause rather than one remembered from the search.  Instance
steps are validated by a fresh backtracking match of the pattern clause
onto the claimed ground literals, and resolve steps by set arithmetic over
literal tuples.  Nothing here consults the refuter's internal state, so a
proof that passes is evidence on its own terms.
"""

from __future__ import annotations

from dataclasses import dataclass

from .clausal import (clausify_theory, literal_is_ground,
                      match_clause_instance)
from .refuter import Proof, ProofStep
from .theory import Theory


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    error: str = ""


def _fail(step: ProofStep, message: str) -> CheckResult:
    return CheckResult(False, f"step {step.index}: {message}")


def check_proof(proof: Proof, theory: Theory) -> CheckResult:
    if not proof.steps:
        return CheckResult(False, "empty proof")
    clause_lists, _ = clausify_theory(theory.sentences)
    sentence_index = {}  # step index -> sentence index
    ground_clause = {}  # step index -> tuple of literals
    pattern_clause = {}  # step index -> clause with variables

    for pos, step in enumerate(proof.steps):
        if step.index != pos:
            return _fail(step, f"index out of order (expected {pos})")
        for p in step.premises:
            if not (0 <= p < pos):
                return _fail(step, f"premise {p} does not precede the step")

        if step.rule == "axiom":
            if step.premises:
                return _fail(step, "axiom steps take no premises")
            if step.sentence is None:
                return _fail(step, "axiom step lacks a sentence")
            try:
                sentence_index[pos] = theory.sentences.index(step.sentence)
            except ValueError:
                return _fail(step, "sentence is not part of the theory")

        elif step.rule.startswith("clausify:"):
            try:
                k = int(step.rule.split(":", 1)[1])
            except ValueError:
                return _fail(step, f"malformed rule {step.rule!r}")
            if len(step.premises) != 1:
                return _fail(step, "clausify takes exactly one premise")
            si = sentence_index.get(step.premises[0])
            if si is None:
                return _fail(step, "clausify premise is not an axiom step")
            clauses = clause_lists[si]
            if not (0 <= k < len(clauses)):
                return _fail(step, f"sentence has no clause {k}")
            if step.clause is None or tuple(step.clause) != clauses[k]:
                return _fail(step, "clause differs from the recomputed one")
            pattern_clause[pos] = clauses[k]

        elif step.rule == "instance":
            if len(step.premises) != 1:
                return _fail(step, "instance takes exactly one premise")
            pattern = pattern_clause.get(step.premises[0])
            if pattern is None:
                return _fail(step, "instance premise is not a clausify step")
            if step.clause is None:
                return _fail(step, "instance step lacks a clause")
            lits = tuple(step.clause)
            if not all(literal_is_ground(lit) for lit in lits):
                return _fail(step, "instance clause is not ground")
            if not match_clause_instance(pattern, set(lits)):
                return _fail(step, "not an instance of the premise clause")
            ground_clause[pos] = lits

        elif step.rule == "resolve":
            if len(step.premises) != 2:
                return _fail(step, "resolve takes exactly two premises")
            left = ground_clause.get(step.premises[0])
            right = ground_clause.get(step.premises[1])
            if left is None or right is None:
                return _fail(step, "resolve premises must be ground clauses")
            if step.clause is None:
                return _fail(step, "resolve step lacks a clause")
            if not _valid_resolvent(set(left), set(right), set(step.clause)):
                return _fail(step, "clause is not a resolvent of the premises")
            ground_clause[pos] = tuple(step.clause)

        else:
            return _fail(step, f"unknown rule {step.rule!r}")

    last = proof.steps[-1]
    if ground_clause.get(last.index) != ():
        return CheckResult(False, "final step is not the empty clause")
    return CheckResult(True)


def _valid_resolvent(left: set, right: set, resolvent: set) -> bool:
    for a, b in ((left, right), (right, left)):
        for lit in a:
            if not lit[0]:
                continue
            complement = (False,) + lit[1:]
            if complement in b:
                if (a - {lit}) | (b - {complement}) == resolvent:
                    return True
    return False
