"""Finite model search for consistency certificates.

A model of size n is a membership digraph on elements 0..n-1 plus a
denotation for every theory constant.  ``edges[i][j] == 1`` means element i
is a member of element j.  The extensionality sentence in the theory forces
distinct elements to have distinct extensions, so found models are honest
set-like structures.

Enumeration contract: sizes ascend; within a size the reported model is the
first in lexicographic order over the adjacency bits read row-major with an
edge counting as smaller than a non-edge, ties broken by ascending
denotation tuples (theory constant order, earlier constants more
significant).  The search itself is a small SAT solver with a static
decision order and conflict-directed backjumping; backjumps only skip
regions whose conflict does not depend on the skipped decisions, so the
first model found is exactly the contractual one.

Function applications and set abstractions have no interpretation here;
they raise UnsupportedTerm and the caller reports the certificate as
unavailable rather than guessing.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .syntax import (And, Constant, Equality, Exists, Falsum, Forall,
                     Formula, Iff, Implies, Membership, Not, Or, Term,
                     Variable, Verum, term_to_text)
from .theory import Theory


class UnsupportedTerm(Exception):
    """A term with no finite-model interpretation (FnApp or SetAbs)."""


@dataclass(frozen=True)
class Model:
    size: int
    edges: tuple  # edges[i][j] == 1 iff element i is a member of element j
    den: tuple  # (constant name, element index) pairs, theory order

    def den_map(self) -> dict:
        return dict(self.den)

    def extension(self, j: int) -> frozenset:
        return frozenset(i for i in range(self.size) if self.edges[i][j])


def model_to_lines(model: Model) -> list:
    lines = [f"size {model.size}"]
    for i in range(model.size):
        lines.append("".join(str(model.edges[i][j]) for j in range(model.size)))
    for name, idx in model.den:
        lines.append(f"den {name} {idx}")
    return lines


def _element_of(t: Term, env: dict, den: dict) -> int:
    if isinstance(t, Variable):
        if t.name not in env:
            raise ValueError(f"unbound variable in model evaluation: {t.name}")
        return env[t.name]
    if isinstance(t, Constant):
        return den[t.name]
    raise UnsupportedTerm(term_to_text(t))


def eval_formula(f: Formula, model: Model, env: dict | None = None) -> bool:
    """Direct recursive evaluation; independent of the search encoding."""

    if env is None:
        env = {}
    den = model.den_map()

    def ev(f: Formula, env: dict) -> bool:
        if isinstance(f, Verum):
            return True
        if isinstance(f, Falsum):
            return False
        if isinstance(f, Membership):
            i = _element_of(f.lhs, env, den)
            j = _element_of(f.rhs, env, den)
            return bool(model.edges[i][j])
        if isinstance(f, Equality):
            return _element_of(f.lhs, env, den) == _element_of(f.rhs, env, den)
        if isinstance(f, Not):
            return not ev(f.sub, env)
        if isinstance(f, And):
            return ev(f.lhs, env) and ev(f.rhs, env)
        if isinstance(f, Or):
            return ev(f.lhs, env) or ev(f.rhs, env)
        if isinstance(f, Implies):
            return (not ev(f.lhs, env)) or ev(f.rhs, env)
        if isinstance(f, Iff):
            return ev(f.lhs, env) == ev(f.rhs, env)
        if isinstance(f, Forall):
            return all(ev(f.body, {**env, f.var: k}) for k in range(model.size))
        if isinstance(f, Exists):
            return any(ev(f.body, {**env, f.var: k}) for k in range(model.size))
        raise TypeError(f"not a formula: {f!r}")

    return ev(f, env)


# ---------------------------------------------------------------------------
# CNF construction (Tseitin, with constant folding at every node)

class _Cnf:
    def __init__(self, base_vars: int):
        self.nvars = base_vars
        self.clauses = []

    def new_var(self) -> int:
        self.nvars += 1
        return self.nvars

    def add(self, lits) -> None:
        self.clauses.append(tuple(lits))

    def neg(self, p):
        return (not p) if isinstance(p, bool) else -p

    def conj(self, parts):
        kept = []
        for p in parts:
            if p is False:
                return False
            if p is not True:
                kept.append(p)
        if not kept:
            return True
        if len(kept) == 1:
            return kept[0]
        t = self.new_var()
        for p in kept:
            self.add((-t, p))
        self.add(tuple([t] + [-p for p in kept]))
        return t

    def disj(self, parts):
        kept = []
        for p in parts:
            if p is True:
                return True
            if p is not False:
                kept.append(p)
        if not kept:
            return False
        if len(kept) == 1:
            return kept[0]
        t = self.new_var()
        for p in kept:
            self.add((-p, t))
        self.add(tuple([-t] + kept))
        return t

    def iff(self, a, b):
        if isinstance(a, bool):
            a, b = b, a
        if isinstance(b, bool):
            return a if b else self.neg(a)
        t = self.new_var()
        self.add((-t, -a, b))
        self.add((-t, a, -b))
        self.add((t, a, b))
        self.add((t, -a, -b))
        return t


def _ground(f: Formula, env: dict, den: dict, n: int, cnf: _Cnf):
    """Ground a sentence to a CNF literal (or a boolean constant).  The
    edge variable for (i, j) is 1 + i*n + j."""

    if isinstance(f, Verum):
        return True
    if isinstance(f, Falsum):
        return False
    if isinstance(f, Membership):
        i = _element_of(f.lhs, env, den)
        j = _element_of(f.rhs, env, den)
        return 1 + i * n + j
    if isinstance(f, Equality):
        return _element_of(f.lhs, env, den) == _element_of(f.rhs, env, den)
    if isinstance(f, Not):
        return cnf.neg(_ground(f.sub, env, den, n, cnf))
    if isinstance(f, And):
        return cnf.conj([_ground(f.lhs, env, den, n, cnf),
                         _ground(f.rhs, env, den, n, cnf)])
    if isinstance(f, Or):
        return cnf.disj([_ground(f.lhs, env, den, n, cnf),
                         _ground(f.rhs, env, den, n, cnf)])
    if isinstance(f, Implies):
        return cnf.disj([cnf.neg(_ground(f.lhs, env, den, n, cnf)),
                         _ground(f.rhs, env, den, n, cnf)])
    if isinstance(f, Iff):
        return cnf.iff(_ground(f.lhs, env, den, n, cnf),
                       _ground(f.rhs, env, den, n, cnf))
    if isinstance(f, Forall):
        return cnf.conj([_ground(f.body, {**env, f.var: k}, den, n, cnf)
                         for k in range(n)])
    if isinstance(f, Exists):
        return cnf.disj([_ground(f.body, {**env, f.var: k}, den, n, cnf)
                         for k in range(n)])
    raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------------------
# SAT search: conflict-driven clause learning with watched literals, but with
# a static decision order (lowest variable index first) and a fixed preferred
# polarity (True), and no restarts.  Decisions follow the preference, and
# everything else on the trail is propagation of entailed literals, so the
# first model found is the lexicographically first one: learned clauses are
# consequences of the input and can only remove model-free regions.

class _Solver:
    def __init__(self, clauses, nvars: int):
        self.nvars = nvars
        self.value = [0] * (nvars + 1)  # 0 open, 1 true, -1 false
        self.reason = [None] * (nvars + 1)
        self.level = [0] * (nvars + 1)
        self.clauses = []
        self.watches = {}  # literal -> clause indices watching it
        self.trail = []
        self.trail_lim = []
        self.qhead = 0
        self.root_conflict = False
        for clause in clauses:
            self._add_initial(clause)

    def _lit_val(self, lit: int) -> int:
        v = self.value[abs(lit)]
        return v if lit > 0 else -v

    def _add_initial(self, lits) -> None:
        lits = list(dict.fromkeys(lits))
        if any(-lit in lits for lit in lits):
            return  # tautology
        if not lits:
            self.root_conflict = True
            return
        if len(lits) == 1:
            if not self._enqueue(lits[0], None):
                self.root_conflict = True
            return
        self._watch_clause(lits)

    def _watch_clause(self, lits: list) -> int:
        ci = len(self.clauses)
        self.clauses.append(lits)
        self.watches.setdefault(lits[0], []).append(ci)
        self.watches.setdefault(lits[1], []).append(ci)
        return ci

    def _enqueue(self, lit: int, reason_ci) -> bool:
        val = self._lit_val(lit)
        if val == 1:
            return True
        if val == -1:
            return False
        var = abs(lit)
        self.value[var] = 1 if lit > 0 else -1
        self.level[var] = len(self.trail_lim)
        self.reason[var] = reason_ci
        self.trail.append(lit)
        return True

    def _propagate(self):
        """Returns a conflicting clause index, or None."""

        while self.qhead < len(self.trail):
            lit = self.trail[self.qhead]
            self.qhead += 1
            falsified = -lit
            watching = self.watches.pop(falsified, [])
            i = 0
            while i < len(watching):
                ci = watching[i]
                i += 1
                clause = self.clauses[ci]
                if clause[0] == falsified:
                    clause[0], clause[1] = clause[1], clause[0]
                if self._lit_val(clause[0]) == 1:
                    self.watches.setdefault(falsified, []).append(ci)
                    continue
                moved = False
                for j in range(2, len(clause)):
                    if self._lit_val(clause[j]) != -1:
                        clause[1], clause[j] = clause[j], clause[1]
                        self.watches.setdefault(clause[1], []).append(ci)
                        moved = True
                        break
                if moved:
                    continue
                self.watches.setdefault(falsified, []).append(ci)
                if not self._enqueue(clause[0], ci):
                    self.watches.setdefault(falsified, []).extend(watching[i:])
                    return ci
        return None

    def _analyze(self, confl_ci: int):
        """First-UIP conflict analysis: learned clause plus backjump level.
        The asserting literal sits at index 0."""

        cur_level = len(self.trail_lim)
        seen = [False] * (self.nvars + 1)
        tail = []
        counter = 0
        p = None
        idx = len(self.trail) - 1
        clause = self.clauses[confl_ci]
        while True:
            for q in clause:
                if q == p:  # the propagated literal inside its own reason
                    continue
                var = abs(q)
                if not seen[var] and self.level[var] > 0:
                    seen[var] = True
                    if self.level[var] == cur_level:
                        counter += 1
                    else:
                        tail.append(q)
            while not seen[abs(self.trail[idx])]:
                idx -= 1
            p = self.trail[idx]
            idx -= 1
            seen[abs(p)] = False
            counter -= 1
            if counter == 0:
                break
            clause = self.clauses[self.reason[abs(p)]]
        learnt = [-p] + tail
        if len(learnt) == 1:
            return learnt, 0
        # put a literal from the backjump level second, for the watches
        bj_pos = max(range(1, len(learnt)),
                     key=lambda k: self.level[abs(learnt[k])])
        backjump = self.level[abs(learnt[bj_pos])]
        learnt[1], learnt[bj_pos] = learnt[bj_pos], learnt[1]
        return learnt, backjump

    def _backtrack(self, target_level: int) -> None:
        while len(self.trail_lim) > target_level:
            mark = self.trail_lim.pop()
            for lit in self.trail[mark:]:
                var = abs(lit)
                self.value[var] = 0
                self.reason[var] = None
                self.level[var] = 0
            del self.trail[mark:]
        self.qhead = len(self.trail)

    def solve(self):
        if self.root_conflict:
            return None
        if self._propagate() is not None:
            return None
        next_var = 1
        while True:
            while next_var <= self.nvars and self.value[next_var] != 0:
                next_var += 1
            if next_var > self.nvars:
                return [None] + [self.value[v] == 1
                                 for v in range(1, self.nvars + 1)]
            self.trail_lim.append(len(self.trail))
            self._enqueue(next_var, None)
            while True:
                confl = self._propagate()
                if confl is None:
                    break
                if not self.trail_lim:
                    return None
                learnt, backjump = self._analyze(confl)
                self._backtrack(backjump)
                if len(learnt) == 1:
                    self._enqueue(learnt[0], None)
                else:
                    ci = self._watch_clause(learnt)
                    self._enqueue(learnt[0], ci)
                # decisions may have been undone; rescan from the start
                next_var = 1


def _solve_for_den(theory: Theory, n: int, den: dict):
    cnf = _Cnf(n * n)
    for sentence in theory.sentences:
        root = _ground(sentence, {}, den, n, cnf)
        if root is False:
            return None
        if root is True:
            continue
        cnf.add((root,))
    values = _Solver(cnf.clauses, cnf.nvars).solve()
    if values is None:
        return None
    return tuple(tuple(1 if values[1 + i * n + j] else 0 for j in range(n))
                 for i in range(n))


def find_model(theory: Theory, max_size: int = 5):
    """First model per the enumeration contract, or None.  Raises
    UnsupportedTerm when the theory mentions terms without a finite
    interpretation."""

    constants = theory.constants
    for n in range(1, max_size + 1):
        best = None
        for den_tuple in itertools.product(range(n), repeat=len(constants)):
            den = dict(zip(constants, den_tuple))
            edges = _solve_for_den(theory, n, den)
            if edges is None:
                continue
            # an edge sorts before a non-edge, then low denotations win
            key = (tuple(1 - b for row in edges for b in row), den_tuple)
            if best is None or key < best[0]:
                best = (key, edges, den_tuple)
        if best is not None:
            return Model(n, best[1], tuple(zip(constants, best[2])))
    return None


def certify_nonpatho(theory: Theory, max_size: int = 5):
    """(model, None) after independent re-verification, or (None, reason)."""

    try:
        model = find_model(theory, max_size)
    except UnsupportedTerm as exc:
        return None, f"model search unsupported for term {exc}"
    if model is None:
        return None, f"no model up to size {max_size}"
    for sentence in theory.sentences:
        if not eval_formula(sentence, model):
            raise RuntimeError(
                f"search returned a non-model (sentence fails re-evaluation): "
                f"{model} vs {sentence}")
    return model, None


def size_class(model: Model, constant: str) -> str:
    """Compare the denoted extension against its complement in the finite
    universe: strictly smaller is Slim, strictly larger is Mighty.  Both
    cardinalities ride along, e.g. "Slim(1,2)"."""

    members = len(model.extension(model.den_map()[constant]))
    complement = model.size - members
    if members < complement:
        kind = "Slim"
    elif members > complement:
        kind = "Mighty"
    else:
        kind = "Balanced"
    return f"{kind}({members},{complement})"
