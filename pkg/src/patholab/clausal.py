"""Clause-form translation used by the refutation engine and proof checker.

``clausify_sentence`` is a deterministic pure function from (sentence, index
in the theory, identifier pool) to a clause list, so the proof checker can
recompute it without touching the search engine.  The pipeline is: constant
folding, negation normal form, renaming bound variables apart, skolemizing
existentials (skolem symbols are derived from the sentence index), dropping
universal quantifiers, distributing to CNF, then renaming each clause's
variables to q0, q1, ... in first-occurrence order.

For every skolem function the translation also emits its equality
substitutivity clauses.  Skolem witnesses can always be chosen invariant
under the axiomatized equality (pick witnesses per equivalence class), so
this preserves satisfiability and keeps the equality axioms complete over
the enlarged signature.

Clauses are tuples of literals; a literal is (sign, kind, lhs, rhs) with
kind "in" or "eq" and syntax terms on both sides.
"""

from __future__ import annotations

from .syntax import (And, Constant, Equality, Exists, Falsum, FnApp, Forall,
                     Formula, Iff, Implies, Membership, Not, Or, SetAbs,
                     Term, Variable, Verum, fresh_name, identifiers,
                     substitute, term_free_vars, term_substitute,
                     term_to_text)

IN = "in"
EQ = "eq"


def fold_constants(f: Formula) -> Formula:
    """Bottom-up simplification of Verum/Falsum combinations."""

    if isinstance(f, (Membership, Equality, Verum, Falsum)):
        return f
    if isinstance(f, Not):
        sub = fold_constants(f.sub)
        if isinstance(sub, Verum):
            return Falsum()
        if isinstance(sub, Falsum):
            return Verum()
        return Not(sub)
    if isinstance(f, And):
        a, b = fold_constants(f.lhs), fold_constants(f.rhs)
        if isinstance(a, Falsum) or isinstance(b, Falsum):
            return Falsum()
        if isinstance(a, Verum):
            return b
        if isinstance(b, Verum):
            return a
        return And(a, b)
    if isinstance(f, Or):
        a, b = fold_constants(f.lhs), fold_constants(f.rhs)
        if isinstance(a, Verum) or isinstance(b, Verum):
            return Verum()
        if isinstance(a, Falsum):
            return b
        if isinstance(b, Falsum):
            return a
        return Or(a, b)
    if isinstance(f, Implies):
        a, b = fold_constants(f.lhs), fold_constants(f.rhs)
        if isinstance(a, Falsum) or isinstance(b, Verum):
            return Verum()
        if isinstance(a, Verum):
            return b
        if isinstance(b, Falsum):
            return Not(a)
        return Implies(a, b)
    if isinstance(f, Iff):
        a, b = fold_constants(f.lhs), fold_constants(f.rhs)
        if isinstance(a, Verum):
            return b
        if isinstance(b, Verum):
            return a
        if isinstance(a, Falsum):
            return Not(b) if not isinstance(b, Falsum) else Verum()
        if isinstance(b, Falsum):
            return Not(a)
        return Iff(a, b)
    if isinstance(f, (Forall, Exists)):
        body = fold_constants(f.body)
        if isinstance(body, (Verum, Falsum)):
            return body
        return type(f)(f.var, body)
    raise TypeError(f"not a formula: {f!r}")


def nnf(f: Formula, positive: bool = True) -> Formula:
    """Negation normal form; implications and biconditionals are expanded."""

    if isinstance(f, (Membership, Equality)):
        return f if positive else Not(f)
    if isinstance(f, Verum):
        return Verum() if positive else Falsum()
    if isinstance(f, Falsum):
        return Falsum() if positive else Verum()
    if isinstance(f, Not):
        return nnf(f.sub, not positive)
    if isinstance(f, And):
        cls = And if positive else Or
        return cls(nnf(f.lhs, positive), nnf(f.rhs, positive))
    if isinstance(f, Or):
        cls = Or if positive else And
        return cls(nnf(f.lhs, positive), nnf(f.rhs, positive))
    if isinstance(f, Implies):
        if positive:
            return Or(nnf(f.lhs, False), nnf(f.rhs, True))
        return And(nnf(f.lhs, True), nnf(f.rhs, False))
    if isinstance(f, Iff):
        if positive:
            return And(Or(nnf(f.lhs, False), nnf(f.rhs, True)),
                       Or(nnf(f.rhs, False), nnf(f.lhs, True)))
        return And(Or(nnf(f.lhs, True), nnf(f.rhs, True)),
                   Or(nnf(f.lhs, False), nnf(f.rhs, False)))
    if isinstance(f, Forall):
        cls = Forall if positive else Exists
        return cls(f.var, nnf(f.body, positive))
    if isinstance(f, Exists):
        cls = Exists if positive else Forall
        return cls(f.var, nnf(f.body, positive))
    raise TypeError(f"not a formula: {f!r}")


class _NameGen:
    def __init__(self, used):
        self.used = set(used)

    def fresh(self, base: str) -> str:
        name = fresh_name(base, self.used)
        self.used.add(name)
        return name


def rectify(f: Formula, gen: _NameGen) -> Formula:
    """Rename bound variables apart (input is in NNF)."""

    if isinstance(f, (Membership, Equality, Verum, Falsum)):
        return f
    if isinstance(f, Not):
        return Not(rectify(f.sub, gen))
    if isinstance(f, (And, Or)):
        return type(f)(rectify(f.lhs, gen), rectify(f.rhs, gen))
    if isinstance(f, (Forall, Exists)):
        name = gen.fresh(f.var)
        body = f.body if name == f.var else substitute(f.body, f.var, Variable(name))
        return type(f)(name, rectify(body, gen))
    raise TypeError(f"unexpected node in NNF: {f!r}")


def skolemize(f: Formula, gen: _NameGen, prefix: str, universals=(),
              introduced=None) -> Formula:
    """Replace existentials by skolem terms over the universals in scope."""

    if introduced is None:
        introduced = []
    if isinstance(f, (Membership, Equality, Verum, Falsum, Not)):
        return f
    if isinstance(f, (And, Or)):
        return type(f)(skolemize(f.lhs, gen, prefix, universals, introduced),
                       skolemize(f.rhs, gen, prefix, universals, introduced))
    if isinstance(f, Forall):
        return Forall(f.var, skolemize(f.body, gen, prefix,
                                       universals + (f.var,), introduced))
    if isinstance(f, Exists):
        name = gen.fresh(f"{prefix}_{len(introduced)}")
        if universals:
            witness: Term = FnApp(name, tuple(Variable(u) for u in universals))
        else:
            witness = Constant(name)
        introduced.append((name, len(universals)))
        body = substitute(f.body, f.var, witness)
        return skolemize(body, gen, prefix, universals, introduced)
    raise TypeError(f"unexpected node in NNF: {f!r}")


def drop_universals(f: Formula) -> Formula:
    while isinstance(f, Forall):
        f = f.body
    if isinstance(f, (And, Or)):
        return type(f)(drop_universals(f.lhs), drop_universals(f.rhs))
    return f


def cnf_clauses(f: Formula) -> list:
    """Distribute a quantifier-free NNF matrix into clause lists."""

    if isinstance(f, Verum):
        return []
    if isinstance(f, Falsum):
        return [[]]
    if isinstance(f, Membership):
        return [[(True, IN, f.lhs, f.rhs)]]
    if isinstance(f, Equality):
        return [[(True, EQ, f.lhs, f.rhs)]]
    if isinstance(f, Not):
        sub = f.sub
        if isinstance(sub, Membership):
            return [[(False, IN, sub.lhs, sub.rhs)]]
        if isinstance(sub, Equality):
            return [[(False, EQ, sub.lhs, sub.rhs)]]
        if isinstance(sub, Verum):
            return [[]]
        if isinstance(sub, Falsum):
            return []
        raise TypeError(f"not in NNF: {f!r}")
    if isinstance(f, And):
        return cnf_clauses(f.lhs) + cnf_clauses(f.rhs)
    if isinstance(f, Or):
        left, right = cnf_clauses(f.lhs), cnf_clauses(f.rhs)
        return [la + ra for la in left for ra in right]
    raise TypeError(f"not a matrix formula: {f!r}")


def literal_vars(lit) -> list:
    """Variables of a literal, in left-to-right first-occurrence order."""

    out = []

    def walk(t):
        if isinstance(t, Variable):
            if t.name not in out:
                out.append(t.name)
        elif isinstance(t, FnApp):
            for a in t.args:
                walk(a)
        elif isinstance(t, SetAbs):
            for name in sorted(term_free_vars(t)):
                if name not in out:
                    out.append(name)

    walk(lit[2])
    walk(lit[3])
    return out


def clause_vars(clause) -> list:
    out = []
    for lit in clause:
        for name in literal_vars(lit):
            if name not in out:
                out.append(name)
    return out


def _apply_renaming(clause, mapping):
    out = []
    for sign, kind, lhs, rhs in clause:
        for old, new in mapping.items():
            if old != new:
                lhs = term_substitute(lhs, old, Variable(new))
                rhs = term_substitute(rhs, old, Variable(new))
        out.append((sign, kind, lhs, rhs))
    return tuple(out)


def _rename_clause(clause, used_names):
    names = clause_vars(clause)
    # Two phases via reserved temporaries: a leading underscore can never be
    # a parsed identifier, so the intermediate names cannot collide and the
    # overall effect is a simultaneous renaming.
    tmp = {name: f"_r{i}" for i, name in enumerate(names)}
    clause = _apply_renaming(clause, tmp)
    gen = _NameGen(used_names)
    final = {f"_r{i}": gen.fresh(f"q{i}") for i in range(len(names))}
    return _apply_renaming(clause, final)


def _simplify_clause(clause):
    """Drop duplicate literals; None for tautologies."""

    seen = set()
    out = []
    for lit in clause:
        if lit in seen:
            continue
        sign, kind, lhs, rhs = lit
        if (not sign, kind, lhs, rhs) in seen:
            return None
        seen.add(lit)
        out.append(lit)
    return tuple(out)


def _congruence_clauses(name: str, arity: int) -> list:
    clauses = []
    for pos in range(arity):
        others = [Variable(f"w{i}") for i in range(arity - 1)]
        left_args, right_args = [], []
        oi = 0
        for i in range(arity):
            if i == pos:
                left_args.append(Variable("u"))
                right_args.append(Variable("v"))
            else:
                left_args.append(others[oi])
                right_args.append(others[oi])
                oi += 1
        clauses.append((
            (False, EQ, Variable("u"), Variable("v")),
            (True, EQ, FnApp(name, tuple(left_args)),
             FnApp(name, tuple(right_args))),
        ))
    return clauses


def clausify_sentence(sentence: Formula, sent_idx: int, used_names) -> list:
    """Clauses of one theory sentence.  Deterministic given the sentence, its
    index, and the identifier pool shared across the theory."""

    gen = _NameGen(used_names)
    f = fold_constants(sentence)
    if isinstance(f, Verum):
        return []
    if isinstance(f, Falsum):
        return [()]
    f = nnf(f)
    f = rectify(f, gen)
    introduced = []
    f = skolemize(f, gen, f"sk{sent_idx}", (), introduced)
    matrix = drop_universals(f)
    raw = cnf_clauses(matrix)
    for name, arity in introduced:
        if arity > 0:
            raw.extend(_congruence_clauses(name, arity))
    clauses = []
    seen = set()
    for clause in raw:
        simplified = _simplify_clause(clause)
        if simplified is None:
            continue
        renamed = _rename_clause(simplified, used_names)
        if renamed not in seen:
            seen.add(renamed)
            clauses.append(renamed)
    return clauses


def clausify_theory(sentences) -> tuple:
    """Clause lists for every sentence, plus the shared identifier pool."""

    used = set()
    for s in sentences:
        used |= identifiers(s)
    return [clausify_sentence(s, i, used) for i, s in enumerate(sentences)], used


# ---------------------------------------------------------------------------
# ground terms and matching

def term_depth(t: Term) -> int:
    if isinstance(t, (Variable, Constant)):
        return 1
    if isinstance(t, FnApp):
        return 1 + max((term_depth(a) for a in t.args), default=0)
    if isinstance(t, SetAbs):
        return 1
    raise TypeError(f"not a term: {t!r}")


def signature_of_clauses(clause_lists):
    """Constants and function symbols occurring in the clause lists."""

    constants = []
    functions = []
    seen_c, seen_f = set(), set()

    def walk(t):
        if isinstance(t, Constant):
            if t.name not in seen_c:
                seen_c.add(t.name)
                constants.append(t.name)
        elif isinstance(t, FnApp):
            key = (t.symbol, len(t.args))
            if key not in seen_f:
                seen_f.add(key)
                functions.append(key)
            for a in t.args:
                walk(a)

    for clauses in clause_lists:
        for clause in clauses:
            for _, _, lhs, rhs in clause:
                walk(lhs)
                walk(rhs)
    return constants, functions


def ground_terms(constants, functions, depth: int) -> list:
    """All ground terms up to the given nesting depth, ordered by (depth,
    text).  Constants have depth 1."""

    if not constants:
        constants = ["a0"]
    by_depth = [sorted([Constant(c) for c in constants], key=term_to_text)]
    for d in range(2, depth + 1):
        pool = [t for layer in by_depth for t in layer]
        fresh = []
        for symbol, arity in sorted(functions):
            if arity == 0:
                continue
            def build(args):
                if len(args) == arity:
                    term = FnApp(symbol, tuple(args))
                    if term_depth(term) == d:
                        fresh.append(term)
                    return
                for t in pool:
                    build(args + [t])
            build([])
        by_depth.append(sorted(fresh, key=term_to_text))
    return [t for layer in by_depth for t in layer]


def instantiate_clause(clause, names, values):
    """Apply the substitution name->ground term to every literal."""

    out = []
    for sign, kind, lhs, rhs in clause:
        for name, value in zip(names, values):
            lhs = term_substitute(lhs, name, value)
            rhs = term_substitute(rhs, name, value)
        out.append((sign, kind, lhs, rhs))
    return out


def literal_is_ground(lit) -> bool:
    return not term_free_vars(lit[2]) and not term_free_vars(lit[3])


def match_clause_instance(pattern, ground_set) -> bool:
    """True when some substitution maps the pattern clause literal-by-literal
    onto exactly the given ground literal set (collapses allowed)."""

    ground = list(ground_set)

    def match_term(p, g, env):
        if isinstance(p, Variable):
            if p.name in env:
                return env if env[p.name] == g else False
            env = dict(env)
            env[p.name] = g
            return env
        if type(p) is not type(g):
            return False
        if isinstance(p, Constant):
            return env if p.name == g.name else False
        if isinstance(p, FnApp):
            if p.symbol != g.symbol or len(p.args) != len(g.args):
                return False
            for pa, ga in zip(p.args, g.args):
                env = match_term(pa, ga, env)
                if env is False:
                    return False
            return env
        if isinstance(p, SetAbs):
            # opaque: needs an exact substitution of its parameters
            names = sorted(term_free_vars(p))
            candidate = p
            for name in names:
                if name not in env:
                    return False
                candidate = term_substitute(candidate, name, env[name])
            return env if candidate == g else False
        return False

    def match_lit(p, g, env):
        if p[0] != g[0] or p[1] != g[1]:
            return False
        env2 = match_term(p[2], g[2], env)
        if env2 is False:
            return False
        return match_term(p[3], g[3], env2)

    def backtrack(i, env):
        if i == len(pattern):
            image = set()
            for sign, kind, lhs, rhs in pattern:
                for name, value in env.items():
                    lhs = term_substitute(lhs, name, value)
                    rhs = term_substitute(rhs, name, value)
                image.add((sign, kind, lhs, rhs))
            return image == set(ground)
        for g in ground:
            env2 = match_lit(pattern[i], g, env)
            if env2 is not False:
                if backtrack(i + 1, env2 if isinstance(env2, dict) else env):
                    return True
        return False

    if not pattern:
        return not ground
    return backtrack(0, {})


def literal_to_text(lit) -> str:
    sign, kind, lhs, rhs = lit
    op = "in" if kind == IN else "="
    body = f"{term_to_text(lhs)} {op} {term_to_text(rhs)}"
    return body if sign else f"not ({body})"


def clause_to_text(clause) -> str:
    if not clause:
        return "Falsum"
    lits = sorted(clause, key=lambda lit: (literal_to_text(lit)))
    return " | ".join(literal_to_text(lit) for lit in lits)
