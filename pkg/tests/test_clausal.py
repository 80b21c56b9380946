"""Clause-form translation and ground-term machinery."""

import random

from hypothesis import given, settings
from hypothesis import strategies as st

from fuzzgen import random_formula
from patholab.clausal import (_NameGen, clause_to_text, clause_vars,
                              clausify_sentence, clausify_theory, cnf_clauses,
                              fold_constants, ground_terms,
                              instantiate_clause, literal_is_ground,
                              literal_to_text, match_clause_instance, nnf,
                              rectify, signature_of_clauses, term_depth)
from patholab.parser import parse
from patholab.syntax import (And, Exists, Falsum, Forall, Not, Or, Verum,
                             alpha_equivalent, canonicalize, nearly_closed,
                             term_to_text, to_text)
from patholab.theory import build_cosi_theory


def theory_of(text):
    return build_cosi_theory(canonicalize(nearly_closed(parse(text))))


class TestFoldConstants:
    def test_and_verum(self):
        assert fold_constants(parse("Verum & (x in x)")) == parse("x in x")

    def test_or_falsum(self):
        assert fold_constants(parse("Falsum | (x in x)")) == parse("x in x")

    def test_and_falsum_collapses(self):
        assert fold_constants(parse("(x in x) & Falsum")) == Falsum()

    def test_implies_from_falsum(self):
        assert fold_constants(parse("Falsum -> (x in x)")) == Verum()

    def test_not_verum(self):
        assert fold_constants(parse("not (Verum)")) == Falsum()

    def test_quantifier_over_constant_body(self):
        assert fold_constants(parse("forall y: (Verum)")) == Verum()

    def test_untouched_when_no_constants(self):
        f = parse("not (x in x)")
        assert fold_constants(f) == f


class TestNnf:
    def test_negated_conjunction(self):
        f = nnf(parse("not ((x in x) & (x = x))"), True)
        assert f == Or(Not(parse("x in x")), Not(parse("x = x")))

    def test_negated_quantifier(self):
        f = nnf(parse("not (forall y: (y in x))"), True)
        assert isinstance(f, Exists)
        assert f.body == Not(parse("y in x"))

    def test_implication_unfolds(self):
        f = nnf(parse("(x in x) -> (x = x)"), True)
        assert f == Or(Not(parse("x in x")), parse("x = x"))

    def test_iff_unfolds_to_two_branches(self):
        f = nnf(parse("(x in x) <-> (x = x)"), True)
        assert isinstance(f, And)

    def test_double_negation_vanishes(self):
        assert nnf(parse("not (not (x in x))"), True) == parse("x in x")

    def test_negations_only_on_atoms(self):
        def check(g):
            if isinstance(g, Not):
                assert not isinstance(
                    g.sub, (And, Or, Not, Forall, Exists)), to_text(g)
            for attr in ("lhs", "rhs", "sub", "body"):
                child = getattr(g, attr, None)
                if child is not None and not isinstance(child, str):
                    from patholab.syntax import Formula
                    if isinstance(child, Formula):
                        check(child)
        rng = random.Random(5)
        for _ in range(100):
            check(nnf(random_formula(rng, ("x",), 4, allow_fnapp=False,
                                     allow_setabs=False), True))


def collect_binders(h, out):
    from patholab.syntax import Formula
    if isinstance(h, (Forall, Exists)):
        out.append(h.var)
        collect_binders(h.body, out)
        return
    for attr in ("lhs", "rhs", "sub"):
        child = getattr(h, attr, None)
        if isinstance(child, Formula):
            collect_binders(child, out)


class TestRectify:
    def test_distinct_binders(self):
        f = parse("(forall y: (y in x)) & (forall y: (x in y))")
        g = rectify(f, _NameGen(frozenset()))
        binders = []
        collect_binders(g, binders)
        assert len(binders) == len(set(binders))
        assert alpha_equivalent(f, g)

    def test_reserved_names_avoided(self):
        f = parse("forall y: (y in x)")
        g = rectify(f, _NameGen(frozenset(("y",))))
        assert isinstance(g, Forall)
        assert g.var != "y"
        assert alpha_equivalent(f, g)


class TestCnf:
    def test_distribution(self):
        f = Or(And(parse("x in x"), parse("x = x")), parse("x in y"))
        clauses = cnf_clauses(f)
        assert [sorted(literal_to_text(l) for l in c) for c in clauses] == [
            sorted(["x in x", "x in y"]),
            sorted(["x = x", "x in y"]),
        ]

    def test_verum_yields_no_clauses(self):
        assert cnf_clauses(Verum()) == []

    def test_falsum_yields_empty_clause(self):
        assert cnf_clauses(Falsum()) == [[]]

    def test_tautologous_clause_dropped(self):
        clauses = clausify_sentence(
            parse("forall y: ((y in y) | not (y in y))"), 0, frozenset())
        assert clauses == []

    def test_duplicate_literal_merged(self):
        clauses = clausify_sentence(
            parse("forall y: ((y in y) | (y in y))"), 0, frozenset())
        assert len(clauses) == 1 and len(clauses[0]) == 1


class TestClausifyTheory:
    def test_russell_comprehension_clauses(self):
        th = theory_of("not (x in x)")
        clause_lists, _ = clausify_theory(th.sentences)
        texts = [clause_to_text(c) for c in clause_lists[0]]
        assert texts == ["not (q0 in c0) | not (q0 in q0)",
                         "q0 in c0 | q0 in q0"]

    def test_clause_variables_canonical(self):
        th = theory_of("not (x in x)")
        clause_lists, _ = clausify_theory(th.sentences)
        for clauses in clause_lists:
            for clause in clauses:
                for i, v in enumerate(clause_vars(clause)):
                    assert v == f"q{i}"

    def test_skolem_witness_for_extensionality(self):
        th = theory_of("not (x in x)")
        clause_lists, used = clausify_theory(th.sentences)
        # the inner forall z of extensionality sits under a negation in one
        # direction, producing a two-place skolem witness
        all_text = " ; ".join(clause_to_text(c)
                              for cl in clause_lists for c in cl)
        assert "sk1_0(" in all_text

    def test_skolem_names_unique(self):
        th = theory_of("not exists a: ((x in a) & (a in x))")
        clause_lists, used = clausify_theory(th.sentences)
        sig_constants, sig_fns = signature_of_clauses(clause_lists)
        names = [n for n, _ in sig_fns]
        assert len(names) == len(set(names))
        assert "c0" in sig_constants

    def test_deterministic(self):
        th = theory_of("not exists a: ((x in a) & (a in x))")
        assert clausify_theory(th.sentences) == clausify_theory(th.sentences)


class TestGroundTerms:
    def test_constants_sorted_by_text(self):
        terms = ground_terms(("c1", "c0"), (), 1)
        assert [term_to_text(t) for t in terms] == ["c0", "c1"]

    def test_depth_layers_in_order(self):
        terms = ground_terms(("c0",), (("f", 1),), 2)
        assert [term_to_text(t) for t in terms] == ["c0", "f(c0)"]

    def test_depth_three_explosion_ordered(self):
        terms = ground_terms(("c0",), (("f", 1),), 3)
        assert [term_to_text(t) for t in terms] == ["c0", "f(c0)", "f(f(c0))"]

    def test_fallback_constant_when_signature_empty(self):
        terms = ground_terms((), (), 2)
        assert [term_to_text(t) for t in terms] == ["a0"]

    def test_term_depth(self):
        terms = ground_terms(("c0",), (("f", 1),), 3)
        assert [term_depth(t) for t in terms] == [1, 2, 3]


class TestInstances:
    def test_instantiate_and_match(self):
        th = theory_of("not (x in x)")
        clause_lists, used = clausify_theory(th.sentences)
        pattern = clause_lists[0][0]
        consts = ground_terms(th.constants, (), 1)
        ground = instantiate_clause(pattern, ("q0",), (consts[0],))
        assert all(literal_is_ground(l) for l in ground)
        assert match_clause_instance(pattern, frozenset(ground))

    def test_collapsing_match_allowed(self):
        # u != v in the pattern may map to the same ground term
        th = theory_of("not (x in x)")
        clause_lists, _ = clausify_theory(th.sentences)
        ext_clauses = clause_lists[1]
        consts = ground_terms(th.constants, (), 1)
        for pattern in ext_clauses:
            names = clause_vars(pattern)
            ground = instantiate_clause(pattern, names,
                                        tuple(consts[0] for _ in names))
            assert match_clause_instance(pattern, frozenset(ground))

    def test_wrong_ground_set_rejected(self):
        th = theory_of("not (x in x)")
        clause_lists, _ = clausify_theory(th.sentences)
        pattern = clause_lists[0][0]  # not (q0 in c0) | not (q0 in q0)
        other = clause_lists[0][1]    # q0 in c0 | q0 in q0
        consts = ground_terms(th.constants, (), 1)
        ground_other = instantiate_clause(other, ("q0",), (consts[0],))
        assert not match_clause_instance(pattern, frozenset(ground_other))

    def test_collapsed_image_still_matches(self):
        # under q0 -> c0 both literals of the russell clause collapse to
        # one ground literal; the singleton set is the complete instance
        th = theory_of("not (x in x)")
        clause_lists, _ = clausify_theory(th.sentences)
        pattern = clause_lists[0][0]
        consts = ground_terms(th.constants, (), 1)
        ground = instantiate_clause(pattern, ("q0",), (consts[0],))
        assert frozenset(ground[:1]) == frozenset(ground)
        assert match_clause_instance(pattern, frozenset(ground[:1]))

    def test_partial_image_rejected(self):
        from patholab.syntax import Constant, Variable
        q0, c0, c1 = Variable("q0"), Constant("c0"), Constant("c1")
        pattern = ((True, "in", q0, c0), (True, "in", q0, q0))
        # q0 -> c1 yields two distinct literals; a strict subset is not
        # the image of any substitution
        assert not match_clause_instance(
            pattern, frozenset(((True, "in", c1, c0),)))


class TestTextForms:
    def test_empty_clause_is_falsum(self):
        assert clause_to_text(()) == "Falsum"

    def test_literals_sorted(self):
        th = theory_of("not (x in x)")
        clause_lists, _ = clausify_theory(th.sentences)
        for clauses in clause_lists:
            for clause in clauses:
                texts = [literal_to_text(l) for l in clause]
                assert clause_to_text(clause) == " | ".join(sorted(texts))
