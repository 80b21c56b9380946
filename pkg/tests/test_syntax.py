"""Structural utilities: printing, free variables, substitution,
subformulas, alpha-equivalence, nearly-closedness."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fuzzgen import formula_corpus, random_formula
from patholab.parser import parse
from patholab.syntax import (And, Constant, Equality, Exists, Falsum, Forall,
                             Iff, Membership, NearlyClosed, Not, Or,
                             Rejection, SetAbs, Variable, Verum, alpha_equivalent,
                             canonicalize, free_vars, nearly_closed,
                             node_count, subformulas, substitute, to_text,
                             wrap_closed)

X = Variable("x")
Y = Variable("y")


class TestPrinting:
    def test_not_membership(self):
        assert to_text(Not(Membership(X, X))) == "not (x in x)"

    def test_verum(self):
        assert to_text(Verum()) == "Verum"

    def test_set_abs(self):
        f = Membership(Y, SetAbs("x", Not(Membership(X, X))))
        assert to_text(f) == "y in {x : not (x in x)}"

    def test_binary_parenthesized(self):
        f = Iff(And(Membership(X, X), Verum()), Falsum())
        assert to_text(f) == "((x in x) & Verum) <-> Falsum"


class TestFreeVars:
    def test_russell(self):
        assert free_vars(parse("not (x in x)")) == {"x"}

    def test_quantifier_binds(self):
        assert free_vars(parse("forall y: (y in x)")) == {"x"}

    def test_set_abs_binds(self):
        assert free_vars(parse("{x : x in y} in z")) == {"y", "z"}

    def test_closed(self):
        assert free_vars(parse("Verum")) == frozenset()


class TestSubstitute:
    def test_ground_replacement(self):
        f = parse("not (x in x)")
        g = substitute(f, "x", Constant("c"))
        assert g == Not(Membership(Constant("c"), Constant("c")))

    def test_capture_avoided(self):
        f = parse("forall y: (y in x)")
        g = substitute(f, "x", Y)
        # the binder must be renamed away from the incoming y
        assert isinstance(g, Forall)
        assert g.var != "y"
        assert alpha_equivalent(g, Forall("w", Membership(Variable("w"), Y)))

    def test_identity_on_closed(self):
        assert substitute(Verum(), "x", X) == Verum()

    def test_no_op_when_var_absent(self):
        f = parse("y in y")
        assert substitute(f, "x", Constant("c")) == f


class TestSubformulas:
    def test_preorder_russell(self):
        f = parse("not (x in x)")
        nodes = [n for n, _ in subformulas(f)]
        assert nodes == [f, f.sub]

    def test_conjunction(self):
        f = parse("(x in x) & Verum")
        nodes = [n for n, _ in subformulas(f)]
        assert nodes == [f, f.lhs, f.rhs]

    def test_includes_set_abs_body(self):
        f = parse("y in {x : not (x in x)}")
        nodes = [n for n, _ in subformulas(f)]
        assert parse("not (x in x)") in nodes

    def test_free_sets_respect_binders(self):
        f = parse("exists y: ((y in x) & not (y in y))")
        by_text = {to_text(n): fv for n, fv in subformulas(f)}
        assert by_text["not (y in y)"] == {"y"}
        assert by_text["y in x"] == {"x", "y"}
        assert by_text[to_text(f)] == {"x"}

    def test_length_matches_node_count(self):
        rng = random.Random(11)
        for _ in range(50):
            f = random_formula(rng, ("x", "y"), 4)
            assert len(subformulas(f)) == node_count(f)


class TestAlphaEquivalence:
    def test_renamed_binder(self):
        assert alpha_equivalent(parse("forall y: (y in x)"),
                                parse("forall z: (z in x)"))

    def test_free_variables_matter(self):
        assert not alpha_equivalent(parse("x in x"), parse("y in y"))

    def test_structure_matters(self):
        assert not alpha_equivalent(parse("(x in x) & Verum"),
                                    parse("Verum & (x in x)"))

    def test_set_abs_binder(self):
        assert alpha_equivalent(parse("{y : y in x} in x"),
                                parse("{z : z in x} in x"))

    @given(st.integers(0, 10**9))
    @settings(max_examples=150, deadline=None)
    def test_reflexive(self, seed):
        f = random_formula(random.Random(seed), ("x", "y"), 3)
        assert alpha_equivalent(f, f)


class TestNearlyClosed:
    def test_russell_accepted(self):
        nc = nearly_closed(parse("not (x in x)"))
        assert isinstance(nc, NearlyClosed)
        assert nc.the_var == "x"

    def test_other_variable_accepted(self):
        nc = nearly_closed(parse("not (y in y)"))
        assert isinstance(nc, NearlyClosed)
        assert nc.the_var == "y"

    def test_closed_rejected(self):
        r = nearly_closed(parse("Verum"))
        assert isinstance(r, Rejection)
        assert r.free == frozenset()

    def test_two_free_rejected(self):
        r = nearly_closed(parse("x in y"))
        assert isinstance(r, Rejection)
        assert r.free == {"x", "y"}

    def test_canonicalize_renames_to_x(self):
        nc = canonicalize(nearly_closed(parse("not (y in y)")))
        assert nc.the_var == "x"
        assert nc.formula == parse("not (x in x)")

    def test_canonicalize_avoids_capture(self):
        # free u must not collide with the bound x already inside
        nc = canonicalize(nearly_closed(parse("exists x: (x in u)")))
        assert nc.the_var == "x"
        assert free_vars(nc.formula) == {"x"}
        assert alpha_equivalent(nc.formula, parse("exists w: (w in x)"))

    def test_wrap_closed(self):
        w = wrap_closed(parse("Verum"))
        assert w == And(Verum(), Equality(X, X))
        assert isinstance(nearly_closed(w), NearlyClosed)


class TestPrintParseRoundTrip:
    def test_corpus_exact(self):
        # printer output is fully parenthesized, so reparsing rebuilds the
        # identical tree, not merely an alpha-variant
        for f in formula_corpus(3, 300):
            assert parse(to_text(f)) == f

    @given(st.integers(0, 10**9))
    @settings(max_examples=200, deadline=None)
    def test_random_exact(self, seed):
        f = random_formula(random.Random(seed), ("x", "y", "z"), 4)
        assert parse(to_text(f)) == f
