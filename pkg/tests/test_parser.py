"""Surface syntax: grammar pins, positioned errors, shadow warnings."""

import pytest

from patholab.parser import ParseError, ShadowWarning, parse
from patholab.syntax import (And, Equality, Exists, Falsum, FnApp, Forall,
                             Iff, Implies, Membership, Not, Or, SetAbs,
                             Variable, Verum, to_text)

X = Variable("x")
Y = Variable("y")


class TestGrammarPins:
    def test_russell(self):
        assert parse("not (x in x)") == Not(Membership(X, X))

    def test_quantified_set_abs(self):
        f = parse("forall y: (y in {x : Verum})")
        assert f == Forall("y", Membership(Y, SetAbs("x", Verum())))

    def test_equality(self):
        assert parse("x = y") == Equality(X, Y)

    def test_function_application(self):
        assert parse("x in f(x, y)") == Membership(X, FnApp("f", (X, Y)))

    def test_nested_function(self):
        assert parse("x in g(f(x))") == Membership(
            X, FnApp("g", (FnApp("f", (X,)),)))


class TestPrecedence:
    def test_and_binds_tighter_than_or(self):
        f = parse("x in x & x = x | Verum")
        assert isinstance(f, Or)
        assert isinstance(f.lhs, And)

    def test_or_binds_tighter_than_implies(self):
        f = parse("Verum | Falsum -> Verum")
        assert isinstance(f, Implies)
        assert isinstance(f.lhs, Or)

    def test_implies_binds_tighter_than_iff(self):
        f = parse("Verum -> Falsum <-> Verum")
        assert isinstance(f, Iff)
        assert isinstance(f.lhs, Implies)

    def test_binary_left_associative(self):
        f = parse("x in x -> x = x -> Falsum")
        assert f == Implies(Implies(Membership(X, X), Equality(X, X)),
                            Falsum())

    def test_not_binds_tighter_than_and(self):
        f = parse("not x in x & Verum")
        assert f == And(Not(Membership(X, X)), Verum())

    def test_quantifier_body_extends_right(self):
        f = parse("forall y: y in x & Verum")
        assert f == Forall("y", And(Membership(Y, X), Verum()))

    def test_parens_override(self):
        f = parse("(forall y: y in x) & Verum")
        assert f == And(Forall("y", Membership(Y, X)), Verum())


class TestErrors:
    def test_truncated_term(self):
        with pytest.raises(ParseError) as exc:
            parse("x in")
        assert exc.value.column == 5
        assert "term" in exc.value.expected

    def test_positions_on_later_line(self):
        with pytest.raises(ParseError) as exc:
            parse("x in x &\n& Verum")
        assert exc.value.line == 2
        assert exc.value.column == 1

    def test_unbalanced_paren(self):
        with pytest.raises(ParseError):
            parse("(x in x")

    def test_trailing_garbage(self):
        with pytest.raises(ParseError):
            parse("x in x x")

    def test_empty_input(self):
        with pytest.raises(ParseError):
            parse("")

    def test_bad_token(self):
        with pytest.raises(ParseError):
            parse("x $ y")

    def test_reserved_word_as_variable(self):
        with pytest.raises(ParseError):
            parse("forall in x")

    def test_message_carries_position(self):
        with pytest.raises(ParseError) as exc:
            parse("x in")
        assert "line 1" in str(exc.value)
        assert "column 5" in str(exc.value)


class TestShadowWarning:
    def test_quantifier_shadow_warns(self):
        with pytest.warns(ShadowWarning):
            parse("forall y: (exists y: (y in x))")

    def test_set_abs_shadow_warns(self):
        with pytest.warns(ShadowWarning):
            parse("forall y: ({y : y in x} in x)")

    def test_shadowed_ast_still_built(self):
        import warnings
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", ShadowWarning)
            f = parse("forall y: (exists y: (y in y))")
        assert f == Forall("y", Exists("y", Membership(Y, Y)))


class TestWhitespaceAndLayout:
    def test_newlines_inside_formula(self):
        assert parse("x in x\n& Verum") == And(Membership(X, X), Verum())

    def test_print_of_parse_is_stable(self):
        texts = [
            "not (x in x)",
            "not (exists a: ((x in a) & (a in x)))",
            "forall y: ((y in x) -> (not (y in y)))",
            "x in {y : (y = y)}",
        ]
        for t in texts:
            f = parse(t)
            assert parse(to_text(f)) == f
