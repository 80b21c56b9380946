"""Recursive-descent parser for the formula language.

Grammar:

    formula := iff
    iff     := imp ("<->" imp)*
    imp     := or ("->" or)*
    or      := and ("|" and)*
    and     := unary ("&" unary)*
    unary   := "not" unary | "forall" IDENT ":" unary
             | "exists" IDENT ":" unary | atom
    atom    := "Verum" | "Falsum" | term ("in" | "=") term | "(" formula ")"
    term    := IDENT | "{" IDENT ":" formula "}"
             | IDENT "(" term ("," term)* ")"

Precedence: not > & > | > -> > <->.  A quantifier body extends maximally to
the right, so ``forall v: a & b`` binds the whole conjunction.  Binary
operators chain left-associatively.  ``#`` starts a comment running to end of
line.  Identifiers match [a-zA-Z][a-zA-Z0-9_]*.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .syntax import (And, Equality, Exists, Falsum, FnApp, Forall, Formula,
                     Iff, Implies, Membership, Not, Or, SetAbs, Variable,
                     Verum)

KEYWORDS = {"not", "forall", "exists", "in", "Verum", "Falsum"}
SYMBOLS = ("<->", "->", "|", "&", "(", ")", "{", "}", ":", ",", "=")


class ParseError(Exception):
    """Raised on any malformed input; carries position and what was expected."""

    def __init__(self, message: str, line: int, column: int, expected=()):
        self.line = line
        self.column = column
        self.expected = tuple(expected)
        super().__init__(f"{message} at line {line}, column {column}")


class ShadowWarning(UserWarning):
    """A binder reuses a variable name already bound in an enclosing scope."""


@dataclass(frozen=True)
class Token:
    kind: str  # "ident", "keyword", a symbol literal, or "eof"
    value: str
    line: int
    column: int


def tokenize(text: str) -> list:
    tokens = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch.isalpha():
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            kind = "keyword" if word in KEYWORDS else "ident"
            tokens.append(Token(kind, word, line, col))
            col += j - i
            i = j
            continue
        for sym in SYMBOLS:
            if text.startswith(sym, i):
                tokens.append(Token(sym, sym, line, col))
                i += len(sym)
                col += len(sym)
                break
        else:
            raise ParseError(f"unexpected character {ch!r}", line, col,
                             expected=("formula",))
    tokens.append(Token("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0
        self.scopes = []  # stack of bound variable names

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def error(self, message, expected):
        tok = self.peek()
        raise ParseError(message, tok.line, tok.column, expected)

    def expect(self, kind, what):
        tok = self.peek()
        if tok.kind != kind:
            self.error(f"expected {what}, found {tok.value or 'end of input'}",
                       (what,))
        return self.advance()

    def expect_ident(self, what="identifier") -> Token:
        tok = self.peek()
        if tok.kind != "ident":
            self.error(f"expected {what}, found {tok.value or 'end of input'}",
                       (what,))
        return self.advance()

    def _enter(self, name, tok):
        if name in self.scopes:
            warnings.warn(
                f"binder {name!r} at line {tok.line}, column {tok.column} "
                "shadows an enclosing binder",
                ShadowWarning,
                stacklevel=6,
            )
        self.scopes.append(name)

    def _leave(self):
        self.scopes.pop()

    # precedence ladder -----------------------------------------------------

    def formula(self) -> Formula:
        return self.iff()

    def _chain(self, sub, sym, cls):
        f = sub()
        while self.peek().kind == sym:
            self.advance()
            f = cls(f, sub())
        return f

    def iff(self) -> Formula:
        return self._chain(self.imp, "<->", Iff)

    def imp(self) -> Formula:
        return self._chain(self.or_, "->", Implies)

    def or_(self) -> Formula:
        return self._chain(self.and_, "|", Or)

    def and_(self) -> Formula:
        return self._chain(self.unary, "&", And)

    def unary(self) -> Formula:
        tok = self.peek()
        if tok.kind == "keyword" and tok.value == "not":
            self.advance()
            return Not(self.unary())
        if tok.kind == "keyword" and tok.value in ("forall", "exists"):
            self.advance()
            name = self.expect_ident("bound variable").value
            self.expect(":", "':'")
            self._enter(name, tok)
            try:
                # maximal scope: the body is a full formula
                body = self.formula()
            finally:
                self._leave()
            return (Forall if tok.value == "forall" else Exists)(name, body)
        return self.atom()

    def atom(self) -> Formula:
        tok = self.peek()
        if tok.kind == "keyword" and tok.value == "Verum":
            self.advance()
            return Verum()
        if tok.kind == "keyword" and tok.value == "Falsum":
            self.advance()
            return Falsum()
        if tok.kind == "(":
            self.advance()
            f = self.formula()
            self.expect(")", "')'")
            return f
        lhs = self.term()
        tok = self.peek()
        if tok.kind == "keyword" and tok.value == "in":
            self.advance()
            return Membership(lhs, self.term())
        if tok.kind == "=":
            self.advance()
            return Equality(lhs, self.term())
        self.error(f"expected 'in' or '=', found {tok.value or 'end of input'}",
                   ("'in'", "'='"))

    def term(self):
        tok = self.peek()
        if tok.kind == "{":
            self.advance()
            var_tok = self.expect_ident("bound variable")
            self.expect(":", "':'")
            self._enter(var_tok.value, var_tok)
            try:
                body = self.formula()
            finally:
                self._leave()
            self.expect("}", "'}'")
            return SetAbs(var_tok.value, body)
        if tok.kind == "ident":
            self.advance()
            if self.peek().kind == "(":
                self.advance()
                args = [self.term()]
                while self.peek().kind == ",":
                    self.advance()
                    args.append(self.term())
                self.expect(")", "')'")
                return FnApp(tok.value, tuple(args))
            return Variable(tok.value)
        self.error(f"expected term, found {tok.value or 'end of input'}",
                   ("term",))


def parse(text: str) -> Formula:
    """Parse a single formula; trailing input is an error."""

    parser = _Parser(tokenize(text))
    f = parser.formula()
    tok = parser.peek()
    if tok.kind != "eof":
        raise ParseError(f"expected end of input, found {tok.value!r}",
                         tok.line, tok.column, expected=("end of input",))
    return f
