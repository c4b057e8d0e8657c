"""Tokenizer and recursive-descent parsers for the concrete syntax.

Type grammar (arrows right-associative, Pi extends maximally right):

    Type ::= Ident | Type "->" Type | "Pi" Ident "." Type | "(" Type ")"

Term grammar (application left-associative, "{T}" binds tighter):

    Term ::= Ident | Term Term | "\\" Ident ":" Type "." Term
           | "/\\" Ident "." Term | Term "{" Type "}" | "(" Term ")"

Identifiers may start with a digit as long as they contain a letter
(class names such as 2yoGirl); a token made of digits alone is a numeral
and is rejected by both grammars.  "#" starts a comment running to the
end of the line.

Bound type variables are recognised lexically; any other type identifier
is a declared base type if it appears in `base_types` and a free type
variable otherwise.  Free term identifiers become constants, checked
against `constants` when a constant set is supplied.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError, UnknownConstant
from .syntax import App, Arrow, Base, Const, Forall, Lam, TermExpr, TVar, TyApp, TyLam, TypeExpr, Var

BUILTIN_BASE_TYPES = frozenset({"t", "float"})

#: Names that may not be rebound by lambda / Pi binders.
RESERVED = frozenset(
    {"Pi", "forall", "exists", "spec", "tau", "eps", "and", "or", "imp", "not", "lt", "height"}
)

_WORD = re.compile(r"[A-Za-z0-9_'][A-Za-z0-9_']*")
_IDENT = re.compile(r"(?=[0-9A-Za-z_']*[A-Za-z])[A-Za-z0-9][A-Za-z0-9_']*\Z")
_NUMERAL = re.compile(r"[0-9]+\Z")

_SYMBOLS = ("->", "/\\", "\\", ".", ":", "{", "}", "(", ")", "=")


@dataclass(frozen=True, slots=True)
class Token:
    kind: str  # "ident", "numeral", or the symbol itself
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        if c == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        for sym in _SYMBOLS:
            if text.startswith(sym, i):
                tokens.append(Token(sym, sym, line, col))
                i += len(sym)
                col += len(sym)
                break
        else:
            m = _WORD.match(text, i)
            if not m:
                raise ParseError(f"unexpected character {c!r}", line, col)
            word = m.group(0)
            if _NUMERAL.match(word):
                tokens.append(Token("numeral", word, line, col))
            elif _IDENT.match(word):
                tokens.append(Token("ident", word, line, col))
            else:
                raise ParseError(f"invalid identifier {word!r}", line, col)
            i = m.end()
            col += len(word)
    return tokens


class _Parser:
    def __init__(
        self,
        tokens: list[Token],
        base_types: frozenset[str],
        constants: frozenset[str] | None,
    ):
        self.tokens = tokens
        self.pos = 0
        self.base_types = base_types
        self.constants = constants
        self.tvar_scope: list[str] = []
        self.var_scope: list[str] = []

    # ------------------------------------------------------------ cursor

    def peek(self) -> Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self) -> Token:
        tok = self.peek()
        if tok is None:
            last = self.tokens[-1] if self.tokens else None
            raise ParseError(
                "unexpected end of input",
                last.line if last else 1,
                last.col + len(last.text) if last else 1,
            )
        self.pos += 1
        return tok

    def expect(self, kind: str) -> Token:
        tok = self.next()
        if tok.kind != kind:
            raise ParseError(f"expected {kind!r}, found {tok.text!r}", tok.line, tok.col)
        return tok

    def fail(self, message: str) -> ParseError:
        tok = self.peek()
        if tok is None:
            return ParseError("unexpected end of input: " + message)
        return ParseError(f"{message} (found {tok.text!r})", tok.line, tok.col)

    def binder_name(self) -> str:
        tok = self.expect("ident")
        if tok.text in RESERVED:
            raise ParseError(f"reserved word {tok.text!r} used as a binder", tok.line, tok.col)
        if tok.text in self.base_types:
            raise ParseError(
                f"{tok.text!r} is a declared base type and cannot be bound", tok.line, tok.col
            )
        return tok.text

    # ------------------------------------------------------------- types

    def type_expr(self) -> TypeExpr:
        tok = self.peek()
        if tok is not None and tok.kind == "ident" and tok.text == "Pi":
            self.next()
            binder = self.binder_name()
            self.expect(".")
            self.tvar_scope.append(binder)
            body = self.type_expr()
            self.tvar_scope.pop()
            return Forall(binder, body)
        left = self.type_atom()
        if self.peek() is not None and self.peek().kind == "->":
            self.next()
            return Arrow(left, self.type_expr())
        return left

    def type_atom(self) -> TypeExpr:
        tok = self.peek()
        if tok is None:
            raise self.fail("expected a type")
        if tok.kind == "(":
            self.next()
            inner = self.type_expr()
            self.expect(")")
            return inner
        if tok.kind == "ident":
            self.next()
            if tok.text == "Pi":
                raise ParseError("'Pi' must be followed by a binder and '.'", tok.line, tok.col)
            if tok.text in self.tvar_scope:
                return TVar(tok.text)
            if tok.text in self.base_types:
                return Base(tok.text)
            return TVar(tok.text)
        raise self.fail("expected a type")

    # ------------------------------------------------------------- terms

    def term_expr(self) -> TermExpr:
        tok = self.peek()
        if tok is None:
            raise self.fail("expected a term")
        if tok.kind == "\\":
            self.next()
            binder = self.binder_name()
            self.expect(":")
            binder_type = self.type_expr()
            self.expect(".")
            self.var_scope.append(binder)
            body = self.term_expr()
            self.var_scope.pop()
            return Lam(binder, binder_type, body)
        if tok.kind == "/\\":
            self.next()
            binder = self.binder_name()
            self.expect(".")
            self.tvar_scope.append(binder)
            body = self.term_expr()
            self.tvar_scope.pop()
            return TyLam(binder, body)
        term = self.term_postfix()
        while True:
            tok = self.peek()
            if tok is None or tok.kind not in ("ident", "(", "\\", "/\\"):
                break
            if tok.kind in ("\\", "/\\"):
                # an abstraction in argument position extends maximally right
                term = App(term, self.term_expr())
                break
            term = App(term, self.term_postfix())
        return term

    def term_postfix(self) -> TermExpr:
        term = self.term_atom()
        while self.peek() is not None and self.peek().kind == "{":
            self.next()
            type_arg = self.type_expr()
            self.expect("}")
            term = TyApp(term, type_arg)
        return term

    def term_atom(self) -> TermExpr:
        tok = self.next()
        if tok.kind == "(":
            inner = self.term_expr()
            self.expect(")")
            return inner
        if tok.kind == "ident":
            if tok.text == "Pi":
                raise ParseError("reserved word 'Pi' used as a term", tok.line, tok.col)
            if tok.text in self.var_scope:
                return Var(tok.text)
            if self.constants is not None and tok.text not in self.constants:
                raise UnknownConstant(f"{tok.line}:{tok.col}: unknown constant {tok.text!r}")
            return Const(tok.text)
        raise ParseError(f"expected a term, found {tok.text!r}", tok.line, tok.col)


def parse_type(text: str, base_types: frozenset[str] = BUILTIN_BASE_TYPES) -> TypeExpr:
    """Parse a type from concrete syntax.

    Raises ParseError with line/column on malformed input.
    """
    parser = _Parser(tokenize(text), frozenset(base_types), None)
    result = parser.type_expr()
    tok = parser.peek()
    if tok is not None:
        raise ParseError(f"trailing input after type: {tok.text!r}", tok.line, tok.col)
    return result


def parse_term(
    text: str,
    base_types: frozenset[str] = BUILTIN_BASE_TYPES,
    constants: frozenset[str] | None = None,
) -> TermExpr:
    """Parse a term from concrete syntax.

    Identifiers bound by an enclosing lambda become variables; all other
    identifiers become constants.  When `constants` is given, free
    identifiers not in the set are rejected with UnknownConstant.
    """
    parser = _Parser(tokenize(text), frozenset(base_types), constants)
    result = parser.term_expr()
    tok = parser.peek()
    if tok is not None:
        raise ParseError(f"trailing input after term: {tok.text!r}", tok.line, tok.col)
    return result


def parse_annotated_term(
    text: str,
    base_types: frozenset[str] = BUILTIN_BASE_TYPES,
    constants: frozenset[str] | None = None,
) -> tuple[TermExpr, TypeExpr]:
    """Parse `<Term> : <Type>` (the right-hand side of a lexicon word line)."""
    parser = _Parser(tokenize(text), frozenset(base_types), constants)
    term = parser.term_expr()
    tok = parser.peek()
    if tok is None or tok.kind != ":":
        raise parser.fail("expected ': <Type>' after the term")
    parser.next()
    ty = parser.type_expr()
    tok = parser.peek()
    if tok is not None:
        raise ParseError(f"trailing input after type: {tok.text!r}", tok.line, tok.col)
    return term, ty
