"""Recursive-descent parser for the analyzed source subset.

Accepts one class per file: package declaration, imports, modifiers,
methods with typed parameters, if/else, return, expression statements,
string literals, identifiers, ``+`` concatenation and method calls.
Line and block comments are skipped. Anything outside the subset raises
:class:`SourceSyntaxError` with the offending line.
"""

from __future__ import annotations

from dataclasses import dataclass

from .syntax import (
    Call,
    Concat,
    ExprStmt,
    Ident,
    If,
    MethodDecl,
    Return,
    SourceUnit,
    StrLit,
)


class SourceSyntaxError(Exception):
    """Source text outside the supported subset."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message


_KEYWORDS = {
    "package", "import", "class", "if", "else", "return",
    "public", "private", "protected", "static", "final",
}
_MODIFIERS = {"public", "private", "protected", "static", "final"}
_PUNCT = {"{", "}", "(", ")", ";", ",", ".", "+"}

_STRING_ESCAPES = {"n": "\n", "t": "\t", "r": "\r", "b": "\b", "f": "\f",
                   '"': '"', "'": "'", "\\": "\\"}


@dataclass(frozen=True)
class _Token:
    kind: str  # "ident", "keyword", "string", "punct", "eof"
    value: str
    line: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i = 0
    line = 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            continue
        if text.startswith("//", i):
            end = text.find("\n", i)
            i = n if end < 0 else end
            continue
        if text.startswith("/*", i):
            end = text.find("*/", i + 2)
            if end < 0:
                raise SourceSyntaxError(line, "unterminated block comment")
            line += text.count("\n", i, end)
            i = end + 2
            continue
        if ch == '"':
            start_line = line
            i += 1
            chars: list[str] = []
            while True:
                if i >= n:
                    raise SourceSyntaxError(start_line, "unterminated string literal")
                c = text[i]
                if c == '"':
                    i += 1
                    break
                if c == "\n":
                    raise SourceSyntaxError(start_line, "newline in string literal")
                if c == "\\":
                    if i + 1 >= n:
                        raise SourceSyntaxError(start_line, "dangling escape in string literal")
                    esc = text[i + 1]
                    chars.append(_STRING_ESCAPES.get(esc, esc))
                    i += 2
                    continue
                chars.append(c)
                i += 1
            tokens.append(_Token("string", "".join(chars), start_line))
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            kind = "keyword" if word in _KEYWORDS else "ident"
            tokens.append(_Token(kind, word, line))
            i = j
            continue
        if ch in _PUNCT:
            tokens.append(_Token("punct", ch, line))
            i += 1
            continue
        raise SourceSyntaxError(line, f"unexpected character {ch!r}")
    tokens.append(_Token("eof", "", line))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token], path: str):
        self.tokens = tokens
        self.pos = 0
        self.path = path

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def error(self, message: str) -> SourceSyntaxError:
        return SourceSyntaxError(self.peek().line, message)

    def expect_punct(self, value: str) -> _Token:
        tok = self.peek()
        if tok.kind != "punct" or tok.value != value:
            raise self.error(f"expected {value!r}, found {tok.value!r}")
        return self.advance()

    def expect_keyword(self, value: str) -> _Token:
        tok = self.peek()
        if tok.kind != "keyword" or tok.value != value:
            raise self.error(f"expected {value!r}, found {tok.value!r}")
        return self.advance()

    def expect_ident(self, what: str) -> _Token:
        tok = self.peek()
        if tok.kind != "ident":
            raise self.error(f"expected {what}, found {tok.value!r}")
        return self.advance()

    def at_punct(self, value: str) -> bool:
        tok = self.peek()
        return tok.kind == "punct" and tok.value == value

    def at_keyword(self, value: str) -> bool:
        tok = self.peek()
        return tok.kind == "keyword" and tok.value == value

    # --- grammar ---

    def parse_unit(self) -> SourceUnit:
        self.expect_keyword("package")
        package = self.parse_dotted()
        self.expect_punct(";")

        imports = []
        while self.at_keyword("import"):
            self.advance()
            imports.append(self.parse_dotted())
            self.expect_punct(";")

        self.parse_modifiers()
        self.expect_keyword("class")
        class_name = self.expect_ident("class name").value
        self.expect_punct("{")
        methods = []
        while not self.at_punct("}"):
            methods.append(self.parse_method())
        self.expect_punct("}")
        if self.peek().kind != "eof":
            raise self.error("trailing content after class body")
        return SourceUnit(
            path=self.path,
            package=package,
            class_name=class_name,
            imports=tuple(imports),
            methods=tuple(methods),
        )

    def parse_dotted(self) -> str:
        parts = [self.expect_ident("name").value]
        while self.at_punct("."):
            self.advance()
            parts.append(self.expect_ident("name").value)
        return ".".join(parts)

    def parse_modifiers(self) -> tuple[str, ...]:
        mods = []
        while self.peek().kind == "keyword" and self.peek().value in _MODIFIERS:
            mods.append(self.advance().value)
        return tuple(mods)

    def parse_method(self) -> MethodDecl:
        start = self.peek().line
        mods = self.parse_modifiers()
        return_type = self.parse_type()
        name = self.expect_ident("method name").value
        self.expect_punct("(")
        params = []
        if not self.at_punct(")"):
            while True:
                ptype = self.parse_type()
                pname = self.expect_ident("parameter name").value
                if any(existing == pname for existing, _ in params):
                    raise SourceSyntaxError(self.peek().line,
                                            f"duplicate parameter name {pname!r}")
                params.append((pname, ptype))
                if self.at_punct(","):
                    self.advance()
                    continue
                break
        self.expect_punct(")")
        body = self.parse_block()
        return MethodDecl(
            name=name,
            params=tuple(params),
            is_static="static" in mods,
            body=body,
            return_type=return_type,
            modifiers=mods,
            line=start,
        )

    def parse_type(self) -> str:
        # "void" lexes as an identifier; any single identifier is a type name
        return self.expect_ident("type name").value

    def parse_block(self) -> tuple:
        self.expect_punct("{")
        stmts = []
        while not self.at_punct("}"):
            stmts.append(self.parse_stmt())
        self.expect_punct("}")
        return tuple(stmts)

    def parse_stmt(self):
        tok = self.peek()
        if tok.kind == "keyword" and tok.value == "if":
            return self.parse_if()
        if tok.kind == "keyword" and tok.value == "return":
            self.advance()
            if self.at_punct(";"):
                self.advance()
                return Return(None, line=tok.line)
            value = self.parse_expr()
            self.expect_punct(";")
            return Return(value, line=tok.line)
        if tok.kind == "keyword":
            raise self.error(f"unsupported statement {tok.value!r}")
        expr = self.parse_expr()
        self.expect_punct(";")
        return ExprStmt(expr, line=tok.line)

    def parse_if(self) -> If:
        start = self.expect_keyword("if").line
        self.expect_punct("(")
        cond = self.parse_expr()
        self.expect_punct(")")
        then_body = self.parse_branch_body()
        else_body: tuple = ()
        if self.at_keyword("else"):
            self.advance()
            if self.at_keyword("if"):
                else_body = (self.parse_if(),)
            else:
                else_body = self.parse_branch_body()
        return If(cond, then_body, else_body, line=start)

    def parse_branch_body(self) -> tuple:
        if self.at_punct("{"):
            return self.parse_block()
        return (self.parse_stmt(),)

    def parse_expr(self):
        expr = self.parse_postfix()
        while self.at_punct("+"):
            plus = self.advance()
            right = self.parse_postfix()
            expr = Concat(expr, right, line=plus.line)
        return expr

    def parse_postfix(self):
        expr = self.parse_primary()
        while self.at_punct("."):
            self.advance()
            name = self.expect_ident("method name")
            self.expect_punct("(")
            args = self.parse_args()
            expr = Call(expr, name.value, args, line=name.line)
        return expr

    def parse_primary(self):
        tok = self.peek()
        if tok.kind == "string":
            self.advance()
            return StrLit(tok.value, line=tok.line)
        if tok.kind == "ident":
            self.advance()
            if self.at_punct("("):
                self.advance()
                args = self.parse_args()
                return Call(None, tok.value, args, line=tok.line)
            return Ident(tok.value, line=tok.line)
        if tok.kind == "punct" and tok.value == "(":
            self.advance()
            expr = self.parse_expr()
            self.expect_punct(")")
            return expr
        raise self.error(f"expected expression, found {tok.value!r}")

    def parse_args(self) -> tuple:
        # caller consumed "("
        args = []
        if not self.at_punct(")"):
            while True:
                args.append(self.parse_expr())
                if self.at_punct(","):
                    self.advance()
                    continue
                break
        self.expect_punct(")")
        return tuple(args)


def parse_source(text: str, path: str = "<memory>") -> SourceUnit:
    """Parse subset source text into a :class:`SourceUnit`.

    Raises:
        SourceSyntaxError: when the text falls outside the subset grammar.
    """
    return _Parser(_tokenize(text), path).parse_unit()
