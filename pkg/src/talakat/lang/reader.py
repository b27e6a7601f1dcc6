"""Reader for the relaxed structured-text form scripts are written in.

The on-disk script format looks like JSON but is deliberately forgiving:
object keys may be bare identifiers, commas between members and elements are
optional, and trailing commas are ignored.  Values are objects, arrays,
double-quoted strings, bare identifiers (read as strings), numbers, or
booleans.  Errors report line:column positions.
"""
from __future__ import annotations

from dataclasses import dataclass


class SyntaxDiagnostic(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col


@dataclass
class _Token:
    kind: str  # one of {, }, [, ], :, ,, string, ident, number, eof
    value: object
    line: int
    col: int


_PUNCT = "{}[]:,"


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i, line, col = 0, 1, 1
    n = len(text)
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
        if ch == "/" and text[i : i + 2] == "//":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        start_line, start_col = line, col
        if ch in _PUNCT:
            tokens.append(_Token(ch, ch, line, col))
            i += 1
            col += 1
            continue
        if ch == '"':
            j = i + 1
            buf = []
            while j < n and text[j] != '"':
                if text[j] == "\n":
                    raise SyntaxDiagnostic("unterminated string", start_line, start_col)
                if text[j] == "\\" and j + 1 < n:
                    esc = text[j + 1]
                    buf.append({"n": "\n", "t": "\t", '"': '"', "\\": "\\"}.get(esc, esc))
                    j += 2
                else:
                    buf.append(text[j])
                    j += 1
            if j >= n:
                raise SyntaxDiagnostic("unterminated string", start_line, start_col)
            tokens.append(_Token("string", "".join(buf), start_line, start_col))
            col += j + 1 - i
            i = j + 1
            continue
        if ch.isdigit() or (ch in "+-." and i + 1 < n and (text[i + 1].isdigit() or text[i + 1] == ".")):
            j = i
            while j < n and (text[j].isdigit() or text[j] in "+-.eE"):
                j += 1
            raw = text[i:j]
            try:
                value: object = int(raw)
            except ValueError:
                try:
                    value = float(raw)
                except ValueError:
                    raise SyntaxDiagnostic(f"bad number {raw!r}", start_line, start_col) from None
            tokens.append(_Token("number", value, start_line, start_col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            if word == "true":
                tokens.append(_Token("number", True, start_line, start_col))
            elif word == "false":
                tokens.append(_Token("number", False, start_line, start_col))
            else:
                tokens.append(_Token("ident", word, start_line, start_col))
            col += j - i
            i = j
            continue
        raise SyntaxDiagnostic(f"unexpected character {ch!r}", line, col)
    tokens.append(_Token("eof", None, line, col))
    return tokens


class _Reader:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def skip_commas(self) -> None:
        while self.peek().kind == ",":
            self.next()

    def value(self):
        tok = self.peek()
        if tok.kind == "{":
            return self.obj()
        if tok.kind == "[":
            return self.arr()
        if tok.kind in ("string", "number"):
            return self.next().value
        if tok.kind == "ident":
            return self.next().value
        raise SyntaxDiagnostic(f"expected a value, got {tok.kind!r}", tok.line, tok.col)

    def obj(self) -> dict:
        self.next()  # {
        out: dict = {}
        while True:
            self.skip_commas()
            tok = self.peek()
            if tok.kind == "}":
                self.next()
                return out
            if tok.kind not in ("ident", "string"):
                raise SyntaxDiagnostic(f"expected object key, got {tok.kind!r}", tok.line, tok.col)
            key = str(self.next().value)
            colon = self.next()
            if colon.kind != ":":
                raise SyntaxDiagnostic("expected ':' after object key", colon.line, colon.col)
            out[key] = self.value()

    def arr(self) -> list:
        self.next()  # [
        out: list = []
        while True:
            self.skip_commas()
            tok = self.peek()
            if tok.kind == "]":
                self.next()
                return out
            out.append(self.value())


def read_document(text: str):
    """Parse a structured-text document into dicts/lists/scalars."""
    reader = _Reader(_tokenize(text))
    value = reader.value()
    tail = reader.peek()
    if tail.kind != "eof":
        raise SyntaxDiagnostic("trailing content after document", tail.line, tail.col)
    return value
