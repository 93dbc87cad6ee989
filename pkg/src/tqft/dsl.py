"""Text syntax for bordism words.

    word    := slice ( ";" slice )*
    slice   := factor ( "|" factor )*
    factor  := "cap" | "cup" | "pants" | "copants" | "cyl" | "swap"
             | "id+" | "id-" | "coev" | "ev" | "symm" [ "(" sign "," sign ")" ]
             | "empty"
             | "surface(" nat "," nat "," nat ")"

``;`` composes in time order, ``|`` places factors side by side. A bare
``symm`` takes its signs from the points it receives. ``empty`` is the
identity of the empty object. ``#`` starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .bordism import (
    BordismWord,
    DimensionMismatch,
    Generator,
    Kind,
    TypeMismatch,
    compose,
    empty_object,
    generator_word,
    open_surface_word,
    tensor,
)


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class PositionedTypeMismatch(TypeMismatch):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r\n]+|\#[^\n]*)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*[+-]?)
  | (?P<nat>[0-9]+)
  | (?P<punct>[;|(),+-])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    out = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind != "ws":
            tok = m.group().lower() if kind == "name" else m.group()
            out.append(Token(kind, tok, line, pos - line_start + 1))
        for k, ch in enumerate(m.group()):
            if ch == "\n":
                line += 1
                line_start = pos + k + 1
        pos = m.end()
    out.append(Token("eof", "", line, pos - line_start + 1))
    return out


_GENERATORS = {k.value: k for k in Kind}
_ONE_D = {"id+", "id-", "coev", "ev", "symm"}


@dataclass
class Factor:
    name: str
    args: tuple = ()
    line: int = 0
    column: int = 0


@dataclass
class SliceNode:
    factors: list[Factor] = field(default_factory=list)
    line: int = 0
    column: int = 0


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.toks = tokens
        self.i = 0

    def peek(self) -> Token:
        return self.toks[self.i]

    def take(self, text: str | None = None, kind: str | None = None) -> Token:
        t = self.peek()
        if (text is not None and t.text != text) or (kind is not None and t.kind != kind):
            want = repr(text) if text is not None else kind
            got = repr(t.text) if t.kind != "eof" else "end of input"
            raise ParseError(f"expected {want}, found {got}", t.line, t.column)
        self.i += 1
        return t

    def word(self) -> list[SliceNode]:
        slices = [self.slice()]
        while self.peek().text == ";":
            self.take(";")
            slices.append(self.slice())
        t = self.peek()
        if t.kind != "eof":
            raise ParseError(f"unexpected {t.text!r}", t.line, t.column)
        return slices

    def slice(self) -> SliceNode:
        t = self.peek()
        node = SliceNode([self.factor()], t.line, t.column)
        while self.peek().text == "|":
            self.take("|")
            node.factors.append(self.factor())
        return node

    def factor(self) -> Factor:
        t = self.peek()
        if t.kind != "name":
            got = repr(t.text) if t.kind != "eof" else "end of input"
            raise ParseError(f"expected a generator, found {got}", t.line, t.column)
        self.take()
        name = t.text
        if name == "surface":
            self.take("(")
            nums = [int(self.take(kind="nat").text)]
            for _ in range(2):
                self.take(",")
                nums.append(int(self.take(kind="nat").text))
            self.take(")")
            return Factor(name, tuple(nums), t.line, t.column)
        if name == "symm" and self.peek().text == "(":
            self.take("(")
            a = self._sign()
            self.take(",")
            b = self._sign()
            self.take(")")
            return Factor(name, (a, b), t.line, t.column)
        if name != "empty" and name not in _GENERATORS:
            raise ParseError(f"unknown generator {name!r}", t.line, t.column)
        return Factor(name, (), t.line, t.column)

    def _sign(self) -> str:
        t = self.peek()
        if t.text not in ("+", "-"):
            raise ParseError(f"expected '+' or '-', found {t.text!r}", t.line, t.column)
        self.take()
        return t.text


def parse_ast(text: str) -> list[SliceNode]:
    return _Parser(tokenize(text)).word()


def _infer_dimension(slices: list[SliceNode]) -> int:
    one = two = None
    for s in slices:
        for f in s.factors:
            if f.name in _ONE_D:
                one = one or f
            elif f.name != "empty":
                two = two or f
    if one and two:
        raise PositionedTypeMismatch(f"{two.name!r} is 2D but {one.name!r} is 1D",
                                     two.line, two.column)
    return 1 if one else 2


def _factor_word(f: Factor, dim: int, incoming, offset: int) -> BordismWord:
    if f.name == "empty":
        e = empty_object(dim)
        return BordismWord(((),), e, e)
    if f.name == "surface":
        return open_surface_word(*f.args)
    kind = _GENERATORS[f.name]
    if kind is Kind.SYMM:
        signs = f.args
        if not signs:
            if incoming is None or offset + 2 > len(incoming):
                raise PositionedTypeMismatch(
                    "cannot infer the signs of symm here; write symm(+,-) etc.", f.line, f.column)
            signs = incoming.signs[offset:offset + 2]
        return generator_word(Generator(kind, signs))
    return generator_word(Generator(kind))


def build_word(slices: list[SliceNode]) -> BordismWord:
    dim = _infer_dimension(slices)
    result: BordismWord | None = None
    for s in slices:
        incoming = result.target if result is not None else None
        offset = 0
        piece = None
        for f in s.factors:
            w = _factor_word(f, dim, incoming, offset)
            offset += len(w.source)
            piece = w if piece is None else tensor(piece, w)
        if result is None:
            result = piece
            continue
        if piece.source != result.target:
            raise PositionedTypeMismatch(
                f"slice expects {piece.source} but receives {result.target}", s.line, s.column)
        result = compose(result, piece)
    return result


def parse_bordism_dsl(text: str) -> BordismWord:
    """Parse DSL text into a well-typed word.

    Raises :class:`ParseError` for malformed text and
    :class:`PositionedTypeMismatch` (a ``TypeMismatch``) for ill-typed words.
    """
    try:
        return build_word(parse_ast(text))
    except DimensionMismatch as exc:  # pragma: no cover - guarded by _infer_dimension
        raise PositionedTypeMismatch(str(exc), 1, 1) from exc
