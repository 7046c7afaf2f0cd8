"""
Group expression AST, parser, printer and group-file reader.

Grammar::

    expr   := Atom(args) | DirectProduct(expr, ...) | ShiftProduct(expr, k)
            | SemidirectByAut(expr, [gen -> word, ...]) | File("path")
    word   := factor ('*' factor)*      factor := gen ('^' int)?
    gen    := g | g1 | g2 | ...         (g is g1)
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Tuple, Union

from ..errors import ParseError
from ..perm_core import parse_cycles


@dataclass(frozen=True)
class Atom:
    name: str
    params: Tuple[int, ...] = ()


@dataclass(frozen=True)
class DirectProduct:
    factors: Tuple["GroupExpr", ...]


@dataclass(frozen=True)
class AutSpec:
    """Generator images of one automorphism; each word is a list of (generator index, exponent)."""
    images: Tuple[Tuple[int, Tuple[Tuple[int, int], ...]], ...]


@dataclass(frozen=True)
class SemidirectByAut:
    base: "GroupExpr"
    auts: Tuple[AutSpec, ...]


@dataclass(frozen=True)
class ShiftProduct:
    factor: "GroupExpr"
    copies: int


@dataclass(frozen=True)
class FromFile:
    path: str
    degree: int
    generators: Tuple[str, ...] = field(default=())
    name: str = ""


GroupExpr = Union[Atom, DirectProduct, SemidirectByAut, ShiftProduct, FromFile]


class _Parser:
    """Recursive-descent parser with line/column tracking."""

    def __init__(self, text: str, source: str = "<expr>"):
        self.text = text
        self.source = source
        self.pos = 0

    def error(self, message: str) -> ParseError:
        line = self.text.count("\n", 0, self.pos) + 1
        column = self.pos - (self.text.rfind("\n", 0, self.pos) + 1) + 1
        return ParseError(message, line, column, self.source)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, token: str):
        self.skip()
        if not self.text.startswith(token, self.pos):
            raise self.error(f"expected {token!r}")
        self.pos += len(token)

    def ident(self) -> str:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
            self.pos += 1
        if start == self.pos or not self.text[start].isalpha():
            self.pos = start
            raise self.error("expected an identifier")
        return self.text[start:self.pos]

    def integer(self) -> int:
        self.skip()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        try:
            return int(self.text[start:self.pos])
        except ValueError:
            self.pos = start
            raise self.error("expected an integer")

    def string(self) -> str:
        self.expect('"')
        end = self.text.find('"', self.pos)
        if end < 0:
            raise self.error("unterminated string")
        value = self.text[self.pos:end]
        self.pos = end + 1
        return value

    def parse(self) -> GroupExpr:
        expr = self.expr()
        if self.peek():
            raise self.error("trailing input")
        return expr

    def expr(self) -> GroupExpr:
        name = self.ident()
        self.expect("(")
        if name == "DirectProduct":
            factors = [self.expr()]
            while self.peek() == ",":
                self.expect(",")
                factors.append(self.expr())
            self.expect(")")
            return DirectProduct(tuple(factors))
        if name == "ShiftProduct":
            factor = self.expr()
            self.expect(",")
            copies = self.integer()
            self.expect(")")
            return ShiftProduct(factor, copies)
        if name == "SemidirectByAut":
            base = self.expr()
            auts = []
            while self.peek() == ",":
                self.expect(",")
                auts.append(self.aut_spec())
            self.expect(")")
            if not auts:
                raise self.error("SemidirectByAut needs at least one automorphism")
            return SemidirectByAut(base, tuple(auts))
        if name == "File":
            path = self.string()
            self.expect(")")
            return parse_group_file(path)
        params = []
        if self.peek() != ")":
            params.append(self.integer())
            while self.peek() == ",":
                self.expect(",")
                params.append(self.integer())
        self.expect(")")
        return Atom(name, tuple(params))

    def generator(self) -> int:
        name = self.ident()
        if name == "g":
            return 1
        if name.startswith("g") and name[1:].isdigit() and int(name[1:]) >= 1:
            return int(name[1:])
        raise self.error(f"unknown generator {name!r}")

    def word(self) -> Tuple[Tuple[int, int], ...]:
        factors = []
        while True:
            gen = self.generator()
            exp = 1
            if self.peek() == "^":
                self.expect("^")
                exp = self.integer()
            factors.append((gen, exp))
            if self.peek() != "*":
                return tuple(factors)
            self.expect("*")

    def aut_spec(self) -> AutSpec:
        self.expect("[")
        images = []
        while True:
            gen = self.generator()
            self.expect("->")
            images.append((gen, self.word()))
            if self.peek() != ",":
                break
            self.expect(",")
        self.expect("]")
        return AutSpec(tuple(images))


def parse_group_expr(text: str) -> GroupExpr:
    """Parse an expression such as ``SemidirectByAut(Cyclic(7), [g -> g^3])``."""
    return _Parser(text).parse()


def parse_group_file(path: Union[str, Path]) -> FromFile:
    """
    Read a line-oriented group file.

    Lines: optional ``name <ident>``, required ``degree <n>``, one or more
    ``gen <cycles>``; ``#`` starts a comment.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read group file: {e}", 1, 1, str(path))
    return parse_group_text(text, str(path))


def parse_group_text(text: str, source: str = "<file>") -> FromFile:
    name, degree, gens = "", None, []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, _, rest = line.partition(" ")
        rest = rest.strip()
        if keyword == "name":
            name = rest
        elif keyword == "degree":
            if degree is not None:
                raise ParseError("duplicate degree line", lineno, 1, source)
            try:
                degree = int(rest)
            except ValueError:
                raise ParseError(f"invalid degree {rest!r}", lineno, 8, source)
            if degree <= 0:
                raise ParseError("degree must be positive", lineno, 8, source)
        elif keyword == "gen":
            if degree is None:
                raise ParseError("gen before degree", lineno, 1, source)
            try:
                parse_cycles(rest, degree)
            except ParseError as e:
                raise ParseError(str(e).split(": ", 1)[-1], lineno, 4 + e.column, source)
            gens.append(rest)
        else:
            raise ParseError(f"unknown keyword {keyword!r}", lineno, 1, source)
    if degree is None:
        raise ParseError("missing degree line", 1, 1, source)
    if not gens:
        raise ParseError("at least one gen line is required", 1, 1, source)
    return FromFile(source, degree, tuple(gens), name)


def _format_word(word: Tuple[Tuple[int, int], ...]) -> str:
    return "*".join(f"g{gen}" + (f"^{exp}" if exp != 1 else "") for gen, exp in word)


def format_group_expr(expr: GroupExpr) -> str:
    """Print an expression back in the grammar accepted by the parser."""
    if isinstance(expr, Atom):
        return f"{expr.name}({','.join(str(p) for p in expr.params)})"
    if isinstance(expr, DirectProduct):
        return f"DirectProduct({', '.join(format_group_expr(f) for f in expr.factors)})"
    if isinstance(expr, ShiftProduct):
        return f"ShiftProduct({format_group_expr(expr.factor)}, {expr.copies})"
    if isinstance(expr, SemidirectByAut):
        specs = []
        for aut in expr.auts:
            specs.append("[" + ", ".join(f"g{gen} -> {_format_word(word)}" for gen, word in aut.images) + "]")
        return f"SemidirectByAut({format_group_expr(expr.base)}, {', '.join(specs)})"
    if isinstance(expr, FromFile):
        return f'File("{expr.path}")'
    raise TypeError(f"not a group expression: {expr!r}")
