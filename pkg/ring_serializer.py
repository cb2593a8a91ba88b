"""
Ring serializer - constructor expressions and the plain-text ring-file format.

Ring file layout (UTF-8, '#' starts a comment line, zero is always id 0):

    ring <name>
    order <n>
    one <id>
    add:
    <n rows of n space-separated ids>
    mul:
    <n rows>
    end
"""

import re
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from finite_ring import FiniteRing
from ring_errors import RingInputError

CONSTRUCTORS = ("Zn", "Mat", "Tri", "Prod", "Quot", "Op")


class ParseError(RingInputError):
    """Syntax error in a constructor expression or a ring file."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)
        self.message = message
        self.line = line
        self.column = column


# ==================== CONSTRUCTOR EXPRESSIONS ====================

@dataclass(frozen=True)
class RingExpr:
    """Parse tree node of a constructor expression."""

    kind: str
    size: int = 0
    args: Tuple['RingExpr', ...] = ()
    generators: Tuple[int, ...] = ()

    def __str__(self):
        if self.kind == "Zn":
            return f"Zn({self.size})"
        if self.kind in ("Mat", "Tri"):
            return f"{self.kind}({self.size}, {self.args[0]})"
        if self.kind == "Prod":
            return f"Prod({self.args[0]}, {self.args[1]})"
        if self.kind == "Quot":
            return f"Quot({self.args[0]}, [{', '.join(str(g) for g in self.generators)}])"
        return f"Op({self.args[0]})"


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z]+)|(?P<punct>[(),\[\]]))")


class _ExprParser:
    """Recursive-descent parser over a token list of (kind, text, column)."""

    def __init__(self, text: str):
        self.text = text
        self.tokens: List[Tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            match = _TOKEN.match(text, pos)
            if not match:
                column = pos + len(text[pos:]) - len(text[pos:].lstrip()) + 1
                raise ParseError(f"unexpected character {text[column - 1]!r}", column=column)
            kind = match.lastgroup
            self.tokens.append((kind, match.group(kind), match.start(kind) + 1))
            pos = match.end()
        self.index = 0

    def _peek(self) -> Tuple[str, str, int]:
        if self.index < len(self.tokens):
            return self.tokens[self.index]
        return ("eof", "", len(self.text) + 1)

    def _take(self, kind: str, text: Optional[str] = None) -> Tuple[str, str, int]:
        token = self._peek()
        if token[0] != kind or (text is not None and token[1] != text):
            wanted = repr(text) if text else kind
            found = repr(token[1]) if token[0] != "eof" else "end of input"
            raise ParseError(f"expected {wanted}, found {found}", column=token[2])
        self.index += 1
        return token

    def _int(self) -> Tuple[int, int]:
        _, text, column = self._take("int")
        return int(text), column

    def parse(self) -> RingExpr:
        expr = self._expr()
        token = self._peek()
        if token[0] != "eof":
            raise ParseError(f"trailing input {token[1]!r}", column=token[2])
        return expr

    def _expr(self) -> RingExpr:
        _, name, column = self._take("name")
        if name not in CONSTRUCTORS:
            raise ParseError(f"unknown constructor {name!r}", column=column)
        self._take("punct", "(")
        if name == "Zn":
            n, where = self._int()
            if n < 2:
                raise ParseError(f"Zn order must be at least 2, got {n}", column=where)
            node = RingExpr("Zn", size=n)
        elif name in ("Mat", "Tri"):
            k, where = self._int()
            if k < 1:
                raise ParseError(f"{name} size must be at least 1, got {k}", column=where)
            self._take("punct", ",")
            node = RingExpr(name, size=k, args=(self._expr(),))
        elif name == "Prod":
            first = self._expr()
            self._take("punct", ",")
            node = RingExpr("Prod", args=(first, self._expr()))
        elif name == "Quot":
            base = self._expr()
            self._take("punct", ",")
            self._take("punct", "[")
            gens = []
            if self._peek()[1] != "]":
                gens.append(self._int()[0])
                while self._peek()[1] == ",":
                    self._take("punct", ",")
                    gens.append(self._int()[0])
            self._take("punct", "]")
            node = RingExpr("Quot", args=(base,), generators=tuple(gens))
        else:
            node = RingExpr("Op", args=(self._expr(),))
        self._take("punct", ")")
        return node


def parse_expr(text: str) -> RingExpr:
    """
    Parse a constructor expression such as "Tri(2, Zn(2))".

    Raises:
        ParseError: With the 1-based column of the offending token
    """
    return _ExprParser(text).parse()


# ==================== RING FILES ====================

def serialize_ring(R: FiniteRing) -> str:
    """Write R in the ring-file format."""
    name = " ".join(str(R.name).split()) or "unnamed"
    lines = [f"ring {name}", f"order {R.order}", f"one {R.one}", "add:"]
    lines.extend(" ".join(str(x) for x in row) for row in R.add_table)
    lines.append("mul:")
    lines.extend(" ".join(str(x) for x in row) for row in R.mul_table)
    lines.append("end")
    return "\n".join(lines) + "\n"


def _content_lines(text: str) -> List[Tuple[int, str]]:
    lines = []
    for number, raw in enumerate(text.splitlines(), 1):
        stripped = raw.strip()
        if stripped and not stripped.startswith("#"):
            lines.append((number, raw.rstrip()))
    return lines


def _keyword(lines, cursor: int, keyword: str) -> Tuple[str, int]:
    if cursor >= len(lines):
        raise ParseError(f"missing '{keyword}' line", line=(lines[-1][0] + 1) if lines else 1)
    number, raw = lines[cursor]
    stripped = raw.strip()
    if keyword.endswith(":"):
        if stripped != keyword:
            raise ParseError(f"expected '{keyword}', found {stripped!r}", line=number, column=1)
        return "", number
    head, _, rest = stripped.partition(" ")
    if head != keyword or not rest.strip():
        raise ParseError(f"expected '{keyword} <value>', found {stripped!r}", line=number, column=1)
    return rest.strip(), number


def _int_field(value: str, number: int, label: str) -> int:
    if not value.isdigit():
        raise ParseError(f"{label} must be a non-negative integer, found {value!r}", line=number)
    return int(value)


def _table(lines, cursor: int, order: int, label: str) -> np.ndarray:
    rows = []
    for offset in range(order):
        if cursor + offset >= len(lines):
            raise ParseError(f"{label} table has {offset} of {order} rows",
                             line=(lines[-1][0] + 1) if lines else 1)
        number, raw = lines[cursor + offset]
        row = []
        for match in re.finditer(r"\S+", raw):
            token, column = match.group(0), match.start() + 1
            if not token.isdigit():
                raise ParseError(f"{label} entry {token!r} is not an element id", line=number, column=column)
            if int(token) >= order:
                raise ParseError(f"{label} entry {token} is not below the order {order}",
                                 line=number, column=column)
            row.append(int(token))
        if len(row) != order:
            raise ParseError(f"{label} row has {len(row)} entries, expected {order}", line=number, column=1)
        rows.append(row)
    return np.array(rows, dtype=np.int64).reshape(order, order)


def parse_ring_file(text: str, order_cap: Optional[int] = None) -> FiniteRing:
    """
    Parse and validate a ring file.

    Raises:
        ParseError: On syntax errors, with line and column
        RingValidationError: If the tables break a ring axiom
    """
    lines = _content_lines(text)
    name, _ = _keyword(lines, 0, "ring")
    value, number = _keyword(lines, 1, "order")
    order = _int_field(value, number, "order")
    if order < 1:
        raise ParseError("order must be positive", line=number)
    value, number = _keyword(lines, 2, "one")
    one = _int_field(value, number, "one")
    if one >= order:
        raise ParseError(f"one id {one} is not below the order {order}", line=number)

    _keyword(lines, 3, "add:")
    add = _table(lines, 4, order, "add")
    cursor = 4 + order
    _keyword(lines, cursor, "mul:")
    mul = _table(lines, cursor + 1, order, "mul")
    cursor += 1 + order
    if cursor >= len(lines) or lines[cursor][1].strip() != "end":
        where = lines[cursor][0] if cursor < len(lines) else (lines[-1][0] + 1)
        raise ParseError("expected 'end'", line=where, column=1)
    if cursor + 1 < len(lines):
        raise ParseError("content after 'end'", line=lines[cursor + 1][0], column=1)

    return FiniteRing(add, mul, one, name=name, order_cap=order_cap)
