"""A tiny boolean expression language over coin-flip process variables.

Grammar (whitespace insignificant, keywords case-sensitive):

    expr       := or_expr
    or_expr    := and_expr ( "||" and_expr )*
    and_expr   := unary ( "&&" unary )*
    unary      := "!" unary | "(" expr ")" | comparison
    comparison := term cmp_op term
    cmp_op     := "==" | "!=" | "<" | "<=" | ">" | ">="
    term       := INT | "Y" | "Z" | "N" | "X" "[" ( INT | "N" ) "]"

X[i] is the i-th flip (i >= 1), X[N] the last one; Y is the running maximum,
Z the last index attaining it, N the horizon.  Indices are integer literals
or the symbol N only — X[Z] is deliberately not expressible, which keeps
evaluation first-order and the grammar LL(1).
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from typing import Callable, Union

from .errors import EventParseError, IndexOutOfRangeError

_CMP_FUNCS = {
    "==": operator.eq,
    "!=": operator.ne,
    "<": operator.lt,
    "<=": operator.le,
    ">": operator.gt,
    ">=": operator.ge,
}

_TERM_EXPECTED = ("integer", "X", "Y", "Z", "N")
_START_EXPECTED = ("!", "(") + _TERM_EXPECTED


@dataclass(frozen=True, slots=True)
class Lit:
    value: int


@dataclass(frozen=True, slots=True)
class Var:
    name: str  # "Y", "Z", or "N"


@dataclass(frozen=True, slots=True)
class Coord:
    index: int | None  # X[index], or X[N] when None


Term = Union[Lit, Var, Coord]


@dataclass(frozen=True, slots=True)
class Cmp:
    op: str
    lhs: Term
    rhs: Term


@dataclass(frozen=True, slots=True)
class Not:
    operand: "Node"


@dataclass(frozen=True, slots=True)
class And:
    lhs: "Node"
    rhs: "Node"


@dataclass(frozen=True, slots=True)
class Or:
    lhs: "Node"
    rhs: "Node"


Node = Union[Cmp, Not, And, Or]


@dataclass(frozen=True, slots=True)
class EventPredicate:
    """A parsed event expression; evaluate with eval_event or compile_event."""

    root: Node

    def max_coord_index(self) -> int:
        """Largest literal index used in any X[i]; 0 if none (X[N] adapts)."""
        return _max_index(self.root)


def _max_index(node: Node) -> int:
    if isinstance(node, Cmp):
        best = 0
        for term in (node.lhs, node.rhs):
            if isinstance(term, Coord) and term.index is not None:
                best = max(best, term.index)
        return best
    if isinstance(node, Not):
        return _max_index(node.operand)
    return max(_max_index(node.lhs), _max_index(node.rhs))


@dataclass(frozen=True, slots=True)
class _Token:
    kind: str  # "int", "name", "cmp", "&&", "||", "!", "(", ")", "[", "]", "eof"
    text: str
    line: int
    col: int


def _tokenize(src: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, col, i = 1, 1, 0
    n = len(src)
    while i < n:
        ch = src[i]
        if ch == "\n":
            line, col, i = line + 1, 1, i + 1
            continue
        if ch in " \t\r":
            col, i = col + 1, i + 1
            continue
        start_col = col
        if ch.isdigit():
            j = i
            while j < n and src[j].isdigit():
                j += 1
            tokens.append(_Token("int", src[i:j], line, start_col))
            col += j - i
            i = j
            continue
        two = src[i : i + 2]
        if two in ("==", "!=", "<=", ">="):
            tokens.append(_Token("cmp", two, line, start_col))
            col, i = col + 2, i + 2
            continue
        if two in ("&&", "||"):
            tokens.append(_Token(two, two, line, start_col))
            col, i = col + 2, i + 2
            continue
        if ch in "<>":
            tokens.append(_Token("cmp", ch, line, start_col))
            col, i = col + 1, i + 1
            continue
        if ch in "!()[]":
            tokens.append(_Token(ch, ch, line, start_col))
            col, i = col + 1, i + 1
            continue
        if ch in "XYZN":
            tokens.append(_Token("name", ch, line, start_col))
            col, i = col + 1, i + 1
            continue
        if ch in "&|":
            raise EventParseError(
                f"lone {ch!r}", line, start_col, (ch + ch,)
            )
        if ch == "=":
            raise EventParseError("lone '='", line, start_col, ("==",))
        raise EventParseError(
            f"unexpected character {ch!r}", line, start_col, _START_EXPECTED
        )
    tokens.append(_Token("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token]) -> None:
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, message: str, expected: tuple[str, ...]) -> EventParseError:
        tok = self.peek()
        return EventParseError(message, tok.line, tok.col, expected)

    def expect(self, kind: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise self.fail(f"expected {kind!r}, found {tok.text!r}", (kind,))
        return self.advance()

    def parse_expr(self) -> Node:
        node = self.parse_and()
        while self.peek().kind == "||":
            self.advance()
            node = Or(node, self.parse_and())
        return node

    def parse_and(self) -> Node:
        node = self.parse_unary()
        while self.peek().kind == "&&":
            self.advance()
            node = And(node, self.parse_unary())
        return node

    def parse_unary(self) -> Node:
        tok = self.peek()
        if tok.kind == "!":
            self.advance()
            return Not(self.parse_unary())
        if tok.kind == "(":
            self.advance()
            node = self.parse_expr()
            self.expect(")")
            return node
        return self.parse_comparison()

    def parse_comparison(self) -> Node:
        lhs = self.parse_term()
        tok = self.peek()
        if tok.kind != "cmp":
            raise self.fail(
                f"expected a comparison operator, found {tok.text or 'end of input'!r}",
                tuple(_CMP_FUNCS),
            )
        op = self.advance().text
        rhs = self.parse_term()
        return Cmp(op, lhs, rhs)

    def parse_term(self) -> Term:
        tok = self.peek()
        if tok.kind == "int":
            self.advance()
            return Lit(int(tok.text))
        if tok.kind == "name":
            self.advance()
            if tok.text != "X":
                return Var(tok.text)
            self.expect("[")
            idx_tok = self.peek()
            if idx_tok.kind == "int":
                self.advance()
                index = int(idx_tok.text)
                if index < 1:
                    raise EventParseError(
                        f"coordinate index must be at least 1, found {index}",
                        idx_tok.line,
                        idx_tok.col,
                        ("positive integer", "N"),
                    )
            elif idx_tok.kind == "name" and idx_tok.text == "N":
                self.advance()
                index = None
            else:
                raise self.fail(
                    f"expected a coordinate index, found {idx_tok.text or 'end of input'!r}",
                    ("positive integer", "N"),
                )
            self.expect("]")
            return Coord(index)
        raise self.fail(
            f"expected a term, found {tok.text or 'end of input'!r}", _TERM_EXPECTED
        )


def parse_event(src: str) -> EventPredicate:
    """Parse an event expression; errors carry line, column, and expectations."""
    tokens = _tokenize(src)
    if tokens[0].kind == "eof":
        raise EventParseError("empty event expression", 1, 1, _START_EXPECTED)
    parser = _Parser(tokens)
    root = parser.parse_expr()
    trailing = parser.peek()
    if trailing.kind != "eof":
        raise EventParseError(
            f"unexpected trailing input {trailing.text!r}",
            trailing.line,
            trailing.col,
            ("&&", "||", "end of input"),
        )
    return EventPredicate(root)


def print_event(e: EventPredicate | Node) -> str:
    """Canonical text form; parse(print(e)) is structurally equal to e."""
    node = e.root if isinstance(e, EventPredicate) else e
    return _print_node(node)


def _print_term(term: Term) -> str:
    if isinstance(term, Lit):
        return str(term.value)
    if isinstance(term, Var):
        return term.name
    return "X[N]" if term.index is None else f"X[{term.index}]"


def _print_node(node: Node) -> str:
    if isinstance(node, Cmp):
        return f"{_print_term(node.lhs)}{node.op}{_print_term(node.rhs)}"
    if isinstance(node, Not):
        return f"!({_print_node(node.operand)})"
    if isinstance(node, And):
        lhs = _print_node(node.lhs)
        if isinstance(node.lhs, Or):
            lhs = f"({lhs})"
        rhs = _print_node(node.rhs)
        if isinstance(node.rhs, (And, Or)):
            rhs = f"({rhs})"
        return f"{lhs} && {rhs}"
    if isinstance(node, Or):
        lhs = _print_node(node.lhs)
        rhs = _print_node(node.rhs)
        if isinstance(node.rhs, Or):
            rhs = f"({rhs})"
        return f"{lhs} || {rhs}"
    raise TypeError(f"not an event node: {node!r}")


def eval_event(e: EventPredicate, row) -> bool:
    """Evaluate a predicate on a ProcessRow (anything with .outcome/.y/.z)."""
    bits = row.outcome.bits
    return _eval_node(e.root if isinstance(e, EventPredicate) else e,
                      bits, row.y, row.z, len(bits))


def _eval_term(term: Term, bits, y: int, z: int, n: int) -> int:
    if isinstance(term, Lit):
        return term.value
    if isinstance(term, Var):
        return {"Y": y, "Z": z, "N": n}[term.name]
    index = n if term.index is None else term.index
    if index > n:
        raise IndexOutOfRangeError(f"X[{index}] referenced but horizon is {n}")
    return bits[index - 1]


def _eval_node(node: Node, bits, y: int, z: int, n: int) -> bool:
    if isinstance(node, Cmp):
        return _CMP_FUNCS[node.op](
            _eval_term(node.lhs, bits, y, z, n), _eval_term(node.rhs, bits, y, z, n)
        )
    if isinstance(node, Not):
        return not _eval_node(node.operand, bits, y, z, n)
    if isinstance(node, And):
        return _eval_node(node.lhs, bits, y, z, n) and _eval_node(
            node.rhs, bits, y, z, n
        )
    return _eval_node(node.lhs, bits, y, z, n) or _eval_node(node.rhs, bits, y, z, n)


def compile_event(e: EventPredicate, n: int) -> Callable[[int, int, int], bool]:
    """Compile a predicate to a closure over (v, y, z) for a fixed horizon n.

    v is the outcome as an integer with bit i-1 holding X_i, which lets
    exhaustive scans of all 2**n outcomes skip building bit tuples.  Raises
    IndexOutOfRangeError immediately if any X[i] has i > n.
    """
    root = e.root if isinstance(e, EventPredicate) else e
    return _compile_node(root, n)


def _compile_term(term: Term, n: int) -> Callable[[int, int, int], int]:
    if isinstance(term, Lit):
        value = term.value
        return lambda v, y, z: value
    if isinstance(term, Var):
        if term.name == "Y":
            return lambda v, y, z: y
        if term.name == "Z":
            return lambda v, y, z: z
        return lambda v, y, z: n
    index = n if term.index is None else term.index
    if index > n:
        raise IndexOutOfRangeError(f"X[{index}] referenced but horizon is {n}")
    shift = index - 1
    return lambda v, y, z: (v >> shift) & 1


def _compile_node(node: Node, n: int) -> Callable[[int, int, int], bool]:
    if isinstance(node, Cmp):
        func = _CMP_FUNCS[node.op]
        lhs = _compile_term(node.lhs, n)
        rhs = _compile_term(node.rhs, n)
        return lambda v, y, z: func(lhs(v, y, z), rhs(v, y, z))
    if isinstance(node, Not):
        inner = _compile_node(node.operand, n)
        return lambda v, y, z: not inner(v, y, z)
    lhs = _compile_node(node.lhs, n)
    rhs = _compile_node(node.rhs, n)
    if isinstance(node, And):
        return lambda v, y, z: lhs(v, y, z) and rhs(v, y, z)
    return lambda v, y, z: lhs(v, y, z) or rhs(v, y, z)
