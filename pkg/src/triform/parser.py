"""Parser and pretty printer for rational expressions in one variable.

Grammar (no implicit multiplication, no negative literal exponents):

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := atom ('^' INT)?
    atom    := INT | NAME | '(' expr ')'

Diagnostics carry the byte offset and the expected-token set.  The printer
emits a canonical form whose reparse is structurally identical to the
original AST, and printing a freshly parsed canonical form is a fixed
point.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

from .polynomials import Poly, RatFunc
from .scalars import Q


class ExprSyntaxError(ValueError):
    """Syntax error with position and expectation information."""

    def __init__(self, position: int, expected: Tuple[str, ...], found: str):
        self.position = position
        self.expected = expected
        self.found = found
        exp = " or ".join(expected)
        super().__init__(f"at offset {position}: expected {exp}, found {found}")


class DivisionByZeroConstant(ZeroDivisionError):
    """The expression divides by a subexpression that is identically zero."""


# -- AST ---------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "ExprAST"


@dataclass(frozen=True)
class BinOp:
    op: str  # '+', '-', '*', '/'
    left: "ExprAST"
    right: "ExprAST"


@dataclass(frozen=True)
class Pow:
    base: "ExprAST"
    exponent: int  # nonnegative literal only


ExprAST = Union[Num, Var, Neg, BinOp, Pow]


# -- lexer ---------------------------------------------------------------------

_OPS = set("+-*/^()")


@dataclass(frozen=True)
class _Token:
    kind: str  # 'INT', 'NAME', one of _OPS, 'EOF'
    text: str
    pos: int


def _tokenize(text: str) -> List[_Token]:
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(_Token("INT", text[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token("NAME", text[i:j], i))
            i = j
            continue
        if ch in _OPS:
            tokens.append(_Token(ch, ch, i))
            i += 1
            continue
        raise ExprSyntaxError(i, ("a digit", "a name", "an operator"), repr(ch))
    tokens.append(_Token("EOF", "", n))
    return tokens


# -- parser ---------------------------------------------------------------------


class _Parser:
    def __init__(self, tokens: List[_Token]):
        self.tokens = tokens
        self.i = 0

    @property
    def cur(self) -> _Token:
        return self.tokens[self.i]

    def _fail(self, expected: Tuple[str, ...]):
        tok = self.cur
        found = "end of input" if tok.kind == "EOF" else repr(tok.text)
        raise ExprSyntaxError(tok.pos, expected, found)

    def _eat(self, kind: str) -> _Token:
        if self.cur.kind != kind:
            self._fail((f"'{kind}'",))
        tok = self.cur
        self.i += 1
        return tok

    def parse(self) -> ExprAST:
        node = self.expr()
        if self.cur.kind != "EOF":
            self._fail(("'+'", "'-'", "'*'", "'/'", "'^'", "end of input"))
        return node

    def expr(self) -> ExprAST:
        node = self.term()
        while self.cur.kind in ("+", "-"):
            op = self._eat(self.cur.kind).kind
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> ExprAST:
        node = self.unary()
        while self.cur.kind in ("*", "/"):
            op = self._eat(self.cur.kind).kind
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> ExprAST:
        if self.cur.kind == "-":
            self._eat("-")
            return Neg(self.unary())
        return self.power()

    def power(self) -> ExprAST:
        base = self.atom()
        if self.cur.kind == "^":
            self._eat("^")
            if self.cur.kind != "INT":
                self._fail(("a nonnegative integer exponent",))
            tok = self._eat("INT")
            return Pow(base, int(tok.text))
        return base

    def atom(self) -> ExprAST:
        tok = self.cur
        if tok.kind == "INT":
            self._eat("INT")
            return Num(int(tok.text))
        if tok.kind == "NAME":
            self._eat("NAME")
            return Var(tok.text)
        if tok.kind == "(":
            self._eat("(")
            node = self.expr()
            self._eat(")")
            return node
        self._fail(("an integer", "a name", "'('", "'-'"))


def parse_expr(text: str) -> ExprAST:
    """Parse a rational expression; raises ExprSyntaxError with position."""
    return _Parser(_tokenize(text)).parse()


# -- printer -------------------------------------------------------------------

# precedence levels for minimal parenthesization
_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "neg": 3, "^": 4, "atom": 5}


def _prec(node: ExprAST) -> int:
    if isinstance(node, (Num, Var)):
        return _PREC["atom"]
    if isinstance(node, Pow):
        return _PREC["^"]
    if isinstance(node, Neg):
        return _PREC["neg"]
    return _PREC[node.op]


def print_expr(node: ExprAST) -> str:
    """Canonical rendering; parse(print_expr(ast)) == ast."""
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Neg):
        inner = print_expr(node.operand)
        if _prec(node.operand) < _PREC["neg"]:
            inner = f"({inner})"
        return f"-{inner}"
    if isinstance(node, Pow):
        base = print_expr(node.base)
        # bases below atom precedence need parens so '^' binds to them whole
        if _prec(node.base) < _PREC["atom"]:
            base = f"({base})"
        return f"{base}^{node.exponent}"
    left = print_expr(node.left)
    right = print_expr(node.right)
    p = _PREC[node.op]
    if _prec(node.left) < p:
        left = f"({left})"
    # left-associative grammar: the right operand needs parens at equal level
    if _prec(node.right) <= p:
        right = f"({right})"
    return f"{left} {node.op} {right}"


# -- lowering --------------------------------------------------------------------


def to_ratfunc(node: ExprAST, variable: Optional[str] = None) -> RatFunc:
    """Lower an AST into an exact rational function of its single variable.

    Raises ValueError when two distinct names occur, DivisionByZeroConstant
    when a divisor is identically zero.
    """
    names = set()

    def scan(n: ExprAST):
        if isinstance(n, Var):
            names.add(n.name)
        elif isinstance(n, Neg):
            scan(n.operand)
        elif isinstance(n, BinOp):
            scan(n.left)
            scan(n.right)
        elif isinstance(n, Pow):
            scan(n.base)

    scan(node)
    if variable is not None:
        names.discard(variable)
        if names:
            raise ValueError(f"unexpected variable(s) {sorted(names)}; expected {variable}")
    elif len(names) > 1:
        raise ValueError(f"expression mixes variables {sorted(names)}")

    def lower(n: ExprAST) -> RatFunc:
        if isinstance(n, Num):
            return RatFunc.const(Q(n.value))
        if isinstance(n, Var):
            return RatFunc.variable()
        if isinstance(n, Neg):
            return -lower(n.operand)
        if isinstance(n, Pow):
            return lower(n.base) ** n.exponent
        left = lower(n.left)
        right = lower(n.right)
        if n.op == "+":
            return left + right
        if n.op == "-":
            return left - right
        if n.op == "*":
            return left * right
        if right.is_zero:
            raise DivisionByZeroConstant(f"division by zero in {print_expr(n)}")
        return left / right

    return lower(node)


def parse_ratfunc(text: str, variable: Optional[str] = None) -> RatFunc:
    return to_ratfunc(parse_expr(text), variable)
