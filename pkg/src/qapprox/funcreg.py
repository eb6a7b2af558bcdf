"""Test-function registry and a small arithmetic expression parser.

Grammar (precedence low to high: + - < * / < unary - < ^, with ^ binding
right-associatively):

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := atom ('^' unary)?
    atom    := NUMBER | 't' | NAME '(' expr ')' | '(' expr ')'

NAME is one of abs, exp, sin, cos, sqrt.  Numbers are decimal literals;
scientific notation is accepted.  Expressions are only evaluated on [0, 1];
a negative sqrt argument is a runtime evaluation error reporting the
offending t.
"""

import math
import re
from dataclasses import dataclass
from typing import Optional


class ParseError(ValueError):
    """Syntax error with byte offset and the set of expected tokens."""

    def __init__(self, message, position, expected=()):
        self.position = position
        self.expected = frozenset(expected)
        detail = f"{message} at position {position}"
        if expected:
            detail += " (expected: " + ", ".join(sorted(expected)) + ")"
        super().__init__(detail)


class EvalError(ValueError):
    """Runtime evaluation failure, e.g. sqrt of a negative intermediate."""


# --- AST ------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class Bin:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Call:
    name: str
    arg: object


_FUNCTIONS = {
    "abs": abs,
    "exp": math.exp,
    "sin": math.sin,
    "cos": math.cos,
}


def evaluate(node, t):
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Var):
        return t
    if isinstance(node, Neg):
        return -evaluate(node.operand, t)
    if isinstance(node, Bin):
        a = evaluate(node.left, t)
        b = evaluate(node.right, t)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        if node.op == "/":
            if b == 0.0:
                raise EvalError(f"division by zero at t={t}")
            return a / b
        if node.op == "^":
            try:
                return a**b
            except (OverflowError, ValueError) as exc:
                raise EvalError(f"power failed at t={t}: {exc}") from exc
        raise AssertionError(node.op)
    if isinstance(node, Call):
        v = evaluate(node.arg, t)
        if node.name == "sqrt":
            if v < 0.0:
                raise EvalError(f"sqrt of negative value {v} at t={t}")
            return math.sqrt(v)
        return _FUNCTIONS[node.name](v)
    raise AssertionError(type(node))


def to_source(node):
    """Render an AST back to source; parse(to_source(e)) == e structurally."""
    if isinstance(node, Num):
        return format(node.value, ".17g")
    if isinstance(node, Var):
        return "t"
    if isinstance(node, Neg):
        return f"(-{to_source(node.operand)})"
    if isinstance(node, Bin):
        return f"({to_source(node.left)}{node.op}{to_source(node.right)})"
    if isinstance(node, Call):
        return f"{node.name}({to_source(node.arg)})"
    raise AssertionError(type(node))


# --- tokenizer / parser ----------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<number>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_]\w*)"
    r"|(?P<op>[-+*/^()]))"
)


def _tokenize(source):
    tokens = []
    pos = 0
    while pos < len(source):
        m = _TOKEN_RE.match(source, pos)
        if m is None:
            stripped = source[pos:].lstrip()
            if not stripped:
                break
            bad = len(source) - len(stripped)
            raise ParseError(f"unexpected character {source[bad]!r}", bad)
        if m.lastgroup == "number":
            tokens.append(("number", m.group("number"), m.start("number")))
        elif m.lastgroup == "name":
            tokens.append(("name", m.group("name"), m.start("name")))
        else:
            tokens.append((m.group("op"), m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("end", "", len(source)))
    return tokens


class _Parser:
    def __init__(self, source):
        self.source = source
        self.tokens = _tokenize(source)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind):
        tok = self.tokens[self.i]
        if tok[0] != kind:
            raise ParseError(f"unexpected {tok[1]!r}", tok[2], expected={kind})
        self.i += 1
        return tok

    def parse(self):
        node = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"trailing input {tok[1]!r}", tok[2], expected={"end"})
        return node

    def expr(self):
        node = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take(self.peek()[0])[0]
            node = Bin(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek()[0] in ("*", "/"):
            op = self.take(self.peek()[0])[0]
            node = Bin(op, node, self.unary())
        return node

    def unary(self):
        if self.peek()[0] == "-":
            self.take("-")
            return Neg(self.unary())
        return self.power()

    def power(self):
        node = self.atom()
        if self.peek()[0] == "^":
            self.take("^")
            # right-associative; the exponent may carry its own unary minus
            return Bin("^", node, self.unary())
        return node

    def atom(self):
        tok = self.peek()
        if tok[0] == "number":
            self.take("number")
            return Num(float(tok[1]))
        if tok[0] == "name":
            self.take("name")
            if tok[1] == "t":
                return Var()
            if tok[1] in _FUNCTIONS or tok[1] == "sqrt":
                self.take("(")
                arg = self.expr()
                self.take(")")
                return Call(tok[1], arg)
            raise ParseError(
                f"unknown identifier {tok[1]!r}",
                tok[2],
                expected={"t"} | set(_FUNCTIONS) | {"sqrt"},
            )
        if tok[0] == "(":
            self.take("(")
            node = self.expr()
            self.take(")")
            return node
        raise ParseError(
            f"unexpected {tok[1]!r}" if tok[0] != "end" else "unexpected end of input",
            tok[2],
            expected={"number", "t", "("},
        )


def parse(source):
    """Parse an expression in the variable t into an AST."""
    return _Parser(source).parse()


# --- registry ---------------------------------------------------------------


@dataclass(frozen=True)
class RealFunction:
    """A named real-valued function on [0,1] with optional Lipschitz metadata."""

    name: str
    fn: object
    lipschitz: Optional[float] = None

    def __call__(self, t):
        return self.fn(t)


def _builtin_table():
    return {
        "id": lambda: RealFunction("id", lambda t: t, lipschitz=1.0),
        "square": lambda: RealFunction("square", lambda t: t * t, lipschitz=2.0),
        "expdec": lambda: RealFunction("expdec", lambda t: math.exp(-t), lipschitz=1.0),
    }


def builtin(name):
    """Look up a registry function; const:c, absdev:c and sin:a take a parameter."""
    table = _builtin_table()
    if name in table:
        return table[name]()
    if ":" in name:
        head, _, arg = name.partition(":")
        try:
            c = float(arg)
        except ValueError:
            raise KeyError(f"bad parameter in builtin name {name!r}") from None
        if head == "const":
            return RealFunction(name, lambda t, c=c: c, lipschitz=0.0)
        if head == "absdev":
            return RealFunction(name, lambda t, c=c: abs(t - c), lipschitz=1.0)
        if head == "sin":
            return RealFunction(name, lambda t, c=c: math.sin(c * t), lipschitz=abs(c))
    raise KeyError(f"unknown builtin function {name!r}")


def from_expression(source):
    """Compile an expression into a RealFunction."""
    ast = parse(source)
    return RealFunction(source, lambda t, ast=ast: evaluate(ast, t))


def resolve(text):
    """Resolve a CLI --f argument: registry name first, expression otherwise."""
    try:
        return builtin(text)
    except KeyError:
        return from_expression(text)


def registry_samples():
    """A small cross-section of registry functions for property tests."""
    return [
        builtin("const:2"),
        builtin("id"),
        builtin("square"),
        builtin("absdev:0.5"),
        builtin("absdev:0.3"),
        builtin("expdec"),
        builtin("sin:3"),
    ]
