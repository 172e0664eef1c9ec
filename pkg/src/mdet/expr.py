"""A minimal expression language for user-supplied tail densities.

Grammar (EBNF, documented in docs/expression-grammar.md):

    additive  = operand { ("+" | "-") operand } ;
    operand   = "-" operand | multiplicative ;
    multiplicative = power { ("*" | "/") factor } ;
    factor    = "-" factor | power ;
    power     = atom { "^" exponent } ;            (* left-associative *)
    exponent  = "-" exponent | atom ;
    atom      = NUMBER | "x" | FUNC "(" additive ")" | "(" additive ")" ;
    FUNC      = "exp" | "log" | "abs" ;

so `^` binds tightest, then `*`/`/`, then prefix `-`, then `+`/`-`:
"-x^2/2" parses as neg((x^2)/2) and "2+3*4^2" evaluates to 50.

Evaluation happens twice over the same AST: eval_plain gives the literal
value, eval_log gives the log of the value with algebraic log-pushdown for
exp(u), u^c, u*v and u/v, so exp(-x^2/2) at x = 40 yields exactly -800
where the plain value has long underflowed.  Everything else falls back to
guarded plain evaluation.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Union

import numpy as np

from .densities import SupportKind, TailDensity
from .errors import EvalDomainError, NonFiniteError, ParseError


# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Bin:
    op: str  # one of + - * / ^
    left: "ExprAst"
    right: "ExprAst"


@dataclass(frozen=True)
class Neg:
    operand: "ExprAst"


@dataclass(frozen=True)
class Call:
    fn: str  # exp | log | abs
    arg: "ExprAst"


ExprAst = Union[Num, Var, Bin, Neg, Call]

_FUNCTIONS = ("exp", "log", "abs")


# ---------------------------------------------------------------------------
# Lexer / parser
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_]+)"
    r"|(?P<op>[-+*/^()]))")


def _tokenize(src: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        if m is None or m.end() == pos:
            stripped = src[pos:].lstrip()
            if not stripped:
                break
            at = pos + (len(src[pos:]) - len(stripped)) + 1
            raise ParseError(f"unexpected character {stripped[0]!r}", at)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind) + 1))
        pos = m.end()
    tokens.append(("eof", "", len(src) + 1))
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, text, pos = self.peek()
        if kind != "op" or text != op:
            raise ParseError(f"expected {op!r}, found {text or 'end of input'!r}",
                             pos)
        return self.next()

    def additive(self) -> ExprAst:
        node = self.operand()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text in "+-":
                self.next()
                node = Bin(text, node, self.operand())
            else:
                return node

    def operand(self) -> ExprAst:
        kind, text, _ = self.peek()
        if kind == "op" and text == "-":
            self.next()
            return Neg(self.operand())
        return self.multiplicative()

    def multiplicative(self) -> ExprAst:
        node = self.power()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text in "*/":
                self.next()
                node = Bin(text, node, self.factor())
            else:
                return node

    def factor(self) -> ExprAst:
        kind, text, _ = self.peek()
        if kind == "op" and text == "-":
            self.next()
            return Neg(self.factor())
        return self.power()

    def power(self) -> ExprAst:
        node = self.atom()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text == "^":
                self.next()
                node = Bin("^", node, self.exponent())
            else:
                return node

    def exponent(self) -> ExprAst:
        kind, text, _ = self.peek()
        if kind == "op" and text == "-":
            self.next()
            return Neg(self.exponent())
        return self.atom()

    def atom(self) -> ExprAst:
        kind, text, pos = self.next()
        if kind == "num":
            return Num(float(text))
        if kind == "name":
            if text == "x":
                return Var()
            if text in _FUNCTIONS:
                self.expect_op("(")
                arg = self.additive()
                kind2, text2, pos2 = self.peek()
                if kind2 != "op" or text2 != ")":
                    raise ParseError("unbalanced parenthesis: expected ')'",
                                     pos2)
                self.next()
                return Call(text, arg)
            raise ParseError(f"unknown identifier {text!r}", pos)
        if kind == "op" and text == "(":
            node = self.additive()
            kind2, text2, pos2 = self.peek()
            if kind2 != "op" or text2 != ")":
                raise ParseError("unbalanced parenthesis: expected ')'", pos2)
            self.next()
            return node
        raise ParseError(
            f"expected a number, 'x', function or '(', found "
            f"{text or 'end of input'!r}", pos)


def parse_density_expr(src: str) -> ExprAst:
    """Parse an expression into an AST; positions in errors are 1-based."""
    if not src or not src.strip():
        raise ParseError("empty expression", 1)
    parser = _Parser(_tokenize(src))
    node = parser.additive()
    kind, text, pos = parser.peek()
    if kind != "eof":
        raise ParseError(f"trailing input {text!r}", pos)
    return node


# ---------------------------------------------------------------------------
# Printing (canonical form; print . parse is the identity on it)
# ---------------------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "neg": 2, "*": 3, "/": 3, "^": 4}


def to_source(node: ExprAst) -> str:
    def render(n: ExprAst, parent_prec: int, right_side: bool) -> str:
        if isinstance(n, Num):
            v = n.value
            s = repr(int(v)) if float(v).is_integer() and abs(v) < 1e15 else repr(v)
            return s
        if isinstance(n, Var):
            return "x"
        if isinstance(n, Call):
            return f"{n.fn}({render(n.arg, 0, False)})"
        if isinstance(n, Neg):
            inner = render(n.operand, _PREC["neg"], False)
            s = f"-{inner}"
            # a binary's right operand starting with '-' needs parens
            if parent_prec > 0 and right_side:
                return f"({s})"
            if parent_prec > _PREC["neg"]:
                return f"({s})"
            return s
        assert isinstance(n, Bin)
        prec = _PREC[n.op]
        left = render(n.left, prec, False)
        # left-associative throughout: same-precedence right child gets parens
        right = render(n.right, prec + 1, True)
        s = f"{left}{n.op}{right}"
        if prec < parent_prec:
            return f"({s})"
        return s

    return render(node, 0, False)


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

def eval_plain(node: ExprAst, x: float) -> float:
    """Literal evaluation; raises EvalDomainError / NonFiniteError.

    Overflow follows IEEE semantics internally (+-inf propagate, so e.g.
    exp(-x^2/2) cleanly underflows to 0 for huge x); a non-finite final
    value raises."""
    v = _plain(node, x)
    if not math.isfinite(v):
        raise NonFiniteError(f"non-finite result: {v!r}")
    return v


def _plain(node: ExprAst, x: float) -> float:
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Var):
        return x
    if isinstance(node, Neg):
        return -_plain(node.operand, x)
    if isinstance(node, Call):
        v = _plain(node.arg, x)
        if node.fn == "exp":
            if v == -math.inf:
                return 0.0
            try:
                return math.exp(v)
            except OverflowError:
                return math.inf
        if node.fn == "log":
            if math.isnan(v):
                return v
            if v <= 0.0:
                raise EvalDomainError(f"log of non-positive value {v!r}")
            return math.log(v)
        return abs(v)
    assert isinstance(node, Bin)
    a = _plain(node.left, x)
    b = _plain(node.right, x)
    if node.op == "+":
        return a + b
    if node.op == "-":
        return a - b
    if node.op == "*":
        return a * b
    if node.op == "/":
        if b == 0.0:
            raise EvalDomainError("division by zero")
        return a / b
    try:
        return math.pow(a, b)
    except OverflowError:
        # sign per IEEE: negative only for negative base with odd integer b
        if a < 0.0 and float(b).is_integer() and int(b) % 2 == 1:
            return -math.inf
        return math.inf
    except ValueError as exc:
        raise EvalDomainError(f"invalid power {a!r}^{b!r}") from exc


def eval_log(node: ExprAst, x: float) -> float:
    """log of the expression's value at x, staying finite where the plain
    value underflows.  -inf encodes an exact zero.  Raises EvalDomainError
    when the value is negative (a density must be positive)."""
    v = _log(node, x)
    if v == math.inf or math.isnan(v):
        raise NonFiniteError("expression value is infinite")
    return v


def _log(node: ExprAst, x: float) -> float:
    if isinstance(node, Call) and node.fn == "exp":
        return _plain(node.arg, x)
    if isinstance(node, Bin) and node.op == "^":
        c = _plain(node.right, x)
        if c == 0.0:
            return 0.0  # u^0 == 1, matching math.pow
        try:
            lu = _log(node.left, x)
        except EvalDomainError:
            return _log_fallback(node, x)
        if lu == -math.inf:
            if c < 0.0:
                raise EvalDomainError("zero raised to a negative power")
            return -math.inf
        return c * lu
    if isinstance(node, Bin) and node.op in "*/":
        try:
            la = _log(node.left, x)
            lb = _log(node.right, x)
        except EvalDomainError:
            return _log_fallback(node, x)
        if node.op == "*":
            if -math.inf in (la, lb):
                return -math.inf
            return la + lb
        if lb == -math.inf:
            raise EvalDomainError("division by zero")
        if la == -math.inf:
            return -math.inf
        return la - lb
    return _log_fallback(node, x)


def _log_fallback(node: ExprAst, x: float) -> float:
    v = _plain(node, x)
    if math.isnan(v):
        raise NonFiniteError("non-finite intermediate (nan)")
    if v > 0.0:
        return math.log(v)
    if v == 0.0:
        return -math.inf
    raise EvalDomainError(f"log of non-positive subexpression value {v!r}")


def expr_density(src: str, support: SupportKind, x0: float,
                 log_norm: float = 0.0, label: str | None = None
                 ) -> TailDensity:
    """Wrap a parsed expression as a TailDensity kernel.

    log_norm is subtracted from every log value (0 for a raw kernel; the
    CLI's --normalize computes it by quadrature).  Evaluation is scalar
    under the hood; the returned log_f accepts arrays via np.vectorize.
    """
    ast = parse_density_expr(src)

    def scalar(x: float) -> float:
        return eval_log(ast, float(x)) - log_norm

    vec = np.vectorize(scalar, otypes=[float])

    def log_f(x):
        return vec(np.asarray(x, dtype=float))

    return TailDensity(support=support, x0=x0, log_f=log_f,
                       label=label or f"expr[{to_source(ast)}]")
