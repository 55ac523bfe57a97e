"""A small language for measurable sets.

Grammar::

    expr   := term { "|" term }
    term   := factor { "&" factor }
    factor := "!" factor | atom
    atom   := "[" rat "," rat ")" | IDENT | "(" expr ")"
    rat    := INT | INT "/" INT

``!`` binds tightest, then ``&``, then ``|``; both binary operators are
left-associative. Interval literals are half-open only and must satisfy
``0 <= lo < hi <= 1``. Identifiers name builtin sets (see
:data:`caratheodory.cantor.BUILTINS`). Error positions are byte offsets into
the UTF-8 encoded source.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from . import interval_algebra as ia
from .cantor import BUILTINS
from .errors import CaratheodoryError
from .limit_points import MeasurableSet, embed, limit_complement, limit_intersect, limit_union


class DslError(CaratheodoryError, ValueError):
    """Lexical or syntax error with a byte offset into the source."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at byte {pos}")
        self.message = message
        self.pos = pos


class LexError(DslError):
    pass


class ParseError(DslError):
    pass


class TokenKind(Enum):
    LBRACK = "["
    RBRACK_PAREN = "bracket )"
    COMMA = ","
    PIPE = "|"
    AMP = "&"
    BANG = "!"
    LPAREN = "("
    RPAREN = ")"
    RAT = "rational"
    IDENT = "identifier"
    EOF = "end of input"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    lexeme: str
    pos: int


_PUNCT = {
    "[": TokenKind.LBRACK,
    ",": TokenKind.COMMA,
    "|": TokenKind.PIPE,
    "&": TokenKind.AMP,
    "!": TokenKind.BANG,
    "(": TokenKind.LPAREN,
}
_RAT = re.compile(rb"[0-9]+(?:/[0-9]+)?")
_IDENT = re.compile(rb"[A-Za-z_][A-Za-z0-9_]*")


def tokenize(text: str) -> list[Token]:
    """Split ``text`` into tokens; the last token is always EOF.

    A ``)`` closing an interval literal is told apart from a grouping ``)``
    by tracking whether a ``[`` is open.
    """
    src = text.encode("utf-8")
    toks: list[Token] = []
    i = 0
    in_bracket = False
    while i < len(src):
        c = src[i : i + 1]
        if c.isspace():
            i += 1
            continue
        ch = c.decode("latin-1")
        if ch in _PUNCT:
            kind = _PUNCT[ch]
            if kind is TokenKind.LBRACK:
                in_bracket = True
            toks.append(Token(kind, ch, i))
            i += 1
        elif ch == ")":
            kind = TokenKind.RBRACK_PAREN if in_bracket else TokenKind.RPAREN
            in_bracket = False
            toks.append(Token(kind, ch, i))
            i += 1
        elif ch == "]":
            raise LexError("closed interval bracket ']' is not supported; use half-open '[a,b)'", i)
        elif c.isdigit():
            m = _RAT.match(src, i)
            end = m.end()
            if src[end : end + 1] == b"." and src[end + 1 : end + 2].isdigit():
                raise LexError("decimal literals are not supported; write p/q", i)
            if src[end : end + 1] == b"/":
                raise LexError("malformed rational: expected digits after '/'", end)
            lexeme = m.group().decode()
            if "/" in lexeme and int(lexeme.split("/")[1]) == 0:
                raise LexError("zero denominator", i)
            toks.append(Token(TokenKind.RAT, lexeme, i))
            i = end
        elif _IDENT.match(src, i):
            m = _IDENT.match(src, i)
            toks.append(Token(TokenKind.IDENT, m.group().decode(), i))
            i = m.end()
        else:
            bad = src[i:].decode("utf-8", errors="replace")[:1]
            raise LexError(f"unexpected character {bad!r}", i)
    toks.append(Token(TokenKind.EOF, "", len(src)))
    return toks


# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class IntervalLit:
    lo: Fraction
    hi: Fraction


@dataclass(frozen=True)
class Union:
    left: "SetExpr"
    right: "SetExpr"


@dataclass(frozen=True)
class Intersect:
    left: "SetExpr"
    right: "SetExpr"


@dataclass(frozen=True)
class Complement:
    child: "SetExpr"


@dataclass(frozen=True)
class Builtin:
    name: str


SetExpr = IntervalLit | Union | Intersect | Complement | Builtin


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def take(self, kind: TokenKind, what: str) -> Token:
        tok = self.tok
        if tok.kind is not kind:
            found = tok.kind.value if tok.kind is TokenKind.EOF else repr(tok.lexeme)
            raise ParseError(f"expected {what}, found {found}", tok.pos)
        self.i += 1
        return tok

    def parse(self) -> SetExpr:
        e = self.expr()
        if self.tok.kind is not TokenKind.EOF:
            raise ParseError(f"unexpected {self.tok.lexeme!r} after expression", self.tok.pos)
        return e

    def expr(self) -> SetExpr:
        e = self.term()
        while self.tok.kind is TokenKind.PIPE:
            self.i += 1
            e = Union(e, self.term())
        return e

    def term(self) -> SetExpr:
        e = self.factor()
        while self.tok.kind is TokenKind.AMP:
            self.i += 1
            e = Intersect(e, self.factor())
        return e

    def factor(self) -> SetExpr:
        if self.tok.kind is TokenKind.BANG:
            self.i += 1
            return Complement(self.factor())
        return self.atom()

    def atom(self) -> SetExpr:
        tok = self.tok
        if tok.kind is TokenKind.LBRACK:
            self.i += 1
            lo_tok = self.take(TokenKind.RAT, "rational lower endpoint")
            self.take(TokenKind.COMMA, "','")
            hi_tok = self.take(TokenKind.RAT, "rational upper endpoint")
            self.take(TokenKind.RBRACK_PAREN, "')' closing the interval")
            lo, hi = ia.parse_rat(lo_tok.lexeme), ia.parse_rat(hi_tok.lexeme)
            for t, x in ((lo_tok, lo), (hi_tok, hi)):
                if x > 1:
                    raise ParseError(f"endpoint {t.lexeme} outside [0,1]", t.pos)
            if lo >= hi:
                raise ParseError("empty interval literal (lo ≥ hi)", tok.pos)
            return IntervalLit(lo, hi)
        if tok.kind is TokenKind.IDENT:
            if tok.lexeme not in BUILTINS:
                known = ", ".join(sorted(BUILTINS))
                raise ParseError(f"unknown set {tok.lexeme!r} (known: {known})", tok.pos)
            self.i += 1
            return Builtin(tok.lexeme)
        if tok.kind is TokenKind.LPAREN:
            self.i += 1
            e = self.expr()
            self.take(TokenKind.RPAREN, "')'")
            return e
        found = "end of input" if tok.kind is TokenKind.EOF else repr(tok.lexeme)
        raise ParseError(f"expected '[', '(', '!' or a set name, found {found}", tok.pos)


def parse(text: str) -> SetExpr:
    return _Parser(text).parse()


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


_PREC = {Union: 1, Intersect: 2, Complement: 3, IntervalLit: 4, Builtin: 4}


def to_source(expr: SetExpr) -> str:
    """Render an AST back to source with the fewest parentheses that reparse to it."""

    def wrap(e: SetExpr, min_prec: int) -> str:
        s = to_source(e)
        return f"({s})" if _PREC[type(e)] < min_prec else s

    if isinstance(expr, IntervalLit):
        return f"[{_fmt(expr.lo)},{_fmt(expr.hi)})"
    if isinstance(expr, Builtin):
        return expr.name
    if isinstance(expr, Complement):
        return "!" + wrap(expr.child, 3)
    p = _PREC[type(expr)]
    op = " | " if isinstance(expr, Union) else " & "
    # left-associative: a right operand of equal precedence needs parentheses
    return wrap(expr.left, p) + op + wrap(expr.right, p + 1)


def eval_expr(expr: SetExpr) -> MeasurableSet:
    if isinstance(expr, IntervalLit):
        return embed(ia.normalize([(expr.lo, expr.hi)]))
    if isinstance(expr, Builtin):
        return BUILTINS[expr.name]
    if isinstance(expr, Complement):
        return limit_complement(eval_expr(expr.child))
    if isinstance(expr, Union):
        return limit_union(eval_expr(expr.left), eval_expr(expr.right))
    if isinstance(expr, Intersect):
        return limit_intersect(eval_expr(expr.left), eval_expr(expr.right))
    raise TypeError(f"not a set expression: {expr!r}")


def evaluate(text: str) -> MeasurableSet:
    """Parse and evaluate in one step."""
    return eval_expr(parse(text))


def literal_value(expr: SetExpr) -> ia.AlgebraElement:
    """Exact algebra element of an expression built from interval literals only."""
    if isinstance(expr, IntervalLit):
        return ia.normalize([(expr.lo, expr.hi)])
    if isinstance(expr, Complement):
        return ia.complement(literal_value(expr.child))
    if isinstance(expr, Union):
        return ia.union(literal_value(expr.left), literal_value(expr.right))
    if isinstance(expr, Intersect):
        return ia.intersect(literal_value(expr.left), literal_value(expr.right))
    raise ValueError(f"{to_source(expr)!r} is not built from interval literals only")
