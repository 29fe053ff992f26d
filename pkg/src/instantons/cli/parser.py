"""Recursive-descent parser for polynomial expressions.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := rational | var ['^' exp] | '(' expr ')'
    exp    := integer | '(' '-' integer ')'

A leading sign is allowed at the start of an expression (``-x^2 + y``) but
not inside a factor, so ``x*(-1)`` is rejected.  There is no implicit
multiplication and whitespace is ignored.
"""

from dataclasses import dataclass
from fractions import Fraction

from ..algebra.bivariate import Poly2
from ..algebra.laurent import LaurentZU

CONTEXT_VARS = {"curve": ("x", "y"), "bundle": ("z", "u")}


class ParseError(ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position
        self.message = message


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str
    exponent: int = 1


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object


def _tokens(text):
    out = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            start = i
            while i < len(text) and text[i].isdigit():
                i += 1
            out.append(("int", text[start:i], start))
        elif ch.isalpha():
            out.append(("var", ch, i))
            i += 1
        elif ch in "+-*^()/":
            out.append((ch, ch, i))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", i)
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text, context):
        self.toks = _tokens(text)
        self.pos = 0
        self.context = context
        self.allowed = CONTEXT_VARS[context]

    def peek(self):
        return self.toks[self.pos]

    def take(self, kind=None):
        tok = self.toks[self.pos]
        if kind is not None and tok[0] != kind:
            want = "integer" if kind == "int" else repr(kind)
            raise ParseError(f"expected {want}", tok[2])
        self.pos += 1
        return tok

    def expr(self, top=False):
        if top and self.peek()[0] == "-":
            self.take()
            node = Neg(self.term())
        else:
            node = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.peek()[0] == "*":
            self.take()
            node = BinOp("*", node, self.factor())
        return node

    def factor(self):
        kind, val, at = self.peek()
        if kind == "int":
            self.take()
            num = Fraction(int(val))
            if self.peek()[0] == "/":
                self.take()
                den = int(self.take("int")[1])
                if den == 0:
                    raise ParseError("zero denominator", at)
                num = num / den
            return Num(num)
        if kind == "var":
            self.take()
            if val not in self.allowed:
                raise ParseError(f"variable {val!r} not allowed in {self.context} context", at)
            exp = 1
            if self.peek()[0] == "^":
                self.take()
                exp = self.exponent()
                if exp < 0 and val != "z":
                    raise ParseError(f"negative exponent on {val}", at)
            return Var(val, exp)
        if kind == "(":
            self.take()
            node = self.expr()
            self.take(")")
            return node
        if kind == "end":
            raise ParseError("unexpected end of input", at)
        raise ParseError(f"unexpected {val!r}", at)

    def exponent(self):
        kind, val, at = self.peek()
        if kind == "int":
            self.take()
            return int(val)
        if kind == "(":
            self.take()
            self.take("-")
            n = int(self.take("int")[1])
            self.take(")")
            return -n
        raise ParseError("expected exponent", at)


def parse_polynomial(text, context):
    """Parse ``text`` into an AST; ``context`` is ``"curve"`` or ``"bundle"``."""
    if context not in CONTEXT_VARS:
        raise ValueError(f"unknown context {context!r}")
    p = _Parser(text, context)
    node = p.expr(top=True)
    tok = p.peek()
    if tok[0] != "end":
        raise ParseError(f"unexpected {tok[1]!r}", tok[2])
    return node


def count_terms(node):
    """Number of top-level summands."""
    if isinstance(node, BinOp) and node.op in "+-":
        return count_terms(node.left) + count_terms(node.right)
    return 1


def _evaluate(node, one, var):
    if isinstance(node, Num):
        return one * node.value
    if isinstance(node, Var):
        return var(node.name, node.exponent)
    if isinstance(node, Neg):
        return -_evaluate(node.arg, one, var)
    left, right = _evaluate(node.left, one, var), _evaluate(node.right, one, var)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    return left * right


def to_curve(node):
    one = Poly2({(0, 0): 1})
    return _evaluate(node, one, lambda n, e: Poly2({(e, 0) if n == "x" else (0, e): 1}))


def to_bundle_class(node):
    one = LaurentZU.monomial(0, 0)
    return _evaluate(node, one, lambda n, e: LaurentZU.monomial(e, 0) if n == "z" else LaurentZU.monomial(0, e))


def parse_curve(text):
    return to_curve(parse_polynomial(text, "curve"))


def parse_bundle_class(text):
    return to_bundle_class(parse_polynomial(text, "bundle"))
