"""A small expression language over T(g), and optionally over a free PD algebra.

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '.') factor)*
    factor := INT | 'w' '[' INT ']' | 'theta' | 'c' | 'F(' expr ')' | 'E(' expr ')'
            | '(' expr ')' | '-' factor

'*' is the Pontryagin product and '.' the intersection product.  Integers
are scalars: they multiply classes under either product but cannot be
added to a class.

In PD mode the atoms are INT and u[i] (1-based), '*' is the PD product,
E(x) is the truncated star-exponential and G[d](x) is gamma_d(x).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Optional, Union

from .pd_algebra import PDAlgebra, PDElement, PDError, gamma_d, star_exp
from .taut import TautClass, TautError, taut_fourier, taut_intersect, taut_pontryagin, taut_star_exp


class ExprError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.message = message
        self.position = position


@dataclass
class Token:
    kind: str
    text: str
    pos: int


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_]+)|(?P<sym>[-+*.()\[\]]))")


def tokenize(src: str) -> List[Token]:
    out = []
    pos = 0
    while pos < len(src):
        if src[pos:].strip() == "":
            break
        m = _TOKEN.match(src, pos)
        if not m:
            start = pos + len(src[pos:]) - len(src[pos:].lstrip())
            raise ExprError(f"unexpected character {src[start]!r}", start)
        kind = m.lastgroup
        out.append(Token(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    out.append(Token("end", "", len(src)))
    return out


Value = Union[int, TautClass, PDElement]


class _Parser:
    def __init__(self, src: str, genus: int, modulus: Optional[int], pd: Optional[PDAlgebra], truncation: int):
        self.tokens = tokenize(src)
        self.i = 0
        self.g = genus
        self.modulus = modulus
        self.pd = pd
        self.truncation = truncation

    # -- token helpers
    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def take(self, kind: str, text: Optional[str] = None) -> Token:
        t = self.tok
        if t.kind != kind or (text is not None and t.text != text):
            want = text or kind
            got = t.text or "end of input"
            raise ExprError(f"expected {want!r}, found {got!r}", t.pos)
        self.i += 1
        return t

    def at(self, text: str) -> bool:
        return self.tok.kind in ("sym", "name") and self.tok.text == text

    # -- grammar
    def parse(self) -> Value:
        v = self.expr()
        if self.tok.kind != "end":
            raise ExprError(f"unexpected {self.tok.text!r}", self.tok.pos)
        return v

    def expr(self) -> Value:
        v = self.term()
        while self.at("+") or self.at("-"):
            op = self.take("sym")
            rhs = self.term()
            v = self.additive(v, rhs, op)
        return v

    def term(self) -> Value:
        v = self.factor()
        while self.at("*") or self.at("."):
            op = self.take("sym")
            rhs = self.factor()
            v = self.product(v, rhs, op)
        return v

    def factor(self) -> Value:
        t = self.tok
        if t.kind == "int":
            self.i += 1
            return int(t.text)
        if self.at("-"):
            self.i += 1
            v = self.factor()
            return -v
        if self.at("("):
            self.i += 1
            v = self.expr()
            self.take("sym", ")")
            return v
        if t.kind != "name":
            raise ExprError(f"unexpected {t.text or 'end of input'!r}", t.pos)
        if self.pd is not None:
            return self.pd_atom(t)
        return self.taut_atom(t)

    def index(self) -> int:
        self.take("sym", "[")
        n = int(self.take("int").text)
        self.take("sym", "]")
        return n

    def call_arg(self) -> Value:
        self.take("sym", "(")
        v = self.expr()
        self.take("sym", ")")
        return v

    def taut_atom(self, t: Token) -> Value:
        self.i += 1
        g, mod = self.g, self.modulus
        if t.text == "w":
            pos = self.tok.pos
            n = self.index()
            if n > g:
                raise ExprError(f"w[{n}] is outside the genus range 0..{g}", pos)
            return TautClass.basis(g, n, mod)
        if t.text == "theta":
            return TautClass.basis(g, g - 1, mod)
        if t.text == "c":
            return TautClass.basis(g, 1, mod)
        if t.text in ("F", "E"):
            pos = self.tok.pos
            arg = self.call_arg()
            if isinstance(arg, int):
                raise ExprError(f"{t.text}(...) needs a class, not a scalar", pos)
            if t.text == "F":
                return taut_fourier(arg)
            try:
                return taut_star_exp(arg)
            except TautError as e:
                raise ExprError(str(e), pos) from None
        raise ExprError(f"unknown name {t.text!r}", t.pos)

    def pd_atom(self, t: Token) -> Value:
        self.i += 1
        alg = self.pd
        if t.text == "u":
            pos = self.tok.pos
            n = self.index()
            if not 1 <= n <= alg.rank:
                raise ExprError(f"u[{n}] is outside 1..{alg.rank}", pos)
            return alg.gen(n - 1)
        if t.text in ("E", "G"):
            d = self.index() if t.text == "G" else None
            pos = self.tok.pos
            arg = self.call_arg()
            if isinstance(arg, int):
                arg = alg.one().scale(arg) if arg else alg.zero()
            try:
                return star_exp(arg, self.truncation) if d is None else gamma_d(arg, d)
            except PDError as e:
                raise ExprError(str(e), pos) from None
        raise ExprError(f"unknown name {t.text!r} in PD mode", t.pos)

    # -- arithmetic
    def additive(self, a: Value, b: Value, op: Token) -> Value:
        if isinstance(a, int) and isinstance(b, int):
            return a + b if op.text == "+" else a - b
        if self.pd is not None:
            a, b = self.lift(a), self.lift(b)
        elif isinstance(a, int) or isinstance(b, int):
            raise ExprError("cannot add a scalar to a class", op.pos)
        return a + b if op.text == "+" else a - b

    def lift(self, v: Value) -> PDElement:
        return self.pd.one().scale(v) if isinstance(v, int) else v

    def product(self, a: Value, b: Value, op: Token) -> Value:
        if isinstance(a, int) and isinstance(b, int):
            return a * b
        if isinstance(a, int):
            return b.scale(a)
        if isinstance(b, int):
            return a.scale(b)
        if self.pd is not None:
            if op.text == ".":
                raise ExprError("'.' is not defined in PD mode", op.pos)
            return a * b
        return taut_pontryagin(a, b) if op.text == "*" else taut_intersect(a, b)


def eval_expression(
    src: str,
    genus: int = 1,
    modulus: Optional[int] = None,
    pd_rank: Optional[int] = None,
    truncation: int = 8,
) -> Value:
    """Evaluate src in T(genus), or in the PD algebra of rank ``pd_rank`` if given."""
    if genus < 1:
        raise ExprError(f"genus must be >= 1, got {genus}", 0)
    pd = PDAlgebra(pd_rank, modulus) if pd_rank is not None else None
    v = _Parser(src, genus, modulus, pd, truncation).parse()
    if isinstance(v, int):
        if pd is not None:
            return pd.one().scale(v)
        # w_0 and w_g are both units, so a bare scalar has no canonical class
        raise ExprError("expression evaluates to a scalar, not a class", 0)
    return v
