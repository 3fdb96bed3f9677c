"""Text form of tensor elements.

::

    element := "0" | ["-"] term (("+" | "-") term)*
    term    := coeff | [coeff "*"] atom ("*" atom)*   followed by  [":" vpart]
    atom    := ("D" | "T") index ["^" exponent]
    vpart   := "V[" [exponent ("," exponent)*] "]" ["@" tail]
    coeff   := integer ["/" positive-integer], optionally in parentheses

``Di`` is the D of slot ``i`` (slots ``1..m`` are Omega(lam, alpha, h), then
``m+1..m+n`` are Omega(mu, beta)); ``Ti`` is the t of slot ``i <= m``.
``V[k1,k2,...]`` is ``d_{-1}**k1 d_{-2}**k2 ... v`` and ``@b`` picks basis
vector ``b`` of N for an induced V.  Whitespace is insignificant.  A term with
no vpart uses the generating vector of V.
"""

from __future__ import annotations

import re
from typing import Dict, List, Optional, Tuple

from .core.rational import Q, format_rational
from .enveloping import Induced, PBWMonomial
from .tensor import TensorElement, TensorMonomial, TensorSpec, order_key


class ElementSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.message = message
        self.text = text
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[DTV])|(?P<op>[-+*/^:,\[\]()@]))")


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.tokens: List[Tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if m is None:
                start = pos + len(text[pos:]) - len(text[pos:].lstrip())
                raise ElementSyntaxError(f"unexpected character {text[start]!r}", text, start)
            kind = m.lastgroup
            self.tokens.append((kind, m.group(kind), m.start(kind)))
            pos = m.end()
        self.i = 0

    def peek(self) -> Optional[Tuple[str, str, int]]:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def pos(self) -> int:
        tok = self.peek()
        return tok[2] if tok else len(self.text)

    def take(self, value: Optional[str] = None, kind: Optional[str] = None) -> Tuple[str, str, int]:
        tok = self.peek()
        if tok is None:
            want = value or kind
            raise ElementSyntaxError(f"expected {want!r} but the text ended", self.text, len(self.text))
        if (value is not None and tok[1] != value) or (kind is not None and tok[0] != kind):
            raise ElementSyntaxError(f"expected {value or kind!r}, found {tok[1]!r}", self.text, tok[2])
        self.i += 1
        return tok

    def accept(self, value: str) -> bool:
        tok = self.peek()
        if tok is not None and tok[1] == value:
            self.i += 1
            return True
        return False

    def at(self, value: str) -> bool:
        tok = self.peek()
        return tok is not None and tok[1] == value


def _coeff(lx: _Lexer) -> Q:
    paren = lx.accept("(")
    negative = paren and lx.accept("-")
    num = int(lx.take(kind="num")[1])
    den = 1
    if lx.accept("/"):
        tok = lx.take(kind="num")
        den = int(tok[1])
        if den == 0:
            raise ElementSyntaxError("zero denominator", lx.text, tok[2])
    if paren:
        lx.take(")")
    return Q(-num if negative else num, den)


def _vpart(lx: _Lexer, spec: TensorSpec) -> PBWMonomial:
    start = lx.pos()
    lx.take("V")
    lx.take("[")
    exps: List[int] = []
    if not lx.at("]"):
        exps.append(int(lx.take(kind="num")[1]))
        while lx.accept(","):
            exps.append(int(lx.take(kind="num")[1]))
    lx.take("]")
    tail = None
    if lx.accept("@"):
        tail = int(lx.take(kind="num")[1])
    v = spec.v_factor
    if v is None:
        raise ElementSyntaxError("the spec has no V factor", lx.text, start)
    if isinstance(v, Induced):
        tail = 0 if tail is None else tail
        if v.module.basis_size is not None and tail >= v.module.basis_size:
            raise ElementSyntaxError(f"N has no basis vector {tail}", lx.text, start)
    elif tail is not None:
        raise ElementSyntaxError("only an induced V takes an @ tail", lx.text, start)
    return PBWMonomial.from_exponents(exps, tail)


def _term(lx: _Lexer, spec: TensorSpec) -> Tuple[TensorMonomial, Q]:
    m, n = spec.m, spec.n
    r = [0] * (m + n)
    p = [0] * m
    coeff = Q(1)
    tok = lx.peek()
    has_atoms = True
    if tok is not None and (tok[0] == "num" or tok[1] == "("):
        coeff = _coeff(lx)
        has_atoms = lx.accept("*")
    if has_atoms:
        while True:
            kind, name, pos = lx.take(kind="name")
            if name == "V":
                raise ElementSyntaxError("V part must follow ':'", lx.text, pos)
            idx_tok = lx.take(kind="num")
            idx = int(idx_tok[1])
            exp = 1
            if lx.accept("^"):
                exp = int(lx.take(kind="num")[1])
            if name == "D":
                if not 1 <= idx <= m + n:
                    raise ElementSyntaxError(f"no slot D{idx} for m={m}, n={n}", lx.text, pos)
                r[idx - 1] += exp
            else:
                if not 1 <= idx <= m:
                    raise ElementSyntaxError(f"no slot T{idx} for m={m}", lx.text, pos)
                p[idx - 1] += exp
            if not lx.accept("*"):
                break
    v = None
    if lx.accept(":"):
        v = _vpart(lx, spec)
    elif spec.v_factor is not None:
        v = spec.v_factor.base_monomial()
    return TensorMonomial(tuple(r), tuple(p), v), coeff


def parse_element(text: str, spec: TensorSpec) -> TensorElement:
    lx = _Lexer(text)
    out = TensorElement()
    if lx.peek() is None:
        raise ElementSyntaxError("empty element", text, 0)
    if len(lx.tokens) == 1 and lx.tokens[0][1] == "0":
        return out
    sign = -1 if lx.accept("-") else 1
    while True:
        mono, c = _term(lx, spec)
        out.add_term(mono, sign * c)
        if lx.accept("+"):
            sign = 1
        elif lx.accept("-"):
            sign = -1
        else:
            break
    if lx.peek() is not None:
        raise ElementSyntaxError(f"unexpected {lx.peek()[1]!r}", text, lx.pos())
    return out


def format_monomial(mono: TensorMonomial, m: int) -> str:
    atoms = []
    for i, e in enumerate(mono.r):
        if e:
            atoms.append(f"D{i + 1}" + (f"^{e}" if e > 1 else ""))
        if i < m and mono.p[i]:
            atoms.append(f"T{i + 1}" + (f"^{mono.p[i]}" if mono.p[i] > 1 else ""))
    return "*".join(atoms)


def _format_v(v: PBWMonomial) -> str:
    text = "V[" + ",".join(str(e) for e in v.exponent_list()) + "]"
    if v.tail is not None:
        text += f"@{v.tail}"
    return text


def _sort_key(mono: TensorMonomial, m: int):
    v = mono.v
    vkey = () if v is None else (v.level, v.parts, -1 if v.tail is None else v.tail)
    return order_key(mono, m), vkey


def format_element(f: Dict[TensorMonomial, Q], spec: TensorSpec) -> str:
    """Canonical text; ``parse_element(format_element(f)) == f``."""
    if not f:
        return "0"
    m = spec.m
    pieces = []
    for mono in sorted(f, key=lambda x: _sort_key(x, m), reverse=True):
        c = Q(f[mono])
        body = format_monomial(mono, m)
        mag = format_rational(abs(c))
        if not body:
            text = mag
        elif mag == "1":
            text = body
        else:
            text = f"{mag}*{body}"
        if mono.v is not None:
            text += " : " + _format_v(mono.v)
        pieces.append(("-" if c < 0 else "+", text))
    first_sign, first = pieces[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, text in pieces[1:]:
        out += f" {sign} {text}"
    return out
