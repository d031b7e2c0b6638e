"""Satellite knot expressions.

Grammar (whitespace is insignificant)::

    expr    := torus | cable | sum | hypknot | hyppat
    torus   := "T(" int "," int ")"
    cable   := "C(" int "," int ";" expr ")"
    sum     := "Sum(" expr ("," expr)+ ")"
    hypknot := "Hyp(" ident ")"
    hyppat  := "HypPat(" ident "," "w=" uint ";" expr ("," expr)* ")"

Identifiers may optionally be written in double quotes, ``Hyp("J")``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd
from typing import Tuple, Union

__all__ = [
    "TorusKnot",
    "Cable",
    "Sum",
    "HypKnot",
    "HypPattern",
    "KnotExpr",
    "KnotSyntaxError",
    "KnotSemanticError",
    "parse",
    "to_text",
    "normalize",
    "layer_winding",
    "companions",
    "iter_nodes",
    "cable_chain",
]


class KnotSemanticError(ValueError):
    """Parameters that violate a knot invariant (non-coprime, unknotted, ...)."""


class KnotSyntaxError(ValueError):
    def __init__(self, message, text="", pos=0):
        self.line = text.count("\n", 0, pos) + 1
        self.column = pos - (text.rfind("\n", 0, pos) + 1) + 1
        self.pos = pos
        super().__init__(f"{message} (line {self.line}, column {self.column})")


_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def _check_ident(label):
    if not isinstance(label, str) or not _IDENT_RE.fullmatch(label):
        raise KnotSemanticError(f"invalid identifier {label!r}")


@dataclass(frozen=True)
class TorusKnot:
    a: int
    b: int

    def __post_init__(self):
        a, b = self.a, self.b
        if gcd(a, b) != 1:
            raise KnotSemanticError(f"T({a},{b}): gcd(a,b) must be 1")
        if min(abs(a), abs(b)) < 2:
            raise KnotSemanticError(
                f"T({a},{b}): |a|, |b| >= 2 required (otherwise the knot is trivial)"
            )


@dataclass(frozen=True)
class Cable:
    r: int
    s: int
    companion: "KnotExpr"

    def __post_init__(self):
        if abs(self.s) < 2:
            raise KnotSemanticError(f"C({self.r},{self.s};...): s >= 2 required")
        if gcd(self.r, self.s) != 1:
            raise KnotSemanticError(f"C({self.r},{self.s};...): gcd(r,s) must be 1")


@dataclass(frozen=True)
class Sum:
    summands: Tuple["KnotExpr", ...]

    def __post_init__(self):
        object.__setattr__(self, "summands", tuple(self.summands))
        if len(self.summands) < 2:
            raise KnotSemanticError("Sum(...) needs at least two summands")


@dataclass(frozen=True)
class HypKnot:
    label: str

    def __post_init__(self):
        _check_ident(self.label)


@dataclass(frozen=True)
class HypPattern:
    label: str
    winding: int
    companions: Tuple["KnotExpr", ...]

    def __post_init__(self):
        _check_ident(self.label)
        object.__setattr__(self, "companions", tuple(self.companions))
        if self.winding < 0:
            raise KnotSemanticError("HypPat winding number must be >= 0")
        if not self.companions:
            raise KnotSemanticError("HypPat needs at least one companion")


KnotExpr = Union[TorusKnot, Cable, Sum, HypKnot, HypPattern]


# -- printer ---------------------------------------------------------------

def to_text(e: KnotExpr) -> str:
    if isinstance(e, TorusKnot):
        return f"T({e.a},{e.b})"
    if isinstance(e, Cable):
        return f"C({e.r},{e.s};{to_text(e.companion)})"
    if isinstance(e, Sum):
        return "Sum(" + ",".join(to_text(x) for x in e.summands) + ")"
    if isinstance(e, HypKnot):
        return f"Hyp({e.label})"
    if isinstance(e, HypPattern):
        inner = ",".join(to_text(x) for x in e.companions)
        return f"HypPat({e.label},w={e.winding};{inner})"
    raise TypeError(f"not a knot expression: {e!r}")


# -- parser ----------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<kw>HypPat|Hyp|Sum|T|C)\s*\(
  | (?P<w>w\s*=)
  | (?P<int>[+-]?\d+)
  | (?P<ident>"[A-Za-z_][A-Za-z0-9_]*"|[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>[(),;])
    """,
    re.VERBOSE,
)


def _tokenize(text):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise KnotSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        if kind != "ws":
            if kind == "kw":
                value = m.group("kw")
            elif kind == "punct":
                value = m.group()
            elif kind == "w":
                value = "w="
            else:
                value = m.group()
            out.append((kind, value, m.start()))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def error(self, message, tok=None):
        tok = tok or self.peek()
        return KnotSyntaxError(message, self.text, tok[2])

    def take(self, kind, value=None):
        tok = self.peek()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = repr(value) if value is not None else kind
            got = repr(tok[1]) if tok[0] != "end" else "end of input"
            raise self.error(f"expected {want}, got {got}")
        self.i += 1
        return tok

    def integer(self):
        return int(self.take("int")[1])

    def ident(self):
        return self.take("ident")[1].strip('"')

    def expr(self):
        tok = self.peek()
        if tok[0] != "kw":
            raise self.error("expected a knot expression (T, C, Sum, Hyp or HypPat)")
        self.i += 1
        try:
            return getattr(self, "_" + tok[1].lower())()
        except KnotSemanticError as exc:
            if getattr(exc, "column", None) is not None:
                raise
            pos = tok[2]
            line = self.text.count("\n", 0, pos) + 1
            column = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
            err = KnotSemanticError(f"{exc} (line {line}, column {column})")
            err.line, err.column = line, column
            raise err from None

    def _t(self):
        a = self.integer()
        self.take("punct", ",")
        b = self.integer()
        self.take("punct", ")")
        return TorusKnot(a, b)

    def _c(self):
        r = self.integer()
        self.take("punct", ",")
        s = self.integer()
        self.take("punct", ";")
        companion = self.expr()
        self.take("punct", ")")
        return Cable(r, s, companion)

    def _sum(self):
        items = [self.expr()]
        while self.peek()[1] == ",":
            self.i += 1
            items.append(self.expr())
        self.take("punct", ")")
        if len(items) < 2:
            raise KnotSemanticError("Sum(...) needs at least two summands")
        return Sum(tuple(items))

    def _hyp(self):
        label = self.ident()
        self.take("punct", ")")
        return HypKnot(label)

    def _hyppat(self):
        label = self.ident()
        self.take("punct", ",")
        self.take("w")
        tok = self.peek()
        w = self.integer()
        if w < 0:
            raise self.error("winding number must be a non-negative integer", tok)
        self.take("punct", ";")
        items = [self.expr()]
        while self.peek()[1] == ",":
            self.i += 1
            items.append(self.expr())
        self.take("punct", ")")
        return HypPattern(label, w, tuple(items))


def parse(text: str) -> KnotExpr:
    """Parse a knot expression.  The result is not normalized."""
    p = _Parser(text)
    e = p.expr()
    if p.peek()[0] != "end":
        raise p.error("trailing input after expression")
    return e


# -- normalization -----------------------------------------------------------

def normalize(e: KnotExpr) -> KnotExpr:
    """Flatten nested sums, order torus knot parameters, fix sign conventions.

    ``T(a,b)`` becomes ``T(a',b')`` with ``|a'| > |b'|`` and ``a' > 0``; a cable
    written with negative winding ``C(r,-s)`` becomes ``C(-r,s)``.  Chirality
    (the sign of ``ab``, the sign of ``r``) is preserved.
    """
    if isinstance(e, TorusKnot):
        a, b = e.a, e.b
        if abs(a) < abs(b):
            a, b = b, a
        if a < 0:
            a, b = -a, -b
        return TorusKnot(a, b)
    if isinstance(e, Cable):
        r, s = (e.r, e.s) if e.s > 0 else (-e.r, -e.s)
        return Cable(r, s, normalize(e.companion))
    if isinstance(e, Sum):
        flat = []
        for x in e.summands:
            x = normalize(x)
            flat.extend(x.summands if isinstance(x, Sum) else (x,))
        return Sum(tuple(flat))
    if isinstance(e, HypKnot):
        return e
    if isinstance(e, HypPattern):
        return HypPattern(e.label, e.winding, tuple(normalize(x) for x in e.companions))
    raise TypeError(f"not a knot expression: {e!r}")


def layer_winding(e: KnotExpr) -> int:
    """Winding number of the pattern at the root of ``e``.

    A sum is viewed as a composing pattern, which has winding number one.
    """
    if isinstance(e, Cable):
        return e.s
    if isinstance(e, Sum):
        return 1
    if isinstance(e, HypPattern):
        return e.winding
    raise ValueError(f"{to_text(e)} is a leaf, not a pattern layer")


def companions(e: KnotExpr) -> tuple:
    """Immediate sub-expressions bounded by the JSJ tori of the root layer."""
    if isinstance(e, Cable):
        return (e.companion,)
    if isinstance(e, Sum):
        return e.summands
    if isinstance(e, HypPattern):
        return e.companions
    return ()


def iter_nodes(e: KnotExpr):
    """Pre-order traversal of the expression tree."""
    yield e
    for c in companions(e):
        yield from iter_nodes(c)


def cable_chain(e: KnotExpr):
    """Split ``e`` into its outer run of cables and the first non-cable node.

    Returns ``(cables, core)`` with ``cables`` listed outermost first.
    """
    cables = []
    while isinstance(e, Cable):
        cables.append(e)
        e = e.companion
    return cables, e
