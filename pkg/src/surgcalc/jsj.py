"""JSJ decomposition of a satellite knot exterior.

Every layer of a normalized expression tree contributes one JSJ piece:

=============  ==========================================================
node           piece
=============  ==========================================================
``T(a,b)``     torus knot exterior, cone points ``|a|, |b|``
``C(r,s;J)``   ``(r,s)``-cable space, one cone point of order ``s``
``Sum(...)``   composing space with one boundary per summand plus one
``Hyp(L)``     hyperbolic knot exterior (opaque)
``HypPat``     hyperbolic link exterior, one cusp per companion plus one
=============  ==========================================================

Boundary tori are named ``"outer"`` (the side facing the knot, or the parent
layer) and ``"inner"`` / ``"inner0"``, ``"inner1"``, ... (facing companions).
Each boundary is framed by the meridian and longitude of the knot it bounds,
so every fibre slope below is expressed in that companion's framing.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from .knots import (
    Cable,
    HypKnot,
    HypPattern,
    KnotExpr,
    Sum,
    TorusKnot,
    companions,
    normalize as normalize_expr,
    to_text,
)
from .slopes import MERIDIAN, Slope, normalize

__all__ = [
    "SeifertData",
    "TorusKnotExterior",
    "CableSpace",
    "ComposingSpace",
    "HypPiece",
    "JsjPiece",
    "JsjEdge",
    "JsjGraph",
    "jsj",
    "fibre_slope",
    "inner_boundaries",
]


@dataclass(frozen=True)
class SeifertData:
    boundary_count: int
    cone_orders: Tuple[int, ...]
    fibre_slopes: Dict[str, Slope] = field(default_factory=dict, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "cone_orders", tuple(sorted(self.cone_orders)))
        if self.boundary_count < 0:
            raise ValueError("boundary_count must be >= 0")
        if any(c < 2 for c in self.cone_orders):
            raise ValueError(f"cone orders must be >= 2, got {self.cone_orders}")

    def to_dict(self):
        return {
            "boundary_count": self.boundary_count,
            "cone_orders": list(self.cone_orders),
            "fibre_slopes": {k: str(v) for k, v in sorted(self.fibre_slopes.items())},
        }


def inner_boundaries(n):
    if n == 1:
        return ("inner",)
    return tuple(f"inner{i}" for i in range(n))


@dataclass(frozen=True)
class TorusKnotExterior:
    a: int
    b: int

    kind = "torus_knot_exterior"

    @property
    def boundaries(self):
        return ("outer",)

    @property
    def seifert(self):
        return SeifertData(1, (abs(self.a), abs(self.b)), {"outer": normalize(self.a * self.b, 1)})

    def params(self):
        return {"a": self.a, "b": self.b}


@dataclass(frozen=True)
class CableSpace:
    r: int
    s: int

    kind = "cable_space"

    @property
    def boundaries(self):
        return ("outer", "inner")

    @property
    def seifert(self):
        return SeifertData(
            2,
            (self.s,),
            {"outer": normalize(self.r * self.s, 1), "inner": normalize(self.r, self.s)},
        )

    def params(self):
        return {"r": self.r, "s": self.s}


@dataclass(frozen=True)
class ComposingSpace:
    n_boundaries: int

    kind = "composing_space"

    def __post_init__(self):
        if self.n_boundaries < 3:
            raise ValueError("a composing space has at least 3 boundary components")

    @property
    def boundaries(self):
        return ("outer",) + inner_boundaries(self.n_boundaries - 1)

    @property
    def seifert(self):
        return SeifertData(self.n_boundaries, (), {b: MERIDIAN for b in self.boundaries})

    def params(self):
        return {"n_boundaries": self.n_boundaries}


@dataclass(frozen=True)
class HypPiece:
    label: str
    cusp_count: int

    kind = "hyperbolic"
    seifert = None

    @property
    def boundaries(self):
        return ("outer",) + (inner_boundaries(self.cusp_count - 1) if self.cusp_count > 1 else ())

    def params(self):
        return {"label": self.label, "cusp_count": self.cusp_count}


JsjPiece = (TorusKnotExterior, CableSpace, ComposingSpace, HypPiece)


def piece_to_dict(piece):
    seifert = piece.seifert
    return {
        "type": piece.kind,
        "params": piece.params(),
        "seifert": seifert.to_dict() if seifert is not None else None,
    }


def fibre_slope(piece, boundary: str) -> Slope:
    """Regular fibre slope on ``boundary``, in that boundary's framing."""
    seifert = piece.seifert
    if seifert is None:
        raise ValueError(f"{piece.kind} piece is not Seifert fibred")
    if boundary not in seifert.fibre_slopes and boundary == "inner":
        inner = [b for b in piece.boundaries if b != "outer"]
        if len(inner) == 1:
            boundary = inner[0]
    try:
        return seifert.fibre_slopes[boundary]
    except KeyError:
        raise ValueError(f"{piece.kind} piece has no boundary {boundary!r}") from None


@dataclass(frozen=True)
class JsjEdge:
    """A JSJ torus, splitting the knot into a pattern side and a companion ``J``."""

    pattern_piece: int
    companion_piece: int
    boundary: str
    companion: KnotExpr

    @property
    def framing(self):
        return f"(mu_J, lambda_J) of J = {to_text(self.companion)}"

    def to_dict(self):
        return {
            "from": self.pattern_piece,
            "to": self.companion_piece,
            "boundary": self.boundary,
            "companion": to_text(self.companion),
            "framing": self.framing,
        }


@dataclass(frozen=True)
class JsjGraph:
    pieces: Tuple
    edges: Tuple[JsjEdge, ...]
    outermost: int
    subtrees: Tuple[KnotExpr, ...]  # the knot whose outermost piece is pieces[i]

    def children(self, i):
        return [e for e in self.edges if e.pattern_piece == i]

    def parent_edge(self, i) -> Optional[JsjEdge]:
        return next((e for e in self.edges if e.companion_piece == i), None)

    def count(self, kind):
        return sum(1 for p in self.pieces if p.kind == kind)

    def to_dict(self):
        return {
            "outermost": self.outermost,
            "pieces": [
                dict(id=i, knot=to_text(k), **piece_to_dict(p))
                for i, (p, k) in enumerate(zip(self.pieces, self.subtrees))
            ],
            "edges": [e.to_dict() for e in self.edges],
        }


def _root_piece(e: KnotExpr):
    if isinstance(e, TorusKnot):
        return TorusKnotExterior(e.a, e.b)
    if isinstance(e, Cable):
        return CableSpace(e.r, e.s)
    if isinstance(e, Sum):
        return ComposingSpace(len(e.summands) + 1)
    if isinstance(e, HypKnot):
        return HypPiece(e.label, 1)
    if isinstance(e, HypPattern):
        return HypPiece(e.label, 1 + len(e.companions))
    raise TypeError(f"not a knot expression: {e!r}")


def jsj(e: KnotExpr) -> JsjGraph:
    """JSJ decomposition of the exterior of ``e``; pieces in pre-order, root first."""
    e = normalize_expr(e)
    pieces, edges, subtrees = [], [], []

    def visit(node):
        idx = len(pieces)
        piece = _root_piece(node)
        pieces.append(piece)
        subtrees.append(node)
        names = [b for b in piece.boundaries if b != "outer"]
        for name, child in zip(names, companions(node)):
            edges.append(JsjEdge(idx, len(pieces), name, child))
            visit(child)
        return idx

    visit(e)
    return JsjGraph(tuple(pieces), tuple(edges), 0, tuple(subtrees))
