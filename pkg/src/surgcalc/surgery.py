"""JSJ decomposition of the surgered manifold ``S^3_K(p/q)``.

Surgery fills the outermost piece of the knot exterior.  When the knot is a
cable ``C(r,s;J)`` and ``|q*r*s - p| = 1`` the filled cable space is a solid
torus and ``S^3_K(p/q) = S^3_J(p/(q*s^2))``; the reduction is applied and the
filling moves to the companion.  Every other JSJ piece survives unchanged.

The filled piece is classified from the effective slope ``p/(q*t^2)`` where
``t`` is the winding number of the reduced cable (1 if none fired).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Optional, Tuple

from .jsj import (
    CableSpace,
    ComposingSpace,
    HypPiece,
    SeifertData,
    TorusKnotExterior,
    inner_boundaries,
    jsj,
    piece_to_dict,
)
from .knots import Cable, KnotExpr, normalize as normalize_expr, to_text
from .slopes import MERIDIAN, Slope, normalize

__all__ = [
    "SfsFilled",
    "ClosedSfsFingerprint",
    "LensLike",
    "HypFilled",
    "ReductionStep",
    "SurgeryPresentation",
    "SurgeryError",
    "cable_reduce",
    "fill_piece",
    "surger",
    "filled_pattern_homology",
    "filled_pattern_longitude",
    "shape_equal",
]


class SurgeryError(ValueError):
    pass


@dataclass(frozen=True)
class SfsFilled:
    """Seifert fibred filling with non-empty boundary."""

    seifert: SeifertData
    source: str  # "composing_space" or "cable_space"

    kind = "sfs_filled"

    @property
    def base(self):
        return "disc" if self.seifert.boundary_count == 1 else "planar"

    def to_dict(self):
        return {"type": self.kind, "source": self.source, "base": self.base,
                "seifert": self.seifert.to_dict()}


@dataclass(frozen=True)
class ClosedSfsFingerprint:
    """Closed Seifert fibred filling of a torus knot exterior, base ``S^2``.

    A necessary-condition signature only, never a homeomorphism certificate.
    """

    cone_orders: Tuple[int, ...]
    h1_order: Optional[int]

    kind = "closed_sfs"

    def __post_init__(self):
        object.__setattr__(self, "cone_orders", tuple(sorted(self.cone_orders)))

    def to_dict(self):
        return {"type": self.kind, "cone_orders": list(self.cone_orders),
                "h1_order": _h1_json(self.h1_order)}


@dataclass(frozen=True)
class LensLike:
    """Torus knot filling in which the third cone point collapses.

    ``collapsed_order`` is ``|q*a*b - p|``: 1 gives a lens space, 0 a
    reducible manifold.  Lens parameters are not computed.
    """

    h1_order: Optional[int]
    collapsed_order: int

    kind = "lens_like"

    def to_dict(self):
        return {"type": self.kind, "h1_order": _h1_json(self.h1_order),
                "collapsed_order": self.collapsed_order}


GUARANTEES = ("hyperbolic_certain", "hyperbolic_or_sfs", "unknown_submanifold")


@dataclass(frozen=True)
class HypFilled:
    label: str
    filling_slope: Slope
    guarantee: str
    closed: bool

    kind = "hyperbolic_filled"

    def __post_init__(self):
        if self.guarantee not in GUARANTEES:
            raise ValueError(f"unknown guarantee {self.guarantee!r}")

    def to_dict(self):
        return {"type": self.kind, "label": self.label, "closed": self.closed,
                "filling_slope": str(self.filling_slope), "guarantee": self.guarantee}


@dataclass(frozen=True)
class ReductionStep:
    r: int
    s: int
    slope_before: Slope
    slope_after: Slope

    def to_dict(self):
        return {"r": self.r, "s": self.s, "slope_before": str(self.slope_before),
                "slope_after": str(self.slope_after)}


@dataclass(frozen=True)
class SurgeryPresentation:
    knot: KnotExpr
    slope: Slope
    pieces: Tuple  # pieces[surgered_index] is the filled piece
    surgered_index: int
    reduction_trace: Tuple[ReductionStep, ...]
    t: int
    h1_order: Optional[int]  # None means infinite (p = 0)
    warnings: Tuple[str, ...] = field(default=())

    @property
    def surgered(self):
        return self.pieces[self.surgered_index]

    @property
    def filling_slope(self):
        return normalize(self.slope.p, self.slope.q * self.t * self.t)

    def survivors(self):
        return tuple(p for i, p in enumerate(self.pieces) if i != self.surgered_index)

    def to_dict(self):
        pieces = []
        for i, p in enumerate(self.pieces):
            d = p.to_dict() if i == self.surgered_index else piece_to_dict(p)
            d["id"] = i
            d["surgered"] = i == self.surgered_index
            pieces.append(d)
        return {
            "knot": to_text(self.knot),
            "slope": str(self.slope),
            "filling_slope": str(self.filling_slope),
            "t": self.t,
            "h1_order": _h1_json(self.h1_order),
            "reduction_trace": [s.to_dict() for s in self.reduction_trace],
            "surgered_index": self.surgered_index,
            "pieces": pieces,
            "warnings": list(self.warnings),
        }


def _h1_json(order):
    return "infinite" if order is None else order


def cable_reduce(r: int, s: int, slope: Slope) -> Optional[Slope]:
    """``p/(q*s^2)`` when ``|q*r*s - p| = 1``, else ``None``."""
    p, q = slope.p, slope.q
    if abs(q * r * s - p) != 1:
        return None
    # |qrs - p| = 1 forces gcd(p, s) = 1, so the numerator survives
    out = normalize(p, q * s * s)
    assert out.p == p, (r, s, slope)
    return out


def _hyperbolic_guarantee(piece: HypPiece, slope: Slope):
    n = abs(slope.q)
    if n <= 2:
        return "unknown_submanifold"
    if piece.cusp_count > 1 or n > 8:
        return "hyperbolic_certain"
    return "hyperbolic_or_sfs"


def fill_piece(piece, slope: Slope):
    """Fill the ``outer`` boundary of ``piece`` along ``slope`` and classify."""
    p, q = slope.p, slope.q
    h1 = abs(p) or None
    if isinstance(piece, TorusKnotExterior):
        d = abs(q * piece.a * piece.b - p)
        if d <= 1:
            return LensLike(h1, d)
        return ClosedSfsFingerprint((abs(piece.a), abs(piece.b), d), h1)
    if isinstance(piece, ComposingSpace):
        remaining = inner_boundaries(piece.n_boundaries - 1)
        cones = (q,) if q >= 2 else ()
        data = SeifertData(len(remaining), cones, {b: MERIDIAN for b in remaining})
        return SfsFilled(data, piece.kind)
    if isinstance(piece, CableSpace):
        d = abs(q * piece.r * piece.s - p)
        if d == 0:
            raise SurgeryError(
                f"slope {slope} is the regular fibre slope of the ({piece.r},{piece.s})-cable "
                "space; the filling is reducible and is not modelled"
            )
        if d == 1:
            raise SurgeryError("cable space filling is a solid torus; reduce first")
        data = SeifertData(1, (d, piece.s), {"inner": normalize(piece.r, piece.s)})
        return SfsFilled(data, piece.kind)
    if isinstance(piece, HypPiece):
        return HypFilled(piece.label, slope, _hyperbolic_guarantee(piece, slope),
                         closed=piece.cusp_count == 1)
    raise TypeError(f"not a JSJ piece: {piece!r}")


def surger(e: KnotExpr, slope: Slope) -> SurgeryPresentation:
    """JSJ decomposition of ``S^3_e(slope)``."""
    if slope.q == 0:
        raise SurgeryError("meridional slope 1/0 gives back S^3; nothing to surger")
    e = normalize_expr(e)
    trace = []
    node, sigma, t = e, slope, 1
    while isinstance(node, Cable):
        reduced = cable_reduce(node.r, node.s, sigma)
        if reduced is None:
            break
        if trace and slope.q > 1:
            raise AssertionError(
                f"second cable reduction on {to_text(e)} at {slope}: impossible for |q| > 1"
            )
        trace.append(ReductionStep(node.r, node.s, sigma, reduced))
        t *= node.s
        node, sigma = node.companion, reduced

    graph = jsj(node)
    filled = fill_piece(graph.pieces[graph.outermost], sigma)
    pieces = (filled,) + tuple(p for i, p in enumerate(graph.pieces) if i != graph.outermost)

    warnings = []
    if slope.q == 1:
        warnings.append("integral slope: the JSJ structure of the filling is not guaranteed")
    elif slope.q == 2:
        warnings.append("half-integral slope: full guarantees require |q| > 2")
    if isinstance(filled, HypFilled) and filled.guarantee == "unknown_submanifold":
        warnings.append("hyperbolic piece filled with |q t^2| <= 2: the surgered "
                        "submanifold may contain new JSJ tori")
    return SurgeryPresentation(
        knot=e,
        slope=slope,
        pieces=pieces,
        surgered_index=0,
        reduction_trace=tuple(trace),
        t=t,
        h1_order=abs(slope.p) or None,
        warnings=tuple(warnings),
    )


def filled_pattern_homology(w: int, slope: Slope):
    """``(free_rank, torsion)`` of H_1 of a winding-``w`` pattern space filled along ``slope``.

    The group is ``Z + Z/gcd(p, w)``.  A torsion value of 0 (only possible for
    ``p = w = 0``) stands for an extra ``Z`` summand.
    """
    if w < 0:
        raise ValueError("winding number must be >= 0")
    return 1, gcd(slope.p, w)


def filled_pattern_longitude(w: int, slope: Slope) -> Slope:
    """Rational longitude on the companion torus of the filled pattern space.

    The kernel of ``H_1(T) -> H_1(V_P(p/q))`` is generated by
    ``(p/g) mu + (q w^2/g) lambda`` with ``g = gcd(p, w)``; for ``w = 0`` it is
    the meridian.
    """
    if w == 0:
        return MERIDIAN
    g = gcd(slope.p, w)
    return normalize(slope.p // g, slope.q * w * w // g)


def shape_equal(x: SeifertData, y: SeifertData) -> bool:
    """Necessary condition for two Seifert pieces to be homeomorphic."""
    if x.boundary_count != y.boundary_count or x.cone_orders != y.cone_orders:
        return False
    shared = set(x.fibre_slopes) & set(y.fibre_slopes)
    return all(x.fibre_slopes[b] == y.fibre_slopes[b] for b in shared)
