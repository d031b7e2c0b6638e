"""Characterizing-slope certificates from effective bounds.

Each rule pairs a hypothesis on the expression tree with a closed threshold
``qmin``: every slope ``p/q`` with ``|q| >= qmin`` is characterizing.  Only
positive verdicts are ever produced; anything else is ``Unknown`` with a
reason.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List

from .knots import (
    Cable,
    HypKnot,
    HypPattern,
    KnotExpr,
    Sum,
    TorusKnot,
    cable_chain,
    iter_nodes,
    normalize,
    to_text,
)
from .slopes import Slope

__all__ = ["Bound", "Characterizing", "Unknown", "applicable_theorems", "certify", "THEOREMS"]

# theorem id -> (display name, hypothesis summary)
THEOREMS = {
    "Thm1.2": ("Thm 1.2", "composite knot: every non-integral slope"),
    "Thm1.3": ("Thm 1.3", "Seifert fibred exterior with a composing space: |q| >= 3"),
    "Thm7.1(i)": ("Thm 7.1(i)", "Seifert fibred cable, not an iterated cable of a torus knot: |q| >= 3"),
    "Thm7.1(ii)": ("Thm 7.1(ii)", "iterated cable (n >= 2) of T(a,b): |q| > |r1| + |a|"),
    "Thm7.1(iii)": ("Thm 7.1(iii)", "cable C(r1,s1;T(a,b)): |q| > max(8, s1, |r1| + |a|)"),
    "KnownKnotDatabase": ("known knot", "trefoil: every slope"),
}


@dataclass(frozen=True)
class Bound:
    qmin: int
    theorem_id: str

    def admits(self, slope: Slope) -> bool:
        return abs(slope.q) >= self.qmin

    @property
    def citation(self):
        name, hyp = THEOREMS[self.theorem_id]
        return f"{name} ({hyp})"

    def to_dict(self):
        return {"theorem": self.theorem_id, "qmin": self.qmin, "citation": self.citation}


@dataclass(frozen=True)
class Characterizing:
    theorem_id: str
    threshold_used: int

    verdict = "characterizing"

    def __str__(self):
        return f"Characterizing ({THEOREMS[self.theorem_id][0]})"

    def to_dict(self):
        return {"verdict": self.verdict, "theorem": self.theorem_id,
                "threshold": self.threshold_used,
                "citation": Bound(self.threshold_used, self.theorem_id).citation}


@dataclass(frozen=True)
class Unknown:
    reason: str

    verdict = "unknown"

    def __str__(self):
        return f"Unknown ({self.reason})"

    def to_dict(self):
        return {"verdict": self.verdict, "theorem": None, "threshold": None,
                "reason": self.reason}


def _has_hyperbolic(e):
    return any(isinstance(n, (HypKnot, HypPattern)) for n in iter_nodes(e))


def _has_composing(e):
    return any(isinstance(n, Sum) for n in iter_nodes(e))


def applicable_theorems(e: KnotExpr) -> List[Bound]:
    """Every effective rule whose hypotheses hold for ``e``, in a fixed order."""
    e = normalize(e)
    seifert_only = not _has_hyperbolic(e)
    cables, core = cable_chain(e)
    torus_chain = bool(cables) and isinstance(core, TorusKnot)
    out = []
    if isinstance(e, Sum):
        out.append(Bound(2, "Thm1.2"))
    if seifert_only and _has_composing(e):
        out.append(Bound(3, "Thm1.3"))
    if isinstance(e, Cable) and seifert_only and not torus_chain:
        out.append(Bound(3, "Thm7.1(i)"))
    if torus_chain:
        r1, s1 = cables[-1].r, cables[-1].s
        a = abs(core.a)
        if len(cables) >= 2:
            out.append(Bound(abs(r1) + a + 1, "Thm7.1(ii)"))
        else:
            out.append(Bound(max(8, s1, abs(r1) + a) + 1, "Thm7.1(iii)"))
    if isinstance(e, TorusKnot) and abs(e.a) == 3 and abs(e.b) == 2:
        out.append(Bound(1, "KnownKnotDatabase"))
    return out


def best_bound(e: KnotExpr):
    """The rule with the smallest threshold, or ``None``."""
    rules = applicable_theorems(e)
    return min(rules, key=lambda b: b.qmin) if rules else None


def certify(e: KnotExpr, slope: Slope):
    """Characterizing certificate for ``slope`` on ``e``, or Unknown with a reason."""
    if slope.q == 0:
        raise ValueError("the meridian 1/0 is not a surgery slope")
    e = normalize(e)
    rules = applicable_theorems(e)
    passing = [b for b in rules if b.admits(slope)]
    if passing:
        b = min(passing, key=lambda b: b.qmin)
        return Characterizing(b.theorem_id, b.qmin)
    if not rules:
        if _has_hyperbolic(e):
            return Unknown("hyperbolic pieces present: a bound exists but is non-effective (Thm 1.1)")
        return Unknown(f"no effective theorem applies to {to_text(e)}")
    if slope.q == 1:
        return Unknown("integral slope outside all effective theorems")
    need = min(b.qmin for b in rules)
    return Unknown(f"slope below threshold: |q| >= {need} required, got |q| = {slope.q}")
