"""Brute-force checks of the slope arithmetic and first-homology claims.

Nothing here calls the closed-form formulas it checks.  Filled pattern spaces
are presented from their Seifert fibrations: generators are the boundary
curves of a section over the base orbifold plus the regular fibre ``h``, with
one relation for the base and one per cone point.  Framings on each boundary
torus are then solved for from their defining homological properties (see
``docs/oracle_presentations.md``).
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from math import gcd
from typing import Dict, List, Sequence, Tuple

from .slopes import MERIDIAN, Slope, distance, normalize
from .snf import (
    AbelianGroup,
    left_kernel,
    smith_normal_form,
    solve_row_combination,
)

__all__ = [
    "ParamBox",
    "OracleReport",
    "OracleViolation",
    "Presentation",
    "CablePattern",
    "ComposingPattern",
    "PatternSpace",
    "smith_normal_form",
    "check_filled_pattern_h1",
    "check_cable_patterns",
    "check_rs_lemma",
    "rs_lemma_witnesses",
    "check_torus_cable_matching",
    "check_composing_h1",
    "scan_composing_h1",
]


class OracleViolation(AssertionError):
    """A checked identity failed on a concrete tuple."""


Interval = Tuple[int, int]


@dataclass(frozen=True)
class ParamBox:
    """Inclusive integer intervals for an exhaustive search.

    ``a, b, c, d, q`` are ranges of absolute values; both signs are
    enumerated.  ``r, s, r2, s2, p, m, n, coef`` are signed ranges.  ``r2``
    and ``s2`` stand for r' and s'.  ``p = None`` means p is determined by the
    equations of the check.
    """

    a: Interval = (3, 9)
    b: Interval = (2, 8)
    c: Interval = (3, 60)
    d: Interval = (2, 59)
    r: Interval = (-30, 30)
    s: Interval = (2, 5)
    r2: Interval = (-30, 30)
    s2: Interval = (2, 5)
    p: Interval | None = None
    q: Interval = (3, 25)
    m: Interval = (-4, 4)
    n: Interval = (-4, 4)
    coef: Interval = (-3, 3)

    def __post_init__(self):
        for name in ("a", "b", "c", "d", "r", "s", "r2", "s2", "p", "q", "m", "n", "coef"):
            iv = getattr(self, name)
            if iv is None:
                continue
            lo, hi = iv
            if lo > hi:
                raise ValueError(f"empty range for {name}: {iv}")
            if name in ("a", "b", "c", "d", "q") and lo < 0:
                raise ValueError(f"{name} is a range of absolute values; got {iv}")

    def values(self, name):
        lo, hi = getattr(self, name)
        return range(lo, hi + 1)

    def signed(self, name):
        """Both signs of a magnitude range, zero excluded."""
        out = []
        for v in self.values(name):
            if v:
                out.extend((-v, v))
        return sorted(out)

    def to_dict(self):
        return {k: (list(v) if v is not None else None) for k, v in self.__dict__.items()}


@dataclass
class OracleReport:
    name: str
    params: dict
    checked: int = 0
    violations: List[dict] = field(default_factory=list)
    stats: Dict[str, int] = field(default_factory=dict)
    witnesses: List[dict] = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def finish(self):
        self.violations.sort(key=lambda v: sorted(v.items()))
        return self

    def to_dict(self):
        return {
            "check": self.name,
            "ok": self.ok,
            "checked": self.checked,
            "stats": dict(sorted(self.stats.items())),
            "violations": self.violations,
            "witnesses": self.witnesses,
            "params": self.params,
        }


# -- presentations ------------------------------------------------------------

class Presentation:
    """Abelian group presentation with named generators."""

    def __init__(self, generators: Sequence[str], relations=()):
        self.generators = tuple(generators)
        self.index = {g: i for i, g in enumerate(self.generators)}
        self.relations = [list(r) for r in relations]

    def vec(self, **coeffs):
        v = [0] * len(self.generators)
        for g, c in coeffs.items():
            v[self.index[g]] += c
        return v

    def relate(self, vec):
        self.relations.append(list(vec))
        return self

    def copy(self):
        return Presentation(self.generators, self.relations)

    def matrix(self):
        return [list(r) for r in self.relations]

    def group(self) -> AbelianGroup:
        return smith_normal_form(self.relations, len(self.generators))

    def is_zero(self, vec):
        return solve_row_combination(self.relations, vec) is not None

    def express(self, basis, target):
        """Integers ``c`` with ``sum c_i basis_i == target`` in the group, or None."""
        x = solve_row_combination([list(b) for b in basis] + self.relations, target)
        return None if x is None else x[: len(basis)]

    def kernel(self, basis):
        """Generators of ``{c : sum c_i basis_i == 0}``, reduced to a lattice basis."""
        k = left_kernel([list(b) for b in basis] + self.relations)
        return _lattice_basis([row[: len(basis)] for row in k])


def _lattice_basis(vectors):
    """Row-echelon basis (Hermite style) of the lattice spanned by ``vectors``."""
    rows = [list(v) for v in vectors if any(v)]
    if not rows:
        return []
    ncols = len(rows[0])
    out = []
    col = 0
    while rows and col < ncols:
        nz = [r for r in rows if r[col]]
        if not nz:
            col += 1
            continue
        while len([r for r in rows if r[col]]) > 1:
            nz = sorted((r for r in rows if r[col]), key=lambda r: abs(r[col]))
            piv = nz[0]
            for r in nz[1:]:
                k = r[col] // piv[col]
                for j in range(ncols):
                    r[j] -= k * piv[j]
            rows = [r for r in rows if any(r)]
        piv = next(r for r in rows if r[col])
        if piv[col] < 0:
            piv[:] = [-x for x in piv]
        out.append(piv)
        rows = [r for r in rows if r is not piv]
        col += 1
    return out


def _add(*terms):
    out = [0] * len(terms[0][1])
    for k, v in terms:
        for i, x in enumerate(v):
            out[i] += k * x
    return out


def _det2(u, v):
    return u[0] * v[1] - u[1] * v[0]


@dataclass(frozen=True)
class CablePattern:
    r: int
    s: int

    @property
    def winding(self):
        return self.s

    def label(self):
        return f"cable({self.r},{self.s})"


@dataclass(frozen=True)
class ComposingPattern:
    """Composing pattern whose composing space has ``n + 1`` boundary tori.

    One torus faces the knot, one the companion, and the other ``n - 1`` are
    capped off by knot exteriors.
    """

    n: int

    @property
    def winding(self):
        return 1

    def label(self):
        return f"composing({self.n})"


class PatternSpace:
    """H_1 model of a pattern space with framed boundary tori.

    Attributes ``mu``, ``lam`` (companion torus T) and ``mu_p``, ``lam_p``
    (pattern torus P) are generator-coordinate vectors.
    """

    def __init__(self, pattern):
        self.pattern = pattern
        if isinstance(pattern, CablePattern):
            self._build_cable(pattern.r, pattern.s)
        elif isinstance(pattern, ComposingPattern):
            self._build_composing(pattern.n)
        else:
            raise TypeError(f"unsupported pattern {pattern!r}")
        self._solve_pattern_longitude()

    def _build_cable(self, r, s):
        if s < 2 or gcd(r, s) != 1:
            raise ValueError(f"invalid cable parameters ({r},{s})")
        # base: annulus with one cone point of order s; section boundary
        # curves dT, dP, dc around T, P and the cone point
        beta = pow(r, -1, s)
        pres = Presentation(("dT", "dP", "dc", "h"))
        pres.relate(pres.vec(dT=1, dP=1, dc=1))
        pres.relate(pres.vec(dc=s, h=beta))
        self.pres = pres
        h = pres.vec(h=1)
        dT = pres.vec(dT=1)
        self.mu_p = pres.vec(dP=1)
        self.fibre = h
        # the meridian of the ambient solid torus dies once P is refilled
        solid = pres.copy().relate(self.mu_p)
        (k,) = solid.kernel([dT, h])
        mu = _add((k[0], dT), (k[1], h))
        # fibre slope on T is r/s:  h = r*mu + s*lam
        for sign in (1, -1):
            rest = _add((1, h), (-r * sign, mu))
            if all(x % s == 0 for x in rest):
                self.mu = [sign * x for x in mu]
                self.lam = [x // s for x in rest]
                break
        else:
            raise OracleViolation(f"no integral longitude for cable ({r},{s})")
        basis_T = (dT, h)
        coords = [self._coords(v, basis_T) for v in (self.mu, self.lam)]
        if abs(_det2(*coords)) != 1:
            raise OracleViolation(f"(mu, lambda) is not a basis of H1(T) for cable ({r},{s})")

    def _build_composing(self, n):
        if n < 2:
            raise ValueError("a composing pattern needs n >= 2")
        # planar base with n+1 boundaries, no cone points: Y = F x S^1
        names = [f"d{i}" for i in range(n + 1)]
        pres = Presentation(names + ["h"])
        pres.relate(pres.vec(**{x: 1 for x in names}))
        # cap d2..dn with knot exteriors: meridian <-> h, longitude <-> d_i,
        # and the longitude is null-homologous in the knot exterior
        for x in names[2:]:
            pres.relate(pres.vec(**{x: 1}))
        self.pres = pres
        h = pres.vec(h=1)
        self.fibre = h
        self.mu_p = h  # fibres are meridional on every boundary
        solid = pres.copy().relate(self.mu_p)
        (k,) = solid.kernel([pres.vec(d1=1), h])
        self.mu = _add((k[0], pres.vec(d1=1)), (k[1], h))
        self.lam = pres.vec(d1=1)
        coords = [self._coords(v, (pres.vec(d1=1), h)) for v in (self.mu, self.lam)]
        if abs(_det2(*coords)) != 1:
            raise OracleViolation(f"(mu, lambda) is not a basis of H1(T) for composing({n})")

    def _coords(self, v, basis):
        # exact coordinates in the free basis of a boundary torus (no relations)
        x = solve_row_combination([list(b) for b in basis], v)
        if x is None:
            raise OracleViolation(f"{v} does not lie on the boundary torus")
        return x

    def _solve_pattern_longitude(self):
        w = self.pattern.winding
        # orient mu_P so that the meridian disc of V meets P positively:
        # mu == w * mu_P in H_1(V_P)
        if self.pres.is_zero(_add((1, self.mu), (w, self.mu_p))) and not self.pres.is_zero(
            _add((1, self.mu), (-w, self.mu_p))
        ):
            self.mu_p = [-x for x in self.mu_p]
        elif not self.pres.is_zero(_add((1, self.mu), (-w, self.mu_p))):
            raise OracleViolation(f"{self.pattern.label()}: mu is not w * mu_P")
        # lambda_P: the class on P homologous to w * lambda in V_P
        target = [w * x for x in self.lam]
        other = self.fibre if self.mu_p != self.fibre else self.pres.vec(d0=1)
        x = self.pres.express([self.mu_p, other], target)
        if x is None:
            raise OracleViolation(f"{self.pattern.label()}: w*lambda is not carried by P")
        self.lam_p = _add((x[0], self.mu_p), (x[1], other))
        if abs(x[1]) != 1:
            raise OracleViolation(f"{self.pattern.label()}: lambda_P does not meet mu_P once")

    def fibre_slope_on_pattern(self) -> Slope:
        """Regular fibre slope on P in the (mu_P, lambda_P) framing."""
        basis = (self.mu_p, self.lam_p)
        c = self._coords(self.fibre, basis)
        return normalize(c[0], c[1])

    def filled(self, slope: Slope) -> Presentation:
        pres = self.pres.copy()
        pres.relate(_add((slope.p, self.mu_p), (slope.q, self.lam_p)))
        return pres

    def filled_h1(self, slope: Slope) -> AbelianGroup:
        return self.filled(slope).group()

    def rational_longitude(self, slope: Slope):
        """Generator ``(x, y)`` of ker H_1(T) -> H_1(filled), as ``x mu + y lambda``."""
        basis = self.filled(slope).kernel([self.mu, self.lam])
        if len(basis) != 1:
            raise OracleViolation(f"kernel on T has rank {len(basis)} at {slope}")
        x, y = basis[0]
        if x < 0 or (x == 0 and y < 0):
            x, y = -x, -y
        return x, y


def _expected_group(torsion):
    if torsion == 0:
        return AbelianGroup(2)
    return AbelianGroup(1, (torsion,) if torsion > 1 else ())


def check_filled_pattern_h1(pattern, box: ParamBox = ParamBox(p=(-50, 50), q=(1, 9))) -> OracleReport:
    """Compare the presented H_1 (and rational longitude) of every filling in the box.

    The closed forms under test are ``surgery.filled_pattern_homology`` and
    ``surgery.filled_pattern_longitude``.
    """
    from .surgery import filled_pattern_homology, filled_pattern_longitude

    space = PatternSpace(pattern)
    w = pattern.winding
    p_range = box.values("p") if box.p is not None else range(-50, 51)
    report = OracleReport("filled-pattern-h1", {"pattern": pattern.label(), "box": box.to_dict()})
    for q in box.values("q"):
        if q < 1:
            continue
        for p in p_range:
            if gcd(p, q) != 1:
                continue
            slope = normalize(p, q)
            report.checked += 1
            got = space.filled_h1(slope)
            rank, torsion = filled_pattern_homology(w, slope)
            want = _expected_group(torsion)
            if got != want:
                report.violations.append({"pattern": pattern.label(), "slope": str(slope),
                                          "presented": str(got), "formula": str(want)})
                continue
            x, y = space.rational_longitude(slope)
            g = gcd(p, w)
            vec = (p // g, q * w * w // g)
            if vec[0] < 0 or (vec[0] == 0 and vec[1] < 0):
                vec = (-vec[0], -vec[1])
            if (x, y) != vec or normalize(x, y) != filled_pattern_longitude(w, slope):
                report.violations.append({"pattern": pattern.label(), "slope": str(slope),
                                          "presented_longitude": f"{x}*mu + {y}*lambda",
                                          "formula_longitude": f"{vec[0]}*mu + {vec[1]}*lambda"})
    return report.finish()


def check_cable_patterns(box: ParamBox = ParamBox(r=(-7, 7), s=(2, 6), p=(-50, 50), q=(1, 9))) -> OracleReport:
    """``check_filled_pattern_h1`` over every coprime cable ``(r, s)`` in the box."""
    total = OracleReport("filled-pattern-h1", {"pattern": "cable(r,s)", "box": box.to_dict()})
    patterns = 0
    for s in box.values("s"):
        if s < 2:
            continue
        for r in box.values("r"):
            if gcd(r, s) != 1:
                continue
            sub = check_filled_pattern_h1(CablePattern(r, s), box)
            patterns += 1
            total.checked += sub.checked
            total.violations.extend(sub.violations)
    total.stats["patterns"] = patterns
    return total.finish()


# -- |qrs - p| = |qr's' - p| = 1 implies rs = r's' ------------------------------

def _products(rs, ss):
    out = defaultdict(list)
    for r in rs:
        for s in ss:
            out[r * s].append((r, s))
    return out


def _rs_scan(box, q_values):
    left = _products(box.values("r"), box.values("s"))
    right = _products(box.values("r2"), box.values("s2"))
    p_ok = (lambda p: True) if box.p is None else (lambda p: box.p[0] <= p <= box.p[1])
    tuples = 0
    found = []
    for q in q_values:
        for u in sorted(left):
            for eps in (1, -1):
                p = q * u - eps
                if not p_ok(p):
                    continue
                for delta in (1, -1):
                    num = p + delta
                    if num % q:
                        continue
                    u2 = num // q
                    if u2 not in right:
                        continue
                    tuples += len(left[u]) * len(right[u2])
                    if u2 != u:
                        (r, s), (r2, s2) = left[u][0], right[u2][0]
                        found.append({"q": q, "p": p, "r": r, "s": s, "r2": r2, "s2": s2,
                                      "rs": u, "r2s2": u2})
    return tuples, found


def check_rs_lemma(box: ParamBox = ParamBox(r=(-30, 30), s=(-30, 30), r2=(-30, 30),
                                            s2=(-30, 30), q=(3, 50))) -> OracleReport:
    """Exhaustively confirm: ``|q| > 2`` and ``|qrs-p| = |qr's'-p| = 1`` give ``rs = r's'``.

    ``p`` is solved from ``|qrs - p| = 1`` and ``r's'`` from the second
    equation, so every tuple of the box meeting the hypotheses is visited.
    """
    if box.q[0] <= 2:
        raise ValueError("the q range must satisfy |q| > 2")
    tuples, found = _rs_scan(box, box.signed("q"))
    report = OracleReport("rs-lemma", {"box": box.to_dict()}, checked=tuples)
    report.violations = found
    return report.finish()


def rs_lemma_witnesses(box: ParamBox = ParamBox(r=(-30, 30), s=(-30, 30), r2=(-30, 30),
                                                s2=(-30, 30), q=(2, 2))) -> OracleReport:
    """Tuples with ``rs != r's'`` for small ``|q|``; non-empty at ``|q| = 2``."""
    tuples, found = _rs_scan(box, box.signed("q"))
    report = OracleReport("rs-lemma-sharpness", {"box": box.to_dict()}, checked=tuples)
    report.stats["witnesses"] = len(found)
    report.violations = []
    report.witnesses = sorted(found, key=lambda v: sorted(v.items()))
    return report


# -- torus knot / cable matching system --------------------------------------------

def check_torus_cable_matching(box: ParamBox = ParamBox()) -> OracleReport:
    """Enumerate solutions of the cone-order matching system; require ``|q| <= |a| + 1``.

    System: ``|qrs-p| = 1``, ``|qr's'-p| = 1``, ``|b| = |d|``,
    ``|a| = |q s'^2 cd - p|`` with ``|a|>|b|>1``, ``|c|>|d|>1``, coprime pairs
    and ``s, s' >= 2``.  Tuples describing the same cable knot on both sides
    are counted separately and never reported.
    """
    from .knots import TorusKnot, normalize as normalize_expr

    cd_table = defaultdict(list)
    for c in box.signed("c"):
        for d in box.signed("d"):
            if abs(c) > abs(d) > 1 and gcd(c, d) == 1:
                cd_table[c * d].append((c, d))
    a_mags = [a for a in box.values("a") if a > 1]
    b_mags = set(box.values("b"))
    r2_lo, r2_hi = box.r2
    report = OracleReport("torus-cable", {"box": box.to_dict()})
    solutions = self_matches = degenerate = 0
    for q in box.signed("q"):
        for s in box.values("s"):
            if s < 2:
                continue
            for r in box.values("r"):
                if gcd(r, s) != 1:
                    continue
                for eps in (1, -1):
                    p = q * r * s - eps
                    if box.p is not None and not box.p[0] <= p <= box.p[1]:
                        continue
                    for s2 in box.values("s2"):
                        if s2 < 2:
                            continue
                        for delta in (1, -1):
                            num = p + delta
                            if num % (q * s2):
                                continue
                            r2 = num // (q * s2)
                            if not r2_lo <= r2 <= r2_hi or gcd(r2, s2) != 1:
                                continue
                            k = q * s2 * s2
                            for a in a_mags:
                                for sign in (1, -1):
                                    num2 = p + sign * a
                                    if num2 % k:
                                        continue
                                    for c, d in cd_table.get(num2 // k, ()):
                                        if abs(d) >= a or abs(d) not in b_mags or gcd(a, d) != 1:
                                            continue
                                        for a_s in (a, -a):
                                            for b in (abs(d), -abs(d)):
                                                solutions += 1
                                                if s2 * s2 * c * d == r * s:
                                                    degenerate += 1
                                                same = (
                                                    (r, s) == (r2, s2)
                                                    and normalize_expr(TorusKnot(a_s, b))
                                                    == normalize_expr(TorusKnot(c, d))
                                                )
                                                if same:
                                                    self_matches += 1
                                                    continue
                                                if abs(q) > a + 1:
                                                    report.violations.append({
                                                        "q": q, "p": p, "a": a_s, "b": b,
                                                        "c": c, "d": d, "r": r, "s": s,
                                                        "r2": r2, "s2": s2,
                                                    })
    report.checked = solutions
    report.stats.update(solutions=solutions, self_matches=self_matches, degenerate=degenerate)
    return report.finish()


# -- homology of a filled 3-boundary composing space ----------------------------

def check_composing_h1(m: int, n: int, slopes: Tuple[Slope, Slope]) -> bool:
    """Whether ``sigma1`` on T1 and ``sigma2`` on T2 are homologous after filling T.

    A slope ``a/b`` on ``T_i`` stands for ``a*h + b*lambda_i``; the filling
    slope on T is ``m*h + n*(lambda_2 - lambda_1)``.  Slopes are unoriented,
    so both relative signs are tried.  When they are homologous the distance
    identity ``D(h, s1) = D(h, s2) = |k| D(h, s)`` is verified, raising
    :class:`OracleViolation` on failure.
    """
    if m == 0 and n == 0:
        raise ValueError("(m, n) = (0, 0) is not a filling slope")
    sigma1, sigma2 = slopes
    pres = Presentation(("h", "l1", "l2"))
    pres.relate(pres.vec(h=m, l1=-n, l2=n))
    fill_delta = abs(n)  # D(h, m h + n(l2 - l1)) in the basis {h, l2 - l1}
    for eps in (1, -1):
        diff = _add((1, pres.vec(h=sigma1.p, l1=sigma1.q)),
                    (-eps, pres.vec(h=sigma2.p, l2=sigma2.q)))
        k = solve_row_combination(pres.relations, diff)
        if k is None:
            continue
        d1, d2 = distance(MERIDIAN, sigma1), distance(MERIDIAN, sigma2)
        if not d1 == d2 == abs(k[0]) * fill_delta:
            raise OracleViolation(
                f"m={m} n={n} s1={sigma1} s2={sigma2}: D(h,s1)={d1}, D(h,s2)={d2}, "
                f"k={k[0]}, D(h,s)={fill_delta}"
            )
        return True
    return False


def scan_composing_h1(box: ParamBox = ParamBox()) -> OracleReport:
    """``check_composing_h1`` over all ``(m, n)`` and slope pairs in the box."""
    lo, hi = box.coef
    slopes = sorted({normalize(a, b) for a in range(lo, hi + 1) for b in range(lo, hi + 1)
                     if (a, b) != (0, 0)})
    report = OracleReport("composing-h1", {"box": box.to_dict()})
    homologous = 0
    for m in box.values("m"):
        for n in box.values("n"):
            if m == 0 and n == 0:
                continue
            for s1 in slopes:
                for s2 in slopes:
                    report.checked += 1
                    try:
                        homologous += check_composing_h1(m, n, (s1, s2))
                    except OracleViolation as exc:
                        report.violations.append({"m": m, "n": n, "s1": str(s1),
                                                  "s2": str(s2), "error": str(exc)})
    report.stats["homologous_pairs"] = homologous
    return report.finish()
