"""Acceptance criteria, one test per criterion, each with its time budget."""
import itertools
import random
import time
from math import gcd

from surgcalc.certify import best_bound
from surgcalc.jsj import CableSpace, ComposingSpace, TorusKnotExterior, jsj
from surgcalc.knots import Cable, HypKnot, HypPattern, Sum, TorusKnot, parse
from surgcalc.oracle import ParamBox, check_cable_patterns, check_rs_lemma, check_torus_cable_matching, rs_lemma_witnesses
from surgcalc.slopes import BasisChange, change_basis, distance, normalize
from surgcalc.surgery import surger

TORUS_POOL = [TorusKnot(a, b) for a in range(3, 10) for b in (2, -2, 3, -3) if abs(b) < a and gcd(a, b) == 1]


def _random_torus(rng):
    return rng.choice(TORUS_POOL)


def _random_cable_params(rng, max_r=15, max_s=6):
    s = rng.randint(2, max_s)
    while True:
        r = rng.randint(-max_r, max_r)
        if gcd(r, s) == 1:
            return r, s


def _random_knot(rng, depth=3):
    roll = rng.random()
    if depth == 0 or roll < 0.3:
        return _random_torus(rng) if rng.random() < 0.7 else HypKnot(rng.choice("JKL"))
    if roll < 0.65:
        r, s = _random_cable_params(rng)
        return Cable(r, s, _random_knot(rng, depth - 1))
    if roll < 0.9:
        return Sum(tuple(_random_knot(rng, depth - 1) for _ in range(rng.randint(2, 3))))
    return HypPattern(rng.choice("PQ"), rng.randint(0, 3),
                      tuple(_random_knot(rng, depth - 1) for _ in range(rng.randint(1, 2))))


def test_ac1_effective_thresholds(acceptance_record):
    table = [
        ("Sum(T(3,2),T(5,2))", 2, {"Thm1.2"}),
        ("C(3,2;Sum(T(3,2),T(5,2)))", 3, {"Thm1.3", "Thm7.1(i)"}),
        ("C(7,2;T(5,2))", 13, {"Thm7.1(iii)"}),
        ("C(1,2;C(7,2;T(5,2)))", 13, {"Thm7.1(ii)"}),
    ]
    t0 = time.perf_counter()
    got = [best_bound(parse(k)) for k, _, _ in table]
    elapsed = time.perf_counter() - t0
    ok = all(b.qmin == q and b.theorem_id in thms for b, (_, q, thms) in zip(got, table))
    ok = acceptance_record("AC1 effective thresholds {2,3,13,13}", ok and elapsed < 1,
                           f"got {[(b.qmin, b.theorem_id) for b in got]} in {elapsed:.3f}s")
    assert ok


def test_ac2_cable_reduction_coherence(acceptance_record):
    rng = random.Random(20261015)
    t0 = time.perf_counter()
    mismatches = []
    for _ in range(10_000):
        r, s = _random_cable_params(rng, max_r=30, max_s=8)
        j = _random_knot(rng, depth=2)
        q = rng.randint(1, 40)
        p = q * r * s + rng.choice((1, -1))
        direct = surger(Cable(r, s, j), normalize(p, q))
        via = surger(j, normalize(p, q * s * s))
        if direct.pieces != via.pieces:
            mismatches.append((r, s, j, p, q))
    elapsed = time.perf_counter() - t0
    ok = acceptance_record("AC2 cable-reduction coherence (10^4 tuples)",
                           not mismatches and elapsed < 10,
                           f"{len(mismatches)} mismatches in {elapsed:.2f}s")
    assert ok, mismatches[:5]


def test_ac3_homology_oracle(acceptance_record):
    t0 = time.perf_counter()
    report = check_cable_patterns(ParamBox(r=(-7, 7), s=(2, 6), p=(-50, 50), q=(1, 9)))
    elapsed = time.perf_counter() - t0
    ok = acceptance_record("AC3 filled cable pattern H_1 oracle",
                           report.ok and report.checked > 0 and elapsed < 30,
                           f"{len(report.violations)} mismatches over {report.checked} fillings "
                           f"of {report.stats['patterns']} patterns in {elapsed:.2f}s")
    assert ok, report.violations[:5]


def test_ac4_rs_lemma(acceptance_record):
    t0 = time.perf_counter()
    report = check_rs_lemma(ParamBox(r=(-30, 30), s=(-30, 30), r2=(-30, 30), s2=(-30, 30), q=(3, 50)))
    sharp = rs_lemma_witnesses(ParamBox(r=(-30, 30), s=(-30, 30), r2=(-30, 30), s2=(-30, 30), q=(2, 2)))
    elapsed = time.perf_counter() - t0
    ok = acceptance_record("AC4 rs = r's' lemma and |q| = 2 sharpness",
                           report.ok and len(sharp.witnesses) >= 1 and elapsed < 30,
                           f"{len(report.violations)} counterexamples over {report.checked} tuples; "
                           f"{len(sharp.witnesses)} witnesses at |q|=2; {elapsed:.2f}s")
    assert ok, report.violations[:5]


def test_ac5_torus_cable_matching(acceptance_record):
    t0 = time.perf_counter()
    report = check_torus_cable_matching(ParamBox(a=(3, 9), s=(2, 5), s2=(2, 5), q=(3, 25)))
    elapsed = time.perf_counter() - t0
    ok = acceptance_record("AC5 torus/cable matching |q| <= |a|+1",
                           report.ok and elapsed < 60,
                           f"{len(report.violations)} violations over {report.stats['solutions']} "
                           f"solutions ({report.stats['self_matches']} self-matches) in {elapsed:.2f}s")
    assert ok, report.violations[:5]


def test_ac6_jsj_structure(acceptance_record):
    failures = []
    pool = TORUS_POOL[:8]
    sums = 0
    for n in range(2, 7):
        for summands in itertools.combinations_with_replacement(pool, n):
            g = jsj(Sum(summands))
            sums += 1
            comp = [p for p in g.pieces if isinstance(p, ComposingSpace)]
            tk = [p for p in g.pieces if isinstance(p, TorusKnotExterior)]
            if len(comp) != 1 or comp[0].n_boundaries != n + 1 or len(tk) != n:
                failures.append(summands)
    rng = random.Random(6)
    chains = 0
    for d in range(1, 6):
        for _ in range(400):
            core = _random_knot(rng, depth=0)
            e = core
            for _ in range(d):
                r, s = _random_cable_params(rng)
                e = Cable(r, s, e)
            chains += 1
            if sum(isinstance(p, CableSpace) for p in jsj(e).pieces) != d:
                failures.append(e)
    ok = acceptance_record("AC6 JSJ structure of sums and cable chains", not failures,
                           f"{len(failures)} failures over {sums} sums and {chains} chains")
    assert ok, failures[:5]


def test_ac7_slope_properties(acceptance_record):
    rng = random.Random(7)
    gens = [lambda k: BasisChange(1, k, 0, 1), lambda k: BasisChange(1, 0, k, 1),
            lambda k: BasisChange(0, 1, 1, 0)]

    def rand_slope():
        while True:
            p, q = rng.randint(-10**9, 10**9), rng.randint(-10**9, 10**9)
            if p or q:
                return normalize(p, q)

    failures = 0
    t0 = time.perf_counter()
    n = 100_000
    for i in range(n):
        a, b = rand_slope(), rand_slope()
        kind = i % 3
        if kind == 0:
            failures += distance(a, b) != distance(b, a)
        elif kind == 1:
            m = BasisChange.identity()
            for _ in range(3):
                m = rng.choice(gens)(rng.randint(-9, 9)) @ m
            failures += distance(change_basis(a, m), change_basis(b, m)) != distance(a, b)
        else:
            k = rng.choice((-1, 1)) * rng.randint(1, 10**6)
            failures += normalize(a.p, a.q) != a or normalize(k * a.p, k * a.q) != a
    elapsed = time.perf_counter() - t0
    ok = acceptance_record("AC7 slope algebra properties (10^5 checks)",
                           failures == 0 and elapsed < 5, f"{failures} failures in {elapsed:.2f}s")
    assert ok


def _draw_classification_case(rng):
    """A knot, slope and the expected filled-piece cone orders from construction."""
    q = rng.randint(3, 30)
    base_kind = rng.choice(("sum", "cable"))
    if base_kind == "sum":
        base = Sum(tuple(_random_knot(rng, depth=1) for _ in range(rng.randint(2, 3))))
    else:
        r, s = _random_cable_params(rng)
        base = Cable(r, s, _random_knot(rng, depth=1))
    wrap = rng.random() < 0.5
    if wrap:
        # the outer cable reduces, so the base is filled along p/(q t^2)
        r0, s0 = _random_cable_params(rng)
        p = q * r0 * s0 + rng.choice((1, -1))
        knot, t = Cable(r0, s0, base), s0
    else:
        while True:
            p = rng.randint(-2000, 2000)
            if gcd(p, q) == 1 and (base_kind == "sum" or abs(q * base.r * base.s - p) > 1):
                break
        knot, t = base, 1
    eff = q * t * t
    if base_kind == "sum":
        expected = (eff,)
    else:
        expected = tuple(sorted((abs(eff * base.r * base.s - p), base.s)))
    return knot, normalize(p, q), t, expected


def test_ac8_filled_piece_classification(acceptance_record):
    rng = random.Random(8)
    deviations = []
    reduced = 0
    t0 = time.perf_counter()
    for _ in range(10_000):
        knot, slope, t, expected = _draw_classification_case(rng)
        res = surger(knot, slope)
        reduced += t > 1
        got = tuple(sorted(res.surgered.seifert.cone_orders))
        if res.t != t or got != expected:
            deviations.append((knot, slope, expected, got))
    elapsed = time.perf_counter() - t0
    ok = acceptance_record("AC8 filled composing/cable cone orders (10^4 draws)",
                           not deviations and reduced > 0,
                           f"{len(deviations)} deviations, {reduced} draws with t > 1, {elapsed:.2f}s")
    assert ok, deviations[:5]
