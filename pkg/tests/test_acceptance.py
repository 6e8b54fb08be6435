"""Acceptance criteria 1-10, each at its stated tolerance and runtime."""

import itertools
import math
import random
import time

import numpy as np

from so3wrt.cyclo import Level, RootChoice
from so3wrt.links import borromean_link, empty_link, load_corpus, unknot, unknot_unlink
from so3wrt.skein import TLMorphism, get_skein, tet_closed_for_oracle_labels, tet_oracle, theta_oracle
from so3wrt.surgery import (borromean_closed_form, borromean_invariant, mu, rt_invariant,
                            unknot_weights)


def test_criterion_01_closed_form_identity(acceptance):
    details, ok = [], True
    for r in (7, 11, 19):
        t0 = time.perf_counter()
        ds = borromean_invariant(r).exact
        cf = borromean_closed_form(r).exact
        dt = time.perf_counter() - t0
        same = ds == cf
        ok &= same and dt < 1
        details.append(f"r={r}: {'equal' if same else 'differ'} ({dt:.2f} s)")
    assert acceptance(1, ok, "double sum vs closed form; " + ", ".join(details))


def test_criterion_02_borromean_cross_check(acceptance):
    t0 = time.perf_counter()
    v = rt_invariant(borromean_link((0, 0, 1)), 7).exact
    dt = time.perf_counter() - t0
    ds = borromean_invariant(7).exact
    modulus = abs(complex(v))
    # chirality convention: the mirror diagram gives the complex conjugate
    equal = ds == v or ds == v.conj()
    mod_ok = abs(modulus - math.sqrt(2)) < 1e-12
    ok = equal and mod_ok and dt < 60
    assert acceptance(2, ok, f"double sum {'=' if equal else '!='} surgery value up to chirality; "
                             f"|I| = {modulus:.13f} (within 1e-12 of sqrt 2: {mod_ok}); {dt:.1f} s")


def test_criterion_03_normalization_anchors(acceptance):
    bad = []
    for r in (5, 7):
        level = Level(r)
        for root in RootChoice:
            m = mu(level, root)
            sk = get_skein(r, root)
            checks = {
                "S3": rt_invariant(empty_link(), level, root).exact == m,
                "S1xS2": rt_invariant(unknot(0), level, root).exact == 1,
                "#2 S1xS2": rt_invariant(unknot_unlink(2), level, root).exact == 1 / m,
                "mu^2": m * m == (sk.A(2) - sk.A(-2)) ** 2 / (-r),
            }
            bad += [f"{name} r={r} {root.value}" for name, good in checks.items() if not good]
    assert acceptance(3, not bad, "anchors and mu^2 at 8 roots, r=5,7" + (f"; failed: {bad}" if bad else ""))


def test_criterion_04_structural_identities(acceptance):
    from so3wrt.identities import kirby_pairs

    corpus = load_corpus()
    names = sorted(corpus)
    level = Level(5)
    m = mu(level)
    val = {n: rt_invariant(corpus[n], level).exact for n in names}
    mirror_bad = [n for n in names if rt_invariant(corpus[n].mirror(), level).exact != val[n].conj()]
    small = [n for n in names if len(corpus[n].crossings) <= 4]
    union_pairs = [(small[i], small[(i + 3) % len(small)]) for i in range(len(small))]
    union_bad = [p for p in union_pairs
                 if rt_invariant(corpus[p[0]].disjoint_union(corpus[p[1]]), level).exact
                 != val[p[0]] * val[p[1]] / m]
    kirby_bad, n_pairs = [], 0
    for r in (5, 7):
        for name, x, y in kirby_pairs(r):
            n_pairs += 1
            if rt_invariant(x, r).exact != rt_invariant(y, r).exact:
                kirby_bad.append(f"{name} r={r}")
    ok = (len(names) >= 10 and len(union_pairs) >= 10 and n_pairs >= 5
          and not mirror_bad and not union_bad and not kirby_bad)
    assert acceptance(4, ok, f"mirror on {len(names)} diagrams, union on {len(union_pairs)} pairs, "
                             f"{n_pairs} Kirby pairs; failures {mirror_bad + union_bad + kirby_bad}")


def test_criterion_05_skein_suite(acceptance):
    bad = []
    for r in (5, 7):
        sk = get_skein(r)
        for n in range(1, r - 1):
            f = sk.jones_wenzl(n)
            if f.compose(f) != f:
                bad.append(f"idempotence n={n} r={r}")
            if any(not TLMorphism.e(sk, n, i).compose(f).is_zero() for i in range(n - 1)):
                bad.append(f"caps n={n} r={r}")
        if any(sk.loop_value(n) != (-1) ** n * sk.quantum_int(n + 1) for n in range(r - 1)):
            bad.append(f"loop value r={r}")
        if mu(r) ** 2 * sum((sk.loop_value(c) ** 2 for c in sk.colors()), sk.zero()) != 1:
            bad.append(f"mu^2 sum r={r}")
    sk = get_skein(5)
    n_theta = n_tet = 0
    for a, b, c in itertools.product(range(4), repeat=3):
        if sk.admissible(a, b, c, even=False):
            n_theta += 1
            if sk.theta(a, b, c, even=False) != theta_oracle(sk, a, b, c):
                bad.append(f"theta{(a, b, c)}")
    for a, b, c, d, e, f in itertools.product(range(4), repeat=6):
        if all(sk.admissible(*t, even=False) for t in ((f, a, b), (b, c, d), (a, c, e), (e, d, f))):
            n_tet += 1
            if tet_closed_for_oracle_labels(sk, a, b, c, d, e, f) != tet_oracle(sk, a, b, c, d, e, f):
                bad.append(f"tet{(a, b, c, d, e, f)}")
    assert acceptance(5, not bad, f"JW/loop/mu checks r=5,7; {n_theta} theta and {n_tet} tet inputs "
                                  f"vs TL oracle at r=5" + (f"; failed {bad[:5]}" if bad else ""))


def test_criterion_06_representation_suite(acceptance):
    from so3wrt.tqftrep import (GENERATORS, AlphaUndefined, TwistWord, basis, extract_alpha,
                                projectivity_scalar, twist_matrix)
    from so3wrt.identities import ALPHA_WORDS

    bad, n_alpha = [], 0
    for r in (5, 7):
        level = Level(r)
        for g in (1, 2):
            G = basis(level, g).gram()
            bad += [f"{name} g={g} r={r}" for name in GENERATORS[g]
                    if not twist_matrix(level, g, name).is_unitary(G)]
        for w in ALPHA_WORDS:
            try:
                alpha = extract_alpha(level, TwistWord.parse(w, 1))
            except AlphaUndefined:
                continue
            except AssertionError:
                bad.append(f"alpha[{w}] r={r}")
                continue
            n_alpha += 1
            if alpha ** level.order != 1:
                bad.append(f"alpha[{w}] r={r}")
        s = projectivity_scalar(level)
        if s is None or s ** level.order != 1:
            bad.append(f"projectivity r={r}")
    assert acceptance(6, not bad, f"G-unitarity g=1,2; {n_alpha} alpha extractions; projectivity"
                                  + (f"; failed {bad}" if bad else ""))


def test_criterion_07_pu_metric(acceptance):
    from so3wrt.density.pu import pu_distance, pu_distance_grid, random_unitary

    rng = np.random.default_rng(2024)
    worst_grid = worst_sym = worst_tri = worst_phase = 0.0
    for k in range(100):
        n = 2 + k % 5
        U, V, W = (random_unitary(n, rng) for _ in range(3))
        d = pu_distance(U, V)
        worst_grid = max(worst_grid, abs(d - pu_distance_grid(U, V, 10**6)))
        worst_sym = max(worst_sym, abs(d - pu_distance(V, U)))
        worst_tri = max(worst_tri, d - pu_distance(U, W) - pu_distance(W, V))
        worst_phase = max(worst_phase, abs(pu_distance(U, np.exp(1j * rng.uniform(0, 7)) * V) - d))
    ok = worst_grid < 1e-9 and worst_sym < 1e-9 and worst_tri < 1e-9 and worst_phase < 1e-9
    assert acceptance(7, ok, f"grid {worst_grid:.1e}, symmetry {worst_sym:.1e}, "
                             f"triangle excess {worst_tri:.1e}, phase {worst_phase:.1e}")


def test_criterion_08_kronecker(acceptance):
    from so3wrt.density.kronecker import circle_error, kronecker_find, kronecker_scan

    theta = math.atan2(-math.sqrt(7), 7) / (2 * math.pi)
    rng = random.Random(8)
    t0 = time.perf_counter()
    bad, worst_k = [], 0
    for _ in range(50):
        nu = rng.random()
        k = kronecker_find(theta, nu, 1e-3, 10**6)
        worst_k = max(worst_k, k)
        if k > 10**6 or circle_error(theta, nu, k) >= 1e-3 or kronecker_scan(theta, nu, 1e-3, 10**6) != k:
            bad.append(nu)
    dt = time.perf_counter() - t0
    ok = not bad and dt < 10
    assert acceptance(8, ok, f"50 targets, max k {worst_k}, {len(bad)} mismatches, {dt:.1f} s")


def test_criterion_09_density(acceptance):
    from so3wrt.density import approx_target, build_library, verify_recipe

    t0 = time.perf_counter()
    lib = build_library(7, seed=0)
    rng = random.Random(9)
    errors, verified, monotone = [], True, True
    for _ in range(20):
        z = rng.uniform(0.1, 3) * complex(math.cos(a := rng.uniform(0, 2 * math.pi)), math.sin(a))
        rec = approx_target(lib, z, 0.1, budget=10**5)
        again = verify_recipe(rec, lib, recompute_atoms=True)
        verified &= abs(again - rec.achieved_error) < 1e-12
        monotone &= all(x >= y for x, y in zip(rec.trace, rec.trace[1:]))
        errors.append(rec.achieved_error)
    dt = time.perf_counter() - t0
    ok = max(errors) < 0.1 and verified and monotone and dt < 600
    assert acceptance(9, ok, f"20 targets, max error {max(errors):.3e}, re-verified {verified}, "
                             f"monotone traces {monotone}, {dt:.0f} s")


def test_criterion_10_seed_phase(acceptance):
    from so3wrt.density.search import check_no_real_powers, seed_irrational

    parts, ok = [], True
    for r in (7, 11, 19):
        passed, k, worst = check_no_real_powers(seed_irrational(r).approx(), 10**4, 1e-8)
        ok &= passed
        parts.append(f"r={r} min |Im| {worst:.1e} at k={k}")
    assert acceptance(10, ok, "; ".join(parts))
