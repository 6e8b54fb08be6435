"""Approximating complex numbers by invariants of connected sums.

approx_real builds N = X # reverse(X), whose value |I(X)/mu|^2 is real and
nonnegative, choosing X as a product of atoms by a meet-in-the-middle
search over log-moduli. approx_target adds the phase: a power of the
seed atom b e^{2 pi i theta'} is chosen by kronecker_find, and the
modulus a b^-k is matched by approx_real in log space, so the size of
b^k never enters floating point.
"""

from __future__ import annotations

import cmath
import math
import random
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations_with_replacement

import mpmath
import numpy as np

from ..cyclo import Level, LevelError, RootChoice
from ..links import borromean_link
from ..tqftrep import GENERATORS, TwistWord, basis, orthonormal, twist_matrix
from .atoms import (Atom, AtomEntry, AtomLibrary, ConnSum, Power, Reverse, compute_atom_value,
                    expr_from_json, expr_to_json, random_word)
from .kronecker import NotFound, kronecker_find

SEED_ID = "seed"


@dataclass
class ApproxRecipe:
    target: complex
    epsilon: float
    expr: object
    achieved_error: float
    status: str  # "success" or "best-effort"
    budget: int
    budget_used: int
    seed: int | None = None
    trace: list[float] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.status == "success"

    def to_json(self) -> dict:
        return {"target": [self.target.real, self.target.imag], "eps": self.epsilon,
                "expr": expr_to_json(self.expr), "achieved_error": self.achieved_error,
                "status": self.status, "seed": self.seed, "budget": self.budget,
                "budget_used": self.budget_used, "trace": self.trace}

    @classmethod
    def from_json(cls, d: dict) -> "ApproxRecipe":
        t = d["target"]
        return cls(complex(t[0], t[1]), float(d["eps"]), expr_from_json(d["expr"]),
                   float(d["achieved_error"]), d.get("status", "best-effort"), int(d.get("budget", 0)),
                   int(d.get("budget_used", 0)), d.get("seed"), list(d.get("trace", [])))


def recipe_error(lib: AtomLibrary, expr, target: complex, prec: int = 128) -> float:
    with mpmath.workprec(prec):
        return float(abs(lib.evaluate(expr, prec) - mpmath.mpc(target.real, target.imag)))


def verify_recipe(recipe: ApproxRecipe, lib: AtomLibrary, recompute_atoms: bool = True,
                  prec: int = 128) -> float:
    """Re-derive the recipe's error; optionally recompute every atom from its descriptor first."""
    if recompute_atoms:
        fresh = AtomLibrary(lib.level, lib.root)
        ids = {k[0] for k in lib.check_evaluable(recipe.expr)}
        for aid in ids:
            a = lib[aid]
            val = compute_atom_value(lib.level, a.kind, a.descriptor, lib.root)
            fresh.add(AtomEntry(a.id, a.kind, a.descriptor, val, a.phase_complete, a.provenance))
        lib = fresh
    return recipe_error(lib, recipe.expr, recipe.target, prec)


# ---------------------------------------------------------------------------
# Seed


def check_no_real_powers(value: complex, n: int = 10**4, tol: float = 1e-8) -> tuple[bool, int, float]:
    """Whether |Im((v/|v|)^k)| > tol for all 1 <= k <= n; also the worst k and its value."""
    # k*phi loses about k ulps; at k = 10^4 that is ~1e-12, far below any sensible tol
    phi = cmath.phase(value)
    ks = np.arange(1, n + 1, dtype=np.float64)
    vals = np.abs(np.sin(ks * phi))
    i = int(vals.argmin())
    return bool(vals[i] > tol), int(ks[i]), float(vals[i])


def seed_irrational(level: Level | int, lib: AtomLibrary | None = None, n: int = 10**4,
                    tol: float = 1e-8) -> AtomEntry:
    """Register the Borromean mapping-torus atom and certify its phase on 1..n."""
    level = level if isinstance(level, Level) else Level(level)
    if level.r % 4 != 3 or not level.prime or level.r < 7:
        raise LevelError(f"the seed needs a prime r = 3 mod 4, r >= 7; got r = {level.r}")
    if lib is not None and lib.root is not RootChoice.E:
        raise LevelError("the seed is defined for A = e^{2 pi i/4r} only")
    desc = {"link": borromean_link((0, 0, 1)).to_json(), "formula": "double sum"}
    val = compute_atom_value(level, "borromean", desc)
    entry = AtomEntry(SEED_ID, "borromean", desc, val, True,
                      "Borromean (0,0,1) surgery via the double-sum identity")
    ok, k, worst = check_no_real_powers(complex(val), n, tol)
    if not ok:
        raise ArithmeticError(f"seed power {k} is real to within {worst:.2e}")
    if lib is not None:
        lib.add(entry)
    return entry


# ---------------------------------------------------------------------------
# Real targets


def _dedup_logs(lib: AtomLibrary) -> tuple[list[str], np.ndarray]:
    ids, logs = [], []
    seen = set()
    for aid, a in lib.atoms.items():
        v = abs(complex(a.value))
        if v == 0:
            continue
        lg = math.log(v)
        key = round(lg, 11)
        if key in seen or key == 0.0:
            continue
        seen.add(key)
        ids.append(aid)
        logs.append(lg)
    return ids, np.array(logs)


def _half_sums(logs: np.ndarray, budget: int) -> tuple[np.ndarray, list[tuple[int, ...]]]:
    """All multiset sums of up to m logs, m as large as the budget allows; sorted."""
    n = len(logs)
    combos: list[tuple[int, ...]] = [()]
    m = 0
    while True:
        nxt = list(combinations_with_replacement(range(n), m + 1)) if n else []
        if not nxt or len(combos) + len(nxt) > budget:
            break
        combos += nxt
        m += 1
        if m >= 6:
            break
    sums = np.array([logs[list(c)].sum() if c else 0.0 for c in combos])
    order = np.argsort(sums, kind="stable")
    return sums[order], [combos[i] for i in order]


def _log_tolerance(rel: float) -> float:
    """Largest d with |e^{2x} - 1| < rel whenever |x| < d."""
    if rel >= 1:
        return 0.5 * math.log1p(rel)
    return 0.5 * min(math.log1p(rel), -math.log1p(-rel))


def _search_log(lib: AtomLibrary, L: float, tol: float, budget: int,
                trace: list[float] | None = None) -> tuple[Counter, float, int]:
    """Nonnegative atom multiplicities n with |sum n_i log|v_i| - L| small; returns (counts, |gap|, used)."""
    ids, logs = _dedup_logs(lib)
    if not ids:
        return Counter(), abs(L), 0
    half = max(1, budget // 4)
    sums, combos = _half_sums(logs, half)
    used = len(sums)
    best = (Counter(), abs(L))

    def consider(base: Counter, base_sum: float):
        nonlocal best, used
        t = L - base_sum
        q = t - sums
        idx = np.clip(np.searchsorted(sums, q), 1, len(sums) - 1)
        left, right = sums[idx - 1], sums[idx]
        pick = np.where(np.abs(q - left) <= np.abs(q - right), idx - 1, idx)
        gaps = np.abs(q - sums[pick])
        i = int(gaps.argmin())
        used += len(sums)
        if gaps[i] < best[1]:
            c = Counter(base)
            for j in combos[i] + combos[pick[i]]:
                c[ids[j]] += 1
            best = (c, float(gaps[i]))
        if trace is not None:
            trace.append(best[1])

    consider(Counter(), 0.0)
    # drivers: the most negative and most positive log carry the bulk of a far target
    span = sums[-1] - sums[0]
    for d in (int(logs.argmin()), int(logs.argmax())):
        ld = logs[d]
        if ld == 0 or (ld < 0) != (L < 0) or abs(L) < span / 2:
            continue
        n0 = int(L / ld)
        for off in range(0, 200):
            if best[1] < tol or used >= budget:
                break
            for n in {n0 - off, n0 + off}:
                if n > 0:
                    consider(Counter({ids[d]: n}), n * ld)
    if abs(L) < span and best[1] >= tol:
        consider(Counter(), 0.0)
    return best[0], best[1], used


def _counts_to_expr(counts: Counter):
    parts = []
    for aid in sorted(counts):
        k = counts[aid]
        if k == 1:
            parts.append(Atom(aid))
        elif k > 1:
            parts.append(Power(Atom(aid), k))
    return ConnSum(tuple(parts))


def _double(x):
    return ConnSum((x, Reverse(x))) if x.children else ConnSum(())


def approx_real(lib: AtomLibrary, a: float, eps: float, budget: int = 10**5) -> ApproxRecipe:
    """N = X # reverse(X) with |value(N) - a| < eps, or the best found."""
    if a < 0:
        raise ValueError("approx_real needs a >= 0")
    if eps <= 0:
        raise ValueError("eps must be positive")
    trace: list[float] = []
    goal = a if a > 0 else eps / 4
    L = 0.5 * math.log(goal)
    tol = _log_tolerance(min(eps, goal) / goal if a == 0 else eps / a)
    counts, gap, used = _search_log(lib, L, tol, budget, trace)
    expr = _double(_counts_to_expr(counts))
    err = recipe_error(lib, expr, complex(a))
    trace = list(np.minimum.accumulate(trace)) if trace else [err]
    return ApproxRecipe(complex(a), eps, expr, err, "success" if err < eps else "best-effort",
                        budget, used, None, [float(t) for t in trace])


# ---------------------------------------------------------------------------
# Complex targets


def approx_target(lib: AtomLibrary, z: complex, eps: float, budget: int = 10**5,
                  kmax: int = 10**6, k_candidates: int = 3) -> ApproxRecipe:
    """The eps/3 pipeline: seed power for the phase, X # reverse(X) for the modulus."""
    z = complex(z)
    if eps <= 0:
        raise ValueError("eps must be positive")
    trace: list[float] = []
    # a single atom (or its reverse) may already do
    best_atom = None
    if abs(z - 1) < eps:
        best_atom = (abs(z - 1), ConnSum(()))
    for aid in lib.full_phase_ids():
        v = complex(lib[aid].value)
        for cand, val in ((Atom(aid), v), (Reverse(Atom(aid)), v.conjugate())):
            d = abs(val - z)
            if d < eps and (best_atom is None or d < best_atom[0]):
                best_atom = (d, cand)
    if best_atom is not None:
        err = recipe_error(lib, best_atom[1], z)
        if err < eps:
            return ApproxRecipe(z, eps, best_atom[1], err, "success", budget, len(lib), None, [err])
    if z.imag == 0 and z.real >= 0:
        return approx_real(lib, z.real, eps, budget)
    if SEED_ID not in lib:
        raise KeyError("approx_target needs the seed atom in the library")
    seed = complex(lib[SEED_ID].value)
    b = abs(seed)
    theta = cmath.phase(seed) / (2 * math.pi)
    a = abs(z)
    nu = cmath.phase(z) / (2 * math.pi)
    phase_eps = eps / (3 * a)
    best = None
    used = 0
    kmin = 1
    per_k = max(1, budget // k_candidates)
    for _ in range(k_candidates):
        try:
            k = kronecker_find(theta, nu, phase_eps, kmax, kmin=kmin)
        except NotFound:
            break
        kmin = k + 1
        phase_err = abs(cmath.exp(2j * math.pi * theta * k) - cmath.exp(2j * math.pi * nu))
        room = eps - a * phase_err
        L = 0.5 * (math.log(a) - k * math.log(b))
        counts, gap, u = _search_log(lib, L, _log_tolerance(room / a), per_k)
        used += u
        expr = ConnSum((_double(_counts_to_expr(counts)), Power(Atom(SEED_ID), k)))
        err = recipe_error(lib, expr, z)
        trace.append(err if not trace else min(trace[-1], err))
        if best is None or err < best[0]:
            best = (err, expr)
        if err < eps:
            break
    if best is None:
        return ApproxRecipe(z, eps, ConnSum(()), abs(z - 1), "best-effort", budget, used, None, [abs(z - 1)])
    err, expr = best
    return ApproxRecipe(z, eps, expr, err, "success" if err < eps else "best-effort",
                        budget, used, None, trace)


# ---------------------------------------------------------------------------
# Twist-word search


@dataclass
class WordSearchResult:
    word: TwistWord
    error: float
    entry: complex
    evaluations: int
    trace: list[float]


def _float_generators(level: Level, g: int, root: RootChoice):
    B = basis(level, g, root)
    mats = {}
    for name in GENERATORS[g]:
        U = orthonormal(twist_matrix(level, g, name, root), B)
        mats[(name, 1)] = U
        mats[(name, -1)] = U.conj().T
    return mats


def phase_aligned_error(entry: complex, target: complex) -> float:
    """min over phases t of |e^{it} entry - target|."""
    return abs(abs(entry) - abs(target))


def word_search(level: Level | int, g: int, target: complex, eps: float, budget: int = 10**4,
                max_len: int = 20, seed: int = 0, root: RootChoice = RootChoice.E) -> WordSearchResult:
    """Random restarts plus local mutation over words of length <= max_len."""
    level = level if isinstance(level, Level) else Level(level)
    mats = _float_generators(level, g, root)
    dim = next(iter(mats.values())).shape[0]
    rng = random.Random(seed)
    letters = list(mats)

    def entry(word):
        v = np.zeros(dim, dtype=complex)
        v[0] = 1
        for key in word:
            v = v @ mats[key]
        return complex(v[0])

    best_word: list = []
    best_entry = 1 + 0j
    best_err = phase_aligned_error(best_entry, target)
    trace = [best_err]
    evals = 1
    while evals < budget and best_err >= eps:
        if best_word and rng.random() < 0.6:
            w = list(best_word)
            op = rng.randrange(3)
            pos = rng.randrange(len(w) + (op == 1))
            if op == 0:
                w[pos] = rng.choice(letters)
            elif op == 1 and len(w) < max_len:
                w.insert(pos, rng.choice(letters))
            elif len(w) > 1:
                del w[pos]
        else:
            w = [rng.choice(letters) for _ in range(rng.randint(1, max_len))]
        x = entry(w)
        evals += 1
        err = phase_aligned_error(x, target)
        if err < best_err:
            best_word, best_entry, best_err = w, x, err
        trace.append(best_err)
    word = TwistWord(g, tuple(best_word))
    return WordSearchResult(word, best_err, best_entry, evals, trace)


# ---------------------------------------------------------------------------
# Scatter


@dataclass
class ScatterPoint:
    value: complex
    expr: object


def scatter(lib: AtomLibrary, count: int, seed: int = 0, max_atoms: int = 4,
            use_words: bool = True) -> list[ScatterPoint]:
    """Pseudo-random connected sums; the first n points do not depend on count."""
    if count < 1:
        raise ValueError("count must be at least 1")
    full = sorted(lib.full_phase_ids())
    words = sorted(k for k, a in lib.atoms.items() if not a.phase_complete) if use_words else []
    vals = {k: complex(lib.mp_value(k)) for k in full}
    mods = {k: abs(complex(lib.mp_value(k))) for k in words}
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        parts = []
        value = 1 + 0j
        for _ in range(rng.randint(1, max_atoms)):
            if words and rng.random() < 0.25:
                w = rng.choice(words)
                parts.append(ConnSum((Atom(w), Reverse(Atom(w)))))
                value *= mods[w] ** 2
            else:
                aid = rng.choice(full)
                if rng.random() < 0.5:
                    parts.append(Atom(aid))
                    value *= vals[aid]
                else:
                    parts.append(Reverse(Atom(aid)))
                    value *= vals[aid].conjugate()
        out.append(ScatterPoint(value, ConnSum(tuple(parts))))
    return out


def scatter_value(lib: AtomLibrary, expr) -> complex:
    """Float evaluation matching scatter's arithmetic order."""
    value = 1 + 0j
    for part in expr.children:
        if isinstance(part, ConnSum):
            value *= abs(complex(lib.mp_value(part.children[0].id))) ** 2
        elif isinstance(part, Reverse):
            value *= complex(lib.mp_value(part.child.id)).conjugate()
        else:
            value *= complex(lib.mp_value(part.id))
    return value


def grid_coverage(values, cell: float = 0.25, half_width: float = 2.0) -> float:
    """Fraction of the cells of side `cell` tiling [-w, w]^2 containing some value."""
    n = int(round(2 * half_width / cell))
    hit = set()
    for z in values:
        if -half_width <= z.real < half_width and -half_width <= z.imag < half_width:
            hit.add((int((z.real + half_width) // cell), int((z.imag + half_width) // cell)))
    return len(hit) / (n * n)
