"""Kauffman bracket of planar diagrams as Laurent polynomials in A.

The contraction engine sweeps the crossings in a greedy order that keeps
the frontier (arcs with exactly one processed end) small. A sweep state
is a pairing of frontier arcs, meaning which dangling ends are already
joined through processed crossings; each state carries a Laurent
polynomial. The 2^c state enumeration is kept as an oracle.
"""

from __future__ import annotations

from collections import defaultdict
from itertools import product
from typing import Sequence

from .cyclo import CyclotomicNumber, RootChoice, Level

PD = tuple[int, int, int, int]
Laurent = dict[int, int]

DEFAULT_CROSSING_BUDGET = 400
DEFAULT_STATE_BUDGET = 3_000_000


class BudgetError(RuntimeError):
    pass


DELTA: Laurent = {2: -1, -2: -1}


def lmul(p: Laurent, q: Laurent) -> Laurent:
    out: Laurent = defaultdict(int)
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            out[e1 + e2] += c1 * c2
    return {e: c for e, c in out.items() if c}


def ladd_into(acc: Laurent, p: Laurent, shift: int = 0) -> None:
    for e, c in p.items():
        acc[e + shift] = acc.get(e + shift, 0) + c


def lpow(p: Laurent, k: int) -> Laurent:
    out: Laurent = {0: 1}
    for _ in range(k):
        out = lmul(out, p)
    return out


def lclean(p: Laurent) -> Laurent:
    return {e: c for e, c in sorted(p.items()) if c}


def smoothings(x: PD) -> tuple[tuple[int, tuple[int, int], tuple[int, int]], ...]:
    """(A-exponent, pair, pair) for the two resolutions of a crossing.

    With labels counterclockwise from the incoming under arc, the A
    resolution joins (i, j) and (k, l).
    """
    i, j, k, l = x
    return ((1, (i, j), (k, l)), (-1, (i, l), (j, k)))


def bracket_enumeration(pd: Sequence[PD], free_loops: int = 0) -> Laurent:
    """2^c state sum; the reference oracle."""
    pd = list(pd)
    labels = sorted({a for x in pd for a in x})
    index = {a: n for n, a in enumerate(labels)}
    total: Laurent = {}
    dpows: dict[int, Laurent] = {}
    for choice in product((0, 1), repeat=len(pd)):
        parent = list(range(len(labels)))

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        # each arc is an edge between its two crossing-slots; smoothings join slots.
        # Union arcs that are joined at a crossing; loops = number of classes.
        aexp = 0
        for x, ch in zip(pd, choice):
            e, p1, p2 = smoothings(x)[ch]
            aexp += e
            for u, v in (p1, p2):
                ru, rv = find(index[u]), find(index[v])
                if ru != rv:
                    parent[ru] = rv
        loops = len({find(v) for v in range(len(labels))}) + free_loops
        if loops not in dpows:
            dpows[loops] = lpow(DELTA, loops)
        ladd_into(total, dpows[loops], aexp)
    if not pd:
        total = lpow(DELTA, free_loops)
    return lclean(total)


def sweep_order(pd: Sequence[PD]) -> list[int]:
    """Greedy order: repeatedly take the crossing that leaves the smallest frontier."""
    remaining = set(range(len(pd)))
    seen_once: set[int] = set()
    seen_twice: set[int] = set()
    order = []
    while remaining:
        best, best_key = None, None
        for n in remaining:
            new = set(seen_once)
            closed = 0
            for a in pd[n]:
                if a in new:
                    new.discard(a)
                    closed += 1
                elif a not in seen_twice:
                    new.add(a)
            key = (len(new), -closed, n)
            if best_key is None or key < best_key:
                best, best_key = n, key
        order.append(best)
        remaining.discard(best)
        for a in pd[best]:
            if a in seen_once:
                seen_once.discard(a)
                seen_twice.add(a)
            elif a in seen_twice:
                pass
            else:
                seen_once.add(a)
        # an arc with both ends on the same crossing is closed at once
        for a in set(pd[best]):
            if list(pd[best]).count(a) == 2:
                seen_once.discard(a)
                seen_twice.add(a)
    return order


def max_frontier(pd: Sequence[PD], order: Sequence[int]) -> int:
    counts: dict[int, int] = defaultdict(int)
    width = best = 0
    for n in order:
        for a in pd[n]:
            counts[a] += 1
            width += 1 if counts[a] == 1 else -1
        best = max(best, width)
    return best


def bracket_contract(pd: Sequence[PD], free_loops: int = 0,
                     budget: int = DEFAULT_CROSSING_BUDGET,
                     max_states: int = DEFAULT_STATE_BUDGET) -> Laurent:
    """Kauffman bracket by frontier contraction."""
    pd = list(pd)
    if len(pd) > budget:
        raise BudgetError(f"{len(pd)} crossings exceeds the crossing budget of {budget}")
    if not pd:
        return lclean(lpow(DELTA, free_loops))
    order = sweep_order(pd)
    # Before loop factors are applied every coefficient is a nonnegative state
    # count below 2**c, so a polynomial packs exactly into one integer with
    # slot width c+1 bits. Slot m holds the coefficient of A^(2m - steps).
    width = len(pd) + 1
    shift_a = width
    # states: pairing (sorted pairs) -> {closed loops: packed polynomial}
    states: dict[tuple, dict[int, int]] = {(): {0: 1}}
    for n in order:
        res = smoothings(pd[n])
        new_states: dict[tuple, dict[int, int]] = {}
        for key, by_loops in states.items():
            base = {}
            for u, v in key:
                base[u] = v
                base[v] = u
            for aexp, p1, p2 in res:
                pm = dict(base)
                loops = 0
                for u, v in (p1, p2):
                    if u == v:
                        loops += 1
                        continue
                    iu, iv = u in pm, v in pm
                    if iu and iv:
                        pu, pv = pm.pop(u), pm.pop(v)
                        if pu == v:
                            loops += 1
                        else:
                            pm[pu], pm[pv] = pv, pu
                    elif iu:
                        pu = pm.pop(u)
                        pm[pu], pm[v] = v, pu
                    elif iv:
                        pv = pm.pop(v)
                        pm[pv], pm[u] = u, pv
                    else:
                        pm[u], pm[v] = v, u
                nkey = tuple(sorted((a, b) for a, b in pm.items() if a < b))
                target = new_states.get(nkey)
                if target is None:
                    target = new_states[nkey] = {}
                for lp, packed in by_loops.items():
                    val = packed << shift_a if aexp > 0 else packed
                    k = lp + loops
                    target[k] = target.get(k, 0) + val
        if len(new_states) > max_states:
            raise BudgetError(f"sweep frontier exceeded {max_states} states")
        states = new_states
    steps = len(pd)
    mask = (1 << width) - 1
    total: Laurent = {}
    for lp, packed in states.get((), {}).items():
        poly: Laurent = {}
        m = 0
        while packed:
            c = packed & mask
            if c:
                poly[2 * m - steps] = c
            packed >>= width
            m += 1
        ladd_into(total, lmul(poly, lpow(DELTA, lp + free_loops)))
    return lclean(total)


def laurent_to_field(p: Laurent, level: Level, root: RootChoice) -> CyclotomicNumber:
    a = root.exponent(level)
    terms: dict[int, int] = {}
    for e, c in p.items():
        k = (a * e) % level.order
        terms[k] = terms.get(k, 0) + c
    return CyclotomicNumber.from_exponents(level, terms)
