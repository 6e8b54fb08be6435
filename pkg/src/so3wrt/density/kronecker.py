"""Hitting an arc of the circle with the orbit k -> k*theta (mod 1).

The search is exact: theta and the arc endpoints are turned into integers
over the dyadic denominator of theta, and the first hitting time of an
integer interval under x -> a*x mod m is found by a Euclid-style
recursion in O(log m) steps.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np


@dataclass
class NotFound(Exception):
    best_k: int
    best_error: float

    def __str__(self):
        return f"no k found; best k={self.best_k} with error {self.best_error:.3e}"


def _first_hit(a: int, m: int, lo: int, hi: int) -> int | None:
    """Smallest x >= 0 with lo <= (a*x mod m) <= hi, for 0 <= lo <= hi < m."""
    if lo == 0:
        return 0
    a %= m
    if a == 0:
        return None
    if 2 * a > m:
        return _first_hit(m - a, m, m - hi, m - lo)
    x = -(-lo // a)
    if a * x <= hi:
        return x
    # a*x - m*y lands in [lo, hi]: find the fewest wraps y, i.e. m*y mod a in [-hi, -lo]
    y = first_hit(m % a, a, -hi, -lo) if hi - lo + 1 < a else 0
    if y is None:
        return None
    return -(-(lo + m * y) // a)


def first_hit(a: int, m: int, lo: int, hi: int) -> int | None:
    """Smallest x >= 0 with a*x mod m in the cyclic interval [lo, hi] (may wrap)."""
    lo %= m
    hi %= m
    if lo <= hi:
        return _first_hit(a, m, lo, hi)
    hits = [h for h in (_first_hit(a, m, lo, m - 1), _first_hit(a, m, 0, hi)) if h is not None]
    return min(hits) if hits else None


def circle_error(theta: float, nu: float, k: int) -> float:
    return abs(cmath.exp(2j * math.pi * theta * k) - cmath.exp(2j * math.pi * nu))


def kronecker_find(theta: float, nu: float, eps: float, kmax: int = 10**6, kmin: int = 1) -> int:
    """Smallest kmin <= k <= kmax with |e^{2 pi i theta k} - e^{2 pi i nu}| < eps."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    if eps > 2:
        return kmin
    th = Fraction(theta) % 1
    m = th.denominator
    a = th.numerator
    # chord < eps  <=>  circular distance < w
    w = Fraction(math.asin(eps / 2) / math.pi)
    target = Fraction(nu) % 1
    start = max(1, kmin)
    while start <= kmax:
        # k = start + x, x >= 0:  a*x mod m in [ (nu - w - start*theta) m, (nu + w - start*theta) m ]
        shift = (target - start * th) % 1
        lo = math.ceil((shift - w) * m)
        hi = math.floor((shift + w) * m)
        if hi - lo + 1 >= m:
            x = 0
        elif hi < lo:
            x = None
        else:
            x = first_hit(a, m, lo, hi)
        if x is None or start + x > kmax:
            break
        k = start + x
        if circle_error(theta, nu, k) < eps:
            return k
        start = k + 1  # boundary rounding; keep looking
    best = kronecker_scan(theta, nu, eps, min(kmax, 10**6), best_only=True)
    raise NotFound(*best)


def kronecker_scan(theta: float, nu: float, eps: float, kmax: int, best_only: bool = False):
    """Linear-scan oracle; returns the smallest hit k, or (best_k, best_error) when best_only."""
    best_k, best_err = 0, float("inf")
    chunk = 1 << 20
    target = cmath.exp(2j * math.pi * nu)
    for start in range(1, kmax + 1, chunk):
        ks = np.arange(start, min(kmax, start + chunk - 1) + 1, dtype=np.float64)
        err = np.abs(np.exp(2j * np.pi * ((theta * ks) % 1.0)) - target)
        if not best_only:
            hit = np.nonzero(err < eps)[0]
            if hit.size:
                return int(ks[hit[0]])
        i = int(err.argmin())
        if err[i] < best_err:
            best_k, best_err = int(ks[i]), float(err[i])
    if best_only:
        return best_k, best_err
    raise NotFound(best_k, best_err)
