"""SO(3) quantum invariants of 3-manifolds presented by framed links.

The invariant is a colored-bracket state sum. Each colored component is
expanded into blackboard cables through the Chebyshev polynomials that
give the closure of a Jones-Wenzl projector, so the only brackets ever
evaluated are those of plain cables.
"""

from __future__ import annotations

import functools
import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from .bracket import BudgetError, bracket_contract, laurent_to_field
from .cyclo import CyclotomicNumber, Level, LevelError, RootChoice, mu_exact, sqrt_r
from .links import FramedLinkDiagram, borromean_link, cable_pd
from .skein import InadmissibleError, get_skein

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Budget:
    """Limits on diagram size; cable width is the largest color used."""

    max_crossings: int = 16
    max_cable_width: int = 6

    def check(self, d: FramedLinkDiagram, width: int) -> None:
        if len(d.crossings) > self.max_crossings:
            raise BudgetError(
                f"diagram has {len(d.crossings)} crossings; budget allows {self.max_crossings}")
        if width > self.max_cable_width:
            raise BudgetError(
                f"cable width {width} exceeds the budget of {self.max_cable_width} strands")


DEFAULT_BUDGET = Budget()


@dataclass(frozen=True)
class InvariantValue:
    exact: CyclotomicNumber | None
    approx: complex
    level: int
    root: RootChoice = RootChoice.E
    label: str = field(default="", compare=False)

    @classmethod
    def from_exact(cls, x: CyclotomicNumber, root: RootChoice, label: str = "") -> "InvariantValue":
        return cls(x, complex(x), x.level.r, root, label)

    def __abs__(self) -> float:
        return abs(self.approx)

    def to_json(self) -> dict:
        out = {"level": self.level, "root": self.root.value,
               "approx": [self.approx.real, self.approx.imag]}
        if self.exact is not None:
            out["exact"] = self.exact.to_json()
        if self.label:
            out["label"] = self.label
        return out


def _level(level: Level | int) -> Level:
    return level if isinstance(level, Level) else Level(level)


def mu(level: Level | int, root: RootChoice = RootChoice.E) -> CyclotomicNumber:
    """The normalization constant for the given root (a real number)."""
    level = _level(level)
    k = root.exponent(level)
    if k % 2 == 0:
        # A = i*zeta^j is not a primitive 4r-th root; (A^2 - A^-2)^2 only sees A/i
        k -= level.r
    return mu_exact(level.r).galois(k % level.order)


@functools.lru_cache(maxsize=None)
def chebyshev(n: int) -> tuple[int, ...]:
    """Coefficients of S_n(z): S_0 = 1, S_1 = z, S_{k+1} = z S_k - S_{k-1}."""
    if n == 0:
        return (1,)
    if n == 1:
        return (0, 1)
    a, b = chebyshev(n - 1), chebyshev(n - 2)
    out = [0] + list(a)
    for k, c in enumerate(b):
        out[k] -= c
    return tuple(out)


@functools.lru_cache(maxsize=4096)
def _cable_bracket_laurent(d: FramedLinkDiagram, copies: tuple[int, ...]):
    pd, free = cable_pd(d, copies)
    return bracket_contract(pd, free, budget=10**6)


def cable_bracket(d: FramedLinkDiagram, copies: Sequence[int], level: Level | int,
                  root: RootChoice = RootChoice.E) -> CyclotomicNumber:
    level = _level(level)
    return laurent_to_field(_cable_bracket_laurent(d, tuple(copies)), level, root)


def kauffman_bracket(d: FramedLinkDiagram, level: Level | int, root: RootChoice = RootChoice.E,
                     budget: Budget = DEFAULT_BUDGET) -> CyclotomicNumber:
    """Bracket of the diagram with the empty diagram normalized to 1."""
    budget.check(d, 1)
    return cable_bracket(d, [1] * d.n_components, level, root)


def _check_colors(level: Level, colors: Sequence[int], n: int) -> None:
    if len(colors) != n:
        raise InadmissibleError(f"need {n} colors, got {len(colors)}")
    for c in colors:
        if c < 0 or c % 2 or c > level.r - 3:
            raise InadmissibleError(f"color {c} is not an even color in 0..{level.r - 3}")


def colored_bracket(d: FramedLinkDiagram, colors: Sequence[int], level: Level | int,
                    root: RootChoice = RootChoice.E, budget: Budget = DEFAULT_BUDGET) -> CyclotomicNumber:
    level = _level(level)
    _check_colors(level, colors, d.n_components)
    budget.check(d, max(colors, default=0))
    total = CyclotomicNumber.zero(level)
    for ks in product(*[range(c + 1) for c in colors]):
        coef = 1
        for c, k in zip(colors, ks):
            coef *= chebyshev(c)[k]
        if coef:
            total = total + cable_bracket(d, ks, level, root) * coef
    return total


def unknot_weights(level: Level | int, root: RootChoice = RootChoice.E) -> tuple[CyclotomicNumber, CyclotomicNumber]:
    """W+ and W-: mu times the sum of Delta_c^2 t_c^{+-1} over even colors."""
    level = _level(level)
    sk = get_skein(level.r, root)
    m = mu(level, root)
    wp = CyclotomicNumber.zero(level)
    wm = CyclotomicNumber.zero(level)
    for c in sk.colors():
        d2 = sk.loop_value(c) ** 2
        t = sk.twist(c)
        wp = wp + d2 * t
        wm = wm + d2 / t
    wp, wm = wp * m, wm * m
    if wp.is_zero() or wm.is_zero():
        raise ArithmeticError("unknot weight vanished; the level must be a prime >= 5")
    return wp, wm


def rt_invariant(d: FramedLinkDiagram, level: Level | int, root: RootChoice = RootChoice.E,
                 budget: Budget = DEFAULT_BUDGET) -> InvariantValue:
    """I(M_d), normalized so that the empty diagram (S^3) gives mu."""
    level = _level(level)
    sk = get_skein(level.r, root)
    colors = sk.colors()
    budget.check(d, max(colors))
    m = mu(level, root)
    n = d.n_components
    writhes = d.writhes()
    # omega[i][k]: weight of the k-cable on component i after summing over colors
    omegas = []
    for i in range(n):
        tw = d.framings[i] - writhes[i]
        om = [CyclotomicNumber.zero(level) for _ in range(max(colors) + 1)]
        for c in colors:
            w = sk.loop_value(c) * sk.twist(c) ** tw
            for k, coef in enumerate(chebyshev(c)):
                if coef:
                    om[k] = om[k] + w * coef
        omegas.append(om)
    total = CyclotomicNumber.zero(level)
    for ks in product(*[range(0, max(colors) + 1, 2)] * n):
        weight = CyclotomicNumber.one(level)
        for i, k in enumerate(ks):
            weight = weight * omegas[i][k]
            if weight.is_zero():
                break
        if weight.is_zero():
            continue
        total = total + weight * cable_bracket(d, ks, level, root)
    sp, sm = d.signature_counts()
    wp, wm = unknot_weights(level, root)
    value = total * m ** (1 + n) / (wp ** sp * wm ** sm)
    return InvariantValue.from_exact(value, root, d.name)


# ---------------------------------------------------------------------------
# The Borromean mapping torus


def borromean_diagram(framings: Sequence[int] = (0, 0, 1)) -> FramedLinkDiagram:
    return borromean_link(framings)


def borromean_invariant(level: Level | int, root: RootChoice = RootChoice.E) -> InvariantValue:
    """The double sum mu (sum_k A^{-k^2-2k}[k+1]^2)(sum_j A^{-j^2-2j}) over even k, j."""
    level = _level(level)
    if not level.prime:
        raise LevelError(f"r = {level.r} is not prime")
    sk = get_skein(level.r, root)
    s1 = CyclotomicNumber.zero(level)
    s2 = CyclotomicNumber.zero(level)
    for k in sk.colors():
        ph = sk.A(-k * k - 2 * k)
        s1 = s1 + ph * sk.quantum_int(k + 1) ** 2
        s2 = s2 + ph
    return InvariantValue.from_exact(mu(level, root) * s1 * s2, root, "borromean double sum")


def borromean_closed_form(level: Level | int, root: RootChoice = RootChoice.E) -> InvariantValue:
    """(mu/2)(-A^2/(A^2-A^-2))(r - i sqrt r), defined for A = e^{2 pi i/4r}, r = 3 mod 4."""
    level = _level(level)
    if root is not RootChoice.E or level.r % 4 != 3:
        raise LevelError("the closed form is only stated for A = e^{2 pi i/4r} and r = 3 mod 4")
    sk = get_skein(level.r, root)
    a2 = sk.A(2)
    i = CyclotomicNumber.zeta(level, level.r)
    val = mu(level, root) / 2 * (-a2 / (a2 - sk.A(-2))) * (level.r - i * sqrt_r(level.r))
    return InvariantValue.from_exact(val, root, "borromean closed form")
