"""Exact arithmetic in the cyclotomic field Q(zeta_{4r}).

Elements are stored as integer coefficient vectors over the power basis
1, z, ..., z^{d-1} (d = phi(4r)) together with a positive common
denominator, reduced modulo the 4r-th cyclotomic polynomial.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import mpmath
import sympy


class LevelError(ValueError):
    pass


def is_prime(n: int) -> bool:
    return n >= 2 and sympy.isprime(n)


@dataclass(frozen=True)
class Level:
    """The odd level r >= 3 of the SO(3) theory."""

    r: int
    prime: bool = field(init=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.r, int) or self.r < 3 or self.r % 2 == 0:
            raise LevelError(f"level must be an odd integer >= 3, got {self.r!r}")
        object.__setattr__(self, "prime", is_prime(self.r))

    @property
    def order(self) -> int:
        """4r, the order of the root of unity zeta."""
        return 4 * self.r

    @property
    def degree(self) -> int:
        return _field_data(self.r).degree

    def require_density_hypotheses(self) -> None:
        if not self.prime or self.r < 5:
            raise LevelError(
                f"r={self.r}: density results need r prime and r >= 5")


class _FieldData:
    """Reduction tables for Q(zeta_n), n = 4r."""

    def __init__(self, r: int):
        n = 4 * r
        x = sympy.Symbol("x")
        poly = sympy.Poly(sympy.cyclotomic_poly(n, x), x)
        coeffs = [int(c) for c in reversed(poly.all_coeffs())]  # low to high
        d = len(coeffs) - 1
        self.n = n
        self.degree = d
        self.units = [k for k in range(1, n) if math.gcd(k, n) == 1]
        # table[j] = reduction of z^j, 0 <= j < 2d - 1, plus z^j for j < n
        top = max(2 * d - 1, n)
        table: list[tuple[int, ...]] = []
        cur = [0] * d
        cur[0] = 1
        for j in range(top):
            table.append(tuple(cur))
            # multiply cur by z
            carry = cur[-1]
            nxt = [0] + cur[:-1]
            if carry:
                for i in range(d):
                    nxt[i] -= carry * coeffs[i]
            cur = nxt
        self.table = table

    def power(self, k: int) -> tuple[int, ...]:
        return self.table[k % self.n]


@lru_cache(maxsize=None)
def _field_data(r: int) -> _FieldData:
    return _FieldData(r)


def _normalize(num: Sequence[int], den: int) -> tuple[tuple[int, ...], int]:
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    if den < 0:
        num = [-c for c in num]
        den = -den
    g = den
    for c in num:
        if g == 1:
            break
        g = math.gcd(g, c)
    if g > 1:
        num = [c // g for c in num]
        den //= g
    return tuple(num), den


class CyclotomicNumber:
    """Immutable element of Q(zeta_{4r})."""

    __slots__ = ("level", "num", "den", "_hash")

    def __init__(self, level: Level | int, num: Iterable[int], den: int = 1):
        if isinstance(level, int):
            level = Level(level)
        num = tuple(num)
        d = level.degree
        if len(num) != d:
            raise ValueError(f"expected {d} coefficients, got {len(num)}")
        self.level = level
        self.num, self.den = _normalize(num, den)
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, level: Level) -> "CyclotomicNumber":
        return cls(level, (0,) * level.degree)

    @classmethod
    def from_rational(cls, level: Level, q) -> "CyclotomicNumber":
        q = Fraction(q)
        num = [0] * level.degree
        num[0] = q.numerator
        return cls(level, num, q.denominator)

    @classmethod
    def one(cls, level: Level) -> "CyclotomicNumber":
        return cls.from_rational(level, 1)

    @classmethod
    def zeta(cls, level: Level, k: int = 1) -> "CyclotomicNumber":
        """zeta^k with zeta = exp(2 pi i / 4r)."""
        return cls(level, _field_data(level.r).power(k))

    @classmethod
    def from_exponents(cls, level: Level, terms: dict[int, int]) -> "CyclotomicNumber":
        """Sum of c * zeta^e over a dict {e: c} of integer coefficients."""
        data = _field_data(level.r)
        acc = [0] * level.degree
        for e, c in terms.items():
            if c:
                for i, v in enumerate(data.power(e)):
                    if v:
                        acc[i] += c * v
        return cls(level, acc)

    @classmethod
    def from_fractions(cls, level: Level, coeffs: Sequence) -> "CyclotomicNumber":
        fr = [Fraction(c) for c in coeffs]
        den = 1
        for f in fr:
            den = den * f.denominator // math.gcd(den, f.denominator)
        return cls(level, [int(f * den) for f in fr], den)

    # -- basic protocol -----------------------------------------------
    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, CyclotomicNumber):
            return self.level == other.level and self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self == CyclotomicNumber.from_rational(self.level, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.level.r, self.num, self.den))
        return self._hash

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}*z^{i}" if i else f"{c}")
        body = " + ".join(terms) if terms else "0"
        return f"Cyclo(r={self.level.r}: {body})"

    def _coerce(self, other) -> "CyclotomicNumber":
        if isinstance(other, CyclotomicNumber):
            if other.level != self.level:
                raise LevelError(f"level mismatch: r={self.level.r} vs r={other.level.r}")
            return other
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber.from_rational(self.level, other)
        raise TypeError(f"cannot combine CyclotomicNumber with {type(other).__name__}")

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        if self.den == o.den:
            return CyclotomicNumber(self.level, [a + b for a, b in zip(self.num, o.num)], self.den)
        return CyclotomicNumber(
            self.level,
            [a * o.den + b * self.den for a, b in zip(self.num, o.num)],
            self.den * o.den,
        )

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.level, [-a for a in self.num], self.den)

    def __sub__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return CyclotomicNumber(self.level, [a * q.numerator for a in self.num],
                                    self.den * q.denominator)
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        d = self.level.degree
        table = _field_data(self.level.r).table
        conv = [0] * (2 * d - 1)
        for i, a in enumerate(self.num):
            if a:
                for j, b in enumerate(o.num):
                    if b:
                        conv[i + j] += a * b
        out = list(conv[:d])
        for j in range(d, 2 * d - 1):
            c = conv[j]
            if c:
                for i, v in enumerate(table[j]):
                    if v:
                        out[i] += c * v
        return CyclotomicNumber(self.level, out, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicNumber":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        return _inverse(self)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        o = self._coerce(other)
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = CyclotomicNumber.one(self.level)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- Galois action and embedding --------------------------------------
    def galois(self, k: int) -> "CyclotomicNumber":
        """Image under the automorphism zeta -> zeta^k."""
        n = self.level.order
        if math.gcd(k, n) != 1:
            raise ValueError(f"galois exponent {k} is not coprime to {n}")
        data = _field_data(self.level.r)
        acc = [0] * self.level.degree
        for j, c in enumerate(self.num):
            if c:
                for i, v in enumerate(data.power(j * k)):
                    if v:
                        acc[i] += c * v
        return CyclotomicNumber(self.level, acc, self.den)

    def conj(self) -> "CyclotomicNumber":
        return self.galois(-1)

    def eval_embed(self, precision: int = 128) -> mpmath.mpc:
        """Value under zeta -> exp(2 pi i/4r), computed with `precision` bits."""
        if precision < 64:
            raise ValueError("precision must be at least 64 bits")
        with mpmath.workprec(precision + 16):
            z = mpmath.expjpi(mpmath.mpf(2) / self.level.order)
            acc = mpmath.mpc(0)
            p = mpmath.mpc(1)
            for c in self.num:
                if c:
                    acc += c * p
                p *= z
            val = acc / self.den
        with mpmath.workprec(precision):
            return +val

    def __complex__(self):
        pw = _float_powers(self.level.r)
        acc = 0j
        for c, p in zip(self.num, pw):
            if c:
                acc += c * p
        return acc / self.den

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return Fraction(self.num[0], self.den)

    def to_json(self) -> dict:
        return {"r": self.level.r, "num": [str(c) for c in self.num], "den": str(self.den)}

    @classmethod
    def from_json(cls, data: dict) -> "CyclotomicNumber":
        return cls(Level(int(data["r"])), [int(c) for c in data["num"]], int(data["den"]))


@lru_cache(maxsize=None)
def _float_powers(r: int) -> tuple[complex, ...]:
    n = 4 * r
    d = _field_data(r).degree
    return tuple(complex(mpmath.expjpi(mpmath.mpf(2 * j) / n)) for j in range(d))


def _inverse(x: CyclotomicNumber) -> CyclotomicNumber:
    # Solve (multiplication-by-x matrix) * y = e_0 over Q.
    level = x.level
    d = level.degree
    cols = []
    for j in range(d):
        col = x * CyclotomicNumber.zeta(level, j)
        cols.append([Fraction(c, col.den) for c in col.num])
    # augmented rows: M[i][j] = cols[j][i]
    m = [[cols[j][i] for j in range(d)] + [Fraction(int(i == 0))] for i in range(d)]
    for c in range(d):
        piv = next(i for i in range(c, d) if m[i][c] != 0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
        inv = 1 / m[c][c]
        row = [v * inv for v in m[c]]
        m[c] = row
        for i in range(d):
            if i != c and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], row)]
    return CyclotomicNumber.from_fractions(level, [m[i][d] for i in range(d)])


# ---------------------------------------------------------------------------
# The eight admissible roots A


class RootChoice(enum.Enum):
    """A in {+-e^{+-2pi i/4r}, +-i e^{+-2pi i/4r}}, as a power of zeta."""

    E = "e"
    NEG_E = "-e"
    IE = "ie"
    NEG_IE = "-ie"
    E_INV = "e-inv"
    NEG_E_INV = "-e-inv"
    IE_INV = "ie-inv"
    NEG_IE_INV = "-ie-inv"

    def exponent(self, level: Level) -> int:
        """k with A = zeta^k (note i = zeta^r and -1 = zeta^{2r})."""
        r = level.r
        base = {
            "e": 1, "-e": 2 * r + 1, "ie": r + 1, "-ie": 3 * r + 1,
            "e-inv": -1, "-e-inv": 2 * r - 1, "ie-inv": r - 1, "-ie-inv": 3 * r - 1,
        }[self.value]
        return base % (4 * r)

    def element(self, level: Level) -> CyclotomicNumber:
        return CyclotomicNumber.zeta(level, self.exponent(level))

    @classmethod
    def parse(cls, name: str) -> "RootChoice":
        for rc in cls:
            if rc.value == name:
                return rc
        raise ValueError(f"unknown root {name!r}; choose from {[rc.value for rc in cls]}")


def A_power(level: Level, root: RootChoice, k: int) -> CyclotomicNumber:
    return CyclotomicNumber.zeta(level, root.exponent(level) * k)


@lru_cache(maxsize=None)
def gauss_sum(r: int) -> CyclotomicNumber:
    """sum_{n=0}^{r-1} zeta_r^{n^2} with zeta_r = zeta^4."""
    level = Level(r)
    terms: dict[int, int] = {}
    for n in range(r):
        e = (4 * n * n) % (4 * r)
        terms[e] = terms.get(e, 0) + 1
    return CyclotomicNumber.from_exponents(level, terms)


@lru_cache(maxsize=None)
def sqrt_r(r: int) -> CyclotomicNumber:
    """The element equal to +sqrt(r) under the standard embedding.

    Built from the quadratic Gauss sum, which is sqrt(r) for r = 1 mod 4
    and i*sqrt(r) for r = 3 mod 4. Only valid for squarefree r.
    """
    level = Level(r)
    g = gauss_sum(r)
    if r % 4 == 3:
        g = g * CyclotomicNumber.zeta(level, -r)  # divide by i
    val = complex(g)
    if abs(val.imag) > 1e-9 or abs(val.real - math.sqrt(r)) > 1e-9:
        raise LevelError(f"Gauss sum does not give +sqrt({r}); is r squarefree?")
    return g


@lru_cache(maxsize=None)
def mu_exact(r: int) -> CyclotomicNumber:
    """mu = 2 sin(pi/r)/sqrt(r), the value of the invariant on S^3."""
    level = Level(r)
    z = CyclotomicNumber.zeta
    # -i (z^2 - z^-2) = 2 sin(pi/r)
    two_sin = z(level, -r) * (z(level, 2) - z(level, -2))
    mu = two_sin / sqrt_r(r)
    val = complex(mu)
    if not (abs(val.imag) < 1e-12 and val.real > 0):
        raise ArithmeticError("mu failed its positivity check")
    return mu
