"""Dehn-twist representations on the SO(3) TQFT spaces V_1 and V_2.

V_g has a basis of admissible colorings of a caterpillar spine: loops
a_1..a_g, each hung from the spine by a stem edge s_i, the stems joined
along a path. For g = 2 this is the eyeglass a - c - b. Matrices stay in
the unnormalized coloring basis; "unitary" means M* G M = G for the
diagonal Gram form G.

Generator names. Genus 1: ``a`` (alias ``m``) twists along the meridian,
which bounds a disk in the handlebody and acts diagonally; ``b`` (alias
``l``) twists along the longitude. Genus 2: the Lickorish chain
``a1 b1 c b2 a2``, where a1, a2, c bound disks.
"""

from __future__ import annotations

import functools
import math
import re
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from .cyclo import CyclotomicNumber, Level, RootChoice
from .links import chain_link, unknot_unlink
from .skein import get_skein
from .surgery import InvariantValue, mu, rt_invariant, unknot_weights


class UnsupportedGenerator(ValueError):
    pass


class AlphaUndefined(ArithmeticError):
    pass


GENERATORS = {1: ("a", "b"), 2: ("a1", "b1", "c", "b2", "a2")}
ALIASES = {1: {"m": "a", "l": "b"}, 2: {}}


def _level(level: Level | int) -> Level:
    return level if isinstance(level, Level) else Level(level)


# ---------------------------------------------------------------------------
# Spine and basis


@dataclass(frozen=True)
class SpineGraph:
    """Caterpillar spine: edge names and trivalent vertices as edge-name triples."""

    genus: int

    def __post_init__(self):
        if self.genus < 1:
            raise ValueError("genus must be at least 1")

    @property
    def edges(self) -> tuple[str, ...]:
        g = self.genus
        if g == 1:
            return ("a1",)
        if g == 2:
            return ("a1", "c", "a2")
        return (tuple(f"a{i}" for i in range(1, g + 1)) + tuple(f"s{i}" for i in range(1, g + 1))
                + tuple(f"d{i}" for i in range(1, g - 2)))

    @property
    def vertices(self) -> tuple[tuple[str, str, str], ...]:
        g = self.genus
        if g == 1:
            return ()
        if g == 2:
            return (("a1", "a1", "c"), ("a2", "a2", "c"))
        loops = tuple((f"a{i}", f"a{i}", f"s{i}") for i in range(1, g + 1))
        if g == 3:
            return loops + (("s1", "s2", "s3"),)
        spine = [("s1", "s2", "d1")]
        for i in range(1, g - 3):
            spine.append((f"d{i}", f"s{i + 2}", f"d{i + 1}"))
        spine.append((f"d{g - 3}", f"s{g - 1}", f"s{g}"))
        return loops + tuple(spine)

    def betti(self) -> int:
        return len(self.edges) - len(self.vertices) + 1


@dataclass(frozen=True)
class ColoringBasis:
    level: Level
    root: RootChoice
    spine: SpineGraph
    colorings: tuple[tuple[int, ...], ...]
    norms: tuple[CyclotomicNumber, ...]

    @property
    def genus(self) -> int:
        return self.spine.genus

    @property
    def dim(self) -> int:
        return len(self.colorings)

    def index(self, coloring: Sequence[int]) -> int:
        return self.colorings.index(tuple(coloring))

    def gram(self) -> "RepMatrix":
        n = self.dim
        z = CyclotomicNumber.zero(self.level)
        rows = [[self.norms[i] if i == j else z for j in range(n)] for i in range(n)]
        return RepMatrix(self.level, self.genus, rows)


@functools.lru_cache(maxsize=None)
def basis(level: Level | int, g: int, root: RootChoice = RootChoice.E) -> ColoringBasis:
    """Admissible even colorings of the genus-g spine, vacuum first."""
    level = _level(level)
    sk = get_skein(level.r, root)
    spine = SpineGraph(g)
    names = spine.edges
    pos = {e: i for i, e in enumerate(names)}
    found = []
    for col in product(sk.colors(), repeat=len(names)):
        if all(sk.admissible(col[pos[x]], col[pos[y]], col[pos[z]]) for x, y, z in spine.vertices):
            found.append(col)
    found.sort(key=lambda c: (any(c), c))
    norms = []
    for col in found:
        if g == 1:
            # a lone loop behaves like a loop on a 0-colored stem: theta(a,a,0)/Delta_a = 1
            norms.append(sk.one())
            continue
        v = sk.one()
        for x, y, z in spine.vertices:
            v = v * sk.theta(col[pos[x]], col[pos[y]], col[pos[z]])
        for e in names:
            v = v / sk.loop_value(col[pos[e]])
        norms.append(v)
    return ColoringBasis(level, root, spine, tuple(found), tuple(norms))


def dimension_formula(r: int, g: int) -> int:
    """Verlinde-type count (r/4)^{g-1} sum_j sin(2 pi j/r)^{2-2g}, rounded."""
    total = sum(math.sin(2 * math.pi * j / r) ** (2 - 2 * g) for j in range(1, (r - 1) // 2 + 1))
    return round((r / 4) ** (g - 1) * total)


# ---------------------------------------------------------------------------
# Exact matrices


class RepMatrix:
    """Square matrix over the cyclotomic field."""

    def __init__(self, level: Level, genus: int, rows: Sequence[Sequence[CyclotomicNumber]]):
        self.level = level
        self.genus = genus
        self.rows = tuple(tuple(r) for r in rows)
        self.n = len(self.rows)
        if any(len(r) != self.n for r in self.rows):
            raise ValueError("matrix must be square")

    @classmethod
    def identity(cls, level: Level, genus: int, n: int) -> "RepMatrix":
        one, zero = CyclotomicNumber.one(level), CyclotomicNumber.zero(level)
        return cls(level, genus, [[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, level: Level, genus: int, entries: Sequence[CyclotomicNumber]) -> "RepMatrix":
        zero = CyclotomicNumber.zero(level)
        n = len(entries)
        return cls(level, genus, [[entries[i] if i == j else zero for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, RepMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"RepMatrix(n={self.n}, r={self.level.r}, g={self.genus})"

    def __matmul__(self, other: "RepMatrix") -> "RepMatrix":
        zero = CyclotomicNumber.zero(self.level)
        cols = list(zip(*other.rows))
        out = []
        for row in self.rows:
            new = []
            for col in cols:
                acc = zero
                for x, y in zip(row, col):
                    if not x.is_zero() and not y.is_zero():
                        acc = acc + x * y
                new.append(acc)
            out.append(new)
        return RepMatrix(self.level, self.genus, out)

    def scale(self, s: CyclotomicNumber) -> "RepMatrix":
        return RepMatrix(self.level, self.genus, [[x * s for x in row] for row in self.rows])

    def __pow__(self, k: int) -> "RepMatrix":
        if k < 0:
            return self.inverse() ** (-k)
        result = RepMatrix.identity(self.level, self.genus, self.n)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def star(self) -> "RepMatrix":
        """Conjugate transpose (complex conjugation is the Galois map zeta -> zeta^-1)."""
        return RepMatrix(self.level, self.genus,
                         [[self.rows[j][i].galois(-1) for j in range(self.n)] for i in range(self.n)])

    def inverse(self) -> "RepMatrix":
        n = self.n
        one, zero = CyclotomicNumber.one(self.level), CyclotomicNumber.zero(self.level)
        aug = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(self.rows)]
        for col in range(n):
            piv = next((i for i in range(col, n) if not aug[i][col].is_zero()), None)
            if piv is None:
                raise ZeroDivisionError("singular matrix")
            aug[col], aug[piv] = aug[piv], aug[col]
            inv = aug[col][col].inverse()
            aug[col] = [x * inv for x in aug[col]]
            for i in range(n):
                if i != col and not aug[i][col].is_zero():
                    f = aug[i][col]
                    aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
        return RepMatrix(self.level, self.genus, [row[n:] for row in aug])

    def scalar_value(self) -> CyclotomicNumber | None:
        """The scalar s if the matrix equals s times the identity, else None."""
        s = self.rows[0][0]
        for i in range(self.n):
            for j in range(self.n):
                if (self.rows[i][j] != s) if i == j else not self.rows[i][j].is_zero():
                    return None
        return s

    def is_unitary(self, gram: "RepMatrix") -> bool:
        return self.star() @ gram @ self == gram

    def to_numpy(self) -> np.ndarray:
        return np.array([[complex(x) for x in row] for row in self.rows], dtype=complex)


# ---------------------------------------------------------------------------
# Generators


def _genus1_s(level: Level, root: RootChoice) -> RepMatrix:
    sk = get_skein(level.r, root)
    m = mu(level, root)
    cols = sk.colors()
    rows = [[m * sk.quantum_int((a + 1) * (b + 1)) for b in cols] for a in cols]
    return RepMatrix(level, 1, rows)


def _twist_diag(level: Level, genus: int, colors: Iterable[int], root: RootChoice) -> RepMatrix:
    sk = get_skein(level.r, root)
    return RepMatrix.diagonal(level, genus, [sk.twist(c) for c in colors])


def _genus2_beta(level: Level, root: RootChoice, which: int) -> RepMatrix:
    """Twist along the longitude of handle 1 (which=0) or handle 2 (which=1).

    The twist is surgery on a -1-framed pushoff encircling the loop edge;
    the encircling color k is fused into the loop and removed by a
    tetrahedral coefficient.
    """
    sk = get_skein(level.r, root)
    B = basis(level, 2, root)
    m = mu(level, root)
    _, wm = unknot_weights(level, root)
    n = B.dim
    zero = sk.zero()
    rows = [[zero] * n for _ in range(n)]
    for j, (a, c, b) in enumerate(B.colorings):
        loop = (a, b)[which]
        for i, (a2, c2, b2) in enumerate(B.colorings):
            e = (a2, b2)[which]
            if c2 != c or (a2, b2)[1 - which] != (a, b)[1 - which]:
                continue
            acc = zero
            for k in sk.colors():
                if not sk.admissible(loop, k, e):
                    continue
                tet = sk.tet_k4(loop, k, e, loop, c, e)
                acc = acc + (m * sk.loop_value(k) / sk.twist(k) * sk.loop_value(e)
                             / sk.theta(loop, k, e) * tet / sk.theta(e, e, c))
            rows[i][j] = acc / wm
    return RepMatrix(level, 2, rows)


def _genus2_gamma(level: Level, root: RootChoice) -> RepMatrix:
    """Twist along c: diagonal in the theta-graph basis, conjugated back by recoupling."""
    sk = get_skein(level.r, root)
    B = basis(level, 2, root)
    n = B.dim
    zero = sk.zero()
    rows = [[zero] * n for _ in range(n)]
    blocks: dict[tuple[int, int], list[int]] = {}
    for idx, (a, c, b) in enumerate(B.colorings):
        blocks.setdefault((a, b), []).append(idx)
    for (a, b), idxs in blocks.items():
        zs = [z for z in sk.colors() if sk.admissible(a, b, z)]
        cs = [B.colorings[i][1] for i in idxs]
        F = RepMatrix(level, 2, [[sk.loop_value(z) * sk.tet_k4(a, b, z, c, a, b) / sk.theta(a, b, z) ** 2
                                  for c in cs] for z in zs])
        D = RepMatrix.diagonal(level, 2, [sk.twist(z) for z in zs])
        block = F.inverse() @ D @ F
        for p, i in enumerate(idxs):
            for q, j in enumerate(idxs):
                rows[i][j] = block[p, q]
    return RepMatrix(level, 2, rows)


def canonical_generator(g: int, name: str) -> str:
    if g not in GENERATORS:
        raise UnsupportedGenerator(f"twist generators are only provided for genus 1 and 2, not {g}")
    name = ALIASES[g].get(name, name)
    if name not in GENERATORS[g]:
        raise UnsupportedGenerator(
            f"unknown generator '{name}' for genus {g}; expected one of {', '.join(GENERATORS[g])}")
    return name


@functools.lru_cache(maxsize=None)
def twist_matrix(level: Level | int, g: int, generator: str, root: RootChoice = RootChoice.E) -> RepMatrix:
    level = _level(level)
    name = canonical_generator(g, generator)
    B = basis(level, g, root)
    if g == 1:
        T = _twist_diag(level, 1, [c for (c,) in B.colorings], root)
        if name == "a":
            return T
        S = _genus1_s(level, root)
        return S @ T @ S.inverse()
    if name == "a1":
        return _twist_diag(level, 2, [a for a, _, _ in B.colorings], root)
    if name == "a2":
        return _twist_diag(level, 2, [b for _, _, b in B.colorings], root)
    if name == "b1":
        return _genus2_beta(level, root, 0)
    if name == "b2":
        return _genus2_beta(level, root, 1)
    return _genus2_gamma(level, root)


def s_matrix(level: Level | int, root: RootChoice = RootChoice.E) -> RepMatrix:
    return _genus1_s(_level(level), root)


# ---------------------------------------------------------------------------
# Words


@dataclass(frozen=True)
class TwistWord:
    genus: int
    letters: tuple[tuple[str, int], ...]

    _TOKEN = re.compile(r"^([A-Za-z][A-Za-z0-9]*)(?:\^\{?(-?\d+)\}?)?$")

    def __post_init__(self):
        letters = tuple((canonical_generator(self.genus, g), int(e)) for g, e in self.letters)
        object.__setattr__(self, "letters", letters)

    @classmethod
    def parse(cls, text: str, genus: int) -> "TwistWord":
        """Whitespace-separated tokens such as ``a^3 b^-1``; ``1`` or empty is the identity."""
        letters = []
        for tok in text.split():
            if tok == "1":
                continue
            m = cls._TOKEN.match(tok)
            if not m:
                raise UnsupportedGenerator(f"cannot parse token '{tok}'")
            letters.append((m.group(1), int(m.group(2)) if m.group(2) else 1))
        return cls(genus, tuple(letters))

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(g if e == 1 else f"{g}^{e}" for g, e in self.letters)

    def __mul__(self, other: "TwistWord") -> "TwistWord":
        if other.genus != self.genus:
            raise ValueError("cannot concatenate words of different genus")
        return TwistWord(self.genus, self.letters + other.letters)

    def inverse(self) -> "TwistWord":
        return TwistWord(self.genus, tuple((g, -e) for g, e in reversed(self.letters)))

    def reduced(self) -> "TwistWord":
        out: list[list] = []
        for g, e in self.letters:
            if out and out[-1][0] == g:
                out[-1][1] += e
            else:
                out.append([g, e])
            if out and out[-1][1] == 0:
                out.pop()
        return TwistWord(self.genus, tuple((g, e) for g, e in out))


def _word(w: TwistWord | str, g: int) -> TwistWord:
    if isinstance(w, str):
        return TwistWord.parse(w, g)
    if w.genus != g:
        raise ValueError(f"word has genus {w.genus}, expected {g}")
    return w


def rep_word(level: Level | int, g: int, w: TwistWord | str, root: RootChoice = RootChoice.E) -> RepMatrix:
    """Matrix of the word; letters act left to right as matrix factors in order."""
    level = _level(level)
    w = _word(w, g)
    B = basis(level, g, root)
    M = RepMatrix.identity(level, g, B.dim)
    for name, e in w.letters:
        M = M @ (twist_matrix(level, g, name, root) ** e)
    return M


def entry_11(level: Level | int, g: int, w: TwistWord | str, root: RootChoice = RootChoice.E) -> CyclotomicNumber:
    return rep_word(level, g, w, root)[0, 0]


def mapping_cylinder_invariant(level: Level | int, g: int, w: TwistWord | str,
                               root: RootChoice = RootChoice.E) -> InvariantValue:
    """mu^{1-g} times the vacuum entry; correct up to the framing phase alpha."""
    level = _level(level)
    val = mu(level, root) ** (1 - g) * entry_11(level, g, w, root)
    return InvariantValue.from_exact(val, root, f"mapping cylinder [{w}]")


def surgery_presentation(w: TwistWord | str, g: int = 1):
    """Framed link presenting M_w: chain link for genus-1 words, an unlink for the identity."""
    w = _word(w, g).reduced()
    if not w.letters:
        return unknot_unlink(g)
    if g != 1:
        raise UnsupportedGenerator("surgery presentations are only built for genus-1 words")
    # m^{a0} l^{b1} m^{a1} ... l^{bk} m^{ak}  ->  chain with framings b1, a1, b2, ..., bk
    framings: list[int] = []
    pending_a = None
    for name, e in w.letters:
        if name == "a":
            if framings:
                pending_a = e
        else:
            if framings:
                framings.append(pending_a or 0)
            framings.append(e)
            pending_a = None
    if not framings:
        return unknot_unlink(1)
    return chain_link(framings, name=f"chain{tuple(framings)}")


def extract_alpha(level: Level | int, w: TwistWord | str, g: int = 1,
                  root: RootChoice = RootChoice.E) -> CyclotomicNumber:
    """alpha = I(M_w) / (mu^{1-g} entry_11(w)), checked to be a 4r-th root of unity."""
    level = _level(level)
    w = _word(w, g)
    link = surgery_presentation(w, g)
    denom = mapping_cylinder_invariant(level, g, w, root).exact
    if denom.is_zero():
        raise AlphaUndefined(f"vacuum entry of [{w}] vanishes; alpha is undefined")
    alpha = rt_invariant(link, level, root).exact / denom
    if alpha ** level.order != 1:
        raise AssertionError(f"alpha for [{w}] is not a {level.order}-th root of unity")
    return alpha


def projectivity_scalar(level: Level | int, root: RootChoice = RootChoice.E) -> CyclotomicNumber | None:
    """(T_a T_b)^3 at genus 1; returns the scalar if it is one, else None."""
    level = _level(level)
    M = (twist_matrix(level, 1, "a", root) @ twist_matrix(level, 1, "b", root)) ** 3
    return M.scalar_value()


def orthonormal(M: RepMatrix, B: ColoringBasis) -> np.ndarray:
    """Float matrix in the G-orthonormal basis: G^{1/2} M G^{-1/2}."""
    g = np.array([complex(x).real for x in B.norms])
    if np.any(g <= 0):
        raise ValueError("Gram form is not positive definite at this root")
    s = np.sqrt(g)
    return (s[:, None] * M.to_numpy()) / s[None, :]
