"""Temperley-Lieb calculus and the trivalent-network evaluations built on it.

A planar TL diagram from ``nb`` bottom points to ``nt`` top points is a
non-crossing perfect matching. Bottom points are numbered 0..nb-1 and top
points nb..nb+nt-1, both left to right. Closed loops are never stored:
they are resolved into factors of delta = -A^2 - A^-2 on composition.

Closed formulas for theta and tetrahedral nets follow Kauffman-Lins; the
``*_oracle`` functions evaluate the same nets by brute-force diagram
composition and are kept for cross-checking.
"""

from __future__ import annotations

import threading
from functools import lru_cache
from typing import Iterator

from .cyclo import A_power, CyclotomicNumber, Level, RootChoice


class InadmissibleError(ValueError):
    pass


class StrandMismatchError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Diagrams


class TLDiagram:
    __slots__ = ("nb", "nt", "pairing")

    def __init__(self, nb: int, nt: int, pairing: tuple[int, ...]):
        if len(pairing) != nb + nt:
            raise ValueError("pairing has the wrong length")
        self.nb, self.nt, self.pairing = nb, nt, tuple(pairing)

    def __eq__(self, other):
        return isinstance(other, TLDiagram) and (self.nb, self.nt, self.pairing) == (
            other.nb, other.nt, other.pairing)

    def __hash__(self):
        return hash((self.nb, self.nt, self.pairing))

    def __repr__(self):
        return f"TLDiagram({self.nb}->{self.nt}, {self.pairing})"

    def is_planar(self) -> bool:
        # Walk the boundary circle: bottom left-to-right, then top right-to-left.
        order = list(range(self.nb)) + list(range(self.nb + self.nt - 1, self.nb - 1, -1))
        pos = {p: i for i, p in enumerate(order)}
        chords = {tuple(sorted((pos[p], pos[q]))) for p, q in enumerate(self.pairing)}
        for a, b in chords:
            for c, d in chords:
                if a < c < b < d:
                    return False
        return True

    @classmethod
    def identity(cls, n: int) -> "TLDiagram":
        return cls(n, n, tuple(list(range(n, 2 * n)) + list(range(n))))

    def tensor(self, other: "TLDiagram") -> "TLDiagram":
        nb, nt = self.nb + other.nb, self.nt + other.nt

        def remap_self(p):
            return p if p < self.nb else p - self.nb + nb

        def remap_other(p):
            return p + self.nb if p < other.nb else p - other.nb + nb + self.nt

        pairing = [0] * (nb + nt)
        for p, q in enumerate(self.pairing):
            pairing[remap_self(p)] = remap_self(q)
        for p, q in enumerate(other.pairing):
            pairing[remap_other(p)] = remap_other(q)
        return TLDiagram(nb, nt, tuple(pairing))

    def flip(self) -> "TLDiagram":
        """Reflect top and bottom."""
        def m(p):
            return p + self.nt if p < self.nb else p - self.nb
        pairing = [0] * (self.nb + self.nt)
        for p, q in enumerate(self.pairing):
            pairing[m(p)] = m(q)
        return TLDiagram(self.nt, self.nb, tuple(pairing))


def compose_diagrams(y: TLDiagram, x: TLDiagram) -> tuple[TLDiagram, int]:
    """y o x (x below y). Returns the diagram and the number of closed loops."""
    if x.nt != y.nb:
        raise StrandMismatchError(f"cannot stack {x.nt} strands under {y.nb}")
    a, b, c = x.nb, x.nt, y.nt
    # global ids: 0..a-1 bottom, a..a+b-1 middle, a+b..a+b+c-1 top
    xadj = dict(enumerate(x.pairing))
    yadj = {a + p: a + q for p, q in enumerate(y.pairing)}
    n_out = a + c
    pairing = [-1] * n_out

    def outer_index(g):
        return g if g < a else g - b

    visited = set()
    for start in list(range(a)) + list(range(a + b, a + b + c)):
        if start in visited:
            continue
        visited.add(start)
        cur = start
        use_x = start < a
        while True:
            nxt = xadj[cur] if use_x else yadj[cur]
            visited.add(nxt)
            if nxt < a or nxt >= a + b:
                break
            cur = nxt
            use_x = not use_x
        i, j = outer_index(start), outer_index(nxt)
        pairing[i], pairing[j] = j, i
    loops = 0
    for m in range(a, a + b):
        if m in visited:
            continue
        loops += 1
        cur, use_x = m, True
        while True:
            visited.add(cur)
            cur = xadj[cur] if use_x else yadj[cur]
            use_x = not use_x
            if cur == m:
                break
    return TLDiagram(a, c, tuple(pairing)), loops


def trace_loops(x: TLDiagram) -> int:
    """Number of loops in the trace closure (bottom i joined to top i)."""
    if x.nb != x.nt:
        raise StrandMismatchError("trace needs an endomorphism")
    n = x.nb
    seen = [False] * (2 * n)
    loops = 0
    for s in range(2 * n):
        if seen[s]:
            continue
        loops += 1
        cur = s
        while not seen[cur]:
            seen[cur] = True
            other = x.pairing[cur]
            seen[other] = True
            cur = other + n if other < n else other - n
    return loops


# ---------------------------------------------------------------------------
# Skein context: quantum integers and friends at a fixed (r, A)


class Skein:
    """Kauffman-bracket skein constants at level r and root A."""

    def __init__(self, level: Level, root: RootChoice = RootChoice.E):
        self.level = level
        self.root = root
        self._jw: dict[int, "TLMorphism"] = {}
        self._jw_lock = threading.Lock()
        self._cache: dict = {}

    def __repr__(self):
        return f"Skein(r={self.level.r}, A={self.root.value})"

    # small exact constants -------------------------------------------------
    def A(self, k: int = 1) -> CyclotomicNumber:
        return A_power(self.level, self.root, k)

    @property
    def delta(self) -> CyclotomicNumber:
        return -(self.A(2) + self.A(-2))

    def one(self) -> CyclotomicNumber:
        return CyclotomicNumber.one(self.level)

    def zero(self) -> CyclotomicNumber:
        return CyclotomicNumber.zero(self.level)

    def _memo(self, key, fn):
        try:
            return self._cache[key]
        except KeyError:
            val = self._cache[key] = fn()
            return val

    def quantum_int(self, n: int) -> CyclotomicNumber:
        """[n] = (A^2n - A^-2n)/(A^2 - A^-2), expanded as a Laurent sum."""
        def build():
            if n < 0:
                return -self.quantum_int(-n)
            a = self.root.exponent(self.level)
            terms: dict[int, int] = {}
            for j in range(n):
                e = a * (2 * (n - 1) - 4 * j)
                terms[e] = terms.get(e, 0) + 1
            return CyclotomicNumber.from_exponents(self.level, terms)
        return self._memo(("qint", n), build)

    def quantum_factorial(self, n: int) -> CyclotomicNumber:
        def build():
            acc = self.one()
            for k in range(2, n + 1):
                acc = acc * self.quantum_int(k)
            return acc
        return self._memo(("qfact", n), build)

    def loop_value(self, n: int) -> CyclotomicNumber:
        """Delta_n = (-1)^n [n+1], closed form."""
        self._check_color_range(n)
        v = self.quantum_int(n + 1)
        return -v if n % 2 else v

    def twist(self, c: int) -> CyclotomicNumber:
        """Eigenvalue of a positive full twist on color c: (-1)^c A^{c^2+2c}."""
        v = self.A(c * c + 2 * c)
        return -v if c % 2 else v

    def colors(self) -> list[int]:
        """SO(3) colors: even integers 0..r-3."""
        return list(range(0, self.level.r - 2, 2))

    def _check_color_range(self, n: int):
        if not 0 <= n <= self.level.r - 2:
            raise InadmissibleError(f"color {n} outside 0..{self.level.r - 2}")

    def admissible(self, a: int, b: int, c: int, even: bool = True) -> bool:
        if min(a, b, c) < 0:
            return False
        if even and (a % 2 or b % 2 or c % 2):
            return False
        if (a + b + c) % 2:
            return False
        return abs(a - b) <= c <= a + b and a + b + c <= 2 * self.level.r - 4

    def _require(self, a, b, c, even=True):
        if not self.admissible(a, b, c, even):
            raise InadmissibleError(f"triple ({a},{b},{c}) is not admissible at r={self.level.r}")

    # closed forms ------------------------------------------------------------
    def theta(self, a: int, b: int, c: int, even: bool = True) -> CyclotomicNumber:
        self._require(a, b, c, even)
        key = ("theta",) + tuple(sorted((a, b, c)))

        def build():
            m, n, p = (a + b - c) // 2, (b + c - a) // 2, (a + c - b) // 2
            qf = self.quantum_factorial
            num = qf(m + n + p + 1) * qf(m) * qf(n) * qf(p)
            den = qf(m + n) * qf(n + p) * qf(m + p)
            val = num / den
            return -val if (m + n + p) % 2 else val
        return self._memo(key, build)

    def tet_k4(self, e01, e02, e03, e12, e13, e23, even: bool = True) -> CyclotomicNumber:
        """Tetrahedral net with edge e_ij joining vertices i and j."""
        edges = {(0, 1): e01, (0, 2): e02, (0, 3): e03, (1, 2): e12, (1, 3): e13, (2, 3): e23}
        verts = []
        for v in range(4):
            tri = [edges[tuple(sorted((v, w)))] for w in range(4) if w != v]
            self._require(*tri, even=even)
            verts.append(sum(tri) // 2)
        total = sum(edges.values())
        pairs = [((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))]
        bs = [(total - edges[p] - edges[q]) // 2 for p, q in pairs]
        key = ("tet", tuple(sorted(verts)), tuple(sorted(bs)), tuple(sorted(edges.values())))

        def build():
            qf = self.quantum_factorial
            inner = self.one()
            for b in bs:
                for a in verts:
                    inner = inner * qf(b - a)
            ext = self.one()
            for e in edges.values():
                ext = ext * qf(e)
            acc = self.zero()
            for s in range(max(verts), min(bs) + 1):
                term = qf(s + 1)
                if term.is_zero():
                    continue
                den = self.one()
                for a in verts:
                    den = den * qf(s - a)
                for b in bs:
                    den = den * qf(b - s)
                term = term / den
                acc = acc - term if s % 2 else acc + term
            return acc * inner / ext
        return self._memo(key, build)

    def tet(self, a, b, e, c, d, f, even: bool = True) -> CyclotomicNumber:
        """Kauffman-Lins Tet[a b e; c d f]: vertex triples (a,d,e), (b,c,e), (a,b,f), (c,d,f)."""
        # vertices P=(a,d,e) Q=(b,c,e) R=(a,b,f) S=(c,d,f) -> 0,1,2,3
        return self.tet_k4(e, a, d, b, c, f, even=even)

    def six_j(self, a, b, i, c, d, j, even: bool = True) -> CyclotomicNumber:
        """Recoupling coefficient {a b i; c d j} = Tet[a b i; c d j] Delta_i / (theta(a,d,i) theta(b,c,i))."""
        return (self.tet(a, b, i, c, d, j, even=even) * self.loop_value_any(i)
                / (self.theta(a, d, i, even) * self.theta(b, c, i, even)))

    def loop_value_any(self, n: int) -> CyclotomicNumber:
        v = self.quantum_int(n + 1)
        return -v if n % 2 else v

    # Jones-Wenzl -------------------------------------------------------------
    def jones_wenzl(self, n: int) -> "TLMorphism":
        if not 0 <= n <= self.level.r - 2:
            raise InadmissibleError(f"Jones-Wenzl f_{n} undefined at r={self.level.r} (need n <= r-2)")
        cached = self._jw.get(n)
        if cached is not None:
            return cached
        with self._jw_lock:
            if n in self._jw:
                return self._jw[n]
            if n <= 1:
                f = TLMorphism.identity(self, n)
            else:
                prev = self.jones_wenzl(n - 1)
                ext = prev.tensor(TLMorphism.identity(self, 1))
                coef = self.loop_value_any(n - 2) / self.loop_value_any(n - 1)
                e = TLMorphism.e(self, n, n - 2)
                f = ext - ext.compose(e).compose(ext) * coef
            self._jw[n] = f
            return f


@lru_cache(maxsize=None)
def get_skein(r: int, root: RootChoice = RootChoice.E) -> Skein:
    return Skein(Level(r), root)


# ---------------------------------------------------------------------------
# Morphisms


class TLMorphism:
    """Formal linear combination of loop-free TL diagrams nb -> nt."""

    __slots__ = ("skein", "nb", "nt", "terms")

    def __init__(self, skein: Skein, nb: int, nt: int, terms: dict[TLDiagram, CyclotomicNumber]):
        self.skein, self.nb, self.nt = skein, nb, nt
        self.terms = {d: c for d, c in terms.items() if not c.is_zero()}

    @classmethod
    def from_diagram(cls, skein: Skein, d: TLDiagram) -> "TLMorphism":
        return cls(skein, d.nb, d.nt, {d: skein.one()})

    @classmethod
    def identity(cls, skein: Skein, n: int) -> "TLMorphism":
        return cls.from_diagram(skein, TLDiagram.identity(n))

    @classmethod
    def e(cls, skein: Skein, n: int, i: int) -> "TLMorphism":
        """Cap-cup generator on strands i, i+1 (0-indexed) of n."""
        if not 0 <= i < n - 1:
            raise ValueError(f"e_{i} undefined on {n} strands")
        pairing = list(range(n, 2 * n)) + list(range(n))
        pairing[i], pairing[i + 1] = i + 1, i
        pairing[n + i], pairing[n + i + 1] = n + i + 1, n + i
        return cls.from_diagram(skein, TLDiagram(n, n, tuple(pairing)))

    def __repr__(self):
        return f"TLMorphism({self.nb}->{self.nt}, {len(self.terms)} terms)"

    def __eq__(self, other):
        return (isinstance(other, TLMorphism) and self.nb == other.nb and self.nt == other.nt
                and self.terms == other.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def _same_shape(self, other):
        if (self.nb, self.nt) != (other.nb, other.nt):
            raise StrandMismatchError(f"shape {self.nb}->{self.nt} vs {other.nb}->{other.nt}")

    def __add__(self, other: "TLMorphism") -> "TLMorphism":
        self._same_shape(other)
        out = dict(self.terms)
        for d, c in other.terms.items():
            out[d] = out[d] + c if d in out else c
        return TLMorphism(self.skein, self.nb, self.nt, out)

    def __neg__(self):
        return TLMorphism(self.skein, self.nb, self.nt, {d: -c for d, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        return TLMorphism(self.skein, self.nb, self.nt, {d: c * scalar for d, c in self.terms.items()})

    __rmul__ = __mul__

    def compose(self, other: "TLMorphism") -> "TLMorphism":
        """self o other: other is applied first (sits below)."""
        if other.nt != self.nb:
            raise StrandMismatchError(f"cannot compose {other.nt} strands into {self.nb}")
        delta = self.skein.delta
        dpow = [self.skein.one()]
        out: dict[TLDiagram, CyclotomicNumber] = {}
        for dy, cy in self.terms.items():
            for dx, cx in other.terms.items():
                d, loops = compose_diagrams(dy, dx)
                while len(dpow) <= loops:
                    dpow.append(dpow[-1] * delta)
                c = cy * cx
                if loops:
                    c = c * dpow[loops]
                out[d] = out[d] + c if d in out else c
        return TLMorphism(self.skein, other.nb, self.nt, out)

    def tensor(self, other: "TLMorphism") -> "TLMorphism":
        out: dict[TLDiagram, CyclotomicNumber] = {}
        for d1, c1 in self.terms.items():
            for d2, c2 in other.terms.items():
                d = d1.tensor(d2)
                c = c1 * c2
                out[d] = out[d] + c if d in out else c
        return TLMorphism(self.skein, self.nb + other.nb, self.nt + other.nt, out)

    def flip(self) -> "TLMorphism":
        return TLMorphism(self.skein, self.nt, self.nb, {d.flip(): c for d, c in self.terms.items()})

    def trace(self) -> CyclotomicNumber:
        delta = self.skein.delta
        acc = self.skein.zero()
        for d, c in self.terms.items():
            acc = acc + c * delta ** trace_loops(d)
        return acc

    def coefficient(self, d: TLDiagram) -> CyclotomicNumber:
        return self.terms.get(d, self.skein.zero())


def tl_compose(x: TLMorphism, y: TLMorphism) -> TLMorphism:
    """x o y, i.e. y first."""
    return x.compose(y)


def planar_matchings(n: int) -> Iterator[TLDiagram]:
    """All TL_n basis diagrams (n -> n)."""
    order = list(range(n)) + list(range(2 * n - 1, n - 1, -1))

    def rec(points):
        if not points:
            yield {}
            return
        first = points[0]
        for k in range(1, len(points), 2):
            inside, outside = points[1:k], points[k + 1:]
            for m1 in rec(inside):
                for m2 in rec(outside):
                    m = {first: points[k], points[k]: first}
                    m.update(m1)
                    m.update(m2)
                    yield m

    for m in rec(order):
        yield TLDiagram(n, n, tuple(m[p] for p in range(2 * n)))


# ---------------------------------------------------------------------------
# Trivalent vertices as TL morphisms and brute-force net evaluation


def split_vertex(skein: Skein, z: int, x: int, y: int) -> TLMorphism:
    """Vertex z -> x (x) y with projectors on all three legs."""
    if not skein.admissible(x, y, z, even=False):
        raise InadmissibleError(f"triple ({x},{y},{z}) is not admissible")
    i = (x + y - z) // 2
    j = (x + z - y) // 2
    nb, nt = z, x + y
    pairing = [0] * (nb + nt)
    for s in range(j):  # bottom-left to x side
        pairing[s], pairing[nb + s] = nb + s, s
    for s in range(z - j):  # bottom-right to y side
        b, t = j + s, nb + x + i + s
        pairing[b], pairing[t] = t, b
    for s in range(i):  # cups between x and y
        p, q = nb + x - 1 - s, nb + x + s
        pairing[p], pairing[q] = q, p
    core = TLMorphism.from_diagram(skein, TLDiagram(nb, nt, tuple(pairing)))
    top = skein.jones_wenzl(x).tensor(skein.jones_wenzl(y))
    return top.compose(core).compose(skein.jones_wenzl(z))


def merge_vertex(skein: Skein, x: int, y: int, z: int) -> TLMorphism:
    return split_vertex(skein, z, x, y).flip()


def theta_oracle(skein: Skein, a: int, b: int, c: int) -> CyclotomicNumber:
    return merge_vertex(skein, a, b, c).compose(split_vertex(skein, c, a, b)).trace()


def tet_oracle(skein: Skein, a, b, c, d, e, f) -> CyclotomicNumber:
    """Net with vertices (f,a,b), (b,c,d), (a,c,e), (e,d,f) evaluated diagrammatically."""
    ida = TLMorphism.identity(skein, a)
    idd = TLMorphism.identity(skein, d)
    m = split_vertex(skein, f, a, b)
    m = ida.tensor(split_vertex(skein, b, c, d)).compose(m)
    m = merge_vertex(skein, a, c, e).tensor(idd).compose(m)
    m = merge_vertex(skein, e, d, f).compose(m)
    return m.trace()


def tet_closed_for_oracle_labels(skein: Skein, a, b, c, d, e, f) -> CyclotomicNumber:
    """Closed form for the net used by ``tet_oracle``."""
    # vertices V0=(f,a,b) V1=(b,c,d) V2=(a,c,e) V3=(e,d,f)
    return skein.tet_k4(b, a, f, c, d, e, even=False)


def loop_value_oracle(skein: Skein, n: int) -> CyclotomicNumber:
    return skein.jones_wenzl(n).trace()
