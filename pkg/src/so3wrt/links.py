"""Framed link diagrams: data model, JSON I/O, braid closures, cabling.

A crossing records the oriented over strand (incoming arc, outgoing arc),
the oriented under strand, and its sign (+1 right-handed). Components
list their arcs in order of travel; a component with a single arc that
meets no crossing is a crossingless unknot.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np


class DiagramError(ValueError):
    pass


@dataclass(frozen=True)
class Crossing:
    over: tuple[int, int]
    under: tuple[int, int]
    sign: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise DiagramError(f"crossing sign must be +1 or -1, got {self.sign}")

    def pd(self) -> tuple[int, int, int, int]:
        """Counterclockwise arc labels starting at the incoming under arc."""
        a, b = self.over
        c, d = self.under
        return (c, b, d, a) if self.sign > 0 else (c, a, d, b)

    def mirror(self) -> "Crossing":
        return Crossing(self.under, self.over, -self.sign)


@dataclass(frozen=True)
class FramedLinkDiagram:
    crossings: tuple[Crossing, ...]
    components: tuple[tuple[int, ...], ...]
    framings: tuple[int, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(self.crossings))
        object.__setattr__(self, "components", tuple(tuple(c) for c in self.components))
        object.__setattr__(self, "framings", tuple(int(f) for f in self.framings))
        self.validate()

    # -- validation ---------------------------------------------------------
    def validate(self) -> None:
        if len(self.framings) != len(self.components):
            raise DiagramError(
                f"{len(self.framings)} framings for {len(self.components)} components")
        owner: dict[int, int] = {}
        for i, comp in enumerate(self.components):
            if not comp:
                raise DiagramError(f"component {i} has no arcs")
            for a in comp:
                if a in owner:
                    raise DiagramError(f"arc {a} listed in two components")
                owner[a] = i
        ins: dict[int, int] = {}
        outs: dict[int, int] = {}
        for n, x in enumerate(self.crossings):
            for a in (*x.over, *x.under):
                if a not in owner:
                    raise DiagramError(f"crossing {n} uses arc {a} not in any component")
            for a, slot in ((x.over[0], ins), (x.under[0], ins), (x.over[1], outs), (x.under[1], outs)):
                if a in slot:
                    raise DiagramError(f"arc {a} enters or leaves more than one crossing slot")
                slot[a] = n
        for i, comp in enumerate(self.components):
            if len(comp) == 1 and comp[0] not in ins and comp[0] not in outs:
                continue  # crossingless unknot
            for k, a in enumerate(comp):
                if a not in ins or a not in outs:
                    raise DiagramError(f"arc {a} of component {i} is not closed up")
                # following arc a through the crossing it enters must give the next arc
                x = self.crossings[ins[a]]
                nxt = x.over[1] if x.over[0] == a else x.under[1]
                if nxt != comp[(k + 1) % len(comp)]:
                    raise DiagramError(
                        f"component {i}: arc {a} continues to {nxt}, listed next is "
                        f"{comp[(k + 1) % len(comp)]}")
        self._check_planar()

    def _check_planar(self) -> None:
        """Euler characteristic of the 4-valent projection must be 2 per connected piece."""
        if not self.crossings:
            return
        pds = [x.pd() for x in self.crossings]
        ends: dict[int, list[tuple[int, int]]] = {}
        for n, x in enumerate(pds):
            for s, a in enumerate(x):
                ends.setdefault(a, []).append((n, s))
        other = {}
        for a, (d1, d2) in ends.items():
            other[d1], other[d2] = d2, d1
        seen = set()
        faces = 0
        for start in other:
            if start in seen:
                continue
            faces += 1
            d = start
            while d not in seen:
                seen.add(d)
                n, s = other[d]
                d = (n, (s + 1) % 4)
        parent = list(range(len(pds)))

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for (n1, _), (n2, _) in ends.values():
            parent[find(n1)] = find(n2)
        pieces = len({find(v) for v in range(len(pds))})
        v, e = len(pds), 2 * len(pds)
        if v - e + faces != 2 * pieces:
            raise DiagramError(
                f"crossing data is not planar (Euler characteristic {v - e + faces}, expected {2 * pieces})")

    # -- derived data ---------------------------------------------------------
    @property
    def n_components(self) -> int:
        return len(self.components)

    def arc_owner(self) -> dict[int, int]:
        return {a: i for i, comp in enumerate(self.components) for a in comp}

    def writhes(self) -> list[int]:
        owner = self.arc_owner()
        w = [0] * self.n_components
        for x in self.crossings:
            i, j = owner[x.over[0]], owner[x.under[0]]
            if i == j:
                w[i] += x.sign
        return w

    def linking_matrix(self) -> np.ndarray:
        owner = self.arc_owner()
        n = self.n_components
        twice = [[0] * n for _ in range(n)]
        for x in self.crossings:
            i, j = owner[x.over[0]], owner[x.under[0]]
            if i != j:
                twice[i][j] += x.sign
                twice[j][i] += x.sign
        m = np.zeros((n, n), dtype=np.int64)
        for i in range(n):
            m[i, i] = self.framings[i]
            for j in range(n):
                if i != j:
                    if twice[i][j] % 2:
                        raise DiagramError("odd crossing count between two components")
                    m[i, j] = twice[i][j] // 2
        return m

    def signature_counts(self) -> tuple[int, int]:
        """(positive, negative) eigenvalue counts of the linking matrix."""
        return inertia(self.linking_matrix())

    def mirror(self) -> "FramedLinkDiagram":
        return FramedLinkDiagram(
            tuple(x.mirror() for x in self.crossings), self.components,
            tuple(-f for f in self.framings), name=f"mirror({self.name})" if self.name else "")

    def with_framings(self, framings: Sequence[int]) -> "FramedLinkDiagram":
        return FramedLinkDiagram(self.crossings, self.components, tuple(framings), name=self.name)

    def disjoint_union(self, other: "FramedLinkDiagram") -> "FramedLinkDiagram":
        shift = 1 + max([a for c in self.components for a in c], default=0)
        crossings = list(self.crossings) + [
            Crossing((x.over[0] + shift, x.over[1] + shift), (x.under[0] + shift, x.under[1] + shift), x.sign)
            for x in other.crossings]
        comps = list(self.components) + [tuple(a + shift for a in c) for c in other.components]
        name = f"{self.name}+{other.name}" if self.name or other.name else ""
        return FramedLinkDiagram(tuple(crossings), tuple(comps), self.framings + other.framings, name=name)

    # -- serialization ----------------------------------------------------------
    def to_json(self) -> dict:
        arcs = sorted(a for c in self.components for a in c)
        return {
            "name": self.name,
            "arcs": arcs,
            "crossings": [{"over": list(x.over), "under": list(x.under), "sign": x.sign}
                          for x in self.crossings],
            "components": [list(c) for c in self.components],
            "framings": list(self.framings),
        }

    @classmethod
    def from_json(cls, data: dict) -> "FramedLinkDiagram":
        if not isinstance(data, dict):
            raise DiagramError("link file must contain a JSON object")
        for key in ("crossings", "components", "framings"):
            if key not in data:
                raise DiagramError(f"missing field '{key}'")
        crossings = []
        for n, x in enumerate(data["crossings"]):
            try:
                crossings.append(Crossing(tuple(int(a) for a in x["over"]),
                                          tuple(int(a) for a in x["under"]), int(x["sign"])))
            except (KeyError, TypeError, ValueError) as exc:
                raise DiagramError(f"crossings[{n}]: {exc}") from exc
            if len(crossings[-1].over) != 2 or len(crossings[-1].under) != 2:
                raise DiagramError(f"crossings[{n}]: over/under must be [in, out] pairs")
        diagram = cls(tuple(crossings), tuple(tuple(int(a) for a in c) for c in data["components"]),
                      tuple(int(f) for f in data["framings"]), name=str(data.get("name", "")))
        if "arcs" in data:
            listed = data["arcs"]
            expected = {a for c in diagram.components for a in c}
            got = set(range(listed)) if isinstance(listed, int) else {int(a) for a in listed}
            if got != expected:
                raise DiagramError("field 'arcs' does not match the arcs used by components")
        return diagram

    @classmethod
    def load(cls, path: str | Path) -> "FramedLinkDiagram":
        text = Path(path).read_text()
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DiagramError(f"{path}: line {exc.lineno}: {exc.msg}") from exc
        return cls.from_json(data)

    def dump(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_json(), indent=1) + "\n")


def inertia(m: np.ndarray) -> tuple[int, int]:
    """Exact (positive, negative) inertia of a symmetric integer matrix."""
    a = [[Fraction(int(v)) for v in row] for row in np.asarray(m)]
    n = len(a)
    pos = neg = 0
    # symmetric Gaussian elimination (congruence), pivoting on off-diagonals when needed
    idx = list(range(n))
    while idx:
        k = next((i for i in idx if a[i][i] != 0), None)
        if k is None:
            pair = next(((i, j) for i in idx for j in idx if i < j and a[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # replace row/col i by i + j: new diagonal 2 a_ij
            for t in range(n):
                a[i][t] += a[j][t]
            for t in range(n):
                a[t][i] += a[t][j]
            k = i
        p = a[k][k]
        if p > 0:
            pos += 1
        else:
            neg += 1
        idx.remove(k)
        for i in idx:
            f = a[i][k] / p
            if f:
                for t in range(n):
                    a[i][t] -= f * a[k][t]
        for i in idx:
            a[k][i] = a[i][k] = Fraction(0)
    return pos, neg


# ---------------------------------------------------------------------------
# Builders


def unknot(framing: int = 0, name: str = "") -> FramedLinkDiagram:
    return FramedLinkDiagram((), ((0,),), (framing,), name=name or f"unknot({framing})")


def empty_link() -> FramedLinkDiagram:
    return FramedLinkDiagram((), (), (), name="empty")


def unknot_unlink(n: int) -> FramedLinkDiagram:
    """n-component 0-framed unlink, presenting the connected sum of n copies of S^1 x S^2."""
    if n == 0:
        return empty_link()
    return FramedLinkDiagram((), tuple((i,) for i in range(n)), (0,) * n, name=f"unlink({n})")


def braid_closure(word: Sequence[int], strands: int, framings: Sequence[int] | None = None,
                  name: str = "") -> FramedLinkDiagram:
    """Closure of a braid; generator +i is sigma_i (strand i over strand i+1), -i its inverse."""
    if strands < 1:
        raise DiagramError("need at least one strand")
    start = list(range(strands))
    current = list(start)
    next_label = strands
    crossings = []
    for g in word:
        i = abs(g) - 1
        if not 0 <= i < strands - 1:
            raise DiagramError(f"generator {g} invalid on {strands} strands")
        left_in, right_in = current[i], current[i + 1]
        left_out, right_out = next_label, next_label + 1
        next_label += 2
        if g > 0:  # left strand goes over to the right
            crossings.append(Crossing((left_in, right_out), (right_in, left_out), 1))
        else:
            crossings.append(Crossing((right_in, left_out), (left_in, right_out), -1))
        current[i], current[i + 1] = left_out, right_out
    # identify final labels with starting labels
    rename = {current[p]: start[p] for p in range(strands)}

    def rn(a):
        return rename.get(a, a)

    crossings = [Crossing((rn(x.over[0]), rn(x.over[1])), (rn(x.under[0]), rn(x.under[1])), x.sign)
                 for x in crossings]
    succ = {}
    for x in crossings:
        succ[x.over[0]] = x.over[1]
        succ[x.under[0]] = x.under[1]
    for p in range(strands):
        if start[p] not in succ:  # strand untouched by any generator
            succ[start[p]] = None
    comps = []
    seen = set()
    for p in range(strands):
        a = start[p]
        if a in seen:
            continue
        comp = []
        while a is not None and a not in seen:
            seen.add(a)
            comp.append(a)
            a = succ[a]
        comps.append(tuple(comp))
    # canonical relabel 0..n-1 in component order
    order = [a for c in comps for a in c]
    lab = {a: k for k, a in enumerate(order)}
    crossings = [Crossing((lab[x.over[0]], lab[x.over[1]]), (lab[x.under[0]], lab[x.under[1]]), x.sign)
                 for x in crossings]
    comps = [tuple(lab[a] for a in c) for c in comps]
    if framings is None:
        framings = [0] * len(comps)
    return FramedLinkDiagram(tuple(crossings), tuple(comps), tuple(framings), name=name)


def borromean_link(framings: Sequence[int] = (0, 0, 1)) -> FramedLinkDiagram:
    """Borromean rings as the closure of (s1 s2^-1)^3."""
    return braid_closure([1, -2] * 3, 3, framings, name=f"borromean{tuple(framings)}")


def chain_link(framings: Sequence[int], name: str = "") -> FramedLinkDiagram:
    """Linear chain of unknots, consecutive ones forming positive Hopf clasps."""
    n = len(framings)
    if n == 0:
        return empty_link()
    if n == 1:
        return unknot(framings[0], name=name)
    word = []
    for i in range(1, n):
        word += [i, i]
    return braid_closure(word, n, framings, name=name or f"chain{tuple(framings)}")


# ---------------------------------------------------------------------------
# Cabling


def sublink(diagram: FramedLinkDiagram, keep: Sequence[int]) -> FramedLinkDiagram:
    """The diagram with only the components whose indices are in ``keep``."""
    keep = sorted(set(keep))
    owner = diagram.arc_owner()
    parent: dict[int, int] = {}

    def find(v):
        root = v
        while parent.get(root, root) != root:
            root = parent[root]
        while parent.get(v, v) != root:
            parent[v], v = root, parent[v]
        return root

    kept = []
    for x in diagram.crossings:
        io, iu = owner[x.over[0]] in keep, owner[x.under[0]] in keep
        if io and iu:
            kept.append(x)
        elif io:
            parent[find(x.over[0])] = find(x.over[1])
        elif iu:
            parent[find(x.under[0])] = find(x.under[1])
    crossings = tuple(Crossing((find(x.over[0]), find(x.over[1])), (find(x.under[0]), find(x.under[1])), x.sign)
                      for x in kept)
    comps = []
    for i in keep:
        roots = [find(a) for a in diagram.components[i]]
        dedup = [a for k, a in enumerate(roots) if a != roots[k - 1]] or roots[:1]
        comps.append(tuple(dedup))
    return FramedLinkDiagram(crossings, tuple(comps), tuple(diagram.framings[i] for i in keep),
                             name=diagram.name)


def cable_pd(diagram: FramedLinkDiagram, copies: Sequence[int]) -> tuple[list[tuple[int, int, int, int]], int]:
    """Blackboard-parallel cable: component i replaced by copies[i] parallel strands.

    Returns PD crossings (ccw from incoming under arc) of the cabled diagram
    and the number of crossingless loops.
    """
    if len(copies) != diagram.n_components:
        raise DiagramError("need one copy count per component")
    if any(k < 0 for k in copies):
        raise DiagramError("copy counts must be nonnegative")
    keep = [i for i, k in enumerate(copies) if k > 0]
    if len(keep) < diagram.n_components:
        diagram = sublink(diagram, keep)
        copies = [copies[i] for i in keep]
    owner = diagram.arc_owner()
    labels: dict[tuple, int] = {}

    def lab(key) -> int:
        v = labels.get(key)
        if v is None:
            v = labels[key] = len(labels)
        return v

    touched = {a for x in diagram.crossings for a in (*x.over, *x.under)}
    free = sum(copies[i] for i, comp in enumerate(diagram.components)
               if len(comp) == 1 and comp[0] not in touched)
    out = []
    for n, x in enumerate(diagram.crossings):
        ko, ku = copies[owner[x.over[0]]], copies[owner[x.under[0]]]
        a, b = x.over
        c, d = x.under
        # over strand meets the under copies left-to-right on a positive crossing
        t_order = range(ku) if x.sign > 0 else range(ku - 1, -1, -1)
        s_order = range(ko - 1, -1, -1) if x.sign > 0 else range(ko)
        pos_t = {t: m for m, t in enumerate(t_order)}
        pos_s = {s: m for m, s in enumerate(s_order)}

        def oseg(s, m):
            if m == 0:
                return lab(("arc", a, s))
            if m == ku:
                return lab(("arc", b, s))
            return lab(("o", n, s, m))

        def useg(t, m):
            if m == 0:
                return lab(("arc", c, t))
            if m == ko:
                return lab(("arc", d, t))
            return lab(("u", n, t, m))

        for s in range(ko):
            for t in range(ku):
                po, pu = pos_t[t], pos_s[s]
                cr = Crossing((oseg(s, po), oseg(s, po + 1)), (useg(t, pu), useg(t, pu + 1)), x.sign)
                out.append(cr.pd())
    return out, free


def load_corpus() -> dict[str, FramedLinkDiagram]:
    """The shipped link corpus, keyed by name."""
    from importlib import resources

    base = resources.files("so3wrt") / "data" / "links"
    out = {}
    for entry in sorted(base.iterdir(), key=lambda p: p.name):
        if entry.name.endswith(".json"):
            d = FramedLinkDiagram.from_json(json.loads(entry.read_text()))
            out[d.name or entry.name[:-5]] = d
    return out
