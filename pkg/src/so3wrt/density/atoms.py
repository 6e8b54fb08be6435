"""Manifold expressions over a library of atoms with known unit-normalized invariants.

Values are I/mu, which is multiplicative under connected sum and conjugated
by orientation reversal. Genus-2 word atoms are phase-incomplete: their
stored value carries the unknown framing phase as 1, so an expression is
only evaluable when every such atom appears as often reversed as not.
"""

from __future__ import annotations

import json
import random
import threading
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

import mpmath

from ..cyclo import CyclotomicNumber, Level, RootChoice
from ..links import FramedLinkDiagram, borromean_link, chain_link, empty_link, unknot
from ..surgery import borromean_invariant, mu, rt_invariant, unknot_weights
from ..tqftrep import GENERATORS, TwistWord, basis, twist_matrix


class PhaseUndetermined(ValueError):
    pass


# ---------------------------------------------------------------------------
# Expressions


@dataclass(frozen=True)
class Atom:
    id: str


@dataclass(frozen=True)
class ConnSum:
    children: tuple = ()


@dataclass(frozen=True)
class Reverse:
    child: object


@dataclass(frozen=True)
class Power:
    """k-fold connected sum of one expression (k >= 0)."""

    child: object
    k: int


def expr_to_json(e) -> dict:
    if isinstance(e, Atom):
        return {"atom": e.id}
    if isinstance(e, ConnSum):
        return {"connsum": [expr_to_json(c) for c in e.children]}
    if isinstance(e, Reverse):
        return {"reverse": expr_to_json(e.child)}
    if isinstance(e, Power):
        return {"power": expr_to_json(e.child), "k": e.k}
    raise TypeError(f"not an expression: {e!r}")


def expr_from_json(d: dict):
    if "atom" in d:
        return Atom(str(d["atom"]))
    if "connsum" in d:
        return ConnSum(tuple(expr_from_json(c) for c in d["connsum"]))
    if "reverse" in d:
        return Reverse(expr_from_json(d["reverse"]))
    if "power" in d:
        return Power(expr_from_json(d["power"]), int(d["k"]))
    raise ValueError(f"unrecognized expression node: {sorted(d)}")


def atom_counts(e, sign: int = 1, mult: int = 1, acc: Counter | None = None) -> Counter:
    """Occurrences of each atom keyed by (atom id, orientation), orientation +1 or -1."""
    acc = Counter() if acc is None else acc
    if isinstance(e, Atom):
        acc[(e.id, sign)] += mult
    elif isinstance(e, ConnSum):
        for c in e.children:
            atom_counts(c, sign, mult, acc)
    elif isinstance(e, Reverse):
        atom_counts(e.child, -sign, mult, acc)
    elif isinstance(e, Power):
        if e.k < 0:
            raise ValueError("power must be nonnegative")
        atom_counts(e.child, sign, mult * e.k, acc)
    else:
        raise TypeError(f"not an expression: {e!r}")
    return acc


def expr_size(e) -> int:
    return sum(atom_counts(e).values())


# ---------------------------------------------------------------------------
# Library


@dataclass
class AtomEntry:
    id: str
    kind: str  # "link", "word", "borromean"
    descriptor: dict
    value: CyclotomicNumber  # I/mu; for phase-incomplete atoms the framing phase is set to 1
    phase_complete: bool = True
    provenance: str = ""

    def approx(self) -> complex:
        return complex(self.value)

    def to_json(self) -> dict:
        return {"id": self.id, "kind": self.kind, "descriptor": self.descriptor,
                "value": self.value.to_json(), "approx": [self.approx().real, self.approx().imag],
                "phase_complete": self.phase_complete, "provenance": self.provenance}

    @classmethod
    def from_json(cls, d: dict) -> "AtomEntry":
        return cls(d["id"], d["kind"], d["descriptor"], CyclotomicNumber.from_json(d["value"]),
                   bool(d.get("phase_complete", True)), d.get("provenance", ""))


def compute_atom_value(level: Level, kind: str, descriptor: dict,
                       root: RootChoice = RootChoice.E) -> CyclotomicNumber:
    """Recompute an atom's unit-normalized value from its descriptor."""
    m = mu(level, root)
    if kind == "link":
        d = FramedLinkDiagram.from_json(descriptor["link"])
        return rt_invariant(d, level, root).exact / m
    if kind == "borromean":
        # I(B(0,0,1)) from the Borromean double sum: conj(double sum) * W+/W-
        wp, wm = unknot_weights(level, root)
        return borromean_invariant(level, root).exact.galois(-1) * wp / wm / m
    if kind == "word":
        g = int(descriptor["genus"])
        entry = vacuum_entry(level, g, TwistWord.parse(descriptor["word"], g), root)
        return entry * m ** (-g)
    raise ValueError(f"unknown atom kind '{kind}'")


def vacuum_entry(level: Level, g: int, w: TwistWord, root: RootChoice = RootChoice.E) -> CyclotomicNumber:
    """(1,1) entry of the word's matrix, by propagating the vacuum row."""
    B = basis(level, g, root)
    zero = CyclotomicNumber.zero(level)
    row = [CyclotomicNumber.one(level)] + [zero] * (B.dim - 1)
    for name, e in w.letters:
        M = twist_matrix(level, g, name, root) ** e
        row = [sum((row[i] * M[i, j] for i in range(B.dim) if not row[i].is_zero()
                    and not M[i, j].is_zero()), zero) for j in range(B.dim)]
    return row[0]


class AtomLibrary:
    def __init__(self, level: Level | int, root: RootChoice = RootChoice.E):
        self.level = level if isinstance(level, Level) else Level(level)
        self.root = root
        self.atoms: dict[str, AtomEntry] = {}
        self._lock = threading.Lock()
        self._mp_cache: dict[tuple[str, int], mpmath.mpc] = {}

    def __contains__(self, key: str) -> bool:
        return key in self.atoms

    def __getitem__(self, key: str) -> AtomEntry:
        return self.atoms[key]

    def __len__(self):
        return len(self.atoms)

    def add(self, entry: AtomEntry) -> AtomEntry:
        with self._lock:
            self.atoms[entry.id] = entry
            self._mp_cache = {k: v for k, v in self._mp_cache.items() if k[0] != entry.id}
        return entry

    def add_link(self, id: str, d: FramedLinkDiagram, provenance: str = "") -> AtomEntry:
        desc = {"link": d.to_json()}
        val = compute_atom_value(self.level, "link", desc, self.root)
        return self.add(AtomEntry(id, "link", desc, val, True, provenance or "surgery formula"))

    def add_word(self, id: str, g: int, w: TwistWord | str, provenance: str = "") -> AtomEntry:
        w = w if isinstance(w, TwistWord) else TwistWord.parse(w, g)
        desc = {"genus": g, "word": str(w)}
        val = compute_atom_value(self.level, "word", desc, self.root)
        return self.add(AtomEntry(id, "word", desc, val, False,
                                  provenance or "vacuum entry times mu^-g; framing phase unknown"))

    def mp_value(self, id: str, prec: int = 128) -> mpmath.mpc:
        key = (id, prec)
        v = self._mp_cache.get(key)
        if v is None:
            v = self._mp_cache[key] = self.atoms[id].value.eval_embed(prec)
        return v

    def full_phase_ids(self) -> list[str]:
        return [k for k, a in self.atoms.items() if a.phase_complete]

    # -- evaluation -------------------------------------------------------------
    def check_evaluable(self, expr) -> Counter:
        counts = atom_counts(expr)
        for aid in {k[0] for k in counts}:
            if aid not in self.atoms:
                raise KeyError(f"atom '{aid}' is not in the library")
            if not self.atoms[aid].phase_complete and counts[(aid, 1)] != counts[(aid, -1)]:
                raise PhaseUndetermined(
                    f"atom '{aid}' has an unknown framing phase and is not paired with its reverse")
        return counts

    def evaluate(self, expr, prec: int = 128) -> mpmath.mpc:
        counts = self.check_evaluable(expr)
        with mpmath.workprec(prec):
            out = mpmath.mpc(1)
            for (aid, sign), k in sorted(counts.items()):
                if k == 0:
                    continue
                v = self.mp_value(aid, prec)
                if not self.atoms[aid].phase_complete:
                    v = mpmath.mpf(abs(v))  # the unknown phases cancel pairwise
                out *= (v if sign > 0 else mpmath.conj(v)) ** k
            return out

    def evaluate_exact(self, expr) -> CyclotomicNumber:
        """Exact value for expressions built from phase-complete atoms (small powers only)."""
        counts = self.check_evaluable(expr)
        out = CyclotomicNumber.one(self.level)
        for (aid, sign), k in sorted(counts.items()):
            if not self.atoms[aid].phase_complete:
                raise PhaseUndetermined(f"atom '{aid}' has no exact value")
            v = self.atoms[aid].value
            out = out * (v if sign > 0 else v.galois(-1)) ** k
        return out

    # -- persistence ------------------------------------------------------------
    def to_json(self) -> dict:
        return {"level": self.level.r, "root": self.root.value,
                "atoms": [a.to_json() for a in self.atoms.values()]}

    @classmethod
    def from_json(cls, d: dict) -> "AtomLibrary":
        lib = cls(int(d["level"]), RootChoice.parse(d.get("root", "e")))
        for a in d["atoms"]:
            lib.add(AtomEntry.from_json(a))
        return lib

    def dump(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_json()) + "\n")

    @classmethod
    def load(cls, path: str | Path) -> "AtomLibrary":
        return cls.from_json(json.loads(Path(path).read_text()))

    def verify_atom(self, id: str) -> bool:
        a = self.atoms[id]
        return compute_atom_value(self.level, a.kind, a.descriptor, self.root) == a.value


# ---------------------------------------------------------------------------
# Standard library


def random_word(rng: random.Random, g: int, length: int) -> TwistWord:
    gens = GENERATORS[g]
    return TwistWord(g, tuple((rng.choice(gens), rng.choice((-1, 1))) for _ in range(length))).reduced()


def build_library(level: Level | int, root: RootChoice = RootChoice.E, *, lens: int = 8,
                  chains: int = 3, words: int = 16, word_length: int = 60, seed: int = 0,
                  with_seed: bool = True) -> AtomLibrary:
    """S^3, S^1 x S^2, lens spaces, two-component chains, the seed and genus-2 word atoms."""
    lib = AtomLibrary(level, root)
    level = lib.level
    lib.add_link("S3", empty_link(), "empty diagram")
    lib.add_link("S1xS2", unknot(0), "0-framed unknot")
    for p in range(-lens, lens + 1):
        if p:
            lib.add_link(f"L({p})", unknot(p), f"{p}-framed unknot")
    for p in range(-chains, chains + 1):
        for q in range(p, chains + 1):
            lib.add_link(f"chain({p},{q})", chain_link([p, q]), "two-component chain")
    if with_seed and level.r % 4 == 3 and root is RootChoice.E:
        from .search import seed_irrational
        seed_irrational(level, lib)
    rng = random.Random(seed)
    made = 0
    attempts = 0
    while made < words and attempts < 20 * words:
        attempts += 1
        w = random_word(rng, 2, word_length)
        entry = lib.add_word(f"w{made}", 2, w)
        if entry.value.is_zero():
            del lib.atoms[entry.id]
            continue
        made += 1
    return lib
