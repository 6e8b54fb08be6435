"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 budget exhaustion.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import re
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from .bracket import BudgetError
from .cyclo import CyclotomicNumber, Level, LevelError, RootChoice
from .links import DiagramError, FramedLinkDiagram
from .surgery import InvariantValue, rt_invariant

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3

log = logging.getLogger("so3wrt")

# a leading '-' on a complex target would otherwise be read as an option
_NEG_COMPLEX = re.compile(r"^-[0-9.]+([eE][-+]?[0-9]+)?([-+][0-9.]*([eE][-+]?[0-9]+)?[ij])?$|^-[0-9.]*[ij]$")


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    r: int
    root: RootChoice
    precision: int
    budget: int
    seed: int
    out: Path | None
    recheck: bool

    @property
    def level(self) -> Level:
        return Level(self.r)

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> "RunConfig":
        try:
            level = Level(ns.r)
            root = RootChoice.parse(ns.root)
        except (LevelError, ValueError) as exc:
            raise InputError(str(exc)) from exc
        return cls(level.r, root, ns.precision, ns.budget, ns.seed,
                   Path(ns.out) if ns.out else None, ns.recheck)

    def require_density(self) -> None:
        if not self.level.prime or self.r < 5:
            raise InputError(f"r={self.r}: the density theorem needs r prime and r >= 5")


def _emit(cfg: RunConfig, payload: dict) -> None:
    text = json.dumps(payload, indent=1)
    if cfg.out:
        cfg.out.write_text(text + "\n")
        print(f"wrote {cfg.out}")
    else:
        print(text)


def parse_complex(text: str) -> complex:
    t = text.strip().replace(" ", "").replace("i", "j")
    try:
        return complex(t)
    except ValueError as exc:
        raise InputError(f"cannot parse complex number '{text}' (use e.g. -1.3+0.8i)") from exc


# ---------------------------------------------------------------------------
# Subcommands


def cmd_invariant(cfg: RunConfig, link_file: str) -> int:
    try:
        d = FramedLinkDiagram.load(link_file)
    except FileNotFoundError as exc:
        raise InputError(f"{link_file}: no such file") from exc
    except DiagramError as exc:
        raise InputError(f"{link_file}: {exc}") from exc
    t0 = time.time()
    val = rt_invariant(d, cfg.level, cfg.root)
    print(f"I = {val.approx.real:.{cfg.precision // 4}g} {val.approx.imag:+.{cfg.precision // 4}g}i"
          f"  |I| = {abs(val):.10f}  ({time.time() - t0:.2f} s)")
    print(f"exact = {val.exact!r}")
    status = EXIT_OK
    if cfg.recheck:
        again = InvariantValue.from_exact(CyclotomicNumber.from_json(val.exact.to_json()), cfg.root)
        same = again.exact == val.exact and abs(complex(again.exact) - val.approx) < 1e-12
        print(f"recheck: {'ok' if same else 'MISMATCH'}")
        status = EXIT_OK if same else EXIT_VERIFY
    if cfg.out:
        _emit(cfg, val.to_json())
    return status


def cmd_verify(cfg: RunConfig, suite: str) -> int:
    from .identities import SUITES, run_suite

    if suite not in SUITES:
        raise InputError(f"unknown suite '{suite}'; choose from {', '.join(SUITES)}")
    try:
        checks = run_suite(suite, cfg.level, cfg.root)
    except LevelError as exc:
        raise InputError(str(exc)) from exc
    for c in checks:
        print(f"{'PASS' if c.passed else 'FAIL'}  {c.name}" + (f"  [{c.detail}]" if c.detail else ""))
    ok = all(c.passed for c in checks)
    report = {"suite": suite, "r": cfg.r, "root": cfg.root.value, "passed": ok,
              "checks": [c.to_json() for c in checks]}
    if cfg.out:
        _emit(cfg, report)
    print(json.dumps({"suite": suite, "passed": ok, "failures": sum(not c.passed for c in checks)}))
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_rep(cfg: RunConfig, genus: int, word: str) -> int:
    from .tqftrep import UnsupportedGenerator, basis, rep_word

    try:
        M = rep_word(cfg.level, genus, word, cfg.root)
    except UnsupportedGenerator as exc:
        raise InputError(str(exc)) from exc
    B = basis(cfg.level, genus, cfg.root)
    unitary = M.is_unitary(B.gram())
    print(f"genus {genus}, dim {B.dim}, word [{word or '1'}], G-unitary: {unitary}")
    print(f"entry(1,1) = {complex(M[0, 0]):.12g}")
    if cfg.out:
        _emit(cfg, {"genus": genus, "word": word, "dim": B.dim, "colorings": [list(c) for c in B.colorings],
                    "matrix": [[M[i, j].to_json() for j in range(B.dim)] for i in range(B.dim)]})
    return EXIT_OK if unitary else EXIT_VERIFY


def _library(cfg: RunConfig, path: str | None):
    from .density import AtomLibrary, build_library

    if path and Path(path).exists():
        lib = AtomLibrary.load(path)
        if lib.level.r != cfg.r or lib.root is not cfg.root:
            raise InputError(f"{path}: library is for r={lib.level.r}, root {lib.root.value}")
        return lib
    lib = build_library(cfg.level, cfg.root, seed=cfg.seed)
    if path:
        lib.dump(path)
        print(f"saved atom library to {path}")
    return lib


def cmd_density(cfg: RunConfig, target: str, eps: float, library: str | None) -> int:
    from .density import approx_target, verify_recipe

    cfg.require_density()
    z = parse_complex(target)
    if eps <= 0:
        raise InputError("eps must be positive")
    lib = _library(cfg, library)
    recipe = approx_target(lib, z, eps, cfg.budget)
    recipe.seed = cfg.seed
    # never report an error that was not recomputed from the recipe itself
    err = verify_recipe(recipe, lib, recompute_atoms=cfg.recheck, prec=max(cfg.precision, 128))
    recipe.achieved_error = err
    success = err < eps
    recipe.status = "success" if success else "best-effort"
    payload = {"recipe": recipe.to_json(),
               "atoms": {aid: lib[aid].to_json() for aid in sorted({k[0] for k in lib.check_evaluable(recipe.expr)})}}
    if cfg.out:
        _emit(cfg, payload)
    print(f"target {z:.6g}, eps {eps:g}: {recipe.status}, achieved error {err:.3e}, "
          f"budget used {recipe.budget_used}")
    if not cfg.out:
        print(json.dumps(recipe.to_json()))
    return EXIT_OK if success else EXIT_BUDGET


def cmd_scatter(cfg: RunConfig, count: int, library: str | None, svg: str | None) -> int:
    from .density import grid_coverage, scatter
    from .density.atoms import expr_to_json
    from .density.search import scatter_value

    cfg.require_density()
    if count < 1:
        raise InputError("count must be at least 1")
    lib = _library(cfg, library)
    pts = scatter(lib, count, cfg.seed)
    out = cfg.out or Path("scatter.csv")
    with open(out, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["re", "im", "recipe-id"])
        for n, p in enumerate(pts):
            w.writerow([repr(p.value.real), repr(p.value.imag), f"p{n}"])
    Path(str(out) + ".recipes.json").write_text(
        json.dumps({f"p{n}": expr_to_json(p.expr) for n, p in enumerate(pts)}) + "\n")
    cov = grid_coverage([p.value for p in pts])
    print(f"wrote {count} points to {out}; grid coverage of [-2,2]^2 at cell 0.25: {cov:.4f}")
    status = EXIT_OK
    if cfg.recheck:
        bad = sum(scatter_value(lib, p.expr) != p.value for p in pts)
        print(f"recheck: {count - bad}/{count} values recomputed exactly")
        status = EXIT_OK if bad == 0 else EXIT_VERIFY
    if svg:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        fig, ax = plt.subplots(figsize=(6, 6))
        ax.scatter([p.value.real for p in pts], [p.value.imag for p in pts], s=2)
        ax.set_xlim(-3, 3)
        ax.set_ylim(-3, 3)
        ax.set_aspect("equal")
        ax.set_title(f"unit-normalized invariants, r={cfg.r}, {count} recipes")
        fig.savefig(svg, format="svg")
        plt.close(fig)
        print(f"wrote {svg}")
    return status


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--r", type=int, default=5, help="odd level r >= 3 (default 5)")
    common.add_argument("--root", default="e", help="root choice: e, -e, ie, -ie, e-inv, ... (default e)")
    common.add_argument("--precision", type=int, default=64, help="bits for printed/verified floats (default 64)")
    common.add_argument("--budget", type=int, default=10**5, help="search budget in expressions (default 1e5)")
    common.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    common.add_argument("--out", help="output path")
    common.add_argument("--recheck", action="store_true", help="re-derive values and compare")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="so3wrt", description="SO(3) quantum invariants of 3-manifolds")
    sub = p.add_subparsers(dest="command", required=True)
    s = sub.add_parser("invariant", parents=[common], help="invariant of a framed link file")
    s.add_argument("link_file")
    s = sub.add_parser("verify", parents=[common], help="run an identity suite")
    s.add_argument("suite", help="gauss-remark, mu-identity, alpha-root, conjugation or kirby")
    s = sub.add_parser("rep", parents=[common], help="matrix of a Dehn-twist word")
    s.add_argument("--genus", type=int, default=1)
    s.add_argument("word", nargs="?", default="", help="e.g. 'a^3 b^-1'")
    s = sub.add_parser("density", parents=[common], help="approximate a complex number")
    s.add_argument("target", help="e.g. -1.3+0.8i")
    s.add_argument("--eps", type=float, default=0.1)
    s.add_argument("--library", help="atom library JSON (built and saved if missing)")
    s = sub.add_parser("scatter", parents=[common], help="values of random connected sums")
    s.add_argument("count", type=int)
    s.add_argument("--library", help="atom library JSON (built and saved if missing)")
    s.add_argument("--svg", help="write a static scatter plot")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    ns = parser.parse_args([" " + a if _NEG_COMPLEX.match(a) else a for a in argv])
    logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING)
    try:
        cfg = RunConfig.from_args(ns)
        if ns.command == "invariant":
            return cmd_invariant(cfg, ns.link_file)
        if ns.command == "verify":
            return cmd_verify(cfg, ns.suite)
        if ns.command == "rep":
            return cmd_rep(cfg, ns.genus, ns.word)
        if ns.command == "density":
            return cmd_density(cfg, ns.target, ns.eps, ns.library)
        return cmd_scatter(cfg, ns.count, ns.library, ns.svg)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetError as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
