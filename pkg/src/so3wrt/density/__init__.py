"""Constructive density: approximating complex numbers by unit-normalized invariants."""

from .atoms import (Atom, AtomEntry, AtomLibrary, ConnSum, PhaseUndetermined, Power, Reverse,
                    build_library)
from .kronecker import NotFound, kronecker_find
from .pu import NotUnitaryError, permute_conjugate, pu_distance
from .search import (ApproxRecipe, approx_real, approx_target, check_no_real_powers, grid_coverage,
                     scatter, seed_irrational, verify_recipe, word_search)
