"""SO(3) Witten-Reshetikhin-Turaev invariants at odd prime levels, computed exactly."""

from .cyclo import CyclotomicNumber, Level, LevelError, RootChoice, mu_exact
from .links import FramedLinkDiagram
from .surgery import Budget, InvariantValue, colored_bracket, kauffman_bracket, mu, rt_invariant

__version__ = "0.1.0"

__all__ = ["Budget", "CyclotomicNumber", "FramedLinkDiagram", "InvariantValue", "Level", "LevelError",
           "RootChoice", "colored_bracket", "kauffman_bracket", "mu", "mu_exact", "rt_invariant"]
