"""Universal finite-type invariants of braids on the sphere and of mapping
classes of the punctured sphere, computed exactly over the integers."""

from .braidcore import BraidWord, Permutation, PureWord, parse_word
from .combing import comb
from .invariants import K, K_M, compare, eisermann_pair, kappa, lambda_, mu

__version__ = "0.1.0"

__all__ = ["BraidWord", "K", "K_M", "Permutation", "PureWord", "comb", "compare",
           "eisermann_pair", "kappa", "lambda_", "mu", "parse_word"]
