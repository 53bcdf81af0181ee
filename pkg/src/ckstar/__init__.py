"""Symbolic toolkit for the bialgebra of Cuntz-Krieger algebras over the Kronecker monoid."""

from .bialgebra import (
    DirectSumElement,
    TensorElement,
    counit,
    delta,
    gauge,
    membership,
    phi,
)
from .expression import ExpressionError, parse_expression
from .integer_ktheory import AbelianGroup, k_groups, smith_normal_form
from .matrix_monoid import ZeroOneMatrix, classify, divisors, full, kronecker, load_matrix, parse_matrix
from .permutative_reps import CycleWord, decompose, equivalent, verify_decomposition
from .star_algebra import AlgebraElement, GaussianRational, Monomial, generator, normalize
from .subshift import Subshift, word_count, words

__version__ = "0.1.0"

__all__ = [
    "AbelianGroup",
    "AlgebraElement",
    "CycleWord",
    "DirectSumElement",
    "ExpressionError",
    "GaussianRational",
    "Monomial",
    "Subshift",
    "TensorElement",
    "ZeroOneMatrix",
    "classify",
    "counit",
    "decompose",
    "delta",
    "divisors",
    "equivalent",
    "full",
    "gauge",
    "generator",
    "k_groups",
    "kronecker",
    "load_matrix",
    "membership",
    "normalize",
    "parse_expression",
    "parse_matrix",
    "phi",
    "smith_normal_form",
    "verify_decomposition",
    "word_count",
    "words",
]
