"""One-sided subshifts of finite type X_A seen through their cylinder sets.

The cylinder of an admissible word J corresponds to the projection s_J s_J^*;
these projections generate the commutative subalgebra C_A = C(X_A).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .bialgebra import delta, tensor_membership
from .matrix_monoid import ZeroOneMatrix
from .star_algebra import AlgebraElement, is_admissible


@dataclass(frozen=True)
class Subshift:
    context: ZeroOneMatrix

    def words(self, length: int) -> list[tuple[int, ...]]:
        return words(self.context, length)

    def count(self, length: int) -> int:
        return word_count(self.context, length)


def words(a: ZeroOneMatrix, length: int) -> list[tuple[int, ...]]:
    """Admissible words of the given length in lexicographic order."""
    if length < 1:
        raise ValueError("word length must be >= 1")
    out = [(i,) for i in range(1, a.n + 1)]
    for _ in range(length - 1):
        out = [w + (i,) for w in out for i in range(1, a.n + 1) if a.rows[w[-1] - 1][i - 1]]
    return out


def word_count(a: ZeroOneMatrix, length: int) -> int:
    """Number of admissible words, by dynamic programming over last letters."""
    if length < 1:
        raise ValueError("word length must be >= 1")
    ends = [1] * a.n
    for _ in range(length - 1):
        ends = [sum(ends[i] for i in range(a.n) if a.rows[i][j]) for j in range(a.n)]
    return sum(ends)


def cylinder_projection(a: ZeroOneMatrix, word: Sequence[int]) -> AlgebraElement:
    word = tuple(word)
    if not word or not is_admissible(a, word):
        raise ValueError(f"{word} is not an admissible word over {a.label()}")
    return AlgebraElement.monomial(a, word, word)


def sf_delta_closure(a: ZeroOneMatrix, word: Sequence[int]) -> bool:
    """Every tensor leg of delta(s_J s_J^*) is a cylinder projection (or I)."""
    return tensor_membership(delta(cylinder_projection(a, word)), "SF")
