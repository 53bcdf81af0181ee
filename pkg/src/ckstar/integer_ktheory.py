"""Integer Smith normal form and the K-groups of Cuntz-Krieger algebras.

K_1(O_A) is ker(1 - A^t) and K_0(O_A) is coker(1 - A^t) on Z^n; both are read
off a single Smith decomposition.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple, Sequence

from .matrix_monoid import ZeroOneMatrix, kron_index, kronecker

IntMatrix = list[list[int]]


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def one_minus_transpose(a: ZeroOneMatrix) -> IntMatrix:
    """1_n - A^t as an integer matrix."""
    n = a.n
    return [[int(i == j) - a.rows[j][i] for j in range(n)] for i in range(n)]


@dataclass
class SmithDecomposition:
    """U * original * V == D with D diagonal and d_1 | d_2 | ..."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    original: IntMatrix

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0])))]


def smith_normal_form(m: Sequence[Sequence[int]]) -> SmithDecomposition:
    """Smith normal form by row and column operations.

    The pivot at each stage is the nonzero entry of least absolute value in
    the trailing submatrix, ties broken by row-major position, so the
    transforms are deterministic.
    """
    rows, cols = len(m), len(m[0])
    if rows == 0 or cols == 0:
        raise ValueError("empty matrix")
    a = [list(map(int, r)) for r in m]
    u = identity(rows)
    v = identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, k):  # row dst += k * row src
        if k:
            a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
            u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, k):
        if k:
            for r in a:
                r[dst] += k * r[src]
            for r in v:
                r[dst] += k * r[src]

    for t in range(min(rows, cols)):
        while True:
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    x = a[i][j]
                    if x and (best is None or abs(x) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                q = a[i][t] // p
                add_row(t, i, -q)
                dirty |= a[i][t] != 0
            for j in range(t + 1, cols):
                q = a[t][j] // p
                add_col(t, j, -q)
                dirty |= a[t][j] != 0
            if dirty:
                continue
            # pivot must divide the rest of the trailing block
            bad = next(
                ((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return SmithDecomposition(U=u, D=a, V=v, original=[list(map(int, r)) for r in m])


@dataclass(frozen=True)
class AbelianGroup:
    free_rank: int
    torsion: tuple[int, ...] = field(default=())

    def __post_init__(self):
        t = self.torsion
        if any(x < 2 for x in t) or any(t[i + 1] % t[i] for i in range(len(t) - 1)):
            raise ValueError(f"torsion {t} is not a divisibility chain of integers >= 2")

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " (+) ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


class KGroups(NamedTuple):
    k0: AbelianGroup
    k1: AbelianGroup
    smith_diagonal: tuple[int, ...]


def cokernel(snf: SmithDecomposition) -> AbelianGroup:
    rows = len(snf.D)
    diag = snf.diagonal
    free = rows - sum(1 for d in diag if d)
    return AbelianGroup(free, tuple(d for d in diag if d > 1))


def k_groups(a: ZeroOneMatrix) -> KGroups:
    snf = smith_normal_form(one_minus_transpose(a))
    diag = snf.diagonal
    k1 = AbelianGroup(sum(1 for d in diag if d == 0))
    return KGroups(cokernel(snf), k1, tuple(diag))


def kernel_basis(m: Sequence[Sequence[int]]) -> list[list[int]]:
    """A Z-basis of {v : Mv = 0}: the columns of V at zero Smith pivots."""
    snf = smith_normal_form(m)
    cols = len(m[0])
    diag = snf.diagonal + [0] * (cols - len(snf.diagonal))
    return [[snf.V[r][j] for r in range(cols)] for j in range(cols) if diag[j] == 0]


def kron_vector(v: Sequence[int], w: Sequence[int]) -> list[int]:
    n, m = len(v), len(w)
    out = [0] * (n * m)
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            out[kron_index(i, j, n, m) - 1] = v[i - 1] * w[j - 1]
    return out


@lru_cache(maxsize=4096)
def fixed_vectors(a: ZeroOneMatrix) -> tuple[tuple[int, ...], ...]:
    """Z-basis of ker(1 - A), cached per matrix."""
    return tuple(tuple(v) for v in kernel_basis([[int(i == j) - a.rows[i][j] for j in range(a.n)] for i in range(a.n)]))


def verify_kernel_inclusion(a: ZeroOneMatrix, b: ZeroOneMatrix) -> bool:
    """ker(1-A) (x) ker(1-B) lies in ker(1 - A (x) B), checked on basis vectors."""
    kv, kw = fixed_vectors(a), fixed_vectors(b)
    if not kv or not kw:
        return True
    ab = kronecker(a, b).rows
    for v in kv:
        for w in kw:
            x = kron_vector(v, w)
            # (1 - AB) x = x - AB x
            if any(xi - sum(r[k] * x[k] for k in range(len(x))) for xi, r in zip(x, ab)):
                return False
    return True
