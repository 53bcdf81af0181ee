"""The monoid of nondegenerate 0-1 matrices under the Kronecker product.

Indices are 1-based throughout the public API, matching the way matrix
entries and generator labels are written by hand. Internally rows are stored
as tuples of tuples so that matrices are hashable and can key dictionaries.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, NamedTuple, Sequence


class MatrixError(ValueError):
    """Raised for malformed or degenerate matrix input."""


@dataclass(frozen=True)
class ZeroOneMatrix:
    """Square nondegenerate matrix with entries in {0, 1}."""

    rows: tuple[tuple[int, ...], ...]

    def __init__(self, rows: Sequence[Sequence[int]]):
        rows = tuple(tuple(int(v) for v in row) for row in rows)
        n = len(rows)
        if n == 0:
            raise MatrixError("matrix must have at least one row")
        for r, row in enumerate(rows, 1):
            if len(row) != n:
                raise MatrixError(f"row {r} has length {len(row)}, expected {n}")
            if any(v not in (0, 1) for v in row):
                raise MatrixError(f"row {r} has an entry outside {{0,1}}")
            if not any(row):
                raise MatrixError(f"row {r} is zero (matrix is degenerate)")
        for c in range(n):
            if not any(rows[r][c] for r in range(n)):
                raise MatrixError(f"column {c + 1} is zero (matrix is degenerate)")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def _trusted(cls, rows: tuple[tuple[int, ...], ...]) -> ZeroOneMatrix:
        # skips validation; only for results that are nondegenerate by construction
        obj = object.__new__(cls)
        object.__setattr__(obj, "rows", rows)
        return obj

    @property
    def n(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int) -> int:
        """1-based entry a_ij."""
        return self.rows[i - 1][j - 1]

    def transpose(self) -> ZeroOneMatrix:
        return ZeroOneMatrix(list(zip(*self.rows)))

    def is_full(self) -> bool:
        return all(all(row) for row in self.rows)

    def __matmul__(self, other: ZeroOneMatrix) -> ZeroOneMatrix:
        return kronecker(self, other)

    def __str__(self) -> str:
        return "\n".join(" ".join(str(v) for v in row) for row in self.rows)

    def __repr__(self) -> str:
        return f"ZeroOneMatrix({[list(r) for r in self.rows]})"

    def label(self) -> str:
        """Short deterministic name: ``F<n>`` for full matrices, row bits otherwise."""
        if self.is_full():
            return f"F{self.n}"
        return "[" + "|".join("".join(str(v) for v in row) for row in self.rows) + "]"

    def to_json(self) -> dict:
        return {"n": self.n, "rows": [list(r) for r in self.rows]}


def full(n: int) -> ZeroOneMatrix:
    """The all-ones matrix F_n."""
    return ZeroOneMatrix([[1] * n for _ in range(n)])


UNIT = full(1)


def kron_index(i: int, j: int, n: int, m: int) -> int:
    """Position of e_i (x) e_j inside C^{nm}: m(i-1)+j."""
    if not (1 <= i <= n and 1 <= j <= m):
        raise IndexError(f"kron_index({i}, {j}) out of range for dims ({n}, {m})")
    return m * (i - 1) + j


def kron_split(k: int, n: int, m: int) -> tuple[int, int]:
    """Inverse of :func:`kron_index`."""
    if not 1 <= k <= n * m:
        raise IndexError(f"index {k} out of range for dimension {n * m}")
    q, r = divmod(k - 1, m)
    return q + 1, r + 1


def kronecker(a: ZeroOneMatrix, b: ZeroOneMatrix) -> ZeroOneMatrix:
    zero = (0,) * b.n
    rows = tuple(
        sum((brow if av else zero for av in arow), ())
        for arow in a.rows
        for brow in b.rows
    )
    return ZeroOneMatrix._trusted(rows)


def kronecker_all(*mats: ZeroOneMatrix) -> ZeroOneMatrix:
    out = UNIT
    for m in mats:
        out = kronecker(out, m)
    return out


class Classification(NamedTuple):
    nondegenerate: bool
    irreducible: bool
    permutation: bool
    simple_ck: bool


def _reachable(adj: Sequence[Sequence[int]], start: int) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for v, bit in enumerate(adj[u]):
            if bit and v not in seen:
                seen.add(v)
                stack.append(v)
    return seen


def is_strongly_connected(rows: Sequence[Sequence[int]]) -> bool:
    n = len(rows)
    if n == 1:
        return bool(rows[0][0])
    cols = [list(c) for c in zip(*rows)]
    return len(_reachable(rows, 0)) == n and len(_reachable(cols, 0)) == n


def is_permutation(rows: Sequence[Sequence[int]]) -> bool:
    return all(sum(r) == 1 for r in rows) and all(sum(c) == 1 for c in zip(*rows))


def classify(a: ZeroOneMatrix | Sequence[Sequence[int]]) -> Classification:
    """Nondegeneracy, irreducibility and the simplicity criterion for O_A."""
    rows = a.rows if isinstance(a, ZeroOneMatrix) else tuple(tuple(r) for r in a)
    nondeg = all(any(r) for r in rows) and all(any(c) for c in zip(*rows))
    irreducible = is_strongly_connected(rows)
    perm = is_permutation(rows)
    return Classification(nondeg, irreducible, perm, irreducible and not perm)


class DivisorPair(NamedTuple):
    left: ZeroOneMatrix
    right: ZeroOneMatrix


def _block(a: ZeroOneMatrix, i: int, i2: int, size: int) -> list[list[int]]:
    return [list(a.rows[size * i + r][size * i2 : size * i2 + size]) for r in range(size)]


def divisors(a: ZeroOneMatrix) -> list[DivisorPair]:
    """All (B, C) with B (x) C = A, ordered by the dimension of B.

    For each factorisation n = m*l the left factor is forced to be the
    nonzero pattern of the m x m grid of l x l blocks, and the right factor
    is forced to equal any nonzero block; the candidate is then checked.
    """
    n = a.n
    out = []
    for m in range(1, n + 1):
        if n % m:
            continue
        l = n // m
        pattern = [[int(any(any(r) for r in _block(a, i, i2, l))) for i2 in range(m)] for i in range(m)]
        try:
            left = ZeroOneMatrix(pattern)
        except MatrixError:
            continue
        i, i2 = next((i, i2) for i in range(m) for i2 in range(m) if pattern[i][i2])
        try:
            right = ZeroOneMatrix(_block(a, i, i2, l))
        except MatrixError:
            continue
        if kronecker(left, right) == a:
            out.append(DivisorPair(left, right))
    return out


def check_cancellation(a: ZeroOneMatrix, a2: ZeroOneMatrix, b: ZeroOneMatrix, b2: ZeroOneMatrix) -> bool:
    if a.n != a2.n or b.n != b2.n:
        raise MatrixError("cancellation needs A, A' and B, B' of equal dimensions")
    if kronecker(a, b) != kronecker(a2, b2):
        return True
    return a == a2 and b == b2


def all_matrices(n: int) -> Iterator[ZeroOneMatrix]:
    """Every nondegenerate n x n 0-1 matrix, in row-major binary order."""
    for bits in itertools.product((0, 1), repeat=n * n):
        rows = [bits[r * n : (r + 1) * n] for r in range(n)]
        if all(any(r) for r in rows) and all(any(c) for c in zip(*rows)):
            yield ZeroOneMatrix(rows)


def random_matrix(n: int, rng: random.Random, density: float = 0.5) -> ZeroOneMatrix:
    while True:
        rows = [[int(rng.random() < density) for _ in range(n)] for _ in range(n)]
        try:
            return ZeroOneMatrix(rows)
        except MatrixError:
            continue


def parse_matrix(text: str) -> ZeroOneMatrix:
    """Read a matrix from JSON, a whitespace grid, or a ``F<k>`` shortcut."""
    s = text.strip()
    if len(s) > 1 and s[0] in "Ff" and s[1:].isdigit():
        return full(int(s[1:]))
    if s.startswith("{") or s.startswith("["):
        try:
            data = json.loads(s)
        except json.JSONDecodeError as exc:
            raise MatrixError(f"invalid matrix JSON: {exc}") from None
        rows = data["rows"] if isinstance(data, dict) else data
        mat = ZeroOneMatrix(rows)
        if isinstance(data, dict) and "n" in data and data["n"] != mat.n:
            raise MatrixError(f"declared n={data['n']} but rows give {mat.n}")
        return mat
    rows = []
    for line in s.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            rows.append([int(tok) for tok in line.split()])
        except ValueError:
            raise MatrixError(f"cannot read matrix row {line!r}") from None
    return ZeroOneMatrix(rows)


def load_matrix(spec: str) -> ZeroOneMatrix:
    """Matrix from a path, or from a ``F<k>`` name when no such file exists."""
    p = Path(spec)
    if p.is_file():
        return parse_matrix(p.read_text())
    s = spec.strip()
    if len(s) > 1 and s[0] in "Ff" and s[1:].isdigit():
        return full(int(s[1:]))
    if p.suffix or "/" in spec:
        raise MatrixError(f"no such matrix file: {spec}")
    return parse_matrix(spec)
