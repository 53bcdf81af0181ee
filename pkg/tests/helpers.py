"""Random generators and hypothesis strategies shared by the test modules."""

from __future__ import annotations

import math
import random
from fractions import Fraction

import numpy as np
from hypothesis import strategies as st

from ckstar.matrix_monoid import UNIT, MatrixError, ZeroOneMatrix, all_matrices, full, kronecker, random_matrix
from ckstar.star_algebra import AlgebraElement, GaussianRational, Monomial, is_valid_monomial

G = ZeroOneMatrix([[1, 1], [1, 0]])
SWAP = ZeroOneMatrix([[0, 1], [1, 0]])
CYCLE3 = ZeroOneMatrix([[0, 1, 0], [0, 0, 1], [1, 0, 0]])


def rand_word(a: ZeroOneMatrix, length: int, rng: random.Random) -> tuple[int, ...]:
    if length == 0:
        return ()
    w = [rng.randint(1, a.n)]
    while len(w) < length:
        succ = [j + 1 for j in range(a.n) if a.rows[w[-1] - 1][j]]
        w.append(rng.choice(succ))
    return tuple(w)


def rand_monomial(a: ZeroOneMatrix, rng: random.Random, max_len: int = 2) -> Monomial:
    while True:
        m = Monomial(rand_word(a, rng.randint(0, max_len), rng), rand_word(a, rng.randint(0, max_len), rng))
        if is_valid_monomial(a, m):
            return m


def rand_scalar(rng: random.Random) -> GaussianRational:
    re = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
    im = Fraction(rng.randint(-2, 2), rng.randint(1, 2)) if rng.random() < 0.3 else 0
    return GaussianRational(re, im) or GaussianRational(1)


def rand_element(a: ZeroOneMatrix, rng: random.Random, terms: int = 3, max_len: int = 2) -> AlgebraElement:
    x = AlgebraElement.zero(a)
    for _ in range(terms):
        m = rand_monomial(a, rng, max_len)
        x = x + AlgebraElement.monomial(a, m.target, m.source, rand_scalar(rng))
    return x


def rand_degree_le2(a: ZeroOneMatrix, rng: random.Random) -> AlgebraElement:
    """Random element whose monomials have |J|, |K| <= 2."""
    return rand_element(a, rng, terms=rng.randint(1, 3), max_len=2)


def sample_contexts(rng: random.Random, count: int, max_n: int = 8) -> list[ZeroOneMatrix]:
    out = []
    while len(out) < count:
        n = rng.randint(1, max_n)
        out.append(random_matrix(n, rng, density=rng.choice([0.5, 0.7, 0.9])))
    return out


STRUCTURED = [full(1), full(2), G, SWAP, full(3), CYCLE3, full(4), kronecker(G, G), kronecker(full(2), G), full(6)]


@st.composite
def matrices(draw, min_n: int = 1, max_n: int = 4) -> ZeroOneMatrix:
    n = draw(st.integers(min_n, max_n))
    bits = draw(st.lists(st.lists(st.integers(0, 1), min_size=n, max_size=n), min_size=n, max_size=n))
    # force nondegeneracy by a permutation's worth of ones
    perm = draw(st.permutations(range(n)))
    for i, j in enumerate(perm):
        bits[i][j] = 1
    return ZeroOneMatrix(bits)


@st.composite
def elements(draw, a: ZeroOneMatrix, max_terms: int = 3, max_len: int = 2) -> AlgebraElement:
    seed = draw(st.integers(0, 2**32 - 1))
    rng = random.Random(seed)
    return rand_element(a, rng, terms=draw(st.integers(1, max_terms)), max_len=max_len)


def contexts_and_element(max_n: int = 4):
    return matrices(2, max_n).flatmap(lambda a: st.tuples(st.just(a), elements(a)))


# ------------------------------------------------------------------ oracles

CANDIDATES = {n: list(all_matrices(n)) for n in (1, 2, 3)}


def brute_divisors(a: ZeroOneMatrix) -> set:
    """Try every pair of candidate factors of every proper factor dimension."""
    out = {(UNIT, a), (a, UNIT)}
    for m in range(2, a.n):
        if a.n % m:
            continue
        for b in CANDIDATES[m]:
            for c in CANDIDATES[a.n // m]:
                if kronecker(b, c) == a:
                    out.add((b, c))
    return out


def solved_divisors(a: ZeroOneMatrix) -> set:
    """Enumerate every candidate for the smaller factor and solve for the other one.

    Works whenever each proper split has a factor of dimension <= 3, which
    covers every n <= 15.
    """
    out = {(UNIT, a), (a, UNIT)}
    for m in range(2, a.n):
        if a.n % m:
            continue
        l = a.n // m
        if m <= l:
            for b in CANDIDATES[m]:
                p, q = next((i, j) for i in range(m) for j in range(m) if b.rows[i][j])
                block = [row[q * l : (q + 1) * l] for row in a.rows[p * l : (p + 1) * l]]
                try:
                    c = ZeroOneMatrix(block)
                except MatrixError:
                    continue
                if kronecker(b, c) == a:
                    out.add((b, c))
        else:
            for c in CANDIDATES[l]:
                bits = [[int(any(any(row[j * l : (j + 1) * l]) for row in a.rows[i * l : (i + 1) * l])) for j in range(m)] for i in range(m)]
                try:
                    b = ZeroOneMatrix(bits)
                except MatrixError:
                    continue
                if kronecker(b, c) == a:
                    out.add((b, c))
    return out


def rearrangement_divisors(a: ZeroOneMatrix) -> set:
    """A = B (x) C iff the block rearrangement of A is the rank-one matrix vec(B) vec(C)^t."""
    arr = np.array(a.rows)
    out = set()
    for m in range(1, a.n + 1):
        if a.n % m:
            continue
        l = a.n // m
        r = arr.reshape(m, l, m, l).transpose(0, 2, 1, 3).reshape(m * m, l * l)
        nonzero = r.any(axis=1)
        if not nonzero.any():
            continue
        row = r[nonzero][0]
        if not (r[nonzero] == row).all():
            continue
        try:
            b = ZeroOneMatrix(nonzero.reshape(m, m).astype(int).tolist())
            c = ZeroOneMatrix(row.reshape(l, l).tolist())
        except MatrixError:
            continue
        out.add((b, c))
    return out


def period(a: ZeroOneMatrix) -> int:
    """gcd of closed-walk lengths through vertex 1, from BFS levels (a is irreducible)."""
    level = {0: 0}
    queue = [0]
    g = 0
    for u in queue:
        for v in range(a.n):
            if a.rows[u][v]:
                if v in level:
                    g = math.gcd(g, level[u] + 1 - level[v])
                else:
                    level[v] = level[u] + 1
                    queue.append(v)
    return g
