"""Permutative representations of O_A and their tensor products.

A cyclic permutative representation P(J) is modelled by its branching
system: basis vectors are addressed by (W, t) where t is a position on the
central cycle J and W is a finite word hanging off it, so that (W, t) stands
for the infinite sequence W . j_t j_{t+1} ... .  s_i prepends the letter i,
and prepending j_{t-1} to the bare cycle point t moves along the cycle.
Addresses are truncated at a fixed depth |W| <= d.
"""

from __future__ import annotations

import math
from collections import Counter, deque
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Mapping, NamedTuple, Sequence

import numpy as np

from .matrix_monoid import ZeroOneMatrix, kron_index, kronecker
from .star_algebra import AlgebraElement, GaussianRational, Monomial, is_admissible

DEFAULT_DEPTH = 6


class RepresentationError(ValueError):
    pass


def least_rotation(letters: Sequence[int]) -> tuple[int, ...]:
    t = tuple(letters)
    return min(t[i:] + t[:i] for i in range(len(t)))


def primitive_root(letters: Sequence[int]) -> tuple[int, ...]:
    t = tuple(letters)
    p = len(t)
    for r in range(1, p + 1):
        if p % r == 0 and t == t[:r] * (p // r):
            return t[:r]
    return t


@dataclass(frozen=True)
class CycleWord:
    context: ZeroOneMatrix
    letters: tuple[int, ...]

    def __init__(self, context: ZeroOneMatrix, letters: Sequence[int]):
        letters = tuple(int(x) for x in letters)
        if not letters:
            raise RepresentationError("a cycle word needs at least one letter")
        if not is_admissible(context, letters + letters[:1]):
            raise RepresentationError(f"{letters} is not cyclically admissible over {context.label()}")
        object.__setattr__(self, "context", context)
        object.__setattr__(self, "letters", letters)

    @property
    def period(self) -> int:
        return len(self.letters)

    @property
    def primitive(self) -> bool:
        return primitive_root(self.letters) == self.letters

    def canonical(self) -> CycleWord:
        return CycleWord(self.context, least_rotation(self.letters))

    def rotations(self) -> list[tuple[int, ...]]:
        t = self.letters
        return [t[i:] + t[:i] for i in range(len(t))]

    def __str__(self):
        return "P(" + ",".join(map(str, self.letters)) + ")"


def cycle_words(a: ZeroOneMatrix, max_period: int, canonical_only: bool = True) -> list[CycleWord]:
    """Every cyclically admissible word of period <= max_period."""
    out = []
    for p in range(1, max_period + 1):
        for letters in product(range(1, a.n + 1), repeat=p):
            if canonical_only and least_rotation(letters) != letters:
                continue
            if is_admissible(a, letters + letters[:1]):
                out.append(CycleWord(a, letters))
    return out


UNDEF = -1
TRUNC = -2


@dataclass
class BranchingSystem:
    """Partial injections m_i on a finite, depth-truncated address set.

    Addresses are numbered 0..N-1; ``labels[x]`` names address x. A letter map
    is a list whose entry is the image id, ``UNDEF`` outside the domain, or
    ``TRUNC`` when the image lies beyond the truncation depth.
    """

    context: ZeroOneMatrix
    depth: int
    labels: list
    depth_of: list[int]
    maps: dict[int, list[int]]

    def __len__(self):
        return len(self.labels)

    def image(self, letter: int, x: int) -> int:
        return self.maps[letter][x]

    def preimage_maps(self) -> dict[int, list[int]]:
        inv = {}
        for letter, m in self.maps.items():
            back = [UNDEF] * len(self.labels)
            for x, y in enumerate(m):
                if y >= 0:
                    back[y] = x
            inv[letter] = back
        return inv

    def check_invariants(self) -> bool:
        """Injectivity per letter, disjoint ranges, full child sets below the cut."""
        seen: set[int] = set()
        for m in self.maps.values():
            imgs = [y for y in m if y >= 0]
            if len(imgs) != len(set(imgs)) or seen.intersection(imgs):
                return False
            seen.update(imgs)
        for x, d in enumerate(self.depth_of):
            if d < self.depth and any(m[x] == TRUNC for m in self.maps.values()):
                return False
        return True


def _cycle_action(a: ZeroOneMatrix, letters: tuple[int, ...], i: int, addr):
    word, t = addr
    p = len(letters)
    if not word:
        if i == letters[(t - 1) % p]:
            return ((), (t - 1) % p)
        if a.rows[i - 1][letters[t] - 1]:
            return ((i,), t)
        return None
    if a.rows[i - 1][word[0] - 1]:
        return ((i,) + word, t)
    return None


def rep_from_cycle(j: CycleWord, depth: int = DEFAULT_DEPTH) -> BranchingSystem:
    """Standard model of P(J) truncated to words of length <= depth.

    Labels are (W, t) with t a 0-based position on the central cycle.
    """
    a, letters = j.context, j.letters
    labels = [((), t) for t in range(len(letters))]
    ids = {lab: x for x, lab in enumerate(labels)}
    depth_of = [0] * len(labels)
    maps: dict[int, list[int]] = {i: [] for i in range(1, a.n + 1)}
    x = 0
    while x < len(labels):
        addr = labels[x]
        for i in range(1, a.n + 1):
            img = _cycle_action(a, letters, i, addr)
            if img is None:
                maps[i].append(UNDEF)
                continue
            d = len(img[0])
            if d > depth:
                maps[i].append(TRUNC)
                continue
            y = ids.get(img)
            if y is None:
                y = ids[img] = len(labels)
                labels.append(img)
                depth_of.append(d)
            maps[i].append(y)
        x += 1
    return BranchingSystem(a, depth, labels, depth_of, maps)


def tensor_rep(r1: BranchingSystem, r2: BranchingSystem) -> BranchingSystem:
    """(pi_1 (x) pi_2) o phi_{A,B}: letter kron(i, j) acts by (m_i, m_j)."""
    if r1.depth != r2.depth:
        raise RepresentationError("tensor_rep needs equal truncation depths")
    a, b = r1.context, r2.context
    n2 = len(r2)
    labels = [(x, y) for x in r1.labels for y in r2.labels]
    depth_of = np.maximum.outer(np.array(r1.depth_of), np.array(r2.depth_of)).ravel().tolist()
    maps: dict[int, list[int]] = {}
    for i in range(1, a.n + 1):
        u = np.array(r1.maps[i], dtype=np.int64)[:, None]
        for jj in range(1, b.n + 1):
            v = np.array(r2.maps[jj], dtype=np.int64)[None, :]
            img = u * n2 + v
            img = np.where((u == TRUNC) | (v == TRUNC), TRUNC, img)
            img = np.where((u == UNDEF) | (v == UNDEF), UNDEF, img)
            maps[kron_index(i, jj, a.n, b.n)] = img.ravel().tolist()
    return BranchingSystem(kronecker(a, b), r1.depth, labels, depth_of, maps)


def direct_sum_rep(reps: Sequence[BranchingSystem]) -> BranchingSystem:
    if not reps:
        raise RepresentationError("empty direct sum")
    ctx, depth = reps[0].context, reps[0].depth
    labels, depth_of = [], []
    maps: dict[int, list[int]] = {i: [] for i in range(1, ctx.n + 1)}
    for idx, r in enumerate(reps):
        if r.context != ctx or r.depth != depth:
            raise RepresentationError("direct sum of systems with different contexts or depths")
        off = len(labels)
        labels.extend((idx, lab) for lab in r.labels)
        depth_of.extend(r.depth_of)
        for letter, m in r.maps.items():
            maps[letter].extend(y + off if y >= 0 else y for y in m)
    return BranchingSystem(ctx, depth, labels, depth_of, maps)


def find_isomorphism(s: BranchingSystem, t: BranchingSystem) -> list[int] | None:
    """Depth-preserving bijection of address sets intertwining every letter map.

    Each connected piece of ``s`` is anchored at its first address and the
    anchor is tried against every unused address of ``t`` of equal depth;
    the rest of the piece is forced by following letter maps both ways.
    Returns f with f[x] the image of address x, or None.
    """
    if s.context != t.context or len(s) != len(t):
        return None
    n = len(s)
    smaps, tmaps = list(s.maps.values()), [t.maps[k] for k in s.maps]
    sinv_d, tinv_d = s.preimage_maps(), t.preimage_maps()
    sinv, tinv = [sinv_d[k] for k in s.maps], [tinv_d[k] for k in s.maps]
    sdep, tdep = s.depth_of, t.depth_of
    f = [UNDEF] * n
    g = [UNDEF] * n

    def propagate(x0: int, y0: int) -> bool:
        added = []
        queue = deque([(x0, y0)])
        ok = True
        while queue and ok:
            x, y = queue.popleft()
            fx = f[x]
            if fx != UNDEF:
                ok = fx == y
                continue
            if g[y] != UNDEF or sdep[x] != tdep[y]:
                ok = False
                break
            f[x], g[y] = y, x
            added.append(x)
            for sm, tm, si, ti in zip(smaps, tmaps, sinv, tinv):
                sx, ty = sm[x], tm[y]
                if (sx >= 0) != (ty >= 0) or (sx < 0 and sx != ty):
                    ok = False
                    break
                if sx >= 0:
                    queue.append((sx, ty))
                px, py = si[x], ti[y]
                if (px >= 0) != (py >= 0):
                    ok = False
                    break
                if px >= 0:
                    queue.append((px, py))
        if not ok:
            for x in added:
                g[f[x]] = UNDEF
                f[x] = UNDEF
        return ok

    for anchor in range(n):
        if f[anchor] != UNDEF:
            continue
        for cand in range(n):
            if g[cand] == UNDEF and tdep[cand] == sdep[anchor] and propagate(anchor, cand):
                break
        else:
            return None
    return f


class Decomposition(NamedTuple):
    """Multiset of cyclic components as (canonical word, multiplicity)."""

    context: ZeroOneMatrix
    components: tuple[tuple[CycleWord, int], ...]

    def words(self) -> list[CycleWord]:
        return [w for w, mult in self.components for _ in range(mult)]

    def counter(self) -> Counter:
        return Counter({w.letters: mult for w, mult in self.components})

    def total_length(self) -> int:
        return sum(w.period * mult for w, mult in self.components)

    def lines(self, tag: str | None = None) -> list[str]:
        tag = tag or self.context.label()
        out = []
        for w, mult in self.components:
            flag = "primitive" if w.primitive else "non-primitive"
            line = f"{w} over {tag} [{flag}]"
            if mult > 1:
                line += f" x{mult}"
            out.append(line)
        return out


def make_decomposition(context: ZeroOneMatrix, words: Iterable[CycleWord]) -> Decomposition:
    counts = Counter(w.canonical().letters for w in words)
    comps = tuple(
        (CycleWord(context, letters), mult)
        for letters, mult in sorted(counts.items(), key=lambda kv: (len(kv[0]), kv[0]))
    )
    return Decomposition(context, comps)


def decompose(j: CycleWord, k: CycleWord) -> Decomposition:
    """Cyclic components of P(J) (x)_phi P(K).

    The central cycle of the product is Z_p x Z_q under the diagonal shift;
    it splits into gcd(p, q) orbits of length lcm(p, q), each read off as a
    cycle word over A (x) B.
    """
    a, b = j.context, k.context
    ab = kronecker(a, b)
    p, q = j.period, k.period
    g, length = math.gcd(p, q), p * q // math.gcd(p, q)
    words = []
    for b0 in range(g):
        letters = [kron_index(j.letters[t % p], k.letters[(b0 + t) % q], a.n, b.n) for t in range(length)]
        words.append(CycleWord(ab, letters))
    return make_decomposition(ab, words)


def decompose_sum(js: Sequence[CycleWord], ks: Sequence[CycleWord]) -> Decomposition:
    """Tensor product of two direct sums of cyclic representations."""
    if not js or not ks:
        raise RepresentationError("empty direct sum")
    ab = kronecker(js[0].context, ks[0].context)
    words = [w for x in js for y in ks for w in decompose(x, y).words()]
    return make_decomposition(ab, words)


def verify_decomposition(j: CycleWord, k: CycleWord, dec: Decomposition, depth: int = DEFAULT_DEPTH) -> bool:
    """Exact isomorphism of the truncated systems P(J)(x)P(K) and the sum of components."""
    if dec.context != kronecker(j.context, k.context) or not dec.components:
        return False
    lhs = tensor_rep(rep_from_cycle(j, depth), rep_from_cycle(k, depth))
    rhs = direct_sum_rep([rep_from_cycle(w, depth) for w in dec.words()])
    return find_isomorphism(rhs, lhs) is not None


def equivalent(j: CycleWord, j2: CycleWord) -> bool | None:
    """Unitary equivalence of P(J) and P(J'); None when it hinges on a non-primitive word."""
    if j.context != j2.context:
        raise RepresentationError("equivalence is only defined over one context")
    r1, r2 = primitive_root(j.letters), primitive_root(j2.letters)
    same_root = least_rotation(r1) == least_rotation(r2)
    if not same_root:
        return False
    if not (j.primitive and j2.primitive):
        return None
    return True


# ------------------------------------------------------------- path evaluation


class PathRepresentation:
    """Action of O_A^(0) on basis vectors of l^2(X_A).

    A basis vector is written as a finite admissible prefix followed by an
    unspecified generic tail, so s_J s_K^* acts on it whenever the prefix is
    longer than K. This is an evaluation route independent of the normal
    form and is used to check algebraic identities.
    """

    def __init__(self, a: ZeroOneMatrix):
        if a.n == 1:
            raise RepresentationError("the 1x1 context is C; there is no path space to act on")
        self.context = a

    def apply_monomial(self, mono: Monomial, word: tuple[int, ...]) -> tuple[int, ...] | None:
        j, k = mono
        if len(word) <= len(k):
            raise RepresentationError(f"prefix {word} too short for s_K^* with |K| = {len(k)}")
        if word[: len(k)] != k:
            return None
        rest = word[len(k) :]
        if j and not self.context.rows[j[-1] - 1][rest[0] - 1]:
            return None
        return j + rest

    def apply(self, x: AlgebraElement, vec: Mapping[tuple[int, ...], GaussianRational]) -> dict:
        if x.context != self.context:
            raise RepresentationError("element lives over another context")
        out: dict[tuple[int, ...], GaussianRational] = {}
        for word, c in vec.items():
            for mono, v in x.terms.items():
                img = self.apply_monomial(mono, word)
                if img is not None:
                    out[img] = out.get(img, GaussianRational(0)) + c * v
        return {w: c for w, c in out.items() if c}

    def basis(self, length: int) -> list[tuple[int, ...]]:
        from .subshift import words

        return words(self.context, length)

    def operator(self, x: AlgebraElement, depth: int = DEFAULT_DEPTH) -> dict:
        """Column-by-column matrix of x on all prefixes of the given length."""
        one = GaussianRational(1)
        return {w: self.apply(x, {w: one}) for w in self.basis(depth)}

    def compose(self, xs: Sequence[AlgebraElement], depth: int = DEFAULT_DEPTH) -> dict:
        """Matrix of the product xs[0] xs[1] ... evaluated factor by factor."""
        one = GaussianRational(1)
        out = {}
        for w in self.basis(depth):
            vec = {w: one}
            for x in reversed(xs):
                vec = self.apply(x, vec)
            out[w] = vec
        return out
