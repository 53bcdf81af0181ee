"""Exact arithmetic in the algebraic core O_A^(0) of a Cuntz-Krieger algebra.

Elements are finite sums of monomials s_J s_K^* with Gaussian-rational
coefficients. Equality is decided structurally on a canonical normal form:

* terms are grouped by gauge degree |J| - |K|;
* inside a degree every monomial is pushed to a common source length with
  s_J s_K^* = sum_i chi(J,i) chi(K,i) s_{Ji} s_{Ki}^*  (from sum_i s_i s_i^* = I);
* like terms are merged, then the inverse step is applied wherever a
  complete, equal-coefficient family of children is present, down to the
  smallest source length at which the element can be written.

Leveled monomials of a fixed degree and source length are linearly
independent (their path-space actions have disjoint graphs), so the smallest
level is unique and the resulting form is canonical.

The same machinery normalizes sums of k-fold tensors of monomials; see
:func:`normalize_multi`.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Sequence, Union

from .matrix_monoid import ZeroOneMatrix, full

Rational = Union[int, Fraction]


_FZERO = Fraction(0)


class GaussianRational:
    """a + b i with a, b exact rationals."""

    __slots__ = ("real", "imag")

    def __init__(self, real: Rational = 0, imag: Rational = 0):
        self.real = real if type(real) is Fraction else Fraction(real)
        self.imag = imag if type(imag) is Fraction else Fraction(imag)

    @classmethod
    def coerce(cls, x) -> GaussianRational:
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x)
        if isinstance(x, complex):
            raise TypeError("floating complex values are not exact; use GaussianRational")
        raise TypeError(f"cannot use {type(x).__name__} as a coefficient")

    def __add__(self, other):
        o = other if type(other) is GaussianRational else GaussianRational.coerce(other)
        if not self.imag and not o.imag:
            return GaussianRational(self.real + o.real, _FZERO)
        return GaussianRational(self.real + o.real, self.imag + o.imag)

    __radd__ = __add__

    def __sub__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.real - o.real, self.imag - o.imag)

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __mul__(self, other):
        o = GaussianRational.coerce(other)
        if not o.imag and not self.imag:
            return GaussianRational(self.real * o.real)
        return GaussianRational(
            self.real * o.real - self.imag * o.imag, self.real * o.imag + self.imag * o.real
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = GaussianRational.coerce(other)
        den = o.real * o.real + o.imag * o.imag
        if not den:
            raise ZeroDivisionError("division by zero")
        num = self * o.conjugate()
        return GaussianRational(num.real / den, num.imag / den)

    def __neg__(self):
        return GaussianRational(-self.real, -self.imag)

    def conjugate(self) -> GaussianRational:
        return GaussianRational(self.real, -self.imag)

    def __bool__(self):
        return bool(self.real) or bool(self.imag)

    def __eq__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.real == o.real and self.imag == o.imag

    def __hash__(self):
        return hash((self.real, self.imag))

    def __complex__(self):
        return complex(float(self.real), float(self.imag))

    def __repr__(self):
        return f"GaussianRational({self.real}, {self.imag})"

    def __str__(self):
        return format_scalar(self)


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I_UNIT = GaussianRational(0, 1)


def _fmt_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(c: GaussianRational) -> str:
    """Text form that the expression parser reads back."""
    re, im = c.real, c.imag
    if not im:
        return _fmt_rational(re)
    mag = abs(im)
    if mag == 1:
        body = "i"
    else:
        body = f"{_fmt_rational(mag)}i" if mag.denominator == 1 else f"({_fmt_rational(mag)})i"
    if not re:
        return f"-{body}" if im < 0 else body
    sign = "-" if im < 0 else "+"
    return f"{_fmt_rational(re)}{sign}{body}"


class Monomial(NamedTuple):
    """s_J s_K^*, stored as (J, K)."""

    target: tuple[int, ...]
    source: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.target) - len(self.source)

    def adjoint(self) -> Monomial:
        return Monomial(self.source, self.target)

    def is_projection(self) -> bool:
        return self.target == self.source

    def letters(self) -> set[int]:
        return set(self.target) | set(self.source)

    def sort_key(self):
        return (self.degree, len(self.source), self.target, self.source)

    def __str__(self) -> str:
        parts = [f"s{j}" for j in self.target]
        parts += [f"s{k}*" for k in reversed(self.source)]
        return " ".join(parts) if parts else "I"


IDENTITY = Monomial((), ())


class ContextError(ValueError):
    """Operands live over different matrices."""


def is_admissible(a: ZeroOneMatrix, word: Sequence[int]) -> bool:
    n = a.n
    if any(not 1 <= w <= n for w in word):
        return False
    rows = a.rows
    return all(rows[x - 1][y - 1] for x, y in zip(word, word[1:]))


def _chi(a: ZeroOneMatrix, word: Sequence[int], i: int) -> int:
    return a.rows[word[-1] - 1][i - 1] if word else 1


def is_valid_monomial(a: ZeroOneMatrix, mono: Monomial) -> bool:
    """Admissible words and a common successor of the two last letters."""
    j, k = mono
    if not (is_admissible(a, j) and is_admissible(a, k)):
        return False
    if j and k:
        rj, rk = a.rows[j[-1] - 1], a.rows[k[-1] - 1]
        return any(x and y for x, y in zip(rj, rk))
    return True


def level_up(a: ZeroOneMatrix, mono: Monomial) -> list[Monomial]:
    j, k = mono
    return [
        Monomial(j + (i,), k + (i,))
        for i in range(1, a.n + 1)
        if _chi(a, j, i) and _chi(a, k, i)
    ]


def monomial_product(a: ZeroOneMatrix, x: Monomial, y: Monomial) -> list[Monomial]:
    """(s_J s_K^*)(s_L s_M^*) as a list of monomials with coefficient 1."""
    j, k = x
    l, m = y
    if len(l) >= len(k):
        if l[: len(k)] != k:
            return []
        rest = l[len(k) :]
        if rest:
            # s_K^* s_K s_rest = s_rest, since K.rest is admissible
            if not _chi(a, j, rest[0]):
                return []
            out = Monomial(j + rest, m)
            return [out] if is_valid_monomial(a, out) else []
        if not k:
            out = Monomial(j, m)
            return [out] if is_valid_monomial(a, out) else []
        # s_K^* s_K = sum_i a_{k,i} s_i s_i^*
        row = a.rows[k[-1] - 1]
        return [
            Monomial(j + (i,), m + (i,))
            for i in range(1, a.n + 1)
            if row[i - 1] and _chi(a, j, i) and _chi(a, m, i)
        ]
    if k[: len(l)] != l:
        return []
    rest = k[len(l) :]
    if not _chi(a, m, rest[0]):
        return []
    out = Monomial(j, m + rest)
    return [out] if is_valid_monomial(a, out) else []


# A leg of a k-fold tensor term is (context, monomial).
Leg = tuple[ZeroOneMatrix, Monomial]
Key = tuple[Leg, ...]


def _collapse_leg(terms: dict[Key, GaussianRational], leg: int) -> dict[Key, GaussianRational] | None:
    """Undo one leveling step on ``leg`` if the terms allow it, else None."""
    parents: dict[Key, dict[int, GaussianRational]] = defaultdict(dict)
    for key, c in terms.items():
        ctx, (j, k) = key[leg]
        if not j or not k or j[-1] != k[-1]:
            return None
        parent = key[:leg] + ((ctx, Monomial(j[:-1], k[:-1])),) + key[leg + 1 :]
        parents[parent][j[-1]] = c
    out = {}
    for parent, kids in parents.items():
        ctx, mono = parent[leg]
        expected = [m.target[-1] for m in level_up(ctx, mono)]
        if len(expected) != len(kids) or any(i not in kids for i in expected):
            return None
        first = kids[expected[0]]
        if any(kids[i] != first for i in expected[1:]):
            return None
        out[parent] = first
    return out


def normalize_multi(raw: Iterable[tuple[Key, object]]) -> dict[Key, GaussianRational]:
    """Canonical form of a sum of k-fold tensors of monomials.

    Invalid monomials (inadmissible words, vanishing pairs) are dropped and
    every leg over the 1x1 matrix collapses to the unit, since O_1 = C.
    """
    acc: dict[Key, GaussianRational] = defaultdict(lambda: ZERO)
    for key, c in raw:
        c = GaussianRational.coerce(c)
        if not c:
            continue
        new = []
        for ctx, mono in key:
            if ctx.n == 1:
                if not (all(x == 1 for x in mono.target) and all(x == 1 for x in mono.source)):
                    break
                mono = IDENTITY
            elif not is_valid_monomial(ctx, mono):
                break
            new.append((ctx, mono))
        else:
            nk = tuple(new)
            acc[nk] = acc[nk] + c

    groups: dict[tuple, dict[Key, GaussianRational]] = defaultdict(dict)
    for key, c in acc.items():
        if c:
            gid = tuple((ctx, mono.degree) for ctx, mono in key)
            groups[gid][key] = c

    out: dict[Key, GaussianRational] = {}
    for terms in groups.values():
        if not terms:
            continue
        arity = len(next(iter(terms)))
        for leg in range(arity):
            top = max(len(key[leg][1].source) for key in terms)
            leveled: dict[Key, GaussianRational] = defaultdict(lambda: ZERO)
            for key, c in terms.items():
                ctx, mono = key[leg]
                frontier = [mono]
                for _ in range(top - len(mono.source)):
                    frontier = [child for m in frontier for child in level_up(ctx, m)]
                for m in frontier:
                    nk = key[:leg] + ((ctx, m),) + key[leg + 1 :]
                    leveled[nk] = leveled[nk] + c
            terms = {k: c for k, c in leveled.items() if c}
        changed = bool(terms)
        while changed:
            changed = False
            for leg in range(arity):
                while terms:
                    collapsed = _collapse_leg(terms, leg)
                    if collapsed is None:
                        break
                    terms = collapsed
                    changed = True
        out.update(terms)
    return out


Scalar = Union[int, Fraction, GaussianRational]


class AlgebraElement:
    """Element of O_A^(0) in canonical normal form."""

    __slots__ = ("context", "terms", "_hash")

    def __init__(self, context: ZeroOneMatrix, terms: Mapping[Monomial, Scalar] | None = None, *, _normal: bool = False):
        self.context = context
        if terms is None:
            terms = {}
        if not _normal:
            norm = normalize_multi((((context, Monomial(*m)),), c) for m, c in terms.items())
            terms = {key[0][1]: c for key, c in norm.items()}
        self.terms: dict[Monomial, GaussianRational] = dict(
            sorted(terms.items(), key=lambda kv: kv[0].sort_key())
        )
        self._hash = None

    # construction helpers
    @classmethod
    def zero(cls, a: ZeroOneMatrix) -> AlgebraElement:
        return cls(a, {}, _normal=True)

    @classmethod
    def unit(cls, a: ZeroOneMatrix, coeff: Scalar = 1) -> AlgebraElement:
        return cls(a, {IDENTITY: coeff})

    @classmethod
    def monomial(cls, a: ZeroOneMatrix, target: Sequence[int], source: Sequence[int] = (), coeff: Scalar = 1) -> AlgebraElement:
        return cls(a, {Monomial(tuple(target), tuple(source)): coeff})

    def _check(self, other: AlgebraElement):
        if self.context != other.context:
            raise ContextError(f"context mismatch: {self.context.label()} vs {other.context.label()}")

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
            other = AlgebraElement.unit(self.context, GaussianRational.coerce(other))
        self._check(other)
        merged = dict(self.terms)
        for m, c in other.terms.items():
            merged[m] = merged.get(m, ZERO) + c
        return AlgebraElement(self.context, merged)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement(self.context, {m: -c for m, c in self.terms.items()}, _normal=True)

    def __sub__(self, other):
        if not isinstance(other, AlgebraElement):
            other = AlgebraElement.unit(self.context, GaussianRational.coerce(other))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Scalar) -> AlgebraElement:
        c = GaussianRational.coerce(c)
        if not c:
            return AlgebraElement.zero(self.context)
        return AlgebraElement(self.context, {m: c * v for m, v in self.terms.items()}, _normal=True)

    def __mul__(self, other):
        if not isinstance(other, AlgebraElement):
            return self.scale(other)
        self._check(other)
        a = self.context
        raw = []
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                c = c1 * c2
                for m in monomial_product(a, m1, m2):
                    raw.append((((a, m),), c))
        norm = normalize_multi(raw)
        return AlgebraElement(a, {k[0][1]: c for k, c in norm.items()}, _normal=True)

    def __rmul__(self, other):
        return self.scale(other)

    def adjoint(self) -> AlgebraElement:
        return AlgebraElement(self.context, {m.adjoint(): c.conjugate() for m, c in self.terms.items()})

    def __pow__(self, k: int) -> AlgebraElement:
        out = AlgebraElement.unit(self.context)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = AlgebraElement.unit(self.context, other)
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.context == other.context and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.context, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def scalar_value(self) -> GaussianRational | None:
        """The coefficient c when the element equals c * I, else None."""
        if not self.terms:
            return ZERO
        if list(self.terms) == [IDENTITY]:
            return self.terms[IDENTITY]
        return None

    def degrees(self) -> set[int]:
        return {m.degree for m in self.terms}

    def __str__(self):
        return format_terms(self.terms.items())

    def __repr__(self):
        return f"AlgebraElement({self.context.label()}: {self})"


def format_term(c: GaussianRational, mono: Monomial) -> str:
    body = str(mono)
    if c == ONE:
        return body
    if c == -ONE:
        return f"-{body}"
    s = format_scalar(c)
    if c.imag and c.real:
        s = f"({s})"
    elif not c.imag and c.real.denominator != 1:
        s = f"({s})" if c.real > 0 else f"-({format_scalar(-c)})"
    return f"{s} {body}"


def format_terms(items: Iterable[tuple[Monomial, GaussianRational]]) -> str:
    out = ""
    for mono, c in items:
        t = format_term(c, mono)
        if not out:
            out = t
        elif t.startswith("-"):
            out += " - " + t[1:]
        else:
            out += " + " + t
    return out or "0"


def generator(a: ZeroOneMatrix, i: int) -> AlgebraElement:
    """s_i in O_A; over the 1x1 matrix s_1 is the unit."""
    if not 1 <= i <= a.n:
        raise IndexError(f"generator s{i} out of range for a {a.n}x{a.n} context")
    return AlgebraElement.monomial(a, (i,))


def unit(a: ZeroOneMatrix) -> AlgebraElement:
    return AlgebraElement.unit(a)


def multiply(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    return x * y


def adjoint(x: AlgebraElement) -> AlgebraElement:
    return x.adjoint()


def normalize(a: ZeroOneMatrix, raw: Iterable[tuple[Scalar, Sequence[int], Sequence[int]]]) -> AlgebraElement:
    """Normal form of sum c * s_J s_K^* from (c, J, K) triples."""
    terms = [(((a, Monomial(tuple(j), tuple(k))),), c) for c, j, k in raw]
    norm = normalize_multi(terms)
    return AlgebraElement(a, {k[0][1]: c for k, c in norm.items()}, _normal=True)


def gauge_components(x: AlgebraElement) -> dict[int, AlgebraElement]:
    parts: dict[int, dict[Monomial, GaussianRational]] = defaultdict(dict)
    for m, c in x.terms.items():
        parts[m.degree][m] = c
    return {d: AlgebraElement(x.context, t, _normal=True) for d, t in sorted(parts.items())}


def word_element(a: ZeroOneMatrix, word: Sequence[int]) -> AlgebraElement:
    """s_J as a product of generators (zero exactly when J is inadmissible)."""
    out = AlgebraElement.unit(a)
    for w in word:
        out = out * generator(a, w)
    return out


def cuntz_krieger_relations(a: ZeroOneMatrix) -> list[AlgebraElement]:
    """s_i^* s_i - sum_j a_ij s_j s_j^* for each i, then sum_i s_i s_i^* - I."""
    gens = [generator(a, i) for i in range(1, a.n + 1)]
    projs = [g * g.adjoint() for g in gens]
    rels = []
    for i, g in enumerate(gens):
        rhs = AlgebraElement.zero(a)
        for j in range(a.n):
            if a.rows[i][j]:
                rhs = rhs + projs[j]
        rels.append(g.adjoint() * g - rhs)
    total = AlgebraElement.zero(a)
    for p in projs:
        total = total + p
    rels.append(total - AlgebraElement.unit(a))
    return rels


__all__ = [
    "GaussianRational",
    "Monomial",
    "AlgebraElement",
    "ContextError",
    "generator",
    "unit",
    "multiply",
    "adjoint",
    "normalize",
    "normalize_multi",
    "gauge_components",
    "word_element",
    "cuntz_krieger_relations",
    "is_admissible",
    "is_valid_monomial",
    "level_up",
    "monomial_product",
    "full",
]
