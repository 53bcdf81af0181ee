"""The bialgebra of all Cuntz-Krieger algebras over the Kronecker monoid.

An element of the direct sum is a finite map from context matrices to
elements of the corresponding O_A^(0). The comultiplication sends an element
over A to the sum over all factorisations A = B (x) C of its image under the
embedding O_{B(x)C} -> O_B (x) O_C, s_{m(i-1)+j} -> s_i (x) s_j.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence, Union

from .matrix_monoid import UNIT, ZeroOneMatrix, divisors, kron_split, kronecker
from .star_algebra import (
    IDENTITY,
    ONE,
    ZERO,
    AlgebraElement,
    ContextError,
    GaussianRational,
    Key,
    Monomial,
    format_scalar,
    monomial_product,
    normalize_multi,
)

Scalar = Union[int, Fraction, GaussianRational]


def _context_key(a: ZeroOneMatrix):
    return (a.n, a.rows)


class DirectSumElement:
    """Finitely supported element of the algebraic direct sum of the O_A^(0)."""

    __slots__ = ("components",)

    def __init__(self, components: Mapping[ZeroOneMatrix, AlgebraElement] | Iterable[AlgebraElement] = ()):
        merged: dict[ZeroOneMatrix, AlgebraElement] = {}
        items = components.values() if isinstance(components, Mapping) else components
        if isinstance(components, Mapping):
            for a, x in components.items():
                if x.context != a:
                    raise ContextError(f"component keyed by {a.label()} lives over {x.context.label()}")
        for x in items:
            merged[x.context] = merged[x.context] + x if x.context in merged else x
        self.components = {
            a: merged[a] for a in sorted(merged, key=_context_key) if not merged[a].is_zero()
        }

    @classmethod
    def of(cls, *xs: AlgebraElement) -> DirectSumElement:
        return cls(xs)

    def _zip(self, other: DirectSumElement, op) -> DirectSumElement:
        out = dict(self.components)
        for a, y in other.components.items():
            out[a] = op(out[a], y) if a in out else op(AlgebraElement.zero(a), y)
        return DirectSumElement(out)

    def __add__(self, other):
        return self._zip(_as_direct_sum(other), lambda x, y: x + y)

    def __sub__(self, other):
        return self._zip(_as_direct_sum(other), lambda x, y: x - y)

    def __neg__(self):
        return DirectSumElement({a: -x for a, x in self.components.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return DirectSumElement({a: x.scale(other) for a, x in self.components.items()})
        other = _as_direct_sum(other)
        return DirectSumElement(
            {a: x * other.components[a] for a, x in self.components.items() if a in other.components}
        )

    def __rmul__(self, other):
        return self * other

    def adjoint(self) -> DirectSumElement:
        return DirectSumElement({a: x.adjoint() for a, x in self.components.items()})

    def __eq__(self, other):
        if isinstance(other, AlgebraElement):
            other = DirectSumElement.of(other)
        if not isinstance(other, DirectSumElement):
            return NotImplemented
        return self.components == other.components

    def __hash__(self):
        return hash(frozenset(self.components.items()))

    def is_zero(self) -> bool:
        return not self.components

    def support(self) -> list[ZeroOneMatrix]:
        return list(self.components)

    def __str__(self):
        if not self.components:
            return "0"
        return " + ".join(f"[{a.label()}] ({x})" for a, x in self.components.items())

    def __repr__(self):
        return f"DirectSumElement({self})"


def _as_direct_sum(x) -> DirectSumElement:
    if isinstance(x, DirectSumElement):
        return x
    if isinstance(x, AlgebraElement):
        return DirectSumElement.of(x)
    raise TypeError(f"expected an algebra element, got {type(x).__name__}")


def _key_order(item):
    key, _ = item
    return tuple(_context_key(ctx) for ctx, _ in key) + tuple(m.sort_key() for _, m in key)


class TensorElement:
    """Sum of k-fold tensors of monomials, each leg over its own context."""

    __slots__ = ("arity", "terms")

    def __init__(self, arity: int, raw: Iterable[tuple[Key, Scalar]] | Mapping[Key, Scalar] = (), *, _normal: bool = False):
        self.arity = arity
        if isinstance(raw, Mapping):
            raw = raw.items()
        terms = dict(raw) if _normal else normalize_multi(raw)
        for key in terms:
            if len(key) != arity:
                raise ValueError(f"term of arity {len(key)} in a {arity}-fold tensor")
        self.terms: dict[Key, GaussianRational] = dict(sorted(terms.items(), key=_key_order))

    @classmethod
    def zero(cls, arity: int = 2) -> TensorElement:
        return cls(arity, (), _normal=True)

    @classmethod
    def pure(cls, *xs: AlgebraElement) -> TensorElement:
        """x_1 (x) x_2 (x) ... for algebra elements x_i."""
        raw = [((), ONE)]
        for x in xs:
            raw = [(key + ((x.context, m),), c * v) for key, c in raw for m, v in x.terms.items()]
        return cls(len(xs), raw)

    def _check(self, other: TensorElement):
        if self.arity != other.arity:
            raise ValueError(f"arity mismatch: {self.arity} vs {other.arity}")

    def __add__(self, other: TensorElement) -> TensorElement:
        self._check(other)
        return TensorElement(self.arity, list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self):
        return TensorElement(self.arity, {k: -c for k, c in self.terms.items()}, _normal=True)

    def __sub__(self, other: TensorElement) -> TensorElement:
        return self + (-other)

    def scale(self, c: Scalar) -> TensorElement:
        c = GaussianRational.coerce(c)
        return TensorElement(self.arity, {k: c * v for k, v in self.terms.items() if c}, _normal=True)

    def __mul__(self, other):
        if not isinstance(other, TensorElement):
            return self.scale(other)
        self._check(other)
        # terms over different context tuples sit in orthogonal summands
        by_ctx: dict[tuple, list] = defaultdict(list)
        for key, c in other.terms.items():
            by_ctx[tuple(ctx for ctx, _ in key)].append((key, c))
        raw = []
        for k1, c1 in self.terms.items():
            ctxs = tuple(ctx for ctx, _ in k1)
            for k2, c2 in by_ctx.get(ctxs, ()):
                legs = [monomial_product(ctx, m1, m2) for (ctx, m1), (_, m2) in zip(k1, k2)]
                combos = [()]
                for ctx, options in zip(ctxs, legs):
                    combos = [c + ((ctx, m),) for c in combos for m in options]
                c = c1 * c2
                raw.extend((key, c) for key in combos)
        return TensorElement(self.arity, raw)

    def __rmul__(self, other):
        return self.scale(other)

    def adjoint(self) -> TensorElement:
        return TensorElement(
            self.arity,
            [(tuple((ctx, m.adjoint()) for ctx, m in key), c.conjugate()) for key, c in self.terms.items()],
        )

    def flip(self) -> TensorElement:
        """Reverse the order of the legs."""
        return TensorElement(self.arity, {key[::-1]: c for key, c in self.terms.items()})

    def context_tuples(self) -> list[tuple[ZeroOneMatrix, ...]]:
        seen = []
        for key in self.terms:
            ctxs = tuple(ctx for ctx, _ in key)
            if ctxs not in seen:
                seen.append(ctxs)
        return seen

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.arity == other.arity and self.terms == other.terms

    def __hash__(self):
        return hash((self.arity, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def lines(self) -> list[str]:
        out = []
        for key, c in self.terms.items():
            tag = " (x) ".join(ctx.label() for ctx, _ in key)
            body = " (x) ".join(str(m) for _, m in key)
            out.append(f"[{tag}] {format_scalar(c)} * {body}")
        return out

    def to_json(self) -> list[dict]:
        return [
            {
                "contexts": [ctx.to_json() for ctx, _ in key],
                "coeff": format_scalar(c),
                "real": str(c.real),
                "imag": str(c.imag),
                "monomials": [{"target": list(m.target), "source": list(m.source)} for _, m in key],
                "text": [str(m) for _, m in key],
            }
            for key, c in self.terms.items()
        ]

    @classmethod
    def from_json(cls, data: list[dict], arity: int = 2) -> TensorElement:
        raw = []
        for t in data:
            key = tuple(
                (ZeroOneMatrix(ctx["rows"]), Monomial(tuple(m["target"]), tuple(m["source"])))
                for ctx, m in zip(t["contexts"], t["monomials"])
            )
            raw.append((key, GaussianRational(Fraction(t["real"]), Fraction(t["imag"]))))
        return cls(arity, raw)

    def __str__(self):
        return "\n".join(self.lines()) if self.terms else "0"

    def __repr__(self):
        return f"TensorElement({self.arity}, {len(self.terms)} terms)"


def split_monomial(mono: Monomial, n: int, m: int) -> tuple[Monomial, Monomial]:
    """Image of s_J s_K^* over a product context under s_{m(i-1)+j} -> s_i (x) s_j."""
    jt = [kron_split(x, n, m) for x in mono.target]
    ks = [kron_split(x, n, m) for x in mono.source]
    left = Monomial(tuple(p for p, _ in jt), tuple(p for p, _ in ks))
    right = Monomial(tuple(q for _, q in jt), tuple(q for _, q in ks))
    return left, right


def _phi_on_leg(raw_terms: Iterable[tuple[Key, GaussianRational]], leg: int, b: ZeroOneMatrix, c: ZeroOneMatrix):
    bc = kronecker(b, c)
    for key, coeff in raw_terms:
        ctx, mono = key[leg]
        if ctx != bc:
            raise ContextError(f"leg context {ctx.label()} is not {b.label()} (x) {c.label()}")
        left, right = split_monomial(mono, b.n, c.n)
        yield key[:leg] + ((b, left), (c, right)) + key[leg + 1 :], coeff


def phi(b: ZeroOneMatrix, c: ZeroOneMatrix, x: AlgebraElement) -> TensorElement:
    """The unital *-embedding O_{B(x)C} -> O_B (x) O_C."""
    if x.context != kronecker(b, c):
        raise ContextError(f"phi({b.label()}, {c.label()}) needs an element over their Kronecker product")
    raw = [(((x.context, m),), v) for m, v in x.terms.items()]
    return TensorElement(2, _phi_on_leg(raw, 0, b, c))


def phi_on_leg(t: TensorElement, leg: int, b: ZeroOneMatrix, c: ZeroOneMatrix) -> TensorElement:
    return TensorElement(t.arity + 1, _phi_on_leg(t.terms.items(), leg, b, c))


def _delta_raw(raw: Iterable[tuple[Key, GaussianRational]], leg: int):
    for key, coeff in raw:
        ctx, _ = key[leg]
        for b, c in divisors(ctx):
            yield from _phi_on_leg([(key, coeff)], leg, b, c)


def delta(x: DirectSumElement | AlgebraElement) -> TensorElement:
    """Comultiplication: sum over divisor pairs (B, C) of phi_{B,C}."""
    x = _as_direct_sum(x)
    raw = [(((a, m),), v) for a, comp in x.components.items() for m, v in comp.terms.items()]
    return TensorElement(2, _delta_raw(raw, 0))


def delta_on_leg(t: TensorElement, leg: int) -> TensorElement:
    return TensorElement(t.arity + 1, _delta_raw(t.terms.items(), leg))


def counit(x: DirectSumElement | AlgebraElement) -> GaussianRational:
    """Value of the O_1 = C component; zero on every other summand."""
    x = _as_direct_sum(x)
    comp = x.components.get(UNIT)
    if comp is None:
        return ZERO
    return comp.terms.get(IDENTITY, ZERO)


def counit_on_leg(t: TensorElement, leg: int) -> TensorElement:
    """Contract one leg with the counit; C (x) O_A is identified with O_A."""
    raw = []
    for key, c in t.terms.items():
        ctx, mono = key[leg]
        if ctx == UNIT and mono == IDENTITY:
            raw.append((key[:leg] + key[leg + 1 :], c))
    return TensorElement(t.arity - 1, raw)


def tensor_to_direct_sum(t: TensorElement) -> DirectSumElement:
    if t.arity != 1:
        raise ValueError("only 1-fold tensors are algebra elements")
    comps: dict[ZeroOneMatrix, dict[Monomial, GaussianRational]] = defaultdict(dict)
    for ((ctx, mono),), c in t.terms.items():
        comps[ctx][mono] = c
    return DirectSumElement({a: AlgebraElement(a, terms, _normal=True) for a, terms in comps.items()})


def direct_sum_to_tensor(x: DirectSumElement | AlgebraElement) -> TensorElement:
    x = _as_direct_sum(x)
    return TensorElement(1, {((a, m),): v for a, comp in x.components.items() for m, v in comp.terms.items()}, _normal=True)


def check_counit_laws(x: DirectSumElement | AlgebraElement) -> bool:
    x = _as_direct_sum(x)
    d = delta(x)
    left = tensor_to_direct_sum(counit_on_leg(d, 0))
    right = tensor_to_direct_sum(counit_on_leg(d, 1))
    return left == x and right == x


def check_coassociativity(x: DirectSumElement | AlgebraElement) -> bool:
    d = delta(x)
    return delta_on_leg(d, 0) == delta_on_leg(d, 1)


def check_wcs(a: ZeroOneMatrix, b: ZeroOneMatrix, c: ZeroOneMatrix, x: AlgebraElement) -> bool:
    """(id (x) phi_{B,C}) phi_{A,BC} == (phi_{A,B} (x) id) phi_{AB,C} on x."""
    if x.context != kronecker(kronecker(a, b), c):
        raise ContextError("check_wcs needs an element over A (x) B (x) C")
    lhs = phi_on_leg(phi(a, kronecker(b, c), x), 1, b, c)
    rhs = phi_on_leg(phi(kronecker(a, b), c, x), 0, a, b)
    return lhs == rhs


def check_unit_components(a: ZeroOneMatrix, x: AlgebraElement) -> bool:
    """phi_{1,A}(x) = I (x) x and phi_{A,1}(x) = x (x) I."""
    i1 = AlgebraElement.unit(UNIT)
    return phi(UNIT, a, x) == TensorElement.pure(i1, x) and phi(a, UNIT, x) == TensorElement.pure(x, i1)


def check_homomorphism(x: DirectSumElement | AlgebraElement, y: DirectSumElement | AlgebraElement) -> bool:
    x, y = _as_direct_sum(x), _as_direct_sum(y)
    return delta(x * y) == delta(x) * delta(y) and delta(x.adjoint()) == delta(x).adjoint()


def is_cocommutative_on(x: DirectSumElement | AlgebraElement) -> bool:
    d = delta(x)
    return d == d.flip()


# ---------------------------------------------------------------- gauge action


@dataclass(frozen=True, order=True)
class GaugeExponent:
    """Formal exponent log(value); composition multiplies values."""

    value: Fraction

    def __init__(self, value: int | Fraction):
        value = Fraction(value)
        if value <= 0:
            raise ValueError("gauge exponents are logs of positive numbers")
        object.__setattr__(self, "value", value)

    def __mul__(self, other: GaugeExponent) -> GaugeExponent:
        return GaugeExponent(self.value * other.value)

    def __pow__(self, d: int) -> GaugeExponent:
        return GaugeExponent(self.value**d)

    def is_trivial(self) -> bool:
        return self.value == 1

    def __str__(self):
        v = self.value
        return f"log {v.numerator}" if v.denominator == 1 else f"log({v.numerator}/{v.denominator})"


TRIVIAL_EXPONENT = GaugeExponent(1)


@dataclass(frozen=True)
class Phase:
    """Formal product of z^{log r_z} over named phase variables z."""

    exponents: tuple[tuple[str, GaugeExponent], ...] = ()

    @classmethod
    def make(cls, items: Mapping[str, GaugeExponent] | Iterable[tuple[str, GaugeExponent]]) -> Phase:
        if isinstance(items, Mapping):
            items = items.items()
        acc: dict[str, GaugeExponent] = {}
        for name, e in items:
            acc[name] = acc[name] * e if name in acc else e
        return cls(tuple(sorted((k, v) for k, v in acc.items() if not v.is_trivial())))

    def __mul__(self, other: Phase) -> Phase:
        return Phase.make(self.exponents + other.exponents)

    def exponent(self, name: str) -> GaugeExponent:
        return dict(self.exponents).get(name, TRIVIAL_EXPONENT)

    def evaluate(self, angles: Mapping[str, float]) -> complex:
        """Numeric value with z = exp(i * angle); for display only."""
        import cmath
        import math

        total = sum(angles[name] * math.log(float(e.value)) for name, e in self.exponents)
        return cmath.exp(1j * total)

    def __str__(self):
        if not self.exponents:
            return "1"
        return " ".join(f"{name}^({e})" for name, e in self.exponents)


class PhasedSum:
    """Finite sum of phase-weighted values (direct-sum or tensor elements)."""

    def __init__(self, parts: Mapping[Phase, object] | Iterable[tuple[Phase, object]] = ()):
        if isinstance(parts, Mapping):
            parts = parts.items()
        acc: dict[Phase, object] = {}
        for ph, v in parts:
            acc[ph] = acc[ph] + v if ph in acc else v
        self.parts = {ph: v for ph, v in sorted(acc.items(), key=lambda kv: kv[0].exponents) if not v.is_zero()}

    def __add__(self, other: PhasedSum) -> PhasedSum:
        return PhasedSum(list(self.parts.items()) + list(other.parts.items()))

    def __mul__(self, other: PhasedSum) -> PhasedSum:
        return PhasedSum((p * q, x * y) for p, x in self.parts.items() for q, y in other.parts.items())

    def map(self, f: Callable) -> PhasedSum:
        return PhasedSum((ph, f(v)) for ph, v in self.parts.items())

    def __eq__(self, other):
        if not isinstance(other, PhasedSum):
            return NotImplemented
        return self.parts == other.parts

    def __str__(self):
        if not self.parts:
            return "0"
        return "\n".join(f"{ph} * {v}" for ph, v in self.parts.items())


def _names(z: str | Sequence[str]) -> tuple[str, ...]:
    return (z,) if isinstance(z, str) else tuple(z)


def monomial_phase(z: str | Sequence[str], ctx: ZeroOneMatrix, mono: Monomial) -> Phase:
    e = GaugeExponent(ctx.n) ** mono.degree
    return Phase.make((name, e) for name in _names(z))


def gauge(z: str | Sequence[str], x: DirectSumElement | AlgebraElement | PhasedSum) -> PhasedSum:
    """Modified gauge action: s_i over an n x n context picks up z^{log n}.

    Passing several variable names applies the action of their product,
    so ``gauge(("z", "w"), x) == gauge("z", gauge("w", x))``.
    """
    if not isinstance(x, PhasedSum):
        x = PhasedSum([(Phase(), _as_direct_sum(x))])
    out = []
    for ph, v in x.parts.items():
        for a, comp in v.components.items():
            for m, c in comp.terms.items():
                elem = AlgebraElement(a, {m: c}, _normal=True)
                out.append((ph * monomial_phase(z, a, m), DirectSumElement.of(elem)))
    return PhasedSum(out)


def gauge_tensor(z: str | Sequence[str], t: TensorElement) -> PhasedSum:
    """(lambda_z (x) ... (x) lambda_z) applied to a tensor."""
    out = []
    for key, c in t.terms.items():
        ph = Phase()
        for ctx, m in key:
            ph = ph * monomial_phase(z, ctx, m)
        out.append((ph, TensorElement(t.arity, {key: c}, _normal=True)))
    return PhasedSum(out)


def check_gauge_morphism(x: DirectSumElement | AlgebraElement, z: str = "z") -> bool:
    """Delta o lambda_z == (lambda_z (x) lambda_z) o Delta."""
    lhs = gauge(z, x).map(delta)
    rhs = gauge_tensor(z, delta(x))
    return lhs == rhs


def check_gauge_multiplicative(x, y, z: str = "z") -> bool:
    """lambda_z(xy) == lambda_z(x) lambda_z(y)."""
    x, y = _as_direct_sum(x), _as_direct_sum(y)
    return gauge(z, x * y) == gauge(z, x) * gauge(z, y)


# ----------------------------------------------------------------- subfamilies

FAMILIES = ("C_star", "AF", "CK_sigma", "SF")

SigmaFn = Callable[[ZeroOneMatrix], set]

SIGMA_PRESETS: dict[str, SigmaFn] = {
    "1": lambda a: {1},
    "n": lambda a: {a.n},
    "1n": lambda a: {1, a.n},
}


def monomial_in_family(ctx: ZeroOneMatrix, mono: Monomial, family: str, sigma: SigmaFn | None = None) -> bool:
    if family == "C_star":
        return ctx.is_full()
    if family == "AF":
        return mono.degree == 0
    if family == "SF":
        return mono.is_projection()
    if family == "CK_sigma":
        if sigma is None:
            raise ValueError("CK_sigma membership needs a sigma assignment")
        allowed = sigma(ctx)
        return mono.letters() <= set(allowed)
    raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")


def membership(x: DirectSumElement | AlgebraElement, family: str, sigma: SigmaFn | str | None = None) -> bool:
    """Membership of a normal form in C_*, AF_*, CK_*(Sigma) or SF_*.

    For CK_sigma this is the word-support test: every letter of every
    monomial lies in Sigma_A. It accepts only genuine members but does not
    recognise members whose normal form uses other letters.
    """
    if isinstance(sigma, str):
        sigma = SIGMA_PRESETS[sigma]
    x = _as_direct_sum(x)
    return all(
        monomial_in_family(a, m, family, sigma) for a, comp in x.components.items() for m in comp.terms
    )


def tensor_membership(t: TensorElement, family: str, sigma: SigmaFn | str | None = None) -> bool:
    if isinstance(sigma, str):
        sigma = SIGMA_PRESETS[sigma]
    return all(monomial_in_family(ctx, m, family, sigma) for key in t.terms for ctx, m in key)


def check_family_closure(x: DirectSumElement | AlgebraElement, family: str, sigma: SigmaFn | str | None = None) -> bool:
    """x is in the family and every leg of delta(x) is too."""
    return membership(x, family, sigma) and tensor_membership(delta(x), family, sigma)


# ------------------------------------------------------------------ unitization


@dataclass(frozen=True)
class UnitizedElement:
    """(a, x) = a * 1 + x with an adjoined unit 1."""

    scalar: GaussianRational
    body: DirectSumElement

    def __init__(self, scalar: Scalar = 0, body: DirectSumElement | AlgebraElement | None = None):
        object.__setattr__(self, "scalar", GaussianRational.coerce(scalar))
        object.__setattr__(self, "body", DirectSumElement() if body is None else _as_direct_sum(body))

    def __add__(self, other: UnitizedElement) -> UnitizedElement:
        return UnitizedElement(self.scalar + other.scalar, self.body + other.body)

    def __mul__(self, other: UnitizedElement) -> UnitizedElement:
        a, x, b, y = self.scalar, self.body, other.scalar, other.body
        return UnitizedElement(a * b, y * a + x * b + x * y)

    def adjoint(self) -> UnitizedElement:
        return UnitizedElement(self.scalar.conjugate(), self.body.adjoint())


@dataclass(frozen=True)
class UnitizedTensor:
    """c * (1 (x) 1) + body; the image of the extended comultiplication."""

    scalar: GaussianRational
    body: TensorElement

    def __mul__(self, other: UnitizedTensor) -> UnitizedTensor:
        a, x, b, y = self.scalar, self.body, other.scalar, other.body
        return UnitizedTensor(a * b, y.scale(a) + x.scale(b) + x * y)


def unitized_delta(x: UnitizedElement) -> UnitizedTensor:
    return UnitizedTensor(x.scalar, delta(x.body))


def unitized_counit(x: UnitizedElement) -> GaussianRational:
    return x.scalar + counit(x.body)
