"""Polynomials in the even coordinate with Grassmann coefficients, and their
field of fractions.

A :class:`ComponentFunction` is a polynomial in ``z`` whose coefficients are
homogeneous Grassmann numbers of one declared parity.  Denominators in
:class:`RationalComponent` are even with a body polynomial that is not
identically zero; such polynomials are non-zero-divisors, so equality by
cross multiplication is a genuine equivalence relation.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import AlgebraMismatch, NotInvertible, ParityError
from .grassmann import (
    GaussianRational,
    GrassmannNumber,
    Parity,
    common_scale,
    normalize_terms,
    reorder_sign,
    scalar_to_pair,
    sign_table,
)

# Term keys pack (power, mask) into one int as (power << gens) | mask; for
# disjoint masks plain key addition then combines powers and masks at once.
Key = int
PolyTerms = Dict[Key, Tuple[int, int]]


def _merge_poly(
    s1: Fraction, t1: PolyTerms, s2: Fraction, t2: PolyTerms, negate_second: bool = False
) -> Tuple[Fraction, PolyTerms]:
    if not t1:
        if negate_second:
            return s2, {k: (-re, -im) for k, (re, im) in t2.items()}
        return s2, dict(t2)
    if not t2:
        return s1, dict(t1)
    s, k1, k2 = common_scale(s1, s2)
    if negate_second:
        k2 = -k2
    out: PolyTerms = {k: (re * k1, im * k1) for k, (re, im) in t1.items()}
    for k, (re, im) in t2.items():
        cur = out.get(k)
        if cur is None:
            out[k] = (re * k2, im * k2)
        else:
            out[k] = (cur[0] + re * k2, cur[1] + im * k2)
    return s, out


def _group_by_mask(terms: PolyTerms, mask_all: int) -> Dict[int, list]:
    groups: Dict[int, list] = {}
    for key, coeff in terms.items():
        mask = key & mask_all
        bucket = groups.get(mask)
        if bucket is None:
            groups[mask] = [(key, coeff)]
        else:
            bucket.append((key, coeff))
    return groups


def _mul_poly(gens: int, t1: PolyTerms, t2: PolyTerms) -> PolyTerms:
    """Convolution of term maps; left factor's coefficients multiply from the left.

    Terms are grouped by mask so the reordering sign is computed once per
    mask pair, and the inner loops run on plain integer arithmetic.
    """
    table = sign_table(gens)
    mask_all = (1 << gens) - 1
    groups1 = _group_by_mask(t1, mask_all)
    groups2 = _group_by_mask(t2, mask_all)
    out: PolyTerms = {}
    out_get = out.get
    for m1, bucket1 in groups1.items():
        base = m1 << gens
        for m2, bucket2 in groups2.items():
            if m1 & m2:
                continue
            if table is not None:
                sgn = table[base | m2]
            else:
                sgn = reorder_sign(m1, m2)
            if sgn > 0:
                for k1, (r1, i1) in bucket1:
                    for k2, (r2, i2) in bucket2:
                        if i1 or i2:
                            re = r1 * r2 - i1 * i2
                            im = r1 * i2 + i1 * r2
                        else:
                            re = r1 * r2
                            im = 0
                        k = k1 + k2
                        cur = out_get(k)
                        out[k] = (re, im) if cur is None else (cur[0] + re, cur[1] + im)
            else:
                for k1, (r1, i1) in bucket1:
                    for k2, (r2, i2) in bucket2:
                        if i1 or i2:
                            re = i1 * i2 - r1 * r2
                            im = -(r1 * i2 + i1 * r2)
                        else:
                            re = -(r1 * r2)
                            im = 0
                        k = k1 + k2
                        cur = out_get(k)
                        out[k] = (re, im) if cur is None else (cur[0] + re, cur[1] + im)
    return out


class ComponentFunction:
    """Polynomial in the even coordinate with homogeneous Grassmann coefficients."""

    __slots__ = ("gens", "parity", "_scale", "_terms")

    def __init__(
        self,
        coefficients: Sequence[GrassmannNumber],
        parity: Parity,
        gens: Optional[int] = None,
    ):
        if gens is None:
            if not coefficients:
                raise ValueError("generator count required for an empty coefficient list")
            gens = coefficients[0].gens
        scale = Fraction(1)
        terms: PolyTerms = {}
        for power, coeff in enumerate(coefficients):
            if coeff.gens != gens:
                raise AlgebraMismatch("algebra mismatch among coefficients")
            if coeff.is_zero():
                continue
            if not coeff.has_parity(parity):
                raise ParityError(
                    f"coefficient of z^{power} is not homogeneous of parity {parity.name}"
                )
            lifted = {(power << gens) | m: pair for m, pair in coeff._terms.items()}
            scale, terms = _merge_poly(scale, terms, coeff._scale, lifted)
        self.gens = gens
        self.parity = parity
        scale, terms = normalize_terms(scale, terms)
        self._scale = scale
        self._terms = terms

    @classmethod
    def _make(cls, gens: int, parity: Parity, scale: Fraction, terms: PolyTerms) -> "ComponentFunction":
        self = object.__new__(cls)
        self.gens = gens
        self.parity = parity
        scale, terms = normalize_terms(scale, terms)
        self._scale = scale
        self._terms = terms
        return self

    # --------------------------------------------------------------- builders

    @classmethod
    def zero(cls, parity: Parity, gens: int) -> "ComponentFunction":
        return cls._make(gens, parity, Fraction(1), {})

    @classmethod
    def one(cls, gens: int) -> "ComponentFunction":
        return cls._make(gens, Parity.EVEN, Fraction(1), {(0, 0): (1, 0)})

    @classmethod
    def coordinate(cls, gens: int) -> "ComponentFunction":
        """The identity polynomial z."""
        return cls._make(gens, Parity.EVEN, Fraction(1), {(1, 0): (1, 0)})

    @classmethod
    def constant(cls, value: GrassmannNumber, parity: Optional[Parity] = None) -> "ComponentFunction":
        if parity is None:
            parity = value.parity
            if parity is None:
                raise ParityError("constant is not homogeneous; declare a parity")
        return cls([value], parity, value.gens)

    # ---------------------------------------------------------------- queries

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self) -> int:
        """Largest power with a nonzero coefficient; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(p for p, _ in self._terms)

    def coefficient(self, power: int) -> GrassmannNumber:
        terms = {m: pair for (p, m), pair in self._terms.items() if p == power}
        return GrassmannNumber._make(self.gens, self._scale, terms)

    def coefficients(self) -> List[GrassmannNumber]:
        """Coefficient list up to the degree, trailing zeros trimmed."""
        return [self.coefficient(k) for k in range(self.degree + 1)]

    def body_is_zero(self) -> bool:
        """True when every coefficient has zero body (the body polynomial vanishes)."""
        return all(m != 0 for _, m in self._terms)

    def body_coefficients(self) -> List[GaussianRational]:
        return [self.coefficient(k).body() for k in range(self.degree + 1)]

    def _check_same_algebra(self, other: "ComponentFunction") -> None:
        if self.gens != other.gens:
            raise AlgebraMismatch(
                f"algebra mismatch: {self.gens} vs {other.gens} generators"
            )

    # ------------------------------------------------------------- arithmetic

    def __add__(self, other):
        if not isinstance(other, ComponentFunction):
            return NotImplemented
        self._check_same_algebra(other)
        parity = self.parity
        if self.is_zero():
            parity = other.parity
        elif not other.is_zero() and other.parity != self.parity:
            raise ParityError("cannot add polynomials of opposite parity")
        scale, terms = _merge_poly(self._scale, self._terms, other._scale, other._terms)
        return ComponentFunction._make(self.gens, parity, scale, terms)

    def __sub__(self, other):
        if not isinstance(other, ComponentFunction):
            return NotImplemented
        self._check_same_algebra(other)
        parity = self.parity
        if self.is_zero():
            parity = other.parity
        elif not other.is_zero() and other.parity != self.parity:
            raise ParityError("cannot subtract polynomials of opposite parity")
        scale, terms = _merge_poly(
            self._scale, self._terms, other._scale, other._terms, negate_second=True
        )
        return ComponentFunction._make(self.gens, parity, scale, terms)

    def __neg__(self):
        return ComponentFunction._make(
            self.gens,
            self.parity,
            self._scale,
            {k: (-re, -im) for k, (re, im) in self._terms.items()},
        )

    def __mul__(self, other):
        if isinstance(other, ComponentFunction):
            self._check_same_algebra(other)
            terms = _mul_poly(self.gens, self._terms, other._terms)
            return ComponentFunction._make(
                self.gens,
                Parity.combined(self.parity, other.parity),
                self._scale * other._scale,
                terms,
            )
        if isinstance(other, GrassmannNumber):
            # Right multiplication by a constant.
            return self._mul_constant(other, left=False)
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self._scaled(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, GrassmannNumber):
            return self._mul_constant(other, left=True)
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self._scaled(other)
        return NotImplemented

    def _scaled(self, value) -> "ComponentFunction":
        if not isinstance(value, GaussianRational):
            return ComponentFunction._make(
                self.gens, self.parity, self._scale * Fraction(value), dict(self._terms)
            )
        vs, (vr, vi) = scalar_to_pair(value)
        terms = {
            k: (re * vr - im * vi, re * vi + im * vr) for k, (re, im) in self._terms.items()
        }
        return ComponentFunction._make(self.gens, self.parity, self._scale * vs, terms)

    def _mul_constant(self, value: GrassmannNumber, left: bool) -> "ComponentFunction":
        self._check_same_algebra(value)
        vparity = value.parity
        if vparity is None:
            raise ParityError("constant factor must be homogeneous")
        lifted = {(0, m): pair for m, pair in value._terms.items()}
        if left:
            terms = _mul_poly(self.gens, lifted, self._terms)
        else:
            terms = _mul_poly(self.gens, self._terms, lifted)
        return ComponentFunction._make(
            self.gens,
            Parity.combined(self.parity, vparity),
            self._scale * value._scale,
            terms,
        )

    # ---------------------------------------------------------------- calculus

    def differentiate(self) -> "ComponentFunction":
        terms = {
            (p - 1, m): (re * p, im * p)
            for (p, m), (re, im) in self._terms.items()
            if p > 0
        }
        return ComponentFunction._make(self.gens, self.parity, self._scale, terms)

    def antiderivative(self, constant: Optional[GrassmannNumber] = None) -> "ComponentFunction":
        """Formal antiderivative; the constant term must match the parity."""
        if constant is None:
            constant = GrassmannNumber.zero(self.gens)
        if constant.gens != self.gens:
            raise AlgebraMismatch("algebra mismatch for integration constant")
        if not constant.has_parity(self.parity):
            raise ParityError("integration constant parity does not match the integrand")
        if self._terms:
            lcm = math.lcm(*(p + 1 for p, _ in self._terms))
            terms = {
                (p + 1, m): (re * (lcm // (p + 1)), im * (lcm // (p + 1)))
                for (p, m), (re, im) in self._terms.items()
            }
            scale = self._scale / lcm
        else:
            terms = {}
            scale = Fraction(1)
        result = ComponentFunction._make(self.gens, self.parity, scale, terms)
        if constant.is_zero():
            return result
        return result + ComponentFunction.constant(constant, self.parity)

    def evaluate(self, point: GrassmannNumber) -> GrassmannNumber:
        """Evaluate at an even Grassmann argument (Horner)."""
        if point.gens != self.gens:
            raise AlgebraMismatch("algebra mismatch at evaluation point")
        if not point.has_parity(Parity.EVEN):
            raise ParityError("evaluation point must be even")
        result = GrassmannNumber.zero(self.gens)
        for power in range(self.degree, -1, -1):
            result = result * point + self.coefficient(power)
        return result

    def compose(self, inner: "ComponentFunction") -> "ComponentFunction":
        """Polynomial substitution self(inner(z)); inner must be even."""
        return compose_all([self], inner)[0]

    # ---------------------------------------------------------------- equality

    def __eq__(self, other):
        if not isinstance(other, ComponentFunction):
            return NotImplemented
        # Value equality: the declared parity of a zero polynomial is metadata.
        return (
            self.gens == other.gens
            and self._scale == other._scale
            and self._terms == other._terms
        )

    def __hash__(self):
        return hash((self.gens, self._scale, tuple(sorted(self._terms.items()))))

    def __repr__(self):
        return (
            f"ComponentFunction({self.coefficients()!r}, Parity.{self.parity.name}, "
            f"gens={self.gens})"
        )

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for power, coeff in enumerate(self.coefficients()):
            if coeff.is_zero():
                continue
            text = str(coeff)
            if " + " in text:
                text = f"({text})"
            if power == 0:
                parts.append(text)
            elif power == 1:
                parts.append(f"{text}*z")
            else:
                parts.append(f"{text}*z^{power}")
        return " + ".join(parts)


def compose_all(
    outers: Sequence[ComponentFunction], inner: ComponentFunction
) -> List[ComponentFunction]:
    """Substitute the same even inner polynomial into several outer polynomials.

    Powers of the inner polynomial are computed once and shared, which is what
    makes transform composition affordable at higher degrees.
    """
    if inner.parity is not Parity.EVEN and not inner.is_zero():
        raise ParityError("composition requires even argument")
    gens = inner.gens
    max_degree = max((outer.degree for outer in outers), default=-1)
    powers: List[ComponentFunction] = [ComponentFunction.one(gens)]
    for _ in range(max_degree):
        powers.append(powers[-1] * inner)
    results = []
    for outer in outers:
        if outer.gens != gens:
            raise AlgebraMismatch("algebra mismatch in composition")
        acc = ComponentFunction.zero(outer.parity, gens)
        for power in range(outer.degree + 1):
            coeff = outer.coefficient(power)
            if coeff.is_zero():
                continue
            acc = acc + coeff * powers[power]
        results.append(acc)
    return results


class RationalComponent:
    """Exact quotient of component functions.

    The denominator is even with a body polynomial that is not identically
    zero.  Equality is decided by cross multiplication; no cancellation is
    attempted beyond resetting the denominator when the numerator vanishes.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: ComponentFunction, den: Optional[ComponentFunction] = None):
        if den is None:
            den = ComponentFunction.one(num.gens)
        else:
            if den.gens != num.gens:
                raise AlgebraMismatch("algebra mismatch between numerator and denominator")
            if not den.is_zero() and den.parity is not Parity.EVEN:
                raise NotInvertible("not invertible as function: odd denominator")
            if den.body_is_zero():
                raise NotInvertible(
                    "not invertible as function: denominator body polynomial is zero"
                )
        if num.is_zero() and den.degree > 0:
            den = ComponentFunction.one(num.gens)
        self.num = num
        self.den = den

    @classmethod
    def zero(cls, parity: Parity, gens: int) -> "RationalComponent":
        return cls(ComponentFunction.zero(parity, gens))

    @classmethod
    def one(cls, gens: int) -> "RationalComponent":
        return cls(ComponentFunction.one(gens))

    @property
    def gens(self) -> int:
        return self.num.gens

    @property
    def parity(self) -> Parity:
        return self.num.parity

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.degree == 0 and self.den == ComponentFunction.one(self.gens)

    def body_is_zero(self) -> bool:
        return self.num.body_is_zero()

    # ------------------------------------------------------------- arithmetic

    def __add__(self, other):
        other = _coerce_rc(other, self)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return RationalComponent(self.num + other.num, self.den)
        return RationalComponent(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __sub__(self, other):
        other = _coerce_rc(other, self)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return RationalComponent(self.num - other.num, self.den)
        return RationalComponent(
            self.num * other.den - other.num * self.den, self.den * other.den
        )

    def __neg__(self):
        return RationalComponent(-self.num, self.den)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return RationalComponent(self.num * other, self.den)
        other = _coerce_rc(other, self)
        if other is NotImplemented:
            return NotImplemented
        return RationalComponent(self.num * other.num, self.den * other.den)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return RationalComponent(other * self.num, self.den)
        if isinstance(other, GrassmannNumber):
            return RationalComponent(other * self.num, self.den)
        if isinstance(other, ComponentFunction):
            return RationalComponent(other * self.num, self.den)
        return NotImplemented

    def __truediv__(self, other):
        other = _coerce_rc(other, self)
        if other is NotImplemented:
            return NotImplemented
        if not other.num.is_zero() and other.num.parity is not Parity.EVEN:
            raise NotInvertible("not invertible as function: odd divisor")
        if other.num.body_is_zero():
            raise NotInvertible(
                "not invertible as function: divisor body polynomial is zero"
            )
        return RationalComponent(self.num * other.den, self.den * other.num)

    def invert(self) -> "RationalComponent":
        return RationalComponent.one(self.gens) / self

    def differentiate(self) -> "RationalComponent":
        """Quotient rule; exact."""
        if self.is_polynomial():
            return RationalComponent(self.num.differentiate())
        return RationalComponent(
            self.num.differentiate() * self.den - self.num * self.den.differentiate(),
            self.den * self.den,
        )

    def compose(self, inner: ComponentFunction) -> "RationalComponent":
        num, den = compose_all([self.num, self.den], inner)
        return RationalComponent(num, den)

    # ---------------------------------------------------------------- equality

    def __eq__(self, other):
        other = _coerce_rc(other, self)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return self.num == other.num
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        # Value-based hashing would require a normal form; treat as unhashable.
        raise TypeError("RationalComponent is not hashable")

    def __repr__(self):
        return f"RationalComponent({self.num!r}, {self.den!r})"

    def __str__(self):
        if self.is_polynomial():
            return str(self.num)
        return f"({self.num}) / ({self.den})"


def _coerce_rc(value, template: RationalComponent):
    if isinstance(value, RationalComponent):
        if value.gens != template.gens:
            raise AlgebraMismatch("algebra mismatch")
        return value
    if isinstance(value, ComponentFunction):
        if value.gens != template.gens:
            raise AlgebraMismatch("algebra mismatch")
        return RationalComponent(value)
    return NotImplemented
