"""Exact arithmetic in a finite Grassmann algebra.

Elements of the algebra on ``gens`` anticommuting generators are stored as a
map from generator subsets (bitmasks, generator ``i`` occupying bit ``i-1``)
to Gaussian-integer coefficient pairs, together with one positive rational
scale factor.  The basis monomial for a mask is the product of its generators
in ascending index order; the product of two basis monomials vanishes when
the masks intersect and otherwise picks up the sign of the merge sort that
restores ascending order.

The scaled-integer layout keeps the hot convolution loops in plain ``int``
arithmetic; rational bookkeeping happens once per operation on the scale.
"""
from __future__ import annotations

import math
import random
from enum import IntEnum
from fractions import Fraction
from typing import Dict, Iterator, Optional, Tuple

from .errors import AlgebraMismatch, NotInvertible, ParityError
from .scalars import GaussianRational

IntPair = Tuple[int, int]
TermMap = Dict[int, IntPair]


class Parity(IntEnum):
    EVEN = 0
    ODD = 1

    @property
    def opposite(self) -> "Parity":
        return Parity(1 - self)

    @staticmethod
    def combined(a: "Parity", b: "Parity") -> "Parity":
        return Parity(a ^ b)


def reorder_sign(m1: int, m2: int) -> int:
    """Sign of merging two ascending generator sequences into one.

    Counts pairs (i in m1, j in m2) with i > j; each such pair is one
    transposition.  Masks are assumed disjoint.
    """
    swaps = 0
    m = m1 >> 1
    while m:
        swaps ^= (m & m2).bit_count() & 1
        m >>= 1
    return -1 if swaps else 1


_SIGN_TABLE_MAX_GENS = 10
_sign_tables: Dict[int, Dict[int, int]] = {}


def sign_table(gens: int) -> Optional[Dict[int, int]]:
    """Precomputed ``(m1 << gens) | m2 -> sign`` map for disjoint mask pairs.

    A missing key means the masks intersect (product is zero).  Returns None
    for large algebras, where callers fall back to computing signs inline.
    """
    if gens > _SIGN_TABLE_MAX_GENS:
        return None
    table = _sign_tables.get(gens)
    if table is None:
        table = {}
        for m1 in range(1 << gens):
            base = m1 << gens
            for m2 in range(1 << gens):
                if not m1 & m2:
                    table[base | m2] = reorder_sign(m1, m2)
        _sign_tables[gens] = table
    return table


def normalize_terms(scale: Fraction, terms: TermMap) -> Tuple[Fraction, TermMap]:
    """Drop zero coefficients and fold the integer content into the scale.

    The returned scale is positive and the integer coefficients have content
    one, which makes the representation canonical and keeps the integers
    small through long computations.
    """
    terms = {m: c for m, c in terms.items() if c[0] or c[1]}
    if not terms:
        return Fraction(1), {}
    content = 0
    for re, im in terms.values():
        content = math.gcd(content, re, im)
        if content == 1:
            break
    if scale < 0:
        content = -content
    if content != 1:
        terms = {m: (re // content, im // content) for m, (re, im) in terms.items()}
        scale = scale * content
    return scale, terms


def scalar_to_pair(value: GaussianRational) -> Tuple[Fraction, IntPair]:
    """Split a Gaussian rational into (positive scale, integer pair)."""
    den = value.re.denominator * value.im.denominator // math.gcd(
        value.re.denominator, value.im.denominator
    )
    re = value.re.numerator * (den // value.re.denominator)
    im = value.im.numerator * (den // value.im.denominator)
    return Fraction(1, den), (re, im)


def common_scale(s1: Fraction, s2: Fraction) -> Tuple[Fraction, int, int]:
    """Largest scale dividing both, with the integer cofactors.

    ``s1 == s * k1`` and ``s2 == s * k2`` with integer k1, k2.
    """
    num = math.gcd(s1.numerator, s2.numerator)
    den = s1.denominator * s2.denominator // math.gcd(s1.denominator, s2.denominator)
    s = Fraction(num, den)
    k1 = s1.numerator // num * (den // s1.denominator)
    k2 = s2.numerator // num * (den // s2.denominator)
    return s, k1, k2


def merge_scaled(
    s1: Fraction, t1: TermMap, s2: Fraction, t2: TermMap, negate_second: bool = False
) -> Tuple[Fraction, TermMap]:
    """Exact sum (or difference) of two scaled integer term maps."""
    if not t1:
        if negate_second:
            return s2, {m: (-re, -im) for m, (re, im) in t2.items()}
        return s2, dict(t2)
    if not t2:
        return s1, dict(t1)
    s, k1, k2 = common_scale(s1, s2)
    if negate_second:
        k2 = -k2
    out: TermMap = {m: (re * k1, im * k1) for m, (re, im) in t1.items()}
    for m, (re, im) in t2.items():
        cur = out.get(m)
        if cur is None:
            out[m] = (re * k2, im * k2)
        else:
            out[m] = (cur[0] + re * k2, cur[1] + im * k2)
    return s, out


class GrassmannNumber:
    """An element of the Grassmann algebra on ``gens`` generators over Q(i).

    Immutable.  ``body`` is the coefficient of the empty mask, ``soul`` is the
    nilpotent remainder.
    """

    __slots__ = ("gens", "_scale", "_terms")

    def __init__(self, gens: int, coefficients: Dict[int, GaussianRational] | None = None):
        if gens < 0:
            raise ValueError("generator count must be nonnegative")
        self.gens = gens
        scale = Fraction(1)
        terms: TermMap = {}
        if coefficients:
            limit = 1 << gens
            for mask, value in coefficients.items():
                if not 0 <= mask < limit:
                    raise ValueError(f"mask {mask} uses generators beyond the first {gens}")
                if not isinstance(value, GaussianRational):
                    value = GaussianRational(value)
                if value.is_zero():
                    continue
                vs, pair = scalar_to_pair(value)
                scale, terms = merge_scaled(scale, terms, vs, {mask: pair})
        scale, terms = normalize_terms(scale, terms)
        self._scale = scale
        self._terms = terms

    @classmethod
    def _make(cls, gens: int, scale: Fraction, terms: TermMap) -> "GrassmannNumber":
        self = object.__new__(cls)
        self.gens = gens
        scale, terms = normalize_terms(scale, terms)
        self._scale = scale
        self._terms = terms
        return self

    # ------------------------------------------------------------------ basics

    @classmethod
    def zero(cls, gens: int) -> "GrassmannNumber":
        return cls._make(gens, Fraction(1), {})

    @classmethod
    def one(cls, gens: int) -> "GrassmannNumber":
        return cls._make(gens, Fraction(1), {0: (1, 0)})

    @classmethod
    def scalar(cls, gens: int, value) -> "GrassmannNumber":
        if not isinstance(value, GaussianRational):
            value = GaussianRational(value)
        return cls(gens, {0: value})

    @classmethod
    def generator(cls, gens: int, index: int) -> "GrassmannNumber":
        """The generator with 1-based index."""
        if not 1 <= index <= gens:
            raise ValueError(f"generator index {index} outside 1..{gens}")
        return cls._make(gens, Fraction(1), {1 << (index - 1): (1, 0)})

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, mask: int) -> GaussianRational:
        pair = self._terms.get(mask)
        if pair is None:
            return GaussianRational(0)
        return GaussianRational(self._scale * pair[0], self._scale * pair[1])

    def terms(self) -> Iterator[Tuple[int, GaussianRational]]:
        """Iterate (mask, coefficient) in ascending mask order."""
        for mask in sorted(self._terms):
            yield mask, self.coefficient(mask)

    # ------------------------------------------------------------------ parity

    def has_parity(self, parity: Parity) -> bool:
        want = int(parity)
        return all(m.bit_count() & 1 == want for m in self._terms)

    def is_homogeneous(self) -> bool:
        return self.has_parity(Parity.EVEN) or self.has_parity(Parity.ODD)

    @property
    def parity(self) -> Optional[Parity]:
        """Parity for homogeneous elements, None for mixed; zero counts as even."""
        if not self._terms:
            return Parity.EVEN
        parities = {m.bit_count() & 1 for m in self._terms}
        if len(parities) > 1:
            return None
        return Parity(parities.pop())

    # ------------------------------------------------------------- body / soul

    def body(self) -> GaussianRational:
        return self.coefficient(0)

    def body_soul(self) -> Tuple["GrassmannNumber", "GrassmannNumber"]:
        """Split into (body, soul); body + soul == self exactly."""
        body_terms = {0: self._terms[0]} if 0 in self._terms else {}
        soul_terms = {m: c for m, c in self._terms.items() if m != 0}
        return (
            GrassmannNumber._make(self.gens, self._scale, body_terms),
            GrassmannNumber._make(self.gens, self._scale, soul_terms),
        )

    # -------------------------------------------------------------- arithmetic

    def _check_same_algebra(self, other: "GrassmannNumber") -> None:
        if self.gens != other.gens:
            raise AlgebraMismatch(
                f"algebra mismatch: {self.gens} vs {other.gens} generators"
            )

    def __add__(self, other):
        other = _coerce_gn(other, self.gens)
        if other is NotImplemented:
            return NotImplemented
        self._check_same_algebra(other)
        scale, terms = merge_scaled(self._scale, self._terms, other._scale, other._terms)
        return GrassmannNumber._make(self.gens, scale, terms)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_gn(other, self.gens)
        if other is NotImplemented:
            return NotImplemented
        self._check_same_algebra(other)
        scale, terms = merge_scaled(
            self._scale, self._terms, other._scale, other._terms, negate_second=True
        )
        return GrassmannNumber._make(self.gens, scale, terms)

    def __rsub__(self, other):
        other = _coerce_gn(other, self.gens)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self):
        return GrassmannNumber._make(
            self.gens, self._scale, {m: (-re, -im) for m, (re, im) in self._terms.items()}
        )

    def __mul__(self, other):
        if isinstance(other, GrassmannNumber):
            self._check_same_algebra(other)
            table = sign_table(self.gens)
            out: TermMap = {}
            if table is not None:
                shift = self.gens
                for m1, (r1, i1) in self._terms.items():
                    base = m1 << shift
                    for m2, (r2, i2) in other._terms.items():
                        sgn = table.get(base | m2)
                        if sgn is None:
                            continue
                        re = r1 * r2 - i1 * i2
                        im = r1 * i2 + i1 * r2
                        if sgn < 0:
                            re = -re
                            im = -im
                        m = m1 | m2
                        cur = out.get(m)
                        out[m] = (re, im) if cur is None else (cur[0] + re, cur[1] + im)
            else:
                for m1, (r1, i1) in self._terms.items():
                    for m2, (r2, i2) in other._terms.items():
                        if m1 & m2:
                            continue
                        re = r1 * r2 - i1 * i2
                        im = r1 * i2 + i1 * r2
                        if reorder_sign(m1, m2) < 0:
                            re = -re
                            im = -im
                        m = m1 | m2
                        cur = out.get(m)
                        out[m] = (re, im) if cur is None else (cur[0] + re, cur[1] + im)
            return GrassmannNumber._make(self.gens, self._scale * other._scale, out)
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self._scaled(other)
        return NotImplemented

    def __rmul__(self, other):
        # Scalars are central, so scaling commutes.
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self._scaled(other)
        return NotImplemented

    def _scaled(self, value) -> "GrassmannNumber":
        if not isinstance(value, GaussianRational):
            return GrassmannNumber._make(self.gens, self._scale * Fraction(value), dict(self._terms))
        vs, (vr, vi) = scalar_to_pair(value)
        terms = {
            m: (re * vr - im * vi, re * vi + im * vr) for m, (re, im) in self._terms.items()
        }
        return GrassmannNumber._make(self.gens, self._scale * vs, terms)

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("only nonnegative integer powers are defined")
        result = GrassmannNumber.one(self.gens)
        for _ in range(exponent):
            result = result * self
        return result

    def invert(self) -> "GrassmannNumber":
        """Exact inverse of an even element with nonzero body.

        Finite Neumann series: with x = b + s, 1/x = (1/b) * sum_k (-s/b)^k,
        which terminates because the soul is nilpotent.
        """
        if not self.has_parity(Parity.EVEN):
            raise ParityError("parity: only even elements can be inverted")
        body, soul = self.body_soul()
        b = body.body()
        if b.is_zero():
            raise NotInvertible("not invertible: zero body")
        binv = GaussianRational(1) / b
        factor = -(soul._scaled(binv))
        result = GrassmannNumber.one(self.gens)
        power = GrassmannNumber.one(self.gens)
        while True:
            power = power * factor
            if power.is_zero():
                break
            result = result + power
        return result._scaled(binv)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = GrassmannNumber.scalar(self.gens, other)
        if not isinstance(other, GrassmannNumber):
            return NotImplemented
        return (
            self.gens == other.gens
            and self._scale == other._scale
            and self._terms == other._terms
        )

    def __hash__(self):
        return hash((self.gens, self._scale, tuple(sorted(self._terms.items()))))

    def __repr__(self):
        return f"GrassmannNumber({self.gens}, {{{', '.join(f'{m}: {c}' for m, c in self.terms())}}})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for mask, coeff in self.terms():
            gens = "".join(f"t{i + 1}" for i in range(self.gens) if mask >> i & 1)
            text = str(coeff)
            if ("+" in text[1:]) or ("-" in text[1:]):
                text = f"({text})"
            parts.append(text if not gens else f"{text}*{gens}")
        return " + ".join(parts)


def _coerce_gn(value, gens: int):
    if isinstance(value, GrassmannNumber):
        return value
    if isinstance(value, (int, Fraction, GaussianRational)):
        return GrassmannNumber.scalar(gens, value)
    return NotImplemented


def random_element(
    parity: Parity,
    gens: int,
    seed: int,
    bound: int = 5,
    density: float = 0.5,
) -> GrassmannNumber:
    """Deterministic pseudo-random homogeneous element.

    Numerators are drawn from [-bound, bound] and denominators from
    [1, bound]; each admissible mask is included with probability ``density``.
    The same arguments always produce the same element.
    """
    rng = random.Random(seed)
    return draw_element(rng, parity, gens, bound, density)


def draw_element(
    rng: random.Random, parity: Parity, gens: int, bound: int, density: float = 0.5
) -> GrassmannNumber:
    """Like :func:`random_element` but driven by a caller-owned RNG stream."""
    want = int(parity)
    coeffs: Dict[int, GaussianRational] = {}
    for mask in range(1 << gens):
        if mask.bit_count() & 1 != want:
            continue
        if rng.random() >= density:
            continue
        num = rng.randint(-bound, bound)
        if num == 0:
            continue
        den = rng.randint(1, bound)
        if rng.random() < 0.25:
            inum = rng.randint(-bound, bound)
            iden = rng.randint(1, bound)
        else:
            inum, iden = 0, 1
        coeffs[mask] = GaussianRational(Fraction(num, den), Fraction(inum, iden))
    return GrassmannNumber(gens, coeffs)
