"""Superfields a(z) + theta*b(z) and 2x2 supermatrices of them.

The odd coordinate theta is always written leftmost and the theta-derivative
is the left derivative, so for homogeneous components

    (a1 + theta*b1)(a2 + theta*b2)
        = a1*a2 + theta*(b1*a2 + (-1)^{|a1|} a1*b2).

The superderivative D = d_theta + theta*d_z then acts as
D(a + theta*b) = b + theta*a', and D^2 = d_z holds identically.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Optional, Tuple

from .errors import AlgebraMismatch, BerezinianDoesNotExist, NotInvertible, ParityError
from .grassmann import GaussianRational, GrassmannNumber, Parity
from .polynomials import ComponentFunction, RationalComponent


def theta_commutation_sign(parity: Optional[Parity]) -> int:
    """Sign picked up when theta moves left past a component of this parity."""
    return -1 if parity is Parity.ODD else 1


def _as_rc(value, gens: int) -> RationalComponent:
    if isinstance(value, RationalComponent):
        return value
    if isinstance(value, ComponentFunction):
        return RationalComponent(value)
    if isinstance(value, GrassmannNumber):
        parity = value.parity
        if parity is None:
            raise ParityError("superfield components must be homogeneous")
        return RationalComponent(ComponentFunction.constant(value, parity))
    if isinstance(value, (int, Fraction, GaussianRational)):
        return RationalComponent(
            ComponentFunction.constant(GrassmannNumber.scalar(gens, value), Parity.EVEN)
        )
    raise TypeError(f"cannot build a superfield component from {type(value)!r}")


class Superfield:
    """Expression a(z) + theta*b(z) with rational components."""

    __slots__ = ("a", "b")

    def __init__(self, a, b=None, gens: Optional[int] = None):
        if gens is None:
            for candidate in (a, b):
                if hasattr(candidate, "gens"):
                    gens = candidate.gens
                    break
        if gens is None:
            raise ValueError("generator count could not be inferred")
        self.a = _as_rc(a if a is not None else RationalComponent.zero(Parity.EVEN, gens), gens)
        self.b = _as_rc(b, gens) if b is not None else RationalComponent.zero(Parity.ODD, gens)
        if self.a.gens != self.b.gens:
            raise AlgebraMismatch("algebra mismatch between superfield components")

    @property
    def gens(self) -> int:
        return self.a.gens

    # --------------------------------------------------------------- builders

    @classmethod
    def zero(cls, gens: int) -> "Superfield":
        return cls(RationalComponent.zero(Parity.EVEN, gens), None, gens=gens)

    @classmethod
    def one(cls, gens: int) -> "Superfield":
        return cls(RationalComponent.one(gens), None, gens=gens)

    @classmethod
    def coordinate_z(cls, gens: int) -> "Superfield":
        return cls(RationalComponent(ComponentFunction.coordinate(gens)), None, gens=gens)

    @classmethod
    def coordinate_theta(cls, gens: int) -> "Superfield":
        return cls(
            RationalComponent.zero(Parity.ODD, gens), RationalComponent.one(gens), gens=gens
        )

    # ---------------------------------------------------------------- queries

    def is_zero(self) -> bool:
        return self.a.is_zero() and self.b.is_zero()

    def has_parity(self, parity: Parity) -> bool:
        a_ok = self.a.is_zero() or self.a.parity is parity
        b_ok = self.b.is_zero() or self.b.parity is parity.opposite
        return a_ok and b_ok

    @property
    def parity(self) -> Optional[Parity]:
        """EVEN/ODD for homogeneous superfields, None for mixed; zero is even."""
        if self.is_zero():
            return Parity.EVEN
        for parity in (Parity.EVEN, Parity.ODD):
            if self.has_parity(parity):
                return parity
        return None

    def body_is_zero(self) -> bool:
        """True when the body map kills the value (theta counts as soul)."""
        return self.a.body_is_zero()

    # ------------------------------------------------------------- arithmetic

    def _check(self, other: "Superfield") -> None:
        if self.gens != other.gens:
            raise AlgebraMismatch("algebra mismatch")

    def __add__(self, other):
        if not isinstance(other, Superfield):
            return NotImplemented
        self._check(other)
        return Superfield(self.a + other.a, self.b + other.b)

    def __sub__(self, other):
        if not isinstance(other, Superfield):
            return NotImplemented
        self._check(other)
        return Superfield(self.a - other.a, self.b - other.b)

    def __neg__(self):
        return Superfield(-self.a, -self.b)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return Superfield(self.a * other, self.b * other)
        if not isinstance(other, Superfield):
            return NotImplemented
        self._check(other)
        sign = theta_commutation_sign(None if self.a.is_zero() else self.a.parity)
        cross = self.a * other.b
        if sign < 0:
            cross = -cross
        return Superfield(self.a * other.a, self.b * other.a + cross)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return Superfield(other * self.a, other * self.b)
        return NotImplemented

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("only nonnegative integer powers are defined")
        result = Superfield.one(self.gens)
        for _ in range(exponent):
            result = result * self
        return result

    def invert(self) -> "Superfield":
        """Inverse of an even superfield whose a-component is invertible.

        1/(a + theta*b) = 1/a - theta * b/a^2, using that even components are
        central.
        """
        if not self.has_parity(Parity.EVEN):
            raise ParityError("parity: only even superfields can be inverted")
        a_inv = self.a.invert()
        return Superfield(a_inv, -(self.b * a_inv * a_inv))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            inv = GaussianRational(1) / GaussianRational(other)
            return self * inv
        if not isinstance(other, Superfield):
            return NotImplemented
        return self * other.invert()

    def __eq__(self, other):
        if not isinstance(other, Superfield):
            return NotImplemented
        self._check(other)
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        raise TypeError("Superfield is not hashable")

    def __repr__(self):
        return f"Superfield({self.a!r}, {self.b!r})"

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        if not self.a.is_zero():
            parts.append(str(self.a))
        if not self.b.is_zero():
            parts.append(f"theta*({self.b})")
        return " + ".join(parts)


def D(field: Superfield) -> Superfield:
    """Superderivative d_theta + theta*d_z; satisfies D(D(F)) == partial_z(F)."""
    return Superfield(field.b, field.a.differentiate())


def partial_z(field: Superfield) -> Superfield:
    return Superfield(field.a.differentiate(), field.b.differentiate())


def partial_theta(field: Superfield) -> Superfield:
    """Left derivative with respect to theta."""
    return Superfield(field.b, None, gens=field.gens)


class TangentMatrix:
    """2x2 supermatrix ((a, b), (c, d)) with even diagonal and odd off-diagonal."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a: Superfield, b: Superfield, c: Superfield, d: Superfield):
        gens = a.gens
        for entry in (b, c, d):
            if entry.gens != gens:
                raise AlgebraMismatch("algebra mismatch among matrix entries")
        for name, entry, parity in (
            ("a", a, Parity.EVEN),
            ("b", b, Parity.ODD),
            ("c", c, Parity.ODD),
            ("d", d, Parity.EVEN),
        ):
            if not entry.has_parity(parity):
                raise ParityError(f"matrix entry {name} must be {parity.name.lower()}")
        self.a, self.b, self.c, self.d = a, b, c, d

    @property
    def gens(self) -> int:
        return self.a.gens

    @classmethod
    def identity(cls, gens: int) -> "TangentMatrix":
        one = Superfield.one(gens)
        zero_odd = Superfield.zero(gens)
        return cls(one, zero_odd, zero_odd, one)

    def __matmul__(self, other: "TangentMatrix") -> "TangentMatrix":
        """Matrix product; entry products keep their left-to-right order."""
        if not isinstance(other, TangentMatrix):
            return NotImplemented
        return TangentMatrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __eq__(self, other):
        if not isinstance(other, TangentMatrix):
            return NotImplemented
        return (
            self.a == other.a and self.b == other.b
            and self.c == other.c and self.d == other.d
        )

    def __hash__(self):
        raise TypeError("TangentMatrix is not hashable")

    def berezinian(self) -> Superfield:
        """a/d + c*b/d^2, defined when d is invertible as a function."""
        try:
            d_inv = self.d.invert()
        except (NotInvertible, ParityError) as exc:
            raise BerezinianDoesNotExist(f"Berezinian does not exist: {exc}") from exc
        return self.a * d_inv + self.c * self.b * d_inv * d_inv

    # -------------------------------------------------------- shape predicates

    def has_conformal_shape(self) -> bool:
        """Lower-left entry vanishes identically."""
        return self.c.is_zero()

    def has_twist_shape(self) -> bool:
        """Upper-left entry vanishes identically."""
        return self.a.is_zero()

    def has_degenerate_shape(self) -> bool:
        """Whole left column vanishes identically."""
        return self.a.is_zero() and self.c.is_zero()

    def __repr__(self):
        return f"TangentMatrix({self.a!r}, {self.b!r}, {self.c!r}, {self.d!r})"

    def __str__(self):
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"


def det2(a: GrassmannNumber, b: GrassmannNumber, c: GrassmannNumber, d: GrassmannNumber) -> GrassmannNumber:
    """Ordinary 2x2 determinant for commuting entries."""
    return a * d - b * c


def split_diag_antidiag(
    a: GrassmannNumber, b: GrassmannNumber, c: GrassmannNumber, d: GrassmannNumber
) -> Tuple[GrassmannNumber, GrassmannNumber]:
    """Determinants of the diagonal and antidiagonal parts of ((a,b),(c,d))."""
    zero = GrassmannNumber.zero(a.gens)
    return det2(a, zero, zero, d), det2(zero, b, c, zero)
