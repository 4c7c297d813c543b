"""Superanalytic coordinate maps and their reduction calculus.

A map sends (z, theta) to

    z~     = f(z) + theta*chi(z),
    theta~ = psi(z) + theta*g(z),

with even f, g and odd chi, psi.  Such maps form a semigroup under
composition that contains noninvertible elements.  The module provides the
tangent matrix, the reduction expressions

    Q  = dz~ - d(theta~)*theta~          (vanishes on twist-parity maps)
    DL = Dz~ - D(theta~)*theta~          (vanishes on superconformal maps)
    DL0 = d_theta z~ - d_theta theta~ * theta~   (theta-free reduction of DL)

Berezinians in closed and matrix form, the (g, psi, spin) parametrization of
the reduced families, the star product, cocycle relations and matrix-shape
projections.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import List, NamedTuple, Sequence, Tuple

from .errors import (
    AlgebraMismatch,
    BerezinianDoesNotExist,
    ParityError,
    UndefinedSpinProduct,
)
from .grassmann import GrassmannNumber, Parity
from .polynomials import ComponentFunction, RationalComponent, compose_all
from .superfields import D, Superfield, TangentMatrix, partial_theta, partial_z


class SuperanalyticMap:
    """The coordinate map (z, theta) -> (f + theta*chi, psi + theta*g)."""

    __slots__ = ("f", "chi", "psi", "g")

    def __init__(
        self,
        f: ComponentFunction,
        chi: ComponentFunction,
        psi: ComponentFunction,
        g: ComponentFunction,
    ):
        gens = f.gens
        for name, poly, parity in (
            ("f", f, Parity.EVEN),
            ("chi", chi, Parity.ODD),
            ("psi", psi, Parity.ODD),
            ("g", g, Parity.EVEN),
        ):
            if poly.gens != gens:
                raise AlgebraMismatch("algebra mismatch among component functions")
            if not poly.is_zero() and poly.parity is not parity:
                raise ParityError(f"component {name} must be {parity.name.lower()}")
        self.f, self.chi, self.psi, self.g = f, chi, psi, g

    @property
    def gens(self) -> int:
        return self.f.gens

    @classmethod
    def identity(cls, gens: int) -> "SuperanalyticMap":
        return cls(
            ComponentFunction.coordinate(gens),
            ComponentFunction.zero(Parity.ODD, gens),
            ComponentFunction.zero(Parity.ODD, gens),
            ComponentFunction.one(gens),
        )

    def __call__(
        self, z: GrassmannNumber, theta: GrassmannNumber
    ) -> Tuple[GrassmannNumber, GrassmannNumber]:
        """Evaluate the map at an even/odd pair of Grassmann points."""
        if z.gens != self.gens or theta.gens != self.gens:
            raise AlgebraMismatch("algebra mismatch at evaluation point")
        if not z.has_parity(Parity.EVEN):
            raise ParityError("even coordinate value must be even")
        if not theta.has_parity(Parity.ODD):
            raise ParityError("odd coordinate value must be odd")
        z_out = self.f.evaluate(z) + theta * self.chi.evaluate(z)
        theta_out = self.psi.evaluate(z) + theta * self.g.evaluate(z)
        return z_out, theta_out

    def __eq__(self, other):
        if not isinstance(other, SuperanalyticMap):
            return NotImplemented
        return (
            self.f == other.f and self.chi == other.chi
            and self.psi == other.psi and self.g == other.g
        )

    def __hash__(self):
        return hash((self.f, self.chi, self.psi, self.g))

    def __repr__(self):
        return (
            f"SuperanalyticMap(f={self.f}, chi={self.chi}, psi={self.psi}, g={self.g})"
        )


def identity_map(gens: int) -> SuperanalyticMap:
    return SuperanalyticMap.identity(gens)


def coordinate_superfields(T: SuperanalyticMap) -> Tuple[Superfield, Superfield]:
    """The images (z~, theta~) as superfields over the source coordinates."""
    return Superfield(T.f, T.chi), Superfield(T.psi, T.g)


def d_theta_tilde(T: SuperanalyticMap) -> Superfield:
    """D(theta~) = g + theta*psi'."""
    return Superfield(T.g, T.psi.differentiate())


def partial_theta_tilde(T: SuperanalyticMap) -> Superfield:
    """d_z(theta~) = psi' + theta*g'."""
    return Superfield(T.psi.differentiate(), T.g.differentiate())


# --------------------------------------------------------------- composition


def compose(outer: SuperanalyticMap, inner: SuperanalyticMap) -> SuperanalyticMap:
    """outer after inner (inner applied first), by exact substitution.

    Substituting z~ = f1 + theta*chi1 into the outer component functions and
    expanding (theta*chi1 squares to zero) gives closed forms for the four
    composite components; these are what the semigroup structure rests on.
    """
    if outer.gens != inner.gens:
        raise AlgebraMismatch("algebra mismatch between composed maps")
    composed = compose_all(
        [
            outer.f,
            outer.chi,
            outer.psi,
            outer.g,
            outer.f.differentiate(),
            outer.chi.differentiate(),
            outer.g.differentiate(),
            outer.psi.differentiate(),
        ],
        inner.f,
    )
    f2_of, chi2_of, psi2_of, g2_of, f2p_of, chi2p_of, g2p_of, psi2p_of = composed
    chi1, psi1, g1 = inner.chi, inner.psi, inner.g
    psi_chi = psi1 * chi1
    f12 = f2_of + psi1 * chi2_of
    chi12 = chi1 * f2p_of + g1 * chi2_of - psi_chi * chi2p_of
    psi12 = psi2_of + psi1 * g2_of
    g12 = chi1 * psi2p_of + g1 * g2_of - psi_chi * g2p_of
    return SuperanalyticMap(f12, chi12, psi12, g12)


def compose_odd_sector(
    outer: SuperanalyticMap, inner: SuperanalyticMap
) -> Tuple[ComponentFunction, ComponentFunction]:
    """(psi, g) of the composite only; cheaper than a full composition."""
    composed = compose_all(
        [outer.psi, outer.g, outer.psi.differentiate(), outer.g.differentiate()],
        inner.f,
    )
    psi2_of, g2_of, psi2p_of, g2p_of = composed
    psi12 = psi2_of + inner.psi * g2_of
    g12 = inner.chi * psi2p_of + inner.g * g2_of - (inner.psi * inner.chi) * g2p_of
    return psi12, g12


# ------------------------------------------------------------------ pullback


def pullback(field: Superfield, T: SuperanalyticMap) -> Superfield:
    """The composite field F(z~(z, theta), theta~(z, theta))."""
    return pullback_many([field], T)[0]


def pullback_many(fields: Sequence[Superfield], T: SuperanalyticMap) -> List[Superfield]:
    """Pull several superfields back through the same map.

    All polynomial compositions happen against the same inner polynomial, so
    they are batched to share its powers.
    """
    plan = []
    polys: List[ComponentFunction] = []
    for fld in fields:
        if fld.gens != T.gens:
            raise AlgebraMismatch("algebra mismatch in pullback")
        for rc in (fld.a, fld.b):
            if rc.is_polynomial():
                plan.append(("poly", len(polys)))
                polys.extend([rc.num, rc.num.differentiate()])
            else:
                plan.append(("rat", len(polys)))
                polys.extend(
                    [rc.num, rc.den, rc.num.differentiate(), rc.den.differentiate()]
                )
    composed = compose_all(polys, T.f)
    shifted: List[Tuple[RationalComponent, RationalComponent]] = []
    for kind, i in plan:
        if kind == "poly":
            shifted.append(
                (RationalComponent(composed[i]), RationalComponent(composed[i + 1]))
            )
        else:
            n_of, d_of, np_of, dp_of = composed[i : i + 4]
            shifted.append(
                (
                    RationalComponent(n_of, d_of),
                    RationalComponent(np_of * d_of - n_of * dp_of, d_of * d_of),
                )
            )
    chi, psi, g = T.chi, T.psi, T.g
    psi_chi = psi * chi
    out = []
    for j in range(len(fields)):
        a_of, ap_of = shifted[2 * j]
        b_of, bp_of = shifted[2 * j + 1]
        even_part = a_of + psi * b_of
        odd_part = chi * ap_of + g * b_of - psi_chi * bp_of
        out.append(Superfield(even_part, odd_part))
    return out


def pullback_matrix(matrix: TangentMatrix, T: SuperanalyticMap) -> TangentMatrix:
    a, b, c, d = pullback_many([matrix.a, matrix.b, matrix.c, matrix.d], T)
    return TangentMatrix(a, b, c, d)


# ------------------------------------------------------- tangent-space matrix


def tangent_matrix(T: SuperanalyticMap) -> TangentMatrix:
    """((dz~ - d(theta~)*theta~, d(theta~)), (Dz~ - D(theta~)*theta~, D(theta~)))."""
    zt, tt = coordinate_superfields(T)
    dz, dth = partial_z(zt), partial_z(tt)
    Dz, Dth = D(zt), D(tt)
    return TangentMatrix(dz - dth * tt, dth, Dz - Dth * tt, Dth)


class ReductionConditions(NamedTuple):
    """The three reduction expressions of a map."""

    twist: Superfield
    conformal: Superfield
    conformal_reduced: Superfield


def reduction_conditions(T: SuperanalyticMap) -> ReductionConditions:
    zt, tt = coordinate_superfields(T)
    dth = partial_z(tt)
    twist = partial_z(zt) - dth * tt
    conformal = D(zt) - D(tt) * tt
    reduced = partial_theta(zt) - partial_theta(tt) * tt
    return ReductionConditions(twist, conformal, reduced)


class ReductionKind(Enum):
    GENERAL = "general"
    SUPERCONFORMAL = "superconformal"
    TWIST_PARITY = "twist-parity"
    DEGENERATE = "degenerate"


def reduction_kind(T: SuperanalyticMap) -> ReductionKind:
    conditions = reduction_conditions(T)
    conformal = conditions.conformal.is_zero()
    twist = conditions.twist.is_zero()
    if conformal and twist:
        return ReductionKind.DEGENERATE
    if conformal:
        return ReductionKind.SUPERCONFORMAL
    if twist:
        return ReductionKind.TWIST_PARITY
    return ReductionKind.GENERAL


# ---------------------------------------------------------------- Berezinian


class BerezinianClass(Enum):
    INVERTIBLE = "invertible"
    NONINVERTIBLE = "noninvertible"
    NONEXISTENT = "nonexistent"


class InvertibilityTest(Enum):
    """Which body predicate on f decides invertibility of the Berezinian."""

    FUNCTION_BODY = "function"
    DERIVATIVE_BODY = "derivative"


def classify_berezinian(
    T: SuperanalyticMap, mode: InvertibilityTest = InvertibilityTest.FUNCTION_BODY
) -> BerezinianClass:
    """Three-way classification by existence and invertibility.

    The Berezinian exists iff the body polynomial of g is nonzero.  When it
    exists, invertibility is decided by the body polynomial of f (default) or
    of f' (function-invertibility variant).
    """
    if T.g.body_is_zero():
        return BerezinianClass.NONEXISTENT
    probe = T.f if mode is InvertibilityTest.FUNCTION_BODY else T.f.differentiate()
    if probe.body_is_zero():
        return BerezinianClass.NONINVERTIBLE
    return BerezinianClass.INVERTIBLE


def berezinian_closed_form(T: SuperanalyticMap) -> Superfield:
    """f'/g + chi*psi'/g^2 + theta*(chi/g)' as an exact superfield.

    Agrees with ``tangent_matrix(T).berezinian()`` whenever both exist.
    """
    if T.g.body_is_zero():
        raise BerezinianDoesNotExist(
            "Berezinian does not exist: body polynomial of g vanishes"
        )
    g = RationalComponent(T.g)
    f_prime = RationalComponent(T.f.differentiate())
    chi = RationalComponent(T.chi)
    psi_prime = RationalComponent(T.psi.differentiate())
    even_part = f_prime / g + chi * psi_prime / (g * g)
    odd_part = (chi / g).differentiate()
    return Superfield(even_part, odd_part)


def conformal_jacobian(T: SuperanalyticMap) -> Superfield:
    """D(theta~) for a superconformal map.

    Defined even when its body vanishes, which extends the Jacobian to the
    noninvertible part of the superconformal family.
    """
    if not reduction_conditions(T).conformal.is_zero():
        raise ParityError("not superconformal")
    return d_theta_tilde(T)


def twist_berezinian_forms(
    T: SuperanalyticMap,
) -> Tuple[Superfield, Superfield, Superfield]:
    """The three equivalent Berezinian expressions of a twist-parity map.

    Returns (DL0 * d(theta~) / D(theta~)^2,
             dz(DL0) * DL0 / (2 D(theta~)^3),
             D(Dz~ / D(theta~))); the three agree exactly and the common
    value is pure soul.
    """
    conditions = reduction_conditions(T)
    if not conditions.twist.is_zero():
        raise ParityError("not twist-parity")
    if T.g.body_is_zero():
        raise BerezinianDoesNotExist(
            "Berezinian does not exist: body polynomial of g vanishes"
        )
    zt, tt = coordinate_superfields(T)
    delta0 = conditions.conformal_reduced
    dth = partial_z(tt)
    Dth = D(tt)
    Dth_inv = Dth.invert()
    Dth_inv2 = Dth_inv * Dth_inv
    first = delta0 * dth * Dth_inv2
    second = partial_z(delta0) * delta0 * (Dth_inv2 * Dth_inv) * Fraction(1, 2)
    third = D(D(zt) * Dth_inv)
    return first, second, third


# ------------------------------------------------------------- projections


class MatrixProjection(Enum):
    CONFORMAL_PART = "conformal-part"      # lower-left zeroed
    TWIST_PART = "twist-part"              # upper-left zeroed
    DEGENERATE_PART = "degenerate-part"    # left column zeroed
    CONFORMAL_REDUCED = "conformal-reduced"  # upper-left replaced by D(theta~)^2
    TWIST_REDUCED = "twist-reduced"        # lower-left replaced by DL0


def projected_tangent_matrix(
    T: SuperanalyticMap, which: MatrixProjection
) -> TangentMatrix:
    matrix = tangent_matrix(T)
    zero = Superfield.zero(T.gens)
    if which is MatrixProjection.CONFORMAL_PART:
        return TangentMatrix(matrix.a, matrix.b, zero, matrix.d)
    if which is MatrixProjection.TWIST_PART:
        return TangentMatrix(zero, matrix.b, matrix.c, matrix.d)
    if which is MatrixProjection.DEGENERATE_PART:
        return TangentMatrix(zero, matrix.b, zero, matrix.d)
    if which is MatrixProjection.CONFORMAL_REDUCED:
        return TangentMatrix(matrix.d * matrix.d, matrix.b, zero, matrix.d)
    if which is MatrixProjection.TWIST_REDUCED:
        delta0 = reduction_conditions(T).conformal_reduced
        return TangentMatrix(zero, matrix.b, delta0, matrix.d)
    raise ValueError(f"unknown projection {which!r}")


# ------------------------------------------------ reduced-family parametrization


@dataclass(frozen=True)
class ReducedPair:
    """(g, psi) plus a reduction spin; parametrizes one reduced map.

    Spin +1 builds a superconformal map, spin -1 a twist-parity map.  The
    integration constants default to zero; chi0 only exists for spin -1
    because the superconformal condition fixes chi = g*psi outright.
    """

    g: ComponentFunction
    psi: ComponentFunction
    spin: int
    f0: GrassmannNumber = None  # type: ignore[assignment]
    chi0: GrassmannNumber = None  # type: ignore[assignment]

    def __post_init__(self):
        if self.spin not in (1, -1):
            raise ValueError("reduction spin must be +1 or -1")
        gens = self.g.gens
        if self.psi.gens != gens:
            raise AlgebraMismatch("algebra mismatch in reduced pair")
        if not self.g.is_zero() and self.g.parity is not Parity.EVEN:
            raise ParityError("g must be even")
        if not self.psi.is_zero() and self.psi.parity is not Parity.ODD:
            raise ParityError("psi must be odd")
        if self.f0 is None:
            object.__setattr__(self, "f0", GrassmannNumber.zero(gens))
        if self.chi0 is None:
            object.__setattr__(self, "chi0", GrassmannNumber.zero(gens))
        if not self.f0.has_parity(Parity.EVEN):
            raise ParityError("f0 must be even")
        if not self.chi0.has_parity(Parity.ODD):
            raise ParityError("chi0 must be odd")
        if self.spin == 1 and not self.chi0.is_zero():
            raise ValueError("chi0 is fixed by the reduction for spin +1")

    @property
    def gens(self) -> int:
        return self.g.gens


def build_reduced(pair: ReducedPair) -> SuperanalyticMap:
    """Integrate the reduction equations for the even sector.

    f' = psi'*psi + (1+n)/2 * g^2 and chi' = g'*psi + n*g*psi' with n the
    spin; for n = +1 the odd equation integrates exactly to chi = g*psi and
    no free odd constant survives.
    """
    g, psi = pair.g, pair.psi
    psi_prime = psi.differentiate()
    if pair.spin == 1:
        f = (psi_prime * psi + g * g).antiderivative(pair.f0)
        chi = g * psi
    else:
        f = (psi_prime * psi).antiderivative(pair.f0)
        chi = (g.differentiate() * psi - g * psi_prime).antiderivative(pair.chi0)
    return SuperanalyticMap(f, chi, psi, g)


def star(left: ReducedPair, right: ReducedPair) -> ReducedPair:
    """Multiplication law on reduced pairs; left factor acts second.

    Only (+1)*(+1) and (+1)*(-1) are defined; the result carries the right
    factor's spin and agrees with the (g, psi) components of the composed
    maps.  Integration constants of the result are zero.
    """
    if left.spin != 1:
        raise UndefinedSpinProduct(
            "undefined spin product: left factor must have spin +1"
        )
    if left.gens != right.gens:
        raise AlgebraMismatch("algebra mismatch between reduced pairs")
    h, phi = left.g, left.psi
    g, psi = right.g, right.psi
    right_map = build_reduced(right)
    f_m, chi_m = right_map.f, right_map.chi
    h_of, phi_of, hp_of, phip_of = compose_all(
        [h, phi, h.differentiate(), phi.differentiate()], f_m
    )
    even = g * h_of + chi_m * psi * hp_of + chi_m * phip_of
    odd = phi_of + psi * h_of
    return ReducedPair(g=even, psi=odd, spin=right.spin)


# ------------------------------------------------------------------ cocycles


def standard_cocycle_holds(outer: SuperanalyticMap, inner: SuperanalyticMap) -> bool:
    """D(theta~~) == D(theta~) * (pullback of outer's D(theta~~)).

    Exact for superconformal (and degenerate) inner maps; generally false for
    arbitrary pairs.
    """
    psi12, g12 = compose_odd_sector(outer, inner)
    lhs = Superfield(g12, psi12.differentiate())
    rhs = d_theta_tilde(inner) * pullback(d_theta_tilde(outer), inner)
    return lhs == rhs


def mixed_cocycle_holds(outer: SuperanalyticMap, inner: SuperanalyticMap) -> bool:
    """d_z(theta~~) == d_z(theta~) * (pullback of outer's D(theta~~)).

    Exact when the inner map satisfies the twist-parity condition.
    """
    psi12, g12 = compose_odd_sector(outer, inner)
    lhs = Superfield(psi12.differentiate(), g12.differentiate())
    rhs = partial_theta_tilde(inner) * pullback(d_theta_tilde(outer), inner)
    return lhs == rhs
