"""Registry of algebraic identity checks over random instances.

Every identity the library implements is registered here as a named check
with the statement it verifies.  Checks draw deterministic pseudo-random
instances (seeded per check and trial), run with exact-equality semantics
(there is no tolerance anywhere), and aggregate into a reproducible report:
two runs with the same configuration produce identical reports except for
wall time.
"""
from __future__ import annotations

import hashlib
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from .errors import BerezinianDoesNotExist, NotInvertible, UndefinedSpinProduct
from .grassmann import GaussianRational, GrassmannNumber, Parity, draw_element
from .polynomials import ComponentFunction, RationalComponent, compose_all
from .superfields import D, Superfield, TangentMatrix, det2, partial_z, split_diag_antidiag
from .transforms import (
    MatrixProjection,
    ReducedPair,
    ReductionKind,
    SuperanalyticMap,
    build_reduced,
    compose,
    conformal_jacobian,
    berezinian_closed_form,
    d_theta_tilde,
    mixed_cocycle_holds,
    partial_theta_tilde,
    projected_tangent_matrix,
    pullback,
    pullback_matrix,
    reduction_conditions,
    reduction_kind,
    standard_cocycle_holds,
    star,
    tangent_matrix,
    twist_berezinian_forms,
)
from . import serialization

_MAX_REDRAWS = 64


# ----------------------------------------------------------------- config


@dataclass(frozen=True)
class CheckConfig:
    """Suite parameters; the same config always reproduces the same report."""

    generator_count: int = 4
    max_degree: int = 3
    coefficient_bound: int = 5
    trials: int = 1000
    seed: int = 0
    suite: Tuple[str, ...] = ("all",)

    def validate(self) -> List[str]:
        """Resolve the suite selection, raising on bad parameters."""
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.generator_count < 0:
            raise ValueError("generator count must be nonnegative")
        if self.max_degree < 0:
            raise ValueError("max degree must be nonnegative")
        if self.coefficient_bound < 1:
            raise ValueError("coefficient bound must be at least 1")
        names = resolve_suite(self.suite)
        needs_odd = [name for name in names if REGISTRY[name].needs_odd]
        if self.generator_count < 2 and needs_odd:
            raise ValueError(
                "checks involving odd functions need at least 2 generators: "
                + ", ".join(needs_odd)
            )
        return names


@dataclass
class CheckOutcome:
    name: str
    statement: str
    trials: int
    passes: int
    failures: int
    rejected_draws: int
    first_counterexample: Optional[Dict[str, Any]]
    millis: int
    details: Optional[Dict[str, Any]] = None

    @staticmethod
    def merge(left: "CheckOutcome", right: "CheckOutcome") -> "CheckOutcome":
        """Combine partial results of the same check (associative)."""
        if left.name != right.name:
            raise ValueError("cannot merge outcomes of different checks")
        return CheckOutcome(
            name=left.name,
            statement=left.statement,
            trials=left.trials + right.trials,
            passes=left.passes + right.passes,
            failures=left.failures + right.failures,
            rejected_draws=left.rejected_draws + right.rejected_draws,
            first_counterexample=left.first_counterexample or right.first_counterexample,
            millis=left.millis + right.millis,
            details=left.details or right.details,
        )


@dataclass
class CheckReport:
    config: CheckConfig
    checks: List[CheckOutcome] = field(default_factory=list)

    @property
    def failures_total(self) -> int:
        return sum(outcome.failures for outcome in self.checks)

    @property
    def failed(self) -> bool:
        return self.failures_total > 0


# ----------------------------------------------------------- random drawing


def _trial_rng(seed: int, label: str, index: int) -> random.Random:
    digest = hashlib.blake2b(
        f"{seed}:{label}:{index}".encode(), digest_size=8
    ).digest()
    return random.Random(int.from_bytes(digest, "big"))


class TrialContext:
    """Carries the RNG stream and counts rejected (redrawn) instances."""

    __slots__ = ("cfg", "rng", "rejected")

    def __init__(self, cfg: CheckConfig, rng: random.Random):
        self.cfg = cfg
        self.rng = rng
        self.rejected = 0


def _strip_body(poly: ComponentFunction) -> ComponentFunction:
    coeffs = [coeff.body_soul()[1] for coeff in poly.coefficients()]
    return ComponentFunction(coeffs, poly.parity, poly.gens)


def draw_polynomial(
    ctx: TrialContext,
    parity: Parity,
    body_required: bool = False,
    body_forbidden: bool = False,
) -> ComponentFunction:
    cfg = ctx.cfg
    for _ in range(_MAX_REDRAWS):
        degree = ctx.rng.randint(0, cfg.max_degree)
        coeffs = [
            draw_element(ctx.rng, parity, cfg.generator_count, cfg.coefficient_bound)
            for _ in range(degree + 1)
        ]
        poly = ComponentFunction(coeffs, parity, cfg.generator_count)
        if body_forbidden:
            return _strip_body(poly)
        if not body_required or not poly.body_is_zero():
            return poly
        ctx.rejected += 1
    raise RuntimeError("could not draw a polynomial with nonzero body polynomial")


def draw_grassmann(ctx: TrialContext, parity: Parity) -> GrassmannNumber:
    return draw_element(
        ctx.rng, parity, ctx.cfg.generator_count, ctx.cfg.coefficient_bound
    )


def draw_reduced_pair(
    ctx: TrialContext,
    spin: int,
    invertible_g: Optional[bool] = None,
    zero_g: bool = False,
) -> ReducedPair:
    gens = ctx.cfg.generator_count
    if zero_g:
        g = ComponentFunction.zero(Parity.EVEN, gens)
    else:
        g = draw_polynomial(
            ctx,
            Parity.EVEN,
            body_required=invertible_g is True,
            body_forbidden=invertible_g is False,
        )
    psi = draw_polynomial(ctx, Parity.ODD)
    f0 = draw_grassmann(ctx, Parity.EVEN)
    chi0 = (
        draw_grassmann(ctx, Parity.ODD)
        if spin == -1 and not zero_g
        else GrassmannNumber.zero(gens)
    )
    return ReducedPair(g=g, psi=psi, spin=spin, f0=f0, chi0=chi0)


def draw_map(
    ctx: TrialContext,
    kind: ReductionKind,
    invertible_g: Optional[bool] = None,
) -> SuperanalyticMap:
    if kind is ReductionKind.GENERAL:
        return SuperanalyticMap(
            draw_polynomial(ctx, Parity.EVEN),
            draw_polynomial(ctx, Parity.ODD),
            draw_polynomial(ctx, Parity.ODD),
            draw_polynomial(
                ctx,
                Parity.EVEN,
                body_required=invertible_g is True,
                body_forbidden=invertible_g is False,
            ),
        )
    if kind is ReductionKind.SUPERCONFORMAL:
        return build_reduced(draw_reduced_pair(ctx, 1, invertible_g))
    if kind is ReductionKind.TWIST_PARITY:
        return build_reduced(draw_reduced_pair(ctx, -1, invertible_g))
    if kind is ReductionKind.DEGENERATE:
        return build_reduced(draw_reduced_pair(ctx, -1, zero_g=True))
    raise ValueError(f"unknown map class {kind!r}")


def random_map(
    kind: ReductionKind,
    cfg: CheckConfig,
    stream_index: int,
    invertible_g: Optional[bool] = None,
) -> SuperanalyticMap:
    """Deterministic random map of the requested class.

    The same (seed, stream_index) pair always yields the same map.
    """
    rng = _trial_rng(cfg.seed, f"instance:{kind.value}", stream_index)
    return draw_map(TrialContext(cfg, rng), kind, invertible_g)


def draw_superfield(ctx: TrialContext, rational: bool = False) -> Superfield:
    """Random homogeneous superfield; polynomial components unless requested."""
    parity = Parity(ctx.rng.randint(0, 1))
    a_poly = draw_polynomial(ctx, parity)
    b_poly = draw_polynomial(ctx, parity.opposite)
    if not rational:
        return Superfield(a_poly, b_poly)
    a_den = draw_polynomial(ctx, Parity.EVEN, body_required=True)
    b_den = draw_polynomial(ctx, Parity.EVEN, body_required=True)
    return Superfield(
        RationalComponent(a_poly, a_den), RationalComponent(b_poly, b_den)
    )


def _body_eval(poly: ComponentFunction, point: GaussianRational) -> GaussianRational:
    value = GaussianRational(0)
    for coeff in reversed(poly.body_coefficients()):
        value = value * point + coeff
    return value


def _draw_twist_inner_for(
    ctx: TrialContext, outer_g: ComponentFunction
) -> SuperanalyticMap:
    """Twist-parity inner map whose composite with the outer map stays twist-parity.

    The composite's conformal expression has body -g_in^2 * g_out(f_in)^2 in
    its theta part; f_in has constant body, so it suffices that the outer g's
    body polynomial does not vanish at that constant.
    """
    for _ in range(_MAX_REDRAWS):
        pair = draw_reduced_pair(ctx, -1, invertible_g=True)
        if not _body_eval(outer_g, pair.f0.body()).is_zero():
            return build_reduced(pair)
        ctx.rejected += 1
    raise RuntimeError("could not draw a compatible twist-parity inner map")


# ------------------------------------------------------------------ checks


CheckRunner = Callable[[TrialContext], Tuple[bool, Optional[Dict[str, Any]]]]


@dataclass(frozen=True)
class Check:
    name: str
    statement: str
    runner: CheckRunner
    needs_odd: bool = True
    trial_scale: Fraction = Fraction(1)
    batch: Optional[Callable[[CheckConfig, int], CheckOutcome]] = None


def _map_payload(**maps: SuperanalyticMap) -> Dict[str, Any]:
    return {name: serialization.encode_map(value) for name, value in maps.items()}


def _check_ber_addition(ctx: TrialContext):
    T = draw_map(ctx, ReductionKind.GENERAL, invertible_g=True)
    matrix = tangent_matrix(T)
    zero = Superfield.zero(T.gens)
    upper = TangentMatrix(matrix.a, matrix.b, zero, matrix.d)
    lower = TangentMatrix(zero, matrix.b, matrix.c, matrix.d)
    ok = matrix.berezinian() == upper.berezinian() + lower.berezinian()
    return ok, None if ok else _map_payload(transform=T)


def _check_q_minus_d_delta(ctx: TrialContext):
    T = draw_map(ctx, ReductionKind.GENERAL)
    conditions = reduction_conditions(T)
    dth = d_theta_tilde(T)
    ok = conditions.twist - D(conditions.conformal) == dth * dth
    return ok, None if ok else _map_payload(transform=T)


def _check_q_on_conformal(ctx: TrialContext):
    T = draw_map(ctx, ReductionKind.SUPERCONFORMAL)
    conditions = reduction_conditions(T)
    dth = d_theta_tilde(T)
    ok = conditions.twist == dth * dth
    return ok, None if ok else _map_payload(transform=T)


def _check_delta_decomposition(ctx: TrialContext):
    T = draw_map(ctx, ReductionKind.GENERAL)
    conditions = reduction_conditions(T)
    theta = Superfield.coordinate_theta(T.gens)
    ok = conditions.conformal == conditions.conformal_reduced + theta * conditions.twist
    if ok:
        T2 = draw_map(ctx, ReductionKind.TWIST_PARITY)
        conditions2 = reduction_conditions(T2)
        ok = conditions2.conformal == conditions2.conformal_reduced
        return ok, None if ok else _map_payload(transform=T2)
    return ok, _map_payload(transform=T)


def _check_d_of_delta0(ctx: TrialContext):
    T = draw_map(ctx, ReductionKind.TWIST_PARITY)
    conditions = reduction_conditions(T)
    dth = d_theta_tilde(T)
    ok = D(conditions.conformal_reduced) == -(dth * dth)
    return ok, None if ok else _map_payload(transform=T)


def _check_partial_of_delta0(ctx: TrialContext):
    T = draw_map(ctx, ReductionKind.TWIST_PARITY)
    conditions = reduction_conditions(T)
    product = d_theta_tilde(T) * partial_theta_tilde(T)
    ok = partial_z(conditions.conformal_reduced) == product * (-2)
    return ok, None if ok else _map_payload(transform=T)


def _check_ber_explicit_vs_matrix(ctx: TrialContext):
    T = draw_map(ctx, ReductionKind.GENERAL, invertible_g=True)
    ok = berezinian_closed_form(T) == tangent_matrix(T).berezinian()
    return ok, None if ok else _map_payload(transform=T)


def _check_ber_conformal(ctx: TrialContext):
    T = draw_map(ctx, ReductionKind.SUPERCONFORMAL, invertible_g=True)
    ok = tangent_matrix(T).berezinian() == conformal_jacobian(T)
    return ok, None if ok else _map_payload(transform=T)


def _check_ber_twist_three_forms(ctx: TrialContext):
    T = draw_map(ctx, ReductionKind.TWIST_PARITY, invertible_g=True)
    first, second, third = twist_berezinian_forms(T)
    ok = first == second and second == third and first == third
    return ok, None if ok else _map_payload(transform=T)


def _check_ber_twist_pure_soul(ctx: TrialContext):
    T = draw_map(ctx, ReductionKind.TWIST_PARITY, invertible_g=True)
    value = twist_berezinian_forms(T)[0]
    ok = value.body_is_zero()
    return ok, None if ok else _map_payload(transform=T)


def _check_ber_projection(ctx: TrialContext):
    T1 = draw_map(ctx, ReductionKind.SUPERCONFORMAL, invertible_g=True)
    matrix1 = tangent_matrix(T1)
    reduced1 = projected_tangent_matrix(T1, MatrixProjection.CONFORMAL_REDUCED)
    if matrix1.berezinian() != reduced1.berezinian():
        return False, _map_payload(transform=T1)
    T2 = draw_map(ctx, ReductionKind.TWIST_PARITY, invertible_g=True)
    matrix2 = tangent_matrix(T2)
    reduced2 = projected_tangent_matrix(T2, MatrixProjection.TWIST_REDUCED)
    if matrix2.berezinian() != reduced2.berezinian():
        return False, _map_payload(transform=T2)
    T3 = draw_map(ctx, ReductionKind.GENERAL, invertible_g=True)
    degenerate = projected_tangent_matrix(T3, MatrixProjection.DEGENERATE_PART)
    ok = degenerate.berezinian().is_zero()
    return ok, None if ok else _map_payload(transform=T3)


def _check_chain_rule(ctx: TrialContext):
    inner = draw_map(ctx, ReductionKind.GENERAL)
    outer = draw_map(ctx, ReductionKind.GENERAL)
    lhs = tangent_matrix(compose(outer, inner))
    rhs = tangent_matrix(inner) @ pullback_matrix(tangent_matrix(outer), inner)
    ok = lhs == rhs
    return ok, None if ok else _map_payload(inner=inner, outer=outer)


def _check_ber_multiplicative(ctx: TrialContext):
    for _ in range(_MAX_REDRAWS):
        inner = draw_map(ctx, ReductionKind.GENERAL, invertible_g=True)
        outer = draw_map(ctx, ReductionKind.GENERAL, invertible_g=True)
        left = tangent_matrix(inner)
        right = pullback_matrix(tangent_matrix(outer), inner)
        product = left @ right
        try:
            lhs = product.berezinian()
            rhs = left.berezinian() * right.berezinian()
        except (NotInvertible, BerezinianDoesNotExist):
            ctx.rejected += 1
            continue
        ok = lhs == rhs
        return ok, None if ok else _map_payload(inner=inner, outer=outer)
    raise RuntimeError("could not draw a multiplicative-Berezinian instance")


def _check_parity_twist(ctx: TrialContext):
    T1 = draw_map(ctx, ReductionKind.SUPERCONFORMAL)
    F1 = draw_superfield(ctx)
    lhs1 = D(pullback(F1, T1))
    rhs1 = d_theta_tilde(T1) * pullback(D(F1), T1)
    if lhs1 != rhs1:
        return False, {"transform": serialization.encode_map(T1)}
    T2 = draw_map(ctx, ReductionKind.TWIST_PARITY)
    F2 = draw_superfield(ctx)
    lhs2 = partial_z(pullback(F2, T2))
    rhs2 = partial_theta_tilde(T2) * pullback(D(F2), T2)
    ok = lhs2 == rhs2
    return ok, None if ok else {"transform": serialization.encode_map(T2)}


def _check_reduction_ode(ctx: TrialContext):
    plus = build_reduced(draw_reduced_pair(ctx, 1))
    if not reduction_conditions(plus).conformal.is_zero():
        return False, _map_payload(transform=plus)
    minus = build_reduced(draw_reduced_pair(ctx, -1))
    ok = reduction_conditions(minus).twist.is_zero()
    return ok, None if ok else _map_payload(transform=minus)


def _check_twist_noninvertible(ctx: TrialContext):
    T = build_reduced(draw_reduced_pair(ctx, -1))
    ok = T.f.differentiate().body_is_zero()
    return ok, None if ok else _map_payload(transform=T)


def _check_star_vs_compose(ctx: TrialContext):
    left = draw_reduced_pair(ctx, 1)
    for spin in (1, -1):
        right = draw_reduced_pair(ctx, spin)
        product = star(left, right)
        composite = compose(build_reduced(left), build_reduced(right))
        if product.g != composite.g or product.psi != composite.psi:
            return False, {
                "left": serialization.encode_reduced_pair(left),
                "right": serialization.encode_reduced_pair(right),
            }
    first = build_reduced(draw_reduced_pair(ctx, -1, zero_g=True))
    second = build_reduced(draw_reduced_pair(ctx, -1, zero_g=True))
    composite = compose(second, first)
    odd_row = compose_all([second.psi], first.f)[0]
    ok = composite.psi == odd_row and composite.g.is_zero()
    return ok, None if ok else _map_payload(first=first, second=second)


def _check_spin_rule(ctx: TrialContext):
    left = draw_reduced_pair(ctx, 1, invertible_g=True)
    right_plus = draw_reduced_pair(ctx, 1, invertible_g=True)
    composite = compose(build_reduced(left), build_reduced(right_plus))
    if reduction_kind(composite) is not ReductionKind.SUPERCONFORMAL:
        return False, _map_payload(transform=composite)
    inner = _draw_twist_inner_for(ctx, left.g)
    composite = compose(build_reduced(left), inner)
    if reduction_kind(composite) is not ReductionKind.TWIST_PARITY:
        return False, _map_payload(transform=composite)
    minus = draw_reduced_pair(ctx, -1)
    try:
        star(minus, right_plus)
    except UndefinedSpinProduct:
        return True, None
    return False, {"left": serialization.encode_reduced_pair(minus)}


def _check_cocycle_standard(ctx: TrialContext):
    inner = draw_map(ctx, ReductionKind.SUPERCONFORMAL)
    outer = draw_map(ctx, ReductionKind.SUPERCONFORMAL)
    ok = standard_cocycle_holds(outer, inner)
    return ok, None if ok else _map_payload(inner=inner, outer=outer)


def _check_cocycle_mixed(ctx: TrialContext):
    outer_pair = draw_reduced_pair(ctx, 1, invertible_g=True)
    outer = build_reduced(outer_pair)
    inner = _draw_twist_inner_for(ctx, outer_pair.g)
    if not mixed_cocycle_holds(outer, inner):
        return False, _map_payload(inner=inner, outer=outer)
    composite = compose(outer, inner)
    ok = reduction_kind(composite) is ReductionKind.TWIST_PARITY
    return ok, None if ok else _map_payload(inner=inner, outer=outer)


def _check_degenerate_both_cocycles(ctx: TrialContext):
    inner = draw_map(ctx, ReductionKind.DEGENERATE)
    outer = draw_map(ctx, ReductionKind.DEGENERATE)
    ok = standard_cocycle_holds(outer, inner) and mixed_cocycle_holds(outer, inner)
    return ok, None if ok else _map_payload(inner=inner, outer=outer)


def _check_det_addition(ctx: TrialContext):
    entries = [draw_grassmann(ctx, Parity.EVEN) for _ in range(4)]
    a, b, c, d = entries
    diag, antidiag = split_diag_antidiag(a, b, c, d)
    ok = det2(a, b, c, d) == diag + antidiag
    return ok, None if ok else {
        "entries": [serialization.encode_grassmann(entry) for entry in entries]
    }


# -------------------------------------------------------- shape-closure batch


_SHAPE_PREDICATES = {
    "conformal": TangentMatrix.has_conformal_shape,
    "twist": TangentMatrix.has_twist_shape,
    "degenerate": TangentMatrix.has_degenerate_shape,
}

_SHAPE_CLAIMS: List[Tuple[str, ReductionKind, ReductionKind, str, str]] = [
    # (claim id, left-symbol class, right-symbol class, target shape, role)
    ("conformal*conformal<=conformal", ReductionKind.SUPERCONFORMAL, ReductionKind.SUPERCONFORMAL, "conformal", "closure"),
    ("twist*conformal<=twist", ReductionKind.TWIST_PARITY, ReductionKind.SUPERCONFORMAL, "twist", "closure"),
    ("degenerate*degenerate<=degenerate", ReductionKind.DEGENERATE, ReductionKind.DEGENERATE, "degenerate", "closure"),
    ("degenerate*general<=degenerate", ReductionKind.DEGENERATE, ReductionKind.GENERAL, "degenerate", "ideal"),
    ("degenerate*conformal<=degenerate", ReductionKind.DEGENERATE, ReductionKind.SUPERCONFORMAL, "degenerate", "ideal"),
    ("degenerate*twist<=degenerate", ReductionKind.DEGENERATE, ReductionKind.TWIST_PARITY, "degenerate", "ideal"),
    ("twist*twist<=twist", ReductionKind.TWIST_PARITY, ReductionKind.TWIST_PARITY, "twist", "measured"),
]

_CONVENTIONS = ("first-map-first", "outer-map-first")


def run_shape_closures(cfg: CheckConfig, trials: int) -> CheckOutcome:
    """Check matrix-shape closure claims in both factor-order conventions.

    The composite matrix is always formed through the chain rule
    P(T2 after T1) = P(T1) * (P(T2) pulled back through T1).  The two
    conventions differ in which factor of a set product acts first.  Closure
    claims must hold at zero failures in the first-map-first convention;
    ideal claims are recorded per convention and must be clean in at least
    one; the twist*twist case is measured only.
    """
    start = time.perf_counter()
    counts: Dict[str, Dict[str, Dict[str, int]]] = {}
    failures = 0
    passes = 0
    trials_counted = 0
    rejected = 0
    first_counterexample: Optional[Dict[str, Any]] = None
    for claim_id, left_kind, right_kind, target, role in _SHAPE_CLAIMS:
        predicate = _SHAPE_PREDICATES[target]
        counts[claim_id] = {}
        for convention in _CONVENTIONS:
            hold = 0
            broken = 0
            for index in range(trials):
                rng = _trial_rng(
                    cfg.seed, f"shape:{claim_id}:{convention}", index
                )
                ctx = TrialContext(cfg, rng)
                left_map = draw_map(ctx, left_kind)
                right_map = draw_map(ctx, right_kind)
                rejected += ctx.rejected
                if convention == "first-map-first":
                    first_map, second_map = left_map, right_map
                else:
                    first_map, second_map = right_map, left_map
                product = tangent_matrix(first_map) @ pullback_matrix(
                    tangent_matrix(second_map), first_map
                )
                if predicate(product):
                    hold += 1
                else:
                    broken += 1
                    if role == "closure" and convention == "first-map-first":
                        if first_counterexample is None:
                            first_counterexample = _map_payload(
                                first=first_map, second=second_map
                            ) | {"claim": claim_id}
            counts[claim_id][convention] = {"hold": hold, "broken": broken}
            if role == "closure" and convention == "first-map-first":
                failures += broken
                passes += hold
                trials_counted += trials
    ideal_verdicts = {}
    for claim_id, _, _, _, role in _SHAPE_CLAIMS:
        if role != "ideal":
            continue
        clean = [
            convention
            for convention in _CONVENTIONS
            if counts[claim_id][convention]["broken"] == 0
        ]
        ideal_verdicts[claim_id] = {
            "holds_in": clean,
            "verdict": "holds in " + " and ".join(clean) if clean else "fails in both",
        }
        trials_counted += 1
        if not clean:
            failures += 1
        else:
            passes += 1
    millis = int((time.perf_counter() - start) * 1000)
    return CheckOutcome(
        name="shape-closures",
        statement=REGISTRY["shape-closures"].statement,
        trials=trials_counted,
        passes=passes,
        failures=failures,
        rejected_draws=rejected,
        first_counterexample=first_counterexample,
        millis=millis,
        details={"counts": counts, "ideal_claims": ideal_verdicts},
    )


# ---------------------------------------------------------------- registry


def _shape_batch(cfg: CheckConfig, trials: int) -> CheckOutcome:
    return run_shape_closures(cfg, trials)


REGISTRY: Dict[str, Check] = {
    check.name: check
    for check in [
        Check(
            "ber-addition",
            "Ber P = Ber P_conf + Ber P_twist when eps(g) is not identically 0",
            _check_ber_addition,
        ),
        Check(
            "q-minus-d-delta",
            "Q - D(DL) = (D theta~)^2 for every map",
            _check_q_minus_d_delta,
        ),
        Check(
            "q-on-conformal",
            "Q = (D theta~)^2 when DL = 0",
            _check_q_on_conformal,
            trial_scale=Fraction(1, 2),
        ),
        Check(
            "delta-decomposition",
            "DL = DL0 + theta*Q; on twist-parity maps DL = DL0",
            _check_delta_decomposition,
        ),
        Check(
            "d-of-delta0",
            "D(DL0) = -(D theta~)^2 when Q = 0",
            _check_d_of_delta0,
            trial_scale=Fraction(1, 2),
        ),
        Check(
            "partial-of-delta0",
            "dz(DL0) = -2 * D theta~ * dz theta~ when Q = 0",
            _check_partial_of_delta0,
            trial_scale=Fraction(1, 2),
        ),
        Check(
            "ber-explicit-vs-matrix",
            "f'/g + chi*psi'/g^2 + theta*(chi/g)' equals the matrix Berezinian",
            _check_ber_explicit_vs_matrix,
        ),
        Check(
            "ber-conformal",
            "Ber P = D theta~ for superconformal maps",
            _check_ber_conformal,
            trial_scale=Fraction(1, 2),
        ),
        Check(
            "ber-twist-three-forms",
            "DL0*dz(theta~)/(D theta~)^2 = dz(DL0)*DL0/(2 (D theta~)^3) = D(D z~ / D theta~)",
            _check_ber_twist_three_forms,
            trial_scale=Fraction(1, 2),
        ),
        Check(
            "ber-twist-pure-soul",
            "the twist-parity Berezinian has zero body",
            _check_ber_twist_pure_soul,
            trial_scale=Fraction(1, 2),
        ),
        Check(
            "ber-projection",
            "Ber P projects onto Ber P_conf_reduced (DL=0) and Ber P_twist_reduced (Q=0); Ber P_deg = 0",
            _check_ber_projection,
            trial_scale=Fraction(1, 2),
        ),
        Check(
            "chain-rule",
            "P(T2 after T1) = P(T1) * (P(T2) pulled back through T1)",
            _check_chain_rule,
            trial_scale=Fraction(1, 2),
        ),
        Check(
            "ber-multiplicative",
            "Ber(M*N) = Ber(M)*Ber(N) when all three Berezinians exist",
            _check_ber_multiplicative,
            trial_scale=Fraction(1, 2),
        ),
        Check(
            "parity-twist",
            "D(F o T) = D theta~ * (DF o T) for superconformal T; dz(F o T) = dz theta~ * (DF o T) for twist-parity T",
            _check_parity_twist,
            trial_scale=Fraction(1, 2),
        ),
        Check(
            "reduction-ode",
            "spin +1 builds DL = 0 and spin -1 builds Q = 0, exactly",
            _check_reduction_ode,
            trial_scale=Fraction(1, 2),
        ),
        Check(
            "twist-noninvertible",
            "spin -1 maps have body(f') identically 0",
            _check_twist_noninvertible,
            trial_scale=Fraction(1, 2),
        ),
        Check(
            "star-vs-compose",
            "the star product equals the (g, psi) of the composition; degenerate products reduce to the odd row",
            _check_star_vs_compose,
            trial_scale=Fraction(1, 2),
        ),
        Check(
            "spin-rule",
            "(+1)*(+1) is superconformal, (+1)*(-1) is twist-parity, (-1)*(anything) is undefined",
            _check_spin_rule,
            trial_scale=Fraction(1, 2),
        ),
        Check(
            "cocycle-standard",
            "D theta~~ = D theta~ * (D~ theta~~ o T) on superconformal chains",
            _check_cocycle_standard,
            trial_scale=Fraction(1, 2),
        ),
        Check(
            "cocycle-mixed",
            "dz theta~~ = dz theta~ * (D~ theta~~ o T) on superconformal-after-twist chains",
            _check_cocycle_mixed,
            trial_scale=Fraction(1, 2),
        ),
        Check(
            "degenerate-both-cocycles",
            "both cocycle relations hold on degenerate chains",
            _check_degenerate_both_cocycles,
            trial_scale=Fraction(1, 2),
        ),
        Check(
            "shape-closures",
            "P_conf*P_conf <= P_conf, P_twist*P_conf <= P_twist, P_deg*P_deg <= P_deg; ideal closures per convention",
            lambda ctx: (True, None),
            trial_scale=Fraction(1, 20),
            batch=_shape_batch,
        ),
        Check(
            "det-addition",
            "det P = det P_diag + det P_antidiag for commuting 2x2 matrices",
            _check_det_addition,
            needs_odd=False,
        ),
    ]
}


def resolve_suite(selection: Sequence[str]) -> List[str]:
    names: List[str] = []
    for entry in selection:
        if entry == "all":
            for name in REGISTRY:
                if name not in names:
                    names.append(name)
            continue
        if entry not in REGISTRY:
            raise ValueError(
                f"unknown check '{entry}'; available: {', '.join(REGISTRY)}"
            )
        if entry not in names:
            names.append(entry)
    return names


def run_check(name: str, cfg: CheckConfig) -> CheckOutcome:
    check = REGISTRY[name]
    trials = max(1, int(cfg.trials * check.trial_scale))
    if check.batch is not None:
        return check.batch(cfg, trials)
    start = time.perf_counter()
    passes = 0
    failures = 0
    rejected = 0
    first_counterexample: Optional[Dict[str, Any]] = None
    for index in range(trials):
        ctx = TrialContext(cfg, _trial_rng(cfg.seed, name, index))
        try:
            ok, payload = check.runner(ctx)
        except Exception as exc:  # a crash is a failing trial, not a crash of the suite
            ok, payload = False, {"error": f"{type(exc).__name__}: {exc}"}
        rejected += ctx.rejected
        if ok:
            passes += 1
        else:
            failures += 1
            if first_counterexample is None:
                first_counterexample = {"trial": index, **(payload or {})}
    millis = int((time.perf_counter() - start) * 1000)
    return CheckOutcome(
        name=name,
        statement=check.statement,
        trials=trials,
        passes=passes,
        failures=failures,
        rejected_draws=rejected,
        first_counterexample=first_counterexample,
        millis=millis,
    )


def run_suite(cfg: CheckConfig) -> CheckReport:
    """Run the selected checks; exact equality semantics throughout."""
    names = cfg.validate()
    report = CheckReport(config=cfg)
    for name in names:
        report.checks.append(run_check(name, cfg))
    return report


# ---------------------------------------------------------------- rendering


def report_to_dict(report: CheckReport, include_timing: bool = False) -> Dict[str, Any]:
    """JSON-ready dict; timing is opt-in so default output is byte-stable."""
    checks = []
    for outcome in report.checks:
        entry: Dict[str, Any] = {
            "name": outcome.name,
            "statement": outcome.statement,
            "trials": outcome.trials,
            "passes": outcome.passes,
            "failures": outcome.failures,
            "rejected_draws": outcome.rejected_draws,
            "counterexample": outcome.first_counterexample,
        }
        if outcome.details is not None:
            entry["details"] = outcome.details
        if include_timing:
            entry["millis"] = outcome.millis
        checks.append(entry)
    cfg = report.config
    return {
        "schema": "identity-check-report/1",
        "config": {
            "generator_count": cfg.generator_count,
            "max_degree": cfg.max_degree,
            "coefficient_bound": cfg.coefficient_bound,
            "trials": cfg.trials,
            "seed": cfg.seed,
            "suite": list(cfg.suite),
        },
        "checks": checks,
        "failures_total": report.failures_total,
    }


def render_report_text(report: CheckReport) -> str:
    lines = []
    for outcome in report.checks:
        verdict = "PASS" if outcome.failures == 0 else "FAIL"
        lines.append(
            f"{verdict} {outcome.name}: {outcome.passes}/{outcome.trials} trials"
            f" (rejected {outcome.rejected_draws}, {outcome.millis} ms)"
            f" -- {outcome.statement}"
        )
        if outcome.details and "ideal_claims" in outcome.details:
            for claim, info in outcome.details["ideal_claims"].items():
                lines.append(f"     {claim}: {info['verdict']}")
    lines.append(
        f"{'FAIL' if report.failed else 'PASS'} total:"
        f" {report.failures_total} failing trials across {len(report.checks)} checks"
    )
    return "\n".join(lines)
