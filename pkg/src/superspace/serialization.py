"""JSON-dict encodings of algebra values, maps and reduced pairs.

Rationals travel as [numerator, denominator] integer pairs so no float ever
enters the pipeline.  A Grassmann number is a list of records
``{"mask": int, "re": [n, d], "im": [n, d]}`` in ascending mask order; a
polynomial is its coefficient list; a map carries the four polynomials plus
the generator count.  Encoding is canonical, so encode(decode(x)) == x.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Any, Dict, List

from .grassmann import GaussianRational, GrassmannNumber, Parity
from .polynomials import ComponentFunction, RationalComponent
from .superfields import Superfield
from .transforms import ReducedPair, SuperanalyticMap


class SerializationError(ValueError):
    """Malformed input document; the message carries a JSON-path location."""


def _fail(path: str, message: str) -> "SerializationError":
    return SerializationError(f"{path}: {message}")


# ---------------------------------------------------------------- encoding


def encode_fraction(value: Fraction) -> List[int]:
    return [value.numerator, value.denominator]


def encode_grassmann(value: GrassmannNumber) -> List[Dict[str, Any]]:
    return [
        {
            "mask": mask,
            "re": encode_fraction(coeff.re),
            "im": encode_fraction(coeff.im),
        }
        for mask, coeff in value.terms()
    ]


def encode_polynomial(value: ComponentFunction) -> List[List[Dict[str, Any]]]:
    return [encode_grassmann(coeff) for coeff in value.coefficients()]


def encode_map(value: SuperanalyticMap) -> Dict[str, Any]:
    return {
        "generator_count": value.gens,
        "f": encode_polynomial(value.f),
        "chi": encode_polynomial(value.chi),
        "psi": encode_polynomial(value.psi),
        "g": encode_polynomial(value.g),
    }


def encode_reduced_pair(value: ReducedPair) -> Dict[str, Any]:
    return {
        "generator_count": value.gens,
        "g": encode_polynomial(value.g),
        "psi": encode_polynomial(value.psi),
        "spin": value.spin,
        "f0": encode_grassmann(value.f0),
        "chi0": encode_grassmann(value.chi0),
    }


def encode_rational_component(value: RationalComponent) -> Dict[str, Any]:
    return {
        "num": encode_polynomial(value.num),
        "den": encode_polynomial(value.den),
    }


def encode_superfield(value: Superfield) -> Dict[str, Any]:
    return {
        "a": encode_rational_component(value.a),
        "b": encode_rational_component(value.b),
    }


# ---------------------------------------------------------------- decoding


def decode_fraction(doc: Any, path: str = "$") -> Fraction:
    if (
        not isinstance(doc, list)
        or len(doc) != 2
        or not all(isinstance(part, int) and not isinstance(part, bool) for part in doc)
    ):
        raise _fail(path, "expected a [numerator, denominator] integer pair")
    if doc[1] == 0:
        raise _fail(path, "zero denominator")
    return Fraction(doc[0], doc[1])


def decode_grassmann(doc: Any, gens: int, path: str = "$") -> GrassmannNumber:
    if not isinstance(doc, list):
        raise _fail(path, "expected a list of term records")
    coeffs: Dict[int, GaussianRational] = {}
    for index, record in enumerate(doc):
        here = f"{path}[{index}]"
        if not isinstance(record, dict):
            raise _fail(here, "expected a term record object")
        unknown = set(record) - {"mask", "re", "im"}
        if unknown:
            raise _fail(here, f"unknown keys {sorted(unknown)}")
        mask = record.get("mask")
        if not isinstance(mask, int) or isinstance(mask, bool) or mask < 0:
            raise _fail(f"{here}.mask", "expected a nonnegative integer")
        if mask >> gens:
            raise _fail(
                f"{here}.mask", f"mask {mask} uses generators beyond the first {gens}"
            )
        if mask in coeffs:
            raise _fail(f"{here}.mask", f"duplicate mask {mask}")
        re = decode_fraction(record.get("re", [0, 1]), f"{here}.re")
        im = decode_fraction(record.get("im", [0, 1]), f"{here}.im")
        coeffs[mask] = GaussianRational(re, im)
    return GrassmannNumber(gens, coeffs)


def decode_polynomial(
    doc: Any, parity: Parity, gens: int, path: str = "$"
) -> ComponentFunction:
    if not isinstance(doc, list):
        raise _fail(path, "expected a list of coefficients")
    coeffs = [
        decode_grassmann(entry, gens, f"{path}[{index}]")
        for index, entry in enumerate(doc)
    ]
    try:
        return ComponentFunction(coeffs, parity, gens)
    except ValueError as exc:
        raise _fail(path, str(exc)) from exc


def _decode_generator_count(doc: Dict[str, Any], path: str) -> int:
    gens = doc.get("generator_count")
    if not isinstance(gens, int) or isinstance(gens, bool) or gens < 0:
        raise _fail(f"{path}.generator_count", "expected a nonnegative integer")
    return gens


def decode_map(doc: Any, path: str = "$") -> SuperanalyticMap:
    if not isinstance(doc, dict):
        raise _fail(path, "expected a map object")
    required = {"generator_count", "f", "chi", "psi", "g"}
    missing = required - set(doc)
    if missing:
        raise _fail(path, f"missing keys {sorted(missing)}")
    unknown = set(doc) - required
    if unknown:
        raise _fail(path, f"unknown keys {sorted(unknown)}")
    gens = _decode_generator_count(doc, path)
    f = decode_polynomial(doc["f"], Parity.EVEN, gens, f"{path}.f")
    chi = decode_polynomial(doc["chi"], Parity.ODD, gens, f"{path}.chi")
    psi = decode_polynomial(doc["psi"], Parity.ODD, gens, f"{path}.psi")
    g = decode_polynomial(doc["g"], Parity.EVEN, gens, f"{path}.g")
    try:
        return SuperanalyticMap(f, chi, psi, g)
    except ValueError as exc:
        raise _fail(path, str(exc)) from exc


def decode_reduced_pair(doc: Any, path: str = "$") -> ReducedPair:
    if not isinstance(doc, dict):
        raise _fail(path, "expected a reduced-pair object")
    required = {"generator_count", "g", "psi", "spin"}
    allowed = required | {"f0", "chi0"}
    missing = required - set(doc)
    if missing:
        raise _fail(path, f"missing keys {sorted(missing)}")
    unknown = set(doc) - allowed
    if unknown:
        raise _fail(path, f"unknown keys {sorted(unknown)}")
    gens = _decode_generator_count(doc, path)
    spin = doc["spin"]
    if spin not in (1, -1) or isinstance(spin, bool):
        raise _fail(f"{path}.spin", "expected +1 or -1")
    g = decode_polynomial(doc["g"], Parity.EVEN, gens, f"{path}.g")
    psi = decode_polynomial(doc["psi"], Parity.ODD, gens, f"{path}.psi")
    f0 = decode_grassmann(doc.get("f0", []), gens, f"{path}.f0")
    chi0 = decode_grassmann(doc.get("chi0", []), gens, f"{path}.chi0")
    try:
        return ReducedPair(g=g, psi=psi, spin=spin, f0=f0, chi0=chi0)
    except ValueError as exc:
        raise _fail(path, str(exc)) from exc
