"""Construction spec files: schema, builder dispatch and the bundled worked examples."""

from __future__ import annotations

from collections.abc import Mapping

import jsonschema

from picode import codegen
from picode.codegen import CodeSpec, PICode
from picode.polyid import PartitionPolynomialTuple, RationalPolynomial, make_type_a_f, make_type_b_f

_RATIONAL = {"oneOf": [{"type": "string", "pattern": r"^\s*-?\d+(/\d+)?\s*$"}, {"type": "integer"}]}
_POLY = {"type": "array", "items": _RATIONAL}

SPEC_SCHEMA = {
    "type": "object",
    "required": ["construction"],
    "properties": {
        "construction": {
            "type": "object",
            "required": ["kind"],
            "properties": {
                "kind": {"enum": ["TypeA", "TypeB", "Theta", "GNU"]},
                "m": {"type": "integer", "minimum": 1},
                "theta_sq": _RATIONAL,
                "g": {"type": "integer", "minimum": 1},
                "n": {"type": "integer", "minimum": 1},
            },
        },
        "q": {"type": "integer", "minimum": 2},
        "N": {"type": "integer", "minimum": 1},
        "d": {"type": "integer", "minimum": 2},
        "t": {"type": "integer", "minimum": 1},
        "t_check": {"type": "integer", "minimum": 1},
        "n": {"type": "integer", "minimum": 0},
        "f_coeffs": _POLY,
        "g_coeffs": _POLY,
        "p_polys": {"type": "array", "items": _POLY, "minItems": 2},
    },
    "allOf": [
        {
            "if": {"properties": {"construction": {"properties": {"kind": {"const": "GNU"}}}}},
            "then": {
                "required": ["N", "t"],
                "properties": {"construction": {"required": ["g", "n"]}},
            },
            "else": {
                "required": ["q", "N", "d", "t", "p_polys"],
                "properties": {"construction": {"required": ["m"]}},
            },
        }
    ],
}


def validate_spec(data: Mapping) -> None:
    """Raise ``jsonschema.ValidationError`` if ``data`` is not a valid spec file."""
    jsonschema.validate(data, SPEC_SCHEMA)
    kind = data["construction"]["kind"]
    if kind in ("TypeA", "TypeB") and "f_coeffs" not in data and "g_coeffs" not in data:
        raise jsonschema.ValidationError(f"{kind} spec needs f_coeffs or g_coeffs")
    if kind == "Theta" and "theta_sq" not in data["construction"]:
        raise jsonschema.ValidationError("Theta spec needs construction.theta_sq")


def build_from_spec(data: Mapping) -> PICode:
    """Validate a spec file and run the matching builder."""
    validate_spec(data)
    cons = data["construction"]
    kind = cons["kind"]
    if kind == "GNU":
        return codegen.build_gnu(cons["g"], cons["n"], data["N"], data["t"])
    q, N, d, t, m = data["q"], data["N"], data["d"], data["t"], cons["m"]
    polys = tuple(RationalPolynomial(p) for p in data["p_polys"])
    if kind == "Theta":
        n = data.get("n", m * (d - 1) + 1)
        p = PartitionPolynomialTuple(polys, N, n)
        return codegen.build_theta_family(m, d, cons["theta_sq"], p, q, N, t)
    if "f_coeffs" in data:
        f = RationalPolynomial(data["f_coeffs"])
    else:
        g = RationalPolynomial(data["g_coeffs"])
        f = make_type_a_f(g, m) if kind == "TypeA" else make_type_b_f(g, m, d)
    p = PartitionPolynomialTuple(polys, N, data.get("n", max(f.degree, 0)))
    spec = CodeSpec(q=q, N=N, d=d, t=t, m=m, f=f, p=p, construction=kind)
    return codegen.build_type_a(spec) if kind == "TypeA" else codegen.build_type_b(spec)


def _poly(coeffs) -> list[str]:
    return RationalPolynomial(coeffs).to_json()


def _type_b_example(d: int, t: int) -> dict:
    m = 2 * t + 1
    N = m * m * (d - 1)
    f = make_type_b_f(RationalPolynomial([1]), m, d)
    return {
        "construction": {"kind": "TypeB", "m": m},
        "q": 2,
        "N": N,
        "d": d,
        "t": t,
        "f_coeffs": f.to_json(),
        "p_polys": [_poly([0, m]), _poly([N, -m])],
    }


def example_specs() -> dict[str, dict]:
    """The six worked examples as spec files, keyed by file name.

    ``example3`` instantiates the general ``(2t+1)^2 (d-1)`` qudit family at
    ``d = 2``, ``t = 1``.
    """
    f_a = make_type_a_f(RationalPolynomial([1, 1]), 5)
    return {
        "example1.json": {
            "construction": {"kind": "TypeA", "m": 5},
            "q": 2,
            "N": 19,
            "d": 2,
            "t": 1,
            "f_coeffs": f_a.to_json(),
            "p_polys": [_poly([18, -3]), _poly([1, 3])],
        },
        "example2.json": {
            "construction": {"kind": "TypeA", "m": 5},
            "q": 3,
            "N": 108,
            "d": 2,
            "t": 1,
            "f_coeffs": f_a.to_json(),
            "p_polys": [_poly([108, 0, -3]), _poly([0, 0, 3]), _poly([])],
        },
        "example3.json": _type_b_example(2, 1),
        "example4.json": _type_b_example(3, 1),
        "example5.json": _type_b_example(4, 1),
        "example6.json": _type_b_example(5, 1),
    }
