"""Canonical JSON encoding of certificates.

Encoding is total and deterministic: the same certificate always produces
the same bytes (sorted keys, no whitespace, trailing newline).  Decoding is
split in two: `parse_certificate` only enforces the structural shape and
raises CertificateFormatError, while the field decoders (`decode_divisor`
etc.) reconstruct curve-level objects and raise ValueError when the data is
shaped correctly but mathematically inconsistent.  The verifier treats the
former as malformed input and the latter as failed checks.
"""

from __future__ import annotations

import json

from .cohomology import SemilinearMap
from .curves import INFINITE, Curve, Differential, Divisor, FunctionElement, Place
from .fields import Field, Polynomial, RationalFunction
from .jacobian import MumfordClass
from .obstruction import SCHEMA_VERSION, Certificate


class CertificateFormatError(ValueError):
    """The input is not a structurally well-formed certificate."""


# --- encoders -----------------------------------------------------------------


def encode_poly(poly: Polynomial) -> list:
    return list(poly.coeffs)


def encode_rational(r: RationalFunction) -> dict:
    return {"num": encode_poly(r.num), "den": encode_poly(r.den)}


def encode_fn(fn: FunctionElement) -> dict:
    return {"a": encode_rational(fn.a), "b": encode_rational(fn.b)}


def encode_place(pl: Place) -> dict:
    return {
        "kind": pl.kind,
        "u": None if pl.u is None else encode_poly(pl.u),
        "v": None if pl.v is None else encode_poly(pl.v),
    }


def encode_divisor(div: Divisor) -> list:
    return [[encode_place(pl), m] for pl, m in div.items]


def encode_mumford(cls: MumfordClass) -> dict:
    return {"u": encode_poly(cls.u), "v": encode_poly(cls.v)}


def encode_semilinear(sm: SemilinearMap) -> dict:
    return {
        "twist": sm.twist,
        "matrix": [list(row) for row in sm.matrix],
        "source_dim": sm.source_dim,
        "target_dim": sm.target_dim,
    }


def certificate_to_dict(cert: Certificate) -> dict:
    return {
        "schema": cert.schema,
        "p": cert.p,
        "k": cert.k,
        "modulus": None if cert.modulus is None else list(cert.modulus),
        "f": list(cert.f),
        "a_div": encode_divisor(cert.a_div),
        "l_cls": encode_mumford(cert.l_cls),
        "g": encode_fn(cert.g),
        "delta_coords": list(cert.delta_coords),
        "d_div": encode_divisor(cert.d_div),
        "gamma": encode_fn(cert.gamma.w),
        "alpha": encode_fn(cert.alpha),
        "obstruction": cert.obstruction,
        "frob": encode_semilinear(cert.frob),
        "cartier": [list(row) for row in cert.cartier],
        "seed": cert.seed,
    }


def canonical_bytes(d: dict) -> bytes:
    return json.dumps(d, sort_keys=True, separators=(",", ":")).encode() + b"\n"


# --- shape validation ----------------------------------------------------------


def _want(cond: bool, msg: str):
    if not cond:
        raise CertificateFormatError(msg)


def _is_int_list(v) -> bool:
    return isinstance(v, list) and all(type(c) is int for c in v)


def _check_rational(v, key: str):
    _want(isinstance(v, dict), f"{key}: expected an object")
    _want(set(v) == {"num", "den"}, f"{key}: expected num/den")
    _want(_is_int_list(v["num"]) and _is_int_list(v["den"]), f"{key}: bad coefficients")


def _check_fn(v, key: str):
    _want(isinstance(v, dict), f"{key}: expected an object")
    _want(set(v) == {"a", "b"}, f"{key}: expected a/b parts")
    _check_rational(v["a"], key + ".a")
    _check_rational(v["b"], key + ".b")


def _check_divisor(v, key: str):
    _want(isinstance(v, list), f"{key}: expected a list")
    for i, item in enumerate(v):
        _want(
            isinstance(item, list) and len(item) == 2 and type(item[1]) is int,
            f"{key}[{i}]: expected [place, multiplicity]",
        )
        pl = item[0]
        _want(
            isinstance(pl, dict) and set(pl) == {"kind", "u", "v"},
            f"{key}[{i}]: bad place",
        )
        _want(isinstance(pl["kind"], str), f"{key}[{i}]: bad place kind")
        for part in ("u", "v"):
            _want(
                pl[part] is None or _is_int_list(pl[part]),
                f"{key}[{i}]: bad place polynomial",
            )


_CERT_KEYS = {
    "schema",
    "p",
    "k",
    "modulus",
    "f",
    "a_div",
    "l_cls",
    "g",
    "delta_coords",
    "d_div",
    "gamma",
    "alpha",
    "obstruction",
    "frob",
    "cartier",
    "seed",
}


def ensure_certificate_shape(d) -> dict:
    """Validate plain-data structure; returns d unchanged on success."""
    _want(isinstance(d, dict), "certificate must be an object")
    _want(set(d) == _CERT_KEYS, "wrong certificate key set")
    _want(d["schema"] == SCHEMA_VERSION, "unsupported schema version")
    for key in ("p", "k", "obstruction", "seed"):
        _want(type(d[key]) is int, f"{key}: expected an integer")
    _want(d["p"] >= 2 and d["k"] >= 1, "bad field parameters")
    _want(
        d["modulus"] is None or _is_int_list(d["modulus"]),
        "modulus: expected null or coefficients",
    )
    _want((d["k"] == 1) == (d["modulus"] is None), "modulus inconsistent with k")
    _want(_is_int_list(d["f"]), "f: expected coefficients")
    _check_divisor(d["a_div"], "a_div")
    _check_divisor(d["d_div"], "d_div")
    _want(isinstance(d["l_cls"], dict) and set(d["l_cls"]) == {"u", "v"}, "l_cls: bad pair")
    _want(
        _is_int_list(d["l_cls"]["u"]) and _is_int_list(d["l_cls"]["v"]),
        "l_cls: bad coefficients",
    )
    _check_fn(d["g"], "g")
    _check_fn(d["gamma"], "gamma")
    _check_fn(d["alpha"], "alpha")
    _want(_is_int_list(d["delta_coords"]), "delta_coords: expected integers")
    fr = d["frob"]
    _want(
        isinstance(fr, dict) and set(fr) == {"twist", "matrix", "source_dim", "target_dim"},
        "frob: bad map",
    )
    _want(
        type(fr["twist"]) is int
        and type(fr["source_dim"]) is int
        and type(fr["target_dim"]) is int,
        "frob: bad dimensions",
    )
    _want(
        isinstance(fr["matrix"], list) and all(_is_int_list(r) for r in fr["matrix"]),
        "frob: bad matrix",
    )
    _want(
        isinstance(d["cartier"], list)
        and len(d["cartier"]) == 2
        and all(_is_int_list(r) and len(r) == 2 for r in d["cartier"]),
        "cartier: expected a 2x2 matrix",
    )
    return d


def parse_certificate(data) -> dict:
    """bytes/str -> shape-checked dict; malformed input raises
    CertificateFormatError."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as err:
            raise CertificateFormatError(f"not UTF-8: {err}") from err
    try:
        d = json.loads(data)
    except json.JSONDecodeError as err:
        raise CertificateFormatError(f"invalid JSON: {err}") from err
    return ensure_certificate_shape(d)


# --- curve-level decoders (semantic errors raise ValueError) -------------------


def decode_poly(base: Field, coeffs) -> Polynomial:
    co = tuple(int(c) for c in coeffs)
    if any(not 0 <= c < base.q for c in co):
        raise ValueError("coefficient out of field range")
    return Polynomial(base, co)


def decode_rational(base: Field, data) -> RationalFunction:
    den = decode_poly(base, data["den"])
    if den.is_zero:
        raise ValueError("zero denominator")
    return RationalFunction(decode_poly(base, data["num"]), den)


def decode_fn(curve: Curve, data) -> FunctionElement:
    return FunctionElement(
        curve, decode_rational(curve.field, data["a"]), decode_rational(curve.field, data["b"])
    )


def decode_differential(curve: Curve, data) -> Differential:
    return Differential(curve, decode_fn(curve, data))


def decode_place(curve: Curve, data) -> Place:
    kind = data["kind"]
    if kind == INFINITE:
        return curve.infinite_place()
    if data["u"] is None:
        raise ValueError("finite place needs a polynomial")
    u = decode_poly(curve.field, data["u"])
    v = None if data["v"] is None else decode_poly(curve.field, data["v"])
    pl = Place(kind, u, v)
    if pl not in curve.places_above(u):
        raise ValueError("place does not lie on the curve")
    return pl


def decode_divisor(curve: Curve, data) -> Divisor:
    return Divisor([(decode_place(curve, item[0]), item[1]) for item in data])


def decode_mumford(curve: Curve, data) -> MumfordClass:
    return MumfordClass(
        curve, decode_poly(curve.field, data["u"]), decode_poly(curve.field, data["v"])
    )


def decode_semilinear(base: Field, data) -> SemilinearMap:
    matrix = tuple(tuple(int(c) for c in row) for row in data["matrix"])
    return SemilinearMap(
        base, data["twist"], matrix, data["source_dim"], data["target_dim"]
    )
