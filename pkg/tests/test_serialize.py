import copy
import json

import pytest

from nefcert import serialize
from nefcert.curves import Curve, Divisor
from nefcert.fields import Polynomial, field
from nefcert.obstruction import certificate_build, rational_places
from nefcert.serialize import CertificateFormatError


@pytest.fixture(scope="module")
def cert_dict():
    return serialize.certificate_to_dict(certificate_build(3, seed=0))


def test_canonical_bytes_are_stable(cert_dict):
    raw = serialize.canonical_bytes(cert_dict)
    assert raw.endswith(b"\n")
    assert b" " not in raw.split(b'"den"')[0][:40]
    # key order does not matter for the output
    shuffled = dict(reversed(list(cert_dict.items())))
    assert serialize.canonical_bytes(shuffled) == raw
    assert serialize.parse_certificate(raw) == cert_dict


def test_parse_rejects_garbage():
    with pytest.raises(CertificateFormatError, match="invalid JSON"):
        serialize.parse_certificate(b"not json at all")
    with pytest.raises(CertificateFormatError, match="not UTF-8"):
        serialize.parse_certificate(b"\xff\xfe\x00")
    with pytest.raises(CertificateFormatError, match="must be an object"):
        serialize.parse_certificate(b"[1,2,3]")


def test_shape_validation_catches_each_field(cert_dict):
    def broken(fn):
        d = copy.deepcopy(cert_dict)
        fn(d)
        return d

    cases = [
        (lambda d: d.pop("p"), "key set"),
        (lambda d: d.update(p="3"), "expected an integer"),
        (lambda d: d.update(schema="bogus/9"), "unsupported schema"),
        (lambda d: d.update(modulus=None), "modulus inconsistent"),
        (lambda d: d.update(f="101"), "f: expected coefficients"),
        (lambda d: d.update(extra=1), "key set"),
        (lambda d: d.update(a_div=[["oops", 1]]), "bad place"),
        (lambda d: d.update(l_cls={"u": [1], "w": [0]}), "l_cls"),
        (lambda d: d["g"].pop("a"), "expected a/b"),
        (lambda d: d.update(delta_coords=[0.5]), "delta_coords"),
        (lambda d: d.update(frob={"twist": 1}), "frob"),
        (lambda d: d.update(cartier=[[1, 2, 3]]), "cartier"),
        (lambda d: d["d_div"][0].__setitem__(1, "one"), "multiplicity"),
    ]
    for fn, msg in cases:
        with pytest.raises(CertificateFormatError, match=msg):
            serialize.ensure_certificate_shape(broken(fn))


def test_roundtrip_of_curve_level_objects():
    curve = Curve(field(3, 2), (0, 1, 0, 0, 0, 1))
    pts = rational_places(curve)
    div = Divisor([(pts[0], 2), (pts[3], -1)])
    enc = serialize.encode_divisor(div)
    assert serialize.decode_divisor(curve, enc) == div

    fn = (curve.x() + curve.y()) * (curve.x() * curve.x()).inverse()
    enc_fn = serialize.encode_fn(fn)
    back = serialize.decode_fn(curve, enc_fn)
    assert (back - fn).is_zero

    json.dumps(enc)
    json.dumps(enc_fn)


def test_decoders_reject_semantic_garbage():
    curve = Curve(field(3, 2), (0, 1, 0, 0, 0, 1))
    with pytest.raises(ValueError, match="out of field range"):
        serialize.decode_poly(curve.field, [99])
    with pytest.raises(ValueError, match="zero denominator"):
        serialize.decode_rational(curve.field, {"num": [1], "den": []})
    # a split place whose square root does not match the curve
    good = serialize.encode_place(rational_places(curve)[1])
    assert good["kind"] == "split"
    bad = dict(good)
    bad["v"] = [(good["v"][0] + 1) % 9] if good["v"] else [1]
    with pytest.raises(ValueError, match="does not lie on the curve"):
        serialize.decode_place(curve, bad)
    # reducible support polynomial
    with pytest.raises(ValueError, match="monic irreducible"):
        serialize.decode_place(
            curve, {"kind": "split", "u": [0, 0, 1], "v": [0, 1]}
        )


def test_verify_raises_format_error_on_malformed_dict(cert_dict):
    from nefcert.obstruction import certificate_verify

    d = copy.deepcopy(cert_dict)
    del d["alpha"]
    with pytest.raises(CertificateFormatError):
        certificate_verify(d)
