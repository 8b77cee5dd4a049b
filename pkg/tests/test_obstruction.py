import copy
import random

import pytest

from nefcert import linalg, serialize
from nefcert.cohomology import (
    cartier_class,
    h0,
    h1,
    p_torsion_bundle,
    rr_space,
)
from nefcert.curves import Curve, Divisor
from nefcert.fields import Polynomial, field
from nefcert.jacobian import (
    class_order,
    divisor_class_to_mumford,
    enumerate_classes,
)
from nefcert.obstruction import (
    ExtendFieldError,
    SearchBudget,
    SearchExhausted,
    beta_functional,
    certificate_build,
    certificate_verify,
    choose_delta,
    embed_bidegree_2_3,
    normal_bundle_divisor,
    obstruction_scalar,
    rational_places,
)


@pytest.fixture(scope="module")
def cert():
    return certificate_build(3, seed=0)


@pytest.fixture(scope="module")
def setting(cert):
    """Curve, embedding and torsion data reconstructed from the certificate."""
    base = field(cert.p, cert.k)
    curve = Curve(base, cert.f)
    emb = embed_bidegree_2_3(curve, cert.a_div)
    n0 = normal_bundle_divisor(emb)
    bundle = p_torsion_bundle(curve, cert.l_cls)
    return curve, emb, n0, bundle


def _random_effective(curve, rng, degree):
    pts = rational_places(curve)
    return Divisor((pl, 1) for pl in rng.sample(pts, degree))


# --- embedding ----------------------------------------------------------------


def test_embed_validates_the_pencil(setting):
    curve, emb, n0, bundle = setting
    pts = rational_places(curve)
    with pytest.raises(ValueError, match="degree 3"):
        embed_bidegree_2_3(curve, Divisor([(pts[0], 2)]))
    with pytest.raises(ValueError, match="degree 3"):
        embed_bidegree_2_3(curve, Divisor([(pts[0], -1), (pts[1], 4)]))
    # canonical plus a point is the one excluded pencil shape
    bad = curve.canonical_divisor() + Divisor([(pts[1], 1)])
    assert bad.degree == 3
    with pytest.raises(ValueError, match="excluded pencil"):
        embed_bidegree_2_3(curve, bad)


def test_embedding_shape(setting):
    curve, emb, n0, bundle = setting
    assert emb.ruling_degrees == (3, 2)
    assert emb.tangent_summand_degrees == (4, 6)
    assert len(emb.rows) == 3 and not emb.rows[2].is_zero
    assert max(r.degree for r in emb.rows) == 3
    # the defining form vanishes on the curve
    s, x = emb.s_fn, curve.x()
    acc = curve.zero()
    for row in reversed(emb.rows):
        val = curve.zero()
        for c in reversed(row.coeffs):
            val = val * x + curve.fn(c)
        acc = acc * s + val
    assert acc.is_zero
    assert len(emb.k_basis) == 2 and len(emb.a_basis) == 2


def test_normal_bundle_divisor_representatives(setting):
    curve, emb, n0, bundle = setting
    assert n0.degree == 12 and n0.is_effective
    rng = random.Random(7)
    for _ in range(3):
        alt = normal_bundle_divisor(emb, rng)
        assert alt.degree == 12 and alt.is_effective
        # the two representatives differ by a principal divisor
        assert divisor_class_to_mumford(curve, alt - n0).is_zero


# --- section-space dimensions --------------------------------------------------


def test_dimension_ledger(setting):
    curve, emb, n0, bundle = setting
    kdiv = curve.canonical_divisor()
    assert h0(curve, kdiv) == 2
    assert h1(curve, Divisor()) == 2
    assert h1(curve, -bundle.rep) == 1
    assert h0(curve, n0 + 2 * kdiv) == 15
    for j in range(1, 3):
        rep_j = bundle.rep * j
        cls_j = divisor_class_to_mumford(curve, rep_j)
        assert class_order(cls_j) == 3
        assert h0(curve, kdiv + rep_j) == 1
    assert h0(curve, n0 - bundle.rep) == 11
    rng = random.Random(11)
    for _ in range(8):
        b_div = _random_effective(curve, rng, 4)
        assert h0(curve, n0 + 2 * kdiv - b_div) == 11
        assert h0(curve, n0 + kdiv - b_div) == 9


def test_adjoint_products_cut_out_the_base_divisor(setting):
    """Multiplying H^0(N - L) by the section of K + L lands exactly on the
    subspace of H^0(K + N) vanishing on the degree-2 zero divisor of that
    section."""
    curve, emb, n0, bundle = setting
    kdiv = curve.canonical_divisor()
    alpha_sp = rr_space(curve, kdiv + bundle.rep)
    assert alpha_sp.dim == 1
    alpha = alpha_sp.basis[0]
    b_l = curve.divisor(alpha) + kdiv + bundle.rep
    assert b_l.is_effective and b_l.degree == 2

    big = rr_space(curve, n0 + kdiv)
    assert big.dim == 13
    sub = rr_space(curve, n0 + kdiv - b_l)
    assert sub.dim == 11
    rows = []
    for sig in rr_space(curve, n0 - bundle.rep).basis:
        prod = sig * alpha
        assert big.coords(prod) is not None
        co = sub.coords(prod)
        assert co is not None, "product misses the base divisor"
        rows.append(list(co))
    assert linalg.rank(curve.field, rows) == 11


def test_castelnuovo_products_have_full_rank(setting):
    curve, emb, n0, bundle = setting
    kdiv = curve.canonical_divisor()
    k_basis = rr_space(curve, kdiv).basis
    rng = random.Random(23)
    for _ in range(50):
        b_div = _random_effective(curve, rng, 4)
        target = rr_space(curve, n0 + 2 * kdiv - b_div)
        assert target.dim == 11
        rows = []
        for u in rr_space(curve, n0 + kdiv - b_div).basis:
            for w in k_basis:
                co = target.coords(u * w)
                assert co is not None
                rows.append(list(co))
        assert linalg.rank(curve.field, rows) == 11


# --- the extension-class functional --------------------------------------------


def test_beta_is_nonzero_and_choice_independent(setting):
    curve, emb, n0, bundle = setting
    b0 = beta_functional(emb, 0)
    assert b0.dim == 15 and not b0.is_zero
    for choice in range(1, 6):
        assert beta_functional(emb, choice).coeffs == b0.coeffs


def test_beta_restriction_survives_point_conditions(setting):
    curve, emb, n0, bundle = setting
    beta = beta_functional(emb)
    rng = random.Random(31)
    for _ in range(50):
        b_div = _random_effective(curve, rng, 4)
        assert beta.restrict_nonzero(b_div)


def test_beta_value_rejects_foreign_sections(setting):
    curve, emb, n0, bundle = setting
    beta = beta_functional(emb)
    # a function with a pole pattern outside the section space
    outside = curve.x() ** 9
    if rr_space(curve, beta.space_div).coords(outside) is None:
        with pytest.raises(ValueError, match="bookkeeping"):
            beta.value(outside)


# --- torsion sections and the obstruction scalar --------------------------------


def test_cartier_classes_of_full_torsion_span_the_differentials():
    # y^2 = x^5 + x over F_9 carries all eight nontrivial 3-torsion classes
    curve = Curve(field(3, 2), (0, 1, 0, 0, 0, 1))
    tors = [
        cl for cl in enumerate_classes(curve) if (3 * cl).is_zero and not cl.is_zero
    ]
    assert len(tors) == 8
    vecs = []
    for cl in tors:
        bundle = p_torsion_bundle(curve, cl)
        c1, c2 = cartier_class(bundle)
        assert (c1, c2) != (0, 0)
        vecs.append([c1, c2])
    assert linalg.rank(curve.field, vecs) == 2


def test_choose_delta_properties(setting):
    curve, emb, n0, bundle = setting
    w_div = n0 - bundle.rep
    delta, d_div = choose_delta(emb, n0, bundle, seed=5)
    assert d_div.degree == 12 and len(d_div.items) == 12
    assert all(m == 1 and pl.degree == 1 for pl, m in d_div.items)
    assert curve.divisor(delta) == d_div - w_div
    # the class of N - D is the torsion class itself
    cls = divisor_class_to_mumford(curve, n0 - d_div)
    assert cls == bundle.cls
    # seeded search is reproducible
    delta2, d2 = choose_delta(emb, n0, bundle, seed=5)
    assert d2 == d_div and (delta - delta2).is_zero


def test_choose_delta_needs_rational_points():
    # over F_3 no genus-2 curve has the 12 rational points a configuration needs
    curve = Curve(field(3), (0, 1, 0, 0, 0, 1))
    pts = rational_places(curve)
    assert len(pts) < 12
    emb = None
    for a, b, c in [(0, 1, 2), (0, 1, 3), (0, 2, 3)]:
        try:
            emb = embed_bidegree_2_3(
                curve, Divisor([(pts[a], 1), (pts[b], 1), (pts[c], 1)])
            )
            break
        except ValueError:
            continue
    assert emb is not None
    n0 = normal_bundle_divisor(emb)
    from nefcert.jacobian import find_p_torsion

    bundle = p_torsion_bundle(curve, find_p_torsion(curve, 0))
    with pytest.raises(ExtendFieldError, match="extend field"):
        choose_delta(emb, n0, bundle, seed=0)


def test_obstruction_scalar_is_multilinear(setting, cert):
    curve, emb, n0, bundle = setting
    beta = beta_functional(emb)
    dsp = rr_space(curve, n0 - bundle.rep)
    delta = curve.zero()
    for c, phi in zip(cert.delta_coords, dsp.basis):
        delta = delta + phi.scale(c)
    gamma = cert.gamma
    alpha = cert.alpha
    base = curve.field
    v = obstruction_scalar(beta, delta, gamma, alpha)
    assert v == cert.obstruction and v != 0
    for c in range(2, 5):
        scaled = obstruction_scalar(beta, delta.scale(c % base.q), gamma, alpha)
        assert scaled == base.mul(v, c % base.q)
    other = dsp.basis[0]
    v_other = obstruction_scalar(beta, other, gamma, alpha)
    v_sum = obstruction_scalar(beta, delta + other, gamma, alpha)
    assert v_sum == base.add(v, v_other)
    # zero inputs
    from nefcert.curves import Differential

    assert obstruction_scalar(beta, delta, Differential(curve, curve.zero()), alpha) == 0
    with pytest.raises(ValueError, match="zero section"):
        obstruction_scalar(beta, delta, gamma, curve.zero())


# --- certificates ----------------------------------------------------------------


def test_certificate_roundtrip_and_determinism(cert):
    report = certificate_verify(cert)
    assert report.ok, [c for c in report.checks if not c.passed]
    raw = serialize.canonical_bytes(serialize.certificate_to_dict(cert))
    again = certificate_build(3, seed=0)
    assert serialize.canonical_bytes(serialize.certificate_to_dict(again)) == raw
    # dict path agrees with the object path
    report2 = certificate_verify(serialize.parse_certificate(raw))
    assert report2.ok
    assert [c.passed for c in report2.checks] == [True] * 7


def test_certificate_fields(cert):
    assert cert.p == 3 and cert.obstruction != 0
    assert len(cert.delta_coords) == 11
    assert cert.d_div.degree == 12
    assert cert.a_div.degree == 3 and cert.a_div.is_effective
    assert cert.seed == 0


@pytest.mark.parametrize(
    "mutate,expect",
    [
        ("gamma", 3),
        ("delta", 4),
        ("g", 3),
        ("d_div", 2),
    ],
)
def test_certificate_mutations_fail_at_the_intended_check(cert, mutate, expect):
    d = serialize.certificate_to_dict(cert)
    dd = copy.deepcopy(d)
    q = cert.p**cert.k
    if mutate == "gamma":
        num = dd["gamma"]["a"]["num"] or [0]
        num[0] = (num[0] + 1) % q
        dd["gamma"]["a"]["num"] = num
    elif mutate == "delta":
        dd["delta_coords"][0] = (dd["delta_coords"][0] + 1) % q
    elif mutate == "g":
        num = dd["g"]["a"]["num"] or [0]
        num[0] = (num[0] + 1) % q
        dd["g"]["a"]["num"] = num
    else:
        dd["d_div"][0] = dd["d_div"][1]
    report = certificate_verify(dd)
    assert not report.ok
    failed = [c.index for c in report.checks if not c.passed]
    assert expect in failed


def test_search_input_validation():
    with pytest.raises(ValueError, match="not prime"):
        certificate_build(9, seed=0)
    with pytest.raises(ValueError, match="characteristic two"):
        certificate_build(2, seed=0)


def test_search_exhaustion_reports_statistics():
    tiny = SearchBudget(curve_tries=2, torsion_tries=0)
    with pytest.raises(SearchExhausted) as exc:
        certificate_build(3, seed=0, budget=tiny)
    stats = exc.value.stats
    assert stats["curves_sampled"] >= 1
    assert set(stats) >= {"singular", "non_ordinary", "obstruction_zero"}
