import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nefcert.fields import (
    Polynomial,
    RationalFunction,
    field,
    field_with_modulus,
    hensel_sqrt,
    is_irreducible,
    kappa_inv,
    kappa_pow,
    kappa_sqrt,
    kappa_trace,
    poly_factor,
    poly_gcd,
    poly_ord,
    poly_random,
    poly_random_monic,
    poly_roots,
    poly_xgcd,
)

FIELDS = [field(3), field(5), field(11), field(3, 2), field(5, 2), field(3, 3)]


def P(f, *coeffs):
    return Polynomial(f, coeffs)


# --- field construction -------------------------------------------------


def test_field_sizes():
    assert field(5, 1).q == 5
    assert field(3, 2).q == 9
    assert field(7, 3).q == 343


def test_field_rejects_composite():
    with pytest.raises(ValueError, match="not prime"):
        field(4, 1)


def test_field_rejects_char_two():
    with pytest.raises(ValueError, match="characteristic two unsupported"):
        field(2, 1)


def test_field_instances_shared():
    assert field(3, 2) is field(3, 2)


def test_frozen_moduli():
    # first irreducibles in the deterministic scan order
    assert field(3, 2).modulus == (1, 0, 1)  # x^2 + 1
    assert field(3, 3).modulus == (1, 2, 0, 1)  # x^3 + 2x + 1
    assert field_with_modulus(3, 2, [1, 0, 1]) is field(3, 2)


def test_field_with_noncanonical_modulus():
    # x^2 + 2x + 2 is irreducible over F_3 (no roots): 2, 2+2+2=6=0? -> check
    # 0 -> 2, 1 -> 1+2+2=5=2, 2 -> 4+4+2=10=1; no roots
    f = field_with_modulus(3, 2, [2, 2, 1])
    assert f.q == 9 and f is not field(3, 2)
    with pytest.raises(ValueError, match="reducible"):
        field_with_modulus(3, 2, [2, 0, 1])  # x^2+2 = (x+1)(x+2)


# --- element arithmetic --------------------------------------------------


@settings(max_examples=200)
@given(
    fi=st.integers(0, len(FIELDS) - 1),
    a=st.integers(0, 10**6),
    b=st.integers(0, 10**6),
    c=st.integers(0, 10**6),
)
def test_field_axioms(fi, a, b, c):
    F = FIELDS[fi]
    a, b, c = a % F.q, b % F.q, c % F.q
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(a, b) == F.mul(b, a)
    assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, 0) == a and F.mul(a, 1) == a
    assert F.add(a, F.neg(a)) == 0
    if a:
        assert F.mul(a, F.inv(a)) == 1


@settings(max_examples=200)
@given(fi=st.integers(0, len(FIELDS) - 1), a=st.integers(0, 10**6), b=st.integers(0, 10**6))
def test_frobenius_additive(fi, a, b):
    F = FIELDS[fi]
    a, b = a % F.q, b % F.q
    assert F.frob(F.add(a, b)) == F.add(F.frob(a), F.frob(b))
    assert F.frob_inv(F.frob(a)) == a


def test_element_wrapper():
    F = field(3, 2)
    x = F.elem(5)
    assert x.rep == (2, 1)
    assert (x + x - x) == x
    assert (x * x / x) == x
    assert (-x + x).code == 0
    assert x**0 == F.elem(1)
    assert x ** (F.q - 1) == F.elem(1)


def test_sqrt_enumeration():
    for F in (field(3), field(7), field(3, 2), field(5, 2)):
        squares = sorted({F.mul(a, a) for a in range(F.q)})
        assert len(squares) == (F.q - 1) // 2 + 1
        for a in range(F.q):
            r = F.sqrt(a)
            if a in squares:
                assert r is not None and F.mul(r, r) == a
                assert r == min(r, F.neg(r))  # canonical choice
            else:
                assert r is None


# --- polynomials ----------------------------------------------------------


def test_poly_basics():
    F = field(5)
    f = P(F, 1, 0, 1)  # 1 + x^2
    g = P(F, 4, 1)  # 4 + x = x - 1
    assert f.degree == 2 and g.degree == 1
    assert Polynomial.zero(F).degree == -1
    q, r = divmod(f, g)
    assert q * g + r == f and r.degree < g.degree
    assert f.eval(2) == 0  # 1 + 4 = 5
    assert f.derivative() == P(F, 0, 2)


@settings(max_examples=150)
@given(
    fi=st.integers(0, len(FIELDS) - 1),
    seed=st.integers(0, 2**31),
    da=st.integers(0, 6),
    db=st.integers(0, 5),
)
def test_poly_divmod_roundtrip(fi, seed, da, db):
    F = FIELDS[fi]
    rng = random.Random(seed)
    a = poly_random(F, da, rng)
    b = poly_random(F, db, rng)
    if b.is_zero:
        return
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.degree < b.degree


def test_gcd_examples():
    F5 = field(5)
    # (x^2 - 1, x - 1) -> x - 1
    assert poly_gcd(P(F5, 4, 0, 1), P(F5, 4, 1)) == P(F5, 4, 1)
    # f = x^5 + x + 1 over F_5 is squarefree
    f = P(F5, 1, 1, 0, 0, 0, 1)
    assert poly_gcd(f, f.derivative()) == Polynomial.one(F5)
    z = Polynomial.zero(F5)
    assert poly_gcd(z, z) == z


def test_gcd_mixed_fields_error():
    with pytest.raises(ValueError, match="mixed fields"):
        poly_gcd(P(field(3), 1, 1), P(field(5), 1, 1))


def _divisors_oracle(f):
    """All monic divisors of f, by exhaustive trial division (tiny inputs)."""
    F = f.field
    out = []
    for deg in range(f.degree + 1):
        for code in range(F.q**deg):
            c, coeffs = code, []
            for _ in range(deg):
                c, r = divmod(c, F.q)
                coeffs.append(r)
            coeffs.append(1)
            g = Polynomial(F, coeffs)
            if (f % g).is_zero:
                out.append(g)
    return out


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**31), da=st.integers(0, 3), db=st.integers(0, 3))
def test_gcd_against_divisor_oracle(seed, da, db):
    F = field(3)
    rng = random.Random(seed)
    a = poly_random(F, da, rng)
    b = poly_random(F, db, rng)
    if a.is_zero or b.is_zero:
        return
    g = poly_gcd(a, b)
    common = [d for d in _divisors_oracle(a) if (b % d).is_zero]
    assert g == max(common, key=lambda d: d.degree)
    assert all((g % d).is_zero for d in common)


@settings(max_examples=100)
@given(
    fi=st.integers(0, len(FIELDS) - 1),
    seed=st.integers(0, 2**31),
    da=st.integers(0, 6),
    db=st.integers(0, 6),
)
def test_xgcd_identity(fi, seed, da, db):
    F = FIELDS[fi]
    rng = random.Random(seed)
    a = poly_random(F, da, rng)
    b = poly_random(F, db, rng)
    g, s, t = poly_xgcd(a, b)
    assert s * a + t * b == g
    assert g == poly_gcd(a, b)


def test_factor_frozen_examples():
    F3, F5 = field(3), field(5)
    # x^2 - 1 over F_5
    assert poly_factor(P(F5, 4, 0, 1)) == [(P(F5, 1, 1), 1), (P(F5, 4, 1), 1)]
    # x^2 + 1 over F_3 is irreducible
    assert poly_factor(P(F3, 1, 0, 1)) == [(P(F3, 1, 0, 1), 1)]
    # x^5 + 1 over F_3 = (x + 1)(x^4 - x^3 + x^2 - x + 1)
    assert poly_factor(P(F3, 1, 0, 0, 0, 0, 1)) == [
        (P(F3, 1, 1), 1),
        (P(F3, 1, 2, 1, 2, 1), 1),
    ]
    assert is_irreducible(P(F3, 1, 2, 1, 2, 1))


def test_factor_zero_rejected():
    with pytest.raises(ValueError, match="zero polynomial"):
        poly_factor(Polynomial.zero(field(3)))


def test_factor_pth_power_multiplicities():
    F = field(3)
    f = (P(F, 1, 1) ** 3) * (P(F, 2, 1) ** 2) * P(F, 1, 0, 1)
    assert poly_factor(f) == [
        (P(F, 1, 1), 3),
        (P(F, 2, 1), 2),
        (P(F, 1, 0, 1), 1),
    ]


@settings(max_examples=100, deadline=None)
@given(fi=st.integers(0, len(FIELDS) - 1), seed=st.integers(0, 2**31), d=st.integers(1, 7))
def test_factor_remultiplies(fi, seed, d):
    F = FIELDS[fi]
    rng = random.Random(seed)
    f = poly_random(F, d, rng)
    if f.is_zero:
        return
    fac = poly_factor(f)  # has an internal re-multiplication assert
    for g, m in fac:
        assert g.is_monic() and is_irreducible(g) and m >= 1
        assert poly_ord(f, g) == m
    assert fac == sorted(fac, key=lambda fm: (fm[0].degree, fm[0].coeffs))


def test_roots():
    F = field(5)
    f = P(F, 4, 0, 1) * P(F, 1, 0, 1)  # (x^2-1)(x^2+1) = x^4 - 1
    assert poly_roots(f) == [1, 2, 3, 4]


# --- residue field helpers -----------------------------------------------


@settings(max_examples=60, deadline=None)
@given(fi=st.integers(0, 3), seed=st.integers(0, 2**31), du=st.integers(1, 3))
def test_kappa_arithmetic(fi, seed, du):
    F = FIELDS[fi]
    rng = random.Random(seed)
    u = poly_random_monic(F, du, rng)
    while not is_irreducible(u):
        u = poly_random_monic(F, du, rng)
    a = poly_random(F, du - 1, rng) % u
    if a.is_zero:
        return
    ainv = kappa_inv(a, u)
    assert (a * ainv) % u == Polynomial.one(F)
    assert kappa_pow(a, F.q**du - 1, u) == Polynomial.one(F)
    # trace is additive and lands in F_q
    b = poly_random(F, du - 1, rng)
    assert kappa_trace(a + b, u) == F.add(kappa_trace(a, u), kappa_trace(b, u))


@settings(max_examples=60, deadline=None)
@given(fi=st.integers(0, 3), seed=st.integers(0, 2**31), du=st.integers(1, 2))
def test_kappa_sqrt(fi, seed, du):
    F = FIELDS[fi]
    rng = random.Random(seed)
    u = poly_random_monic(F, du, rng)
    while not is_irreducible(u):
        u = poly_random_monic(F, du, rng)
    a = poly_random(F, du - 1, rng) % u
    sq = (a * a) % u
    r = kappa_sqrt(sq, u)
    assert r is not None and (r * r) % u == sq
    # non-squares are rejected: multiply a nonzero square by a non-residue
    Q = F.q**du
    for code in range(1, Q):
        c, digits = code, []
        while c:
            c, rd = divmod(c, F.q)
            digits.append(rd)
        z = Polynomial(F, digits)
        if kappa_pow(z, (Q - 1) // 2, u) != Polynomial.one(F):
            if not a.is_zero:
                assert kappa_sqrt((sq * z) % u, u) is None
            break


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**31), du=st.integers(1, 2), m=st.integers(2, 5))
def test_hensel_sqrt(seed, du, m):
    F = field(5)
    rng = random.Random(seed)
    u = poly_random_monic(F, du, rng)
    while not is_irreducible(u):
        u = poly_random_monic(F, du, rng)
    f = poly_random_monic(F, 5, rng)
    v = kappa_sqrt(f % u, u)
    if v is None or v.is_zero:
        return
    y = hensel_sqrt(f, u, v, m)
    assert ((y * y - f) % (u**m)).is_zero
    assert (y - v) % u == Polynomial.zero(F)


# --- rational functions ---------------------------------------------------


def test_rational_normalization():
    F = field(5)
    r = RationalFunction(P(F, 0, 2), P(F, 0, 0, 4))  # 2x / 4x^2
    assert r.num == P(F, 3) and r.den == P(F, 0, 1)  # 3/x since 2/4 = 3
    assert r.den.is_monic()
    assert poly_gcd(r.num, r.den).degree <= 0


@settings(max_examples=100)
@given(
    fi=st.integers(0, len(FIELDS) - 1),
    seed=st.integers(0, 2**31),
)
def test_rational_field_ops(fi, seed):
    F = FIELDS[fi]
    rng = random.Random(seed)

    def rand_rf():
        num = poly_random(F, rng.randrange(4), rng)
        den = poly_random(F, rng.randrange(3), rng)
        while den.is_zero:
            den = poly_random(F, rng.randrange(3), rng)
        return RationalFunction(num, den)

    a, b, c = rand_rf(), rand_rf(), rand_rf()
    assert (a + b) - b == a
    assert a * b == b * a
    assert (a + b) * c == a * c + b * c
    if not a.is_zero:
        assert a * a.inv() == RationalFunction.one(F)
    # derivative is a derivation
    assert (a * b).derivative() == a.derivative() * b + a * b.derivative()


def test_rational_ord():
    F = field(3)
    x = Polynomial.x(F)
    r = RationalFunction(x**3 + x**4, x + P(F, 1))  # x^3(1+x) / (x+1)
    assert r.ord_at(x) == 3
    assert r.ord_at(x + Polynomial.one(F)) == 0
    s = RationalFunction(Polynomial.one(F), x**2)
    assert s.ord_at(x) == -2
