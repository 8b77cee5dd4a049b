"""Jacobian arithmetic for the genus-2 curves, in Mumford coordinates.

A degree-zero class is represented by a reduced pair (u, v): u monic of
degree at most 2, deg v < deg u, and u dividing f - v^2.  Group law by
Cantor composition and reduction.  Global invariants (order of the group,
characteristic polynomial of Frobenius, order over extensions) come from
point counts over the base field and its quadratic extension.
"""

from __future__ import annotations

import functools
import random
from dataclasses import dataclass

from .curves import Curve, Divisor, INERT, INFINITE, RAMIFIED, SPLIT
from .fields import Polynomial, _factor_int, field, poly_factor, poly_xgcd


class MumfordClass:
    """Reduced Mumford pair (u, v) on a fixed curve."""

    __slots__ = ("curve", "u", "v")

    def __init__(self, curve: Curve, u: Polynomial, v: Polynomial):
        v = v % u if u.degree > 0 else Polynomial.zero(curve.field)
        if not u.is_monic() or u.degree > curve.genus:
            raise ValueError("not a reduced pair")
        if not ((curve.f - v * v) % u).is_zero:
            raise ValueError("pair does not lie on the curve")
        self.curve = curve
        self.u = u
        self.v = v

    @classmethod
    def zero(cls, curve: Curve) -> "MumfordClass":
        return cls(curve, Polynomial.one(curve.field), Polynomial.zero(curve.field))

    @classmethod
    def from_point(cls, curve: Curve, x0: int, y0: int) -> "MumfordClass":
        """Class of (x0, y0) minus the infinite place."""
        F = curve.field
        u = Polynomial(F, (F.neg(x0), 1))
        v = Polynomial.const(F, y0)
        return cls(curve, u, v)

    @property
    def is_zero(self) -> bool:
        return self.u.degree == 0

    def __eq__(self, other):
        return (
            isinstance(other, MumfordClass)
            and self.curve == other.curve
            and self.u == other.u
            and self.v == other.v
        )

    def __hash__(self):
        return hash((self.curve, self.u, self.v))

    def __repr__(self):
        return f"jac[u={self.u}, v={self.v}]"

    def __neg__(self) -> "MumfordClass":
        return MumfordClass(self.curve, self.u, (-self.v) % self.u if self.u.degree else self.v)

    def __add__(self, other: "MumfordClass") -> "MumfordClass":
        if self.curve != other.curve:
            raise ValueError("classes on different curves")
        u, v = _cantor_compose(self.curve.f, (self.u, self.v), (other.u, other.v))
        u, v = _cantor_reduce(self.curve.f, u, v)
        return MumfordClass(self.curve, u, v)

    def __sub__(self, other: "MumfordClass") -> "MumfordClass":
        return self + (-other)

    def __mul__(self, n: int) -> "MumfordClass":
        if n < 0:
            return (-self) * (-n)
        out = MumfordClass.zero(self.curve)
        base = self
        while n:
            if n & 1:
                out = out + base
            base = base + base
            n >>= 1
        return out

    __rmul__ = __mul__


def _cantor_compose(f: Polynomial, c1, c2):
    u1, v1 = c1
    u2, v2 = c2
    d1, e1, e2 = poly_xgcd(u1, u2)
    d, c1_, c2_ = poly_xgcd(d1, v1 + v2)
    u3 = (u1 * u2) // (d * d)
    num = c1_ * (e1 * u1 * v2 + e2 * u2 * v1) + c2_ * (v1 * v2 + f)
    q, r = divmod(num, d)
    assert r.is_zero, "cantor composition is exact"
    v3 = q % u3
    return u3, v3


def _cantor_reduce(f: Polynomial, u: Polynomial, v: Polynomial):
    g = 2
    while u.degree > g:
        u2 = (f - v * v) // u
        u2 = u2.monic()
        v = (-v) % u2
        u = u2
    u = u.monic()
    return u, v % u if u.degree else Polynomial.zero(f.field)


# --- global invariants ---------------------------------------------------------


@dataclass(frozen=True)
class FrobeniusData:
    """Zeta data of a genus-2 curve: counts, trace terms and group order."""

    q: int
    n1: int
    n2: int
    a1: int
    a2: int
    order: int

    @property
    def charpoly(self) -> tuple[int, int, int, int, int]:
        """T^4 - a1 T^3 + a2 T^2 - q a1 T + q^2, low degree first."""
        return (self.q**2, -self.q * self.a1, self.a2, -self.a1, 1)

    def companion(self) -> list[list[int]]:
        c = self.charpoly
        n = 4
        A = [[0] * n for _ in range(n)]
        for i in range(1, n):
            A[i][i - 1] = 1
        for i in range(n):
            A[i][n - 1] = -c[i]
        return A


@functools.lru_cache(maxsize=None)
def frobenius_data(curve: Curve) -> FrobeniusData:
    q = curve.field.q
    p, k = curve.field.p, curve.field.k
    if k > 1 and all(c < p for c in curve.f.coeffs):
        # base change of a prime-field model: power the eigenvalues exactly
        # instead of counting points over huge extensions
        sub = frobenius_data(Curve(field(p), curve.f.coeffs))
        Ak = _int_mat_pow(sub.companion(), k)
        t1 = sum(Ak[i][i] for i in range(4))
        A2k = _int_mat_mul(Ak, Ak)
        t2 = sum(A2k[i][i] for i in range(4))
        assert (t1 * t1 - t2) % 2 == 0
        order = _int_det([[(i == j) - Ak[i][j] for j in range(4)] for i in range(4)])
        assert order > 0
        return FrobeniusData(
            q=q,
            n1=q + 1 - t1,
            n2=q * q + 1 - t2,
            a1=t1,
            a2=(t1 * t1 - t2) // 2,
            order=order,
        )
    if q * q > 10**7:
        raise ValueError("field too large")
    n1 = curve.point_count(1)
    n2 = curve.point_count(2)
    a1 = q + 1 - n1
    assert (n2 - q * q - 1 + a1 * a1) % 2 == 0
    a2 = (n2 - q * q - 1 + a1 * a1) // 2
    assert a1 * a1 <= 16 * q, "trace violates the Weil bound"
    assert abs(a2) <= 6 * q, "second trace term violates the Weil bound"
    order = 1 + q * q - a1 * (1 + q) + a2
    assert order > 0
    return FrobeniusData(q=q, n1=n1, n2=n2, a1=a1, a2=a2, order=order)


def jac_order(curve: Curve) -> int:
    return frobenius_data(curve).order


def _int_mat_mul(A, B):
    n = len(A)
    return [
        [sum(A[i][k] * B[k][j] for k in range(n)) for j in range(n)] for i in range(n)
    ]


def _int_mat_pow(A, e: int):
    n = len(A)
    R = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    while e:
        if e & 1:
            R = _int_mat_mul(R, A)
        A = _int_mat_mul(A, A)
        e >>= 1
    return R


def _int_det(M) -> int:
    n = len(M)
    if n == 1:
        return M[0][0]
    out = 0
    sign = 1
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in M[1:]]
        if M[0][j]:
            out += sign * M[0][j] * _int_det(minor)
        sign = -sign
    return out


def jac_order_ext(curve: Curve, m: int) -> int:
    """Order of the group over the degree-m extension, from the zeta data."""
    data = frobenius_data(curve)
    A = _int_mat_pow(data.companion(), m)
    for i in range(4):
        A[i][i] -= 1
    det = _int_det(A)
    assert det > 0
    return det


def is_ordinary(curve: Curve) -> bool:
    """Ordinary means the unit-root part of Frobenius has full rank 2,
    equivalently p does not divide the middle trace term."""
    data = frobenius_data(curve)
    return data.a2 % curve.field.p != 0


def p_torsion_field_degree(curve: Curve) -> int:
    """Least m with p-torsion rational over the degree-m extension.

    Works in the 2x2 companion of the unit-root factor T^2 - a1 T + a2 of
    the characteristic polynomial mod p; the connected part contributes
    nothing.  Requires an ordinary curve.
    """
    p = curve.field.p
    data = frobenius_data(curve)
    if data.a2 % p == 0:
        raise ValueError("expected ordinary")
    a1, a2 = data.a1 % p, data.a2 % p
    M = [[0, (-a2) % p], [1, a1 % p]]
    A = [row[:] for row in M]
    for m in range(1, p * p):
        det = (A[0][0] - 1) * (A[1][1] - 1) - A[0][1] * A[1][0]
        if det % p == 0:
            return m
        A = [
            [
                (A[0][0] * M[0][0] + A[0][1] * M[1][0]) % p,
                (A[0][0] * M[0][1] + A[0][1] * M[1][1]) % p,
            ],
            [
                (A[1][0] * M[0][0] + A[1][1] * M[1][0]) % p,
                (A[1][0] * M[0][1] + A[1][1] * M[1][1]) % p,
            ],
        ]
    raise AssertionError("unit-root eigenvalues must have order dividing p^2 - 1")


# --- sampling and torsion ------------------------------------------------------


@functools.lru_cache(maxsize=None)
def affine_points(curve: Curve) -> tuple[tuple[int, int], ...]:
    """All affine points (x0, y0), canonically ordered."""
    F = curve.field
    pts = []
    for x0 in range(F.q):
        y2 = curve.f.eval(x0)
        r = F.sqrt(y2)
        if r is None:
            continue
        if r == 0:
            pts.append((x0, 0))
        else:
            pts.append((x0, r))
            pts.append((x0, F.neg(r)))
    return tuple(sorted(pts))


def random_class(curve: Curve, rng: random.Random) -> MumfordClass:
    """A random group element, by rejection sampling over reduced pairs.

    Degrees are drawn with weights q^2 : q : 1, so every class is reachable,
    including the ones with no rational-point support.
    """
    base = curve.field
    q = base.q
    f = curve.f
    for _ in range(4096):
        r = rng.randrange(q * q + q + 1)
        if r == 0:
            return MumfordClass.zero(curve)
        if r <= q:
            u = Polynomial(base, (rng.randrange(q), 1))
            v = Polynomial.const(base, rng.randrange(q))
        else:
            u = Polynomial(base, (rng.randrange(q), rng.randrange(q), 1))
            v = Polynomial(base, (rng.randrange(q), rng.randrange(q)))
        if ((f - v * v) % u).is_zero:
            return MumfordClass(curve, u, v)
    raise RuntimeError("class sampling failed")


def class_order(cls: MumfordClass) -> int:
    """Order of the class in the group."""
    n = jac_order(cls.curve)
    o = n
    for prime in _factor_int(n):
        while o % prime == 0 and ((o // prime) * cls).is_zero:
            o //= prime
    return o


def find_p_torsion(curve: Curve, seed: int = 0) -> MumfordClass:
    """A class of exact order p, found by the cofactor method.

    Requires an ordinary curve whose group order is divisible by p.
    """
    p = curve.field.p
    data = frobenius_data(curve)
    if data.a2 % p == 0:
        raise ValueError("expected ordinary")
    n = data.order
    if n % p:
        raise ValueError("no rational p-torsion")
    h = n
    while h % p == 0:
        h //= p
    rng = random.Random(seed)
    for _ in range(256):
        s = h * random_class(curve, rng)
        if s.is_zero:
            continue
        while True:
            t = p * s
            if t.is_zero:
                return s
            s = t
    raise RuntimeError("cofactor sampling failed to find p-torsion")


def enumerate_classes(curve: Curve) -> list[MumfordClass]:
    """Every class, by exhaustion over reduced pairs.  Intended as an
    independent oracle for small fields; cost grows like q^4."""
    F = curve.field
    q = F.q
    if q**4 > 10**7:
        raise ValueError("field too large")
    out = [MumfordClass.zero(curve)]
    for deg in (1, 2):
        for ucode in range(q**deg):
            digits, c = [], ucode
            for _ in range(deg):
                c, r = divmod(c, q)
                digits.append(r)
            u = Polynomial(F, digits + [1])
            for vcode in range(q**deg):
                digits, c = [], vcode
                for _ in range(deg):
                    c, r = divmod(c, q)
                    digits.append(r)
                v = Polynomial(F, digits)
                if ((curve.f - v * v) % u).is_zero:
                    out.append(MumfordClass(curve, u, v))
    return out


# --- transfers between divisors and classes -------------------------------------


def mumford_to_divisor(cls: MumfordClass) -> Divisor:
    """The divisor (sum of affine points) - deg(u) * infinity of the pair."""
    curve = cls.curve
    items = []
    total = 0
    for g, e in poly_factor(cls.u):
        vg = cls.v % g
        matched = None
        for pl in curve.places_above(g):
            if pl.kind == RAMIFIED and vg.is_zero:
                matched = pl
                break
            if pl.kind == SPLIT and pl.v == vg:
                matched = pl
                break
        assert matched is not None, "mumford support must be split or ramified"
        items.append((matched, e))
        total += e * g.degree
    items.append((curve.infinite_place(), -total))
    return Divisor(items)


def divisor_class_to_mumford(curve: Curve, div: Divisor) -> MumfordClass:
    """Reduced representative of the class of a degree-zero divisor.

    Components at inert places and at infinity are multiples of pullbacks
    of points of the projective line, hence principal up to infinity, and
    contribute nothing.
    """
    if div.degree != 0:
        raise ValueError("expected a degree-zero divisor")
    out = MumfordClass.zero(curve)
    for pl, m in div.items:
        if pl.kind in (INFINITE, INERT):
            continue
        if pl.kind == RAMIFIED:
            # div(u) = 2 P - 2 deg(u) oo, so the even part is principal and
            # P is its own negative
            if m % 2:
                out = out + MumfordClass(curve, pl.u, Polynomial.zero(curve.field))
        else:
            # split places can exceed genus degree; reduce the pair first
            u, v = _cantor_reduce(curve.f, pl.u, pl.v)
            out = out + m * MumfordClass(curve, u, v)
    return out
