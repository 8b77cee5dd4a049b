"""Truncated Laurent series over small residue rings.

Local computations at a place of a hyperelliptic curve happen in the
completed local ring, which is a power series ring over the residue field.
The residue field is either the base field itself, a quotient F_q[x]/(u), or
a quadratic extension of such a quotient.  Ring adapter classes give these
three a uniform element interface so one series engine serves all of them.

Precision is tracked rigorously: a series knows the exponent range on which
its coefficients are exact, operations propagate that range pessimistically,
and queries outside it raise PrecisionError so callers can retry with more
terms instead of silently using garbage.
"""

from __future__ import annotations

from typing import Callable, Sequence

from .fields import Field, Polynomial, kappa_inv, kappa_pow, kappa_trace


class PrecisionError(Exception):
    """A series does not carry enough terms to answer the query."""


class BaseRing:
    """Coefficients in the finite field itself, stored as element codes."""

    __slots__ = ("field",)

    def __init__(self, field: Field):
        self.field = field

    def __eq__(self, other):
        return type(other) is BaseRing and other.field == self.field

    def __hash__(self):
        return hash(("base", self.field))

    def __repr__(self):
        return f"BaseRing(F_{self.field.q})"

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def embed(self, code: int):
        return code

    def embed_int(self, n: int):
        return n % self.field.p

    def add(self, a, b):
        return self.field.add(a, b)

    def sub(self, a, b):
        return self.field.sub(a, b)

    def neg(self, a):
        return self.field.neg(a)

    def mul(self, a, b):
        return self.field.mul(a, b)

    def inv(self, a):
        return self.field.inv(a)

    def trace(self, a) -> int:
        return a

    @property
    def width(self) -> int:
        return 1

    def is_zero(self, a) -> bool:
        return a == 0

    def frob(self, a):
        return self.field.frob(a)

    def to_codes(self, a) -> tuple:
        return (a,)

    def from_codes(self, codes):
        return codes[0]


class PolyModRing:
    """Coefficients in F_q[x]/(u), stored as reduced polynomials."""

    __slots__ = ("field", "u")

    def __init__(self, field: Field, u: Polynomial):
        self.field = field
        self.u = u

    def __eq__(self, other):
        return type(other) is PolyModRing and other.u == self.u

    def __hash__(self):
        return hash(("polymod", self.u))

    def __repr__(self):
        return f"PolyModRing({self.u})"

    @property
    def zero(self):
        return Polynomial.zero(self.field)

    @property
    def one(self):
        return Polynomial.one(self.field)

    def embed(self, code: int):
        return Polynomial.const(self.field, code)

    def embed_int(self, n: int):
        return Polynomial.const(self.field, n % self.field.p)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return (a * b) % self.u

    def inv(self, a):
        return kappa_inv(a, self.u)

    def trace(self, a) -> int:
        return kappa_trace(a, self.u)

    @property
    def width(self) -> int:
        return self.u.degree

    def is_zero(self, a) -> bool:
        return a.is_zero

    def frob(self, a):
        return kappa_pow(a, self.field.p, self.u)

    def to_codes(self, a) -> tuple:
        return tuple(a[i] for i in range(self.u.degree))

    def from_codes(self, codes):
        return Polynomial(self.field, codes)


class QuadModRing:
    """Coefficients in the quadratic extension of F_q[x]/(u) by a square
    root of fbar, stored as pairs (a, b) meaning a + b*root."""

    __slots__ = ("field", "u", "fbar")

    def __init__(self, field: Field, u: Polynomial, fbar: Polynomial):
        self.field = field
        self.u = u
        self.fbar = fbar % u

    def __eq__(self, other):
        return (
            type(other) is QuadModRing
            and other.u == self.u
            and other.fbar == self.fbar
        )

    def __hash__(self):
        return hash(("quadmod", self.u, self.fbar))

    def __repr__(self):
        return f"QuadModRing({self.u}, {self.fbar})"

    @property
    def zero(self):
        z = Polynomial.zero(self.field)
        return (z, z)

    @property
    def one(self):
        return (Polynomial.one(self.field), Polynomial.zero(self.field))

    @property
    def root(self):
        return (Polynomial.zero(self.field), Polynomial.one(self.field))

    def embed(self, code: int):
        return (Polynomial.const(self.field, code), Polynomial.zero(self.field))

    def embed_int(self, n: int):
        return self.embed(n % self.field.p)

    def embed_kappa(self, a: Polynomial):
        return (a % self.u, Polynomial.zero(self.field))

    def add(self, a, b):
        return (a[0] + b[0], a[1] + b[1])

    def sub(self, a, b):
        return (a[0] - b[0], a[1] - b[1])

    def neg(self, a):
        return (-a[0], -a[1])

    def mul(self, a, b):
        u = self.u
        return (
            (a[0] * b[0] + a[1] * b[1] * self.fbar) % u,
            (a[0] * b[1] + a[1] * b[0]) % u,
        )

    def inv(self, a):
        u = self.u
        n = (a[0] * a[0] - a[1] * a[1] * self.fbar) % u
        ni = kappa_inv(n, u)
        return ((a[0] * ni) % u, (-a[1] * ni) % u)

    def trace(self, a) -> int:
        # Tr down to F_q factors through the degree-2 step, which sends
        # a + b*root to 2a.
        return kappa_trace(a[0] + a[0], self.u)

    @property
    def width(self) -> int:
        return 2 * self.u.degree

    def is_zero(self, a) -> bool:
        return a[0].is_zero and a[1].is_zero

    def frob(self, a):
        # (a + b*root)^p = a^p + b^p * root^p and root^2 = fbar, so the
        # root part picks up fbar^((p-1)/2).
        p = self.field.p
        fp = kappa_pow(self.fbar, (p - 1) // 2, self.u)
        return (
            kappa_pow(a[0], p, self.u),
            (kappa_pow(a[1], p, self.u) * fp) % self.u,
        )

    def to_codes(self, a) -> tuple:
        d = self.u.degree
        return tuple(a[0][i] for i in range(d)) + tuple(a[1][i] for i in range(d))

    def from_codes(self, codes):
        d = self.u.degree
        return (
            Polynomial(self.field, codes[:d]),
            Polynomial(self.field, codes[d:]),
        )


class TruncSeries:
    """Sum of c_i t^i over offset <= i < prec, coefficients in a ring adapter.

    Storage is dense on [offset, prec).  Invariants: coefficients below
    offset are exactly zero, coeffs[0] is nonzero unless the series is zero
    to its precision (then coeffs == [] and offset == prec).
    """

    __slots__ = ("ring", "offset", "coeffs", "prec")

    def __init__(self, ring, offset: int, coeffs: list, prec: int):
        self.ring = ring
        self.offset = offset
        self.coeffs = coeffs
        self.prec = prec

    @staticmethod
    def make(ring, offset: int, coeffs: Sequence, prec: int) -> "TruncSeries":
        zero = ring.zero
        cs = list(coeffs)
        i = 0
        while i < len(cs) and cs[i] == zero:
            i += 1
        offset += i
        cs = cs[i:]
        if offset >= prec or not cs:
            return TruncSeries(ring, prec, [], prec)
        n = prec - offset
        if len(cs) < n:
            cs = cs + [zero] * (n - len(cs))
        else:
            cs = cs[:n]
        return TruncSeries(ring, offset, cs, prec)

    @staticmethod
    def zero_to(ring, prec: int) -> "TruncSeries":
        return TruncSeries(ring, prec, [], prec)

    @staticmethod
    def const(ring, elem, prec: int) -> "TruncSeries":
        return TruncSeries.make(ring, 0, [elem], prec)

    @staticmethod
    def t_power(ring, k: int, prec: int) -> "TruncSeries":
        return TruncSeries.make(ring, k, [ring.one], prec)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return (
            isinstance(other, TruncSeries)
            and self.ring == other.ring
            and self.offset == other.offset
            and self.prec == other.prec
            and self.coeffs == other.coeffs
        )

    def __repr__(self):
        terms = ", ".join(
            f"t^{self.offset + i}:{c}" for i, c in enumerate(self.coeffs) if c != self.ring.zero
        )
        return f"series[{terms} + O(t^{self.prec})]"

    def coeff_at(self, e: int):
        """Exact coefficient of t^e; PrecisionError past the known range."""
        if e >= self.prec:
            raise PrecisionError(f"coefficient of t^{e} beyond precision {self.prec}")
        if e < self.offset:
            return self.ring.zero
        return self.coeffs[e - self.offset]

    def window(self, lo: int, hi: int) -> list:
        """Coefficients [lo, hi) as a list; PrecisionError if hi > prec."""
        if hi > self.prec:
            raise PrecisionError(f"window up to t^{hi} beyond precision {self.prec}")
        return [self.coeff_at(e) for e in range(lo, hi)]

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        ring = self.ring
        prec = min(self.prec, other.prec)
        off = min(self.offset, other.offset, prec)
        n = prec - off
        out = [ring.zero] * n
        for src in (self, other):
            for i, c in enumerate(src.coeffs):
                j = src.offset + i - off
                if 0 <= j < n:
                    out[j] = ring.add(out[j], c)
        return TruncSeries.make(ring, off, out, prec)

    def __neg__(self) -> "TruncSeries":
        ring = self.ring
        return TruncSeries(ring, self.offset, [ring.neg(c) for c in self.coeffs], self.prec)

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        return self + (-other)

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        ring = self.ring
        off = self.offset + other.offset
        prec = min(self.prec + other.offset, other.prec + self.offset)
        n = prec - off
        if n <= 0 or not self.coeffs or not other.coeffs:
            return TruncSeries.zero_to(ring, prec)
        out = [ring.zero] * n
        for i, a in enumerate(self.coeffs):
            if i >= n:
                break
            if a == ring.zero:
                continue
            jmax = min(len(other.coeffs), n - i)
            for j in range(jmax):
                b = other.coeffs[j]
                if b != ring.zero:
                    out[i + j] = ring.add(out[i + j], ring.mul(a, b))
        return TruncSeries.make(ring, off, out, prec)

    def scale(self, elem) -> "TruncSeries":
        ring = self.ring
        if elem == ring.zero:
            return TruncSeries.zero_to(ring, self.prec)
        return TruncSeries(
            ring, self.offset, [ring.mul(elem, c) for c in self.coeffs], self.prec
        )

    def invert(self) -> "TruncSeries":
        ring = self.ring
        if not self.coeffs:
            raise PrecisionError("series vanishes to working precision, cannot invert")
        v = self.offset
        n = self.prec - v
        a = self.coeffs
        a0i = ring.inv(a[0])
        out = [ring.zero] * n
        out[0] = a0i
        for j in range(1, n):
            acc = ring.zero
            for i in range(1, min(j, len(a) - 1) + 1):
                acc = ring.add(acc, ring.mul(a[i], out[j - i]))
            out[j] = ring.neg(ring.mul(a0i, acc))
        return TruncSeries.make(ring, -v, out, self.prec - 2 * v)

    def __truediv__(self, other: "TruncSeries") -> "TruncSeries":
        return self * other.invert()

    def shift(self, k: int) -> "TruncSeries":
        return TruncSeries(self.ring, self.offset + k, list(self.coeffs), self.prec + k)

    def truncate(self, prec: int) -> "TruncSeries":
        if prec >= self.prec:
            return self
        return TruncSeries.make(self.ring, self.offset, self.coeffs, prec)

    def derivative(self) -> "TruncSeries":
        """Formal d/dt."""
        ring = self.ring
        out = []
        for i, c in enumerate(self.coeffs):
            e = self.offset + i
            out.append(ring.mul(ring.embed_int(e), c))
        return TruncSeries.make(ring, self.offset - 1, out, self.prec - 1)


def poly_series(ring, f: Polynomial, xs: TruncSeries) -> TruncSeries:
    """Series of f evaluated along xs, by Horner."""
    if f.is_zero:
        return TruncSeries.zero_to(ring, xs.prec)
    cs = f.coeffs
    acc = TruncSeries.const(ring, ring.embed(cs[-1]), xs.prec)
    for c in reversed(cs[:-1]):
        acc = acc * xs + TruncSeries.const(ring, ring.embed(c), acc.prec)
    return acc


def rf_series(ring, num: Polynomial, den: Polynomial, xs: TruncSeries) -> TruncSeries:
    return poly_series(ring, num, xs) / poly_series(ring, den, xs)


def _newton(x0: TruncSeries, step: Callable[[TruncSeries], TruncSeries]) -> TruncSeries:
    x = x0
    for _ in range(64):
        x2 = step(x).truncate(x0.prec)
        if x2 == x:
            return x
        x = x2
    raise RuntimeError("newton iteration did not stabilize")


def _sqrt_series(ring, fs: TruncSeries, y0) -> TruncSeries:
    """Square root of fs with constant term y0 (a unit with y0^2 = fs(0))."""
    half = TruncSeries.const(ring, ring.inv(ring.embed_int(2)), fs.prec)

    def step(y: TruncSeries) -> TruncSeries:
        return (y + fs * y.invert()) * half

    return _newton(TruncSeries.const(ring, y0, fs.prec), step)


def series_split(f: Polynomial, u: Polynomial, v: Polynomial, prec: int):
    """Local frames (ring, xs, ys) at a place over u with y congruent to v.

    The local parameter is u(x); xs solves u(xs) = t, ys is the square root
    of f(xs) with constant term the residue of v.
    """
    field = f.field
    if u.degree == 1:
        ring = BaseRing(field)
        a = field.neg(u[0])
        xs = TruncSeries.make(ring, 0, [a, 1], prec)
        y0 = v.eval(a)
    else:
        ring = PolyModRing(field, u)
        xbar = Polynomial.x(field) % u
        t = TruncSeries.t_power(ring, 1, prec)
        du = u.derivative()

        def step(x: TruncSeries) -> TruncSeries:
            return x - (poly_series(ring, u, x) - t) * poly_series(ring, du, x).invert()

        xs = _newton(TruncSeries.const(ring, xbar, prec), step)
        y0 = v % u
    ys = _sqrt_series(ring, poly_series(ring, f, xs), y0)
    return ring, xs, ys


def series_inert(f: Polynomial, u: Polynomial, prec: int):
    """Local frames at the unique place over u when f is a non-square mod u."""
    field = f.field
    ring = QuadModRing(field, u, f % u)
    xbar = ring.embed_kappa(Polynomial.x(field))
    t = TruncSeries.t_power(ring, 1, prec)
    du = u.derivative()

    def step(x: TruncSeries) -> TruncSeries:
        return x - (poly_series(ring, u, x) - t) * poly_series(ring, du, x).invert()

    xs = _newton(TruncSeries.const(ring, xbar, prec), step)
    ys = _sqrt_series(ring, poly_series(ring, f, xs), ring.root)
    return ring, xs, ys


def series_ramified(f: Polynomial, u: Polynomial, prec: int):
    """Local frames at the ramified place over u (u divides f).

    The local parameter is y itself; xs solves f(xs) = t^2.
    """
    field = f.field
    if u.degree == 1:
        ring = BaseRing(field)
        xbar = field.neg(u[0])
    else:
        ring = PolyModRing(field, u)
        xbar = Polynomial.x(field) % u
    t2 = TruncSeries.t_power(ring, 2, prec)
    df = f.derivative()

    def step(x: TruncSeries) -> TruncSeries:
        return x - (poly_series(ring, f, x) - t2) * poly_series(ring, df, x).invert()

    xs = _newton(TruncSeries.const(ring, xbar, prec), step)
    ys = TruncSeries.t_power(ring, 1, prec)
    return ring, xs, ys


def series_infinite(f: Polynomial, prec: int):
    """Local frames at the place over x = infinity for y^2 = f, deg f = 5.

    With local parameter t = x^2/y one has x = s t^-2 and y = s^2 t^-5 where
    s is a unit series solving s^4 = sum_i f_i s^i t^(2(5-i)).
    """
    field = f.field
    ring = BaseRing(field)
    lc = f[5]

    def g_val(s: TruncSeries) -> TruncSeries:
        acc = TruncSeries.zero_to(ring, prec)
        for i in range(5, -1, -1):
            c = f[i]
            if c:
                term = TruncSeries.t_power(ring, 2 * (5 - i), prec).scale(c)
                for _ in range(i):
                    term = term * s
                acc = acc + term
        s4 = s * s
        s4 = s4 * s4
        return s4 - acc

    def g_deriv(s: TruncSeries) -> TruncSeries:
        acc = TruncSeries.zero_to(ring, prec)
        for i in range(5, 0, -1):
            c = ring.mul(ring.embed_int(i), f[i])
            if c:
                term = TruncSeries.t_power(ring, 2 * (5 - i), prec).scale(c)
                for _ in range(i - 1):
                    term = term * s
                acc = acc + term
        s3 = s * s * s
        return s3.scale(ring.embed_int(4)) - acc

    def step(s: TruncSeries) -> TruncSeries:
        return s - g_val(s) * g_deriv(s).invert()

    s0 = field.inv(lc)
    s = _newton(TruncSeries.const(ring, s0, prec), step)
    xs = (s).shift(-2)
    ys = (s * s).shift(-5)
    return ring, xs, ys
