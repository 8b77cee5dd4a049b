"""Exact arithmetic over odd finite fields F_{p^k} and their polynomial rings.

Elements are integer codes in range(p**k): the element sum(c_i * t^i), with t
the class of x modulo the field modulus, has code sum(c_i * p**i).  Prime
fields compute directly mod p; extensions build exp/log tables over a fixed
generator (every field used here is tiny) and fall back to direct polynomial
arithmetic above a size limit.

Also provides univariate polynomials over such fields (gcd, xgcd, factoring,
irreducibility testing, modular square roots, Hensel lifting of square roots)
and reduced rational functions.
"""

from __future__ import annotations

import random
from typing import Iterator, Optional

_FIELD_CACHE: dict[tuple, "Field"] = {}

# largest q for which multiplicative exp/log tables are precomputed
_TABLE_LIMIT = 1 << 13


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _factor_int(n: int) -> list[int]:
    """Distinct prime divisors of n by trial division."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


class Field:
    """Finite field F_{p^k}; elements are integer codes in range(q).

    Subclasses implement the code-level arithmetic; zero is code 0 and one is
    code 1 in every field.
    """

    __slots__ = ("p", "k", "q", "modulus")

    p: int
    k: int
    q: int
    modulus: Optional[tuple[int, ...]]  # monic, low-to-high over F_p; None when k = 1

    def __repr__(self) -> str:
        if self.k == 1:
            return f"F({self.p})"
        return f"F({self.p}^{self.k})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Field)
            and self.p == other.p
            and self.k == other.k
            and self.modulus == other.modulus
        )

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.modulus))

    # --- interface implemented by subclasses -------------------------------
    def add(self, a: int, b: int) -> int:
        raise NotImplementedError

    def sub(self, a: int, b: int) -> int:
        raise NotImplementedError

    def neg(self, a: int) -> int:
        raise NotImplementedError

    def mul(self, a: int, b: int) -> int:
        raise NotImplementedError

    def inv(self, a: int) -> int:
        raise NotImplementedError

    def decode(self, a: int) -> tuple[int, ...]:
        """Coefficient vector over F_p, length k."""
        raise NotImplementedError

    # --- generic ------------------------------------------------------------
    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a = self.inv(a)
            e = -e
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def frob(self, a: int) -> int:
        """Absolute Frobenius a -> a^p."""
        if self.k == 1:
            return a
        return self.pow(a, self.p)

    def frob_inv(self, a: int) -> int:
        """Inverse of the absolute Frobenius: a -> a^(p^(k-1))."""
        if self.k == 1:
            return a
        return self.pow(a, self.p ** (self.k - 1))

    def encode(self, digits) -> int:
        code = 0
        for c in reversed(tuple(digits)):
            code = code * self.p + (c % self.p)
        return code

    def elem(self, code: int) -> "FieldElement":
        return FieldElement(self, code % self.q)

    def elements(self) -> range:
        return range(self.q)

    def random(self, rng: random.Random) -> int:
        return rng.randrange(self.q)

    def legendre(self, a: int) -> int:
        """1 for nonzero squares, -1 for non-squares, 0 for zero."""
        if a == 0:
            return 0
        return 1 if self.pow(a, (self.q - 1) // 2) == 1 else -1

    def sqrt(self, a: int) -> Optional[int]:
        """A canonical square root of a, or None for non-squares.

        Of the two roots r and -r, the smaller code is returned, so the
        choice is deterministic.
        """
        if a == 0:
            return 0
        q = self.q
        if self.pow(a, (q - 1) // 2) != 1:
            return None
        if q % 4 == 3:
            r = self.pow(a, (q + 1) // 4)
        else:
            # Tonelli-Shanks with a deterministic non-residue scan
            s, m = 0, q - 1
            while m % 2 == 0:
                s += 1
                m //= 2
            z = 2
            while self.legendre(z) != -1:
                z += 1
            c = self.pow(z, m)
            r = self.pow(a, (m + 1) // 2)
            t = self.pow(a, m)
            while t != 1:
                t2, i = t, 0
                while t2 != 1:
                    t2 = self.mul(t2, t2)
                    i += 1
                b = self.pow(c, 1 << (s - i - 1))
                r = self.mul(r, b)
                c = self.mul(b, b)
                t = self.mul(t, c)
                s = i
        return min(r, self.neg(r))


class PrimeField(Field):
    __slots__ = ()

    def __init__(self, p: int):
        self.p = p
        self.k = 1
        self.q = p
        self.modulus = None

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def pow(self, a, e):
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(a, e, self.p)

    def decode(self, a):
        return (a,)


class ExtensionField(Field):
    __slots__ = ("_digits", "_exp", "_log")

    def __init__(self, p: int, k: int, modulus: tuple[int, ...]):
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = modulus
        q = self.q
        digits = []
        for code in range(q):
            c, row = code, []
            for _ in range(k):
                c, r = divmod(c, p)
                row.append(r)
            digits.append(tuple(row))
        self._digits = digits
        self._exp = None
        self._log = None
        if q <= _TABLE_LIMIT:
            self._build_tables()

    def _build_tables(self) -> None:
        q = self.q
        primes = _factor_int(q - 1)
        g = 2
        while True:
            if all(self._raw_pow(g, (q - 1) // r) != 1 for r in primes):
                break
            g += 1
        exp = [1] * (q - 1)
        for i in range(1, q - 1):
            exp[i] = self._raw_mul(exp[i - 1], g)
        log = [0] * q
        for i, v in enumerate(exp):
            log[v] = i
        self._exp = exp
        self._log = log

    def _raw_mul(self, a: int, b: int) -> int:
        # schoolbook product of digit vectors, reduced by the monic modulus
        p, k = self.p, self.k
        da, db = self._digits[a], self._digits[b]
        prod = [0] * (2 * k - 1)
        for i, ca in enumerate(da):
            if ca:
                for j, cb in enumerate(db):
                    prod[i + j] += ca * cb
        mod = self.modulus
        for i in range(2 * k - 2, k - 1, -1):
            c = prod[i] % p
            if c:
                for j in range(k):
                    prod[i - k + j] -= c * mod[j]
        code = 0
        for i in range(k - 1, -1, -1):
            code = code * p + prod[i] % p
        return code

    def _raw_pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._raw_mul(r, a)
            a = self._raw_mul(a, a)
            e >>= 1
        return r

    def add(self, a, b):
        p = self.p
        da, db = self._digits[a], self._digits[b]
        code = 0
        for i in range(self.k - 1, -1, -1):
            code = code * p + (da[i] + db[i]) % p
        return code

    def sub(self, a, b):
        p = self.p
        da, db = self._digits[a], self._digits[b]
        code = 0
        for i in range(self.k - 1, -1, -1):
            code = code * p + (da[i] - db[i]) % p
        return code

    def neg(self, a):
        p = self.p
        da = self._digits[a]
        code = 0
        for i in range(self.k - 1, -1, -1):
            code = code * p + (-da[i]) % p
        return code

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        if self._exp is not None:
            return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]
        return self._raw_mul(a, b)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self._exp is not None:
            return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]
        return self._raw_pow(a, self.q - 2)

    def pow(self, a, e):
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("inverse of zero")
            return 0 if e else 1
        if self._exp is not None:
            return self._exp[(self._log[a] * e) % (self.q - 1)]
        if e < 0:
            return self._raw_pow(self.inv(a), -e)
        return self._raw_pow(a, e % (self.q - 1))

    def decode(self, a):
        return self._digits[a]


def _find_modulus(p: int, k: int) -> tuple[int, ...]:
    """First monic irreducible x^k + c_{k-1}x^{k-1} + ... + c_0 over F_p.

    Candidates are scanned in increasing order of the code sum(c_i * p^i), so
    the choice is deterministic and reproducible.
    """
    base = PrimeField(p)
    for n in range(p**k):
        c, coeffs = n, []
        for _ in range(k):
            c, r = divmod(c, p)
            coeffs.append(r)
        coeffs.append(1)
        if is_irreducible(Polynomial(base, tuple(coeffs))):
            return tuple(coeffs)
    raise AssertionError("no irreducible polynomial found")  # unreachable


def field(p: int, k: int = 1) -> Field:
    """The field with p^k elements (shared instance per (p, k))."""
    if not isinstance(p, int) or not _is_prime(p):
        raise ValueError(f"not prime: {p}")
    if p == 2:
        raise ValueError("characteristic two unsupported")
    if k < 1:
        raise ValueError(f"extension degree must be >= 1, got {k}")
    key = (p, k)
    f = _FIELD_CACHE.get(key)
    if f is None:
        f = PrimeField(p) if k == 1 else ExtensionField(p, k, _find_modulus(p, k))
        _FIELD_CACHE[key] = f
    return f


def field_with_modulus(p: int, k: int, modulus) -> Field:
    """Field instance for an explicitly given modulus (deserialization)."""
    if k == 1:
        return field(p)
    modulus = tuple(int(c) % p for c in modulus)
    canonical = field(p, k)
    if modulus == canonical.modulus:
        return canonical
    key = (p, k, modulus)
    f = _FIELD_CACHE.get(key)
    if f is None:
        base = PrimeField(p)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree k")
        if not is_irreducible(Polynomial(base, modulus)):
            raise ValueError("modulus is reducible")
        f = ExtensionField(p, k, modulus)
        _FIELD_CACHE[key] = f
    return f


class FieldElement:
    """Thin operator wrapper around a field and an integer code."""

    __slots__ = ("field", "code")

    def __init__(self, field: Field, code: int):
        self.field = field
        self.code = code % field.q

    @property
    def rep(self) -> tuple[int, ...]:
        return self.field.decode(self.code)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("mixed fields")
            return other.code
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def __add__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return c
        return FieldElement(self.field, self.field.add(self.code, c))

    __radd__ = __add__

    def __sub__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return c
        return FieldElement(self.field, self.field.sub(self.code, c))

    def __rsub__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return c
        return FieldElement(self.field, self.field.sub(c, self.code))

    def __mul__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return c
        return FieldElement(self.field, self.field.mul(self.code, c))

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return c
        return FieldElement(self.field, self.field.div(self.code, c))

    def __rtruediv__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return c
        return FieldElement(self.field, self.field.div(c, self.code))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.code))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.code, e))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.code == other.code
        if isinstance(other, int):
            return self.code == other % self.field.p if other else self.code == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.code))

    def __bool__(self):
        return self.code != 0

    def __repr__(self):
        return f"{self.rep}@{self.field!r}"


class Polynomial:
    """Univariate polynomial with coefficient codes stored low-to-high."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs=()):
        n = len(coeffs)
        while n and not coeffs[n - 1]:
            n -= 1
        self.field = field
        self.coeffs = tuple(coeffs[:n])

    # --- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, field: Field) -> "Polynomial":
        return cls(field, ())

    @classmethod
    def one(cls, field: Field) -> "Polynomial":
        return cls(field, (1,))

    @classmethod
    def const(cls, field: Field, c: int) -> "Polynomial":
        return cls(field, (c % field.q,))

    @classmethod
    def x(cls, field: Field) -> "Polynomial":
        return cls(field, (0, 1))

    # --- basic structure ----------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial at the sentinel value -1."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def monic(self) -> "Polynomial":
        if self.is_zero or self.coeffs[-1] == 1:
            return self
        inv = self.field.inv(self.coeffs[-1])
        mul = self.field.mul
        return Polynomial(self.field, tuple(mul(c, inv) for c in self.coeffs))

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        if self.is_zero:
            return "poly[0]"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}*x^{i}" if i else f"{c}")
        return "poly[" + " + ".join(terms) + "]"

    def _check(self, other: "Polynomial") -> None:
        if self.field != other.field:
            raise ValueError("mixed fields")

    # --- arithmetic ---------------------------------------------------------
    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        add = self.field.add
        out = list(a)
        for i, c in enumerate(b):
            out[i] = add(out[i], c)
        return Polynomial(self.field, out)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        sub = self.field.sub
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(
            self.field, [sub(self[i], other[i]) for i in range(n)]
        )

    def __neg__(self) -> "Polynomial":
        neg = self.field.neg
        return Polynomial(self.field, tuple(neg(c) for c in self.coeffs))

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial.zero(self.field)
        f = self.field
        if f.k == 1:
            p = f.p
            out = [0] * (len(a) + len(b) - 1)
            for i, ca in enumerate(a):
                if ca:
                    for j, cb in enumerate(b):
                        out[i + j] += ca * cb
            return Polynomial(f, [c % p for c in out])
        mul, add = f.mul, f.add
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] = add(out[i + j], mul(ca, cb))
        return Polynomial(f, out)

    def scale(self, c: int) -> "Polynomial":
        if not c:
            return Polynomial.zero(self.field)
        mul = self.field.mul
        return Polynomial(self.field, tuple(mul(a, c) for a in self.coeffs))

    def shift(self, n: int) -> "Polynomial":
        """Multiply by x^n."""
        if self.is_zero or n == 0:
            return self
        return Polynomial(self.field, (0,) * n + self.coeffs)

    def __divmod__(self, other: "Polynomial"):
        self._check(other)
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        f = self.field
        rem = list(self.coeffs)
        db = other.degree
        if self.degree < db:
            return Polynomial.zero(f), self
        inv_lc = f.inv(other.coeffs[-1])
        mul, sub = f.mul, f.sub
        quot = [0] * (len(rem) - db)
        bc = other.coeffs
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if c:
                c = mul(c, inv_lc)
                quot[i - db] = c
                for j in range(db + 1):
                    rem[i - db + j] = sub(rem[i - db + j], mul(c, bc[j]))
        return Polynomial(f, quot), Polynomial(f, rem[:db])

    def __floordiv__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[0]

    def __mod__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[1]

    def __pow__(self, e: int) -> "Polynomial":
        if e < 0:
            raise ValueError("negative polynomial power")
        r = Polynomial.one(self.field)
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def pow_mod(self, e: int, mod: "Polynomial") -> "Polynomial":
        if e < 0:
            raise ValueError("negative exponent in pow_mod")
        r = Polynomial.one(self.field) % mod
        b = self % mod
        while e:
            if e & 1:
                r = (r * b) % mod
            b = (b * b) % mod
            e >>= 1
        return r

    def derivative(self) -> "Polynomial":
        f = self.field
        p = f.p
        out = []
        for i in range(1, len(self.coeffs)):
            m = i % p
            out.append(f.mul(self.coeffs[i], m) if m else 0)
        return Polynomial(f, out)

    def eval(self, a: int) -> int:
        f = self.field
        mul, add = f.mul, f.add
        acc = 0
        for c in reversed(self.coeffs):
            acc = add(mul(acc, a), c)
        return acc

    def map_coeffs(self, fn) -> "Polynomial":
        return Polynomial(self.field, tuple(fn(c) for c in self.coeffs))


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd; gcd(0, 0) = 0."""
    if a.field != b.field:
        raise ValueError("mixed fields")
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: Polynomial, b: Polynomial) -> tuple[Polynomial, Polynomial, Polynomial]:
    """(g, s, t) with g = s*a + t*b, g monic (or zero)."""
    if a.field != b.field:
        raise ValueError("mixed fields")
    f = a.field
    r0, r1 = a, b
    s0, s1 = Polynomial.one(f), Polynomial.zero(f)
    t0, t1 = Polynomial.zero(f), Polynomial.one(f)
    while not r1.is_zero:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero:
        return r0, s0, t0
    c = f.inv(r0.lc())
    return r0.scale(c), s0.scale(c), t0.scale(c)


def poly_ord(a: Polynomial, u: Polynomial) -> int:
    """Multiplicity of the irreducible u in a (a nonzero)."""
    if a.is_zero:
        raise ValueError("ord of zero polynomial")
    n = 0
    while True:
        q, r = divmod(a, u)
        if not r.is_zero:
            return n
        a = q
        n += 1


def poly_random(f: Field, degree: int, rng: random.Random) -> Polynomial:
    """Random polynomial of degree <= degree (possibly zero)."""
    return Polynomial(f, [rng.randrange(f.q) for _ in range(degree + 1)])


def poly_random_monic(f: Field, degree: int, rng: random.Random) -> Polynomial:
    return Polynomial(f, [rng.randrange(f.q) for _ in range(degree)] + [1])


def is_irreducible(f: Polynomial) -> bool:
    """Rabin's irreducibility test."""
    n = f.degree
    if n <= 0:
        return False
    if n == 1:
        return True
    field = f.field
    q = field.q
    f = f.monic()
    x = Polynomial.x(field)
    if x.pow_mod(q**n, f) != x % f:
        return False
    for r in _factor_int(n):
        h = x.pow_mod(q ** (n // r), f) - x
        if poly_gcd(h, f).degree != 0:
            return False
    return True


def _pth_root(f: Polynomial) -> Polynomial:
    """g with g^p = f, valid when f' = 0 (all exponents divisible by p)."""
    field = f.field
    p = field.p
    e = field.p ** (field.k - 1)  # c -> c^(q/p) inverts the Frobenius
    out = []
    for i in range(0, len(f.coeffs), p):
        out.append(field.pow(f.coeffs[i], e))
    return Polynomial(field, out)


def _squarefree_decomposition(f: Polynomial) -> list[tuple[Polynomial, int]]:
    """[(g, m)] with f = prod g^m up to the leading unit, g monic squarefree,
    pairwise coprime, m distinct."""
    field = f.field
    p = field.p
    acc: dict[int, Polynomial] = {}

    def rec(g: Polynomial, mult: int) -> None:
        if g.degree <= 0:
            return
        gp = g.derivative()
        if gp.is_zero:
            rec(_pth_root(g), mult * p)
            return
        c = poly_gcd(g, gp)
        w = g // c
        i = 1
        while w.degree > 0:
            y = poly_gcd(w, c)
            fac = w // y
            if fac.degree > 0:
                key = mult * i
                acc[key] = acc[key] * fac if key in acc else fac
            w = y
            c = c // y
            i += 1
        if c.degree > 0:
            rec(_pth_root(c), mult * p)

    rec(f.monic(), 1)
    return [(g, m) for m, g in sorted(acc.items())]


def _distinct_degree(f: Polynomial) -> list[tuple[Polynomial, int]]:
    """[(g, d)]: g = product of the degree-d irreducible factors of monic
    squarefree f."""
    field = f.field
    q = field.q
    out = []
    x = Polynomial.x(field)
    h = x % f
    d = 0
    while f.degree >= 2 * (d + 1):
        d += 1
        h = h.pow_mod(q, f)
        g = poly_gcd(h - x, f)
        if g.degree > 0:
            out.append((g, d))
            f = f // g
            h = h % f
    if f.degree > 0:
        out.append((f, f.degree))
    return out


def _equal_degree(f: Polynomial, d: int, rng: random.Random) -> list[Polynomial]:
    """Cantor-Zassenhaus split of monic squarefree f with all factors of
    degree d (odd q)."""
    if f.degree == d:
        return [f]
    field = f.field
    e = (field.q**d - 1) // 2
    one = Polynomial.one(field)
    while True:
        a = poly_random(field, f.degree - 1, rng)
        if a.degree < 1:
            continue
        g = poly_gcd(a, f)
        if 0 < g.degree < f.degree:
            break
        g = poly_gcd(a.pow_mod(e, f) - one, f)
        if 0 < g.degree < f.degree:
            break
    return _equal_degree(g, d, rng) + _equal_degree(f // g, d, rng)


def poly_factor(f: Polynomial, seed: int = 0) -> list[tuple[Polynomial, int]]:
    """Factor f into monic irreducibles, sorted by (degree, coefficients).

    The product of the factors (with multiplicity) times the leading
    coefficient of f re-multiplies exactly to f; this is asserted.
    """
    if f.is_zero:
        raise ValueError("zero polynomial")
    field = f.field
    rng = random.Random(seed)
    out: list[tuple[Polynomial, int]] = []
    if f.degree > 0:
        for g, m in _squarefree_decomposition(f):
            for prod, d in _distinct_degree(g):
                for irr in _equal_degree(prod, d, rng):
                    out.append((irr, m))
    out.sort(key=lambda fm: (fm[0].degree, fm[0].coeffs))
    check = Polynomial.const(field, f.lc()) if f.degree >= 0 else f
    for g, m in out:
        check = check * g**m
    assert check == f, "factorization failed to re-multiply"
    return out


def poly_roots(f: Polynomial) -> list[int]:
    """Roots in the coefficient field, sorted by code, without multiplicity."""
    if f.is_zero:
        raise ValueError("zero polynomial")
    roots = []
    for g, _ in poly_factor(f):
        if g.degree == 1:
            roots.append(f.field.neg(g.coeffs[0]))
    return sorted(roots)


_EMBED_CACHE: dict[tuple, list[int]] = {}


def embedding(src: Field, dst: Field):
    """The chosen inclusion of src into dst, as a code-to-code callable.

    Requires equal characteristic and src.k dividing dst.k.  Among the
    conjugate embeddings the one sending the generator of src to the root
    with the smallest code is used, so the map is deterministic.
    """
    if src.p != dst.p or dst.k % src.k:
        raise ValueError("no embedding between these fields")
    if src == dst or src.k == 1:
        return lambda c: c
    key = (src.p, src.k, src.modulus, dst.k, dst.modulus)
    table = _EMBED_CACHE.get(key)
    if table is None:
        root = poly_roots(Polynomial(dst, src.modulus))[0]
        table = []
        for code in range(src.q):
            acc = 0
            for d in reversed(src.decode(code)):
                acc = dst.add(dst.mul(acc, root), d)
            table.append(acc)
        _EMBED_CACHE[key] = table
    return table.__getitem__


# --- residue-field helpers: kappa = F_q[x]/(u), u monic irreducible ----------


def kappa_inv(a: Polynomial, u: Polynomial) -> Polynomial:
    g, s, _ = poly_xgcd(a % u, u)
    if g.degree != 0:
        raise ZeroDivisionError("not invertible modulo u")
    return s % u


def kappa_pow(a: Polynomial, e: int, u: Polynomial) -> Polynomial:
    if e < 0:
        return kappa_inv(a, u).pow_mod(-e, u)
    return a.pow_mod(e, u)


def kappa_trace(a: Polynomial, u: Polynomial) -> int:
    """Trace from F_q[x]/(u) down to F_q, as a field code."""
    field = a.field
    q = field.q
    d = u.degree
    acc = Polynomial.zero(field)
    b = a % u
    for _ in range(d):
        acc = acc + b
        b = b.pow_mod(q, u)
    assert acc.degree <= 0, "trace did not land in the base field"
    return acc[0]


def kappa_sqrt(a: Polynomial, u: Polynomial) -> Optional[Polynomial]:
    """Canonical square root in F_q[x]/(u), or None for non-squares.

    Tonelli-Shanks in the multiplicative group of order q^deg(u) - 1; of the
    two roots the one with the smaller coefficient code is returned.
    """
    field = a.field
    a = a % u
    if a.is_zero:
        return a
    Q = field.q ** u.degree
    one = Polynomial.one(field)

    def is_sq(b: Polynomial) -> bool:
        return kappa_pow(b, (Q - 1) // 2, u) == one

    if not is_sq(a):
        return None
    if Q % 4 == 3:
        r = kappa_pow(a, (Q + 1) // 4, u)
    else:
        s, m = 0, Q - 1
        while m % 2 == 0:
            s += 1
            m //= 2
        z = None
        for code in range(1, Q):
            c, digits = code, []
            while c:
                c, rdig = divmod(c, field.q)
                digits.append(rdig)
            cand = Polynomial(field, digits)
            if not is_sq(cand):
                z = cand
                break
        c = kappa_pow(z, m, u)
        r = kappa_pow(a, (m + 1) // 2, u)
        t = kappa_pow(a, m, u)
        while t != one:
            t2, i = t, 0
            while t2 != one:
                t2 = (t2 * t2) % u
                i += 1
            b = kappa_pow(c, 1 << (s - i - 1), u)
            s = i
            r = (r * b) % u
            c = (b * b) % u
            t = (t * c) % u
    rn = (-r) % u
    return min(r, rn, key=lambda w: w.coeffs[::-1])


def hensel_sqrt(f: Polynomial, u: Polynomial, v: Polynomial, m: int) -> Polynomial:
    """Y with Y^2 = f mod u^m and Y = v mod u, by Newton lifting.

    Requires v^2 = f mod u and v invertible mod u (non-ramified place).
    """
    field = f.field
    assert (v * v - f) % u == Polynomial.zero(field)
    inv2 = Polynomial.const(field, field.inv(2 % field.p))
    y = v % u
    t = 1
    while t < m:
        t = min(2 * t, m)
        mod = u**t
        g, s, _ = poly_xgcd(y, mod)
        assert g.degree == 0 and g.coeffs[0] == 1
        y = ((y + f * s) * inv2) % mod
    assert (y * y - f) % (u**m) == Polynomial.zero(field)
    return y


class RationalFunction:
    """Quotient num/den in lowest terms; den monic; zero is 0/1."""

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial, reduce: bool = True):
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        if num.field != den.field:
            raise ValueError("mixed fields")
        if num.is_zero:
            num, den = num, Polynomial.one(num.field)
        elif reduce:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
            if not den.is_monic():
                c = num.field.inv(den.lc())
                num, den = num.scale(c), den.scale(c)
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, f: Polynomial) -> "RationalFunction":
        return cls(f, Polynomial.one(f.field), reduce=False)

    @classmethod
    def zero(cls, field: Field) -> "RationalFunction":
        return cls(Polynomial.zero(field), Polynomial.one(field), reduce=False)

    @classmethod
    def one(cls, field: Field) -> "RationalFunction":
        return cls(Polynomial.one(field), Polynomial.one(field), reduce=False)

    @property
    def field(self) -> Field:
        return self.num.field

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def is_poly(self) -> bool:
        return self.den.degree == 0

    def deg(self) -> int:
        """deg(num) - deg(den); the degree of the zero function is undefined."""
        if self.is_zero:
            raise ValueError("degree of zero function")
        return self.num.degree - self.den.degree

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(
            self.num * other.den - other.num * self.den, self.den * other.den
        )

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den, reduce=False)

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RationalFunction") -> "RationalFunction":
        if other.is_zero:
            raise ZeroDivisionError("division by zero function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def inv(self) -> "RationalFunction":
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero function")
        return RationalFunction(self.den, self.num)

    def scale(self, c: int) -> "RationalFunction":
        return RationalFunction(self.num.scale(c), self.den, reduce=False)

    def derivative(self) -> "RationalFunction":
        return RationalFunction(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def eval(self, a: int) -> Optional[int]:
        d = self.den.eval(a)
        if d == 0:
            return None
        return self.field.div(self.num.eval(a), d)

    def ord_at(self, u: Polynomial) -> int:
        """Order of vanishing along the irreducible u (negative at poles)."""
        if self.is_zero:
            raise ValueError("ord of zero function")
        n = poly_ord(self.num, u) if not self.num.is_zero else 0
        d = poly_ord(self.den, u)
        return n - d

    def __eq__(self, other):
        return (
            isinstance(other, RationalFunction)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        if self.den.degree == 0:
            return f"rat[{self.num!r}]"
        return f"rat[{self.num!r} / {self.den!r}]"
