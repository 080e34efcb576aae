"""Exact arithmetic in the coefficient fields.

Three field kinds are supported:

- odd prime fields GF(p) with p an odd prime below 2**64 (raw values are
  ints in [0, p)),
- binary fields GF(2**m), 1 <= m <= 63, in polynomial basis (raw values are
  bit-patterns of degree < m polynomials over GF(2)),
- arbitrary-precision rationals (raw values are ``fractions.Fraction``).

Internally all arithmetic works on raw values through a ``Field`` object;
``FieldElement`` is a thin immutable wrapper used at API boundaries.  Elements
of different fields never combine.  Randomness is always drawn from an
explicit ``random.Random`` passed by the caller.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import (
    DivisionByZero,
    FieldMismatch,
    NoSolutionCertificate,
    UnsupportedField,
)

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all n < 2**64."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# ---------------------------------------------------------------------------
# GF(2)[x] helpers on int bit-patterns (used by BinaryField)
# ---------------------------------------------------------------------------

def _gf2x_mulmod(a: int, b: int, mod: int, m: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a >> m & 1:
            a ^= mod
    return r


def _gf2x_mul(a: int, b: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
    return r


def _gf2x_mod(a: int, mod: int) -> int:
    dm = mod.bit_length() - 1
    da = a.bit_length() - 1
    while da >= dm:
        a ^= mod << (da - dm)
        da = a.bit_length() - 1
    return a


def _gf2x_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, _gf2x_mod(a, b)
    return a


def gf2_poly_is_irreducible(mod: int) -> bool:
    """Rabin test for a polynomial over GF(2) given as a bit-pattern."""
    m = mod.bit_length() - 1
    if m < 1:
        return False
    if m == 1:
        return True
    # x^(2^m) == x mod f, and gcd(x^(2^(m/q)) - x, f) = 1 for prime q | m.
    def x_pow_pow2(k: int) -> int:
        r = 2  # the polynomial x
        for _ in range(k):
            r = _gf2x_mulmod(r, r, mod, m)
        return r

    if x_pow_pow2(m) != 2:
        return False
    q = m
    primes = []
    d = 2
    while d * d <= q:
        if q % d == 0:
            primes.append(d)
            while q % d == 0:
                q //= d
        d += 1
    if q > 1:
        primes.append(q)
    for p in primes:
        g = _gf2x_gcd(x_pow_pow2(m // p) ^ 2, mod)
        if g != 1:
            return False
    return True


# ---------------------------------------------------------------------------
# Field objects
# ---------------------------------------------------------------------------

class OpCounter:
    """Mutable multiplication/squaring/inversion counter for benchmarks."""

    __slots__ = ("mul", "sqr", "inv", "add")

    def __init__(self):
        self.reset()

    def reset(self):
        self.mul = self.sqr = self.inv = self.add = 0

    def snapshot(self) -> dict:
        return {"mul": self.mul, "sqr": self.sqr, "inv": self.inv, "add": self.add}


class Field:
    """Base class; subclasses implement raw-value arithmetic."""

    kind: str
    counter: OpCounter | None = None

    # -- raw operations --------------------------------------------------
    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def sqr(self, a):
        return self.mul(a, a)

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n: int):
        if n < 0:
            return self.pow(self.inv(a), -n)
        r, b = self.one, a
        while n:
            if n & 1:
                r = self.mul(r, b)
            b = self.sqr(b)
            n >>= 1
        return r

    def from_int(self, n: int):
        """Image of the integer n under the canonical ring map."""
        raise NotImplementedError

    def characteristic(self) -> int:
        raise NotImplementedError

    def order(self) -> int | None:
        """Field size, or None for the rationals."""
        return None

    def random(self, rng):
        raise UnsupportedField(f"no uniform sampling over {self.kind}")

    def sqrt(self, a):
        """One square root of a, or None if a is not a square."""
        raise NotImplementedError

    def quad_solve(self, b, c) -> list:
        """All raw y with y**2 + b*y = c, sorted canonically."""
        raise NotImplementedError

    def sort_key(self, a):
        """Total order on raw values used for canonical choices."""
        raise NotImplementedError

    def to_str(self, a) -> str:
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    # -- wrapper helpers --------------------------------------------------
    def el(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatch("element belongs to a different field")
            return value
        if isinstance(value, int):
            return FieldElement(self, self.from_int(value))
        return FieldElement(self, value)

    def spec_string(self) -> str:
        raise NotImplementedError

    def __repr__(self):
        return self.spec_string()


@dataclass(frozen=True, repr=False)
class PrimeField(Field):
    p: int
    kind = "prime"

    def __post_init__(self):
        if self.p < 3 or self.p % 2 == 0 or self.p >= 1 << 64:
            raise ValueError("prime field modulus must be an odd prime below 2**64")
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    zero = 0
    one = 1

    def add(self, a, b):
        c = a + b
        return c - self.p if c >= self.p else c

    def sub(self, a, b):
        c = a - b
        return c + self.p if c < 0 else c

    def neg(self, a):
        return self.p - a if a else 0

    def mul(self, a, b):
        if self.counter is not None:
            self.counter.mul += 1
        return a * b % self.p

    def sqr(self, a):
        if self.counter is not None:
            self.counter.sqr += 1
        return a * a % self.p

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of 0")
        if self.counter is not None:
            self.counter.inv += 1
        return pow(a, -1, self.p)

    def from_int(self, n: int):
        return n % self.p

    def characteristic(self):
        return self.p

    def order(self):
        return self.p

    def random(self, rng):
        return rng.randrange(self.p)

    def sqrt(self, a):
        p = self.p
        if a == 0:
            return 0
        if pow(a, (p - 1) // 2, p) != 1:
            return None
        if p % 4 == 3:
            return pow(a, (p + 1) // 4, p)
        # Tonelli-Shanks
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while pow(z, (p - 1) // 2, p) != p - 1:
            z += 1
        m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t, r = t * c % p, r * b % p
        return r

    def quad_solve(self, b, c):
        # y^2 + b y = c  <=>  (y + b/2)^2 = c + b^2/4
        half = (self.p + 1) // 2
        hb = b * half % self.p
        disc = (c + hb * hb) % self.p
        s = self.sqrt(disc)
        if s is None:
            return []
        y0 = (s - hb) % self.p
        y1 = (-s - hb) % self.p
        return sorted({y0, y1})

    def sort_key(self, a):
        return a

    def to_str(self, a):
        return str(a)

    def parse(self, text):
        return int(text, 0) % self.p

    def spec_string(self):
        return f"prime:p={self.p}"


_BINARY_TABLES: dict[tuple[int, int], tuple[list, list]] = {}
_TABLE_LIMIT = 20  # log/exp tables kept for m <= 20


@dataclass(frozen=True, repr=False)
class BinaryField(Field):
    m: int
    mod: int  # bit-pattern of the irreducible modulus, degree exactly m

    kind = "binary"

    def __post_init__(self):
        if not (1 <= self.m <= 63):
            raise ValueError("binary extension degree must be in [1, 63]")
        if self.mod.bit_length() - 1 != self.m:
            raise ValueError("modulus degree does not match m")
        if not gf2_poly_is_irreducible(self.mod):
            raise ValueError(f"modulus {hex(self.mod)} is reducible over GF(2)")

    zero = 0
    one = 1

    def _tables(self):
        key = (self.m, self.mod)
        tabs = _BINARY_TABLES.get(key)
        if tabs is None and self.m <= _TABLE_LIMIT:
            if self.m == 1:
                tabs = ([1], [0, 0])
                _BINARY_TABLES[key] = tabs
                return tabs
            n = (1 << self.m) - 1
            exp = [0] * n
            log = [0] * (n + 1)
            # find a multiplicative generator
            g = 2
            while self._mult_order_nolog(g, n) != n:
                g += 1
            x = 1
            for i in range(n):
                exp[i] = x
                log[x] = i
                x = _gf2x_mulmod(x, g, self.mod, self.m)
            tabs = (exp, log)
            _BINARY_TABLES[key] = tabs
        return tabs

    def _mult_order_nolog(self, g: int, n: int) -> int:
        # order of g divides n = 2^m - 1
        order = n
        d = 2
        nn = n
        factors = []
        while d * d <= nn:
            if nn % d == 0:
                factors.append(d)
                while nn % d == 0:
                    nn //= d
            d += 1
        if nn > 1:
            factors.append(nn)
        for q in factors:
            while order % q == 0 and self._pow_nolog(g, order // q) == 1:
                order //= q
        return order

    def _pow_nolog(self, a: int, n: int) -> int:
        r, b = 1, a
        while n:
            if n & 1:
                r = _gf2x_mulmod(r, b, self.mod, self.m)
            b = _gf2x_mulmod(b, b, self.mod, self.m)
            n >>= 1
        return r

    def add(self, a, b):
        return a ^ b

    sub = add

    def neg(self, a):
        return a

    def mul(self, a, b):
        if self.counter is not None:
            self.counter.mul += 1
        if a == 0 or b == 0:
            return 0
        tabs = self._tables()
        if tabs is not None:
            exp, log = tabs
            n = (1 << self.m) - 1
            s = log[a] + log[b]
            if s >= n:
                s -= n
            return exp[s]
        return _gf2x_mulmod(a, b, self.mod, self.m)

    def sqr(self, a):
        if self.counter is not None:
            self.counter.sqr += 1
        if a == 0:
            return 0
        tabs = self._tables()
        if tabs is not None:
            exp, log = tabs
            n = (1 << self.m) - 1
            s = log[a] * 2
            if s >= n:
                s -= n
            return exp[s]
        return _gf2x_mulmod(a, a, self.mod, self.m)

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of 0")
        if self.counter is not None:
            self.counter.inv += 1
        tabs = self._tables()
        if tabs is not None:
            exp, log = tabs
            n = (1 << self.m) - 1
            k = log[a]
            return exp[0] if k == 0 else exp[n - k]
        return self._pow_nolog(a, (1 << self.m) - 2)

    def from_int(self, n: int):
        return n & 1

    def characteristic(self):
        return 2

    def order(self):
        return 1 << self.m

    def random(self, rng):
        return rng.randrange(1 << self.m)

    def trace(self, a):
        t = a
        x = a
        for _ in range(self.m - 1):
            x = self.sqr(x)
            t ^= x
        return t

    def sqrt(self, a):
        # squaring is a bijection; the inverse is a^(2^(m-1))
        r = a
        for _ in range(self.m - 1):
            r = self.sqr(r)
        return r

    def half_trace(self, a):
        # solves z^2 + z = a when m is odd and Tr(a) = 0
        h = a
        x = a
        for _ in range((self.m - 1) // 2):
            x = self.sqr(self.sqr(x))
            h ^= x
        return h

    def _artin_schreier_solve(self, a):
        """One z with z^2 + z = a, or None; valid for every m."""
        if self.trace(a) != 0:
            return None
        if self.m % 2 == 1:
            return self.half_trace(a)
        # solve the F2-linear system (z^2 + z = a) on the polynomial basis
        m = self.m
        cols = [self.sqr(1 << j) ^ (1 << j) for j in range(m)]
        rows = []
        for i in range(m):
            r = 0
            for j in range(m):
                if cols[j] >> i & 1:
                    r |= 1 << j
            rows.append([r, a >> i & 1])
        pivot_of = {}
        rank = 0
        for j in range(m):
            piv = next((i for i in range(rank, m) if rows[i][0] >> j & 1), None)
            if piv is None:
                continue
            rows[rank], rows[piv] = rows[piv], rows[rank]
            pr, prhs = rows[rank]
            for i in range(m):
                if i != rank and rows[i][0] >> j & 1:
                    rows[i][0] ^= pr
                    rows[i][1] ^= prhs
            pivot_of[j] = rank
            rank += 1
        if any(rows[i][1] for i in range(rank, m)):
            return None
        z = 0
        for j, i in pivot_of.items():
            if rows[i][1]:
                z |= 1 << j
        if self.sqr(z) ^ z != a:
            return None
        return z

    def quad_solve(self, b, c):
        if b == 0:
            return [self.sqrt(c)]
        # substitute y = b z:  z^2 + z = c / b^2
        d = self.mul(c, self.inv(self.sqr(b)))
        z = self._artin_schreier_solve(d)
        if z is None:
            return []
        y0 = self.mul(b, z)
        y1 = y0 ^ b
        return sorted({y0, y1})

    def sort_key(self, a):
        return a

    def to_str(self, a):
        return hex(a)

    def parse(self, text):
        v = int(text, 0)
        if v >> self.m:
            raise ValueError("bit-pattern exceeds field degree")
        return v

    def spec_string(self):
        return f"binary:m={self.m},mod={hex(self.mod)}"


@dataclass(frozen=True, repr=False)
class RationalField(Field):
    kind = "rational"

    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        if self.counter is not None:
            self.counter.mul += 1
        return a * b

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of 0")
        if self.counter is not None:
            self.counter.inv += 1
        return 1 / a

    def from_int(self, n: int):
        return Fraction(n)

    def characteristic(self):
        return 0

    def sqrt(self, a):
        if a < 0:
            return None
        n, d = a.numerator, a.denominator
        rn, rd = isqrt(n), isqrt(d)
        if rn * rn != n or rd * rd != d:
            return None
        return Fraction(rn, rd)

    def quad_solve(self, b, c):
        disc = b * b + 4 * c
        s = self.sqrt(disc)
        if s is None:
            raise NoSolutionCertificate(
                "discriminant is not an exact rational square"
            )
        return sorted({(-b + s) / 2, (-b - s) / 2})

    def sort_key(self, a):
        return a

    def to_str(self, a):
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"

    def parse(self, text):
        return Fraction(text)

    def spec_string(self):
        return "rational"


def field_from_spec(text: str) -> Field:
    """Parse the field spec syntax: prime:p=1009, binary:m=16,mod=0x1002b, rational."""
    text = text.strip()
    if text == "rational":
        return RationalField()
    if text.startswith("prime:"):
        params = dict(kv.split("=") for kv in text[6:].split(","))
        return PrimeField(int(params["p"], 0))
    if text.startswith("binary:"):
        params = dict(kv.split("=") for kv in text[7:].split(","))
        return BinaryField(int(params["m"], 0), int(params["mod"], 0))
    raise ValueError(f"unrecognized field spec {text!r}")


# ---------------------------------------------------------------------------
# Wrapper element
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldElement:
    """Immutable field element; operands must share the same field."""

    field: Field
    value: object

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch("elements of different fields never combine")
            return other
        if isinstance(other, int):
            return FieldElement(self.field, self.field.from_int(other))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return FieldElement(self.field, self.field.add(self.value, o.value))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return FieldElement(self.field, self.field.sub(self.value, o.value))

    def __rsub__(self, other):
        o = self._coerce(other)
        return FieldElement(self.field, self.field.sub(o.value, self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __mul__(self, other):
        o = self._coerce(other)
        return FieldElement(self.field, self.field.mul(self.value, o.value))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        return FieldElement(self.field, self.field.div(self.value, o.value))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return FieldElement(self.field, self.field.div(o.value, self.value))

    def __pow__(self, n: int):
        return FieldElement(self.field, self.field.pow(self.value, n))

    def __bool__(self):
        return self.value != self.field.zero

    def __str__(self):
        return self.field.to_str(self.value)


def arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    """Binary field arithmetic on wrapped elements: op in {add, sub, mul, div}."""
    if a.field != b.field:
        raise FieldMismatch("elements of different fields never combine")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def quad_solve(b: FieldElement, c: FieldElement) -> set[FieldElement]:
    """All y with y**2 + b*y = c in the elements' common field."""
    if b.field != c.field:
        raise FieldMismatch("elements of different fields never combine")
    return {FieldElement(b.field, v) for v in b.field.quad_solve(b.value, c.value)}


def random_element(field: Field, rng) -> FieldElement:
    """Uniform element of a finite field, deterministic given the rng state."""
    return FieldElement(field, field.random(rng))
