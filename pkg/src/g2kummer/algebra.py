"""Univariate polynomials, exact dense linear algebra, and form bases.

Polynomials are dense coefficient lists (lowest degree first, raw field
values, no trailing zeros).  Matrices are row-major lists of raw values.
Two fixed monomial bases are defined:

- ``QUARTIC4``: the 35 monomials of total degree 4 in k1..k4, graded-lex
  with k1 > k2 > k3 > k4;
- ``BIQUADRATIC44``: the 100 products of a degree-2 monomial in x1..x4 and a
  degree-2 monomial in y1..y4, x-block-major, each block graded-lex.

The same orderings are used by formula synthesis and serialization.
"""

from __future__ import annotations

from itertools import combinations_with_replacement

from .errors import DivisionByZero, LengthMismatch, UnsupportedField
from .field import Field


class Poly:
    """Dense univariate polynomial over a fixed field."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs):
        while coeffs and coeffs[-1] == field.zero:
            coeffs = coeffs[:-1]
        self.field = field
        self.coeffs = tuple(coeffs)

    @classmethod
    def from_ints(cls, field: Field, ints) -> "Poly":
        return cls(field, [field.from_int(c) for c in ints])

    @classmethod
    def x(cls, field: Field) -> "Poly":
        return cls(field, [field.zero, field.one])

    @classmethod
    def const(cls, field: Field, c) -> "Poly":
        return cls(field, [c])

    @property
    def degree(self) -> int:
        """Degree, with deg 0 = -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        if self.is_zero():
            return "Poly(0)"
        terms = [
            f"{self.field.to_str(c)}*x^{i}" for i, c in enumerate(self.coeffs) if c != self.field.zero
        ]
        return "Poly(" + " + ".join(terms) + ")"

    def __add__(self, other: "Poly") -> "Poly":
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(F, [F.add(self[i], other[i]) for i in range(n)])

    def __sub__(self, other: "Poly") -> "Poly":
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(F, [F.sub(self[i], other[i]) for i in range(n)])

    def __neg__(self) -> "Poly":
        F = self.field
        return Poly(F, [F.neg(c) for c in self.coeffs])

    def __mul__(self, other: "Poly") -> "Poly":
        F = self.field
        if self.is_zero() or other.is_zero():
            return Poly(F, [])
        out = [F.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == F.zero:
                continue
            for j, b in enumerate(other.coeffs):
                if b != F.zero:
                    out[i + j] = F.add(out[i + j], F.mul(a, b))
        return Poly(F, out)

    def scale(self, c) -> "Poly":
        F = self.field
        return Poly(F, [F.mul(c, a) for a in self.coeffs])

    def shift(self, k: int) -> "Poly":
        """Multiply by x**k."""
        if self.is_zero():
            return self
        return Poly(self.field, (self.field.zero,) * k + self.coeffs)

    def divrem(self, other: "Poly") -> tuple["Poly", "Poly"]:
        F = self.field
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        if self.degree < other.degree:
            return Poly(F, []), self
        inv_lc = F.inv(other.coeffs[-1])
        rem = list(self.coeffs)
        db = other.degree
        quot = [F.zero] * (len(rem) - db)
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if c == F.zero:
                continue
            q = F.mul(c, inv_lc)
            quot[i - db] = q
            for j, b in enumerate(other.coeffs):
                rem[i - db + j] = F.sub(rem[i - db + j], F.mul(q, b))
        return Poly(F, quot), Poly(F, rem)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.divrem(other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divrem(other)[1]

    def gcd(self, other: "Poly") -> "Poly":
        """Monic greatest common divisor."""
        a, b = self, other
        if a.is_zero() and b.is_zero():
            raise DivisionByZero("gcd(0, 0)")
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def xgcd(self, other: "Poly") -> tuple["Poly", "Poly", "Poly"]:
        """(g, s, t) with s*self + t*other = g, g monic."""
        F = self.field
        r0, r1 = self, other
        s0, s1 = Poly.const(F, F.one), Poly(F, [])
        t0, t1 = Poly(F, []), Poly.const(F, F.one)
        while not r1.is_zero():
            q, r = r0.divrem(r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        if r0.is_zero():
            raise DivisionByZero("xgcd(0, 0)")
        inv = F.inv(r0.coeffs[-1])
        return r0.scale(inv), s0.scale(inv), t0.scale(inv)

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = self.divrem(other)
        if not r.is_zero():
            raise DivisionByZero("division is not exact")
        return q

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.coeffs[-1]))

    def deriv(self) -> "Poly":
        F = self.field
        out = []
        for i in range(1, len(self.coeffs)):
            out.append(F.mul(F.from_int(i), self.coeffs[i]))
        return Poly(F, out)

    def __call__(self, x):
        """Evaluate at a raw field value (Horner)."""
        F = self.field
        y = F.zero
        for c in reversed(self.coeffs):
            y = F.add(F.mul(y, x), c)
        return y

    def reverse(self, degree: int | None = None) -> "Poly":
        """Coefficient reversal x**d * p(1/x) for d = degree (default deg p)."""
        d = self.degree if degree is None else degree
        F = self.field
        out = [F.zero] * (d + 1)
        for i, c in enumerate(self.coeffs):
            out[d - i] = c
        return Poly(F, out)

    def squarefree(self) -> bool:
        d = self.deriv()
        if d.is_zero():
            return self.degree <= 0
        return self.gcd(d).degree == 0


def poly_ops(a: Poly, b: Poly, op: str):
    """Named polynomial operations: add, mul, divrem, gcd."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "divrem":
        return a.divrem(b)
    if op == "gcd":
        return a.gcd(b)
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# Root finding over finite fields
# ---------------------------------------------------------------------------

def _pow_x_q_mod(p: Poly) -> Poly:
    """x**q mod p by square-and-reduce, q the field order."""
    F = p.field
    q = F.order()
    r = Poly.x(F)
    result = Poly.const(F, F.one)
    n = q
    while n:
        if n & 1:
            result = (result * r) % p
        r = (r * r) % p
        n >>= 1
    return result


def _split_linear(p: Poly, rng_state: int = 1) -> list:
    """Roots of p where p is a product of distinct linear factors."""
    F = p.field
    if p.degree == 1:
        c0, c1 = p.coeffs
        return [F.neg(F.mul(c0, F.inv(c1)))]
    if p.degree <= 0:
        return []
    q = F.order()
    if q <= (1 << 16):
        # exhaustive scan is cheap for small fields
        roots = []
        for v in _iterate_field(F):
            if p(v) == F.zero:
                roots.append(v)
        return roots
    # equal-degree splitting for degree-1 factors
    import random as _random

    rng = _random.Random(rng_state ^ hash(p.coeffs) & 0xFFFFFFFF)
    one = Poly.const(F, F.one)
    if F.characteristic() != 2:
        while True:
            a = F.random(rng)
            probe = Poly(F, [a, F.one])  # x + a
            t = _pow_poly_mod(probe, (q - 1) // 2, p) - one
            g = t.gcd(p) if not t.is_zero() else p
            if 0 < g.degree < p.degree:
                return _split_linear(g) + _split_linear(p // g)
    else:
        m = F.m  # type: ignore[attr-defined]
        while True:
            a = F.random(rng)
            probe = Poly(F, [a, F.one])
            # trace polynomial of probe mod p
            t = probe
            acc = probe
            for _ in range(m - 1):
                acc = (acc * acc) % p
                t = t + acc
            g = t.gcd(p) if not t.is_zero() else p
            if 0 < g.degree < p.degree:
                return _split_linear(g) + _split_linear(p // g)


def _pow_poly_mod(base: Poly, n: int, mod: Poly) -> Poly:
    F = base.field
    r = Poly.const(F, F.one)
    b = base % mod
    while n:
        if n & 1:
            r = (r * b) % mod
        b = (b * b) % mod
        n >>= 1
    return r


def _iterate_field(F: Field):
    q = F.order()
    if F.kind == "prime":
        yield from range(q)
    else:
        yield from range(q)


def roots(p: Poly) -> list[tuple[object, int]]:
    """All roots of p in its (finite) base field, with multiplicities.

    Computed via gcd with x**q - x, then splitting; fields of order up to
    2**16 fall back to an exhaustive scan inside the splitter.
    """
    F = p.field
    if F.order() is None:
        raise UnsupportedField("root finding requires a finite field")
    if p.is_zero():
        raise ValueError("root finding needs a nonzero polynomial")
    if p.degree == 0:
        return []
    xq = _pow_x_q_mod(p)
    lin = (xq - Poly.x(F)).gcd(p) if not (xq - Poly.x(F)).is_zero() else p.monic()
    simple = _split_linear(lin) if lin.degree > 0 else []
    out = []
    for r in sorted(simple, key=F.sort_key):
        mult = 0
        rest = p
        factor = Poly(F, [F.neg(r), F.one])
        while True:
            quot, rem = rest.divrem(factor)
            if not rem.is_zero():
                break
            mult += 1
            rest = quot
        out.append((r, mult))
    return out


def irreducible_quadratic_factors(p: Poly) -> list[Poly]:
    """Monic irreducible quadratic factors of p over its finite base field."""
    F = p.field
    xq = _pow_x_q_mod(p)
    x = Poly.x(F)
    # remove all linear factors, then extract degree-2 split
    rest = p.monic()
    for r, mult in roots(p):
        factor = Poly(F, [F.neg(r), F.one])
        for _ in range(mult):
            rest = rest // factor
    if rest.degree < 2:
        return []
    xq2 = _pow_poly_mod(_pow_x_q_mod(rest), F.order(), rest)  # x**(q^2) mod rest
    t = xq2 - x
    g = t.gcd(rest) if not t.is_zero() else rest
    out = []
    # g is a product of distinct irreducible quadratics; split it
    work = [g]
    while work:
        h = work.pop()
        if h.degree == 2:
            out.append(h.monic())
            continue
        if h.degree < 2:
            continue
        out.extend(_split_quadratics(h))
    # account for multiplicity
    final = []
    for qpoly in sorted(out, key=lambda f: [F.sort_key(c) for c in f.coeffs]):
        rest2 = p
        while True:
            quot, rem = rest2.divrem(qpoly)
            if not rem.is_zero():
                break
            final.append(qpoly)
            rest2 = quot
    # deduplicate, preserving order
    seen = []
    for f in final:
        if f not in seen:
            seen.append(f)
    return seen


def _split_quadratics(p: Poly) -> list[Poly]:
    """Split a product of distinct irreducible quadratics into its factors."""
    F = p.field
    q = F.order()
    import random as _random

    rng = _random.Random(0xC0FFEE ^ (hash(p.coeffs) & 0xFFFFFFFF))
    if p.degree == 2:
        return [p.monic()]
    one = Poly.const(F, F.one)
    while True:
        probe = Poly(F, [F.random(rng), F.random(rng), F.one])
        if F.characteristic() != 2:
            t = _pow_poly_mod(probe, (q * q - 1) // 2, p) - one
        else:
            m = 2 * F.m  # type: ignore[attr-defined]
            acc = probe % p
            t = acc
            for _ in range(m - 1):
                acc = (acc * acc) % p
                t = t + acc
        if t.is_zero():
            continue
        g = t.gcd(p)
        if 0 < g.degree < p.degree:
            return _split_quadratics(g) + _split_quadratics(p // g)


# ---------------------------------------------------------------------------
# Dense matrices and kernels
# ---------------------------------------------------------------------------

class Matrix:
    """Dense matrix of raw field values."""

    __slots__ = ("field", "rows", "nrows", "ncols")

    def __init__(self, field: Field, rows):
        self.field = field
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != self.ncols for r in self.rows):
            raise ValueError("ragged rows")

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls(
            field,
            [[field.one if i == j else field.zero for j in range(n)] for i in range(n)],
        )

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.field, tuple(tuple(r) for r in self.rows)))

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols})"

    def copy(self) -> "Matrix":
        return Matrix(self.field, self.rows)

    def mul(self, other: "Matrix") -> "Matrix":
        F = self.field
        if self.ncols != other.nrows:
            raise LengthMismatch("matrix shape mismatch")
        out = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = F.zero
                for k in range(self.ncols):
                    acc = F.add(acc, F.mul(self.rows[i][k], other.rows[k][j]))
                row.append(acc)
            out.append(row)
        return Matrix(F, out)

    def apply(self, vec) -> list:
        F = self.field
        if len(vec) != self.ncols:
            raise LengthMismatch("vector length mismatch")
        out = []
        for row in self.rows:
            acc = F.zero
            for a, b in zip(row, vec):
                if a != F.zero and b != F.zero:
                    acc = F.add(acc, F.mul(a, b))
            out.append(acc)
        return out

    def scale(self, c) -> "Matrix":
        F = self.field
        return Matrix(F, [[F.mul(c, a) for a in row] for row in self.rows])

    def inverse(self) -> "Matrix":
        F = self.field
        n = self.nrows
        if n != self.ncols:
            raise LengthMismatch("inverse of non-square matrix")
        aug = [list(r) + Matrix.identity(F, n).rows[i] for i, r in enumerate(self.rows)]
        rank, _ = _rref(F, aug, n)
        if rank < n:
            raise DivisionByZero("singular matrix")
        return Matrix(F, [row[n:] for row in aug])


def _rref(F: Field, rows: list[list], limit_cols: int | None = None) -> tuple[int, list[int]]:
    """In-place reduced row echelon form; returns (rank, pivot columns).

    Only columns below ``limit_cols`` are eligible as pivots (the remaining
    columns ride along, e.g. an augmented right-hand side).
    """
    if F.kind == "prime":
        return _rref_prime(F.p, rows, limit_cols)
    if F.kind == "binary":
        tabs = F._tables()
        if tabs is not None:
            return _rref_binary(F.m, tabs, rows, limit_cols)
    return _rref_generic(F, rows, limit_cols)


def _rref_prime(p: int, rows: list[list], limit_cols) -> tuple[int, list[int]]:
    ncols = len(rows[0]) if rows else 0
    pcols = ncols if limit_cols is None else limit_cols
    rank = 0
    pivots = []
    nrows = len(rows)
    for j in range(pcols):
        piv = None
        for i in range(rank, nrows):
            if rows[i][j]:
                piv = i
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        prow = rows[rank]
        inv = pow(prow[j], -1, p)
        if inv != 1:
            rows[rank] = prow = [inv * a % p for a in prow]
        for i in range(nrows):
            if i != rank:
                c = rows[i][j]
                if c:
                    ri = rows[i]
                    rows[i] = [(a - c * b) % p for a, b in zip(ri, prow)]
        pivots.append(j)
        rank += 1
        if rank == nrows:
            break
    return rank, pivots


def _rref_binary(m: int, tabs, rows: list[list], limit_cols) -> tuple[int, list[int]]:
    exp, log = tabs
    n = (1 << m) - 1
    ncols = len(rows[0]) if rows else 0
    pcols = ncols if limit_cols is None else limit_cols
    rank = 0
    pivots = []
    nrows = len(rows)
    for j in range(pcols):
        piv = None
        for i in range(rank, nrows):
            if rows[i][j]:
                piv = i
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        prow = rows[rank]
        if prow[j] != 1:
            li = n - log[prow[j]]
            if li == n:
                li = 0
            rows[rank] = prow = [
                exp[(li + log[a]) % n] if a else 0 for a in prow
            ]
        for i in range(nrows):
            if i != rank:
                c = rows[i][j]
                if c:
                    lc = log[c]
                    ri = rows[i]
                    rows[i] = [
                        (a ^ exp[(lc + log[b]) % n]) if b else a
                        for a, b in zip(ri, prow)
                    ]
        pivots.append(j)
        rank += 1
        if rank == nrows:
            break
    return rank, pivots


def _rref_generic(F: Field, rows: list[list], limit_cols) -> tuple[int, list[int]]:
    ncols = len(rows[0]) if rows else 0
    pcols = ncols if limit_cols is None else limit_cols
    zero = F.zero
    rank = 0
    pivots = []
    for j in range(pcols):
        piv = None
        for i in range(rank, len(rows)):
            if rows[i][j] != zero:
                piv = i
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        prow = rows[rank]
        inv = F.inv(prow[j])
        if inv != F.one:
            mul = F.mul
            rows[rank] = prow = [mul(inv, a) for a in prow]
        for i in range(len(rows)):
            if i == rank:
                continue
            c = rows[i][j]
            if c == zero:
                continue
            ri = rows[i]
            mul = F.mul
            sub = F.sub
            rows[i] = [sub(a, mul(c, b)) for a, b in zip(ri, prow)]
        pivots.append(j)
        rank += 1
        if rank == len(rows):
            break
    return rank, pivots


def solve_kernel(M: Matrix) -> list[list]:
    """Basis of the right kernel of M, each vector scaled so its first
    nonzero coordinate is one."""
    F = M.field
    if M.nrows == 0:
        basis = []
        for j in range(M.ncols):
            v = [F.zero] * M.ncols
            v[j] = F.one
            basis.append(v)
        return basis
    rows = [list(r) for r in M.rows]
    rank, pivots = _rref(F, rows)
    pivot_set = set(pivots)
    free = [j for j in range(M.ncols) if j not in pivot_set]
    basis = []
    for fj in free:
        v = [F.zero] * M.ncols
        v[fj] = F.one
        for i, pj in enumerate(pivots):
            v[pj] = F.neg(rows[i][fj])
        # scale so the first nonzero coordinate is 1
        for c in v:
            if c != F.zero:
                inv = F.inv(c)
                v = [F.mul(inv, a) for a in v]
                break
        basis.append(v)
    return basis


def matrix_rank(M: Matrix) -> int:
    rows = [list(r) for r in M.rows]
    rank, _ = _rref(M.field, rows)
    return rank


# ---------------------------------------------------------------------------
# Monomial bases
# ---------------------------------------------------------------------------

def _graded_lex_exponents(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """Exponent vectors of total degree ``degree``, lex-descending in the
    first variable, then the second, and so on."""
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for v in combo:
            e[v] += 1
        out.append(tuple(e))
    out.sort(reverse=True)
    return out


class MonomialBasis:
    """A fixed, documented monomial ordering shared by synthesis and files."""

    def __init__(self, name: str, exponents: list[tuple]):
        self.name = name
        self.exponents = exponents
        self.size = len(exponents)
        self.index = {e: i for i, e in enumerate(exponents)}

    def __repr__(self):
        return f"MonomialBasis({self.name}, {self.size})"


QUARTIC4 = MonomialBasis("quartic4", _graded_lex_exponents(4, 4))

_DEG2 = _graded_lex_exponents(4, 2)
BIQUADRATIC44 = MonomialBasis(
    "biquadratic44", [(ex, ey) for ex in _DEG2 for ey in _DEG2]
)

BASES = {"quartic4": QUARTIC4, "biquadratic44": BIQUADRATIC44}


def monomial_values_quartic(F: Field, point) -> list:
    """Values of the 35 quartic monomials at a quadruple of raw values."""
    k1, k2, k3, k4 = point
    pows = [
        [F.one, k1, F.mul(k1, k1), None, None],
        [F.one, k2, F.mul(k2, k2), None, None],
        [F.one, k3, F.mul(k3, k3), None, None],
        [F.one, k4, F.mul(k4, k4), None, None],
    ]
    for row, k in zip(pows, point):
        row[3] = F.mul(row[2], k)
        row[4] = F.mul(row[3], k)
    out = []
    for e in QUARTIC4.exponents:
        v = pows[0][e[0]]
        for idx in (1, 2, 3):
            if e[idx]:
                v = F.mul(v, pows[idx][e[idx]])
        out.append(v)
    return out


def monomial_values_deg2(F: Field, point) -> list:
    """Values of the 10 quadratic monomials at a quadruple of raw values."""
    out = []
    for e in _DEG2:
        v = F.one
        for idx in range(4):
            if e[idx] == 1:
                v = F.mul(v, point[idx])
            elif e[idx] == 2:
                v = F.mul(v, F.mul(point[idx], point[idx]))
        out.append(v)
    return out


def eval_form(F: Field, basis: MonomialBasis, coeffs: list, *points) -> object:
    """Evaluate a form over ``basis`` at raw quadruples.

    ``quartic4`` takes one quadruple; ``biquadratic44`` takes two.
    """
    if basis.name == "quartic4":
        (point,) = points
        return eval_quartic(F, coeffs, point)
    if basis.name == "biquadratic44":
        x, y = points
        return eval_biquadratic(F, coeffs, x, y)
    raise ValueError(f"unknown basis {basis.name!r}")


def eval_quartic(F: Field, coeffs: list, point) -> object:
    if len(coeffs) != QUARTIC4.size:
        raise LengthMismatch("quartic coefficient vector must have 35 entries")
    mono = monomial_values_quartic(F, point)
    acc = F.zero
    for c, m in zip(coeffs, mono):
        if c != F.zero and m != F.zero:
            acc = F.add(acc, F.mul(c, m))
    return acc


def eval_biquadratic(F: Field, coeffs: list, x, y) -> object:
    if len(coeffs) != BIQUADRATIC44.size:
        raise LengthMismatch("biquadratic coefficient vector must have 100 entries")
    qx = monomial_values_deg2(F, x)
    qy = monomial_values_deg2(F, y)
    acc = F.zero
    for i in range(10):
        xi = qx[i]
        if xi == F.zero:
            continue
        row = F.zero
        base = 10 * i
        for j in range(10):
            c = coeffs[base + j]
            if c != F.zero and qy[j] != F.zero:
                row = F.add(row, F.mul(c, qy[j]))
        if row != F.zero:
            acc = F.add(acc, F.mul(xi, row))
    return acc


def biquadratic_values_vector(F: Field, x, y) -> list:
    """The 100 monomial values for a biquadratic sample row."""
    qx = monomial_values_deg2(F, x)
    qy = monomial_values_deg2(F, y)
    out = []
    for a in qx:
        if a == F.zero:
            out.extend([F.zero] * 10)
        else:
            out.extend(F.mul(a, b) if b != F.zero else F.zero for b in qy)
    return out
