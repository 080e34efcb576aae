import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from g2kummer.algebra import (
    BIQUADRATIC44,
    Matrix,
    Poly,
    QUARTIC4,
    eval_biquadratic,
    eval_form,
    eval_quartic,
    irreducible_quadratic_factors,
    matrix_rank,
    poly_ops,
    roots,
    solve_kernel,
)
from g2kummer.errors import DivisionByZero, LengthMismatch, UnsupportedField
from g2kummer.field import BinaryField, PrimeField, RationalField

F7 = PrimeField(7)
F1009 = PrimeField(1009)
B8 = BinaryField(3, 0b1011)


def P(field, *ints):
    return Poly.from_ints(field, ints)


def test_poly_ops_examples():
    x = Poly.x(F7)
    one = Poly.const(F7, 1)
    g = poly_ops(x * x - one, x - one, "gcd")
    assert g == x - one  # monic
    q, r = poly_ops(x * x * x, x * x, "divrem")
    assert q == x and r.is_zero()
    assert poly_ops(x, one, "add") == x + one
    assert poly_ops(x, x, "mul") == x * x


def test_gcd_squarefree_sextic():
    # fixed random-looking squarefree sextic over GF(1009): gcd(f, f') = 1
    f = P(F1009, 101, 7, 0, 433, 12, 999, 1)
    g = f.gcd(f.deriv())
    assert g.degree == 0


def test_divrem_division_by_zero():
    with pytest.raises(DivisionByZero):
        Poly.x(F7).divrem(Poly(F7, []))


coef = st.integers(min_value=0, max_value=1008)


@given(st.lists(coef, min_size=1, max_size=8), st.lists(coef, min_size=1, max_size=8))
@settings(max_examples=150, deadline=None)
def test_divrem_property(ac, bc):
    a, b = Poly(F1009, ac), Poly(F1009, bc)
    if b.is_zero():
        return
    q, r = a.divrem(b)
    assert q * b + r == a
    assert r.is_zero() or r.degree < b.degree


@given(st.lists(coef, min_size=1, max_size=6), st.lists(coef, min_size=1, max_size=6))
@settings(max_examples=100, deadline=None)
def test_xgcd_property(ac, bc):
    a, b = Poly(F1009, ac), Poly(F1009, bc)
    if a.is_zero() and b.is_zero():
        return
    g, s, t = a.xgcd(b)
    assert s * a + t * b == g
    if not a.is_zero():
        assert (a % g).is_zero()


def test_roots_examples():
    x = Poly.x(F7)
    assert roots(x * x - Poly.const(F7, 1)) == [(1, 1), (6, 1)]
    xb = Poly.x(B8)
    assert roots(xb * xb + xb) == [(0, 1), (1, 1)]
    with pytest.raises(UnsupportedField):
        roots(Poly.const(RationalField(), RationalField().one))


def test_roots_random_cubics_vs_exhaustive():
    rng = random.Random(31)
    for _ in range(10):
        p = Poly(F1009, [F1009.random(rng) for _ in range(3)] + [1])
        got = dict(roots(p))
        brute = [v for v in range(1009) if p(v) == 0]
        assert sorted(got) == brute


@pytest.mark.parametrize("F", [PrimeField(13), BinaryField(4, 0b10011)],
                         ids=lambda F: F.spec_string())
def test_roots_with_multiplicity_small_fields(F):
    rng = random.Random(F.order())
    x = Poly.x(F)
    for _ in range(20):
        r1, r2 = F.random(rng), F.random(rng)
        p = (x - Poly.const(F, r1)) * (x - Poly.const(F, r1)) * (x - Poly.const(F, r2))
        got = dict(roots(p))
        if r1 == r2:
            assert got == {r1: 3}
        else:
            assert got == {r1: 2, r2: 1}


def test_irreducible_quadratic_factors():
    x = Poly.x(F7)
    one = Poly.const(F7, 1)
    # x^2 + 1 is irreducible over GF(7) (7 = 3 mod 4); x^2 + x + 1 splits
    p = (x * x - one) * (x * x + one) * (x * x + x + one)
    fac = irreducible_quadratic_factors(p)
    assert fac == [x * x + one]


def test_kernel_examples():
    assert solve_kernel(Matrix.identity(F1009, 4)) == []
    Z = Matrix(F1009, [[0] * 5 for _ in range(3)])
    basis = solve_kernel(Z)
    assert len(basis) == 5
    for v in basis:
        nz = [a for a in v if a != 0]
        assert nz[0] == 1


def test_kernel_planted_200x150():
    rng = random.Random(9)
    p = 1009
    v = [F1009.random(rng) for _ in range(150)]
    while v[-1] == 0:
        v[-1] = F1009.random(rng)
    inv_last = pow(v[-1], -1, p)
    proj = []
    for i in range(149):
        row = [0] * 150
        row[i] = 1
        row[149] = -v[i] * inv_last % p
        proj.append(row)
    C = [[F1009.random(rng) for _ in range(149)] for _ in range(200)]
    M = Matrix(
        F1009,
        [[sum(C[i][k] * proj[k][j] for k in range(149)) % p for j in range(150)] for i in range(200)],
    )
    ker = solve_kernel(M)
    assert len(ker) == 1
    kv = ker[0]
    assert all(sum(M.rows[i][j] * kv[j] for j in range(150)) % p == 0 for i in range(200))
    ratio = kv[0] * pow(v[0], -1, p) % p
    assert all(kv[j] == ratio * v[j] % p for j in range(150))
    assert matrix_rank(M) + len(ker) == 150


def test_kernel_rank_nullity_random():
    rng = random.Random(4)
    for F in (F1009, BinaryField(4, 0b10011)):
        M = Matrix(F, [[F.random(rng) for _ in range(12)] for _ in range(7)])
        ker = solve_kernel(M)
        assert matrix_rank(M) + len(ker) == 12
        for v in ker:
            assert all(a == F.zero for a in M.apply(v))


def test_matrix_inverse():
    rng = random.Random(8)
    while True:
        M = Matrix(F1009, [[F1009.random(rng) for _ in range(4)] for _ in range(4)])
        if matrix_rank(M) == 4:
            break
    assert M.mul(M.inverse()) == Matrix.identity(F1009, 4)


def test_basis_shapes_and_order():
    assert QUARTIC4.size == 35
    assert BIQUADRATIC44.size == 100
    assert QUARTIC4.exponents[0] == (4, 0, 0, 0)
    assert QUARTIC4.exponents[-1] == (0, 0, 0, 4)
    # graded-lex: k1 > k2 > k3 > k4, exponent vectors descending
    assert QUARTIC4.exponents.index((3, 1, 0, 0)) == 1
    assert BIQUADRATIC44.exponents[0] == ((2, 0, 0, 0), (2, 0, 0, 0))
    assert BIQUADRATIC44.exponents[1] == ((2, 0, 0, 0), (1, 1, 0, 0))
    assert BIQUADRATIC44.exponents[10] == ((1, 1, 0, 0), (2, 0, 0, 0))


def test_eval_form_examples():
    assert eval_quartic(F1009, [0] * 35, (1, 2, 3, 4)) == 0
    coeffs = [0] * 35
    coeffs[QUARTIC4.index[(0, 0, 0, 4)]] = 1
    assert eval_form(F1009, QUARTIC4, coeffs, (0, 0, 0, 1)) == 1
    with pytest.raises(LengthMismatch):
        eval_quartic(F1009, [1] * 34, (0, 0, 0, 1))


def test_eval_form_vs_naive_oracle():
    rng = random.Random(77)
    cvec = [F1009.random(rng) for _ in range(35)]
    pt = tuple(F1009.random(rng) for _ in range(4))
    naive = 0
    for c, e in zip(cvec, QUARTIC4.exponents):
        t = c
        for idx in range(4):
            t = t * pow(pt[idx], e[idx], 1009) % 1009
        naive = (naive + t) % 1009
    assert eval_quartic(F1009, cvec, pt) == naive
    cb = [F1009.random(rng) for _ in range(100)]
    ptx = tuple(F1009.random(rng) for _ in range(4))
    pty = tuple(F1009.random(rng) for _ in range(4))
    naive = 0
    for c, (ex, ey) in zip(cb, BIQUADRATIC44.exponents):
        t = c
        for idx in range(4):
            t = t * pow(ptx[idx], ex[idx], 1009) % 1009
            t = t * pow(pty[idx], ey[idx], 1009) % 1009
        naive = (naive + t) % 1009
    assert eval_form(F1009, BIQUADRATIC44, cb, ptx, pty) == naive
