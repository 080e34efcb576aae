import random

import pytest

from g2kummer.algebra import Poly
from g2kummer.curve import CurveModel, normal_form_curve
from g2kummer.errors import FormulaSetMissing
from g2kummer.field import BinaryField, PrimeField
from g2kummer.jacobian import add, random_divisor, scalar_mul, to_point_pair, working_model
from g2kummer.kummer import (
    KummerPoint,
    kummer_coords,
    on_surface,
    quartic_from_curve,
    two_torsion_classes,
    w_matrix_char2,
    zero_class_point,
)
from g2kummer.ladder import bench, ladder, make_context, xadd, xdbl
from g2kummer.synthesis import synthesize_formula_set

F1009 = PrimeField(1009)
B16 = BinaryField(16, 0x1002B)

CURVE = CurveModel(F1009, Poly.from_ints(F1009, [1, 3, 0, 2, 0, 1]), Poly.from_ints(F1009, [1, 1]))


@pytest.fixture(scope="module")
def ctx():
    fs = synthesize_formula_set(CURVE, random.Random(200), with_w=False)
    return make_context(CURVE, fs, check_pivots=True, check_surface=True)


@pytest.fixture(scope="module")
def wm():
    return working_model(CURVE)


def kap(wm, D):
    return kummer_coords(CURVE, to_point_pair(wm, D)).normalized()


def test_fingerprint_mismatch_rejected(ctx):
    other = CurveModel(F1009, Poly.from_ints(F1009, [2, 3, 0, 2, 0, 1]), Poly.from_ints(F1009, [1, 1]))
    with pytest.raises(FormulaSetMissing):
        make_context(other, ctx.formulas)


def test_xdbl_special_points(ctx, wm):
    z = zero_class_point(F1009)
    assert xdbl(ctx, z).proportional(z)
    rng = random.Random(201)
    for _ in range(100):
        D = random_divisor(wm, rng)
        x = kap(wm, D)
        expect = kap(wm, add(wm, D, D))
        assert xdbl(ctx, x).proportional(expect)


def test_xdbl_kills_two_torsion():
    F = F1009
    h = Poly.from_ints(F, [0, 1])
    g = Poly.from_ints(F, [-1, 0, 1]) * Poly.from_ints(F, [-2, 1]) * Poly.from_ints(F, [-3, 1]) * Poly.from_ints(F, [-5, 1])
    f = (g - h * h).scale(F.inv(F.from_int(4)))
    c = CurveModel(F, f, h)
    fs = synthesize_formula_set(c, random.Random(202), with_w=False)
    cctx = make_context(c, fs)
    for T in two_torsion_classes(c)[:4]:
        img = xdbl(cctx, T.kummer)
        assert img.proportional(zero_class_point(F))


def test_xadd_degenerate_arguments(ctx, wm):
    rng = random.Random(203)
    z = zero_class_point(F1009)
    for _ in range(50):
        D = random_divisor(wm, rng)
        x = kap(wm, D)
        # difference kappa(0): P = Q, so the sum is a doubling
        assert xadd(ctx, x, x, z).proportional(xdbl(ctx, x))
        # Q = 0: P + 0 = P (difference is P itself)
        assert xadd(ctx, x, z, x).proportional(x)


def test_xadd_oracle_triples(ctx, wm):
    rng = random.Random(204)
    from g2kummer.jacobian import negate

    for _ in range(200):
        P, Q = random_divisor(wm, rng), random_divisor(wm, rng)
        x, y = kap(wm, P), kap(wm, Q)
        w = kap(wm, add(wm, P, Q))
        z = kap(wm, add(wm, P, negate(wm, Q)))
        assert xadd(ctx, x, y, z).proportional(w)


def test_ladder_small_scalars(ctx, wm):
    rng = random.Random(205)
    D = random_divisor(wm, rng)
    x = kap(wm, D)
    assert ladder(ctx, x, 0).proportional(zero_class_point(F1009))
    assert ladder(ctx, x, 1).proportional(x)
    assert ladder(ctx, x, 2).proportional(xdbl(ctx, x))


def test_ladder_vs_oracle(ctx, wm):
    rng = random.Random(206)
    for _ in range(25):
        D = random_divisor(wm, rng)
        n = rng.randrange(1, 1 << 30)
        x = kap(wm, D)
        expect = kap(wm, scalar_mul(wm, D, n))
        assert ladder(ctx, x, n).proportional(expect)


def test_ladder_chain_consistency(ctx, wm):
    rng = random.Random(207)
    D = random_divisor(wm, rng)
    x = kap(wm, D)
    for _ in range(50):
        m, n = rng.randrange(1, 1 << 12), rng.randrange(1, 1 << 12)
        km, kn = ladder(ctx, x, m), ladder(ctx, x, n)
        kd = ladder(ctx, x, abs(m - n)) if m != n else zero_class_point(F1009)
        assert xadd(ctx, km, kn, kd).proportional(ladder(ctx, x, m + n))


def test_char2_translation_compatible_with_doubling():
    c = normal_form_curve(B16, "c", 3, 7, 11)
    fs = synthesize_formula_set(c, random.Random(208), with_w=True)
    cctx = make_context(c, fs)
    wmc = working_model(c)
    rng = random.Random(209)
    classes = two_torsion_classes(c)
    assert classes
    for T in classes:
        W = w_matrix_char2(c, T)
        for _ in range(30):
            D = random_divisor(wmc, rng)
            x = kummer_coords(c, to_point_pair(wmc, D)).normalized()
            wx = KummerPoint(B16, W.apply(list(x.coords)))
            assert xdbl(cctx, wx).proportional(xdbl(cctx, x))


def test_surface_invariant_in_debug_mode(ctx, wm):
    # check_surface=True in the fixture: a full ladder exercises the asserts
    rng = random.Random(210)
    D = random_divisor(wm, rng)
    x = kap(wm, D)
    q = quartic_from_curve(CURVE)
    out = ladder(ctx, x, 12345)
    assert on_surface(q, out)


def test_bench_deterministic_counts(ctx):
    rng = random.Random(211)
    fast = make_context(CURVE, ctx.formulas)
    rep1 = bench(fast, random.Random(1), trials=1, bits=24)
    rep2 = bench(fast, random.Random(2), trials=1, bits=24)
    assert rep1["xdbl"] == rep2["xdbl"]
    assert rep1["xadd"] == rep2["xadd"]
    assert rep1["ladder_total"] == rep2["ladder_total"]
    assert rep1["inversions_per_step"] == 0
    assert rep1["ladder_total"]["inv"] == 0


def test_bench_counts_independent_of_bit_pattern():
    # one doubling and one differential addition per bit, whatever the scalar
    fs = synthesize_formula_set(CURVE, random.Random(200), with_w=False)
    fast = make_context(CURVE, fs)
    from g2kummer import field as field_mod
    from g2kummer.field import OpCounter
    from g2kummer.jacobian import working_model as wmf

    wm = wmf(CURVE)
    rng = random.Random(212)
    x = kummer_coords(CURVE, to_point_pair(wm, random_divisor(wm, rng))).normalized()
    n = 0b1011011101010011
    rev = int(bin(n)[2:][::-1], 2)
    counts = []
    for scalar in (n, rev | (1 << (n.bit_length() - 1))):
        ctr = OpCounter()
        field_mod.Field.counter = ctr
        try:
            ladder(fast, x, scalar)
        finally:
            field_mod.Field.counter = None
        counts.append((ctr.mul, ctr.inv, scalar.bit_length()))
    assert counts[0][2] == counts[1][2]
    assert counts[0][0] == counts[1][0]
    assert counts[0][1] == counts[1][1] == 0
