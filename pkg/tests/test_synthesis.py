import random

import pytest

from g2kummer.algebra import BIQUADRATIC44, Poly, QUARTIC4
from g2kummer.curve import CurveModel, normal_form_curve, validate
from g2kummer.errors import KernelDimensionUnexpected, NotInSubfield, UnsupportedField
from g2kummer.field import BinaryField, PrimeField, RationalField
from g2kummer.jacobian import add, negate, random_divisor, to_point_pair, working_model
from g2kummer.kummer import KummerPoint, kummer_coords, zero_class_point
from g2kummer.synthesis import (
    BQF_INDEX_PAIRS,
    CONVENTION_TAG,
    FormulaSet,
    apply_delta,
    binary_embedding,
    binary_extension_of,
    crosscheck_b_conversion,
    crosscheck_tau_delta,
    descend_coefficients,
    deserialize_formula_set,
    eval_bqf,
    fingerprint,
    serialize_formula_set,
    synthesize_bqf,
    synthesize_delta,
    synthesize_formula_set,
    synthesize_w_oddchar,
)

F1009 = PrimeField(1009)
B16 = BinaryField(16, 0x1002B)

CURVE_1009 = CurveModel(
    F1009, Poly.from_ints(F1009, [1, 3, 0, 2, 0, 1]), Poly.from_ints(F1009, [1, 1, 0, 1])
)

_DESIGNATED = QUARTIC4.index[(0, 2, 0, 2)]


@pytest.fixture(scope="module")
def delta_1009():
    return synthesize_delta(CURVE_1009, random.Random(100))


@pytest.fixture(scope="module")
def bqf_1009():
    return synthesize_bqf(CURVE_1009, random.Random(101))


def test_delta_fixed_point_at_zero_class(delta_1009):
    z = zero_class_point(F1009)
    img = apply_delta(F1009, delta_1009, z)
    assert img.proportional(z)


def test_delta_fresh_oracle_samples(delta_1009):
    wm = working_model(CURVE_1009)
    rng = random.Random(102)
    for _ in range(200):
        D = random_divisor(wm, rng)
        x = kummer_coords(CURVE_1009, to_point_pair(wm, D)).normalized()
        d2 = kummer_coords(CURVE_1009, to_point_pair(wm, add(wm, D, D))).normalized()
        assert apply_delta(F1009, delta_1009, x).proportional(d2)


def test_delta_canonicalization(delta_1009):
    # the designated monomial coefficient is zero in every coordinate and the
    # first nonzero coefficient of the concatenated vector is one
    for blk in delta_1009:
        assert blk[_DESIGNATED] == 0
    flat = [a for blk in delta_1009 for a in blk]
    first = next(a for a in flat if a != 0)
    assert first == 1


def test_delta_insufficient_samples_raises():
    from g2kummer.synthesis import _delta_samples, _delta_solve, _default_sampler
    from g2kummer.kummer import quartic_from_curve

    wm = working_model(CURVE_1009)
    rng = random.Random(103)
    data = _delta_samples(CURVE_1009, wm, _default_sampler(wm), rng, 20)
    with pytest.raises(KernelDimensionUnexpected):
        _delta_solve(F1009, data, quartic_from_curve(CURVE_1009).vector)


def test_bqf_identities_and_symmetry(bqf_1009):
    wm = working_model(CURVE_1009)
    rng = random.Random(104)
    F = F1009
    for _ in range(100):
        P, Q = random_divisor(wm, rng), random_divisor(wm, rng)
        x = kummer_coords(CURVE_1009, to_point_pair(wm, P)).normalized()
        y = kummer_coords(CURVE_1009, to_point_pair(wm, Q)).normalized()
        w = kummer_coords(CURVE_1009, to_point_pair(wm, add(wm, P, Q))).normalized()
        z = kummer_coords(CURVE_1009, to_point_pair(wm, add(wm, P, negate(wm, Q)))).normalized()
        lam = None
        for (i, j) in BQF_INDEX_PAIRS:
            a, b = i - 1, j - 1
            t = (
                F.mul(w.coords[a], z.coords[a])
                if i == j
                else F.add(F.mul(w.coords[a], z.coords[b]), F.mul(w.coords[b], z.coords[a]))
            )
            val = eval_bqf(F, bqf_1009, i, j, x.coords, y.coords)
            if lam is None and t != 0:
                lam = F.div(val, t)
            if lam is not None:
                assert val == F.mul(lam, t)
    # argument-swap symmetry at the coefficient level
    for p, vec in bqf_1009.items():
        for idx, (ex, ey) in enumerate(BIQUADRATIC44.exponents):
            assert vec[idx] == vec[BIQUADRATIC44.index[(ey, ex)]]


def test_bqf_identity_anchor(bqf_1009):
    # with y = kappa(0): B_ii(x, y) proportional to x_i^2, B_ij to 2 x_i x_j
    wm = working_model(CURVE_1009)
    rng = random.Random(105)
    F = F1009
    zc = zero_class_point(F).coords
    for _ in range(100):
        D = random_divisor(wm, rng)
        x = kummer_coords(CURVE_1009, to_point_pair(wm, D)).normalized().coords
        lam = None
        for (i, j) in BQF_INDEX_PAIRS:
            a, b = i - 1, j - 1
            t = F.mul(x[a], x[a]) if i == j else F.mul(F.from_int(2), F.mul(x[a], x[b]))
            val = eval_bqf(F, bqf_1009, i, j, x, zc)
            if lam is None and t != 0:
                lam = F.div(val, t)
            if lam is not None:
                assert val == F.mul(lam, t)


def test_bqf_normalization(bqf_1009):
    first = next(a for a in bqf_1009[(1, 1)] if a != 0)
    assert first == 1


def test_w_oddchar_properties():
    F = F1009
    h = Poly.from_ints(F, [0, 1])
    g = Poly.from_ints(F, [-1, 0, 1]) * Poly.from_ints(F, [-2, 1]) * Poly.from_ints(F, [-3, 1]) * Poly.from_ints(F, [-5, 1])
    f = (g - h * h).scale(F.inv(F.from_int(4)))
    c = CurveModel(F, f, h)
    from g2kummer.kummer import two_torsion_classes
    from g2kummer.jacobian import from_point_pair

    rng = random.Random(106)
    wm = working_model(c)
    T = two_torsion_classes(c)[0]
    W = synthesize_w_oddchar(c, T, rng)
    W2 = W.mul(W)
    lam = W2.rows[0][0]
    assert lam != 0
    assert all(W2.rows[i][j] == (lam if i == j else 0) for i in range(4) for j in range(4))
    # W * kappa(0) is proportional to kappa(Q)
    img = KummerPoint(F, W.apply([0, 0, 0, 1]))
    assert img.proportional(T.kummer)
    DQ = from_point_pair(wm, T.divisor)
    for _ in range(100):
        D = random_divisor(wm, rng)
        kP = kummer_coords(c, to_point_pair(wm, D))
        kPQ = kummer_coords(c, to_point_pair(wm, add(wm, D, DQ)))
        assert KummerPoint(F, W.apply(list(kP.coords))).proportional(kPQ)


def test_lifted_gf2_delta_descends():
    B1 = BinaryField(1, 0b10)
    c = normal_form_curve(B1, "a", 0, 0, 1)
    delta = synthesize_delta(c, random.Random(107))
    assert all(v in (0, 1) for blk in delta for v in blk)
    big = binary_extension_of(B1)
    assert big.m == 16
    fwd, back = binary_embedding(B1, big)
    assert fwd[0] == 0 and fwd[1] == 1


def test_binary_embedding_homomorphism():
    B4 = BinaryField(2, 0b111)
    big = binary_extension_of(B4)
    fwd, back = binary_embedding(B4, big)
    for a in range(4):
        for b in range(4):
            assert fwd[B4.mul(a, b)] == big.mul(fwd[a], fwd[b])
            assert fwd[a ^ b] == fwd[a] ^ fwd[b]


def test_descend_coefficients_roundtrip():
    B1 = BinaryField(1, 0b10)
    c = normal_form_curve(B1, "a", 0, 0, 1)
    rng = random.Random(108)
    # build a lifted formula set by hand and descend it
    big = binary_extension_of(B1)
    fwd, _ = binary_embedding(B1, big)
    cl = CurveModel(big, Poly(big, [fwd[c.f[i]] for i in range(7)]), Poly(big, [fwd[c.h[i]] for i in range(4)]))
    fs_big = synthesize_formula_set(cl, rng, with_w=False)
    fs_small = descend_coefficients(fs_big, B1)
    assert fs_small.curve == c
    assert fs_small.fingerprint == fingerprint(c)
    assert all(v in (0, 1) for blk in fs_small.delta for v in blk)
    # identity descent
    assert descend_coefficients(fs_small, B1) is fs_small
    with pytest.raises(NotInSubfield):
        descend_coefficients(fs_big, BinaryField(3, 0b1011))


def test_small_prime_fields_unsupported():
    F5 = PrimeField(5)
    c = CurveModel(F5, Poly.from_ints(F5, [2, 1, 0, 0, 0, 1]), Poly(F5, []))
    with pytest.raises(UnsupportedField):
        synthesize_delta(c, random.Random(0))


def test_determinism_and_round_trip():
    fs1 = synthesize_formula_set(CURVE_1009, random.Random(2024), with_w=True)
    fs2 = synthesize_formula_set(CURVE_1009, random.Random(2024), with_w=True)
    t1, t2 = serialize_formula_set(fs1), serialize_formula_set(fs2)
    assert t1 == t2
    fs3 = deserialize_formula_set(t1)
    assert fs3.delta == fs1.delta and fs3.bqf == fs1.bqf
    assert serialize_formula_set(fs3) == t1
    assert fs1.fingerprint == fingerprint(CURVE_1009)


def test_stale_fingerprint_rejected():
    fs = FormulaSet(CURVE_1009, fingerprint(CURVE_1009),
                    tuple((0,) * 35 for _ in range(4)),
                    {p: (0,) * 100 for p in BQF_INDEX_PAIRS}, [], CONVENTION_TAG)
    text = serialize_formula_set(fs)
    tampered = text.replace("f 1,3,0,2,0,1,0", "f 2,3,0,2,0,1,0")
    with pytest.raises(ValueError):
        deserialize_formula_set(tampered)


def test_crosschecks_pass_odd_char(delta_1009, bqf_1009):
    rng = random.Random(109)
    rep = crosscheck_tau_delta(CURVE_1009, rng, npoints=60, delta=delta_1009)
    assert rep["ok"] and rep["points"] == 60
    rep = crosscheck_b_conversion(CURVE_1009, rng, npoints=60, bqf=bqf_1009)
    assert rep["ok"]


def test_crosscheck_h0_degenerates_to_scaling():
    c = CurveModel(F1009, Poly.from_ints(F1009, [1, 1, 0, 0, 0, 1]), Poly(F1009, []))
    rng = random.Random(110)
    rep = crosscheck_tau_delta(c, rng, npoints=30)
    assert rep["ok"]
    rep2 = crosscheck_b_conversion(c, rng, npoints=30)
    assert rep2["ok"]


def test_rational_synthesis_modular_route():
    from g2kummer.corpus import default_corpus

    c = dict(default_corpus())["rational_small"]
    rng = random.Random(111)
    delta = synthesize_delta(c, rng, check=10)
    wm = working_model(c)
    from g2kummer.jacobian import small_rational_sampler

    sampler = small_rational_sampler(wm)
    QQ = RationalField()
    for _ in range(20):
        D = sampler(rng)
        x = kummer_coords(c, to_point_pair(wm, D)).normalized()
        d2 = kummer_coords(c, to_point_pair(wm, add(wm, D, D))).normalized()
        assert apply_delta(QQ, delta, x).proportional(d2)
