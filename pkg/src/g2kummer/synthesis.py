"""Per-curve reconstruction of the unprinted formula families.

For a fixed curve the duplication quartics, the ten biquadratic forms, and
the odd-characteristic translation matrices are each determined (up to the
documented normalizations) by their defining identities

    delta(K(P))            ~  K(2P)
    B_ij(K(P), K(Q))       =  lam * (w_i z_j + w_j z_i)   (i < j)
    B_ii(K(P), K(Q))       =  lam * w_i z_i               (diagonal convention)
    W  * K(P)              ~  K(P + Q),    Q of order 2,

with w, z Kummer coordinates of P+Q and P-Q.  Sampling divisor classes from
the Cantor oracle and solving the resulting exact linear systems recovers
the coefficient vectors; every solve asserts its expected kernel dimension
and every synthesized object is re-checked on fresh oracle samples before it
is returned.

Normalizations: adding multiples of the defining quartic to a duplication
coordinate changes nothing on the surface, so each coordinate's coefficient
on the designated monomial k2^2 k4^2 is forced to zero and the first nonzero
coefficient of the concatenated vector is scaled to one.  The biquadratic
family is scaled so the first nonzero coefficient of B_11 is one.

Field routing: tiny binary fields are lifted to an extension (degree 16 for
GF(2)) where generic samples exist, and the coefficients are descended back;
the rationals are handled by solving modulo one or more 62-bit primes,
rational reconstruction, and an exact verification over Q.  The sampling and
solving pipeline itself is field-independent.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .algebra import (
    BIQUADRATIC44,
    Matrix,
    Poly,
    QUARTIC4,
    biquadratic_values_vector,
    eval_biquadratic,
    eval_quartic,
    monomial_values_quartic,
    solve_kernel,
    _rref,
)
from .curve import CurveModel, simplified_model, simplified_kummer_matrix, transform_pair, validate
from .errors import (
    CrossCheckFailed,
    KernelDimensionUnexpected,
    NotInSubfield,
    UnsupportedDivisor,
    UnsupportedField,
)
from .field import BinaryField, Field, PrimeField, RationalField, gf2_poly_is_irreducible, is_prime
from .jacobian import (
    WorkingModel,
    add,
    negate,
    random_divisor,
    small_rational_sampler,
    to_point_pair,
    working_model,
)
from .kummer import (
    KummerPoint,
    TwoTorsionData,
    kummer_coords,
    quartic_from_curve,
    two_torsion_classes,
    w_matrix_char2,
)

CONVENTION_TAG = "B_ii=w_i*z_i"

BQF_INDEX_PAIRS = [(1, 1), (1, 2), (1, 3), (1, 4), (2, 2), (2, 3), (2, 4), (3, 3), (3, 4), (4, 4)]

_DESIGNATED = QUARTIC4.index[(0, 2, 0, 2)]  # k2^2 k4^2, leading monomial of K2*k4^2


def fingerprint(c: CurveModel) -> str:
    """Hash of field spec, curve coefficients, and the diagonal convention."""
    F = c.field
    text = "|".join(
        [
            F.spec_string(),
            ",".join(F.to_str(c.f[i]) for i in range(7)),
            ",".join(F.to_str(c.h[i]) for i in range(4)),
            CONVENTION_TAG,
        ]
    )
    return hashlib.sha256(text.encode()).hexdigest()[:16]


@dataclass
class FormulaSet:
    """Synthesized per-curve formula data, serializable as a KFS1 file."""

    curve: CurveModel
    fingerprint: str
    delta: tuple  # four 35-coefficient vectors over QUARTIC4
    bqf: dict  # (i, j) with i <= j -> 100-coefficient vector over BIQUADRATIC44
    w: list  # (class label, Matrix) pairs
    convention: str = CONVENTION_TAG


# ---------------------------------------------------------------------------
# Oracle sampling
# ---------------------------------------------------------------------------

def _default_sampler(wm: WorkingModel):
    if wm.field.order() is None:
        return small_rational_sampler(wm)
    return lambda rng: random_divisor(wm, rng)


def _kappa_of(c: CurveModel, wm: WorkingModel, D) -> KummerPoint:
    return kummer_coords(c, to_point_pair(wm, D)).normalized()


def _delta_samples(c, wm, sampler, rng, n):
    """Pairs (kappa(P), kappa(2P)), both normalized; degenerates resampled."""
    out = []
    guard = 0
    while len(out) < n:
        guard += 1
        if guard > 40 * n:
            raise KernelDimensionUnexpected("sampling kept hitting degenerate classes")
        D = sampler(rng)
        try:
            x = _kappa_of(c, wm, D)
            d = _kappa_of(c, wm, add(wm, D, D))
        except UnsupportedDivisor:
            continue
        out.append((x.coords, d.coords))
    return out


def _bqf_samples(c, wm, sampler, rng, n):
    """Quadruples (x, y, w, z) = kappa of (P, Q, P+Q, P-Q), normalized,
    with k1 != 0 on all four (generic affine classes)."""
    F = c.field
    out = []
    guard = 0
    while len(out) < n:
        guard += 1
        if guard > 60 * n:
            raise KernelDimensionUnexpected("sampling kept hitting degenerate classes")
        P = sampler(rng)
        Q = sampler(rng)
        try:
            x = _kappa_of(c, wm, P)
            y = _kappa_of(c, wm, Q)
            w = _kappa_of(c, wm, add(wm, P, Q))
            z = _kappa_of(c, wm, add(wm, P, negate(wm, Q)))
        except UnsupportedDivisor:
            continue
        if any(v.coords[0] == F.zero for v in (x, y, w, z)):
            continue
        out.append((x.coords, y.coords, w.coords, z.coords))
    return out


# ---------------------------------------------------------------------------
# Duplication quartics
# ---------------------------------------------------------------------------

def _delta_solve(F: Field, samples, quartic_vec):
    """Solve the homogeneous duplication system after eliminating the
    per-sample scales; returns the canonical four coefficient vectors."""
    rows = []
    zero = F.zero
    for x, d in samples:
        mono = monomial_values_quartic(F, x)
        r = next(i for i in range(4) if d[i] != zero)
        for i in range(4):
            if i == r:
                continue
            row = [zero] * 140
            dr, di = d[r], F.neg(d[i])
            base_i, base_r = 35 * i, 35 * r
            for k, mv in enumerate(mono):
                if mv != zero:
                    row[base_i + k] = F.mul(mv, dr)
                    row[base_r + k] = F.mul(mv, di)
            rows.append(row)
    kernel = solve_kernel(Matrix(F, rows))
    if len(kernel) != 5:
        raise KernelDimensionUnexpected(
            f"duplication kernel has dimension {len(kernel)}, expected 5"
        )
    # cancel the quartic multiples: zero each block's designated coefficient
    reduced = []
    for v in kernel:
        w = list(v)
        for blk in range(4):
            co = w[35 * blk + _DESIGNATED]
            if co != zero:
                for k in range(35):
                    w[35 * blk + k] = F.sub(w[35 * blk + k], F.mul(co, quartic_vec[k]))
        if any(a != zero for a in w):
            reduced.append(w)
    if not reduced:
        raise KernelDimensionUnexpected("kernel contained only quartic multiples")
    # all reduced vectors must be proportional; take the first, scale to 1
    v0 = reduced[0]
    piv = next(i for i, a in enumerate(v0) if a != zero)
    inv = F.inv(v0[piv])
    v0 = [F.mul(inv, a) for a in v0]
    for v in reduced[1:]:
        lam = v[piv]
        for i in range(140):
            if v[i] != F.mul(lam, v0[i]):
                raise KernelDimensionUnexpected("kernel is wider than scale + quartic multiples")
    return tuple(tuple(v0[35 * i : 35 * (i + 1)]) for i in range(4))


def apply_delta(F: Field, delta, k: KummerPoint) -> KummerPoint:
    return KummerPoint(F, [eval_quartic(F, list(d), k.coords) for d in delta])


def _fresh_check_delta(c, wm, sampler, rng, delta, n):
    F = c.field
    done = 0
    while done < n:
        D = sampler(rng)
        try:
            x = _kappa_of(c, wm, D)
            d2 = _kappa_of(c, wm, add(wm, D, D))
        except UnsupportedDivisor:
            continue
        if not apply_delta(F, delta, x).proportional(d2):
            raise CrossCheckFailed("duplication self-check failed on a fresh sample")
        done += 1


def synthesize_delta(c: CurveModel, rng, samples: int = 105, wm=None, sampler=None, check: int = 24):
    """The four duplication quartics of the curve, canonically normalized.

    Needs enough samples that the only kernel directions are the global
    scale and one quartic multiple per coordinate (dimension five); on
    failure the sample count is doubled twice before giving up."""
    F = c.field
    route = _route_field(F)
    if route == "lift":
        return _lifted(c, rng, lambda cl, rl, wml, sl: synthesize_delta(cl, rl, samples, wml, sl, check))
    if route == "modular":
        return _modular_delta(c, rng, samples, check)
    if wm is None:
        wm = working_model(c)
    if sampler is None:
        sampler = _default_sampler(wm)
    qvec = quartic_from_curve(c).vector
    n = samples
    last = None
    while n <= 4 * samples:
        data = _delta_samples(c, wm, sampler, rng, n)
        try:
            delta = _delta_solve(F, data, qvec)
            _fresh_check_delta(c, wm, sampler, rng, delta, check)
            return delta
        except KernelDimensionUnexpected as exc:
            last = exc
            n *= 2
    raise last


# ---------------------------------------------------------------------------
# Biquadratic forms
# ---------------------------------------------------------------------------

def _bqf_targets(F: Field, w, z):
    """The ten target values w_i z_j + w_j z_i (i < j) and w_i z_i."""
    out = {}
    for (i, j) in BQF_INDEX_PAIRS:
        a, b = i - 1, j - 1
        if i == j:
            out[(i, j)] = F.mul(w[a], z[a])
        else:
            out[(i, j)] = F.add(F.mul(w[a], z[b]), F.mul(w[b], z[a]))
    return out


def _bqf_solve(F: Field, samples):
    """Stage-one pair kernel for (B11, B12), then simultaneous right-hand
    sides for the remaining eight forms."""
    zero = F.zero
    monos = [biquadratic_values_vector(F, x, y) for (x, y, _w, _z) in samples]
    targets = [_bqf_targets(F, w, z) for (_x, _y, w, z) in samples]
    # stage 1: B11(x,y) * t12 - B12(x,y) * t11 = 0
    rows = []
    for mono, tg in zip(monos, targets):
        t11, t12 = tg[(1, 1)], tg[(1, 2)]
        row = [F.mul(mv, t12) for mv in mono] + [F.neg(F.mul(mv, t11)) for mv in mono]
        rows.append(row)
    kernel = solve_kernel(Matrix(F, rows))
    if len(kernel) != 1:
        raise KernelDimensionUnexpected(
            f"pair kernel for (B11, B12) has dimension {len(kernel)}, expected 1"
        )
    v = kernel[0]
    c11, c12 = list(v[:100]), list(v[100:])
    piv = next((i for i, a in enumerate(c11) if a != zero), None)
    if piv is None:
        raise KernelDimensionUnexpected("B11 came out identically zero")
    inv = F.inv(c11[piv])
    c11 = [F.mul(inv, a) for a in c11]
    c12 = [F.mul(inv, a) for a in c12]
    # stage 2: per sample, lam = B11(x,y)/t11; solve M c_ij = lam * t_ij
    rest = [(i, j) for (i, j) in BQF_INDEX_PAIRS if (i, j) not in ((1, 1), (1, 2))]
    aug = []
    for mono, tg in zip(monos, targets):
        b11 = zero
        for cv, mv in zip(c11, mono):
            if cv != zero and mv != zero:
                b11 = F.add(b11, F.mul(cv, mv))
        lam_num = b11  # lam = b11 / t11
        inv_t11 = F.inv(tg[(1, 1)])
        lam = F.mul(lam_num, inv_t11)
        aug.append(list(mono) + [F.mul(lam, tg[p]) for p in rest])
    rank, pivots = _rref(F, aug, 100)
    if rank != 100:
        raise KernelDimensionUnexpected(f"monomial matrix rank {rank}, expected 100")
    for i in range(rank, len(aug)):
        if any(a != zero for a in aug[i][100:]):
            raise KernelDimensionUnexpected("inconsistent biquadratic system")
    forms = {(1, 1): tuple(c11), (1, 2): tuple(c12)}
    for t, p in enumerate(rest):
        vec = [zero] * 100
        for rix, col in enumerate(pivots):
            vec[col] = aug[rix][100 + t]
        forms[p] = tuple(vec)
    return forms


def eval_bqf(F: Field, forms, i: int, j: int, x, y):
    return eval_biquadratic(F, list(forms[(min(i, j), max(i, j))]), x, y)


def _fresh_check_bqf(c, wm, sampler, rng, forms, n):
    F = c.field
    done = 0
    while done < n:
        P, Q = sampler(rng), sampler(rng)
        try:
            x = _kappa_of(c, wm, P)
            y = _kappa_of(c, wm, Q)
            w = _kappa_of(c, wm, add(wm, P, Q))
            z = _kappa_of(c, wm, add(wm, P, negate(wm, Q)))
        except UnsupportedDivisor:
            continue
        tg = _bqf_targets(F, w.coords, z.coords)
        lam = None
        for p in BQF_INDEX_PAIRS:
            val = eval_bqf(F, forms, p[0], p[1], x.coords, y.coords)
            if lam is None:
                if tg[p] == F.zero:
                    if val != F.zero:
                        raise CrossCheckFailed("biquadratic self-check failed (zero target)")
                    continue
                lam = F.div(val, tg[p])
            if val != F.mul(lam, tg[p]):
                raise CrossCheckFailed("biquadratic self-check failed on a fresh pair")
        done += 1


def synthesize_bqf(c: CurveModel, rng, samples: int = 300, wm=None, sampler=None, check: int = 24):
    """The ten biquadratic forms, scaled so B11 starts with coefficient one.

    The diagonal forms satisfy B_ii = w_i z_i (halved relative to the i = j
    specialization of the off-diagonal identity), which stays nonzero in
    characteristic 2.  The staged solve needs roughly 220 samples to reach
    full rank; the default of 300 keeps a safety margin."""
    F = c.field
    route = _route_field(F)
    if route == "lift":
        return _lifted(c, rng, lambda cl, rl, wml, sl: synthesize_bqf(cl, rl, samples, wml, sl, check))
    if route == "modular":
        return _modular_bqf(c, rng, samples, check)
    if wm is None:
        wm = working_model(c)
    if sampler is None:
        sampler = _default_sampler(wm)
    n = max(samples, 220)
    last = None
    while n <= 4 * max(samples, 220):
        data = _bqf_samples(c, wm, sampler, rng, n)
        try:
            forms = _bqf_solve(F, data)
            _fresh_check_bqf(c, wm, sampler, rng, forms, check)
            return forms
        except KernelDimensionUnexpected as exc:
            last = exc
            n *= 2
    raise last


# ---------------------------------------------------------------------------
# Odd-characteristic translation matrices
# ---------------------------------------------------------------------------

def synthesize_w_oddchar(c: CurveModel, T: TwoTorsionData, rng, samples: int = 24, wm=None, sampler=None):
    """Translation matrix for a two-torsion class, by exact interpolation.

    Solves W * kappa(P) ~ kappa(P+Q) over the samples; asserts a
    one-dimensional kernel and W^2 proportional to the identity."""
    F = c.field
    if F.characteristic() == 2:
        raise UnsupportedField("characteristic 2 uses the transcribed matrix")
    if wm is None:
        wm = working_model(c)
    if sampler is None:
        sampler = _default_sampler(wm)
    from .jacobian import from_point_pair

    DQ = from_point_pair(wm, T.divisor)
    zero = F.zero
    n = samples
    while True:
        rows = []
        got = 0
        guard = 0
        while got < n:
            guard += 1
            if guard > 40 * n:
                raise KernelDimensionUnexpected("translation sampling kept degenerating")
            D = sampler(rng)
            try:
                x = _kappa_of(c, wm, D).coords
                d = _kappa_of(c, wm, add(wm, D, DQ)).coords
            except UnsupportedDivisor:
                continue
            r = next(i for i in range(4) if d[i] != zero)
            for i in range(4):
                if i == r:
                    continue
                row = [zero] * 16
                for k in range(4):
                    if x[k] != zero:
                        row[4 * i + k] = F.mul(x[k], d[r])
                        row[4 * r + k] = F.neg(F.mul(x[k], d[i]))
                rows.append(row)
            got += 1
        kernel = solve_kernel(Matrix(F, rows))
        if len(kernel) == 1:
            break
        if n >= 8 * samples:
            raise KernelDimensionUnexpected(
                f"translation kernel has dimension {len(kernel)}, expected 1"
            )
        n *= 2
    v = kernel[0]
    W = Matrix(F, [v[4 * i : 4 * (i + 1)] for i in range(4)])
    W2 = W.mul(W)
    lam = next((W2.rows[i][i] for i in range(4) if W2.rows[i][i] != zero), None)
    ok = lam is not None and all(
        W2.rows[i][j] == (lam if i == j else zero) for i in range(4) for j in range(4)
    )
    if not ok:
        raise KernelDimensionUnexpected("synthesized translation is not an involution")
    return W


# ---------------------------------------------------------------------------
# Field routing: lifting tiny binary fields, modular route for Q
# ---------------------------------------------------------------------------

def _route_field(F: Field) -> str:
    if isinstance(F, RationalField):
        return "modular"
    if isinstance(F, BinaryField) and F.m < 13:
        return "lift"
    if isinstance(F, PrimeField) and F.p < 257:
        raise UnsupportedField(
            "synthesis needs a larger prime field (no odd-prime extension support)"
        )
    return "direct"


def binary_extension_of(F: BinaryField) -> BinaryField:
    """A canonical extension field with at least 2^13 elements (degree 16
    whenever the base degree divides 16, else the smallest admissible
    multiple); the modulus is the first irreducible odd bit-pattern."""
    m = F.m
    if 16 % m == 0:
        target = 16
    else:
        target = m
        while target < 13:
            target += m
    mod = (1 << target) | 1
    while not gf2_poly_is_irreducible(mod):
        mod += 2
    return BinaryField(target, mod)


def binary_embedding(sub: BinaryField, big: BinaryField):
    """Maps (embed, project) between GF(2^k) and a canonical copy inside
    GF(2^m); the image of the subfield generator is the root of the subfield
    modulus with the smallest bit-pattern."""
    from .algebra import roots as poly_roots

    if big.m % sub.m:
        raise NotInSubfield("degree does not divide the extension degree")
    modpoly = Poly(big, [(sub.mod >> i) & 1 for i in range(sub.m + 1)])
    rts = sorted(r for r, _m in poly_roots(modpoly))
    root = rts[0]
    fwd = {}
    for v in range(1 << sub.m):
        acc = big.zero
        for i in range(sub.m - 1, -1, -1):
            acc = big.mul(acc, root)
            if (v >> i) & 1:
                acc ^= big.one
        fwd[v] = acc
    back = {img: v for v, img in fwd.items()}
    return fwd, back


def _lifted(c: CurveModel, rng, fn):
    """Run a synthesis routine over the canonical extension and descend."""
    F = c.field
    big = binary_extension_of(F)
    fwd, back = binary_embedding(F, big)
    cl = CurveModel(
        big,
        Poly(big, [fwd[c.f[i]] for i in range(7)]),
        Poly(big, [fwd[c.h[i]] for i in range(4)]),
    )
    wml = working_model(cl)
    sl = _default_sampler(wml)
    result = fn(cl, rng, wml, sl)
    return _descend_result(result, back)


def _descend_result(result, back):
    def dval(v):
        if v not in back:
            raise NotInSubfield("synthesized coefficient escapes the base field")
        return back[v]

    if isinstance(result, tuple) and result and isinstance(result[0], tuple):
        return tuple(tuple(dval(a) for a in blk) for blk in result)
    if isinstance(result, dict):
        return {k: tuple(dval(a) for a in vec) for k, vec in result.items()}
    raise TypeError("unexpected synthesis result shape")


def descend_coefficients(fs: "FormulaSet", subfield: Field) -> "FormulaSet":
    """Re-express a FormulaSet over a subfield containing all coefficients."""
    F = fs.curve.field
    if F == subfield:
        return fs
    if isinstance(F, BinaryField) and isinstance(subfield, BinaryField):
        fwd, back = binary_embedding(subfield, F)
        def dval(v):
            if v not in back:
                raise NotInSubfield("coefficient lies outside the stated subfield")
            return back[v]
        curve = CurveModel(
            subfield,
            Poly(subfield, [dval(fs.curve.f[i]) for i in range(7)]),
            Poly(subfield, [dval(fs.curve.h[i]) for i in range(4)]),
        )
        delta = tuple(tuple(dval(a) for a in blk) for blk in fs.delta)
        bqf = {k: tuple(dval(a) for a in vec) for k, vec in fs.bqf.items()}
        w = [
            (label, Matrix(subfield, [[dval(a) for a in row] for row in m.rows]))
            for label, m in fs.w
        ]
        return FormulaSet(curve, fingerprint(curve), delta, bqf, w, fs.convention)
    raise NotInSubfield(f"no descent from {F!r} to {subfield!r}")


# -- rationals: solve modulo large primes, reconstruct, verify exactly ------

def _reduction_primes():
    p = (1 << 62) + 1
    out = []
    while len(out) < 8:
        while not is_prime(p):
            p += 2
        out.append(p)
        p += 2
    return out


def _reduce_curve_mod(c: CurveModel, p: int) -> CurveModel | None:
    Fp = PrimeField(p)
    fco, hco = [], []
    for i in range(7):
        q = c.f[i]
        if q.denominator % p == 0:
            return None
        fco.append(q.numerator * pow(q.denominator, -1, p) % p)
    for i in range(4):
        q = c.h[i]
        if q.denominator % p == 0:
            return None
        hco.append(q.numerator * pow(q.denominator, -1, p) % p)
    cm = CurveModel(Fp, Poly(Fp, fco), Poly(Fp, hco))
    return cm if validate(cm).ok else None


def _rational_reconstruct(r: int, M: int) -> Fraction | None:
    from math import gcd

    bound = isqrt(M // 2)
    a0, a1 = M, r % M
    s0, s1 = 0, 1
    while a1 > bound:
        q = a0 // a1
        a0, a1 = a1, a0 - q * a1
        s0, s1 = s1, s0 - q * s1
    n, d = a1, s1
    if d == 0:
        return None
    if d < 0:
        n, d = -n, -d
    if d > bound or gcd(n, d) != 1:
        return None
    if (n - r * d) % M:
        return None
    return Fraction(n, d)


def _crt(res_a: int, mod_a: int, res_b: int, mod_b: int) -> int:
    inv = pow(mod_a, -1, mod_b)
    t = (res_b - res_a) * inv % mod_b
    return res_a + mod_a * t


def _modular_solve(c: CurveModel, rng, solve_mod, verify):
    """Shared machinery: run ``solve_mod`` over reductions of the curve,
    CRT + rational reconstruction coefficient-wise, stop once ``verify``
    accepts the exact rational result."""
    import random as _random

    residues = None
    modulus = None
    for p in _reduction_primes():
        cm = _reduce_curve_mod(c, p)
        if cm is None:
            continue
        vec = solve_mod(cm, _random.Random(rng.randrange(1 << 62)))
        if residues is None:
            residues, modulus = list(vec), p
        else:
            residues = [_crt(a, modulus, b, p) for a, b in zip(residues, vec)]
            modulus *= p
        recon = [_rational_reconstruct(r, modulus) for r in residues]
        if any(v is None for v in recon):
            continue
        if verify(recon):
            return recon
    raise KernelDimensionUnexpected("rational reconstruction failed to stabilize")


def _modular_delta(c: CurveModel, rng, samples, check):
    F = c.field
    wm = working_model(c)
    sampler = _default_sampler(wm)
    qvec = quartic_from_curve(c).vector

    def solve_mod(cm, sub_rng):
        wmm = working_model(cm)
        sm = _default_sampler(wmm)
        data = _delta_samples(cm, wmm, sm, sub_rng, samples)
        delta = _delta_solve(cm.field, data, quartic_from_curve(cm).vector)
        return [a for blk in delta for a in blk]

    def verify(recon):
        delta = tuple(tuple(recon[35 * i : 35 * (i + 1)]) for i in range(4))
        try:
            _fresh_check_delta(c, wm, sampler, rng, delta, check)
        except CrossCheckFailed:
            return False
        return True

    flat = _modular_solve(c, rng, solve_mod, verify)
    return tuple(tuple(flat[35 * i : 35 * (i + 1)]) for i in range(4))


def _modular_bqf(c: CurveModel, rng, samples, check):
    wm = working_model(c)
    sampler = _default_sampler(wm)

    def solve_mod(cm, sub_rng):
        wmm = working_model(cm)
        sm = _default_sampler(wmm)
        data = _bqf_samples(cm, wmm, sm, sub_rng, max(samples, 220))
        forms = _bqf_solve(cm.field, data)
        return [a for p in BQF_INDEX_PAIRS for a in forms[p]]

    def verify(recon):
        forms = {
            p: tuple(recon[100 * t : 100 * (t + 1)]) for t, p in enumerate(BQF_INDEX_PAIRS)
        }
        try:
            _fresh_check_bqf(c, wm, sampler, rng, forms, check)
        except CrossCheckFailed:
            return False
        return True

    flat = _modular_solve(c, rng, solve_mod, verify)
    return {p: tuple(flat[100 * t : 100 * (t + 1)]) for t, p in enumerate(BQF_INDEX_PAIRS)}


# ---------------------------------------------------------------------------
# Whole formula sets
# ---------------------------------------------------------------------------

def synthesize_formula_set(
    c: CurveModel,
    rng,
    delta_samples: int = 105,
    bqf_samples: int = 300,
    with_w: bool = True,
) -> FormulaSet:
    """Synthesize the full formula family of a curve."""
    F = c.field
    delta = synthesize_delta(c, rng, delta_samples)
    bqf = synthesize_bqf(c, rng, bqf_samples)
    w = []
    if with_w and F.order() is not None:
        if F.characteristic() == 2:
            for T in two_torsion_classes(c):
                w.append((T.label, w_matrix_char2(c, T)))
        else:
            wm = working_model(c)
            sampler = _default_sampler(wm)
            for T in two_torsion_classes(c):
                w.append((T.label, synthesize_w_oddchar(c, T, rng, wm=wm, sampler=sampler)))
    return FormulaSet(c, fingerprint(c), delta, bqf, w)


# ---------------------------------------------------------------------------
# Serialization (KFS1)
# ---------------------------------------------------------------------------

def serialize_formula_set(fs: FormulaSet) -> str:
    F = fs.curve.field
    ts = F.to_str
    lines = [
        "KFS1",
        f"field {F.spec_string()}",
        "f " + ",".join(ts(fs.curve.f[i]) for i in range(7)),
        "h " + ",".join(ts(fs.curve.h[i]) for i in range(4)),
        f"convention {fs.convention}",
        f"fingerprint {fs.fingerprint}",
    ]
    for i, blk in enumerate(fs.delta, start=1):
        lines.append(f"delta{i} quartic4 " + ",".join(ts(a) for a in blk))
    for (i, j) in BQF_INDEX_PAIRS:
        lines.append(f"B{i}{j} biquadratic44 " + ",".join(ts(a) for a in fs.bqf[(i, j)]))
    for label, m in fs.w:
        flat = [ts(a) for row in m.rows for a in row]
        lines.append(f"W {label} " + ",".join(flat))
    return "\n".join(lines) + "\n"


def deserialize_formula_set(text: str) -> FormulaSet:
    from .field import field_from_spec

    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != "KFS1":
        raise ValueError("not a KFS1 formula file")
    F = None
    fco = hco = None
    convention = None
    fp = None
    delta = [None] * 4
    bqf = {}
    w = []
    for ln in lines[1:]:
        key, _, rest = ln.partition(" ")
        if key == "field":
            F = field_from_spec(rest.strip())
        elif key == "f":
            fco = [F.parse(t) for t in rest.split(",")]
        elif key == "h":
            hco = [F.parse(t) for t in rest.split(",")]
        elif key == "convention":
            convention = rest.strip()
        elif key == "fingerprint":
            fp = rest.strip()
        elif key.startswith("delta"):
            idx = int(key[5:]) - 1
            basis, _, csv = rest.partition(" ")
            if basis != "quartic4":
                raise ValueError("duplication coordinates use the quartic4 basis")
            vec = tuple(F.parse(t) for t in csv.split(","))
            if len(vec) != 35:
                raise ValueError("quartic4 vectors have 35 coefficients")
            delta[idx] = vec
        elif key.startswith("B"):
            i, j = int(key[1]), int(key[2])
            basis, _, csv = rest.partition(" ")
            if basis != "biquadratic44":
                raise ValueError("biquadratic forms use the biquadratic44 basis")
            vec = tuple(F.parse(t) for t in csv.split(","))
            if len(vec) != 100:
                raise ValueError("biquadratic44 vectors have 100 coefficients")
            bqf[(i, j)] = vec
        elif key == "W":
            label, _, csv = rest.partition(" ")
            vals = [F.parse(t) for t in csv.split(",")]
            if len(vals) != 16:
                raise ValueError("translation matrices are 4x4")
            w.append((label, Matrix(F, [vals[4 * i : 4 * (i + 1)] for i in range(4)])))
        else:
            raise ValueError(f"unrecognized KFS1 line {ln!r}")
    if convention != CONVENTION_TAG:
        raise ValueError(f"unknown diagonal convention {convention!r}")
    curve = CurveModel(F, Poly(F, fco), Poly(F, hco))
    expect = fingerprint(curve)
    if fp != expect:
        raise ValueError("stale formula file: fingerprint mismatch")
    if any(d is None for d in delta) or len(bqf) != 10:
        raise ValueError("incomplete formula file")
    return FormulaSet(curve, fp, tuple(delta), bqf, w, convention)


# ---------------------------------------------------------------------------
# Cross-checks against the printed conversion identities
# ---------------------------------------------------------------------------

def crosscheck_tau_delta(c: CurveModel, rng, npoints: int = 200, delta=None, delta_prime=None) -> dict:
    """Conjugation consistency of duplication with the model change.

    Synthesizes duplication on the curve and on its simplified model
    y^2 = 4f + h^2, then checks T(delta(k)) = const * delta'(T(k)) at sampled
    surface points, with one constant across all points and coordinates."""
    F = c.field
    if F.characteristic() == 2:
        raise UnsupportedField("the simplified model needs odd characteristic")
    csimp, iso = simplified_model(c)
    T = simplified_kummer_matrix(c)
    if delta is None:
        delta = synthesize_delta(c, rng)
    if delta_prime is None:
        delta_prime = synthesize_delta(csimp, rng)
    wm = working_model(c)
    sampler = _default_sampler(wm)
    ratio = None
    checked = 0
    while checked < npoints:
        D = sampler(rng)
        try:
            k = _kappa_of(c, wm, D)
        except UnsupportedDivisor:
            continue
        lhs = T.apply(list(apply_delta(F, delta, k).coords))
        rhs = apply_delta(F, delta_prime, KummerPoint(F, T.apply(list(k.coords)))).coords
        piv = next((i for i in range(4) if rhs[i] != F.zero), None)
        if piv is None:
            raise CrossCheckFailed("simplified-model duplication vanished")
        r = F.div(lhs[piv], rhs[piv])
        if ratio is None:
            ratio = r
        if r != ratio or any(lhs[i] != F.mul(ratio, rhs[i]) for i in range(4)):
            raise CrossCheckFailed("duplication does not commute with the model change")
        checked += 1
    return {"ok": True, "points": checked, "ratio": F.to_str(ratio)}


def _conversion_vector(F: Field, h: Poly):
    two = F.from_int(2)
    return (
        F.mul(h[0], h[2]),
        F.mul(h[0], h[3]),
        F.mul(h[1], h[3]),
    )


def convert_bqf_from_simplified(F: Field, h: Poly, bprime: dict) -> dict:
    """The conversion taking simplified-model biquadratic values b'_{ij}
    (halved diagonals) to the general-model values, derived from the
    coordinate change k4' = 4 k4 - 2(h0h2 k1 + h0h3 k2 + h1h3 k3).

    ``bprime`` maps (i, j) to raw values at a fixed argument pair."""
    cvec = _conversion_vector(F, h)
    inv4 = F.inv(F.from_int(4))
    inv2 = F.inv(F.from_int(2))
    inv8 = F.inv(F.from_int(8))
    inv16 = F.inv(F.from_int(16))

    def bp(i, j):
        return bprime[(min(i, j), max(i, j))]

    out = {}
    for (i, j) in BQF_INDEX_PAIRS:
        if j <= 3:
            out[(i, j)] = bp(i, j)
    for i in (1, 2, 3):
        acc = F.mul(inv4, bp(i, 4))
        inner = F.zero
        for j in (1, 2, 3):
            term = F.mul(cvec[j - 1], bp(i, j))
            if j == i:
                term = F.add(term, term)  # diagonal b' is halved
            inner = F.add(inner, term)
        out[(i, 4)] = F.add(acc, F.mul(inv2, inner))
    acc = F.mul(inv16, bp(4, 4))
    mid = F.zero
    for j in (1, 2, 3):
        mid = F.add(mid, F.mul(cvec[j - 1], bp(j, 4)))
    acc = F.add(acc, F.mul(inv8, mid))
    quad = F.zero
    for a in (1, 2, 3):
        quad = F.add(quad, F.mul(F.mul(cvec[a - 1], cvec[a - 1]), bp(a, a)))
    for a, b in ((1, 2), (1, 3), (2, 3)):
        quad = F.add(quad, F.mul(F.mul(cvec[a - 1], cvec[b - 1]), bp(a, b)))
    out[(4, 4)] = F.add(acc, F.mul(inv4, quad))
    return out


def crosscheck_b_conversion(c: CurveModel, rng, npoints: int = 200, bqf=None, bqf_prime=None) -> dict:
    """Printed-style conversion between the general and simplified
    biquadratic families, checked with a single fitted scalar.

    The i, j <= 3 block converts by identity, the fourth row/column by the
    displayed linear combinations (with the diagonal bookkeeping of our
    halved convention); one scalar must fit all ten entries at every sampled
    argument pair."""
    F = c.field
    if F.characteristic() == 2:
        raise UnsupportedField("the conversion needs odd characteristic")
    csimp, _iso = simplified_model(c)
    T = simplified_kummer_matrix(c)
    if bqf is None:
        bqf = synthesize_bqf(c, rng)
    if bqf_prime is None:
        bqf_prime = synthesize_bqf(csimp, rng)
    wm = working_model(c)
    sampler = _default_sampler(wm)
    scalar = None
    checked = 0
    while checked < npoints:
        P, Q = sampler(rng), sampler(rng)
        try:
            x = _kappa_of(c, wm, P).coords
            y = _kappa_of(c, wm, Q).coords
        except UnsupportedDivisor:
            continue
        xs = tuple(T.apply(list(x)))
        ys = tuple(T.apply(list(y)))
        bprime = {
            (i, j): eval_bqf(F, bqf_prime, i, j, xs, ys) for (i, j) in BQF_INDEX_PAIRS
        }
        conv = convert_bqf_from_simplified(F, c.h, bprime)
        for (i, j) in BQF_INDEX_PAIRS:
            val = eval_bqf(F, bqf, i, j, x, y)
            if scalar is None:
                if conv[(i, j)] == F.zero:
                    if val != F.zero:
                        raise CrossCheckFailed("conversion zero/nonzero mismatch")
                    continue
                scalar = F.div(val, conv[(i, j)])
            if val != F.mul(scalar, conv[(i, j)]):
                raise CrossCheckFailed(
                    f"conversion failed at entry B{i}{j} after {checked} points"
                )
        checked += 1
    return {
        "ok": True,
        "points": checked,
        "scalar": F.to_str(scalar),
        "diagonal_bookkeeping": "b'_ii = w'_i z'_i (halved); fourth-column groups "
        "use factors 1/4, 1/2; B44 groups use 1/16, 1/8, 1/4, 1/4",
    }
