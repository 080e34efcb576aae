"""Independent group-law oracle: Mumford arithmetic on an odd-degree model.

The oracle computes on a *working model* with a single rational point at
infinity and deg f = 5 (odd or zero characteristic: h = 0; characteristic 2:
deg h <= 2), where composition-and-reduction provably computes in the full
degree-0 class group.  A ``ModelIsomorphism`` links the user's model to the
working model; divisor classes cross the link through the pair/Mumford
transport in :mod:`g2kummer.curve`.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Poly, roots
from .curve import (
    CurveModel,
    CurvePoint,
    ModelIsomorphism,
    PairDivisor,
    pair_from_mumford,
    pair_from_points,
    sample_point,
    simplified_model,
    transform,
    transform_pair,
    transform_point,
    validate,
)
from .errors import (
    ExhaustedRetries,
    NonGenericDivisor,
    NoRationalWeierstrassPoint,
    UnsupportedDivisor,
)
from .field import Field


@dataclass(frozen=True)
class MumfordDivisor:
    """Reduced divisor (a, b): a monic, deg a <= 2, deg b < deg a,
    a | b^2 + b h - f on the working model."""

    a: Poly
    b: Poly

    @property
    def degree(self) -> int:
        return self.a.degree

    def is_zero(self) -> bool:
        return self.a.degree == 0


class WorkingModel:
    """A user model together with its odd-degree oracle model."""

    __slots__ = ("user", "model", "link", "user_weierstrass")

    def __init__(self, user: CurveModel, model: CurveModel, link: ModelIsomorphism):
        self.user = user
        self.model = model
        self.link = link
        inf = CurvePoint("infinity", branch=model.branch_values()[0])
        self.user_weierstrass = transform_point(model, link.inverse(), inf)

    @property
    def field(self) -> Field:
        return self.model.field

    def zero(self) -> MumfordDivisor:
        F = self.field
        return MumfordDivisor(Poly.const(F, F.one), Poly(F, []))

    def contains(self, D: MumfordDivisor) -> bool:
        c = self.model
        rem = (D.b * D.b + D.b * c.h - c.f) % D.a
        return rem.is_zero() and D.b.degree < max(D.a.degree, 1)


def working_model(c: CurveModel) -> WorkingModel:
    """Build the oracle model: a rational Weierstrass point goes to infinity.

    The resulting model has deg f = 5 with one (ramified) point at infinity;
    in odd or zero characteristic the model is first simplified to h = 0.
    Raises NoRationalWeierstrassPoint when no suitable point exists.
    """
    F = c.field
    v = validate(c)
    if not v.ok:
        raise ValueError(f"invalid curve: {v.reason}")
    if F.characteristic() == 2:
        cur, iso = c, ModelIsomorphism.identity(F)
        if cur.h[3] != F.zero:
            hroots = roots(cur.h)
            if not hroots:
                raise NoRationalWeierstrassPoint(
                    "h has no rational root and h3 != 0"
                )
            r = hroots[0][0]
            mob = ModelIsomorphism(F, (F.zero, F.one, F.one, F.neg(r)), F.one, Poly(F, []))
            cur, iso = transform(cur, mob), iso.compose(mob)
        if cur.f[6] != F.zero:
            shift = ModelIsomorphism(
                F,
                (F.one, F.zero, F.zero, F.one),
                F.one,
                Poly(F, [F.zero, F.zero, F.zero, F.sqrt(cur.f[6])]),
            )
            cur, iso = transform(cur, shift), iso.compose(shift)
        assert cur.f.degree == 5 and cur.h.degree <= 2
        return WorkingModel(c, cur, iso)
    # odd or zero characteristic
    if c.h.is_zero() and c.f.degree == 5:
        return WorkingModel(c, c, ModelIsomorphism.identity(F))
    cur, iso = simplified_model(c)
    if cur.f.degree == 6:
        if F.order() is None:
            from .curve import _rational_roots

            groots = [(r, 1) for r in _rational_roots(cur.f)]
        else:
            groots = roots(cur.f)
        if not groots:
            raise NoRationalWeierstrassPoint("4f + h^2 has no rational root")
        r = groots[0][0]
        mob = ModelIsomorphism(F, (F.zero, F.one, F.one, F.neg(r)), F.one, Poly(F, []))
        cur, iso = transform(cur, mob), iso.compose(mob)
    assert cur.f.degree == 5 and cur.h.is_zero()
    return WorkingModel(c, cur, iso)


# ---------------------------------------------------------------------------
# Cantor composition and reduction for y^2 + h y = f
# ---------------------------------------------------------------------------

def _compose(wm: WorkingModel, D1: MumfordDivisor, D2: MumfordDivisor):
    F = wm.field
    f, h = wm.model.f, wm.model.h
    a1, b1 = D1.a, D1.b
    a2, b2 = D2.a, D2.b
    d0, e1, e2 = a1.xgcd(a2)
    ssum = b1 + b2 + h
    d, c1, c2 = d0.xgcd(ssum)
    s1 = c1 * e1
    s2 = c1 * e2
    s3 = c2
    a = (a1 * a2).exact_div(d * d)
    num = s1 * a1 * b2 + s2 * a2 * b1 + s3 * (b1 * b2 + f)
    b = num.exact_div(d) % a
    return a.monic(), b


def _reduce(wm: WorkingModel, a: Poly, b: Poly) -> MumfordDivisor:
    f, h = wm.model.f, wm.model.h
    while a.degree > 2:
        a = (f - b * h - b * b).exact_div(a)
        b = (-h - b) % a
    a = a.monic()
    return MumfordDivisor(a, b % a if a.degree > 0 else Poly(wm.field, []))


def add(wm: WorkingModel, D1: MumfordDivisor, D2: MumfordDivisor) -> MumfordDivisor:
    """Divisor-class sum by composition and at most two reduction steps."""
    a, b = _compose(wm, D1, D2)
    return _reduce(wm, a, b)


def negate(wm: WorkingModel, D: MumfordDivisor) -> MumfordDivisor:
    F = wm.field
    if D.is_zero():
        return D
    return MumfordDivisor(D.a, (-D.b - wm.model.h) % D.a)


def scalar_mul(wm: WorkingModel, D: MumfordDivisor, n: int) -> MumfordDivisor:
    """n*D by double-and-add; n must be nonnegative."""
    if n < 0:
        raise ValueError("nonnegative scalars only")
    acc = wm.zero()
    base = D
    while n:
        if n & 1:
            acc = add(wm, acc, base)
        n >>= 1
        if n:
            base = add(wm, base, base)
    return acc


def divisor_from_points(wm: WorkingModel, P1: CurvePoint, P2: CurvePoint) -> MumfordDivisor:
    """Mumford divisor of two affine working-model points with distinct x."""
    F = wm.field
    if P1.x == P2.x:
        raise NonGenericDivisor("points share their x-coordinate")
    a = Poly(F, [F.mul(P1.x, P2.x), F.neg(F.add(P1.x, P2.x)), F.one])
    b1 = F.div(F.sub(P1.y, P2.y), F.sub(P1.x, P2.x))
    b0 = F.sub(P1.y, F.mul(b1, P1.x))
    return MumfordDivisor(a, Poly(F, [b0, b1]))


def _point_pair_divisor(wm: WorkingModel, rng) -> MumfordDivisor:
    for _ in range(10_000):
        P1 = sample_point(wm.model, rng)
        P2 = sample_point(wm.model, rng)
        if P1.x == P2.x:
            continue
        return divisor_from_points(wm, P1, P2)
    raise ExhaustedRetries("could not sample a generic divisor")


def random_divisor(wm: WorkingModel, rng) -> MumfordDivisor:
    """Weight-2 divisor sampled as the class sum of two point-pair divisors.

    A divisor built from two rational points alone can only reach classes
    whose a-polynomial splits; composing two of them spreads the samples over
    the whole class group (conjugate-pair classes included), which the
    synthesis solves and the distribution checks rely on."""
    for _ in range(10_000):
        D = add(wm, _point_pair_divisor(wm, rng), _point_pair_divisor(wm, rng))
        if D.degree == 2:
            return D
    raise ExhaustedRetries("could not sample a generic divisor")


# ---------------------------------------------------------------------------
# Transport between the user model and the working model
# ---------------------------------------------------------------------------

def to_point_pair(wm: WorkingModel, D: MumfordDivisor) -> PairDivisor:
    """The class of D as an unordered point pair on the USER model.

    Working-model infinity maps to the user's distinguished Weierstrass
    point; conjugate pairs stay as base-field Mumford data."""
    F = wm.field
    inv = wm.link.inverse()
    if D.is_zero():
        return PairDivisor("zero")
    if D.degree == 1:
        x0 = F.neg(D.a[0])
        P = transform_point(wm.model, inv, CurvePoint("affine", x=x0, y=D.b(x0)))
        return pair_from_points(wm.user, P, wm.user_weierstrass)
    pair = pair_from_mumford(wm.model, D.a, D.b)
    return transform_pair(wm.model, inv, pair)


def from_point_pair(wm: WorkingModel, pair: PairDivisor) -> MumfordDivisor:
    """Mumford divisor on the working model from user-model pair data."""
    F = wm.field
    wpair = transform_pair(wm.user, wm.link, pair)
    if wpair.kind == "zero":
        return wm.zero()
    if wpair.kind == "quadratic":
        D = MumfordDivisor(wpair.a, wpair.b)
        if not wm.contains(D):
            raise UnsupportedDivisor("transported pair is not on the working Jacobian")
        return D
    if wpair.kind == "doubled":
        c = wm.model
        x0, y0 = wpair.x0, wpair.y0
        g = F.add(F.add(y0, y0), c.h(x0))
        if g == F.zero:
            raise UnsupportedDivisor("doubled Weierstrass point")
        lam = F.div(F.sub(c.f.deriv()(x0), F.mul(c.h.deriv()(x0), y0)), g)
        a = Poly(F, [F.mul(x0, x0), F.neg(F.add(x0, x0)), F.one])
        b = Poly(F, [F.sub(y0, F.mul(lam, x0)), lam]) % a
        return MumfordDivisor(a, b)
    # affine point plus working infinity: the class [P - oo]
    return MumfordDivisor(
        Poly(F, [F.neg(wpair.x0), F.one]), Poly.const(F, wpair.y0)
    )


def small_rational_sampler(
    wm: WorkingModel, xbound: int = 24, dens=(1, 2, 3), max_base: int = 4, coeff_bound: int = 4
):
    """Deterministic divisor sampler over the rationals.

    Searches the working model y^2 = g(x) for points with small rational
    x-coordinates, builds base divisors from point pairs, and samples small
    Cantor combinations of them (keeping coefficient heights bounded).
    Returns a callable ``sample(rng) -> MumfordDivisor``.
    """
    from fractions import Fraction
    from math import gcd

    from .errors import UnsupportedField

    F = wm.field
    if F.order() is not None:
        raise UnsupportedField("this sampler is for rational working models")
    g = wm.model.f
    pts = []
    for d in dens:
        for n in range(-xbound, xbound + 1):
            if gcd(n, d) != 1:
                continue
            x = Fraction(n, d)
            try:
                ys = F.quad_solve(F.zero, g(x))
            except Exception:
                continue
            for y in ys:
                if y != 0:
                    pts.append(CurvePoint("affine", x=x, y=y))
    base = []
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if pts[i].x != pts[j].x:
                base.append(divisor_from_points(wm, pts[i], pts[j]))
                break
        if len(base) >= max_base:
            break
    if len(base) < 2:
        raise UnsupportedField(
            "the rational curve has too few small points for oracle sampling"
        )

    def sample(rng) -> MumfordDivisor:
        for _ in range(64):
            D = wm.zero()
            for B in base:
                for _k in range(rng.randrange(coeff_bound)):
                    D = add(wm, D, B)
            if D.degree == 2:
                return D
        raise ExhaustedRetries("rational sampler kept hitting degenerate sums")

    return sample


def enumerate_divisors(wm: WorkingModel) -> list[MumfordDivisor]:
    """All reduced divisors over a tiny finite field (exhaustive)."""
    F = wm.field
    q = F.order()
    if q is None or q > 64:
        raise ValueError("exhaustive enumeration is for tiny fields")
    f, h = wm.model.f, wm.model.h
    out = [wm.zero()]
    elems = list(range(q))
    # degree 1
    for a0 in elems:
        for b0 in elems:
            a = Poly(F, [a0, F.one])
            b = Poly.const(F, b0)
            if ((b * b + b * h - f) % a).is_zero():
                out.append(MumfordDivisor(a, b))
    # degree 2
    for a0 in elems:
        for a1 in elems:
            a = Poly(F, [a0, a1, F.one])
            for b0 in elems:
                for b1 in elems:
                    b = Poly(F, [b0, b1])
                    if ((b * b + b * h - f) % a).is_zero():
                        out.append(MumfordDivisor(a, b))
    return out
