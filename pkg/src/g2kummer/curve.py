"""Genus-2 models y^2 + h(x) y = f(x), their validity, and model isomorphisms.

A model isomorphism acts on points as

    x_t = (a*x + b) / (c*x + d),      y_t = (e*y + u(x)) / (c*x + d)**3,

with ad - bc != 0, e != 0 and deg u <= 3; this is the full isomorphism group
of such models.  Transforming the model itself gives

    h_t = S3(e*h - 2u) / det**3,      f_t = S6(e**2 f + e*h*u - u**2) / det**6,

where S_d(P) denotes the degree-d homogeneous substitution of the inverse
Moebius map.  Points at infinity are tracked by the limit r of y/x**3 along
the branch, a root of Y**2 + h3*Y = f6; the branch with the smaller canonical
key is labelled "+".
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Matrix, Poly, roots
from .errors import (
    CharacteristicTwo,
    DegreeOverflow,
    ExhaustedRetries,
    NoSolutionCertificate,
    RootsNotRational,
    SingularCurve,
    UnsupportedDivisor,
    UnsupportedField,
)
from .field import Field

INFINITY = object()  # marker for the infinite x-value in root bookkeeping


@dataclass(frozen=True)
class CurvePoint:
    """A rational point: affine (x, y), or a branch at infinity."""

    kind: str  # "affine" | "infinity"
    x: object = None
    y: object = None
    branch: object = None  # limit of y/x^3 for infinity points


class CurveModel:
    """Curve y^2 + h(x) y = f(x) with deg f <= 6, deg h <= 3."""

    __slots__ = ("field", "f", "h")

    def __init__(self, field: Field, f: Poly, h: Poly):
        if f.degree > 6 or h.degree > 3:
            raise DegreeOverflow("deg f <= 6 and deg h <= 3 required")
        self.field = field
        self.f = f
        self.h = h

    def __eq__(self, other):
        return (
            isinstance(other, CurveModel)
            and self.field == other.field
            and self.f == other.f
            and self.h == other.h
        )

    def __hash__(self):
        return hash((self.field, self.f, self.h))

    def __repr__(self):
        return f"CurveModel({self.field!r}, f={self.f!r}, h={self.h!r})"

    def fc(self, i: int):
        return self.f[i]

    def hc(self, i: int):
        return self.h[i]

    def on_curve(self, P: CurvePoint) -> bool:
        F = self.field
        if P.kind == "affine":
            lhs = F.add(F.mul(P.y, P.y), F.mul(self.h(P.x), P.y))
            return lhs == self.f(P.x)
        r = P.branch
        lhs = F.add(F.mul(r, r), F.mul(self.h[3], r))
        return lhs == self.f[6]

    def branch_values(self) -> list:
        """Roots of Y^2 + h3*Y = f6, sorted by the canonical key."""
        return self.field.quad_solve(self.h[3], self.f[6])

    def infinity_points(self) -> list[CurvePoint]:
        return [CurvePoint("infinity", branch=r) for r in self.branch_values()]

    def is_ramified_at_infinity(self) -> bool:
        """True when the infinite fibre is one point (a Weierstrass point)."""
        F = self.field
        if F.characteristic() == 2:
            return self.h[3] == F.zero
        # odd or zero characteristic: double root of Y^2 + h3 Y - f6
        disc = F.add(F.mul(self.h[3], self.h[3]), F.mul(F.from_int(4), self.f[6]))
        return disc == F.zero

    def curve_file_text(self) -> str:
        F = self.field
        fline = ",".join(F.to_str(self.f[i]) for i in range(7))
        hline = ",".join(F.to_str(self.h[i]) for i in range(4))
        return f"field {F.spec_string()}\nf {fline}\nh {hline}\n"


def curve_from_text(text: str) -> CurveModel:
    """Parse the line-based curve file format."""
    from .field import field_from_spec

    field = None
    fco = hco = None
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, _, rest = line.partition(" ")
        if key == "field":
            field = field_from_spec(rest.strip())
        elif key == "f":
            fco = [field.parse(tok) for tok in rest.split(",")]
        elif key == "h":
            hco = [field.parse(tok) for tok in rest.split(",")]
        else:
            raise ValueError(f"unrecognized curve file line {line!r}")
    if field is None or fco is None or hco is None:
        raise ValueError("curve file needs field, f and h lines")
    if len(fco) != 7 or len(hco) != 4:
        raise ValueError("f takes 7 coefficients and h takes 4")
    return CurveModel(field, Poly(field, fco), Poly(field, hco))


# ---------------------------------------------------------------------------
# Validity
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Validity:
    ok: bool
    reason: str = ""


def validate(c: CurveModel) -> Validity:
    """Nonsingularity of the genus-2 model.

    Odd or zero characteristic: 4f + h^2 must be squarefree of degree 5 or 6.
    Characteristic 2: h != 0, no affine point solves the singularity system
    (h(x) = 0, y^2 = f(x), f'(x) + h'(x) y = 0), and the closure is smooth at
    infinity (h3 != 0 or f5^2 != h2^2 f6).
    """
    F = c.field
    if F.characteristic() == 2:
        if c.h.is_zero():
            return Validity(False, "h = 0 is inseparable in characteristic 2")
        fp = c.f.deriv()
        hp = c.h.deriv()
        witness = fp * fp + hp * hp * c.f
        if witness.is_zero():
            common = c.h.monic()
        else:
            common = c.h.gcd(witness)
        if common.degree > 0:
            return Validity(False, "affine singular point (h and f'^2 + h'^2 f share a root)")
        lhs = F.mul(c.f[5], c.f[5])
        rhs = F.mul(F.mul(c.h[2], c.h[2]), c.f[6])
        if c.h[3] == F.zero and lhs == rhs:
            return Validity(False, "singular at infinity (h3 = 0 and f5^2 = h2^2 f6)")
        return Validity(True)
    g = simplified_rhs(c)
    if g.degree < 5:
        return Validity(False, "deg(4f + h^2) < 5")
    if not g.squarefree():
        return Validity(False, "4f + h^2 has a repeated root")
    return Validity(True)


def simplified_rhs(c: CurveModel) -> Poly:
    """The polynomial 4f + h^2 (odd or zero characteristic)."""
    F = c.field
    four = Poly.const(F, F.from_int(4))
    return four * c.f + c.h * c.h


# ---------------------------------------------------------------------------
# Points
# ---------------------------------------------------------------------------

def sample_point(c: CurveModel, rng) -> CurvePoint:
    """Uniform affine x with a solving y; deterministic given the rng."""
    F = c.field
    if F.order() is None:
        raise UnsupportedField("point sampling requires a finite field")
    for _ in range(10_000):
        x = F.random(rng)
        ys = F.quad_solve(c.h(x), c.f(x))
        if not ys:
            continue
        y = ys[rng.randrange(len(ys))]
        return CurvePoint("affine", x=x, y=y)
    raise ExhaustedRetries("no affine point found in 10^4 draws")


def involution(c: CurveModel, P: CurvePoint) -> CurvePoint:
    """The hyperelliptic involution (x, y) -> (x, -y - h(x))."""
    F = c.field
    if P.kind == "affine":
        return CurvePoint("affine", x=P.x, y=F.sub(F.neg(P.y), c.h(P.x)))
    return CurvePoint("infinity", branch=F.sub(F.neg(P.branch), c.h[3]))


def rational_weierstrass_points(c: CurveModel) -> list[CurvePoint]:
    """All rational fixed points of the involution, infinity included."""
    F = c.field
    out = []
    if F.characteristic() == 2:
        if F.order() is None:
            raise UnsupportedField("finite field required")
        for r, _m in roots(c.h):
            out.append(CurvePoint("affine", x=r, y=F.sqrt(c.f(r))))
        if c.h[3] == F.zero:
            out.append(CurvePoint("infinity", branch=F.sqrt(c.f[6])))
        return out
    g = simplified_rhs(c)
    half = F.inv(F.from_int(2))
    if F.order() is None:
        root_list = [(r, 1) for r in _rational_roots(g)]
    else:
        root_list = roots(g)
    for r, _m in root_list:
        out.append(CurvePoint("affine", x=r, y=F.neg(F.mul(half, c.h(r)))))
    if g.degree == 5:
        out.append(CurvePoint("infinity", branch=F.neg(F.mul(half, c.h[3]))))
    return out


def _rational_roots(p: Poly) -> list:
    """Rational roots of a polynomial over the rationals (root theorem)."""
    from fractions import Fraction

    F = p.field
    if p.is_zero():
        raise ValueError("zero polynomial")
    # clear denominators to an integer polynomial
    denlcm = 1
    for co in p.coeffs:
        denlcm = denlcm * co.denominator // _gcd_int(denlcm, co.denominator)
    ints = [int(co * denlcm) for co in p.coeffs]
    while ints and ints[0] == 0:
        ints = ints[1:]  # factor out x; x = 0 handled below
    out = set()
    if p(Fraction(0)) == 0:
        out.add(Fraction(0))
    if not ints:
        return sorted(out)
    a0, an = abs(ints[0]), abs(ints[-1])
    for pnum in _divisors(a0):
        for qden in _divisors(an):
            for cand in (Fraction(pnum, qden), Fraction(-pnum, qden)):
                if p(cand) == 0:
                    out.add(cand)
    return sorted(out)


def _gcd_int(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _divisors(n: int) -> list[int]:
    n = abs(n)
    if n == 0:
        return [1]
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


# ---------------------------------------------------------------------------
# Model isomorphisms
# ---------------------------------------------------------------------------

class ModelIsomorphism:
    """(Moebius, y-scale, y-shift) acting as documented in the module header."""

    __slots__ = ("field", "mobius", "yscale", "yshift")

    def __init__(self, field: Field, mobius, yscale, yshift: Poly):
        a, b, c, d = mobius
        det = field.sub(field.mul(a, d), field.mul(b, c))
        if det == field.zero:
            raise ValueError("Moebius matrix must be invertible")
        if yscale == field.zero:
            raise ValueError("y-scale must be nonzero")
        if yshift.degree > 3:
            raise DegreeOverflow("y-shift degree must be at most 3")
        self.field = field
        self.mobius = (a, b, c, d)
        self.yscale = yscale
        self.yshift = yshift

    @classmethod
    def identity(cls, field: Field) -> "ModelIsomorphism":
        return cls(field, (field.one, field.zero, field.zero, field.one), field.one, Poly(field, []))

    def det(self):
        a, b, c, d = self.mobius
        F = self.field
        return F.sub(F.mul(a, d), F.mul(b, c))

    def normalized(self) -> "ModelIsomorphism":
        """Scale the Moebius matrix so its first nonzero entry is one."""
        F = self.field
        lam = None
        for v in self.mobius:
            if v != F.zero:
                lam = F.inv(v)
                break
        if lam == F.one:
            return self
        cube = F.mul(F.mul(lam, lam), lam)
        mob = tuple(F.mul(lam, v) for v in self.mobius)
        return ModelIsomorphism(F, mob, F.mul(cube, self.yscale), self.yshift.scale(cube))

    def compose(self, second: "ModelIsomorphism") -> "ModelIsomorphism":
        """The isomorphism ``second after self``."""
        F = self.field
        a1, b1, c1, d1 = self.mobius
        a2, b2, c2, d2 = second.mobius
        mob = (
            F.add(F.mul(a2, a1), F.mul(b2, c1)),
            F.add(F.mul(a2, b1), F.mul(b2, d1)),
            F.add(F.mul(c2, a1), F.mul(d2, c1)),
            F.add(F.mul(c2, b1), F.mul(d2, d1)),
        )
        u12 = self.yshift.scale(second.yscale) + _mobius_substitute(second.yshift, self.mobius, 3)
        return ModelIsomorphism(F, mob, F.mul(second.yscale, self.yscale), u12).normalized()

    def inverse(self) -> "ModelIsomorphism":
        F = self.field
        a, b, c, d = self.mobius
        det = self.det()
        inv_mob = (d, F.neg(b), F.neg(c), a)
        det3 = F.mul(F.mul(det, det), det)
        e_inv = F.mul(det3, F.inv(self.yscale))
        u_inv = _mobius_substitute(self.yshift, inv_mob, 3).scale(
            F.neg(F.inv(self.yscale))
        )
        return ModelIsomorphism(F, inv_mob, e_inv, u_inv).normalized()

    def is_identity(self) -> bool:
        F = self.field
        n = self.normalized()
        return (
            n.mobius == (F.one, F.zero, F.zero, F.one)
            and n.yscale == F.one
            and n.yshift.is_zero()
        )


def _mobius_substitute(P: Poly, mobius, degree: int) -> Poly:
    """(c*x + d)**degree * P((a*x + b)/(c*x + d)) as a polynomial."""
    F = P.field
    a, b, c, d = mobius
    num = Poly(F, [b, a])
    den = Poly(F, [d, c])
    if P.degree > degree:
        raise DegreeOverflow("substitution degree too small")
    acc = Poly(F, [])
    num_pow = Poly.const(F, F.one)
    den_pows = [Poly.const(F, F.one)]
    for _ in range(degree):
        den_pows.append(den_pows[-1] * den)
    for i in range(degree + 1):
        coeff = P[i]
        if coeff != F.zero:
            acc = acc + (num_pow * den_pows[degree - i]).scale(coeff)
        num_pow = num_pow * num
    return acc


def transform(c: CurveModel, iso: ModelIsomorphism) -> CurveModel:
    """Model satisfied by transformed points: P on C iff iso(P) on transform(C)."""
    F = c.field
    a, b, cc, d = iso.mobius
    inv_mob = (d, F.neg(b), F.neg(cc), a)
    det = iso.det()
    e = iso.yscale
    u = iso.yshift
    two = F.from_int(2)
    ht_num = _mobius_substitute(c.h.scale(e) - u.scale(two), inv_mob, 3)
    e2 = F.mul(e, e)
    ft_num = _mobius_substitute(c.f.scale(e2) + (c.h * u).scale(e) - u * u, inv_mob, 6)
    det3 = F.mul(F.mul(det, det), det)
    det6 = F.mul(det3, det3)
    return CurveModel(F, ft_num.scale(F.inv(det6)), ht_num.scale(F.inv(det3)))


def transform_point(c: CurveModel, iso: ModelIsomorphism, P: CurvePoint) -> CurvePoint:
    """Transport a point; may move between affine and infinity."""
    F = c.field
    a, b, g, d = iso.mobius
    e, u = iso.yscale, iso.yshift
    det = iso.det()
    if P.kind == "affine":
        w = F.add(F.mul(g, P.x), d)
        if w != F.zero:
            xt = F.div(F.add(F.mul(a, P.x), b), w)
            w3 = F.mul(F.mul(w, w), w)
            yt = F.div(F.add(F.mul(e, P.y), u(P.x)), w3)
            return CurvePoint("affine", x=xt, y=yt)
        g3 = F.mul(F.mul(g, g), g)
        det3 = F.mul(F.mul(det, det), det)
        r = F.neg(F.div(F.mul(g3, F.add(F.mul(e, P.y), u(P.x))), det3))
        return CurvePoint("infinity", branch=r)
    # source point at infinity
    top = F.add(F.mul(e, P.branch), u[3])
    if g != F.zero:
        g3 = F.mul(F.mul(g, g), g)
        return CurvePoint("affine", x=F.div(a, g), y=F.div(top, g3))
    a3 = F.mul(F.mul(a, a), a)
    return CurvePoint("infinity", branch=F.div(top, a3))


# ---------------------------------------------------------------------------
# Divisor pair data (the input format of the Kummer coordinate map)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PairDivisor:
    """A divisor class on a model, presented as an unordered point pair.

    kinds:
      - "zero":       the zero class;
      - "quadratic":  two affine points with distinct x, given by Mumford data
                      (a monic quadratic, b of degree <= 1); covers rational
                      and conjugate pairs uniformly;
      - "doubled":    twice an affine point (x0, y0), not a Weierstrass point;
      - "affine_inf": an affine point plus a branch at infinity.
    """

    kind: str
    a: Poly = None
    b: Poly = None
    x0: object = None
    y0: object = None
    branch: object = None


def pair_from_points(c: CurveModel, P1: CurvePoint, P2: CurvePoint) -> PairDivisor:
    """Assemble pair data from two explicit rational points."""
    F = c.field
    if P1.kind == "infinity" and P2.kind == "infinity":
        if P1.branch == P2.branch:
            raise UnsupportedDivisor("doubled infinite point")
        return PairDivisor("zero")  # the two branches are swapped by the involution
    if P1.kind == "infinity" or P2.kind == "infinity":
        aff, inf = (P2, P1) if P1.kind == "infinity" else (P1, P2)
        return PairDivisor("affine_inf", x0=aff.x, y0=aff.y, branch=inf.branch)
    if P1.x == P2.x:
        if P1.y == P2.y:
            g = F.add(F.add(P1.y, P1.y), c.h(P1.x))
            if g == F.zero:
                raise UnsupportedDivisor("doubled Weierstrass point")
            return PairDivisor("doubled", x0=P1.x, y0=P1.y)
        return PairDivisor("zero")  # {P, involution(P)}
    a = Poly(F, [F.mul(P1.x, P2.x), F.neg(F.add(P1.x, P2.x)), F.one])
    dx = F.sub(P1.x, P2.x)
    b1 = F.div(F.sub(P1.y, P2.y), dx)
    b0 = F.sub(P1.y, F.mul(b1, P1.x))
    return PairDivisor("quadratic", a=a, b=Poly(F, [b0, b1]))


def pair_from_mumford(c: CurveModel, a: Poly, b: Poly) -> PairDivisor:
    """Pair data from Mumford (a, b) on a model; splits degenerate cases."""
    F = c.field
    if a.degree <= 0:
        return PairDivisor("zero")
    if a.degree == 1:
        x0 = F.neg(a[0])
        if not c.is_ramified_at_infinity():
            raise UnsupportedDivisor("degree-1 divisor on a split model")
        return PairDivisor(
            "affine_inf", x0=x0, y0=b(x0), branch=c.branch_values()[0]
        )
    am = a.monic()
    a1, a0 = am[1], am[0]
    # discriminant of the monic quadratic
    if F.characteristic() == 2:
        doubled = a1 == F.zero
    else:
        four = F.from_int(4)
        doubled = F.sub(F.mul(a1, a1), F.mul(four, a0)) == F.zero
    if doubled:
        if F.characteristic() == 2:
            x0 = F.sqrt(a0)
        else:
            x0 = F.neg(F.div(a1, F.from_int(2)))
        y0 = b(x0)
        g = F.add(F.add(y0, y0), c.h(x0))
        if g == F.zero:
            raise UnsupportedDivisor("doubled Weierstrass point")
        return PairDivisor("doubled", x0=x0, y0=y0)
    return PairDivisor("quadratic", a=am, b=b % am)


# ---------------------------------------------------------------------------
# Divisor transport through an isomorphism
# ---------------------------------------------------------------------------

def transform_pair(c: CurveModel, iso: ModelIsomorphism, pair: PairDivisor) -> PairDivisor:
    """Transport pair data to the transformed model."""
    F = c.field
    target = transform(c, iso)
    if pair.kind == "zero":
        return pair
    if pair.kind == "doubled":
        P = transform_point(c, iso, CurvePoint("affine", x=pair.x0, y=pair.y0))
        if P.kind == "infinity":
            raise UnsupportedDivisor("doubled point moved to infinity")
        return pair_from_points(target, P, P)
    if pair.kind == "affine_inf":
        Pa = transform_point(c, iso, CurvePoint("affine", x=pair.x0, y=pair.y0))
        Pi = transform_point(c, iso, CurvePoint("infinity", branch=pair.branch))
        return pair_from_points(target, Pa, Pi)
    # quadratic Mumford data
    a, b = pair.a, pair.b
    rational = _quadratic_roots(F, a)
    if rational is not None:
        r1, r2 = rational
        P1 = transform_point(c, iso, CurvePoint("affine", x=r1, y=b(r1)))
        P2 = transform_point(c, iso, CurvePoint("affine", x=r2, y=b(r2)))
        return pair_from_points(target, P1, P2)
    at, bt = _transport_irreducible_quadratic(c, iso, a, b)
    return PairDivisor("quadratic", a=at, b=bt)


def _quadratic_roots(F: Field, a: Poly):
    """Roots of a monic quadratic in the base field, or None."""
    a1, a0 = a[1], a[0]
    sols = None
    try:
        sols = F.quad_solve(a1, F.neg(a0))  # y^2 + a1 y = -a0
    except NoSolutionCertificate:
        return None
    if not sols:
        return None
    if len(sols) == 1:
        return (sols[0], sols[0])
    return (sols[0], sols[1])


def _transport_irreducible_quadratic(c, iso, a: Poly, b: Poly):
    """Transport conjugate-pair Mumford data; all arithmetic in k[x]/(a)."""
    F = c.field
    al, be, ga, de = iso.mobius
    e, u = iso.yscale, iso.yshift
    s1 = F.neg(a[1])
    s2 = a[0]
    # W2 = (g r1 + d)(g r2 + d), P = (a r1 + b)(a r2 + b), S the mixed sum
    W2 = F.add(F.add(F.mul(F.mul(ga, ga), s2), F.mul(F.mul(ga, de), s1)), F.mul(de, de))
    Pprod = F.add(F.add(F.mul(F.mul(al, al), s2), F.mul(F.mul(al, be), s1)), F.mul(be, be))
    S = F.add(
        F.add(F.mul(F.from_int(2), F.mul(F.mul(al, ga), s2)),
              F.mul(F.add(F.mul(ga, be), F.mul(de, al)), s1)),
        F.mul(F.from_int(2), F.mul(de, be)),
    )
    if W2 == F.zero:
        raise UnsupportedDivisor("conjugate pair crossing infinity")
    invW2 = F.inv(W2)
    at = Poly(F, [F.mul(Pprod, invW2), F.neg(F.mul(S, invW2)), F.one])
    # b_t via the residue ring R = k[x]/(a)
    def rmul(p, q):
        return (p * q) % a

    def rinv(p):
        # inverse in R by extended gcd against a
        r0, r1 = a, p % a
        t0, t1 = Poly(F, []), Poly.const(F, F.one)
        while not r1.is_zero():
            q, r = r0.divrem(r1)
            r0, r1 = r1, r
            t0, t1 = t1, t0 - q * t1
        if r0.degree != 0:
            raise UnsupportedDivisor("non-invertible element in transport ring")
        return t0.scale(F.inv(r0[0])) % a

    wbar = Poly(F, [de, ga]) % a
    Bbar = (b.scale(e) + u) % a
    winv = rinv(wbar)
    w3inv = rmul(rmul(winv, winv), winv)
    xi = rmul(Bbar, w3inv)
    mbar = rmul(Poly(F, [be, al]) % a, winv)
    # solve xi = p*mbar + q with p, q in k
    m0, m1 = mbar[0], mbar[1]
    x0, x1 = xi[0], xi[1]
    if m1 == F.zero:
        raise UnsupportedDivisor("Moebius image collapsed in transport")
    p = F.div(x1, m1)
    q = F.sub(x0, F.mul(p, m0))
    bt = Poly(F, [q, p])
    return at, bt


def transform_mumford(c: CurveModel, iso: ModelIsomorphism, a: Poly, b: Poly):
    """Transport a Mumford divisor to a target model that is ramified at
    infinity, reducing pairs that cross infinity by the class identity
    [P + oo - 2 oo] = [P - oo].  Returns target (a, b)."""
    F = c.field
    target = transform(c, iso)
    if not target.is_ramified_at_infinity():
        raise UnsupportedDivisor("Mumford transport needs a ramified target")
    pair = pair_from_mumford(c, a, b)
    if pair.kind == "zero":
        return Poly.const(F, F.one), Poly(F, [])
    if pair.kind == "doubled":
        P = transform_point(c, iso, CurvePoint("affine", x=pair.x0, y=pair.y0))
        if P.kind == "infinity":
            raise UnsupportedDivisor("doubled point moved to infinity")
        ht, ft = target.h, target.f
        g = F.add(F.add(P.y, P.y), ht(P.x))
        if g == F.zero:
            raise UnsupportedDivisor("doubled Weierstrass point after transport")
        lam = F.div(F.sub(ft.deriv()(P.x), F.mul(ht.deriv()(P.x), P.y)), g)
        at = Poly(F, [F.mul(P.x, P.x), F.neg(F.add(P.x, P.x)), F.one])
        bt = Poly(F, [F.sub(P.y, F.mul(lam, P.x)), lam]) % at
        return at, bt
    if pair.kind == "quadratic":
        rational = _quadratic_roots(F, pair.a)
        if rational is None:
            return _transport_irreducible_quadratic(c, iso, pair.a, pair.b)
        pts = [
            transform_point(c, iso, CurvePoint("affine", x=r, y=pair.b(r)))
            for r in rational
        ]
    else:  # affine_inf
        pts = [
            transform_point(c, iso, CurvePoint("affine", x=pair.x0, y=pair.y0)),
            transform_point(c, iso, CurvePoint("infinity", branch=pair.branch)),
        ]
    affine = [P for P in pts if P.kind == "affine"]
    if len(affine) == 0:
        return Poly.const(F, F.one), Poly(F, [])
    if len(affine) == 1:
        P = affine[0]
        return Poly(F, [F.neg(P.x), F.one]), Poly.const(F, P.y)
    P1, P2 = affine
    if P1.x == P2.x:
        if P1.y == P2.y:
            raise UnsupportedDivisor("doubled point reached Mumford transport")
        return Poly.const(F, F.one), Poly(F, [])
    at = Poly(F, [F.mul(P1.x, P2.x), F.neg(F.add(P1.x, P2.x)), F.one])
    b1 = F.div(F.sub(P1.y, P2.y), F.sub(P1.x, P2.x))
    b0 = F.sub(P1.y, F.mul(b1, P1.x))
    return at, Poly(F, [b0, b1])


# ---------------------------------------------------------------------------
# The simplified model (odd characteristic) and its Kummer-coordinate map
# ---------------------------------------------------------------------------

def simplified_model(c: CurveModel) -> tuple[CurveModel, ModelIsomorphism]:
    """The model y^2 = 4f + h^2 with the isomorphism y -> 2y + h(x)."""
    F = c.field
    if F.characteristic() == 2:
        raise CharacteristicTwo("no simplified model in characteristic 2")
    iso = ModelIsomorphism(
        F, (F.one, F.zero, F.zero, F.one), F.from_int(2), c.h
    )
    target = transform(c, iso)
    return target, iso


def simplified_kummer_matrix(c: CurveModel) -> Matrix:
    """Matrix of the induced linear map on Kummer coordinates for the model
    change y -> 2y + h(x): the last coordinate maps to
    4*k4 - 2*(h0 h2 k1 + h0 h3 k2 + h1 h3 k3)."""
    F = c.field
    if F.characteristic() == 2:
        raise CharacteristicTwo("the coordinate change needs odd characteristic")
    two = F.from_int(2)
    h = c.h
    last = [
        F.neg(F.mul(two, F.mul(h[0], h[2]))),
        F.neg(F.mul(two, F.mul(h[0], h[3]))),
        F.neg(F.mul(two, F.mul(h[1], h[3]))),
        F.from_int(4),
    ]
    rows = [
        [F.one, F.zero, F.zero, F.zero],
        [F.zero, F.one, F.zero, F.zero],
        [F.zero, F.zero, F.one, F.zero],
        last,
    ]
    return Matrix(F, rows)


# ---------------------------------------------------------------------------
# Characteristic-2 normal forms
# ---------------------------------------------------------------------------

def _h_projective_roots(c: CurveModel):
    """Distinct roots of the cubic form extending h, with multiplicities.

    Returns a list of (value-or-INFINITY, multiplicity)."""
    F = c.field
    out = list(roots(c.h)) if c.h.degree >= 1 else []
    inf_mult = 3 - c.h.degree
    if inf_mult > 0:
        out.append((INFINITY, inf_mult))
    return out


def _mobius_one_to_infinity(F: Field, rho) -> tuple:
    """Matrix sending rho to infinity."""
    if rho is INFINITY:
        return (F.one, F.zero, F.zero, F.one)
    return (F.zero, F.one, F.one, F.neg(rho))


def _mobius_pair_to_zero_infinity(F: Field, s, d) -> tuple:
    """Matrix sending s to 0 and d to infinity (s != d)."""
    if s is INFINITY:
        return (F.zero, F.one, F.one, F.neg(d))
    if d is INFINITY:
        return (F.one, F.neg(s), F.zero, F.one)
    return (F.one, F.neg(s), F.one, F.neg(d))


def _mobius_triple_to_zero_infinity_one(F: Field, s1, s2, s3) -> tuple:
    """Matrix sending (s1, s2, s3) to (0, infinity, 1); pairwise distinct."""
    if s1 is INFINITY:
        # x -> (s3 - s2)/(x - s2)
        return (F.zero, F.sub(s3, s2), F.one, F.neg(s2))
    if s2 is INFINITY:
        # x -> (x - s1)/(s3 - s1)
        return (F.one, F.neg(s1), F.zero, F.sub(s3, s1))
    if s3 is INFINITY:
        return (F.one, F.neg(s1), F.one, F.neg(s2))
    lam = F.div(F.sub(s3, s2), F.sub(s3, s1))
    return (lam, F.neg(F.mul(lam, s1)), F.one, F.neg(s2))


def char2_normal_form(c: CurveModel) -> tuple[str, CurveModel, ModelIsomorphism]:
    """Reduce a characteristic-2 curve to h in {1, x, x^2 + x} with
    f = f1 x + f3 x^3 + f5 x^5.

    The case is determined by the number of distinct projective roots of the
    cubic form extending h (1, 2, or 3 for cases a, b, c).  Raises
    RootsNotRational when a root or an Artin-Schreier preimage needed for the
    reduction does not lie in the base field, SingularCurve when the case's
    nonsingularity condition fails.
    """
    F = c.field
    if F.characteristic() != 2:
        raise CharacteristicTwo("normal forms are for characteristic 2")
    v = validate(c)
    if not v.ok:
        raise SingularCurve(v.reason)
    rts = _h_projective_roots(c)
    if sum(m for _r, m in rts) != 3:
        raise RootsNotRational("the cubic form extending h does not split over the base field")
    rts.sort(key=lambda rm: (rm[0] is INFINITY, F.sort_key(rm[0]) if rm[0] is not INFINITY else 0))
    distinct = [r for r, _m in rts]
    n = len(distinct)
    if n == 1:
        case = "a"
        mob = _mobius_one_to_infinity(F, distinct[0])
    elif n == 2:
        case = "b"
        simple = next(r for r, m in rts if m == 1)
        double = next(r for r, m in rts if m == 2)
        mob = _mobius_pair_to_zero_infinity(F, simple, double)
    else:
        case = "c"
        affine_roots = [r for r in distinct if r is not INFINITY]
        if len(affine_roots) == 3:
            r0, rinf, r1 = affine_roots
        else:
            r0, r1 = affine_roots
            rinf = INFINITY
        mob = _mobius_triple_to_zero_infinity_one(F, r0, rinf, r1)
    iso1 = ModelIsomorphism(F, mob, F.one, Poly(F, []))
    c1 = transform(c, iso1)
    # rescale y so that h is exactly 1, x, or x^2 + x
    target_h = {
        "a": Poly.const(F, F.one),
        "b": Poly.x(F),
        "c": Poly(F, [F.zero, F.one, F.one]),
    }[case]
    lead = c1.h[c1.h.degree] if not c1.h.is_zero() else F.zero
    if c1.h.is_zero() or c1.h.scale(F.inv(lead)) != target_h:
        raise SingularCurve("h did not reach its normal shape; curve degenerate")
    iso2 = ModelIsomorphism(
        F, (F.one, F.zero, F.zero, F.one), F.inv(lead), Poly(F, [])
    )
    c2 = transform(c1, iso2)
    # y-shift killing the even coefficients of f
    fq = c2.f
    sqrt = F.sqrt
    if case == "a":
        u3 = sqrt(fq[6])
        u2 = sqrt(fq[4])
        u1 = sqrt(F.add(fq[2], u2))
        u0 = F._artin_schreier_solve(fq[0])  # type: ignore[attr-defined]
        if u0 is None:
            raise RootsNotRational("constant-term reduction has no rational preimage")
    elif case == "b":
        u0 = sqrt(fq[0])
        u3 = sqrt(fq[6])
        u2 = sqrt(F.add(fq[4], u3))
        u1 = F._artin_schreier_solve(fq[2])  # type: ignore[attr-defined]
        if u1 is None:
            raise RootsNotRational("x^2 coefficient reduction has no rational preimage")
    else:
        u0 = sqrt(fq[0])
        u3 = sqrt(fq[6])
        u2 = F._artin_schreier_solve(F.add(fq[4], u3))  # type: ignore[attr-defined]
        if u2 is None:
            raise RootsNotRational("x^4 coefficient reduction has no rational preimage")
        u1 = F._artin_schreier_solve(F.add(fq[2], u0))  # type: ignore[attr-defined]
        if u1 is None:
            raise RootsNotRational("x^2 coefficient reduction has no rational preimage")
    iso3 = ModelIsomorphism(F, (F.one, F.zero, F.zero, F.one), F.one, Poly(F, [u0, u1, u2, u3]))
    c3 = transform(c2, iso3)
    for i in (0, 2, 4, 6):
        assert c3.f[i] == F.zero, "even coefficient survived the reduction"
    assert c3.h == target_h
    f1, f3, f5 = c3.f[1], c3.f[3], c3.f[5]
    if case == "a":
        ok = f5 != F.zero
    elif case == "b":
        ok = f1 != F.zero and f5 != F.zero
    else:
        beta = normal_form_beta(F, f1, f3, f5)
        ok = f1 != F.zero and f5 != F.zero and beta != F.zero
    if not ok:
        raise SingularCurve(f"case ({case}) nonsingularity condition failed")
    iso = iso1.compose(iso2).compose(iso3)
    return case, c3, iso


def normal_form_beta(F: Field, f1, f3, f5):
    """f1 + f3 + f5 + f1^2 + f3^2 + f5^2, the extra case-(c) invariant."""
    s = F.add(F.add(f1, f3), f5)
    sq = F.add(F.add(F.mul(f1, f1), F.mul(f3, f3)), F.mul(f5, f5))
    return F.add(s, sq)


def normal_form_curve(F: Field, case: str, f1, f3, f5) -> CurveModel:
    """Build the normal-form curve of the given case; raises SingularCurve
    when the case condition fails."""
    h = {
        "a": Poly.const(F, F.one),
        "b": Poly.x(F),
        "c": Poly(F, [F.zero, F.one, F.one]),
    }[case]
    f = Poly(F, [F.zero, f1, F.zero, f3, F.zero, f5])
    c = CurveModel(F, f, h)
    if case == "a" and f5 == F.zero:
        raise SingularCurve("case (a) needs f5 != 0")
    if case == "b" and (f1 == F.zero or f5 == F.zero):
        raise SingularCurve("case (b) needs f1 f5 != 0")
    if case == "c" and (
        f1 == F.zero or f5 == F.zero or normal_form_beta(F, f1, f3, f5) == F.zero
    ):
        raise SingularCurve("case (c) needs f1 f5 (f1+f3+f5+f1^2+f3^2+f5^2) != 0")
    return c
