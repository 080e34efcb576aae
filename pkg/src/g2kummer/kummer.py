"""The Kummer surface of a genus-2 Jacobian: coordinates, quartic, torsion.

The coordinate map sends the class of an affine pair {(x, y), (u, v)} to

    (1 : x+u : xu : (F0(x,u) - 2yv - h(x)v - h(u)y) / (x-u)^2),

where F0 is the symmetric biquadratic 2f0 + f1(x+u) + 2f2 xu + f3(x+u)xu +
2f4(xu)^2 + f5(x+u)(xu)^2 + 2f6(xu)^3.  The image satisfies a quartic
K2*k4^2 + K1*k4 + K0 = 0 whose coefficient tables (in f0..f6, h0..h3) are
transcribed below.  Everything is evaluated through base-field symmetric
functions, so conjugate pairs never require extension arithmetic.

Degenerate classes are covered by once-derived limits:

- a doubled affine non-Weierstrass point (x, y) maps to (1 : 2x : x^2 : L)
  with L = -(f2 + 2f3 x + 4f4 x^2 + 6f5 x^3 + 9f6 x^4) + (d^2 + h'dG)/G^2,
  G = 2y + h(x), d = f'(x) - h'(x)y;
- a pair {(x, y), infinity-branch r} maps to
  (0 : 1 : x : f5 x^2 + 2f6 x^3 - (2y + h(x))r - h3 y);
- the zero class maps to (0 : 0 : 0 : 1).

Doubled Weierstrass and doubled infinite points are unsupported (callers
resample; the gap has measure zero).
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (
    Matrix,
    Poly,
    QUARTIC4,
    eval_quartic,
    irreducible_quadratic_factors,
    roots,
)
from .curve import CurveModel, PairDivisor, simplified_rhs, validate
from .errors import (
    FormulaSetMissing,
    TwoTorsionK2Zero,
    UnsupportedDivisor,
    UnsupportedField,
)
from .field import Field


class KummerPoint:
    """Projective quadruple of raw field values, not all zero."""

    __slots__ = ("field", "coords")

    def __init__(self, field: Field, coords):
        coords = tuple(coords)
        if len(coords) != 4 or all(v == field.zero for v in coords):
            raise ValueError("a Kummer point is a nonzero quadruple")
        self.field = field
        self.coords = coords

    def normalized(self) -> "KummerPoint":
        """Scale so the first nonzero coordinate is one."""
        F = self.field
        for v in self.coords:
            if v != F.zero:
                inv = F.inv(v)
                return KummerPoint(F, [F.mul(inv, w) for w in self.coords])
        raise AssertionError("unreachable")

    def proportional(self, other: "KummerPoint") -> bool:
        F = self.field
        a, b = self.coords, other.coords
        for i in range(4):
            for j in range(i + 1, 4):
                if F.mul(a[i], b[j]) != F.mul(a[j], b[i]):
                    return False
        return True

    def __eq__(self, other):
        return (
            isinstance(other, KummerPoint)
            and self.field == other.field
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash((self.field, self.coords))

    def __repr__(self):
        return "(" + ":".join(self.field.to_str(v) for v in self.coords) + ")"

    def text(self) -> str:
        return ":".join(self.field.to_str(v) for v in self.coords)


def kummer_point_from_text(F: Field, text: str) -> KummerPoint:
    return KummerPoint(F, [F.parse(tok) for tok in text.split(":")])


def zero_class_point(F: Field) -> KummerPoint:
    return KummerPoint(F, (F.zero, F.zero, F.zero, F.one))


# ---------------------------------------------------------------------------
# The defining quartic
# ---------------------------------------------------------------------------

def _mono(F, *vals):
    r = F.one
    for v in vals:
        r = F.mul(r, v)
    return r


def _lin(F, *terms):
    acc = F.zero
    for t in terms:
        acc = F.add(acc, t)
    return acc


@dataclass(frozen=True)
class KummerQuartic:
    """Per-curve coefficient tables of the quartic K2*k4^2 + K1*k4 + K0.

    ``c2``, ``c1``, ``c0`` map exponent triples (e1, e2, e3) in k1..k3 to raw
    coefficients; ``vector`` is the same quartic over the QUARTIC4 basis.
    """

    curve: CurveModel
    c2: dict
    c1: dict
    c0: dict
    vector: tuple


def quartic_from_curve(c: CurveModel) -> KummerQuartic:
    F = c.field
    f = [c.f[i] for i in range(7)]
    h = [c.h[i] for i in range(4)]
    n = F.neg
    i2, i3, i4, i8 = (F.from_int(k) for k in (2, 3, 4, 8))
    m = lambda *a: _mono(F, *a)
    lin = lambda *t: _lin(F, *t)

    c2 = {(0, 2, 0): F.one, (1, 0, 1): n(i4)}

    c1 = {
        (3, 0, 0): n(F.add(m(i4, f[0]), m(h[0], h[0]))),
        (2, 1, 0): n(F.add(m(i2, f[1]), m(h[0], h[1]))),
        (2, 0, 1): lin(n(m(i4, f[2])), n(m(h[1], h[1])), m(i2, h[0], h[2])),
        (1, 2, 0): n(m(h[0], h[2])),
        (1, 1, 1): lin(n(m(h[1], h[2])), n(m(i2, f[3])), m(i3, h[0], h[3])),
        (1, 0, 2): lin(m(i2, h[1], h[3]), n(m(h[2], h[2])), n(m(i4, f[4]))),
        (0, 3, 0): n(m(h[0], h[3])),
        (0, 2, 1): n(m(h[1], h[3])),
        (0, 1, 2): n(F.add(m(h[2], h[3]), m(i2, f[5]))),
        (0, 0, 3): n(F.add(m(i4, f[6]), m(h[3], h[3]))),
    }

    c0 = {
        (4, 0, 0): lin(n(m(i4, f[0], f[2])), n(m(f[0], h[1], h[1])), m(f[1], f[1]),
                       m(f[1], h[0], h[1]), n(m(f[2], h[0], h[0]))),
        (3, 1, 0): lin(n(m(i4, f[0], f[3])), n(m(i2, f[0], h[1], h[2])),
                       m(f[1], h[0], h[2]), n(m(f[3], h[0], h[0]))),
        (3, 0, 1): lin(m(i2, f[0], h[1], h[3]), n(m(i2, f[1], f[3])), n(m(f[1], h[0], h[3])),
                       n(m(f[1], h[1], h[2])), m(i2, f[2], h[0], h[2]), n(m(f[3], h[0], h[1]))),
        (2, 2, 0): lin(n(m(i4, f[0], f[4])), n(m(i2, f[0], h[1], h[3])), n(m(f[0], h[2], h[2])),
                       m(f[1], h[0], h[3]), n(m(f[4], h[0], h[0]))),
        (2, 1, 1): lin(m(i4, f[0], f[5]), m(i2, f[0], h[2], h[3]), n(m(i4, f[1], f[4])),
                       n(m(f[1], h[1], h[3])), n(m(f[1], h[2], h[2])), m(i2, f[2], h[0], h[3]),
                       m(f[3], h[0], h[2]), n(m(i2, f[4], h[0], h[1])), m(f[5], h[0], h[0])),
        (2, 0, 2): lin(n(m(i4, f[0], f[6])), n(m(f[0], h[3], h[3])), m(i2, f[1], f[5]),
                       m(f[1], h[2], h[3]), n(m(i4, f[2], f[4])), n(m(f[2], h[2], h[2])),
                       m(f[3], f[3]), m(f[3], h[0], h[3]), m(f[3], h[1], h[2]),
                       n(m(f[4], h[1], h[1])), m(f[5], h[0], h[1]), n(m(f[6], h[0], h[0]))),
        (1, 3, 0): lin(n(m(i4, f[0], f[5])), n(m(i2, f[0], h[2], h[3])), n(m(f[5], h[0], h[0]))),
        (1, 2, 1): lin(m(i8, f[0], f[6]), m(i2, f[0], h[3], h[3]), n(m(i4, f[1], f[5])),
                       n(m(i2, f[1], h[2], h[3])), m(f[3], h[0], h[3]),
                       n(m(i2, f[5], h[0], h[1])), m(i2, f[6], h[0], h[0])),
        (1, 1, 2): lin(m(i4, f[1], f[6]), m(f[1], h[3], h[3]), n(m(i4, f[2], f[5])),
                       n(m(i2, f[2], h[2], h[3])), m(f[3], h[1], h[3]), m(i2, f[4], h[0], h[3]),
                       n(m(f[5], h[0], h[2])), n(m(f[5], h[1], h[1])), m(i2, f[6], h[0], h[1])),
        (1, 0, 3): lin(n(m(i2, f[3], f[5])), n(m(f[3], h[2], h[3])), m(i2, f[4], h[1], h[3]),
                       n(m(f[5], h[0], h[3])), n(m(f[5], h[1], h[2])), m(i2, f[6], h[0], h[2])),
        (0, 4, 0): lin(n(m(i4, f[0], f[6])), n(m(f[0], h[3], h[3])), n(m(f[6], h[0], h[0]))),
        (0, 3, 1): lin(n(m(i4, f[1], f[6])), n(m(f[1], h[3], h[3])), n(m(i2, f[6], h[0], h[1]))),
        (0, 2, 2): lin(n(m(i4, f[2], f[6])), n(m(f[2], h[3], h[3])), m(f[5], h[0], h[3]),
                       n(m(i2, f[6], h[0], h[2])), n(m(f[6], h[1], h[1]))),
        (0, 1, 3): lin(n(m(i4, f[3], f[6])), n(m(f[3], h[3], h[3])), m(f[5], h[1], h[3]),
                       n(m(i2, f[6], h[1], h[2]))),
        (0, 0, 4): lin(n(m(i4, f[4], f[6])), n(m(f[4], h[3], h[3])), m(f[5], f[5]),
                       m(f[5], h[2], h[3]), n(m(f[6], h[2], h[2]))),
    }

    vec = [F.zero] * QUARTIC4.size
    for (e1, e2, e3), co in c2.items():
        vec[QUARTIC4.index[(e1, e2, e3, 2)]] = F.add(vec[QUARTIC4.index[(e1, e2, e3, 2)]], co)
    for (e1, e2, e3), co in c1.items():
        vec[QUARTIC4.index[(e1, e2, e3, 1)]] = F.add(vec[QUARTIC4.index[(e1, e2, e3, 1)]], co)
    for (e1, e2, e3), co in c0.items():
        vec[QUARTIC4.index[(e1, e2, e3, 0)]] = F.add(vec[QUARTIC4.index[(e1, e2, e3, 0)]], co)
    return KummerQuartic(c, c2, c1, c0, tuple(vec))


def on_surface(q: KummerQuartic, k: KummerPoint) -> bool:
    F = q.curve.field
    return eval_quartic(F, list(q.vector), k.coords) == F.zero


# ---------------------------------------------------------------------------
# The coordinate map
# ---------------------------------------------------------------------------

def _f0_symmetric(c: CurveModel, s1, s2):
    F = c.field
    two = F.from_int(2)
    f = c.f
    s2sq = F.mul(s2, s2)
    return _lin(
        F,
        _mono(F, two, f[0]),
        _mono(F, f[1], s1),
        _mono(F, two, f[2], s2),
        _mono(F, f[3], s1, s2),
        _mono(F, two, f[4], s2sq),
        _mono(F, f[5], s1, s2sq),
        _mono(F, two, f[6], s2, s2sq),
    )


def kummer_coords(c: CurveModel, pair: PairDivisor) -> KummerPoint:
    """Kummer coordinates of a divisor class given as pair data."""
    F = c.field
    if pair.kind == "zero":
        return zero_class_point(F)
    if pair.kind == "quadratic":
        a, b = pair.a, pair.b
        s1 = F.neg(a[1])
        s2 = a[0]
        b0, b1 = b[0], b[1]
        yv = _lin(
            F,
            _mono(F, b1, b1, s2),
            _mono(F, b0, b1, s1),
            _mono(F, b0, b0),
        )
        # cross sums T_i = x^i v + u^i y for the pair {(x, y), (u, v)}
        two = F.from_int(2)
        s1sq = F.mul(s1, s1)
        t0 = F.add(_mono(F, b1, s1), _mono(F, two, b0))
        t1 = F.add(_mono(F, two, b1, s2), _mono(F, b0, s1))
        t2 = F.add(_mono(F, b1, s1, s2), _mono(F, b0, F.sub(s1sq, F.mul(two, s2))))
        t3 = F.add(
            _mono(F, b1, s2, F.sub(s1sq, F.mul(two, s2))),
            _mono(F, b0, s1, F.sub(s1sq, _mono(F, F.from_int(3), s2))),
        )
        h = c.h
        hterm = _lin(F, _mono(F, h[0], t0), _mono(F, h[1], t1), _mono(F, h[2], t2), _mono(F, h[3], t3))
        num = F.sub(F.sub(_f0_symmetric(c, s1, s2), F.mul(two, yv)), hterm)
        den = F.sub(s1sq, F.mul(F.from_int(4), s2))
        return KummerPoint(F, (F.one, s1, s2, F.div(num, den)))
    if pair.kind == "doubled":
        x, y = pair.x0, pair.y0
        fp, hp = c.f.deriv(), c.h.deriv()
        G = F.add(F.add(y, y), c.h(x))
        if G == F.zero:
            raise UnsupportedDivisor("doubled Weierstrass point")
        d = F.sub(fp(x), F.mul(hp(x), y))
        A = F.zero
        for coef, i in ((1, 2), (2, 3), (4, 4), (6, 5), (9, 6)):
            t = F.mul(F.from_int(coef), c.f[i])
            for _ in range(i - 2):
                t = F.mul(t, x)
            A = F.add(A, t)
        num = F.add(F.mul(d, d), _mono(F, hp(x), d, G))
        k4 = F.add(F.neg(A), F.div(num, F.mul(G, G)))
        return KummerPoint(F, (F.one, F.add(x, x), F.mul(x, x), k4))
    if pair.kind == "affine_inf":
        x, y, r = pair.x0, pair.y0, pair.branch
        two = F.from_int(2)
        k4 = _lin(
            F,
            _mono(F, c.f[5], x, x),
            _mono(F, two, c.f[6], x, x, x),
            F.neg(_mono(F, F.add(F.add(y, y), c.h(x)), r)),
            F.neg(_mono(F, c.h[3], y)),
        )
        return KummerPoint(F, (F.zero, F.one, x, k4))
    raise UnsupportedDivisor(f"unsupported pair kind {pair.kind!r}")


# ---------------------------------------------------------------------------
# Two-torsion
# ---------------------------------------------------------------------------

@dataclass
class TwoTorsionData:
    """A rational two-torsion class with the derived translation data.

    In characteristic 2 the class comes from two distinct Weierstrass points
    {Q1, Q2} with h(x) = (x - x1)(x - x2) t(x) (Q2 may be the infinite
    point, in which case h = (x - x1) t(x) and h3 = 0); the quantities
    t, b'...c, k' feed the printed translation matrix.  k2 != 0 always holds
    here: distinct x1, x2 give k2 = x1 + x2 != 0, and the infinity case has
    k2 = 1.  In odd characteristic the class comes from a monic quadratic
    factor s of 4f + h^2 and only ``divisor``, ``kummer``, ``s``, ``t`` are
    populated; translation matrices are then synthesized, not transcribed.
    """

    case_tag: str  # "affineAffine" | "affineInfinity"
    divisor: PairDivisor
    kummer: KummerPoint
    s: Poly
    t: Poly
    t0: object = None
    t1: object = None
    bp: tuple = None  # (b'0, b'1, b'2, b'3)
    cc: object = None
    kp: tuple = None  # (k'1, k'2, k'3, k'4)
    r6: object = None
    label: str = ""

    def require_kp(self):
        if self.kp is None:
            raise TwoTorsionK2Zero(
                "k2 = 0: the k'_i normalization of this class is undefined"
            )
        return self.kp


def two_torsion_classes(c: CurveModel) -> list[TwoTorsionData]:
    """All rational two-torsion classes with their derived data."""
    F = c.field
    if F.order() is None:
        raise UnsupportedField("two-torsion enumeration needs a finite field")
    if F.characteristic() == 2:
        return _two_torsion_char2(c)
    return _two_torsion_odd(c)


def _interp_line(F, x1, y1, x2, y2) -> Poly:
    b1 = F.div(F.sub(y1, y2), F.sub(x1, x2))
    return Poly(F, [F.sub(y1, F.mul(b1, x1)), b1])


def _two_torsion_char2(c: CurveModel) -> list[TwoTorsionData]:
    F = c.field
    h, f = c.h, c.f
    out = []
    hroots = [r for r, _m in roots(h)] if h.degree >= 1 else []
    # affine-affine classes from pairs of distinct rational roots
    for i in range(len(hroots)):
        for j in range(i + 1, len(hroots)):
            x1, x2 = hroots[i], hroots[j]
            y1, y2 = F.sqrt(f(x1)), F.sqrt(f(x2))
            s = Poly(F, [F.mul(x1, x2), F.add(x1, x2), F.one])
            b = _interp_line(F, x1, y1, x2, y2)
            out.append(_char2_affine_data(c, s, b, label=f"aa:{F.to_str(x1)},{F.to_str(x2)}"))
    # affine-affine classes from irreducible quadratic factors (conjugate pairs)
    for q in irreducible_quadratic_factors(h):
        s1 = q[1]  # x1 + x2 in characteristic 2
        s2 = q[0]
        frem = f % q
        c1 = frem[1]
        c0 = frem[0]
        # y1 + y2 = sqrt(f(x1) + f(x2)) = sqrt(c1*s1); cross term similarly
        b1 = F.div(F.sqrt(F.mul(c1, s1)), s1)
        b0 = F.div(F.sqrt(F.add(_mono(F, c1, s2, s1), _mono(F, c0, s1, s1))), s1)
        b = Poly(F, [b0, b1])
        out.append(_char2_affine_data(c, q, b, label=f"aa:irr:{F.to_str(q[0])},{F.to_str(q[1])}"))
    # affine-infinity classes (the infinite point is Weierstrass iff h3 = 0)
    if h[3] == F.zero and not h.is_zero():
        for r in hroots:
            out.append(_char2_infinity_data(c, r, label=f"ai:{F.to_str(r)}"))
    return out


def _char2_affine_data(c: CurveModel, s: Poly, b: Poly, label: str) -> TwoTorsionData:
    F = c.field
    t = c.h.exact_div(s)
    pair = PairDivisor("quadratic", a=s, b=b)
    k = kummer_coords(c, pair)
    k1, k2, k3, k4 = k.coords
    assert k2 != F.zero, "k2 = x1 + x2 cannot vanish for distinct roots in char 2"
    inv = F.inv(k2)
    kp = tuple(F.mul(inv, v) for v in (k1, k2, k3, k4))
    s1 = F.neg(s[1])  # x1 + x2 (equals s[1] in char 2)
    invs1 = F.inv(s1)
    bp0 = F.mul(b[1], invs1)
    bp1 = F.mul(b[0], invs1)
    # b'2, b'3 from the normalization recurrences
    ratio2 = F.div(kp[1], kp[0])  # k'2/k'1 = x1 + x2
    ratio3 = F.div(kp[2], kp[0])  # k'3/k'1 = x1 x2
    bp2 = F.add(F.mul(bp1, ratio2), F.mul(bp0, ratio3))
    bp3 = F.add(F.mul(bp2, ratio2), F.mul(bp1, ratio3))
    # c = y1 y2 / (x1 + x2); y1 y2 = sqrt(f(x1) f(x2)) with f mod s = c1 x + c0
    frem = c.f % s
    c1v, c0v = frem[1], frem[0]
    prod = _lin(
        F,
        _mono(F, c1v, c1v, s[0]),
        _mono(F, c0v, c1v, F.neg(s[1])),
        _mono(F, c0v, c0v),
    )
    cc = F.mul(F.sqrt(prod), invs1)
    return TwoTorsionData(
        case_tag="affineAffine",
        divisor=pair,
        kummer=k,
        s=s,
        t=t,
        t0=t[0],
        t1=t[1],
        bp=(bp0, bp1, bp2, bp3),
        cc=cc,
        kp=kp,
        label=label,
    )


def _char2_infinity_data(c: CurveModel, x1, label: str) -> TwoTorsionData:
    F = c.field
    s = Poly(F, [x1, F.one])  # x - x1
    t = c.h.exact_div(s)
    y1 = F.sqrt(c.f(x1))
    r6 = F.sqrt(c.f[6])
    pair = PairDivisor("affine_inf", x0=x1, y0=y1, branch=r6)
    k = kummer_coords(c, pair)
    k1, k2, k3, k4 = k.coords
    assert k2 == F.one
    kp = (k1, k2, k3, k4)
    bp0 = r6
    bp1 = F.mul(r6, kp[2])
    bp2 = F.mul(bp1, kp[2])
    bp3 = F.add(F.mul(bp2, kp[2]), y1)
    cc = F.mul(y1, r6)
    return TwoTorsionData(
        case_tag="affineInfinity",
        divisor=pair,
        kummer=k,
        s=s,
        t=t,
        t0=t[0],
        t1=t[1],
        bp=(bp0, bp1, bp2, bp3),
        cc=cc,
        kp=kp,
        r6=r6,
        label=label,
    )


def _two_torsion_odd(c: CurveModel) -> list[TwoTorsionData]:
    F = c.field
    g = simplified_rhs(c)
    half = F.inv(F.from_int(2))
    out = []
    groots = [r for r, _m in roots(g)]
    quads = []
    for i in range(len(groots)):
        for j in range(i + 1, len(groots)):
            x1, x2 = groots[i], groots[j]
            quads.append(Poly(F, [F.mul(x1, x2), F.neg(F.add(x1, x2)), F.one]))
    quads.extend(irreducible_quadratic_factors(g))
    for s in quads:
        t = g.exact_div(s)
        b = (c.h.scale(F.neg(half))) % s
        pair = PairDivisor("quadratic", a=s, b=b)
        k = kummer_coords(c, pair)
        kp = None
        if k.coords[1] != F.zero:
            inv = F.inv(k.coords[1])
            kp = tuple(F.mul(inv, v) for v in k.coords)
        out.append(
            TwoTorsionData(
                case_tag="affineAffine",
                divisor=pair,
                kummer=k,
                s=s,
                t=t,
                kp=kp,
                label="s:" + ",".join(F.to_str(s[i]) for i in range(3)),
            )
        )
    return out


# ---------------------------------------------------------------------------
# Translation by a two-torsion class
# ---------------------------------------------------------------------------

def w_matrix_char2(c: CurveModel, T: TwoTorsionData) -> Matrix:
    """The unified translation matrix (characteristic 2), transcribed.

    The entries reference only the odd coefficients f1, f3, f5 of f; the even
    ones enter through the b' and c data.  Oracle-checked for general f and
    every admissible h, both class shapes."""
    F = c.field
    if F.characteristic() != 2:
        raise UnsupportedField("the transcribed matrix is for characteristic 2")
    f1, f3, f5 = c.f[1], c.f[3], c.f[5]
    t0, t1 = T.t0, T.t1
    b0, b1, b2, b3 = T.bp
    cc = T.cc
    k1, k2, k3, k4 = T.require_kp()
    m = lambda *a: _mono(F, *a)
    lin = lambda *t: _lin(F, *t)
    w41 = lin(m(t0, f1, b0), m(t0, f3, b2), m(t0, t0, cc), m(t1, f1, b1), m(f3, f1, k1))
    w42 = lin(m(t0, f5, b3), m(t0, t1, cc), m(t1, f1, b0), m(f1, f5, k2))
    w43 = lin(m(t0, f5, b2), m(t1, f3, b1), m(t1, f5, b3), m(t1, t1, cc), m(f3, f5, k3))
    rows = [
        [lin(m(t1, b2), k4), lin(m(t1, b1), m(f5, k3)), lin(m(t1, b0), m(f5, k2)), k1],
        [lin(m(t0, b2), m(t1, b3), m(f3, k3)), lin(m(t0, b1), m(t1, b2), k4),
         lin(m(t0, b0), m(t1, b1), m(f3, k1)), k2],
        [lin(m(t0, b3), m(f1, k2)), lin(m(t0, b2), m(f1, k1)), lin(m(t0, b1), k4), k3],
        [w41, w42, w43, k4],
    ]
    return Matrix(F, rows)


def translate_by_two_torsion(
    c: CurveModel, T: TwoTorsionData, k: KummerPoint, w: Matrix | None = None
) -> KummerPoint:
    """W * k for the translation matrix of the class T.

    Characteristic 2 uses the transcribed matrix; odd characteristic needs a
    synthesized matrix passed in ``w`` (FormulaSetMissing otherwise)."""
    F = c.field
    if w is None:
        if F.characteristic() != 2:
            raise FormulaSetMissing(
                "odd-characteristic translation needs a synthesized matrix"
            )
        w = w_matrix_char2(c, T)
    return KummerPoint(F, w.apply(list(k.coords)))
