"""Shared test helpers: independently transcribed classical quartic tables
(the h = 0 specialization) and small conveniences."""

from g2kummer.kummer import kummer_coords
from g2kummer.jacobian import to_point_pair


def classical_k1(F, f):
    m = F.mul
    n = F.neg
    i2, i4 = F.from_int(2), F.from_int(4)
    return {
        (3, 0, 0): n(m(i4, f[0])),
        (2, 1, 0): n(m(i2, f[1])),
        (2, 0, 1): n(m(i4, f[2])),
        (1, 1, 1): n(m(i2, f[3])),
        (1, 0, 2): n(m(i4, f[4])),
        (0, 1, 2): n(m(i2, f[5])),
        (0, 0, 3): n(m(i4, f[6])),
    }


def classical_k0(F, f):
    def m(*vals):
        acc = F.one
        for v in vals:
            acc = F.mul(acc, v)
        return acc

    def s(*terms):
        acc = F.zero
        for t in terms:
            acc = F.add(acc, t)
        return acc

    n = F.neg
    c2, c4, c8 = (F.from_int(k) for k in (2, 4, 8))
    return {
        (4, 0, 0): s(n(m(c4, f[0], f[2])), m(f[1], f[1])),
        (3, 1, 0): n(m(c4, f[0], f[3])),
        (3, 0, 1): n(m(c2, f[1], f[3])),
        (2, 2, 0): n(m(c4, f[0], f[4])),
        (2, 1, 1): s(m(c4, f[0], f[5]), n(m(c4, f[1], f[4]))),
        (2, 0, 2): s(n(m(c4, f[0], f[6])), m(c2, f[1], f[5]), n(m(c4, f[2], f[4])), m(f[3], f[3])),
        (1, 3, 0): n(m(c4, f[0], f[5])),
        (1, 2, 1): s(m(c8, f[0], f[6]), n(m(c4, f[1], f[5]))),
        (1, 1, 2): s(m(c4, f[1], f[6]), n(m(c4, f[2], f[5]))),
        (1, 0, 3): n(m(c2, f[3], f[5])),
        (0, 4, 0): n(m(c4, f[0], f[6])),
        (0, 3, 1): n(m(c4, f[1], f[6])),
        (0, 2, 2): n(m(c4, f[2], f[6])),
        (0, 1, 3): n(m(c4, f[3], f[6])),
        (0, 0, 4): s(n(m(c4, f[4], f[6])), m(f[5], f[5])),
    }


def kappa_of(c, wm, D):
    return kummer_coords(c, to_point_pair(wm, D)).normalized()
