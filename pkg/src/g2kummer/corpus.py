"""The default verification corpus: a fixed, deterministic set of curves
spanning 61-bit and small odd prime fields, the three characteristic-2
normal-form cases over GF(2^16) plus non-normal-form char-2 curves, and one
rational curve with small coefficients and plenty of small points."""

from __future__ import annotations

import os
from fractions import Fraction

from .algebra import Poly
from .curve import CurveModel, validate
from .field import BinaryField, PrimeField, RationalField

M61 = (1 << 61) - 1


def _prime_curve(p: int, fints, hints) -> CurveModel:
    F = PrimeField(p)
    return CurveModel(F, Poly.from_ints(F, fints), Poly.from_ints(F, hints))


def _binary_curve(fints, hints) -> CurveModel:
    F = BinaryField(16, 0x1002B)
    return CurveModel(F, Poly(F, list(fints)), Poly(F, list(hints)))


def _with_weierstrass(p: int, hints, quintic, root) -> CurveModel:
    """Degree-6 model over GF(p) built so 4f + h^2 = (x - root) * quintic,
    guaranteeing a rational Weierstrass point for the oracle link."""
    F = PrimeField(p)
    h = Poly.from_ints(F, hints)
    g = Poly.from_ints(F, [F.neg(F.from_int(root)), 1]) * Poly.from_ints(F, quintic)
    f = (g - h * h).scale(F.inv(F.from_int(4)))
    return CurveModel(F, f, h)


def _torsion_rich(p: int, hints) -> CurveModel:
    """Odd-characteristic curve whose 4f + h^2 splits into rational linear
    factors, giving many rational two-torsion classes."""
    F = PrimeField(p)
    h = Poly.from_ints(F, hints)
    g = Poly.from_ints(F, [-1, 0, 1])  # x^2 - 1
    for r in (2, 3, 5):
        g = g * Poly.from_ints(F, [-r, 1])
    f = (g - h * h).scale(F.inv(F.from_int(4)))
    return CurveModel(F, f, h)


def _rational_curve() -> CurveModel:
    # chosen by exhaustive search over |coefficients| <= 3 to maximize the
    # number of small-height points available to the oracle sampler
    Q = RationalField()
    f = Poly(Q, [Fraction(v) for v in (0, 3, 2, -3, 0, 2)])
    h = Poly(Q, [Fraction(3), Fraction(-3)])
    return CurveModel(Q, f, h)


def default_corpus() -> list[tuple[str, CurveModel]]:
    entries = [
        ("m61_h3_f6", _with_weierstrass(M61, [1, 2, 0, 1], [3, 1, 4, 1, 5, 1], 7)),
        ("m61_h2_f5", _prime_curve(M61, [2, 5, 1, 3, 0, 1], [1, 0, 1])),
        ("m61_h0_f5", _prime_curve(M61, [1, 0, 0, 2, 0, 1], [])),
        ("m61_2tors", _torsion_rich(M61, [0, 1])),
        ("p1009_h3_f6", _with_weierstrass(1009, [2, 1, 1, 1], [1, 0, 2, 0, 3, 1], 11)),
        ("p1009_h0_f5", _prime_curve(1009, [1, 1, 0, 0, 0, 1], [])),
        ("p1009_2tors", _torsion_rich(1009, [0, 1])),
        ("c2_case_a", _binary_curve([0, 3, 0, 7, 0, 11], [1])),
        ("c2_case_b", _binary_curve([0, 3, 0, 7, 0, 11], [0, 1])),
        ("c2_case_c", _binary_curve([0, 3, 0, 7, 0, 11], [0, 1, 1])),
        ("c2_h3_split", _binary_curve([0, 7, 0, 3, 0, 5], [0, 2, 3, 1])),
        ("c2_general_f", _binary_curve([9, 5, 3, 9, 7, 11, 6], [0, 2, 3, 1])),
        ("rational_small", _rational_curve()),
    ]
    for name, c in entries:
        v = validate(c)
        if not v.ok:
            raise AssertionError(f"corpus curve {name} is invalid: {v.reason}")
    return entries


def write_corpus_files(directory: str) -> str:
    """Write the corpus curve files plus a manifest; returns the manifest path."""
    os.makedirs(directory, exist_ok=True)
    manifest = []
    for name, c in default_corpus():
        path = os.path.join(directory, f"{name}.curve")
        with open(path, "w") as fh:
            fh.write(c.curve_file_text())
        manifest.append(f"{name}.curve")
    mpath = os.path.join(directory, "default.corpus")
    with open(mpath, "w") as fh:
        fh.write("\n".join(manifest) + "\n")
    return mpath


def load_corpus(manifest_path: str) -> list[tuple[str, CurveModel]]:
    """Read a corpus manifest: one curve-file name per line, relative to the
    manifest's directory; blank lines and #-comments ignored."""
    from .curve import curve_from_text

    base = os.path.dirname(os.path.abspath(manifest_path))
    out = []
    with open(manifest_path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            path = os.path.join(base, line)
            with open(path) as cf:
                name = os.path.splitext(os.path.basename(path))[0]
                out.append((name, curve_from_text(cf.read())))
    return out
