"""Executable checks: exhaustive small-field lemma searches and the
randomized identity suites over a curve corpus.

The lemma searches enumerate every quadruple (or pair of quadruples) on the
Kummer surface of a characteristic-2 normal-form curve over a tiny field and
assert that the synthesized duplication quartics have no common zero on the
surface away from 0, and that the biquadratic forms have no common zero with
both arguments nonzero.  The searched forms are the artifact's own
synthesized ones (descended from an extension); a counterexample therefore
indicts either the synthesis or the claim itself, and the report records
which identity re-check failed.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field as dfield

from .algebra import monomial_values_deg2
from .curve import CurveModel, normal_form_curve, validate
from .errors import CounterexampleFound, SuiteFailed, UnsupportedDivisor
from .field import BinaryField
from .jacobian import (
    add,
    from_point_pair,
    negate,
    random_divisor,
    small_rational_sampler,
    to_point_pair,
    working_model,
)
from .kummer import (
    KummerPoint,
    kummer_coords,
    on_surface,
    quartic_from_curve,
    two_torsion_classes,
    w_matrix_char2,
    zero_class_point,
)
from .ladder import ladder, make_context, xadd
from .synthesis import (
    BQF_INDEX_PAIRS,
    apply_delta,
    crosscheck_b_conversion,
    crosscheck_tau_delta,
    eval_bqf,
    synthesize_delta,
    synthesize_bqf,
    synthesize_formula_set,
    synthesize_w_oddchar,
)


@dataclass
class LemmaReport:
    lemma: str
    case: str
    field: str
    coeffs: tuple
    search_space: int
    counterexamples: list = dfield(default_factory=list)
    runtime: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.counterexamples


def _surface_points(c: CurveModel):
    """All nonzero quadruples over a tiny field lying on the quartic."""
    F = c.field
    q = F.order()
    vec = list(quartic_from_curve(c).vector)
    pts = []
    from .algebra import eval_quartic

    for a in range(q):
        for b in range(q):
            for d in range(q):
                for e in range(q):
                    if a == b == d == e == 0:
                        continue
                    pt = (a, b, d, e)
                    if eval_quartic(F, vec, pt) == F.zero:
                        pts.append(pt)
    return pts


def lemma_delta_search(case: str, coeffs, F: BinaryField, rng) -> LemmaReport:
    """Exhaustive duplication-lemma search over a field of order <= 64.

    coeffs = (f1, f3, f5) of the normal-form curve; the case's
    nonsingularity condition is a precondition (SingularCurve otherwise)."""
    q = F.order()
    if F.characteristic() != 2 or q > 64:
        raise ValueError("the search runs over characteristic-2 fields of order <= 64")
    f1, f3, f5 = coeffs
    c = normal_form_curve(F, case, f1, f3, f5)  # raises SingularCurve when degenerate
    t0 = time.time()
    delta = synthesize_delta(c, rng)
    counter = []
    searched = 0
    zero = F.zero
    from .algebra import eval_quartic

    vec = list(quartic_from_curve(c).vector)
    for a in range(q):
        for b in range(q):
            for d in range(q):
                for e in range(q):
                    searched += 1
                    pt = (a, b, d, e)
                    if eval_quartic(F, vec, pt) != zero:
                        continue
                    if all(eval_quartic(F, list(blk), pt) == zero for blk in delta):
                        if pt != (0, 0, 0, 0):
                            counter.append({"x": pt})
    return LemmaReport(
        lemma="delta",
        case=case,
        field=F.spec_string(),
        coeffs=tuple(F.to_str(v) for v in coeffs),
        search_space=searched,
        counterexamples=counter,
        runtime=time.time() - t0,
    )


def lemma_b_search(case: str, coeffs, F: BinaryField, rng) -> LemmaReport:
    """Exhaustive biquadratic-lemma search over a field of order <= 8."""
    q = F.order()
    if F.characteristic() != 2 or q > 8:
        raise ValueError("the pair search runs over fields of order <= 8")
    f1, f3, f5 = coeffs
    c = normal_form_curve(F, case, f1, f3, f5)
    t0 = time.time()
    forms = synthesize_bqf(c, rng)
    pts = _surface_points(c)
    zero = F.zero
    # precompute, for every surface point x, the ten vectors q(x)^T C_ij
    pre = []
    for x in pts:
        qx = monomial_values_deg2(F, x)
        rowset = []
        for p in BQF_INDEX_PAIRS:
            coeff = forms[p]
            vals = []
            for j in range(10):
                acc = zero
                for i in range(10):
                    cv = coeff[10 * i + j]
                    if cv != zero and qx[i] != zero:
                        acc = F.add(acc, F.mul(cv, qx[i]))
                vals.append(acc)
            rowset.append(vals)
        pre.append(rowset)
    counter = []
    searched = 0
    qys = [monomial_values_deg2(F, y) for y in pts]
    for xi, rowset in enumerate(pre):
        for yi, qy in enumerate(qys):
            searched += 1
            vanished = True
            for vals in rowset:
                acc = zero
                for v, w in zip(vals, qy):
                    if v != zero and w != zero:
                        acc = F.add(acc, F.mul(v, w))
                if acc != zero:
                    vanished = False
                    break
            if vanished:
                counter.append({"x": pts[xi], "y": pts[yi]})
    return LemmaReport(
        lemma="biquadratic",
        case=case,
        field=F.spec_string(),
        coeffs=tuple(F.to_str(v) for v in coeffs),
        search_space=searched,
        counterexamples=counter,
        runtime=time.time() - t0,
    )


# ---------------------------------------------------------------------------
# Randomized identity suites over a corpus
# ---------------------------------------------------------------------------

def _oracle_sampler(c, wm):
    if c.field.order() is None:
        return small_rational_sampler(wm)
    return lambda rng: random_divisor(wm, rng)


def _suite_kappa_surface(c, wm, sampler, rng, n):
    q = quartic_from_curve(c)
    done = 0
    while done < n:
        D = sampler(rng)
        try:
            k = kummer_coords(c, to_point_pair(wm, D))
        except UnsupportedDivisor:
            continue
        if not on_surface(q, k):
            return {"ok": False, "witness": k.text()}
        done += 1
    return {"ok": True, "n": done}


def _suite_delta(c, wm, sampler, rng, fs, n):
    F = c.field
    done = 0
    while done < n:
        D = sampler(rng)
        try:
            x = kummer_coords(c, to_point_pair(wm, D)).normalized()
            d2 = kummer_coords(c, to_point_pair(wm, add(wm, D, D))).normalized()
        except UnsupportedDivisor:
            continue
        if not apply_delta(F, fs.delta, x).proportional(d2):
            return {"ok": False, "witness": x.text()}
        done += 1
    return {"ok": True, "n": done}


def _suite_bqf(c, wm, sampler, rng, fs, n):
    F = c.field
    done = 0
    while done < n:
        P, Q = sampler(rng), sampler(rng)
        try:
            x = kummer_coords(c, to_point_pair(wm, P)).normalized()
            y = kummer_coords(c, to_point_pair(wm, Q)).normalized()
            w = kummer_coords(c, to_point_pair(wm, add(wm, P, Q))).normalized()
            z = kummer_coords(c, to_point_pair(wm, add(wm, P, negate(wm, Q)))).normalized()
        except UnsupportedDivisor:
            continue
        lam = None
        for (i, j) in BQF_INDEX_PAIRS:
            a, b = i - 1, j - 1
            if i == j:
                t = F.mul(w.coords[a], z.coords[a])
            else:
                t = F.add(F.mul(w.coords[a], z.coords[b]), F.mul(w.coords[b], z.coords[a]))
            val = eval_bqf(F, fs.bqf, i, j, x.coords, y.coords)
            if lam is None:
                if t == F.zero:
                    if val != F.zero:
                        return {"ok": False, "witness": f"B{i}{j} at {x.text()} , {y.text()}"}
                    continue
                lam = F.div(val, t)
            if val != F.mul(lam, t):
                return {"ok": False, "witness": f"B{i}{j} at {x.text()} , {y.text()}"}
        done += 1
    return {"ok": True, "n": done}


def _suite_translation(c, wm, sampler, rng, fs, n):
    F = c.field
    if F.order() is None:
        return {"ok": True, "n": 0, "note": "no two-torsion enumeration over the rationals"}
    classes = two_torsion_classes(c)
    if not classes:
        return {"ok": True, "n": 0, "note": "no rational two-torsion"}
    q = quartic_from_curve(c)
    checked = 0
    for T in classes:
        if F.characteristic() == 2:
            W = w_matrix_char2(c, T)
        else:
            W = None
            for label, mat in fs.w:
                if label == T.label:
                    W = mat
                    break
            if W is None:
                W = synthesize_w_oddchar(c, T, rng, wm=wm, sampler=sampler)
        W2 = W.mul(W)
        lam = next((W2.rows[i][i] for i in range(4) if W2.rows[i][i] != F.zero), None)
        if lam is None or any(
            W2.rows[i][j] != (lam if i == j else F.zero) for i in range(4) for j in range(4)
        ):
            return {"ok": False, "witness": f"W^2 not scalar for class {T.label}"}
        DQ = from_point_pair(wm, T.divisor)
        if not add(wm, DQ, DQ).is_zero():
            return {"ok": False, "witness": f"class {T.label} is not 2-torsion"}
        done = 0
        while done < n:
            D = sampler(rng)
            try:
                kP = kummer_coords(c, to_point_pair(wm, D)).normalized()
                kPQ = kummer_coords(c, to_point_pair(wm, add(wm, D, DQ))).normalized()
            except UnsupportedDivisor:
                continue
            Wk = KummerPoint(F, W.apply(list(kP.coords)))
            if not Wk.proportional(kPQ) or not on_surface(q, Wk):
                return {"ok": False, "witness": f"translation failed for {T.label} at {kP.text()}"}
            done += 1
        checked += 1
    return {"ok": True, "n": checked, "classes": [T.label for T in classes]}


def _suite_crosschecks(c, rng, fs, n):
    if c.field.characteristic() == 2:
        return {"ok": True, "note": "conversion checks need odd characteristic"}
    rep1 = crosscheck_tau_delta(c, rng, npoints=n, delta=fs.delta)
    rep2 = crosscheck_b_conversion(c, rng, npoints=n, bqf=fs.bqf)
    return {"ok": rep1["ok"] and rep2["ok"], "tau_delta": rep1, "b_conversion": rep2}


def _suite_chain(c, wm, sampler, rng, fs, n, scalar_bits=16):
    F = c.field
    ctx = make_context(c, fs)
    x = None
    while x is None:
        try:
            x = kummer_coords(c, to_point_pair(wm, sampler(rng))).normalized()
        except UnsupportedDivisor:
            continue
    for _ in range(n):
        m = rng.randrange(1, 1 << scalar_bits)
        k = rng.randrange(1, 1 << scalar_bits)
        km = ladder(ctx, x, m)
        kn = ladder(ctx, x, k)
        kd = ladder(ctx, x, abs(m - k)) if m != k else zero_class_point(F)
        ksum = ladder(ctx, x, m + k)
        if not xadd(ctx, km, kn, kd).proportional(ksum):
            return {"ok": False, "witness": f"m={m}, n={k}"}
    return {"ok": True, "n": n}


DEFAULT_SUITE_SIZES = {
    "kappa_surface": 300,
    "delta": 120,
    "bqf": 80,
    "translation": 60,
    "crosschecks": 60,
    "chain": 40,
}


def proposition_suites(corpus, rng, sizes=None, formula_sets=None) -> dict:
    """Run the full identity suites over a corpus of (name, CurveModel).

    Returns a machine-readable report; deterministic given the rng seed.
    Invalid curves are reported as skipped.  ``formula_sets`` may carry
    pre-synthesized FormulaSets keyed by curve name."""
    sizes = dict(DEFAULT_SUITE_SIZES, **(sizes or {}))
    formula_sets = formula_sets or {}
    report = {"curves": [], "ok": True}
    for name, c in corpus:
        entry = {"name": name, "field": c.field.spec_string()}
        v = validate(c)
        if not v.ok:
            entry["status"] = "skipped"
            entry["reason"] = v.reason
            report["curves"].append(entry)
            continue
        fs = formula_sets.get(name)
        if fs is None:
            fs = synthesize_formula_set(c, rng, with_w=c.field.order() is not None)
        wm = working_model(c)
        sampler = _oracle_sampler(c, wm)

        def guarded(fn, *args):
            from .errors import G2KummerError

            try:
                return fn(*args)
            except G2KummerError as exc:
                return {"ok": False, "witness": f"{type(exc).__name__}: {exc}"}

        suites = {}
        suites["kappa_surface"] = guarded(_suite_kappa_surface, c, wm, sampler, rng, sizes["kappa_surface"])
        suites["delta"] = guarded(_suite_delta, c, wm, sampler, rng, fs, sizes["delta"])
        suites["bqf"] = guarded(_suite_bqf, c, wm, sampler, rng, fs, sizes["bqf"])
        suites["translation"] = guarded(_suite_translation, c, wm, sampler, rng, fs, sizes["translation"])
        suites["crosschecks"] = guarded(_suite_crosschecks, c, rng, fs, sizes["crosschecks"])
        suites["chain"] = guarded(_suite_chain, c, wm, sampler, rng, fs, sizes["chain"])
        entry["status"] = "pass" if all(s.get("ok") for s in suites.values()) else "fail"
        entry["suites"] = suites
        if entry["status"] == "fail":
            report["ok"] = False
        report["curves"].append(entry)
    return report


def report_lines(report: dict) -> list[str]:
    lines = []
    for entry in report["curves"]:
        if entry["status"] == "skipped":
            lines.append(f"SKIP curve={entry['name']} reason={entry['reason']}")
            continue
        for sname, res in entry["suites"].items():
            status = "PASS" if res.get("ok") else "FAIL"
            extra = f" witness={res['witness']}" if "witness" in res else ""
            lines.append(f"{status} curve={entry['name']} suite={sname}{extra}")
    lines.append("PASS" if report["ok"] else "FAIL")
    return lines


def raise_on_failure(report: dict):
    if not report["ok"]:
        for entry in report["curves"]:
            if entry.get("status") == "fail":
                for sname, res in entry["suites"].items():
                    if not res.get("ok"):
                        raise SuiteFailed(
                            f"{entry['name']}/{sname}: {res.get('witness', 'failed')}"
                        )
        raise SuiteFailed("corpus verification failed")


def assert_lemma(report: LemmaReport):
    """Raise CounterexampleFound when a lemma search reported a witness."""
    if not report.ok:
        raise CounterexampleFound(
            f"{report.lemma} lemma, case ({report.case}) over {report.field}: "
            f"{report.counterexamples[:3]}"
        )
    return report


def two_torsion_count_check(c: CurveModel) -> dict:
    """Characteristic-2 sanity: the rational two-torsion count matches the
    Galois-stable pair structure of the cubic form extending h, and the
    geometric count 2^(distinct roots - 1) lies in {1, 2, 4}.

    Distinct roots are counted over the closure: rational roots once each,
    any surviving irreducible factor contributes its degree (for deg <= 3 it
    is automatically squarefree), plus the infinite root when deg h < 3."""
    from .algebra import Poly, irreducible_quadratic_factors
    from .algebra import roots as poly_roots

    F = c.field
    rational = poly_roots(c.h) if c.h.degree >= 1 else []
    rest = c.h.monic()
    for r, mult in rational:
        factor = Poly(F, [F.neg(r), F.one])
        for _ in range(mult):
            rest = rest // factor
    n_closure = len(rational) + rest.degree + (1 if c.h[3] == F.zero else 0)
    geometric = 1 << (n_closure - 1)
    n_rat = len(rational) + (1 if c.h[3] == F.zero else 0)
    pred = n_rat * (n_rat - 1) // 2 + len(irreducible_quadratic_factors(c.h))
    classes = two_torsion_classes(c)
    return {
        "ok": geometric in (1, 2, 4) and len(classes) == pred,
        "geometric_order": geometric,
        "rational_classes": len(classes),
        "predicted": pred,
    }
