"""The claim catalog: every derived identity as a named, runnable check.

Each check builds its objects from the ansatz constructors, forms
residual expressions, and grades them with the probabilistic zero test.
Verdicts:

* ``Confirmed`` — every residual tested zero at tolerance under the
  standard stated assumptions (recorded per report),
* ``Conditional`` — the claim is a measurement (no pass threshold) or
  holds only under a non-standard reading; the report carries the
  measured numbers,
* ``Refuted`` — a residual is nonzero, with a concrete witness,
* ``Inconclusive`` — evaluation could not decide (overflow, unbound).

Dispersion substitutions (p0 = sqrt(p1^2+p2^2+p3^2+m0^2)) are applied
before residual formation and stated in each report's assumptions.
"""
from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

import numpy as np

from .ansatz import (
    ETA4, ETA5, IDX5, dirac_metric, field_strength, fsq, gravity_metric,
    massive_wave_potential, momentum_product, null_wave_potential,
    onshell_energy, photon_metric, proca_metric, scalar_metric,
    stress_tensor, weak_field_block,
)
from .curvature import einstein, ricci_scalar
from .dynamics import (
    closed_form_exprs, closed_form_state, connection_evaluator, integrate,
    interval_along,
)
from .expr import (
    Expr, MINUS_ONE, ONE, ZERO, add, conj, coords, diff, exp, mul, num,
    power, simplify, sym,
)
from .oracle import einstein_fd, metric_evaluator
from .parse import parse_expression
from .report import (
    CONDITIONAL, CONFIRMED, INCONCLUSIVE, REFUTED, ClaimReport,
)
from .tensor import DIM, Metric6, identity_residual, verify_claimed_inverse
from .zeros import is_zero

__all__ = [
    "Claim", "UnknownClaimError", "ClaimParamError",
    "REGISTRY", "claim_ids", "must_pass_ids",
    "run_claim", "run_suite", "refuted_must_pass",
]

_POS_M0 = frozenset({"m0"})


class UnknownClaimError(ValueError):
    pass


class ClaimParamError(ValueError):
    pass


# ---------------------------------------------------------------------------
# residual grading

@dataclass(frozen=True)
class _Outcome:
    status: str                  # zero | nonzero | inconclusive
    max_residual: float
    samples: int
    structural: int              # residuals that simplified to literal 0
    witness: dict | None
    label: str | None
    note: str | None = None


def _grade(pairs, seed: int, tol: float, trials: int,
           positive: frozenset = frozenset()) -> _Outcome:
    """Grade labelled residual expressions; stop at the first nonzero."""
    worst, total, structural = 0.0, 0, 0
    for label, e in pairs:
        if e == ZERO:
            structural += 1
            continue
        v = is_zero(e, seed=seed, trials=trials, tol=tol, positive=positive)
        total += v.samples
        worst = max(worst, v.max_residual)
        if v.verdict != "zero":
            return _Outcome(v.verdict, worst, total, structural, v.witness,
                            label, v.note)
    return _Outcome("zero", worst, total, structural, None, None)


_VERDICT_OF = {"zero": CONFIRMED, "nonzero": REFUTED,
               "inconclusive": INCONCLUSIVE}


def _close(out: _Outcome, claim_id: str, anchor: str, seed: int,
           assumptions=(), notes=(), extra_witness=None) -> ClaimReport:
    notes = tuple(notes)
    if out.status == "nonzero":
        notes += (f"residual nonzero: {out.label}",)
    elif out.status == "inconclusive":
        notes += (f"undecided: {out.label}" + (f" ({out.note})" if out.note
                                               else ""),)
    witness = out.witness
    if witness is not None and extra_witness:
        witness = {**extra_witness, **witness}
    elif witness is None and out.status == "nonzero":
        witness = extra_witness or {}
    return ClaimReport(
        claim_id=claim_id, anchor=anchor, verdict=_VERDICT_OF[out.status],
        max_residual=out.max_residual, samples=out.samples, seed=seed,
        assumptions=tuple(assumptions), notes=notes, witness=witness)


def _num_param(params, name):
    v = params.get(name)
    if v is None:
        return None
    return num(Fraction(str(v)) if not isinstance(v, float)
               else Fraction(v))


def _box4(e: Expr) -> Expr:
    x = coords()
    parts = []
    for a in range(4):
        parts.append(mul(ETA4[a], diff(diff(e, x[a].symbol), x[a].symbol)))
    return simplify(add(*parts))


def _div5(field, x) -> Expr:
    """Flat-raised divergence over the five non-compact indices."""
    return simplify(add(*(mul(ETA5[i], diff(field[i], x[IDX5[i]].symbol))
                          for i in range(5))))


# ---------------------------------------------------------------------------
# scalar-mode claims

_ONSHELL_NOTE = "p0 = sqrt(p1^2 + p2^2 + p3^2 + m0^2) substituted before " \
    "residual formation"


def check_klein_gordon(seed, tol, trials, params) -> ClaimReport:
    x = coords()
    pv = [_num_param(params, f"p{i}") or sym(f"p{i}") for i in range(4)]
    m0 = _num_param(params, "m0") or sym("m0")
    explicit = "p0" in params
    if not explicit:
        pv[0] = onshell_energy(pv[1], pv[2], pv[3], m0)
    mode = scalar_metric(p=tuple(pv), m0=m0)

    phi = exp(mul(num(0, -1), add(mul(pv[0], x[0]), mul(MINUS_ONE, pv[1], x[1]),
                                  mul(MINUS_ONE, pv[2], x[2]),
                                  mul(MINUS_ONE, pv[3], x[3]))))
    kg = simplify(add(_box4(phi), mul(power(m0, 2), phi)))

    g = einstein(mode.metric).comps
    p_low = mode.grad[:4]        # lower four-momentum = 4d phase gradient
    pairs = [("wave equation: box phi + m0^2 phi", kg)]
    for a in range(4):
        for b in range(a, 4):
            pairs.append((f"4d Einstein block ({a},{b}) minus p_{a} p_{b}",
                          simplify(add(g[a][b],
                                       mul(MINUS_ONE, p_low[a], p_low[b])))))
    for a in range(4):
        pairs.append((f"mixed extra row (5,{a}) plus m0 p_{a}",
                      simplify(add(g[5][a], mul(m0, p_low[a])))))
    pairs.append(("extra diagonal (5,5) minus m0^2",
                  simplify(add(g[5][5], mul(MINUS_ONE, power(m0, 2))))))
    for a in range(DIM):
        pairs.append((f"compact row (4,{a})", simplify(g[4][a])))
    out = _grade(pairs, seed, tol, trials)

    notes = [f"{out.structural} of {len(pairs)} residuals vanish at the "
             "expression level"]
    opposite = simplify(add(g[0][0], mul(p_low[0], p_low[0])))
    if opposite == ZERO:
        notes.append("coupling sign degenerate for this configuration")
    else:
        flip = is_zero(opposite, seed=seed, trials=trials, tol=tol)
        notes.append(
            "block coupling is +1: the opposite sign leaves residual "
            f"{flip.max_residual:.3e} at the first sample"
            if flip.verdict == "nonzero" else
            "opposite coupling sign unexpectedly consistent")
    notes.append(
        "hbar-explicit reading: dividing the phase by hbar scales the 4d "
        "block to +p_a p_b / hbar^2, so a unit coupling holds only at "
        "hbar = 1 (conditional, not refuted)")
    assumptions = ["hbar = 1"]
    if explicit:
        assumptions.append("energy component taken from parameters; "
                           "dispersion relation not assumed")
    else:
        assumptions.append(_ONSHELL_NOTE)
    extra = {}
    for i in range(4):
        v = _num_param(params, f"p{i}")
        if v is not None:
            extra[f"p{i}"] = complex(float(v.re), float(v.im))
    return _close(out, "kg.reduction",
                  "scalar mode reduces to the free wave equation, with the "
                  "4d Einstein block equal to p_a p_b",
                  seed, assumptions, notes, extra_witness=extra or None)


def check_ricci_scalar_zero(seed, tol, trials, params) -> ClaimReport:
    m0 = _num_param(params, "m0") or sym("m0")
    pv = [_num_param(params, f"p{i}") or sym(f"p{i}") for i in range(4)]
    if "p0" not in params:
        pv[0] = onshell_energy(pv[1], pv[2], pv[3], m0)
    mode = scalar_metric(p=tuple(pv), m0=m0)
    notes = []
    perturb = params.get("perturb")
    if perturb is None:
        metric = mode.metric
    else:
        factor = parse_expression(str(perturb))
        rows = [list(r) for r in mode.metric.lower]
        rows[4][4] = simplify(mul(rows[4][4], factor))
        metric = Metric6(rows, name="scalar-perturbed")
        notes.append(f"compact entry multiplied by {perturb}")
    r = ricci_scalar(metric)
    pairs = [("scalar curvature", r)]
    out = _grade(pairs, seed, tol, trials)
    if perturb is None and out.structural == 1:
        notes.append("curvature scalar vanishes at the expression level")
    return _close(out, "ricci.scalar.zero",
                  "scalar curvature of the scalar-mode metric vanishes",
                  seed, ["hbar = 1", _ONSHELL_NOTE], notes)


# ---------------------------------------------------------------------------
# vector-mode claims

def _vector_pairs(ahat5, label_prefix: str):
    x = coords()
    f = field_strength(ahat5)
    pairs = []
    for j in range(5):
        d = simplify(add(*(mul(ETA5[i], diff(f[i][j], x[IDX5[i]].symbol))
                           for i in range(5))))
        pairs.append((f"{label_prefix} field equation, component {IDX5[j]}",
                      d))
    pairs.append((f"{label_prefix} field invariant F^2", simplify(fsq(f))))
    return f, pairs


_MAXWELL_ASSUMPTIONS = (
    "null wave vector k = (omega, 0, 0, omega)",
    "transverse polarization (the wave number does not drive the "
    "polarized component)",
)


def _maxwell_potential(params):
    kind = str(params.get("potential", "null"))
    if kind == "null":
        return null_wave_potential(_num_param(params, "omega")), kind
    if kind == "constant":
        return tuple(sym(f"A{i}") for i in range(4)), kind
    if kind == "massive":
        return massive_wave_potential(_num_param(params, "k3"),
                                      _num_param(params, "m0"), pol=1), kind
    raise ClaimParamError(f"unknown potential preset {kind!r}")


def check_maxwell(seed, tol, trials, params) -> ClaimReport:
    a4, kind = _maxwell_potential(params)
    _, pairs = _vector_pairs(tuple(a4) + (ZERO,), "massless")
    out = _grade(pairs, seed, tol, trials)
    notes = [f"potential preset: {kind}",
             f"{out.structural} of {len(pairs)} residuals vanish at the "
             "expression level"]
    if kind == "massive" and out.status == "nonzero":
        notes.append("expected: a non-null wave vector breaks the "
                     "massless-field identities")
    assumptions = _MAXWELL_ASSUMPTIONS if kind == "null" else ()
    return _close(out, "maxwell.reduction",
                  "massless vector mode obeys the flat-space field "
                  "equations", seed, assumptions, notes)


def check_fsq_null(seed, tol, trials, params) -> ClaimReport:
    a4 = null_wave_potential(_num_param(params, "omega"))
    f = field_strength(tuple(a4) + (ZERO,))
    out = _grade([("field invariant F^2", simplify(fsq(f)))],
                 seed, tol, trials)
    notes = ["transverse null wave: electric and magnetic contributions "
             "cancel exactly"]
    if out.structural == 1:
        notes.append("invariant vanishes at the expression level")
    return _close(out, "fsq.null",
                  "null transverse wave has vanishing field-strength "
                  "invariant", seed, _MAXWELL_ASSUMPTIONS, notes)


_PROCA_ASSUMPTIONS = (
    "on-shell frequency k0 = sqrt(k3^2 + m0^2)",
    "transverse polarization",
    "mass term generated by the compact-direction phase exp(i m0 x5)",
)


def check_proca(seed, tol, trials, params) -> ClaimReport:
    x = coords()
    k3 = _num_param(params, "k3")
    m0 = _num_param(params, "m0") or sym("m0")
    a4 = massive_wave_potential(k3, m0, pol=int(params.get("pol", 1)))
    phase_factor = int(params.get("phase_factor", 1))
    if phase_factor == 1:
        mode = proca_metric(a4, m0)
        ahat, f = mode.Ahat, mode.F
    else:
        twist = exp(mul(num(0, phase_factor), m0, x[5]))
        ahat = tuple(simplify(mul(a, twist)) for a in a4) + (ZERO,)
        f = field_strength(ahat)

    pairs = []
    for j in range(5):
        d = simplify(add(*(mul(ETA5[i], diff(f[i][j], x[IDX5[i]].symbol))
                           for i in range(5))))
        pairs.append((f"field equation, component {IDX5[j]}", d))
    pairs.append(("field invariant F^2 over all five indices",
                  simplify(fsq(f))))
    # 4d reading: the compact phase turns into the mass term
    for b in range(4):
        div4 = simplify(add(*(mul(ETA4[i], diff(f[i][b], x[i].symbol))
                              for i in range(4))))
        pairs.append((f"4d divergence plus m0^2 A, component {b}",
                      simplify(add(div4, mul(power(m0, 2), ahat[b])))))
    f2g = simplify(add(*(mul(ETA4[i], ETA4[j], power(f[i][j], 2))
                         for i in range(4) for j in range(4)
                         if f[i][j] != ZERO)))
    aa = simplify(add(*(mul(ETA4[i], power(ahat[i], 2))
                        for i in range(4) if ahat[i] != ZERO)))
    pairs.append(("quarter F^2 (4d) plus half m0^2 A.A",
                  simplify(add(mul(num(Fraction(1, 4)), f2g),
                               mul(num(Fraction(1, 2)), power(m0, 2), aa)))))
    out = _grade(pairs, seed, tol, trials)
    notes = [f"{out.structural} of {len(pairs)} residuals vanish at the "
             "expression level",
             "4d reading: divergence of F equals -m0^2 A and quarter-F^2 "
             "equals -half m0^2 A.A"]
    if phase_factor != 1:
        notes.append(f"compact phase factor {phase_factor} (mass term "
                     "scales quadratically; mismatch expected)")
    return _close(out, "proca.reduction",
                  "massive vector mode obeys the field equations with the "
                  "mass supplied by the compact phase",
                  seed, _PROCA_ASSUMPTIONS, notes)


# ---------------------------------------------------------------------------
# half-spin claims

_DIRAC_ASSUMPTIONS = (
    "m0 > 0 and p3 != 0",
    "principal branch for all square roots",
    _ONSHELL_NOTE,
)


@lru_cache(maxsize=8)
def _dirac_bundle(sol: int):
    mode = dirac_metric(sol=sol)
    f = field_strength(mode.K)
    t = stress_tensor(f)
    return mode, f, t


def _stress_candidates(mode):
    """The four sign candidates for the momentum-product stress form."""
    p1, p2, p3 = mode.components.p
    m0 = mode.components.m0
    p_low = (mode.components.p0, mul(MINUS_ONE, p1), mul(MINUS_ONE, p2),
             mul(MINUS_ONE, p3))
    phase2 = simplify(power(mode.phase, 2))
    out = {}
    for s5 in (1, -1):
        pp = momentum_product(p_low + (mul(num(s5), m0),), phase2)
        for coeff in (1, -1):
            out[(coeff, s5)] = pp
    return out


def _stress_residuals(t, pp, coeff):
    pairs = []
    for i in range(5):
        for j in range(i, 5):
            pairs.append((f"stress component ({IDX5[i]},{IDX5[j]})",
                          simplify(add(t[i][j],
                                       mul(num(-coeff), pp[i][j])))))
    return pairs


def _dirac_rows(mode):
    """The coupled first-order component equations, one row per solution."""
    x = coords()
    comps = mode.components
    p1, p2, p3 = comps.p
    px = add(mul(comps.p0, x[0]), mul(MINUS_ONE, p1, x[1]),
             mul(MINUS_ONE, p2, x[2]), mul(MINUS_ONE, p3, x[3]))
    phase4 = exp(mul(num(0, mode.family_sign), px))
    psi = [simplify(mul(f, phase4)) for f in comps.phi]
    m0 = comps.m0

    def d(e, a):
        return diff(e, x[a].symbol)

    rows = {
        1: add(d(psi[0], 0), d(psi[3], 1), mul(num(0, -1), d(psi[3], 2)),
               d(psi[2], 3), mul(num(0, 1), m0, psi[0])),
        2: add(d(psi[1], 0), d(psi[2], 1), mul(num(0, 1), d(psi[2], 2)),
               mul(MINUS_ONE, d(psi[3], 3)), mul(num(0, 1), m0, psi[1])),
        3: add(d(psi[2], 0), d(psi[1], 1), mul(num(0, -1), d(psi[1], 2)),
               d(psi[0], 3), mul(num(0, -1), m0, psi[2])),
        4: add(d(psi[3], 0), d(psi[0], 1), mul(num(0, 1), d(psi[0], 2)),
               mul(MINUS_ONE, d(psi[1], 3)), mul(num(0, -1), m0, psi[3])),
    }
    return rows[mode.sol]


def _check_dirac(sol: int):
    def run(seed, tol, trials, params) -> ClaimReport:
        x = coords()
        if any(k in params for k in ("p1", "p2", "p3", "m0")):
            mode = dirac_metric(sol, _num_param(params, "p1"),
                                _num_param(params, "p2"),
                                _num_param(params, "p3"),
                                _num_param(params, "m0"))
            f = field_strength(mode.K)
            t = stress_tensor(f)
        else:
            mode, f, t = _dirac_bundle(sol)
        comps = mode.components

        pairs = []
        for i in range(5):
            box = simplify(add(*(
                mul(ETA5[j], diff(diff(mode.K[i], x[IDX5[j]].symbol),
                                  x[IDX5[j]].symbol)) for j in range(5))))
            pairs.append((f"plane-wave condition, component {IDX5[i]}", box))
        div = _div5(mode.K, x)
        pairs.append(("divergence of the five-component field", div))
        pairs.append(("field invariant F^2", simplify(fsq(f))))
        rhs = mul(comps.C, exp(mul(num(0, 1), comps.m0, x[5])),
                  _dirac_rows(mode))
        pairs.append(("divergence equals the component equation row",
                      simplify(add(div, mul(MINUS_ONE, rhs)))))
        norm = add(mul(conj(comps.phi[0]), comps.phi[0]),
                   mul(conj(comps.phi[1]), comps.phi[1]),
                   mul(MINUS_ONE, conj(comps.phi[2]), comps.phi[2]),
                   mul(MINUS_ONE, conj(comps.phi[3]), comps.phi[3]))
        nsign = 1 if sol in (1, 2) else -1
        pairs.append((f"adjoint normalization equals {nsign:+d}",
                      simplify(add(norm, num(-nsign)))))
        s5 = mode.family_sign
        pp = _stress_candidates(mode)[(-1, s5)]
        pairs.extend(_stress_residuals(t, pp, -1))

        out = _grade(pairs, seed, tol, trials, positive=_POS_M0)
        notes = [
            f"{out.structural} of {len(pairs)} residuals vanish at the "
            "expression level",
            f"adjoint normalization {nsign:+d}",
            f"stress form: T = -P_A P_B Phi^2 with extra momentum "
            f"component {'+' if s5 > 0 else '-'}m0 (family sign)",
        ]
        notes.extend(mode.notes)
        return _close(out, f"dirac.sol{sol}",
                      f"half-spin solution {sol}: plane-wave condition, "
                      "divergence, field invariant, component equation, "
                      "and stress form", seed, _DIRAC_ASSUMPTIONS, notes)
    return run


def check_dirac_stress(seed, tol, trials, params) -> ClaimReport:
    scan_trials = min(6, trials)
    worst, samples, structural = 0.0, 0, 0
    notes = []
    conventions = {}
    for sol in (1, 2, 3, 4):
        mode, f, t = _dirac_bundle(sol)
        winners = []
        for key, pp in _stress_candidates(mode).items():
            coeff, s5 = key
            ok = True
            for label, r in _stress_residuals(t, pp, coeff):
                if r == ZERO:
                    continue
                v = is_zero(r, seed=seed, trials=scan_trials, tol=tol,
                            positive=_POS_M0)
                samples += v.samples
                if v.verdict != "zero":
                    ok = False
                    break
            if ok:
                winners.append(key)
        if len(winners) != 1:
            return ClaimReport(
                claim_id="dirac.stress",
                anchor="half-spin stress tensor equals a momentum-product "
                       "form with a unique sign convention",
                verdict=REFUTED if not winners else INCONCLUSIVE,
                max_residual=worst, samples=samples, seed=seed,
                assumptions=_DIRAC_ASSUMPTIONS,
                notes=(f"solution {sol}: {len(winners)} candidate "
                       "conventions survive the scan",),
                witness={} if not winners else None)
        conventions[sol] = winners[0]

    # full-resolution confirmation on the first solution
    mode, f, t = _dirac_bundle(1)
    coeff, s5 = conventions[1]
    pp = _stress_candidates(mode)[(coeff, s5)]
    out = _grade(_stress_residuals(t, pp, coeff), seed, tol, trials,
                 positive=_POS_M0)
    worst = max(worst, out.max_residual)
    samples += out.samples
    for sol, (coeff, s5) in sorted(conventions.items()):
        notes.append(f"solution {sol}: T = {'+' if coeff > 0 else '-'}"
                     f"P_A P_B Phi^2 with extra momentum component "
                     f"{'+' if s5 > 0 else '-'}m0")
    notes.append("the extra momentum component tracks the plane-wave "
                 "family sign")
    out = _Outcome(out.status, worst, samples, out.structural, out.witness,
                   out.label, out.note)
    return _close(out, "dirac.stress",
                  "half-spin stress tensor equals a momentum-product form "
                  "with a unique sign convention",
                  seed, _DIRAC_ASSUMPTIONS, notes)


# ---------------------------------------------------------------------------
# inverse claims

def check_inverse_photon(seed, tol, trials, params) -> ClaimReport:
    mode = photon_metric()
    chk = verify_claimed_inverse(mode.metric, mode.claimed_upper,
                                 seed=seed, trials=trials, tol=tol)
    residual = identity_residual(mode.metric, mode.claimed_upper)
    pairs = [(f"inverse residual entry ({a},{b})", residual[a][b])
             for a in range(DIM) for b in range(DIM)]
    out = _grade(pairs, seed, tol, trials)
    notes = [f"{out.structural} of 36 inverse residual entries vanish at "
             "the expression level"]
    if not chk.exact:
        notes.append(f"sampled entry failures: {chk.failures}")
    return _close(out, "inverse.photon",
                  "claimed inverse of the massless vector metric",
                  seed, (), notes)


def check_inverse_halfspin(seed, tol, trials, params) -> ClaimReport:
    sol = int(params.get("sol", 1))
    mode = dirac_metric(sol=sol)
    full = identity_residual(mode.metric, mode.claimed_upper)
    full_exact = all(e == ZERO for row in full for e in row)
    greek = identity_residual(mode.metric, mode.claimed_upper_greek)
    worst, samples, bad = 0.0, 0, []
    for a in range(DIM):
        for b in range(DIM):
            if greek[a][b] == ZERO:
                continue
            v = is_zero(greek[a][b], seed=seed, trials=trials, tol=tol,
                        positive=_POS_M0)
            samples += v.samples
            worst = max(worst, v.max_residual)
            if v.verdict != "zero":
                bad.append((a, b))
    notes = [
        "reading A (compact-compact entry carries the trace over all five "
        "field components): " + ("exact — all 36 residual entries vanish "
                                 "at the expression level" if full_exact
                                 else "NOT exact"),
        f"reading B (4d trace only): {len(bad)} of 36 entries nonzero, "
        f"max sampled residual {worst:.3e}, at "
        + (", ".join(f"({a},{b})" for a, b in bad) if bad else "none"),
        "exactness requires the compact-compact entry to subtract the "
        "square of the fifth field component",
    ]
    return ClaimReport(
        claim_id="inverse.halfspin",
        anchor="claimed inverse of the half-spin metric, measured under "
               "both trace readings",
        verdict=CONDITIONAL, max_residual=worst, samples=samples, seed=seed,
        assumptions=_DIRAC_ASSUMPTIONS + (
            "the printed inverse does not state which indices the "
            "compact-entry trace runs over; both readings are measured",),
        notes=tuple(notes))


# ---------------------------------------------------------------------------
# gravity-coupled claims (numeric measurement)

_GRAVITY_PRESETS = {
    "scalar": dict(p=(Fraction(5, 4), 0, 0, Fraction(3, 4)), m0=num(1)),
    "proca": dict(m0=num(1)),
    "dirac": dict(sol=1, p1=num(0), p2=num(0), p3=num(Fraction(3, 4)),
                  m0=num(1)),
}


def _gravity_params(family):
    p = dict(_GRAVITY_PRESETS[family])
    if family == "scalar":
        p["p"] = tuple(num(v) for v in p["p"])
    if family == "proca":
        p["A"] = massive_wave_potential(num(Fraction(1, 2)), num(1), pol=1)
    return p


def _check_gravity_split(family: str):
    def run(seed, tol, trials, params) -> ClaimReport:
        eps = float(params.get("eps", 1e-3))
        kappa = num(Fraction(str(params.get("kappa", 1))))
        npoints = int(params.get("points", 3))
        fields = _gravity_params(family)
        g4 = weak_field_block(num(Fraction(str(eps))))

        gm_full = gravity_metric(family, g4, kappa, **fields)
        gm_q = gravity_metric(family, None, kappa, **fields)
        rows_e = [[ZERO] * DIM for _ in range(DIM)]
        for a in range(4):
            for b in range(4):
                rows_e[a][b] = g4[a][b]
        rows_e[4][4] = ONE
        rows_e[5][5] = MINUS_ONE
        gm_e = Metric6(rows_e, name=f"{family}-background")

        ev_full = metric_evaluator(gm_full.metric)
        ev_q = metric_evaluator(gm_q.metric)
        ev_e = metric_evaluator(gm_e)
        rng = random.Random(seed)
        worst = 0.0
        scale_q = 0.0
        for _ in range(npoints):
            pt = [complex(rng.uniform(-0.5, 0.5)) for _ in range(DIM)]
            g_full = einstein_fd(ev_full, pt)
            g_q = einstein_fd(ev_q, pt)
            g_e = einstein_fd(ev_e, pt)
            worst = max(worst, float(np.max(np.abs(g_full - g_e - g_q))))
            scale_q = max(scale_q, float(np.max(np.abs(g_q))))
        notes = [
            f"split residual max |G - G_background - G_field| = {worst:.3e} "
            f"over {npoints} sample points (field-part scale {scale_q:.3e})",
            f"background: static weak field with strength {eps:g}; "
            "cross terms of order eps times the field are expected",
            "finite-difference noise floor is about 1e-7; no pass "
            "threshold is asserted — measured and reported only",
        ]
        if family == "scalar":
            mode = scalar_metric(p=(onshell_energy(sym("p1"), sym("p2"),
                                                   sym("p3"), sym("m0")),
                                    sym("p1"), sym("p2"), sym("p3")))
            g55 = einstein(mode.metric).comps[5][5]
            exact = simplify(add(g55, mul(MINUS_ONE, power(sym("m0"), 2))))
            notes.append(
                "field-part extra-diagonal source equals m0^2 "
                + ("(exact at the expression level)" if exact == ZERO
                   else "(NOT exact)"))
        return ClaimReport(
            claim_id=f"gravity.split.{family}",
            anchor=f"Einstein tensor of the gravity-coupled {family} "
                   "metric separates into background plus field parts",
            verdict=CONDITIONAL, max_residual=worst, samples=npoints,
            seed=seed,
            assumptions=("separability is asserted without proof; this "
                         "check measures the residual numerically",
                         f"coupling constant kappa = "
                         f"{params.get('kappa', 1)}"),
            notes=tuple(notes))
    return run


# ---------------------------------------------------------------------------
# dynamics claims

_GEO_P = (1.25, 0.0, 0.0, 0.75)
_GEO_M0 = 1.0
_GEO_CONST = (0.1 + 0.05j, -0.2j, 0.3, 0.02 + 0.01j, 0.0, 0.04 - 0.1j)


def check_geodesic_closedform(seed, tol, trials, params) -> ClaimReport:
    steps = int(params.get("steps", 1000))
    cf = closed_form_exprs()
    pairs = [(f"geodesic equation, component {a}", cf.residual[a])
             for a in range(DIM)]
    out = _grade(pairs, seed, tol, trials)
    notes = [f"{out.structural} of 6 closed-form residual components vanish "
             "at the expression level"]
    if out.status == "zero":
        mode = scalar_metric(p=(Fraction(5, 4), 0, 0, Fraction(3, 4)), m0=1)
        gam = connection_evaluator(mode.metric)
        s0 = closed_form_state(0.0, _GEO_P, _GEO_M0, _GEO_CONST)
        path = integrate(s0, 1.0, steps, gam)
        dev = 0.0
        for st in path.states:
            ex = closed_form_state(st.tau, _GEO_P, _GEO_M0, _GEO_CONST)
            dev = max(dev, max(abs(a - b) for a, b in zip(st.x, ex.x)))
        ratio_err = 0.0
        for iv, s_lo, s_hi in zip(interval_along(path, mode.metric),
                                  path.states, path.states[1:]):
            xm = [0.5 * (a + b) for a, b in zip(s_lo.x, s_hi.x)]
            theta = (_GEO_P[0] * xm[0] - _GEO_P[1] * xm[1]
                     - _GEO_P[2] * xm[2] - _GEO_P[3] * xm[3]
                     - _GEO_M0 * xm[5])
            ratio_err = max(ratio_err,
                            abs(iv.ds / iv.dx4 - cmath.exp(-1j * theta)))
        notes.append(f"numeric integration at {steps} steps deviates from "
                     f"the closed form by at most {dev:.3e}")
        notes.append("interval slope matches the inverse phase factor: "
                     f"max |ds/dx4 - exp(-i theta)| = {ratio_err:.3e}")
        if max(dev, ratio_err) > 1e-6:
            out = _Outcome("nonzero", max(dev, ratio_err),
                           out.samples + len(path.states), out.structural,
                           {"deviation": complex(dev)},
                           "numeric integration disagrees with the closed "
                           "form")
        else:
            out = _Outcome("zero", max(out.max_residual, dev, ratio_err),
                           out.samples + len(path.states), out.structural,
                           None, None)
    return _close(out, "geodesic.closedform",
                  "closed-form geodesic of the scalar-mode metric "
                  "(symbolic residual and numeric integration)",
                  seed,
                  ("real affine parameter", _ONSHELL_NOTE,
                   "the exponential in the compact coordinate uses "
                   "same-parameter coordinates"),
                  notes)


def check_interference_minima(seed, tol, trials, params) -> ClaimReport:
    from .dynamics import two_path_fringes, _path_difference
    lam = float(params.get("wavelength", 0.5))
    d = float(params.get("d", 10.0))
    length = float(params.get("L", 400.0))
    ymax = float(params.get("ymax", 15.0))
    npts = int(params.get("points", 1201))
    grid = np.linspace(-ymax, ymax, npts)
    fp = two_path_fringes(d, length, lam, grid)
    peak = max(fp.density)
    worst = 0.0
    bad = None
    for y in fp.minima:
        gap = _path_difference(y, d, length) / lam - 0.5
        phase_resid = abs(gap - round(gap))
        r1 = math.hypot(length, y - 0.5 * d)
        r2 = math.hypot(length, y + 0.5 * d)
        k = 2.0 * math.pi / lam
        depth = abs(complex(math.cos(k * r1) + math.cos(k * r2),
                            math.sin(k * r1) + math.sin(k * r2))) ** 2
        worst = max(worst, depth / peak, phase_resid)
        if depth > tol * peak or phase_resid > 1e-9:
            bad = y
    neg = min(fp.density)
    status = "zero" if bad is None and neg >= 0.0 else "nonzero"
    out = _Outcome(status, worst, len(fp.y) + len(fp.minima), 0,
                   None if status == "zero" else {"y": complex(bad or neg)},
                   None if status == "zero" else "minimum not destructive")
    notes = [
        f"{len(fp.minima)} minima located by root-finding the half-integer "
        "path-difference condition",
        f"worst relative density at a minimum: {worst:.3e} "
        f"(peak density {peak:.6g})",
        "the extra-coordinate density is dropped (special coordinate "
        "choice) and recorded here",
    ]
    return _close(out, "interference.minima",
                  "two-path density minima sit exactly at half-integer "
                  "path differences",
                  seed,
                  ("straight-ray path lengths (far-field regime)",
                   "unit amplitude per path"),
                  notes)


# ---------------------------------------------------------------------------
# registry

@dataclass(frozen=True)
class Claim:
    claim_id: str
    anchor: str
    must_pass: bool
    runner: Callable
    param_names: frozenset


def _claim(cid, anchor, must_pass, runner, names=()):
    return Claim(cid, anchor, must_pass, runner, frozenset(names))


_P4 = ("p0", "p1", "p2", "p3", "m0")

REGISTRY: dict[str, Claim] = {c.claim_id: c for c in [
    _claim("kg.reduction",
           "scalar mode reduces to the free wave equation",
           True, check_klein_gordon, _P4),
    _claim("ricci.scalar.zero",
           "scalar curvature of the scalar-mode metric vanishes",
           True, check_ricci_scalar_zero, _P4 + ("perturb",)),
    _claim("maxwell.reduction",
           "massless vector mode obeys the flat-space field equations",
           True, check_maxwell, ("potential", "omega", "k3", "m0")),
    _claim("fsq.null",
           "null transverse wave has vanishing field-strength invariant",
           True, check_fsq_null, ("omega",)),
    _claim("proca.reduction",
           "massive vector mode with the mass from the compact phase",
           True, check_proca, ("k3", "m0", "pol", "phase_factor")),
    *[_claim(f"dirac.sol{s}",
             f"half-spin solution {s}: all five sub-checks",
             True, _check_dirac(s), ("p1", "p2", "p3", "m0"))
      for s in (1, 2, 3, 4)],
    _claim("dirac.stress",
           "half-spin stress tensor equals the momentum-product form",
           True, check_dirac_stress, ()),
    _claim("inverse.photon",
           "claimed inverse of the massless vector metric",
           True, check_inverse_photon, ()),
    _claim("inverse.halfspin",
           "claimed inverse of the half-spin metric (measured)",
           False, check_inverse_halfspin, ("sol",)),
    *[_claim(f"gravity.split.{fam}",
             f"background/field split of the {fam} gravity metric "
             "(measured)",
             False, _check_gravity_split(fam), ("eps", "kappa", "points"))
      for fam in ("scalar", "proca", "dirac")],
    _claim("geodesic.closedform",
           "closed-form geodesic of the scalar-mode metric",
           True, check_geodesic_closedform, ("steps",)),
    _claim("interference.minima",
           "two-path density minima at half-integer path differences",
           True, check_interference_minima,
           ("wavelength", "d", "L", "ymax", "points")),
]}


def claim_ids() -> tuple[str, ...]:
    return tuple(sorted(REGISTRY))


def must_pass_ids() -> tuple[str, ...]:
    return tuple(sorted(c.claim_id for c in REGISTRY.values()
                        if c.must_pass))


def run_claim(claim_id: str, seed: int = 0, tol: float = 1e-9,
              trials: int = 32, params: dict | None = None) -> ClaimReport:
    claim = REGISTRY.get(claim_id)
    if claim is None:
        raise UnknownClaimError(f"unknown claim id {claim_id!r}")
    params = params or {}
    own = {k: v for k, v in params.items() if k in claim.param_names}
    return claim.runner(seed, tol, trials, own)


def run_suite(claims=None, seed: int = 0, tol: float = 1e-9,
              trials: int = 32,
              params: dict | None = None) -> tuple[ClaimReport, ...]:
    """Run a claim selection (default: every must-pass claim), reports
    merged deterministically by claim id."""
    if claims is None:
        selected = list(must_pass_ids())
    else:
        selected = sorted(set(claims))
        for cid in selected:
            if cid not in REGISTRY:
                raise UnknownClaimError(f"unknown claim id {cid!r}")
    params = params or {}
    known = set().union(*(REGISTRY[c].param_names for c in selected)) \
        if selected else set()
    stray = sorted(k for k in params if k not in known)
    if stray:
        raise ClaimParamError(
            f"parameters {stray} not accepted by any selected claim")
    return tuple(run_claim(cid, seed=seed, tol=tol, trials=trials,
                           params=params) for cid in selected)


def refuted_must_pass(records) -> tuple[str, ...]:
    return tuple(r.claim_id for r in records
                 if r.verdict == REFUTED
                 and r.claim_id in REGISTRY
                 and REGISTRY[r.claim_id].must_pass)
