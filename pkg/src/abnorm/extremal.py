"""Abnormal extremal descriptors and the strict/non-strict classification.

The 2D case uses the canonical structure constants plus the axis condition
on the control body; the 3D case is purely algebraic (normalizer and
centralizer).  The summary dispatch cross-checks the per-family summary
statement against the criterion and the ODE witness oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import adjoint
from .catalog import AlgebraId, instantiate
from .lie import StructureConstants, bracket
from .seminorm import SeminormBody, axis_condition
from .subspace import (
    CanonicalBasis,
    SL2SubspaceType,
    Subspace,
    SubspaceError,
    _contains,
    _orthonormal_basis,
    canonical_basis,
    classify_sl2,
    generates,
    intersect,
    normalizer,
)


class Verdict(Enum):
    NonStrict = "non-strict"
    Strict = "strict"


class Reason(Enum):
    C1C2Zero = "C123 = C223 = 0"
    AxisConditionHolds = "C123 != 0 and the axis condition holds"
    AxisConditionFails = "C123 != 0 and the axis condition fails"
    C1ZeroC2Nonzero = "C123 = 0, C223 != 0"


@dataclass(frozen=True)
class ExtremalDescriptor:
    s: int
    velocity: np.ndarray           # catalog frame
    velocity_canonical: np.ndarray  # coordinates in (e1, e2)
    label: str


@dataclass(frozen=True)
class DirectionReport:
    s: int
    verdict: Verdict
    reason: Reason
    witness: dict | None
    pmp_max: int  # 1 when a normal witness certifies non-strictness, else 0


@dataclass(frozen=True)
class StrictnessReport:
    basis: CanonicalBasis
    directions: dict  # s -> DirectionReport

    @property
    def combined(self) -> Verdict:
        if all(d.verdict is Verdict.NonStrict for d in self.directions.values()):
            return Verdict.NonStrict
        return Verdict.Strict


def abnormal_extremals(alg: StructureConstants, p: Subspace, body: SeminormBody):
    """The two one-parameter subgroup descriptors, s = +/-1."""
    gen = generates(alg, p)
    if not gen:
        raise SubspaceError("subspace does not generate the algebra")
    basis = canonical_basis(alg, p)
    out = []
    for s in (1, -1):
        f = body.gauge((0.0, float(s)))
        vel_canon = np.array([0.0, s / f])
        vel = basis.to_catalog_frame(vel_canon)
        out.append(
            ExtremalDescriptor(
                s=s,
                velocity=vel,
                velocity_canonical=vel_canon,
                label="one-parameter subgroup exp(t * velocity)",
            )
        )
    return out


def _direction_report(basis: CanonicalBasis, body: SeminormBody, s: int) -> DirectionReport:
    c1, c2, c3 = (
        x if abs(x) > adjoint.ZERO_TOL else 0.0 for x in basis.c23[:3]
    )
    f = body.gauge((0.0, float(s)))
    u2 = s / f
    if c1 == 0.0 and c2 == 0.0:
        k = adjoint._solve_support_level(body, 1.0 / u2)
        witness = {"psi1": k, "psi2": 1.0 / u2, "psi3": 0.0,
                   "psi4": f"exp({c3 * u2:g} * t)"}
        return DirectionReport(s, Verdict.NonStrict, Reason.C1C2Zero, witness, 1)
    if c1 != 0.0:
        if axis_condition(body, s):
            witness = {"psi1": 0.0, "psi2": 1.0 / u2, "psi3": 0.0,
                       "psi4": f"exp({c3 * u2:g} * t)"}
            return DirectionReport(s, Verdict.NonStrict, Reason.AxisConditionHolds, witness, 1)
        return DirectionReport(s, Verdict.Strict, Reason.AxisConditionFails, None, 0)
    return DirectionReport(s, Verdict.Strict, Reason.C1ZeroC2Nonzero, None, 0)


def classify(alg: StructureConstants, p: Subspace, body: SeminormBody) -> StrictnessReport:
    """Per-direction strictness via the canonical-constant criterion."""
    gen = generates(alg, p)
    if not gen:
        raise SubspaceError("subspace does not generate the algebra")
    basis = canonical_basis(alg, p)
    return StrictnessReport(
        basis=basis,
        directions={s: _direction_report(basis, body, s) for s in (1, -1)},
    )


class Dim3Verdict(Enum):
    NonStrictForAllMetrics = "non-strict for all metrics"
    StrictForAllMetrics = "strict for all metrics"
    MetricDependent = "metric dependent"


@dataclass(frozen=True)
class Dim3Report:
    exists: bool
    p1: np.ndarray | None
    verdict: Dim3Verdict | None
    extremal_direction: np.ndarray | None
    metric_nonstrict: bool | None = None  # set when a metric is supplied


def classify_dim3(alg: StructureConstants, p: Subspace, metric_inner=None) -> Dim3Report:
    """3D generating subspace: abnormal extremals exist iff p1 = p ∩ N(p)
    is nonzero (then one-dimensional); strictness from p1 vs [p1, p]."""
    if p.dim != 3:
        raise SubspaceError("3D subspace expected")
    if not generates(alg, p):
        raise SubspaceError("subspace does not generate the algebra")
    p1 = intersect(p.basis, normalizer(alg, p))
    if p1.shape[0] == 0:
        return Dim3Report(exists=False, p1=None, verdict=None, extremal_direction=None)
    assert p1.shape[0] == 1, "p ∩ N(p) must be a line for a generating 3D subspace"
    x = p1[0]
    brackets = [bracket(alg, x, v) for v in p.basis]
    span_b = _orthonormal_basis(brackets)
    in_bracket = _contains(span_b, x) if span_b.shape[0] else False
    all_zero = span_b.shape[0] == 0
    if in_bracket:
        verdict = Dim3Verdict.StrictForAllMetrics
    elif all_zero:
        # [p1, p] = 0 means p1 = p ∩ C(p)
        verdict = Dim3Verdict.NonStrictForAllMetrics
    else:
        verdict = Dim3Verdict.MetricDependent
    metric_nonstrict = None
    if metric_inner is not None and verdict is Dim3Verdict.MetricDependent:
        # supporting-plane test: the witness covector must annihilate
        # [p1, p], i.e. X is metrically orthogonal to it inside p
        g = np.asarray(metric_inner, dtype=float)
        coords = np.linalg.lstsq(p.basis.T, x, rcond=None)[0]
        vals = []
        for v in brackets:
            cv = np.linalg.lstsq(p.basis.T, v, rcond=None)[0]
            vals.append(abs(float(coords @ g @ cv)))
        metric_nonstrict = max(vals) <= 1e-9
    return Dim3Report(
        exists=True,
        p1=x,
        verdict=verdict,
        extremal_direction=x,
        metric_nonstrict=metric_nonstrict,
    )


_CASE_1_FAMILIES = {
    "g3.2+g1": "1.3", "g3.4+g1": "1.3", "g3.5+g1": "1.3",
    "g4.1": "1.4", "g4.2": "1.4", "g4.3": "1.4",
    "g4.4": "1.4", "g4.5": "1.4", "g4.6": "1.4",
    "g4.10": "1.2",
}
_CASE_2_FAMILIES = {"g3.7+g1", "g4.7", "g4.9"}


@dataclass(frozen=True)
class DispatchReport:
    case: str
    summary_verdict: Verdict | None     # per-family summary statement
    criterion_verdict: Verdict          # canonical-constant criterion
    oracle_verdict: Verdict             # ODE witness search
    consistent: bool
    flagged_tension: bool
    sl2_type: str | None
    report: StrictnessReport


def theorem3_dispatch(alg_id: AlgebraId, p: Subspace, body: SeminormBody) -> DispatchReport:
    """Summary-case dispatch with criterion and oracle cross-check.

    Known tension: for the sl(2,R)+R types IIa/IIb the summary statement
    says strict while the criterion (and the oracle) can say non-strict
    when the axis condition holds; such instances are flagged, never
    silently classified.
    """
    alg = instantiate(alg_id)
    rep = classify(alg, p, body)
    oracle = Verdict.NonStrict if all(
        adjoint.witness_search(rep.basis, body, s) is not None for s in (1, -1)
    ) else Verdict.Strict

    fam = alg_id.family
    sl2_type = None
    if fam in _CASE_1_FAMILIES:
        case, summary = _CASE_1_FAMILIES[fam], Verdict.NonStrict
    elif fam == "g4.8":
        if alg_id.alpha == 0:
            case, summary = "1.1", Verdict.NonStrict
        else:
            case, summary = "2", (
                Verdict.NonStrict if rep.combined is Verdict.NonStrict else Verdict.Strict
            )
            summary = None  # conditional case; resolved below
    elif fam in _CASE_2_FAMILIES:
        case, summary = "2", None
    elif fam == "g3.6+g1":
        typing = classify_sl2(alg, p, fam)
        sl2_type = typing.tag.value
        if typing.tag is SL2SubspaceType.TypeI:
            case, summary = "2", None
        else:
            case, summary = "3", Verdict.Strict
    else:
        case, summary = "-", None

    if case == "2" or (fam == "g4.8" and alg_id.alpha not in (0, 1) and case == "2"):
        # conditional case: summary verdict equals the axis condition
        both_axis = all(axis_condition(body, s) for s in (1, -1))
        summary = Verdict.NonStrict if both_axis else Verdict.Strict

    criterion = rep.combined
    consistent = (summary is None or summary is criterion) and criterion is oracle
    flagged = fam == "g3.6+g1" and sl2_type in ("IIa", "IIb") and summary is not criterion
    return DispatchReport(
        case=case,
        summary_verdict=summary,
        criterion_verdict=criterion,
        oracle_verdict=oracle,
        consistent=consistent,
        flagged_tension=flagged,
        sl2_type=sl2_type,
        report=rep,
    )
