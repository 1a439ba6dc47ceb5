"""Inequality checkers: evaluate both sides, report slack and equality flags.

Each checker returns a SlackReport carrying two right-hand sides where
the literature offers two inequivalent readings: ``rhs_proof`` follows
the quantities the proof actually bounds (the polynomial inequalities in
the averaged second fundamental form), ``rhs_stated`` follows the
published statement's definitions.  Only ``slack_proof`` is ever
asserted by the test suite; negative ``slack_stated`` values are
findings, not failures.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .ambient import max_tangent_sectional
from .submanifold import (
    SubmanifoldPointData,
    casorati,
    hyperplane_casorati,
    mean_curvatures,
    normalized_deltas,
    restricted_casorati,
    ricci,
)
from .tolerances import DEFAULT_TOLERANCES, Tolerances


class ClassPredicateError(ValueError):
    """Data does not belong to the declared submanifold class."""


class NotRicciFlatError(ValueError):
    pass


@dataclass
class SlackReport:
    name: str
    lhs: float
    rhs_proof: float
    rhs_stated: float
    slack_proof: float
    slack_stated: float
    equality_predicate_holds: bool
    details: dict = field(default_factory=dict)
    witness: Optional[dict] = None

    def to_dict(self) -> dict:
        rec = {
            "name": self.name,
            "lhs": self.lhs,
            "rhs_proof": self.rhs_proof,
            "rhs_stated": self.rhs_stated,
            "slack_proof": self.slack_proof,
            "slack_stated": self.slack_stated,
            "equality_predicate_holds": self.equality_predicate_holds,
            "details": self.details,
        }
        if self.witness is not None:
            rec["witness"] = self.witness
        return rec


def _common_terms(d: SubmanifoldPointData, summary) -> float:
    """Curvature and mean-curvature terms shared by both Casorati bounds."""
    m = d.m
    co = d.geo.coefficients()
    return (
        co.alpha
        + 3.0 * co.gamma * summary.phi_norm2 / (m * (m - 1))
        - (2.0 * co.beta / m) * summary.T_norm2
        - (m / (2.0 * (m - 1))) * (summary.H_norm2 + summary.Hstar_norm2)
    )


def check_casorati(d: SubmanifoldPointData, tol: Tolerances = DEFAULT_TOLERANCES) -> SlackReport:
    """Normalized-scalar-curvature bound by the delta Casorati curvatures.

    lhs is the normalized scalar curvature; rhs_stated uses the averaged
    delta functionals of h and h*; rhs_proof uses the delta functional of
    the averaged tensor h0 (what the underlying polynomial bound actually
    controls).
    """
    if d.m < 2:
        raise ValueError("need m >= 2")
    s = casorati(d)
    common = _common_terms(d, s)
    m = d.m
    lo = (m + 1.0) / (2.0 * m)
    inf_h, _ = hyperplane_casorati(d, "h", "min")
    inf_s, _ = hyperplane_casorati(d, "hstar", "min")
    inf_0, _ = hyperplane_casorati(d, "h0", "min")
    delta = 0.5 * s.C + lo * inf_h
    delta_star = 0.5 * s.Cstar + lo * inf_s
    delta_mid = 0.5 * s.C0_mid + lo * inf_0
    lhs = s.rho
    rhs_stated = (delta + delta_star) + s.C0_avg / (m - 1) + common
    rhs_proof = delta_mid + s.C0_avg / (m - 1) + common
    pred = bool(np.abs(d.h + d.hstar).max(initial=0.0) <= tol.predicate)
    report = SlackReport(
        name="casorati",
        lhs=lhs,
        rhs_proof=rhs_proof,
        rhs_stated=rhs_stated,
        slack_proof=rhs_proof - lhs,
        slack_stated=rhs_stated - lhs,
        equality_predicate_holds=pred,
        details={"delta_mid": delta_mid, "delta_sum": delta + delta_star},
    )
    if report.slack_proof < -tol.slack:
        report.witness = d.to_dict()
    return report


def check_casorati_hat(d: SubmanifoldPointData, tol: Tolerances = DEFAULT_TOLERANCES) -> SlackReport:
    """The hatted variant of the Casorati bound (sup-hyperplane family)."""
    if d.m < 2:
        raise ValueError("need m >= 2")
    s = casorati(d)
    common = _common_terms(d, s)
    m = d.m
    hi = (2.0 * m - 1.0) / (2.0 * m)
    lhs = s.rho
    sup_h, _ = hyperplane_casorati(d, "h", "max")
    sup_s, _ = hyperplane_casorati(d, "hstar", "max")
    sup_mid, _ = hyperplane_casorati(d, "h0", "max")
    delta_hat = 2.0 * s.C - hi * sup_h
    delta_hat_star = 2.0 * s.Cstar - hi * sup_s
    rhs_stated = (delta_hat + delta_hat_star) + s.C0_avg / (m - 1) + common
    rhs_proof = 2.0 * s.C0_mid - ((m + 1.0) / (2.0 * m)) * sup_mid + s.C0_avg / (m - 1) + common
    pred = bool(np.abs(d.h + d.hstar).max(initial=0.0) <= tol.predicate)
    report = SlackReport(
        name="casorati_hat",
        lhs=lhs,
        rhs_proof=rhs_proof,
        rhs_stated=rhs_stated,
        slack_proof=rhs_proof - lhs,
        slack_stated=rhs_stated - lhs,
        equality_predicate_holds=pred,
        details={"sup_mid": sup_mid},
    )
    if report.slack_proof < -tol.slack:
        report.witness = d.to_dict()
    return report


def proof_identity_residual(d: SubmanifoldPointData, hat: bool = False) -> float:
    """Residual of the exact per-hyperplane identity behind the bounds.

    With the hyperplane fixed to the span of the first m-1 frame vectors,
    m(m-1) * (rhs_proof(W) - lhs) equals the reduced polynomial in the h0
    components exactly; this returns the absolute residual of that
    identity (used as a construction check, it should sit at rounding
    level).
    """
    from .optkit import eval_Q, eval_Qhat

    m = d.m
    s = casorati(d)
    common = _common_terms(d, s)
    u = np.zeros(m)
    u[m - 1] = 1.0  # W = span(e_1 .. e_{m-1})
    cas_W = restricted_casorati(d.h0, u)
    if hat:
        rhs_W = 2.0 * s.C0_mid - ((m + 1.0) / (2.0 * m)) * cas_W + s.C0_avg / (m - 1) + common
        poly = eval_Qhat(d.h0)
    else:
        rhs_W = (
            0.5 * s.C0_mid
            + ((m + 1.0) / (2.0 * m)) * cas_W
            + s.C0_avg / (m - 1)
            + common
        )
        poly = eval_Q(d.h0)
    return abs(m * (m - 1) * (rhs_W - s.rho) - poly)


@dataclass
class EqualityReport:
    predicate_holds: bool
    slack_zero: bool
    slack_proof: float


def check_equality_characterization(
    d: SubmanifoldPointData, tol: Tolerances = DEFAULT_TOLERANCES
) -> EqualityReport:
    """Both directions of 'equality in the Casorati bound iff h = -h*'."""
    rep = check_casorati(d, tol)
    return EqualityReport(
        predicate_holds=rep.equality_predicate_holds,
        slack_zero=bool(abs(rep.slack_proof) <= tol.slack),
        slack_proof=rep.slack_proof,
    )


def _chen_ricci_sides(d: SubmanifoldPointData, E: np.ndarray):
    m = d.m
    co = d.geo.coefficients()
    _, _, H0 = mean_curvatures(d)
    phiE_tan2 = float(np.sum((d.P @ E) ** 2))
    gET = float(E @ d.T)
    maxK = max_tangent_sectional(E, d)
    rhs = (
        co.alpha * (m - 1)
        + 3.0 * co.gamma * phiE_tan2
        + co.beta * ((2.0 - m) * gET * gET - float(d.T @ d.T))
        + 0.5 * m * m * float(H0 @ H0)
        - 2.0 * (m - 1) * maxK
    )
    return rhs, maxK, phiE_tan2, gET, H0


def check_chen_ricci(
    d: SubmanifoldPointData, E, tol: Tolerances = DEFAULT_TOLERANCES
) -> SlackReport:
    """Ricci curvature bound for the unit direction E.

    The phi-term uses the tangential norm |P E|; the ambient norm of
    phi E is reported in the details as a diagnostic.  The two equality
    predicates (mean-curvature alignment of h0(E,E) and vanishing of the
    mixed h0(E, .) components) are evaluated separately.
    """
    E = np.asarray(E, dtype=float)
    if abs(float(E @ E) - 1.0) > 1e-10:
        raise ValueError("E must be a unit tangent vector")
    lhs = ricci(d, E)
    rhs, maxK, phiE_tan2, gET, H0 = _chen_ricci_sides(d, E)
    m = d.m
    h0 = d.h0
    h0E = np.einsum("kij,j->ki", h0, E)
    diagE = h0E @ E  # h0_k(E, E)
    mixed = h0E - diagE[:, None] * E[None, :]  # components orthogonal to E
    pred_mean = bool(np.abs(diagE - 0.5 * m * H0).max(initial=0.0) <= tol.predicate)
    pred_mixed = bool(np.abs(mixed).max(initial=0.0) <= tol.predicate)
    report = SlackReport(
        name="chen_ricci",
        lhs=lhs,
        rhs_proof=rhs,
        rhs_stated=rhs,
        slack_proof=rhs - lhs,
        slack_stated=rhs - lhs,
        equality_predicate_holds=pred_mean and pred_mixed,
        details={
            "max_sectional": maxK,
            "phiE_tangential_norm2": phiE_tan2,
            "phiE_ambient_norm2": 1.0 - gET * gET,
            "predicate_mean_alignment": pred_mean,
            "predicate_mixed_vanish": pred_mixed,
        },
    )
    if report.slack_proof < -tol.slack:
        report.witness = d.to_dict()
        report.details["E"] = E.tolist()
    return report


def check_ricci_flat(
    d: SubmanifoldPointData,
    E,
    flat_tol: float = 1e-9,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> SlackReport:
    """Ricci-flat corollary: bound on the maximal ambient sectional value.

    Requires |Ric(E)| <= flat_tol; the report's details carry the exact
    rearrangement residual against the underlying Ricci bound.
    """
    E = np.asarray(E, dtype=float)
    ric = ricci(d, E)
    if abs(ric) > flat_tol:
        raise NotRicciFlatError("Ric(E) = %r exceeds the declared flatness tolerance" % (ric,))
    base = check_chen_ricci(d, E, tol)
    m = d.m
    maxK = base.details["max_sectional"]
    lhs = 2.0 * (m - 1) * maxK
    rhs = base.rhs_proof + lhs  # the bound with the eigen term moved across
    slack = rhs - lhs
    report = SlackReport(
        name="ricci_flat",
        lhs=lhs,
        rhs_proof=rhs,
        rhs_stated=rhs,
        slack_proof=slack,
        slack_stated=slack,
        equality_predicate_holds=base.equality_predicate_holds,
        details={
            "ricci": ric,
            "rearrangement_residual": abs(slack - (base.slack_proof + ric)),
            "max_sectional": maxK,
        },
    )
    return report


def check_special_class(
    d: SubmanifoldPointData,
    klass: str,
    E=None,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> SlackReport:
    """Class-specialized bounds (Legendrian / invariant / anti-invariant).

    Legendrian data gets the Casorati bound with the structure terms
    dropped; invariant and anti-invariant data get the Ricci bound with
    the phi-term fixed at its class value.  The report always carries the
    general bound as well and the max deviation between the two.
    """
    if klass == "legendrian":
        if np.abs(d.P).max(initial=0.0) > 1e3 * tol.predicate or float(d.T @ d.T) > 1e3 * tol.predicate:
            raise ClassPredicateError("legendrian data must have P = 0 and T = 0")
        general = check_casorati(d, tol)
        s = normalized_deltas(d)
        m = d.m
        co = d.geo.coefficients()
        common = co.alpha - (m / (2.0 * (m - 1))) * (s.H_norm2 + s.Hstar_norm2)
        rhs_stated = (s.delta + s.delta_star) + s.C0_avg / (m - 1) + common
        rhs_proof = s.delta_mid + s.C0_avg / (m - 1) + common
        report = SlackReport(
            name="legendrian_casorati",
            lhs=general.lhs,
            rhs_proof=rhs_proof,
            rhs_stated=rhs_stated,
            slack_proof=rhs_proof - general.lhs,
            slack_stated=rhs_stated - general.lhs,
            equality_predicate_holds=general.equality_predicate_holds,
            details={
                "general_rhs_proof": general.rhs_proof,
                "specialization_gap": abs(rhs_proof - general.rhs_proof),
            },
        )
        return report

    if klass not in ("invariant", "anti_invariant"):
        raise ValueError("class must be legendrian, invariant or anti_invariant")
    if E is None:
        raise ValueError("the Ricci-type class checks need a unit direction E")
    E = np.asarray(E, dtype=float)
    PE2 = float(np.sum((d.P @ E) ** 2))
    if klass == "anti_invariant" and np.abs(d.P).max(initial=0.0) > 1e3 * tol.predicate:
        raise ClassPredicateError("anti-invariant data must have P = 0")
    if klass == "invariant" and abs(PE2 - 1.0) > 1e3 * tol.predicate:
        raise ClassPredicateError("invariant data must have |P E| = 1 for unit E")
    general = check_chen_ricci(d, E, tol)
    co = d.geo.coefficients()
    phi_term_class = 0.0 if klass == "anti_invariant" else 3.0 * co.gamma
    rhs_class = general.rhs_proof - 3.0 * co.gamma * PE2 + phi_term_class
    report = SlackReport(
        name="%s_chen_ricci" % klass,
        lhs=general.lhs,
        rhs_proof=rhs_class,
        rhs_stated=rhs_class,
        slack_proof=rhs_class - general.lhs,
        slack_stated=rhs_class - general.lhs,
        equality_predicate_holds=general.equality_predicate_holds,
        details={
            "general_rhs_proof": general.rhs_proof,
            "specialization_gap": abs(rhs_class - general.rhs_proof),
        },
    )
    return report
