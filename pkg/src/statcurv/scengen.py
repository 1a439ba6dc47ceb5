"""Deterministic, seeded generation of realizable submanifold point data.

Every datum is built from an explicit orthonormal frame of the ambient
space, so the compatibility relations between the structure tensor, the
structure vector and the tangent space hold by construction rather than
by sampling luck.  The named classes reproduce the special families of
submanifolds discussed alongside the inequalities (totally geodesic,
h = -h*, Legendrian, invariant, anti-invariant, and the Chen-Ricci
equality configuration).
"""

from __future__ import annotations

from dataclasses import dataclass, asdict

import numpy as np

from .ambient import AmbientGeometry, WarpingProfile
from .linalg import orthonormalize
from .submanifold import SubmanifoldPointData

CLASSES = (
    "generic",
    "totally_geodesic",
    "dual_equal",
    "legendrian",
    "invariant",
    "anti_invariant",
    "chen_ricci_equality",
)


class ClassDimensionError(ValueError):
    """The requested class is impossible at the requested dimensions."""


@dataclass(frozen=True)
class Scenario:
    """Full recipe for one generated point; generation is pure in this."""

    seed: int
    m: int
    p: int
    n: int
    profile_kind: str = "exp"
    z: float = 0.0
    cbar: float = 0.0
    klass: str = "generic"
    magnitude: float = 1.0

    def __post_init__(self):
        if self.m < 2 or self.p < 1:
            raise ValueError("need m >= 2 and p >= 1")
        if self.m + self.p != 2 * self.n + 1:
            raise ClassDimensionError("ambient frame needs m + p = 2n + 1")
        if self.klass not in CLASSES:
            raise ValueError("unknown class %r" % (self.klass,))
        if not self.magnitude > 0.0:
            raise ValueError("magnitude must be positive")

    def to_dict(self) -> dict:
        rec = asdict(self)
        rec["class"] = rec.pop("klass")
        return rec

    @staticmethod
    def from_dict(rec: dict) -> "Scenario":
        rec = dict(rec)
        rec["klass"] = rec.pop("class")
        return Scenario(**rec)


def mix_seed(base_seed: int, trial_index: int) -> int:
    """Documented per-trial seed mixing: SeedSequence((base, index)).

    Order-independent, so parallel and serial campaigns see identical
    streams.
    """
    return int(np.random.SeedSequence((base_seed, trial_index)).generate_state(1, np.uint64)[0])


def _random_orthogonal(rng, n: int) -> np.ndarray:
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    return q * np.sign(np.diag(r))


def _tangent_frame(rng, s: Scenario) -> np.ndarray:
    """Rows: orthonormal tangent frame in the (2n+1)-dim ambient frame.

    Coordinate 0 is the line direction; fiber coordinates split into the
    x-block (1..n) and y-block (n+1..2n) with J x_i = y_i.
    """
    n, m, D = s.n, s.m, 2 * s.n + 1
    if s.klass == "invariant":
        if m % 2 != 0 or m > 2 * n:
            raise ClassDimensionError("invariant class needs even m <= 2n")
        frame = []
        for _ in range(m // 2):
            for _attempt in range(50):
                v = np.zeros(D)
                v[1:] = rng.standard_normal(2 * n)
                for w in frame:
                    v -= (v @ w) * w
                nrm = np.linalg.norm(v)
                if nrm > 1e-8:
                    break
            v /= nrm
            Jv = np.zeros(D)
            Jv[1 + n :] = v[1 : 1 + n]
            Jv[1 : 1 + n] = -v[1 + n :]
            frame.extend([v, Jv])
        return np.array(frame)
    if s.klass == "legendrian":
        if m != n:
            raise ClassDimensionError("legendrian class needs m = n (and hence p = n + 1)")
        Q = _random_orthogonal(rng, n)
        theta = rng.uniform(0.0, 2.0 * np.pi, size=n)
        frame = np.zeros((m, D))
        frame[:, 1 : 1 + n] = np.cos(theta)[:, None] * Q.T
        frame[:, 1 + n :] = np.sin(theta)[:, None] * Q.T
        return frame
    if s.klass == "anti_invariant":
        if m > n + 1:
            raise ClassDimensionError("anti-invariant class needs m <= n + 1")
        sub = orthonormalize(rng.standard_normal((m, n + 1)))
        frame = np.zeros((m, D))
        frame[:, 0 : 1 + n] = sub  # line direction plus the x-block
        return frame
    # generic-position tangent space for the remaining classes
    return orthonormalize(rng.standard_normal((m, D)))


def _symmetric_tensor(rng, p: int, m: int, magnitude: float) -> np.ndarray:
    A = rng.standard_normal((p, m, m))
    return 0.5 * magnitude * (A + A.transpose(0, 2, 1))


def generate(s: Scenario) -> SubmanifoldPointData:
    """Generate the point data of a scenario (pure function of ``s``)."""
    rng = np.random.default_rng(s.seed)
    D = 2 * s.n + 1
    U = _tangent_frame(rng, s)
    # Normal frame: orthonormal completion of the tangent frame.
    full = orthonormalize(np.concatenate([U, rng.standard_normal((s.p, D))], axis=0))
    V = full[s.m :]
    profile = WarpingProfile.of_kind(s.profile_kind, s.z)
    geo = AmbientGeometry(n=s.n, cbar=s.cbar, profile=profile)
    Phi = geo.phi
    P = U @ Phi @ U.T
    e0 = np.zeros(D)
    e0[0] = 1.0
    T = U @ e0
    lam = V @ e0

    h = _symmetric_tensor(rng, s.p, s.m, s.magnitude)
    hstar = _symmetric_tensor(rng, s.p, s.m, s.magnitude)
    if s.klass == "totally_geodesic":
        h = np.zeros_like(h)
        hstar = np.zeros_like(hstar)
    elif s.klass == "dual_equal":
        hstar = -h
    elif s.klass == "chen_ricci_equality":
        # Make the first frame direction satisfy the equality conditions:
        # the averaged form pairs it with nothing orthogonal, and its
        # diagonal value carries half the trace.
        h0 = 0.5 * (h + hstar)
        K = 0.5 * (h - hstar)
        h0[:, 0, 1:] = 0.0
        h0[:, 1:, 0] = 0.0
        rest = np.einsum("kii->k", h0[:, 1:, 1:])
        h0[:, 0, 0] = rest  # then h0(E,E) = tr/2 = (m/2) |H0-component|
        h = h0 + K
        hstar = h0 - K

    return SubmanifoldPointData(m=s.m, p=s.p, geo=geo, h=h, hstar=hstar, P=P, T=T, lam=lam)


def _arrays_from(d) -> dict:
    if isinstance(d, SubmanifoldPointData):
        d = d.to_dict()
    return {
        "m": int(d["m"]),
        "p": int(d["p"]),
        "h": np.array(d["h"], dtype=float),
        "hstar": np.array(d["hstar"], dtype=float),
        "P": np.array(d["P"], dtype=float),
        "T": np.array(d["T"], dtype=float),
        "lam": np.array(d["lambda"], dtype=float),
    }


def realizability_audit(d, scenario: Scenario | None = None, tol: float = 1e-9) -> dict:
    """Re-check the structural invariants (and class predicates) of a datum.

    Accepts point data or its serialized record, so corrupted inputs can
    be audited too.  Returns a dict of named booleans.
    """
    a = _arrays_from(d)
    h, hstar, P, T, lam = a["h"], a["hstar"], a["P"], a["T"], a["lam"]
    report = {
        "h_symmetric": bool(np.abs(h - h.transpose(0, 2, 1)).max(initial=0.0) <= tol),
        "hstar_symmetric": bool(np.abs(hstar - hstar.transpose(0, 2, 1)).max(initial=0.0) <= tol),
        "P_skew": bool(np.abs(P + P.T).max(initial=0.0) <= tol),
        "structure_vector_unit": bool(abs(float(T @ T) + float(lam @ lam) - 1.0) <= tol),
        "shapes_consistent": bool(
            h.shape == (a["p"], a["m"], a["m"])
            and hstar.shape == h.shape
            and P.shape == (a["m"], a["m"])
            and T.shape == (a["m"],)
            and lam.shape == (a["p"],)
        ),
    }
    if scenario is not None:
        k = scenario.klass
        if k == "totally_geodesic":
            report["class_predicate"] = bool(
                np.abs(h).max(initial=0.0) <= tol and np.abs(hstar).max(initial=0.0) <= tol
            )
        elif k == "dual_equal":
            report["class_predicate"] = bool(np.abs(h + hstar).max(initial=0.0) <= tol)
        elif k == "legendrian":
            report["class_predicate"] = bool(
                np.abs(P).max(initial=0.0) <= tol and np.abs(T).max(initial=0.0) <= tol
            )
        elif k == "anti_invariant":
            report["class_predicate"] = bool(np.abs(P).max(initial=0.0) <= tol)
        elif k == "invariant":
            report["class_predicate"] = bool(
                np.abs(P @ P.T - np.eye(a["m"])).max() <= 1e2 * tol
                and np.abs(T).max(initial=0.0) <= tol
            )
        elif k == "chen_ricci_equality":
            h0 = 0.5 * (h + hstar)
            tr = np.einsum("kii->k", h0)
            report["class_predicate"] = bool(
                np.abs(h0[:, 0, 1:]).max(initial=0.0) <= tol
                and np.abs(h0[:, 0, 0] - 0.5 * tr).max(initial=0.0) <= tol
            )
        else:
            report["class_predicate"] = True
    report["all_pass"] = all(report.values())
    return report
