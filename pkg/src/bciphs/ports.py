"""Boundary ports: extended coupling matrix, rank factor, input/output maps.

A model exposes its boundary through the trace of the co-energy and
transport fields at the two endpoints, paired by a symmetric block matrix
built from the first-order structure.  A rank factorization of that matrix
selects the independent port directions; a pair of mixing matrices
``(Xi1, Xi2)`` then fixes which linear combinations act as inputs ``v`` and
which as outputs ``y``.  The defining property is the power pairing

    y . v = (1/2) (e_b' Pe e_b - e_a' Pe e_a)

for every trace, which holds for any valid mixing pair; individual v, y
depend on the choice.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .brackets import CoEnergy, DrivingForces
from .errors import DimensionMismatch, InvalidParametrization, SingularGram, SingularP1
from .structure import FieldState, StructureMatrices, ValidationReport

_XI_TOL = 1e-12
_SPAN_TOL = 1e-10


def assemble_Pe(sm: StructureMatrices) -> np.ndarray:
    """Symmetric extended coupling matrix of size n + m + 2.

    Block rows/columns ordered as the boundary trace: conserved-field
    potentials (n), temperature (1), first-order process rates (m), entropy
    transport rate (1).
    """
    n, m = sm.n, sm.m
    d = n + m + 2
    Pe = np.zeros((d, d))
    Pe[:n, :n] = sm.P1
    Pe[:n, n + 1 : n + 1 + m] = sm.G1
    Pe[n + 1 : n + 1 + m, :n] = sm.G1.T
    Pe[n, d - 1] = sm.gs
    Pe[d - 1, n] = sm.gs
    return Pe


def rank_factor(Pe: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    """Deterministic spanning factor of the column space of ``Pe``.

    Scans columns left to right, keeping each column that adds a new
    direction (component orthogonal to the span of previously kept columns
    larger than ``tol`` times the matrix norm); every kept column is scaled
    by the inverse of its squared length.  Ties and order are therefore
    fixed by column order alone, and a rank-0 matrix yields an empty factor.
    """
    Pe = np.asarray(Pe, dtype=float)
    scale = np.linalg.norm(Pe)
    if scale == 0.0:
        return np.zeros((Pe.shape[0], 0))
    thresh = tol * scale
    kept = []
    basis = []
    for j in range(Pe.shape[1]):
        c = Pe[:, j]
        r = c.copy()
        for q in basis:
            r -= (q @ r) * q
        if np.linalg.norm(r) > thresh:
            basis.append(r / np.linalg.norm(r))
            kept.append(c / (c @ c))
    return np.column_stack(kept) if kept else np.zeros((Pe.shape[0], 0))


def xi_report(Xi1: np.ndarray, Xi2: np.ndarray) -> ValidationReport:
    """Check the two algebraic conditions a valid mixing pair must satisfy."""
    rep = ValidationReport()
    Xi1 = np.asarray(Xi1, dtype=float)
    Xi2 = np.asarray(Xi2, dtype=float)
    if Xi1.shape != Xi2.shape or Xi1.ndim != 2 or Xi1.shape[0] != Xi1.shape[1]:
        rep.add("shape", f"Xi1 and Xi2 must be square with equal shape, got {Xi1.shape} and {Xi2.shape}")
        return rep
    anti = Xi2.T @ Xi1 + Xi1.T @ Xi2
    if np.max(np.abs(anti)) > _XI_TOL:
        i, j = np.unravel_index(np.argmax(np.abs(anti)), anti.shape)
        rep.add("xi_pairing", f"Xi2'Xi1 + Xi1'Xi2 must vanish; entry ({i},{j}) is {anti[i, j]:.3e}")
    norm = Xi1.T @ Xi1 + Xi2.T @ Xi2 - np.eye(Xi1.shape[0])
    if np.max(np.abs(norm)) > _XI_TOL:
        i, j = np.unravel_index(np.argmax(np.abs(norm)), norm.shape)
        rep.add("xi_norm", f"Xi1'Xi1 + Xi2'Xi2 must be the identity; defect ({i},{j}) is {norm[i, j]:.3e}")
    return rep


def default_xi(r: int) -> tuple[np.ndarray, np.ndarray]:
    """A valid mixing pair for any port count.

    Even ``r``: the split pattern that routes transported-rate trace entries
    to inputs and potential entries to outputs.  Odd ``r``: the identity
    pair ``(I, 0)``.
    """
    if r % 2 == 0 and r > 0:
        q = r // 2
        I = np.eye(q)
        Z = np.zeros((q, q))
        Xi1 = np.block([[I, Z], [I, Z]]) / np.sqrt(2.0)
        Xi2 = np.block([[Z, I], [Z, -I]]) / np.sqrt(2.0)
        return Xi1, Xi2
    return np.eye(r), np.zeros((r, r))


def random_xi(r: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Draw a random valid mixing pair.

    Any pair of orthogonal matrices ``(Qp, Qm)`` yields a valid pair via
    ``Xi1 = (Qp + Qm)/2``, ``Xi2 = (Qp - Qm)/2``, and every valid pair
    arises this way.
    """
    Qp = np.linalg.qr(rng.normal(size=(r, r)))[0]
    Qm = np.linalg.qr(rng.normal(size=(r, r)))[0]
    return 0.5 * (Qp + Qm), 0.5 * (Qp - Qm)


@dataclass(frozen=True)
class PortParametrization:
    """Port maps of one model: factor, pseudo-inverse, reduced pairing, mixers."""

    Xi1: np.ndarray
    Xi2: np.ndarray
    M: np.ndarray
    Mp: np.ndarray
    Pep: np.ndarray
    WB: np.ndarray
    WC: np.ndarray

    @property
    def r(self) -> int:
        return self.M.shape[1]


def build_ports(M: np.ndarray, Pe: np.ndarray, Xi1: np.ndarray, Xi2: np.ndarray) -> PortParametrization:
    """Assemble the input/output maps from a spanning factor and mixing pair.

    ``Mp`` is the left pseudo-inverse of ``M`` and ``Pep`` the pairing
    reduced to the factor's columns; the two mixing blocks then give

        WB = [ (Xi2 + Xi1 Pep) Mp , (Xi2 - Xi1 Pep) Mp ] / sqrt(2)
        WC = [ (Xi1 + Xi2 Pep) Mp , (Xi1 - Xi2 Pep) Mp ] / sqrt(2)

    acting on the stacked trace ``[e_b; e_a]``.
    """
    M = np.asarray(M, dtype=float)
    Pe = np.asarray(Pe, dtype=float)
    d = Pe.shape[0]
    if M.shape[0] != d:
        raise DimensionMismatch(f"M has {M.shape[0]} rows, Pe has side {d}")
    r = M.shape[1]
    rep = xi_report(Xi1, Xi2)
    if not rep.ok:
        raise InvalidParametrization(str(rep))
    Xi1 = np.asarray(Xi1, dtype=float)
    if Xi1.shape[0] != r:
        raise DimensionMismatch(f"mixing matrices have side {Xi1.shape[0]}, M has {r} columns")
    Xi2 = np.asarray(Xi2, dtype=float)

    gram = M.T @ M
    if r:
        cond = np.linalg.cond(gram)
        if not np.isfinite(cond) or cond > 1e12:
            raise SingularGram(f"M'M is numerically singular (cond ~ {cond:.2e})")
    Mp = np.linalg.solve(gram, M.T) if r else np.zeros((0, d))
    span_defect = np.linalg.norm(Pe - M @ (Mp @ Pe))
    if span_defect > _SPAN_TOL * max(1.0, np.linalg.norm(Pe)):
        raise InvalidParametrization(
            f"columns of M do not span the column space of Pe (defect {span_defect:.3e})"
        )
    Pep = M.T @ Pe @ M
    s2 = 1.0 / np.sqrt(2.0)
    WB = np.hstack([s2 * (Xi2 + Xi1 @ Pep) @ Mp, s2 * (Xi2 - Xi1 @ Pep) @ Mp])
    WC = np.hstack([s2 * (Xi1 + Xi2 @ Pep) @ Mp, s2 * (Xi1 - Xi2 @ Pep) @ Mp])
    return PortParametrization(Xi1=Xi1, Xi2=Xi2, M=M, Mp=Mp, Pep=Pep, WB=WB, WC=WC)


@dataclass(frozen=True)
class BoundaryTrace:
    """Trace vectors at the two endpoints, ordered like the Pe blocks."""

    e_b: np.ndarray
    e_a: np.ndarray


def boundary_trace(state: FieldState, forces: DrivingForces, ce: CoEnergy) -> BoundaryTrace:
    """Assemble the endpoint trace ``[dHdx; dHds; R1*dHds; rs*dHds]``."""

    def at(k: int) -> np.ndarray:
        T = ce.dHds[k]
        return np.concatenate([ce.dHdx[:, k], [T], forces.R1[:, k] * T, [forces.rs[k] * T]])

    return BoundaryTrace(e_b=at(-1), e_a=at(0))


def evaluate_ports(pp: PortParametrization, tr: BoundaryTrace) -> tuple[np.ndarray, np.ndarray]:
    """Input and output values for one trace: ``v = WB [e_b; e_a]`` etc."""
    stacked = np.concatenate([tr.e_b, tr.e_a])
    if stacked.shape[0] != pp.WB.shape[1]:
        raise DimensionMismatch(f"trace has length {stacked.shape[0]}, maps expect {pp.WB.shape[1]}")
    return pp.WB @ stacked, pp.WC @ stacked


def pairing_defect(pp: PortParametrization, Pe: np.ndarray) -> float:
    """Max abs deviation of WB'WC + WC'WB from the block pairing of Pe."""
    d = Pe.shape[0]
    want = np.zeros((2 * d, 2 * d))
    want[:d, :d] = Pe
    want[d:, d:] = -Pe
    return float(np.max(np.abs(pp.WB.T @ pp.WC + pp.WC.T @ pp.WB - want)))


def validate_bcphs(WB: np.ndarray, WC: np.ndarray, P1: np.ndarray) -> ValidationReport:
    """Check the three reversible boundary-map conditions against P1.

    Applies only when P1 is invertible (pure first-order reversible
    systems); uses the signature matrix ``diag(P1^-1, -P1^-1)``.
    """
    P1 = np.asarray(P1, dtype=float)
    n = P1.shape[0]
    try:
        P1inv = np.linalg.inv(P1)
    except np.linalg.LinAlgError:
        raise SingularP1("P1 must be invertible for the reversible boundary-map check") from None
    if np.linalg.cond(P1) > 1e12:
        raise SingularP1("P1 must be invertible for the reversible boundary-map check")
    Sig = np.zeros((2 * n, 2 * n))
    Sig[:n, :n] = P1inv
    Sig[n:, n:] = -P1inv
    WB = np.asarray(WB, dtype=float)
    WC = np.asarray(WC, dtype=float)

    rep = ValidationReport()
    tol = 1e-10
    for name, val, want in (
        ("WB_isotropic", WB @ Sig @ WB.T, 0.0),
        ("WC_isotropic", WC @ Sig @ WC.T, 0.0),
        ("WB_WC_pairing", WB @ Sig @ WC.T, 1.0),
    ):
        defect = val - want * np.eye(val.shape[0])
        worst = float(np.max(np.abs(defect))) if defect.size else 0.0
        if worst > tol:
            rep.add(name, f"{name} condition fails with max defect {worst:.3e}")
    return rep
