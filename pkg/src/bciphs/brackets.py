"""Co-energy fields, pointwise driving-force brackets, and entropy sources.

The irreversible part of a model is driven by three kinds of scalar bracket
fields evaluated at every node:

- zero-order: the projection of the driving-potential vector on a coupling
  column, with a minus sign (for reaction columns this is the affinity),
- first-order: the projection of the *spatial gradient* of the driving
  potentials on a coupling column,
- entropy transport: the temperature gradient.

Each bracket, multiplied by its nonnegative modulation coefficient, gives a
rate; rate times bracket gives the corresponding entropy production density,
which is a nonnegative multiple of the bracket squared.

Two sign conventions exist for the first-order bracket.  The default
(``"adjoint"``) takes ``+ g . d/dz(dHdx)``, which reproduces the physical
driving forces (gradient of a chemical potential, velocity shear) and makes
the entropy balance close.  The alternative (``"transpose"``) flips the
sign, matching a literal transpose pairing of the first-order operator; it
is kept selectable so the two can be compared side by side.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, InadmissibleState
from .structure import FieldState, StructureMatrices, ThermoClosure

_SIGN1 = {"adjoint": 1.0, "transpose": -1.0}


def convention_sign(convention: str) -> float:
    try:
        return _SIGN1[convention]
    except KeyError:
        raise ValueError(f"convention must be 'adjoint' or 'transpose', got {convention!r}") from None


@dataclass(frozen=True)
class CoEnergy:
    """Driving potentials ``dHdx`` (n, N) and temperature ``dHds`` (N,)."""

    dHdx: np.ndarray
    dHds: np.ndarray


@dataclass(frozen=True)
class DrivingForces:
    """Modulated rates with their raw brackets and entropy production fields.

    ``R0[i] = gamma0[i] * b0[i]``, ``R1[i] = gamma1[i] * b1[i]``,
    ``rs = gamma_s * bs``; ``sigma0[i] = R0[i] * b0[i]`` and analogously for
    ``sigma1`` and ``sigma_s``, so every sigma field is nonnegative whenever
    the modulation coefficients are.
    """

    R0: np.ndarray
    R1: np.ndarray
    rs: np.ndarray
    sigma0: np.ndarray
    sigma1: np.ndarray
    sigma_s: np.ndarray
    b0: np.ndarray
    b1: np.ndarray
    bs: np.ndarray


def co_energy(state: FieldState, tc: ThermoClosure) -> CoEnergy:
    """Evaluate the closure's partial derivatives at every node.

    Raises :class:`InadmissibleState` if the temperature field is not
    strictly positive everywhere.
    """
    dHdx = np.asarray(tc.dh_dx(state.x, state.s), dtype=float).reshape(tc.n, state.N)
    dHds = np.asarray(tc.dh_ds(state.x, state.s), dtype=float).reshape(state.N)
    bad = np.where(~(dHds > 0.0))[0]
    if len(bad):
        raise InadmissibleState(
            f"temperature must be positive; got {dHds[bad[0]]} at node {bad[0]}",
            where=("dh_ds", int(bad[0])),
        )
    return CoEnergy(dHdx, dHds)


def bracket_zero(ce: CoEnergy, g_col: np.ndarray) -> np.ndarray:
    """Zero-order bracket field: minus the projection of dHdx on ``g_col``."""
    g = np.asarray(g_col, dtype=float).reshape(-1)
    if g.shape[0] != ce.dHdx.shape[0]:
        raise DimensionMismatch(f"g_col has length {g.shape[0]}, expected {ce.dHdx.shape[0]}")
    return -(g @ ce.dHdx) if g.shape[0] else np.zeros(ce.dHds.shape[0])


def bracket_one(ce: CoEnergy, g_col: np.ndarray, d_dz, convention: str = "adjoint") -> np.ndarray:
    """First-order bracket field: projection of ``d/dz(dHdx)`` on ``g_col``."""
    g = np.asarray(g_col, dtype=float).reshape(-1)
    if g.shape[0] != ce.dHdx.shape[0]:
        raise DimensionMismatch(f"g_col has length {g.shape[0]}, expected {ce.dHdx.shape[0]}")
    if not g.shape[0]:
        return np.zeros(ce.dHds.shape[0])
    return convention_sign(convention) * (g @ d_dz(ce.dHdx))


def bracket_s(ce: CoEnergy, d_dz) -> np.ndarray:
    """Entropy transport bracket: the temperature gradient field."""
    return d_dz(ce.dHds)


def eval_gammas(state: FieldState, tc: ThermoClosure, ce: CoEnergy):
    """Evaluate all modulation coefficient fields at the current state."""
    z = state.grid.nodes
    g0 = np.array([fn(state.x, state.s, z, ce.dHdx, ce.dHds) for fn in tc.gamma0], dtype=float).reshape(
        tc.m, state.N
    )
    g1 = np.array([fn(state.x, state.s, z, ce.dHdx, ce.dHds) for fn in tc.gamma1], dtype=float).reshape(
        tc.m, state.N
    )
    gs = np.asarray(tc.gamma_s(state.x, state.s, z, ce.dHdx, ce.dHds), dtype=float)
    gs = np.broadcast_to(gs, (state.N,)).astype(float)
    return g0, g1, gs


def driving_forces(
    state: FieldState,
    tc: ThermoClosure,
    sm: StructureMatrices,
    d_dz,
    convention: str = "adjoint",
) -> DrivingForces:
    """Modulated rates and entropy production densities at every node."""
    ce = co_energy(state, tc)
    gam0, gam1, gams = eval_gammas(state, tc, ce)
    N = state.N

    b0 = np.empty((sm.m, N))
    b1 = np.empty((sm.m, N))
    for i in range(sm.m):
        b0[i] = bracket_zero(ce, sm.G0[:, i])
        b1[i] = bracket_one(ce, sm.G1[:, i], d_dz, convention)
    bs = bracket_s(ce, d_dz)

    R0 = gam0 * b0
    R1 = gam1 * b1
    rs = gams * bs
    return DrivingForces(
        R0=R0,
        R1=R1,
        rs=rs,
        sigma0=R0 * b0,
        sigma1=R1 * b1,
        sigma_s=rs * bs,
        b0=b0,
        b1=b1,
        bs=bs,
    )
