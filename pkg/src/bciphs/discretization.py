"""Spatial discretization: difference operator, quadrature, full right-hand side.

The grid is collocated and uniform.  The first-derivative stencil is
second-order centered at interior nodes with first-order one-sided rows at
the two endpoints.  That closure, together with trapezoid quadrature,
satisfies an exact summation-by-parts identity

    sum_k q_k (u D v + v D u)_k = u[N-1] v[N-1] - u[0] v[0]

so the discrete energy rate of a simulation reproduces the boundary power
exactly (to rounding), not just to stencil order.  The one-sided endpoint
rows are first-order accurate; they are exact on constants and linear
profiles, which is what the operator contract requires at the endpoints.

Boundary conditions are imposed by overwriting the transported flux entries
at the endpoint nodes before taking the flux divergence; which flux entry a
port input controls is described by a :class:`PortBinding`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._backend import assemble_rates, diff_first, forces_and_fluxes
from .brackets import CoEnergy, co_energy, convention_sign, eval_gammas
from .errors import DimensionMismatch, TooLarge
from .structure import FieldState, Grid, StructureMatrices, ThermoClosure

_DENSE_N_CAP = 64


@dataclass(frozen=True)
class DiffOperator:
    """First spatial derivative on a uniform grid; callable on (..., N) arrays."""

    grid: Grid

    @property
    def N(self) -> int:
        return self.grid.N

    @property
    def dz(self) -> float:
        return self.grid.dz

    def __call__(self, f: np.ndarray, out: np.ndarray | None = None) -> np.ndarray:
        f = np.asarray(f, dtype=float)
        if f.shape[-1] != self.N:
            raise DimensionMismatch(f"field has {f.shape[-1]} nodes, grid has {self.N}")
        return diff_first(f, self.dz, out)

    def matrix(self) -> np.ndarray:
        """Dense (N, N) representation of the stencil."""
        N, dz = self.N, self.dz
        D = np.zeros((N, N))
        for k in range(1, N - 1):
            D[k, k - 1] = -0.5 / dz
            D[k, k + 1] = 0.5 / dz
        D[0, 0], D[0, 1] = -1.0 / dz, 1.0 / dz
        D[-1, -2], D[-1, -1] = -1.0 / dz, 1.0 / dz
        return D


def quadrature_weights(grid: Grid) -> np.ndarray:
    """Trapezoid weights: dz * [1/2, 1, ..., 1, 1/2]."""
    q = np.full(grid.N, grid.dz)
    q[0] = q[-1] = 0.5 * grid.dz
    return q


def integrate(f: np.ndarray, grid: Grid) -> float:
    """Trapezoid integral of a nodal field over the domain."""
    f = np.asarray(f, dtype=float)
    if f.shape[-1] != grid.N:
        raise DimensionMismatch(f"field has {f.shape[-1]} nodes, grid has {grid.N}")
    return float(f @ quadrature_weights(grid))


@dataclass(frozen=True)
class PortBinding:
    """Ties one boundary-port input to one transported flux entry at one end.

    ``field`` is ``"x"`` (conserved-field flux row ``index``) or ``"s"`` (the
    entropy-carried energy flux).  ``end`` is ``"a"`` or ``"b"``.  The port
    input value equals ``coeff`` times the flux entry, so enforcement writes
    ``flux := value / coeff`` at that node.
    """

    field: str
    index: int
    end: str
    coeff: float

    def __post_init__(self):
        if self.field not in ("x", "s"):
            raise ValueError(f"field must be 'x' or 's', got {self.field!r}")
        if self.end not in ("a", "b"):
            raise ValueError(f"end must be 'a' or 'b', got {self.end!r}")
        if self.coeff == 0.0:
            raise ValueError("coeff must be nonzero")


def enforce_boundary(Fx: np.ndarray, w: np.ndarray, bindings: Sequence[PortBinding], values: np.ndarray):
    """Overwrite boundary flux entries in place so bound ports hit ``values``."""
    values = np.asarray(values, dtype=float).reshape(-1)
    if len(values) != len(bindings):
        raise DimensionMismatch(f"{len(bindings)} port bindings but {len(values)} input values")
    for binding, val in zip(bindings, values):
        node = 0 if binding.end == "a" else -1
        if binding.field == "x":
            Fx[binding.index, node] = val / binding.coeff
        else:
            w[node] = val / binding.coeff


@dataclass(frozen=True)
class RhsResult:
    """Full right-hand side evaluation with its audit by-products.

    ``Fx`` and ``w`` are the transported fluxes actually differenced (after
    any boundary enforcement); the sigma fields are computed from the state
    alone and are nonnegative for nonnegative modulation coefficients.
    """

    dxdt: np.ndarray
    dsdt: np.ndarray
    ce: CoEnergy
    b0: np.ndarray
    R0: np.ndarray
    b1: np.ndarray
    d1: np.ndarray
    R1: np.ndarray
    bs: np.ndarray
    rs: np.ndarray
    Fx: np.ndarray
    w: np.ndarray
    sigma0: np.ndarray
    sigma1: np.ndarray
    sigma_s: np.ndarray

    @property
    def sigma_total(self) -> np.ndarray:
        """Nodewise total entropy production density."""
        out = self.sigma_s.copy()
        if self.sigma0.shape[0]:
            out += self.sigma0.sum(axis=0) + self.sigma1.sum(axis=0)
        return out


def apply_rhs(
    state: FieldState,
    sm: StructureMatrices,
    tc: ThermoClosure,
    op: DiffOperator | None = None,
    *,
    convention: str = "adjoint",
    bindings: Sequence[PortBinding] = (),
    boundary_values: np.ndarray | None = None,
) -> RhsResult:
    """Evaluate the semidiscrete right-hand side at ``state``.

    Without ``boundary_values`` the domain is closed: the transported fluxes
    take their interior (state-determined) values at the endpoints too.  With
    them, the bound flux entries are overwritten before the divergence, which
    is how boundary inputs act on the discrete system.
    """
    op = DiffOperator(state.grid) if op is None else op
    sign1 = convention_sign(convention)
    ce = co_energy(state, tc)
    gam0, gam1, gams = eval_gammas(state, tc, ce)

    b0, R0, d1, b1, R1, bs, rs, Fx, w = forces_and_fluxes(
        ce.dHdx, ce.dHds, gam0, gam1, gams, sm.P0, sm.P1, sm.G0, sm.G1, sm.gs, op.dz, sign1
    )
    if boundary_values is not None:
        enforce_boundary(Fx, w, bindings, boundary_values)
    dxdt, dsdt = assemble_rates(ce.dHdx, ce.dHds, R0, b0, R1, d1, rs, bs, Fx, w, sm.P0, sm.G0, sm.gs, op.dz)

    return RhsResult(
        dxdt=dxdt,
        dsdt=dsdt,
        ce=ce,
        b0=b0,
        R0=R0,
        b1=b1,
        d1=d1,
        R1=R1,
        bs=bs,
        rs=rs,
        Fx=Fx,
        w=w,
        sigma0=R0 * b0,
        sigma1=R1 * b1,
        sigma_s=rs * bs,
    )


def dense_operator(
    state: FieldState,
    sm: StructureMatrices,
    tc: ThermoClosure,
    *,
    convention: str = "adjoint",
) -> np.ndarray:
    """Frozen-coefficient discrete operator as an explicit matrix.

    The right-hand side is linear in the stacked co-energy node vector
    ``[dHdx rows; dHds]`` once the modulated rates are frozen at ``state``;
    this assembles that linear map, so its product with the state's own
    co-energy vector reproduces :func:`apply_rhs` (closed domain) to
    rounding.  Only intended for small grids; raises :class:`TooLarge`
    beyond 64 nodes.
    """
    N = state.N
    if N > _DENSE_N_CAP:
        raise TooLarge(f"dense_operator is capped at N <= {_DENSE_N_CAP}, got N = {N}")
    n, m = sm.n, sm.m
    op = DiffOperator(state.grid)
    D = op.matrix()
    sign1 = convention_sign(convention)

    ce = co_energy(state, tc)
    gam0, gam1, gams = eval_gammas(state, tc, ce)
    Du = np.array([op(ce.dHdx[i]) for i in range(n)]).reshape(n, N)
    b0 = -(sm.G0.T @ ce.dHdx) if m else np.empty((0, N))
    b1 = sign1 * (sm.G1.T @ Du) if m else np.empty((0, N))
    R0 = gam0 * b0
    R1 = gam1 * b1
    rs = gams * op(ce.dHds)

    dim = (n + 1) * N

    def sl(i):
        return slice(i * N, (i + 1) * N)

    L = np.zeros((dim, dim))
    s_row = sl(n)

    for a in range(n):
        for c in range(n):
            if sm.P0[a, c] != 0.0:
                L[sl(a), sl(c)] += sm.P0[a, c] * np.eye(N)
            if sm.P1[a, c] != 0.0:
                L[sl(a), sl(c)] += sm.P1[a, c] * D
        for i in range(m):
            if sm.G0[a, i] != 0.0:
                L[sl(a), s_row] += sm.G0[a, i] * np.diag(R0[i])
            if sm.G1[a, i] != 0.0:
                L[sl(a), s_row] += sm.G1[a, i] * (D @ np.diag(R1[i]))
    for c in range(n):
        for i in range(m):
            if sm.G0[c, i] != 0.0:
                L[s_row, sl(c)] += -sm.G0[c, i] * np.diag(R0[i])
            if sm.G1[c, i] != 0.0:
                L[s_row, sl(c)] += sm.G1[c, i] * (np.diag(R1[i]) @ D)
    L[s_row, s_row] += sm.gs * (np.diag(rs) @ D + D @ np.diag(rs))
    return L


def stack_co_energy(ce: CoEnergy) -> np.ndarray:
    """Stack co-energy fields into the vector ordering of dense_operator."""
    return np.concatenate([ce.dHdx.reshape(-1), ce.dHds])
