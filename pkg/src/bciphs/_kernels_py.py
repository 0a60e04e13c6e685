"""Pure-numpy inner kernels for the semidiscrete right-hand side.

These three functions are the hot path of every simulation step; a compiled
variant with the same signatures may be swapped in by :mod:`bciphs._backend`.
Everything operates on plain float64 arrays, fields stored one row per
component with nodes along the last axis.

``sign1`` selects the convention for the first-order driving force of the
irreversible processes: ``+1`` pairs the force with the adjoint of the
coupling map (the choice that makes the entropy source a sum of squares),
``-1`` pairs it with the plain transpose.
"""

from __future__ import annotations

import numpy as np


def diff_first(f: np.ndarray, dz: float, out: np.ndarray | None = None) -> np.ndarray:
    """First spatial derivative along the last axis.

    Second-order centered stencil inside, first-order one-sided rows at both
    endpoints.  This pairing satisfies a summation-by-parts identity with the
    trapezoid quadrature weights, which the balance audits rely on.  Exact on
    constant and linear profiles at every node.
    """
    f = np.asarray(f, dtype=float)
    if out is None:
        out = np.empty_like(f)
    out[..., 1:-1] = (f[..., 2:] - f[..., :-2]) / (2.0 * dz)
    out[..., 0] = (f[..., 1] - f[..., 0]) / dz
    out[..., -1] = (f[..., -1] - f[..., -2]) / dz
    return out


def forces_and_fluxes(dHdx, dHds, gam0, gam1, gams, P0, P1, G0, G1, gs, dz, sign1):
    """Evaluate driving forces, modulated rates, and transported fluxes.

    Returns ``(b0, R0, d1, b1, R1, bs, rs, Fx, w)``:

    - ``b0[i] = -(G0 column i) . dHdx`` zero-order driving force, ``(m, N)``
    - ``R0[i] = gam0[i] * b0[i]`` modulated zero-order rate
    - ``d1[i] = (G1 column i) . d/dz(dHdx)`` transpose-convention force
    - ``b1[i] = sign1 * d1[i]`` driving force in the selected convention
    - ``R1[i] = gam1[i] * b1[i]`` modulated first-order rate
    - ``bs = d/dz(dHds)`` temperature gradient, ``(N,)``
    - ``rs = gams * bs`` modulated entropy transport rate
    - ``Fx = P1 . dHdx + G1 . (R1 * dHds)`` conserved-field flux, ``(n, N)``
    - ``w = gs * rs * dHds`` entropy-carried energy flux, ``(N,)``
    """
    n, N = dHdx.shape
    m = G0.shape[1]

    Du = diff_first(dHdx, dz) if n else np.empty((0, N))
    b0 = -(G0.T @ dHdx) if m else np.empty((0, N))
    d1 = (G1.T @ Du) if m else np.empty((0, N))
    b1 = sign1 * d1
    R0 = gam0 * b0
    R1 = gam1 * b1
    bs = diff_first(dHds, dz)
    rs = gams * bs
    Fx = P1 @ dHdx + (G1 @ (R1 * dHds) if m else 0.0) if n else np.empty((0, N))
    w = gs * rs * dHds
    return b0, R0, d1, b1, R1, bs, rs, Fx, w


def assemble_rates(dHdx, dHds, R0, b0, R1, d1, rs, bs, Fx, w, P0, G0, gs, dz):
    """Combine forces and fluxes into time derivatives of the fields.

    ``dxdt = P0 . dHdx + G0 . (R0 * dHds) + d/dz(Fx)``
    ``dsdt = sum_i R0[i] b0[i] + sum_i R1[i] d1[i] + gs * rs * bs + d/dz(w)``
    """
    n, N = dHdx.shape
    m = R0.shape[0]

    if n:
        dxdt = P0 @ dHdx + diff_first(Fx, dz)
        if m:
            dxdt += G0 @ (R0 * dHds)
    else:
        dxdt = np.empty((0, N))
    dsdt = gs * rs * bs + diff_first(w, dz)
    if m:
        dsdt += np.einsum("ij,ij->j", R0, b0) + np.einsum("ij,ij->j", R1, d1)
    return dxdt, dsdt
