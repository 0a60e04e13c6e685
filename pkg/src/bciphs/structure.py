"""Declarative description of a model: grid, structure matrices, closure, state.

A model on a 1D interval couples ``n`` conserved fields with one entropy
density.  Its constant structure is carried by a skew-symmetric zero-order
block, a symmetric first-order block, two ``n x m`` coupling maps for the
irreversible processes, and a scalar entropy transport coefficient.  The
thermodynamic closure supplies the energy density, its partial derivatives
(co-energy: driving potentials and temperature) and the nonnegative
modulation coefficients of the irreversible terms.

Nothing here integrates or differentiates anything; these are plain data
containers plus structural validators that *report* problems instead of
raising, so a command-line ``validate`` pass can show everything at once.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import DimensionMismatch, InadmissibleState


def _readonly(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=float, order="C", copy=True)
    out.flags.writeable = False
    return out


@dataclass(frozen=True)
class Grid:
    """Uniform collocated grid on ``[a, b]`` with nodes at both endpoints."""

    a: float
    b: float
    N: int

    def __post_init__(self):
        if not self.a < self.b:
            raise ValueError(f"grid requires a < b, got a={self.a}, b={self.b}")
        if self.N < 3:
            raise ValueError(f"grid requires N >= 3, got N={self.N}")

    @property
    def dz(self) -> float:
        return (self.b - self.a) / (self.N - 1)

    @property
    def nodes(self) -> np.ndarray:
        return np.linspace(self.a, self.b, self.N)


@dataclass(frozen=True)
class StructureMatrices:
    """Constant interconnection data of one model.

    ``P0`` must be skew-symmetric and ``P1`` symmetric (checked by
    :func:`validate_structure`, not by the constructor, which only enforces
    shapes).  ``G0`` and ``G1`` hold one column per irreversible process;
    ``gs`` scales the entropy transport term.  ``n = 0`` (pure entropy
    dynamics) and ``m = 0`` (no irreversible processes) are both legal.
    """

    n: int
    m: int
    P0: np.ndarray
    P1: np.ndarray
    G0: np.ndarray
    G1: np.ndarray
    gs: float

    def __post_init__(self):
        if self.n < 0 or self.m < 0:
            raise DimensionMismatch(f"n and m must be nonnegative, got n={self.n}, m={self.m}")
        object.__setattr__(self, "P0", _readonly(np.asarray(self.P0, dtype=float).reshape(self.n, self.n)))
        object.__setattr__(self, "P1", _readonly(np.asarray(self.P1, dtype=float).reshape(self.n, self.n)))
        object.__setattr__(self, "G0", _readonly(np.asarray(self.G0, dtype=float).reshape(self.n, self.m)))
        object.__setattr__(self, "G1", _readonly(np.asarray(self.G1, dtype=float).reshape(self.n, self.m)))
        object.__setattr__(self, "gs", float(self.gs))


@dataclass(frozen=True)
class AdmissibleRegion:
    """Box bounds on the state, plus a finite box to draw samples from.

    Bounds are open intervals per coordinate: ``x_bounds`` has one
    ``(lo, hi)`` pair per conserved field, ``s_bounds`` one pair for the
    entropy density.  ``sample_box`` must be finite and is used by the
    closure validator and by randomized tests.
    """

    x_bounds: tuple
    s_bounds: tuple
    sample_x: tuple
    sample_s: tuple

    def contains(self, x: np.ndarray, s: np.ndarray) -> bool:
        for i, (lo, hi) in enumerate(self.x_bounds):
            if x.shape[0] and (np.any(x[i] <= lo) or np.any(x[i] >= hi)):
                return False
        lo, hi = self.s_bounds
        return bool(np.all(s > lo) and np.all(s < hi))

    def first_violation(self, x: np.ndarray, s: np.ndarray):
        """Return ``(coordinate, node, value)`` of one offending entry, or None."""
        for i, (lo, hi) in enumerate(self.x_bounds):
            bad = np.where((x[i] <= lo) | (x[i] >= hi))[0] if x.shape[0] else []
            if len(bad):
                return (f"x[{i}]", int(bad[0]), float(x[i][bad[0]]))
        lo, hi = self.s_bounds
        bad = np.where((s <= lo) | (s >= hi))[0]
        if len(bad):
            return ("s", int(bad[0]), float(s[bad[0]]))
        return None

    def draw(self, rng: np.random.Generator, k: int) -> tuple[np.ndarray, np.ndarray]:
        """Draw ``k`` pointwise samples uniformly from the sample box."""
        xs = np.empty((len(self.sample_x), k))
        for i, (lo, hi) in enumerate(self.sample_x):
            xs[i] = rng.uniform(lo, hi, size=k)
        lo, hi = self.sample_s
        return xs, rng.uniform(lo, hi, size=k)


@dataclass(frozen=True)
class ThermoClosure:
    """Pointwise thermodynamic closure of a model.

    All maps are vectorized over nodes: ``x`` has shape ``(n, k)`` and ``s``
    shape ``(k,)``.  ``h`` returns the energy density ``(k,)``; ``dh_dx`` its
    gradient ``(n, k)``; ``dh_ds`` the temperature ``(k,)``.  Modulation
    coefficients ``gamma0[i]``, ``gamma1[i]`` and ``gamma_s`` are maps
    ``(x, s, z, dh_dx, dh_ds) -> (k,)`` and must be nonnegative on the
    admissible region.
    """

    n: int
    m: int
    h: Callable
    dh_dx: Callable
    dh_ds: Callable
    gamma0: tuple
    gamma1: tuple
    gamma_s: Callable
    region: AdmissibleRegion
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.gamma0) != self.m or len(self.gamma1) != self.m:
            raise DimensionMismatch(
                f"need one gamma0/gamma1 entry per process: m={self.m}, "
                f"got {len(self.gamma0)} and {len(self.gamma1)}"
            )


@dataclass(frozen=True)
class FieldState:
    """Nodal values of the conserved fields and the entropy density."""

    grid: Grid
    x: np.ndarray
    s: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        if x.ndim == 1:
            x = x.reshape(1, -1) if x.size else x.reshape(0, self.grid.N)
        s = np.asarray(self.s, dtype=float)
        if x.ndim != 2 or x.shape[1] != self.grid.N:
            raise DimensionMismatch(f"x must have shape (n, {self.grid.N}), got {x.shape}")
        if s.shape != (self.grid.N,):
            raise DimensionMismatch(f"s must have shape ({self.grid.N},), got {s.shape}")
        object.__setattr__(self, "x", _readonly(x))
        object.__setattr__(self, "s", _readonly(s))

    @property
    def n(self) -> int:
        return self.x.shape[0]

    @property
    def N(self) -> int:
        return self.grid.N

    def replace(self, x=None, s=None) -> "FieldState":
        return FieldState(self.grid, self.x if x is None else x, self.s if s is None else s)


@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    where: tuple = ()


@dataclass
class ValidationReport:
    """Accumulated validator findings; empty means the check passed."""

    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, code: str, message: str, where: tuple = ()):
        self.violations.append(Violation(code, message, tuple(where)))

    def merge(self, other: "ValidationReport") -> "ValidationReport":
        self.violations.extend(other.violations)
        return self

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        return "\n".join(f"[{v.code}] {v.message}" for v in self.violations)


def validate_structure(sm: StructureMatrices) -> ValidationReport:
    """Check the algebraic requirements on the constant structure.

    Reports every violation (with offending entries) instead of stopping at
    the first one; construction itself never fails for algebraic reasons.
    """
    rep = ValidationReport()
    for name, M, shape in (
        ("P0", sm.P0, (sm.n, sm.n)),
        ("P1", sm.P1, (sm.n, sm.n)),
        ("G0", sm.G0, (sm.n, sm.m)),
        ("G1", sm.G1, (sm.n, sm.m)),
    ):
        if M.shape != shape:
            rep.add("shape", f"{name} has shape {M.shape}, expected {shape}", (name,))
        if M.size and not np.all(np.isfinite(M)):
            i, j = np.argwhere(~np.isfinite(M))[0]
            rep.add("finite", f"{name} has a non-finite entry at ({i},{j})", (name, int(i), int(j)))
    if not np.isfinite(sm.gs):
        rep.add("finite", "gs is not finite", ("gs",))

    skew = sm.P0 + sm.P0.T
    for i, j in np.argwhere(skew != 0.0):
        if i <= j:
            rep.add(
                "P0_skew",
                f"P0 not skew-symmetric at ({i},{j}): {sm.P0[i, j]} vs {sm.P0[j, i]}",
                ("P0", int(i), int(j)),
            )
    sym = sm.P1 - sm.P1.T
    for i, j in np.argwhere(sym != 0.0):
        if i < j:
            rep.add(
                "P1_sym",
                f"P1 not symmetric at ({i},{j}): {sm.P1[i, j]} vs {sm.P1[j, i]}",
                ("P1", int(i), int(j)),
            )
    return rep


def _fd_step(value: np.ndarray) -> np.ndarray:
    return 1e-6 * (1.0 + np.abs(value))


_FD_RTOL = 1e-6


def validate_closure(tc: ThermoClosure, samples=None, *, rng=None, k: int = 64) -> ValidationReport:
    """Check a closure on admissible sample points.

    ``samples`` may be a pair ``(x, s)`` of arrays with shapes ``(n, k)`` and
    ``(k,)``; when omitted, ``k`` points are drawn from the closure's sample
    box with ``rng`` (seeded by default, so the report is deterministic).

    Checks: temperature positivity, nonnegativity of every modulation
    coefficient, and consistency of the declared derivatives with central
    finite differences of ``h`` (relative tolerance 1e-6, step scaled by
    1e-6 * (1 + |coordinate|)).
    """
    rep = ValidationReport()
    if samples is None:
        rng = np.random.default_rng(0) if rng is None else rng
        x, s = tc.region.draw(rng, k)
    else:
        x, s = samples
        x = np.asarray(x, dtype=float).reshape(tc.n, -1)
        s = np.asarray(s, dtype=float).reshape(-1)
    npts = s.shape[0]
    z = np.linspace(0.0, 1.0, npts)

    hval = np.asarray(tc.h(x, s), dtype=float)
    dhdx = np.asarray(tc.dh_dx(x, s), dtype=float).reshape(tc.n, npts)
    dhds = np.asarray(tc.dh_ds(x, s), dtype=float).reshape(npts)

    if not np.all(np.isfinite(hval)):
        rep.add("finite", "h is non-finite at a sample point", ("h",))
    bad = np.where(dhds <= 0.0)[0]
    for j in bad[:5]:
        rep.add(
            "temperature",
            f"dh_ds must be positive on the admissible region; got {dhds[j]} at sample {j}",
            ("dh_ds", int(j)),
        )

    for name, fns in (("gamma0", tc.gamma0), ("gamma1", tc.gamma1)):
        for i, fn in enumerate(fns):
            g = np.asarray(fn(x, s, z, dhdx, dhds), dtype=float)
            bad = np.where(g < 0.0)[0]
            for j in bad[:5]:
                rep.add(
                    "gamma_sign",
                    f"{name}[{i}] must be nonnegative; got {g[j]} at sample {j}",
                    (name, i, int(j)),
                )
    g = np.asarray(tc.gamma_s(x, s, z, dhdx, dhds), dtype=float)
    bad = np.where(g < 0.0)[0]
    for j in bad[:5]:
        rep.add("gamma_sign", f"gamma_s must be nonnegative; got {g[j]} at sample {j}", ("gamma_s", int(j)))

    # Derivative consistency against central differences of h.
    for i in range(tc.n):
        step = _fd_step(x[i])
        xp = x.copy()
        xm = x.copy()
        xp[i] = x[i] + step
        xm[i] = x[i] - step
        fd = (np.asarray(tc.h(xp, s)) - np.asarray(tc.h(xm, s))) / (2.0 * step)
        err = np.abs(fd - dhdx[i]) / (1.0 + np.maximum(np.abs(fd), np.abs(dhdx[i])))
        bad = np.where(err > _FD_RTOL)[0]
        for j in bad[:5]:
            rep.add(
                "derivative",
                f"dh_dx[{i}] disagrees with finite differences of h at sample {j}: "
                f"{dhdx[i][j]} vs {fd[j]}",
                ("dh_dx", i, int(j)),
            )
    step = _fd_step(s)
    fd = (np.asarray(tc.h(x, s + step)) - np.asarray(tc.h(x, s - step))) / (2.0 * step)
    err = np.abs(fd - dhds) / (1.0 + np.maximum(np.abs(fd), np.abs(dhds)))
    bad = np.where(err > _FD_RTOL)[0]
    for j in bad[:5]:
        rep.add(
            "derivative",
            f"dh_ds disagrees with finite differences of h at sample {j}: {dhds[j]} vs {fd[j]}",
            ("dh_ds", int(j)),
        )
    return rep


def check_admissible(state: FieldState, tc: ThermoClosure, *, t: float | None = None):
    """Raise :class:`InadmissibleState` if the state leaves the closure's box

    or contains non-finite values.
    """
    if not (np.all(np.isfinite(state.x)) and np.all(np.isfinite(state.s))):
        raise InadmissibleState("state contains non-finite values", t=t)
    hit = tc.region.first_violation(state.x, state.s)
    if hit is not None:
        coord, node, value = hit
        raise InadmissibleState(
            f"state leaves the admissible region: {coord}={value} at node {node}",
            t=t,
            where=(coord, node),
        )


def sample_states(
    tc: ThermoClosure,
    grid: Grid,
    rng: np.random.Generator,
    *,
    smooth: bool = True,
) -> FieldState:
    """Draw one random admissible state on ``grid`` (smooth by default).

    Smooth states interpolate a coarse random profile drawn from the sample
    box with a cosine series, keeping values inside the box by construction
    (the box is convex and the interpolation is a convex-combination-free
    blend, so a margin is applied).
    """
    bounds = list(tc.region.sample_x) + [tc.region.sample_s]
    fields = []
    zs = np.linspace(0.0, 1.0, grid.N)
    for lo, hi in bounds:
        mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
        if smooth:
            c = rng.uniform(-1.0, 1.0, size=4)
            prof = c[0] + c[1] * np.cos(np.pi * zs) + c[2] * np.cos(2 * np.pi * zs) + c[3] * np.cos(3 * np.pi * zs)
            prof = prof / 4.0
        else:
            prof = rng.uniform(-1.0, 1.0, size=grid.N)
        fields.append(mid + 0.9 * half * prof)
    x = np.array(fields[:-1]).reshape(len(bounds) - 1, grid.N)
    return FieldState(grid, x, fields[-1])
