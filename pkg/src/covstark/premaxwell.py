"""Classical five-potential electrodynamics: field strengths, the Lorentz
force with the fifth-field term, trajectory integration, three-vector
decomposition, event currents, and the concatenation integrals that recover
Maxwell-level quantities."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, ResolutionError, StepOverflowError, TailError
from .lorentz import METRIC, minkowski_dot

_FD_STEP = 1e-5


@dataclass
class FivePotential:
    """Four-potential plus scalar fifth potential, both parameter-dependent.

    a(x, tau) returns the four contravariant components, a5(x, tau) a scalar.
    Presets may attach exact field closures (f_exact, f5_exact) which
    field_strength uses instead of finite differences.
    """

    a: callable
    a5: callable
    f_exact: callable = None
    f5_exact: callable = None


@dataclass
class FieldStrength5:
    """Antisymmetric four-tensor block and the fifth-field four-vector.

    f is the both-indices-up tensor; f5 holds d^mu a5 - d_tau a^mu, the
    combination entering the force law.
    """

    f: np.ndarray
    f5: np.ndarray

    def __post_init__(self):
        self.f = np.asarray(self.f, dtype=float)
        self.f5 = np.asarray(self.f5, dtype=float)
        if np.max(np.abs(self.f + self.f.T)) > 1e-10 * max(1.0, np.abs(self.f).max()):
            raise DomainError("field tensor must be antisymmetric")


@dataclass
class TrajectoryState:
    """Phase-space sample of an event trajectory; xdot^2 is free (off-shell)."""

    tau: float
    x: np.ndarray
    xdot: np.ndarray
    M: float

    def __post_init__(self):
        self.x = np.asarray(self.x, dtype=float)
        self.xdot = np.asarray(self.xdot, dtype=float)
        if self.M <= 0:
            raise DomainError("M must be positive")

    @property
    def xdot_sq(self) -> float:
        return minkowski_dot(self.xdot, self.xdot)


def constant_field_potential(f_up) -> FivePotential:
    """Linear potential representing a constant antisymmetric field tensor."""
    f_up = np.asarray(f_up, dtype=float)
    if np.max(np.abs(f_up + f_up.T)) > 1e-12 * max(1.0, np.abs(f_up).max()):
        raise DomainError("field tensor must be antisymmetric")
    mixed = f_up @ METRIC

    return FivePotential(
        a=lambda x, tau: -0.5 * (mixed @ np.asarray(x, dtype=float)),
        a5=lambda x, tau: 0.0,
        f_exact=lambda x, tau: f_up.copy(),
        f5_exact=lambda x, tau: np.zeros(4),
    )


def constant_fifth_potential(eps_vec) -> FivePotential:
    """Scalar potential linear in position: constant fifth-field vector."""
    eps_vec = np.asarray(eps_vec, dtype=float)

    return FivePotential(
        a=lambda x, tau: np.zeros(4),
        a5=lambda x, tau: minkowski_dot(eps_vec, x),
        f_exact=lambda x, tau: np.zeros((4, 4)),
        f5_exact=lambda x, tau: eps_vec.copy(),
    )


def combined_constant_potential(f_up, eps_vec) -> FivePotential:
    """Constant tensor field together with a constant fifth field."""
    base = constant_field_potential(f_up)
    fifth = constant_fifth_potential(eps_vec)
    return FivePotential(
        a=lambda x, tau: base.a(x, tau),
        a5=lambda x, tau: fifth.a5(x, tau),
        f_exact=lambda x, tau: base.f_exact(x, tau),
        f5_exact=lambda x, tau: fifth.f5_exact(x, tau),
    )


def gaussian_pulse_potential(c_vec, center: float = 0.0, width: float = 1.0) -> FivePotential:
    """Separable pulse a^mu = c^mu exp(-(tau-center)^2 / 2 width^2), a5 = 0."""
    c_vec = np.asarray(c_vec, dtype=float)

    def envelope(tau):
        return math.exp(-0.5 * ((tau - center) / width) ** 2)

    return FivePotential(
        a=lambda x, tau: c_vec * envelope(tau),
        a5=lambda x, tau: 0.0,
        f_exact=lambda x, tau: np.zeros((4, 4)),
        f5_exact=lambda x, tau: -c_vec * envelope(tau) * (-(tau - center) / width**2),
    )


def field_strength(p: FivePotential, x, tau: float, h: float = _FD_STEP) -> FieldStrength5:
    """Field strengths at (x, tau), exact for presets, else central differences."""
    x = np.asarray(x, dtype=float)
    if p.f_exact is not None and p.f5_exact is not None:
        return FieldStrength5(p.f_exact(x, tau), p.f5_exact(x, tau))
    jac = np.zeros((4, 4))  # jac[rho, nu] = d a^nu / d x^rho
    grad5 = np.zeros(4)
    for rho in range(4):
        dx = np.zeros(4)
        dx[rho] = h
        jac[rho] = (np.asarray(p.a(x + dx, tau)) - np.asarray(p.a(x - dx, tau))) / (2 * h)
        grad5[rho] = (p.a5(x + dx, tau) - p.a5(x - dx, tau)) / (2 * h)
    da_dtau = (np.asarray(p.a(x, tau + h)) - np.asarray(p.a(x, tau - h))) / (2 * h)
    raised = METRIC @ jac  # d^mu a^nu
    f_up = raised - raised.T
    f5 = METRIC @ grad5 - da_dtau
    return FieldStrength5(f_up, f5)


def lorentz_force(fs: FieldStrength5, xdot) -> np.ndarray:
    """Force per unit M: f^mu_nu xdot^nu + f^mu_5."""
    mixed = fs.f @ METRIC
    return mixed @ np.asarray(xdot, dtype=float) + fs.f5


def integrate_trajectory(
    p: FivePotential, s0: TrajectoryState, tau_end: float, dt: float, stride: int = 1
) -> list:
    """Fixed-step classical fourth-order integration of the force law.

    Returns the sampled states every `stride` steps (initial state included).
    Raises StepOverflowError when the state stops being finite.
    """
    if dt <= 0:
        raise DomainError("dt must be positive")
    nsteps = int(round((tau_end - s0.tau) / dt))
    big_m = s0.M

    def rhs(tau, x, xdot):
        fs = field_strength(p, x, tau)
        return xdot, lorentz_force(fs, xdot) / big_m

    out = [TrajectoryState(s0.tau, s0.x.copy(), s0.xdot.copy(), big_m)]
    x, v, tau = s0.x.copy(), s0.xdot.copy(), s0.tau
    for step in range(1, nsteps + 1):
        k1x, k1v = rhs(tau, x, v)
        k2x, k2v = rhs(tau + dt / 2, x + dt / 2 * k1x, v + dt / 2 * k1v)
        k3x, k3v = rhs(tau + dt / 2, x + dt / 2 * k2x, v + dt / 2 * k2v)
        k4x, k4v = rhs(tau + dt, x + dt * k3x, v + dt * k3v)
        x = x + dt / 6 * (k1x + 2 * k2x + 2 * k3x + k4x)
        v = v + dt / 6 * (k1v + 2 * k2v + 2 * k3v + k4v)
        tau = s0.tau + step * dt
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(v))):
            raise StepOverflowError(f"non-finite state at tau = {tau}")
        if step % stride == 0 or step == nsteps:
            out.append(TrajectoryState(tau, x.copy(), v.copy(), big_m))
    return out


def three_vector_decompose(fs: FieldStrength5) -> tuple:
    """Split the strengths into (e, h, eps3, eps0) three-vector pieces."""
    f = fs.f
    e_vec = np.array([f[0, 1], f[0, 2], f[0, 3]])
    h_vec = np.array([f[2, 3], f[3, 1], f[1, 2]])
    return e_vec, h_vec, fs.f5[1:4].copy(), float(fs.f5[0])


def recompose_field(e_vec, h_vec, eps3, eps0) -> FieldStrength5:
    """Inverse of three_vector_decompose."""
    e_vec = np.asarray(e_vec, dtype=float)
    h_vec = np.asarray(h_vec, dtype=float)
    f = np.zeros((4, 4))
    f[0, 1:] = e_vec
    f[1:, 0] = -e_vec
    f[2, 3], f[3, 2] = h_vec[0], -h_vec[0]
    f[3, 1], f[1, 3] = h_vec[1], -h_vec[1]
    f[1, 2], f[2, 1] = h_vec[2], -h_vec[2]
    f5 = np.concatenate([[eps0], np.asarray(eps3, dtype=float)])
    return FieldStrength5(f, f5)


def concatenate(p: FivePotential, x, tau_span=(-30.0, 30.0), order: int = 400) -> tuple:
    """Parameter integrals of the potential and tensor field at a point.

    Returns (A, F): the Maxwell-level four-potential and field tensor.
    Raises TailError when the potential has not decayed at the window ends
    (|a| at the ends above 1e-8 of its peak over the window).
    """
    x = np.asarray(x, dtype=float)
    t0, t1 = tau_span
    nodes, weights = np.polynomial.legendre.leggauss(order)
    taus = 0.5 * (t1 - t0) * nodes + 0.5 * (t0 + t1)
    weights = 0.5 * (t1 - t0) * weights
    a_vals = np.array([p.a(x, t) for t in taus])
    peak = float(np.max(np.abs(a_vals))) if a_vals.size else 0.0
    edge = max(
        float(np.max(np.abs(np.asarray(p.a(x, t0))))),
        float(np.max(np.abs(np.asarray(p.a(x, t1))))),
    )
    if peak == 0.0 or edge > 1e-8 * peak:
        raise TailError("four-potential does not decay over the concatenation window")
    a_cat = weights @ a_vals
    f_cat = np.zeros((4, 4))
    for t, w in zip(taus, weights):
        f_cat += w * field_strength(p, x, t).f
    return a_cat, f_cat


@dataclass
class EventCurrent:
    """Smeared event-current samples on a parameter-time stack of grids."""

    taus: np.ndarray
    axes: list
    j5: np.ndarray          # shape (T, n0, n1, n2, n3)
    j: np.ndarray           # shape (T, 4, n0, n1, n2, n3)
    smearing: float


def event_current(traj, smearing: float, axes) -> EventCurrent:
    """Gaussian-smeared event density and current along a trajectory.

    axes is a sequence of four 1-D grids for the spacetime coordinates.
    Raises ResolutionError when any grid spacing exceeds smearing / 2.
    """
    if smearing <= 0:
        raise DomainError("smearing must be positive")
    axes = [np.asarray(ax, dtype=float) for ax in axes]
    for ax in axes:
        if len(ax) > 1 and np.max(np.diff(ax)) > smearing / 2 + 1e-15:
            raise ResolutionError("grid spacing exceeds half the smearing width")
    mesh = np.meshgrid(*axes, indexing="ij")
    taus = np.array([s.tau for s in traj])
    shape = tuple(len(ax) for ax in axes)
    j5 = np.zeros((len(traj),) + shape)
    j = np.zeros((len(traj), 4) + shape)
    norm = (2.0 * math.pi * smearing**2) ** (-2.0)
    for it, s in enumerate(traj):
        d2 = sum((mesh[mu] - s.x[mu]) ** 2 for mu in range(4))
        bump = norm * np.exp(-0.5 * d2 / smearing**2)
        j5[it] = bump
        for mu in range(4):
            j[it, mu] = s.xdot[mu] * bump
    return EventCurrent(taus, axes, j5, j, smearing)


def continuity_residual(ec: EventCurrent) -> float:
    """Max |d_mu j^mu + d_tau j5| over interior grid points (central differences)."""
    interior = [slice(1, -1)] * 4
    res = None
    for it in range(1, len(ec.taus) - 1):
        dtau = ec.taus[it + 1] - ec.taus[it - 1]
        total = (ec.j5[it + 1] - ec.j5[it - 1]) / dtau
        total = total[tuple(interior)]
        for mu in range(4):
            h = ec.axes[mu][1] - ec.axes[mu][0]
            lo = [slice(1, -1)] * 4
            hi = [slice(1, -1)] * 4
            lo[mu] = slice(0, -2)
            hi[mu] = slice(2, None)
            total = total + (ec.j[it, mu][tuple(hi)] - ec.j[it, mu][tuple(lo)]) / (2.0 * h)
        worst = float(np.max(np.abs(total)))
        res = worst if res is None else max(res, worst)
    if res is None:
        raise DomainError("need at least three trajectory samples")
    return res


def trajectory_csv_rows(traj):
    """Yield CSV rows (tau, x0..x3, xdot0..xdot3, xdot_sq) for a trajectory."""
    yield ["tau", "x0", "x1", "x2", "x3", "xdot0", "xdot1", "xdot2", "xdot3", "xdot_sq"]
    for s in traj:
        row = [s.tau, *s.x.tolist(), *s.xdot.tolist(), s.xdot_sq]
        yield [f"{v:.12e}" for v in row]


def write_trajectory_csv(traj, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        for row in trajectory_csv_rows(traj):
            writer.writerow(row)
