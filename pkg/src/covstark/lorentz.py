"""Minkowski metric, frame matrices, group generators and the restricted-region chart.

All 4x4 matrices act on columns of contravariant components with metric
diag(-1, 1, 1, 1).  A frame is labelled by (alpha, omega, gamma): a boost
along the 3-axis followed by rotations, whose matrix carries the standard
spacelike unit vector (0, 0, 0, 1) onto the frame vector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, FrameRecoveryError, OutOfRMSError, SingularFrameError

METRIC = np.diag([-1.0, 1.0, 1.0, 1.0])
STANDARD_FRAME_VECTOR = np.array([0.0, 0.0, 0.0, 1.0])

#: the six independent antisymmetric index pairs, in fixed order
GENERATOR_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))

_OMEGA_SINGULAR_TOL = 1e-8


def minkowski_dot(a, b) -> float:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return float(-a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3])


def minkowski_norm2(a) -> float:
    return minkowski_dot(a, a)


@dataclass(frozen=True)
class FrameParams:
    """Chart (alpha, omega, gamma) of a spacelike unit frame vector.

    alpha is a rapidity, omega lies in the open interval (-pi/2, pi/2),
    gamma is an angle taken mod 2*pi.
    """

    alpha: float
    omega: float
    gamma: float

    def __post_init__(self):
        for name in ("alpha", "omega", "gamma"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"frame parameter {name} must be finite")
        if abs(self.omega) >= math.pi / 2:
            raise DomainError("omega must lie in the open interval (-pi/2, pi/2)")


@dataclass(frozen=True)
class RMSPoint:
    """Coordinates (rho, theta, beta, phi) on the spacelike-supported region."""

    rho: float
    theta: float
    beta: float
    phi: float

    def __post_init__(self):
        if self.rho < 0:
            raise DomainError("rho must be non-negative")
        if not 0.0 <= self.theta <= math.pi:
            raise DomainError("theta must lie in [0, pi]")


def lorentz_generators() -> dict:
    """The six generator matrices with both indices raised.

    Entry (mu, nu) of the (sigma, lam) generator is
    g^{sigma mu} g^{lam nu} - g^{sigma nu} g^{lam mu}.
    """
    gens = {}
    g = METRIC
    for sig, lam in GENERATOR_PAIRS:
        m = np.outer(g[sig], g[lam]) - np.outer(g[lam], g[sig])
        gens[(sig, lam)] = m
    return gens


def generator_action(pair) -> np.ndarray:
    """Mixed-index generator with lowered pair labels, acting on vectors.

    (M_{ab})^mu_nu = delta^mu_a g_{b nu} - g_{a nu} delta^mu_b.
    """
    a, b = pair
    m = np.zeros((4, 4))
    m[a, :] += METRIC[b]
    m[b, :] -= METRIC[a]
    return m


def _exp_generator(pair) -> np.ndarray:
    # first-index-lowered form; its exponentials reproduce the closed-form
    # frame matrix (boost blocks come out with +sinh in both corners)
    sig, lam = pair
    return METRIC @ lorentz_generators()[(sig, lam)]


def coupling_matrix(f_up: np.ndarray) -> np.ndarray:
    """Expand an antisymmetric field tensor on the generator basis.

    Returns (1/2) F_{ab} M^{ab} summed over all ordered pairs, which equals
    the tensor itself in the both-indices-up representation.
    """
    f_up = np.asarray(f_up, dtype=float)
    f_low = METRIC @ f_up @ METRIC
    gens = lorentz_generators()
    out = np.zeros((4, 4))
    for (a, b), m in gens.items():
        out += f_low[a, b] * m  # both orders of the pair contribute equally
    return out


def _boost3(alpha: float) -> np.ndarray:
    c, s = math.cosh(alpha), math.sinh(alpha)
    m = np.eye(4)
    m[0, 0] = c
    m[0, 3] = s
    m[3, 0] = s
    m[3, 3] = c
    return m


def _rot31(omega: float) -> np.ndarray:
    c, s = math.cos(omega), math.sin(omega)
    m = np.eye(4)
    m[1, 1] = c
    m[1, 3] = -s
    m[3, 1] = s
    m[3, 3] = c
    return m


def _rot23(gamma: float) -> np.ndarray:
    c, s = math.cos(gamma), math.sin(gamma)
    m = np.eye(4)
    m[2, 2] = c
    m[2, 3] = s
    m[3, 2] = -s
    m[3, 3] = c
    return m


def frame_matrix(p: FrameParams) -> np.ndarray:
    """Transform carrying standard-frame coordinates to the frame of p.

    Closed form of the rotation-rotation-boost product; its last column is
    frame_vector(p).
    """
    ca, sa = math.cosh(p.alpha), math.sinh(p.alpha)
    cw, sw = math.cos(p.omega), math.sin(p.omega)
    cg, sg = math.cos(p.gamma), math.sin(p.gamma)
    return np.array([
        [ca, 0.0, 0.0, sa],
        [-sw * sa, cw, 0.0, -sw * ca],
        [sg * cw * sa, sg * sw, cg, sg * cw * ca],
        [cg * cw * sa, cg * sw, -sg, cg * cw * ca],
    ])


def frame_matrix_exponential(p: FrameParams) -> np.ndarray:
    """Product-of-exponentials form of frame_matrix (reference route)."""
    from scipy.linalg import expm

    e23 = _exp_generator((2, 3))
    e31 = -_exp_generator((1, 3))  # (3,1) plane
    e03 = _exp_generator((0, 3))
    return expm(p.gamma * e23) @ expm(p.omega * e31) @ expm(p.alpha * e03)


def frame_matrix_inverse(p: FrameParams) -> np.ndarray:
    """Metric-adjoint inverse of frame_matrix; maps frame coordinates back."""
    return METRIC @ frame_matrix(p).T @ METRIC


def frame_vector(p: FrameParams) -> np.ndarray:
    """Spacelike unit frame vector of p (unit positive Minkowski norm)."""
    ca = math.cosh(p.alpha)
    return np.array([
        math.sinh(p.alpha),
        -math.sin(p.omega) * ca,
        math.sin(p.gamma) * math.cos(p.omega) * ca,
        math.cos(p.gamma) * math.cos(p.omega) * ca,
    ])


def frame_params_from_vector(n, tol: float = 1e-9) -> FrameParams:
    """Invert frame_vector.

    Raises FrameRecoveryError when the vector is not spacelike unit within
    tol or sits on the omega = +-pi/2 chart boundary.
    """
    n = np.asarray(n, dtype=float)
    if abs(minkowski_norm2(n) - 1.0) > 10 * max(tol, 1e-12) * max(1.0, np.abs(n).max() ** 2):
        raise FrameRecoveryError("vector is not a spacelike unit vector")
    alpha = math.asinh(n[0])
    ca = math.sqrt(1.0 + n[0] ** 2)
    sw = -n[1] / ca
    if abs(sw) > 1.0 + tol:
        raise FrameRecoveryError("no omega reproduces component 1")
    sw = min(1.0, max(-1.0, sw))
    cw = math.sqrt(max(0.0, 1.0 - sw * sw))
    if cw < _OMEGA_SINGULAR_TOL:
        raise FrameRecoveryError("omega at the chart boundary +-pi/2")
    gamma = math.atan2(n[2], n[3]) % (2.0 * math.pi)
    p = FrameParams(alpha, math.asin(sw), gamma)
    if np.max(np.abs(frame_vector(p) - n)) > max(tol, 1e-10) * max(1.0, np.abs(n).max()):
        raise FrameRecoveryError("reconstruction mismatch")
    return p


def is_lorentz_matrix(lam, tol: float = 1e-10) -> bool:
    lam = np.asarray(lam, dtype=float)
    return bool(np.max(np.abs(lam.T @ METRIC @ lam - METRIC)) <= tol)


def little_group_matrix(lam: np.ndarray, p: FrameParams) -> np.ndarray:
    """Stabilizer-group matrix induced by lam at frame p.

    Computes the conjugation that fixes the standard frame vector.  Raises
    DomainError if lam is not metric-orthogonal to 1e-10 and
    FrameRecoveryError if the transformed frame leaves the chart.
    """
    lam = np.asarray(lam, dtype=float)
    if not is_lorentz_matrix(lam, 1e-10):
        raise DomainError("matrix is not metric-orthogonal within 1e-10")
    n_new = lam @ frame_vector(p)
    p_new = frame_params_from_vector(n_new)
    return frame_matrix_inverse(p_new) @ lam @ frame_matrix(p)


def frame_jacobian(p: FrameParams) -> np.ndarray:
    """4x3 Jacobian of the frame vector with respect to (alpha, omega, gamma)."""
    ca, sa = math.cosh(p.alpha), math.sinh(p.alpha)
    cw, sw = math.cos(p.omega), math.sin(p.omega)
    cg, sg = math.cos(p.gamma), math.sin(p.gamma)
    d_alpha = np.array([ca, -sw * sa, sg * cw * sa, cg * cw * sa])
    d_omega = np.array([0.0, -cw * ca, -sg * sw * ca, -cg * sw * ca])
    d_gamma = np.array([0.0, 0.0, cg * cw * ca, -sg * cw * ca])
    return np.stack([d_alpha, d_omega, d_gamma], axis=1)


def frame_matrix_param_derivatives(p: FrameParams) -> list:
    """Exact derivatives of frame_matrix with respect to (alpha, omega, gamma)."""
    e03 = _exp_generator((0, 3))
    e31 = -_exp_generator((1, 3))
    e23 = _exp_generator((2, 3))
    rg, rw, ba = _rot23(p.gamma), _rot31(p.omega), _boost3(p.alpha)
    lt = rg @ rw @ ba
    return [lt @ e03, rg @ e31 @ rw @ ba, e23 @ lt]


def _chart_pinv(p: FrameParams) -> np.ndarray:
    jac = frame_jacobian(p)
    if abs(math.cos(p.omega)) < _OMEGA_SINGULAR_TOL:
        raise SingularFrameError("frame chart degenerate at omega = +-pi/2")
    return np.linalg.pinv(jac)


def s_matrices_mixed(p: FrameParams) -> list:
    """Frame-derivative matrices in the vector-action (mixed index) form.

    S_mu = L d(L^T)/dn^mu with the constrained derivative taken through the
    three-parameter chart via the Moore-Penrose pseudo-inverse of the
    Jacobian restricted to the unit-vector tangent space.
    """
    pinv = _chart_pinv(p)  # 3x4
    linv = frame_matrix_inverse(p)
    per_param = [linv @ d for d in frame_matrix_param_derivatives(p)]
    return [sum(pinv[j, mu] * per_param[j] for j in range(3)) for mu in range(4)]


def s_matrices(p: FrameParams) -> list:
    """Frame-derivative matrices with both indices lowered (antisymmetric)."""
    return [METRIC @ s for s in s_matrices_mixed(p)]


def covariant_frame_derivative(fn, p: FrameParams, y, h: float = 1e-6) -> np.ndarray:
    """Apply the frame-covariant derivative to a scalar function fn(p, y).

    Combines the chart derivative in the frame-vector directions with the
    compensating y-drag; vanishes identically on functions of the mapped
    coordinates alone.
    """
    y = np.asarray(y, dtype=float)
    pinv = _chart_pinv(p)
    s_mix = s_matrices_mixed(p)
    grads_p = np.zeros(3)
    for j, name in enumerate(("alpha", "omega", "gamma")):
        vals = {}
        for sgn in (+1, -1):
            kw = {"alpha": p.alpha, "omega": p.omega, "gamma": p.gamma}
            kw[name] += sgn * h
            vals[sgn] = fn(FrameParams(**kw), y)
        grads_p[j] = (vals[+1] - vals[-1]) / (2 * h)
    grad_y = np.zeros(4)
    for mu in range(4):
        dy = np.zeros(4)
        dy[mu] = h
        grad_y[mu] = (fn(p, y + dy) - fn(p, y - dy)) / (2 * h)
    out = np.zeros(4)
    for mu in range(4):
        dn_part = sum(pinv[j, mu] * grads_p[j] for j in range(3))
        drag = s_mix[mu] @ y
        out[mu] = dn_part - drag @ grad_y
    return out


def algebra_action(gen: np.ndarray, p: FrameParams, y) -> tuple:
    """Infinitesimal variation (dn, dy) of any Lorentz-algebra element.

    dn is the matrix action on the frame vector; dy combines the conjugated
    generator with the frame-derivative drag.  Under composed flows the
    induced vector fields bracket to minus the matrix commutator's action.
    """
    y = np.asarray(y, dtype=float)
    gen = np.asarray(gen, dtype=float)
    n = frame_vector(p)
    dn = gen @ n
    lt = frame_matrix(p)
    linv = frame_matrix_inverse(p)
    s_mix = s_matrices_mixed(p)
    drag = sum(dn[mu] * s_mix[mu] for mu in range(4))
    dy = (linv @ gen @ lt - drag) @ y
    return dn, dy


def classical_generator_action(pair, p: FrameParams, y) -> tuple:
    """algebra_action of the lowered-pair generator labelled by `pair`."""
    return algebra_action(generator_action(pair), p, y)


def rms_map(pt: RMSPoint) -> np.ndarray:
    """Map region coordinates to four-vector components."""
    st, ct = math.sin(pt.theta), math.cos(pt.theta)
    cb, sb = math.cosh(pt.beta), math.sinh(pt.beta)
    return np.array([
        pt.rho * sb * st,
        pt.rho * cb * st * math.cos(pt.phi),
        pt.rho * cb * st * math.sin(pt.phi),
        pt.rho * ct,
    ])


def rms_inverse(y) -> RMSPoint:
    """Invert rms_map; raises OutOfRMSError outside the spacelike support."""
    y = np.asarray(y, dtype=float)
    s2 = y[1] ** 2 + y[2] ** 2 - y[0] ** 2
    if s2 < -1e-12 * max(1.0, np.abs(y).max() ** 2):
        raise OutOfRMSError("transverse square is negative")
    s = math.sqrt(max(0.0, s2))
    rho = math.hypot(s, y[3])
    theta = math.atan2(s, y[3])
    if s > 0.0:
        beta = math.asinh(y[0] / s)
        phi = math.atan2(y[2], y[1]) % (2.0 * math.pi)
    else:
        beta = 0.0
        phi = 0.0
    return RMSPoint(rho, theta, beta, phi)
