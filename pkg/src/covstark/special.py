"""Associated Legendre and Jacobi evaluation, hydrogen-like radial functions,
and the Gauss-type quadrature rules used by the bound-state integrals."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import eval_genlaguerre, loggamma

from .errors import BranchError, ConvergenceError, DomainError

_INT_TOL = 1e-9


def _as_int(x, what: str) -> int:
    k = int(round(float(np.real(x))))
    if abs(x - k) > _INT_TOL:
        raise BranchError(f"{what} must be an integer, got {x}")
    return k


def assoc_legendre(ell: int, m: int, x):
    """Associated Legendre P_ell^m in the Ferrers convention.

    Carries the (-1)^m phase, so P_1^1(x) = -sqrt(1 - x^2).  Negative orders
    follow the factorial-ratio relation
    P_ell^{-m} = (-1)^m (ell-m)!/(ell+m)! P_ell^m.
    """
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > 1.0 + 1e-14):
        raise DomainError("assoc_legendre requires |x| <= 1")
    if ell < 0:
        raise DomainError("degree must be non-negative")
    if m < 0:
        m = -m
        if m > ell:
            return np.zeros_like(x) if x.ndim else 0.0
        ratio = (-1.0) ** m * math.factorial(ell - m) / math.factorial(ell + m)
        return ratio * assoc_legendre(ell, m, x)
    if m > ell:
        return np.zeros_like(x) if x.ndim else 0.0
    # upward recurrence in degree from the diagonal term
    somx2 = np.sqrt(np.clip(1.0 - x * x, 0.0, None))
    pmm = (-1.0) ** m * float(np.prod(np.arange(1, 2 * m, 2))) * somx2**m
    if ell == m:
        return pmm if x.ndim else float(pmm)
    pm1 = x * (2 * m + 1) * pmm
    if ell == m + 1:
        return pm1 if x.ndim else float(pm1)
    for deg in range(m + 2, ell + 1):
        pmm, pm1 = pm1, (x * (2 * deg - 1) * pm1 - (deg + m - 1) * pmm) / (deg - m)
    return pm1 if x.ndim else float(pm1)


def jacobi_poly(k: int, alpha, beta, z):
    """Degree-k Jacobi polynomial with possibly complex parameters.

    Evaluated by the explicit (k+1)-term sum; the binomial coefficients are
    built as finite products so negative-integer parameters are exact.
    """
    if k < 0 or k != int(k):
        raise DomainError("degree must be a non-negative integer")
    k = int(k)
    z = np.asarray(z, dtype=complex)
    total = np.zeros_like(z)
    for s in range(k + 1):
        coeff = 1.0 + 0.0j
        for j in range(1, k - s + 1):
            coeff *= (alpha + s + j) / j
        for j in range(1, s + 1):
            coeff *= (beta + k - s + j) / j
        total = total + coeff * ((z - 1.0) / 2.0) ** s * ((z + 1.0) / 2.0) ** (k - s)
    return total if total.ndim else complex(total)


def generalized_PL(L, a, b, z):
    """Generalized Legendre-type function on the polynomial branch.

    Product of the phase i^(a-b) (branch fixed as exp(i pi (a-b)/2)), a
    gamma-function normalization, endpoint powers and a Jacobi polynomial of
    degree L - a.  Raises BranchError unless L - a is a non-negative integer.
    """
    if abs(np.imag(a)) > _INT_TOL:
        raise BranchError("complex first order parameter is outside the polynomial branch")
    degree = L - np.real(a)
    k = int(round(degree))
    if abs(degree - k) > _INT_TOL or k < 0:
        raise BranchError(f"L - a = {degree} is not a non-negative integer")
    a = np.real(a)
    z = np.asarray(z, dtype=complex)
    phase = np.exp(1j * math.pi * (a - b) / 2.0)
    lg = loggamma(L - a + 1) + loggamma(L + a + 1) - loggamma(L - b + 1) - loggamma(L + b + 1)
    ratio = np.exp(0.5 * lg)
    out = (
        phase / 2.0**a
        * ratio
        * (1.0 - z) ** ((a - b) / 2.0)
        * (1.0 + z) ** ((a + b) / 2.0)
        * jacobi_poly(k, a - b, a + b, z)
    )
    return out if out.ndim else complex(out)


@dataclass(frozen=True)
class PolyIndex:
    """Index set (degree L, orders a and b) of a generalized Legendre function."""

    L: float
    a: complex
    b: complex

    def polynomial_branch(self) -> bool:
        d = self.L - np.real(self.a)
        return abs(np.imag(self.a)) <= _INT_TOL and abs(d - round(d)) <= _INT_TOL and round(d) >= 0


@dataclass(frozen=True)
class RadialLabel:
    """Radial quantum number, orbital index and length scale of a radial state."""

    n_a: int
    ell: int
    a0: float = 1.0

    def __post_init__(self):
        if self.n_a < 0 or self.ell < 0:
            raise DomainError("radial labels must be non-negative integers")
        if self.a0 <= 0:
            raise DomainError("a0 must be positive")

    @property
    def principal(self) -> int:
        return self.n_a + self.ell + 1


def coulomb_radial(label: RadialLabel, rho):
    """Hydrogen-like radial eigenfunction, unit-normalized with weight rho^2.

    Sign convention carries (-1)^{n_a} so that the off-diagonal dipole radial
    integral between neighbouring levels is positive.
    """
    rho = np.asarray(rho, dtype=float)
    if np.any(rho < 0):
        raise DomainError("rho must be non-negative")
    n_r, ell, a0 = label.n_a, label.ell, label.a0
    big_n = label.principal
    x = 2.0 * rho / (big_n * a0)
    norm = math.sqrt(
        (2.0 / (big_n * a0)) ** 3 * math.factorial(n_r) / (2.0 * big_n * math.factorial(big_n + ell))
    )
    val = (-1.0) ** n_r * norm * np.exp(-x / 2.0) * x**ell * eval_genlaguerre(n_r, 2 * ell + 1, x)
    return val if val.ndim else float(val)


def coulomb_radial_derivative(label: RadialLabel, rho):
    """d/drho of coulomb_radial, from the Laguerre derivative identity."""
    rho = np.asarray(rho, dtype=float)
    n_r, ell, a0 = label.n_a, label.ell, label.a0
    big_n = label.principal
    x = 2.0 * rho / (big_n * a0)
    norm = math.sqrt(
        (2.0 / (big_n * a0)) ** 3 * math.factorial(n_r) / (2.0 * big_n * math.factorial(big_n + ell))
    )
    lag = eval_genlaguerre(n_r, 2 * ell + 1, x)
    dlag = -eval_genlaguerre(n_r - 1, 2 * ell + 2, x) if n_r >= 1 else np.zeros_like(x)
    poly = -0.5 * x**ell * lag + x**ell * dlag
    if ell > 0:
        poly = poly + ell * x ** (ell - 1) * lag
    val = (-1.0) ** n_r * norm * np.exp(-x / 2.0) * poly * (2.0 / (big_n * a0))
    return val if val.ndim else float(val)


@dataclass(frozen=True)
class QuadratureRule:
    """Immutable nodes/weights pair with a domain tag."""

    nodes: np.ndarray
    weights: np.ndarray
    domain: tuple = ("interval", -1.0, 1.0)

    def integrate(self, f) -> complex:
        vals = f(self.nodes) if callable(f) else np.asarray(f)
        return complex(np.sum(self.weights * vals))


def _gauss_legendre(a: float, b: float, order: int) -> tuple:
    x, w = np.polynomial.legendre.leggauss(order)
    return 0.5 * (b - a) * x + 0.5 * (a + b), 0.5 * (b - a) * w


def _composite(edges, order: int) -> tuple:
    nodes, weights = [], []
    for lo, hi in zip(edges[:-1], edges[1:]):
        x, w = _gauss_legendre(lo, hi, order)
        nodes.append(x)
        weights.append(w)
    return np.concatenate(nodes), np.concatenate(weights)


def _line_edges(cutoff: float) -> list:
    base = [0.0, 0.5, 1.0, 2.0, 4.0, 8.0]
    edges = [e for e in base if e < cutoff] + [cutoff]
    return sorted({-e for e in edges} | set(edges))


def build_quadrature(domain, order: int) -> QuadratureRule:
    """Construct a quadrature rule for one of the supported domains.

    Descriptors:
      ("interval", a, b)            Gauss-Legendre on [a, b]
      ("interval_refined", a, b, levels)
                                    composite Gauss-Legendre, panels refined
                                    geometrically toward both endpoints
      ("radial", scale)             scaled Gauss-Laguerre on [0, inf); exact
                                    for poly * exp(-rho/scale)
      ("line", cutoff)              symmetric composite panels on
                                    [-cutoff, cutoff] with `order` points each
      ("periodic", period)          uniform grid, exact for Fourier modes
                                    below `order`
    """
    if order < 1:
        raise DomainError("order must be >= 1")
    kind = domain[0]
    if kind == "interval":
        _, a, b = domain
        x, w = _gauss_legendre(a, b, order)
    elif kind == "interval_refined":
        _, a, b, levels = domain
        mid = 0.5 * (a + b)
        half = 0.5 * (b - a)
        offs = [0.0] + [1.0 - 4.0 ** (-j) for j in range(1, levels + 1)] + [1.0]
        edges = sorted({mid + half * o for o in offs} | {mid - half * o for o in offs})
        x, w = _composite(edges, order)
    elif kind == "radial":
        _, scale = domain
        t, wt = np.polynomial.laguerre.laggauss(order)
        x, w = scale * t, scale * wt * np.exp(t)
    elif kind == "line":
        _, cutoff = domain
        x, w = _composite(_line_edges(float(cutoff)), order)
    elif kind == "periodic":
        _, period = domain
        x = np.arange(order) * (period / order)
        w = np.full(order, period / order)
    else:
        raise DomainError(f"unknown quadrature domain {kind!r}")
    return QuadratureRule(x, w, tuple(domain))


def integrate_line_adaptive(
    f,
    order: int = 24,
    tail_tol: float = 1e-10,
    start_cutoff: float = 8.0,
    max_cutoff: float = 64.0,
) -> float:
    """Integrate a real decaying integrand over the line, growing the cutoff.

    The tail estimate is the contribution of the panels just beyond the
    current cutoff; raises ConvergenceError if it still exceeds tail_tol at
    max_cutoff.
    """
    cutoff = start_cutoff
    while True:
        rule = build_quadrature(("line", cutoff), order)
        total = float(np.real(rule.integrate(f)))
        xo, wo = _composite([-2.0 * cutoff, -cutoff, cutoff, 2.0 * cutoff], order)
        keep = np.abs(xo) >= cutoff
        tail = abs(np.sum(wo[keep] * f(xo[keep])))
        if tail <= tail_tol:
            return total
        if 2.0 * cutoff > max_cutoff:
            raise ConvergenceError(
                f"line-integral tail {tail:.3e} above {tail_tol:.1e} at cutoff {cutoff}"
            )
        cutoff *= 2.0
