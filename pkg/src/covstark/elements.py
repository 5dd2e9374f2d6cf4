"""Closed-form first-order matrix elements between the labelled eigenstates:
the boost generator along the field axis, the position and frame-vector
components on that axis, and the radial dipole integrals."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError
from .special import RadialLabel, build_quadrature, coulomb_radial
from .states import QuantumNumbers

_TOL = 1e-9


@dataclass(frozen=True)
class ElementKey:
    """Bra/ket label pair of a single matrix element."""

    bra: QuantumNumbers
    ket: QuantumNumbers


@dataclass(frozen=True)
class BoostCoefficients:
    """The three ladder coefficients of the boost generator at (L, nhat, c2).

    Stored as the real numbers printed for the anti-Hermitian combination;
    each multiplies i on assembly.  down couples L -> L-1, diag carries the
    c2-proportional diagonal, up couples L -> L+1.
    """

    down: float
    diag: float
    up: float


def boost_coefficients(L: float, nhat: float, c2: float) -> BoostCoefficients:
    def ladder(lv: float) -> float:
        gap = lv**2 - nhat**2
        if lv <= 0 or gap <= 1e-15:  # at or below the bottom of the tower
            return 0.0
        return -math.sqrt(gap * (lv**2 + c2**2 / nhat**2) / (4.0 * lv**2 - 1.0)) / lv

    return BoostCoefficients(
        down=ladder(L),
        diag=c2 / (L * (L + 1.0)),
        up=ladder(L + 1.0),
    )


def _conserved(bra: QuantumNumbers, ket: QuantumNumbers) -> bool:
    return (
        abs(bra.q - ket.q) < _TOL
        and bra.n == ket.n
        and abs(bra.c2 - ket.c2) < _TOL
    )


def boost_element(bra: QuantumNumbers, ket: QuantumNumbers) -> complex:
    """Element of the (anti-Hermitian) boost generator along the field axis.

    Nonzero only between states sharing q, n, ell, n_a and c2 with the bra L
    one step below, equal to, or one step above the ket L; selection-rule
    failures return exact zero.
    """
    if not _conserved(bra, ket) or bra.ell != ket.ell or bra.n_a != ket.n_a:
        return 0.0 + 0.0j
    co = boost_coefficients(ket.L, ket.nhat, ket.c2)
    q, L = ket.q, ket.L
    dL = round(2 * (bra.L - ket.L)) / 2.0
    if dL == -1.0:
        return complex(co.down * math.sqrt(max(0.0, L**2 - q**2)))
    if dL == 0.0:
        return complex(-1j * co.diag * q)
    if dL == 1.0:
        return complex(-co.up * math.sqrt(max(0.0, (L + 1.0) ** 2 - q**2)))
    return 0.0 + 0.0j


def angular_dipole_factor(ell: int, n: int, step: int) -> float:
    """Angular factor coupling ell to ell + step (step = +-1) at fixed n."""
    if step not in (+1, -1):
        raise DomainError("step must be +1 or -1")
    ellp = ell + step
    if ellp < 0 or n > ellp or n > ell:
        return 0.0
    lead = (ell - n + 1.0) if step == +1 else (ell + n) * 1.0
    inner = (
        1.0
        / (2 * ell + 1.0)
        / (2 * ellp + 1.0)
        * math.factorial(ell - n)
        / math.factorial(ell + n)
        * math.factorial(ellp + n)
        / math.factorial(ellp - n)
    )
    return lead * math.sqrt(inner)


def x1_element(bra: QuantumNumbers, ket: QuantumNumbers, radial_rho: float) -> float:
    """Element of the position component along the field axis.

    radial_rho is the radial dipole integral between the bra and ket radial
    labels; the angular selection couples ell' = ell +- 1 at fixed L, q, n.
    """
    if not _conserved(bra, ket) or abs(bra.L - ket.L) > _TOL:
        return 0.0
    step = bra.ell - ket.ell
    if step not in (+1, -1):
        return 0.0
    pref = ket.q / (ket.L * (ket.L + 1.0))
    return float(radial_rho * pref * angular_dipole_factor(ket.ell, ket.n, step))


def n1_element(bra: QuantumNumbers, ket: QuantumNumbers) -> float:
    """Element of the frame-vector component along the field axis (all labels equal)."""
    if (
        not _conserved(bra, ket)
        or abs(bra.L - ket.L) > _TOL
        or bra.ell != ket.ell
        or bra.n_a != ket.n_a
    ):
        return 0.0
    return float(ket.q / (ket.L * (ket.L + 1.0)))


def rho_element(bra: RadialLabel, ket: RadialLabel, order: int = 48) -> float:
    """Radial integral of rho between two radial eigenfunctions (weight rho^2).

    Scaled Gauss-Laguerre quadrature matched to the combined exponential
    decay; raises ConvergenceError if order refinement disagrees.
    """
    if abs(bra.a0 - ket.a0) > 1e-12:
        raise DomainError("radial labels must share the length scale")
    decay = (1.0 / bra.principal + 1.0 / ket.principal) / bra.a0

    def compute(nq: int) -> float:
        rule = build_quadrature(("radial", 1.0 / decay), nq)
        rr = rule.nodes
        vals = coulomb_radial(bra, rr) * rr * coulomb_radial(ket, rr) * rr**2
        return float(np.sum(rule.weights * vals))

    coarse, fine = compute(order), compute(2 * order)
    scale = max(abs(fine), bra.a0)
    if abs(fine - coarse) > 1e-9 * scale:
        raise ConvergenceError("radial dipole integral not converged at requested order")
    return fine
