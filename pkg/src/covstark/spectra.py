"""First-order perturbation blocks and shifts: magnetic splitting, the
electric coupling to the boost tower (imaginary shifts), and the scalar
fifth-field coupling (real splitting), plus the coupling-reduction identities
on the generator matrices."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .elements import boost_element, n1_element, rho_element, x1_element
from .errors import BasisNotClosedError, ConvergenceError, DomainError
from .lorentz import METRIC, coupling_matrix, lorentz_generators
from .special import RadialLabel
from .states import QuantumNumbers

_TOL = 1e-9
_MERGE_TOL = 1e-10


def _shift_sort_key(v: complex) -> tuple:
    # damp eigensolver noise so branch pairing is stable
    return (round(v.real, 9), round(v.imag, 12))


@dataclass(frozen=True)
class FieldConfig:
    """External field strengths and the physical scales of a run.

    All fields point along the 1-axis; natural units with the charge, mass
    and both length scales free.
    """

    B: float = 0.0
    E: float = 0.0
    eps: float = 0.0
    e: float = 1.0
    m: float = 1.0
    r0: float = 1.0
    a0: float = 1.0

    def __post_init__(self):
        if self.m <= 0 or self.r0 <= 0 or self.a0 <= 0:
            raise DomainError("m, r0 and a0 must be positive")


@dataclass(frozen=True)
class SpectralShift:
    """A first-order complex mass shift and its multiplicity."""

    delta_K: complex
    multiplicity: int = 1


@dataclass
class PerturbationBlock:
    """Dense matrix of first-order elements over an ordered degenerate basis."""

    basis: list
    matrix: np.ndarray

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix, dtype=complex)
        if self.matrix.shape != (len(self.basis), len(self.basis)):
            raise DomainError("matrix dimensions must match the basis")


def zeeman_shift(q: float, f: FieldConfig) -> SpectralShift:
    """First-order magnetic shift -(eB/2m) q of the level labelled q."""
    return SpectralShift(complex(-f.e * f.B / (2.0 * f.m) * q), 1)


def zeeman_spectrum(qs, f: FieldConfig) -> list:
    """Shifts for a list of magnetic labels, preserving order."""
    return [zeeman_shift(q, f) for q in qs]


def ground_basis(q: float, c2: float = 0.0) -> list:
    """Lowest-level basis: the two-member boost tower at fixed q."""
    return [
        QuantumNumbers(0, 0, 0, 0.5, q, c2),
        QuantumNumbers(0, 0, 0, 1.5, q, c2),
    ]


def quartet_2s2p_basis(q: float, c2: float = 0.0) -> list:
    """Second-level pair (ell, n_a) = (0, 1) and (1, 0) at fixed q."""
    return [
        QuantumNumbers(1, 0, 0, 0.5, q, c2),
        QuantumNumbers(0, 1, 0, 0.5, q, c2),
    ]


BASIS_PRESETS = {"ground": ground_basis, "2s2p": quartet_2s2p_basis}


def _check_degenerate(basis) -> None:
    if not basis:
        raise BasisNotClosedError("basis is empty")
    if len({b.label() for b in basis}) != len(basis):
        raise BasisNotClosedError("basis contains duplicate labels")
    first = basis[0]
    for b in basis[1:]:
        if b.principal != first.principal or b.n != first.n or abs(b.c2 - first.c2) > _TOL:
            raise BasisNotClosedError(
                "basis spans non-degenerate levels (principal number, n or c2 differ)"
            )


def stark_electric_block(basis, f: FieldConfig) -> PerturbationBlock:
    """Electric coupling (eE/2m) times the boost-generator block.

    The boost tower in L is infinite; the supplied basis fixes the explicit
    truncation, so only degeneracy consistency is enforced.
    """
    _check_degenerate(basis)
    pref = f.e * f.E / (2.0 * f.m)
    dim = len(basis)
    mat = np.zeros((dim, dim), dtype=complex)
    for i, bra in enumerate(basis):
        for j, ket in enumerate(basis):
            mat[i, j] = pref * boost_element(bra, ket)
    return PerturbationBlock(list(basis), mat)


def _scalar_partner_missing(basis) -> str | None:
    labels = {b.label() for b in basis}
    for ket in basis:
        for step in (+1, -1):
            ellp = ket.ell + step
            nap = ket.principal - 1 - ellp
            if ellp < 0 or nap < 0 or ket.n > ellp:
                continue
            partner = QuantumNumbers(nap, ellp, ket.n, ket.L, ket.q, ket.c2)
            if partner.label() not in labels:
                return f"{ket.label()} couples to missing {partner.label()}"
    return None


def stark_scalar_block(basis, f: FieldConfig) -> PerturbationBlock:
    """Scalar fifth-field coupling e*eps*(x1 + r0*n1) over the basis.

    Raises BasisNotClosedError when the angular selection rule couples an
    included label to a same-level partner that is missing from the basis.
    """
    _check_degenerate(basis)
    missing = _scalar_partner_missing(basis)
    if missing is not None:
        raise BasisNotClosedError(missing)
    dim = len(basis)
    mat = np.zeros((dim, dim), dtype=complex)
    for i, bra in enumerate(basis):
        for j, ket in enumerate(basis):
            val = f.r0 * n1_element(bra, ket)
            if abs(bra.ell - ket.ell) == 1:
                rad = rho_element(
                    RadialLabel(bra.n_a, bra.ell, f.a0), RadialLabel(ket.n_a, ket.ell, f.a0)
                )
                val += x1_element(bra, ket, rad)
            mat[i, j] = f.e * f.eps * val
    return PerturbationBlock(list(basis), mat)


def combined_block(basis, f: FieldConfig) -> PerturbationBlock:
    """Sum of the electric and scalar blocks on a basis closed under both rules."""
    elec = stark_electric_block(basis, f)
    scal = stark_scalar_block(basis, f)
    return PerturbationBlock(list(basis), elec.matrix + scal.matrix)


def diagonalize(block: PerturbationBlock) -> list:
    """Shifts of a dense complex block, sorted by real then imaginary part.

    Eigenvalues within 1e-10 of each other merge into one shift with summed
    multiplicity.
    """
    dim = len(block.basis)
    if dim > 16:
        raise DomainError("blocks are limited to dimension 16")
    try:
        eig = np.linalg.eigvals(block.matrix)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"eigensolver failed: {exc}") from exc
    eig = sorted(eig, key=_shift_sort_key)
    shifts: list[SpectralShift] = []
    for val in eig:
        if shifts and abs(val - shifts[-1].delta_K) <= _MERGE_TOL:
            shifts[-1] = SpectralShift(shifts[-1].delta_K, shifts[-1].multiplicity + 1)
        else:
            shifts.append(SpectralShift(complex(val), 1))
    return shifts


def ground_stark_closed_form(c2: float, f: FieldConfig) -> list:
    """The printed closed-form lowest-level electric shifts, all sign branches."""
    pref = f.e * f.E / (2.0 * f.m)
    mean = 6.0 * c2 / 15.0
    rad = math.sqrt((4.0 * c2 / 15.0) ** 2 + 0.25 + (4.0 / 9.0) * c2**2)
    vals = []
    for outer in (+1.0, -1.0):
        for inner in (+1.0, -1.0):
            vals.append(complex(0.0, outer * pref * (mean + inner * rad)))
    return sorted(vals, key=_shift_sort_key)


@dataclass
class GroundStarkResult:
    """Diagonalized lowest-level electric shifts next to the closed form."""

    c2: float
    diagonalized: list
    closed_form: list
    abs_discrepancy: list = field(default_factory=list)

    def __post_init__(self):
        if not self.abs_discrepancy:
            self.abs_discrepancy = [
                abs(a - b) for a, b in zip(self.diagonalized, self.closed_form)
            ]


def ground_state_stark(c2: float, f: FieldConfig) -> GroundStarkResult:
    """Assemble and diagonalize the lowest-level electric block at c2.

    Returns both the numerically diagonalized shifts of the displayed
    two-member tower (over q = +-1/2) and the printed closed-form values;
    the discrepancy between the two routes is reported, never reconciled.
    """
    eigs: list[complex] = []
    for q in (+0.5, -0.5):
        block = stark_electric_block(ground_basis(q, c2), f)
        eigs.extend(s.delta_K for s in diagonalize(block) for _ in range(s.multiplicity))
    diag = sorted(eigs, key=_shift_sort_key)
    closed = ground_stark_closed_form(c2, f)
    return GroundStarkResult(c2, diag, closed)


def nonrelativistic_reference(f: FieldConfig) -> tuple:
    """The standard first-order splitting +-3 e E a0 of the second level."""
    mag = 3.0 * f.e * f.E * f.a0
    return (SpectralShift(complex(+mag), 1), SpectralShift(complex(-mag), 1))


def _rotation_combination(axis: int) -> np.ndarray:
    # (1/2) eps_{ijk} M^{ij} for the requested spatial axis k
    gens = lorentz_generators()
    i, j = [m for m in (1, 2, 3) if m != axis]
    sign = 1.0 if (i, j, axis) in ((1, 2, 3), (2, 3, 1), (3, 1, 2)) else -1.0
    return sign * gens[(i, j)]


def coupling_reduction_magnetic(axis: int, B: float = 1.0) -> tuple:
    """LHS and RHS matrices of the pure-magnetic coupling reduction.

    A unit magnetic-like field along `axis` contracted with the generator
    basis must equal B times the rotation generator about that axis.
    """
    if axis not in (1, 2, 3):
        raise DomainError("axis must be 1, 2 or 3")
    f_up = np.zeros((4, 4))
    other = [i for i in (1, 2, 3) if i != axis]
    i, j = other
    sign = 1.0 if (axis, i, j) in ((1, 2, 3), (2, 3, 1), (3, 1, 2)) else -1.0
    f_up[i, j] = sign * B
    f_up[j, i] = -sign * B
    lhs = coupling_matrix(f_up)
    rhs = B * _rotation_combination(axis)
    return lhs, rhs


def coupling_reduction_electric(axis: int, E: float = 1.0) -> tuple:
    """LHS and RHS matrices of the pure-electric coupling reduction.

    A unit electric-like field along `axis` contracted with the generator
    basis must reduce to E times the lowered-pair boost generator (0, axis).
    """
    if axis not in (1, 2, 3):
        raise DomainError("axis must be 1, 2 or 3")
    f_up = np.zeros((4, 4))
    f_up[0, axis] = E
    f_up[axis, 0] = -E
    lhs = coupling_matrix(f_up)
    gens = lorentz_generators()
    low = METRIC[0, 0] * METRIC[axis, axis] * gens[(0, axis)]
    rhs = E * low
    return lhs, rhs
