"""Covariant hydrogen-like bound states with a dynamical spacelike frame:
first-order magnetic and electric shifts (including the imaginary decay part
from the boost coupling and the real splitting from the scalar fifth field),
plus classical five-potential field dynamics."""

from .elements import (
    BoostCoefficients,
    ElementKey,
    angular_dipole_factor,
    boost_coefficients,
    boost_element,
    n1_element,
    rho_element,
    x1_element,
)
from .errors import (
    BasisNotClosedError,
    BranchError,
    ConfigError,
    ConvergenceError,
    CovstarkError,
    DomainError,
    FrameRecoveryError,
    OutOfRMSError,
    ResolutionError,
    SingularFrameError,
    StepOverflowError,
    TailError,
)
from .lorentz import (
    GENERATOR_PAIRS,
    METRIC,
    STANDARD_FRAME_VECTOR,
    FrameParams,
    RMSPoint,
    algebra_action,
    classical_generator_action,
    coupling_matrix,
    covariant_frame_derivative,
    frame_matrix,
    frame_matrix_inverse,
    frame_params_from_vector,
    frame_vector,
    generator_action,
    little_group_matrix,
    lorentz_generators,
    minkowski_dot,
    rms_inverse,
    rms_map,
    s_matrices,
    s_matrices_mixed,
)
from .premaxwell import (
    EventCurrent,
    FieldStrength5,
    FivePotential,
    TrajectoryState,
    concatenate,
    constant_field_potential,
    constant_fifth_potential,
    continuity_residual,
    event_current,
    field_strength,
    integrate_trajectory,
    lorentz_force,
    recompose_field,
    three_vector_decompose,
    write_trajectory_csv,
)
from .special import (
    PolyIndex,
    QuadratureRule,
    RadialLabel,
    assoc_legendre,
    build_quadrature,
    coulomb_radial,
    coulomb_radial_derivative,
    generalized_PL,
    integrate_line_adaptive,
    jacobi_poly,
)
from .spectra import (
    FieldConfig,
    GroundStarkResult,
    PerturbationBlock,
    SpectralShift,
    combined_block,
    coupling_reduction_electric,
    coupling_reduction_magnetic,
    diagonalize,
    ground_basis,
    ground_state_stark,
    ground_stark_closed_form,
    nonrelativistic_reference,
    quartet_2s2p_basis,
    stark_electric_block,
    stark_scalar_block,
    zeeman_shift,
    zeeman_spectrum,
)
from .states import (
    BoundState,
    QuadratureConfig,
    QuantumNumbers,
    evaluate_wavefunction,
    fix_normalization,
    gram_matrix,
    inner_product,
    l1_eigenvalue,
    named_low_lying_states,
)

__version__ = "0.1.0"
