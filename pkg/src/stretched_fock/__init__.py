"""Stretched coherent states and their operator algebra in a truncated
Fock basis.

The family generalizes standard coherent states by a stretch exponent
sigma in (0, 1]: amplitudes go like (zeta**sigma)^n / sqrt(n!), the photon
distribution stays Poisson, and displacement / squeezing operators carry
fractional powers of their labels on the principal branch.  At
sigma = upsilon = 1 everything reduces to the standard theory.
"""

from .fock import (
    FockOperator,
    FockVector,
    StretchLabel,
    TruncationConfig,
    TruncationError,
    complex_power,
    displacement_block,
    ladder_matrices,
    laguerre_assoc,
    poisson_tail_bound,
    required_dim,
    squeeze_block,
)
from .states import (
    EvolutionPhase,
    PhotonStats,
    annihilation_residual,
    evolve,
    evolved_label,
    make_state,
    numeric_photon_stats,
    overlap,
    photon_pmf,
    photon_stats,
    state_from_amplitude,
)
from .operators import (
    ConvergenceError,
    ProductDecomposition,
    SqueezeLabel,
    bogoliubov,
    displacement,
    displacement_from_amplitude,
    displacement_normal_ordered,
    matrix_element,
    multiplication_law,
    squeezing,
    unitary_exp,
)
from .composite import (
    CompositeLabel,
    SqueezedExpectations,
    displaced_number,
    modified_coherent,
    modified_coherent_expansion,
    modified_displacement,
    squeezed_coherent,
    squeezed_displaced_number,
    squeezed_expectations,
)
from .quadrature import (
    CoherentKernel,
    QuadratureSpec,
    angular_average,
    angular_average_numeric,
    coherent_kernel,
    inner_product,
    operator_kernel_compose,
    radial_completeness,
    radial_completeness_raw,
    reconstruct_vector,
    resolution_matrix,
    weight,
)
from .verify import CheckResult, run_verification

__version__ = "0.1.0"
