"""Toeplitz kernels on the Hardy space of the disc.

Exact rational arithmetic (factorization, Blaschke lattice, minimal inner
functions) sits underneath sampled boundary values and truncated
block-Toeplitz matrices, which are used to compute and test kernels.
"""
from .boundary import (
    BoundaryGrid,
    OuterNumeric,
    majorant_outer,
    negative_mass,
    outer_from_modulus,
    riesz_project,
    sample_fourier,
)
from .errors import HardyKernelError
from .hardy import (
    Cyclicity,
    FiniteBlaschke,
    HardyClass,
    HardyFunction,
    blaschke_divides,
    blaschke_gcd,
    blaschke_lcm,
    classify_and_factor,
    lacunary_cyclic,
    minimal_inner,
)
from .maximal import (
    MaximalityVerdict,
    MaxStatus,
    factored_kernel_verify,
    maximal_pair,
    maximality_status,
    model_space_maximal_verify,
    scalar_maximal,
    shift_invariant_pair_verify,
    unimodular_normalize,
    verify_maximal_decomp,
)
from .minimal_kernels import (
    KminResult,
    coprime_symbol_verify,
    kmin_pair_scalar,
    kmin_pair_vector,
    minimal_kernel_symbol,
)
from .rational import Polynomial, RationalFn, boundary_conjugate, rational
from .toeplitz import (
    KernelBasis,
    MatrixSymbol,
    build_truncated,
    kernel_basis,
    kernel_inclusion_check,
    membership_residual,
    numerical_kernel,
    shift_invariance_test,
)

__version__ = "0.1.0"
