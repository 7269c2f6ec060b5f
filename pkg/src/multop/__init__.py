"""Finite-dimensional models of the multiplication operator z on spaces of
holomorphic functions over the disk, the annulus and the pair of pants."""

from .domains import (
    ANNULUS,
    DISK,
    PANTS,
    BasisIndex,
    BasisLabel,
    DomainParams,
    Truncation,
    annulus,
    disk,
    enumerate_basis,
    load_config,
    pants,
    params_from_mapping,
    validate,
)
from .errors import (
    ClusterAmbiguity,
    ConstraintViolation,
    DegreeGuard,
    DomainViolation,
    InvalidMode,
    MultopError,
    NearEigenvalue,
    NotHermitian,
    RegionViolation,
    SeriesDivergence,
)
from .kernels import KERNEL_NAMES, BoundReport, KernelSpec, kernel_matrix, schur_young_bound
from .operators import (
    OperatorMatrix,
    build_commutator,
    build_z,
    build_z_star,
    build_zstarz,
    build_zzstar,
    small_matrices,
)
from .quotient import (
    commutator_ideal_certificates,
    compactness_score,
    spectral_projection,
    toeplitz_compress,
)
from .resolvent import (
    GridSpec,
    adjoint_section,
    dense_oracle_z,
    pseudospectrum_grid,
    smallest_singular_value,
    solve_resolvent_z,
    solve_resolvent_zzstar,
    spectrum_membership,
)
from .spectra import (
    CoefficientVector,
    SpectrumDescription,
    characteristic_roots,
    classify_eigenvalues,
    closed_form_spectrum,
    eigenvector_phi_lambda_z_star,
    eigenvector_simple,
    simple_eigenvalue,
    spectrum_convergence_report,
    truncated_eigenvalues,
)
from .symbols import OperatorWord, SymbolTriple, TrigPoly, symbol_of

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
