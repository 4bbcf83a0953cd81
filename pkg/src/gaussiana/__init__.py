"""Covariance-matrix calculus for multimode Gaussian quantum states."""

from .channels import ChannelParams, diffusion_matrix, evolve_multi, evolve_single
from .conditioning import GaussianPovm, condition, heterodyne_povm, homodyne_povm
from .core import (
    GaussianState,
    euler_decomposition,
    is_physical,
    is_symplectic,
    omega,
    symplectic_eigenvalues,
    williamson,
)
from .exceptions import GaussianaError, PhysicsError, SchemaError
from .fidelity import fidelity_1m, fidelity_2m, overlap
from .metrics import (
    LocalInvariants,
    StandardForm,
    conditional_entropy,
    duan_criterion,
    eof_squeezed_thermal,
    eof_symmetric,
    f_entropy,
    gaussian_discord,
    is_separable_ppt,
    local_invariants,
    log_negativity,
    mutual_information,
    ppt_symplectic_eigenvalues,
    purity,
    standard_form,
    symplectic_eigenvalues_2m,
    von_neumann_entropy,
)
from .phasespace import (
    characteristic,
    nonclassical_depth,
    symmetric_moment,
    wigner,
    wigner_grid,
    wigner_moment,
    wigner_s,
)
from .states import (
    coherent,
    single_mode_general,
    thermal,
    twb,
    two_mode_squeezed_thermal,
    vacuum,
)
from .transforms import (
    apply,
    beam_splitter,
    displacement,
    phase_rotation,
    squeezer_single,
    squeezer_two_mode,
)

__version__ = "0.1.0"
