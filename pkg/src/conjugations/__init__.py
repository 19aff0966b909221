"""Commuting conjugations of unitary operators.

Antilinear, isometric, involutive maps C with C U C = U: existence tests,
canonical construction, family sampling, membership verification, parameter
recovery, atomic measure models, exact grid shift models, and the Fourier /
Hilbert transform families.
"""

from .antilinear import (
    AntilinearOperator,
    ConjugationReport,
    apply,
    commutation_defect,
    compose,
    is_conjugation,
    plain_conjugation,
    symmetry_defect,
    transport,
)
from .errors import (
    AbsoluteContinuityError,
    InputError,
    MembershipError,
    NotSelfDualError,
    ToleranceError,
)
from .family import (
    ConjugationParams,
    canonical_conjugation,
    decompose,
    from_params,
    identity_params,
    verify_membership,
)
from .linalg import (
    Tolerance,
    four_unitary_split,
    haar_unitary,
    hermitian_sqrt_psd,
    symmetric_unitary,
    unitarity_defect,
)
from .measures import AtomicMeasure
from .spectral import (
    BlockLayout,
    MultiplicityModel,
    UnitarySpectrum,
    canonical_form,
    check_selfdual,
    diagonalize_unitary,
    multiplicity_model,
)

__all__ = [
    "AbsoluteContinuityError",
    "AntilinearOperator",
    "AtomicMeasure",
    "BlockLayout",
    "ConjugationParams",
    "ConjugationReport",
    "InputError",
    "MembershipError",
    "MultiplicityModel",
    "NotSelfDualError",
    "Tolerance",
    "ToleranceError",
    "UnitarySpectrum",
    "apply",
    "canonical_conjugation",
    "canonical_form",
    "check_selfdual",
    "commutation_defect",
    "compose",
    "decompose",
    "diagonalize_unitary",
    "four_unitary_split",
    "from_params",
    "haar_unitary",
    "hermitian_sqrt_psd",
    "identity_params",
    "is_conjugation",
    "multiplicity_model",
    "plain_conjugation",
    "symmetric_unitary",
    "symmetry_defect",
    "transport",
    "unitarity_defect",
    "verify_membership",
]
