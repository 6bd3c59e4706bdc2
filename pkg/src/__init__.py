"""
logmonoid
Monoids, Kummer homomorphisms, Kummer étale covers of log points and Γ-cohomology
"""

from .covers import LogPoint, enumerate_connected_covers, fiber_functor
from .errors import (
    BoundExceededError,
    InputError,
    LogMonoidError,
    PreconditionError,
    UsageError,
    VerificationError,
)
from .finite_field import Fq
from .gammacoh import GammaModule, koszul_cohomology, nearby_quasi_unipotent, nearby_unipotent
from .kummer import is_kummer, kummer_data, ramification_index
from .lattice import FinAbGroup, GroupHom, IntMatrix, cokernel, smith_normal_form
from .monalg import verify_cech_exact
from .monoids import IntegralMonoid, MonoidHom, saturate

__version__ = "0.1.0"

__all__ = [
    "BoundExceededError",
    "FinAbGroup",
    "Fq",
    "GammaModule",
    "GroupHom",
    "InputError",
    "IntMatrix",
    "IntegralMonoid",
    "LogMonoidError",
    "LogPoint",
    "MonoidHom",
    "PreconditionError",
    "UsageError",
    "VerificationError",
    "cokernel",
    "enumerate_connected_covers",
    "fiber_functor",
    "is_kummer",
    "koszul_cohomology",
    "kummer_data",
    "nearby_quasi_unipotent",
    "nearby_unipotent",
    "ramification_index",
    "saturate",
    "smith_normal_form",
    "verify_cech_exact",
]
