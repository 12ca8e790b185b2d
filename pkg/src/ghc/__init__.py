"""Exact generalised Hermite invariants of rational quadratic forms."""

from .algebraic import PowerProduct
from .enumeration import CertifiedLimitError, hermite_invariant, kz_profile, minimum
from .forms import FlagVector, GramForm, HumbertForm, evaluate, invariant
from .partitions import Partition, Tableau, complement, conjugate, enumerate_ssyt
from .voronoi import minimal_set, voronoi_report

__version__ = "0.1.0"

__all__ = [
    "CertifiedLimitError",
    "FlagVector",
    "GramForm",
    "HumbertForm",
    "Partition",
    "PowerProduct",
    "Tableau",
    "complement",
    "conjugate",
    "enumerate_ssyt",
    "evaluate",
    "hermite_invariant",
    "invariant",
    "kz_profile",
    "minimal_set",
    "minimum",
    "voronoi_report",
]
