"""Exact spectra of integral circulant graphs and exhaustive isospectrality checks."""
from .errors import BudgetExceeded, DomainError
from .icg import (
    DivisorSet,
    RamanujanTable,
    Spectrum,
    complement,
    eigenvalue_at_divisor,
    is_integral_connection_set,
    level_set,
    ramanujan_table,
    spectra_equal,
    spectrum,
)
from .kernels import BACKEND as KERNEL_BACKEND
from .numtheory import factorize, gcd_orbit, mobius, ramanujan_sum, totient

__version__ = "0.1.0"
