"""Dispersive and longitudinal readout of transmon, Majorana-transmon and Majorana-box qubits."""

from ._kernels import available_backends, backend_name, set_backend
from .box import MBParams, box_couplings, chi_mb_analytic, chi_mb_numeric
from .engine import dispersive_shifts, two_level_chi
from .errors import DomainError, NumericError, ResonantPairError
from .operators import ChargeBasis
from .readout import (
    DispersiveBudgetParams,
    LongitudinalBudgetParams,
    fidelity_from_snr,
    snr,
    time_to_fidelity,
)
from .transmon import MTParams, chi_mt_analytic, chi_mt_numeric, chi_t_analytic, chi_t_numeric

__version__ = "0.1.0"
