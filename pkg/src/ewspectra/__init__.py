"""Spectral membership tests, certificates, and constructors for
block-positive matrices and entanglement witnesses."""

from .appt import is_appt, is_asep_2n, min_pairing
from .feasibility import (
    Budget,
    MembershipVerdict,
    PairingCertificate,
    PsdCertificate,
    check_pairing_certificate,
    check_psd_certificate,
    decide_conv_dbp,
    sys33_inequalities,
)
from .linalg import (
    BipartiteOperator,
    eigvals_hermitian,
    is_psd,
    min_eig,
    partial_transpose,
    psd_project,
    random_psd,
)
from .orderings import OrderingMap, apply_L, apply_L_adjoint, build_L, enumerate_orderings, realizable
from .qubit_qudit import conv_bp2n_member_c, conv_bp2n_member_d, threshold_bisect
from .rank1 import SchmidtVector, build_rank1_pt, rank1_pt_spectrum
from .spectra import (
    SortedSpectrum,
    Spectrum,
    negative_part_sum,
    partial_sums,
    sort_descending,
    tail_sums_s123,
)
from .two_qubit import construct_bp22, is_bp22_spectrum
from .witnesses import (
    battery_passed,
    necessary_battery,
    probe_block_positivity,
    sample_decomposable,
)

__all__ = [
    "BipartiteOperator",
    "Budget",
    "MembershipVerdict",
    "OrderingMap",
    "PairingCertificate",
    "PsdCertificate",
    "SchmidtVector",
    "SortedSpectrum",
    "Spectrum",
    "apply_L",
    "apply_L_adjoint",
    "battery_passed",
    "build_L",
    "build_rank1_pt",
    "check_pairing_certificate",
    "check_psd_certificate",
    "construct_bp22",
    "conv_bp2n_member_c",
    "conv_bp2n_member_d",
    "decide_conv_dbp",
    "enumerate_orderings",
    "eigvals_hermitian",
    "is_appt",
    "is_asep_2n",
    "is_bp22_spectrum",
    "is_psd",
    "min_eig",
    "min_pairing",
    "necessary_battery",
    "negative_part_sum",
    "partial_sums",
    "partial_transpose",
    "probe_block_positivity",
    "psd_project",
    "random_psd",
    "rank1_pt_spectrum",
    "realizable",
    "sample_decomposable",
    "sort_descending",
    "sys33_inequalities",
    "tail_sums_s123",
    "threshold_bisect",
]

__version__ = "0.1.0"
