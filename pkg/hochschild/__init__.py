"""
fdhom Hochschild Cohomology

HH^*(Λ) through the enveloping algebra, the bar-complex cross-check, the
characteristic maps φ_x, graded slices with product tables, the tensor
transfer along bimodule syzygies and the truncated (Fg) check.
"""

__version__ = "0.1.0"

from hochschild.bar import BarComplex, bar_cochain_oracle
from hochschild.fg import FgReport, fg_check
from hochschild.graded import GradedRngSlice, graded_slice
from hochschild.hh import center, hh, hh_dims
from hochschild.phi import phi, phi_map
from hochschild.transfer import TransferReport, tensor_transfer_check

__all__ = [
    'BarComplex',
    'FgReport',
    'GradedRngSlice',
    'TransferReport',
    'bar_cochain_oracle',
    'center',
    'fg_check',
    'graded_slice',
    'hh',
    'hh_dims',
    'phi',
    'phi_map',
    'tensor_transfer_check',
]
