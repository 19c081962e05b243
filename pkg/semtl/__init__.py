"""
fdhom Singular Equivalences

Verification of singular equivalences of Morita type with and without
level: the defining conditions, lifting and raising the level, the maps the
bimodules induce on Ext and Hochschild cohomology, and the degreewise
checks that these maps are isomorphisms between Gorenstein algebras.
"""

__version__ = "0.1.0"

from semtl.checks import check_semt, check_semtl
from semtl.data import ConditionResult, SemtlData, SemtlReport, SemtReport, SemtWitness
from semtl.levels import increase_level, lift_semt_to_semtl
from semtl.transfer import ext_transfer, hh_transfer, transfer_ext, transfer_hom
from semtl.verify import (
    DiagramReport,
    ExtIsoReport,
    HhTransferReport,
    spliced_resolution,
    verify_ext_iso,
    verify_fg_transfer_diagram,
    verify_hh_transfer,
)

__all__ = [
    'ConditionResult',
    'DiagramReport',
    'ExtIsoReport',
    'HhTransferReport',
    'SemtReport',
    'SemtWitness',
    'SemtlData',
    'SemtlReport',
    'check_semt',
    'check_semtl',
    'ext_transfer',
    'hh_transfer',
    'increase_level',
    'lift_semt_to_semtl',
    'spliced_resolution',
    'transfer_ext',
    'transfer_hom',
    'verify_ext_iso',
    'verify_fg_transfer_diagram',
    'verify_hh_transfer',
]
