"""
fdhom Homological Kernel

Minimal projective resolutions and syzygies, Ext groups with Yoneda
products, injective and Gorenstein dimensions, maximal Cohen-Macaulay
detection, stable Hom and rotation maps.
"""

__version__ = "0.1.0"

from homology.ext import ExtClass, ExtGroup, LinearMap, ext, ext_group, yoneda
from homology.gorenstein import GorensteinReport, gorenstein_report, injective_dimension, is_mcm
from homology.resolution import (
    ExceedsBound,
    MinimalResolution,
    Resolution,
    min_resolution,
    minimal_resolution,
    projective_dimension,
    syzygy,
)
from homology.rotation import rotation, rotation_map
from homology.stable import StableHomSpace, stable_hom, sthom_to_ext
from homology.transfer import FunctorTransfer, left_tensor, right_tensor

__all__ = [
    'ExceedsBound',
    'ExtClass',
    'ExtGroup',
    'FunctorTransfer',
    'GorensteinReport',
    'LinearMap',
    'MinimalResolution',
    'Resolution',
    'StableHomSpace',
    'ext',
    'ext_group',
    'gorenstein_report',
    'injective_dimension',
    'is_mcm',
    'left_tensor',
    'min_resolution',
    'minimal_resolution',
    'projective_dimension',
    'right_tensor',
    'rotation',
    'rotation_map',
    'stable_hom',
    'sthom_to_ext',
    'syzygy',
    'yoneda',
]
