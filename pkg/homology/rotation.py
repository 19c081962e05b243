"""
Rotation maps Ext^n(U, V) -> Ext^n(Ω^i U, Ω^i V).

The class is multiplied by the truncation class [π_i] ∈ Ext^i(V, Ω^i V),
landing in Ext^{n+i}(U, Ω^i V). A cocycle P_{n+i} -> Ω^i V on the resolution
of U is literally a degree-n cocycle on the shifted resolution P_{•+i}, which
resolves Ω^i U, so no lifting problem is solved for the inverse of π_i^*.
"""

import logging
from typing import Optional

from homology.ext import ExtClass, ExtGroup, LinearMap, ext_group, map_on_basis, transport, yoneda
from homology.resolution import Resolution, minimal_resolution

logger = logging.getLogger(__name__)


def truncation_class(res: Resolution, i: int) -> ExtClass:
    """[π_i] in Ext^i(V, Ω^i V), computed on res."""
    group = ext_group(res, res.syzygy(i), i)
    return group.class_of(res.cover(i))


def rotation(x: ExtClass, i: int, res_u: Optional[Resolution] = None,
             res_v: Optional[Resolution] = None) -> ExtClass:
    """
    ρ_i(x) for x ∈ Ext^n(U, V), living on res_u.shifted(i) with target
    res_v.syzygy(i).

    Args:
        x: The class to rotate
        i: Rotation index, 0 <= i < n
        res_u: Resolution of U (default: minimal)
        res_v: Resolution of V (default: minimal)

    Raises:
        IndexError: If i is negative or not below the degree
    """
    n = x.degree
    if i < 0 or (i > 0 and i >= n):
        raise IndexError(f"Rotation index {i} out of range for degree {n}")
    res_u = minimal_resolution(x.group.source) if res_u is None else res_u
    res_v = minimal_resolution(x.group.target) if res_v is None else res_v
    x = transport(x, res_u)
    if i == 0:
        return x
    product = yoneda(truncation_class(res_v, i), x)
    group = ext_group(res_u.shifted(i), res_v.syzygy(i), n)
    return group.class_of(product.cocycle())


def rotation_map(group: ExtGroup, i: int, res_v: Optional[Resolution] = None) -> LinearMap:
    """Matrix of ρ_i on the representative bases, source computed on group's resolution."""
    res_u = group.resolution
    res_v = minimal_resolution(group.target) if res_v is None else res_v
    if i == 0:
        target = group
    else:
        target = ext_group(res_u.shifted(i), res_v.syzygy(i), group.degree)
    return map_on_basis(group, target, lambda c: rotation(c, i, res_u, res_v), name=f"rho_{i}")
