"""Builders for the example rings and pairs."""
from .free import FreeProduct, build_free_product, factor_subgroup
from .groups import (GroupTable, InvalidTable, build_pointed_group, cyclic_group, dihedral_group,
                     symmetric_group, trivial_group)
from .hnn import (HnnRecipe, HnnRing, InvalidTheta, LengthUnsupported, baumslag_solitar_recipe,
                  build_hnn_pair, explicit_recipe, hnn_closed_forms, profinite_recipe,
                  su2_center_recipe)
from .lazy import SU2Dual, ZRing, build_su2_dual, build_z, multiples, so3_in_su2
from .products import ProductRing, RestrictedProduct, build_product, build_restricted_product
from .rep import build_rep_ring, dual_q8, dual_s3, dual_z2, ring_from_dict, ring_to_dict

__all__ = [n for n in dir() if not n.startswith("_")]
