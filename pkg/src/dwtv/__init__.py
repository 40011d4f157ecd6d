"""Exact Dijkgraaf-Witten and Turaev-Viro invariants of triangulated 3-manifolds."""
from . import cocycles, colorings, complexes, cyclotomics, groups, statesum, tqft
from .cocycles import Cochain2, Cochain3, check_cocycle, sn_cocycle, trivial_cocycle, zn_cocycle
from .cyclotomics import CycNumber
from .groups import FiniteGroup, cyclic, product, symmetric
from .statesum import GroupCategory, dw_invariant, dw_relative, tv_invariant

__version__ = "0.1.0"
