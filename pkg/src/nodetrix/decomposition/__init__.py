"""Planarity, block-cut trees, SPQ and SPQR decompositions."""

from .bctree import BlockCutTree, Disconnected, biconnected_components, block_cut_tree, connected_components
from .embedding import CombinatorialEmbedding, NonPlanar, is_planar, is_planar_rotation, planar_embed
from .spq import NotSeriesParallel, SpqNode, SpqTree, is_partial_2_tree, spq_decompose
from .spqr import SpqrNode, SpqrTree, spqr_decompose

__all__ = [
    "BlockCutTree",
    "CombinatorialEmbedding",
    "Disconnected",
    "NonPlanar",
    "NotSeriesParallel",
    "SpqNode",
    "SpqTree",
    "SpqrNode",
    "SpqrTree",
    "biconnected_components",
    "block_cut_tree",
    "connected_components",
    "is_partial_2_tree",
    "is_planar",
    "is_planar_rotation",
    "planar_embed",
    "spq_decompose",
    "spqr_decompose",
]
