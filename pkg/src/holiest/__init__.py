"""Holiest shortest paths on surface-embedded graphs.

Lexicographic cost perturbations that make shortest paths and minimum-cost
flows unique on graphs of any genus, and the multiple-source shortest path
engines built on top of them.
"""

from .distances import MonotoneCorrespondence, mssp_distances, source_sequence
from .embedding import EmbeddedGraph, build_embedding, genus, load_emg, read_emg, write_emg
from .errors import HoliestError, InputError, InternalInvariantViolation, TieDetected
from .homology import homology_signatures, tree_cotree
from .mssp_linear import LinearMSSP, mssp_linear
from .mssp_ref import PivotEvent, ReferenceMSSP, mssp_costs, mssp_reference, trace_lines
from .perturb import MODIFIED, STANDARD, CostTable, PerturbedCost, cotree_drainage, perturb_costs
from .sssp import HolyTree, holiest_sssp, holiest_tree_small_int

__all__ = [
    "MODIFIED",
    "STANDARD",
    "CostTable",
    "EmbeddedGraph",
    "HolyTree",
    "HoliestError",
    "InputError",
    "InternalInvariantViolation",
    "LinearMSSP",
    "MonotoneCorrespondence",
    "PerturbedCost",
    "PivotEvent",
    "ReferenceMSSP",
    "TieDetected",
    "build_embedding",
    "cotree_drainage",
    "genus",
    "holiest_sssp",
    "holiest_tree_small_int",
    "homology_signatures",
    "load_emg",
    "mssp_costs",
    "mssp_distances",
    "mssp_linear",
    "mssp_reference",
    "perturb_costs",
    "read_emg",
    "source_sequence",
    "trace_lines",
    "tree_cotree",
    "write_emg",
]

__version__ = "0.1.0"
