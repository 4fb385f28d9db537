"""Persistence descriptors for vertex-colored graphs: PH, RePHINE, SpectRe and LS."""
from ._backend import BACKEND
from .descriptors import (
    Diagram,
    canonicalize,
    compute_ls,
    compute_ph_diagram,
    compute_rephine,
    compute_spectre,
    diagram_to_json,
    multiset_equal,
)
from .filtration import ColorFiltrationSpec, degree_filtration, induce
from .graph import ColoredGraph, VertexPermutation, permute
from .metrics import bott, d_B_R, d_B_SpecR
from .spectral import SpectrumPolicy

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "ColorFiltrationSpec", "ColoredGraph", "Diagram", "SpectrumPolicy",
    "VertexPermutation", "bott", "canonicalize", "compute_ls", "compute_ph_diagram",
    "compute_rephine", "compute_spectre", "d_B_R", "d_B_SpecR", "degree_filtration",
    "diagram_to_json", "induce", "multiset_equal", "permute",
]
