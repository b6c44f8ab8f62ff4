"""Cayley graphs on PGL_2(F_q) modulo its abelian subgroups: construction, spectra
and their prediction from the representation theory of PGL_2(F_q)."""

from .cayley import Graph, build_cusp_graph, family_graph
from .characters import CharacterGroup, Rep
from .field_tower import build_ext, build_field, build_field_q
from .pgl2 import PGL2, SubgroupKind, coset_space
from .predicted import Predictor
from .spectra import match_multiset, spectrum_report, sym_eigenvalues

__all__ = [
    "CharacterGroup",
    "Graph",
    "PGL2",
    "Predictor",
    "Rep",
    "SubgroupKind",
    "build_cusp_graph",
    "build_ext",
    "build_field",
    "build_field_q",
    "coset_space",
    "family_graph",
    "match_multiset",
    "spectrum_report",
    "sym_eigenvalues",
]
