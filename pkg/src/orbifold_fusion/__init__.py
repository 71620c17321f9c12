"""Irreducible modules, quantum dimensions and fusion rules for Z2-orbifolds
of lattice vertex operator algebras."""

from .builders import InputDocument, build_example, parse_input
from .fusion import (
    FusionSum,
    QDim,
    compute_R_sigma,
    fuse,
    fusion_table,
    global_dimension,
    qdim,
    twisted_qdim_square,
    verify_ring,
)
from .identifiers import format_label, parse_label
from .modules import Orbifold, Twisted, Type1, Type2, build_orbifold

__all__ = [
    "FusionSum",
    "InputDocument",
    "Orbifold",
    "QDim",
    "Twisted",
    "Type1",
    "Type2",
    "build_example",
    "build_orbifold",
    "compute_R_sigma",
    "format_label",
    "fuse",
    "fusion_table",
    "global_dimension",
    "parse_input",
    "parse_label",
    "qdim",
    "twisted_qdim_square",
    "verify_ring",
]
