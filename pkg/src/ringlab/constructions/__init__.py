"""Builders for the ring families: cyclic rings, finite fields, matrix and
formal matrix rings, Morita contexts, group rings, endomorphism rings of
finite abelian groups, idealizations and tensor products of algebras."""

from .basic import CyclicRing, GaloisField, Idealization, cyclic_ring, galois_field, idealization
from .endo import AbelianGroupSpec, EndoRing, endo_ring, endomorphism_oracle, oracle_isomorphism
from .formats import FormatError, format_algebra, format_morita, parse_algebra, parse_morita
from .group_ring import AugmentationData, GroupRing, group_ring
from .groups import GroupTable, abelian_p_groups, group_table
from .matrix import (FormalMatrixRing, MatrixRing, TwistedMatrixRing, elementwise_equal,
                     formal_matrix_s, matrix_ring)
from .morita import (MoritaData, MoritaRing, morita_from_ideals, morita_ring, trace_report,
                     validate_morita)
from .tensor import (AlgebraPresentation, AlgebraRing, TensorRing, algebra_ring,
                     combined_exponent_check, cyclic_presentation, presentation_of_field,
                     tensor_product_algebra, truncated_poly_presentation)

__all__ = [
    "AbelianGroupSpec", "AlgebraPresentation", "AlgebraRing", "AugmentationData", "CyclicRing",
    "EndoRing", "FormalMatrixRing", "FormatError", "GaloisField", "GroupRing", "GroupTable",
    "Idealization", "MatrixRing", "MoritaData", "MoritaRing", "TensorRing", "TwistedMatrixRing",
    "abelian_p_groups", "algebra_ring", "combined_exponent_check", "cyclic_presentation",
    "cyclic_ring", "elementwise_equal", "endo_ring", "endomorphism_oracle", "format_algebra",
    "format_morita", "formal_matrix_s", "galois_field", "group_ring", "group_table",
    "idealization", "matrix_ring", "morita_from_ideals", "morita_ring", "oracle_isomorphism",
    "parse_algebra", "parse_morita", "presentation_of_field", "tensor_product_algebra",
    "trace_report", "truncated_poly_presentation", "validate_morita",
]
