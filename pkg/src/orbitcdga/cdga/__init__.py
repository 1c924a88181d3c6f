"""Presented CDGAs over Q: elements, maps, structural homology and the truncated oracle."""

from .algebra import (
    CdgaMap,
    Element,
    PresentedCdga,
    Signature,
    ValidationReport,
    identity_map,
    inclusion_map,
    is_cdga_map,
    tensor,
    unit_cdga,
    validate_cdga,
)
from .homology import (
    RATIONALS,
    ZERO_RING,
    FieldIdentification,
    GradedRingValue,
    HomologyAnalysis,
    KoszulCertificate,
    RootWitness,
    acyclic_by_unit_boundary,
    analyze,
    complete_intersection_certificate,
    cyclo_to_element,
    formal_cdga,
    homology_of,
    identify_field,
    minimal_polynomial,
    primitive_root_witness,
    quotient_to_h0_map,
)
from .oracle import OracleReport, truncated_homology_oracle, weight_function

__all__ = [
    "RATIONALS",
    "ZERO_RING",
    "CdgaMap",
    "Element",
    "FieldIdentification",
    "GradedRingValue",
    "HomologyAnalysis",
    "KoszulCertificate",
    "OracleReport",
    "PresentedCdga",
    "RootWitness",
    "Signature",
    "ValidationReport",
    "acyclic_by_unit_boundary",
    "analyze",
    "complete_intersection_certificate",
    "cyclo_to_element",
    "formal_cdga",
    "homology_of",
    "identify_field",
    "identity_map",
    "inclusion_map",
    "is_cdga_map",
    "minimal_polynomial",
    "primitive_root_witness",
    "quotient_to_h0_map",
    "tensor",
    "truncated_homology_oracle",
    "unit_cdga",
    "validate_cdga",
    "weight_function",
]
