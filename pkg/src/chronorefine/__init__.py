"""Refinement of time models: strict partial orders over instants, compared across
levels of observation, with CCSL-style clock constraints on top."""

from .clocks import (
    Clock,
    ConstraintVerdict,
    PreservationStatus,
    PreservationVerdict,
    check_clock_refinement,
    check_subclock,
    check_subclock_preservation,
    check_union,
    check_union_preservation,
    validate_clock,
)
from .dsl import SpecDocument, SpecParseError, parse, serialize
from .order import (
    PairClassification,
    Relation,
    TimeStructure,
    check_spo,
    classify_pair,
    close_structure,
    enumerate_structures,
    spo_axioms,
    structure,
    validate_spo,
)
from .refinement import (
    Law,
    Predicate,
    RefinementReport,
    check_equivalence,
    check_refinement,
    verify_algebra,
)
from .report import emit_report

__all__ = [
    "Clock",
    "ConstraintVerdict",
    "Law",
    "PairClassification",
    "Predicate",
    "PreservationStatus",
    "PreservationVerdict",
    "RefinementReport",
    "Relation",
    "SpecDocument",
    "SpecParseError",
    "TimeStructure",
    "check_clock_refinement",
    "check_equivalence",
    "check_refinement",
    "check_spo",
    "check_subclock",
    "check_subclock_preservation",
    "check_union",
    "check_union_preservation",
    "classify_pair",
    "close_structure",
    "emit_report",
    "enumerate_structures",
    "parse",
    "serialize",
    "spo_axioms",
    "structure",
    "validate_clock",
    "validate_spo",
    "verify_algebra",
]
