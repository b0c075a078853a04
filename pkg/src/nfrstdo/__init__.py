"""Executable NFRsTDO ontology toolkit.

A schema kernel for the built-in term/property/relationship registry, the
``.nfrs`` authoring format, a coded-rule validator, read-only graph queries,
and deterministic JSON/DOT/Turtle exporters, all surfaced by the ``nfrsctl``
command.
"""

from .diagnostics import Diagnostic, Severity, SourceLocation
from .kernel import (
    ArchSpec,
    ComponentRef,
    OntologySchema,
    OntoLevel,
    RelationshipDef,
    SchemaDiff,
    StereotypeRef,
    TermDef,
    builtin_schema,
    diff_schemas,
    lint_architecture,
    parse_arch,
    schema_counts,
    schema_to_json,
    stereotype_chain,
)
from .model import (
    CategoryNode,
    Document,
    EntityNode,
    FocusKind,
    FunctionalRequirementNode,
    NfrKind,
    NfrNode,
    NfrsModelNode,
    NfrsViewModelNode,
    NfrViewNode,
    add_model_edge,
    add_node,
    add_view_edge,
    resolve,
)
from .queries import (
    ClosureResult,
    CoverageReport,
    depends_closure,
    influence_closure,
    leaf_attributes,
    mapping_coverage,
    trace_satisfies,
)
from .textformat import ParseError, ParseFailure, parse, serialize
from .validator import ValidationMode, derive_depends_on, validate

__all__ = [
    "ArchSpec",
    "CategoryNode",
    "ClosureResult",
    "ComponentRef",
    "CoverageReport",
    "Diagnostic",
    "Document",
    "EntityNode",
    "FocusKind",
    "FunctionalRequirementNode",
    "NfrKind",
    "NfrNode",
    "NfrViewNode",
    "NfrsModelNode",
    "NfrsViewModelNode",
    "OntoLevel",
    "OntologySchema",
    "ParseError",
    "ParseFailure",
    "RelationshipDef",
    "SchemaDiff",
    "Severity",
    "SourceLocation",
    "StereotypeRef",
    "TermDef",
    "ValidationMode",
    "add_model_edge",
    "add_node",
    "add_view_edge",
    "builtin_schema",
    "depends_closure",
    "derive_depends_on",
    "diff_schemas",
    "influence_closure",
    "leaf_attributes",
    "lint_architecture",
    "mapping_coverage",
    "parse",
    "parse_arch",
    "resolve",
    "schema_counts",
    "schema_to_json",
    "serialize",
    "stereotype_chain",
    "trace_satisfies",
    "validate",
]
