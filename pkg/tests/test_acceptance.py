"""Acceptance gate: one test per shipped criterion, each printing a PASS line.

Run with ``python3 -m pytest tests/test_acceptance.py -v -s`` to see the
per-criterion lines.
"""

from __future__ import annotations

import random
import time

from conftest import fixture_path, load_fixture
from docgen import (
    ALL_NODE_KINDS,
    ALL_RELATIONSHIP_KINDS,
    node_kinds_present,
    oracle_leaf_attributes,
    oracle_reachable,
    random_document,
    relationship_kinds_present,
)
from nfrstdo.cli import main
from nfrstdo.diagnostics import Severity
from nfrstdo.kernel import builtin_schema, diff_schemas, lint_architecture, parse_arch
from nfrstdo.model import NfrKind
from nfrstdo.queries import depends_closure, influence_closure, leaf_attributes
from nfrstdo.textformat import parse, serialize
from nfrstdo.validator import ValidationMode, validate
from test_kernel import RELATIONSHIP_TABLE
from test_validator import RULE_MUTATIONS


def _passed(number: int, label: str) -> None:
    print(f"ACCEPTANCE {number} {label}: PASS")


def test_criterion_1_schema_counts(capsys):
    started = time.perf_counter()
    code = main(["schema", "counts", "--version", "1.2"])
    elapsed = time.perf_counter() - started
    out = capsys.readouterr().out
    assert code == 0
    assert out == "terms=15 properties=18 relationships=12\n"
    assert elapsed < 1.0
    with capsys.disabled():
        _passed(1, "schema counts 15/18/12")


def test_criterion_2_cardinality_fidelity():
    schema = builtin_schema("1.2")
    matched = 0
    for name, source, target, min_count, max_count in RELATIONSHIP_TABLE:
        hits = [
            r
            for r in schema.relationships
            if (r.name, r.source_term, r.target_term, r.min_count, r.max_count)
            == (name, source, target, min_count, max_count)
        ]
        assert len(hits) == 1, f"cardinality mismatch for {name} ({source} -> {target})"
        matched += 1
    assert matched == 12
    _passed(2, "relationship cardinalities 12/12")


def test_criterion_3_version_diff_regression():
    diff = diff_schemas(builtin_schema("1.1"), builtin_schema("1.2"))
    assert diff.added_terms == ("Functional Requirement",)
    assert {r[0] for r in diff.added_relationships} == {"relates with", "is mapped to", "satisfies"}
    assert diff.renamed_relationships == (
        ("refers to", "refers to particulars", "Non-Functional Requirement", "Evaluable Entity"),
        ("refers to", "refers to universals", "Non-Functional Requirement", "Evaluable Entity Category"),
    )
    changes = {(c.term, c.change, c.stereotype.term) for c in diff.stereotype_changes}
    assert ("Non-Functional Requirement", "removed", "Quantity-related Assertion") in changes
    assert ("Evaluable Entity Category", "removed", "Thing Category") in changes
    assert ("Evaluable Entity Category", "added", "Entity Category") in changes
    # nothing spurious in any delta class
    assert diff.removed_terms == ()
    assert diff.removed_relationships == ()
    assert len(diff.added_relationships) == 3
    assert len(diff.stereotype_changes) == 4
    _passed(3, "version diff, six delta classes")


def test_criterion_4_quality_views_chain():
    doc = load_fixture("quality_views_chain.nfrs")
    vm = "Organization Quality Views"
    downstream = influence_closure(doc, vm, "Resource Quality View")
    assert list(downstream.reached) == [
        "Process Quality View",
        "Software Product Quality View",
        "System Quality View",
        "System-in-Use Quality View",
    ]
    upstream = depends_closure(doc, vm, "System-in-Use Quality View")
    assert list(upstream.reached) == [
        "System Quality View",
        "Software Product Quality View",
        "Process Quality View",
        "Resource Quality View",
    ]
    _passed(4, "quality views chain closures")


ARCH_MUTATIONS = {
    "L-001": "component ThingFOBis level Foundational",
    "L-002": "enriches SituationCO <- MetricsLDO",
    "L-003": "peer ThingFO ThingFO",
}


def test_criterion_5_rule_mutation_suite():
    started = time.perf_counter()
    passed = 0

    for code in [f"R-{i:03d}" for i in range(1, 18)]:
        source, mode = RULE_MUTATIONS[code]
        diagnostics = validate(parse(source), mode)
        produced = [d.code for d in diagnostics]
        errors = {d.code for d in diagnostics if d.severity is Severity.ERROR}
        assert code in produced, f"{code} not produced"
        assert errors <= {code}, f"{code} fixture produced unrelated errors {errors}"
        passed += 1

    reference = fixture_path("fcd_ontoarch.arch").read_text(encoding="utf-8")
    for code, extra in ARCH_MUTATIONS.items():
        diagnostics = lint_architecture(parse_arch(reference + extra + "\n"))
        assert [d.code for d in diagnostics] == [code]
        passed += 1

    elapsed = time.perf_counter() - started
    assert passed == 20
    assert elapsed < 10.0
    _passed(5, f"rule mutations {passed}/20")


def test_criterion_6_round_trip_200_documents():
    node_kinds: set[str] = set()
    relationship_kinds: set[str] = set()
    for seed in range(200):
        doc = random_document(random.Random(seed))
        node_kinds |= node_kinds_present(doc)
        relationship_kinds |= relationship_kinds_present(doc)
        text = serialize(doc)
        reparsed = parse(text)
        assert reparsed == doc, f"round trip mismatch at seed {seed}"
        assert serialize(reparsed) == text, f"double export differs at seed {seed}"
    assert node_kinds == ALL_NODE_KINDS
    assert relationship_kinds == ALL_RELATIONSHIP_KINDS
    _passed(6, "round trip 200/200 with full kind coverage")


def test_criterion_7_closure_oracle_100_graphs():
    from test_queries import _random_view_graph

    for seed in range(100):
        doc, names, edges = _random_view_graph(random.Random(seed))
        reversed_edges = [(b, a) for a, b in edges]
        for origin in names:
            forward = list(influence_closure(doc, "VM", origin).reached)
            assert forward == oracle_reachable(edges, origin), f"influence mismatch seed {seed}"
            backward = list(depends_closure(doc, "VM", origin).reached)
            assert backward == oracle_reachable(reversed_edges, origin), f"depends mismatch seed {seed}"
    _passed(7, "closure oracle 100/100 graphs")


def test_criterion_8_product_quality_fixture():
    doc = load_fixture("software_product_quality.nfrs")
    diagnostics = validate(doc, ValidationMode.MODEL)
    assert [d for d in diagnostics if d.severity is Severity.ERROR] == []
    model_name = "Software Product Quality Model"
    model = doc.models[model_name]
    rollup = leaf_attributes(doc, model_name, "Product Quality")
    assert rollup == oracle_leaf_attributes(model, "Product Quality")
    every_attribute = sorted(n.name for n in model.nfrs.values() if n.kind is NfrKind.ATTRIBUTE)
    assert rollup == every_attribute
    _passed(8, "hierarchical product quality fixture")
