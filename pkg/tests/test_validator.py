from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from docgen import random_document
from nfrstdo.diagnostics import Severity
from nfrstdo.model import NfrsViewModelNode, NfrViewNode, FocusKind
from nfrstdo.textformat import parse
from nfrstdo.validator import ValidationMode, derive_depends_on, depends_contradictions, validate

QUALITY_FOCUS_MODEL = 'model "M" { characteristic "F" { definition: "d" focus: quality } }\n'
COST_FOCUS_MODEL = 'model "MC" { characteristic "FC" { definition: "d" focus: cost } }\n'
CATEGORY = 'category "C" { }\n'

# One mutation per rule: the source must produce the code at least once and
# no other error-severity code. Warnings from unrelated rules are fine.
RULE_MUTATIONS = {
    "R-REF": (
        CATEGORY
        + 'entity "E" { belongs_to: "C" }\n'
        + 'model "M" {\n  attribute "A" { definition: "d" }\n  refers_to_entity "Ghost" -> "E"\n}\n',
        ValidationMode.MODEL,
    ),
    "R-001": ('entity "E" { belongs_to: "Nope" }\n', ValidationMode.MODEL),
    "R-002": (
        'model "M" {\n  attribute "A1" { definition: "d" }\n  attribute "A2" { definition: "d" }\n'
        '  combines "A1" -> "A2"\n}\n',
        ValidationMode.MODEL,
    ),
    "R-003": (
        'model "M" {\n  attribute "A1" { definition: "d" }\n  statement_item "S1" { declaration: "d" }\n'
        '  combines "A1" -> "S1"\n}\n',
        ValidationMode.MODEL,
    ),
    "R-004": (
        QUALITY_FOCUS_MODEL
        + 'view_model "VM" {\n  view "V" { kind: quality category: "Nope" focus: "M" . "F" }\n}\n',
        ValidationMode.MODEL,
    ),
    "R-005": (
        CATEGORY
        + QUALITY_FOCUS_MODEL
        + COST_FOCUS_MODEL
        + 'view_model "VM" {\n'
        '  view "Q" { kind: quality category: "C" focus: "M" . "F" }\n'
        '  view "K" { kind: cost category: "C" focus: "MC" . "FC" }\n'
        '  depends_on "K" -> "Q"\n}\n',
        ValidationMode.MODEL,
    ),
    "R-006": (
        CATEGORY
        + QUALITY_FOCUS_MODEL
        + COST_FOCUS_MODEL
        + 'view_model "VM" {\n'
        '  view "Q" { kind: quality category: "C" focus: "M" . "F" }\n'
        '  view "K" { kind: cost category: "C" focus: "MC" . "FC" }\n'
        '  influences "Q" -> "K"\n}\n',
        ValidationMode.MODEL,
    ),
    "R-006b": (
        CATEGORY
        + 'model "M1" { characteristic "F1" { definition: "d" focus: quality } }\n'
        + 'model "M2" { characteristic "F2" { definition: "d" focus: quality } }\n'
        + 'view_model "VM" {\n'
        '  view "Q1" { kind: quality category: "C" focus: "M1" . "F1" }\n'
        '  view "Q2" { kind: quality category: "C" focus: "M2" . "F2" }\n'
        '  depends_on "Q2" -> "Q1"\n}\n',
        ValidationMode.MODEL,
    ),
    "R-007": (
        CATEGORY
        + 'model "M" { characteristic "F" { definition: "d" } }\n'
        + 'view_model "VM" {\n  view "V" { kind: quality category: "C" focus: "M" . "F" }\n}\n',
        ValidationMode.MODEL,
    ),
    "R-008": (
        'model "M" {\n  attribute "A1" { definition: "d" }\n  attribute "A2" { definition: "d" }\n'
        '  maps "A1" -> "A2"\n}\n',
        ValidationMode.MODEL,
    ),
    "R-009": ('model "M" { attribute "A" { definition: "d" } }\n', ValidationMode.INSTANCE),
    "R-010": (
        'model "M" {\n  attribute "A" { definition: "d" }\n  refers_to_category "A" -> "Nope"\n}\n',
        ValidationMode.MODEL,
    ),
    "R-011": (
        'model "M" {\n  attribute "A" { definition: "d" }\n  relates "A" <-> "A"\n}\n',
        ValidationMode.MODEL,
    ),
    "R-012": (
        'model "M" {\n  attribute "A" { definition: "d" }\n  satisfies "A" -> "Nope"\n}\n',
        ValidationMode.MODEL,
    ),
    "R-013": (
        'model "M" {\n  characteristic "F1" { definition: "d" focus: quality }\n'
        '  characteristic "F2" { definition: "d" focus: cost }\n}\n',
        ValidationMode.MODEL,
    ),
    "R-014": (
        CATEGORY
        + COST_FOCUS_MODEL
        + 'view_model "VM" {\n  view "V" { kind: quality category: "C" focus: "MC" . "FC" }\n}\n',
        ValidationMode.MODEL,
    ),
    "R-015": (
        'category "P" { }\ncategory "C" { parent: "P" }\n'
        + QUALITY_FOCUS_MODEL
        + 'view_model "VM" {\n  view "V" { kind: quality category: "C" focus: "M" . "F" }\n}\n',
        ValidationMode.MODEL,
    ),
    "R-016": (
        CATEGORY
        + 'model "M1" { characteristic "F1" { definition: "d" focus: quality } }\n'
        + 'model "M2" { characteristic "F2" { definition: "d" focus: quality } }\n'
        + 'view_model "VM" {\n'
        '  view "Q1" { kind: quality category: "C" focus: "M1" . "F1" }\n'
        '  view "Q2" { kind: quality category: "C" focus: "M2" . "F2" }\n'
        '  influences "Q1" -> "Q2"\n  influences "Q2" -> "Q1"\n}\n',
        ValidationMode.MODEL,
    ),
    "R-017": (
        'model "M" {\n  characteristic "C1" { definition: "d" }\n  attribute "A" { definition: "d" }\n'
        '  subcharacteristic "A" of "C1"\n}\n',
        ValidationMode.MODEL,
    ),
}


def error_codes(diagnostics) -> set[str]:
    return {d.code for d in diagnostics if d.severity is Severity.ERROR}


@pytest.mark.parametrize("code", sorted(RULE_MUTATIONS))
def test_rule_mutation_is_exclusive(code):
    source, mode = RULE_MUTATIONS[code]
    diagnostics = validate(parse(source), mode)
    produced = [d.code for d in diagnostics]
    assert code in produced
    assert error_codes(diagnostics) <= {code}


def test_chain_fixture_has_zero_diagnostics(chain_doc):
    assert validate(chain_doc, ValidationMode.MODEL) == []
    assert validate(chain_doc, ValidationMode.INSTANCE) == []


def test_product_quality_fixture_clean_in_model_mode(product_quality_doc):
    diagnostics = validate(product_quality_doc, ValidationMode.MODEL)
    assert error_codes(diagnostics) == set()


def test_cost_view_receiving_influences_is_r006():
    source, _ = RULE_MUTATIONS["R-006"]
    diagnostics = validate(parse(source), ValidationMode.MODEL)
    assert [d.code for d in diagnostics if d.severity is Severity.ERROR] == ["R-006"]


def test_r009_is_warning_in_model_mode_error_in_instance_mode():
    doc = parse('model "M" { attribute "A" { definition: "d" } }')
    model_diags = validate(doc, ValidationMode.MODEL)
    assert [(d.code, d.severity) for d in model_diags] == [("R-009", Severity.WARNING)]
    instance_diags = validate(doc, ValidationMode.INSTANCE)
    assert [(d.code, d.severity) for d in instance_diags] == [("R-009", Severity.ERROR)]


def test_unresolved_view_focus_only_errs_in_instance_mode():
    doc = parse(
        CATEGORY + 'view_model "VM" { view "V" { kind: quality category: "C" focus: "M" . "F" } }'
    )
    assert validate(doc, ValidationMode.MODEL) == []
    assert [d.code for d in validate(doc, ValidationMode.INSTANCE)] == ["R-007"]


@pytest.mark.parametrize("code", sorted(RULE_MUTATIONS))
def test_mode_monotonicity(code):
    source, _ = RULE_MUTATIONS[code]
    doc = parse(source)
    model_errors = {
        (d.code, d.subject) for d in validate(doc, ValidationMode.MODEL) if d.severity is Severity.ERROR
    }
    instance_errors = {
        (d.code, d.subject) for d in validate(doc, ValidationMode.INSTANCE) if d.severity is Severity.ERROR
    }
    assert model_errors <= instance_errors


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_mode_monotonicity_generated(seed):
    doc = random_document(random.Random(seed))
    model_errors = {
        (d.code, d.subject) for d in validate(doc, ValidationMode.MODEL) if d.severity is Severity.ERROR
    }
    instance_errors = {
        (d.code, d.subject) for d in validate(doc, ValidationMode.INSTANCE) if d.severity is Severity.ERROR
    }
    assert model_errors <= instance_errors


def test_diagnostics_deterministic_and_sorted(product_quality_doc):
    source, _ = RULE_MUTATIONS["R-REF"]
    doc = parse(source)
    first = validate(doc, ValidationMode.INSTANCE)
    second = validate(doc, ValidationMode.INSTANCE)
    assert first == second
    keys = [(d.code, d.subject, d.message) for d in first]
    assert keys == sorted(keys)


def test_diagnostic_locations_point_at_source():
    source = 'entity "E" { belongs_to: "Nope" }\n'
    (diag,) = validate(parse(source), ValidationMode.MODEL)
    assert diag.location is not None
    assert diag.location.line == 1
    assert diag.subject == "entity:E"


def test_subchar_cycle_is_r013():
    source = (
        'model "M" {\n'
        '  characteristic "A" { definition: "d" }\n'
        '  characteristic "B" { definition: "d" }\n'
        '  subcharacteristic "A" of "B"\n'
        '  subcharacteristic "B" of "A"\n'
        "}\n"
    )
    diagnostics = validate(parse(source), ValidationMode.MODEL)
    assert error_codes(diagnostics) == {"R-013"}


def test_multi_parent_is_r013():
    source = (
        'model "M" {\n'
        '  characteristic "P1" { definition: "d" }\n'
        '  characteristic "P2" { definition: "d" }\n'
        '  characteristic "C" { definition: "d" }\n'
        '  subcharacteristic "C" of "P1"\n'
        '  subcharacteristic "C" of "P2"\n'
        "}\n"
    )
    assert error_codes(validate(parse(source), ValidationMode.MODEL)) == {"R-013"}


def test_focus_with_parent_is_r013():
    source = (
        'model "M" {\n'
        '  characteristic "P" { definition: "d" }\n'
        '  characteristic "F" { definition: "d" focus: quality }\n'
        '  subcharacteristic "F" of "P"\n'
        "}\n"
    )
    assert error_codes(validate(parse(source), ValidationMode.MODEL)) == {"R-013"}


# --- depends_on derivation ------------------------------------------------------


def _vm(influences=(), depends=()) -> NfrsViewModelNode:
    views = {}
    for name in {n for e in (*influences, *depends) for n in e}:
        views[name] = NfrViewNode(name=name, kind=FocusKind.QUALITY, category="C", focus=("M", "F"))
    return NfrsViewModelNode(name="VM", views=views, influences_edges=tuple(influences),
                             depends_on_edges=tuple(depends))


def test_derive_depends_on_inverts_influences():
    vm = derive_depends_on(_vm(influences=[("Resource", "Process")]))
    assert vm.depends_on_edges == (("Process", "Resource"),)


def test_derive_depends_on_empty():
    vm = derive_depends_on(_vm())
    assert vm.depends_on_edges == ()
    assert vm.influences_edges == ()


def test_derive_depends_on_is_idempotent():
    vm = _vm(influences=[("A", "B"), ("B", "C")], depends=[("B", "A")])
    once = derive_depends_on(vm)
    assert derive_depends_on(once) == once


def test_contradiction_detected_by_brute_force_inverse():
    vm = _vm(influences=[("A", "B")], depends=[("C", "A")])
    assert depends_contradictions(vm) == [("C", "A")]
    # brute force: explicit depends minus the inverted influences set
    explicit = set(vm.depends_on_edges)
    inverse = {(b, a) for a, b in vm.influences_edges}
    assert set(depends_contradictions(vm)) == explicit - inverse


def test_chain_fixture_depends_derivation(chain_doc):
    vm = derive_depends_on(chain_doc.view_models["Organization Quality Views"])
    assert ("Process Quality View", "Resource Quality View") in vm.depends_on_edges
    assert len(vm.depends_on_edges) == 4
