"""Constraint validation over parsed documents.

Every finding carries a stable ``R-###`` code. The catalog distinguishes
unresolved names (R-REF, or the rule owning that reference) from resolved
names of the wrong kind, so one authoring mistake maps to exactly one code.

Two modes reflect two workflows: Model mode validates a reusable
specification that may not name concrete entities yet, Instance mode holds a
document to the full letter of the cardinalities. Model-mode errors are
always a subset of instance-mode errors.
"""

from __future__ import annotations

from dataclasses import replace
from enum import Enum

from .diagnostics import Diagnostic, Severity, SourceLocation, sort_diagnostics
from .model import (
    Document,
    FocusKind,
    NfrKind,
    NfrsModelNode,
    NfrsViewModelNode,
)


class ValidationMode(Enum):
    MODEL = "model"
    INSTANCE = "instance"


def derive_depends_on(vm: NfrsViewModelNode) -> NfrsViewModelNode:
    """Complete a view model's depends_on set with the inverse of influences.

    Explicit depends_on edges are kept; the result is idempotent under
    re-derivation. Explicit edges that mirror no influences edge are the
    contradictions R-006b reports.
    """
    derived = set(vm.depends_on_edges) | {(b, a) for a, b in vm.influences_edges}
    return replace(vm, depends_on_edges=tuple(sorted(derived)))


def depends_contradictions(vm: NfrsViewModelNode) -> list[tuple[str, str]]:
    """Explicit depends_on edges whose mirror influences edge is missing."""
    influences = set(vm.influences_edges)
    return sorted((b, a) for b, a in vm.depends_on_edges if (a, b) not in influences)


class _Sink:
    def __init__(self, doc: Document) -> None:
        self.doc = doc
        self.diagnostics: list[Diagnostic] = []

    def add(self, code: str, severity: Severity, message: str, subject: str, loc_key: tuple | None) -> None:
        location: SourceLocation | None = None
        if loc_key is not None:
            location = self.doc.source_locations.get(loc_key)
        self.diagnostics.append(Diagnostic(code, severity, message, subject, location))

    def error(self, code: str, message: str, subject: str, loc_key: tuple | None) -> None:
        self.add(code, Severity.ERROR, message, subject, loc_key)

    def warning(self, code: str, message: str, subject: str, loc_key: tuple | None) -> None:
        self.add(code, Severity.WARNING, message, subject, loc_key)


def _cycle_groups(edges: list[tuple[str, str]]) -> list[list[str]]:
    """Groups of nodes lying on directed cycles, each group one cycle cluster."""
    successors: dict[str, set[str]] = {}
    for a, b in edges:
        successors.setdefault(a, set()).add(b)

    reach: dict[str, set[str]] = {}
    for start in successors:
        seen: set[str] = set()
        frontier = list(successors.get(start, ()))
        while frontier:
            node = frontier.pop()
            if node in seen:
                continue
            seen.add(node)
            frontier.extend(successors.get(node, ()))
        reach[start] = seen

    on_cycle = sorted(n for n in reach if n in reach[n])
    groups: list[list[str]] = []
    assigned: set[str] = set()
    for node in on_cycle:
        if node in assigned:
            continue
        group = sorted(
            m for m in on_cycle if m == node or (m in reach.get(node, ()) and node in reach.get(m, ()))
        )
        assigned.update(group)
        groups.append(group)
    return groups


def _check_model(doc: Document, model: NfrsModelNode, mode: ValidationMode, sink: _Sink) -> None:
    m = model.name

    def kind_of(name: str) -> NfrKind | None:
        nfr = model.nfrs.get(name)
        return None if nfr is None else nfr.kind

    def edge_key(keyword: str, a: str, b: str) -> tuple:
        return ("edge", m, keyword, a, b)

    # sub-characteristic hierarchy
    valid_subchar: list[tuple[str, str]] = []
    for parent, child in model.subchar_edges:
        subject = f"model:{m}/subcharacteristic:{child} of {parent}"
        key = edge_key("subcharacteristic", parent, child)
        ok = True
        for endpoint in (child, parent):
            kind = kind_of(endpoint)
            if kind is None:
                sink.error("R-REF", f"unknown NFR {endpoint!r} in model {m!r}", subject, key)
                ok = False
            elif kind is not NfrKind.CHARACTERISTIC:
                sink.error(
                    "R-017",
                    f"{kind.value.replace('_', ' ')} {endpoint!r} cannot take a position in the"
                    " sub-characteristic hierarchy; only characteristics can",
                    subject,
                    key,
                )
                ok = False
        if ok:
            valid_subchar.append((parent, child))

    parents: dict[str, list[str]] = {}
    for parent, child in valid_subchar:
        parents.setdefault(child, []).append(parent)
    for child, parent_list in sorted(parents.items()):
        if len(set(parent_list)) > 1:
            sink.error(
                "R-013",
                f"characteristic {child!r} has {len(set(parent_list))} parents; the hierarchy is a forest",
                f"model:{m}/nfr:{child}",
                ("nfr", m, child),
            )
    for group in _cycle_groups([(child, parent) for parent, child in valid_subchar]):
        sink.error(
            "R-013",
            "sub-characteristic hierarchy contains a cycle: " + " -> ".join(group),
            f"model:{m}/subcharacteristic-cycle:{' -> '.join(group)}",
            None,
        )

    foci = sorted(n.name for n in model.nfrs.values() if n.is_focus)
    if len(foci) > 1:
        sink.error(
            "R-013",
            f"model declares {len(foci)} evaluation foci ({', '.join(foci)}); at most one is allowed",
            f"model:{m}",
            ("model", m),
        )
    for focus in foci:
        if focus in parents:
            sink.error(
                "R-013",
                f"evaluation focus {focus!r} has a parent; the focus is the root of the model",
                f"model:{m}/nfr:{focus}",
                ("nfr", m, focus),
            )

    # combines, split by target route
    for source, target in model.combines_attr_edges:
        subject = f"model:{m}/combines:{source}->{target}"
        key = edge_key("combines", source, target)
        src_kind, dst_kind = kind_of(source), kind_of(target)
        if src_kind is None:
            sink.error("R-REF", f"unknown NFR {source!r} in model {m!r}", subject, key)
        elif src_kind is not NfrKind.CHARACTERISTIC:
            sink.error("R-002", f"only a characteristic can combine attributes; {source!r} is a {src_kind.value}",
                       subject, key)
        if dst_kind is None:
            sink.error("R-REF", f"unknown NFR {target!r} in model {m!r}", subject, key)
        elif dst_kind is not NfrKind.ATTRIBUTE:
            sink.error(
                "R-002",
                f"combines must target an attribute or statement item; {target!r} is a"
                f" {dst_kind.value.replace('_', ' ')}",
                subject,
                key,
            )
    for source, target in model.combines_item_edges:
        subject = f"model:{m}/combines:{source}->{target}"
        key = edge_key("combines", source, target)
        src_kind, dst_kind = kind_of(source), kind_of(target)
        if src_kind is None:
            sink.error("R-REF", f"unknown NFR {source!r} in model {m!r}", subject, key)
        elif src_kind is not NfrKind.CHARACTERISTIC:
            sink.error(
                "R-003",
                f"only a characteristic can combine statement items; {source!r} is a {src_kind.value}",
                subject,
                key,
            )
        if dst_kind is None:
            sink.error("R-REF", f"unknown NFR {target!r} in model {m!r}", subject, key)
        elif dst_kind is not NfrKind.STATEMENT_ITEM:
            sink.error("R-003", f"this combines edge must target a statement item; {target!r} is a"
                       f" {dst_kind.value}", subject, key)

    # statement item to attribute mapping
    for source, target in model.mapped_to_edges:
        subject = f"model:{m}/maps:{source}->{target}"
        key = edge_key("maps", source, target)
        src_kind, dst_kind = kind_of(source), kind_of(target)
        if src_kind is None:
            sink.error("R-REF", f"unknown NFR {source!r} in model {m!r}", subject, key)
        elif src_kind is not NfrKind.STATEMENT_ITEM:
            sink.error("R-008", f"maps edges start at a statement item; {source!r} is a"
                       f" {src_kind.value}", subject, key)
        if dst_kind is None:
            sink.error("R-REF", f"unknown NFR {target!r} in model {m!r}", subject, key)
        elif dst_kind is not NfrKind.ATTRIBUTE:
            sink.error("R-008", f"maps edges target an attribute; {target!r} is a"
                       f" {dst_kind.value.replace('_', ' ')}", subject, key)

    for a, b in model.relates_with_edges:
        subject = f"model:{m}/relates:{a}<->{b}"
        key = edge_key("relates", a, b)
        for endpoint in dict.fromkeys((a, b)):
            if kind_of(endpoint) is None:
                sink.error("R-REF", f"unknown NFR {endpoint!r} in model {m!r}", subject, key)
        if a == b and kind_of(a) is not None:
            sink.warning("R-011", f"NFR {a!r} relates with itself", subject, key)

    for source, target in model.satisfies_edges:
        subject = f"model:{m}/satisfies:{source}->{target}"
        key = edge_key("satisfies", source, target)
        if kind_of(source) is None:
            sink.error("R-REF", f"unknown NFR {source!r} in model {m!r}", subject, key)
        if target not in doc.frs:
            sink.error("R-012", f"satisfies must target a functional requirement; {target!r} is not one",
                       subject, key)

    for source, target in model.refers_to_entity_edges:
        subject = f"model:{m}/refers_to_entity:{source}->{target}"
        key = edge_key("refers_to_entity", source, target)
        if kind_of(source) is None:
            sink.error("R-REF", f"unknown NFR {source!r} in model {m!r}", subject, key)
        if target not in doc.entities:
            sink.error("R-REF", f"unknown entity {target!r}", subject, key)

    for source, target in model.refers_to_category_edges:
        subject = f"model:{m}/refers_to_category:{source}->{target}"
        key = edge_key("refers_to_category", source, target)
        if kind_of(source) is None:
            sink.error("R-REF", f"unknown NFR {source!r} in model {m!r}", subject, key)
        if target not in doc.categories:
            sink.error("R-010", f"refers_to_category must target a category; {target!r} is not one",
                       subject, key)

    # every NFR names at least one concrete entity
    with_entity = {source for source, _ in model.refers_to_entity_edges}
    severity = Severity.ERROR if mode is ValidationMode.INSTANCE else Severity.WARNING
    for name in sorted(model.nfrs):
        if name not in with_entity:
            sink.add(
                "R-009",
                severity,
                f"NFR {name!r} refers to no evaluable entity; at least one is required",
                f"model:{m}/nfr:{name}",
                ("nfr", m, name),
            )


def _check_view_model(doc: Document, vm: NfrsViewModelNode, mode: ValidationMode, sink: _Sink) -> None:
    v = vm.name

    for name in sorted(vm.views):
        view = vm.views[name]
        subject = f"view_model:{v}/view:{name}"
        key = ("view", v, name)
        category = doc.categories.get(view.category)
        if category is None:
            sink.error("R-004", f"view deals with unknown category {view.category!r}", subject, key)
        elif category.parent is not None:
            sink.warning(
                "R-015",
                f"view category {view.category!r} has parent {category.parent!r}; a view expects"
                " the super-category at the highest abstraction level",
                subject,
                key,
            )

        focus_model, focus_char = view.focus
        model = doc.models.get(focus_model)
        focus = None if model is None else model.nfrs.get(focus_char)
        if focus is None:
            if mode is ValidationMode.INSTANCE:
                sink.error(
                    "R-007",
                    f"view focus {focus_model!r} . {focus_char!r} is not represented by any model"
                    " in this document",
                    subject,
                    key,
                )
        elif not focus.is_focus:
            sink.error(
                "R-007",
                f"view focus must target a focus-marked characteristic; {focus_char!r} in model"
                f" {focus_model!r} is not marked as one",
                subject,
                key,
            )
        elif focus.focus_kind is not view.kind:
            sink.error(
                "R-014",
                f"{view.kind.value} view targets a {focus.focus_kind.value} focus ({focus_char!r})",
                subject,
                key,
            )

    def view_kind(name: str) -> FocusKind | None:
        view = vm.views.get(name)
        return None if view is None else view.kind

    resolved_influences: list[tuple[str, str]] = []
    for source, target in vm.influences_edges:
        subject = f"view_model:{v}/influences:{source}->{target}"
        key = ("edge", v, "influences", source, target)
        kinds = {}
        for endpoint in dict.fromkeys((source, target)):
            kinds[endpoint] = view_kind(endpoint)
            if kinds[endpoint] is None:
                sink.error("R-REF", f"unknown view {endpoint!r} in view model {v!r}", subject, key)
        if any(k is None for k in kinds.values()):
            continue
        non_quality = sorted(name for name, k in kinds.items() if k is not FocusKind.QUALITY)
        if non_quality:
            sink.error(
                "R-006",
                "influences edges connect quality views only; cost view(s) involved: " + ", ".join(non_quality),
                subject,
                key,
            )
        else:
            resolved_influences.append((source, target))

    influences_set = set(vm.influences_edges)
    for source, target in vm.depends_on_edges:
        subject = f"view_model:{v}/depends_on:{source}->{target}"
        key = ("edge", v, "depends_on", source, target)
        kinds = {}
        for endpoint in dict.fromkeys((source, target)):
            kinds[endpoint] = view_kind(endpoint)
            if kinds[endpoint] is None:
                sink.error("R-REF", f"unknown view {endpoint!r} in view model {v!r}", subject, key)
        if any(k is None for k in kinds.values()):
            continue
        non_quality = sorted(name for name, k in kinds.items() if k is not FocusKind.QUALITY)
        if non_quality:
            sink.error(
                "R-005",
                "depends_on edges connect quality views only; cost view(s) involved: " + ", ".join(non_quality),
                subject,
                key,
            )
        elif (target, source) not in influences_set:
            sink.error(
                "R-006b",
                f"explicit depends_on contradicts influences: no influences {target!r} -> {source!r}"
                " edge exists",
                subject,
                key,
            )

    for group in _cycle_groups(resolved_influences):
        sink.warning(
            "R-016",
            "influence relationships form a cycle: " + " -> ".join(group),
            f"view_model:{v}/influences-cycle:{' -> '.join(group)}",
            None,
        )


def validate(doc: Document, mode: ValidationMode = ValidationMode.MODEL) -> list[Diagnostic]:
    """Run the full rule catalog; an empty result means the document conforms.

    Diagnostics come back sorted by (code, subject, message), so repeated
    runs render identically.
    """
    sink = _Sink(doc)
    for name in sorted(doc.entities):
        entity = doc.entities[name]
        if entity.category not in doc.categories:
            sink.error(
                "R-001",
                f"entity belongs to unknown category {entity.category!r}; every entity needs"
                " exactly one resolvable category",
                f"entity:{name}",
                ("entity", name),
            )
    for name in sorted(doc.models):
        _check_model(doc, doc.models[name], mode, sink)
    for name in sorted(doc.view_models):
        _check_view_model(doc, doc.view_models[name], mode, sink)
    return sort_diagnostics(sink.diagnostics)


def has_errors(diagnostics: list[Diagnostic], strict: bool = False) -> bool:
    if strict:
        return bool(diagnostics)
    return any(d.severity is Severity.ERROR for d in diagnostics)
