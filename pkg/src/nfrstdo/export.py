"""Deterministic document exporters: canonical JSON, DOT, and RDF Turtle.

Ordering rules are fixed (keys sorted, collections name-sorted, edge lists
lexicographic), so exporting the same document twice yields identical bytes.

Turtle subjects follow ``urn:nfrstdo:<kind>:<percent-encoded-name>``; nodes
scoped to a model or view model embed the owner as ``<owner>/<name>`` with
each part encoded separately. Predicates take the relationship names in
snake_case; type local names take the term names with spaces as underscores.
"""

from __future__ import annotations

import json
from urllib.parse import quote as percent_encode

from .model import Document, FocusKind, NfrKind, NfrNode, NfrsModelNode, NfrsViewModelNode

# --- canonical JSON -------------------------------------------------------------


def _nfr_json(nfr: NfrNode) -> dict:
    obj: dict = {"kind": nfr.kind.value, "name": nfr.name}
    if nfr.definition is not None:
        obj["definition"] = nfr.definition
    if nfr.declaration is not None:
        obj["declaration"] = nfr.declaration
    if nfr.statement is not None:
        obj["statement"] = nfr.statement
    if nfr.is_focus and nfr.focus_kind is not None:
        obj["focus"] = nfr.focus_kind.value
    return obj


def _pairs(edges: tuple[tuple[str, str], ...]) -> list[list[str]]:
    return [list(pair) for pair in sorted(edges)]


def _model_json(model: NfrsModelNode) -> dict:
    obj: dict = {
        "combines_attributes": _pairs(model.combines_attr_edges),
        "combines_statement_items": _pairs(model.combines_item_edges),
        "maps": _pairs(model.mapped_to_edges),
        "name": model.name,
        "nfrs": [_nfr_json(model.nfrs[n]) for n in sorted(model.nfrs)],
        "refers_to_categories": _pairs(model.refers_to_category_edges),
        "refers_to_entities": _pairs(model.refers_to_entity_edges),
        "relates": _pairs(model.relates_with_edges),
        "satisfies": _pairs(model.satisfies_edges),
        "subcharacteristics": _pairs(model.subchar_edges),
    }
    if model.specification is not None:
        obj["specification"] = model.specification
    return obj


def _view_model_json(vm: NfrsViewModelNode) -> dict:
    views = []
    for name in sorted(vm.views):
        view = vm.views[name]
        view_obj: dict = {
            "category": view.category,
            "focus": list(view.focus),
            "kind": view.kind.value,
            "name": view.name,
        }
        if view.statement is not None:
            view_obj["statement"] = view.statement
        views.append(view_obj)
    obj: dict = {
        "depends_on": _pairs(vm.depends_on_edges),
        "influences": _pairs(vm.influences_edges),
        "name": vm.name,
        "views": views,
    }
    if vm.specification is not None:
        obj["specification"] = vm.specification
    return obj


def to_json(doc: Document) -> str:
    """Canonical JSON: sorted keys, name-sorted arrays, compact, LF-terminated."""
    obj: dict = {"categories": [], "entities": [], "frs": [], "models": [], "view_models": []}
    for name in sorted(doc.categories):
        node = doc.categories[name]
        entry: dict = {"name": name}
        if node.description is not None:
            entry["description"] = node.description
        if node.parent is not None:
            entry["parent"] = node.parent
        obj["categories"].append(entry)
    for name in sorted(doc.entities):
        node = doc.entities[name]
        entry = {"category": node.category, "name": name}
        if node.description is not None:
            entry["description"] = node.description
        obj["entities"].append(entry)
    for name in sorted(doc.frs):
        node = doc.frs[name]
        obj["frs"].append({"name": name, "requester": node.requester, "statement": node.statement})
    for name in sorted(doc.models):
        obj["models"].append(_model_json(doc.models[name]))
    for name in sorted(doc.view_models):
        obj["view_models"].append(_view_model_json(doc.view_models[name]))
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n"


# --- DOT -------------------------------------------------------------------------

_NODE_SHAPES = {
    "category": "tab",
    "entity": "cylinder",
    "fr": "component",
    "model": "box3d",
    "view_model": "folder",
    NfrKind.CHARACTERISTIC: "box",
    NfrKind.ATTRIBUTE: "ellipse",
    NfrKind.STATEMENT_ITEM: "note",
    "view": "diamond",
}

# (style, arrowhead) per relationship; labels carry the relationship names
_EDGE_STYLES = {
    "belongs to": ("solid", "normal"),
    "combines": ("solid", "vee"),
    "deals with universals": ("dashed", "normal"),
    "depends on": ("dashed", "vee"),
    "influences": ("bold", "normal"),
    "is represented by": ("dotted", "normal"),
    "is mapped to": ("dashed", "diamond"),
    "refers to particulars": ("dotted", "vee"),
    "refers to universals": ("dotted", "diamond"),
    "relates with": ("solid", "none"),
    "satisfies": ("bold", "vee"),
    "subcharacteristic of": ("solid", "empty"),
    "focus": ("dashed", "dot"),
}


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")


def _dot_node(node_id: str, label: str, shape: str) -> str:
    return f'  "{_dot_escape(node_id)}" [label="{_dot_escape(label)}", shape={shape}];'


def _dot_edge(src: str, dst: str, relationship: str) -> str:
    style, arrowhead = _EDGE_STYLES[relationship]
    return (
        f'  "{_dot_escape(src)}" -> "{_dot_escape(dst)}"'
        f' [label="{_dot_escape(relationship)}", style={style}, arrowhead={arrowhead}];'
    )


def to_dot(doc: Document) -> str:
    """One directed graph with node shapes by kind and one edge style per relationship."""
    nodes: list[str] = []
    edges: list[str] = []

    for name, node in doc.categories.items():
        nodes.append(_dot_node(f"category:{name}", name, _NODE_SHAPES["category"]))
        if node.parent is not None:
            edges.append(_dot_edge(f"category:{name}", f"category:{node.parent}", "subcharacteristic of"))
    for name, node in doc.entities.items():
        nodes.append(_dot_node(f"entity:{name}", name, _NODE_SHAPES["entity"]))
        edges.append(_dot_edge(f"entity:{name}", f"category:{node.category}", "belongs to"))
    for name in doc.frs:
        nodes.append(_dot_node(f"fr:{name}", name, _NODE_SHAPES["fr"]))
    for model_name, model in doc.models.items():
        nodes.append(_dot_node(f"model:{model_name}", model_name, _NODE_SHAPES["model"]))

        def nfr_id(name: str) -> str:
            return f"nfr:{model_name}/{name}"

        for name, nfr in model.nfrs.items():
            nodes.append(_dot_node(nfr_id(name), name, _NODE_SHAPES[nfr.kind]))
            if nfr.is_focus:
                edges.append(_dot_edge(nfr_id(name), f"model:{model_name}", "is represented by"))
        for parent, child in model.subchar_edges:
            edges.append(_dot_edge(nfr_id(child), nfr_id(parent), "subcharacteristic of"))
        for s, t in (*model.combines_attr_edges, *model.combines_item_edges):
            edges.append(_dot_edge(nfr_id(s), nfr_id(t), "combines"))
        for s, t in model.mapped_to_edges:
            edges.append(_dot_edge(nfr_id(s), nfr_id(t), "is mapped to"))
        for s, t in model.relates_with_edges:
            edges.append(_dot_edge(nfr_id(s), nfr_id(t), "relates with"))
        for s, t in model.satisfies_edges:
            edges.append(_dot_edge(nfr_id(s), f"fr:{t}", "satisfies"))
        for s, t in model.refers_to_entity_edges:
            edges.append(_dot_edge(nfr_id(s), f"entity:{t}", "refers to particulars"))
        for s, t in model.refers_to_category_edges:
            edges.append(_dot_edge(nfr_id(s), f"category:{t}", "refers to universals"))
    for vm_name, vm in doc.view_models.items():
        nodes.append(_dot_node(f"view_model:{vm_name}", vm_name, _NODE_SHAPES["view_model"]))

        def view_id(name: str) -> str:
            return f"view:{vm_name}/{name}"

        for name, view in vm.views.items():
            nodes.append(_dot_node(view_id(name), name, _NODE_SHAPES["view"]))
            edges.append(_dot_edge(view_id(name), f"category:{view.category}", "deals with universals"))
            edges.append(_dot_edge(view_id(name), f"nfr:{view.focus[0]}/{view.focus[1]}", "focus"))
        for s, t in vm.influences_edges:
            edges.append(_dot_edge(view_id(s), view_id(t), "influences"))
        for s, t in vm.depends_on_edges:
            edges.append(_dot_edge(view_id(s), view_id(t), "depends on"))

    lines = ["digraph nfrs {"]
    lines.extend(sorted(nodes))
    lines.extend(sorted(edges))
    lines.append("}")
    return "\n".join(lines) + "\n"


# --- Turtle ------------------------------------------------------------------------

_PREFIX = "@prefix nfrstdo: <urn:nfrstdo:vocab:> ."

_NFR_TYPES = {
    NfrKind.ATTRIBUTE: "Attribute",
    NfrKind.CHARACTERISTIC: "Characteristic",
    NfrKind.STATEMENT_ITEM: "Statement_Item",
}


def _urn(kind: str, *name_parts: str) -> str:
    encoded = "/".join(percent_encode(part, safe="") for part in name_parts)
    return f"<urn:nfrstdo:{kind}:{encoded}>"


def _literal(value: str) -> str:
    escaped = (
        value.replace("\\", "\\\\")
        .replace('"', '\\"')
        .replace("\n", "\\n")
        .replace("\r", "\\r")
        .replace("\t", "\\t")
    )
    return f'"{escaped}"'


def to_turtle(doc: Document) -> str:
    """RDF Turtle with one sorted triple per line.

    Predicates mirror the relationship catalog (``nfrstdo:belongs_to``,
    ``nfrstdo:refers_to_particulars``, ...); structural links use
    ``nfrstdo:has_subcharacteristic``, ``nfrstdo:has_focus``, and
    ``nfrstdo:sub_category_of``.
    """
    triples: list[str] = []

    def add(subject: str, predicate: str, obj: str) -> None:
        triples.append(f"{subject} {predicate} {obj} .")

    def add_literal(subject: str, predicate: str, value: str | None) -> None:
        if value is not None:
            add(subject, f"nfrstdo:{predicate}", _literal(value))

    for name, node in doc.categories.items():
        subject = _urn("category", name)
        add(subject, "a", "nfrstdo:Evaluable_Entity_Category")
        add_literal(subject, "description", node.description)
        if node.parent is not None:
            add(subject, "nfrstdo:sub_category_of", _urn("category", node.parent))
    for name, node in doc.entities.items():
        subject = _urn("entity", name)
        add(subject, "a", "nfrstdo:Evaluable_Entity")
        add_literal(subject, "description", node.description)
        add(subject, "nfrstdo:belongs_to", _urn("category", node.category))
    for name, node in doc.frs.items():
        subject = _urn("fr", name)
        add(subject, "a", "nfrstdo:Functional_Requirement")
        add_literal(subject, "statement", node.statement)
        add_literal(subject, "requester", node.requester)

    for model_name, model in doc.models.items():
        model_subject = _urn("model", model_name)
        add(model_subject, "a", "nfrstdo:NFRs_Model")
        add_literal(model_subject, "specification", model.specification)

        def nfr_urn(name: str) -> str:
            nfr = model.nfrs.get(name)
            kind = "nfr" if nfr is None else nfr.kind.value
            return _urn(kind, model_name, name)

        for name, nfr in model.nfrs.items():
            subject = nfr_urn(name)
            add(subject, "a", f"nfrstdo:{_NFR_TYPES[nfr.kind]}")
            add_literal(subject, "definition", nfr.definition)
            add_literal(subject, "declaration", nfr.declaration)
            add_literal(subject, "statement", nfr.statement)
            if nfr.is_focus and nfr.focus_kind is not None:
                focus_type = "Quality_Focus" if nfr.focus_kind is FocusKind.QUALITY else "Cost_Focus"
                add(subject, "a", f"nfrstdo:{focus_type}")
                add(subject, "nfrstdo:is_represented_by", model_subject)
        for parent, child in model.subchar_edges:
            add(nfr_urn(parent), "nfrstdo:has_subcharacteristic", nfr_urn(child))
        for s, t in (*model.combines_attr_edges, *model.combines_item_edges):
            add(nfr_urn(s), "nfrstdo:combines", nfr_urn(t))
        for s, t in model.mapped_to_edges:
            add(nfr_urn(s), "nfrstdo:is_mapped_to", nfr_urn(t))
        for s, t in model.relates_with_edges:
            add(nfr_urn(s), "nfrstdo:relates_with", nfr_urn(t))
        for s, t in model.satisfies_edges:
            add(nfr_urn(s), "nfrstdo:satisfies", _urn("fr", t))
        for s, t in model.refers_to_entity_edges:
            add(nfr_urn(s), "nfrstdo:refers_to_particulars", _urn("entity", t))
        for s, t in model.refers_to_category_edges:
            add(nfr_urn(s), "nfrstdo:refers_to_universals", _urn("category", t))

    for vm_name, vm in doc.view_models.items():
        vm_subject = _urn("view_model", vm_name)
        add(vm_subject, "a", "nfrstdo:NFRs_View_Model")
        add_literal(vm_subject, "specification", vm.specification)

        def view_urn(name: str) -> str:
            return _urn("view", vm_name, name)

        for name, view in vm.views.items():
            subject = view_urn(name)
            view_type = "Quality_View" if view.kind is FocusKind.QUALITY else "Cost_View"
            add(subject, "a", f"nfrstdo:{view_type}")
            add_literal(subject, "statement", view.statement)
            add(subject, "nfrstdo:deals_with_universals", _urn("category", view.category))
            focus_model, focus_char = view.focus
            focus_nfr = doc.models.get(focus_model)
            kind = "nfr"
            if focus_nfr is not None and focus_char in focus_nfr.nfrs:
                kind = focus_nfr.nfrs[focus_char].kind.value
            add(subject, "nfrstdo:has_focus", _urn(kind, focus_model, focus_char))
        for s, t in vm.influences_edges:
            add(view_urn(s), "nfrstdo:influences", view_urn(t))
        for s, t in vm.depends_on_edges:
            add(view_urn(s), "nfrstdo:depends_on", view_urn(t))

    if not triples:
        return _PREFIX + "\n"
    return _PREFIX + "\n\n" + "\n".join(sorted(set(triples))) + "\n"
