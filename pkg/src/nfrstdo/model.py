"""The instance graph: typed nodes and edges for one authored workspace.

Documents are immutable values; every update returns a new document and the
old one is untouched, so any number of readers may share one concurrently.
Node identity is the name alone. Categories, entities, functional
requirements, models, and view models are document-global; NFRs are scoped to
their model, views to their view model.

Document equality is structural: collections compare order-insensitively and
source locations are ignored, which is what lets a reparsed serialization
compare equal to the original.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum

from .diagnostics import SourceLocation

Edge = tuple[str, str]
LocationKey = tuple  # ("category", name), ("nfr", model, name), ("edge", owner, kind, src, dst), ...


class DuplicateName(ValueError):
    """A node with this name already exists in the target collection."""


class NotFound(LookupError):
    """A name did not resolve in the requested collection."""


class EdgeKindError(ValueError):
    """An edge endpoint has a kind the relationship does not allow."""


class NfrKind(Enum):
    ATTRIBUTE = "attribute"
    CHARACTERISTIC = "characteristic"
    STATEMENT_ITEM = "statement_item"


class FocusKind(Enum):
    """Evaluation perspective, used both for focus marks and for view kinds."""

    QUALITY = "quality"
    COST = "cost"


@dataclass(frozen=True, slots=True)
class CategoryNode:
    """An evaluable entity category; ``parent`` points at a broader category."""

    name: str
    description: str | None = None
    parent: str | None = None


@dataclass(frozen=True, slots=True)
class EntityNode:
    """A concrete evaluable entity belonging to exactly one category."""

    name: str
    category: str
    description: str | None = None


@dataclass(frozen=True, slots=True)
class FunctionalRequirementNode:
    name: str
    statement: str
    requester: str


@dataclass(frozen=True, slots=True)
class NfrNode:
    """One non-functional requirement inside a model.

    Field presence follows the kind: attributes and characteristics carry a
    definition, statement items a declaration. Only a characteristic may be
    marked as the model's evaluation focus.
    """

    kind: NfrKind
    name: str
    statement: str | None = None
    definition: str | None = None
    declaration: str | None = None
    is_focus: bool = False
    focus_kind: FocusKind | None = None

    def __post_init__(self) -> None:
        if self.kind is NfrKind.STATEMENT_ITEM:
            if self.declaration is None or self.definition is not None:
                raise ValueError(f"statement item {self.name!r} takes a declaration, not a definition")
        else:
            if self.definition is None or self.declaration is not None:
                raise ValueError(f"{self.kind.value} {self.name!r} takes a definition, not a declaration")
        if self.is_focus and self.kind is not NfrKind.CHARACTERISTIC:
            raise ValueError(f"only a characteristic can be an evaluation focus, not {self.name!r}")
        if self.is_focus != (self.focus_kind is not None):
            raise ValueError(f"focus kind must be set exactly when {self.name!r} is a focus")


def _sorted_edges(edges: tuple[Edge, ...]) -> list[Edge]:
    return sorted(edges)


@dataclass(frozen=True, eq=False)
class NfrsModelNode:
    """An NFRs model: its NFR nodes plus every edge kind they participate in.

    Edge lists hold name pairs exactly as authored; referential and kind
    checking is the validator's job.
    """

    name: str
    specification: str | None = None
    nfrs: dict[str, NfrNode] = field(default_factory=dict)
    subchar_edges: tuple[Edge, ...] = ()  # (parent characteristic, child characteristic)
    combines_attr_edges: tuple[Edge, ...] = ()
    combines_item_edges: tuple[Edge, ...] = ()
    mapped_to_edges: tuple[Edge, ...] = ()
    relates_with_edges: tuple[Edge, ...] = ()
    satisfies_edges: tuple[Edge, ...] = ()
    refers_to_entity_edges: tuple[Edge, ...] = ()
    refers_to_category_edges: tuple[Edge, ...] = ()

    _EDGE_FIELDS = (
        "subchar_edges",
        "combines_attr_edges",
        "combines_item_edges",
        "mapped_to_edges",
        "relates_with_edges",
        "satisfies_edges",
        "refers_to_entity_edges",
        "refers_to_category_edges",
    )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NfrsModelNode):
            return NotImplemented
        if (self.name, self.specification, self.nfrs) != (other.name, other.specification, other.nfrs):
            return False
        return all(
            _sorted_edges(getattr(self, f)) == _sorted_edges(getattr(other, f)) for f in self._EDGE_FIELDS
        )


@dataclass(frozen=True, slots=True)
class NfrViewNode:
    """An NFR view: one category, one (model, focus characteristic) reference."""

    name: str
    kind: FocusKind
    category: str
    focus: tuple[str, str]
    statement: str | None = None


@dataclass(frozen=True, eq=False)
class NfrsViewModelNode:
    name: str
    specification: str | None = None
    views: dict[str, NfrViewNode] = field(default_factory=dict)
    influences_edges: tuple[Edge, ...] = ()
    depends_on_edges: tuple[Edge, ...] = ()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NfrsViewModelNode):
            return NotImplemented
        return (
            (self.name, self.specification, self.views) == (other.name, other.specification, other.views)
            and _sorted_edges(self.influences_edges) == _sorted_edges(other.influences_edges)
            and _sorted_edges(self.depends_on_edges) == _sorted_edges(other.depends_on_edges)
        )


Node = CategoryNode | EntityNode | FunctionalRequirementNode | NfrsModelNode | NfrsViewModelNode

_COLLECTIONS = {
    CategoryNode: "categories",
    EntityNode: "entities",
    FunctionalRequirementNode: "frs",
    NfrsModelNode: "models",
    NfrsViewModelNode: "view_models",
}

_KIND_NAMES = {
    "category": "categories",
    "entity": "entities",
    "fr": "frs",
    "model": "models",
    "view_model": "view_models",
}


@dataclass(frozen=True, eq=False)
class Document:
    """One parsed workspace: all node collections plus source locations."""

    categories: dict[str, CategoryNode] = field(default_factory=dict)
    entities: dict[str, EntityNode] = field(default_factory=dict)
    frs: dict[str, FunctionalRequirementNode] = field(default_factory=dict)
    models: dict[str, NfrsModelNode] = field(default_factory=dict)
    view_models: dict[str, NfrsViewModelNode] = field(default_factory=dict)
    source_locations: dict[LocationKey, SourceLocation] = field(default_factory=dict)

    def __eq__(self, other: object) -> bool:
        # source locations are presentation metadata, not structure
        if not isinstance(other, Document):
            return NotImplemented
        return (
            self.categories == other.categories
            and self.entities == other.entities
            and self.frs == other.frs
            and self.models == other.models
            and self.view_models == other.view_models
        )

    def is_empty(self) -> bool:
        return not (self.categories or self.entities or self.frs or self.models or self.view_models)


def add_node(doc: Document, node: Node) -> Document:
    """Return a new document containing ``node``; ``doc`` is unchanged."""
    collection_name = _COLLECTIONS[type(node)]
    collection = getattr(doc, collection_name)
    if node.name in collection:
        raise DuplicateName(f"{collection_name[:-1].replace('_', ' ')} {node.name!r} already exists")
    return replace(doc, **{collection_name: {**collection, node.name: node}})


def resolve(doc: Document, kind: str, name: str) -> Node:
    """Exact-name lookup in one kind-segregated collection; never fuzzy."""
    try:
        collection = getattr(doc, _KIND_NAMES[kind])
    except KeyError:
        raise ValueError(f"unknown node kind {kind!r}; expected one of {sorted(_KIND_NAMES)}") from None
    try:
        return collection[name]
    except KeyError:
        raise NotFound(f"no {kind} named {name!r}") from None


# --- checked edge insertion ---------------------------------------------------
#
# The programmatic way to attach edges. Unlike the parser, which stores what
# the source text says, these reject endpoints whose kinds contradict the
# relationship definition before any validation runs.

_MODEL_EDGE_KINDS = (
    "subcharacteristic",
    "combines",
    "maps",
    "relates",
    "satisfies",
    "refers_to_entity",
    "refers_to_category",
)


def _require_nfr(model: NfrsModelNode, name: str) -> NfrNode:
    try:
        return model.nfrs[name]
    except KeyError:
        raise NotFound(f"no NFR named {name!r} in model {model.name!r}") from None


def add_model_edge(doc: Document, model_name: str, kind: str, source: str, target: str) -> Document:
    """Attach one model-level edge, rejecting kind-contradicting endpoints.

    ``combines`` routes to the attribute or statement-item edge list based on
    the target's kind.
    """
    model = resolve(doc, "model", model_name)
    assert isinstance(model, NfrsModelNode)
    if kind not in _MODEL_EDGE_KINDS:
        raise ValueError(f"unknown model edge kind {kind!r}")

    if kind == "subcharacteristic":
        # stored as (parent, child); callers pass source=child, target=parent
        child, parent = _require_nfr(model, source), _require_nfr(model, target)
        for endpoint in (child, parent):
            if endpoint.kind is not NfrKind.CHARACTERISTIC:
                raise EdgeKindError(f"subcharacteristic endpoints must be characteristics, not {endpoint.name!r}")
        updated = replace(model, subchar_edges=model.subchar_edges + ((target, source),))
    elif kind == "combines":
        src, dst = _require_nfr(model, source), _require_nfr(model, target)
        if src.kind is not NfrKind.CHARACTERISTIC:
            raise EdgeKindError(f"only a characteristic can combine, not {src.name!r}")
        if dst.kind is NfrKind.ATTRIBUTE:
            updated = replace(model, combines_attr_edges=model.combines_attr_edges + ((source, target),))
        elif dst.kind is NfrKind.STATEMENT_ITEM:
            updated = replace(model, combines_item_edges=model.combines_item_edges + ((source, target),))
        else:
            raise EdgeKindError(f"combines must target an attribute or statement item, not {dst.name!r}")
    elif kind == "maps":
        src, dst = _require_nfr(model, source), _require_nfr(model, target)
        if src.kind is not NfrKind.STATEMENT_ITEM or dst.kind is not NfrKind.ATTRIBUTE:
            raise EdgeKindError("maps edges go from a statement item to an attribute")
        updated = replace(model, mapped_to_edges=model.mapped_to_edges + ((source, target),))
    elif kind == "relates":
        _require_nfr(model, source)
        _require_nfr(model, target)
        updated = replace(model, relates_with_edges=model.relates_with_edges + ((source, target),))
    elif kind == "satisfies":
        _require_nfr(model, source)
        if target not in doc.frs:
            raise NotFound(f"no functional requirement named {target!r}")
        updated = replace(model, satisfies_edges=model.satisfies_edges + ((source, target),))
    elif kind == "refers_to_entity":
        _require_nfr(model, source)
        if target not in doc.entities:
            raise NotFound(f"no entity named {target!r}")
        updated = replace(model, refers_to_entity_edges=model.refers_to_entity_edges + ((source, target),))
    else:  # refers_to_category
        _require_nfr(model, source)
        if target not in doc.categories:
            raise NotFound(f"no category named {target!r}")
        updated = replace(model, refers_to_category_edges=model.refers_to_category_edges + ((source, target),))

    return replace(doc, models={**doc.models, model_name: updated})


def add_view_edge(doc: Document, view_model_name: str, kind: str, source: str, target: str) -> Document:
    """Attach an influences/depends_on edge between quality views."""
    vm = resolve(doc, "view_model", view_model_name)
    assert isinstance(vm, NfrsViewModelNode)
    if kind not in ("influences", "depends_on"):
        raise ValueError(f"unknown view edge kind {kind!r}")
    for name in (source, target):
        try:
            view = vm.views[name]
        except KeyError:
            raise NotFound(f"no view named {name!r} in view model {view_model_name!r}") from None
        if view.kind is not FocusKind.QUALITY:
            raise EdgeKindError(f"{kind} edges connect quality views only, and {name!r} is a cost view")
    field_name = "influences_edges" if kind == "influences" else "depends_on_edges"
    updated = replace(vm, **{field_name: getattr(vm, field_name) + ((source, target),)})
    return replace(doc, view_models={**doc.view_models, view_model_name: updated})
