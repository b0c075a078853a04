"""Parser and canonical serializer for the ``.nfrs`` authoring format.

The format instantiates the ontology: categories, entities, functional
requirements, NFRs models with their requirement nodes and edges, and view
models. Parsing is purely syntactic; whether names resolve is the
validator's concern. Serialization is canonical, so two documents that are
structurally equal serialize to identical bytes regardless of how they were
built.

Grammar sketch (names and texts are double-quoted strings, ``#`` comments)::

    category "X" { description: "..." parent: "Y" }
    entity "E" { description: "..." belongs_to: "X" }
    fr "F" { statement: "..." requester: "..." }
    model "M" {
      specification: "..."
      characteristic "C" { definition: "..." statement: "..." focus: quality }
      attribute "A" { definition: "..." }
      statement_item "S" { declaration: "..." }
      subcharacteristic "C2" of "C"
      combines "C" -> "A"
      maps "S" -> "A"
      refers_to_entity "C" -> "E"
      refers_to_category "C" -> "X"
      relates "C" <-> "A"
      satisfies "C" -> "F"
    }
    view_model "VM" {
      specification: "..."
      view "V" { kind: quality category: "X" focus: "M" . "C" statement: "..." }
      influences "V" -> "V2"
      depends_on "V2" -> "V"
    }
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagnostics import SourceLocation
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
)

_TOP_KEYWORDS = ("category", "entity", "fr", "model", "view_model")
_NFR_KEYWORDS = {"characteristic": NfrKind.CHARACTERISTIC, "attribute": NfrKind.ATTRIBUTE,
                 "statement_item": NfrKind.STATEMENT_ITEM}
_MODEL_EDGE_KEYWORDS = ("subcharacteristic", "combines", "maps", "refers_to_entity",
                        "refers_to_category", "relates", "satisfies")

_MAX_ERRORS = 50


@dataclass(frozen=True, slots=True)
class ParseError:
    location: SourceLocation
    expected: str
    found: str

    @property
    def message(self) -> str:
        return f"expected {self.expected}, found {self.found}"


class ParseFailure(ValueError):
    """Raised when parsing produced one or more errors."""

    def __init__(self, errors: list[ParseError]) -> None:
        self.errors = sorted(errors, key=lambda e: (e.location.line, e.location.column))
        first = self.errors[0]
        suffix = f" (+{len(self.errors) - 1} more)" if len(self.errors) > 1 else ""
        super().__init__(
            f"{first.location.line}:{first.location.column}: {first.message}{suffix}"
        )


# --- lexer --------------------------------------------------------------------

_WORD_START = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_")
_WORD_CHARS = _WORD_START | set("0123456789")
_UNESCAPES = {"\\": "\\", '"': '"', "n": "\n", "t": "\t", "r": "\r"}
_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\t": "\\t", "\r": "\\r"}


@dataclass(frozen=True, slots=True)
class _Token:
    kind: str  # word, string, punct, eof
    value: str
    location: SourceLocation

    def describe(self) -> str:
        if self.kind == "eof":
            return "end of input"
        if self.kind == "string":
            text = self.value if len(self.value) <= 20 else self.value[:17] + "..."
            return f'string "{text}"'
        return f"'{self.value}'"


class _LexError(Exception):
    def __init__(self, error: ParseError) -> None:
        self.error = error


def _tokenize(text: str) -> list[_Token]:
    text = text.replace("\r\n", "\n").replace("\r", "\n")
    tokens: list[_Token] = []
    line, col, i = 1, 1, 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line, col, i = line + 1, 1, i + 1
            continue
        if ch in " \t":
            i, col = i + 1, col + 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        start = SourceLocation(line, col)
        if ch in _WORD_START:
            j = i
            while j < n and text[j] in _WORD_CHARS:
                j += 1
            tokens.append(_Token("word", text[i:j], start))
            col += j - i
            i = j
            continue
        if ch == '"':
            value = []
            j = i + 1
            while True:
                if j >= n or text[j] == "\n":
                    raise _LexError(ParseError(start, "closing '\"'", "end of line or input"))
                c = text[j]
                if c == '"':
                    j += 1
                    break
                if c == "\\":
                    if j + 1 >= n or text[j + 1] not in _UNESCAPES:
                        raise _LexError(
                            ParseError(SourceLocation(line, col + (j - i)), "a valid escape", f"'\\{text[j + 1: j + 2]}'")
                        )
                    value.append(_UNESCAPES[text[j + 1]])
                    j += 2
                    continue
                value.append(c)
                j += 1
            tokens.append(_Token("string", "".join(value), start))
            col += j - i
            i = j
            continue
        if text.startswith("<->", i):
            tokens.append(_Token("punct", "<->", start))
            i, col = i + 3, col + 3
            continue
        if text.startswith("->", i):
            tokens.append(_Token("punct", "->", start))
            i, col = i + 2, col + 2
            continue
        if ch in "{}:.":
            tokens.append(_Token("punct", ch, start))
            i, col = i + 1, col + 1
            continue
        raise _LexError(ParseError(start, "a declaration", f"'{ch}'"))
    # place EOF on the last line's end-of-line cursor, never past the input
    if col == 1 and line > 1:
        line -= 1
        col = len(text.split("\n")[line - 1]) + 1
    tokens.append(_Token("eof", "", SourceLocation(line, col)))
    return tokens


def quote(value: str) -> str:
    """Render a string in the format's double-quoted, backslash-escaped form."""
    return '"' + "".join(_ESCAPES.get(ch, ch) for ch in value) + '"'


# --- parser -------------------------------------------------------------------


class _SyntaxError(Exception):
    def __init__(self, error: ParseError) -> None:
        self.error = error


class _Parser:
    def __init__(self, tokens: list[_Token]) -> None:
        self.tokens = tokens
        self.pos = 0
        self.errors: list[ParseError] = []
        self.categories: dict[str, CategoryNode] = {}
        self.entities: dict[str, EntityNode] = {}
        self.frs: dict[str, FunctionalRequirementNode] = {}
        self.models: dict[str, NfrsModelNode] = {}
        self.view_models: dict[str, NfrsViewModelNode] = {}
        self.locations: dict[tuple, SourceLocation] = {}

    # token plumbing

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        token = self.tokens[self.pos]
        if token.kind != "eof":
            self.pos += 1
        return token

    def at_word(self, *words: str) -> bool:
        t = self.peek()
        return t.kind == "word" and t.value in words

    def fail(self, expected: str) -> None:
        raise _SyntaxError(ParseError(self.peek().location, expected, self.peek().describe()))

    def expect_punct(self, value: str) -> _Token:
        t = self.peek()
        if t.kind != "punct" or t.value != value:
            self.fail(f"'{value}'")
        return self.advance()

    def expect_word(self, value: str, expected: str | None = None) -> _Token:
        t = self.peek()
        if t.kind != "word" or t.value != value:
            self.fail(expected or f"'{value}'")
        return self.advance()

    def expect_string(self, expected: str = "a string") -> str:
        t = self.peek()
        if t.kind != "string":
            self.fail(expected)
        return self.advance().value

    def expect_name(self, expected: str = "a name") -> str:
        t = self.peek()
        value = self.expect_string(expected)
        if not value:
            raise _SyntaxError(ParseError(t.location, "a non-empty name", "an empty string"))
        return value

    def field_value(self, keyword: str) -> str:
        self.expect_word(keyword, f"field '{keyword}'")
        self.expect_punct(":")
        return self.expect_string(f"text for field '{keyword}'")

    def opt_field(self, keyword: str) -> str | None:
        if self.at_word(keyword):
            return self.field_value(keyword)
        return None

    def record_error(self, error: ParseError) -> None:
        if len(self.errors) < _MAX_ERRORS:
            self.errors.append(error)

    # error recovery

    def skip_block_rest(self) -> None:
        """Consume up to and including the closing brace of the current block."""
        depth = 0
        while True:
            t = self.peek()
            if t.kind == "eof":
                return
            self.advance()
            if t.kind == "punct" and t.value == "{":
                depth += 1
            elif t.kind == "punct" and t.value == "}":
                if depth == 0:
                    return
                depth -= 1

    def skip_to_top_level(self) -> None:
        while True:
            t = self.peek()
            if t.kind == "eof" or (t.kind == "word" and t.value in _TOP_KEYWORDS):
                return
            self.advance()
            if t.kind == "punct" and t.value == "{":
                # skip the whole block so nested keywords do not look top-level
                self.skip_block_rest()

    def sync_inside_block(self, keywords: set[str]) -> None:
        while True:
            t = self.peek()
            if t.kind == "eof" or (t.kind == "punct" and t.value == "}"):
                return
            if t.kind == "word" and t.value in keywords:
                return
            self.advance()
            if t.kind == "punct" and t.value == "{":
                self.skip_block_rest()

    # node declarations

    def parse_document(self) -> None:
        while True:
            t = self.peek()
            if t.kind == "eof":
                return
            if t.kind == "word" and t.value in _TOP_KEYWORDS:
                self.advance()
                try:
                    getattr(self, f"parse_{t.value}")(t.location)
                except _SyntaxError as exc:
                    self.record_error(exc.error)
                    self.skip_to_top_level()
            else:
                self.record_error(
                    ParseError(t.location, "a declaration (category, entity, fr, model, view_model)", t.describe())
                )
                self.advance()
                self.skip_to_top_level()

    def declare(self, collection: dict, key: tuple, node, location: SourceLocation, what: str) -> None:
        if node.name in collection:
            self.record_error(ParseError(location, f"a unique {what} name", f"duplicate {node.name!r}"))
            return
        collection[node.name] = node
        self.locations[key] = location

    def parse_category(self, loc: SourceLocation) -> None:
        name = self.expect_name("a category name")
        self.expect_punct("{")
        description = self.opt_field("description")
        parent = None
        if self.at_word("parent"):
            parent = self.field_value("parent")
        self.expect_punct("}")
        node = CategoryNode(name=name, description=description, parent=parent)
        self.declare(self.categories, ("category", name), node, loc, "category")

    def parse_entity(self, loc: SourceLocation) -> None:
        name = self.expect_name("an entity name")
        self.expect_punct("{")
        description = self.opt_field("description")
        category = self.field_value("belongs_to")
        self.expect_punct("}")
        node = EntityNode(name=name, description=description, category=category)
        self.declare(self.entities, ("entity", name), node, loc, "entity")

    def parse_fr(self, loc: SourceLocation) -> None:
        name = self.expect_name("a functional requirement name")
        self.expect_punct("{")
        statement = self.field_value("statement")
        requester = self.field_value("requester")
        self.expect_punct("}")
        node = FunctionalRequirementNode(name=name, statement=statement, requester=requester)
        self.declare(self.frs, ("fr", name), node, loc, "functional requirement")

    def parse_nfr(self, kind: NfrKind, loc: SourceLocation, model_name: str, nfrs: dict[str, NfrNode]) -> None:
        name = self.expect_name(f"a {kind.value} name")
        self.expect_punct("{")
        definition = declaration = None
        if kind is NfrKind.STATEMENT_ITEM:
            declaration = self.field_value("declaration")
        else:
            definition = self.field_value("definition")
        statement = self.opt_field("statement")
        focus_kind = None
        if kind is NfrKind.CHARACTERISTIC and self.at_word("focus"):
            self.advance()
            self.expect_punct(":")
            if not self.at_word("quality", "cost"):
                self.fail("'quality' or 'cost'")
            focus_kind = FocusKind(self.advance().value)
        self.expect_punct("}")
        node = NfrNode(
            kind=kind,
            name=name,
            statement=statement,
            definition=definition,
            declaration=declaration,
            is_focus=focus_kind is not None,
            focus_kind=focus_kind,
        )
        if name in nfrs:
            self.record_error(ParseError(loc, f"a unique NFR name in model {model_name!r}", f"duplicate {name!r}"))
            return
        nfrs[name] = node
        self.locations[("nfr", model_name, name)] = loc

    def parse_model(self, loc: SourceLocation) -> None:
        name = self.expect_name("a model name")
        self.expect_punct("{")
        specification = self.opt_field("specification")
        nfrs: dict[str, NfrNode] = {}
        edges: dict[str, list[tuple[str, str]]] = {k: [] for k in _MODEL_EDGE_KEYWORDS}

        sync = set(_NFR_KEYWORDS) | set(_MODEL_EDGE_KEYWORDS)
        seen_edge = False
        while not (self.peek().kind == "punct" and self.peek().value == "}"):
            t = self.peek()
            if t.kind == "word" and t.value in _NFR_KEYWORDS:
                if seen_edge:
                    self.record_error(
                        ParseError(t.location, "a model edge or '}' (NFR declarations precede edges)", t.describe())
                    )
                self.advance()
                try:
                    self.parse_nfr(_NFR_KEYWORDS[t.value], t.location, name, nfrs)
                except _SyntaxError as exc:
                    self.record_error(exc.error)
                    self.skip_block_rest()
            elif t.kind == "word" and t.value in _MODEL_EDGE_KEYWORDS:
                seen_edge = True
                self.advance()
                try:
                    self.parse_model_edge(t.value, t.location, name, edges)
                except _SyntaxError as exc:
                    self.record_error(exc.error)
                    self.sync_inside_block(sync)
            elif t.kind == "eof":
                self.fail("'}'")
            else:
                expected = "a model edge or '}'" if seen_edge else "an NFR declaration, a model edge, or '}'"
                self.record_error(ParseError(t.location, expected, t.describe()))
                self.advance()
                self.sync_inside_block(sync)
        self.expect_punct("}")

        combines_attr, combines_item = [], []
        for source, target in edges["combines"]:
            nfr = nfrs.get(target)
            if nfr is not None and nfr.kind is NfrKind.STATEMENT_ITEM:
                combines_item.append((source, target))
            else:
                combines_attr.append((source, target))
        node = NfrsModelNode(
            name=name,
            specification=specification,
            nfrs=nfrs,
            subchar_edges=tuple(edges["subcharacteristic"]),
            combines_attr_edges=tuple(combines_attr),
            combines_item_edges=tuple(combines_item),
            mapped_to_edges=tuple(edges["maps"]),
            relates_with_edges=tuple(edges["relates"]),
            satisfies_edges=tuple(edges["satisfies"]),
            refers_to_entity_edges=tuple(edges["refers_to_entity"]),
            refers_to_category_edges=tuple(edges["refers_to_category"]),
        )
        self.declare(self.models, ("model", name), node, loc, "model")

    def parse_model_edge(
        self, keyword: str, loc: SourceLocation, model_name: str, edges: dict[str, list[tuple[str, str]]]
    ) -> None:
        first = self.expect_name("an NFR name")
        if keyword == "subcharacteristic":
            self.expect_word("of")
            parent = self.expect_name("a characteristic name")
            edge = (parent, first)  # stored as (parent, child)
        elif keyword == "relates":
            self.expect_punct("<->")
            edge = (first, self.expect_name("an NFR name"))
        else:
            self.expect_punct("->")
            edge = (first, self.expect_name("a target name"))
        edges[keyword].append(edge)
        self.locations[("edge", model_name, keyword, edge[0], edge[1])] = loc

    def parse_view(self, loc: SourceLocation, vm_name: str, views: dict[str, NfrViewNode]) -> None:
        name = self.expect_name("a view name")
        self.expect_punct("{")
        self.expect_word("kind", "field 'kind'")
        self.expect_punct(":")
        if not self.at_word("quality", "cost"):
            self.fail("'quality' or 'cost'")
        kind = FocusKind(self.advance().value)
        category = self.field_value("category")
        self.expect_word("focus", "field 'focus'")
        self.expect_punct(":")
        focus_model = self.expect_name("a model name")
        self.expect_punct(".")
        focus_char = self.expect_name("a characteristic name")
        statement = self.opt_field("statement")
        self.expect_punct("}")
        node = NfrViewNode(name=name, kind=kind, category=category, focus=(focus_model, focus_char),
                           statement=statement)
        if name in views:
            self.record_error(ParseError(loc, f"a unique view name in {vm_name!r}", f"duplicate {name!r}"))
            return
        views[name] = node
        self.locations[("view", vm_name, name)] = loc

    def parse_view_model(self, loc: SourceLocation) -> None:
        name = self.expect_name("a view model name")
        self.expect_punct("{")
        specification = self.opt_field("specification")
        views: dict[str, NfrViewNode] = {}
        influences: list[tuple[str, str]] = []
        depends_on: list[tuple[str, str]] = []

        stage = "view"  # views, then influences, then depends_on
        sync = {"view", "influences", "depends_on"}
        while not (self.peek().kind == "punct" and self.peek().value == "}"):
            t = self.peek()
            if t.kind == "eof":
                self.fail("'}'")
            if not (t.kind == "word" and t.value in sync):
                self.record_error(ParseError(t.location, "a view, an edge, or '}'", t.describe()))
                self.advance()
                self.sync_inside_block(sync)
                continue
            if t.value == "view":
                if stage != "view":
                    self.record_error(ParseError(t.location, "an edge or '}' (views precede edges)", t.describe()))
                self.advance()
                try:
                    self.parse_view(t.location, name, views)
                except _SyntaxError as exc:
                    self.record_error(exc.error)
                    self.skip_block_rest()
                continue
            if t.value == "influences":
                if stage == "depends_on":
                    self.record_error(
                        ParseError(t.location, "'depends_on' or '}' (influences precede depends_on)", t.describe())
                    )
                else:
                    stage = "influences"
            else:
                stage = "depends_on"
            self.advance()
            try:
                source = self.expect_name("a view name")
                self.expect_punct("->")
                target = self.expect_name("a view name")
            except _SyntaxError as exc:
                self.record_error(exc.error)
                self.sync_inside_block(sync)
                continue
            (influences if t.value == "influences" else depends_on).append((source, target))
            self.locations[("edge", name, t.value, source, target)] = t.location
        self.expect_punct("}")

        node = NfrsViewModelNode(
            name=name,
            specification=specification,
            views=views,
            influences_edges=tuple(influences),
            depends_on_edges=tuple(depends_on),
        )
        self.declare(self.view_models, ("view_model", name), node, loc, "view model")


def parse(text: str) -> Document:
    """Parse ``.nfrs`` source into a document.

    Raises ParseFailure carrying every collected ParseError; the document is
    produced only when the input is error-free.
    """
    try:
        tokens = _tokenize(text)
    except _LexError as exc:
        raise ParseFailure([exc.error]) from None
    parser = _Parser(tokens)
    parser.parse_document()
    if parser.errors:
        raise ParseFailure(parser.errors)
    return Document(
        categories=parser.categories,
        entities=parser.entities,
        frs=parser.frs,
        models=parser.models,
        view_models=parser.view_models,
        source_locations=parser.locations,
    )


# --- serializer ----------------------------------------------------------------


def _field_line(indent: str, keyword: str, value: str | None) -> list[str]:
    if value is None:
        return []
    return [f"{indent}{keyword}: {quote(value)}"]


def _nfr_block(nfr: NfrNode) -> list[str]:
    lines = [f'  {nfr.kind.value} {quote(nfr.name)} {{']
    if nfr.kind is NfrKind.STATEMENT_ITEM:
        lines += _field_line("    ", "declaration", nfr.declaration)
    else:
        lines += _field_line("    ", "definition", nfr.definition)
    lines += _field_line("    ", "statement", nfr.statement)
    if nfr.is_focus and nfr.focus_kind is not None:
        lines.append(f"    focus: {nfr.focus_kind.value}")
    lines.append("  }")
    return lines


def _model_block(model: NfrsModelNode) -> str:
    lines = [f"model {quote(model.name)} {{"]
    lines += _field_line("  ", "specification", model.specification)
    for name in sorted(model.nfrs):
        lines += _nfr_block(model.nfrs[name])
    groups = (
        sorted(f"  subcharacteristic {quote(child)} of {quote(parent)}" for parent, child in model.subchar_edges),
        sorted(
            f"  combines {quote(s)} -> {quote(t)}"
            for s, t in (*model.combines_attr_edges, *model.combines_item_edges)
        ),
        sorted(f"  maps {quote(s)} -> {quote(t)}" for s, t in model.mapped_to_edges),
        sorted(f"  refers_to_entity {quote(s)} -> {quote(t)}" for s, t in model.refers_to_entity_edges),
        sorted(f"  refers_to_category {quote(s)} -> {quote(t)}" for s, t in model.refers_to_category_edges),
        sorted(f"  relates {quote(s)} <-> {quote(t)}" for s, t in model.relates_with_edges),
        sorted(f"  satisfies {quote(s)} -> {quote(t)}" for s, t in model.satisfies_edges),
    )
    for group in groups:
        lines += group
    lines.append("}")
    return "\n".join(lines)


def _view_model_block(vm: NfrsViewModelNode) -> str:
    lines = [f"view_model {quote(vm.name)} {{"]
    lines += _field_line("  ", "specification", vm.specification)
    for name in sorted(vm.views):
        view = vm.views[name]
        lines.append(f"  view {quote(view.name)} {{")
        lines.append(f"    kind: {view.kind.value}")
        lines.append(f"    category: {quote(view.category)}")
        lines.append(f"    focus: {quote(view.focus[0])} . {quote(view.focus[1])}")
        lines += _field_line("    ", "statement", view.statement)
        lines.append("  }")
    lines += sorted(f"  influences {quote(s)} -> {quote(t)}" for s, t in vm.influences_edges)
    lines += sorted(f"  depends_on {quote(s)} -> {quote(t)}" for s, t in vm.depends_on_edges)
    lines.append("}")
    return "\n".join(lines)


def serialize(doc: Document) -> str:
    """Emit the canonical form: fixed block order, names sorted, LF endings.

    A document that resolves referentially round-trips:
    ``parse(serialize(doc)) == doc``.
    """
    blocks: list[str] = []
    for name in sorted(doc.categories):
        node = doc.categories[name]
        lines = [f"category {quote(name)} {{"]
        lines += _field_line("  ", "description", node.description)
        lines += _field_line("  ", "parent", node.parent)
        lines.append("}")
        blocks.append("\n".join(lines))
    for name in sorted(doc.entities):
        node = doc.entities[name]
        lines = [f"entity {quote(name)} {{"]
        lines += _field_line("  ", "description", node.description)
        lines.append(f"  belongs_to: {quote(node.category)}")
        lines.append("}")
        blocks.append("\n".join(lines))
    for name in sorted(doc.frs):
        node = doc.frs[name]
        blocks.append(
            "\n".join(
                [
                    f"fr {quote(name)} {{",
                    f"  statement: {quote(node.statement)}",
                    f"  requester: {quote(node.requester)}",
                    "}",
                ]
            )
        )
    for name in sorted(doc.models):
        blocks.append(_model_block(doc.models[name]))
    for name in sorted(doc.view_models):
        blocks.append(_view_model_block(doc.view_models[name]))
    if not blocks:
        return ""
    return "\n\n".join(blocks) + "\n"
