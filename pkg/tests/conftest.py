from __future__ import annotations

from pathlib import Path

import pytest

from nfrstdo import Document, parse

FIXTURES = Path(__file__).parent / "fixtures"


def fixture_path(name: str) -> Path:
    return FIXTURES / name


def load_fixture(name: str) -> Document:
    return parse(fixture_path(name).read_text(encoding="utf-8"))


@pytest.fixture
def chain_doc() -> Document:
    return load_fixture("quality_views_chain.nfrs")


@pytest.fixture
def product_quality_doc() -> Document:
    return load_fixture("software_product_quality.nfrs")


@pytest.fixture
def checklist_doc() -> Document:
    return load_fixture("heuristic_checklist.nfrs")


@pytest.fixture
def trace_doc() -> Document:
    return load_fixture("satisfies_trace.nfrs")
