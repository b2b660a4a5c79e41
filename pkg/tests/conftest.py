import json
from pathlib import Path

import pytest

from picode import exactnum
from picode.specfile import build_from_spec, example_specs

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture(autouse=True)
def _squarefree_checks(monkeypatch):
    monkeypatch.setattr(exactnum, "CHECK_SQUAREFREE", True)


@pytest.fixture(scope="session")
def example_codes():
    return {name.removesuffix(".json"): build_from_spec(spec) for name, spec in example_specs().items()}


@pytest.fixture(scope="session")
def golden_dir():
    return GOLDEN


def load_golden(name):
    return json.loads((GOLDEN / name).read_text())
