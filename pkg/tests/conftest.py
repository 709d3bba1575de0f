from pathlib import Path

import pytest

from rosi.core.engine import EngineConfig, QueryEngine
from rosi.snapshot.store import load_snapshot

TESTS_DIR = Path(__file__).parent
F1_DIR = TESTS_DIR / "fixtures" / "f1"
GOLDEN_DIR = TESTS_DIR / "golden"


@pytest.fixture
def f1_dir() -> Path:
    return F1_DIR


@pytest.fixture
def f1():
    """(catalog, providers) loaded from the F1 fixture."""
    return load_snapshot(F1_DIR)


@pytest.fixture
def f1_catalog(f1):
    return f1[0]


@pytest.fixture
def f1_providers(f1):
    return f1[1]


@pytest.fixture
def f1_engine() -> QueryEngine:
    return QueryEngine.open(EngineConfig(snapshot_dir=F1_DIR))
