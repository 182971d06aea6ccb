"""Test bootstrap configuration and shared fixtures."""

from __future__ import annotations

import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent.parent
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

FIXTURES = ROOT / "tests" / "fixtures" / "phishing_small"


@pytest.fixture
def fixture_transactions() -> Path:
    return FIXTURES / "transactions.csv"


@pytest.fixture
def fixture_labels() -> Path:
    return FIXTURES / "labels.csv"
