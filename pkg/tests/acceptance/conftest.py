"""
Acceptance suite fixtures.

Tolerances and suite sizes live in config/acceptance_thresholds.py.
Large suites carry the `slow` marker; the real-data check carries
`realdata` and skips without the dataset.
"""

import os
from pathlib import Path

import pytest

REALDATA_ENV = "TEDGE_REALDATA_DIR"


@pytest.fixture
def thresholds():
    """Access to configured thresholds."""
    from config import acceptance_thresholds
    return acceptance_thresholds


@pytest.fixture
def realdata_dir() -> Path:
    """Directory holding transactions.csv and labels.csv of the published dataset."""
    root = os.getenv(REALDATA_ENV)
    if not root or not (Path(root) / "transactions.csv").exists():
        pytest.skip(f"set {REALDATA_ENV} to the phishing dataset directory")
    return Path(root)
