from __future__ import annotations

import json
from pathlib import Path

import pytest

from autorank import DEFAULT_METRICS, LanguagePair, parse_registry, parse_scores, rank_pair

DATA_DIR = Path(__file__).resolve().parents[1] / "data" / "wmt24"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture(scope="session")
def registry():
    return parse_registry((DATA_DIR / "systems.tsv").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def records(registry):
    return parse_scores(
        (DATA_DIR / "scores.tsv").read_text(encoding="utf-8"), registry, DEFAULT_METRICS
    )


@pytest.fixture(scope="session")
def goldens() -> dict[str, dict]:
    """Transcribed published tables, one golden report per pair."""
    out = {}
    for path in sorted((DATA_DIR / "golden").glob("*.json")):
        report = json.loads(path.read_text(encoding="utf-8"))
        for entry in report["pairs"]:
            out[entry["pair"]] = entry
    return out


@pytest.fixture(scope="session")
def tables(registry, records, goldens):
    """Engine-ranked tables for every pair in the fixture corpus."""
    return {
        code: rank_pair(registry, records, LanguagePair.from_code(code)) for code in goldens
    }
