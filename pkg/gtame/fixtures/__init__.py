"""Shipped algebra files: A1, A2, A3, A3-rel, K2, K3, K4, K5."""

from __future__ import annotations

from pathlib import Path
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from ..algebra import AlgebraSpec

FIXTURE_DIR = Path(__file__).parent


def names() -> list[str]:
    return sorted(p.stem for p in FIXTURE_DIR.glob("*.json"))


def resolve(name_or_path: str | Path) -> Path:
    """Resolve a fixture name or a filesystem path.

    Handles two cases:
    1. Fixture names, case-insensitive, "-" or "_": "A3-rel" → fixtures/a3_rel.json
    2. Anything else is returned as a path, relative to the working directory
    """
    p = Path(name_or_path)
    if p.suffix == "" and len(p.parts) == 1:
        candidate = FIXTURE_DIR / f"{p.name.lower().replace('-', '_')}.json"
        if candidate.is_file():
            return candidate
    return p


def load(name_or_path: str | Path) -> AlgebraSpec:
    """AlgebraSpec of a fixture or file."""
    from ..algebra import AlgebraSpec

    return AlgebraSpec.load(resolve(name_or_path))
