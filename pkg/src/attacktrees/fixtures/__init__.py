"""Bundled example inputs (the thief/guard arena, example trees and s-trees, a toy arena)."""
from __future__ import annotations

from pathlib import Path

DIR = Path(__file__).parent


def path(name: str) -> Path:
    p = DIR / name
    if not p.is_file():
        raise FileNotFoundError(f"no bundled fixture named {name!r}")
    return p


def text(name: str) -> str:
    return path(name).read_text()


def names() -> list[str]:
    return sorted(p.name for p in DIR.iterdir() if p.suffix in
                  {".arena", ".tree", ".stree", ".strategy", ".qdimacs"})
