"""Golden values for n = 2, stored as JSON with a provenance header.

Each file is ``golden/n2/<name>.json`` with the keys ``provenance`` (the
oracle that produced the value), ``schema`` and ``value``.  Values are plain
JSON built from canonical scalar strings, so comparison is string equality.
"""

from __future__ import annotations

import json
from pathlib import Path

GOLDEN_DIR = Path(__file__).with_name("golden") / "n2"
SCHEMA = "1"


def path(name: str) -> Path:
    return GOLDEN_DIR / f"{name}.json"


def load(name: str) -> dict | None:
    p = path(name)
    if not p.exists():
        return None
    return json.loads(p.read_text(encoding="utf-8"))


def write(name: str, value, provenance: str) -> None:
    GOLDEN_DIR.mkdir(parents=True, exist_ok=True)
    doc = {"provenance": provenance, "schema": SCHEMA, "value": value}
    path(name).write_text(json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n",
                          encoding="utf-8")


def compare_or_update(name: str, value, provenance: str, update: bool = False) -> str:
    """'match', 'mismatch' or 'missing'; with ``update`` the file is rewritten ('updated')."""
    value = json.loads(json.dumps(value))
    if update:
        write(name, value, provenance)
        return "updated"
    doc = load(name)
    if doc is None:
        return "missing"
    return "match" if doc.get("value") == value else "mismatch"
