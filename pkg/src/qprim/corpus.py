"""Ring corpora for the verification suite."""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import RingSpecError
from .specs import PolyQuotient, Product, RingSpec, ZMod, spec_from_json, spec_label


@dataclass(frozen=True)
class CorpusEntry:
    label: str
    spec: RingSpec


def _poly(p: int, *modulus: int) -> PolyQuotient:
    return PolyQuotient(ZMod(p), tuple(modulus))


def default_corpus() -> list:
    specs = [ZMod(n) for n in (2, 3, 4, 6, 8, 9, 12, 16, 24, 36, 60)]
    specs += [_poly(2, 0, 0, 1), _poly(2, 0, 0, 0, 1), _poly(3, 0, 0, 1), _poly(2, 1, 1, 1)]
    specs += [
        Product((ZMod(2), ZMod(2))),
        Product((ZMod(4), ZMod(3))),
        Product((ZMod(2), ZMod(2), ZMod(3))),
        Product((ZMod(4), _poly(2, 0, 0, 1))),
    ]
    return [CorpusEntry(spec_label(s), s) for s in specs]


def load_corpus(source: str) -> list:
    """``default`` or a JSON file: a list of ring specs or of {"label", "spec"} objects."""
    if source == "default":
        return default_corpus()
    try:
        data = json.loads(Path(source).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise RingSpecError(f"cannot read corpus {source}: {exc}") from exc
    if not isinstance(data, list):
        raise RingSpecError("corpus file must hold a JSON list")
    entries = []
    for item in data:
        if isinstance(item, dict) and "spec" in item:
            spec = spec_from_json(item["spec"])
            entries.append(CorpusEntry(str(item.get("label") or spec_label(spec)), spec))
        else:
            spec = spec_from_json(item)
            entries.append(CorpusEntry(spec_label(spec), spec))
    return entries
