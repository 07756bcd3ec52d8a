"""JSON documents for spaces, systems and density-basis families."""
from __future__ import annotations

import json
from pathlib import Path

from .findyn import FinSystem
from .fintop import FinSpace, space_from_min_nbhds


class InvalidDocument(ValueError):
    pass


def _points(doc: dict) -> int:
    n = doc.get("points")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InvalidDocument('"points" must be a positive integer')
    return n


def _index_list(value, n: int, what: str) -> list[int]:
    if not isinstance(value, list) or not all(isinstance(i, int) and not isinstance(i, bool) for i in value):
        raise InvalidDocument(f"{what} must be a list of point indices")
    if any(not 0 <= i < n for i in value):
        raise InvalidDocument(f"{what} has an index outside 0..{n - 1}")
    return value


def space_from_dict(doc: dict) -> FinSpace:
    if not isinstance(doc, dict):
        raise InvalidDocument("expected a JSON object")
    n = _points(doc)
    nb = doc.get("min_nbhd")
    if not isinstance(nb, list) or len(nb) != n:
        raise InvalidDocument('"min_nbhd" must list one neighbourhood per point')
    return space_from_min_nbhds(n, [_index_list(u, n, "min_nbhd entry") for u in nb])


def space_to_dict(space: FinSpace) -> dict:
    return {"points": space.n, "min_nbhd": space.describe()}


def system_from_dict(doc: dict) -> FinSystem:
    space = space_from_dict(doc)
    table = _index_list(doc.get("map"), space.n, '"map"')
    if len(table) != space.n:
        raise InvalidDocument('"map" must have one entry per point')
    labels = doc.get("labels")
    if labels is not None:
        if not isinstance(labels, list) or len(labels) != space.n or not all(isinstance(s, str) for s in labels):
            raise InvalidDocument('"labels" must be one string per point')
        labels = tuple(labels)
    return FinSystem(space, tuple(table), labels)


def system_to_dict(sys: FinSystem) -> dict:
    doc = {"points": sys.n, "min_nbhd": sys.space.describe(), "map": list(sys.table)}
    if sys.labels:
        doc["labels"] = list(sys.labels)
    return doc


def basis_from_dict(doc: dict, n: int) -> list[list[int]]:
    if not isinstance(doc, dict) or not isinstance(doc.get("sets"), list):
        raise InvalidDocument('a density-basis document is {"sets": [[...], ...]}')
    return [_index_list(s, n, "basis member") for s in doc["sets"]]


def load_json(path: str | Path) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise InvalidDocument(f"{path}: not valid JSON ({e})") from e


def load_system(path: str | Path) -> FinSystem:
    return system_from_dict(load_json(path))


def dump_system(sys: FinSystem, path: str | Path) -> None:
    Path(path).write_text(json.dumps(system_to_dict(sys)) + "\n", encoding="utf-8")
