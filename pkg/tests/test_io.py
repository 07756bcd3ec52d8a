import json

import pytest

from toptrans.findyn import FinSystem
from toptrans.fintop import AxiomViolation, NotContinuous, space_from_min_nbhds
from toptrans.harness import Corpus
from toptrans.io import (
    InvalidDocument, basis_from_dict, dump_system, load_json, load_system, space_from_dict,
    space_to_dict, system_from_dict, system_to_dict,
)


def test_round_trip(tmp_path):
    for sys in Corpus(seed=9, count=30):
        path = tmp_path / "s.json"
        dump_system(sys, path)
        again = load_system(path)
        assert again.space == sys.space and again.table == sys.table


def test_labels_and_space_documents():
    doc = {"points": 2, "min_nbhd": [[0], [0, 1]], "map": [0, 0], "labels": ["c", "p"]}
    sys = system_from_dict(doc)
    assert sys.label(1) == "p" and system_to_dict(sys) == doc
    sp = space_from_min_nbhds(2, [{0}, {0, 1}])
    assert space_from_dict(space_to_dict(sp)) == sp
    assert basis_from_dict({"sets": [[0], [0, 1]]}, 2) == [[0], [0, 1]]


@pytest.mark.parametrize("doc", [
    [],
    {"points": 0, "min_nbhd": [], "map": []},
    {"points": True, "min_nbhd": [[0]], "map": [0]},
    {"points": 2, "min_nbhd": [[0]], "map": [0, 0]},
    {"points": 1, "min_nbhd": [[0]], "map": [1]},
    {"points": 1, "min_nbhd": [[0]], "map": [0, 0]},
    {"points": 1, "min_nbhd": [[0]]},
    {"points": 1, "min_nbhd": [["a"]], "map": [0]},
    {"points": 1, "min_nbhd": [[0]], "map": [0], "labels": [1]},
])
def test_invalid_documents(doc):
    with pytest.raises(InvalidDocument):
        system_from_dict(doc)


def test_semantic_errors_pass_through():
    with pytest.raises(AxiomViolation):
        system_from_dict({"points": 2, "min_nbhd": [[1], [1]], "map": [0, 1]})
    with pytest.raises(NotContinuous):
        system_from_dict({"points": 2, "min_nbhd": [[0], [0, 1]], "map": [1, 0]})
    with pytest.raises(InvalidDocument):
        basis_from_dict({"sets": [[2]]}, 2)


def test_bad_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(InvalidDocument):
        load_json(p)
