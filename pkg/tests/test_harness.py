import json

import pytest

from toptrans.families import FamilySpec, build_finite
from toptrans.findyn import FinSystem, minimal_subsets, properties, transitive_points
from toptrans.fintop import (discrete_space, indiscrete_space, is_perfect, separation_flags,
                             space_from_min_nbhds)
from toptrans.harness import (
    NEGATIVE_CONTROLS, THEOREM_IDS, BoundExceeded, Corpus, dense_plus_invariant_subsets,
    enumerate_systems, evaluate_predicate, exhaustive_corpus, parse_predicate, random_system,
    replay_corpus, report_json, run_all_checks, search_counterexample, subsystem_transfer_mismatches,
    verify_lattice, verify_theorem_suite,
)
from toptrans.io import system_from_dict, system_to_dict


@pytest.fixture(scope="module")
def small():
    return list(exhaustive_corpus(3, 4))


def test_random_system_basics():
    assert random_system(1, 5).table == (0,)
    sys = random_system(4, 7)
    assert FinSystem(sys.space, sys.table).table == sys.table
    assert separation_flags(random_system(3, 1, ["hausdorff"]).space).hausdorff
    assert is_perfect(random_system(5, 2, ["perfect"]).space)
    with pytest.raises(ValueError):
        random_system(1, 0, ["perfect"])
    with pytest.raises(ValueError):
        random_system(3, 0, ["compact"])


def test_random_systems_cover_topology_kinds():
    kinds = set()
    for sys in Corpus(seed=11, count=300, max_points=4):
        f = separation_flags(sys.space)
        full = all(u == sys.space.full for u in sys.space.nbhd)
        kinds.add("discrete" if f.hausdorff else "indiscrete" if full else "mixed")
    assert kinds == {"discrete", "indiscrete", "mixed"}


def test_corpus_is_deterministic():
    a = [system_to_dict(s) for s in Corpus(seed=3, count=50)]
    b = [system_to_dict(s) for s in Corpus(seed=3, count=50)]
    c = [system_to_dict(s) for s in Corpus(seed=4, count=50)]
    assert a == b and a != c


def test_filters_hold():
    for sys in Corpus(seed=1, count=40, min_points=2, max_points=6, filters=("perfect", "bijective")):
        assert not any(sys.space.nbhd[x] == 1 << x for x in range(sys.n))
        assert sorted(sys.table) == list(range(sys.n))


def test_enumeration_counts():
    assert len(list(enumerate_systems(1))) == 1
    assert len(list(enumerate_systems(3, discrete=True))) == 27
    by_space = {}
    for sys in enumerate_systems(2):
        by_space.setdefault(sys.space, []).append(sys.table)
    assert len(by_space) == 4
    assert len(by_space[discrete_space(2)]) == 4
    with pytest.raises(BoundExceeded):
        list(enumerate_systems(5))
    with pytest.raises(BoundExceeded):
        list(enumerate_systems(6, discrete=True))


def test_lattice_clean_on_small_corpus(small):
    results = verify_lattice(small)
    assert all(r.status == "passed" for r in results)
    assert {r.id for r in results} >= {"TT++=>TT+", "DO=>TT", "TT=>IN", "IN=>TT"}


def test_single_cycle_lattice():
    res = verify_lattice([build_finite(FamilySpec("cycle", 3))])
    assert all(r.checked == 1 and not r.violations for r in res)


def test_theorem_suite_on_small_corpus(small):
    results = {r.id: r for r in verify_theorem_suite(small)}
    assert set(results) == set(THEOREM_IDS)
    assert not [r.id for r in results.values() if r.status == "failed"]
    # finite Hausdorff spaces are discrete, so perfect-space statements have no instances
    for tid in ("perfect-tt-recurrent", "perfect-do-plus-omega", "perfect-t1-do-tt-plus"):
        assert results[tid].status == "vacuous"
    assert results["hausdorff-tt-plus-single-cycle"].checked > 0


def test_vacuous_instances_never_count_as_passing():
    results = verify_theorem_suite([FinSystem(discrete_space(2), (0, 1))], only=["tt-plus-forward-dense"])
    assert results[0].status == "vacuous"


def test_hausdorff_matters():
    # U_c = {c}, U_p = {c, p}, f constant c: minimal but with no closed invariant set
    sys = FinSystem(space_from_min_nbhds(2, [{0}, {0, 1}]), (0, 0))
    assert transitive_points(sys) == {0, 1}
    assert minimal_subsets(sys) == [frozenset({0, 1})]
    assert sys.image_mask(0b11) != 0b11
    kept = {r.id: r for r in verify_theorem_suite([sys])}
    dropped = {r.id: r for r in verify_theorem_suite([sys], drop_hausdorff=True)}
    assert kept["minimal-subset-exists"].checked == 0
    assert dropped["minimal-subset-exists"].status == "failed"


def test_dense_subsystem_perfectness_needs_separation():
    sys = FinSystem(indiscrete_space(2), (0, 1))
    assert dense_plus_invariant_subsets(sys) == [0b01, 0b10, 0b11]
    m = subsystem_transfer_mismatches(sys, 0b01)
    assert m == {"A": [0], "perfect": [True, False]}


def test_negative_controls_are_caught(small):
    extra = [build_finite(FamilySpec("partition4"))]
    for name, procs in NEGATIVE_CONTROLS.items():
        results = run_all_checks(small + extra, procs)
        assert any(r.violations for r in results), name


def test_violations_carry_replayable_witnesses(small):
    results = verify_lattice(small, NEGATIVE_CONTROLS["in-always-true"])
    v = next(r for r in results if r.violations).violations[0]
    sys = system_from_dict(v["system"])
    assert v["witness"]["verdicts"]["IN"] and not v["literal"]["IN"]
    assert any(p.startswith("IN") for p in v["replay"])
    assert sys.n == v["system"]["points"]


def test_replay_corpus(small):
    assert replay_corpus(small).status == "passed"
    assert replay_corpus(small, NEGATIVE_CONTROLS["tt2-is-tt1"]).status == "failed"


def test_report_json_shape(small):
    doc = report_json(verify_lattice(small[:20]))
    json.dumps(doc)
    assert set(doc[0]) >= {"id", "anchor", "checked", "vacuous", "violations"}


def test_predicates():
    terms = parse_predicate("perfect & TT & !TT+")
    assert terms == [("perfect", True), ("TT", True), ("TT+", False)]
    assert parse_predicate("!!DO") == [("DO", True)]
    with pytest.raises(ValueError):
        parse_predicate("TT | DO")
    p4 = build_finite(FamilySpec("partition4"))
    assert evaluate_predicate(terms, p4, properties(p4).verdicts)


def test_search_finds_certified_separators():
    for expr in ("perfect & TT & !TT+", "perfect & DO+ & !DO++"):
        res = search_counterexample(expr, 1000)
        assert res.status == "found" and res.certified and res.candidates <= 1000


def test_search_outcomes():
    res = search_counterexample("TT & !TT", 10_000, max_all=3, max_discrete=4)
    assert res.status == "exhausted" and res.candidates == 646
    assert search_counterexample("perfect & TT & !TT+", 10).status == "budget"
    res = search_counterexample("hausdorff & TT & !DO", 100_000)
    assert res.status == "exhausted" and res.candidates > 20_000
