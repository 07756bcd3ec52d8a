import copy

from toptrans.findyn import FinSystem, PropertyReport, properties
from toptrans.fintop import discrete_space, indiscrete_space, space_from_min_nbhds
from toptrans.harness import exhaustive_corpus
from toptrans.oracle import (
    exhaustive_properties, hits, literal_closure, literal_hitting, literal_omega,
    literal_trans, opene_sets, period_bound, replay_report, walk_element_sets,
)

FIG9 = FinSystem(discrete_space(3), (1, 2, 1))


def _copy(rep):
    return PropertyReport(dict(rep.verdicts), rep.trans, rep.iso, copy.deepcopy(rep.witnesses))


def test_hand_values():
    assert period_bound(FIG9) == 2
    assert hits(FIG9, 0b001, 0b010, 1) and not hits(FIG9, 0b001, 0b010, 2)
    assert literal_hitting(FIG9, 0b001, 0b010) == ([1, 3], True)
    assert literal_hitting(FIG9, 0b010, 0b001) == ([], False)
    assert literal_omega(FIG9, 0, [0, 1, 2, 4, 7]) == 0b110
    assert literal_trans(FIG9) == 0b001
    sier = space_from_min_nbhds(2, [{0}, {0, 1}])
    assert literal_closure(sier, 0b01) == 0b11
    assert opene_sets(sier) == [0b01, 0b11]


def test_walks_on_figure_nine():
    # 0 has no preimage; the cycle {1,2} also gives bi-infinite sequences
    assert walk_element_sets(FIG9) == {0b111, 0b110}


def test_exhaustive_properties_hand_examples():
    assert exhaustive_properties(FIG9) == {"TT": True, "TT+": False, "TT++": False, "IN": True,
                                           "DO": True, "DO+": True, "DO++": False}
    ident = FinSystem(discrete_space(2), (0, 1))
    assert not any(exhaustive_properties(ident).values())
    assert all(exhaustive_properties(FinSystem(indiscrete_space(2), (0, 0))).values())


def test_replay_passes_on_small_corpus():
    for sys in exhaustive_corpus(3, 4):
        assert replay_report(sys, properties(sys)) == [], sys


def test_replay_passes_on_all_four_point_topologies():
    bad = [sys for sys in exhaustive_corpus(4, 4) if sys.n == 4 and replay_report(sys, properties(sys))]
    assert bad == []


def test_replay_catches_wrong_verdict():
    rep = _copy(properties(FIG9))
    rep.verdicts["TT+"] = True
    assert any(p.startswith("TT+") for p in replay_report(FIG9, rep))


def test_replay_catches_wrong_trans():
    rep = _copy(properties(FIG9))
    rep.trans = frozenset({0, 1})
    assert replay_report(FIG9, rep)


def test_replay_catches_forged_certificates():
    rep = properties(FIG9)
    forged = _copy(rep)
    forged.witnesses["TT"]["pairs"] = forged.witnesses["TT"]["pairs"][:-1]
    assert replay_report(FIG9, forged)
    forged = _copy(rep)
    forged.witnesses["DO+"]["point"] = 1
    assert replay_report(FIG9, forged)
    forged = _copy(rep)
    forged.witnesses["TT+"]["pair"] = [0, 1]
    assert replay_report(FIG9, forged)
