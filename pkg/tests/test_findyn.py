import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toptrans.families import FamilySpec, build_finite
from toptrans.findyn import (
    PROPERTIES, FinSystem, NotHausdorff, NotPlusInvariant, NotTransitive,
    OrbitSequence, PropertyReport, backward_saturation, classify_isolated, cycles,
    dense_orbit_sequence, forward_orbit, hitting_nonempty_z, hitting_set_plus, inverse_system,
    is_bijective, is_invariant, is_minimal, is_minus_invariant, is_plus_invariant, minimal_subsets,
    omega_limit, orbit_path, orbit_sequences, properties, subsystem, system_new,
    transitive_points, two_sided,
)
from toptrans.fintop import NotContinuous, discrete_space, indiscrete_space, open_sets, space_from_min_nbhds
from toptrans.harness import enumerate_systems, random_system
from toptrans.oracle import exhaustive_properties, literal_hitting, literal_omega, literal_trans, replay_report

FIG9 = FinSystem(discrete_space(3), (1, 2, 1))  # 0 -> 1 <-> 2


@st.composite
def systems(draw, max_points=5):
    n = draw(st.integers(1, max_points))
    return random_system(n, draw(st.integers(0, 2**32)))


def test_rejects_discontinuous_map():
    with pytest.raises(NotContinuous):
        system_new(space_from_min_nbhds(2, [{0}, {0, 1}]), (1, 0))
    with pytest.raises(ValueError):
        FinSystem(discrete_space(2), (0, 2))


def test_orbits_on_figure_nine():
    assert orbit_path(FIG9, 0) == ([0, 1, 2], 1)
    assert forward_orbit(FIG9, 0) == {0, 1, 2}
    assert backward_saturation(FIG9, {1}) == {0, 1, 2}
    assert backward_saturation(FIG9, {0}) == {0}
    assert two_sided(FIG9, 2) == {0, 1, 2}
    assert omega_limit(FIG9, 0) == {1, 2}
    assert cycles(FIG9) == [(1, 2)]
    assert is_plus_invariant(FIG9, {1, 2}) and not is_minus_invariant(FIG9, {1, 2})
    assert is_minus_invariant(FIG9, {0}) and is_invariant(FIG9, {1, 2})


def test_hitting_sets():
    assert str(hitting_set_plus(FIG9, {0}, {1})) == "(01)"
    assert hitting_set_plus(FIG9, {1}, {0}).is_empty()
    assert hitting_nonempty_z(FIG9, {1}, {0}) == (True, -1)
    assert hitting_nonempty_z(FinSystem(discrete_space(2), (0, 1)), {0}, {1}) == (False, None)


def test_figure_nine_report():
    rep = properties(FIG9)
    want = {"IN": True, "TT": True, "TT+": False, "TT++": False, "DO": True, "DO+": True, "DO++": False}
    assert rep.verdicts == want
    assert rep.trans == {0} and rep.iso == {0, 1, 2}
    assert rep.witnesses["TT+"] == {"pair": [1, 0]}


def test_named_small_systems():
    sier = build_finite(FamilySpec("sierpinski_map"))
    assert properties(sier)["TT+"] and not properties(sier)["TT++"]
    swap = build_finite(FamilySpec("indiscrete_swap"))
    assert all(properties(swap).verdicts.values())
    p4 = properties(build_finite(FamilySpec("partition4")))
    assert p4["TT"] and not p4["TT+"] and p4["DO+"] and not p4["DO++"]
    assert p4.iso == frozenset()


def test_cycle_is_minimal():
    c = build_finite(FamilySpec("cycle", 4))
    assert is_minimal(c) and transitive_points(c) == set(range(4))
    assert all(properties(c).verdicts.values())
    assert minimal_subsets(c) == [frozenset(range(4))]
    assert is_minimal(inverse_system(c))


def test_inverse_system():
    with pytest.raises(ValueError):
        inverse_system(FIG9)
    # a continuous bijection of a finite space sends related pairs
    # injectively onto related pairs, so its inverse is continuous too
    for n in range(1, 4):
        for sys in enumerate_systems(n):
            if is_bijective(sys):
                inv = inverse_system(sys)
                assert all(inv.table[sys.table[x]] == x for x in range(n))


def test_subsystem():
    sub = subsystem(FIG9, {1, 2})
    assert sub.table == (1, 0) and properties(sub)["TT++"]
    with pytest.raises(NotPlusInvariant):
        subsystem(FIG9, {0})


def test_orbit_sequences_on_figure_nine():
    seqs = list(orbit_sequences(FIG9))
    assert all(s.is_valid(FIG9) for s in seqs)
    assert OrbitSequence(1, (2,), (1, 2)).is_valid(FIG9)
    assert not OrbitSequence(1, (0,), (1, 2)).is_valid(FIG9)
    assert dense_orbit_sequence(FIG9).elements(FIG9) == {0, 1, 2}


def test_classification():
    assert classify_isolated(FIG9).tag == "FiniteFigure9"
    assert classify_isolated(build_finite(FamilySpec("cycle", 3))).tag == "Figure0"
    with pytest.raises(NotHausdorff):
        classify_isolated(build_finite(FamilySpec("partition4")))
    with pytest.raises(NotTransitive):
        classify_isolated(FinSystem(discrete_space(2), (0, 1)))


@given(systems())
@settings(max_examples=150, deadline=None)
def test_properties_match_definitions(sys):
    rep = properties(sys)
    assert rep.verdicts == exhaustive_properties(sys)
    assert replay_report(sys, rep) == []


@given(systems(6))
@settings(max_examples=100, deadline=None)
def test_hitting_and_omega_match_simulation(sys):
    opens = list(open_sets(sys.space))
    for x in range(sys.n):
        assert sum(1 << y for y in omega_limit(sys, x)) == literal_omega(sys, x, opens)
        for y in range(sys.n):
            u, v = sys.space.nbhd[x], sys.space.nbhd[y]
            h = hitting_set_plus(sys, u, v)
            members, infinite = literal_hitting(sys, u, v)
            bound = max(members, default=0) + 1
            assert h.members(bound) == members
            assert h.is_infinite() == infinite
    assert sum(1 << x for x in transitive_points(sys)) == literal_trans(sys)


@given(systems(6))
@settings(max_examples=100, deadline=None)
def test_lattice_on_random_systems(sys):
    r = properties(sys)
    assert not r["TT++"] or r["TT+"]
    assert not r["TT+"] or r["TT"]
    assert not r["DO++"] or r["DO+"]
    assert not r["DO+"] or r["DO"]
    assert not r["DO"] or r["TT"]
    assert r["TT"] == r["IN"]
    # on a finite system DO and DO+ coincide
    assert r["DO"] == r["DO+"]


def test_report_round_trip():
    rep = properties(FIG9)
    again = PropertyReport.from_dict(rep.to_dict())
    assert again.verdicts == rep.verdicts and again.trans == rep.trans
    assert list(rep.to_dict()["verdicts"]) == list(PROPERTIES)


def test_indiscrete_identity():
    rep = properties(FinSystem(indiscrete_space(3), (0, 1, 2)))
    assert all(rep.verdicts.values()) and rep.trans == {0, 1, 2}
