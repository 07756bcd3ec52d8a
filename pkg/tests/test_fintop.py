import random
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from toptrans.fintop import (
    AxiomViolation, DensityBasis, EmptyBasisRejected, EmptySubspace, NotContinuous,
    PreconditionFailed, SpaceMap, all_spaces, closure, continuous_maps, discrete_space,
    extend_basis, indiscrete_space, interior, is_closed, is_dense, is_density_basis, is_open,
    is_perfect, isolated_points, map_predicates, open_sets, pullback_basis, pushforward_basis,
    restrict_basis, separation_flags, space_from_min_nbhds, space_from_subbasis, subspace,
)
from toptrans.harness import _random_preorder

SIERPINSKI = space_from_min_nbhds(2, [{0}, {0, 1}])


def small_spaces(limit=3):
    for n in range(1, limit + 1):
        yield from all_spaces(n)


@st.composite
def spaces(draw, max_points=6):
    n = draw(st.integers(1, max_points))
    return _random_preorder(n, random.Random(draw(st.integers(0, 2**32))), False)


def test_topology_counts():
    assert [sum(1 for _ in all_spaces(n)) for n in range(1, 5)] == [1, 4, 29, 355]


def test_sierpinski_basics():
    s = SIERPINSKI
    assert list(open_sets(s)) == [0, 0b01, 0b11]
    assert closure(s, {0}) == {0, 1}
    assert closure(s, {1}) == {1}
    assert interior(s, {1}) == set()
    assert is_dense(s, {0}) and not is_dense(s, {1})
    assert isolated_points(s) == {0}
    assert not is_perfect(s)
    assert separation_flags(s) == (True, False, False, False)


def test_rejects_bad_neighbourhoods():
    with pytest.raises(AxiomViolation):
        space_from_min_nbhds(3, [{0, 1}, {1, 2}, {2}])
    with pytest.raises(AxiomViolation):
        space_from_min_nbhds(2, [{1}, {1}])


def test_subbasis_generates_intersections():
    sp = space_from_subbasis(3, [{0, 1}, {1, 2}])
    assert sp.describe() == [[0, 1], [1], [1, 2]]


def test_discrete_and_indiscrete_flags():
    assert separation_flags(discrete_space(3)) == (True, True, True, True)
    f = separation_flags(indiscrete_space(3))
    assert not f.t0 and f.regular and not f.hausdorff
    assert is_perfect(indiscrete_space(2)) and not is_perfect(indiscrete_space(1))


def _literal_closure(space, s):
    # complement of the union of all open sets missing s
    miss = 0
    for o in open_sets(space):
        if not o & s:
            miss |= o
    return space.full & ~miss


def test_closure_interior_match_open_set_definitions():
    for sp in small_spaces():
        opens = list(open_sets(sp))
        for s in range(sp.full + 1):
            assert sp.closure_mask(s) == _literal_closure(sp, s)
            assert sp.interior_mask(s) == max(o for o in opens if o & ~s == 0)


def test_separation_flags_match_literal_definitions():
    for sp in small_spaces():
        opens = [o for o in open_sets(sp) if o]
        pts = range(sp.n)
        sep = lambda x, y: any(o >> x & 1 and not o >> y & 1 for o in opens)
        t0 = all(sep(x, y) or sep(y, x) for x, y in combinations(pts, 2))
        t1 = all(sep(x, y) and sep(y, x) for x, y in combinations(pts, 2))
        t2 = all(any(a >> x & 1 and b >> y & 1 and not a & b for a in opens for b in opens)
                 for x, y in combinations(pts, 2))
        closed = [sp.full & ~o for o in open_sets(sp)]
        reg = all(any(a >> x & 1 and b & c == c and not a & b for a in opens for b in opens + [0])
                  for c in closed for x in pts if not c >> x & 1)
        assert separation_flags(sp) == (t0, t1, t2, reg), sp


@given(spaces())
def test_random_spaces_are_valid(sp):
    for x in range(sp.n):
        assert sp.nbhd[x] >> x & 1
        assert is_open(sp, sp.min_nbhd(x))
    assert is_closed(sp, closure(sp, {0}))
    assert sp.closure_mask(sp.closure_mask(1)) == sp.closure_mask(1)


def test_subspace_reindexes():
    sp = space_from_min_nbhds(3, [{0}, {0, 1}, {0, 1, 2}])
    sub, index = subspace(sp, {1, 2})
    assert index == (1, 2)
    assert sub.describe() == [[0], [0, 1]]
    with pytest.raises(EmptySubspace):
        subspace(sp, set())


def _families(sp):
    opene = [o for o in open_sets(sp) if o]
    for r in range(1, len(opene) + 1):
        for fam in combinations(opene, r):
            yield fam


def test_density_basis_default_matches_exhaustive():
    for sp in small_spaces():
        for fam in _families(sp):
            for c in ("I", "II", "III", "IV", "V"):
                assert is_density_basis(sp, fam, c) == is_density_basis(sp, fam, c, exhaustive=True)


def test_density_basis_examples():
    sp = discrete_space(2)
    assert is_density_basis(sp, [{0}, {1}])
    assert not is_density_basis(sp, [{0}])
    assert is_density_basis(SIERPINSKI, [{0}])
    with pytest.raises(EmptyBasisRejected):
        is_density_basis(sp, [])
    with pytest.raises(ValueError):
        DensityBasis.of(SIERPINSKI, [{1}])


def test_criterion_three_can_differ_off_regular():
    # every opene set contains the open point 1, so every opene set is
    # dense, yet the closed point {0} meets X without being dense
    sp = space_from_min_nbhds(2, [{0, 1}, {1}])
    fam = [{0, 1}]
    assert not is_density_basis(sp, fam, "I")
    assert is_density_basis(sp, fam, "III")
    assert not separation_flags(sp).regular


def test_continuity_is_checked():
    with pytest.raises(NotContinuous):
        SpaceMap(SIERPINSKI, SIERPINSKI, (1, 0))
    maps = {h.table for h in continuous_maps(SIERPINSKI, SIERPINSKI)}
    assert maps == {(0, 0), (1, 1), (0, 1)}


def test_irreducible_shortcut_and_weak_openness():
    for dom in small_spaces(2):
        for cod in small_spaces(3):
            for h in continuous_maps(dom, cod):
                f = map_predicates(h)
                assert map_predicates(h, shortcut=True) == f
                if f.irreducible:
                    assert f.weakly_almost_open and f.dense_image


def test_transfers():
    sp = discrete_space(3)
    assert restrict_basis(sp, [{0}, {1}, {2}], {0, 1, 2}).verified
    with pytest.raises(PreconditionFailed):
        restrict_basis(sp, [{0}], {0})
    r = extend_basis(discrete_space(2), {0, 1}, [{0}, {1}])
    assert r.verified
    # off regular spaces the extension can fail: int cl {0} = X here
    r = extend_basis(SIERPINSKI, {0}, [{0}])
    assert r.sets == (frozenset({0, 1}),) and not r.verified
    h = SpaceMap(discrete_space(2), discrete_space(2), (1, 0))
    assert pullback_basis(h, [{0}, {1}]).verified
    assert pushforward_basis(h, [{0}, {1}]).verified
    with pytest.raises(PreconditionFailed):
        pushforward_basis(SpaceMap(discrete_space(2), discrete_space(2), (0, 0)), [{0}, {1}])


def test_pushforward_onto_non_regular_codomain():
    # a one-point space onto the open point of a Sierpinski space: weakly
    # almost open with dense image, but {int cl h(U)} = {Y} is met by the
    # non-dense closed point
    cod = space_from_min_nbhds(2, [{0, 1}, {1}])
    h = SpaceMap(discrete_space(1), cod, (1,))
    f = map_predicates(h)
    assert f.weakly_almost_open and f.dense_image
    r = pushforward_basis(h, [{0}])
    assert r.sets == (frozenset({0, 1}),)
    assert not r.verified
    assert is_density_basis(cod, r.sets, "III")
