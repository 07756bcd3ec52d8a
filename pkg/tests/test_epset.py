from hypothesis import given
from hypothesis import strategies as st

from toptrans.epset import EPSet

bits = st.lists(st.booleans(), max_size=8)
periods = st.lists(st.booleans(), min_size=1, max_size=6)


def test_canonical_forms():
    assert EPSet((True, False), (True, False)) == EPSet((), (True, False))
    assert EPSet((), (True, True, True)) == EPSet.naturals()
    assert EPSet((False, False), (False,)) == EPSet.empty()
    assert str(EPSet((True,), (False, True))) == "(10)"
    assert str(EPSet((True, False, False), (True, False))) == "10(01)"


def test_queries():
    s = EPSet((True, False), (False, True))
    assert s.members(8) == [0, 3, 5, 7]
    assert s.min() == 0 and s.is_infinite() and not s.is_cofinite()
    assert -1 not in s
    assert EPSet((True,), (False,)).members(5) == [0]
    assert EPSet.empty().min() is None and EPSet.empty().is_empty()
    assert EPSet((False,), (True,)).is_cofinite()


@given(bits, periods)
def test_canonical_form_preserves_membership(pre, per):
    s = EPSet(tuple(pre), tuple(per))
    for k in range(3 * (len(pre) + len(per)) + 4):
        if k < len(pre):
            want = pre[k]
        else:
            want = per[(k - len(pre)) % len(per)]
        assert (k in s) == want


@given(bits, periods, bits, periods)
def test_equality_is_extensional(p1, q1, p2, q2):
    a, b = EPSet(tuple(p1), tuple(q1)), EPSet(tuple(p2), tuple(q2))
    horizon = 2 * (len(p1) + len(p2)) + 2 * len(q1) * len(q2) + 2
    same = a.members(horizon) == b.members(horizon)
    assert (a == b) == same


@given(bits, periods)
def test_dict_round_trip(pre, per):
    s = EPSet(tuple(pre), tuple(per))
    assert EPSet.from_dict(s.to_dict()) == s
    assert EPSet.from_bits(pre + per, len(pre)) == s
