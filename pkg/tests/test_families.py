import pytest

from toptrans.epset import EPSet
from toptrans.families import (
    LAZY, BadParams, BoundTooSmall, Confirmed, CounterexampleFound, FamilySpec, Verdict,
    build_finite, case_row_mismatches, chain_hitting, family_summary, lazy_classification,
    lazy_verdicts, window_oracle,
)
from toptrans.findyn import classify_isolated, properties


def test_parameter_validation():
    with pytest.raises(BadParams):
        FamilySpec("cycle")
    with pytest.raises(BadParams):
        FamilySpec("figure9", 2)
    with pytest.raises(BadParams):
        FamilySpec("chainZ", 3)
    with pytest.raises(BadParams):
        FamilySpec("torus")
    assert str(FamilySpec("figure9", 2, 1)) == "figure9(n=2, k=1)"


def test_figure_nine_shape():
    sys = build_finite(FamilySpec("figure9", 2, 1))
    assert sys.table == (1, 2, 1)
    assert [sys.label(x) for x in range(3)] == ["t1", "c0", "c1"]
    rep = properties(sys)
    assert rep["DO+"] and not rep["TT+"] and rep.trans == {0}


@pytest.mark.parametrize("n", range(1, 7))
def test_cycle_rows(n):
    sys = build_finite(FamilySpec("cycle", n))
    assert classify_isolated(sys).tag == "Figure0"
    assert case_row_mismatches(sys) == []


@pytest.mark.parametrize("n,k", [(n, k) for n in range(1, 7) for k in range(1, 7)])
def test_figure_nine_rows(n, k):
    sys = build_finite(FamilySpec("figure9", n, k))
    c = classify_isolated(sys)
    assert c.tag == "FiniteFigure9" and c.params == {"cycle_length": n, "tail_length": k}
    assert case_row_mismatches(sys) == []


def test_chain_hitting():
    for a, b in ((0, 5), (3, 3), (5, 0)):
        h = chain_hitting(a, b)
        assert h.value == EPSet.naturals()
        for m in range(10):
            x = h.witness(m)
            assert x < a and x + m < b
    with pytest.raises(BoundTooSmall):
        chain_hitting(-100, 0, window=10)


@pytest.mark.parametrize("name", LAZY)
def test_lazy_verdicts_stable_in_window(name):
    spec = FamilySpec(name, 3) if name == "infiniteFigure9" else FamilySpec(name)
    small = lazy_verdicts(spec, 16)
    large = lazy_verdicts(spec, 64)
    assert [(v.label, v.outcome) for v in small] == [(v.label, v.outcome) for v in large]
    assert all(v.window == 64 for v in large)


def test_chain_verdicts():
    v = {x.label: x.outcome for x in lazy_verdicts(FamilySpec("chainZ"), 64)}
    assert v["TT++"] and v["DO"] and not v["DO+"]
    assert lazy_classification(FamilySpec("chainZ")) is None
    assert lazy_classification(FamilySpec("discreteZ")) == "ZChain"


def test_window_oracle_refutes_false_claims():
    spec = FamilySpec("chainZ")
    assert isinstance(window_oracle(spec, 32, Verdict("TT++", True)), Confirmed)
    assert isinstance(window_oracle(spec, 32, Verdict("DO+", True)), CounterexampleFound)
    assert isinstance(window_oracle(FamilySpec("discreteN"), 32, Verdict("TT+", True)),
                      CounterexampleFound)
    with pytest.raises(BoundTooSmall):
        window_oracle(spec, 4, Verdict("TT", True))


def test_family_summary():
    doc = family_summary(FamilySpec("partition4"))
    assert doc["classification"]["refused"] == "NotHausdorff"
    doc = family_summary(FamilySpec("discreteN"), 16)
    assert doc["classification"] == "NChain" and not doc["finite"]
