import pytest

import oracles
from klms.errors import EnumerationCapError, InvariantError
from klms.multiseg import (
    MsPoset, Multisegment, Segment, elementary_ops, enumerate_poset, linked, ms_leq, weight,
)


def M(text):
    return Multisegment.parse(text)


def test_segment_basics():
    s = Segment(1, 3)
    assert str(s) == "[1,3]" and len(s) == 3
    assert s.contains(Segment(2, 3)) and not s.contains(Segment(0, 1))
    assert Segment.parse(" [ -1 , 2 ] ") == Segment(-1, 2)
    with pytest.raises(ValueError):
        Segment(3, 1)


def test_parse_and_print():
    a = M("2*[0,1]+[1,2]")
    assert len(a) == 3
    assert str(a) == "2*[0,1]+[1,2]"
    assert M("[1,2]+[0,1]+[0,1]") == a
    assert str(M("0")) == "0" and len(M("")) == 0
    for bad in ["[1,2", "0*[1,2]", "[2,1]", "x"]:
        with pytest.raises(ValueError):
            M(bad)


def test_linked():
    assert linked(Segment(1, 2), Segment(2, 3))
    assert linked(Segment(1, 2), Segment(3, 4))       # juxtaposed
    assert not linked(Segment(1, 2), Segment(4, 5))   # gap
    assert not linked(Segment(1, 4), Segment(2, 3))   # nested
    assert not linked(Segment(1, 2), Segment(1, 2))


def test_elementary_ops():
    assert [str(b) for b in elementary_ops(M("[1,2]+[2,3]"))] == ["[1,3]+[2,2]"]
    assert [str(b) for b in elementary_ops(M("[1,2]+[3,4]"))] == ["[1,4]"]
    assert elementary_ops(M("[1,2]")) == []
    assert elementary_ops(M("[1,4]+[2,3]")) == []


def test_weight():
    assert weight(M("[1,2]+[2,3]")) == {1: 1, 2: 2, 3: 1}
    for b in enumerate_poset(M("[0,2]+[1,3]+[2,4]")):
        assert weight(b) == {0: 1, 1: 2, 2: 3, 3: 2, 4: 1}


@pytest.mark.parametrize("text,size,covers", [
    ("[1,2]", 1, 0),
    ("[1,2]+[2,3]", 2, 1),
    ("2*[0,1]+2*[1,2]", 3, 2),
    ("[1,2]+[2,3]+[4,5]", 4, 4),
])
def test_poset_sizes(text, size, covers):
    p = enumerate_poset(M(text))
    assert len(p) == size
    assert len(p.covers) == covers


@pytest.mark.parametrize("text", [
    "2*[0,1]+2*[1,2]", "[1,2]+[2,3]+[4,5]", "[1,3]+[1,4]+[2,5]+[2,6]",
    "[0,2]+[1,3]+[2,4]+[3,5]", "[0,0]+[1,1]+[2,2]+[3,3]", "[0,1]+[1,2]+[1,1]+[2,3]",
])
def test_poset_matches_rank_criterion(text):
    a = M(text)
    p = enumerate_poset(a)
    assert sorted(x.key() for x in p) == oracles.ms_down_set(a.key())
    for x in p:
        for y in p:
            assert p.leq(x, y) == oracles.ms_leq(x.key(), y.key())


def test_minimum_and_chain():
    p = enumerate_poset(M("2*[0,1]+2*[1,2]"))
    assert str(p.minimum()) == "2*[0,2]+2*[1,1]"
    assert p.is_chain()
    assert p.maximal() == [p.root]
    q = enumerate_poset(M("[1,2]+[2,3]+[4,5]"))
    assert not q.is_chain()


def test_minimum_requires_uniqueness():
    a, b = M("[1,1]"), M("[2,2]")
    p = MsPoset(a, [a, b], {0: [], 1: []})
    with pytest.raises(InvariantError):
        p.minimum()


def test_covers_are_transitive_reduction():
    p = enumerate_poset(M("[0,2]+[1,3]+[2,4]"))
    cover_set = set(p.covers)
    for i, x in enumerate(p.elements):
        for j, y in enumerate(p.elements):
            strictly = i != j and p.leq(y, x)
            between = any(p.leq(y, z) and p.leq(z, x) and z not in (x, y) for z in p)
            assert ((i, j) in cover_set) == (strictly and not between)


def test_ms_leq():
    assert ms_leq(M("[1,3]+[2,2]"), M("[1,2]+[2,3]"))
    assert not ms_leq(M("[1,2]+[2,3]"), M("[1,3]+[2,2]"))
    assert not ms_leq(M("[1,1]"), M("[2,2]"))


def test_dot_export():
    dot = enumerate_poset(M("[1,2]+[2,3]")).to_dot()
    assert dot.startswith("digraph S {")
    assert "fillcolor=lightblue" in dot
    assert dot.count("->") == 1
    assert dot.rstrip().endswith("}")


def test_enumeration_cap(monkeypatch):
    with pytest.raises(EnumerationCapError):
        enumerate_poset(M("[0,2]+[1,3]+[2,4]+[3,5]"), cap=5)
    monkeypatch.setenv("KLMS_ENUM_CAP", "3")
    with pytest.raises(EnumerationCapError):
        enumerate_poset(M("[0,1]+[1,2]+[2,3]"))
