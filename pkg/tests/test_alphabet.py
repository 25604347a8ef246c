import pytest
from hypothesis import given, settings, strategies as st

from cubeaut import (
    GuardExceeded,
    LabelMap,
    build_alphabet,
    DefiningGraph,
    enumerate_label_isomorphisms,
    enumerate_letters,
    is_label_isomorphism,
    tau,
)
from helpers import brute_force_label_isos


def test_symbol_layout(ck):
    assert ck.symbols == ("a", "a^-1", "b", "b^-1", "c", "c^-1", "d", "d^-1")
    assert ck.inverse["a"] == "a^-1" and ck.inverse["a^-1"] == "a"
    assert ck.base["c^-1"] == "c"


def test_commutation(ck):
    assert ck.commutes("a", "b")
    assert ck.commutes("a^-1", "b^-1")
    assert not ck.commutes("a", "c")
    # never with itself or its inverse, even on an edge
    assert not ck.commutes("a", "a")
    assert not ck.commutes("a", "a^-1")


def test_letter_constructor(ck):
    assert ck.letter(["b", "a"]) == ("a", "b")
    assert ck.letter(["c^-1", "b"]) == ("b", "c^-1")
    with pytest.raises(ValueError):
        ck.letter(["a", "c"])  # not adjacent
    with pytest.raises(ValueError):
        ck.letter(["a", "a^-1"])
    with pytest.raises(ValueError):
        ck.letter(["a", "a"])
    with pytest.raises(ValueError):
        ck.letter([])
    with pytest.raises(ValueError):
        ck.letter(["q"])


def test_letter_counts(z2, ck, c5):
    assert len(enumerate_letters(z2)) == 8
    letters = enumerate_letters(ck)
    assert len(letters) == 20
    by_size = {}
    for letter in letters:
        by_size.setdefault(len(letter), []).append(letter)
    assert len(by_size[1]) == 8
    assert len(by_size[2]) == 12
    assert 3 not in by_size
    assert len(enumerate_letters(c5)) == 30


def test_defining_graph_validation():
    with pytest.raises(ValueError):
        DefiningGraph("bad", ["a", "a"], [])
    with pytest.raises(ValueError):
        DefiningGraph("bad", ["a"], [["a", "a"]])
    with pytest.raises(ValueError):
        DefiningGraph("bad", ["a"], [["a", "b"]])


def test_label_iso_counts(z, z2, f2, ck):
    assert len(enumerate_label_isomorphisms(z)) == 2
    assert len(enumerate_label_isomorphisms(z2)) == 8
    assert len(enumerate_label_isomorphisms(f2)) == 24
    assert len(enumerate_label_isomorphisms(ck)) == 32


def test_label_isos_match_brute_force(z, z2, f2, ck):
    # independent factorial route, feasible for at most 8 symbols
    for alphabet in (z, z2, f2, ck):
        fast = {m._key for m in enumerate_label_isomorphisms(alphabet)}
        slow = {tuple(image[s] for s in alphabet.symbols)
                for image in brute_force_label_isos(alphabet)}
        assert fast == slow


def test_is_label_isomorphism(ck):
    swap = LabelMap.from_cycles(ck, [("a", "a^-1")])
    assert is_label_isomorphism(ck, swap)
    bad = {s: s for s in ck.symbols}
    bad["a"], bad["c"] = "c", "a"  # degree mismatch
    assert not is_label_isomorphism(ck, bad)
    with pytest.raises(ValueError):
        is_label_isomorphism(ck, {"a": "a"})


def test_label_map_group_laws(ck):
    isos = enumerate_label_isomorphisms(ck)
    ident = LabelMap.identity(ck)
    for m in isos[:8]:
        assert m.compose(m.inverse()) == ident
        assert m.inverse().compose(m) == ident
    m, k = isos[3], isos[5]
    assert m.compose(k)("a") == m(k("a"))


def test_label_map_apply_letter_sorts(ck):
    reverse = LabelMap.from_cycles(
        ck, [("a", "d"), ("a^-1", "d^-1"), ("b", "c"), ("b^-1", "c^-1")])
    assert reverse.apply_letter(("a", "b")) == ("c", "d")


def test_from_cycles_roundtrip(ck):
    m = LabelMap.from_cycles(ck, [("a", "a^-1"), ("c", "c^-1")])
    assert LabelMap.from_cycles(ck, m.cycles()) == m


def test_tau_basic(ck, f2):
    # inverse swaps commute with inversion, so the correction is a no-op
    swap_a = LabelMap.from_cycles(ck, [("a", "a^-1")])
    assert tau(swap_a, ("a",)) == swap_a
    swap_d = LabelMap.from_cycles(ck, [("d", "d^-1")])
    assert tau(swap_d, ("a",)) == swap_d
    # a map moving a but not a^-1 picks up the inverse transposition
    sig = LabelMap.from_cycles(f2, [("a", "b")])
    assert tau(sig, ("a",)) == LabelMap.from_cycles(
        f2, [("a", "b"), ("a^-1", "b^-1")])


@given(st.integers(0, 31), st.data())
@settings(max_examples=40, deadline=None)
def test_tau_is_label_iso(idx, data):
    ck = build_alphabet(DefiningGraph(
        "ck", ["a", "b", "c", "d"], [["a", "b"], ["b", "c"], ["c", "d"]]))
    sigma = enumerate_label_isomorphisms(ck)[idx]
    beta = data.draw(st.sampled_from(enumerate_letters(ck)))
    assert is_label_isomorphism(ck, tau(sigma, beta))


def test_iso_guard(monkeypatch):
    gens = [chr(ord("a") + i) for i in range(7)]  # 14 symbols > guard 12
    edges = [[gens[i], gens[i + 1]] for i in range(6)]
    big = build_alphabet(DefiningGraph("big", gens, edges))
    with pytest.raises(GuardExceeded):
        enumerate_label_isomorphisms(big)
    # the env override raises the guard; sign swaps times path reversal
    monkeypatch.setenv("CUBEAUT_GUARD_OVERRIDE", "14")
    assert len(enumerate_label_isomorphisms(big)) == 2**7 * 2
    # an explicit limit still wins over the env
    with pytest.raises(GuardExceeded):
        enumerate_label_isomorphisms(big, max_symbols=12)
