import json
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from catlogic.errors import (
    CycleDetected,
    DuplicateLabel,
    IndexOutOfRange,
    PosetError,
    PosetTooLarge,
    UnknownLabel,
)
from catlogic.order import (
    brute_force_imp,
    build_poset,
    chain_algebra,
    enumerate_downsets,
    h_imp,
    h_neg,
    is_boolean,
    load_poset,
    powerset_poset,
)

import oracles
from conftest import CORPUS, CORPUS_ALGEBRAS


def test_singleton_poset():
    p = build_poset(["x"], [])
    assert p.elements == ("x",)
    assert p.leq == ((True,),)


def test_powerset3_has_27_pairs():
    elems, leq = oracles.powerset_order(3)
    expected = sum(leq(a, b) for a, b in product(elems, elems))
    assert expected == 27
    assert powerset_poset(3).n_pairs() == 27


def test_cycle_rejected():
    with pytest.raises(CycleDetected):
        build_poset(["a", "b"], [("a", "b"), ("b", "a")])


def test_longer_cycle_rejected_after_closure():
    with pytest.raises(CycleDetected):
        build_poset(["a", "b", "c"], [("a", "b"), ("b", "c"), ("c", "a")])


def test_label_errors():
    with pytest.raises(DuplicateLabel):
        build_poset(["a", "a"])
    with pytest.raises(UnknownLabel):
        build_poset(["a"], [("a", "z")])
    with pytest.raises(PosetTooLarge):
        build_poset([str(i) for i in range(17)])


def test_closure_of_cover_relations():
    p = build_poset(["a", "b", "c"], [("a", "b"), ("b", "c")])
    assert p.leq[p.index("a")][p.index("c")]


@pytest.mark.parametrize("n,count", [(1, 3), (2, 6), (3, 20)])
def test_downset_counts_powerset(n, count):
    elems, leq = oracles.powerset_order(n)
    assert len(oracles.downsets(elems, leq)) == count
    assert enumerate_downsets(powerset_poset(n)).size == count


def test_one_element_poset_has_two_downsets():
    h = enumerate_downsets(build_poset(["x"]))
    assert h.size == 2
    assert h.downsets == (0, 1)


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_downsets_match_oracle(name):
    p = CORPUS[name]
    h = CORPUS_ALGEBRAS[name]
    leq = lambda a, b: p.leq[a][b]  # noqa: E731
    expected = sorted(sum(1 << i for i in s) for s in oracles.downsets(range(len(p)), leq))
    assert list(h.downsets) == expected
    assert h.bot == 0 and h.top == h.size - 1


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_imp_matches_union_oracle(name):
    h = CORPUS_ALGEBRAS[name]
    sets = [frozenset(i for i in range(16) if m >> i & 1) for m in h.downsets]
    for a, b in product(range(h.size), repeat=2):
        expected = oracles.rpc_by_union(sets, sets[a], sets[b])
        assert sets[h.imp[a][b]] == expected
        assert h.imp[a][b] == brute_force_imp(h, a, b)


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_heyting_laws(name):
    h = CORPUS_ALGEBRAS[name]
    assert h.verify() is None
    H = range(h.size)
    for a, b, c in product(H, repeat=3):
        assert h.meet[h.meet[a][b]][c] == h.meet[a][h.meet[b][c]]
    for a, b in product(H, repeat=2):
        assert h.meet[a][b] == h.meet[b][a]
        # closure under meet and join
        assert h.downsets[h.meet[a][b]] == h.downsets[a] & h.downsets[b]
        assert h.downsets[h.join[a][b]] == h.downsets[a] | h.downsets[b]
    for a in H:
        assert h.meet[h.top][a] == a
        assert h.meet[a][a] == a


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_boolean_iff_double_negation(name):
    h = CORPUS_ALGEBRAS[name]
    dn = all(h.neg(h.neg(a)) == a for a in range(h.size))
    assert is_boolean(h).boolean == dn


def test_imp_from_bot_is_top():
    for h in CORPUS_ALGEBRAS.values():
        for x in range(h.size):
            assert h_imp(h, h.bot, x) == h.top


def test_negation_of_empty_crible_singleton():
    h = CORPUS_ALGEBRAS["powerset:3"]
    just_empty = h.labels.index("{{}}")
    assert h_imp(h, just_empty, h.bot) == h.bot
    assert h_neg(h, just_empty) == h.bot


def test_three_chain_implications():
    h = chain_algebra(3)
    zero, m, one = 0, 1, 2
    assert h_imp(h, m, zero) == zero
    assert h_imp(h, one, m) == m


def test_is_boolean_examples():
    assert is_boolean(chain_algebra(2)).boolean
    res = is_boolean(chain_algebra(3))
    assert not res.boolean and res.witness == 1
    h = CORPUS_ALGEBRAS["powerset:3"]
    res = is_boolean(h)
    assert not res.boolean and h.label(res.witness) == "{{}}"
    antichain = enumerate_downsets(build_poset(["x", "y"]))
    assert is_boolean(antichain).boolean


def test_index_out_of_range():
    h = chain_algebra(3)
    with pytest.raises(IndexOutOfRange):
        h_imp(h, 0, 3)


def test_load_poset_names(tmp_path):
    assert len(load_poset("powerset:2")) == 4
    assert len(load_poset("chain:3")) == 3
    assert len(load_poset("diamond")) == 4
    assert len(load_poset("V")) == 4
    f = tmp_path / "p.json"
    f.write_text(json.dumps({"elements": ["a", "b", "c"], "leq": [["a", "b"], ["a", "c"]]}))
    p = load_poset(str(f))
    assert p.top() is None
    assert enumerate_downsets(p).size == 5
    with pytest.raises(PosetError):
        load_poset("chain:0")
    with pytest.raises(PosetError):
        load_poset("powerset:9")


@st.composite
def random_posets(draw):
    n = draw(st.integers(1, 6))
    # an upper-triangular relation is acyclic, so closure always succeeds
    pairs = [(str(i), str(j)) for i in range(n) for j in range(i + 1, n)
             if draw(st.booleans())]
    return build_poset([str(i) for i in range(n)], pairs)


@settings(max_examples=60, deadline=None)
@given(random_posets())
def test_random_posets_give_heyting_algebras(p):
    h = enumerate_downsets(p)
    assert h.verify() is None
    leq = lambda a, b: p.leq[a][b]  # noqa: E731
    assert h.size == len(oracles.downsets(range(len(p)), leq))
