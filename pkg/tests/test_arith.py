import itertools
from math import comb

import pytest

from posetpow import (
    EMPTY, CapError, EmptyExponentError, MonotoneMap, PreconditionError,
    antichain, are_isomorphic, chain, component_C, constant_embed, crown,
    curry_iso, decode_pair, diagonal_D, disjoint_sum, distributivity_check,
    encode_pair, exponent, is_connected, product, singleton,
)
from posetpow.arith import transport_exponent
from posetpow.catalog import catalog_upto
from posetpow.core import linear_extension

import oracles

UPTO3 = catalog_upto(3)
UPTO4 = catalog_upto(4)


def test_product_grid():
    G = product(chain(2), chain(2))
    assert G.n == 4
    assert G.minimal() == [0] and G.maximal() == [3]
    assert not G.comparable(1, 2)


def test_product_codec_and_order():
    P, Q = chain(3), crown(4)
    R = product(P, Q)
    for p, q in itertools.product(range(P.n), range(Q.n)):
        k = encode_pair(Q, p, q)
        assert decode_pair(Q, k) == (p, q)
        for p2, q2 in itertools.product(range(P.n), range(Q.n)):
            assert R.leq(k, encode_pair(Q, p2, q2)) == (P.leq(p, p2) and Q.leq(q, q2))


def test_product_identity():
    for P in UPTO4:
        assert product(P, singleton()) == P
        assert are_isomorphic(product(singleton(), P), P) is not None


def test_product_connectivity():
    for P, Q in itertools.product(UPTO4, repeat=2):
        assert oracles.naive_connected(product(P, Q)) == (is_connected(P) and is_connected(Q))


def test_product_guard():
    with pytest.raises(CapError):
        product(chain(10), chain(10), guard=99)


def test_crown_to_chain2_matches_comparable_pairs():
    E = crown(4)
    EX = exponent(E, chain(2))
    pairs = [(u, v) for u in range(4) for v in range(4) if E.leq(u, v)]
    assert len(pairs) == 8 == EX.poset.n
    assert sorted(EX.maps) == sorted(pairs)
    assert is_connected(EX.poset)


@pytest.mark.parametrize("E, X, size", [
    (chain(2), antichain(3), 8),
    (chain(3), chain(2), 6),
    (chain(3), EMPTY, 1),
    (EMPTY, EMPTY, 1),
    (EMPTY, chain(1), 0),
])
def test_exponent_sizes(E, X, size):
    assert exponent(E, X).poset.n == size


def test_exponent_matches_naive_double_loop():
    for E, X in itertools.product([EMPTY] + UPTO3, repeat=2):
        EX = exponent(E, X)
        maps, order = oracles.naive_exponent(E, X)
        assert sorted(EX.maps) == sorted(maps)
        assert len(set(EX.maps)) == len(EX.maps)
        pos = {t: k for k, t in enumerate(maps)}
        for a, f in enumerate(EX.maps):
            for b, g in enumerate(EX.maps):
                assert EX.poset.leq(a, b) == order[pos[f]][pos[g]]


def test_exponent_down_rows_are_transpose():
    EX = exponent(crown(4), chain(3))
    cols = [[EX.poset.leq(i, j) for i in range(EX.poset.n)] for j in range(EX.poset.n)]
    for j in range(EX.poset.n):
        assert [bool(EX.poset.down[j] >> i & 1) for i in range(EX.poset.n)] == cols[j]


def test_discrete_exponent_counts():
    for E in [EMPTY] + UPTO3:
        for n in range(4):
            assert exponent(E, antichain(n)).poset.n == E.n ** n


def test_chain_exponent_binomial():
    for m, n in itertools.product(range(1, 5), repeat=2):
        assert exponent(chain(m), chain(n)).poset.n == comb(m + n - 1, n)


def test_maps_are_lexicographic_along_linear_extension():
    X = crown(4)
    EX = exponent(chain(3), X)
    order = linear_extension(X)
    keys = [tuple(t[x] for x in order) for t in EX.maps]
    assert keys == sorted(keys)


def test_exponent_guard():
    with pytest.raises(CapError):
        exponent(chain(10), chain(7), guard=1000)
    # running count guard: estimate passes, enumeration does not
    from posetpow.arith import iter_monotone_maps
    with pytest.raises(CapError):
        list(iter_monotone_maps(antichain(3), antichain(3), guard=5))


def test_monotone_map_type():
    m = MonotoneMap(chain(2), chain(3), (0, 2))
    assert m(1) == 2
    with pytest.raises(ValueError):
        MonotoneMap(chain(2), chain(3), (2, 0))
    EX = exponent(chain(3), chain(2))
    assert EX.map(0).table == EX.maps[0]


def test_diagonal_examples():
    EX = exponent(crown(4), chain(2))
    D = diagonal_D(EX)
    assert len(D) == 4
    assert all(len(set(EX.maps[k])) == 1 for k in D)
    EX = exponent(chain(2), antichain(2))
    assert len(diagonal_D(EX)) == 4 == EX.poset.n
    assert diagonal_D(exponent(chain(2), EMPTY)) == [0]


def test_component_C_examples():
    EX = exponent(crown(4), chain(2))
    Cpos, idx = component_C(EX)
    assert idx == list(range(8)) and Cpos == EX.poset
    for E in UPTO3:
        if is_connected(E):
            Cpos, _ = component_C(exponent(E, singleton()))
            assert are_isomorphic(Cpos, E) is not None
    Cpos, idx = component_C(exponent(antichain(2), chain(2)))
    assert Cpos.n == 2 and Cpos == antichain(2)
    with pytest.raises(EmptyExponentError):
        component_C(exponent(chain(2), EMPTY))


def test_component_C_can_be_proper():
    E = X = crown(4)
    EX = exponent(E, X)
    _, idx = component_C(EX)
    # oracle: union-find on the naive order, keep components holding a constant
    maps, order = oracles.naive_exponent(E, X)
    parent = list(range(len(maps)))

    def find(a):
        while parent[a] != a:
            a = parent[a]
        return a

    for a, b in itertools.product(range(len(maps)), repeat=2):
        if order[a][b]:
            parent[find(a)] = find(b)
    roots = {find(k) for k, t in enumerate(maps) if len(set(t)) == 1}
    expected = {maps[k] for k in range(len(maps)) if find(k) in roots}
    assert (len(maps), len(expected)) == (36, 32)
    assert {EX.maps[k] for k in idx} == expected


def test_D_in_C_and_lemma2_over_catalog():
    for E, X in itertools.product([EMPTY] + UPTO3, UPTO3):
        EX = exponent(E, X)
        D = set(diagonal_D(EX))
        _, C = component_C(EX)
        assert D <= set(C) <= set(range(EX.poset.n))
        if is_connected(EX.poset):
            assert len(C) == EX.poset.n


def test_constant_embedding_is_order_embedding():
    X = chain(2)
    for E in UPTO4:
        EX = exponent(E, X)
        emb = [constant_embed(EX, e) for e in range(E.n)]
        assert len(set(emb)) == E.n
        assert set(emb) <= set(diagonal_D(EX))
        for a, b in itertools.product(range(E.n), repeat=2):
            assert E.leq(a, b) == EX.poset.leq(emb[a], emb[b])


def test_constant_embed_tables():
    EX = exponent(chain(2), chain(2))
    assert EX.maps[constant_embed(EX, 0)] == (0, 0)
    assert EX.maps[constant_embed(EX, 1)] == (1, 1)
    with pytest.raises(EmptyExponentError):
        constant_embed(exponent(chain(2), EMPTY), 0)


def test_curry_iso_chain2_cube():
    c2 = chain(2)
    bij, outer, flat = curry_iso(c2, c2, c2)
    assert outer.poset.n == flat.poset.n == 6
    assert bij.verified
    assert oracles.naive_is_iso(outer.poset, flat.poset, bij.table)
    # flat is the up-sets of the 2x2 grid
    assert flat.poset.n == len(exponent(c2, product(c2, c2)).maps)


def test_curry_iso_with_singleton():
    for E, X in itertools.product(UPTO3, repeat=2):
        bij, outer, flat = curry_iso(E, X, singleton())
        assert bij.verified
        assert are_isomorphic(outer.poset, exponent(E, X).poset) is not None


def test_curry_iso_all_small_triples():
    failures = []
    for E, X, Y in itertools.product(UPTO3, repeat=3):
        bij, _, _ = curry_iso(E, X, Y)
        if not bij.verified:
            failures.append((E, X, Y))
    assert failures == []


def test_transport_along_swap():
    X = product(chain(2), antichain(2))
    Y = product(antichain(2), chain(2))
    swap = tuple((k % 2) * 2 + k // 2 for k in range(4))  # (a, c) in Y -> (c, a) in X
    E = chain(3)
    src, dst = exponent(E, X), exponent(E, Y)
    t = transport_exponent(E, src, dst, swap)
    assert t is not None and oracles.naive_is_iso(src.poset, dst.poset, t)


def test_distributivity_examples():
    v = distributivity_check(chain(1), chain(1), chain(2))
    assert v.ok and v.lhs_size == 2 and v.rhs_size == 2
    v = distributivity_check(chain(2), antichain(2), crown(4))
    UA = exponent(chain(2), crown(4)).poset.n
    SA = exponent(antichain(2), crown(4)).poset.n
    assert v.ok and v.lhs_size == UA + SA


def test_distributivity_needs_connected_exponent():
    with pytest.raises(PreconditionError):
        distributivity_check(chain(1), chain(1), antichain(2))
    with pytest.raises(PreconditionError):
        distributivity_check(chain(1), chain(1), EMPTY)
    v = distributivity_check(chain(1), chain(1), antichain(2), require_connected=False)
    assert not v.ok and (v.lhs_size, v.rhs_size) == (4, 2)
