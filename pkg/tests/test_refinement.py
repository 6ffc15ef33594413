import itertools

import pytest

from posetpow import (
    PreconditionError, SearchBounds, SearchExhausted, antichain, are_isomorphic,
    certificate, chain, crown, exponent, factorizations, fence, lemma_suite,
    product, refine, singleton, verify_natural_law, verify_witness,
)
from posetpow.arith import ExponentPoset
from posetpow.catalog import catalog_upto
from posetpow.core import FinitePoset

import oracles

GRID = product(chain(2), chain(2))


def test_natural_law_chain2_everywhere():
    c2 = chain(2)
    v = verify_natural_law(c2, c2, c2, c2, check_certificates=True)
    assert v.ok and v.method == "explicit" and v.certificates_equal
    assert v.sizes == (20, 20, 20)


def test_natural_law_with_singleton_Z_is_plain_currying():
    c2, c3 = chain(2), chain(3)
    v = verify_natural_law(c3, c2, GRID, singleton(), check_certificates=True)
    assert v.ok and v.certificates_equal


def test_natural_law_crown_with_singletons():
    one = singleton()
    v = verify_natural_law(crown(4), one, one, one)
    assert v.ok and v.sizes == (4, 4, 4)


def test_natural_law_maps_are_isomorphisms():
    E, X, Y, Z = chain(2), fence(3), chain(2), antichain(2)
    v = verify_natural_law(E, X, Y, Z)
    assert v.ok
    left = exponent(exponent(E, X).poset, product(Y, Z)).poset
    mid = exponent(E, product(X, product(Y, Z))).poset
    right = exponent(exponent(E, Y).poset, product(X, Z)).poset
    assert oracles.naive_is_iso(left, mid, v.left_to_middle)
    assert oracles.naive_is_iso(mid, right, v.middle_to_right)


def test_factorizations_of_grid():
    pairs = factorizations(GRID)
    certs = [(certificate(Y), certificate(Z)) for Y, Z in pairs]
    assert (certificate(chain(2)), certificate(chain(2))) in certs
    assert [(Y.n, Z.n) for Y, Z in pairs] == [(1, 4), (2, 2), (4, 1)]


def test_factorizations_of_prime_size_are_trivial():
    pairs = factorizations(chain(3))
    assert [(Y.n, Z.n) for Y, Z in pairs] == [(1, 3), (3, 1)]


def test_factorizations_of_singleton():
    pairs = factorizations(singleton())
    assert len(pairs) == 1 and pairs[0][0].n == pairs[0][1].n == 1


def test_factorizations_brute_force_size4():
    # every (Y, Z) with Y x Z = P among all small posets, checked by permutation search
    sizes2 = catalog_upto(2)
    for P in catalog_upto(4):
        if P.n != 4:
            continue
        expected = set()
        for Y, Z in itertools.product(sizes2, repeat=2):
            if Y.n * Z.n == 4 and oracles.brute_iso(oracles.leq_matrix(product(Y, Z)),
                                                    oracles.leq_matrix(P)):
                expected.add((certificate(Y), certificate(Z)))
        got = {(certificate(Y), certificate(Z)) for Y, Z in factorizations(P) if Y.n == Z.n == 2}
        assert got == expected


def test_chain_instance_hypotheses_hold_by_brute_force():
    A, B, C, D = chain(3), chain(2), chain(2), GRID
    AC, BD = exponent(A, C).poset, exponent(B, D).poset
    assert AC.n == BD.n == 6
    assert oracles.brute_iso(oracles.leq_matrix(AC), oracles.leq_matrix(BD)) is not None


def test_refine_chain_instance():
    A, B, C, D = chain(3), chain(2), chain(2), GRID
    w = refine(A, B, C, D, SearchBounds(timeout=60))
    assert verify_witness(A, B, C, D, w)
    assert (w.E.n, w.X.n, w.Y.n, w.Z.n) == (2, 2, 1, 2)
    assert verify_natural_law(w.E, w.X, w.Y, w.Z).ok


def test_refine_identity_case():
    A, C = chain(3), chain(2)
    w = refine(A, A, C, C)
    assert verify_witness(A, A, C, C, w)


def test_refine_crown_case():
    A, C = crown(4), chain(2)
    w = refine(A, A, C, C)
    assert verify_witness(A, A, C, C, w)
    assert are_isomorphic(w.E, crown(4)) is not None


def test_refine_refuses_bad_hypotheses():
    with pytest.raises(PreconditionError):
        refine(chain(3), chain(3), chain(2), GRID)          # exponents differ
    with pytest.raises(PreconditionError):
        refine(chain(2), chain(2), antichain(2), antichain(2))  # C disconnected
    with pytest.raises(PreconditionError):
        # A^C disconnected: A is two points
        refine(antichain(2), antichain(2), chain(2), chain(2))
    with pytest.raises(PreconditionError):
        refine(FinitePoset(0, ()), chain(2), chain(2), chain(2))


def test_refine_refuses_same_size_nonisomorphic_exponents():
    # |A^C| = |B^D| and both connected, so only the full isomorphism test
    # can tell them apart; the search must not report plain exhaustion
    V = FinitePoset(3, (0b111, 0b010, 0b100))
    one = singleton()
    with pytest.raises(PreconditionError, match="not isomorphic"):
        refine(chain(3), V, one, one)


def test_refine_exhausts_under_tight_bounds():
    A, B, C, D = chain(3), chain(2), chain(2), GRID
    with pytest.raises(SearchExhausted, match="not a counterexample"):
        refine(A, B, C, D, SearchBounds(max_E=1))


def test_refine_timeout():
    A, B, C, D = chain(3), chain(2), chain(2), GRID
    with pytest.raises(TimeoutError):
        refine(A, B, C, D, SearchBounds(timeout=1e-9))


def test_search_bounds_must_be_positive():
    with pytest.raises(ValueError):
        SearchBounds(max_E=0)


def test_widened_search_also_succeeds():
    A, B, C, D = chain(3), chain(2), chain(2), GRID
    w = refine(A, B, C, D, SearchBounds(widen=True))
    assert w.widened and verify_witness(A, B, C, D, w)


def seeds(max_e=2, max_xyz=2):
    conn = catalog_upto(max(max_e, max_xyz), connected=True)
    for E, X, Y, Z in itertools.product(conn, repeat=4):
        if E.n <= max_e and X.n <= max_xyz and Y.n <= max_xyz and Z.n <= max_xyz:
            yield E, X, Y, Z


def test_seeded_round_trip_small():
    for E, X, Y, Z in seeds():
        A, B = exponent(E, X).poset, exponent(E, Y).poset
        C, D = product(Y, Z), product(X, Z)
        w = refine(A, B, C, D, SearchBounds(timeout=60))
        assert verify_witness(A, B, C, D, w)


def test_verify_witness_catches_mutations():
    A, B, C, D = chain(3), chain(2), chain(2), GRID
    w = refine(A, B, C, D)
    assert verify_witness(A, B, C, D, w)

    # Z swapped for a non-isomorphic poset of the same size
    bad = type(w)(**{**w.__dict__, "Z": antichain(2)})
    assert not verify_witness(A, B, C, D, bad)

    # one isomorphism entry corrupted
    iso = list(w.iso_D)
    iso[0] = (iso[0] + 1) % len(iso)
    bad = type(w)(**{**w.__dict__, "iso_D": tuple(iso)})
    assert not verify_witness(A, B, C, D, bad)

    bad = type(w)(**{**w.__dict__, "E": antichain(2)})
    assert not verify_witness(A, B, C, D, bad)


def test_lemma_suite_max2_counts():
    report = lemma_suite(2)
    assert report.ok
    counts = {k: r.instances for k, r in report.results.items()}
    assert counts == {"lemma1": 15, "lemma2": 39, "lemma3": 21,
                      "proposition4": 27, "lemma5": 27}
    assert report.lines()[-1] == "0 counterexamples"


def test_lemma_suite_reports_guard_skips():
    report = lemma_suite(2, guard=3)
    assert sum(r.skipped for r in report.results.values()) > 0


def _discrete_exponent(E, X, guard=None):
    # mutation: forget the pointwise order entirely
    EX = exponent(E, X, guard)
    n = EX.poset.n
    return ExponentPoset(FinitePoset(n, tuple(1 << i for i in range(n))), EX.maps, E, X)


def test_lemma_suite_detects_broken_exponent():
    report = lemma_suite(2, exponent_fn=_discrete_exponent)
    assert not report.ok
    assert report.results["lemma1"].counterexamples


@pytest.mark.slow
def test_seeded_round_trip_size3():
    conn = catalog_upto(3, connected=True)
    tried = 0
    for E, X, Y, Z in itertools.product(conn, repeat=4):
        A, B = exponent(E, X).poset, exponent(E, Y).poset
        C, D = product(Y, Z), product(X, Z)
        if A.n ** C.n > 10 ** 6 or B.n ** D.n > 10 ** 6:
            continue
        w = refine(A, B, C, D, SearchBounds(timeout=60))
        assert verify_witness(A, B, C, D, w), (E, X, Y, Z)
        tried += 1
    assert tried == 448
