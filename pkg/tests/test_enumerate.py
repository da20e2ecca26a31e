import pytest

from etaforge.arith import divisors, exactly_divides
from etaforge.enumerate import (
    EnumerationCapError,
    classify,
    enumerate_holomorphic,
    factorizations,
    is_quasi_irreducible,
    is_simple,
    verify_zagier,
    vertex_box,
)
from etaforge.etaq import ZAGIER_LIST, EtaQuotient, level, primitive_part, rescale, weight2
from etaforge.orders import cusp_values, valence_check
from etaforge.phimap import apply_phi, corollary2_weights

from .oracles import holomorphic_box


def as_set(results):
    return {tuple(sorted(X.items())) for X in results}


def test_examples():
    assert enumerate_holomorphic(1, 1) == [EtaQuotient({1: 1})]
    assert enumerate_holomorphic(6, 0) == [EtaQuotient()]
    assert len(enumerate_holomorphic(4, 1)) == 10


def test_rescale_count_at_level_four():
    expected = {rescale(Z, nu) for Z in ZAGIER_LIST for nu in divisors(4) if 4 % (nu * level(Z)) == 0}
    assert set(enumerate_holomorphic(4, 1)) == expected


@pytest.mark.parametrize("N", range(1, 7))
@pytest.mark.parametrize("k2", [0, 1, 2])
def test_agrees_with_box_search(N, k2):
    assert as_set(enumerate_holomorphic(N, k2)) == holomorphic_box(N, k2, 12)


@pytest.mark.parametrize("N, k2", [(72, 1), (12, 2), (16, 3), (30, 1), (36, 2)])
def test_soundness_and_valence(N, k2):
    found = enumerate_holomorphic(N, k2)
    assert len(set(found)) == len(found)
    for X in found:
        assert weight2(X) == k2
        assert all(v >= 0 for v in cusp_values(X, N).values())
        assert valence_check(X, N)


def test_output_is_canonically_sorted():
    found = enumerate_holomorphic(24, 1)
    assert found == sorted(found)


def test_thread_count_does_not_change_output(monkeypatch):
    from etaforge import enumerate as en

    serial = en._enumerate_cached.__wrapped__(36, 2, 64)
    monkeypatch.setenv("ETAFORGE_THREADS", "3")
    assert en._enumerate_cached.__wrapped__(36, 2, 64) == serial


def test_cap_and_bad_input():
    assert max(max(abs(a), abs(b)) for a, b in vertex_box(72, 1).values()) <= 12
    with pytest.raises(EnumerationCapError) as err:
        enumerate_holomorphic(72, 1, cap=5)
    assert err.value.divisor in divisors(72)
    with pytest.raises(ValueError):
        enumerate_holomorphic(4, -1)


def test_classify_examples():
    out, bad = classify([{3: 2, 6: -1}, {1: 1}, {2: 5, 1: -2, 4: -2}], 1)
    assert not bad
    assert [(c.primitive, c.zagier_member) for c in out] == [(False, (2, 3)), (True, (1, 1)), (True, (5, 1))]
    _, bad = classify([{1: 3, 2: -2}], 1)
    assert bad == [EtaQuotient({1: 3, 2: -2})]


def test_verify_zagier_small_levels():
    rep = verify_zagier(8)
    prim = {c.exponents for c in rep.classified if c.primitive}
    assert prim <= {ZAGIER_LIST[i] for i in range(6)}
    assert all(level(X) != 8 for X in prim)
    rep = verify_zagier(49)
    assert all(c.zagier_member[0] == 1 for c in rep.classified)
    assert [c.exponents for c in rep.classified if c.level == 49] == [EtaQuotient({49: 1})]


def test_factorization_examples():
    assert factorizations({1: 2}, 1) == [(EtaQuotient({1: 1}), EtaQuotient({1: 1}))]
    assert factorizations({1: 1}, 1) == []
    pairs = factorizations({2: 2}, 2)
    assert set(pairs) == {
        (EtaQuotient({2: 1}), EtaQuotient({2: 1})),
        (EtaQuotient({1: 1}), EtaQuotient({1: -1, 2: 2})),
    }
    with pytest.raises(ValueError):
        factorizations({1: -1}, 1)


def test_factorizations_against_box():
    X = EtaQuotient({1: 1, 2: 2, 4: -1})
    M = 4
    box = set()
    for Y in holomorphic_box(M, 1, 12) | holomorphic_box(M, 2, 12):
        Y = EtaQuotient(dict(Y))
        Z = X - Y
        if len(Y) and len(Z) and all(v >= 0 for v in cusp_values(Z, M).values()):
            box.add(frozenset((Y, Z)))
    assert {frozenset(p) for p in factorizations(X, M)} == box


def test_quasi_irreducibility():
    assert all(is_quasi_irreducible(X) for X in enumerate_holomorphic(12, 1) if len(X))
    assert not is_quasi_irreducible({1: 2})
    assert is_simple({1: 1})
    assert not is_simple({2: 1})
    with pytest.raises(ValueError):
        is_simple({})


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_two_power_slices(n):
    N = 2**n
    for k2 in range(0, 5):
        for X in enumerate_holomorphic(N, k2):
            a, b = abs(X.get(1, 0)), abs(X.get(N, 0))
            assert a + b <= 2 * k2
            if a + b == 2 * k2:
                assert a % 2 == 0 and b % 2 == 0
    for X in enumerate_holomorphic(N, 1):
        P, _ = primitive_part(X)
        assert 4 % level(P) == 0


def test_phi_closure_on_72():
    corpus = enumerate_holomorphic(72, 1)
    for N, p in [(9, 2), (8, 3)]:
        K = 72 // N
        n = K.bit_length() - 1 if p == 2 else 2
        assert exactly_divides(N, 72) and p**n == K
        for j in range(n + 1):
            for m in range(1, p):
                w = corollary2_weights(72, N, j, m)
                for X in corpus:
                    Y = apply_phi(X, w)
                    # the weight scales with the weights, so compare at the image's weight
                    assert Y in set(enumerate_holomorphic(N, weight2(Y)))
