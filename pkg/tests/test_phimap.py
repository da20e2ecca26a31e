import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from etaforge.arith import divisors, exactly_divides, factor, valuation
from etaforge.enumerate import enumerate_holomorphic
from etaforge.etaq import EtaQuotient
from etaforge.orders import is_holomorphic
from etaforge.phimap import (
    ConsistencyError,
    WeightsError,
    apply_phi,
    corollary2_weights,
    delta_weights,
    ones_weights,
    project_to_prime_part,
    validate_weights,
)


def test_validate_examples():
    w = validate_weights(7, 7, {1: 3})
    assert w.strict
    w = validate_weights(4, 1, {1: 1, 2: 1, 4: 1})
    assert w.strict
    with pytest.raises(WeightsError) as err:
        validate_weights(2, 1, {1: 1, 2: 3})
    assert err.value.violation == (2, 0)


def test_validate_rejections():
    with pytest.raises(WeightsError):
        validate_weights(12, 2, {1: 1, 2: 1, 3: 1, 6: 1})  # 2 does not exactly divide 12
    with pytest.raises(WeightsError):
        validate_weights(4, 1, {1: 1, 2: 1})  # missing divisor
    with pytest.raises(WeightsError):
        validate_weights(6, 1, {1: 1, 2: 1, 3: 1, 6: 2})  # not multiplicative
    with pytest.raises(WeightsError) as err:
        validate_weights(2, 1, {1: -1, 2: 1})
    assert err.value.violation == (2, 0)
    with pytest.raises(WeightsError) as err:
        validate_weights(8, 1, {1: 1, 2: 3, 4: 1, 8: 1})
    assert err.value.violation[0] == 2


def test_boundary_weights_are_not_strict():
    w = validate_weights(2, 1, {1: 2, 2: 1})
    assert not w.strict


def test_corollary_weights():
    assert corollary2_weights(5, 1, 0, 4).values == {1: 4, 5: 1}
    assert corollary2_weights(3, 1, 1, 2).values == {1: 1, 3: 2}
    assert corollary2_weights(2, 1, 0, 1).values == ones_weights(2, 1).values
    with pytest.raises(WeightsError):
        corollary2_weights(5, 1, 0, 5)
    with pytest.raises(WeightsError):
        corollary2_weights(12, 2, 0, 1)


def test_apply_examples():
    X = EtaQuotient({1: -1, 2: 1, 3: 2, 6: -1})
    assert apply_phi(X, validate_weights(6, 6, {1: 1})) == X
    assert apply_phi(X, ones_weights(6, 3)) == {3: 1}
    assert apply_phi({1: 2, 2: -1}, validate_weights(2, 1, {1: 2, 2: 1})) == {1: 3}
    assert delta_weights(4, 1, {2: 1}).values == {1: 1, 2: 2, 4: 1}


def test_projection_examples():
    assert project_to_prime_part({3: 1}, 3, 3) == ({3: 1}, 1)
    assert project_to_prime_part({1: -1, 2: 1, 3: 2, 6: -1}, 6, 3) == ({3: 1}, 1)
    assert project_to_prime_part({1: 1, 4: 1, 2: -1}, 12, 3) == ({1: 1}, 0)
    with pytest.raises(ValueError):
        project_to_prime_part({1: 1}, 4, 3)


@pytest.mark.parametrize("M", [3, 9, 12, 36, 72])
def test_projection_weight_half_lands_on_single_eta(M):
    for X in enumerate_holomorphic(M, 1):
        image, j0 = project_to_prime_part(X, M, 3)
        assert j0 is not None and image == {3**j0: 1}


def _random_prime_sequence(rng, p, n):
    while True:
        seq = [rng.randint(1, 2 * p + 2) for _ in range(n + 1)]
        try:
            validate_weights(p**n, 1, {p**j: seq[j] for j in range(n + 1)})
            return seq
        except WeightsError:
            continue


def random_weights(rng, M, N):
    K = M // N
    seqs = {p: _random_prime_sequence(rng, p, n) for p, n in factor(K)}
    vals = {}
    for d in divisors(K):
        v = 1
        for p, s in seqs.items():
            v *= s[valuation(d, p)]
        vals[d] = v
    return validate_weights(M, N, vals)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([4, 6, 8, 12, 24, 36]), st.integers(0, 10**6))
def test_random_admissible_weights_preserve_holomorphy(M, seed):
    rng = random.Random(seed)
    Ns = [N for N in divisors(M) if N < M and exactly_divides(N, M)]
    N = rng.choice(Ns)
    w = random_weights(rng, M, N)
    for X in enumerate_holomorphic(M, 1):
        Y = apply_phi(X, w)
        assert is_holomorphic(Y, N)
        if w.strict:
            assert len(Y)


def test_strict_weights_never_collapse_on_weight_two():
    for X in enumerate_holomorphic(12, 2):
        if X:
            Y = apply_phi(X, ones_weights(12, 3))
            assert len(Y) and is_holomorphic(Y, 3)


def test_consistency_error_is_runtime():
    assert issubclass(ConsistencyError, RuntimeError)
