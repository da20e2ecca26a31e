import random
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from etaforge.arith import divisors, totient
from etaforge.etaq import ZAGIER_LIST, EtaQuotient, level, rescale
from etaforge.orders import (
    apply_sym_inverse,
    cusp_classes,
    cusp_normalize,
    cusp_values,
    is_holomorphic,
    order_eta_d,
    order_map,
    order_matrix,
    prime_power_sym_inverse,
    sym_order_matrix,
    sym_order_matrix_inverse,
    sym_order_matrix_kron,
    valence_check,
)

from .oracles import cusp_orbit_of, cusp_orbits


def test_cusp_normalize_examples():
    assert cusp_normalize(1, 0, 12).t == 12
    assert str(cusp_normalize(1, 0, 12)) == "oo"
    assert cusp_normalize(0, 1, 12).t == 1
    assert cusp_normalize(1, 2, 4).t == 2
    with pytest.raises(ValueError):
        cusp_normalize(2, 4, 8)


def test_cusp_class_counts():
    assert len(cusp_classes(1)) == 1
    assert [c.t for c in cusp_classes(4)] == [1, 2, 4]
    at6 = [c for c in cusp_classes(36) if c.t == 6]
    assert len(at6) == totient(6) == 2


@pytest.mark.parametrize("N", range(1, 49))
def test_cusp_classes_match_orbit_oracle(N):
    orbits = cusp_orbits(N)
    assert len(set(orbits.values())) == len(cusp_classes(N))
    assert len(cusp_classes(N)) == sum(totient(gcd(t, N // t)) for t in divisors(N))


@pytest.mark.parametrize("N", [4, 8, 9, 12, 18, 24, 25, 36, 48])
def test_cusp_normalize_agrees_with_orbits(N):
    orbits = cusp_orbits(N)
    rng = random.Random(N)
    pts = [(1, 0)]
    while len(pts) < 60:
        b = rng.randint(1, 5 * N)
        a = rng.randint(-5 * N, 5 * N)
        if gcd(a, b) == 1:
            pts.append((a, b))
    for a, b in pts:
        for c, d in pts:
            same_class = cusp_normalize(a, b, N) == cusp_normalize(c, d, N)
            same_orbit = cusp_orbit_of(a, b, N, orbits) == cusp_orbit_of(c, d, N, orbits)
            assert same_class == same_orbit, (a, b, c, d)
    # every class has a representative that normalizes back to it
    for cls in cusp_classes(N):
        r = cls.representative()
        back = cusp_normalize(1, 0, N) if r is None else cusp_normalize(r.numerator, r.denominator, N)
        assert back == cls


def test_order_eta_d_examples():
    assert order_eta_d(1, 1, 1) == Fraction(1, 24)
    assert order_eta_d(2, 1, 2) == Fraction(1, 24)
    assert order_eta_d(2, 2, 2) == Fraction(1, 12)
    assert order_eta_d(1, 2, 4) == Fraction(1, 24)
    with pytest.raises(ValueError):
        order_eta_d(3, 1, 4)


def test_matrix_examples():
    assert sym_order_matrix(2).rows == ((2, 1), (1, 2))
    assert sym_order_matrix(4).rows == ((4, 2, 1), (2, 4, 2), (1, 2, 4))
    assert sym_order_matrix(6)[1, 6] == sym_order_matrix(2)[1, 2] * sym_order_matrix(3)[1, 3] == 1
    inv2 = sym_order_matrix_inverse(2)
    assert inv2.rows == ((Fraction(2, 3), Fraction(-1, 3)), (Fraction(-1, 3), Fraction(2, 3)))
    assert sym_order_matrix_inverse(1).rows == ((1,),)


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
def test_prime_inverse_closed_form(p):
    s = 1 / (p * (1 - Fraction(1, p * p)))
    assert prime_power_sym_inverse(p, 1) == ((s, -s / p), (-s / p, s))


@pytest.mark.parametrize("N", [1, 2, 12, 36, 60, 72, 128, 210, 360])
def test_matrix_identities(N):
    A = sym_order_matrix(N)
    assert A.is_symmetric()
    assert A == sym_order_matrix_kron(N)
    assert (A @ sym_order_matrix_inverse(N)).is_identity()
    # row t of the unsymmetrized matrix is 24 times the orders of the eta_d at 1/t
    A0 = order_matrix(N)
    assert all(A0[t, d] == 24 * order_eta_d(d, t, N) for t in A0.index for d in A0.index)


@pytest.mark.parametrize("N", [6, 12, 30, 72, 144])
def test_inverse_has_positive_row_sums(N):
    inv = sym_order_matrix_inverse(N)
    assert all(sum(r) > 0 for r in inv.rows)


@pytest.mark.parametrize("N", [12, 72, 90])
def test_sym_inverse_application_matches_dense(N):
    rng = random.Random(N)
    v = {d: rng.randint(-9, 9) for d in divisors(N)}
    dense = sym_order_matrix_inverse(N) @ [v[d] for d in divisors(N)]
    assert list(apply_sym_inverse(N, v).values()) == dense


def test_order_map_examples():
    assert order_map({1: 1}, 1) == {1: Fraction(1, 24)}
    assert order_map({1: 2, 2: -1}, 2) == {1: Fraction(1, 8), 2: 0}
    assert set(order_map({}, 6).values()) == {0}
    with pytest.raises(ValueError):
        order_map({4: 1}, 6)


def test_holomorphy_examples():
    assert is_holomorphic({1: 2, 2: -1}, 2)
    assert is_holomorphic({1: -1, 2: 2}, 2)
    assert not is_holomorphic({1: -2, 2: 1}, 2)
    assert cusp_values({1: 2, 2: -1}, 2) == {1: 3, 2: 0}


def test_valence_examples():
    assert valence_check({1: 1}, 1)
    assert valence_check({1: 2, 2: -1}, 2)
    assert valence_check({}, 30)


levels = st.sampled_from([1, 2, 4, 6, 8, 12, 18, 24, 30, 36, 72])


@st.composite
def on_level(draw):
    N = draw(levels)
    D = divisors(N)
    X = EtaQuotient({d: draw(st.integers(-6, 6)) for d in D})
    return N, X


@given(on_level())
def test_valence_identity_holds_for_every_quotient(data):
    N, X = data
    assert valence_check(X, N)


@given(on_level())
def test_holomorphy_is_order_nonnegativity(data):
    N, X = data
    assert is_holomorphic(X, N) == all(o >= 0 for o in order_map(X, N).values())
    scaled = {t: gcd(t, N // t) * 24 * o for t, o in order_map(X, N).items()}
    assert scaled == cusp_values(X, N)


@settings(max_examples=40)
@given(st.sampled_from(ZAGIER_LIST), st.sampled_from([1, 2, 3, 6]), st.sampled_from([1, 2, 3]))
def test_list_members_holomorphic_on_multiples(X, nu, extra):
    Y = rescale(X, nu)
    assert is_holomorphic(Y, level(Y) * extra)


def test_orders_at_infinity_is_leading_exponent():
    for X in ZAGIER_LIST:
        N = level(X)
        assert order_map(X, N)[N] == Fraction(sum(d * e for d, e in X.items()), 24)
