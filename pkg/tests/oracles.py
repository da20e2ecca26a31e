"""Independent reference computations used only by the tests.

Each one takes a different route from the library: brute force, a literal
transcription of a definition, or floating-point evaluation.
"""

from __future__ import annotations

import cmath
import itertools
from math import gcd

from etaforge.arith import divisors
from etaforge.series import PuiseuxSeries, eta_series


def eta_product(P: int) -> list[int]:
    """Coefficients of prod_{n>=1} (1 - x^n) up to x^(P-1), by direct multiplication."""
    c = [0] * P
    c[0] = 1
    for n in range(1, P):
        for i in range(P - 1, n - 1, -1):
            c[i] -= c[i - n]
    return c


def quotient_by_powers(X, P: int) -> PuiseuxSeries:
    """eta^X as a literal product of rescaled eta series raised to X_d."""
    out = PuiseuxSeries(0, [1] + [0] * (P - 1))
    for d, e in X.items():
        base = eta_series(P).rescale(d).truncate(P)
        out = out * base**e
    return out


def triangular_exponents(limit: int) -> list[int]:
    """u-exponents of eta(2z)^2 / eta(z) = q^(1/8) sum_k q^(k(k+1)/2)."""
    out, k = [], 0
    while 3 + 12 * k * (k + 1) < limit:
        out.append(3 + 12 * k * (k + 1))
        k += 1
    return out


def cyclotomic_value(coeffs, n: int) -> complex:
    z = cmath.exp(2j * cmath.pi / n)
    return sum(c * z**i for i, c in enumerate(coeffs))


def p1_points(N: int) -> list[tuple[int, int]]:
    """Canonical representatives of P^1(Z/N)."""
    units = [u for u in range(N) if gcd(u, N) == 1] or [0]
    seen = set()
    for c in range(N):
        for d in range(N):
            if gcd(gcd(c, d), N) != 1:
                continue
            seen.add(min(((u * c) % N, (u * d) % N) for u in units))
    return sorted(seen)


def p1_canon(c: int, d: int, N: int) -> tuple[int, int]:
    units = [u for u in range(N) if gcd(u, N) == 1] or [0]
    return min(((u * c) % N, (u * d) % N) for u in units)


def cusp_orbits(N: int) -> dict[tuple[int, int], int]:
    """Orbit id of each point of P^1(Z/N) under (c : d) -> (c : c + d).

    Gamma_0(N) \\ SL_2(Z) is P^1(Z/N) via bottom rows, and cusps are the
    further quotient by the translations, so orbits are cusp classes.
    """
    pts = p1_points(N)
    parent = {p: p for p in pts}

    def find(p):
        while parent[p] != p:
            parent[p] = parent[parent[p]]
            p = parent[p]
        return p

    for c, d in pts:
        a, b = find((c, d)), find(p1_canon(c, c + d, N))
        if a != b:
            parent[a] = b
    roots = sorted({find(p) for p in pts})
    ids = {r: i for i, r in enumerate(roots)}
    return {p: ids[find(p)] for p in pts}


def cusp_orbit_of(a: int, b: int, N: int, orbits) -> int:
    """Orbit of the cusp a/b: complete (a, b) to a matrix with bottom row (b, d)."""
    if b == 0:
        return orbits[p1_canon(0, 1, N)]
    # a d - x b = 1 for some x: d = a^-1 mod b
    d = pow(a, -1, abs(b)) if abs(b) > 1 else 1
    if b < 0:
        b, d = -b, -d
    return orbits[p1_canon(b % N, d % N, N)]


def holomorphic_box(N: int, k2: int, radius: int) -> set[tuple[int, ...]]:
    """All exponent vectors with |X_d| <= radius, weight k2 and nonnegative cusp orders."""
    D = divisors(N)
    found = set()
    for head in itertools.product(range(-radius, radius + 1), repeat=len(D) - 1):
        last = k2 - sum(head)
        if abs(last) > radius:
            continue
        x = head + (last,)
        ok = True
        for t in D:
            s = 0
            for d, e in zip(D, x):
                s += N * gcd(d, t) ** 2 * e // d // gcd(t * t, N) * gcd(t, N // t)
            if s < 0:
                ok = False
                break
        if ok:
            found.add(tuple((d, e) for d, e in zip(D, x) if e))
    return found
