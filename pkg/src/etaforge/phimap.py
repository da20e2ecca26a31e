"""Holomorphy-preserving exponent maps between Gamma_0(M) and Gamma_0(N).

For N || M and a weight vector ``a`` on the divisors of M/N, the map sends
``eta^X`` to ``eta^Y`` with ``Y[d'] = sum_{d''} X[d' d''] * a[d'']``, i.e. the
reindexed matrix of X times ``a``.  When ``a`` satisfies the admissibility
inequalities below, holomorphic input gives holomorphic output.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Mapping

from .arith import divisors, exactly_divides, factor, valuation
from .etaq import EtaQuotient, level, reindex, weight2
from .orders import apply_sym_inverse, is_holomorphic

__all__ = [
    "PhiWeights",
    "WeightsError",
    "ConsistencyError",
    "validate_weights",
    "ones_weights",
    "delta_weights",
    "corollary2_weights",
    "apply_phi",
    "project_to_prime_part",
]


class WeightsError(ValueError):
    """Weight vector rejected; ``violation`` holds the offending (p, j) if any."""

    def __init__(self, message: str, violation: tuple[int, int] | None = None):
        super().__init__(message)
        self.violation = violation


class ConsistencyError(RuntimeError):
    """A computed result contradicts a proven statement; should never happen."""


@dataclass(frozen=True)
class PhiWeights:
    M: int
    N: int
    values: Mapping[int, int] = field(hash=False)
    strict: bool = False

    @property
    def quotient(self) -> int:
        return self.M // self.N

    def __getitem__(self, d: int) -> int:
        return self.values[d]


def _is_rank_one(values: Mapping[int, int], K: int) -> bool:
    # every p-flattening of the tensor over prime powers must have rank <= 1
    for p, n in factor(K):
        rest = divisors(K // p**n)
        cols = [[values[r * p**j] for r in rest] for j in range(n + 1)]
        for i in range(n + 1):
            for j in range(i):
                a, b = cols[i], cols[j]
                for x in range(len(rest)):
                    for y in range(x):
                        if a[x] * b[y] != a[y] * b[x]:
                            return False
    return True


def _check_prime_inequalities(
    seq: list[int], p: int
) -> tuple[bool, tuple[int, int] | None]:
    """Check a_{p^(j-1)} + a_{p^(j+1)} <= c_j a_{p^j} for j = 0..n; return (strict, violation)."""
    n = len(seq) - 1
    strict = True
    for j in range(n + 1):
        lhs = (seq[j - 1] if j > 0 else 0) + (seq[j + 1] if j < n else 0)
        # p^j || p^n only at the two ends
        coeff = Fraction(p) if j in (0, n) else Fraction(p * p + 1, p)
        rhs = coeff * seq[j]
        if lhs > rhs:
            return False, (p, j)
        if lhs == rhs:
            strict = False
    return strict, None


def validate_weights(M: int, N: int, values: Mapping[int, int]) -> PhiWeights:
    """Check admissibility of ``values`` (defined on the divisors of M/N).

    Raises :class:`WeightsError` when N does not exactly divide M, when the
    values are not multiplicative (a rank-one tensor over the prime powers of
    M/N), or when an inequality fails; the error carries the failing (p, j).
    """
    if N < 1 or M < 1 or not exactly_divides(N, M):
        raise WeightsError(f"{N} does not exactly divide {M}")
    K = M // N
    D = divisors(K)
    missing = [d for d in D if d not in values]
    extra = [d for d in values if d not in D]
    if missing or extra:
        raise WeightsError(f"weights must be given exactly on the divisors of {K}")
    vals = {d: int(values[d]) for d in D}
    if not _is_rank_one(vals, K):
        raise WeightsError("weights are not multiplicative across coprime divisors")

    a1 = vals[1]
    if a1 <= 0:
        # a nonzero admissible vector is entrywise positive
        if any(vals.values()):
            p = factor(K)[0][0] if K > 1 else 1
            raise WeightsError("weight at 1 must be positive", (p, 0))
        strict = False
    else:
        strict = True
        for p, n in factor(K):
            seq = [vals[p**j] for j in range(n + 1)]
            ok_strict, bad = _check_prime_inequalities(seq, p)
            if bad is not None:
                raise WeightsError(f"admissibility fails at p={bad[0]}, j={bad[1]}", bad)
            strict = strict and ok_strict

    w = PhiWeights(M, N, vals, strict)
    _check_inverse_sign(w)
    return w


def _check_inverse_sign(w: PhiWeights) -> None:
    # Ahat_{M/N}^{-1} a >= 0 (> 0 when strict) is what makes the map preserve holomorphy
    K = w.quotient
    y = apply_sym_inverse(K, w.values)
    if any(v < 0 for v in y.values()) or (w.strict and any(v <= 0 for v in y.values())):
        raise ConsistencyError(f"inverse-sign check failed for admissible weights {dict(w.values)}")


def ones_weights(M: int, N: int) -> PhiWeights:
    return validate_weights(M, N, {d: 1 for d in divisors(M // N)})


def delta_weights(M: int, N: int, bumps: Mapping[int, int]) -> PhiWeights:
    """All-ones weights plus ``bumps[d]`` added at the listed divisors d of M/N."""
    return validate_weights(M, N, {d: 1 + bumps.get(d, 0) for d in divisors(M // N)})


def _prime_power_split(M: int, N: int) -> tuple[int, int]:
    K = M // N if N and M % N == 0 else 0
    f = factor(K) if K else ()
    if len(f) != 1 or gcd(K, N) != 1:
        raise WeightsError(f"M/N = {M}/{N} must be a prime power coprime to N")
    return f[0]


def corollary2_weights(M: int, N: int, j: int, m: int) -> PhiWeights:
    """Weights equal to m at p^j and 1 elsewhere on the divisors of p^n = M/N."""
    p, n = _prime_power_split(M, N)
    if not 0 <= j <= n:
        raise WeightsError(f"j={j} outside 0..{n}")
    if not 1 <= m <= p - 1:
        raise WeightsError(f"m={m} outside 1..{p - 1}")
    return validate_weights(M, N, {p**i: (m if i == j else 1) for i in range(n + 1)})


def apply_phi(X: Mapping[int, int], w: PhiWeights) -> EtaQuotient:
    """Y = X^{[M/N]} a on the divisors of N."""
    if w.M % level(X):
        raise ValueError(f"level {level(X)} does not divide M={w.M}")
    R = reindex(X, w.M, w.quotient)
    a = [w.values[c] for c in R.cols]
    return EtaQuotient({r: sum(x * y for x, y in zip(row, a)) for r, row in zip(R.rows, R.entries)})


def project_to_prime_part(X: Mapping[int, int], M: int, p: int) -> tuple[EtaQuotient, int | None]:
    """Collapse X onto Gamma_0(p^n) with all-ones weights on the p-free part of M.

    For holomorphic X of weight 1/2 and odd p the image is a single
    eta(p^j0 z); then ``(image, j0)`` is returned, otherwise ``(image, None)``.
    A holomorphic weight-1/2 input whose image is not of that shape raises
    :class:`ConsistencyError`.
    """
    n = valuation(M, p) if M % p == 0 else 0
    if n == 0:
        raise ValueError(f"{p} does not divide {M}")
    if len(factor(p)) != 1 or factor(p)[0][1] != 1:
        raise ValueError(f"{p} is not prime")
    pn = p**n
    image = apply_phi(X, ones_weights(M, pn))
    if p < 3 or weight2(X) != 1 or not is_holomorphic(X, M):
        return image, None
    if len(image) != 1 or next(iter(image.values())) != 1:
        raise ConsistencyError(
            f"weight-1/2 holomorphic {dict(X)} projects to {dict(image)}, not a single eta_(p^j)"
        )
    d = next(iter(image))
    return image, valuation(d, p)
