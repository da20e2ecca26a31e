"""Cusps of Gamma_0(N), orders of eta quotients there, and the order matrices.

Matrices are indexed by divisor *value*.  The symmetrized order matrix is
multiplicative, ``Ahat_N(t, d) = prod_p Ahat_{p^e}(t_p, d_p)``, which is the
Kronecker factorization over prime powers without having to fix an ordering
of the primes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, prod
from typing import Mapping, Sequence

from .arith import divisors, factor, index_mu, totient, valuation
from .etaq import level, weight2

__all__ = [
    "CuspClass",
    "DivisorMatrix",
    "cusp_normalize",
    "cusp_classes",
    "order_eta_d",
    "order_matrix",
    "sym_order_matrix",
    "sym_order_matrix_kron",
    "prime_power_sym_inverse",
    "sym_order_matrix_inverse",
    "apply_sym_inverse",
    "cusp_values",
    "order_map",
    "is_holomorphic",
    "valence_check",
]


@dataclass(frozen=True, order=True)
class CuspClass:
    """The Gamma_0(N)-class of cusps a/t with a fixed modulo gcd(t, N/t)."""

    t: int
    a: int
    N: int

    @property
    def width_modulus(self) -> int:
        return gcd(self.t, self.N // self.t)

    def representative(self) -> Fraction | None:
        """A rational a'/t in the class (None for the cusp at infinity when t = N)."""
        if self.t == self.N:
            return None
        g = self.width_modulus
        a = self.a
        while gcd(a, self.t) != 1:
            a += g
        return Fraction(a, self.t)

    def __str__(self):
        if self.t == self.N:
            return "oo"
        r = self.representative()
        return f"{r.numerator}/{r.denominator}"


def cusp_normalize(a: int, b: int, N: int) -> CuspClass:
    """Class of the point [a : b] of P^1(Q) under Gamma_0(N); b = 0 is infinity."""
    if N < 1:
        raise ValueError("N must be positive")
    if gcd(a, b) != 1:
        raise ValueError(f"[{a}:{b}] is not in lowest terms")
    t = gcd(N, b)
    g = gcd(t, N // t)
    # [a : b] ~ [a' : t] with a' = a * (b/t) modulo gcd(t, N/t)
    return CuspClass(t, (a * (b // t)) % g, N)


def cusp_classes(N: int) -> list[CuspClass]:
    out = []
    for t in divisors(N):
        g = gcd(t, N // t)
        out.extend(CuspClass(t, a, N) for a in range(g) if gcd(a, g) == 1)
    return out


def _check_div(x: int, N: int, name: str) -> None:
    if N < 1 or x < 1 or N % x:
        raise ValueError(f"{name}={x} is not a divisor of N={N}")


def order_eta_d(d: int, t: int, N: int) -> Fraction:
    """Order of eta(d z) at the cusps 1/t of Gamma_0(N)."""
    _check_div(d, N, "d")
    _check_div(t, N, "t")
    return Fraction(N * gcd(d, t) ** 2, 24 * d * gcd(t * t, N))


class DivisorMatrix:
    """Square matrix with rows and columns indexed by the divisors of N."""

    __slots__ = ("N", "index", "rows", "_pos")

    def __init__(self, N: int, rows: Sequence[Sequence]):
        self.N = N
        self.index = divisors(N)
        self.rows = tuple(tuple(r) for r in rows)
        if len(self.rows) != len(self.index) or any(len(r) != len(self.index) for r in self.rows):
            raise ValueError("matrix shape does not match the divisor count")
        self._pos = {d: i for i, d in enumerate(self.index)}

    def __getitem__(self, key: tuple[int, int]):
        t, d = key
        return self.rows[self._pos[t]][self._pos[d]]

    def row(self, t: int) -> tuple:
        return self.rows[self._pos[t]]

    def column(self, d: int) -> tuple:
        j = self._pos[d]
        return tuple(r[j] for r in self.rows)

    def __matmul__(self, other):
        if isinstance(other, DivisorMatrix):
            if other.N != self.N:
                raise ValueError("levels differ")
            cols = list(zip(*other.rows))
            return DivisorMatrix(
                self.N, [[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.rows]
            )
        return [sum(a * b for a, b in zip(r, other)) for r in self.rows]

    def __eq__(self, other):
        return isinstance(other, DivisorMatrix) and self.N == other.N and self.rows == other.rows

    def __hash__(self):
        return hash((self.N, self.rows))

    def is_symmetric(self) -> bool:
        return all(self.rows[i][j] == self.rows[j][i] for i in range(len(self.rows)) for j in range(i))

    def is_identity(self) -> bool:
        return all(
            v == (1 if i == j else 0) for i, r in enumerate(self.rows) for j, v in enumerate(r)
        )

    def __repr__(self):
        return f"DivisorMatrix(N={self.N}, rows={[list(r) for r in self.rows]})"


@lru_cache(maxsize=256)
def order_matrix(N: int) -> DivisorMatrix:
    """A_N(t, d) = 24 * ord_{1/t}(eta_d; Gamma_0(N))."""
    D = divisors(N)
    return DivisorMatrix(N, [[N * gcd(d, t) ** 2 // (d * gcd(t * t, N)) for d in D] for t in D])


@lru_cache(maxsize=256)
def sym_order_matrix(N: int) -> DivisorMatrix:
    """Ahat_N: row t of A_N scaled by gcd(t, N/t).  Symmetric, integral."""
    A = order_matrix(N)
    return DivisorMatrix(
        N, [[gcd(t, N // t) * v for v in row] for t, row in zip(A.index, A.rows)]
    )


def _prime_power_sym(p: int, n: int) -> list[list[int]]:
    return [[p ** (n - abs(i - j)) for j in range(n + 1)] for i in range(n + 1)]


def sym_order_matrix_kron(N: int) -> DivisorMatrix:
    """Ahat_N assembled from the prime-power blocks p^(n - |i - j|)."""
    blocks = [(p, _prime_power_sym(p, n)) for p, n in factor(N)]
    D = divisors(N)
    rows = [
        [prod(blk[valuation(t, p)][valuation(d, p)] for p, blk in blocks) for d in D] for t in D
    ]
    return DivisorMatrix(N, rows)


@lru_cache(maxsize=None)
def prime_power_sym_inverse(p: int, n: int) -> tuple[tuple[Fraction, ...], ...]:
    """Closed-form tridiagonal inverse of Ahat_{p^n}."""
    if n == 0:
        return ((Fraction(1),),)
    scale = 1 / (Fraction(p**n) * (1 - Fraction(1, p * p)))
    off = -scale / p
    inner = scale * (1 + Fraction(1, p * p))
    rows = []
    for i in range(n + 1):
        row = [Fraction(0)] * (n + 1)
        row[i] = scale if i in (0, n) else inner
        if i > 0:
            row[i - 1] = off
        if i < n:
            row[i + 1] = off
        rows.append(tuple(row))
    return tuple(rows)


@lru_cache(maxsize=256)
def sym_order_matrix_inverse(N: int) -> DivisorMatrix:
    """Exact inverse of Ahat_N, multiplicative over the prime powers of N."""
    blocks = [(p, prime_power_sym_inverse(p, n)) for p, n in factor(N)]
    D = divisors(N)
    rows = [
        [prod((blk[valuation(t, p)][valuation(d, p)] for p, blk in blocks), start=Fraction(1))
         for d in D]
        for t in D
    ]
    return DivisorMatrix(N, rows)


def apply_sym_inverse(N: int, vec: Mapping[int, Fraction | int]) -> dict[int, Fraction]:
    """Ahat_N^{-1} @ vec, applied one prime-power factor at a time.

    Never forms the dense inverse; each tridiagonal factor acts along one
    p-adic coordinate of the divisor index.
    """
    cur = {d: Fraction(vec.get(d, 0)) for d in divisors(N)}
    for p, n in factor(N):
        inv = prime_power_sym_inverse(p, n)
        nxt = {}
        for d in cur:
            i = valuation(d, p)
            base = d // p**i
            s = Fraction(0)
            for j in (i - 1, i, i + 1):
                if 0 <= j <= n and inv[i][j]:
                    s += inv[i][j] * cur[base * p**j]
            nxt[d] = s
        cur = nxt
    return cur


def _require_level(X: Mapping[int, int], N: int) -> None:
    if N < 1 or N % level(X):
        raise ValueError(f"level {level(X)} does not divide N={N}")


def cusp_values(X: Mapping[int, int], N: int) -> dict[int, int]:
    """Ahat_N X as a mapping t -> integer (nonnegative everywhere iff holomorphic)."""
    _require_level(X, N)
    Ah = sym_order_matrix(N)
    x = [X.get(d, 0) for d in Ah.index]
    return dict(zip(Ah.index, Ah @ x))


def order_map(X: Mapping[int, int], N: int) -> dict[int, Fraction]:
    """t -> ord_{1/t}(eta^X; Gamma_0(N)), i.e. (1/24) A_N X."""
    _require_level(X, N)
    A = order_matrix(N)
    x = [X.get(d, 0) for d in A.index]
    return {t: Fraction(v, 24) for t, v in zip(A.index, A @ x)}


def is_holomorphic(X: Mapping[int, int], N: int | None = None) -> bool:
    """Whether eta^X has no poles at the cusps of Gamma_0(N) (default: its level)."""
    if N is None:
        N = level(X)
    return all(v >= 0 for v in cusp_values(X, N).values())


def valence_check(X: Mapping[int, int], N: int) -> bool:
    """Sum of cusp orders, counted with class multiplicity, against weight * index / 12."""
    orders = order_map(X, N)
    total = sum(totient(gcd(t, N // t)) * o for t, o in orders.items())
    return total == Fraction(weight2(X), 24) * index_mu(N)
