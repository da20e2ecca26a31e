"""Exact elementary number theory and the cyclotomic coefficient rings.

Rationals are :class:`fractions.Fraction`; nothing in the package touches
floating point.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, prod
from typing import Iterable, Sequence

__all__ = [
    "Fraction",
    "factor",
    "divisors",
    "totient",
    "is_smooth",
    "index_mu",
    "exactly_divides",
    "valuation",
    "cyclotomic_polynomial",
    "CyclotomicInt",
    "SUPPORTED_ORDERS",
]

Factorization = tuple[tuple[int, int], ...]


def _check_positive(n: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError(f"expected an int, got {type(n).__name__}")
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")


@lru_cache(maxsize=4096)
def factor(n: int) -> Factorization:
    """Prime factorization of ``n`` by trial division.

    >>> factor(72)
    ((2, 3), (3, 2))
    >>> factor(1)
    ()
    """
    _check_positive(n)
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


@lru_cache(maxsize=4096)
def divisors(n: int) -> tuple[int, ...]:
    """All positive divisors of ``n``, ascending."""
    divs = [1]
    for p, e in factor(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return tuple(sorted(divs))


def totient(n: int) -> int:
    """Euler's phi."""
    result = n
    for p, _ in factor(n):
        result -= result // p
    return result


def is_smooth(n: int, m: int) -> bool:
    """True iff no prime factor of ``n`` exceeds ``m``."""
    _check_positive(m)
    return all(p <= m for p, _ in factor(n))


def index_mu(N: int) -> int:
    """Index of Gamma_0(N) in SL_2(Z): N * prod_{p | N} (1 + 1/p)."""
    return prod(p ** (e - 1) * (p + 1) for p, e in factor(N))


def exactly_divides(d: int, N: int) -> bool:
    """d || N: d divides N and gcd(d, N/d) = 1."""
    _check_positive(d)
    _check_positive(N)
    return N % d == 0 and gcd(d, N // d) == 1


def valuation(n: int, p: int) -> int:
    _check_positive(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


# -- cyclotomic integers -----------------------------------------------------

SUPPORTED_ORDERS = (1, 2, 4, 12, 24, 48)


def _poly_divmod_monic(num: list[int], den: Sequence[int]) -> tuple[list[int], list[int]]:
    # coefficient lists, lowest degree first; den monic
    num = list(num)
    dd = len(den) - 1
    if len(num) - 1 < dd:
        return [0], num
    q = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            q[i - dd] = c
            for j in range(dd + 1):
                num[i - dd + j] -= c * den[j]
    return q, num[:dd] if dd else [0]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients (lowest degree first) of the n-th cyclotomic polynomial."""
    _check_positive(n)
    num = [-1] + [0] * (n - 1) + [1]
    for d in divisors(n)[:-1]:
        num, rem = _poly_divmod_monic(num, cyclotomic_polynomial(d))
        assert not any(rem)
    return tuple(num)


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Reduced coordinates of zeta_n^k for k = 0 .. 2n-2 (products of two reduced elements)."""
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    table = []
    for k in range(2 * deg - 1 if deg > 1 else 1):
        mono = [0] * k + [1]
        _, rem = _poly_divmod_monic(mono, phi)
        rem = rem + [0] * (deg - len(rem))
        table.append(tuple(rem))
    return tuple(table)


@lru_cache(maxsize=None)
def _root_powers(n: int) -> tuple[tuple[int, ...], ...]:
    """Reduced coordinates of zeta_n^k for k = 0 .. n-1."""
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    out = []
    for k in range(n):
        _, rem = _poly_divmod_monic([0] * k + [1], phi)
        out.append(tuple(rem + [0] * (deg - len(rem))))
    return tuple(out)


class CyclotomicInt:
    """An element of Z[zeta_n], stored as its coordinates in the power basis.

    The representation is the remainder modulo the n-th cyclotomic
    polynomial, so two elements are equal iff their coordinate tuples are.
    """

    __slots__ = ("n", "coeffs")

    def __init__(self, coeffs: Iterable[int], n: int = 1):
        if n not in SUPPORTED_ORDERS:
            raise ValueError(f"unsupported cyclotomic order {n}; use one of {SUPPORTED_ORDERS}")
        c = [int(x) for x in coeffs]
        deg = len(cyclotomic_polynomial(n)) - 1
        if len(c) > deg:
            _, c = _poly_divmod_monic(c, cyclotomic_polynomial(n))
        c = c + [0] * (deg - len(c))
        self.n = n
        self.coeffs = tuple(c)

    @classmethod
    def _raw(cls, coeffs: tuple[int, ...], n: int) -> "CyclotomicInt":
        obj = object.__new__(cls)
        obj.n = n
        obj.coeffs = coeffs
        return obj

    @classmethod
    def zero(cls, n: int = 1) -> "CyclotomicInt":
        return cls((), n)

    @classmethod
    def one(cls, n: int = 1) -> "CyclotomicInt":
        return cls((1,), n)

    @classmethod
    def integer(cls, a: int, n: int = 1) -> "CyclotomicInt":
        return cls((a,), n)

    @classmethod
    def root(cls, n: int, k: int = 1) -> "CyclotomicInt":
        """zeta_n ** k."""
        if n not in SUPPORTED_ORDERS:
            raise ValueError(f"unsupported cyclotomic order {n}")
        return cls._raw(_root_powers(n)[k % n], n)

    def _coerce(self, other) -> "CyclotomicInt":
        if isinstance(other, CyclotomicInt):
            if other.n != self.n:
                raise ValueError(
                    f"mixing Z[zeta_{self.n}] and Z[zeta_{other.n}]; embed explicitly"
                )
            return other
        if isinstance(other, int):
            return CyclotomicInt((other,), self.n)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CyclotomicInt._raw(tuple(a + b for a, b in zip(self.coeffs, o.coeffs)), self.n)

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicInt._raw(tuple(-a for a in self.coeffs), self.n)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CyclotomicInt._raw(tuple(a - b for a, b in zip(self.coeffs, o.coeffs)), self.n)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        deg = len(self.coeffs)
        if deg == 1:
            return CyclotomicInt._raw((self.coeffs[0] * o.coeffs[0],), self.n)
        table = _power_table(self.n)
        out = [0] * deg
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(o.coeffs):
                if b:
                    ab = a * b
                    for k, t in enumerate(table[i + j]):
                        if t:
                            out[k] += ab * t
        return CyclotomicInt._raw(tuple(out), self.n)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not defined in general")
        result = CyclotomicInt.one(self.n)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = CyclotomicInt((other,), self.n)
        if not isinstance(other, CyclotomicInt):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.n, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def is_integer(self) -> bool:
        return not any(self.coeffs[1:])

    def to_int(self) -> int:
        if not self.is_integer():
            raise ValueError(f"{self!r} is not a rational integer")
        return self.coeffs[0]

    def embed(self, n: int) -> "CyclotomicInt":
        """Image under Z[zeta_m] -> Z[zeta_n], zeta_m -> zeta_n^(n/m)."""
        if n % self.n:
            raise ValueError(f"cannot embed Z[zeta_{self.n}] into Z[zeta_{n}]")
        step = n // self.n
        poly = [0] * (step * (len(self.coeffs) - 1) + 1)
        for i, a in enumerate(self.coeffs):
            poly[i * step] = a
        return CyclotomicInt(poly, n)

    def root_index(self) -> int | None:
        """k with self == zeta_n^k, or None if self is not a root of unity in Z[zeta_n]."""
        try:
            return _root_powers(self.n).index(self.coeffs)
        except ValueError:
            return None

    def __repr__(self):
        if self.is_integer():
            return f"CyclotomicInt({self.coeffs[0]}, n={self.n})"
        return f"CyclotomicInt({list(self.coeffs)}, n={self.n})"

    def __str__(self):
        terms = []
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            if i == 0:
                terms.append(str(a))
            else:
                z = "z" if i == 1 else f"z^{i}"
                terms.append(z if a == 1 else f"-{z}" if a == -1 else f"{a}*{z}")
        if not terms:
            return "0"
        return " + ".join(terms).replace("+ -", "- ")
