"""Eta quotients as finitely supported exponent vectors.

An eta quotient ``prod_d eta(d z) ** X[d]`` is stored as the mapping
``d -> X[d]`` with zero exponents dropped.  The level is computed from the
support, never stored, so the same vector can be viewed on Gamma_0(M) for
any multiple M of its level.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce
from math import gcd, lcm
from typing import Iterator, Mapping

from .arith import divisors, exactly_divides

__all__ = [
    "EtaQuotient",
    "EtaSyntaxError",
    "ReindexedMatrix",
    "parse",
    "fmt",
    "level",
    "weight2",
    "rescale",
    "is_primitive",
    "primitive_part",
    "reindex",
    "star_product",
    "ZAGIER_LIST",
    "zagier_match",
]


class EtaSyntaxError(ValueError):
    """Malformed eta-quotient text; ``pos`` is the 0-based offset of the problem."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class EtaQuotient(Mapping[int, int]):
    """Immutable mapping ``d -> X_d`` with nonzero exponents only.

    Multiplying quotients adds exponent vectors, so ``+``/``-`` act on the
    exponents and ``*`` by an int scales them (powers of the quotient).
    """

    __slots__ = ("_items", "_hash")

    def __init__(self, exponents: Mapping[int, int] | None = None):
        items = {}
        for d, e in (exponents or {}).items():
            d, e = int(d), int(e)
            if d < 1:
                raise ValueError(f"eta base must be a positive integer, got {d}")
            if e:
                items[d] = e
        self._items = dict(sorted(items.items()))
        self._hash = None

    def __getitem__(self, d: int) -> int:
        return self._items[d]

    def get(self, d, default=0):
        return self._items.get(d, default)

    def __iter__(self) -> Iterator[int]:
        return iter(self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._items.items()))
        return self._hash

    def __eq__(self, other):
        if isinstance(other, EtaQuotient):
            return self._items == other._items
        if isinstance(other, Mapping):
            return self._items == {d: e for d, e in other.items() if e}
        return NotImplemented

    def __add__(self, other: Mapping[int, int]) -> "EtaQuotient":
        out = dict(self._items)
        for d, e in other.items():
            out[d] = out.get(d, 0) + e
        return EtaQuotient(out)

    def __neg__(self) -> "EtaQuotient":
        return EtaQuotient({d: -e for d, e in self._items.items()})

    def __sub__(self, other: Mapping[int, int]) -> "EtaQuotient":
        return self + EtaQuotient(other).__neg__()

    def __mul__(self, k: int) -> "EtaQuotient":
        if not isinstance(k, int):
            return NotImplemented
        return EtaQuotient({d: k * e for d, e in self._items.items()})

    __rmul__ = __mul__

    def __lt__(self, other: "EtaQuotient") -> bool:
        return sort_key(self) < sort_key(other)

    @property
    def level(self) -> int:
        return level(self)

    @property
    def weight2(self) -> int:
        return weight2(self)

    def vector(self, N: int) -> list[int]:
        """Exponents as a list indexed by ``divisors(N)``."""
        if N % self.level:
            raise ValueError(f"level {self.level} does not divide {N}")
        return [self._items.get(d, 0) for d in divisors(N)]

    @classmethod
    def from_vector(cls, N: int, values) -> "EtaQuotient":
        return cls(dict(zip(divisors(N), values)))

    def __repr__(self):
        return f"EtaQuotient({self._items!r})"

    def __str__(self):
        return fmt(self)


def sort_key(X: Mapping[int, int]) -> tuple:
    """Deterministic ordering: by level, then by the exponent list."""
    return (level(X), tuple(sorted(X.items())))


_TERM = re.compile(r"(\d+)(?:\^([+-]?\d+))?")


def parse(text: str) -> EtaQuotient:
    """Parse ``"1^2 2^-1"``-style text.

    A bare base means exponent 1; the empty string is the constant quotient.
    """
    out: dict[int, int] = {}
    pos = 0
    n = len(text)
    first = True
    while pos < n:
        if not first:
            if text[pos] != " ":
                raise EtaSyntaxError("expected a space between terms", pos)
            while pos < n and text[pos] == " ":
                pos += 1
            if pos == n:
                raise EtaSyntaxError("trailing whitespace", pos)
        first = False
        m = _TERM.match(text, pos)
        if m is None or (m.end() < n and text[m.end()] != " "):
            bad = pos if m is None else m.end()
            raise EtaSyntaxError(f"unexpected character {text[bad]!r}", bad)
        base = int(m.group(1))
        if base == 0:
            raise EtaSyntaxError("base must be a positive integer", pos)
        exp = 1 if m.group(2) is None else int(m.group(2))
        if exp == 0:
            raise EtaSyntaxError("zero exponent", m.start(2))
        if base in out:
            raise EtaSyntaxError(f"duplicate base {base}", pos)
        out[base] = exp
        pos = m.end()
    return EtaQuotient(out)


def fmt(X: Mapping[int, int]) -> str:
    """Canonical text: ascending base, exponent always written."""
    return " ".join(f"{d}^{e}" for d, e in sorted(X.items()) if e)


def level(X: Mapping[int, int]) -> int:
    return reduce(lcm, (d for d, e in X.items() if e), 1)


def weight2(X: Mapping[int, int]) -> int:
    """Twice the weight, i.e. the sum of the exponents."""
    return sum(X.values())


def rescale(X: Mapping[int, int], nu: int) -> EtaQuotient:
    """The quotient ``f(nu z)``."""
    if nu < 1:
        raise ValueError(f"rescaling factor must be positive, got {nu}")
    return EtaQuotient({nu * d: e for d, e in X.items()})


def _support_gcd(X: Mapping[int, int]) -> int:
    keys = [d for d, e in X.items() if e]
    if not keys:
        raise ValueError("the constant quotient has no primitive part")
    return reduce(gcd, keys)


def is_primitive(X: Mapping[int, int]) -> bool:
    # f = h(nu z) forces nu | d for every d in the support
    return _support_gcd(X) == 1


def primitive_part(X: Mapping[int, int]) -> tuple[EtaQuotient, int]:
    """``(P, g)`` with ``X == rescale(P, g)`` and ``P`` primitive."""
    g = _support_gcd(X)
    return EtaQuotient({d // g: e for d, e in X.items()}), g


@dataclass(frozen=True)
class ReindexedMatrix:
    """X viewed as a matrix over D_{N/d} x D_d for d || N."""

    rows: tuple[int, ...]
    cols: tuple[int, ...]
    entries: tuple[tuple[int, ...], ...]

    def __getitem__(self, key: tuple[int, int]) -> int:
        r, c = key
        return self.entries[self.rows.index(r)][self.cols.index(c)]

    def flatten(self) -> EtaQuotient:
        return EtaQuotient(
            {r * c: e for r, row in zip(self.rows, self.entries) for c, e in zip(self.cols, row)}
        )


def reindex(X: Mapping[int, int], N: int, d: int) -> ReindexedMatrix:
    """The canonical bijection Z^{D_N} -> Z^{D_{N/d} x D_d}."""
    if not exactly_divides(d, N):
        raise ValueError(f"{d} does not exactly divide {N}")
    if N % level(X):
        raise ValueError(f"level {level(X)} does not divide {N}")
    rows = divisors(N // d)
    cols = divisors(d)
    entries = tuple(tuple(X.get(r * c, 0) for c in cols) for r in rows)
    return ReindexedMatrix(rows, cols, entries)


def star_product(X: Mapping[int, int], Y: Mapping[int, int]) -> EtaQuotient:
    """Exponentwise tensor product of two quotients of coprime levels."""
    if gcd(level(X), level(Y)) != 1:
        raise ValueError(f"levels {level(X)} and {level(Y)} are not coprime")
    out: dict[int, int] = {}
    for d, a in X.items():
        for e, b in Y.items():
            out[d * e] = out.get(d * e, 0) + a * b
    return EtaQuotient(out)


# The fourteen primitive holomorphic eta quotients of weight 1/2 (Zagier).
ZAGIER_LIST: tuple[EtaQuotient, ...] = tuple(
    EtaQuotient(x)
    for x in (
        {1: 1},
        {1: 2, 2: -1},
        {1: -1, 2: 2},
        {1: -1, 2: 3, 4: -1},
        {1: -2, 2: 5, 4: -2},
        {1: 1, 2: -1, 4: 1},
        {1: 1, 2: -1, 3: -1, 6: 2},
        {1: 2, 2: -1, 3: -1, 6: 1},
        {1: -1, 2: 2, 3: 1, 6: -1},
        {1: -1, 2: 1, 3: 2, 6: -1},
        {1: -1, 2: 2, 3: 1, 4: -1, 6: -1, 12: 1},
        {1: -2, 2: 5, 3: 1, 4: -2, 6: -2, 12: 1},
        {1: 1, 2: -1, 3: -1, 4: 1, 6: 2, 12: -1},
        {1: 1, 2: -2, 3: -2, 4: 1, 6: 5, 12: -2},
    )
)


def zagier_match(X: Mapping[int, int]) -> tuple[int, int] | None:
    """``(index, nu)`` with ``X == rescale(ZAGIER_LIST[index - 1], nu)``, else None.

    Indices are 1-based to match the usual numbering of the list.
    """
    if not any(X.values()):
        return None
    P, g = primitive_part(X)
    for i, Z in enumerate(ZAGIER_LIST, start=1):
        if Z == P:
            return i, g
    return None
