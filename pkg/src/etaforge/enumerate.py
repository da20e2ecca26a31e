"""Exhaustive search for holomorphic eta quotients of a given weight and level.

The feasible set ``{X : Ahat_N X >= 0, sum(X) = k2}`` is a simplex whose
vertices are the columns of ``Ahat_N^{-1}`` scaled to weight k2.  One
coordinate is eliminated by the weight condition; for the rest we
precompute, once per level, the exact facet descriptions of the projections
of the simplex onto every coordinate prefix (Fourier-Motzkin with
tight-vertex bookkeeping).  A depth-first walk then reads off an exact
integer interval for each coordinate from the facets of the next
projection, so every partial assignment it visits extends to a point of the
real simplex.  All arithmetic is over the integers.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from math import ceil, floor, gcd, lcm
from typing import Iterable, Mapping, Sequence

from .arith import divisors
from .etaq import EtaQuotient, is_primitive, level, sort_key, weight2, zagier_match
from .orders import cusp_values, is_holomorphic, sym_order_matrix, sym_order_matrix_inverse

__all__ = [
    "EnumerationCapError",
    "ClassifiedQuotient",
    "ZagierReport",
    "enumerate_holomorphic",
    "simplex_vertices",
    "vertex_box",
    "classify",
    "factorizations",
    "is_quasi_irreducible",
    "is_simple",
    "verify_zagier",
]

DEFAULT_CAP = 64


class EnumerationCapError(RuntimeError):
    """The vertex box exceeds the per-divisor cap; ``divisor`` is the first offender."""

    def __init__(self, divisor: int, bound: int, cap: int):
        super().__init__(f"|X_{divisor}| may reach {bound}, above the cap {cap}")
        self.divisor = divisor
        self.bound = bound
        self.cap = cap


# -- geometry of the simplex ----------------------------------------------------


@lru_cache(maxsize=64)
def simplex_vertices(N: int) -> tuple[tuple[Fraction, ...], ...]:
    """Vertices of the weight-1 slice, one per cusp t: col_t(Ahat^-1) / (its sum).

    Entries are indexed like ``divisors(N)``; for weight k2 multiply by k2.
    """
    inv = sym_order_matrix_inverse(N)
    out = []
    for t in inv.index:
        col = inv.column(t)
        r = sum(col)
        if r <= 0:
            raise ArithmeticError(f"column {t} of the inverse has nonpositive sum {r}")
        out.append(tuple(c / r for c in col))
    return tuple(out)


def vertex_box(N: int, k2: int) -> dict[int, tuple[int, int]]:
    """Integer bounding box lo_d <= X_d <= hi_d of the feasible simplex."""
    V = simplex_vertices(N)
    box = {}
    for j, d in enumerate(divisors(N)):
        vals = [k2 * v[j] for v in V]
        box[d] = (ceil(min(vals)), floor(max(vals)))
    return box


def _variable_order(N: int) -> tuple[int, ...]:
    """Positions into divisors(N); largest inverse column norm first, the last one is eliminated."""
    inv = sym_order_matrix_inverse(N)
    D = inv.index
    key = {j: max(abs(x) for x in inv.column(d)) for j, d in enumerate(D)}
    return tuple(sorted(range(len(D)), key=lambda j: (-key[j], -D[j])))


def _affine_rank(points: list[tuple[int, ...]]) -> int:
    if len(points) <= 1:
        return 0
    base = points[0]
    rows = [[Fraction(a - b) for a, b in zip(p, base)] for p in points[1:]]
    rank = 0
    ncols = len(base)
    for c in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pr = rows[rank]
        for r in range(rank + 1, len(rows)):
            if rows[r][c]:
                f = rows[r][c] / pr[c]
                rows[r] = [x - f * y for x, y in zip(rows[r], pr)]
        rank += 1
    return rank


def _normalize(coeffs: Sequence[int], b: int) -> tuple[tuple[int, ...], int]:
    g = reduce(gcd, coeffs, abs(b))
    if g > 1:
        return tuple(c // g for c in coeffs), b // g
    return tuple(coeffs), b


@dataclass(frozen=True)
class _Facet:
    coeffs: tuple[int, ...]  # on the first i ordered coordinates
    b: int  # constraint: coeffs . y + b * k2 >= 0
    mask: int  # vertices on this facet


@dataclass(frozen=True)
class _Plan:
    N: int
    order: tuple[int, ...]  # positions into divisors(N)
    # facets[i] describes the projection onto the first i ordered coordinates
    facets: tuple[tuple[_Facet, ...], ...]


@lru_cache(maxsize=64)
def _plan(N: int) -> _Plan:
    D = divisors(N)
    n = len(D)
    order = _variable_order(N)
    A = sym_order_matrix(N)
    V = simplex_vertices(N)
    L = reduce(lcm, (x.denominator for v in V for x in v), 1)
    W = [tuple(int(x * L) for x in v) for v in V]  # integer multiples of the vertices
    pts = [tuple(w[o] for o in order) for w in W]

    last = order[-1]
    full = (1 << n) - 1
    cur = []
    for ti, t in enumerate(D):
        row = A.row(t)
        coeffs = [row[o] - row[last] for o in order[:-1]]
        c, b = _normalize(coeffs, row[last])
        cur.append(_Facet(c, b, full & ~(1 << ti)))
    facets: list[tuple[_Facet, ...]] = [()] * n
    facets[n - 1] = tuple(cur)

    for i in range(n - 1, 1, -1):
        # eliminate coordinate i-1 from the facets of the i-dimensional projection
        zero, pos, neg = [], [], []
        for f in cur:
            c = f.coeffs[i - 1]
            (zero if c == 0 else pos if c > 0 else neg).append(f)
        seen: dict[int, _Facet] = {}
        need = i - 1  # a facet of an (i-1)-dim polytope has i-1 affinely independent vertices

        def consider(mask: int, coeffs: tuple[int, ...], b: int) -> None:
            if mask in seen or bin(mask).count("1") < need:
                return
            sub = [pts[k][: i - 1] for k in range(n) if mask >> k & 1]
            if _affine_rank(sub) == i - 2:
                c, bb = _normalize(coeffs, b)
                seen[mask] = _Facet(c, bb, mask)

        for f in zero:
            consider(f.mask, f.coeffs[: i - 1], f.b)
        for fp in pos:
            cp = fp.coeffs[i - 1]
            for fn in neg:
                m = fp.mask & fn.mask
                if m in seen or bin(m).count("1") < need:
                    continue
                cn = -fn.coeffs[i - 1]
                coeffs = tuple(cn * a + cp * bq for a, bq in zip(fp.coeffs[: i - 1], fn.coeffs[: i - 1]))
                consider(m, coeffs, cn * fp.b + cp * fn.b)
        cur = sorted(seen.values(), key=lambda f: f.mask)
        facets[i - 1] = tuple(cur)

    return _Plan(N, order, tuple(facets))


def _interval(facets: Sequence[_Facet], prefix: Sequence[int], k2: int) -> tuple[int, int] | None:
    i = len(prefix)
    lo = hi = None
    for f in facets:
        c = f.coeffs[i]
        s = f.b * k2
        for a, y in zip(f.coeffs, prefix):
            s += a * y
        if c > 0:
            v = -(s // c)  # ceil(-s / c)
            lo = v if lo is None or v > lo else lo
        elif c < 0:
            v = s // -c  # floor(s / -c)
            hi = v if hi is None or v < hi else hi
        elif s < 0:
            return None
    if lo is None or hi is None:
        raise ArithmeticError("unbounded coordinate; the simplex should be bounded")
    return (lo, hi) if lo <= hi else None


def _search(plan: _Plan, k2: int, first: Iterable[int] | None = None) -> list[tuple[int, ...]]:
    n = len(plan.order)
    A = sym_order_matrix(plan.N)
    D = A.index
    rows = A.rows
    out = []
    prefix: list[int] = []

    def leaf() -> None:
        x = [0] * n
        for o, y in zip(plan.order, prefix):
            x[o] = y
        x[plan.order[-1]] = k2 - sum(prefix)
        if all(sum(a * b for a, b in zip(r, x)) >= 0 for r in rows):
            out.append(tuple(x))
        else:  # pragma: no cover - the projection facets are exact
            raise ArithmeticError(f"facet bounds admitted a non-holomorphic point {x}")

    def walk(i: int) -> None:
        if i == n - 1:
            leaf()
            return
        iv = _interval(plan.facets[i + 1], prefix, k2)
        if iv is None:
            return
        for y in range(iv[0], iv[1] + 1):
            prefix.append(y)
            walk(i + 1)
            prefix.pop()

    if n == 1:
        return [(k2,)] if k2 >= 0 else []
    if first is None:
        walk(0)
    else:
        for y in first:
            prefix.append(y)
            walk(1)
            prefix.pop()
    return out


def _search_chunk(args: tuple[int, int, tuple[int, ...]]) -> list[tuple[int, ...]]:
    N, k2, first = args
    return _search(_plan(N), k2, first)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("ETAFORGE_THREADS", "1")))
    except ValueError:
        return 1


def enumerate_holomorphic(N: int, k2: int, cap: int = DEFAULT_CAP) -> list[EtaQuotient]:
    """All X with Ahat_N X >= 0 and sum(X) = k2, canonically sorted.

    Raises :class:`EnumerationCapError` if some coordinate of the feasible
    simplex can exceed ``cap`` in absolute value.  ``ETAFORGE_THREADS`` > 1
    splits the first branching coordinate across worker processes.
    """
    if N < 1:
        raise ValueError("N must be positive")
    if k2 < 0:
        raise ValueError("k2 must be nonnegative")
    return list(_enumerate_cached(N, k2, cap))


@lru_cache(maxsize=128)
def _enumerate_cached(N: int, k2: int, cap: int) -> tuple[EtaQuotient, ...]:
    D = divisors(N)
    if k2 == 0:
        # Ahat is invertible and the simplex collapses to the origin
        return (EtaQuotient(),)
    for d, (lo, hi) in vertex_box(N, k2).items():
        b = max(abs(lo), abs(hi))
        if b > cap:
            raise EnumerationCapError(d, b, cap)

    plan = _plan(N)
    workers = _threads()
    if workers == 1 or len(D) < 3:
        raw = _search(plan, k2)
    else:
        iv = _interval(plan.facets[1], [], k2)
        raw = []
        if iv is not None:
            vals = list(range(iv[0], iv[1] + 1))
            chunks = [(N, k2, tuple(vals[j::workers])) for j in range(workers)]
            with ProcessPoolExecutor(max_workers=workers) as ex:
                for part in ex.map(_search_chunk, chunks):
                    raw.extend(part)
    result = [EtaQuotient.from_vector(N, x) for x in raw]
    result.sort(key=sort_key)
    return tuple(result)


# -- classification ----------------------------------------------------------------


@dataclass(frozen=True)
class ClassifiedQuotient:
    exponents: EtaQuotient
    level: int
    primitive: bool
    zagier_member: tuple[int, int] | None  # (1-based index, rescaling factor)

    @property
    def weight2(self) -> int:
        return weight2(self.exponents)


def classify(results: Iterable[Mapping[int, int]], k2: int) -> tuple[list[ClassifiedQuotient], list[EtaQuotient]]:
    """Attach level, primitivity and list membership.

    Returns ``(classified, violations)``; for k2 = 1 every quotient must be
    a rescaled list member, anything else lands in ``violations``.
    """
    out, bad = [], []
    for X in results:
        X = EtaQuotient(X)
        prim = is_primitive(X) if len(X) else False
        member = zagier_match(X) if k2 == 1 else None
        if k2 == 1 and member is None:
            bad.append(X)
        out.append(ClassifiedQuotient(X, level(X), prim, member))
    return out, bad


@dataclass
class ZagierReport:
    N: int
    total: int
    primitive: int
    violations: list[EtaQuotient] = field(default_factory=list)
    classified: list[ClassifiedQuotient] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        return f"total={self.total} primitive={self.primitive} violations={len(self.violations)}"


def verify_zagier(N: int, cap: int = DEFAULT_CAP) -> ZagierReport:
    """Enumerate weight 1/2 on Gamma_0(N) and check every result against the list."""
    found = enumerate_holomorphic(N, 1, cap)
    classified, bad = classify(found, 1)
    prim = sum(1 for c in classified if c.primitive)
    return ZagierReport(N, len(found), prim, bad, classified)


# -- factorizations ----------------------------------------------------------------


def factorizations(
    X: Mapping[int, int], M: int, cap: int = DEFAULT_CAP
) -> list[tuple[EtaQuotient, EtaQuotient]]:
    """All splittings X = Y + (X - Y) into nonconstant holomorphic quotients on Gamma_0(M).

    Each unordered pair is listed once, with the smaller factor (in the
    canonical order) first.  A nonconstant holomorphic factor has positive
    weight, so Y ranges over the enumerations of weights 1 .. sum(X) - 1.
    """
    X = EtaQuotient(X)
    if not is_holomorphic(X, M):
        raise ValueError(f"{dict(X)} is not holomorphic on Gamma_0({M})")
    s = weight2(X)
    seen = set()
    out = []
    for k in range(1, s // 2 + 1):
        for Y in enumerate_holomorphic(M, k, cap):
            Z = X - Y
            if all(v >= 0 for v in cusp_values(Z, M).values()):
                pair = tuple(sorted((Y, Z), key=sort_key))
                if pair not in seen:
                    seen.add(pair)
                    out.append(pair)
    out.sort(key=lambda p: (sort_key(p[0]), sort_key(p[1])))
    return out


def _check_nonconstant_holomorphic(X: Mapping[int, int]) -> EtaQuotient:
    X = EtaQuotient(X)
    if not len(X):
        raise ValueError("constant quotient")
    if not is_holomorphic(X):
        raise ValueError(f"{dict(X)} is not holomorphic")
    return X


def is_quasi_irreducible(X: Mapping[int, int], cap: int = DEFAULT_CAP) -> bool:
    X = _check_nonconstant_holomorphic(X)
    return not factorizations(X, level(X), cap)


def is_simple(X: Mapping[int, int], cap: int = DEFAULT_CAP) -> bool:
    X = _check_nonconstant_holomorphic(X)
    return is_primitive(X) and is_quasi_irreducible(X, cap)
