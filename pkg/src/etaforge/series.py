"""Truncated q-expansions of eta quotients.

Every exponent that occurs is a multiple of 1/24, so series are kept in the
variable ``u = q^(1/24)`` with integer exponents.  Coefficients live in
``Z[zeta_n]`` (plain integers for n = 1).

Precision is relative: a series with leading exponent ``e0`` and precision
``P`` knows every coefficient of ``u^m`` for ``e0 <= m < e0 + P``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt, lcm
from typing import Iterable, Iterator, Mapping, Sequence

from .arith import CyclotomicInt, divisors
from .etaq import ZAGIER_LIST, EtaQuotient, fmt

__all__ = [
    "PuiseuxSeries",
    "SeriesIdentityError",
    "eta_series",
    "quotient_series",
    "jtp_cell",
    "TABLE1",
    "Table1Cell",
    "table1_cell",
    "verify_table1",
    "theta_extract",
    "sign_transform",
    "involution_pairing",
    "UNITS",
]


class SeriesIdentityError(ArithmeticError):
    """An identity that must hold between two expansions failed."""


def _zero(n: int):
    return 0 if n == 1 else CyclotomicInt.zero(n)


def _wrap(c, n: int) -> CyclotomicInt:
    return c if isinstance(c, CyclotomicInt) else CyclotomicInt.integer(c, n)


class PuiseuxSeries:
    """``sum_k c_k u^(e0 + k)`` known for ``0 <= k < prec``.

    For the integer ring (n = 1) coefficients are stored as Python ints;
    :meth:`coeff` always hands back a :class:`CyclotomicInt`.
    """

    __slots__ = ("n", "e0", "_c")

    def __init__(self, e0: int, coeffs: Iterable, n: int = 1):
        c = list(coeffs)
        if n == 1:
            c = [x.to_int() if isinstance(x, CyclotomicInt) else int(x) for x in c]
        else:
            c = [_wrap(x, n) if not isinstance(x, CyclotomicInt) else x for x in c]
            if any(x.n != n for x in c):
                raise ValueError("coefficient ring mismatch")
        # strip leading zeros so that c_0 != 0 unless the series vanishes to precision
        k = 0
        while k < len(c) and not c[k]:
            k += 1
        self.n = n
        self.e0 = e0 + k
        self._c = tuple(c[k:])

    # -- basic accessors -----------------------------------------------------
    @property
    def prec(self) -> int:
        return len(self._c)

    @property
    def horizon(self) -> int:
        """First exponent whose coefficient is unknown."""
        return self.e0 + len(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def coeff(self, m: int) -> CyclotomicInt:
        if m >= self.horizon:
            raise IndexError(f"u^{m} is beyond the precision horizon u^{self.horizon}")
        if m < self.e0:
            return CyclotomicInt.zero(self.n)
        return _wrap(self._c[m - self.e0], self.n)

    def coefficients(self) -> tuple:
        """Raw coefficient tuple (ints when n = 1)."""
        return self._c

    def terms(self) -> Iterator[tuple[int, CyclotomicInt]]:
        for k, c in enumerate(self._c):
            if c:
                yield self.e0 + k, _wrap(c, self.n)

    def support(self) -> list[int]:
        return [self.e0 + k for k, c in enumerate(self._c) if c]

    # -- structure -----------------------------------------------------------
    def truncate(self, prec: int) -> "PuiseuxSeries":
        return PuiseuxSeries(self.e0, self._c[:prec], self.n)

    def embed(self, n: int) -> "PuiseuxSeries":
        if n == self.n:
            return self
        if n % self.n:
            raise ValueError(f"cannot embed Z[zeta_{self.n}] into Z[zeta_{n}]")
        return PuiseuxSeries(self.e0, (_wrap(c, self.n).embed(n) for c in self._c), n)

    def shift(self, s: int) -> "PuiseuxSeries":
        """Multiply by u^s."""
        return PuiseuxSeries(self.e0 + s, self._c, self.n)

    def rescale(self, d: int) -> "PuiseuxSeries":
        """Substitute u -> u^d."""
        if d < 1:
            raise ValueError("rescaling factor must be positive")
        out = [_zero(self.n)] * (d * len(self._c))
        for k, c in enumerate(self._c):
            out[d * k] = c
        return PuiseuxSeries(d * self.e0, out, self.n)

    def scale(self, c) -> "PuiseuxSeries":
        if self.n == 1 and isinstance(c, int):
            return PuiseuxSeries(self.e0, (c * x for x in self._c), 1)
        c = _wrap(c, self.n)
        return PuiseuxSeries(self.e0, (c * _wrap(x, self.n) for x in self._c), self.n)

    # -- ring operations -----------------------------------------------------
    def _check_ring(self, other: "PuiseuxSeries") -> None:
        if self.n != other.n:
            raise ValueError(f"mixing Z[zeta_{self.n}] and Z[zeta_{other.n}] series; embed first")

    def __add__(self, other: "PuiseuxSeries") -> "PuiseuxSeries":
        self._check_ring(other)
        e0 = min(self.e0, other.e0)
        H = min(self.horizon, other.horizon)
        out = [_zero(self.n)] * max(H - e0, 0)
        for s in (self, other):
            for k, c in enumerate(s._c):
                m = s.e0 + k
                if m >= H:
                    break
                out[m - e0] = out[m - e0] + c
        if not any(out):
            return PuiseuxSeries(H, (), self.n)
        return PuiseuxSeries(e0, out, self.n)

    def __neg__(self):
        return PuiseuxSeries(self.e0, (-c for c in self._c), self.n)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "PuiseuxSeries") -> "PuiseuxSeries":
        if not isinstance(other, PuiseuxSeries):
            return self.scale(other)
        self._check_ring(other)
        P = min(self.prec, other.prec)
        a, b = self._c[:P], other._c[:P]
        out = [_zero(self.n)] * P
        bnz = [(j, y) for j, y in enumerate(b) if y]
        for i, x in enumerate(a):
            if not x:
                continue
            lim = P - i
            for j, y in bnz:
                if j >= lim:
                    break
                out[i + j] = out[i + j] + x * y
        return PuiseuxSeries(self.e0 + other.e0, out, self.n)

    def inverse(self) -> "PuiseuxSeries":
        """Truncated inverse; the leading coefficient must be a unit (a root of unity or -1)."""
        if self.is_zero():
            raise ZeroDivisionError("series vanishes to working precision")
        c0 = _wrap(self._c[0], self.n)
        if self.n == 1:
            if self._c[0] not in (1, -1):
                raise ValueError(f"leading coefficient {c0} is not a unit")
            c0inv = self._c[0]
        else:
            k = c0.root_index()
            if k is None:
                k = (-c0).root_index()
                if k is None:
                    raise ValueError(f"leading coefficient {c0} is not a root of unity")
                c0inv = -CyclotomicInt.root(self.n, -k)
            else:
                c0inv = CyclotomicInt.root(self.n, -k)
        P = self.prec
        a = self._c
        anz = [(j, x) for j, x in enumerate(a) if x and j]
        out = [c0inv] + [_zero(self.n)] * (P - 1)
        for m in range(1, P):
            s = _zero(self.n)
            for j, x in anz:
                if j > m:
                    break
                y = out[m - j]
                if y:
                    s = s + x * y
            out[m] = -(c0inv * s) if s else _zero(self.n)
        return PuiseuxSeries(-self.e0, out, self.n)

    def __pow__(self, e: int) -> "PuiseuxSeries":
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        result = PuiseuxSeries(0, [1] + [0] * (base.prec - 1), 1).embed(self.n)
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # -- comparisons ---------------------------------------------------------
    def agrees_with(self, other: "PuiseuxSeries") -> bool:
        """Equality on the common range of known exponents."""
        if self.n != other.n:
            n = lcm(self.n, other.n)
            return self.embed(n).agrees_with(other.embed(n))
        H = min(self.horizon, other.horizon)
        lo = min(self.e0, other.e0)
        return all(self.coeff(m) == other.coeff(m) for m in range(lo, H))

    def __eq__(self, other):
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        return self.n == other.n and self.e0 == other.e0 and self._c == other._c

    def __hash__(self):
        return hash((self.n, self.e0, self._c))

    def __repr__(self):
        head = ", ".join(f"u^{m}: {c}" for m, c in list(self.terms())[:6])
        return f"PuiseuxSeries(n={self.n}, e0={self.e0}, prec={self.prec}, [{head}, ...])"


# -- eta and eta quotients ----------------------------------------------------


def eta_series(P: int) -> PuiseuxSeries:
    """eta = u * prod (1 - u^(24 n)) from the pentagonal number theorem.

    Nonzero coefficients are (-1)^k at u^(1 + 12 k (3k - 1)), k in Z.
    """
    if P < 1:
        raise ValueError("precision must be positive")
    c = [0] * P
    k = 0
    while True:
        hit = False
        for kk in ((k, -k) if k else (0,)):
            m = 12 * kk * (3 * kk - 1)  # relative to the leading u^1
            if m < P:
                c[m] = -1 if kk % 2 else 1
                hit = True
        if not hit:
            break
        k += 1
    return PuiseuxSeries(1, c)


def _euler_exponents(X: Mapping[int, int], limit: int) -> dict[int, int]:
    # prod_d prod_n (1 - u^(24 d n))^X_d = prod_m (1 - u^(24 m))^(sum_{d | m} X_d)
    out = {}
    for m in range(1, limit + 1):
        e = sum(X.get(d, 0) for d in divisors(m))
        if e:
            out[m] = e
    return out


def quotient_series(X: Mapping[int, int], P: int) -> PuiseuxSeries:
    """Integer q-expansion of eta^X in u = q^(1/24), relative precision P.

    The product over d of eta(d z)^X_d is regrouped as
    prod_m (1 - q^m)^(c_m) with c_m = sum_{d | m} X_d and expanded one
    binomial at a time; positive powers are repeated differences and
    negative powers repeated strided prefix sums, both exact over Z.
    """
    if P < 1:
        raise ValueError("precision must be positive")
    e0 = sum(d * e for d, e in X.items())
    c = [0] * P
    c[0] = 1
    for m, e in _euler_exponents(X, (P - 1) // 24).items():
        k = 24 * m
        if e > 0:
            for _ in range(e):
                for i in range(P - 1, k - 1, -1):
                    if c[i - k]:
                        c[i] -= c[i - k]
        else:
            for _ in range(-e):
                for i in range(k, P):
                    if c[i - k]:
                        c[i] += c[i - k]
    return PuiseuxSeries(e0, c)


# -- Jacobi triple product ------------------------------------------------------

# units as powers of zeta_12; omega = zeta_12^4 = exp(2 pi i / 3)
UNITS = {"1": 0, "i": 3, "-1": 6, "-i": 9, "w": 4, "iw": 7, "-w": 10}

# (unit power of zeta_12, exponent in u) for the row (x) and column (y) labels
_X = {
    "q^1/2": (0, 12), "iq^1/2": (3, 12), "q": (0, 24), "-q": (6, 24),
    "q^3/2": (0, 36), "iq^3/2": (3, 36), "q^3": (0, 72), "-q^3": (6, 72),
}
_Y = {
    "q^1/2": (0, 12), "iq^1/2": (3, 12), "-q^1/2": (6, 12), "-iq^1/2": (9, 12),
    "wq^1/2": (4, 12), "iwq^1/2": (7, 12), "-q^2": (6, 48), "-wq^2": (10, 48),
}

# (row label, column label) -> eta quotient in the table cell
TABLE1: dict[tuple[str, str], EtaQuotient] = {
    ("q^1/2", "q^1/2"): ZAGIER_LIST[2],
    ("q^1/2", "wq^1/2"): ZAGIER_LIST[7],
    ("iq^1/2", "iq^1/2"): ZAGIER_LIST[5],
    ("iq^1/2", "iwq^1/2"): ZAGIER_LIST[11],
    ("q", "-q^2"): ZAGIER_LIST[1],
    ("q", "-wq^2"): ZAGIER_LIST[8],
    ("-q", "-q^2"): ZAGIER_LIST[4],
    ("-q", "-wq^2"): ZAGIER_LIST[12],
    ("q^3/2", "q^1/2"): ZAGIER_LIST[9],
    ("q^3/2", "-q^1/2"): ZAGIER_LIST[0],
    ("iq^3/2", "iq^1/2"): ZAGIER_LIST[3],
    ("iq^3/2", "-iq^1/2"): ZAGIER_LIST[13],
    ("q^3", "-q^2"): ZAGIER_LIST[6],
    ("-q^3", "-q^2"): ZAGIER_LIST[10],
}


def _binomial_mul(c: list, lo: int, hi: int, unit: CyclotomicInt, k: int) -> tuple[list, int, int]:
    """Multiply the Laurent polynomial c (exponents lo .. hi-1) by (1 + unit u^k), truncating at hi."""
    if k >= 0:
        out = list(c)
        for m in range(hi - 1, lo + k - 1, -1):
            src = c[m - k - lo]
            if src:
                out[m - lo] = out[m - lo] + unit * src
        return out, lo, hi
    # only used on exact (untruncated) polynomials: grow downwards
    new_lo = lo + k
    out = [CyclotomicInt.zero(unit.n)] * (-k) + list(c)
    for m in range(lo, hi):
        src = c[m - lo]
        if src:
            out[m + k - new_lo] = out[m + k - new_lo] + unit * src
    return out, new_lo, hi


def jtp_cell(
    x_spec: tuple[int, int], y_spec: tuple[int, int], P: int
) -> tuple[PuiseuxSeries, PuiseuxSeries, CyclotomicInt]:
    """Both sides of the Jacobi triple product at x = zeta_12^a u^e, y = zeta_12^b u^f.

    Returns ``(lhs, rhs, unit)`` over Z[zeta_12] with ``lhs == unit * rhs``;
    ``unit`` is searched among the 24th roots of unity and is expected to be 1.
    Raises :class:`SeriesIdentityError` if no such unit exists.
    """
    (ax, ex), (ay, ey) = x_spec, y_spec
    if ex <= 0:
        raise ValueError("|x| < 1 requires a positive exponent for x")
    n = 12
    z = lambda k: CyclotomicInt.root(n, k)  # noqa: E731

    # factors (1 + c u^k) of prod (1 - x^2m)(1 + x^(2m-1) y)(1 + x^(2m-1) / y)
    def factors(m):
        yield (ax * 2 * m + 6, ex * 2 * m)
        yield (ax * (2 * m - 1) + ay, ex * (2 * m - 1) + ey)
        yield (ax * (2 * m - 1) - ay, ex * (2 * m - 1) - ey)

    low = [f for m in range(1, 1 + (ey // (2 * ex)) + 2) for f in factors(m) if f[1] <= 0]
    neg = sum(k for _, k in low)
    H = neg + P

    # exact product of the nonpositive-exponent factors, then truncated growth upwards
    c, lo, hi = [z(0)], 0, 1
    for a, k in low:
        c, lo, hi = _binomial_mul(c, lo, hi, z(a), k)
    # widen the window to [lo, H)
    c = c + [CyclotomicInt.zero(n)] * max(H - hi, 0)
    hi = max(H, hi)
    m = 1
    while True:
        fs = [f for f in factors(m) if f[1] > 0]
        if all(k >= H - lo for _, k in fs) and ex * (2 * m - 1) - abs(ey) >= H - lo:
            break
        for a, k in fs:
            if k < H - lo:
                c, lo, hi = _binomial_mul(c, lo, hi, z(a), k)
        m += 1
    lhs = PuiseuxSeries(lo, c[: H - lo], n)

    rhs_c = [CyclotomicInt.zero(n)] * (H - lo)
    B = isqrt(P) + 2
    for j in range(-B, B + 1):
        e = ex * j * j + ey * j
        if e < lo:
            raise SeriesIdentityError("theta term below the product's leading exponent")
        if e < H:
            rhs_c[e - lo] = rhs_c[e - lo] + z(ax * j * j + ay * j)
    for j in (-B - 1, B + 1):
        if ex * j * j + ey * j < H:
            raise SeriesIdentityError("theta truncation bound too small for this precision")
    rhs = PuiseuxSeries(lo, rhs_c, n)

    L, R = lhs.embed(24), rhs.embed(24)
    for k in range(24):
        if L.agrees_with(R.scale(CyclotomicInt.root(24, k))):
            unit = CyclotomicInt.root(24, k)
            return lhs, rhs, unit
    raise SeriesIdentityError(f"triple product fails at x={x_spec}, y={y_spec}")


@dataclass(frozen=True)
class Table1Cell:
    row: str
    col: str
    quotient: EtaQuotient
    identity_unit: CyclotomicInt
    scalar: CyclotomicInt
    shift: int

    @property
    def scalar_is_unit(self) -> bool:
        return self.scalar.root_index() is not None


def table1_cell(row: str, col: str, P: int) -> Table1Cell:
    """Verify one cell: the triple product at (row, col) against the named eta quotient.

    The product side equals ``scalar * u^(-shift) * eta^X``; ``scalar`` is the
    product's leading coefficient (it may be 2 or 1 + zeta where a factor of
    the product has no u-dependence) and ``shift`` the difference of leading
    exponents.
    """
    X = TABLE1[(row, col)]
    lhs, rhs, unit = jtp_cell(_X[row], _Y[col], P)
    if unit != CyclotomicInt.one(24):
        raise SeriesIdentityError(f"cell ({row}, {col}): sides differ by {unit}")
    target = quotient_series(X, lhs.prec).embed(12)
    scalar = lhs.coeff(lhs.e0)
    shift = target.e0 - lhs.e0
    if not lhs.agrees_with(target.shift(-shift).scale(scalar)):
        raise SeriesIdentityError(f"cell ({row}, {col}) does not match {fmt(X)}")
    return Table1Cell(row, col, X, unit, scalar, shift)


def verify_table1(P: int) -> list[Table1Cell]:
    return [table1_cell(r, c, P) for r, c in TABLE1]


# -- theta representation and the sign transform ----------------------------------


def theta_extract(X: Mapping[int, int], P: int, min_points: int = 10) -> tuple[int, dict[int, int]]:
    """Find t | 24 with every exponent of eta^X of the form t n^2 (in u units).

    Returns the largest such t and the map n -> a_n (n >= 0) of coefficients
    at u^(t n^2).  Raises if fewer than ``min_points`` support points are
    visible or if no t fits.
    """
    s = quotient_series(X, P)
    if s.e0 < 0:
        raise ValueError("theta representation needs a holomorphic quotient")
    supp = s.support()
    if len(supp) < min_points:
        raise ValueError(f"only {len(supp)} support points below u^{s.horizon}; raise P")
    for t in sorted(divisors(24), reverse=True):
        roots = {}
        for m in supp:
            if m % t:
                break
            r = isqrt(m // t)
            if r * r != m // t:
                break
            roots[r] = s.coefficients()[m - s.e0]
        else:
            return t, roots
    raise SeriesIdentityError(f"support of {fmt(X)} is not on any t n^2 grid with t | 24")


def sign_transform(s: PuiseuxSeries) -> PuiseuxSeries:
    """q -> -q, i.e. u^m -> zeta_48^m u^m; the result lives in Z[zeta_48]."""
    n = lcm(s.n, 48)
    out = []
    for k, c in enumerate(s.coefficients()):
        m = s.e0 + k
        if not c:
            out.append(CyclotomicInt.zero(n))
        elif isinstance(c, int):
            out.append(CyclotomicInt.root(n, m * n // 48) * c)
        else:
            out.append(c.embed(n) * CyclotomicInt.root(n, m * n // 48))
    return PuiseuxSeries(s.e0, out, n)


def involution_pairing(
    P: int, members: Sequence[EtaQuotient] = ZAGIER_LIST
) -> dict[int, tuple[int, int]]:
    """Pair each member f with the unique (g, k) such that f(-q) = zeta_48^k g(q).

    Keys and partner indices are 1-based positions in ``members``.  Raises
    :class:`SeriesIdentityError` if some member has no partner, several
    partners, or if the pairing is not an involution.
    """
    if P < 1:
        raise ValueError("precision must be positive")
    plain = [quotient_series(X, P) for X in members]
    big = [s.embed(48) for s in plain]
    out: dict[int, tuple[int, int]] = {}
    for i, s in enumerate(plain, start=1):
        st = sign_transform(s)
        k = st.coeff(st.e0).root_index()
        hits = []
        for j, g in enumerate(big, start=1):
            if g.e0 != st.e0 or k is None:
                continue
            if st.agrees_with(g.scale(CyclotomicInt.root(48, k))):
                hits.append(j)
        if len(hits) != 1:
            raise SeriesIdentityError(
                f"member {i} ({fmt(members[i - 1])}) has {len(hits)} sign-transform partners"
            )
        out[i] = (hits[0], k)
    for i, (j, _) in out.items():
        if out[j][0] != i:
            raise SeriesIdentityError(f"pairing is not an involution at member {i}")
    return out
