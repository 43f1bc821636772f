"""
Generating functions - exact x-truncated power series whose coefficients live in
a sympy polynomial ring, either ZZ[y, z] (trivariate counts) or ZZ[q] (χ̂ after
the substitution y = -1, z = q).

T_A = P / (1 - xP), T_B = Q / (1 - xP), T_D = (x²P + 2x(P - 1) + R) / (1 - xP),
with P = Σ xⁿyⁿz^C(n+1,2), Q = Σ xⁿyⁿz^(n²), R = Σ_{n>=2} xⁿyⁿz^(n²-n).
Results are exact modulo x^N and never extended past the order they were built with.
"""

import json
from math import comb
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from sympy import ZZ
from sympy.polys.rings import ring

from core.config import Config
from core.coxeter import FINITE_FAMILIES, Family, build_graph, subset_statistics
from core.errors import EnumerationBudgetError, RankOutOfRangeError, SeriesError
from core.polynomial import Q_RING, IntPolynomial
from services.charpoly import normalize_finite

YZ_RING, _Y, _Z = ring('y,z', ZZ)

ROUTES = ('trivariate', 'quotient')


class TruncatedSeries:
    """Σ_{k<N} c_k x^k with coefficients in a sympy PolyRing."""

    __slots__ = ('ring', 'coefficients')

    def __init__(self, ring_, coefficients: Sequence):
        if not coefficients:
            raise SeriesError("a truncated series needs order N >= 1")
        self.ring = ring_
        self.coefficients = tuple(ring_(c) for c in coefficients)

    @classmethod
    def zero(cls, ring_, order: int) -> 'TruncatedSeries':
        return cls(ring_, [ring_.zero] * order)

    @classmethod
    def one(cls, ring_, order: int) -> 'TruncatedSeries':
        return cls(ring_, [ring_.one] + [ring_.zero] * (order - 1))

    @classmethod
    def from_function(cls, ring_, order: int, term: Callable[[int], Any]) -> 'TruncatedSeries':
        if order < 1:
            raise SeriesError(f"truncation order must be >= 1, got {order}")
        return cls(ring_, [term(n) for n in range(order)])

    @property
    def order(self) -> int:
        return len(self.coefficients)

    def coefficient(self, k: int):
        if k < 0 or k >= self.order:
            raise SeriesError(f"x^{k} is not known modulo x^{self.order}")
        return self.coefficients[k]

    def _check(self, other: 'TruncatedSeries') -> int:
        if not isinstance(other, TruncatedSeries):
            raise SeriesError(f"cannot combine a series with {type(other).__name__}")
        if other.ring != self.ring:
            raise SeriesError("series over different coefficient rings")
        return min(self.order, other.order)

    def __add__(self, other: 'TruncatedSeries') -> 'TruncatedSeries':
        n = self._check(other)
        return TruncatedSeries(self.ring, [self.coefficients[k] + other.coefficients[k] for k in range(n)])

    def __sub__(self, other: 'TruncatedSeries') -> 'TruncatedSeries':
        n = self._check(other)
        return TruncatedSeries(self.ring, [self.coefficients[k] - other.coefficients[k] for k in range(n)])

    def __neg__(self) -> 'TruncatedSeries':
        return TruncatedSeries(self.ring, [-c for c in self.coefficients])

    def __mul__(self, other) -> 'TruncatedSeries':
        if isinstance(other, int):
            return TruncatedSeries(self.ring, [c * other for c in self.coefficients])
        n = self._check(other)
        result = [self.ring.zero] * n
        for i in range(n):
            a = self.coefficients[i]
            if not a:
                continue
            for j in range(n - i):
                b = other.coefficients[j]
                if b:
                    result[i + j] += a * b
        return TruncatedSeries(self.ring, result)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.ring == other.ring and self.coefficients == other.coefficients

    def __hash__(self) -> int:
        return hash(self.coefficients)

    def shift(self, k: int) -> 'TruncatedSeries':
        """Multiplies by x^k, keeping the order."""
        if k < 0:
            raise SeriesError(f"negative x-shift {k}")
        kept = self.coefficients[:max(self.order - k, 0)]
        return TruncatedSeries(self.ring, [self.ring.zero] * min(k, self.order) + list(kept))

    def reciprocal(self) -> 'TruncatedSeries':
        """1 / self modulo x^N; the constant coefficient must be exactly 1."""
        a = self.coefficients
        if a[0] != self.ring.one:
            raise SeriesError(f"reciprocal needs constant term 1, got {a[0]}")
        b = [self.ring.one]
        for m in range(1, self.order):
            total = self.ring.zero
            for i in range(1, m + 1):
                if a[i]:
                    total += a[i] * b[m - i]
            b.append(-total)
        return TruncatedSeries(self.ring, b)

    def quotient(self, denominator: 'TruncatedSeries') -> 'TruncatedSeries':
        return self * denominator.reciprocal()

    def substitute(self) -> 'TruncatedSeries':
        """y = -1, z = q, mapping a ZZ[y,z] series into ZZ[q]."""
        if self.ring != YZ_RING:
            raise SeriesError("substitution applies to series over ZZ[y,z]")
        coefficients = []
        for c in self.coefficients:
            terms: Dict[Tuple[int], int] = {}
            for (ky, kz), value in c.terms():
                key = (kz,)
                terms[key] = terms.get(key, 0) + (-int(value) if ky % 2 else int(value))
            coefficients.append(Q_RING.from_dict({k: v for k, v in terms.items() if v}))
        return TruncatedSeries(Q_RING, coefficients)

    def to_json_obj(self) -> List[List[List]]:
        """Per x-exponent, sorted [exponents..., "coefficient"] entries."""
        return [
            sorted([*monomial, str(value)] for monomial, value in c.terms())
            for c in self.coefficients
        ]

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(',', ':'))


# Building blocks

def series_P(order: int) -> TruncatedSeries:
    return TruncatedSeries.from_function(YZ_RING, order, lambda n: _Y ** n * _Z ** comb(n + 1, 2))


def series_Q(order: int) -> TruncatedSeries:
    return TruncatedSeries.from_function(YZ_RING, order, lambda n: _Y ** n * _Z ** (n * n))


def series_R(order: int) -> TruncatedSeries:
    return TruncatedSeries.from_function(
        YZ_RING, order, lambda n: _Y ** n * _Z ** (n * n - n) if n >= 2 else YZ_RING.zero
    )


def _numerator(family: Family, p: TruncatedSeries, q: TruncatedSeries, r: TruncatedSeries) -> TruncatedSeries:
    if family == Family.A:
        return p
    if family == Family.B:
        return q
    one = TruncatedSeries.one(p.ring, p.order)
    return p.shift(2) + (p - one).shift(1) * 2 + r


def _finite(family) -> Family:
    family = Family(family)
    if family not in FINITE_FAMILIES:
        raise RankOutOfRangeError(f"generating functions cover A, B and D, not {family.value}")
    return family


def series_numerator(family: Family, order: int) -> TruncatedSeries:
    """Numerator of T_family over ZZ[y,z]."""
    family = _finite(family)
    return _numerator(family, series_P(order), series_Q(order), series_R(order))


def series_denominator(order: int) -> TruncatedSeries:
    """1 - xP."""
    return TruncatedSeries.one(YZ_RING, order) - series_P(order).shift(1)


def series_T(family: Family, order: int) -> TruncatedSeries:
    """T_family(x, y, z) = Σ_n Σ_{J⊆S} y^|J| z^ℓ(w0(J)) xⁿ, modulo x^order."""
    return series_numerator(family, order).quotient(series_denominator(order))


# Specialized series in ZZ[q][[x]]

def _specialized(order: int, exponent: Callable[[int], int], start: int = 0) -> TruncatedSeries:
    return TruncatedSeries.from_function(
        Q_RING, order,
        lambda n: Q_RING.from_dict({(exponent(n),): -1 if n % 2 else 1}) if n >= start else Q_RING.zero,
    )


def quotient_series(family: Family, order: int) -> TruncatedSeries:
    """Σ χ̂ xⁿ as numerator / Σ (-1)ⁿ q^C(n,2) xⁿ, built directly in ZZ[q]."""
    family = _finite(family)
    p = _specialized(order, lambda n: comb(n + 1, 2))
    q = _specialized(order, lambda n: n * n)
    r = _specialized(order, lambda n: n * n - n, start=2)
    denominator = _specialized(order, lambda n: comb(n, 2))
    return _numerator(family, p, q, r).quotient(denominator)


def _check_extract_rank(family: Family, n: int):
    if n < 0:
        raise RankOutOfRangeError(f"rank must be non-negative, got {n}")
    if family == Family.D and n < 2:
        raise RankOutOfRangeError(f"the D series starts at rank 2, got {n}")


def extract_modified_charpoly(family: Family, n: int, route: str = 'trivariate') -> IntPolynomial:
    """χ̂ of the rank-n group read off the x^n coefficient of the specialized T."""
    family = _finite(family)
    _check_extract_rank(family, n)
    if route == 'trivariate':
        series = series_T(family, n + 1).substitute()
    elif route == 'quotient':
        series = quotient_series(family, n + 1)
    else:
        raise SeriesError(f"unknown route '{route}' (expected one of {', '.join(ROUTES)})")
    return IntPolynomial(series.coefficient(n))


def modified_char_poly_series(family: Family, order: int, route: str = 'trivariate') -> Dict[int, IntPolynomial]:
    """χ̂ for every rank below order (from rank 2 for D)."""
    family = _finite(family)
    if route == 'trivariate':
        series = series_T(family, order).substitute()
    elif route == 'quotient':
        series = quotient_series(family, order)
    else:
        raise SeriesError(f"unknown route '{route}' (expected one of {', '.join(ROUTES)})")
    start = 2 if family == Family.D else 0
    return {n: IntPolynomial(series.coefficient(n)) for n in range(start, order)}


def count_subsets_brute(family: Family, n: int, cap: Optional[int] = None):
    """Σ_{J⊆S} y^|J| z^ℓ(w0(J)) over the generators of the rank-n group."""
    family = _finite(family)
    cap = cap if cap is not None else Config.get('bruteCountCap')
    if n > cap:
        raise EnumerationBudgetError(f"brute-force subset count is capped at rank {cap}, got {n}")
    normalized, rank = normalize_finite(family, n)
    if rank == 0:
        return YZ_RING.one
    graph = build_graph(normalized, rank)
    return YZ_RING.from_dict({
        (size, length): count for size, length, count in subset_statistics(graph)
    })


def subset_counts(family: Family, n: int) -> Dict[Tuple[int, int], int]:
    """{(k, l): number of J with |J| = k and ℓ(w0(J)) = l}, read off T_family."""
    family = _finite(family)
    _check_extract_rank(family, n)
    coefficient = series_T(family, n + 1).coefficient(n)
    return {(ky, kz): int(value) for (ky, kz), value in sorted(coefficient.terms())}


def default_order() -> int:
    return Config.get('defaultTruncation')
