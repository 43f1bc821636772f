"""
Exact integer polynomials in one variable q, backed by the sparse ZZ[q] ring of sympy.
"""

import json
from typing import Dict, Iterable, List, Mapping, Tuple, Union

from sympy import ZZ
from sympy.polys.rings import ring

Q_RING, _Q = ring('q', ZZ)

Scalar = Union[int, 'IntPolynomial']


class IntPolynomial:
    """Immutable sparse polynomial with unbounded integer coefficients."""

    __slots__ = ('_poly',)

    def __init__(self, poly=None):
        self._poly = Q_RING.zero if poly is None else poly

    # Construction

    @classmethod
    def from_terms(cls, terms: Union[Mapping[int, int], Iterable[Tuple[int, int]]]) -> 'IntPolynomial':
        """Builds a polynomial from exponent -> coefficient pairs; repeated exponents add up."""
        items = terms.items() if isinstance(terms, Mapping) else terms
        collected: Dict[Tuple[int], int] = {}
        for exponent, coefficient in items:
            if exponent < 0:
                raise ValueError(f"negative exponent {exponent} in polynomial")
            key = (int(exponent),)
            collected[key] = collected.get(key, 0) + int(coefficient)
        return cls(Q_RING.from_dict({k: v for k, v in collected.items() if v}))

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> 'IntPolynomial':
        return cls.from_terms({exponent: coefficient})

    @classmethod
    def one(cls) -> 'IntPolynomial':
        return cls(Q_RING.one)

    @classmethod
    def zero(cls) -> 'IntPolynomial':
        return cls(Q_RING.zero)

    @classmethod
    def q(cls) -> 'IntPolynomial':
        return cls(_Q)

    @classmethod
    def from_json(cls, text: str) -> 'IntPolynomial':
        """Parses the {"variable":"q","terms":[[e,"c"],...]} form."""
        data = json.loads(text)
        if data.get('variable') != 'q':
            raise ValueError(f"unexpected variable: {data.get('variable')!r}")
        return cls.from_terms((int(e), int(c)) for e, c in data['terms'])

    # Queries

    def terms(self) -> List[Tuple[int, int]]:
        """(exponent, coefficient) pairs sorted by descending exponent."""
        return sorted(((m[0], int(c)) for m, c in self._poly.terms()), reverse=True)

    def coefficient(self, exponent: int) -> int:
        return int(self._poly.get((exponent,), 0))

    @property
    def degree(self) -> int:
        """Degree, or -1 for the zero polynomial."""
        if not self._poly:
            return -1
        return max(m[0] for m in self._poly.keys())

    @property
    def min_exponent(self) -> int:
        if not self._poly:
            return -1
        return min(m[0] for m in self._poly.keys())

    @property
    def leading_coefficient(self) -> int:
        if not self._poly:
            return 0
        return self.coefficient(self.degree)

    def evaluate(self, value: int) -> int:
        return sum(c * value ** e for e, c in self.terms())

    def reversed(self, top_degree: int) -> 'IntPolynomial':
        """Returns q^top_degree * p(1/q)."""
        if top_degree < self.degree:
            raise ValueError(f"top degree {top_degree} is below the degree {self.degree}")
        return IntPolynomial.from_terms((top_degree - e, c) for e, c in self.terms())

    @property
    def ring_element(self):
        """The underlying sympy ring element."""
        return self._poly

    # Arithmetic

    @staticmethod
    def _lift(other: Scalar):
        if isinstance(other, IntPolynomial):
            return other._poly
        if isinstance(other, int):
            return Q_RING(other)
        return NotImplemented

    def __add__(self, other: Scalar) -> 'IntPolynomial':
        lifted = self._lift(other)
        if lifted is NotImplemented:
            return NotImplemented
        return IntPolynomial(self._poly + lifted)

    __radd__ = __add__

    def __sub__(self, other: Scalar) -> 'IntPolynomial':
        lifted = self._lift(other)
        if lifted is NotImplemented:
            return NotImplemented
        return IntPolynomial(self._poly - lifted)

    def __rsub__(self, other: Scalar) -> 'IntPolynomial':
        lifted = self._lift(other)
        if lifted is NotImplemented:
            return NotImplemented
        return IntPolynomial(lifted - self._poly)

    def __neg__(self) -> 'IntPolynomial':
        return IntPolynomial(-self._poly)

    def __mul__(self, other: Scalar) -> 'IntPolynomial':
        lifted = self._lift(other)
        if lifted is NotImplemented:
            return NotImplemented
        return IntPolynomial(self._poly * lifted)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> 'IntPolynomial':
        if exponent < 0:
            raise ValueError("negative powers are not polynomials")
        return IntPolynomial(self._poly ** exponent)

    def shift(self, exponent: int) -> 'IntPolynomial':
        """Multiplies by q^exponent."""
        if exponent < 0:
            raise ValueError(f"negative q-exponent {exponent}")
        return IntPolynomial.from_terms((e + exponent, c) for e, c in self.terms())

    def __eq__(self, other: object) -> bool:
        if isinstance(other, IntPolynomial):
            return self._poly == other._poly
        if isinstance(other, int):
            return self._poly == Q_RING(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(self.terms()))

    def __bool__(self) -> bool:
        return bool(self._poly)

    # Formatting

    def __str__(self) -> str:
        return format_human(self)

    def __repr__(self) -> str:
        return f"IntPolynomial({format_human(self)!r})"

    def to_json_obj(self) -> Dict:
        return {'variable': 'q', 'terms': [[e, str(c)] for e, c in self.terms()]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(',', ':'))


def format_human(poly: IntPolynomial) -> str:
    """Human form, e.g. "q^6 - 3q^5 + q^4 + 2q^3 - 1"."""
    terms = poly.terms()
    if not terms:
        return '0'
    parts = []
    for position, (exponent, coefficient) in enumerate(terms):
        magnitude = abs(coefficient)
        if exponent == 0:
            body = str(magnitude)
        else:
            power = 'q' if exponent == 1 else f'q^{exponent}'
            body = power if magnitude == 1 else f'{magnitude}{power}'
        if position == 0:
            parts.append(body if coefficient > 0 else f'-{body}')
        else:
            parts.append(f"{'+' if coefficient > 0 else '-'} {body}")
    return ' '.join(parts)


def product(factors: Iterable[IntPolynomial]) -> IntPolynomial:
    result = IntPolynomial.one()
    for factor in factors:
        result = result * factor
    return result
