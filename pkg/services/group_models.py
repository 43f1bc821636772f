"""
Group models - finite classical Coxeter groups realized as (signed) permutations.

A_n acts on windows of length n+1 (PermA), B_n and D_n on signed windows of
length n (SignedB, EvenSignedD). Generators are indexed by the nodes of the
matching Coxeter graph:

    A_n: s_i swaps positions i, i+1.
    B_n: s_n negates position 1, s_k (k < n) swaps positions n-k, n-k+1.
    D_n: s_1 swaps positions 1, 2 and negates both, s_2 swaps positions 1, 2,
         s_k (k >= 3) swaps positions k-1, k.

Right multiplication by a generator acts on positions, left multiplication on
values. Products compose as (u*v)(i) = u(v(i)) with u(-j) = -u(j).
"""

from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import factorial
from typing import Dict, FrozenSet, Iterable, List, Tuple

from core.coxeter import CoxeterGraph, Family, build_graph
from core.errors import InvalidElementError, ModelMismatchError, RankOutOfRangeError
from core.utils import format_window, parse_window

MODEL_NAMES = {Family.A: 'PermA', Family.B: 'SignedB', Family.D: 'EvenSignedD'}
MIN_MODEL_RANK = {Family.A: 1, Family.B: 1, Family.D: 2}


def _swap(degree: int, position: int) -> Tuple[int, ...]:
    window = list(range(1, degree + 1))
    window[position - 1], window[position] = window[position], window[position - 1]
    return tuple(window)


@lru_cache(maxsize=None)
def generator_windows(family: Family, rank: int) -> Dict[int, Tuple[int, ...]]:
    """Window of each generator s_k, keyed by graph index k."""
    if family == Family.A:
        degree = rank + 1
        return {k: _swap(degree, k) for k in range(1, rank + 1)}
    degree = rank
    if family == Family.B:
        gens = {k: _swap(degree, degree - k) for k in range(1, rank)}
        gens[rank] = (-1,) + tuple(range(2, degree + 1))
        return gens
    gens = {1: (-2, -1) + tuple(range(3, degree + 1)), 2: _swap(degree, 1)}
    for k in range(3, rank + 1):
        gens[k] = _swap(degree, k - 1)
    return gens


def compose(u: Tuple[int, ...], v: Tuple[int, ...]) -> Tuple[int, ...]:
    """(u∘v)(i) = u(v(i)) on windows."""
    return tuple(u[x - 1] if x > 0 else -u[-x - 1] for x in v)


def window_length(family: Family, window: Tuple[int, ...]) -> int:
    """Coxeter length from the inversion-type statistics of the window."""
    n = len(window)
    inversions = 0
    negative_sums = 0
    for i in range(n):
        a = window[i]
        for j in range(i + 1, n):
            b = window[j]
            if a > b:
                inversions += 1
            if a + b < 0:
                negative_sums += 1
    if family == Family.A:
        return inversions
    if family == Family.B:
        return inversions + sum(1 for x in window if x < 0) + negative_sums
    return inversions + negative_sums


@dataclass(frozen=True)
class GroupModel:
    """One concrete finite classical group: PermA(n+1), SignedB(n) or EvenSignedD(n)."""

    family: Family
    rank: int

    def __post_init__(self):
        family = Family(self.family)
        object.__setattr__(self, 'family', family)
        if family not in MIN_MODEL_RANK:
            raise RankOutOfRangeError(f"no permutation model for {family.value}")
        if self.rank < MIN_MODEL_RANK[family]:
            raise RankOutOfRangeError(
                f"{MODEL_NAMES[family]} requires rank >= {MIN_MODEL_RANK[family]}, got {self.rank}"
            )

    @property
    def degree(self) -> int:
        return self.rank + 1 if self.family == Family.A else self.rank

    @property
    def name(self) -> str:
        return f"{MODEL_NAMES[self.family]}({self.degree})"

    @property
    def signed(self) -> bool:
        return self.family != Family.A

    @cached_property
    def graph(self) -> CoxeterGraph:
        # B_1 is A_1
        if self.family == Family.B and self.rank == 1:
            return build_graph(Family.A, 1)
        return build_graph(self.family, self.rank)

    @property
    def generator_indices(self) -> Tuple[int, ...]:
        return tuple(range(1, self.rank + 1))

    @cached_property
    def generators(self) -> Dict[int, 'GroupElement']:
        return {k: GroupElement(self, w) for k, w in generator_windows(self.family, self.rank).items()}

    def identity(self) -> 'GroupElement':
        return GroupElement(self, tuple(range(1, self.degree + 1)))

    def order(self) -> int:
        n = self.degree
        if self.family == Family.A:
            return factorial(n)
        if self.family == Family.B:
            return 2 ** n * factorial(n)
        return 2 ** (n - 1) * factorial(n)

    def element(self, window: Iterable[int]) -> 'GroupElement':
        """Validated element from a window."""
        window = tuple(int(x) for x in window)
        if len(window) != self.degree:
            raise InvalidElementError(
                f"{self.name} windows have {self.degree} entries, got {len(window)}"
            )
        if sorted(abs(x) for x in window) != list(range(1, self.degree + 1)):
            raise InvalidElementError(f"{format_window(window)} is not a signed permutation of [{self.degree}]")
        negatives = sum(1 for x in window if x < 0)
        if self.family == Family.A and negatives:
            raise InvalidElementError(f"{self.name} windows have no negative entries")
        if self.family == Family.D and negatives % 2:
            raise InvalidElementError(f"{self.name} windows need an even number of negative entries")
        return GroupElement(self, window)

    def parse_element(self, text: str) -> 'GroupElement':
        return self.element(parse_window(text))

    def check_subset(self, subset: Iterable[int]) -> FrozenSet[int]:
        subset = frozenset(subset)
        unknown = subset - set(self.generator_indices)
        if unknown:
            raise RankOutOfRangeError(f"generators {sorted(unknown)} are not in {self.name}")
        return subset

    def longest_element(self, subset: Iterable[int]) -> 'GroupElement':
        """w0(J) by greedy ascent: left-multiply by the smallest s in J that increases length."""
        indices = sorted(self.check_subset(subset))
        current = self.identity()
        raised = True
        while raised:
            raised = False
            for k in indices:
                candidate = self.generators[k] * current
                if candidate.length > current.length:
                    current = candidate
                    raised = True
                    break
        return current

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class GroupElement:
    model: GroupModel
    window: Tuple[int, ...]

    def __mul__(self, other: 'GroupElement') -> 'GroupElement':
        if not isinstance(other, GroupElement):
            return NotImplemented
        if other.model != self.model:
            raise ModelMismatchError(f"cannot multiply {self.model.name} by {other.model.name}")
        return GroupElement(self.model, compose(self.window, other.window))

    @cached_property
    def length(self) -> int:
        return window_length(self.model.family, self.window)

    def inverse(self) -> 'GroupElement':
        result = [0] * len(self.window)
        for position, value in enumerate(self.window, start=1):
            result[abs(value) - 1] = position if value > 0 else -position
        return GroupElement(self.model, tuple(result))

    def right_descents(self) -> FrozenSet[int]:
        """D_R(w) = {s : ℓ(ws) < ℓ(w)}."""
        return frozenset(
            k for k, s in self.model.generators.items() if (self * s).length < self.length
        )

    def left_descents(self) -> FrozenSet[int]:
        """D_L(w) = {s : ℓ(sw) < ℓ(w)}."""
        return frozenset(
            k for k, s in self.model.generators.items() if (s * self).length < self.length
        )

    def is_identity(self) -> bool:
        return self.window == tuple(range(1, len(self.window) + 1))

    def reduced_word(self) -> List[int]:
        """One reduced word s_{i1} ... s_{ik}, found by stripping right descents."""
        word = []
        current = self
        while not current.is_identity():
            k = min(current.right_descents())
            word.append(k)
            current = current * self.model.generators[k]
        return list(reversed(word))

    def support(self) -> FrozenSet[int]:
        """Generators occurring in a (hence every) reduced word."""
        return frozenset(self.reduced_word())

    def __str__(self) -> str:
        return format_window(self.window)


def multiply(u: GroupElement, v: GroupElement) -> GroupElement:
    return u * v


def length(w: GroupElement) -> int:
    return w.length


def right_descents(w: GroupElement) -> FrozenSet[int]:
    return w.right_descents()


def left_descents(w: GroupElement) -> FrozenSet[int]:
    return w.left_descents()


def inverse(w: GroupElement) -> GroupElement:
    return w.inverse()


def longest_element_of_parabolic(model: GroupModel, subset: Iterable[int]) -> GroupElement:
    return model.longest_element(subset)


def weak_leq(u: GroupElement, w: GroupElement) -> bool:
    """u <= w in the left weak order: ℓ(w) = ℓ(wu⁻¹) + ℓ(u)."""
    if u.model != w.model:
        raise ModelMismatchError(f"cannot compare {u.model.name} with {w.model.name}")
    return w.length == (w * u.inverse()).length + u.length
