"""
Weak order service - explicit left weak order posets of finite classical groups,
with Möbius values, lattice operations and descent classes.

Elements are interned into an index space sorted by rank; order queries use
bitset down-sets and up-sets computed once per poset.
"""

import sys
import threading
from dataclasses import dataclass
from typing import Any, Callable, Dict, FrozenSet, Hashable, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from core.config import Config
from core.errors import (
    DescentSetError,
    EnumerationBudgetError,
    InvalidElementError,
    NotALatticeError,
    NotComparableError,
)
from core.polynomial import IntPolynomial
from core.utils import format_window, iter_bits
from services.group_models import GroupElement, GroupModel, compose, generator_windows

# rough per-element footprint of the poset tables, for the memory warning
BYTES_PER_ELEMENT = 400


class RankedPoset:
    """Finite ranked poset with a bottom element, given by its upward covers.

    Elements must be listed in non-decreasing rank order, bottom first.
    """

    def __init__(self, elements: Sequence[Hashable], ranks: Sequence[int], covers: Sequence[Sequence[int]]):
        self.elements: List[Hashable] = list(elements)
        self.ranks: List[int] = list(ranks)
        self.covers: List[List[int]] = [list(c) for c in covers]
        self.index: Dict[Hashable, int] = {e: i for i, e in enumerate(self.elements)}
        self.lower_covers: List[List[int]] = [[] for _ in self.elements]
        for i, ups in enumerate(self.covers):
            for j in ups:
                self.lower_covers[j].append(i)
        self.bottom = 0
        maximal = [i for i, ups in enumerate(self.covers) if not ups]
        self.top: Optional[int] = maximal[0] if len(maximal) == 1 else None
        self._lock = threading.Lock()
        self._down: Optional[List[int]] = None
        self._up: Optional[List[int]] = None

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def height(self) -> int:
        """Rank of the poset (length of a maximal chain when graded)."""
        return max(self.ranks) if self.ranks else 0

    def index_of(self, element: Any) -> int:
        if isinstance(element, int) and not isinstance(element, bool) and element not in self.index:
            if 0 <= element < len(self.elements):
                return element
        try:
            return self.index[element]
        except KeyError:
            raise InvalidElementError(f"{element} is not an element of this poset")

    def _derived(self, elements, ranks, covers) -> 'RankedPoset':
        return RankedPoset(elements, ranks, covers)

    # Order relation

    def _ensure_bitsets(self):
        if self._down is not None:
            return
        with self._lock:
            if self._down is not None:
                return
            n = len(self.elements)
            down = [0] * n
            for i in range(n):
                mask = 1 << i
                for j in self.lower_covers[i]:
                    mask |= down[j]
                down[i] = mask
            up = [0] * n
            for i in range(n - 1, -1, -1):
                mask = 1 << i
                for j in self.covers[i]:
                    mask |= up[j]
                up[i] = mask
            self._up = up
            self._down = down

    def downset(self, i: int) -> int:
        """Bitset of {t : t <= i}."""
        self._ensure_bitsets()
        return self._down[i]

    def upset(self, i: int) -> int:
        """Bitset of {t : t >= i}."""
        self._ensure_bitsets()
        return self._up[i]

    def leq(self, i: int, j: int) -> bool:
        return bool(self.downset(j) >> i & 1)

    # Sub-posets

    def restrict(self, mask: int) -> 'RankedPoset':
        """Induced subposet on the set bits of mask, re-ranked from its minimum rank."""
        kept = list(iter_bits(mask))
        position = {old: new for new, old in enumerate(kept)}
        base = self.ranks[kept[0]]
        covers = [[position[j] for j in self.covers[i] if j in position] for i in kept]
        return self._derived(
            [self.elements[i] for i in kept],
            [self.ranks[i] - base for i in kept],
            covers,
        )

    def interval(self, i: int, j: int) -> 'RankedPoset':
        if not self.leq(i, j):
            raise NotComparableError(f"{self.elements[i]} is not below {self.elements[j]}")
        return self.restrict(self.upset(i) & self.downset(j))

    def upper_set(self, i: int) -> 'RankedPoset':
        return self.restrict(self.upset(i))

    # Structure

    def to_digraph(self) -> nx.DiGraph:
        """Hasse diagram with a 'rank' attribute on every node."""
        g = nx.DiGraph()
        for i, element in enumerate(self.elements):
            g.add_node(element, rank=self.ranks[i])
        for i, ups in enumerate(self.covers):
            for j in ups:
                g.add_edge(self.elements[i], self.elements[j])
        return g

    def is_graded(self) -> bool:
        """Every maximal chain from the bottom has the same length."""
        g = nx.DiGraph()
        g.add_nodes_from(range(len(self.elements)))
        g.add_edges_from((i, j) for i, ups in enumerate(self.covers) for j in ups)
        shortest = {self.bottom: 0}
        longest = {self.bottom: 0}
        for node in nx.topological_sort(g):
            if node not in shortest:
                return False
            for nxt in g.successors(node):
                shortest[nxt] = min(shortest.get(nxt, shortest[node] + 1), shortest[node] + 1)
                longest[nxt] = max(longest.get(nxt, 0), longest[node] + 1)
        if any(shortest[i] != longest[i] for i in shortest):
            return False
        maximal_lengths = {longest[i] for i, ups in enumerate(self.covers) if not ups}
        return len(maximal_lengths) == 1

    def dump(self, formatter: Callable[[Any], str] = str) -> str:
        """Text dump: "rank <r>: <element> -> covers: <element>, ..."."""
        lines = []
        for i, element in enumerate(self.elements):
            ups = ', '.join(formatter(self.elements[j]) for j in self.covers[i])
            lines.append(f"rank {self.ranks[i]}: {formatter(element)} -> covers: {ups}".rstrip())
        return '\n'.join(lines)

    @classmethod
    def from_digraph(cls, g: nx.DiGraph, rank_of: Callable[[Hashable, Dict], int]) -> 'RankedPoset':
        """Builds a poset from a Hasse diagram and a rank function of (node, attributes)."""
        order = {node: k for k, node in enumerate(g.nodes)}
        nodes = sorted(g.nodes, key=lambda node: (rank_of(node, g.nodes[node]), order[node]))
        position = {node: k for k, node in enumerate(nodes)}
        ranks = [rank_of(node, g.nodes[node]) for node in nodes]
        covers = [sorted(position[t] for t in g.successors(node)) for node in nodes]
        return RankedPoset(nodes, ranks, covers)


class WeakOrderPoset(RankedPoset):
    """Left weak order on a finite classical group or one of its intervals."""

    def __init__(self, model: GroupModel, elements, ranks, covers):
        super().__init__(elements, ranks, covers)
        self.model = model

    def _derived(self, elements, ranks, covers) -> 'WeakOrderPoset':
        return WeakOrderPoset(self.model, elements, ranks, covers)

    def index_of(self, element: Any) -> int:
        if isinstance(element, tuple):
            element = GroupElement(self.model, element)
        return super().index_of(element)


@dataclass(frozen=True)
class MobiusTable:
    """μ(0̂, t) for every element index t of a poset."""

    values: Tuple[int, ...]

    def __getitem__(self, index: int) -> int:
        return self.values[index]

    def nonzero(self) -> Dict[int, int]:
        return {i: v for i, v in enumerate(self.values) if v}


def build_group_poset(model: GroupModel, cap: Optional[int] = None) -> WeakOrderPoset:
    """Whole group under the left weak order, by BFS over left multiplication."""
    order = model.order()
    cap = cap if cap is not None else Config.get('enumerationCap')
    if order > cap:
        raise EnumerationBudgetError(
            f"{model.name} has {order} elements, above the enumeration cap {cap}"
        )
    if order > Config.get('memoryWarnElements'):
        estimate = order * (BYTES_PER_ELEMENT + 8 * model.degree) // (1024 * 1024)
        print(f"Warning: enumerating {order} elements of {model.name} (about {estimate} MB)",
              file=sys.stderr)

    gens = list(generator_windows(model.family, model.rank).values())
    identity = tuple(range(1, model.degree + 1))
    windows = [identity]
    ranks = [0]
    covers: List[List[int]] = [[]]
    index = {identity: 0}
    cursor = 0
    while cursor < len(windows):
        u = windows[cursor]
        r = ranks[cursor]
        for s in gens:
            v = compose(s, u)
            j = index.get(v)
            if j is None:
                j = len(windows)
                index[v] = j
                windows.append(v)
                ranks.append(r + 1)
                covers.append([])
                covers[cursor].append(j)
            elif ranks[j] == r + 1:
                covers[cursor].append(j)
        cursor += 1

    elements = [GroupElement(model, w) for w in windows]
    return WeakOrderPoset(model, elements, ranks, covers)


def interval(poset: RankedPoset, u: Any, w: Any) -> RankedPoset:
    """[u, w], re-ranked so that u has rank 0."""
    return poset.interval(poset.index_of(u), poset.index_of(w))


def mobius_recursive(poset: RankedPoset) -> MobiusTable:
    """μ(0̂, y) = -Σ_{0̂ <= t < y} μ(0̂, t), in rank order."""
    values = [0] * len(poset)
    values[poset.bottom] = 1
    masks: Dict[int, int] = {1: 1 << poset.bottom}
    for y in range(len(poset)):
        if y == poset.bottom:
            continue
        below = poset.downset(y) & ~(1 << y)
        total = 0
        for value, mask in masks.items():
            total += value * (below & mask).bit_count()
        mu = -total
        values[y] = mu
        if mu:
            masks[mu] = masks.get(mu, 0) | (1 << y)
    return MobiusTable(tuple(values))


def mobius_between(poset: RankedPoset, u: Any, w: Any) -> int:
    """μ(u, w) by the recursion on the interval [u, w]."""
    sub = interval(poset, u, w)
    return mobius_recursive(sub)[len(sub) - 1]


def mobius_closed_form(poset: WeakOrderPoset, u: GroupElement, w: GroupElement) -> int:
    """(-1)^|J| if w u⁻¹ = w0(J) for J = D_R(w u⁻¹), else 0."""
    i, j = poset.index_of(u), poset.index_of(w)
    if not poset.leq(i, j):
        raise NotComparableError(f"{u} is not below {w}")
    v = poset.elements[j] * poset.elements[i].inverse()
    descents = v.right_descents()
    if poset.model.longest_element(descents) == v:
        return -1 if len(descents) % 2 else 1
    return 0


def lower_interval_isomorphism_check(poset: WeakOrderPoset, u: GroupElement, w: GroupElement) -> bool:
    """Checks that t -> t u⁻¹ maps [u, w] isomorphically onto [e, w u⁻¹]."""
    i, j = poset.index_of(u), poset.index_of(w)
    if not poset.leq(i, j):
        raise NotComparableError(f"{u} is not below {w}")
    u_inv = poset.elements[i].inverse()
    v = poset.elements[j] * u_inv
    source = poset.interval(i, j)
    target = poset.interval(poset.index_of(poset.model.identity()), poset.index_of(v))
    if len(source) != len(target):
        return False
    image = []
    for k, t in enumerate(source.elements):
        mapped = target.index.get(t * u_inv)
        if mapped is None or target.ranks[mapped] != source.ranks[k]:
            return False
        image.append(mapped)
    if len(set(image)) != len(image):
        return False
    source_edges = {(image[a], image[b]) for a, ups in enumerate(source.covers) for b in ups}
    target_edges = {(a, b) for a, ups in enumerate(target.covers) for b in ups}
    return source_edges == target_edges


def join(poset: RankedPoset, x: Any, y: Any) -> Any:
    """Least upper bound."""
    i, j = poset.index_of(x), poset.index_of(y)
    common = poset.upset(i) & poset.upset(j)
    if not common:
        raise NotALatticeError(f"{x} and {y} have no upper bound")
    # indices are rank ordered, so the lowest bit has minimal rank
    candidate = (common & -common).bit_length() - 1
    if poset.upset(candidate) != common:
        raise NotALatticeError(f"{x} and {y} have no least upper bound")
    return poset.elements[candidate]


def meet(poset: RankedPoset, x: Any, y: Any) -> Any:
    """Greatest lower bound."""
    i, j = poset.index_of(x), poset.index_of(y)
    common = poset.downset(i) & poset.downset(j)
    if not common:
        raise NotALatticeError(f"{x} and {y} have no lower bound")
    candidate = common.bit_length() - 1
    if poset.downset(candidate) != common:
        raise NotALatticeError(f"{x} and {y} have no greatest lower bound")
    return poset.elements[candidate]


def max_parabolic_below(poset: WeakOrderPoset, w: GroupElement) -> GroupElement:
    """w0(D_R(w)), the largest w0(J) below w."""
    element = poset.elements[poset.index_of(w)]
    return poset.model.longest_element(element.right_descents())


def descent_class(poset: WeakOrderPoset, lower: Iterable[int], upper: Iterable[int]) -> FrozenSet[GroupElement]:
    """{w : I ⊆ D_R(w) ⊆ J}."""
    lower = poset.model.check_subset(lower)
    upper = poset.model.check_subset(upper)
    if not lower <= upper:
        raise DescentSetError(f"I = {sorted(lower)} is not contained in J = {sorted(upper)}")
    return frozenset(
        w for w in poset.elements if lower <= w.right_descents() <= upper
    )


def descent_class_interval(poset: WeakOrderPoset, lower: Iterable[int], upper: Iterable[int]) -> RankedPoset:
    """The interval [w0(I), w0 w0(J^c)] that carries the descent class."""
    model = poset.model
    lower = model.check_subset(lower)
    upper = model.check_subset(upper)
    if not lower <= upper:
        raise DescentSetError(f"I = {sorted(lower)} is not contained in J = {sorted(upper)}")
    complement = set(model.generator_indices) - upper
    top = model.longest_element(model.generator_indices) * model.longest_element(complement)
    return interval(poset, model.longest_element(lower), top)


def char_poly_of_poset(poset: RankedPoset) -> IntPolynomial:
    """χ_P(q) = Σ_t μ(0̂, t) q^{r(P) - r(t)}."""
    mu = mobius_recursive(poset)
    height = poset.height
    return IntPolynomial.from_terms((height - poset.ranks[t], v) for t, v in mu.nonzero().items())


def modified_char_poly_of_poset(poset: RankedPoset) -> IntPolynomial:
    """χ̂_P(q) = Σ_t μ(0̂, t) q^{r(t)}."""
    mu = mobius_recursive(poset)
    return IntPolynomial.from_terms((poset.ranks[t], v) for t, v in mu.nonzero().items())


def product_poset(first: RankedPoset, second: RankedPoset) -> RankedPoset:
    """Explicit product P × Q with the product order."""
    g = nx.cartesian_product(first.to_digraph(), second.to_digraph())
    return RankedPoset.from_digraph(g, lambda node, attrs: sum(attrs['rank']))


def chain_poset(length: int) -> RankedPoset:
    """Chain 0 < 1 < ... < length."""
    return RankedPoset(
        list(range(length + 1)),
        list(range(length + 1)),
        [[i + 1] for i in range(length)] + [[]],
    )


def boolean_poset(n: int) -> RankedPoset:
    """Boolean lattice on n atoms, as a product of 2-element chains."""
    result = chain_poset(0)
    for _ in range(n):
        result = product_poset(result, chain_poset(1))
    return result


def dump_poset(poset: RankedPoset) -> str:
    if isinstance(poset, WeakOrderPoset):
        return poset.dump(lambda element: format_window(element.window))
    return poset.dump()
