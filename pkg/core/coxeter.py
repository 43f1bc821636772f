"""
Coxeter graphs for the classical families A, B, D and the affine families
Ã, B̃, C̃, D̃, and classification of generator subsets into components.
Shared by the group models, the formula layer and the generating functions.
"""

from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property, lru_cache
from typing import Dict, FrozenSet, Iterable, List, Tuple

import networkx as nx

from core.errors import RankOutOfRangeError, UnclassifiableComponentError
from core.utils import iter_subsets


class Family(str, Enum):
    A = 'A'
    B = 'B'
    D = 'D'
    AFF_A = 'AffA'
    AFF_B = 'AffB'
    AFF_C = 'AffC'
    AFF_D = 'AffD'

    @property
    def is_affine(self) -> bool:
        return self.value.startswith('Aff')

    @classmethod
    def parse(cls, value: str) -> 'Family':
        """Accepts 'A', 'affc', 'AffD', '~B' and similar spellings."""
        text = str(value).strip()
        if text.startswith('~'):
            text = 'Aff' + text[1:]
        for family in cls:
            if family.value.lower() == text.lower():
                return family
        names = ', '.join(f.value for f in cls)
        raise RankOutOfRangeError(f"unknown family '{value}' (expected one of {names})")


FINITE_FAMILIES = (Family.A, Family.B, Family.D)
AFFINE_FAMILIES = (Family.AFF_A, Family.AFF_B, Family.AFF_C, Family.AFF_D)

MIN_RANK = {
    Family.A: 1,
    Family.B: 2,
    Family.D: 2,
    Family.AFF_A: 2,
    Family.AFF_B: 3,
    Family.AFF_C: 2,
    Family.AFF_D: 4,
}


def w0_length(family: Family, rank: int) -> int:
    """Length of the longest element of the finite group of the given type."""
    if rank <= 0:
        return 0
    if family == Family.A:
        return rank * (rank + 1) // 2
    if family == Family.B:
        return rank * rank
    if family == Family.D:
        return rank * (rank - 1)
    raise RankOutOfRangeError(f"{family.value} has no longest element")


@dataclass(frozen=True)
class CoxeterGraph:
    """Labeled Coxeter graph; edges are (s, t, m) with s < t and m >= 3."""

    family: Family
    rank: int
    nodes: Tuple[int, ...]
    edges: Tuple[Tuple[int, int, int], ...] = field(repr=False)

    @cached_property
    def graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.nodes)
        for s, t, m in self.edges:
            g.add_edge(s, t, m=m)
        return g

    @cached_property
    def node_set(self) -> FrozenSet[int]:
        return frozenset(self.nodes)

    def label(self, s: int, t: int) -> int:
        """m(s, t); 2 when the generators commute, 1 on the diagonal."""
        if s == t:
            return 1
        data = self.graph.get_edge_data(s, t)
        return data['m'] if data else 2

    def commutes(self, s: int, t: int) -> bool:
        return s == t or self.label(s, t) == 2

    def check_subset(self, subset: Iterable[int]) -> FrozenSet[int]:
        subset = frozenset(subset)
        unknown = subset - self.node_set
        if unknown:
            raise RankOutOfRangeError(
                f"generators {sorted(unknown)} are not nodes of {self.family.value}_{self.rank}"
            )
        return subset


@dataclass(frozen=True)
class Component:
    generators: FrozenSet[int]
    family: Family
    rank: int
    w0_length: int

    @property
    def type_name(self) -> str:
        return f"{self.family.value}_{self.rank}"


@dataclass(frozen=True)
class ComponentReport:
    components: Tuple[Component, ...]

    @property
    def total_length(self) -> int:
        return sum(c.w0_length for c in self.components)

    def types(self) -> List[str]:
        return [c.type_name for c in self.components]


def _path_edges(nodes: List[int], labels: Dict[int, int] = None) -> List[Tuple[int, int, int]]:
    labels = labels or {}
    return [
        (min(a, b), max(a, b), labels.get(i, 3))
        for i, (a, b) in enumerate(zip(nodes, nodes[1:]))
    ]


@lru_cache(maxsize=None)
def build_graph(family: Family, rank: int) -> CoxeterGraph:
    """Canonical graph of a family under the fixed indexing convention."""
    family = Family(family)
    minimum = MIN_RANK[family]
    if rank < minimum:
        raise RankOutOfRangeError(
            f"{family.value} requires rank >= {minimum}, got {rank}"
        )
    n = rank
    if family == Family.A:
        nodes = list(range(1, n + 1))
        edges = _path_edges(nodes)
    elif family == Family.B:
        nodes = list(range(1, n + 1))
        edges = _path_edges(nodes, {n - 2: 4})
    elif family == Family.D:
        nodes = list(range(1, n + 1))
        edges = [(1, 3, 3), (2, 3, 3)] if n >= 3 else []
        edges += _path_edges(list(range(3, n + 1)))
    elif family == Family.AFF_A:
        nodes = list(range(1, n + 2))
        edges = _path_edges(nodes) + [(1, n + 1, 3)]
    elif family == Family.AFF_B:
        nodes = list(range(0, n + 1))
        edges = _path_edges(list(range(1, n + 1)), {n - 2: 4}) + [(0, 2, 3)]
    elif family == Family.AFF_C:
        nodes = list(range(0, n + 1))
        edges = _path_edges(nodes, {0: 4, n - 1: 4})
    else:
        # D̃_n: s0, s1 fork at s2; s_{n-1}, s_n fork at s_{n-2}
        nodes = list(range(0, n + 1))
        edges = [(0, 2, 3), (1, 2, 3)]
        edges += _path_edges(list(range(2, n - 1)))
        edges += [(n - 2, n - 1, 3), (n - 2, n, 3)]
    return CoxeterGraph(family, rank, tuple(nodes), tuple(sorted(edges)))


def _classify(graph: CoxeterGraph, nodes: FrozenSet[int]) -> Component:
    """Recognizes a connected induced subgraph as A_m, B_m or D_m by its shape."""
    sub = graph.graph.subgraph(nodes)
    m = len(nodes)
    if m == 1:
        return Component(nodes, Family.A, 1, 1)

    def fail(reason: str):
        raise UnclassifiableComponentError(
            f"component {sorted(nodes)} of {graph.family.value}_{graph.rank} {reason}"
        )

    if sub.number_of_edges() != m - 1:
        fail("contains a cycle")
    heavy = [(s, t) for s, t, label in sub.edges(data='m') if label != 3]
    degrees = dict(sub.degree())
    branch_points = [s for s, d in degrees.items() if d >= 3]

    if not branch_points:
        if not heavy:
            return Component(nodes, Family.A, m, w0_length(Family.A, m))
        if len(heavy) == 1 and sub.edges[heavy[0]]['m'] == 4:
            s, t = heavy[0]
            if degrees[s] == 1 or degrees[t] == 1:
                return Component(nodes, Family.B, m, w0_length(Family.B, m))
        fail("has a 4-label away from the end of a path")

    if heavy:
        fail("has both a branch point and a 4-label")
    if len(branch_points) != 1 or degrees[branch_points[0]] != 3:
        fail("has more than one branch point")
    center = branch_points[0]
    arms = []
    for start in sub.neighbors(center):
        arms.append(len(nx.node_connected_component(sub.subgraph(nodes - {center}), start)))
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return Component(nodes, Family.D, m, w0_length(Family.D, m))
    fail(f"is a branched tree with arms {arms}")


def components_of(graph: CoxeterGraph, subset: Iterable[int]) -> ComponentReport:
    """Partitions subset into maximal connected components with their types."""
    return _components_of(graph, graph.check_subset(subset))


@lru_cache(maxsize=65536)
def _components_of(graph: CoxeterGraph, subset: FrozenSet[int]) -> ComponentReport:
    pieces = nx.connected_components(graph.graph.subgraph(subset))
    components = [_classify(graph, frozenset(piece)) for piece in pieces]
    components.sort(key=lambda c: min(c.generators))
    return ComponentReport(tuple(components))


def parabolic_w0_length(graph: CoxeterGraph, subset: Iterable[int]) -> int:
    """ℓ(w0(J)): sum of the component longest-element lengths, 0 for J = ∅."""
    return components_of(graph, subset).total_length


def neighbors_in_graph(graph: CoxeterGraph, subset: Iterable[int]) -> FrozenSet[int]:
    """I+: generators adjacent (not commuting) to at least one element of I."""
    subset = graph.check_subset(subset)
    result = set()
    for s in subset:
        result.update(graph.graph.neighbors(s))
    return frozenset(result)


@lru_cache(maxsize=None)
def subset_statistics(graph: CoxeterGraph, proper: bool = False) -> Tuple[Tuple[int, int, int], ...]:
    """(|J|, ℓ(w0(J)), number of such J) over all (or all proper) node subsets, sorted."""
    counts: Dict[Tuple[int, int], int] = {}
    for subset in iter_subsets(graph.nodes, proper=proper):
        key = (len(subset), parabolic_w0_length(graph, subset))
        counts[key] = counts.get(key, 0) + 1
    return tuple((k, l, c) for (k, l), c in sorted(counts.items()))
