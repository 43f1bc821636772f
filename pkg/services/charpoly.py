"""
Characteristic polynomial engine - closed forms for the left weak order.

Routes:
    subset sums over parabolic subgroups (finite and affine),
    interval decomposition through the right descent set of w u⁻¹,
    descent classes through K = (J ∪ I⁺) ∖ I,
    the fixed-descent product formula and the alternating-permutation formula,
    the affine recurrences in terms of finite χ̂.
"""

from math import comb
from typing import Any, Dict, Iterable, List, Optional, Tuple

from core.config import Config
from core.coxeter import (
    AFFINE_FAMILIES,
    FINITE_FAMILIES,
    CoxeterGraph,
    Family,
    build_graph,
    components_of,
    neighbors_in_graph,
    parabolic_w0_length,
    subset_statistics,
)
from core.errors import (
    DescentSetError,
    EnumerationBudgetError,
    InteriorConditionError,
    NotComparableError,
    RankOutOfRangeError,
)
from core.polynomial import IntPolynomial, product
from core.utils import format_index_set
from services.group_models import GroupElement, weak_leq

Q = IntPolynomial.q()


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


def normalize_finite(family: Family, rank: int) -> Tuple[Family, int]:
    """Canonical (family, rank) for low ranks: B_1 is A_1, D_1 and rank 0 are trivial."""
    family = Family(family)
    if family not in FINITE_FAMILIES:
        raise RankOutOfRangeError(f"{family.value} is not a finite family")
    if rank < 0:
        raise RankOutOfRangeError(f"rank must be non-negative, got {rank}")
    if rank == 0 or (family == Family.D and rank == 1):
        return Family.A, 0
    if family == Family.B and rank == 1:
        return Family.A, 1
    return family, rank


class CharPolyEngine:
    """Closed-form χ and χ̂ computations, bounded by the subset rank cap."""

    def __init__(self, config: Dict[str, Any]):
        self.config = config
        self.subset_rank_cap = config['subsetRankCap']

    # Subset sums

    def _check_subset_budget(self, graph: CoxeterGraph):
        if len(graph.nodes) > self.subset_rank_cap:
            raise EnumerationBudgetError(
                f"{graph.family.value}_{graph.rank} has {len(graph.nodes)} generators, above the "
                f"subset cap {self.subset_rank_cap}; use extract_modified_charpoly (series route)"
            )

    def _finite_graph(self, family: Family, rank: int) -> Optional[CoxeterGraph]:
        family, rank = normalize_finite(family, rank)
        if rank == 0:
            return None
        graph = build_graph(family, rank)
        self._check_subset_budget(graph)
        return graph

    def char_poly_subset_sum(self, family: Family, rank: int) -> IntPolynomial:
        """χ_W(q) = Σ_{J⊆S} (-1)^|J| q^{ℓ(w0) - ℓ(w0(J))}."""
        graph = self._finite_graph(family, rank)
        if graph is None:
            return IntPolynomial.one()
        top = parabolic_w0_length(graph, graph.nodes)
        return IntPolynomial.from_terms(
            (top - length, (-1) ** size * count) for size, length, count in subset_statistics(graph, False)
        )

    def modified_char_poly(self, family: Family, rank: int) -> IntPolynomial:
        """χ̂_W(q) = Σ_{J⊆S} (-1)^|J| q^{ℓ(w0(J))}."""
        graph = self._finite_graph(family, rank)
        if graph is None:
            return IntPolynomial.one()
        return IntPolynomial.from_terms(
            (length, (-1) ** size * count) for size, length, count in subset_statistics(graph, False)
        )

    def _product_over_components(self, graph: CoxeterGraph, subset: Iterable[int]) -> Tuple[IntPolynomial, int]:
        report = components_of(graph, subset)
        factors = [self.char_poly_subset_sum(c.family, c.rank) for c in report.components]
        return product(factors), report.total_length

    # Intervals and descent classes

    def char_poly_interval_decomposed(self, graph: Optional[CoxeterGraph], u: GroupElement,
                                      w: GroupElement) -> IntPolynomial:
        """χ_[u,w] = q^{ℓ(wu⁻¹) - ℓ(w0(K))} ∏ χ_{K_i}, K = D_R(wu⁻¹)."""
        if not weak_leq(u, w):
            raise NotComparableError(f"{u} is not below {w}")
        graph = graph or u.model.graph
        v = w * u.inverse()
        factor, k_length = self._product_over_components(graph, v.right_descents())
        return factor * Q ** (v.length - k_length)

    def descent_class_char_poly(self, n: int, lower: Iterable[int], upper: Optional[Iterable[int]] = None,
                                family: Family = Family.A) -> IntPolynomial:
        """χ of the descent class {w : I ⊆ D_R(w) ⊆ J}; J defaults to I."""
        family, n = normalize_finite(family, n)
        lower = frozenset(lower)
        upper = lower if upper is None else frozenset(upper)
        if n == 0:
            if lower or upper:
                raise RankOutOfRangeError("the trivial group has no generators")
            return IntPolynomial.one()
        graph = build_graph(family, n)
        graph.check_subset(lower)
        graph.check_subset(upper)
        if not lower <= upper:
            raise DescentSetError(
                f"I = {format_index_set(lower)} is not contained in J = {format_index_set(upper)}"
            )
        complement = graph.node_set - upper
        rank = (parabolic_w0_length(graph, graph.nodes)
                - parabolic_w0_length(graph, complement)
                - parabolic_w0_length(graph, lower))
        k = (upper | neighbors_in_graph(graph, lower)) - lower
        factor, k_length = self._product_over_components(graph, k)
        return factor * Q ** (rank - k_length)

    def fixed_descent_formula(self, n: int, lower: Iterable[int]) -> IntPolynomial:
        """Product formula for the pure descent class of I in A_n.

        Valid when every run of [n] ∖ I is flanked by I; runs of length >= 2
        touching 1 or n are rejected.
        """
        if n < 1:
            raise RankOutOfRangeError(f"A_n requires n >= 1, got {n}")
        graph = build_graph(Family.A, n)
        lower = graph.check_subset(lower)
        runs = self.runs_outside(n, lower)
        for run in runs:
            touches = run[0] == 1 or run[-1] == n
            flanked = (run[0] - 1) in lower or (run[-1] + 1) in lower
            if (len(run) >= 2 and touches) or not flanked:
                raise InteriorConditionError(
                    f"run {format_index_set(run)} of [{n}] \\ I does not satisfy the interior "
                    f"condition; use descent_class_char_poly"
                )
        alpha = sum(1 for run in runs if len(run) == 1)
        beta = sum(1 for run in runs if len(run) == 2)
        gamma = sum(1 for run in runs if len(run) >= 3)
        rank = (comb(n + 1, 2)
                - parabolic_w0_length(graph, graph.node_set - lower)
                - parabolic_w0_length(graph, lower))
        exponent = rank - alpha - 2 * gamma - 3 * beta
        return Q ** exponent * (Q - 1) ** (alpha + 2 * gamma + beta) * (Q ** 2 - Q - 1) ** beta

    @staticmethod
    def runs_outside(n: int, subset: Iterable[int]) -> List[Tuple[int, ...]]:
        """Maximal consecutive runs of [n] ∖ subset."""
        subset = set(subset)
        runs: List[Tuple[int, ...]] = []
        current: List[int] = []
        for i in range(1, n + 1):
            if i in subset:
                if current:
                    runs.append(tuple(current))
                current = []
            else:
                current.append(i)
        if current:
            runs.append(tuple(current))
        return runs

    def alternating_char_poly(self, n: int) -> IntPolynomial:
        """χ of the alternating permutations of [n] in the weak order of S_n."""
        if n < 2:
            raise RankOutOfRangeError(f"alternating permutations need n >= 2, got {n}")
        if n == 2:
            # Alt_2 = {12}
            return IntPolynomial.one()
        half = n // 2
        return Q ** (comb(n - 1, 2) - half) * (Q - 1) ** half

    # Affine groups

    def affine_modified_char_poly_direct(self, family: Family, rank: int) -> IntPolynomial:
        """χ̂_W(q) = Σ_{J⊊S} (-1)^|J| q^{ℓ(w0(J))}."""
        family = Family(family)
        if family not in AFFINE_FAMILIES:
            raise RankOutOfRangeError(f"{family.value} is not an affine family")
        graph = build_graph(family, rank)
        self._check_subset_budget(graph)
        return IntPolynomial.from_terms(
            (length, (-1) ** size * count) for size, length, count in subset_statistics(graph, True)
        )

    def _hat(self, family: Family, rank: int) -> IntPolynomial:
        # χ̂ of A_i, B_i is 1 for i <= 0 and of D_i for i <= 1
        if rank <= 0 or (family == Family.D and rank <= 1):
            return IntPolynomial.one()
        return self.modified_char_poly(family, rank)

    def affine_modified_char_poly_recurrence(self, family: Family, rank: int) -> IntPolynomial:
        """χ̂ of an affine group from χ̂ of the finite groups of types A, B, D."""
        family = Family(family)
        if family not in AFFINE_FAMILIES:
            raise RankOutOfRangeError(f"{family.value} is not an affine family")
        build_graph(family, rank)
        n = rank
        if family == Family.AFF_A:
            total = self._hat(Family.A, n)
            for k in range(1, n + 1):
                total += self._hat(Family.A, n - k - 1) * Q ** comb(k + 1, 2) * (k * _sign(k))
            return total
        if family == Family.AFF_B:
            total = self._hat(Family.B, n)
            for k in range(n + 1):
                total += self._hat(Family.B, n - k) * Q ** (k * (k - 1)) * _sign(k)
            return total
        if family == Family.AFF_C:
            total = IntPolynomial.zero()
            for k in range(n + 1):
                total += self._hat(Family.B, n - k) * Q ** (k * k) * _sign(k)
            return total
        total = self._hat(Family.D, n) + Q ** (n * (n - 1)) * _sign(n)
        for k in range(n + 1):
            total += self._hat(Family.D, n - k) * Q ** (k * (k - 1)) * _sign(k)
        return total


def default_engine() -> CharPolyEngine:
    return CharPolyEngine(Config.get_config())


def char_poly_subset_sum(family: Family, rank: int) -> IntPolynomial:
    return default_engine().char_poly_subset_sum(family, rank)


def modified_char_poly(family: Family, rank: int) -> IntPolynomial:
    return default_engine().modified_char_poly(family, rank)


def char_poly_interval_decomposed(graph: Optional[CoxeterGraph], u: GroupElement, w: GroupElement) -> IntPolynomial:
    return default_engine().char_poly_interval_decomposed(graph, u, w)


def descent_class_char_poly(n: int, lower: Iterable[int], upper: Optional[Iterable[int]] = None,
                            family: Family = Family.A) -> IntPolynomial:
    return default_engine().descent_class_char_poly(n, lower, upper, family)


def fixed_descent_formula(n: int, lower: Iterable[int]) -> IntPolynomial:
    return default_engine().fixed_descent_formula(n, lower)


def alternating_char_poly(n: int) -> IntPolynomial:
    return default_engine().alternating_char_poly(n)


def alternating_descent_set(n: int) -> frozenset:
    """{2, 4, ...} ∩ [n-1], the descent set of the alternating permutations of [n]."""
    return frozenset(range(2, n, 2))


def affine_modified_char_poly_direct(family: Family, rank: int) -> IntPolynomial:
    return default_engine().affine_modified_char_poly_direct(family, rank)


def affine_modified_char_poly_recurrence(family: Family, rank: int) -> IntPolynomial:
    return default_engine().affine_modified_char_poly_recurrence(family, rank)
