"""
Verification service - cross-checks every closed-form route against the
brute-force weak order posets and against each other.

Suites run on a thread pool; each one is self-contained and reports the
number of checks it made. Results come back in the requested order.
"""

import random
import sys
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Sequence, Tuple

from core.coxeter import AFFINE_FAMILIES, MIN_RANK, Family, neighbors_in_graph
from core.errors import InteriorConditionError, VerificationFailure, WeakOrderError
from core.polynomial import IntPolynomial
from core.utils import elapsed_ms, format_index_set, iter_bits, iter_subsets, now
from services.charpoly import CharPolyEngine, alternating_descent_set
from services.genfun import (
    count_subsets_brute,
    extract_modified_charpoly,
    series_T,
)
from services.group_models import GroupModel
from services.weak_order import (
    WeakOrderPoset,
    boolean_poset,
    build_group_poset,
    char_poly_of_poset,
    descent_class,
    descent_class_interval,
    join,
    lower_interval_isomorphism_check,
    max_parabolic_below,
    mobius_closed_form,
    mobius_recursive,
    modified_char_poly_of_poset,
    product_poset,
)

SUITES = (
    'alt', 'mobius', 'interval', 'descent', 'fixed-descent',
    'genfun', 'affine', 'lattice', 'product', 'charpoly',
)

SERIES_COUNT_RANK = 10
SERIES_EXTRACT_RANK = 12
AFFINE_MAX_RANK = 8
ALT_MAX_N = 7
FIXED_DESCENT_MAX_N = 5


@dataclass
class SuiteResult:
    name: str
    passed: bool
    checks: int
    elapsed_ms: int
    message: str = ''


class VerificationService:
    """Runs the oracle-equivalence suites."""

    def __init__(self, config: Dict[str, Any]):
        self.config = config
        self.engine = CharPolyEngine(config)
        self.workers = config['verifyWorkers']
        self.seed = config['randomSeed']
        self._posets: Dict[Tuple[Family, int], WeakOrderPoset] = {}
        self._poset_lock = threading.Lock()
        self._builder_locks: Dict[Tuple[Family, int], threading.Lock] = {}

    def poset(self, family: Family, rank: int) -> WeakOrderPoset:
        """Group poset shared between suites, built once."""
        key = (Family(family), rank)
        with self._poset_lock:
            if key in self._posets:
                return self._posets[key]
            lock = self._builder_locks.setdefault(key, threading.Lock())
        with lock:
            with self._poset_lock:
                if key in self._posets:
                    return self._posets[key]
            built = build_group_poset(GroupModel(*key), cap=self.config['enumerationCap'])
            with self._poset_lock:
                self._posets[key] = built
            return built

    def run(self, suites: Sequence[str], max_a: int, max_bd: int, samples: int) -> List[SuiteResult]:
        unknown = [s for s in suites if s not in SUITES]
        if unknown:
            raise VerificationFailure(f"unknown suites: {', '.join(unknown)}")
        params = {'max_a': max_a, 'max_bd': max_bd, 'samples': samples}
        with ThreadPoolExecutor(max_workers=self.workers) as pool:
            futures = [pool.submit(self._run_suite, name, params) for name in suites]
            results = [f.result() for f in futures]
        for result in results:
            if result.passed:
                print(f"  ✓ {result.name} ({result.checks} checks, {result.elapsed_ms}ms)", file=sys.stderr)
            else:
                print(f"  ✗ {result.name}: {result.message}", file=sys.stderr)
        return results

    def _run_suite(self, name: str, params: Dict[str, int]) -> SuiteResult:
        method: Callable[..., int] = getattr(self, 'suite_' + name.replace('-', '_'))
        started = now()
        try:
            checks = method(**params)
        except (VerificationFailure, WeakOrderError) as e:
            return SuiteResult(name, False, 0, elapsed_ms(started), e.message)
        return SuiteResult(name, True, checks, elapsed_ms(started))

    @staticmethod
    def _expect(condition: bool, message: str) -> int:
        if not condition:
            raise VerificationFailure(message)
        return 1

    def _finite_ranks(self, max_a: int, max_bd: int) -> List[Tuple[Family, int]]:
        ranks = [(Family.A, n) for n in range(1, max_a + 1)]
        ranks += [(Family.B, n) for n in range(2, max_bd + 1)]
        ranks += [(Family.D, n) for n in range(2, max_bd + 1)]
        return ranks

    # Suites

    def suite_alt(self, max_a: int, **_) -> int:
        checks = 0
        for n in range(3, min(max_a + 1, ALT_MAX_N) + 1):
            poset = self.poset(Family.A, n - 1)
            descents = alternating_descent_set(n)
            oracle = char_poly_of_poset(descent_class_interval(poset, descents, descents))
            formula = self.engine.alternating_char_poly(n)
            checks += self._expect(formula == oracle, f"Alt_{n}: formula {formula} != poset {oracle}")
            route = self.engine.descent_class_char_poly(n - 1, descents)
            checks += self._expect(route == oracle, f"Alt_{n}: descent-class route {route} != poset {oracle}")
        return checks

    def suite_mobius(self, max_a: int, max_bd: int, **_) -> int:
        checks = 0
        for family, rank in self._finite_ranks(max_a, max_bd):
            poset = self.poset(family, rank)
            for i, u in enumerate(poset.elements):
                upper = poset.upper_set(i)
                mu = mobius_recursive(upper)
                for t, w in enumerate(upper.elements):
                    closed = mobius_closed_form(poset, u, w)
                    checks += self._expect(
                        closed == mu[t],
                        f"{poset.model.name}: μ({u}, {w}) closed form {closed} != recursion {mu[t]}",
                    )
        return checks

    def suite_interval(self, max_a: int, max_bd: int, samples: int, **_) -> int:
        rng = random.Random(self.seed)
        checks = 0
        targets = [(Family.A, max_a)]
        if max_bd >= 2:
            targets += [(Family.B, max_bd), (Family.D, max_bd)]
        for family, rank in targets:
            poset = self.poset(family, rank)
            for _ in range(samples):
                i = rng.randrange(len(poset))
                j = rng.choice(list(iter_bits(poset.upset(i))))
                u, w = poset.elements[i], poset.elements[j]
                oracle = char_poly_of_poset(poset.interval(i, j))
                decomposed = self.engine.char_poly_interval_decomposed(poset.model.graph, u, w)
                checks += self._expect(
                    decomposed == oracle,
                    f"{poset.model.name}: [{u}, {w}] decomposed {decomposed} != poset {oracle}",
                )
        return checks

    def suite_descent(self, max_a: int, max_bd: int, **_) -> int:
        checks = 0
        targets = [(Family.A, max_a)]
        if max_bd >= 2:
            targets.append((Family.B, min(max_bd, 3)))
        for family, rank in targets:
            poset = self.poset(family, rank)
            model = poset.model
            gens = model.generator_indices
            w0 = model.longest_element(gens)
            for upper in iter_subsets(gens):
                for lower in iter_subsets(sorted(upper)):
                    sub = descent_class_interval(poset, lower, upper)
                    label = f"{model.name} I={format_index_set(lower)} J={format_index_set(upper)}"
                    checks += self._expect(
                        descent_class(poset, lower, upper) == frozenset(sub.elements),
                        f"{label}: descent class is not the interval",
                    )
                    complement = set(gens) - upper
                    v = w0 * model.longest_element(complement) * model.longest_element(lower)
                    expected = (upper | neighbors_in_graph(model.graph, lower)) - lower
                    checks += self._expect(
                        v.right_descents() == expected,
                        f"{label}: D_R = {format_index_set(v.right_descents())}, "
                        f"expected {format_index_set(expected)}",
                    )
                    route = self.engine.descent_class_char_poly(rank, lower, upper, family)
                    checks += self._expect(
                        route == char_poly_of_poset(sub), f"{label}: descent-class polynomial mismatch"
                    )
        return checks

    def suite_fixed_descent(self, max_a: int, **_) -> int:
        checks = 0
        for n in range(1, min(max_a, FIXED_DESCENT_MAX_N) + 1):
            poset = self.poset(Family.A, n)
            for lower in iter_subsets(list(range(1, n + 1))):
                route = self.engine.descent_class_char_poly(n, lower)
                oracle = char_poly_of_poset(descent_class_interval(poset, lower, lower))
                label = f"A_{n} I={format_index_set(lower)}"
                checks += self._expect(route == oracle, f"{label}: route {route} != poset {oracle}")
                try:
                    formula = self.engine.fixed_descent_formula(n, lower)
                except InteriorConditionError:
                    continue
                checks += self._expect(formula == route, f"{label}: formula {formula} != route {route}")
        if max_a >= 3:
            q = IntPolynomial.q()
            boundary = self.engine.descent_class_char_poly(3, {3})
            checks += self._expect(boundary == q * (q - 1), f"A_3 I={{3}}: {boundary} != q(q - 1)")
            try:
                self.engine.fixed_descent_formula(3, {3})
                raise VerificationFailure("A_3 I={3}: the product formula accepted a boundary run")
            except InteriorConditionError:
                checks += 1
        return checks

    def suite_genfun(self, **_) -> int:
        checks = 0
        for family in (Family.A, Family.B, Family.D):
            series = series_T(family, SERIES_COUNT_RANK + 2)
            start = 2 if family == Family.D else 0
            for n in range(start, SERIES_COUNT_RANK + 1):
                checks += self._expect(
                    count_subsets_brute(family, n) == series.coefficient(n),
                    f"{family.value}_{n}: subset counts differ from the series",
                )
            for n in range(max(start, 1), SERIES_EXTRACT_RANK + 1):
                hat = self.engine.modified_char_poly(family, n)
                for route in ('trivariate', 'quotient'):
                    extracted = extract_modified_charpoly(family, n, route)
                    checks += self._expect(
                        extracted == hat, f"{family.value}_{n}: {route} series {extracted} != {hat}"
                    )
                chi = self.engine.char_poly_subset_sum(family, n)
                checks += self._expect(
                    hat == chi.reversed(max(chi.degree, 0)),
                    f"{family.value}_{n}: χ̂ is not the reversal of χ",
                )
        return checks

    def suite_affine(self, **_) -> int:
        checks = 0
        for family in AFFINE_FAMILIES:
            for n in range(MIN_RANK[family], AFFINE_MAX_RANK + 1):
                direct = self.engine.affine_modified_char_poly_direct(family, n)
                recurrence = self.engine.affine_modified_char_poly_recurrence(family, n)
                checks += self._expect(
                    direct == recurrence,
                    f"{family.value}_{n}: direct {direct} != recurrence {recurrence}",
                )
                size = n + 1
                checks += self._expect(
                    direct.evaluate(1) == (1 if size % 2 else -1),
                    f"{family.value}_{n}: χ̂(1) = {direct.evaluate(1)}",
                )
        q = IntPolynomial.q()
        spot = {
            Family.AFF_A: (2, 1 - 3 * q + 3 * q ** 3),
            Family.AFF_C: (2, 1 - 3 * q + q ** 2 + 2 * q ** 4),
        }
        for family, (n, expected) in spot.items():
            checks += self._expect(
                self.engine.affine_modified_char_poly_direct(family, n) == expected,
                f"{family.value}_{n} differs from {expected}",
            )
        return checks

    def suite_lattice(self, max_a: int, max_bd: int, **_) -> int:
        checks = 0
        targets = [(Family.A, max_a)]
        if max_bd >= 2:
            targets.append((Family.B, min(max_bd, 3)))
        for family, rank in targets:
            poset = self.poset(family, rank)
            model = poset.model
            for x in poset.elements:
                for y in poset.elements:
                    join(poset, x, y)
                    checks += 1
            subsets = list(iter_subsets(model.generator_indices))
            for first in subsets:
                for second in subsets:
                    expected = model.longest_element(first | second)
                    got = join(poset, model.longest_element(first), model.longest_element(second))
                    checks += self._expect(
                        got == expected,
                        f"{model.name}: w0({format_index_set(first)}) ∨ w0({format_index_set(second)}) = {got}",
                    )
        poset = self.poset(Family.A, max_a)
        parabolics = [poset.index_of(poset.model.longest_element(s))
                      for s in iter_subsets(poset.model.generator_indices)]
        for j, w in enumerate(poset.elements):
            best = poset.index_of(max_parabolic_below(poset, w))
            below = [p for p in parabolics if poset.leq(p, j)]
            checks += self._expect(
                poset.leq(best, j) and all(poset.leq(p, best) for p in below),
                f"{poset.model.name}: {poset.elements[best]} is not the largest w0(J) below {w}",
            )
        for family, rank in ((Family.A, 3), (Family.B, 3)):
            small = self.poset(family, rank)
            for i, u in enumerate(small.elements):
                for j in iter_bits(small.upset(i)):
                    checks += self._expect(
                        lower_interval_isomorphism_check(small, u, small.elements[j]),
                        f"{small.model.name}: [{u}, {small.elements[j]}] is not a translate",
                    )
        return checks

    def suite_product(self, **_) -> int:
        checks = 0
        q = IntPolynomial.q()
        for first, second in ((1, 2), (2, 2)):
            left = self.poset(Family.A, first)
            right = self.poset(Family.A, second)
            combined = char_poly_of_poset(product_poset(left, right))
            expected = char_poly_of_poset(left) * char_poly_of_poset(right)
            checks += self._expect(combined == expected, f"A_{first} x A_{second}: {combined} != {expected}")
        boolean = char_poly_of_poset(boolean_poset(3))
        checks += self._expect(boolean == (q - 1) ** 3, f"boolean lattice B_3: {boolean}")
        return checks

    def suite_charpoly(self, max_a: int, max_bd: int, **_) -> int:
        checks = 0
        for family, rank in self._finite_ranks(max_a, max_bd):
            poset = self.poset(family, rank)
            model = poset.model
            label = f"{family.value}_{rank}"
            oracle = char_poly_of_poset(poset)
            subset = self.engine.char_poly_subset_sum(family, rank)
            decomposed = self.engine.char_poly_interval_decomposed(
                model.graph, model.identity(), model.longest_element(model.generator_indices)
            )
            series = extract_modified_charpoly(family, rank)
            checks += self._expect(subset == oracle, f"{label}: subset sum {subset} != poset {oracle}")
            checks += self._expect(decomposed == oracle, f"{label}: decomposition {decomposed} != poset {oracle}")
            checks += self._expect(
                series == oracle.reversed(oracle.degree), f"{label}: series χ̂ {series} is not reversed χ"
            )
            checks += self._expect(
                modified_char_poly_of_poset(poset) == self.engine.modified_char_poly(family, rank),
                f"{label}: χ̂ of the poset differs from the subset sum",
            )
            checks += self._expect(oracle.evaluate(1) == 0, f"{label}: χ(1) = {oracle.evaluate(1)}")
        return checks
