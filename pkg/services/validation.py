"""
Validation service - validates command requests before dispatch.
"""

from dataclasses import dataclass, field
from typing import FrozenSet, List, Optional

from core.coxeter import FINITE_FAMILIES, Family
from core.errors import UsageError

SUBCOMMANDS = ('charpoly', 'modified', 'affine', 'descent-class', 'alt', 'series', 'verify')
METHODS = ('auto', 'poset', 'subset', 'decompose', 'formula', 'direct', 'recurrence', 'both', 'series')
FORMATS = ('text', 'json', 'csv')
SERIES_ROUTES = ('trivariate', 'quotient')


@dataclass
class CommandRequest:
    subcommand: str
    family: Optional[Family] = None
    rank: Optional[int] = None
    rank_to: Optional[int] = None
    lower: FrozenSet[int] = frozenset()
    upper: Optional[FrozenSet[int]] = None
    method: str = 'auto'
    output_format: str = 'text'
    truncation: Optional[int] = None
    route: str = 'trivariate'
    counts: bool = False
    cap: Optional[int] = None
    suites: List[str] = field(default_factory=list)
    max_a: int = 4
    max_bd: int = 4
    samples: int = 500

    @property
    def ranks(self) -> List[int]:
        if self.rank is None:
            return []
        last = self.rank_to if self.rank_to is not None else self.rank
        return list(range(self.rank, last + 1))


class ValidationService:
    """Checks flag combinations per subcommand."""

    # methods each subcommand understands
    ALLOWED_METHODS = {
        'charpoly': ('auto', 'poset', 'subset', 'decompose', 'series'),
        'modified': ('auto', 'poset', 'subset', 'decompose', 'series'),
        'affine': ('auto', 'direct', 'recurrence', 'both'),
        'descent-class': ('auto', 'poset', 'decompose', 'formula'),
        'alt': ('auto', 'poset', 'decompose', 'formula'),
        'series': ('auto', 'series'),
        'verify': ('auto',),
    }
    NEEDS_FAMILY = ('charpoly', 'modified', 'affine', 'series')
    NEEDS_RANK = ('charpoly', 'modified', 'affine', 'descent-class', 'alt')
    RANGED = ('charpoly', 'modified', 'affine')

    def validate(self, request: CommandRequest) -> CommandRequest:
        """Raises UsageError on the first problem; returns the request otherwise."""
        errors = self.collect_errors(request)
        if errors:
            raise UsageError('; '.join(errors))
        return request

    def collect_errors(self, request: CommandRequest) -> List[str]:
        errors = []
        sub = request.subcommand
        if sub not in SUBCOMMANDS:
            return [f"unknown subcommand '{sub}' (expected one of {', '.join(SUBCOMMANDS)})"]

        if request.method not in self.ALLOWED_METHODS[sub]:
            errors.append(
                f"method '{request.method}' does not apply to {sub} "
                f"(use one of {', '.join(self.ALLOWED_METHODS[sub])})"
            )
        if request.output_format not in FORMATS:
            errors.append(f"unknown format '{request.output_format}'")

        if sub in self.NEEDS_FAMILY and request.family is None:
            errors.append(f"{sub} requires -f/--family")
        if request.family is not None:
            if sub == 'affine' and not request.family.is_affine:
                errors.append(f"affine requires an affine family, got {request.family.value}")
            if sub in ('charpoly', 'modified', 'series', 'descent-class') and request.family not in FINITE_FAMILIES:
                errors.append(f"{sub} requires family A, B or D, got {request.family.value}")
            if sub == 'alt' and request.family != Family.A:
                errors.append("alt is defined for type A only")

        if sub in self.NEEDS_RANK and request.rank is None:
            errors.append(f"{sub} requires -n/--rank")
        if request.rank is not None and request.rank < 0:
            errors.append(f"rank must be non-negative, got {request.rank}")
        if request.rank_to is not None:
            if sub not in self.RANGED:
                errors.append(f"--to applies to {', '.join(self.RANGED)} only")
            elif request.rank is not None and request.rank_to < request.rank:
                errors.append(f"--to {request.rank_to} is below -n {request.rank}")

        if sub != 'descent-class' and (request.lower or request.upper):
            errors.append("-I/-J apply to descent-class only")
        if sub != 'series':
            if request.counts:
                errors.append("--counts applies to series only")
            if request.truncation is not None:
                errors.append("-N applies to series only")
        elif request.truncation is not None and request.truncation < 1:
            errors.append(f"truncation order must be at least 1, got {request.truncation}")
        if request.route not in SERIES_ROUTES:
            errors.append(f"unknown series route '{request.route}'")
        if request.cap is not None and request.cap < 1:
            errors.append(f"--cap must be positive, got {request.cap}")

        if sub == 'verify':
            if request.max_a < 1:
                errors.append("--max-a must be at least 1")
            if request.max_bd < 1:
                errors.append("--max-bd must be at least 1")
            if request.samples < 1:
                errors.append("--samples must be at least 1")
        return errors
