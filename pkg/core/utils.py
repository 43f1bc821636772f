"""
Utility functions.
"""

from datetime import datetime
from typing import Any, Iterable, Iterator, Sequence, TypeVar, FrozenSet

from core.errors import InvalidElementError

T = TypeVar('T')


def now() -> datetime:
    """Returns the current datetime."""
    return datetime.now()


def elapsed_ms(start: datetime) -> int:
    """Milliseconds elapsed since start."""
    return int((now() - start).total_seconds() * 1000)


def is_empty(value: Any) -> bool:
    """Tests whether a value is null or blank when converted to a string."""
    if value is None:
        return True
    return str(value).strip() == ''


def _next_same_popcount(mask: int) -> int:
    """Next larger integer with the same number of set bits."""
    lowest = mask & -mask
    ripple = mask + lowest
    return (((ripple ^ mask) >> 2) // lowest) | ripple


def iter_subset_masks(size: int) -> Iterator[int]:
    """Yields every bitmask over `size` bits, by popcount and then by value."""
    limit = 1 << size
    yield 0
    for k in range(1, size + 1):
        mask = (1 << k) - 1
        while mask < limit:
            yield mask
            mask = _next_same_popcount(mask)


def iter_subsets(items: Sequence[T], proper: bool = False) -> Iterator[FrozenSet[T]]:
    """Yields subsets of items in popcount-then-binary order.

    With proper=True the full set is skipped.
    """
    full = (1 << len(items)) - 1
    for mask in iter_subset_masks(len(items)):
        if proper and mask == full:
            continue
        yield frozenset(items[i] for i in range(len(items)) if mask >> i & 1)


def iter_bits(mask: int) -> Iterator[int]:
    """Yields the indices of the set bits of mask in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def parse_index_set(value: str) -> FrozenSet[int]:
    """Parses a comma separated list of generator indices ("2,4" -> {2, 4})."""
    if is_empty(value):
        return frozenset()
    result = set()
    for part in str(value).split(','):
        part = part.strip()
        if not part:
            continue
        try:
            result.add(int(part))
        except ValueError:
            raise InvalidElementError(f"not a generator index: '{part}'")
    return frozenset(result)


def parse_window(value: str) -> tuple:
    """Parses a one-line window such as "2 3 1" or "-2 1 -3"."""
    normalized = str(value).replace('−', '-').replace(',', ' ')
    try:
        return tuple(int(token) for token in normalized.split())
    except ValueError:
        raise InvalidElementError(f"not a window of integers: '{value}'")


def format_window(window: Iterable[int]) -> str:
    """Formats a window in the one-line notation used for I/O."""
    return ' '.join(str(x) for x in window)


def format_index_set(indices: Iterable[int]) -> str:
    """Formats a generator set as "{1,3}"."""
    return '{' + ','.join(str(i) for i in sorted(indices)) + '}'
