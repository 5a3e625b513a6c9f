"""Ground-set primitives shared by every algorithm in the package.

Elements are plain integer ids drawn from ``range(n)`` for a ground set of
size ``n``.  ``ElementSet`` is an ordered set of ids; algorithms rely on its
insertion order (streaming buckets are drained in arrival order).
``Objective`` wraps a raw set function with memoization, call accounting and
marginal-gain helpers.
"""

from __future__ import annotations

from collections import OrderedDict
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

# Absolute tolerance for every inequality test performed by the algorithms.
EPS = 1e-9

# Default number of memoized set evaluations kept per oracle (LRU).
DEFAULT_CACHE_ENTRIES = 1 << 16


class GroundSetError(ValueError):
    """An element id falls outside the oracle's ground set."""


class DuplicateElementError(ValueError):
    """An element was supplied twice where it must appear at most once."""


class SizeLimitError(ValueError):
    """An exact computation was requested beyond its supported size."""


class NumericError(ArithmeticError):
    """A numerical evaluation failed beyond the accepted tolerance."""


class UnsupportedConstraintError(ValueError):
    """An algorithm received a constraint class it is not defined for."""


class ContractViolationError(RuntimeError):
    """A streaming component broke the push/finish outcome contract."""


class ElementSet:
    """Ordered collection of distinct element ids.

    Iteration follows insertion order.  ``add`` rejects duplicates so that
    algorithmic bookkeeping errors surface immediately.  Equality compares
    membership only, not order.
    """

    __slots__ = ("_items",)

    def __init__(self, items: Iterable[int] = ()):
        self._items: dict[int, None] = {}
        for u in items:
            self.add(u)

    def add(self, u: int) -> None:
        if u in self._items:
            raise DuplicateElementError(f"element {u} already present")
        self._items[u] = None

    def remove(self, u: int) -> None:
        del self._items[u]

    def discard(self, u: int) -> None:
        self._items.pop(u, None)

    def copy(self) -> "ElementSet":
        out = ElementSet()
        out._items = dict(self._items)
        return out

    def union(self, *others: Iterable[int]) -> "ElementSet":
        out = self.copy()
        for other in others:
            for u in other:
                out._items[u] = None
        return out

    def difference(self, other: Iterable[int]) -> "ElementSet":
        drop = set(other)
        out = ElementSet()
        out._items = {u: None for u in self._items if u not in drop}
        return out

    def difference_update(self, other: Iterable[int]) -> None:
        for u in other:
            self._items.pop(u, None)

    def sorted_ids(self) -> tuple[int, ...]:
        return tuple(sorted(self._items))

    def __contains__(self, u: int) -> bool:
        return u in self._items

    def __iter__(self) -> Iterator[int]:
        return iter(self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __bool__(self) -> bool:
        return bool(self._items)

    def __eq__(self, other) -> bool:
        if isinstance(other, ElementSet):
            return self._items.keys() == other._items.keys()
        if isinstance(other, (set, frozenset)):
            return set(self._items) == other
        return NotImplemented

    def __repr__(self) -> str:
        return f"ElementSet({list(self._items)})"


def as_sorted_ids(subset: Iterable[int]) -> tuple[int, ...]:
    """Canonical sorted-id fingerprint of a subset."""
    if isinstance(subset, ElementSet):
        return subset.sorted_ids()
    return tuple(sorted(set(subset)))


class Objective:
    """Memoized oracle for a non-negative set function over ``range(n)``.

    ``fn`` receives a sorted tuple of element ids and must return a
    non-negative value (values within ``EPS`` below zero are clamped to
    zero, anything lower raises ``NumericError``).  Repeated evaluations of
    the same subset are served from a bounded LRU cache without touching
    the call counter.

    ``marginal_fn(u, members)``, when provided, must equal
    ``fn(S + u) - fn(S)`` for ``u`` outside ``S``; it is used as a fast
    path by :meth:`marginal` and counts as a single oracle call.

    Instances are read-only after construction apart from the cache and
    the call counter, which are not synchronized: use one oracle per run
    when running concurrently.
    """

    __slots__ = ("n", "monotone", "evaluations", "_fn", "_marginal_fn",
                 "_cache", "_cache_entries")

    def __init__(self, fn: Callable[[tuple[int, ...]], float], n: int, *,
                 monotone: bool,
                 marginal_fn: Callable[[int, Iterable[int]], float] | None = None,
                 cache_entries: int = DEFAULT_CACHE_ENTRIES):
        if n <= 0:
            raise ValueError("ground set must be non-empty")
        if cache_entries < 1:
            raise ValueError("cache_entries must be positive")
        self.n = n
        self.monotone = monotone
        self.evaluations = 0
        self._fn = fn
        self._marginal_fn = marginal_fn
        self._cache: OrderedDict[tuple[int, ...], float] = OrderedDict()
        self._cache_entries = cache_entries

    def _key(self, subset: Iterable[int]) -> tuple[int, ...]:
        key = as_sorted_ids(subset)
        if key and (key[0] < 0 or key[-1] >= self.n):
            raise GroundSetError(f"ids outside range(0, {self.n}): {key}")
        return key

    def value(self, subset: Iterable[int]) -> float:
        key = self._key(subset)
        cache = self._cache
        hit = cache.get(key)
        if hit is not None:
            cache.move_to_end(key)
            return hit
        self.evaluations += 1
        val = float(self._fn(key))
        if val < 0.0:
            if val < -EPS:
                raise NumericError(f"oracle returned negative value {val}")
            val = 0.0
        cache[key] = val
        if len(cache) > self._cache_entries:
            cache.popitem(last=False)
        return val

    __call__ = value

    def marginal(self, u: int, subset: Iterable[int]) -> float:
        """Gain of adding ``u`` to ``subset``; may be negative."""
        if u < 0 or u >= self.n:
            raise GroundSetError(f"id {u} outside range(0, {self.n})")
        if u in subset:
            raise DuplicateElementError(f"element {u} already in subset")
        if self._marginal_fn is not None:
            self.evaluations += 1
            return float(self._marginal_fn(u, subset))
        base = self._key(subset)
        return self.value(base + (u,)) - self.value(base)

    def singleton(self, u: int) -> float:
        return self.value((u,))


@dataclass(frozen=True)
class ApproximationProfile:
    """Quality parameters claimed by an algorithm.

    ``alpha`` and ``gamma`` describe a streaming component (for every
    feasible T, f(T | union with the summary A) <= alpha * f(S) + gamma);
    ``beta`` is the offline approximation ratio of a constrained solver.
    """

    alpha: float
    gamma: float
    beta: float = 1.0

    def __post_init__(self):
        if self.alpha < 1.0:
            raise ValueError("alpha must be >= 1")
        if self.gamma < 0.0:
            raise ValueError("gamma must be >= 0")
        if self.beta < 1.0:
            raise ValueError("beta must be >= 1")
