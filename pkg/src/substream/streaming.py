"""Single-pass algorithms built on value-banded independent buckets, plus
the cascade that turns a monotone-capable component into one that handles
non-monotone objectives.

Every component follows the same protocol: ``push(batch)`` feeds elements
one batch at a time and returns whatever the component discarded, and
``finish(batch)`` closes the stream, returning a :class:`StreamOutcome`
with the feasible solution S, the retained summary A (S is a subset of A)
and the residual D of elements that were still held but did not make the
summary.  Elements discarded while processing the final batch also land in
D, so nothing a component ever received is lost.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .core import (EPS, ApproximationProfile, ContractViolationError,
                   DuplicateElementError, ElementSet, Objective)
from .constraints import IndependenceSystem

# log2 is evaluated in floating point; the nudge keeps floor/ceil stable
# when the argument sits on an exact power of two.
_LOG_GUARD = 1e-12


def _floor_log2(x: float) -> int:
    return math.floor(math.log2(x) + _LOG_GUARD)


def _ceil_log2(x: float) -> int:
    return math.ceil(math.log2(x) - _LOG_GUARD)


def bucket_count(rho: int) -> int:
    """Number of marginal-value bands kept for a capacity bound ``rho``."""
    return _floor_log2(4 * rho) + 1


def candidate_count(k: int) -> int:
    """Number of interleaved candidate solutions built at end of stream."""
    return _ceil_log2(2 * k + 1)


def trace_to_csv(events) -> str:
    """Render trace events (step, event, element, bucket, value) as CSV.

    Components accepting a ``trace`` list append one tuple per accept,
    evict or swap; this is the audit-tooling exchange format.
    """
    lines = ["step,event,element,bucket,value"]
    for step, event, element, bucket, value in events:
        lines.append(f"{step},{event},{element},{bucket},{value!r}")
    return "\n".join(lines) + "\n"


def _drain_interleaved(buckets: list[ElementSet], ell: int, h: int,
                       sys: IndependenceSystem) -> list[ElementSet]:
    """Build h candidates; candidate j greedily drains buckets j, j+h, ...

    Buckets are visited in ascending index (descending marginal band) and
    each bucket in insertion order, so the construction is deterministic
    and stream-faithful.
    """
    cands = []
    for j in range(h):
        t = ElementSet()
        i = j
        while i <= ell:
            for u in buckets[i]:
                if sys.can_add(u, t):
                    t.add(u)
            i += h
        cands.append(t)
    return cands


def _best_by_value(f: Objective, cands: list[ElementSet]) -> ElementSet:
    best = cands[0]
    best_val = f.value(best)
    for t in cands[1:]:
        val = f.value(t)
        if val > best_val + EPS:
            best, best_val = t, val
    return best


@dataclass
class StreamOutcome:
    """End-of-stream triple (S, A, D)."""

    solution: ElementSet
    summary: ElementSet
    residual: ElementSet

    def __post_init__(self):
        if any(u not in self.summary for u in self.solution):
            raise ContractViolationError("solution is not inside the summary")
        if any(u in self.summary for u in self.residual):
            raise ContractViolationError("summary and residual overlap")


class StreamingComponent:
    """Base class implementing the push/finish bookkeeping.

    Subclasses implement ``_ingest(u) -> list`` (returning immediate
    evictions), ``_finalize() -> (solution, summary, held)`` and
    ``stored_count()``.
    """

    def __init__(self):
        self._seen: set[int] = set()
        self._ranks: dict[int, int] = {}
        self._finished = False

    def arrival_rank(self, u: int) -> int:
        return self._ranks[u]

    def push(self, batch: Iterable[int]) -> list[int]:
        if self._finished:
            raise ContractViolationError("component already finished")
        evicted: list[int] = []
        for u in batch:
            if u in self._seen:
                raise DuplicateElementError(f"element {u} presented twice")
            self._seen.add(u)
            self._ranks[u] = len(self._ranks)
            evicted.extend(self._ingest(u))
        return evicted

    def finish(self, batch: Iterable[int] = ()) -> StreamOutcome:
        evicted = self.push(batch)
        self._finished = True
        solution, summary, held = self._finalize()
        # Evictions triggered while draining the final batch belong in the
        # residual, except for elements that made the summary anyway
        # (swap-style components both evict and remember an element).
        residual = ElementSet()
        for u in evicted:
            if u not in summary:
                residual.add(u)
        for u in held:
            if u not in summary and u not in residual:
                residual.add(u)
        return StreamOutcome(solution, summary, residual)

    def _ingest(self, u: int) -> list[int]:
        raise NotImplementedError

    def _finalize(self):
        raise NotImplementedError

    def stored_count(self) -> int:
        raise NotImplementedError


class ThresholdSieve(StreamingComponent):
    """Banded sieve with a known acceptance threshold and capacity bound.

    ``tau`` must lie in [M, 2M] where M is the largest value of a feasible
    singleton; ``rho`` is the size of the largest independent set (any
    upper bound is sound, at the price of extra buckets).  Each arriving
    element is bucketed by how its marginal gain against everything kept
    so far compares with ``tau``; each bucket independently keeps a
    feasibility-greedy base.  At end of stream, ``candidate_count(k)``
    interleaved candidates are drained from the buckets and the best one
    is returned.
    """

    def __init__(self, sys: IndependenceSystem, f: Objective, tau: float,
                 rho: int, k: int | None = None, trace: list | None = None):
        super().__init__()
        if tau <= 0:
            raise ValueError("tau must be positive")
        if rho < 1:
            raise ValueError("rho must be a positive integer")
        self.sys = sys
        self.f = f
        self.tau = float(tau)
        self.rho = int(rho)
        self.k = int(k if k is not None else sys.k_param)
        self.ell = bucket_count(self.rho) - 1
        self.h = candidate_count(self.k)
        self.buckets: list[ElementSet] = [ElementSet() for _ in range(self.ell + 1)]
        self.kept = ElementSet()          # union of buckets, arrival order
        self.gain_at_accept: dict[int, float] = {}
        self.candidates: list[ElementSet] | None = None
        self._trace = trace

    @property
    def profile(self) -> ApproximationProfile:
        # the candidate-drain argument loses a factor 4 always, and a
        # further factor k on general k-systems
        scale = self.k if self.sys.class_tag == "k_system" else 1
        alpha = 4 * scale * self.h * (2 * self.k + 1)
        return ApproximationProfile(alpha=float(alpha), gamma=self.tau / 4.0)

    def band_of(self, gain: float) -> int | None:
        """Bucket index for a marginal gain, or None when out of range."""
        if gain <= EPS:
            return None  # treated as band infinity
        i = _floor_log2(self.tau / gain)
        if i < 0 or i > self.ell:
            return None
        return i

    def process(self, u: int) -> bool:
        gain = self.f.marginal(u, self.kept)
        i = self.band_of(gain)
        if i is None:
            return False
        bucket = self.buckets[i]
        if not self.sys.can_add(u, bucket):
            return False
        bucket.add(u)
        self.kept.add(u)
        self.gain_at_accept[u] = gain
        if self._trace is not None:
            self._trace.append((len(self._seen) - 1, "accept", u, i, gain))
        return True

    def _ingest(self, u: int) -> list[int]:
        if self.process(u):
            return []
        if self._trace is not None:
            self._trace.append((len(self._seen) - 1, "evict", u, -1, 0.0))
        return [u]

    def build_candidates(self) -> list[ElementSet]:
        return _drain_interleaved(self.buckets, self.ell, self.h, self.sys)

    def _finalize(self):
        self.candidates = self.build_candidates()
        return _best_by_value(self.f, self.candidates), self.kept.copy(), list(self.kept)

    def stored_count(self) -> int:
        count = sum(len(b) for b in self.buckets)
        if self.candidates is not None:
            count += sum(len(t) for t in self.candidates)
        return count


class AdaptiveSieve(StreamingComponent):
    """Banded sieve that learns its capacity bound on the fly.

    Instead of a known ``rho`` it tracks a feasibility-greedy base of the
    prefix seen so far and sizes the bucket range from that base, creating
    deeper buckets lazily as the base grows.  ``tau`` keeps the same [M, 2M]
    contract as :class:`ThresholdSieve`.

    When ``shared_base`` is given the caller owns the greedy base (and its
    growth); the sieve only reads it.  Elements whose band falls outside
    the current range are recorded with their arrival gain in
    ``out_of_band`` for diagnostics.
    """

    def __init__(self, sys: IndependenceSystem, f: Objective, tau: float,
                 k: int | None = None, shared_base: ElementSet | None = None,
                 trace: list | None = None):
        super().__init__()
        if tau <= 0:
            raise ValueError("tau must be positive")
        self.sys = sys
        self.f = f
        self.tau = float(tau)
        self.k = int(k if k is not None else sys.k_param)
        self.h = candidate_count(self.k)
        self.ell = -1
        self.buckets: list[ElementSet] = []
        self.kept = ElementSet()
        self.gain_at_accept: dict[int, float] = {}
        self.out_of_band: dict[int, float] = {}
        self.base_size_after: dict[int, int] = {}
        self.candidates: list[ElementSet] | None = None
        self._owns_base = shared_base is None
        self.base = ElementSet() if shared_base is None else shared_base
        self._trace = trace

    @property
    def profile(self) -> ApproximationProfile:
        scale = self.k if self.sys.class_tag == "k_system" else 1
        alpha = 4 * scale * self.h * (2 * self.k + 1)
        return ApproximationProfile(alpha=float(alpha), gamma=self.tau / 4.0)

    def _grow_bands(self):
        size = len(self.base)
        if size == 0:
            return
        new_ell = math.floor(2 * math.log2(self.k * size) + 3 + _LOG_GUARD)
        while self.ell < new_ell:
            self.buckets.append(ElementSet())
            self.ell += 1

    def process(self, u: int) -> bool:
        if self._owns_base and self.sys.can_add(u, self.base):
            self.base.add(u)
        self._grow_bands()
        self.base_size_after[u] = len(self.base)
        gain = self.f.marginal(u, self.kept)
        if gain <= EPS:
            self.out_of_band[u] = gain  # band infinity
            return False
        i = _floor_log2(self.tau / gain)
        if i < 0 or i > self.ell:
            self.out_of_band[u] = gain
            return False
        bucket = self.buckets[i]
        if not self.sys.can_add(u, bucket):
            return False
        bucket.add(u)
        self.kept.add(u)
        self.gain_at_accept[u] = gain
        if self._trace is not None:
            self._trace.append((len(self._seen) - 1, "accept", u, i, gain))
        return True

    def _ingest(self, u: int) -> list[int]:
        kept = self.process(u)
        if kept or (self._owns_base and u in self.base):
            return []
        return [u]

    def build_candidates(self) -> list[ElementSet]:
        return _drain_interleaved(self.buckets, self.ell, self.h, self.sys)

    def _finalize(self):
        self.candidates = self.build_candidates()
        held = list(self.kept)
        if self._owns_base:
            held.extend(u for u in self.base if u not in self.kept)
        return _best_by_value(self.f, self.candidates), self.kept.copy(), held

    def stored_count(self) -> int:
        count = sum(len(b) for b in self.buckets)
        if self._owns_base:
            count += len(self.base)
        if self.candidates is not None:
            count += sum(len(t) for t in self.candidates)
        return count


class AutoThresholdSieve(StreamingComponent):
    """Banded sieve needing neither the capacity bound nor the threshold.

    Keeps one :class:`AdaptiveSieve` copy per active power-of-two threshold
    guess.  The guess window follows the best feasible singleton seen so
    far and the size of the shared greedy base; copies whose guess drops
    out of the window are deleted (their exclusive elements are evicted),
    and missing guesses are instantiated on arrival.  All copies share one
    greedy base maintained here.
    """

    def __init__(self, sys: IndependenceSystem, f: Objective,
                 k: int | None = None):
        super().__init__()
        self.sys = sys
        self.f = f
        self.k = int(k if k is not None else sys.k_param)
        self.base = ElementSet()
        self.best_singleton = -math.inf
        self.copies: dict[int, AdaptiveSieve] = {}  # exponent -> copy
        self._holders: dict[int, int] = {}

    @property
    def profile(self) -> ApproximationProfile:
        scale = self.k if self.sys.class_tag == "k_system" else 1
        h = candidate_count(self.k)
        alpha = 4 * scale * h * (2 * self.k + 1)
        gamma = 0.0
        if self.best_singleton > 0:
            gamma = 2.0 ** _ceil_log2(self.best_singleton) / 2.0
        return ApproximationProfile(alpha=float(alpha), gamma=gamma)

    def active_exponents(self) -> range:
        """Exponents i with best_singleton <= 2**i <= window top."""
        if not self.base or self.best_singleton <= EPS:
            return range(0)
        lo = _ceil_log2(self.best_singleton)
        width = 2 * math.log2(self.k * len(self.base)) + 5
        hi = math.floor(math.log2(self.best_singleton) + width + _LOG_GUARD)
        return range(lo, hi + 1)

    def _ingest(self, u: int) -> list[int]:
        holders = self._holders
        holders[u] = 0
        if self.sys.can_add(u, self.base):
            self.base.add(u)
            holders[u] += 1
        if self.sys.is_independent((u,)):
            value = self.f.singleton(u)
            if value > self.best_singleton:
                self.best_singleton = value
        evicted: list[int] = []
        window = self.active_exponents()
        for exponent in list(self.copies):
            if exponent not in window:
                for x in self.copies[exponent].kept:
                    holders[x] -= 1
                    if holders[x] == 0:
                        del holders[x]
                        evicted.append(x)
                del self.copies[exponent]
        for exponent in window:
            if exponent not in self.copies:
                self.copies[exponent] = AdaptiveSieve(
                    self.sys, self.f, 2.0 ** exponent, self.k,
                    shared_base=self.base)
        for copy in self.copies.values():
            if copy.process(u):
                holders[u] += 1
        if holders[u] == 0:
            del holders[u]
            evicted.append(u)
        return evicted

    def _finalize(self):
        best: ElementSet | None = None
        best_val = -math.inf
        summary = ElementSet()
        for exponent in sorted(self.copies):
            copy = self.copies[exponent]
            copy.candidates = copy.build_candidates()
            cand = _best_by_value(self.f, copy.candidates)
            val = self.f.value(cand)
            if val > best_val + EPS:
                best, best_val = cand, val
            for x in copy.kept:
                if x not in summary:
                    summary.add(x)
        if best is None:
            best = ElementSet()
        held = list(summary)
        held.extend(u for u in self.base if u not in summary)
        return best, summary, held

    def stored_count(self) -> int:
        count = len(self.base)
        for copy in self.copies.values():
            count += sum(len(b) for b in copy.buckets)
            if copy.candidates is not None:
                count += sum(len(t) for t in copy.candidates)
        return count


@dataclass
class CascadeConfig:
    """Setup for the monotone-to-general reduction.

    ``copies`` chained components each receive what the previous one
    discarded; at end of stream every component's summary is additionally
    polished by ``offline`` and the best of all candidate sets wins.
    """

    copies: int
    component_factory: Callable[[], StreamingComponent]
    offline: Callable[[Objective, IndependenceSystem, ElementSet], ElementSet]

    def __post_init__(self):
        if self.copies < 1:
            raise ValueError("need at least one component copy")


@dataclass
class CascadeTrace:
    best: ElementSet
    best_value: float
    best_label: str
    candidates: list[tuple[str, ElementSet, float]]
    outcomes: list[StreamOutcome]
    peak_stored: int


def cascade_run(cfg: CascadeConfig, stream: Sequence[int],
                sys: IndependenceSystem, f: Objective, *,
                return_trace: bool = False,
                track_peak: bool = False):
    """Feed the stream through chained components and return the best of
    their solutions and the offline-polished summaries.

    Discarded elements cascade: what copy i rejects or later drops is
    pushed to copy i+1, during the stream and again at finish through the
    residual sets.  With deterministic components and offline solver the
    whole run is deterministic; value ties resolve to the earliest
    candidate (lower copy index, streamed solution before polished one).
    """
    comps = [cfg.component_factory() for _ in range(cfg.copies)]
    peak = 0
    for u in stream:
        batch: list[int] = [u]
        for comp in comps:
            batch = comp.push(batch)
            if not batch:
                break
        if track_peak:
            peak = max(peak, sum(c.stored_count() for c in comps))
    outcomes: list[StreamOutcome] = []
    batch = []
    for comp in comps:
        outcome = comp.finish(batch)
        if not sys.is_independent(outcome.solution):
            raise ContractViolationError("component returned a dependent solution")
        outcomes.append(outcome)
        batch = list(outcome.residual)
    if track_peak:
        peak = max(peak, sum(c.stored_count() for c in comps))

    candidates: list[tuple[str, ElementSet, float]] = []
    for idx, outcome in enumerate(outcomes, start=1):
        candidates.append((f"s{idx}", outcome.solution,
                           f.value(outcome.solution)))
        polished = cfg.offline(f, sys, outcome.summary)
        candidates.append((f"s{idx}+offline", polished, f.value(polished)))
    best_label, best, best_val = candidates[0]
    for label, cand, val in candidates[1:]:
        if val > best_val + EPS:
            best_label, best, best_val = label, cand, val
    if return_trace:
        return CascadeTrace(best, best_val, best_label, candidates, outcomes,
                            peak)
    return best


@dataclass
class AuditReport:
    """Replay record produced by :func:`contract_audit`."""

    ok: bool
    violations: list[str]
    peak_stored: int
    pushed: int
    outcome: StreamOutcome
    steps: list[tuple[int, int]] = field(repr=False, default_factory=list)


def contract_audit(component: StreamingComponent, stream: Sequence[int],
                   sys: IndependenceSystem | None = None) -> AuditReport:
    """Replay a stream through a fresh component, checking the protocol.

    Verifies that no element is dropped twice or lost (everything pushed
    is either discarded or accounted for in summary/residual), that the
    solution sits inside the summary and is feasible, and reports the peak
    number of stored elements (candidate sets included).  Violations are
    reported, never raised.
    """
    violations: list[str] = []
    pushed: set[int] = set()
    evicted: dict[int, int] = {}
    steps: list[tuple[int, int]] = []
    peak = 0
    for step, u in enumerate(stream):
        pushed.add(u)
        for x in component.push([u]):
            if x not in pushed:
                violations.append(f"step {step}: evicted unknown element {x}")
            if x in evicted:
                violations.append(f"step {step}: element {x} evicted twice")
            evicted[x] = step
        stored = component.stored_count()
        steps.append((step, stored))
        peak = max(peak, stored)
    outcome = component.finish()
    peak = max(peak, component.stored_count())
    accounted = set(outcome.summary) | set(outcome.residual)
    for u in pushed:
        if u not in evicted and u not in accounted:
            violations.append(f"element {u} lost (never evicted, not in A or D)")
    if sys is not None and not sys.is_independent(outcome.solution):
        violations.append("solution is not independent")
    return AuditReport(ok=not violations, violations=violations,
                       peak_stored=peak, pushed=len(pushed),
                       outcome=outcome, steps=steps)
