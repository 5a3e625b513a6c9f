"""Adversarial cut instances on which the swap-based streaming baselines
keep an arbitrarily small fraction of the reachable value.

Both instances live on 3*rho + 1 vertices u_0 .. u_{3 rho}.  Vertex u_0
is a sink that never appears in the stream; the others arrive in subscript
order.  The first wave u_1..u_rho each carry one unit edge into the sink,
the planted optimum u_{rho+1}..u_{2 rho} each point one unit edge at every
first-wave vertex (so the optimum cuts rho^2), and the late wave
u_{2 rho+1}..u_{3 rho} carry bait edges into the sink whose weights are
tuned per instance:

* family g1 uses constant weight 2 + epsilon, which makes the
  double-the-cheapest swap rule evict the entire first wave;
* family g2 uses the recurrence w_1 = 2,
  w_i = (2 rho + 1 - i + sum_{j<i} w_j) / rho, which keeps the
  improvement of every swap exactly at the value/rho bar of the
  best-replacement rule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .core import EPS
from .objectives import CutGraph, make_directed_cut
from .constraints import cardinality_system
from .offline import brute_force_opt
from .baselines import preemption_stream, ratio_swap_stream


@dataclass(frozen=True)
class CounterInstance:
    """A hard cut instance plus its stream order and special vertex blocks."""

    graph: CutGraph
    stream: tuple[int, ...]
    rho: int
    epsilon: float | None = None

    @property
    def early(self) -> tuple[int, ...]:
        """First wave that fills the solution (marginal 1 each)."""
        return tuple(range(1, self.rho + 1))

    @property
    def planted_opt(self) -> tuple[int, ...]:
        """The optimum block; cuts rho^2 but gains nothing next to S."""
        return tuple(range(self.rho + 1, 2 * self.rho + 1))

    @property
    def late(self) -> tuple[int, ...]:
        """Bait block whose sink edges trigger every swap."""
        return tuple(range(2 * self.rho + 1, 3 * self.rho + 1))


def w_sequence(rho: int) -> list[float]:
    """Bait weights for family g2, by the defining recurrence."""
    if rho < 1:
        raise ValueError("rho must be a positive integer")
    ws: list[float] = [2.0]
    for i in range(2, rho + 1):
        ws.append((2 * rho + 1 - i + sum(ws)) / rho)
    return ws


def w_sequence_closed_form(rho: int) -> list[float]:
    """The same weights via w_i = 2 + sum_j C(i-1, j) rho^-j."""
    if rho < 1:
        raise ValueError("rho must be a positive integer")
    out = []
    for i in range(1, rho + 1):
        acc = 2.0
        for j in range(1, i):
            acc += math.comb(i - 1, j) * rho ** float(-j)
        out.append(acc)
    return out


def w_sequence_total(rho: int) -> float:
    """Closed form of sum(w_sequence(rho)): 2 rho + rho((1 + 1/rho)^rho - 2)."""
    return 2.0 * rho + rho * ((1.0 + 1.0 / rho) ** rho - 2.0)


def _build(rho: int, bait_weights: list[float],
           epsilon: float | None) -> CounterInstance:
    n = 3 * rho + 1
    edges: list[tuple[int, int, float]] = []
    for i in range(1, rho + 1):
        edges.append((i, 0, 1.0))
    for j in range(rho + 1, 2 * rho + 1):
        for i in range(1, rho + 1):
            edges.append((j, i, 1.0))
    for idx, m in enumerate(range(2 * rho + 1, 3 * rho + 1)):
        edges.append((m, 0, bait_weights[idx]))
    graph = CutGraph(n_vertices=n, edges=tuple(edges))
    return CounterInstance(graph=graph, stream=tuple(range(1, n)),
                           rho=rho, epsilon=epsilon)


def build_g1(rho: int, epsilon: float = 0.01) -> CounterInstance:
    if rho < 1:
        raise ValueError("rho must be a positive integer")
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    return _build(rho, [2.0 + epsilon] * rho, epsilon)


def build_g2(rho: int) -> CounterInstance:
    return _build(rho, w_sequence(rho), None)


@dataclass
class CounterReport:
    """Verifier output; ``checks`` itemizes each asserted identity."""

    family: str
    rho: int
    epsilon: float | None
    f_S: float
    f_opt: float
    f_union: float
    bound: float
    holds: bool
    checks: dict[str, bool] = field(default_factory=dict)

    def as_json(self) -> dict:
        return {"rho": self.rho, "epsilon": self.epsilon, "f_S": self.f_S,
                "f_opt": self.f_opt, "f_union": self.f_union,
                "bound": self.bound, "holds": self.holds}


def _report(family, inst, outcome, f, expected_value, ratio_factor,
            extra_checks) -> CounterReport:
    sol = outcome.solution
    f_s = f.value(sol)
    f_opt = f.value(inst.planted_opt)
    f_union = f.value(set(sol) | set(inst.planted_opt))
    bound = ratio_factor * f_union
    checks = {
        "solution_is_late_block": set(sol) == set(inst.late),
        "value_matches_trace": abs(f_s - expected_value) <= 1e-9,
        "ratio_bound": f_s <= bound + 1e-9,
        "opt_block_untouched": not set(sol) & set(inst.planted_opt),
    }
    checks.update(extra_checks(f_s, f_opt, f_union))
    return CounterReport(family=family, rho=inst.rho, epsilon=inst.epsilon,
                         f_S=f_s, f_opt=f_opt, f_union=f_union, bound=bound,
                         holds=all(checks.values()), checks=checks)


def verify_preemption_counterexample(rho: int,
                                     epsilon: float = 0.01) -> CounterReport:
    """Run the double-the-cheapest swap baseline on family g1.

    The final solution must be exactly the bait block with value
    (2 + epsilon) * rho, never touching the planted optimum, and satisfy
    f(S) <= ((2 + epsilon) / rho) * f(S union OPT).
    """
    inst = build_g1(rho, epsilon)
    f = make_directed_cut(inst.graph)
    sys = cardinality_system(inst.graph.n_vertices, rho)
    outcome = preemption_stream(sys, f, inst.stream)
    expected = (2.0 + epsilon) * rho
    return _report("g1", inst, outcome, f, expected, (2.0 + epsilon) / rho,
                   lambda f_s, f_opt, f_union: {
                       "opt_value": abs(f_opt - rho * rho) <= 1e-9})


def verify_ratio_swap_counterexample(rho: int) -> CounterReport:
    """Run the best-replacement swap baseline on family g2.

    Requires rho >= 4 (the smallest integer above 1 + e).  The final
    solution must be exactly the bait block with value
    2 rho + rho((1 + 1/rho)^rho - 2) <= e rho, and satisfy
    f(S) <= (e / rho) * f(S union OPT) with f(S union OPT) >= rho^2.
    """
    if rho < 4:
        raise ValueError("rho must be at least 4 (an integer above 1 + e)")
    inst = build_g2(rho)
    f = make_directed_cut(inst.graph)
    sys = cardinality_system(inst.graph.n_vertices, rho)
    outcome = ratio_swap_stream(sys, f, inst.stream)
    expected = w_sequence_total(rho)
    return _report("g2", inst, outcome, f, expected, math.e / rho,
                   lambda f_s, f_opt, f_union: {
                       "value_at_most_e_rho": f_s <= math.e * rho + 1e-9,
                       "union_at_least_opt": f_union >= rho * rho - 1e-9})


def brute_optimum_matches(family: str, rho: int, epsilon: float = 0.01) -> bool:
    """For small rho, confirm by enumeration that the planted block is the
    constrained optimum with value rho^2."""
    inst = build_g1(rho, epsilon) if family == "g1" else build_g2(rho)
    f = make_directed_cut(inst.graph)
    sys = cardinality_system(inst.graph.n_vertices, rho)
    best, val = brute_force_opt(f, sys, inst.stream)
    return set(best) == set(inst.planted_opt) and abs(val - rho * rho) <= EPS
