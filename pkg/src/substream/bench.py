"""Benchmark harness: seeded graph generators, instance loaders, an
algorithm matrix runner and CSV emission.

Determinism: every cell derives four sub-seeds (graph, weights, costs,
stream shuffle) from its 64-bit seed through one splitmix64 generator, so
identical configs reproduce identical instances and, with timing disabled,
byte-identical CSV output.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence

from .core import ElementSet, Objective
from .prng import SplitMix64
from .objectives import (CutGraph, load_features, load_keyword_table,
                         make_coverage_minus_dispersion, make_directed_cut,
                         make_facility_location, make_logdet, make_modular,
                         make_sqrt_coverage, similarity_from_features,
                         ReservoirConfig)
from .constraints import (IndependenceSystem, cardinality_system, intersect,
                          knapsack_system, labeled_limit_system,
                          node_independent_set_system, planarity_system)
from .offline import repeated_greedy, unweighted_greedy, weighted_greedy
from .streaming import (AdaptiveSieve, AutoThresholdSieve, CascadeConfig,
                        StreamingComponent, ThresholdSieve, cascade_run,
                        _ceil_log2)
from .baselines import GreedyStream, SieveGuessStream

RESULT_HEADER = "algorithm,sweep,seed,value,oracle_calls,peak_elements,ms"


@dataclass(frozen=True)
class ResultRow:
    algorithm: str
    sweep: float
    seed: int
    value: float
    oracle_calls: int
    peak_elements: int
    ms: int

    def as_csv(self) -> str:
        return (f"{self.algorithm},{self.sweep!r},{self.seed},{self.value!r},"
                f"{self.oracle_calls},{self.peak_elements},{self.ms}")


# ---------------------------------------------------------------------------
# graph generation and IO


def _draw_weight(rng: SplitMix64, mode: str) -> float:
    if mode == "unit":
        return 1.0
    if mode == "uniform":
        return rng.random()
    if mode == "exp":
        # mean-1 exponential; the clamp keeps log() finite
        return -math.log(max(rng.random(), 2.0**-53))
    raise ValueError(f"unknown weight mode {mode!r}")


def gen_erdos_renyi(n: int, p: float, seed: int,
                    weight_mode: str = "unit") -> CutGraph:
    """Independent-pairs random graph; each undirected edge appears with
    probability ``p`` and is materialized in both directions, the two
    directions carrying the same weight (drawn per ``weight_mode``)."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    rng = SplitMix64(seed)
    edges: list[tuple[int, int, float]] = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                w = _draw_weight(rng, weight_mode)
                edges.append((i, j, w))
                edges.append((j, i, w))
    return CutGraph(n_vertices=n, edges=tuple(edges))


def gen_watts_strogatz(n: int, k_ring: int, beta: float, seed: int,
                       weight_mode: str = "unit") -> CutGraph:
    """Ring lattice with ``k_ring`` nearest neighbours per node, each edge
    rewired with probability ``beta`` (resampled targets, no self-loops or
    duplicates).  The undirected edge count is always ``n * k_ring / 2``;
    both directions of an edge carry the same weight."""
    if k_ring % 2 != 0 or k_ring < 2 or k_ring >= n:
        raise ValueError("k_ring must be even, positive and below n")
    if not 0.0 <= beta <= 1.0:
        raise ValueError("beta must lie in [0, 1]")
    rng = SplitMix64(seed)
    present: set[frozenset] = set()
    lattice: list[tuple[int, int]] = []
    for i in range(n):
        for d in range(1, k_ring // 2 + 1):
            j = (i + d) % n
            lattice.append((i, j))
            present.add(frozenset((i, j)))
    pairs: list[tuple[int, int]] = []
    for (i, j) in lattice:
        if rng.random() < beta:
            key = frozenset((i, j))
            # resample until the new endpoint is fresh; bounded retries keep
            # the loop finite even at extreme densities
            for _ in range(8 * n):
                t = rng.randrange(n)
                new = frozenset((i, t))
                if t != i and new not in present:
                    present.discard(key)
                    present.add(new)
                    j = t
                    break
        pairs.append((i, j))
    edges: list[tuple[int, int, float]] = []
    for (i, j) in pairs:
        w = _draw_weight(rng, weight_mode)
        edges.append((i, j, w))
        edges.append((j, i, w))
    return CutGraph(n_vertices=n, edges=tuple(edges))


def gen_node_weights(n: int, seed: int, mode: str = "uniform") -> list[float]:
    """Random node weights for the additive objective."""
    rng = SplitMix64(seed)
    return [_draw_weight(rng, mode) for _ in range(n)]


def load_edge_list(path) -> tuple[CutGraph, dict]:
    """Parse ``u<TAB>v<TAB>weight`` lines into a graph.

    ``#`` starts a comment line.  Vertices are renumbered densely in first
    appearance order and the mapping is returned alongside the graph;
    repeated directed edges have their weights summed.
    """
    mapping: dict = {}
    weights: dict[tuple[int, int], float] = {}
    order: list[tuple[int, int]] = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) == 2:
                parts.append("1.0")
            if len(parts) != 3:
                raise ValueError(f"{path}:{lineno}: expected u<TAB>v<TAB>weight")
            try:
                u_raw, v_raw, w = parts[0], parts[1], float(parts[2])
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: bad weight {parts[2]!r}") from exc
            for key in (u_raw, v_raw):
                if key not in mapping:
                    mapping[key] = len(mapping)
            u, v = mapping[u_raw], mapping[v_raw]
            if u == v:
                raise ValueError(f"{path}:{lineno}: self-loop at {u_raw!r}")
            if (u, v) not in weights:
                weights[(u, v)] = 0.0
                order.append((u, v))
            weights[(u, v)] += w
    n = max(len(mapping), 1)
    edges = tuple((u, v, weights[(u, v)]) for (u, v) in order)
    return CutGraph(n_vertices=n, edges=edges), mapping


def write_edge_list(g: CutGraph, path) -> None:
    with open(path, "w") as fh:
        fh.write("# u\tv\tweight\n")
        for u, v, w in g.edges:
            fh.write(f"{u}\t{v}\t{w!r}\n")


def undirected_pairs(g: CutGraph) -> list[tuple[int, int]]:
    """Distinct undirected edges of a graph, sorted endpoint pairs."""
    seen = set()
    pairs = []
    for u, v, _ in g.edges:
        key = (min(u, v), max(u, v))
        if key not in seen:
            seen.add(key)
            pairs.append(key)
    return pairs


# ---------------------------------------------------------------------------
# knapsack cost rules and normalization


def normalize_costs(costs: Sequence[float], mode: str, n_vertices: int) -> list[float]:
    """Rescale costs; ``sum_vertices`` makes them sum to the vertex count,
    ``mean_tenth`` makes the mean cost 1/10."""
    total = sum(costs)
    if total <= 0:
        raise ValueError("cannot normalize non-positive cost mass")
    if mode == "sum_vertices":
        factor = n_vertices / total
    elif mode == "mean_tenth":
        factor = (len(costs) / 10.0) / total
    else:
        raise ValueError(f"unknown normalization {mode!r}")
    return [c * factor for c in costs]


def degree_costs(pairs: Sequence[tuple[int, int]], n_vertices: int,
                 q: int = 6) -> list[float]:
    """Edge costs proportional to max(1, degree(first endpoint) - q)."""
    deg = [0] * n_vertices
    for u, v in pairs:
        deg[u] += 1
        deg[v] += 1
    return [float(max(1, deg[u] - q)) for u, _ in pairs]


def random_int_costs(count: int, seed: int, low: int = 1, high: int = 5) -> list[float]:
    rng = SplitMix64(seed)
    return [float(rng.randint(low, high)) for _ in range(count)]


# ---------------------------------------------------------------------------
# cell assembly


@dataclass
class Cell:
    """One fully materialized experiment point."""

    sys: IndependenceSystem
    objective_factory: Callable[[], Objective]
    stream: list[int]
    sweep: float
    seed: int


def _build_graph(instance: Mapping, seed: int) -> CutGraph:
    if "edge_list" in instance:
        return load_edge_list(instance["edge_list"])[0]
    model = instance.get("model")
    weight_mode = instance.get("edge_weights", "unit")
    if model == "er":
        return gen_erdos_renyi(int(instance["n"]), float(instance["p"]), seed,
                               weight_mode)
    if model == "ws":
        return gen_watts_strogatz(int(instance["n"]), int(instance["k_ring"]),
                                  float(instance["beta"]), seed, weight_mode)
    raise ValueError(f"unknown instance spec {instance!r}")


def _build_constraint(spec: Mapping, graph: CutGraph | None,
                      pairs: list[tuple[int, int]] | None,
                      cost_seed: int) -> IndependenceSystem:
    if "intersect" in spec:
        a, b = spec["intersect"]
        return intersect(_build_constraint(a, graph, pairs, cost_seed),
                         _build_constraint(b, graph, pairs, cost_seed + 1))
    kind = spec["type"]
    if kind == "node_independent_set":
        return node_independent_set_system(graph.n_vertices, undirected_pairs(graph))
    if kind == "cardinality":
        if spec.get("n") is not None:
            n = int(spec["n"])
        elif pairs is not None:
            n = len(pairs)
        elif graph is not None:
            n = graph.n_vertices
        else:
            raise ValueError("cardinality spec needs an explicit n here")
        return cardinality_system(n, int(spec["rho"]))
    if kind == "planarity":
        return planarity_system(graph.n_vertices, pairs)
    if kind == "knapsack":
        if "costs" in spec:
            return knapsack_system(spec["costs"], float(spec["budget"]))
        rule = spec.get("cost_rule", "degree")
        if pairs is None:
            raise ValueError("knapsack cost rules here are edge-based")
        if rule == "degree":
            costs = degree_costs(pairs, graph.n_vertices, int(spec.get("q", 6)))
        elif rule == "random_int":
            costs = random_int_costs(len(pairs), cost_seed)
        else:
            raise ValueError(f"unknown cost rule {rule!r}")
        mode = spec.get("normalize", "sum_vertices")
        costs = normalize_costs(costs, mode, graph.n_vertices)
        return knapsack_system(costs, float(spec["budget"]))
    if kind == "labeled_limit":
        return labeled_limit_system(spec["labels"], spec["per_label_limit"],
                                    int(spec["total_limit"]), spec.get("k_param"))
    raise ValueError(f"unknown constraint spec {spec!r}")


def _apply_constraint_sweep(constraint: dict, param: str, value) -> bool:
    if param in constraint:
        constraint[param] = value
        return True
    if "intersect" in constraint:
        return any(_apply_constraint_sweep(part, param, value)
                   for part in constraint["intersect"])
    return False


def build_cell(cfg: Mapping, sweep_value, seed: int) -> Cell:
    """Materialize the (sweep value, seed) point of a config."""
    instance = dict(cfg.get("instance", {}))
    constraint = json.loads(json.dumps(cfg["constraint"]))  # deep copy
    param = cfg.get("sweep", {}).get("param")
    if param is not None:
        if param in instance:
            instance[param] = sweep_value
        elif not _apply_constraint_sweep(constraint, param, sweep_value):
            raise ValueError(f"sweep parameter {param!r} matches no config key")

    rng = SplitMix64(seed)
    graph_seed = rng.next_u64()
    weight_seed = rng.next_u64()
    cost_seed = rng.next_u64()
    shuffle_seed = rng.next_u64()

    objective = cfg.get("objective", {"kind": "linear"})
    kind = objective["kind"]

    if kind in ("facility", "logdet", "coverage_minus_dispersion"):
        feats = load_features(objective["features"])
        lam = float(objective.get("lambda", 0.1))
        sim = similarity_from_features(feats, lam)
        n = sim.shape[0]
        if kind == "facility":
            res = objective.get("reservoir")
            cfg_res = ReservoirConfig(int(res["r_cap"]), int(res.get("seed", 0))) if res else None
            factory = lambda: make_facility_location(sim, cfg_res)
        elif kind == "logdet":
            alpha = float(objective.get("alpha", 20.0))
            factory = lambda: make_logdet(sim, alpha)
        else:
            factory = lambda: make_coverage_minus_dispersion(sim)
        sys = _build_constraint(constraint, None, None, cost_seed)
        ground = list(range(n))
    elif kind == "sqrt_coverage":
        table = load_keyword_table(objective["keywords"])
        factory = lambda: make_sqrt_coverage(table)
        sys = _build_constraint(constraint, None, None, cost_seed)
        ground = list(range(len(table)))
    else:
        graph = _build_graph(instance, graph_seed)
        ground_kind = cfg.get("ground")
        if ground_kind is None:
            ground_kind = "edges" if constraint.get("type") in ("planarity", "knapsack") \
                or "intersect" in constraint else "nodes"
        pairs = undirected_pairs(graph) if ground_kind == "edges" else None
        if kind == "cut":
            if ground_kind != "nodes":
                raise ValueError("cut objective needs the node ground set")
            factory = lambda: make_directed_cut(graph)
        elif kind == "linear":
            if ground_kind == "edges":
                weights = [1.0] * len(pairs)
            else:
                weights = gen_node_weights(graph.n_vertices, weight_seed,
                                           objective.get("node_weights", "uniform"))
            factory = lambda: make_modular(weights)
        else:
            raise ValueError(f"unknown objective kind {kind!r}")
        sys = _build_constraint(constraint, graph, pairs, cost_seed)
        ground = list(range(len(pairs))) if ground_kind == "edges" \
            else list(range(graph.n_vertices))

    order = cfg.get("options", {}).get("stream_order", "shuffle")
    stream = list(ground)
    if order == "shuffle":
        SplitMix64(shuffle_seed).shuffle(stream)
    elif order != "id":
        raise ValueError(f"unknown stream order {order!r}")
    return Cell(sys=sys, objective_factory=factory, stream=stream,
                sweep=sweep_value, seed=seed)


# ---------------------------------------------------------------------------
# algorithm runners


def _poll_run(component: StreamingComponent, stream) -> tuple[ElementSet, int]:
    peak = 0
    for u in stream:
        component.push([u])
        peak = max(peak, component.stored_count())
    outcome = component.finish()
    peak = max(peak, component.stored_count())
    return outcome.solution, peak


def _prepass_tau(sys: IndependenceSystem, f: Objective, stream) -> float:
    """Power-of-two threshold in [M, 2M] from a singleton sweep."""
    best = 0.0
    for u in stream:
        if sys.is_independent((u,)):
            best = max(best, f.singleton(u))
    if best <= 0.0:
        return 1.0  # degenerate instance; any threshold rejects everything
    return 2.0 ** _ceil_log2(best)


def _prepass_rho_bound(sys: IndependenceSystem, stream) -> int:
    """Upper bound on the largest independent set: k times a greedy base."""
    if sys.rho_hint is not None:
        return sys.rho_hint
    base = unweighted_greedy(sys, stream)
    return max(1, sys.k_param * len(base))


def _greedy_rho_estimate(sys: IndependenceSystem, stream) -> int:
    if sys.rho_hint is not None:
        return sys.rho_hint
    return max(1, len(unweighted_greedy(sys, stream)))


def run_algorithm(name: str, sys: IndependenceSystem, f: Objective,
                  stream, options: Mapping) -> tuple[ElementSet, int]:
    """Execute one named algorithm; returns (solution, peak stored)."""
    if name == "streaming_greedy":
        return _poll_run(GreedyStream(sys, f), stream)
    if name == "sieve_streaming":
        rho = options.get("sieve_rho") or _greedy_rho_estimate(sys, stream)
        eps = float(options.get("sieve_epsilon", 0.1))
        return _poll_run(SieveGuessStream(sys, f, epsilon=eps, rho=rho), stream)
    if name == "threshold_sieve":
        tau = _prepass_tau(sys, f, stream)
        rho = _prepass_rho_bound(sys, stream)
        return _poll_run(ThresholdSieve(sys, f, tau, rho), stream)
    if name == "adaptive_sieve":
        tau = _prepass_tau(sys, f, stream)
        return _poll_run(AdaptiveSieve(sys, f, tau), stream)
    if name == "auto_sieve":
        return _poll_run(AutoThresholdSieve(sys, f), stream)
    if name in ("framework", "framework_tau"):
        copies = int(options.get("cascade_copies", 2))
        iters = options.get("repeated_greedy_iterations")

        def offline(fo, so, ground):
            # value greedy and arrival-order first fit complement each
            # other on summaries; hand back whichever scores higher
            by_value = repeated_greedy(fo, so, ground, iterations=iters)
            by_order = unweighted_greedy(so, ground)
            if fo.value(by_order) > fo.value(by_value):
                return by_order
            return by_value

        if name == "framework_tau":
            tau = _prepass_tau(sys, f, stream)
            factory = lambda: AdaptiveSieve(sys, f, tau)
        else:
            factory = lambda: AutoThresholdSieve(sys, f)
        cfg = CascadeConfig(copies=copies, component_factory=factory,
                            offline=offline)
        trace = cascade_run(cfg, stream, sys, f, return_trace=True,
                            track_peak=True)
        return trace.best, trace.peak_stored
    if name == "weighted_greedy":
        return weighted_greedy(f, sys, stream), len(stream)
    if name == "repeated_greedy":
        iters = options.get("repeated_greedy_iterations")
        return repeated_greedy(f, sys, stream, iterations=iters), len(stream)
    raise ValueError(f"unknown algorithm {name!r}")


ALGORITHMS = ("streaming_greedy", "sieve_streaming", "threshold_sieve",
              "adaptive_sieve", "auto_sieve", "framework", "framework_tau",
              "weighted_greedy", "repeated_greedy")


# ---------------------------------------------------------------------------
# experiment driver


def run_experiment(cfg: Mapping, *, measure_time: bool = True) -> list[ResultRow]:
    """Run every (algorithm x sweep value x seed) cell of a config.

    Rows come back sorted by (sweep, algorithm, seed).  With
    ``measure_time=False`` the ms column is zeroed, making the emitted CSV
    a pure function of the config.
    """
    algorithms = list(cfg["algorithms"])
    if not algorithms:
        raise ValueError("config lists no algorithms")
    seeds = [int(s) for s in cfg.get("seeds", [0])]
    if not seeds:
        raise ValueError("config lists no seeds")
    sweep_values = cfg.get("sweep", {}).get("values", [0])
    options = cfg.get("options", {})

    rows: list[ResultRow] = []
    for sweep_value in sweep_values:
        for seed in seeds:
            cell = build_cell(cfg, sweep_value, seed)
            for name in algorithms:
                f = cell.objective_factory()
                calls_before = f.evaluations
                started = time.perf_counter()
                solution, peak = run_algorithm(name, cell.sys, f,
                                               cell.stream, options)
                elapsed = time.perf_counter() - started
                value = f.value(solution)
                calls = f.evaluations - calls_before
                rows.append(ResultRow(
                    algorithm=name, sweep=sweep_value, seed=seed,
                    value=value, oracle_calls=calls, peak_elements=peak,
                    ms=int(elapsed * 1000) if measure_time else 0))
    rows.sort(key=lambda r: (r.sweep, r.algorithm, r.seed))
    return rows


def rows_to_csv(rows: Iterable[ResultRow]) -> str:
    lines = [RESULT_HEADER]
    lines.extend(row.as_csv() for row in rows)
    return "\n".join(lines) + "\n"
