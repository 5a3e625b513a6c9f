"""Seeded random instance builders shared across the test modules."""

from substream import (CutGraph, cardinality_system, knapsack_system,
                       labeled_limit_system, make_directed_cut, make_modular,
                       node_independent_set_system, similarity_from_features)
from substream.prng import SplitMix64


def random_modular(rng: SplitMix64, n: int):
    return make_modular([rng.uniform(0.1, 10.0) for _ in range(n)])


def random_cut(rng: SplitMix64, n: int, p: float = 0.3):
    edges = []
    for u in range(n):
        for v in range(n):
            if u != v and rng.random() < p:
                edges.append((u, v, rng.uniform(0.1, 5.0)))
    if not edges:
        edges = [(0, 1, 1.0)]
    return make_directed_cut(CutGraph(n, tuple(edges)))


def random_similarity(rng: SplitMix64, n: int, dim: int = 3, lam: float = 0.4):
    feats = [[rng.uniform(-1.0, 1.0) for _ in range(dim)] for _ in range(n)]
    return similarity_from_features(feats, lam)


def random_labels(rng: SplitMix64, n: int, n_labels: int = 3,
                  max_per_element: int = 2):
    labels = []
    for _ in range(n):
        count = 1 + rng.randrange(max_per_element)
        labels.append(frozenset(rng.randrange(n_labels) for _ in range(count)))
    return labels


def random_system(rng: SplitMix64, n: int, kinds=("cardinality", "labeled_limit",
                                                  "knapsack", "node")):
    kind = kinds[rng.randrange(len(kinds))]
    if kind == "cardinality":
        return cardinality_system(n, rng.randint(1, max(1, n // 2)))
    if kind == "labeled_limit":
        return labeled_limit_system(random_labels(rng, n),
                                    rng.randint(1, 3),
                                    rng.randint(2, max(2, n // 2)))
    if kind == "knapsack":
        costs = [float(rng.randint(1, 4)) for _ in range(n)]
        return knapsack_system(costs, float(rng.randint(4, 3 * n)))
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)
             if rng.random() < 0.3]
    return node_independent_set_system(n, edges)


def max_feasible_singleton(sys, f):
    best = 0.0
    for u in range(sys.n):
        if sys.is_independent((u,)):
            best = max(best, f.singleton(u))
    return best


def random_independent_set(rng: SplitMix64, sys, keep_prob: float = 0.5):
    from substream import ElementSet
    order = list(range(sys.n))
    rng.shuffle(order)
    out = ElementSet()
    for u in order:
        if rng.random() < keep_prob and sys.can_add(u, out):
            out.add(u)
    return out


def submodularity_violations(f, rng: SplitMix64, samples: int,
                             tol: float = 1e-9) -> int:
    """Count sampled (A subset of B, u outside B) triples violating the
    diminishing-gain inequality, also checking non-negativity."""
    n = f.n
    bad = 0
    for _ in range(samples):
        big = {v for v in range(n) if rng.random() < 0.5}
        small = {v for v in big if rng.random() < 0.6}
        outside = [v for v in range(n) if v not in big]
        if not outside:
            continue
        u = outside[rng.randrange(len(outside))]
        if f.marginal(u, small) < f.marginal(u, big) - tol:
            bad += 1
        if f.value(big) < 0.0:
            bad += 1
    return bad


def downward_closure_violations(sys, rng: SplitMix64, samples: int) -> int:
    bad = 0
    for _ in range(samples):
        big = random_independent_set(rng, sys, keep_prob=0.8)
        small = [u for u in big if rng.random() < 0.6]
        if not sys.is_independent(small):
            bad += 1
    return bad


def sample_oracles(rng: SplitMix64, n: int = 10):
    """One instance of every shipped objective family, tagged by name."""
    from substream import (KeywordTable, ReservoirConfig,
                           make_coverage_minus_dispersion,
                           make_facility_location, make_logdet,
                           make_sqrt_coverage)
    sim = random_similarity(rng, n)
    words = [frozenset({rng.randrange(5), rng.randrange(5)}) for _ in range(n)]
    table = KeywordTable(words=[{str(w) for w in ws} for ws in words],
                         values=[rng.uniform(0.0, 6.0) for _ in range(n)])
    return [
        ("modular", random_modular(rng, n)),
        ("directed_cut", random_cut(rng, n)),
        ("coverage_minus_dispersion", make_coverage_minus_dispersion(sim)),
        ("facility_location", make_facility_location(sim)),
        ("facility_location_sampled",
         make_facility_location(sim, ReservoirConfig(r_cap=max(2, n // 2), seed=5))),
        ("logdet", make_logdet(sim, alpha=2.0)),
        ("sqrt_coverage", make_sqrt_coverage(table)),
    ]
