"""Independence-system oracles and the combinators the algorithms rely on.

Every system is a downward-closed family over ``range(n)`` exposed through
a membership predicate, together with a certified exchange parameter
``k_param`` and a ``class_tag`` of ``"matroid"``, ``"k_extendible"`` or
``"k_system"``.  Oracles are immutable; concurrent reads are safe.
"""

from __future__ import annotations

import math
from typing import Callable, Iterable, Mapping, Sequence

from .core import GroundSetError, SizeLimitError, UnsupportedConstraintError
from .planarity import planarity_check

CLASS_TAGS = ("matroid", "k_extendible", "k_system")

# Ground sets up to this size may have their largest independent set
# computed exactly by enumeration.
EXACT_RHO_LIMIT = 20


class IndependenceSystem:
    """Membership oracle for a downward-closed set family.

    ``predicate`` decides independence of an id set.  ``add_predicate``,
    when given, must answer "is S + u independent" for independent S; it
    exists purely as a fast path for the greedy inner loops.
    ``rho_hint`` is the exact size of the largest independent set when it
    is cheaply known, else None.
    """

    __slots__ = ("n", "k_param", "class_tag", "kind", "rho_hint",
                 "_predicate", "_add_predicate")

    def __init__(self, predicate: Callable[[frozenset], bool], n: int, *,
                 k_param: int, class_tag: str, kind: str = "custom",
                 rho_hint: int | None = None,
                 add_predicate: Callable[[int, Iterable[int]], bool] | None = None):
        if n <= 0:
            raise ValueError("ground set must be non-empty")
        if k_param < 1:
            raise ValueError("k_param must be a positive integer")
        if class_tag not in CLASS_TAGS:
            raise ValueError(f"class_tag must be one of {CLASS_TAGS}")
        self.n = n
        self.k_param = int(k_param)
        self.class_tag = class_tag
        self.kind = kind
        self.rho_hint = rho_hint
        self._predicate = predicate
        self._add_predicate = add_predicate

    def _checked(self, subset: Iterable[int]) -> frozenset:
        s = frozenset(subset)
        for u in s:
            if not (0 <= u < self.n):
                raise GroundSetError(f"id {u} outside range(0, {self.n})")
        return s

    def is_independent(self, subset: Iterable[int]) -> bool:
        return bool(self._predicate(self._checked(subset)))

    def can_add(self, u: int, members: Iterable[int]) -> bool:
        """Whether adding ``u`` keeps an already independent set independent."""
        if not (0 <= u < self.n):
            raise GroundSetError(f"id {u} outside range(0, {self.n})")
        if u in members:
            return False
        if self._add_predicate is not None:
            return bool(self._add_predicate(u, members))
        return bool(self._predicate(frozenset(members) | {u}))


def cardinality_system(n: int, rho: int) -> IndependenceSystem:
    """All subsets of size at most ``rho`` (a uniform matroid)."""
    if rho < 1:
        raise ValueError("rho must be positive")
    return IndependenceSystem(
        lambda s: len(s) <= rho, n,
        k_param=1, class_tag="matroid", kind="cardinality",
        rho_hint=min(rho, n),
        add_predicate=lambda u, members: len(members) < rho)


def knapsack_system(costs, budget: float) -> IndependenceSystem:
    """Subsets whose total cost stays within the budget.

    Costs must be strictly positive (a zero cost would leave the exchange
    parameter ceil(c_max / c_min) undefined; clamp to an epsilon first).
    """
    if isinstance(costs, Mapping):
        if set(costs) != set(range(len(costs))):
            raise ValueError("cost map keys must be exactly 0..n-1")
        c = [float(costs[i]) for i in range(len(costs))]
    else:
        c = [float(x) for x in costs]
    if not c:
        raise ValueError("empty ground set")
    if min(c) <= 0:
        raise ValueError("knapsack costs must be strictly positive")
    if budget <= 0:
        raise ValueError("budget must be positive")
    k = math.ceil(max(c) / min(c) - 1e-12)
    # rho: the cheapest elements fill the budget first
    rho = 0
    acc = 0.0
    for x in sorted(c):
        if acc + x > budget + 1e-12:
            break
        acc += x
        rho += 1

    def pred(s):
        return sum(c[u] for u in s) <= budget + 1e-12

    def add_pred(u, members):
        return sum(c[x] for x in members) + c[u] <= budget + 1e-12

    return IndependenceSystem(pred, len(c), k_param=max(k, 1),
                              class_tag="k_extendible", kind="knapsack",
                              rho_hint=rho, add_predicate=add_pred)


def labeled_limit_system(labels: Sequence[Iterable], per_label_limit,
                         total_limit: int,
                         k_param: int | None = None) -> IndependenceSystem:
    """At most ``total_limit`` elements overall and at most the per-label
    limit among elements carrying each label.

    Labels may overlap, so this is generally not a matroid.  The default
    exchange parameter is (max labels per element) + 1; pass ``k_param``
    to override it when a sharper value is known for the instance.
    """
    labs = [frozenset(l) for l in labels]
    if not labs:
        raise ValueError("empty ground set")
    if total_limit < 1:
        raise ValueError("total_limit must be positive")
    all_labels = frozenset().union(*labs) if labs else frozenset()
    if isinstance(per_label_limit, Mapping):
        limits = {lab: int(per_label_limit[lab]) for lab in all_labels}
    else:
        limits = {lab: int(per_label_limit) for lab in all_labels}
    if any(v < 1 for v in limits.values()):
        raise ValueError("per-label limits must be positive")
    if k_param is None:
        k_param = (max((len(l) for l in labs), default=0)) + 1

    def pred(s):
        if len(s) > total_limit:
            return False
        counts: dict = {}
        for u in s:
            for lab in labs[u]:
                counts[lab] = counts.get(lab, 0) + 1
                if counts[lab] > limits[lab]:
                    return False
        return True

    def add_pred(u, members):
        if len(members) + 1 > total_limit:
            return False
        for lab in labs[u]:
            cap = limits[lab] - 1
            count = 0
            for x in members:
                if lab in labs[x]:
                    count += 1
                    if count > cap:
                        return False
        return True

    return IndependenceSystem(pred, len(labs), k_param=k_param,
                              class_tag="k_extendible", kind="labeled_limit",
                              add_predicate=add_pred)


def node_independent_set_system(n: int, edges: Iterable[Sequence[int]]) -> IndependenceSystem:
    """Vertex subsets spanning no edge of the supplied undirected graph."""
    adj: list[set[int]] = [set() for _ in range(n)]
    for e in edges:
        u, v = int(e[0]), int(e[1])
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) outside vertex range")
        adj[u].add(v)
        adj[v].add(u)
    d_max = max((len(a) for a in adj), default=0)

    def pred(s):
        for u in s:
            nbrs = adj[u]
            if len(nbrs) < len(s):
                if any(v in s for v in nbrs):
                    return False
            else:
                if any(v in nbrs for v in s if v != u):
                    return False
        return True

    def add_pred(u, members):
        nbrs = adj[u]
        return not any(v in nbrs for v in members)

    return IndependenceSystem(pred, n, k_param=max(d_max, 1),
                              class_tag="k_extendible",
                              kind="node_independent_set",
                              add_predicate=add_pred)


def planarity_system(n_vertices: int, edge_list: Sequence[Sequence[int]]) -> IndependenceSystem:
    """Edge subsets whose graph is planar; element i stands for edge i.

    Planarity is re-tested from scratch on every membership query, which
    is affordable at desk scale and keeps the oracle stateless.
    """
    edges = []
    seen = set()
    for e in edge_list:
        u, v = int(e[0]), int(e[1])
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        if not (0 <= u < n_vertices and 0 <= v < n_vertices):
            raise ValueError(f"edge ({u}, {v}) outside vertex range")
        key = frozenset((u, v))
        if key in seen:
            raise ValueError(f"parallel edge between {u} and {v}")
        seen.add(key)
        edges.append((u, v))
    if not edges:
        raise ValueError("empty ground set")

    def pred(s):
        return planarity_check([edges[i] for i in s])

    return IndependenceSystem(pred, len(edges), k_param=3,
                              class_tag="k_system", kind="planarity")


def intersect(a: IndependenceSystem, b: IndependenceSystem) -> IndependenceSystem:
    """Conjunction of two systems; the exchange parameters add."""
    if a.n != b.n:
        raise GroundSetError("systems live on different ground sets")

    def pred(s):
        return a.is_independent(s) and b.is_independent(s)

    def add_pred(u, members):
        return a.can_add(u, members) and b.can_add(u, members)

    return IndependenceSystem(pred, a.n, k_param=a.k_param + b.k_param,
                              class_tag="k_system", kind="intersection",
                              add_predicate=add_pred)


def make_system(spec: Mapping) -> IndependenceSystem:
    """Build a system from a JSON-style config mapping.

    Recognized ``type`` values: ``cardinality`` (n, rho), ``knapsack``
    (costs, budget), ``labeled_limit`` (labels, per_label_limit,
    total_limit, optional k_param), ``node_independent_set`` (n, edges),
    ``planarity`` (n_vertices, edges).  ``{"intersect": [specA, specB]}``
    combines two specs.
    """
    if "intersect" in spec:
        parts = spec["intersect"]
        if len(parts) != 2:
            raise ValueError("intersect expects exactly two specs")
        return intersect(make_system(parts[0]), make_system(parts[1]))
    kind = spec.get("type")
    if kind == "cardinality":
        return cardinality_system(int(spec["n"]), int(spec["rho"]))
    if kind == "knapsack":
        return knapsack_system(spec["costs"], float(spec["budget"]))
    if kind == "labeled_limit":
        return labeled_limit_system(spec["labels"], spec["per_label_limit"],
                                    int(spec["total_limit"]),
                                    spec.get("k_param"))
    if kind == "node_independent_set":
        return node_independent_set_system(int(spec["n"]), spec["edges"])
    if kind == "planarity":
        return planarity_system(int(spec["n_vertices"]), spec["edges"])
    raise UnsupportedConstraintError(f"unknown constraint spec {spec!r}")


def exact_rho(sys: IndependenceSystem, ground: Iterable[int] | None = None) -> int:
    """Size of the largest independent subset, by pruned enumeration.

    Walks the independent sets in id order, extending only while the
    remaining elements could still beat the current best.  Exact but
    limited to ground sets of at most EXACT_RHO_LIMIT elements.
    """
    ids = sorted(range(sys.n) if ground is None else set(ground))
    if len(ids) > EXACT_RHO_LIMIT:
        raise SizeLimitError(f"exact rho limited to {EXACT_RHO_LIMIT} elements")
    best = 0
    members: list[int] = []
    member_set: set[int] = set()

    def extend(pos: int):
        nonlocal best
        best = max(best, len(members))
        for idx in range(pos, len(ids)):
            if len(members) + (len(ids) - idx) <= best:
                return
            u = ids[idx]
            if sys.can_add(u, member_set):
                members.append(u)
                member_set.add(u)
                extend(idx + 1)
                member_set.discard(u)
                members.pop()

    extend(0)
    return best


def exchange_witness(sys: IndependenceSystem, a: Iterable[int],
                     b: Iterable[int]) -> bool:
    """Whether k * |B without A| >= |A without B| holds.

    ``a`` must be independent; ``b`` is expected to be a greedily built
    base (not checkable here).  Diagnostic used by the test suite.
    """
    a_set = set(a)
    b_set = set(b)
    if not sys.is_independent(a_set):
        raise ValueError("witness requires an independent first set")
    return sys.k_param * len(b_set - a_set) >= len(a_set - b_set)
