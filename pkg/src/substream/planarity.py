"""Left-right planarity test (decision only).

Implements the path-addition planarity criterion of de Fraysseix and de
Mendez in Brandes' left-right formulation: orient the graph by DFS, sort
out-edges by nesting depth, then check that the back edges admit a
consistent left/right partition using a stack of conflict pairs.  Both DFS
passes are iterative, so edge sets of any size are handled without
touching the interpreter recursion limit.

Only the boolean answer is produced; no embedding is constructed.
"""

from __future__ import annotations

from typing import Hashable, Iterable, Sequence


class _Interval:
    """Run of back edges that must share one side of the tree."""

    __slots__ = ("low", "high")

    def __init__(self, low=None, high=None):
        self.low = low
        self.high = high

    def empty(self):
        return self.low is None and self.high is None

    def copy(self):
        return _Interval(self.low, self.high)


class _ConflictPair:
    """Two intervals forced onto opposite sides."""

    __slots__ = ("left", "right")

    def __init__(self, left=None, right=None):
        self.left = left if left is not None else _Interval()
        self.right = right if right is not None else _Interval()

    def swap(self):
        self.left, self.right = self.right, self.left


def _normalize(edges: Iterable[Sequence[Hashable]]):
    """Validate and deduplicate an undirected simple edge list."""
    seen = set()
    out = []
    for e in edges:
        u, v = e[0], e[1]
        if u == v:
            raise ValueError(f"self-loop at vertex {u!r}")
        key = frozenset((u, v))
        if key in seen:
            raise ValueError(f"parallel edge between {u!r} and {v!r}")
        seen.add(key)
        out.append((u, v))
    return out


def planarity_check(edges: Iterable[Sequence[Hashable]]) -> bool:
    """True iff the graph consisting of exactly these edges is planar.

    ``edges`` is a simple undirected edge list; self-loops and parallel
    edges are rejected.  Vertices are whatever hashable endpoints the
    edges mention, so isolated vertices never enter the picture (they
    cannot affect planarity).
    """
    edge_list = _normalize(edges)
    if not edge_list:
        return True

    adj: dict[Hashable, list] = {}
    for u, v in edge_list:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)

    n = len(adj)
    if n > 2 and len(edge_list) > 3 * n - 6:
        return False

    height: dict[Hashable, int] = {}
    lowpt: dict[tuple, int] = {}
    lowpt2: dict[tuple, int] = {}
    nesting: dict[tuple, int] = {}
    parent_edge: dict[Hashable, tuple | None] = {}
    oriented: dict[Hashable, list] = {v: [] for v in adj}
    directed = set()

    roots = []
    for root in adj:
        if root in height:
            continue
        height[root] = 0
        parent_edge[root] = None
        roots.append(root)
        _orient_from(root, adj, height, lowpt, lowpt2, nesting,
                     parent_edge, oriented, directed)

    ordered = {v: sorted(ws, key=lambda w: nesting[(v, w)])
               for v, ws in oriented.items()}

    state = _TestState(height, lowpt, parent_edge, ordered)
    for root in roots:
        if not state.run(root):
            return False
    return True


def _orient_from(root, adj, height, lowpt, lowpt2, nesting,
                 parent_edge, oriented, directed):
    """Iterative DFS orientation computing lowpoints and nesting depth."""
    stack = [root]
    index = {root: 0}
    resume = set()

    while stack:
        v = stack.pop()
        e = parent_edge[v]
        neighbors = adj[v]
        i = index[v]
        descended = False
        while i < len(neighbors):
            w = neighbors[i]
            vw = (v, w)
            if vw not in resume:
                if vw in directed or (w, v) in directed:
                    i += 1
                    continue
                directed.add(vw)
                oriented[v].append(w)
                lowpt[vw] = height[v]
                lowpt2[vw] = height[v]
                if w not in height:
                    # tree edge: descend into w, come back to vw afterwards
                    parent_edge[w] = vw
                    height[w] = height[v] + 1
                    index[v] = i
                    index[w] = 0
                    resume.add(vw)
                    stack.append(v)
                    stack.append(w)
                    descended = True
                    break
                lowpt[vw] = height[w]
            else:
                resume.discard(vw)
            nesting[vw] = 2 * lowpt[vw]
            if lowpt2[vw] < height[v]:
                nesting[vw] += 1
            if e is not None:
                if lowpt[vw] < lowpt[e]:
                    lowpt2[e] = min(lowpt[e], lowpt2[vw])
                    lowpt[e] = lowpt[vw]
                elif lowpt[vw] > lowpt[e]:
                    lowpt2[e] = min(lowpt2[e], lowpt[vw])
                else:
                    lowpt2[e] = min(lowpt2[e], lowpt2[vw])
            i += 1
        if not descended:
            index[v] = i


class _TestState:
    """Second DFS: maintain conflict pairs and reject on a forced clash."""

    __slots__ = ("height", "lowpt", "parent_edge", "ordered",
                 "stack", "stack_bottom", "lowpt_edge", "ref")

    def __init__(self, height, lowpt, parent_edge, ordered):
        self.height = height
        self.lowpt = lowpt
        self.parent_edge = parent_edge
        self.ordered = ordered
        self.stack: list[_ConflictPair] = []
        self.stack_bottom: dict[tuple, _ConflictPair | None] = {}
        self.lowpt_edge: dict[tuple, tuple] = {}
        self.ref: dict[tuple, tuple | None] = {}

    def _top(self):
        return self.stack[-1] if self.stack else None

    def _conflicting(self, interval, b):
        return (not interval.empty()
                and self.lowpt[interval.high] > self.lowpt[b])

    def run(self, root) -> bool:
        dfs = [root]
        index = {root: 0}
        resume = set()

        while dfs:
            v = dfs.pop()
            e = self.parent_edge[v]
            out_edges = self.ordered[v]
            i = index[v]
            descended = False
            while i < len(out_edges):
                w = out_edges[i]
                ei = (v, w)
                if ei not in resume:
                    self.stack_bottom[ei] = self._top()
                    if ei == self.parent_edge[w]:
                        # tree edge: process subtree first
                        index[v] = i
                        index[w] = 0
                        resume.add(ei)
                        dfs.append(v)
                        dfs.append(w)
                        descended = True
                        break
                    self.lowpt_edge[ei] = ei
                    self.stack.append(_ConflictPair(right=_Interval(ei, ei)))
                else:
                    resume.discard(ei)
                if self.lowpt[ei] < self.height[v]:
                    # ei has a return edge below v
                    if w == out_edges[0]:
                        self.lowpt_edge[e] = self.lowpt_edge[ei]
                    elif not self._add_constraints(ei, e):
                        return False
                i += 1
            if descended:
                continue
            index[v] = i
            if e is not None:
                self._trim_back_edges(e)
        return True

    def _add_constraints(self, ei, e) -> bool:
        lowpt = self.lowpt
        merged = _ConflictPair()
        # merge return edges of ei into the right interval
        while True:
            q = self.stack.pop()
            if not q.left.empty():
                q.swap()
            if not q.left.empty():
                return False
            if lowpt[q.right.low] > lowpt[e]:
                if merged.right.empty():
                    merged.right = q.right.copy()
                else:
                    self.ref[merged.right.low] = q.right.high
                merged.right.low = q.right.low
            else:
                # all of q returns to lowpt(e): align with the parent chain
                self.ref[q.right.low] = self.lowpt_edge[e]
            if self._top() is self.stack_bottom[ei]:
                break
        # merge conflicting return edges of earlier siblings into the left
        while (self._conflicting(self._top().left, ei)
               or self._conflicting(self._top().right, ei)):
            q = self.stack.pop()
            if self._conflicting(q.right, ei):
                q.swap()
            if self._conflicting(q.right, ei):
                return False
            self.ref[merged.right.low] = q.right.high
            if q.right.low is not None:
                merged.right.low = q.right.low
            if merged.left.empty():
                merged.left = q.left.copy()
            else:
                self.ref[merged.left.low] = q.left.high
            merged.left.low = q.left.low
        if not (merged.left.empty() and merged.right.empty()):
            self.stack.append(merged)
        return True

    def _lowest(self, pair):
        if pair.left.empty():
            return self.lowpt[pair.right.low]
        if pair.right.empty():
            return self.lowpt[pair.left.low]
        return min(self.lowpt[pair.left.low], self.lowpt[pair.right.low])

    def _trim_back_edges(self, e):
        """Drop back edges that return to the endpoint ``e`` leads into."""
        u = e[0]
        height_u = self.height[u]
        while self.stack and self._lowest(self._top()) == height_u:
            self.stack.pop()
        if self.stack:
            p = self.stack.pop()
            while p.left.high is not None and p.left.high[1] == u:
                p.left.high = self.ref.get(p.left.high)
            if p.left.high is None and p.left.low is not None:
                self.ref[p.left.low] = p.right.low
                p.left.low = None
            while p.right.high is not None and p.right.high[1] == u:
                p.right.high = self.ref.get(p.right.high)
            if p.right.high is None and p.right.low is not None:
                self.ref[p.right.low] = p.left.low
                p.right.low = None
            self.stack.append(p)
