"""Concrete non-negative submodular objectives used by the experiments and
the adversarial instances.

Every constructor returns a memoized :class:`~substream.core.Objective`
over integer ids ``0..n-1``.  Oracles are immutable after construction and
safe for concurrent reads.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .core import NumericError, Objective, SizeLimitError
from .prng import SplitMix64

# Largest subset a log-determinant oracle will factorize.
LOGDET_MAX_SUBSET = 512


@dataclass(frozen=True)
class CutGraph:
    """Weighted directed graph; vertices are ``0..n_vertices-1``."""

    n_vertices: int
    edges: tuple[tuple[int, int, float], ...]

    def __post_init__(self):
        if self.n_vertices <= 0:
            raise ValueError("graph needs at least one vertex")
        object.__setattr__(self, "edges", tuple(
            (int(u), int(v), float(w)) for u, v, w in self.edges))
        for u, v, w in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n_vertices and 0 <= v < self.n_vertices):
                raise ValueError(f"edge ({u}, {v}) outside vertex range")
            if w < 0:
                raise ValueError(f"negative edge weight {w}")

    def total_weight(self) -> float:
        return sum(w for _, _, w in self.edges)


@dataclass(frozen=True)
class KeywordTable:
    """Per-element keyword sets and non-negative values."""

    words: tuple[frozenset[str], ...]
    values: tuple[float, ...]

    def __post_init__(self):
        if len(self.words) != len(self.values):
            raise ValueError("words and values must align")
        object.__setattr__(self, "words", tuple(frozenset(w) for w in self.words))
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        for v in self.values:
            if v < 0:
                raise ValueError(f"negative keyword value {v}")

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class ReservoirConfig:
    """Row-sampling setup for estimated facility-location evaluation."""

    r_cap: int
    seed: int = 0

    def __post_init__(self):
        if self.r_cap <= 0:
            raise ValueError("r_cap must be positive")


def _as_weight_list(weights) -> list[float]:
    if isinstance(weights, Mapping):
        n = len(weights)
        if set(weights) != set(range(n)):
            raise ValueError("weight map keys must be exactly 0..n-1")
        return [float(weights[i]) for i in range(n)]
    return [float(w) for w in weights]


def make_modular(weights) -> Objective:
    """Additive objective: the value of a set is the sum of its weights."""
    w = _as_weight_list(weights)
    for x in w:
        if x < 0:
            raise ValueError(f"negative weight {x}")

    def fn(ids):
        return sum(w[u] for u in ids)

    def marginal_fn(u, members):
        return w[u]

    return Objective(fn, len(w), monotone=True, marginal_fn=marginal_fn)


def make_directed_cut(g: CutGraph) -> Objective:
    """Weight of edges leaving the chosen set; non-monotone in general."""
    out_adj: list[dict[int, float]] = [{} for _ in range(g.n_vertices)]
    in_adj: list[dict[int, float]] = [{} for _ in range(g.n_vertices)]
    for u, v, w in g.edges:
        out_adj[u][v] = out_adj[u].get(v, 0.0) + w
        in_adj[v][u] = in_adj[v].get(u, 0.0) + w
    out_total = [sum(adj.values()) for adj in out_adj]

    def fn(ids):
        members = set(ids)
        total = 0.0
        for u in ids:
            total += out_total[u]
            for v, w in out_adj[u].items():
                if v in members:
                    total -= w
        return total

    def marginal_fn(u, members):
        gain = out_total[u]
        for v, w in out_adj[u].items():
            if v in members:
                gain -= w
        for s, w in in_adj[u].items():
            if s in members:
                gain -= w
        return gain

    return Objective(fn, g.n_vertices, monotone=False, marginal_fn=marginal_fn)


def validate_similarity(m: np.ndarray) -> np.ndarray:
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("similarity matrix must be square")
    if np.any(m < 0):
        raise ValueError("similarity entries must be non-negative")
    if np.max(np.abs(m - m.T)) > 1e-12:
        raise ValueError("similarity matrix must be symmetric within 1e-12")
    return m


def make_coverage_minus_dispersion(m: np.ndarray) -> Objective:
    """Total similarity covered by the set minus similarity inside it."""
    m = validate_similarity(m)
    row_sums = m.sum(axis=1)

    def fn(ids):
        if not ids:
            return 0.0
        idx = list(ids)
        return float(row_sums[idx].sum() - m[np.ix_(idx, idx)].sum())

    def marginal_fn(u, members):
        idx = list(members)
        inner = float(m[u, idx].sum()) if idx else 0.0
        return float(row_sums[u]) - 2.0 * inner - float(m[u, u])

    return Objective(fn, m.shape[0], monotone=False, marginal_fn=marginal_fn)


def make_facility_location(m: np.ndarray,
                           estimator: ReservoirConfig | None = None) -> Objective:
    """Mean best-similarity coverage; the empty set covers nothing.

    With ``estimator`` given, the outer mean runs over a uniform sample of
    ``r_cap`` rows (drawn once, ascending order) rescaled by ``1/r_cap``;
    ``r_cap == n`` reproduces the exact value bit for bit.
    """
    m = validate_similarity(m)
    n = m.shape[0]
    if estimator is None:
        rows = m
        divisor = n
    else:
        idx = SplitMix64(estimator.seed).sample_indices(n, estimator.r_cap)
        rows = m[idx, :]
        divisor = len(idx)

    def fn(ids):
        if not ids:
            return 0.0
        return float(rows[:, list(ids)].max(axis=1).sum()) / divisor

    return Objective(fn, n, monotone=True)


def make_logdet(m: np.ndarray, alpha: float) -> Objective:
    """Log-determinant diversity of the chosen principal submatrix."""
    m = validate_similarity(m)
    if alpha <= 0:
        raise ValueError("alpha must be positive")

    def fn(ids):
        if not ids:
            return 0.0
        if len(ids) > LOGDET_MAX_SUBSET:
            raise SizeLimitError(f"subset larger than {LOGDET_MAX_SUBSET}")
        idx = list(ids)
        a = np.eye(len(idx)) + alpha * m[np.ix_(idx, idx)]
        try:
            chol = np.linalg.cholesky(a)
        except np.linalg.LinAlgError as exc:
            raise NumericError(f"factorization failed for subset {idx}") from exc
        return float(2.0 * np.sum(np.log(np.diag(chol))))

    return Objective(fn, m.shape[0], monotone=True)


def make_sqrt_coverage(kw: KeywordTable) -> Objective:
    """Square-root keyword coverage: sum over words of the root of the
    total value contributed by set members carrying that word."""

    def fn(ids):
        totals: dict[str, float] = {}
        for u in ids:
            val = kw.values[u]
            if val <= 0.0:
                continue
            for w in kw.words[u]:
                totals[w] = totals.get(w, 0.0) + val
        return sum(math.sqrt(t) for t in totals.values())

    return Objective(fn, len(kw), monotone=True)


def similarity_from_features(features, lam: float) -> np.ndarray:
    """Gaussian-style similarity ``exp(-lam * euclidean distance)``."""
    if lam < 0:
        raise ValueError("lambda must be non-negative")
    feats = np.asarray(features, dtype=float)
    if feats.ndim == 1:
        feats = feats.reshape(-1, 1)
    if feats.ndim != 2:
        raise ValueError("features must be a 2-d array of row vectors")
    diff = feats[:, None, :] - feats[None, :, :]
    dist = np.sqrt((diff * diff).sum(axis=2))
    m = np.exp(-lam * dist)
    np.fill_diagonal(m, 1.0)
    # Symmetrize away any rounding asymmetry from the distance computation.
    return (m + m.T) / 2.0


def load_features(path) -> np.ndarray:
    """Feature CSV with header ``id,f1,...,fd`` and one element per row."""
    rows: dict[int, list[float]] = {}
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if not header or header[0].strip() != "id":
            raise ValueError("feature CSV must start with an 'id' header column")
        width = len(header) - 1
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) - 1 != width:
                raise ValueError(f"line {lineno}: expected {width} features")
            ident = int(row[0])
            if ident in rows:
                raise ValueError(f"line {lineno}: duplicate id {ident}")
            rows[ident] = [float(x) for x in row[1:]]
    if set(rows) != set(range(len(rows))):
        raise ValueError("feature ids must be exactly 0..n-1")
    return np.array([rows[i] for i in range(len(rows))], dtype=float)


def load_keyword_table(path) -> KeywordTable:
    """Keyword CSV with rows ``id,value,word1;word2;...``."""
    rows: dict[int, tuple[float, frozenset[str]]] = {}
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        for lineno, row in enumerate(reader, start=1):
            if not row or row[0].startswith("#"):
                continue
            if len(row) < 2:
                raise ValueError(f"line {lineno}: expected id,value,words")
            ident = int(row[0])
            if ident in rows:
                raise ValueError(f"line {lineno}: duplicate id {ident}")
            value = float(row[1])
            words = frozenset(w for w in (row[2].split(";") if len(row) > 2 else ()) if w)
            rows[ident] = (value, words)
    if set(rows) != set(range(len(rows))):
        raise ValueError("keyword ids must be exactly 0..n-1")
    return KeywordTable(words=tuple(rows[i][1] for i in range(len(rows))),
                        values=tuple(rows[i][0] for i in range(len(rows))))
