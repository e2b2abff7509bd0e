"""Finite weighted operators: graph generators, norms, and structure checks.

An operator is an n x n real matrix together with a probability weight
vector on coordinates (exact rationals, uniform by default).  Application
is plain matrix-vector multiplication; norms are taken with respect to the
weights.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

__all__ = [
    "WeightedOperator",
    "GraphSpec",
    "UnsupportedNormError",
    "adjacency",
    "gplus",
    "apply",
    "q_norm",
    "pq_norm",
    "bilinear",
    "adjoint",
    "self_adjoint_defect",
    "c_regularity",
    "positivity_defect",
    "scale",
]

GRAPH_KINDS = ("star", "empty", "cycle", "path", "complete", "edge_list", "erdos_renyi")


class UnsupportedNormError(ValueError):
    """Raised for (p, q, A) combinations outside the computable regimes."""


@dataclass(frozen=True)
class WeightedOperator:
    n: int
    matrix: np.ndarray
    weights: tuple[Fraction, ...]
    name: str = ""

    def __init__(self, matrix, weights=None, name: str = ""):
        m = np.array(matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"matrix must be square, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise ValueError("matrix entries must be finite")
        n = m.shape[0]
        if weights is None:
            ws = tuple(Fraction(1, n) for _ in range(n))
        else:
            ws = tuple(Fraction(w) for w in weights)
            if len(ws) != n:
                raise ValueError(f"{len(ws)} weights for n={n}")
            if any(w <= 0 for w in ws):
                raise ValueError("weights must be positive")
            if sum(ws) != 1:
                raise ValueError("weights must sum to exactly 1")
        m.setflags(write=False)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "weights", ws)
        object.__setattr__(self, "name", name)

    @property
    def weights_float(self) -> np.ndarray:
        return np.array([float(w) for w in self.weights])

    @property
    def uniform_weights(self) -> bool:
        return all(w == Fraction(1, self.n) for w in self.weights)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "matrix": self.matrix.tolist(),
            "weights": [f"{w.numerator}/{w.denominator}" for w in self.weights],
            "name": self.name,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "WeightedOperator":
        return cls(d["matrix"], d.get("weights"), d.get("name", ""))


@dataclass(frozen=True)
class GraphSpec:
    """Named generator or edge list for a finite simple graph."""

    kind: str
    n: int
    edges: tuple[tuple[int, int], ...] = field(default=())
    p: Optional[float] = None
    seed: Optional[int] = None

    def __post_init__(self):
        if self.kind not in GRAPH_KINDS:
            raise ValueError(f"unknown graph kind {self.kind!r}; choose from {GRAPH_KINDS}")
        if self.n < 1:
            raise ValueError("vertex count must be >= 1")
        if self.kind == "edge_list":
            seen = set()
            for u, v in self.edges:
                if u == v:
                    raise ValueError(f"loop at vertex {u}")
                if not (0 <= u < self.n and 0 <= v < self.n):
                    raise ValueError(f"edge ({u}, {v}) out of range for n={self.n}")
                key = (min(u, v), max(u, v))
                if key in seen:
                    raise ValueError(f"duplicate edge ({u}, {v})")
                seen.add(key)
        if self.kind == "erdos_renyi":
            if self.p is None or not 0 <= self.p <= 1:
                raise ValueError("erdos_renyi requires edge probability p in [0, 1]")

    def label(self) -> str:
        if self.kind == "erdos_renyi":
            return f"er:{self.n}:{self.p}:{self.seed or 0}"
        return f"{self.kind}:{self.n}"


def _edge_set(spec: GraphSpec) -> list[tuple[int, int]]:
    n = spec.n
    if spec.kind == "star":
        return [(0, i) for i in range(1, n)]
    if spec.kind == "empty":
        return []
    if spec.kind == "cycle":
        if n < 3:
            raise ValueError("cycle requires n >= 3")
        return [(i, (i + 1) % n) for i in range(n)]
    if spec.kind == "path":
        return [(i, i + 1) for i in range(n - 1)]
    if spec.kind == "complete":
        return [(i, j) for i in range(n) for j in range(i + 1, n)]
    if spec.kind == "edge_list":
        return [(min(u, v), max(u, v)) for u, v in spec.edges]
    if spec.kind == "erdos_renyi":
        rng = np.random.default_rng(spec.seed)
        edges = []
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < spec.p:
                    edges.append((i, j))
        return edges
    raise AssertionError(spec.kind)


def adjacency(spec: GraphSpec) -> WeightedOperator:
    """Symmetric 0/1 adjacency matrix with uniform weights."""
    m = np.zeros((spec.n, spec.n))
    for u, v in _edge_set(spec):
        m[u, v] = m[v, u] = 1.0
    return WeightedOperator(m, name=spec.label())


def gplus(spec: GraphSpec) -> WeightedOperator:
    """Adjacency of the graph plus an apex vertex adjacent to all others."""
    n = spec.n
    m = np.zeros((n + 1, n + 1))
    for u, v in _edge_set(spec):
        m[u, v] = m[v, u] = 1.0
    m[n, :n] = 1.0
    m[:n, n] = 1.0
    return WeightedOperator(m, name=f"gplus:{spec.label()}")


def apply(A: WeightedOperator, f: Sequence[float]) -> np.ndarray:
    v = np.asarray(f, dtype=float)
    if v.shape != (A.n,):
        raise ValueError(f"vector length {v.shape} does not match n={A.n}")
    return A.matrix @ v


def q_norm(f: Sequence[float], weights: Sequence[Fraction], q: float) -> float:
    """Weighted q-norm (sum_i w_i |f_i|^q)^(1/q); essential sup for q=inf.

    For integer q the power sum is evaluated in exact rational arithmetic.
    """
    if q < 1:
        raise ValueError("q must be >= 1")
    v = [float(x) for x in f]
    ws = [Fraction(w) for w in weights]
    if len(v) != len(ws):
        raise ValueError("length mismatch between vector and weights")
    if math.isinf(q):
        return max((abs(x) for x in v), default=0.0)
    if float(q).is_integer():
        qi = int(q)
        total = sum((w * abs(Fraction(x)) ** qi for x, w in zip(v, ws)), Fraction(0))
        if qi == 1:
            return float(total)
        return float(total) ** (1.0 / qi)
    total_f = float(sum(float(w) * abs(x) ** q for x, w in zip(v, ws)))
    return total_f ** (1.0 / q)


def _sup_inf_to_1(A: WeightedOperator) -> float:
    """Exact sup over f in {-1,1}^n of the weighted 1-norm of Af."""
    n = A.n
    if n > 20:
        raise UnsupportedNormError("exact (inf,1) enumeration limited to n <= 20")
    signs = np.array([[1.0 if bits >> i & 1 else -1.0 for i in range(n)] for bits in range(1 << n)])
    integral = np.allclose(A.matrix, np.round(A.matrix)) and np.max(np.abs(A.matrix)) < 1e6
    if A.uniform_weights and integral:
        # integer-valued images keep the max exact; divide once at the end
        sums = np.abs(signs @ np.round(A.matrix).T).sum(axis=1)
        return float(Fraction(int(round(sums.max()))) / n)
    vals = np.abs(signs @ A.matrix.T) @ A.weights_float
    return float(vals.max())


def pq_norm(A: WeightedOperator, p: float, q: float) -> float:
    """Operator (p,q)-norm in the supported regimes.

    Supported: (a) entrywise-nonnegative A with p=inf and any q >= 1,
    where the norm is the weighted q-norm of A applied to the all-ones
    vector; (b) any A with p=inf, q=1 and n <= 20, by exact enumeration
    over sign vectors.  Other regimes raise UnsupportedNormError.
    """
    if p < 1 or q < 1:
        raise ValueError("p and q must be >= 1")
    if math.isinf(p) and np.all(A.matrix >= 0):
        return q_norm(apply(A, np.ones(A.n)), A.weights, q)
    if math.isinf(p) and q == 1:
        return _sup_inf_to_1(A)
    raise UnsupportedNormError(
        "supported regimes: (p=inf, any q) for entrywise-nonnegative matrices, "
        "or (p=inf, q=1) with n <= 20 by sign enumeration"
    )


def bilinear(A: WeightedOperator, f: Sequence[float], g: Sequence[float]) -> float:
    """Weighted bilinear form: expectation of (Af) * g (exact accumulation)."""
    gf = np.asarray(g, dtype=float)
    if gf.shape != (A.n,):
        raise ValueError(f"vector length {gf.shape} does not match n={A.n}")
    af = apply(A, f)
    total = sum(
        (w * Fraction(float(x)) * Fraction(float(y)) for w, x, y in zip(A.weights, af, gf)),
        Fraction(0),
    )
    return float(total)


def adjoint(A: WeightedOperator) -> WeightedOperator:
    """The operator A* with (v,w)_A = (w,v)_{A*}: matrix W^{-1} A^T W."""
    w = A.weights_float
    m = (A.matrix.T * w[None, :]) / w[:, None]
    return WeightedOperator(m, A.weights, name=f"adjoint({A.name})" if A.name else "")


def self_adjoint_defect(A: WeightedOperator) -> float:
    """Max-abs entry of A^T W - W A; zero iff the bilinear form is symmetric."""
    w = A.weights_float
    d = A.matrix.T * w[None, :] - w[:, None] * A.matrix
    return float(np.max(np.abs(d))) if A.n else 0.0


def c_regularity(A: WeightedOperator, tol: float = 1e-9) -> Optional[float]:
    """Eigenvalue of the all-ones vector, if it is an eigenvector within tol."""
    d = apply(A, np.ones(A.n))
    c = float(d.mean())
    if np.max(np.abs(d - c)) <= tol:
        return c
    return None


def positivity_defect(A: WeightedOperator) -> float:
    """Zero iff A is positivity-preserving (entrywise nonnegative)."""
    return max(0.0, -float(A.matrix.min()))


def scale(A: WeightedOperator, c: float) -> WeightedOperator:
    """Explicitly scaled copy (e.g. 1/n for the dense-regime normalization)."""
    return WeightedOperator(A.matrix * c, A.weights, name=f"scale:{c}:{A.name}")
