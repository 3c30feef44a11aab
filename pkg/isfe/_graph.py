# Copyright 2025 iyanging
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from typing import Self, override

import numpy as np

from isfe._types import BoolMatrix, DensityVector, FloatMatrix, FloatVector, IntVector
from isfe._utils import frozen, row_blocks
from isfe.errors import (
    DimensionMismatchError,
    EmptyVertexSetError,
    InvalidGraphError,
    InvalidPartitionError,
    InvalidWeightedGraphError,
    VertexOutOfRangeError,
)

WEIGHT_TOLERANCE = 1e-12


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple undirected graph on ``[n]`` (0-based here).

    The adjacency matrix is symmetric, boolean and has a zero diagonal. It is copied and
    made read-only on construction.
    """

    adjacency: BoolMatrix

    def __post_init__(self) -> None:
        a = np.array(self.adjacency, dtype=np.bool_)

        if a.ndim != 2 or a.shape[0] != a.shape[1]:  # noqa: PLR2004
            raise InvalidGraphError(f"adjacency of shape {a.shape} is not square")

        if a.shape[0] == 0:
            raise InvalidGraphError("a graph needs at least one vertex")

        if a.diagonal().any():
            raise InvalidGraphError("adjacency has self-loops")

        if not np.array_equal(a, a.T):
            raise InvalidGraphError("adjacency is not symmetric")

        object.__setattr__(self, "adjacency", frozen(a))

    @classmethod
    def _trusted(cls, adjacency: BoolMatrix) -> Self:
        # samplers build symmetric zero-diagonal matrices themselves; skip the O(n^2) checks
        graph = object.__new__(cls)
        object.__setattr__(graph, "adjacency", frozen(adjacency))
        return graph

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Self:
        a = np.zeros((n, n), dtype=np.bool_)
        for u, v in edges:
            if not (0 <= u < n):
                raise VertexOutOfRangeError(u, n)
            if not (0 <= v < n):
                raise VertexOutOfRangeError(v, n)
            if u != v:
                a[u, v] = a[v, u] = True

        return cls(a)

    @classmethod
    def empty(cls, n: int) -> Self:
        return cls(np.zeros((n, n), dtype=np.bool_))

    @classmethod
    def complete(cls, n: int) -> Self:
        return cls(~np.eye(n, dtype=np.bool_))

    @property
    def n(self) -> int:
        return int(self.adjacency.shape[0])

    @property
    def edge_total(self) -> int:
        """Number of undirected edges."""
        return int(self.degrees().sum()) // 2

    def degrees(self) -> IntVector:
        return self.adjacency.sum(axis=1, dtype=np.int64)

    def edges(self) -> Iterator[tuple[int, int]]:
        rows, cols = np.nonzero(np.triu(self.adjacency, k=1))
        for u, v in zip(rows.tolist(), cols.tolist(), strict=True):
            yield u, v

    def induced_subgraph(self, vertices: Sequence[int] | IntVector) -> Graph:
        idx = _vertex_array(self, vertices)
        return Graph._trusted(self.adjacency[np.ix_(idx, idx)].copy())

    def permuted(self, order: Sequence[int] | IntVector) -> Graph:
        """Relabel so that new vertex ``i`` is old vertex ``order[i]``."""
        idx = np.asarray(order, dtype=np.int64)
        if sorted(idx.tolist()) != list(range(self.n)):
            raise InvalidGraphError(f"{len(idx)} labels do not form a permutation of [{self.n}]")

        return Graph._trusted(self.adjacency[np.ix_(idx, idx)].copy())

    @override
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return np.array_equal(self.adjacency, other.adjacency)

    @override
    def __repr__(self) -> str:
        return f"{self.__class__.__qualname__}(n={self.n}, edges={self.edge_total})"


@dataclass(frozen=True, eq=False)
class WeightedGraph:
    """Quotient-style weighted graph: vertex weights alpha_i, edge weights beta_ij."""

    vertex_weights: FloatVector
    edge_weights: FloatMatrix

    def __post_init__(self) -> None:
        alpha = np.array(self.vertex_weights, dtype=np.float64)
        beta = np.array(self.edge_weights, dtype=np.float64)
        k = alpha.shape[0]

        if alpha.ndim != 1 or k == 0:
            raise InvalidWeightedGraphError("vertex weights must be a nonempty vector")

        if beta.shape != (k, k):
            raise DimensionMismatchError("weighted graph", alpha.shape, beta.shape)

        if (alpha < 0).any() or abs(float(alpha.sum()) - 1.0) > WEIGHT_TOLERANCE:
            raise InvalidWeightedGraphError(f"vertex weights {alpha} are not a distribution")

        if (beta < 0).any() or (beta > 1).any() or not np.array_equal(beta, beta.T):
            raise InvalidWeightedGraphError("edge weights must be symmetric and lie in [0, 1]")

        object.__setattr__(self, "vertex_weights", frozen(alpha))
        object.__setattr__(self, "edge_weights", frozen(beta))

    @property
    def k(self) -> int:
        return int(self.vertex_weights.shape[0])


@dataclass(frozen=True, eq=False)
class Partition:
    """Surjective vertex -> class assignment; every class in ``[0, k)`` is nonempty."""

    assignment: IntVector
    k: int = field(init=False)

    def __post_init__(self) -> None:
        a = np.array(self.assignment, dtype=np.int64)

        if a.ndim != 1 or a.shape[0] == 0:
            raise InvalidPartitionError("assignment must be a nonempty vector")

        if a.min() < 0:
            raise InvalidPartitionError(f"negative class index {a.min()}")

        counts = np.bincount(a)
        if (counts == 0).any():
            empty = np.flatnonzero(counts == 0).tolist()
            raise InvalidPartitionError(f"classes {empty} are empty")

        object.__setattr__(self, "assignment", frozen(a))
        object.__setattr__(self, "k", int(counts.shape[0]))

    @classmethod
    def compacted(cls, assignment: Sequence[int] | IntVector) -> Self:
        """Drop empty classes, keeping the relative order of the remaining indices."""
        _, inverse = np.unique(np.asarray(assignment, dtype=np.int64), return_inverse=True)
        return cls(inverse.astype(np.int64))

    @classmethod
    def from_classes(cls, n: int, classes: Iterable[Iterable[int]]) -> Self:
        a = np.full(n, -1, dtype=np.int64)
        for j, members in enumerate(classes):
            for v in members:
                if not (0 <= v < n):
                    raise VertexOutOfRangeError(v, n)
                if a[v] != -1:
                    raise InvalidPartitionError(f"vertex {v} belongs to two classes")
                a[v] = j

        if (a == -1).any():
            missing = np.flatnonzero(a == -1).tolist()
            raise InvalidPartitionError(f"vertices {missing} have no class")

        return cls(a)

    @classmethod
    def trivial(cls, n: int) -> Self:
        return cls(np.zeros(n, dtype=np.int64))

    @classmethod
    def discrete(cls, n: int) -> Self:
        return cls(np.arange(n, dtype=np.int64))

    @property
    def n(self) -> int:
        return int(self.assignment.shape[0])

    @property
    def sizes(self) -> IntVector:
        return np.bincount(self.assignment, minlength=self.k).astype(np.int64)

    def classes(self) -> list[IntVector]:
        """Classes as sorted vertex index arrays, in class index order."""
        order = np.argsort(self.assignment, kind="stable")
        bounds = np.cumsum(self.sizes)[:-1]
        return [c.astype(np.int64) for c in np.split(order, bounds)]

    def relabeled(self, order: Sequence[int] | IntVector) -> Partition:
        """New class ``i`` is old class ``order[i]``."""
        old = np.asarray(order, dtype=np.int64)
        if sorted(old.tolist()) != list(range(self.k)):
            raise InvalidPartitionError(f"{old.tolist()} is not a permutation of the classes")

        inverse = np.empty_like(old)
        inverse[old] = np.arange(self.k)
        return Partition(inverse[self.assignment])

    def canonical(self) -> Partition:
        """Classes numbered by first appearance along the vertex order."""
        _, first_seen = np.unique(self.assignment, return_index=True)
        return self.relabeled(np.argsort(first_seen, kind="stable"))

    def same_grouping(self, other: Partition) -> bool:
        return self.n == other.n and np.array_equal(
            self.canonical().assignment,
            other.canonical().assignment,
        )

    def indicator(self) -> FloatMatrix:
        onehot = np.zeros((self.n, self.k), dtype=np.float64)
        onehot[np.arange(self.n), self.assignment] = 1.0
        return onehot

    @override
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return np.array_equal(self.assignment, other.assignment)

    @override
    def __repr__(self) -> str:
        return f"{self.__class__.__qualname__}(n={self.n}, k={self.k})"


def _vertex_array(graph: Graph, vertices: Iterable[int] | IntVector) -> IntVector:
    idx = np.unique(np.fromiter(vertices, dtype=np.int64))
    if idx.size and (idx[0] < 0 or idx[-1] >= graph.n):
        bad = int(idx[0]) if idx[0] < 0 else int(idx[-1])
        raise VertexOutOfRangeError(bad, graph.n)

    return idx


def _check_partition(graph: Graph, partition: Partition) -> None:
    if partition.n != graph.n:
        raise DimensionMismatchError("partition", partition.n, graph.n)


def edge_count(graph: Graph, xs: Iterable[int], ys: Iterable[int]) -> int:
    """c_G(X, Y): ordered pairs (i, j) in X x Y that are edges."""
    x = _vertex_array(graph, xs)
    y = _vertex_array(graph, ys)
    return int(graph.adjacency[np.ix_(x, y)].sum())


def edge_density(graph: Graph, xs: Iterable[int], ys: Iterable[int]) -> float:
    x = _vertex_array(graph, xs)
    y = _vertex_array(graph, ys)

    if x.size == 0:
        raise EmptyVertexSetError("X")
    if y.size == 0:
        raise EmptyVertexSetError("Y")

    return int(graph.adjacency[np.ix_(x, y)].sum()) / (x.size * y.size)


def class_counts(graph: Graph, partition: Partition) -> FloatMatrix:
    """n x k matrix whose entry (x, j) is c_G({x}, P_j)."""
    _check_partition(graph, partition)

    onehot = partition.indicator()
    counts = np.empty((graph.n, partition.k), dtype=np.float64)
    for rows in row_blocks(graph.n, graph.n):
        counts[rows] = graph.adjacency[rows].astype(np.float64) @ onehot

    return counts


def density_vectors(graph: Graph, partition: Partition) -> FloatMatrix:
    """Weighted edge-density vectors of every vertex, one per row.

    (|P_j|/n) * e_G({x}, P_j) = (|P_j|/n) * c_G({x}, P_j) / |P_j| = c_G({x}, P_j) / n.
    """
    return class_counts(graph, partition) / graph.n


def density_vector(graph: Graph, partition: Partition, x: int) -> DensityVector:
    _check_partition(graph, partition)
    if not (0 <= x < graph.n):
        raise VertexOutOfRangeError(x, graph.n)

    return (graph.adjacency[x].astype(np.float64) @ partition.indicator()) / graph.n


def l1_distance(a: DensityVector, b: DensityVector) -> float:
    if a.shape != b.shape:
        raise DimensionMismatchError("L1 distance", a.shape, b.shape)

    return float(np.abs(a - b).sum())


def quotient(graph: Graph, partition: Partition) -> WeightedGraph:
    """G/P with vertex weights |P_i|/n and edge weights e_G(P_i, P_j).

    Diagonal blocks keep the |P_i|^2 denominator, so within-class densities carry the
    downward bias of the zero diagonal.
    """
    sizes = partition.sizes.astype(np.float64)
    between = partition.indicator().T @ class_counts(graph, partition)
    beta = between / np.outer(sizes, sizes)

    return WeightedGraph(vertex_weights=sizes / graph.n, edge_weights=beta)
