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

from abc import ABC, abstractmethod
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from functools import cached_property
from typing import override

import numpy as np
import numpy.typing as npt

from isfe._graph import WEIGHT_TOLERANCE, Graph, Partition, WeightedGraph, quotient
from isfe._random import stream
from isfe._types import FloatMatrix, FloatVector, IntVector
from isfe._utils import frozen
from isfe.errors import (
    CoordinateOutOfRangeError,
    DimensionMismatchError,
    InvalidStepGraphonError,
    ParameterRangeError,
)

type Evaluator = Callable[[FloatMatrix, FloatMatrix], npt.ArrayLike]


class Graphon(ABC):
    """Symmetric measurable map ``[0,1]^2 -> [0,1]``.

    Graphon Hierarchy:

    ```
    Graphon
    |
    |- StepGraphon      piecewise constant on consecutive intervals J_1..J_k
    |
    |- AnalyticGraphon  closed-form evaluator
    ```

    ``evaluate`` is the vectorized, unchecked kernel used by the samplers; ``eval`` is
    the checked scalar lookup.
    """

    @abstractmethod
    def evaluate(self, x: npt.ArrayLike, y: npt.ArrayLike) -> FloatMatrix:
        raise NotImplementedError

    @override
    @abstractmethod
    def __repr__(self) -> str:
        raise NotImplementedError

    def eval(self, x: float, y: float) -> float:
        if not (0.0 <= x <= 1.0 and 0.0 <= y <= 1.0):
            raise CoordinateOutOfRangeError(x, y)

        return float(self.evaluate(x, y))

    def values_at(self, latents: FloatVector) -> FloatMatrix:
        """M_ij = W(U_i, U_j)."""
        return self.evaluate(latents[:, None], latents[None, :])


class StepGraphon(Graphon):
    widths: FloatVector
    values: FloatMatrix
    breakpoints: FloatVector

    def __init__(self, widths: npt.ArrayLike, values: npt.ArrayLike) -> None:
        w = np.array(widths, dtype=np.float64, ndmin=1)
        v = np.array(values, dtype=np.float64, ndmin=2)
        k = w.shape[0]

        if w.ndim != 1 or k == 0:
            raise InvalidStepGraphonError("widths must be a nonempty vector")

        if v.shape != (k, k):
            raise DimensionMismatchError("step graphon", w.shape, v.shape)

        if (w <= 0).any():
            raise InvalidStepGraphonError(f"widths {w.tolist()} contain a step of zero width")

        if abs(float(w.sum()) - 1.0) > WEIGHT_TOLERANCE:
            raise InvalidStepGraphonError(f"widths sum to {w.sum()!r}, not 1")

        if (v < 0).any() or (v > 1).any():
            raise InvalidStepGraphonError("values must lie in [0, 1]")

        if not np.allclose(v, v.T, rtol=0, atol=WEIGHT_TOLERANCE):
            raise InvalidStepGraphonError("values are not symmetric")

        edges = np.concatenate(([0.0], np.cumsum(w)))
        edges[-1] = 1.0

        self.widths = frozen(w)
        self.values = frozen((v + v.T) / 2)
        self.breakpoints = frozen(edges)

    @property
    def k(self) -> int:
        return int(self.widths.shape[0])

    def step_of(self, x: npt.ArrayLike) -> IntVector:
        # [a, b) steps with the last one closed, so 1.0 falls into the final step
        return np.searchsorted(self.breakpoints[1:-1], x, side="right").astype(np.int64)

    @override
    def evaluate(self, x: npt.ArrayLike, y: npt.ArrayLike) -> FloatMatrix:
        return self.values[self.step_of(x), self.step_of(y)]

    def permuted(self, order: Sequence[int] | IntVector) -> StepGraphon:
        """Reorder steps so that new step ``i`` is old step ``order[i]``."""
        idx = np.asarray(order, dtype=np.int64)
        return StepGraphon(self.widths[idx], self.values[np.ix_(idx, idx)])

    def row_averages(self) -> FloatVector:
        return self.values @ self.widths

    @override
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StepGraphon):
            return NotImplemented
        return np.array_equal(self.widths, other.widths) and np.array_equal(
            self.values, other.values
        )

    @override
    def __hash__(self) -> int:
        return hash((self.widths.tobytes(), self.values.tobytes()))

    @override
    def __repr__(self) -> str:
        return f"{self.__class__.__qualname__}(k={self.k})"


class AnalyticGraphon(Graphon):
    name: str
    _evaluator: Evaluator

    def __init__(self, name: str, evaluator: Evaluator) -> None:
        self.name = name
        self._evaluator = evaluator

    @override
    def evaluate(self, x: npt.ArrayLike, y: npt.ArrayLike) -> FloatMatrix:
        xs, ys = np.broadcast_arrays(
            np.asarray(x, dtype=np.float64),
            np.asarray(y, dtype=np.float64),
        )
        return np.asarray(self._evaluator(xs, ys), dtype=np.float64)

    @override
    def __repr__(self) -> str:
        return f"{self.__class__.__qualname__}({self.name})"


@dataclass(frozen=True, eq=False)
class GraphonSample:
    """A W-random graph together with its latent uniforms U_i."""

    graph: Graph
    latents: FloatVector
    graphon: Graphon

    @cached_property
    def value_matrix(self) -> FloatMatrix:
        """M_ij = W(U_i, U_j), computed on first access."""
        return frozen(self.graphon.values_at(self.latents))

    @property
    def n(self) -> int:
        return self.graph.n


def _row_probabilities(graphon: Graphon, latents: FloatVector) -> Callable[[int], FloatVector]:
    """W(U_i, U_j) for every j > i, with step indices looked up once for a step graphon."""
    if isinstance(graphon, StepGraphon):
        steps = graphon.step_of(latents)
        values = graphon.values
        return lambda i: values[steps[i], steps[i + 1 :]]

    return lambda i: graphon.evaluate(latents[i], latents[i + 1 :])


def _draw_edges(graphon: Graphon, latents: FloatVector, rng: np.random.Generator) -> Graph:
    n = latents.shape[0]
    a = np.zeros((n, n), dtype=np.bool_)

    row = _row_probabilities(graphon, latents)

    # row-major order over pairs i < j is part of the reproducibility contract
    for i in range(n - 1):
        a[i, i + 1 :] = rng.random(n - i - 1) < row(i)

    a |= a.T
    return Graph._trusted(a)  # noqa: SLF001


def _check_size(n: int) -> None:
    if n < 1:
        raise ParameterRangeError("n", n, "a positive integer")


def sample(graphon: Graphon, n: int, seed: int) -> GraphonSample:
    """Draw G ~ G(n, W): U_i iid Uniform[0,1], then edge {i,j} ~ Bernoulli(W(U_i, U_j))."""
    _check_size(n)

    rng = stream("sample", seed)
    latents = frozen(rng.random(n))
    graph = _draw_edges(graphon, latents, rng)

    return GraphonSample(graph=graph, latents=latents, graphon=graphon)


def grid_sample(graphon: Graphon, n: int, seed: int) -> GraphonSample:
    """Like ``sample`` but with the deterministic sorted latents U_i = (i - 0.5) / n."""
    _check_size(n)

    rng = stream("grid_sample", seed)
    latents = frozen((np.arange(1, n + 1, dtype=np.float64) - 0.5) / n)
    graph = _draw_edges(graphon, latents, rng)

    return GraphonSample(graph=graph, latents=latents, graphon=graphon)


def sample_with_latents(graphon: Graphon, latents: npt.ArrayLike, seed: int) -> GraphonSample:
    """Redraw edges for fixed latents; edges are independent given the latents."""
    u = np.array(latents, dtype=np.float64, ndmin=1)
    _check_size(u.shape[0])
    if (u < 0).any() or (u > 1).any():
        raise ParameterRangeError("latents", u.tolist(), "values in [0, 1]")

    graph = _draw_edges(graphon, u, stream("sample_with_latents", seed))
    return GraphonSample(graph=graph, latents=frozen(u), graphon=graphon)


def step_graphon_of_weighted_graph(weighted: WeightedGraph) -> StepGraphon:
    return StepGraphon(weighted.vertex_weights, weighted.edge_weights)


def step_graphon_of_graph(graph: Graph) -> StepGraphon:
    """W_G: steps of width 1/n with values G_ij."""
    return StepGraphon(np.full(graph.n, 1.0 / graph.n), graph.adjacency.astype(np.float64))


def estimate_step_graphon(graph: Graph, partition: Partition) -> StepGraphon:
    """W_{G/P}."""
    return step_graphon_of_weighted_graph(quotient(graph, partition))


def discretize(graphon: Graphon, resolution: int) -> StepGraphon:
    """``resolution`` equal steps valued at the midpoints of the grid cells."""
    if resolution < 1:
        raise ParameterRangeError("resolution", resolution, "a positive integer")

    mids = (np.arange(resolution, dtype=np.float64) + 0.5) / resolution
    values = graphon.evaluate(mids[:, None], mids[None, :])

    return StepGraphon(np.full(resolution, 1.0 / resolution), values)
