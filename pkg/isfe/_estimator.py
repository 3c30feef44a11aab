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

import logging
from abc import ABC, abstractmethod
from collections.abc import Iterable
from dataclasses import dataclass, replace
from typing import Literal, override

import numpy as np

from isfe._annotations import spec_constructor
from isfe._graph import Graph, Partition, density_vectors, quotient
from isfe._graphon import StepGraphon, estimate_step_graphon
from isfe._metrics import mse
from isfe._random import stream
from isfe._types import FloatMatrix, FloatVector
from isfe.errors import DimensionMismatchError, ParameterRangeError

type PassOutcome = Literal["min_classes", "epsilon_floor", "max_passes"]
type StopReason = Literal["iterations", "mse_stalled"]

DEFAULT_DECAY = 0.5
DEFAULT_EPSILON_FLOOR = 2.0**-30
DEFAULT_MAX_PASSES = 64


@dataclass(kw_only=True, frozen=True)
class IsfeConfig:
    """Knobs of the iterative step-function estimator.

    ``stop_threshold`` only has an effect when the latent value matrix is known.
    """

    min_classes: int
    decay: float = DEFAULT_DECAY
    max_iterations: int = 1
    epsilon_floor: float = DEFAULT_EPSILON_FLOOR
    max_passes: int = DEFAULT_MAX_PASSES
    stop_threshold: float = 0.0

    def __post_init__(self) -> None:
        if self.min_classes < 1:
            raise ParameterRangeError("min_classes", self.min_classes, "a positive integer")
        if not (0.0 < self.decay < 1.0):
            raise ParameterRangeError("decay", self.decay, "in (0, 1)")
        if self.max_iterations < 0:
            raise ParameterRangeError("max_iterations", self.max_iterations, "nonnegative")
        if not self.epsilon_floor > 0:
            raise ParameterRangeError("epsilon_floor", self.epsilon_floor, "positive")
        if self.max_passes < 1:
            raise ParameterRangeError("max_passes", self.max_passes, "a positive integer")
        if self.stop_threshold < 0:
            raise ParameterRangeError("stop_threshold", self.stop_threshold, "nonnegative")


@dataclass(kw_only=True, frozen=True)
class IterationRecord:
    passes: int
    epsilon: float
    outcome: PassOutcome
    classes: int


@dataclass(kw_only=True, frozen=True)
class EstimationTrace:
    """Per-iteration state of one estimator run; index 0 is the initial partition.

    ``iterations[t]`` describes how ``partitions[t + 1]`` was found, and ``mse`` is
    empty unless the latent value matrix was supplied. An MSE stall that made the
    estimate no better is not recorded, so ``mse[-1]`` is then the lowest error seen.
    """

    partitions: list[Partition]
    step_graphons: list[StepGraphon]
    value_estimates: list[FloatMatrix]
    iterations: list[IterationRecord]
    mse: list[float]
    stop_reason: StopReason

    @property
    def final_partition(self) -> Partition:
        return self.partitions[-1]

    @property
    def final_graphon(self) -> StepGraphon:
        return self.step_graphons[-1]

    @property
    def final_estimate(self) -> FloatMatrix:
        return self.value_estimates[-1]

    @property
    def iteration_count(self) -> int:
        return len(self.iterations)


def _assignment_pass(vectors: FloatMatrix, epsilon: float) -> Partition:
    n = vectors.shape[0]
    assignment = np.zeros(n, dtype=np.int64)
    centroids = np.empty_like(vectors)
    centroids[0] = vectors[0]
    m = 1

    for i in range(1, n):
        distances = np.abs(centroids[:m] - vectors[i]).sum(axis=1)
        # argmin returns the lowest class index among equal distances
        j = int(np.argmin(distances))

        if distances[j] < epsilon:
            assignment[i] = j
        else:
            centroids[m] = vectors[i]
            assignment[i] = m
            m += 1

    return Partition(assignment)


def _iterate(
    graph: Graph,
    old: Partition,
    min_classes: int,
    decay: float,
    epsilon_floor: float,
    max_passes: int,
) -> tuple[Partition, IterationRecord]:
    vectors = density_vectors(graph, old)

    epsilon = 1.0
    passes = 0
    while True:
        q = _assignment_pass(vectors, epsilon)
        passes += 1

        if q.k >= min_classes:
            outcome: PassOutcome = "min_classes"
            break

        epsilon *= decay
        if epsilon < epsilon_floor:
            outcome = "epsilon_floor"
            break
        if passes >= max_passes:
            outcome = "max_passes"
            break

    record = IterationRecord(passes=passes, epsilon=epsilon, outcome=outcome, classes=q.k)
    return q, record


def isfe_iteration(
    graph: Graph,
    old: Partition,
    min_classes: int,
    decay: float = DEFAULT_DECAY,
    epsilon_floor: float = DEFAULT_EPSILON_FLOOR,
    max_passes: int = DEFAULT_MAX_PASSES,
) -> Partition:
    """One sweep of greedy centroid clustering on the weighted edge-density vectors.

    Every pass restarts from Q = {{0}} with vertex 0 as the first centroid, and at least
    one pass always runs. Centroid vectors are taken against ``old``, never against the
    partition being built.
    """
    cfg = IsfeConfig(
        min_classes=min_classes,
        decay=decay,
        epsilon_floor=epsilon_floor,
        max_passes=max_passes,
    )
    partition, _ = _iterate(
        graph, old, cfg.min_classes, cfg.decay, cfg.epsilon_floor, cfg.max_passes
    )
    return partition


def sort_classes(graph: Graph, partition: Partition) -> Partition:
    """Reindex classes by descending e_G(P_j, [n]), ties kept in index order."""
    if partition.n != graph.n:
        raise DimensionMismatchError("partition", partition.n, graph.n)

    degrees = graph.degrees().astype(np.float64)
    totals = np.bincount(partition.assignment, weights=degrees, minlength=partition.k)
    scores = totals / (partition.sizes * graph.n)

    order = np.lexsort((np.arange(partition.k), -scores))
    return partition.relabeled(order)


def value_estimate(graph: Graph, partition: Partition) -> FloatMatrix:
    """M-hat_ij: the quotient edge weight between the classes of i and j, diagonal included."""
    beta = quotient(graph, partition).edge_weights
    a = partition.assignment
    return beta[np.ix_(a, a)]


def cluster_then_quotient(graph: Graph, partition: Partition) -> StepGraphon:
    return estimate_step_graphon(graph, sort_classes(graph, partition))


def reorder_by_partition(graph: Graph, partition: Partition) -> Graph:
    """Adjacency with vertices grouped by class, classes in index order."""
    if partition.n != graph.n:
        raise DimensionMismatchError("partition", partition.n, graph.n)

    return graph.permuted(np.argsort(partition.assignment, kind="stable"))


def sort_by_latents(estimate: FloatMatrix, latents: FloatVector) -> FloatMatrix:
    if estimate.shape != (latents.shape[0], latents.shape[0]):
        raise DimensionMismatchError("latent ordering", estimate.shape, latents.shape)

    order = np.argsort(latents, kind="stable")
    return estimate[np.ix_(order, order)]


class IsfeEstimator:
    """Runs the ISFE iteration ``max_iterations`` times from an initial partition."""

    _logger: logging.Logger
    _config: IsfeConfig

    def __init__(self, config: IsfeConfig) -> None:
        self._logger = logging.getLogger(self.__class__.__name__)
        self._config = config

    @property
    def config(self) -> IsfeConfig:
        return self._config

    def run(
        self,
        graph: Graph,
        initial: Partition,
        truth: FloatMatrix | None = None,
    ) -> EstimationTrace:
        cfg = self._config
        if initial.n != graph.n:
            raise DimensionMismatchError("initial partition", initial.n, graph.n)
        if truth is not None and truth.shape != (graph.n, graph.n):
            raise DimensionMismatchError("latent value matrix", truth.shape, graph.n)

        partitions: list[Partition] = []
        graphons: list[StepGraphon] = []
        estimates: list[FloatMatrix] = []
        errors: list[float] = []
        records: list[IterationRecord] = []

        def record(partition: Partition) -> None:
            p = sort_classes(graph, partition)
            partitions.append(p)
            graphons.append(estimate_step_graphon(graph, p))
            estimates.append(value_estimate(graph, p))
            if truth is not None:
                errors.append(mse(estimates[-1], truth))

        record(initial)
        stop_reason: StopReason = "iterations"

        for t in range(cfg.max_iterations):
            partition, it = _iterate(
                graph,
                partitions[-1],
                cfg.min_classes,
                cfg.decay,
                cfg.epsilon_floor,
                cfg.max_passes,
            )
            records.append(it)
            record(partition)

            self._logger.debug(
                "Iteration %d: %d classes after %d passes (epsilon=%g, %s)",
                t + 1,
                it.classes,
                it.passes,
                it.epsilon,
                it.outcome,
            )

            if truth is not None and cfg.stop_threshold > 0:
                improvement = errors[-2] - errors[-1]
                self._logger.debug("Iteration %d: mse=%.6g", t + 1, errors[-1])

                if improvement < cfg.stop_threshold:
                    stop_reason = "mse_stalled"
                    if improvement <= 0:
                        # the trace ends on the last iterate that lowered the MSE
                        self._logger.debug("Iteration %d: discarded, mse did not drop", t + 1)
                        for kept in (partitions, graphons, estimates, errors, records):
                            _ = kept.pop()
                    break

        self._logger.info(
            "Estimated %d classes on %d vertices in %d iterations (%s)",
            partitions[-1].k,
            graph.n,
            len(records),
            stop_reason,
        )

        return EstimationTrace(
            partitions=partitions,
            step_graphons=graphons,
            value_estimates=estimates,
            iterations=records,
            mse=errors,
            stop_reason=stop_reason,
        )


def isfe_run(
    graph: Graph,
    initial: Partition,
    config: IsfeConfig,
    truth: FloatMatrix | None = None,
) -> EstimationTrace:
    return IsfeEstimator(config).run(graph, initial, truth)


def select_min_classes(
    graph: Graph,
    initial: Partition,
    config: IsfeConfig,
    truth: FloatMatrix,
    grid: Iterable[int],
) -> tuple[int, dict[int, float]]:
    """Pick the minimum class count with the lowest final MSE; ties go to the smaller one."""
    scores: dict[int, float] = {}
    for ell in sorted(set(grid)):
        trace = isfe_run(graph, initial, replace(config, min_classes=ell), truth)
        scores[ell] = trace.mse[-1]

    if not scores:
        raise ParameterRangeError("grid", [], "a nonempty set of class counts")

    best = min(scores, key=lambda ell: (scores[ell], ell))
    return best, scores


class Partitioner(ABC):
    """Abstraction of `graph in, initial partition out`.

    Partitioner Hierarchy:

    ```
    Partitioner
    |
    |- TrivialPartitioner
    |
    |- DiscretePartitioner
    |
    |- SizedPartitioner
       |
       |- RandomPartitioner
       |
       |- DegreeBinPartitioner
    ```
    """

    @abstractmethod
    def __call__(self, graph: Graph) -> Partition:
        raise NotImplementedError

    @override
    @abstractmethod
    def __repr__(self) -> str:
        raise NotImplementedError


@spec_constructor(kind="init", name="trivial")
class TrivialPartitioner(Partitioner):
    @override
    def __call__(self, graph: Graph) -> Partition:
        return Partition.trivial(graph.n)

    @override
    def __repr__(self) -> str:
        return f"{self.__class__.__qualname__}()"


@spec_constructor(kind="init", name="discrete")
class DiscretePartitioner(Partitioner):
    @override
    def __call__(self, graph: Graph) -> Partition:
        return Partition.discrete(graph.n)

    @override
    def __repr__(self) -> str:
        return f"{self.__class__.__qualname__}()"


class SizedPartitioner(Partitioner, ABC):
    """Abstraction of `k classes requested up front`."""

    _k: int

    def __init__(self, k: int) -> None:
        if k < 1:
            raise ParameterRangeError("k", k, "a positive integer")
        self._k = k

    @property
    def k(self) -> int:
        return self._k

    def _check(self, graph: Graph) -> None:
        if self._k > graph.n:
            raise ParameterRangeError("k", self._k, f"at most n = {graph.n}")


@spec_constructor(kind="init", name="random")
class RandomPartitioner(SizedPartitioner):
    """Each vertex picks one of k classes uniformly; empty classes are dropped."""

    _seed: int

    def __init__(self, k: int, *, seed: int = 0) -> None:
        super().__init__(k)
        self._seed = seed

    @override
    def __call__(self, graph: Graph) -> Partition:
        self._check(graph)
        rng = stream("random_partition", self._seed)
        return Partition.compacted(rng.integers(self._k, size=graph.n))

    @override
    def __repr__(self) -> str:
        return f"{self.__class__.__qualname__}(k={self._k}, seed={self._seed})"


@spec_constructor(kind="init", name="degree")
class DegreeBinPartitioner(SizedPartitioner):
    """Vertices by descending degree (ties by index) cut into k contiguous near-equal bins."""

    @override
    def __call__(self, graph: Graph) -> Partition:
        self._check(graph)

        order = np.lexsort((np.arange(graph.n), -graph.degrees()))
        assignment = np.empty(graph.n, dtype=np.int64)
        for b, members in enumerate(np.array_split(order, self._k)):
            assignment[members] = b

        return Partition(assignment)

    @override
    def __repr__(self) -> str:
        return f"{self.__class__.__qualname__}(k={self._k})"


type PartitionerKind = Literal["trivial", "discrete", "random_k", "degree_bins"]

partitioner_kind_to_class: dict[PartitionerKind, type[Partitioner]] = {
    "trivial": TrivialPartitioner,
    "discrete": DiscretePartitioner,
    "random_k": RandomPartitioner,
    "degree_bins": DegreeBinPartitioner,
}


def initial_partition(
    kind: PartitionerKind,
    graph: Graph,
    *,
    k: int | None = None,
    seed: int = 0,
) -> Partition:
    cls = partitioner_kind_to_class[kind]

    if issubclass(cls, RandomPartitioner):
        return cls(_require_k(kind, k), seed=seed)(graph)

    if issubclass(cls, SizedPartitioner):
        return cls(_require_k(kind, k))(graph)

    return cls()(graph)


def _require_k(kind: str, k: int | None) -> int:
    if k is None:
        raise ParameterRangeError("k", k, f"given for the `{kind}` initial partition")
    return k
