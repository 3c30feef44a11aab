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
import math
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Any, Literal, NamedTuple, get_type_hints

import numpy as np
import pandas as pd
from scipy.spatial.distance import cdist
from scipy.stats import binom

from isfe._generators import SbmSpec, sbm2
from isfe._graph import Graph, Partition, density_vectors
from isfe._graphon import GraphonSample, sample
from isfe._random import derive_seed, stream
from isfe._types import BoolVector, IntVector
from isfe._utils import frozen, row_blocks
from isfe.errors import (
    ConfigParseError,
    DimensionMismatchError,
    DomainError,
    ParameterRangeError,
)

# floor((1 - tau) n) must not lose a vertex to representation error
_FLOOR_SLACK = 1e-9
# tau = 1 - 1/(4k) leaves a discriminant of zero up to rounding
_DISCRIMINANT_SLACK = 1e-12


@dataclass(frozen=True, eq=False)
class GroundTruth:
    """Block of origin of every vertex: ``in_a[i]`` iff U_i < p."""

    in_a: BoolVector

    def __post_init__(self) -> None:
        object.__setattr__(self, "in_a", frozen(np.array(self.in_a, dtype=np.bool_, ndmin=1)))

    @property
    def n(self) -> int:
        return int(self.in_a.shape[0])

    def block_of(self, vertex: int) -> Literal["A", "B"]:
        return "A" if self.in_a[vertex] else "B"


def ground_truth(sample: GraphonSample, p: float) -> GroundTruth:
    return GroundTruth(sample.latents < p)


@dataclass(kw_only=True, frozen=True)
class SbmAnalysisConfig:
    n: int
    k: int
    p: float
    q0: float
    q1: float
    tau: float
    tau_prime: float
    epsilon: float
    xi: float
    trials: int
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ParameterRangeError("n", self.n, "a positive integer")
        if self.k < 2:  # noqa: PLR2004
            raise ParameterRangeError("k", self.k, "at least 2")
        if not (0.0 < self.p <= 0.5):  # noqa: PLR2004
            raise ParameterRangeError("p", self.p, "in (0, 1/2]")
        if not (0.0 <= self.q1 < self.q0 <= 1.0):
            raise ParameterRangeError("q0, q1", (self.q0, self.q1), "0 <= q1 < q0 <= 1")
        if not (1.0 - 1.0 / (4 * self.k) < self.tau <= 1.0):
            raise ParameterRangeError("tau", self.tau, f"in (1 - 1/(4k), 1] for k = {self.k}")
        if not (self.tau < self.tau_prime or self.tau == self.tau_prime == 1.0):
            raise ParameterRangeError("tau_prime", self.tau_prime, f"above tau = {self.tau}")
        if not self.epsilon > 0:
            raise ParameterRangeError("epsilon", self.epsilon, "positive")
        if not (self.xi >= 0 and self.tau_prime + self.xi <= 1.0):
            raise ParameterRangeError("xi", self.xi, "nonnegative with tau_prime + xi <= 1")
        if self.trials < 0:
            raise ParameterRangeError("trials", self.trials, "nonnegative")

    @property
    def sbm(self) -> SbmSpec:
        return SbmSpec(p=self.p, q0=self.q0, q1=self.q1)


class ConditionCheck(NamedTuple):
    lhs: float
    rhs: float
    satisfied: bool


def _class_side_counts(partition: Partition, truth: GroundTruth) -> tuple[IntVector, IntVector]:
    if partition.n != truth.n:
        raise DimensionMismatchError("ground truth", partition.n, truth.n)

    weights = truth.in_a.astype(np.float64)
    counts_a = np.bincount(partition.assignment, weights, partition.k).astype(np.int64)
    return counts_a, partition.sizes - counts_a


def majority_sides(partition: Partition, truth: GroundTruth) -> BoolVector:
    """True where the class majority is block A; an even split counts as A."""
    counts_a, counts_b = _class_side_counts(partition, truth)
    return counts_a >= counts_b


def majority_sizes(partition: Partition, truth: GroundTruth) -> IntVector:
    """|C*_i| for every class."""
    counts_a, counts_b = _class_side_counts(partition, truth)
    return np.where(counts_a >= counts_b, counts_a, counts_b)


def majority_fraction(partition: Partition, truth: GroundTruth) -> float:
    """Fraction of vertices that sit in the majority part of their class."""
    return int(majority_sizes(partition, truth).sum()) / partition.n


def class_sides(partition: Partition, truth: GroundTruth) -> tuple[IntVector, IntVector]:
    """(K_A, K_B): classes with an A majority, classes with a B majority."""
    sides = majority_sides(partition, truth)
    return np.flatnonzero(sides), np.flatnonzero(~sides)


def is_delta_large(size: int, n: int, k: int, delta: float) -> bool:
    return size >= delta * n / k


def is_delta_good(majority: int, size: int, n: int, k: int, delta: float) -> bool:
    return is_delta_large(size, n, k, delta) and majority >= delta * size


def delta_good_classes(partition: Partition, truth: GroundTruth, delta: float) -> IntVector:
    """D_delta: indices of the delta-good classes."""
    sizes = partition.sizes
    majorities = majority_sizes(partition, truth)
    good = [
        j
        for j in range(partition.k)
        if is_delta_good(int(majorities[j]), int(sizes[j]), partition.n, partition.k, delta)
    ]
    return np.asarray(good, dtype=np.int64)


def corrupt_partition(truth: GroundTruth, k: int, tau: float, seed: int) -> Partition:
    """A partition whose classes are side-pure except for floor((1 - tau) n) moved vertices.

    Classes ``[0, ceil(k/2))`` are the A side, the rest the B side.
    """
    n = truth.n
    if k < 2:  # noqa: PLR2004
        raise ParameterRangeError("k", k, "at least 2")
    if k > n:
        raise ParameterRangeError("k", k, f"at most n = {n}")
    if not (1.0 - 1.0 / (4 * k) < tau <= 1.0):
        raise ParameterRangeError("tau", tau, f"in (1 - 1/(4k), 1] for k = {k}")

    rng = stream("corrupt_partition", seed)
    k_a = math.ceil(k / 2)

    side_a = rng.integers(0, k_a, size=n)
    side_b = rng.integers(k_a, k, size=n)
    assignment = np.where(truth.in_a, side_a, side_b).astype(np.int64)

    moved = math.floor((1.0 - tau) * n + _FLOOR_SLACK)
    if moved:
        chosen = rng.choice(n, size=moved, replace=False)
        to_b = rng.integers(k_a, k, size=moved)
        to_a = rng.integers(0, k_a, size=moved)
        assignment[chosen] = np.where(truth.in_a[chosen], to_b, to_a)

    sizes = np.bincount(assignment, minlength=k)
    for empty in np.flatnonzero(sizes == 0).tolist():
        donor = int(np.argmax(sizes))
        vertex = int(np.flatnonzero(assignment == donor)[0])
        assignment[vertex] = empty
        sizes[donor] -= 1
        sizes[empty] += 1

    return Partition(assignment)


def draw_centroids(n: int, k: int, seed: int) -> IntVector:
    """The centroids ``random_centroid_iteration`` picks for this (n, k, seed)."""
    if not (1 <= k <= n):
        raise ParameterRangeError("k", k, f"in [1, {n}]")

    return stream("random_centroid_iteration", seed).choice(n, size=k, replace=False)


def random_centroid_iteration(graph: Graph, old: Partition, k: int, seed: int) -> Partition:
    """Assign every vertex to the L1-nearest of k uniformly drawn centroids.

    Equal distances are broken by independent uniform keys from the same stream.
    """
    n = graph.n
    if not (1 <= k <= n):
        raise ParameterRangeError("k", k, f"in [1, {n}]")

    rng = stream("random_centroid_iteration", seed)
    centroids = rng.choice(n, size=k, replace=False)

    vectors = density_vectors(graph, old)
    distances = cdist(vectors, vectors[centroids], metric="cityblock")
    keys = rng.random(distances.shape)

    nearest = distances == distances.min(axis=1, keepdims=True)
    assignment = np.argmin(np.where(nearest, keys, np.inf), axis=1).astype(np.int64)
    assignment[centroids] = np.arange(k)

    return Partition(assignment)


def delta_from_tau(k: int, tau: float) -> float:
    """delta = (1 + sqrt(1 - 4k(1 - tau))) / 2, so that delta - delta^2 = k(1 - tau)."""
    if not tau <= 1.0:
        raise ParameterRangeError("tau", tau, "at most 1")

    discriminant = 1.0 - 4 * k * (1.0 - tau)
    if discriminant < -_DISCRIMINANT_SLACK:
        raise DomainError("delta_from_tau", f"4k(1 - tau) = {1 - discriminant} exceeds 1")

    return (1.0 + math.sqrt(max(discriminant, 0.0))) / 2.0


def condition_i(cfg: SbmAnalysisConfig) -> ConditionCheck:
    """q0 - q1 >= (3 - r)/tau - 2 + 4 eps + (1 - r)/(n tau (1 - tau)), r = sqrt(1 - 4k(1 - tau)).

    At tau = 1 no vertex is misclassified; the last term is replaced by its limit 2k/n
    and the condition holds trivially.
    """
    k, tau, n = cfg.k, cfg.tau, cfg.n
    root = math.sqrt(max(1.0 - 4 * k * (1.0 - tau), 0.0))
    lhs = cfg.q0 - cfg.q1

    if tau == 1.0:
        rhs = (3.0 - root) / tau - 2.0 + 4 * cfg.epsilon + 2 * k / n
        return ConditionCheck(lhs, rhs, satisfied=True)

    rhs = (3.0 - root) / tau - 2.0 + 4 * cfg.epsilon + (1.0 - root) / (n * tau * (1.0 - tau))
    return ConditionCheck(lhs, rhs, satisfied=lhs >= rhs)


def condition_ii(cfg: SbmAnalysisConfig) -> ConditionCheck:
    """eps^2 n > -12k log((1 - (tau' + xi)^(1/k)) / 2)."""
    total = cfg.tau_prime + cfg.xi
    if total >= 1.0:
        raise DomainError("condition_ii", f"tau' + xi = {total} must stay below 1")

    lhs = cfg.epsilon**2 * cfg.n
    rhs = -12 * cfg.k * math.log((1.0 - total ** (1.0 / cfg.k)) / 2.0)
    return ConditionCheck(lhs, rhs, satisfied=lhs > rhs)


def p_k(p: float, k: int) -> float:
    """Probability that k uniform centroids hit both blocks."""
    return 1.0 - p**k - (1.0 - p) ** k


class BoundFactors(NamedTuple):
    p_k: float
    middle: float
    last: float

    @property
    def bound(self) -> float:
        return self.p_k * self.middle * self.last

    @property
    def vacuous(self) -> bool:
        return self.bound == 0.0


def bound_factors(cfg: SbmAnalysisConfig) -> BoundFactors:
    """The three factors of the classification bound, each clamped into [0, 1]."""
    n, k = cfg.n, cfg.k
    middle_base = 1.0 - 2.0 * math.exp(-(cfg.epsilon**2) * n / (12 * k))
    last = 1.0 - 2.0 * math.exp(-(cfg.xi**2) * n / 3.0)

    return BoundFactors(
        p_k=p_k(cfg.p, k),
        middle=max(middle_base, 0.0) ** (k * k),
        last=max(last, 0.0),
    )


def theorem_bound(cfg: SbmAnalysisConfig) -> float:
    return bound_factors(cfg).bound


def chernoff_lower_bound(n: int, zeta: float, eps: float) -> float:
    """1 - 2 exp(-eps^2 n / (3 zeta)), a lower bound on Pr(|X/n - zeta| < eps)."""
    if zeta == 0:
        raise DomainError("chernoff_lower_bound", "zeta = 0")
    if not (0.0 < zeta <= 1.0):
        raise ParameterRangeError("zeta", zeta, "in (0, 1]")
    if n < 1 or not eps > 0:
        raise ParameterRangeError("n, eps", (n, eps), "a positive size and a positive slack")

    return 1.0 - 2.0 * math.exp(-(eps**2) * n / (3.0 * zeta))


def binomial_concentration(n: int, zeta: float, eps: float) -> float:
    """Exact Pr(|X/n - zeta| < eps) for X ~ Binomial(n, zeta)."""
    if not (0.0 <= zeta <= 1.0):
        raise ParameterRangeError("zeta", zeta, "in [0, 1]")
    if n < 1:
        raise ParameterRangeError("n", n, "a positive integer")

    m = np.arange(n + 1)
    inside = np.abs(m / n - zeta) < eps
    return float(binom.pmf(m[inside], n, zeta).sum())


def proposition_condition(
    q0: float,
    q1: float,
    tau: float,
    eps: float,
    delta: float,
    n: int,
    k: int,
) -> bool:
    """q0 - q1 >= 2((2 - delta)/tau - 1 + 2 eps + k/(n delta tau))."""
    return q0 - q1 >= 2.0 * ((2.0 - delta) / tau - 1.0 + 2.0 * eps + k / (n * delta * tau))


def good_vertex_probability_bound(n: int, k: int, eps: float, delta: float) -> float:
    """(1 - 2 exp(-eps^2 delta^2 n / (3k)))^k, clamped at 0."""
    base = 1.0 - 2.0 * math.exp(-(eps**2) * delta**2 * n / (3 * k))
    return max(base, 0.0) ** k


def epsilon_delta_good_vertices(
    graph: Graph,
    partition: Partition,
    truth: GroundTruth,
    q0: float,
    q1: float,
    eps: float,
    delta: float,
    seed: int,
) -> BoolVector:
    """Vertices whose density to every delta-good class majority is within eps of q0 or q1.

    Densities are taken in G-dagger, i.e. G plus a self-loop at each vertex with
    probability q0. The loops are drawn here and ``graph`` is left untouched.
    """
    if partition.n != graph.n:
        raise DimensionMismatchError("partition", partition.n, graph.n)

    n = graph.n
    loops = stream("epsilon_delta_good_vertices", seed).random(n) < q0

    good = delta_good_classes(partition, truth, delta)
    if good.size == 0:
        return np.ones(n, dtype=np.bool_)

    sides = majority_sides(partition, truth)[good]
    membership = np.zeros((n, good.size), dtype=np.float64)
    for col, j in enumerate(good.tolist()):
        in_class = partition.assignment == j
        membership[:, col] = in_class & (truth.in_a == sides[col])

    counts = np.empty((n, good.size), dtype=np.float64)
    for rows in row_blocks(n, n):
        counts[rows] = graph.adjacency[rows].astype(np.float64) @ membership
    counts += loops[:, None] * membership

    densities = counts / membership.sum(axis=0)
    expected = np.where(truth.in_a[:, None] == sides[None, :], q0, q1)

    return (np.abs(densities - expected) < eps).all(axis=1)


@dataclass(kw_only=True, frozen=True)
class TheoremReport:
    config: SbmAnalysisConfig
    delta: float
    condition_i: ConditionCheck
    condition_ii: ConditionCheck | None
    factors: BoundFactors
    per_trial_fractions: list[float]

    @property
    def bound(self) -> float:
        return self.factors.bound

    @property
    def conditions_met(self) -> bool:
        return (
            self.condition_i.satisfied
            and self.condition_ii is not None
            and self.condition_ii.satisfied
        )

    @property
    def empirical_frequency(self) -> float | None:
        """Fraction of trials reaching tau'; undefined without trials."""
        if not self.per_trial_fractions:
            return None

        hits = sum(1 for f in self.per_trial_fractions if f >= self.config.tau_prime)
        return hits / len(self.per_trial_fractions)

    @property
    def sigma(self) -> float:
        trials = len(self.per_trial_fractions)
        if trials == 0:
            return math.inf
        return math.sqrt(self.bound * (1.0 - self.bound) / trials)

    @property
    def passed(self) -> bool:
        frequency = self.empirical_frequency
        return (
            self.conditions_met
            and frequency is not None
            and frequency >= self.bound - 3.0 * self.sigma
        )

    def to_text(self) -> str:
        """One ``name=value`` pair per line."""
        c1 = self.condition_i
        c2 = self.condition_ii
        pairs: list[tuple[str, object]] = [
            *((f.name, getattr(self.config, f.name)) for f in fields(SbmAnalysisConfig)),
            ("delta", self.delta),
            ("condition_i_lhs", c1.lhs),
            ("condition_i_rhs", c1.rhs),
            ("condition_i_satisfied", c1.satisfied),
            ("condition_ii_lhs", None if c2 is None else c2.lhs),
            ("condition_ii_rhs", None if c2 is None else c2.rhs),
            ("condition_ii_satisfied", None if c2 is None else c2.satisfied),
            ("p_k", self.factors.p_k),
            ("middle_factor", self.factors.middle),
            ("last_factor", self.factors.last),
            ("bound", self.bound),
            ("vacuous", self.factors.vacuous),
            ("conditions_met", self.conditions_met),
            ("empirical_frequency", self.empirical_frequency),
            ("passed", self.passed),
        ]
        return "".join(f"{name}={_format(value)}\n" for name, value in pairs)

    def write(self, path: Path, trials_csv: Path | None = None) -> None:
        _ = path.write_text(self.to_text(), encoding="utf-8")

        if trials_csv is not None:
            frame = pd.DataFrame(
                {
                    "trial": range(len(self.per_trial_fractions)),
                    "majority_fraction": self.per_trial_fractions,
                }
            )
            frame.to_csv(trials_csv, index=False)


def _format(value: object) -> str:
    match value:
        case None:
            return "undefined"
        case bool():
            return str(value).lower()
        case float():
            return repr(value)
        case _:
            return str(value)


class TheoremHarness:
    """Monte-Carlo check of the random-centroid classification guarantee on 2-block SBMs."""

    _logger: logging.Logger

    def __init__(self) -> None:
        self._logger = logging.getLogger(self.__class__.__name__)

    def trial(self, cfg: SbmAnalysisConfig, index: int) -> float:
        drawn = sample(sbm2(cfg.sbm), cfg.n, derive_seed("theorem_sample", cfg.seed, index))
        truth = ground_truth(drawn, cfg.p)

        initial = corrupt_partition(
            truth, cfg.k, cfg.tau, derive_seed("theorem_corrupt", cfg.seed, index)
        )
        estimate = random_centroid_iteration(
            drawn.graph, initial, cfg.k, derive_seed("theorem_centroids", cfg.seed, index)
        )
        return majority_fraction(estimate, truth)

    def run(self, cfg: SbmAnalysisConfig) -> TheoremReport:
        first = condition_i(cfg)
        try:
            second = condition_ii(cfg)
        except DomainError as e:
            self._logger.warning("Condition (ii) is undefined: %s", e)
            second = None

        factors = bound_factors(cfg)
        if not (first.satisfied and second is not None and second.satisfied):
            self._logger.warning("Theorem conditions are not met, the bound does not apply")

        fractions: list[float] = []
        for t in range(cfg.trials):
            fractions.append(self.trial(cfg, t))
            self._logger.debug(
                "Trial %d/%d: majority fraction %.6f", t + 1, cfg.trials, fractions[-1]
            )

        report = TheoremReport(
            config=cfg,
            delta=delta_from_tau(cfg.k, cfg.tau),
            condition_i=first,
            condition_ii=second,
            factors=factors,
            per_trial_fractions=fractions,
        )

        self._logger.info(
            "Bound %.6f, empirical frequency %s over %d trials",
            report.bound,
            report.empirical_frequency,
            cfg.trials,
        )
        return report


def monte_carlo_theorem(cfg: SbmAnalysisConfig) -> TheoremReport:
    return TheoremHarness().run(cfg)


def parse_analysis_config(text: str, source: str = "<config>") -> SbmAnalysisConfig:
    """Flat ``key=value`` lines keyed by the ``SbmAnalysisConfig`` field names.

    Blank lines and ``#`` comments are skipped; values are coerced by the field types.
    """
    hints = get_type_hints(SbmAnalysisConfig)
    values: dict[str, Any] = {}

    for line_no, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue

        key, sep, raw = (part.strip() for part in stripped.partition("="))
        if not sep:
            raise ConfigParseError(source, line_no, f"expected `key=value`, got {line!r}")
        if key not in hints:
            raise ConfigParseError(source, line_no, f"unknown key `{key}`")
        if key in values:
            raise ConfigParseError(source, line_no, f"duplicate key `{key}`")

        try:
            values[key] = hints[key](raw)
        except ValueError as e:
            raise ConfigParseError(source, line_no, f"`{key}` = {raw!r}: {e}") from e

    missing = [f.name for f in fields(SbmAnalysisConfig) if f.name not in values and f.init]
    required = [name for name in missing if name != "seed"]
    if required:
        raise ConfigParseError(source, 0, f"missing keys {required}")

    try:
        return SbmAnalysisConfig(**values)
    except ParameterRangeError as e:
        raise ConfigParseError(source, 0, str(e)) from e
