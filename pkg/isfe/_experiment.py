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
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Literal

import pandas as pd

from isfe._estimator import IsfeConfig, isfe_run, value_estimate
from isfe._graphon import sample
from isfe._metrics import mse
from isfe._random import derive_seed
from isfe._registry import graphon_registry, partitioner_registry
from isfe.errors import ParameterRangeError

type EstimatorName = Literal["isfe", "quotient"]

CSV_COLUMNS = ("graphon", "estimator", "n", "seed", "iterations", "mse", "runtime_ms")


@dataclass(kw_only=True, frozen=True)
class ExperimentSpec:
    """An MSE sweep over graph sizes, ``seeds`` independent draws per size."""

    graphon: str
    estimator: EstimatorName = "isfe"
    init: str = "trivial"
    sizes: tuple[int, ...]
    seeds: int
    seed: int = 0
    config: IsfeConfig
    out: Path | None = None
    summary_out: Path | None = None

    def __post_init__(self) -> None:
        if not self.sizes or min(self.sizes) < 1:
            raise ParameterRangeError("sizes", self.sizes, "a nonempty list of positive sizes")
        if self.seeds < 1:
            raise ParameterRangeError("seeds", self.seeds, "a positive integer")


@dataclass(kw_only=True, frozen=True)
class DatasetPreset:
    """Settings for one of the real networks; the data itself is not bundled."""

    name: str
    top_k: int
    iterations: int
    min_classes: int
    initial_classes: int
    vertices: int
    edges: int

    @property
    def init(self) -> str:
        return f"degree:{self.initial_classes}"


PRESETS: dict[str, DatasetPreset] = {
    p.name: p
    for p in (
        DatasetPreset(
            name="nips",
            top_k=234,
            iterations=8,
            min_classes=95,
            initial_classes=90,
            vertices=2_037,
            edges=1_740,
        ),
        DatasetPreset(
            name="astroph",
            top_k=1_000,
            iterations=8,
            min_classes=160,
            initial_classes=150,
            vertices=18_772,
            edges=396_160,
        ),
        DatasetPreset(
            name="epinions",
            top_k=1_000,
            iterations=8,
            min_classes=40,
            initial_classes=35,
            vertices=75_879,
            edges=508_837,
        ),
    )
}


class ExperimentRunner:
    _logger: logging.Logger

    def __init__(self) -> None:
        self._logger = logging.getLogger(self.__class__.__name__)

    def run(self, spec: ExperimentSpec) -> pd.DataFrame:
        """One row per (n, seed) in ascending order; writes ``out`` and ``summary_out`` if set."""
        graphons = graphon_registry()
        partitioners = partitioner_registry()

        rows: list[dict[str, object]] = []
        for n in sorted(spec.sizes):
            for s in range(spec.seeds):
                run_seed = derive_seed("experiment", spec.seed, n, s)
                graphon = graphons.parse(
                    spec.graphon, seed=derive_seed("experiment_graphon", spec.seed, s)
                )
                drawn = sample(graphon, n, run_seed)
                truth = drawn.value_matrix

                started = time.perf_counter()
                initial = partitioners.parse(spec.init, seed=run_seed)(drawn.graph)

                if spec.estimator == "isfe":
                    trace = isfe_run(drawn.graph, initial, spec.config, truth)
                    iterations, error = trace.iteration_count, trace.mse[-1]
                else:
                    iterations, error = 0, mse(value_estimate(drawn.graph, initial), truth)

                runtime_ms = (time.perf_counter() - started) * 1000.0
                self._logger.debug("n=%d seed=%d: mse=%.6g", n, s, error)

                rows.append(
                    {
                        "graphon": spec.graphon,
                        "estimator": spec.estimator,
                        "n": n,
                        "seed": s,
                        "iterations": iterations,
                        "mse": error,
                        "runtime_ms": round(runtime_ms, 3),
                    }
                )

        frame = pd.DataFrame(rows, columns=list(CSV_COLUMNS))

        if spec.out is not None:
            frame.to_csv(spec.out, index=False)
        if spec.summary_out is not None:
            summarize(frame).to_csv(spec.summary_out, index=False)

        self._logger.info("Ran %d estimations of %s", len(frame), spec.graphon)
        return frame


def summarize(frame: pd.DataFrame) -> pd.DataFrame:
    """Mean and sample standard deviation of the MSE per graph size."""
    stats = frame.groupby("n", sort=True)["mse"].agg(["mean", "std"])
    return stats.rename(columns={"std": "sd"}).reset_index()


def run_experiment(spec: ExperimentSpec) -> pd.DataFrame:
    return ExperimentRunner().run(spec)
