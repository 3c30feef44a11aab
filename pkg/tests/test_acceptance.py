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

"""Estimation quality, runtime and Monte-Carlo guarantees on the reference configurations."""

import math
import time

import numpy as np
import pytest

from isfe import (
    IrmSpec,
    IsfeConfig,
    Partition,
    SbmAnalysisConfig,
    SbmSpec,
    irm,
    isfe_run,
    monte_carlo_theorem,
    sample,
    sbm2,
    theorem_bound,
)

SBM_CONFIG = IsfeConfig(min_classes=8, max_iterations=10, stop_threshold=1e-3)


def sbm_errors(spec: SbmSpec, n: int, seeds: int) -> tuple[float, float]:
    """Mean MSE of the trivial-partition estimate and of the final estimate."""
    initial: list[float] = []
    final: list[float] = []
    for seed in range(seeds):
        drawn = sample(sbm2(spec), n, seed)
        trace = isfe_run(drawn.graph, Partition.trivial(n), SBM_CONFIG, drawn.value_matrix)
        initial.append(trace.mse[0])
        final.append(trace.mse[-1])

    return float(np.mean(initial)), float(np.mean(final))


def test_sbm_estimation_quality():
    spec = SbmSpec(p=0.3, q0=0.7, q1=0.3)

    _, large = sbm_errors(spec, 200, seeds=50)
    _, small = sbm_errors(spec, 50, seeds=50)

    assert large < 0.02
    assert large <= small


@pytest.mark.slow
def test_sbm_estimation_quality_balanced_blocks():
    spec = SbmSpec(p=0.5, q0=0.7, q1=0.3)

    initial, large = sbm_errors(spec, 200, seeds=50)

    # equal expected degrees: better than the constant estimator, short of a 2x margin
    assert large < initial
    assert large < 0.04


def test_irm_runtime():
    graphon = irm(IrmSpec(alpha=3.0, a=3.0, b=2.9), seed=0)
    drawn = sample(graphon, 200, seed=0)
    config = IsfeConfig(min_classes=15, max_iterations=3)

    started = time.perf_counter()
    trace = isfe_run(drawn.graph, Partition.trivial(200), config)
    elapsed = time.perf_counter() - started

    assert trace.iteration_count == 3
    assert elapsed <= 3.4


@pytest.mark.slow
def test_theorem_monte_carlo():
    cfg = SbmAnalysisConfig(
        n=24_000,
        k=3,
        p=0.5,
        q0=0.95,
        q1=0.05,
        tau=0.95,
        tau_prime=0.96,
        epsilon=0.1,
        xi=0.03,
        trials=100,
    )

    report = monte_carlo_theorem(cfg)
    bound = theorem_bound(cfg)
    frequency = report.empirical_frequency

    assert report.conditions_met
    assert frequency is not None
    assert frequency >= bound - 3 * math.sqrt(bound * (1 - bound) / cfg.trials)
    assert report.passed
