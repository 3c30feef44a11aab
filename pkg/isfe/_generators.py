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

from dataclasses import dataclass
from pathlib import Path

import numpy as np
import numpy.typing as npt

from isfe._annotations import spec_constructor
from isfe._graphon import AnalyticGraphon, StepGraphon
from isfe._io import read_step_graphon
from isfe._random import stream
from isfe._types import FloatMatrix
from isfe.errors import ParameterRangeError

DEFAULT_CUSTOMERS = 10_000


@dataclass(kw_only=True, frozen=True)
class SbmSpec:
    """Two-block SBM: block widths (p, 1 - p), within density q0, across density q1."""

    p: float
    q0: float
    q1: float

    def __post_init__(self) -> None:
        if not (0.0 < self.p < 1.0):
            raise ParameterRangeError("p", self.p, "in (0, 1)")
        for name, q in (("q0", self.q0), ("q1", self.q1)):
            if not (0.0 <= q <= 1.0):
                raise ParameterRangeError(name, q, "in [0, 1]")


@dataclass(kw_only=True, frozen=True)
class IrmSpec:
    """Infinite relational model truncated to a finite Chinese restaurant process."""

    alpha: float
    a: float
    b: float
    customers: int = DEFAULT_CUSTOMERS

    def __post_init__(self) -> None:
        for name, value in (("alpha", self.alpha), ("a", self.a), ("b", self.b)):
            if not value > 0:
                raise ParameterRangeError(name, value, "strictly positive")
        if self.customers < 1:
            raise ParameterRangeError("customers", self.customers, "a positive integer")


@spec_constructor(kind="graphon", name="constant")
def constant(c: float) -> StepGraphon:
    if not (0.0 <= c <= 1.0):
        raise ParameterRangeError("c", c, "in [0, 1]")

    return StepGraphon([1.0], [[c]])


@spec_constructor(kind="graphon", name="sbm2")
def sbm2(spec: SbmSpec) -> StepGraphon:
    return sbm_general(
        [spec.p, 1.0 - spec.p],
        [[spec.q0, spec.q1], [spec.q1, spec.q0]],
    )


def sbm_general(widths: npt.ArrayLike, block_values: npt.ArrayLike) -> StepGraphon:
    return StepGraphon(widths, block_values)


@spec_constructor(kind="graphon", name="irm")
def irm(spec: IrmSpec, *, seed: int) -> StepGraphon:
    """IRM graphon: CRP table proportions as widths, one Beta(a, b) value per class pair.

    The CRP consumes one uniform per customer; the Beta draws follow in row-major order
    over the upper triangle, diagonal included.
    """
    rng = stream("irm", seed)

    tables: list[int] = []
    for m in range(spec.customers):
        u = rng.random() * (spec.alpha + m)
        if u < spec.alpha:
            tables.append(1)
        else:
            seat = int(np.searchsorted(np.cumsum(tables), u - spec.alpha, side="right"))
            tables[seat] += 1

    k = len(tables)
    widths = np.asarray(tables, dtype=np.float64) / spec.customers

    values: FloatMatrix = np.zeros((k, k), dtype=np.float64)
    upper = np.triu_indices(k)
    values[upper] = rng.beta(spec.a, spec.b, size=upper[0].shape[0])
    values = np.triu(values) + np.triu(values, 1).T

    return StepGraphon(widths, values)


@spec_constructor(kind="graphon", name="gradient")
def gradient() -> AnalyticGraphon:
    """W(x, y) = ((1 - x) + (1 - y)) / 2."""
    return AnalyticGraphon("gradient", lambda x, y: ((1.0 - x) + (1.0 - y)) / 2.0)


@spec_constructor(kind="graphon", name="file")
def step_graphon_file(path: Path) -> StepGraphon:
    return read_step_graphon(path)
