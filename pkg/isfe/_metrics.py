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
from itertools import permutations
from typing import Any

import numpy as np
import numpy.typing as npt

from isfe._graph import Graph
from isfe._graphon import StepGraphon
from isfe._types import FloatMatrix, FloatVector
from isfe._utils import frozen
from isfe.errors import DimensionMismatchError, ParameterRangeError, SizeGuardError

MIN_REFINED_WIDTH = 1e-15
SUBSET_LIMIT = 24
PERMUTATION_LIMIT = 8
STEP_PERMUTATION_LIMIT = 6

# subsets of the low rows are tabulated once, the high rows are looped over
_LOW_BITS = 12


def mse(estimate: npt.ArrayLike, truth: npt.ArrayLike) -> float:
    """(1/n^2) sum_ij (M_ij - M-hat_ij)^2, diagonal included."""
    a = np.asarray(estimate, dtype=np.float64)
    b = np.asarray(truth, dtype=np.float64)
    if a.shape != b.shape:
        raise DimensionMismatchError("mse", a.shape, b.shape)

    return float(np.mean((b - a) ** 2))


@dataclass(frozen=True, eq=False)
class CommonRefinement:
    """Two step graphons re-expressed on the union of their breakpoints."""

    widths: FloatVector
    values_a: FloatMatrix
    values_b: FloatMatrix

    @property
    def k(self) -> int:
        return int(self.widths.shape[0])

    def cell_weights(self) -> FloatMatrix:
        return np.outer(self.widths, self.widths)


def common_refinement(a: StepGraphon, b: StepGraphon) -> CommonRefinement:
    points = np.union1d(a.breakpoints, b.breakpoints)
    widths = np.diff(points)
    keep = widths >= MIN_REFINED_WIDTH

    mids = ((points[:-1] + points[1:]) / 2)[keep]
    ia = a.step_of(mids)
    ib = b.step_of(mids)

    return CommonRefinement(
        widths=frozen(widths[keep]),
        values_a=frozen(a.values[np.ix_(ia, ia)]),
        values_b=frozen(b.values[np.ix_(ib, ib)]),
    )


def _integral(a: StepGraphon, b: StepGraphon, power: int) -> float:
    r = common_refinement(a, b)
    return float((r.cell_weights() * np.abs(r.values_a - r.values_b) ** power).sum())


def lp_distance(a: StepGraphon, b: StepGraphon, p: int) -> float:
    """||A - B||_p under the identity alignment, p in {1, 2}."""
    match p:
        case 1:
            return _integral(a, b, 1)
        case 2:
            return float(np.sqrt(_integral(a, b, 2)))
        case _:
            raise ParameterRangeError("p", p, "1 or 2")


def canonical_sort(graphon: StepGraphon) -> StepGraphon:
    """Steps by descending row average, wider steps first among equal averages."""
    order = np.lexsort((np.arange(graphon.k), -graphon.widths, -graphon.row_averages()))
    return graphon.permuted(order)


def mise_upper_bound(a: StepGraphon, b: StepGraphon) -> float:
    """Squared L2 distance after canonical sorting; never below the true MISE."""
    return _integral(canonical_sort(a), canonical_sort(b), 2)


def _subset_row_sums(x: npt.NDArray[Any]) -> npt.NDArray[Any]:
    """Row ``s`` holds the sum of the rows of ``x`` selected by the bits of ``s``."""
    sums = np.zeros((1 << x.shape[0], x.shape[1]), dtype=x.dtype)
    for bit in range(x.shape[0]):
        size = 1 << bit
        sums[size : 2 * size] = sums[:size] + x[bit]
    return sums


def _max_cut_sum(x: npt.NDArray[Any]) -> float:
    # For a fixed S the objective sum_{i in S, j in T} x_ij is additive over the columns in
    # T, so the best T takes every positive column sum (or every negative one for the other
    # sign). Maximizing over all S is therefore exact.
    low = min(x.shape[0], _LOW_BITS)
    low_sums = _subset_row_sums(x[:low])
    high_sums = _subset_row_sums(x[low:])

    best = 0.0
    for high in high_sums:
        sums = low_sums + high
        positive = np.where(sums > 0, sums, 0).sum(axis=1)
        negative = np.where(sums < 0, sums, 0).sum(axis=1)
        best = max(best, float(positive.max()), float(-negative.min()))

    return best


def cut_norm_matrix(
    d: npt.ArrayLike,
    row_weights: npt.ArrayLike | None = None,
    col_weights: npt.ArrayLike | None = None,
) -> float:
    """max over row sets S and column sets T of |sum_{i in S, j in T} r_i c_j D_ij|."""
    x = np.asarray(d)
    if x.ndim != 2:  # noqa: PLR2004
        raise DimensionMismatchError("cut norm", x.ndim, 2)

    if row_weights is not None:
        x = np.asarray(row_weights, dtype=np.float64)[:, None] * x
    if col_weights is not None:
        x = x * np.asarray(col_weights, dtype=np.float64)[None, :]

    # enumerate subsets of the shorter side
    if x.shape[0] > x.shape[1]:
        x = x.T

    if x.shape[0] > SUBSET_LIMIT:
        raise SizeGuardError("cut norm", x.shape[0], SUBSET_LIMIT)

    return _max_cut_sum(x)


def _check_pair(f: Graph, g: Graph, limit: int, what: str) -> None:
    if f.n != g.n:
        raise DimensionMismatchError(what, f.n, g.n)
    if f.n > limit:
        raise SizeGuardError(what, f.n, limit)


def cut_metric_graphs(f: Graph, g: Graph) -> float:
    """d_cut(F, G) = max_{S,T} |c_F(S, T) - c_G(S, T)| / n^2, exact in integers."""
    _check_pair(f, g, SUBSET_LIMIT, "cut metric")

    diff = f.adjacency.astype(np.int64) - g.adjacency.astype(np.int64)
    return cut_norm_matrix(diff) / f.n**2


def cut_distance_graphs(f: Graph, g: Graph) -> float:
    """Minimum cut metric over all relabelings of G."""
    _check_pair(f, g, PERMUTATION_LIMIT, "cut distance")

    best = float("inf")
    for order in permutations(range(g.n)):
        best = min(best, cut_metric_graphs(f, g.permuted(order)))
        if best == 0.0:
            break

    return best


def cut_metric_step(a: StepGraphon, b: StepGraphon) -> float:
    """Exact d_cut(A, B) over measurable S, T.

    On the common refinement the objective sum_ij s_i t_j w_i w_j (A_ij - B_ij) is
    bilinear in (s, t) in [0, 1]^k x [0, 1]^k, so its extremes sit at 0/1 vertices and
    unions of refinement cells are enough.
    """
    r = common_refinement(a, b)
    if r.k > SUBSET_LIMIT:
        raise SizeGuardError("step cut metric refinement", r.k, SUBSET_LIMIT)

    return cut_norm_matrix(r.values_a - r.values_b, r.widths, r.widths)


def cut_distance_step_upper(a: StepGraphon, b: StepGraphon) -> float:
    """Upper bound on delta_cut(A, B); the identity alignment is always among the candidates.

    Up to STEP_PERMUTATION_LIMIT steps every relabeling of B is tried, k! cut metrics on
    a refinement of up to 2k cells: a few seconds at 6 steps and minutes at 8. Larger
    inputs take the better of the identity and canonical-sort alignments.
    """
    if a.k <= STEP_PERMUTATION_LIMIT and b.k <= STEP_PERMUTATION_LIMIT:
        best = float("inf")
        for order in permutations(range(b.k)):
            best = min(best, cut_metric_step(a, b.permuted(order)))
            if best == 0.0:
                break

        return best

    return min(
        cut_metric_step(a, b),
        cut_metric_step(canonical_sort(a), canonical_sort(b)),
    )
