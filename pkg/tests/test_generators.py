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

import numpy as np
import pytest

from isfe import IrmSpec, SbmSpec, constant, gradient, irm, sbm2, sbm_general
from isfe.errors import (
    DimensionMismatchError,
    InvalidStepGraphonError,
    ParameterRangeError,
)
from tests.fixtures.graphs import difference_set_graphon


def test_sbm2():
    w = sbm2(SbmSpec(p=0.5, q0=0.7, q1=0.3))

    assert w.widths.tolist() == [0.5, 0.5]
    assert w.values.tolist() == [[0.7, 0.3], [0.3, 0.7]]
    assert sbm2(SbmSpec(p=0.3, q0=0.7, q1=0.3)).widths.tolist() == pytest.approx([0.3, 0.7])


def test_sbm2_equal_densities_is_constant():
    w = sbm2(SbmSpec(p=0.2, q0=0.4, q1=0.4))

    assert np.all(w.values == 0.4)


def test_sbm2_is_sbm_general():
    spec = SbmSpec(p=0.4, q0=0.9, q1=0.05)

    assert sbm2(spec) == sbm_general([0.4, 0.6], [[0.9, 0.05], [0.05, 0.9]])


def test_sbm_spec_validation():
    with pytest.raises(ParameterRangeError):
        _ = SbmSpec(p=0.0, q0=0.7, q1=0.3)

    with pytest.raises(ParameterRangeError):
        _ = SbmSpec(p=1.0, q0=0.7, q1=0.3)

    with pytest.raises(ParameterRangeError):
        _ = SbmSpec(p=0.5, q0=1.2, q1=0.3)


def test_sbm_general():
    assert sbm_general([1.0], [[0.6]]) == constant(0.6)
    assert difference_set_graphon().k == 7

    with pytest.raises(DimensionMismatchError):
        _ = sbm_general([0.5, 0.5], [[0.1]])

    with pytest.raises(InvalidStepGraphonError):
        _ = sbm_general([0.5, 0.5], [[0.1, 0.2], [0.3, 0.1]])


def test_constant():
    assert constant(0.0).values.tolist() == [[0.0]]
    assert constant(1.0).eval(0.3, 0.9) == 1.0

    with pytest.raises(ParameterRangeError):
        _ = constant(1.1)


def test_gradient_repr():
    assert repr(gradient()) == "AnalyticGraphon(gradient)"


def test_irm_is_valid_and_deterministic():
    spec = IrmSpec(alpha=3.0, a=3.0, b=2.9, customers=2_000)
    a = irm(spec, seed=5)
    b = irm(spec, seed=5)

    assert a == b
    assert a.widths.sum() == pytest.approx(1.0)
    assert np.array_equal(a.values, a.values.T)


def test_irm_block_values_follow_beta_mean():
    spec = IrmSpec(alpha=3.0, a=3.0, b=2.9, customers=1_000)

    graphons = [irm(spec, seed=s) for s in range(40)]
    values = np.concatenate([w.values[np.triu_indices(w.k)] for w in graphons])

    # Beta(3, 2.9) has mean 0.508 and sd 0.19
    assert abs(values.mean() - 3.0 / 5.9) < 4 * 0.19 / np.sqrt(values.size)


def test_irm_tiny_alpha_is_constant():
    w = irm(IrmSpec(alpha=1e-9, a=3.0, b=2.9, customers=1_000), seed=0)

    assert w.k == 1


def test_irm_class_count_grows_with_alpha():
    def mean_classes(alpha: float) -> float:
        spec = IrmSpec(alpha=alpha, a=1.0, b=1.0, customers=500)
        return float(np.mean([irm(spec, seed=s).k for s in range(100)]))

    assert mean_classes(3.0) > mean_classes(0.3)


def test_irm_spec_validation():
    with pytest.raises(ParameterRangeError):
        _ = IrmSpec(alpha=0.0, a=1.0, b=1.0)

    with pytest.raises(ParameterRangeError):
        _ = IrmSpec(alpha=1.0, a=1.0, b=1.0, customers=0)
