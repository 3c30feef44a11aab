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

from dataclasses import replace
from pathlib import Path

import pandas as pd
import pytest

from isfe import PRESETS, ExperimentSpec, IsfeConfig, run_experiment
from isfe._experiment import CSV_COLUMNS, summarize
from isfe.errors import ParameterRangeError, UnknownSpecNameError


QUOTIENT = ExperimentSpec(
    graphon="constant:0.5",
    estimator="quotient",
    sizes=(60, 20),
    seeds=3,
    config=IsfeConfig(min_classes=1),
)


def test_rows_follow_sizes_then_seeds():
    frame = run_experiment(QUOTIENT)

    assert frame.columns.tolist() == list(CSV_COLUMNS)
    assert frame["n"].tolist() == [20, 20, 20, 60, 60, 60]
    assert frame["seed"].tolist() == [0, 1, 2, 0, 1, 2]
    assert set(frame["iterations"].tolist()) == {0}
    assert (frame["runtime_ms"] >= 0).all()


def test_quotient_of_constant_graphon_is_close():
    frame = run_experiment(replace(QUOTIENT, sizes=(200,)))

    assert (frame["mse"] < 0.01).all()


def test_experiment_is_deterministic():
    spec = replace(
        QUOTIENT,
        graphon="sbm2:0.3,0.7,0.3",
        estimator="isfe",
        config=IsfeConfig(min_classes=4, max_iterations=2),
    )

    first = run_experiment(spec).drop(columns="runtime_ms")
    second = run_experiment(spec).drop(columns="runtime_ms")

    pd.testing.assert_frame_equal(first, second)
    assert (first["iterations"] == 2).all()


def test_seed_changes_the_draws():
    first = run_experiment(replace(QUOTIENT, seed=0))
    second = run_experiment(replace(QUOTIENT, seed=1))

    assert first["mse"].tolist() != second["mse"].tolist()


def test_csv_files(tmp_path: Path):
    out = tmp_path / "runs.csv"
    summary = tmp_path / "summary.csv"

    frame = run_experiment(replace(QUOTIENT, out=out, summary_out=summary))

    written = pd.read_csv(out)
    assert written.columns.tolist() == list(CSV_COLUMNS)
    assert len(written) == len(frame)

    stats = pd.read_csv(summary)
    assert stats.columns.tolist() == ["n", "mean", "sd"]
    assert stats["n"].tolist() == [20, 60]


def test_summarize():
    frame = pd.DataFrame({"n": [10, 10, 5, 5], "mse": [0.1, 0.3, 0.2, 0.2]})

    stats = summarize(frame)

    assert stats["n"].tolist() == [5, 10]
    assert stats["mean"].tolist() == pytest.approx([0.2, 0.2])
    assert stats["sd"].tolist() == pytest.approx([0.0, 0.1414213562])


def test_irm_graphon_is_redrawn_per_seed():
    frame = run_experiment(replace(QUOTIENT, graphon="irm:3,3,2.9", sizes=(40,), seeds=2))

    assert len(frame) == 2


def test_spec_validation():
    with pytest.raises(ParameterRangeError):
        _ = replace(QUOTIENT, sizes=())

    with pytest.raises(ParameterRangeError):
        _ = replace(QUOTIENT, sizes=(0, 10))

    with pytest.raises(ParameterRangeError):
        _ = replace(QUOTIENT, seeds=0)

    with pytest.raises(UnknownSpecNameError):
        _ = run_experiment(replace(QUOTIENT, graphon="nope:1"))


def test_presets():
    assert sorted(PRESETS) == ["astroph", "epinions", "nips"]

    nips = PRESETS["nips"]
    assert (nips.top_k, nips.min_classes, nips.iterations) == (234, 95, 8)
    assert nips.init == "degree:90"
    assert PRESETS["epinions"].init == "degree:35"
