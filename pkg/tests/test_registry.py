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

from pathlib import Path

import pytest

from isfe import IrmSpec, SpecRegistry, StepGraphon, constant, irm, write_step_graphon
from isfe._estimator import DegreeBinPartitioner, RandomPartitioner, TrivialPartitioner
from isfe._graphon import Graphon
from isfe._registry import graphon_registry, partitioner_registry
from isfe.errors import (
    SpecArgumentError,
    SpecArityError,
    SpecNameExistsError,
    UnknownSpecNameError,
)
from tests.fixtures import custom_graphons
from tests.fixtures.graphs import star


def test_registry_scan():
    reg: SpecRegistry[Graphon] = SpecRegistry("graphon")
    _ = reg.scan([custom_graphons])

    # marked constructors imported into the module are found as well
    assert reg.names == ["blocks", "constant", "half", "pair", "seeded"]


def test_registry_parse_plain_and_dataclass():
    reg: SpecRegistry[Graphon] = SpecRegistry("graphon")
    _ = reg.scan([custom_graphons])

    assert reg.parse("half") == constant(0.5)

    blocks = reg.parse("blocks:0.25")
    assert isinstance(blocks, StepGraphon)
    assert blocks.values.tolist() == [[1.0, 0.25], [0.25, 1.0]]
    assert reg.parse("blocks:0.25,0.75") == reg.parse("pair:0.25,0.75")


def test_registry_injects_seed():
    reg: SpecRegistry[Graphon] = SpecRegistry("graphon")
    _ = reg.scan([custom_graphons])

    assert reg.parse("seeded:0.2", seed=0) == constant(0.2)
    assert reg.parse("seeded:0.2", seed=1) == constant(0.8)


def test_registry_errors():
    reg: SpecRegistry[Graphon] = SpecRegistry("graphon")
    _ = reg.scan([custom_graphons])

    with pytest.raises(UnknownSpecNameError):
        _ = reg.parse("missing:1")

    with pytest.raises(SpecArityError):
        _ = reg.parse("pair:0.1,0.2,0.3")

    with pytest.raises(SpecArityError):
        _ = reg.parse("blocks")

    with pytest.raises(SpecArgumentError):
        _ = reg.parse("pair:low")


def test_registry_register_twice():
    reg: SpecRegistry[Graphon] = SpecRegistry("graphon")
    _ = reg.register("half", custom_graphons.half)
    _ = reg.register("half", custom_graphons.half)

    with pytest.raises(SpecNameExistsError):
        _ = reg.register("half", custom_graphons.pair)


def test_graphon_registry_builtin_specs(tmp_path: Path):
    reg = graphon_registry()

    assert reg.names == ["constant", "file", "gradient", "irm", "sbm2"]
    assert reg.parse("constant:0.5") == constant(0.5)
    sbm = reg.parse("sbm2:0.5,0.7,0.3")
    assert isinstance(sbm, StepGraphon)
    assert sbm.values.tolist() == [[0.7, 0.3], [0.3, 0.7]]
    assert reg.parse("gradient").eval(0.0, 0.0) == 1.0
    assert reg.parse("irm:3,3,2.9", seed=4) == irm(IrmSpec(alpha=3.0, a=3.0, b=2.9), seed=4)

    path = tmp_path / "steps, with comma.txt"
    w = StepGraphon([0.25, 0.75], [[0.9, 0.2], [0.2, 0.4]])
    write_step_graphon(w, path)
    assert reg.parse(f"file:{path}") == w


def test_partitioner_registry():
    reg = partitioner_registry()
    g = star(5)

    assert reg.names == ["degree", "discrete", "random", "trivial"]
    assert isinstance(reg.parse("trivial"), TrivialPartitioner)
    assert reg.parse("discrete")(g).k == 6

    random = reg.parse("random:3", seed=9)
    assert isinstance(random, RandomPartitioner)
    assert random(g) == RandomPartitioner(3, seed=9)(g)

    degree = reg.parse("degree:2")
    assert isinstance(degree, DegreeBinPartitioner)
    assert degree(g).assignment.tolist() == [0, 0, 0, 1, 1, 1]


def test_partitioner_registry_bad_argument():
    with pytest.raises(SpecArgumentError):
        _ = partitioner_registry().parse("degree:two")
