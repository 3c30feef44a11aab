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

from dataclasses import dataclass

from isfe import StepGraphon, constant, spec_constructor


@dataclass(kw_only=True, frozen=True)
class BlockSpec:
    low: float
    high: float = 1.0


@spec_constructor(kind="graphon", name="half")
def half() -> StepGraphon:
    return constant(0.5)


@spec_constructor(kind="graphon", name="blocks")
def blocks(spec: BlockSpec) -> StepGraphon:
    return StepGraphon([0.5, 0.5], [[spec.high, spec.low], [spec.low, spec.high]])


@spec_constructor(kind="graphon", name="seeded")
def seeded(level: float, *, seed: int) -> StepGraphon:
    return constant(level if seed % 2 == 0 else 1.0 - level)


@spec_constructor(kind="graphon", name="pair")
def pair(low: float, high: float = 1.0) -> StepGraphon:
    return blocks(BlockSpec(low=low, high=high))


def not_marked() -> StepGraphon:
    return constant(0.0)
