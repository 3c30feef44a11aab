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

import zlib

import numpy as np


def _spawn_key(operation: str, keys: tuple[int, ...]) -> tuple[int, ...]:
    return (zlib.crc32(operation.encode()), *keys)


def stream(operation: str, seed: int, *keys: int) -> np.random.Generator:
    """Named deterministic stream for one (operation, seed, *keys).

    Streams of different operations are independent, so adding draws to one operation
    never shifts the numbers another operation sees.
    """
    seq = np.random.SeedSequence(seed, spawn_key=_spawn_key(operation, keys))
    return np.random.default_rng(seq)


def derive_seed(operation: str, seed: int, *keys: int) -> int:
    seq = np.random.SeedSequence(seed, spawn_key=_spawn_key(operation, keys))
    return int(seq.generate_state(1, dtype=np.uint32)[0])
