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

from collections.abc import Iterator
from typing import Any

import numpy.typing as npt

# element budget for temporary float blocks (128 MiB of float64)
_BLOCK_BUDGET = 1 << 24


def row_blocks(rows: int, width: int, budget: int = _BLOCK_BUDGET) -> Iterator[slice]:
    step = max(1, budget // max(1, width))
    for start in range(0, rows, step):
        yield slice(start, min(rows, start + step))


def frozen[A: npt.NDArray[Any]](a: A) -> A:
    a.setflags(write=False)
    return a

