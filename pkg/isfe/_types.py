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
import numpy.typing as npt

type BoolMatrix = npt.NDArray[np.bool_]
type BoolVector = npt.NDArray[np.bool_]
type FloatMatrix = npt.NDArray[np.float64]
type FloatVector = npt.NDArray[np.float64]
type IntVector = npt.NDArray[np.int64]

# length-k vector whose entry j is (|P_j|/n) * e_G({x}, P_j)
type DensityVector = FloatVector
