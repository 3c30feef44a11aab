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

"""Small graphs shared by the tests, vertices numbered from 0."""

import numpy as np

from isfe import Graph, StepGraphon, sbm_general


def path4() -> Graph:
    return Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])


def two_edges() -> Graph:
    """Edges {0-1, 2-3}."""
    return Graph.from_edges(4, [(0, 1), (2, 3)])


def star(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, leaf) for leaf in range(1, leaves + 1)])


def two_triangles() -> Graph:
    return Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])


def random_graph(n: int, density: float, seed: int) -> Graph:
    rng = np.random.default_rng(seed)
    upper = np.triu(rng.random((n, n)) < density, k=1)
    return Graph(upper | upper.T)


def difference_set_graphon() -> StepGraphon:
    """7 equal steps, B_ij = 1 iff (i + j) mod 7 is in {1, 2, 4}.

    Rows of distinct steps differ in 4 of the 7 blocks.
    """
    residues = {1, 2, 4}
    values = [[1.0 if (i + j) % 7 in residues else 0.0 for j in range(7)] for i in range(7)]
    return sbm_general(np.full(7, 1 / 7), values)
