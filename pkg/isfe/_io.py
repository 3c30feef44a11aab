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

from pathlib import Path

import networkx as nx
import numpy as np
import numpy.typing as npt

from isfe._graph import Graph
from isfe._graphon import Graphon, StepGraphon
from isfe._random import stream
from isfe._types import FloatMatrix, IntVector
from isfe.errors import (
    EdgeListParseError,
    EmptyGraphFileError,
    InvalidStepGraphonError,
    ParameterRangeError,
)

PGM_MAXVAL = 255


def read_step_graphon(path: Path) -> StepGraphon:
    """Whitespace matrix file: first line the k widths, then the k x k values."""
    try:
        table = np.loadtxt(path, dtype=np.float64, ndmin=2)
    except ValueError as e:
        raise InvalidStepGraphonError(f"{path} is not a numeric table: {e}") from e

    k = table.shape[1]

    if table.shape != (k + 1, k):
        raise InvalidStepGraphonError(
            f"{path} holds a {table.shape[0]}x{k} table, expected {k + 1}x{k}"
        )

    return StepGraphon(table[0], table[1:])


def write_step_graphon(graphon: StepGraphon, path: Path) -> None:
    table = np.vstack([graphon.widths, graphon.values])
    np.savetxt(path, table, fmt="%.17g")


def read_edge_list(path: Path) -> nx.Graph[int]:
    """Parse ``u v`` lines; ``#`` lines are comments, self-loops and repeats are dropped.

    Node insertion order is the order of first appearance.
    """
    graph: nx.Graph[int] = nx.Graph()

    with path.open(encoding="utf-8") as f:
        for line_no, line in enumerate(f, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue

            tokens = stripped.split()
            if len(tokens) != 2 or not all(t.isascii() and t.isdigit() for t in tokens):  # noqa: PLR2004
                raise EdgeListParseError(path, line_no, line.rstrip("\n"))

            u, v = int(tokens[0]), int(tokens[1])
            graph.add_node(u)
            graph.add_node(v)
            if u != v:
                graph.add_edge(u, v)

    if graph.number_of_edges() == 0:
        raise EmptyGraphFileError(path)

    return graph


def _dense(graph: nx.Graph[int], nodes: list[int]) -> Graph:
    a = nx.to_numpy_array(graph, nodelist=nodes, dtype=np.bool_, weight=None)
    return Graph(a)


def ingest_edge_list(path: Path) -> Graph:
    """Edge list file as a dense simple graph, vertices numbered by first appearance."""
    graph = read_edge_list(path)
    return _dense(graph, list(graph.nodes))


def _top_k_vertices(degrees: IntVector, top_k: int) -> IntVector:
    n = degrees.shape[0]
    if not (1 <= top_k <= n):
        raise ParameterRangeError("K", top_k, f"in [1, {n}]")

    # highest degree first, smaller index first among equal degrees
    chosen = np.lexsort((np.arange(n), -degrees))[:top_k]
    return np.sort(chosen).astype(np.int64)


def top_k_subgraph(graph: Graph, top_k: int) -> Graph:
    """Induced subgraph on the K highest-degree vertices, original relative order kept."""
    return graph.induced_subgraph(_top_k_vertices(graph.degrees(), top_k))


def dense_top_k(graph: nx.Graph[int], top_k: int) -> Graph:
    """Dense K-vertex subgraph of a parsed edge list, same result as ``top_k_subgraph``."""
    nodes = list(graph.nodes)
    degrees = np.fromiter((graph.degree(v) for v in nodes), dtype=np.int64, count=len(nodes))
    chosen = [nodes[i] for i in _top_k_vertices(degrees, top_k).tolist()]

    return _dense(graph.subgraph(chosen), chosen)


def ingest_top_k(path: Path, top_k: int) -> Graph:
    """``top_k_subgraph(ingest_edge_list(path), K)`` without a dense n x n intermediate."""
    return dense_top_k(read_edge_list(path), top_k)


def shuffle_vertices(graph: Graph, seed: int) -> Graph:
    order = stream("shuffle_vertices", seed).permutation(graph.n)
    return graph.permuted(order)


def write_edge_list(graph: Graph, path: Path) -> None:
    with path.open("w", encoding="utf-8") as f:
        _ = f.write(f"# vertices {graph.n} edges {graph.edge_total}\n")
        for u, v in graph.edges():
            _ = f.write(f"{u} {v}\n")


def _pixel_values(image: Graphon | npt.ArrayLike, resolution: int) -> FloatMatrix:
    centers = (np.arange(resolution, dtype=np.float64) + 0.5) / resolution

    if isinstance(image, Graphon):
        # row a is the y coordinate, column b the x coordinate
        return image.evaluate(centers[None, :], centers[:, None])

    m = np.asarray(image, dtype=np.float64)
    rows = np.minimum((centers * m.shape[0]).astype(np.int64), m.shape[0] - 1)
    cols = np.minimum((centers * m.shape[1]).astype(np.int64), m.shape[1] - 1)
    return m[np.ix_(rows, cols)]


def render_pgm(image: Graphon | npt.ArrayLike, resolution: int, path: Path) -> None:
    """Binary greyscale PGM where darker pixels are values closer to 1."""
    if resolution < 1:
        raise ParameterRangeError("resolution", resolution, "a positive integer")

    v = np.clip(_pixel_values(image, resolution), 0.0, 1.0)
    # round half up: 0.5 renders as 128
    pixels = np.floor(PGM_MAXVAL * (1.0 - v) + 0.5).astype(np.uint8)

    header = f"P5\n{resolution} {resolution}\n{PGM_MAXVAL}\n".encode("ascii")
    _ = path.write_bytes(header + pixels.tobytes())


def read_pgm(path: Path) -> npt.NDArray[np.uint8]:
    data = path.read_bytes()
    # the payload may start with whitespace bytes, so the header is split on its newlines
    magic, size, maxval, payload = data.split(b"\n", maxsplit=3)
    width, height = size.split()

    if magic != b"P5" or int(maxval) != PGM_MAXVAL:
        raise ParameterRangeError("pgm header", data[:16], "a P5 header with maxval 255")

    return np.frombuffer(payload, dtype=np.uint8).reshape(int(height), int(width))
