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

import numpy as np
import pytest

from isfe import (
    Graph,
    StepGraphon,
    constant,
    gradient,
    ingest_edge_list,
    read_step_graphon,
    render_pgm,
    shuffle_vertices,
    top_k_subgraph,
    write_step_graphon,
)
from isfe._io import ingest_top_k, read_pgm, write_edge_list
from isfe.errors import (
    EdgeListParseError,
    EmptyGraphFileError,
    InvalidStepGraphonError,
    ParameterRangeError,
)
from tests.fixtures.graphs import path4, random_graph, star


def write(tmp_path: Path, text: str) -> Path:
    path = tmp_path / "graph.txt"
    _ = path.write_text(text, encoding="utf-8")
    return path


def test_ingest_edge_list(tmp_path: Path):
    path = write(tmp_path, "# a comment\n10 20\n\n20 30\n30 30\n20 10\n")

    g = ingest_edge_list(path)

    assert g.n == 3
    assert list(g.edges()) == [(0, 1), (1, 2)]


def test_ingest_edge_list_keeps_loop_only_vertices(tmp_path: Path):
    g = ingest_edge_list(write(tmp_path, "5 5\n1 2\n"))

    assert g.n == 3
    assert list(g.edges()) == [(1, 2)]


@pytest.mark.parametrize("line", ["1 2 3", "a b", "1", "1 -2", "1 \u00b2"])
def test_ingest_edge_list_rejects_bad_lines(tmp_path: Path, line: str):
    with pytest.raises(EdgeListParseError):
        _ = ingest_edge_list(write(tmp_path, f"0 1\n{line}\n"))


@pytest.mark.parametrize("text", ["", "# only a comment\n", "3 3\n4 4\n"])
def test_ingest_edge_list_rejects_empty_files(tmp_path: Path, text: str):
    with pytest.raises(EmptyGraphFileError):
        _ = ingest_edge_list(write(tmp_path, text))


def test_write_edge_list(tmp_path: Path):
    path = tmp_path / "out.txt"
    write_edge_list(path4(), path)

    lines = path.read_text(encoding="utf-8").splitlines()

    assert lines == ["# vertices 4 edges 3", "0 1", "1 2", "2 3"]
    assert ingest_edge_list(path) == path4()


def test_top_k_subgraph():
    s = star(4)

    assert top_k_subgraph(s, 5) == s
    assert top_k_subgraph(s, 2) == Graph.complete(2)
    assert top_k_subgraph(s, 1) == Graph.empty(1)

    with pytest.raises(ParameterRangeError):
        _ = top_k_subgraph(s, 6)

    with pytest.raises(ParameterRangeError):
        _ = top_k_subgraph(s, 0)


def test_top_k_subgraph_keeps_relative_order():
    # degrees 1, 3, 2, 2, 2, 0
    g = Graph.from_edges(6, [(0, 1), (1, 2), (1, 3), (2, 4), (3, 4)])

    sub = top_k_subgraph(g, 3)

    assert sub == Graph.from_edges(3, [(0, 1), (0, 2)])


def test_ingest_top_k_matches_dense_path(tmp_path: Path):
    g = random_graph(30, 0.2, seed=5)
    path = tmp_path / "random.txt"
    write_edge_list(g, path)

    for k in (1, 7, 20):
        assert ingest_top_k(path, k) == top_k_subgraph(ingest_edge_list(path), k)


def test_shuffle_vertices():
    g = random_graph(20, 0.3, seed=2)

    shuffled = shuffle_vertices(g, seed=1)

    assert shuffled.edge_total == g.edge_total
    assert sorted(shuffled.degrees().tolist()) == sorted(g.degrees().tolist())
    assert shuffle_vertices(g, seed=1) == shuffled


def test_step_graphon_file_round_trip(tmp_path: Path):
    w = StepGraphon([0.1, 0.2, 0.7], [[0.3, 1 / 3, 0.0], [1 / 3, 0.9, 0.25], [0.0, 0.25, 1.0]])
    path = tmp_path / "w.txt"

    write_step_graphon(w, path)

    assert read_step_graphon(path) == w


def test_read_step_graphon_rejects_bad_tables(tmp_path: Path):
    path = write(tmp_path, "0.5 0.5\n0.1 0.2\n")

    with pytest.raises(InvalidStepGraphonError):
        _ = read_step_graphon(path)


@pytest.mark.parametrize("text", ["0.5 0.5\n1 0\n0\n", "0.5 0.5\n1 x\n0 1\n"])
def test_read_step_graphon_rejects_malformed_files(tmp_path: Path, text: str):
    with pytest.raises(InvalidStepGraphonError):
        _ = read_step_graphon(write(tmp_path, text))


def test_render_pgm_constants(tmp_path: Path):
    path = tmp_path / "w.pgm"

    for value, pixel in ((0.0, 255), (1.0, 0), (0.5, 128)):
        render_pgm(constant(value), 4, path)
        image = read_pgm(path)

        assert image.shape == (4, 4)
        assert set(image.ravel().tolist()) == {pixel}

    assert path.stat().st_size == len(b"P5\n4 4\n255\n") + 16


def test_render_pgm_matrix(tmp_path: Path):
    path = tmp_path / "m.pgm"

    render_pgm(np.array([[1.0, 0.0], [0.0, 1.0]]), 4, path)
    image = read_pgm(path)

    assert image[:2, :2].tolist() == [[0, 0], [0, 0]]
    assert image[:2, 2:].tolist() == [[255, 255], [255, 255]]
    assert image[3, 3] == 0


def test_render_pgm_gradient(tmp_path: Path):
    path = tmp_path / "g.pgm"

    render_pgm(gradient(), 8, path)
    image = read_pgm(path).astype(np.int64)

    assert image[0, 0] < image[7, 7]
    assert np.array_equal(image, image.T)

    with pytest.raises(ParameterRangeError):
        render_pgm(gradient(), 0, path)
