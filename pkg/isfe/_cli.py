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

import argparse
import logging
from collections.abc import Sequence
from pathlib import Path

import numpy as np

from isfe._analysis import monte_carlo_theorem, parse_analysis_config
from isfe._estimator import IsfeConfig, isfe_run, reorder_by_partition
from isfe._experiment import PRESETS, DatasetPreset, ExperimentSpec, run_experiment
from isfe._graph import Graph
from isfe._graphon import StepGraphon, sample
from isfe._io import (
    dense_top_k,
    ingest_edge_list,
    read_edge_list,
    render_pgm,
    shuffle_vertices,
    write_edge_list,
    write_step_graphon,
)
from isfe._registry import graphon_registry, partitioner_registry
from isfe._types import FloatMatrix
from isfe.errors import IsfeError

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

DEFAULT_RESOLUTION = 256

_logger = logging.getLogger("isfe")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="isfe", description="Graphon estimation toolkit")
    parser.add_argument("-v", "--verbose", action="count", default=0)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", type=Path)

    estimator = argparse.ArgumentParser(add_help=False)
    estimator.add_argument("--ell", type=int, help="minimum number of classes")
    estimator.add_argument("--decay", type=float, default=0.5)
    estimator.add_argument("--iters", type=int, help="number of ISFE iterations")
    estimator.add_argument("--init", help="trivial | discrete | random:k | degree:k")
    estimator.add_argument("--stop-threshold", type=float, default=0.0)

    commands = parser.add_subparsers(dest="command", required=True)

    generate = commands.add_parser("generate", parents=[common], help="sample a W-random graph")
    generate.add_argument("--graphon", required=True)
    generate.add_argument("--n", type=int, required=True)
    generate.add_argument("--latents-out", type=Path)

    estimate = commands.add_parser(
        "estimate", parents=[common, estimator], help="estimate a step graphon"
    )
    source = estimate.add_mutually_exclusive_group(required=True)
    source.add_argument("--graph", type=Path, help="edge list file")
    source.add_argument("--graphon", help="sample the graph from this graphon spec")
    estimate.add_argument("--n", type=int, help="sample size with --graphon")
    estimate.add_argument("--preset", choices=sorted(PRESETS))
    estimate.add_argument("--reordered-pgm", type=Path)
    estimate.add_argument("--graphon-pgm", type=Path)
    estimate.add_argument("--resolution", type=int, default=DEFAULT_RESOLUTION)

    evaluate = commands.add_parser(
        "evaluate", parents=[common, estimator], help="MSE sweep over graph sizes"
    )
    evaluate.add_argument("--graphon", required=True)
    evaluate.add_argument("--estimator", choices=["isfe", "quotient"], default="isfe")
    evaluate.add_argument("--sizes", type=int, nargs="+", required=True)
    evaluate.add_argument("--seeds", type=int, default=50)
    evaluate.add_argument("--summary", type=Path)

    render = commands.add_parser("render", parents=[common], help="render a graphon as PGM")
    render.add_argument("--graphon", required=True)
    render.add_argument("--resolution", type=int, default=DEFAULT_RESOLUTION)

    ingest = commands.add_parser("ingest", parents=[common], help="top-K subgraph of an edge list")
    ingest.add_argument("path", type=Path)
    size = ingest.add_mutually_exclusive_group(required=True)
    size.add_argument("--top-k", type=int)
    size.add_argument("--preset", choices=sorted(PRESETS))

    theorem = commands.add_parser("theorem", parents=[common], help="Monte-Carlo theorem check")
    theorem.add_argument("config", type=Path)
    theorem.add_argument("--trials-csv", type=Path)

    return parser


class _UsageError(IsfeError): ...


def _require_out(args: argparse.Namespace) -> Path:
    if args.out is None:
        raise _UsageError("--out is required for this command")
    return args.out


def _isfe_config(args: argparse.Namespace, preset: DatasetPreset | None) -> IsfeConfig:
    ell = args.ell if args.ell is not None else preset.min_classes if preset else None
    if ell is None:
        raise _UsageError("--ell is required without --preset")

    iters = args.iters if args.iters is not None else preset.iterations if preset else 1
    return IsfeConfig(
        min_classes=ell,
        decay=args.decay,
        max_iterations=iters,
        stop_threshold=args.stop_threshold,
    )


def _check_counts(graph_name: str, vertices: int, edges: int, preset: DatasetPreset) -> None:
    if (vertices, edges) != (preset.vertices, preset.edges):
        _logger.warning(
            "%s has %d vertices and %d edges, preset `%s` expects %d and %d",
            graph_name,
            vertices,
            edges,
            preset.name,
            preset.vertices,
            preset.edges,
        )


def _load_preset_graph(path: Path, preset: DatasetPreset, seed: int) -> Graph:
    raw = read_edge_list(path)
    _check_counts(str(path), raw.number_of_nodes(), raw.number_of_edges(), preset)
    return shuffle_vertices(dense_top_k(raw, preset.top_k), seed)


def _generate(args: argparse.Namespace) -> int:
    graphon = graphon_registry().parse(args.graphon, seed=args.seed)
    drawn = sample(graphon, args.n, args.seed)

    write_edge_list(drawn.graph, _require_out(args))
    if args.latents_out is not None:
        np.savetxt(args.latents_out, drawn.latents, fmt="%.17g")

    return EXIT_OK


def _estimate(args: argparse.Namespace) -> int:
    preset = PRESETS[args.preset] if args.preset else None
    truth: FloatMatrix | None = None

    if args.graphon is not None:
        if args.n is None or preset is not None:
            raise _UsageError("--graphon needs --n and takes no --preset")
        drawn = sample(graphon_registry().parse(args.graphon, seed=args.seed), args.n, args.seed)
        graph, truth = drawn.graph, drawn.value_matrix
    elif preset is not None:
        graph = _load_preset_graph(args.graph, preset, args.seed)
    else:
        graph = ingest_edge_list(args.graph)

    init = args.init or (preset.init if preset else "trivial")
    initial = partitioner_registry().parse(init, seed=args.seed)(graph)
    trace = isfe_run(graph, initial, _isfe_config(args, preset), truth)

    if args.out is not None:
        write_step_graphon(trace.final_graphon, args.out)
    if args.reordered_pgm is not None:
        reordered = reorder_by_partition(graph, trace.final_partition)
        render_pgm(reordered.adjacency, graph.n, args.reordered_pgm)
    if args.graphon_pgm is not None:
        render_pgm(trace.final_graphon, args.resolution, args.graphon_pgm)

    summary = (
        f"classes={trace.final_partition.k} iterations={trace.iteration_count} "
        f"stop={trace.stop_reason}"
    )
    if trace.mse:
        summary += f" mse={trace.mse[-1]!r}"
    print(summary)

    return EXIT_OK


def _evaluate(args: argparse.Namespace) -> int:
    # the quotient estimator ignores the ISFE knobs
    config = _isfe_config(args, None) if args.estimator == "isfe" else IsfeConfig(min_classes=1)
    spec = ExperimentSpec(
        graphon=args.graphon,
        estimator=args.estimator,
        init=args.init or "trivial",
        sizes=tuple(args.sizes),
        seeds=args.seeds,
        seed=args.seed,
        config=config,
        out=_require_out(args),
        summary_out=args.summary,
    )
    _ = run_experiment(spec)

    return EXIT_OK


def _render(args: argparse.Namespace) -> int:
    graphon = graphon_registry().parse(args.graphon, seed=args.seed)
    render_pgm(graphon, args.resolution, _require_out(args))

    if isinstance(graphon, StepGraphon):
        _logger.info("Rendered a %d-step graphon", graphon.k)

    return EXIT_OK


def _ingest(args: argparse.Namespace) -> int:
    if args.preset is not None:
        graph = _load_preset_graph(args.path, PRESETS[args.preset], args.seed)
    else:
        graph = shuffle_vertices(dense_top_k(read_edge_list(args.path), args.top_k), args.seed)

    write_edge_list(graph, _require_out(args))
    _logger.info("Kept %d vertices and %d edges", graph.n, graph.edge_total)

    return EXIT_OK


def _theorem(args: argparse.Namespace) -> int:
    cfg = parse_analysis_config(args.config.read_text(encoding="utf-8"), str(args.config))
    report = monte_carlo_theorem(cfg)
    report.write(_require_out(args), args.trials_csv)

    return EXIT_OK if report.passed else EXIT_FAILED


_COMMANDS = {
    "generate": _generate,
    "estimate": _estimate,
    "evaluate": _evaluate,
    "render": _render,
    "ingest": _ingest,
    "theorem": _theorem,
}


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)

    logging.basicConfig(
        level=max(logging.WARNING - 10 * args.verbose, logging.DEBUG),
        format="%(levelname)s %(name)s: %(message)s",
    )

    try:
        return _COMMANDS[args.command](args)

    except (IsfeError, OSError) as e:
        _logger.error("%s", e)  # noqa: TRY400
        return EXIT_USAGE
