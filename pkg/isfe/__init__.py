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

from ._analysis import (
    ConditionCheck,
    GroundTruth,
    SbmAnalysisConfig,
    TheoremHarness,
    TheoremReport,
    binomial_concentration,
    chernoff_lower_bound,
    condition_i,
    condition_ii,
    corrupt_partition,
    delta_from_tau,
    epsilon_delta_good_vertices,
    good_vertex_probability_bound,
    ground_truth,
    majority_fraction,
    monte_carlo_theorem,
    proposition_condition,
    random_centroid_iteration,
    theorem_bound,
)
from ._annotations import spec_constructor
from ._estimator import (
    EstimationTrace,
    IsfeConfig,
    IsfeEstimator,
    Partitioner,
    PartitionerKind,
    cluster_then_quotient,
    initial_partition,
    isfe_iteration,
    isfe_run,
    reorder_by_partition,
    select_min_classes,
    sort_by_latents,
    sort_classes,
    value_estimate,
)
from ._experiment import PRESETS, DatasetPreset, ExperimentSpec, run_experiment
from ._generators import IrmSpec, SbmSpec, constant, gradient, irm, sbm2, sbm_general
from ._graph import (
    Graph,
    Partition,
    WeightedGraph,
    density_vector,
    edge_count,
    edge_density,
    l1_distance,
    quotient,
)
from ._graphon import (
    AnalyticGraphon,
    Graphon,
    GraphonSample,
    StepGraphon,
    discretize,
    estimate_step_graphon,
    grid_sample,
    sample,
    step_graphon_of_weighted_graph,
)
from ._io import (
    ingest_edge_list,
    read_step_graphon,
    render_pgm,
    shuffle_vertices,
    top_k_subgraph,
    write_step_graphon,
)
from ._metrics import (
    CommonRefinement,
    common_refinement,
    cut_distance_graphs,
    cut_distance_step_upper,
    cut_metric_graphs,
    cut_metric_step,
    lp_distance,
    mise_upper_bound,
    mse,
)
from ._registry import SpecRegistry

__all__ = [
    "PRESETS",
    "AnalyticGraphon",
    "CommonRefinement",
    "ConditionCheck",
    "DatasetPreset",
    "EstimationTrace",
    "ExperimentSpec",
    "Graph",
    "Graphon",
    "GraphonSample",
    "GroundTruth",
    "IrmSpec",
    "IsfeConfig",
    "IsfeEstimator",
    "Partition",
    "Partitioner",
    "PartitionerKind",
    "SbmAnalysisConfig",
    "SbmSpec",
    "SpecRegistry",
    "StepGraphon",
    "TheoremHarness",
    "TheoremReport",
    "WeightedGraph",
    "binomial_concentration",
    "chernoff_lower_bound",
    "cluster_then_quotient",
    "common_refinement",
    "condition_i",
    "condition_ii",
    "constant",
    "corrupt_partition",
    "cut_distance_graphs",
    "cut_distance_step_upper",
    "cut_metric_graphs",
    "cut_metric_step",
    "delta_from_tau",
    "density_vector",
    "discretize",
    "edge_count",
    "edge_density",
    "epsilon_delta_good_vertices",
    "estimate_step_graphon",
    "good_vertex_probability_bound",
    "gradient",
    "grid_sample",
    "ground_truth",
    "ingest_edge_list",
    "initial_partition",
    "irm",
    "isfe_iteration",
    "isfe_run",
    "l1_distance",
    "lp_distance",
    "majority_fraction",
    "mise_upper_bound",
    "monte_carlo_theorem",
    "mse",
    "proposition_condition",
    "quotient",
    "random_centroid_iteration",
    "read_step_graphon",
    "render_pgm",
    "reorder_by_partition",
    "run_experiment",
    "sample",
    "sbm2",
    "sbm_general",
    "select_min_classes",
    "shuffle_vertices",
    "sort_by_latents",
    "sort_classes",
    "spec_constructor",
    "step_graphon_of_weighted_graph",
    "theorem_bound",
    "top_k_subgraph",
    "value_estimate",
    "write_step_graphon",
]
