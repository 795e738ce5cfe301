"""Problems with oracle solutions, experiment execution and artifacts."""

from fixpoint.harness.experiment import Summary, compare, compare_from_dict, run_experiment
from fixpoint.harness.oracle import OracleError, project_onto_intersection
from fixpoint.harness.plotting import emit_plot
from fixpoint.harness.problems import ExperimentConfig, ProblemSpec, load_config, oracle_target

__all__ = [
    "ExperimentConfig",
    "OracleError",
    "ProblemSpec",
    "Summary",
    "compare",
    "compare_from_dict",
    "emit_plot",
    "load_config",
    "oracle_target",
    "project_onto_intersection",
    "run_experiment",
]
