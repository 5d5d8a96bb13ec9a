"""Experiment harness: conditions, configs, episodes, grids, metrics, CLI."""

from teachsim.harness.conditions import (
    FRACTION_CONDITIONS,
    FUNCTION_CONDITION_BY_ID,
    FUNCTION_CONDITIONS,
    FUNCTION_STUDENT_TYPES,
    HUMAN_CONDITIONS,
    VERB_CONDITIONS,
    FunctionCondition,
    conditions_for_task,
)
from teachsim.harness.config import (
    DEFAULT_HORIZONS,
    DEFAULT_SEEDS,
    TYPE_QUERY_CHECKPOINTS,
    ExperimentConfig,
    TaskContext,
    build_context,
)
from teachsim.harness.episode import EpisodeResult, StepRecord, episode_rngs, run_episode
from teachsim.harness.grid import expand_grid, metrics_row, run_grid, summarize, write_outputs
from teachsim.harness.metrics import (
    auc,
    critical_examples,
    steps_until_all_critical,
    type_accuracy_over_time,
)
