"""Expand experiment grids, run them, and write tabular outputs.

A grid is the cross product of conditions, student types, policies, and
seeds for one task.  Outputs are three flat files per run directory:
``metrics.csv`` (one row per episode), ``curves.csv`` (one row per curve
point), and ``transcripts.jsonl`` (full step-by-step records).
"""

from __future__ import annotations

import csv
import json
from collections import defaultdict
from pathlib import Path
from typing import Callable, Iterable, Sequence

from teachsim.harness import conditions as cond
from teachsim.harness.config import DEFAULT_SEEDS, ExperimentConfig
from teachsim.harness.episode import EpisodeResult, run_episode
from teachsim.harness.metrics import auc
from teachsim.teachers import POLICIES

# Curve checkpoints across all tasks; unused columns stay blank per episode.
QUERY_COLUMNS = (10, 20, 30, 40, 50)


def expand_grid(
    task: str,
    conditions: Sequence[str] | None = None,
    policies: Sequence[str] | None = None,
    seeds: Sequence[int] | None = None,
    horizon: int | None = None,
) -> list[ExperimentConfig]:
    """All episode configs for one task, in deterministic order.

    For the function task each condition contributes one config per
    student type; for fractions and verbs the condition names the type.
    """
    if conditions is None:
        conditions = cond.conditions_for_task(task)
    if policies is None:
        policies = POLICIES
    if seeds is None:
        seeds = DEFAULT_SEEDS
    unknown = set(policies) - set(POLICIES)
    if unknown:
        raise ValueError(f"unknown policies: {sorted(unknown)}")

    configs = []
    for condition in conditions:
        if task == "functions":
            types = [t.name for t in cond.FUNCTION_CONDITION_BY_ID[condition].student_types()]
        else:
            types = [condition]
        for student_type in types:
            for policy in policies:
                for seed in seeds:
                    configs.append(
                        ExperimentConfig(
                            task=task,
                            condition=condition,
                            policy=policy,
                            student_type=student_type,
                            seed=seed,
                            horizon=horizon,
                        ).resolved()
                    )
    return configs


def metrics_row(result: EpisodeResult) -> dict:
    config = result.config
    row = {
        "episode_id": result.episode_id,
        "task": config.task,
        "condition": config.condition,
        "student_type": config.student_type,
        "policy": config.policy,
        "seed": config.seed,
        "horizon": config.horizon,
        "auc": auc(result.curve),
        "final": result.curve[-1],
        "guess_accuracy": result.guess_accuracy,
    }
    for step in QUERY_COLUMNS:
        guess = result.type_queries.get(step)
        row[f"q{step}"] = "" if guess is None else guess
        row[f"q{step}_correct"] = (
            "" if guess is None else int(guess == config.student_type)
        )
    return row


def run_grid(
    configs: Iterable[ExperimentConfig],
    progress: Callable[[EpisodeResult], None] | None = None,
) -> list[EpisodeResult]:
    """Run every episode in order.  Contexts are built per episode because
    the example pool is stateful (used marks)."""
    results = []
    for config in configs:
        result = run_episode(config)
        results.append(result)
        if progress is not None:
            progress(result)
    return results


def write_outputs(results: Sequence[EpisodeResult], out_dir: str | Path) -> dict[str, Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {
        "metrics": out / "metrics.csv",
        "curves": out / "curves.csv",
        "transcripts": out / "transcripts.jsonl",
    }

    rows = [metrics_row(r) for r in results]
    fields = list(rows[0].keys()) if rows else ["episode_id"]
    with open(paths["metrics"], "w", newline="") as handle:
        writer = csv.DictWriter(handle, fieldnames=fields)
        writer.writeheader()
        writer.writerows(rows)

    with open(paths["curves"], "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["episode_id", "step", "value"])
        for result in results:
            for step, value in enumerate(result.curve):
                writer.writerow([result.episode_id, step, repr(value)])

    with open(paths["transcripts"], "w") as handle:
        for result in results:
            config = result.config
            header = {
                "kind": "episode",
                "episode_id": result.episode_id,
                "task": config.task,
                "condition": config.condition,
                "student_type": config.student_type,
                "policy": config.policy,
                "seed": config.seed,
                "horizon": config.horizon,
            }
            handle.write(json.dumps(header) + "\n")
            for step in result.steps:
                record = {
                    "kind": "step",
                    "episode_id": result.episode_id,
                    "step": step.step,
                    "example": step.example,
                    "guess": step.guess,
                    "label": step.label,
                    "correct": step.correct,
                    "metric": step.metric,
                }
                handle.write(json.dumps(record) + "\n")
            summary = {
                "kind": "summary",
                "episode_id": result.episode_id,
                "auc": auc(result.curve),
                "final": result.curve[-1],
                "guess_accuracy": result.guess_accuracy,
                "type_queries": {
                    str(k): v for k, v in sorted(result.type_queries.items())
                },
            }
            handle.write(json.dumps(summary) + "\n")
    return paths


def read_metrics(path: str | Path) -> list[dict]:
    with open(path, newline="") as handle:
        return list(csv.DictReader(handle))


def summarize(rows: Iterable[dict]) -> dict:
    """Aggregate metrics rows into mean AUC and type accuracy tables.

    Returns ``{"auc": {(task, policy): {...}}, "type_accuracy":
    {(task, policy, checkpoint): fraction}}``.
    """
    by_cell = defaultdict(list)
    queries = defaultdict(list)
    for row in rows:
        cell = (row["task"], row["policy"])
        by_cell[cell].append(float(row["auc"]))
        for step in QUERY_COLUMNS:
            flag = row.get(f"q{step}_correct", "")
            if flag != "" and flag is not None:
                queries[cell + (step,)].append(int(flag))

    auc_table = {
        cell: {
            "mean": sum(values) / len(values),
            "min": min(values),
            "max": max(values),
            "episodes": len(values),
        }
        for cell, values in by_cell.items()
    }
    accuracy_table = {
        cell: sum(flags) / len(flags) for cell, flags in queries.items()
    }
    return {"auc": auc_table, "type_accuracy": accuracy_table}
