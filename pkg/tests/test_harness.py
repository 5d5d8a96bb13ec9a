"""Harness: conditions table, configs, episodes, grids, metrics, CLI."""

import numpy as np
import pytest

from teachsim.domains.fractions import Fraction, FractionProblem
from teachsim.domains.functions import INPUTS, predicate
from teachsim.harness import cli
from teachsim.harness.conditions import (
    FRACTION_CONDITIONS,
    FUNCTION_CONDITION_BY_ID,
    FUNCTION_CONDITIONS,
    HUMAN_CONDITIONS,
    VERB_CONDITIONS,
    conditions_for_task,
    spurious_intercept_options,
    spurious_predicate_options,
)
from teachsim.harness.config import (
    DEFAULT_HORIZONS,
    DEFAULT_SEEDS,
    TYPE_QUERY_CHECKPOINTS,
    ExperimentConfig,
    build_context,
)
from teachsim.harness.episode import run_episode
from teachsim.harness.grid import (
    expand_grid,
    metrics_row,
    read_metrics,
    run_grid,
    summarize,
    write_outputs,
)
from teachsim.harness.metrics import (
    auc,
    classify_example_target,
    critical_examples,
    steps_until_all_critical,
    type_accuracy_over_time,
)

# --- conditions --------------------------------------------------------------


def test_condition_table_shape():
    assert len(FUNCTION_CONDITIONS) == 24
    assert len({c.condition_id for c in FUNCTION_CONDITIONS}) == 24
    assert len(HUMAN_CONDITIONS) == 11
    assert FRACTION_CONDITIONS == ("mult-learner", "add-learner")
    assert VERB_CONDITIONS == ("+ed-learner", "+d-learner", "+ied-learner", "+consonant+ed-learner")


def test_condition_rows_follow_the_generation_rules():
    for condition in FUNCTION_CONDITIONS:
        assert condition.spurious_predicate in spurious_predicate_options(
            condition.target_predicate
        )
        assert condition.spurious_intercept in spurious_intercept_options(condition.intercept)
        assert condition.spurious_predicate != condition.target_predicate


def test_condition_yields_one_learner_per_misconception():
    condition = FUNCTION_CONDITION_BY_ID["greater_2_a1_b7"]
    pred_type, int_type = condition.student_types()
    assert pred_type.name == "predicate-learner"
    assert pred_type.claimed_predicate == "greater_4"  # spurious
    assert pred_type.claimed_intercept == 7  # true b
    assert int_type.name == "intercept-learner"
    assert int_type.claimed_predicate == "greater_2"  # true f
    assert int_type.claimed_intercept == 3  # spurious
    concept = condition.target_concept()
    assert concept.name == "greater_2|a=1|b=7"


def test_spurious_predicate_options_samples():
    assert spurious_predicate_options("prime") == ["odd"]
    assert spurious_predicate_options("even") == ["divisible_4", "divisible_6"]
    assert "positive" in spurious_predicate_options("greater_2")
    assert "greater_4" in spurious_predicate_options("greater_2")
    assert "divisible_8" in spurious_predicate_options("divisible_4")
    assert "even" in spurious_predicate_options("divisible_4")
    assert spurious_predicate_options("positive") == ["greater_1", "greater_2"]


def test_conditions_for_task():
    assert conditions_for_task("fractions") == FRACTION_CONDITIONS
    assert len(conditions_for_task("functions")) == 24
    assert conditions_for_task("verbs") == VERB_CONDITIONS
    with pytest.raises(ValueError):
        conditions_for_task("chemistry")


# --- metrics -----------------------------------------------------------------


def test_auc_fixtures():
    assert auc([0.25] * 11) == pytest.approx(0.25)
    assert auc(np.linspace(0.0, 1.0, 41)) == pytest.approx(0.5)
    assert auc([0.7]) == pytest.approx(0.7)
    assert auc([0.0, 1.0]) == pytest.approx(0.5)
    with pytest.raises(ValueError):
        auc([])


def test_critical_examples_flagship_pair():
    assert critical_examples("greater_2", "greater_4") == [3, 4]
    assert critical_examples(predicate("greater_2"), predicate("greater_4")) == [3, 4]


def test_critical_examples_match_brute_force_for_all_conditions():
    for condition in FUNCTION_CONDITIONS:
        target = predicate(condition.target_predicate)
        spurious = predicate(condition.spurious_predicate)
        expected = [x for x in INPUTS if target(x) != spurious(x)]
        assert critical_examples(target, spurious) == expected
        assert expected, condition.condition_id  # a condition needs criticals


def test_steps_until_all_critical():
    assert steps_until_all_critical([5, 3, 9, 4], [3, 4]) == 4
    assert steps_until_all_critical([3, 4, 5], [3, 4]) == 2
    assert steps_until_all_critical([5, 6], [3]) is None
    assert steps_until_all_critical([], []) is None  # vacuous but never satisfied


def test_classify_example_target_fractions():
    equal_mul = FractionProblem(Fraction(1, 3), Fraction(2, 3), "mul")
    diff_add = FractionProblem(Fraction(1, 3), Fraction(1, 2), "add")
    equal_add = FractionProblem(Fraction(1, 3), Fraction(2, 3), "add")
    assert classify_example_target("fractions", equal_mul, None) == "mult-learner"
    assert classify_example_target("fractions", diff_add, None) == "add-learner"
    assert classify_example_target("fractions", equal_add, None) == "neither"


def test_classify_example_target_functions():
    condition = FUNCTION_CONDITION_BY_ID["greater_2_a1_b7"]
    assert classify_example_target("functions", 5, condition) == "predicate"
    assert classify_example_target("functions", -5, condition) == "line"


def test_classify_example_target_verbs(corpus):
    lemma_ied = next(ex.lemma for ex in corpus.examples if ex.verb_class == "+ied")
    lemma_ed = next(ex.lemma for ex in corpus.examples if ex.verb_class == "+ed")
    assert (
        classify_example_target("verbs", lemma_ied, "+ied-learner", corpus)
        == "targets-misconception"
    )
    assert classify_example_target("verbs", lemma_ed, "+ied-learner", corpus) == "known-class"
    with pytest.raises(ValueError):
        classify_example_target("verbs", lemma_ed, "+ied-learner")


def test_type_accuracy_over_time():
    results = run_grid(
        expand_grid("fractions", policies=["adaptive"], seeds=[0], horizon=12)
    )
    table = type_accuracy_over_time(results, [10, 12])
    assert set(table) == {10, 12}
    assert 0.0 <= table[10] <= 1.0


# --- config ------------------------------------------------------------------


def test_config_resolution_defaults():
    config = ExperimentConfig(task="fractions", condition="mult-learner", policy="random")
    resolved = config.resolved()
    assert resolved.horizon == DEFAULT_HORIZONS["fractions"] == 40
    assert resolved.student_type == "mult-learner"
    assert DEFAULT_HORIZONS["verbs"] == 50
    assert DEFAULT_SEEDS == (0, 1, 2)
    assert TYPE_QUERY_CHECKPOINTS == (10, 20, 30, 40)
    assert resolved.episode_id == "fractions.mult-learner.mult-learner.random.s0"


def test_function_configs_must_name_the_student_type():
    config = ExperimentConfig(task="functions", condition="greater_2_a1_b7", policy="random")
    with pytest.raises(ValueError):
        config.resolved()


def test_unknown_task_rejected():
    with pytest.raises(ValueError):
        ExperimentConfig(task="geometry", condition="x", policy="random")


def test_build_context_rejects_unknown_student_type():
    config = ExperimentConfig(
        task="fractions", condition="mult-learner", policy="random", student_type="div-learner"
    )
    with pytest.raises(ValueError):
        build_context(config)


def test_make_teacher_covers_every_policy(gspace):
    base = ExperimentConfig(
        task="functions",
        condition="greater_2_a1_b7",
        policy="random",
        student_type="predicate-learner",
    )
    for policy in ("random", "ranking", "ranking-known", "nonadaptive", "nonadaptive-known", "adaptive"):
        context = build_context(
            ExperimentConfig(**{**base.__dict__, "policy": policy})
        )
        teacher = context.make_teacher(np.random.default_rng(0), np.random.default_rng(1))
        index = teacher.select()
        assert 0 <= index < len(context.pool)
    with pytest.raises(ValueError):
        build_context(
            ExperimentConfig(**{**base.__dict__, "policy": "telepathic"})
        ).make_teacher(np.random.default_rng(0), np.random.default_rng(1))


# --- episodes ----------------------------------------------------------------


def test_episode_is_deterministic_and_seed_sensitive():
    config = ExperimentConfig(
        task="fractions", condition="add-learner", policy="adaptive", seed=3, horizon=10
    )
    first = run_episode(config)
    second = run_episode(config)
    assert first.curve == second.curve
    assert [s.example for s in first.steps] == [s.example for s in second.steps]
    # seed drives selection: random-policy trajectories diverge across seeds
    random_picks = [
        [
            s.example
            for s in run_episode(
                ExperimentConfig(
                    task="fractions",
                    condition="add-learner",
                    policy="random",
                    seed=seed,
                    horizon=10,
                )
            ).steps
        ]
        for seed in (3, 4)
    ]
    assert random_picks[0] != random_picks[1]


def test_episode_shape_and_checkpoints():
    result = run_episode(
        ExperimentConfig(
            task="functions",
            condition="greater_2_a1_b7",
            policy="nonadaptive-known",
            student_type="predicate-learner",
            horizon=12,
        )
    )
    assert len(result.curve) == 13  # prior point plus one per step
    assert len(result.steps) == 12
    assert set(result.type_queries) == {10, 12}
    assert result.type_queries[12] == "predicate-learner"
    assert all(s.step == i + 1 for i, s in enumerate(result.steps))
    # guesses and labels are rendered json-friendly for transcripts
    assert all(isinstance(s.label, str) for s in result.steps)


def test_episode_type_queries_none_for_random():
    result = run_episode(
        ExperimentConfig(
            task="fractions", condition="mult-learner", policy="random", horizon=10
        )
    )
    assert result.type_queries == {10: None}


def test_fraction_curves_track_target_probability():
    result = run_episode(
        ExperimentConfig(
            task="fractions",
            condition="mult-learner",
            policy="nonadaptive-known",
            horizon=25,
        )
    )
    assert 0.0 <= min(result.curve) and max(result.curve) <= 1.0
    assert result.curve[-1] > 0.9  # known-type teaching drives belief to target
    assert result.curve[0] < 0.1


# --- grids -------------------------------------------------------------------


def test_expand_grid_counts():
    assert len(expand_grid("fractions")) == 2 * 6 * 3
    assert len(expand_grid("functions")) == 24 * 2 * 6 * 3
    assert len(expand_grid("verbs", policies=["random"], seeds=[0])) == 4
    only = expand_grid(
        "functions", conditions=["greater_2_a1_b7"], policies=["adaptive"], seeds=[0, 1]
    )
    assert len(only) == 2 * 2  # two learner types, two seeds
    assert {c.student_type for c in only} == {"predicate-learner", "intercept-learner"}
    with pytest.raises(ValueError):
        expand_grid("fractions", policies=["telepathic"])


def test_metrics_row_and_outputs_round_trip(tmp_path):
    results = run_grid(
        expand_grid("fractions", policies=["random", "adaptive"], seeds=[0], horizon=12)
    )
    row = metrics_row(results[0])
    assert row["task"] == "fractions"
    assert row["q10"] == "" or isinstance(row["q10"], str)
    assert 0.0 <= row["auc"] <= 1.0

    paths = write_outputs(results, tmp_path)
    rows = read_metrics(paths["metrics"])
    assert len(rows) == len(results)
    assert rows[0]["episode_id"] == results[0].episode_id
    assert float(rows[0]["auc"]) == pytest.approx(auc(results[0].curve))

    summary = summarize(rows)
    assert ("fractions", "adaptive") in summary["auc"]
    assert summary["auc"][("fractions", "adaptive")]["episodes"] == 2
    adaptive_q10 = summary["type_accuracy"].get(("fractions", "adaptive", 10))
    assert adaptive_q10 is not None
    assert ("fractions", "random", 10) not in summary["type_accuracy"]

    curves = paths["curves"].read_text().splitlines()
    assert curves[0] == "episode_id,step,value"
    assert len(curves) == 1 + sum(len(r.curve) for r in results)

    transcript_lines = paths["transcripts"].read_text().splitlines()
    assert len(transcript_lines) == sum(2 + len(r.steps) for r in results)


# --- cli ---------------------------------------------------------------------


def test_parse_config_file(tmp_path):
    path = tmp_path / "defaults.cfg"
    path.write_text("task = fractions\nhorizon=12 # short runs\n\npolicy = adaptive\n")
    assert cli.parse_config_file(path) == {
        "task": "fractions",
        "horizon": "12",
        "policy": "adaptive",
    }
    bad = tmp_path / "bad.cfg"
    bad.write_text("just words\n")
    with pytest.raises(ValueError):
        cli.parse_config_file(bad)


def test_cli_run_prints_episode_summary(capsys, tmp_path):
    code = cli.main(
        [
            "run",
            "--task",
            "fractions",
            "--condition",
            "mult-learner",
            "--policy",
            "adaptive",
            "--horizon",
            "10",
            "--out",
            str(tmp_path),
        ]
    )
    out = capsys.readouterr().out
    assert code == 0
    assert "fractions.mult-learner.mult-learner.adaptive.s0" in out
    assert "auc=" in out
    assert (tmp_path / "transcripts.jsonl").exists()


def test_cli_grid_and_analyze(capsys, tmp_path):
    out_dir = tmp_path / "grid"
    code = cli.main(
        [
            "grid",
            "--task",
            "fractions",
            "--policies",
            "random,adaptive",
            "--seeds",
            "0",
            "--horizon",
            "8",
            "--out",
            str(out_dir),
            "--quiet",
        ]
    )
    assert code == 0
    assert "4 episodes" in capsys.readouterr().out

    json_path = tmp_path / "summary.json"
    code = cli.main(
        ["analyze", "--metrics", str(out_dir / "metrics.csv"), "--json", str(json_path)]
    )
    out = capsys.readouterr().out
    assert code == 0
    assert "mean_auc" in out
    assert json_path.exists()


def test_cli_config_file_supplies_defaults(capsys, tmp_path):
    config = tmp_path / "run.cfg"
    config.write_text("task = fractions\ncondition = add-learner\npolicy = random\nhorizon = 6\n")
    code = cli.main(["run", "--config", str(config)])
    assert code == 0
    assert "add-learner" in capsys.readouterr().out
