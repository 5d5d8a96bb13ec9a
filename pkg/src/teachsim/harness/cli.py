"""Command-line entry points: run one episode, sweep a grid, analyze outputs."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from teachsim.harness.config import ExperimentConfig
from teachsim.harness.episode import run_episode
from teachsim.harness.grid import (
    expand_grid,
    metrics_row,
    read_metrics,
    run_grid,
    summarize,
    write_outputs,
)
from teachsim.harness.metrics import auc
from teachsim.teachers import POLICIES

TASKS = ("fractions", "functions", "verbs")


def parse_config_file(path: str | Path) -> dict[str, str]:
    """Read ``key = value`` lines; '#' starts a comment, blank lines ignored.

    Keys use the long option spelling with dashes or underscores.
    """
    values = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"bad config line (expected key=value): {raw!r}")
        key, value = line.split("=", 1)
        values[key.strip().replace("-", "_")] = value.strip()
    return values


def _int_list(text) -> list[int]:
    if isinstance(text, (list, tuple)):
        return [int(v) for v in text]
    return [int(part) for part in str(text).split(",") if part.strip() != ""]


def _str_list(text) -> list[str]:
    if isinstance(text, (list, tuple)):
        return list(text)
    return [part.strip() for part in str(text).split(",") if part.strip()]


def _print_summary(summary: dict) -> None:
    cells = sorted(summary["auc"].items())
    if cells:
        print(f"{'task':<10} {'policy':<18} {'episodes':>8} {'mean_auc':>9} {'min':>7} {'max':>7}")
        for (task, policy), stats in cells:
            print(
                f"{task:<10} {policy:<18} {stats['episodes']:>8d}"
                f" {stats['mean']:>9.4f} {stats['min']:>7.4f} {stats['max']:>7.4f}"
            )
    accuracy = sorted(summary["type_accuracy"].items())
    if accuracy:
        print()
        print(f"{'task':<10} {'policy':<18} {'step':>5} {'type_accuracy':>14}")
        for (task, policy, step), value in accuracy:
            print(f"{task:<10} {policy:<18} {step:>5d} {value:>14.4f}")


def cmd_run(args) -> int:
    config = ExperimentConfig(
        task=args.task,
        condition=args.condition,
        policy=args.policy,
        student_type=args.student_type,
        seed=int(args.seed),
        horizon=None if args.horizon is None else int(args.horizon),
    )
    result = run_episode(config)
    row = metrics_row(result)
    print(
        f"{result.episode_id}  auc={row['auc']:.4f}  final={row['final']:.4f}"
        f"  guess_accuracy={row['guess_accuracy']:.4f}"
    )
    for step, guess in sorted(result.type_queries.items()):
        shown = "-" if guess is None else guess
        print(f"  type query @ step {step:>2d}: {shown}")
    if args.out:
        paths = write_outputs([result], args.out)
        print(f"wrote {paths['transcripts']}")
    return 0


def cmd_grid(args) -> int:
    configs = expand_grid(
        task=args.task,
        conditions=None if args.conditions is None else _str_list(args.conditions),
        policies=None if args.policies is None else _str_list(args.policies),
        seeds=None if args.seeds is None else _int_list(args.seeds),
        horizon=None if args.horizon is None else int(args.horizon),
    )
    print(f"{len(configs)} episodes")

    def progress(result):
        if args.quiet:
            return
        print(f"  {result.episode_id}  auc={auc(result.curve):.4f}")

    results = run_grid(configs, progress=progress)
    paths = write_outputs(results, args.out)
    print(f"wrote {paths['metrics']}, {paths['curves']}, {paths['transcripts']}")
    _print_summary(summarize([metrics_row(r) for r in results]))
    return 0


def cmd_analyze(args) -> int:
    rows = read_metrics(args.metrics)
    if not rows:
        print("no episodes in metrics file", file=sys.stderr)
        return 1
    _print_summary(summarize(rows))
    if args.json:
        summary = summarize(rows)
        payload = {
            "auc": {"|".join(k): v for k, v in summary["auc"].items()},
            "type_accuracy": {
                "|".join(map(str, k)): v for k, v in summary["type_accuracy"].items()
            },
        }
        Path(args.json).write_text(json.dumps(payload, indent=2) + "\n")
        print(f"wrote {args.json}")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from teachsim.service.app import create_app

    app = create_app(store_dir=args.store, seed=int(args.seed))
    uvicorn.run(app, host=args.host, port=int(args.port))
    return 0


# argparse's required= would reject values supplied through --config files
# (set_defaults does not mark an action as seen), so requiredness and the
# choice checks are enforced after parsing instead.
_REQUIRED = {
    "run": ("task", "condition", "policy"),
    "grid": ("task", "out"),
    "analyze": ("metrics",),
    "serve": ("store",),
}
_CHOICES = {"task": TASKS, "policy": POLICIES}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="teachsim",
        description="Simulated-student teaching experiments and the human-study service.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a single teaching episode")
    run.add_argument("--config", help="key=value defaults file")
    run.add_argument("--task", choices=TASKS)
    run.add_argument("--condition")
    run.add_argument("--student-type", dest="student_type")
    run.add_argument("--policy", choices=POLICIES)
    run.add_argument("--seed", default=0)
    run.add_argument("--horizon")
    run.add_argument("--out", help="directory for transcript/metrics files")
    run.set_defaults(func=cmd_run)

    grid = sub.add_parser("grid", help="run a grid of episodes and write csv/jsonl outputs")
    grid.add_argument("--config", help="key=value defaults file")
    grid.add_argument("--task", choices=TASKS)
    grid.add_argument("--conditions", help="comma-separated condition ids (default: all)")
    grid.add_argument("--policies", help="comma-separated policies (default: all)")
    grid.add_argument("--seeds", help="comma-separated seeds (default: 0,1,2)")
    grid.add_argument("--horizon")
    grid.add_argument("--out")
    grid.add_argument("--quiet", action="store_true")
    grid.set_defaults(func=cmd_grid)

    analyze = sub.add_parser("analyze", help="summarize a metrics.csv")
    analyze.add_argument("--metrics")
    analyze.add_argument("--json", help="also write the summary as JSON")
    analyze.set_defaults(func=cmd_analyze)

    serve = sub.add_parser("serve", help="run the human-study session service")
    serve.add_argument("--store", help="event-log directory")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", default=8008)
    serve.add_argument("--seed", default=0)
    serve.set_defaults(func=cmd_serve)

    # --config defaults must land on the chosen subparser: subparsers parse
    # into a fresh namespace, so top-level set_defaults would be clobbered.
    parser.command_parsers = {"run": run, "grid": grid, "analyze": analyze, "serve": serve}
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    if "--config" in argv:
        path = argv[argv.index("--config") + 1]
        command = argv[0] if argv and not argv[0].startswith("-") else None
        target = parser.command_parsers.get(command, parser)
        target.set_defaults(**parse_config_file(path))
    args = parser.parse_args(argv)
    missing = [name for name in _REQUIRED[args.command] if getattr(args, name) is None]
    if missing:
        parser.error(
            "the following arguments are required: "
            + ", ".join(f"--{name}" for name in missing)
        )
    for name, choices in _CHOICES.items():
        value = getattr(args, name, None)
        if value is not None and value not in choices:
            parser.error(f"argument --{name}: invalid choice: {value!r} (choose from {choices})")
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
