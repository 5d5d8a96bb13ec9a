"""Simulated students, adaptive teachers, and the experiment harness around them.

The package splits into layers that mirror the flow of an experiment:

- ``domains``: the three concept spaces (fraction arithmetic programs, piecewise
  linear functions, English past-tense verb classes) and their example pools.
- ``students``: Bayesian learners over those spaces, plus the per-type priors
  that encode systematic misconceptions.
- ``teachers``: example-selection policies, from random baselines to the
  adaptive teacher that infers the student's type online.
- ``llm``: a chat-transport adapter that lets a language model act as the
  teacher under the same protocol.
- ``harness``: episode runner, metrics, grid sweeps, and the CLI.
- ``service``: an HTTP/WebSocket session service for human studies.
"""

__version__ = "0.1.0"
