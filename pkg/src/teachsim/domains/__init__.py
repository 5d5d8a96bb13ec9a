from teachsim.domains import fractions, functions, verbs

TASKS = ("fractions", "functions", "verbs")

__all__ = ["fractions", "functions", "verbs", "TASKS"]
