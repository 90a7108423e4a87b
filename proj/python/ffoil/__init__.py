"""Learning Prolog definitions of relations and functions from tuples."""

from ._ffoil import (
    Dataset,
    FfoilError,
    LearnResult,
    ParseError,
    gen_task,
    information,
    learn,
    list_vocabulary,
    score,
    solve,
    task_names,
)

__all__ = [
    "Dataset",
    "FfoilError",
    "LearnResult",
    "ParseError",
    "gen_task",
    "information",
    "learn",
    "list_vocabulary",
    "score",
    "solve",
    "task_names",
]
