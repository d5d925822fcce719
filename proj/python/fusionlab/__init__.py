"""Python bindings for the fusionlab library."""

import json

from ._core import (
    ComputationError,
    InputError,
    moments,
    multiply,
    norm_bounds,
    run,
    validate,
    walk_distribution,
)

__all__ = [
    "ComputationError",
    "InputError",
    "moments",
    "multiply",
    "norm_bounds",
    "report",
    "run",
    "validate",
    "walk_distribution",
]


def report(*args):
    """Run a command with JSON output and return the parsed report.

    Raises InputError for exit code 2 and ComputationError for exit code 1.
    """
    code, out, err = run([*args, "--format", "json"])
    if code == 2:
        raise InputError(err.strip())
    if code != 0:
        raise ComputationError(err.strip())
    return json.loads(out)
