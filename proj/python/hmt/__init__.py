"""Python access to the hmt library and command-line driver."""

import json

from ._core import InvalidDatum, circuits, is_generic
from ._core import corpus as _corpus
from ._core import run as _run
from ._core import validate_dataset as _validate_dataset

__all__ = ["InvalidDatum", "circuits", "corpus", "is_generic", "run", "run_json", "validate_dataset"]


def corpus():
    """Built-in datasets as a list of dicts."""
    return json.loads(_corpus())


def validate_dataset(doc):
    """Validate a dataset/1 document (dict or JSON string) and return it normalized."""
    text = doc if isinstance(doc, str) else json.dumps(doc)
    return json.loads(_validate_dataset(text))


def run(*args):
    """Run the driver with the given arguments; returns (exit_code, stdout, stderr)."""
    return _run([str(a) for a in args])


def run_json(*args):
    """Run a subcommand with JSON output and return (exit_code, parsed report)."""
    code, out, err = run(*args, "--format", "json")
    if code not in (0, 1):
        raise RuntimeError(err.strip() or f"exit code {code}")
    return code, json.loads(out)
