"""Strong approximation of quasi-periodic functions (bindings to the C++ core)."""

import json as _json

from ._apsum import *  # noqa: F401,F403
from ._apsum import run_config as _run_config


def run(config, base_dir="."):
    """Run an experiment config (dict) and return the report as a dict."""
    return _json.loads(_run_config(_json.dumps(config), base_dir))
