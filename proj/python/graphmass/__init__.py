"""ADM mass of graphical asymptotically flat manifolds."""

import json as _json

from ._core import *  # noqa: F401,F403
from ._core import DomainSpec, FunctionSpec, __version__
from ._core import run as _run


def function(spec, n):
    """FunctionSpec from an expression string, a spec dict, or a list of either."""
    return FunctionSpec.from_json(_json.dumps(spec), n)


def domain(spec, n):
    return DomainSpec.from_json(_json.dumps(spec), n)


def run(command, config):
    """Run a batch command on a config dict; returns (report, exit_code)."""
    text, code = _run(command, _json.dumps(config))
    return _json.loads(text), code
