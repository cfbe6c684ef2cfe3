"""Entanglement timescale of bipartite product-state quenches."""

import json as _json

from ._enttime import *  # noqa: F401,F403
from ._enttime import __version__, verify_json as _verify_json


def verify(spec_path, alphas=(2, 3, 4), tol=0.01):
    """Predicted vs finite-difference curvature checks for a model spec file."""
    return _json.loads(_verify_json(str(spec_path), list(alphas), tol))
