"""Loop space decompositions of (2n-2)-connected (4n-1)-dimensional Poincare duality complexes."""

import json

from . import _core
from ._core import (
    PdloopError,
    ah_homology_dims,
    canonicalize,
    hm_series_check,
    localize,
    lyndon_words,
    mod_p_series,
    moore_split,
    parse_torsion_spec,
    poly_dims,
    smash_normalize,
    suspend_normalize,
)

RATIONAL = None  # pass as p for rational coefficients


def _report(result):
    code, out, err = result
    if code == 1:
        raise PdloopError(err.strip())
    return json.loads(out)


def decompose(n, torsion, max_degree=40, verify=True):
    """JSON report of the loop decomposition, as printed by `pdloop decompose --format json`."""
    return _report(_core.run_decompose(n, torsion, max_degree, verify))


def wedge(n, torsion, max_degree=40):
    return _report(_core.run_wedge(n, torsion, max_degree))


def tangent(n, r, max_degree=40):
    return _report(_core.run_tangent(n, r, max_degree))


__all__ = [
    "PdloopError",
    "RATIONAL",
    "ah_homology_dims",
    "canonicalize",
    "decompose",
    "hm_series_check",
    "localize",
    "lyndon_words",
    "mod_p_series",
    "moore_split",
    "parse_torsion_spec",
    "poly_dims",
    "smash_normalize",
    "suspend_normalize",
    "tangent",
    "wedge",
]
