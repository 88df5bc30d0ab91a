"""Convex projective gluing toolkit: Python access to the native core."""

import json

from . import _core
from ._core import Error, boundary_rep_4d, htau, phi_eigenvalues, phi_generators, tiling_svg

__all__ = [
    "Error",
    "bivector_check",
    "boundary_rep_4d",
    "cohomology_dims",
    "cusp_dims",
    "find_q_isometries",
    "htau",
    "middle_eigenvalue_condition",
    "orbit_tiles",
    "phi_eigenvalues",
    "phi_generators",
    "pitfall_demo",
    "run_cli",
    "slice_transversality",
    "solve_matching",
    "synthetic_pingpong",
    "tiling_svg",
    "verify_table2",
]


def slice_transversality(x, y):
    return json.loads(_core.slice_transversality(x, y))


def bivector_check():
    return json.loads(_core.bivector_check())


def pitfall_demo(ts=(0.1, 0.3, 1.0)):
    return json.loads(_core.pitfall_demo(list(ts)))


def cusp_dims(u, v):
    return json.loads(_core.cusp_dims(u, v))


def cohomology_dims(spec):
    """spec: dict with generators, relators, matrices (see the CLI --input format)."""
    return json.loads(_core.cohomology_dims(json.dumps(spec)))


def orbit_tiles(tau, depth):
    return json.loads(_core.orbit_tiles(tau, depth))


def find_q_isometries(a1, a2):
    return json.loads(_core.find_q_isometries(a1, a2))


def verify_table2():
    return json.loads(_core.verify_table2())


def middle_eigenvalue_condition(m1, m2):
    return json.loads(_core.middle_eigenvalue_condition(m1, m2))


def solve_matching(rep1, rep2, f):
    return json.loads(_core.solve_matching(rep1[0], rep1[1], rep2[0], rep2[1], f))


def synthetic_pingpong(mu, depth=4):
    return json.loads(_core.synthetic_pingpong(mu, depth))


def run_cli(*args):
    """Run a CLI subcommand in-process; returns (exit_code, stdout_json_text, summary)."""
    return _core.run_cli([str(a) for a in args])
